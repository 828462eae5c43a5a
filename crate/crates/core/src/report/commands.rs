use super::{AffineInput, ConjugacyReport, InputEcho, ReportDocument, SimulationReport};
use crate::compare::same_algebra;
use crate::dynamics::classify_transitivity;
use crate::error::{Error, Result};
use crate::ktheory::{k_groups_affine, presentation as algebra_presentation};
use crate::oracle::{conjugacy_to_power_map, grid_transitivity_oracle, CircleLift, GridParams};

const KNOWN_ANALYSES: &[&str] = &["presentation"];

fn echo(input: &AffineInput) -> InputEcho {
    InputEcho { matrix: input.matrix.clone(), translation: input.translation.clone() }
}

/// Transitivity verdict, plus K-theory when `n <= 3`.
pub fn analyze(input: &AffineInput) -> Result<ReportDocument> {
    for a in &input.options.analyses {
        if !KNOWN_ANALYSES.contains(&a.as_str()) {
            return Err(Error::Parse(format!("unknown analysis {a:?}")));
        }
    }
    let mut doc = ReportDocument::new("analyze", vec![echo(input)]);
    let n = input.matrix.rows();
    doc.verdict = Some(classify_transitivity(&input.matrix, &input.translation)?);
    if n <= 3 {
        doc.ktheory = Some(k_groups_affine(&input.matrix, &input.translation)?);
    } else {
        doc.notes.push(format!("K-theory is only computed for n <= 3 (n = {n})"));
    }
    if input.options.analyses.iter().any(|a| a == "presentation") {
        doc.presentation = Some(algebra_presentation(&input.matrix, &input.translation)?);
    }
    Ok(doc)
}

pub fn ktheory(input: &AffineInput) -> Result<ReportDocument> {
    let n = input.matrix.rows();
    if n > 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    let mut doc = ReportDocument::new("ktheory", vec![echo(input)]);
    doc.verdict = Some(classify_transitivity(&input.matrix, &input.translation)?);
    doc.ktheory = Some(k_groups_affine(&input.matrix, &input.translation)?);
    Ok(doc)
}

pub fn presentation(input: &AffineInput) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("presentation", vec![echo(input)]);
    doc.presentation = Some(algebra_presentation(&input.matrix, &input.translation)?);
    Ok(doc)
}

pub fn compare(first: &AffineInput, second: &AffineInput) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new("compare", vec![echo(first), echo(second)]);
    doc.comparison = Some(same_algebra(
        (&first.matrix, &first.translation),
        (&second.matrix, &second.translation),
    )?);
    Ok(doc)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulateOptions {
    pub resolution: usize,
    pub max_steps: usize,
}

impl Default for SimulateOptions {
    fn default() -> Self {
        SimulateOptions { resolution: 256, max_steps: 200 }
    }
}

/// Runs the grid oracle and sets it against the exact classifier.
pub fn simulate(input: &AffineInput, opts: SimulateOptions) -> Result<ReportDocument> {
    let n = input.matrix.rows();
    let values = input.translation.to_f64(&input.options.symbol_values)?;
    let center = input.options.box_center.clone().unwrap_or_else(|| vec![0.5; n]);
    let radius = input.options.box_radius.unwrap_or(0.05);
    let params = GridParams::new(center.clone(), radius, opts.resolution, opts.max_steps);
    let verdict = classify_transitivity(&input.matrix, &input.translation)?;
    let outcome = grid_transitivity_oracle(&input.matrix, &values, &params)?;

    let mut doc = ReportDocument::new("simulate", vec![echo(input)]);
    if !input.options.symbol_values.is_empty() {
        let vals: Vec<String> = input.options.symbol_values.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        doc.provenance
            .assumptions
            .push(format!("simulation uses floating-point values {}", vals.join(", ")));
    }
    doc.simulation = Some(SimulationReport {
        resolution: opts.resolution,
        max_steps: opts.max_steps,
        box_center: center,
        box_radius: radius,
        translation_values: values,
        outcome,
        classifier_strongly_transitive: verdict.strongly_transitive,
        agrees_with_classifier: outcome.is_covered() == verdict.strongly_transitive,
    });
    doc.verdict = Some(verdict);
    Ok(doc)
}

/// Lift `g(t) = d·t + shift + amplitude·sin(2πt)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugacyOptions {
    pub degree: i64,
    pub shift: f64,
    pub amplitude: f64,
    pub samples: usize,
    pub tolerance: f64,
    pub max_iterations: usize,
    pub emit_samples: bool,
}

impl Default for ConjugacyOptions {
    fn default() -> Self {
        ConjugacyOptions {
            degree: 2,
            shift: 0.0,
            amplitude: 0.1,
            samples: 4096,
            tolerance: 1e-10,
            max_iterations: 60,
            emit_samples: false,
        }
    }
}

pub fn conjugacy(opts: ConjugacyOptions) -> Result<ReportDocument> {
    let lift = CircleLift::trigonometric(opts.degree as f64, opts.shift, opts.amplitude, opts.samples);
    let r = conjugacy_to_power_map(&lift, opts.tolerance, opts.max_iterations)?;
    let mut doc = ReportDocument::new("conjugacy", Vec::new());
    if !r.converged {
        doc.notes.push(format!("did not reach tolerance {} within {} iterations", opts.tolerance, opts.max_iterations));
    }
    doc.conjugacy = Some(ConjugacyReport {
        lift: format!("g(t) = {}·t + {} + {}·sin(2πt)", opts.degree, opts.shift, opts.amplitude),
        samples: opts.samples,
        tolerance: opts.tolerance,
        degree: r.degree,
        residual: r.residual,
        iterations: r.iterations,
        converged: r.converged,
        monotone: r.monotone,
        max_contraction_ratio: r.max_contraction_ratio,
        deltas: r.deltas,
        h_samples: opts.emit_samples.then_some(r.h_samples),
    });
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FgAbelianGroup;
    use crate::marked::MarkedVerdict;
    use crate::oracle::GridOutcome;
    use crate::report::{InputSpec, EXIT_NOT_ISOMORPHIC};

    fn input(text: &str) -> AffineInput {
        InputSpec::parse(text).unwrap()
    }

    #[test]
    fn analyze_circle_map() {
        let doc = analyze(&input(r#"{"schema_version": 1, "n": 1, "matrix": [[3]]}"#)).unwrap();
        let k = doc.ktheory.as_ref().unwrap();
        assert_eq!(k.case_label, "A");
        assert_eq!(k.k0().unwrap(), &FgAbelianGroup::from_cyclic([2, 0]));
        assert!(doc.provenance.assumptions.is_empty());
    }

    #[test]
    fn analyze_singular_fails() {
        let e = analyze(&input(r#"{"schema_version": 1, "n": 2, "matrix": [[1, 1], [1, 1]]}"#)).unwrap_err();
        assert_eq!(e, Error::NotLocalHomeomorphism);
    }

    #[test]
    fn analyze_three_torus_minimal() {
        let doc = analyze(&input(
            r#"{"schema_version": 1, "n": 3, "matrix": [[1,0,0],[0,1,1],[0,0,1]],
                "translation": {"irrational": [{"symbol": "t1", "coefficients": [1, 0, 0]},
                                               {"symbol": "t2", "coefficients": [0, 0, 1]}]}}"#,
        ))
        .unwrap();
        let order = doc.ktheory.as_ref().unwrap().trace_order.as_ref().unwrap();
        assert_eq!(order.trace_range_rank, 3);
        assert_eq!(doc.provenance.assumptions.len(), 1);
    }

    #[test]
    fn analyze_large_dimension_without_ktheory() {
        let doc = analyze(&input(
            r#"{"schema_version": 1, "n": 4, "matrix": [[2,0,0,0],[0,2,0,0],[0,0,2,0],[0,0,0,2]]}"#,
        ))
        .unwrap();
        assert!(doc.verdict.unwrap().strongly_transitive);
        assert!(doc.ktheory.is_none());
    }

    #[test]
    fn compare_exit_codes() {
        let three = input(r#"{"schema_version": 1, "n": 1, "matrix": [[3]]}"#);
        let theta = input(
            r#"{"schema_version": 1, "n": 1, "matrix": [[3]], "translation": {"irrational": [{"symbol": "t", "coefficients": [1]}]}}"#,
        );
        let minus = input(r#"{"schema_version": 1, "n": 1, "matrix": [[-3]]}"#);
        let cat = input(r#"{"schema_version": 1, "n": 2, "matrix": [[2, 1], [1, 1]]}"#);
        let doc = compare(&three, &theta).unwrap();
        assert_eq!(doc.comparison.as_ref().unwrap().verdict, MarkedVerdict::Isomorphic);
        assert_eq!(doc.exit_code(), 0);
        assert_eq!(compare(&three, &minus).unwrap().exit_code(), EXIT_NOT_ISOMORPHIC);
        assert!(matches!(compare(&cat, &three), Err(Error::OutOfRegime(_))));
    }

    #[test]
    fn simulate_doubling() {
        let doc = simulate(
            &input(r#"{"schema_version": 1, "n": 1, "matrix": [[2]], "options": {"box_radius": 0.01}}"#),
            SimulateOptions::default(),
        )
        .unwrap();
        let s = doc.simulation.unwrap();
        assert!(matches!(s.outcome, GridOutcome::CoveredWithin { steps } if steps <= 12));
        assert!(s.agrees_with_classifier);
    }

    #[test]
    fn simulate_needs_symbol_values() {
        let x = input(
            r#"{"schema_version": 1, "n": 1, "matrix": [[1]], "translation": {"irrational": [{"symbol": "t", "coefficients": [1]}]}}"#,
        );
        assert!(simulate(&x, SimulateOptions::default()).is_err());
    }

    #[test]
    fn conjugacy_runs() {
        let doc = conjugacy(ConjugacyOptions::default()).unwrap();
        assert!(doc.conjugacy.unwrap().residual < 1e-8);
        let e = conjugacy(ConjugacyOptions { degree: 1, ..Default::default() }).unwrap_err();
        assert!(matches!(e, Error::OutOfRegime(_)));
    }

    #[test]
    fn reports_round_trip_byte_stable() {
        let docs = [
            analyze(&input(
                r#"{"schema_version": 1, "n": 2, "matrix": [[2, 0], [0, 2]], "options": {"analyses": ["presentation"]},
                    "translation": {"rational": ["1/3", "0"]}}"#,
            ))
            .unwrap(),
            compare(
                &input(r#"{"schema_version": 1, "n": 1, "matrix": [[3]]}"#),
                &input(r#"{"schema_version": 1, "n": 1, "matrix": [[-3]]}"#),
            )
            .unwrap(),
            conjugacy(ConjugacyOptions { samples: 256, emit_samples: true, ..Default::default() }).unwrap(),
        ];
        for doc in docs {
            let text = doc.to_json();
            let back = ReportDocument::from_json(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_json(), text);
        }
    }
}
