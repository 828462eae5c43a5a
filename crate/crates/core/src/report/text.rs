use std::fmt::Write;

use super::ReportDocument;
use crate::dynamics::{TransitivityCase, TransitivityVerdict};
use crate::ktheory::{KGroup, KTheoryReport};

fn group_line(label: &str, g: &KGroup) -> String {
    let parts: Vec<String> = g.summands.iter().map(|s| format!("{} [{}]", s.name, s.group)).collect();
    format!("{label} = {}  ({})", g.total, parts.join(" ⊕ "))
}

fn verdict_text(out: &mut String, v: &TransitivityVerdict) {
    let case = match v.case_tag {
        TransitivityCase::Case1Exact => "case 1 (no unimodular factor)",
        TransitivityCase::Case2ConditionallyTransitive => "case 2 (eigenvalue 1, rest non-unimodular)",
        TransitivityCase::Case3Never => "case 3 (unimodular factor away from 1)",
    };
    let _ = writeln!(out, "det A = {}, characteristic polynomial {}", v.determinant, v.char_poly);
    let _ = writeln!(out, "{case}; multiplicity of 1: {}", v.multiplicity_k);
    if let Some(w) = &v.witness.divisor {
        let _ = writeln!(out, "unimodular divisor: {w}");
    }
    if let Some(m) = &v.dual_obstruction {
        let m: Vec<String> = m.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "fixed character pairing rationally with α: ({})", m.join(", "));
    }
    let _ = writeln!(
        out,
        "strongly transitive: {}; exact: {}; homeomorphism: {}",
        v.strongly_transitive, v.exact, v.homeomorphism
    );
}

fn ktheory_text(out: &mut String, k: &KTheoryReport) {
    let _ = writeln!(out, "case: {}", k.case_label);
    let _ = writeln!(out, "simple: {}; purely infinite: {}", k.simple, k.purely_infinite);
    if let Some(g) = &k.groups {
        let _ = writeln!(out, "{}", group_line("K0", &g.k0));
        let _ = writeln!(out, "{}", group_line("K1", &g.k1));
        let v: Vec<String> = g.unit.value.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "[1] = ({}) in {}", v.join(", "), g.unit.summand_name);
    }
    if let Some(t) = &k.trace_order {
        let gens: Vec<String> = t.trace_range_generators.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "trace range: Z-span of {{{}}}, rank {}", gens.join(", "), t.trace_range_rank);
        let _ = writeln!(out, "positive cone: {}", t.positive_cone_description);
    }
    for n in &k.notes {
        let _ = writeln!(out, "note: {n}");
    }
}

/// Plain-text rendering of a report.
pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} :: {}", doc.provenance.tool, doc.provenance.version, doc.command);
    for (i, x) in doc.provenance.inputs.iter().enumerate() {
        let _ = writeln!(out, "input {}: A = {}, α = {}", i + 1, x.matrix, x.translation);
    }
    if let Some(v) = &doc.verdict {
        verdict_text(&mut out, v);
    }
    if let Some(k) = &doc.ktheory {
        ktheory_text(&mut out, k);
    }
    if let Some(p) = &doc.presentation {
        let _ = writeln!(out, "generators: {}", p.generators.join(", "));
        for r in &p.relations {
            let _ = writeln!(out, "  [{}] {}", r.kind, r.text);
        }
    }
    if let Some(c) = &doc.comparison {
        let _ = writeln!(out, "comparison: {:?}", c.verdict);
        for r in &c.reasons {
            let _ = writeln!(out, "  {r}");
        }
    }
    if let Some(s) = &doc.simulation {
        let _ = writeln!(
            out,
            "grid oracle (N = {}, M = {}): {:?}; classifier says strongly transitive = {}; agree: {}",
            s.resolution, s.max_steps, s.outcome, s.classifier_strongly_transitive, s.agrees_with_classifier
        );
    }
    if let Some(c) = &doc.conjugacy {
        let _ = writeln!(out, "{} (degree {})", c.lift, c.degree);
        let _ = writeln!(
            out,
            "iterations: {}; converged: {}; residual: {:.3e}; max contraction ratio: {:.6}; monotone: {}",
            c.iterations, c.converged, c.residual, c.max_contraction_ratio, c.monotone
        );
    }
    for n in &doc.notes {
        let _ = writeln!(out, "note: {n}");
    }
    for a in &doc.provenance.assumptions {
        let _ = writeln!(out, "assumption: {a}");
    }
    out
}
