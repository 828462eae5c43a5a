//! Report documents and the command front ends used by the CLI.

mod commands;
mod input;
mod text;

use serde::{Deserialize, Serialize};

use crate::compare::Comparison;
use crate::dynamics::TransitivityVerdict;
use crate::error::{Error, Result};
use crate::ktheory::{AlgebraPresentation, KTheoryReport};
use crate::linalg::IntMatrix;
use crate::marked::MarkedVerdict;
use crate::oracle::GridOutcome;
use crate::translation::TranslationVector;

pub use commands::{analyze, compare, conjugacy, ktheory, presentation, simulate, ConjugacyOptions, SimulateOptions};
pub use input::{AffineInput, InputOptions, InputSpec, IrrationalSpec, TranslationSpec, SCHEMA_VERSION};
pub use text::render_text;

/// Exit codes: success or isomorphic.
pub const EXIT_OK: i32 = 0;
/// Malformed input or arguments.
pub const EXIT_PARSE: i32 = 1;
/// Input outside the supported regime (singular, unsupported size, failed precondition).
pub const EXIT_OUT_OF_REGIME: i32 = 2;
pub const EXIT_NOT_ISOMORPHIC: i32 = 3;
pub const EXIT_UNDECIDED: i32 = 4;
/// Internal consistency check or numerical budget failure.
pub const EXIT_INTERNAL: i32 = 5;

pub fn exit_code_for_error(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Argument(_) | Error::Dimension(_) => EXIT_PARSE,
        Error::Singular(_)
        | Error::UnsupportedDegree { .. }
        | Error::UnsupportedDimension(_)
        | Error::NotLocalHomeomorphism
        | Error::OutOfRegime(_)
        | Error::Precondition(_)
        | Error::InvalidLift(_) => EXIT_OUT_OF_REGIME,
        Error::RasterBudget { .. } | Error::Internal(_) => EXIT_INTERNAL,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub matrix: IntMatrix,
    pub translation: TranslationVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<InputEcho>,
    /// Unverifiable assumptions the results depend on.
    #[serde(default)]
    pub assumptions: Vec<String>,
}

impl Provenance {
    fn new(inputs: Vec<InputEcho>) -> Self {
        let mut assumptions = Vec::new();
        for (i, x) in inputs.iter().enumerate() {
            let symbols = x.translation.symbols();
            if !symbols.is_empty() {
                let which = if inputs.len() > 1 { format!("input {}: ", i + 1) } else { String::new() };
                assumptions.push(format!("{which}1, {} are assumed linearly independent over Q", symbols.join(", ")));
            }
        }
        Provenance {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            inputs,
            assumptions,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub resolution: usize,
    pub max_steps: usize,
    pub box_center: Vec<f64>,
    pub box_radius: f64,
    pub translation_values: Vec<f64>,
    pub outcome: GridOutcome,
    pub classifier_strongly_transitive: bool,
    pub agrees_with_classifier: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjugacyReport {
    pub lift: String,
    pub samples: usize,
    pub tolerance: f64,
    pub degree: i64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub monotone: bool,
    pub max_contraction_ratio: f64,
    pub deltas: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_samples: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<TransitivityVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ktheory: Option<KTheoryReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<AlgebraPresentation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimulationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugacy: Option<ConjugacyReport>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl ReportDocument {
    fn new(command: &str, inputs: Vec<InputEcho>) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            provenance: Provenance::new(inputs),
            verdict: None,
            ktheory: None,
            presentation: None,
            comparison: None,
            simulation: None,
            conjugacy: None,
            notes: Vec::new(),
        }
    }

    /// Canonical JSON: fixed field order, sorted maps, trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn exit_code(&self) -> i32 {
        match self.comparison.as_ref().map(|c| c.verdict) {
            Some(MarkedVerdict::NotIsomorphic) => EXIT_NOT_ISOMORPHIC,
            Some(MarkedVerdict::Undecided) => EXIT_UNDECIDED,
            _ => EXIT_OK,
        }
    }
}
