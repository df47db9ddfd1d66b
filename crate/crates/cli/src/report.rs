//! Report schema and rendering. The JSON form is schema-stable and
//! round-trippable; the text form is a human summary with residual tables.

use serde::{Deserialize, Serialize};

use crate::config::ConfigFile;
use crate::wire::WireMatrix;

pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: String,
    /// Echo of the configuration with effective seed and tolerances.
    pub config: ConfigFile,
    /// Clustered spectrum of the density operator.
    pub spectrum: SpectrumSection,
    /// The X-form family of the selected rule; absent for the naive rule.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_family: Option<Vec<WireMatrix>>,
    pub checks: Vec<CheckSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub demos: Option<DemoSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSection {
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
    /// Rank of the null projector (zero when the state is nonsingular).
    pub null_rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSection {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    /// Named residuals and counters, in a fixed order.
    pub residuals: Vec<NamedValue>,
    /// A witness projection for failed membership comparisons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WireMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

impl NamedValue {
    pub fn new(name: &str, value: f64) -> Self {
        Self {
            name: name.into(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemoSection {
    pub spin: SpinDemoSection,
    pub obstruction: ObstructionSection,
    pub counterexample: CounterexampleSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinDemoSection {
    pub passed: bool,
    /// (σx value, σy value, diagonal value, linearity residual) per
    /// dispersion-free assignment.
    pub assignments: Vec<(i8, i8, i8, f64)>,
    pub min_residual: f64,
    pub expected_min_residual: f64,
    pub diagonal_spectrum: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionSection {
    pub passed: bool,
    pub lattice_size: usize,
    pub homomorphism_count: usize,
    pub resolver_sets_disjoint: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleSection {
    pub passed: bool,
    pub lattice_size: usize,
    pub algebra_rank: usize,
    pub witness: WireMatrix,
    pub witness_in_algebra: bool,
    pub witness_in_lattice: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn render_report(report: &AnalysisReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut bytes =
                serde_json::to_vec_pretty(report).expect("report serialization cannot fail");
            bytes.push(b'\n');
            bytes
        }
        Format::Text => render_text(report).into_bytes(),
    }
}

fn render_matrix(m: &WireMatrix, indent: &str) -> String {
    let mut out = String::new();
    for row in m {
        out.push_str(indent);
        out.push('[');
        let cells: Vec<String> = row
            .iter()
            .map(|[re, im]| format!("{re:+.6}{im:+.6}i"))
            .collect();
        out.push_str(&cells.join(", "));
        out.push_str("]\n");
    }
    out
}

fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "analysis report (schema {})\n",
        report.schema_version
    ));
    out.push_str(&format!(
        "rule: {}   dimension: {}   seed: {}\n",
        report.config.rule, report.config.dimension, report.config.seed
    ));
    out.push_str("clustered spectrum:\n");
    for (v, m) in report
        .spectrum
        .eigenvalues
        .iter()
        .zip(&report.spectrum.multiplicities)
    {
        out.push_str(&format!("  {v:+.12}  (multiplicity {m})\n"));
    }
    if let Some(family) = &report.x_family {
        out.push_str(&format!("definite family: {} projection(s)\n", family.len()));
        for (k, m) in family.iter().enumerate() {
            out.push_str(&format!("  X[{k}]:\n"));
            out.push_str(&render_matrix(m, "    "));
        }
    }
    out.push_str("\nchecks:\n");
    for check in &report.checks {
        let status = match check.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::NotApplicable => "NOT-APPLICABLE",
        };
        out.push_str(&format!("  [{status}] {} — {}\n", check.name, check.detail));
        for nv in &check.residuals {
            out.push_str(&format!("      {:<32} {:.3e}\n", nv.name, nv.value));
        }
        if let Some(w) = &check.witness {
            out.push_str("      witness projection:\n");
            out.push_str(&render_matrix(w, "        "));
        }
    }
    if let Some(demos) = &report.demos {
        out.push_str("\ndemonstrations:\n");
        let spin = &demos.spin;
        out.push_str(&format!(
            "  spin linearity: min residual {:.12} (expected {:.12}) over {} assignments — {}\n",
            spin.min_residual,
            spin.expected_min_residual,
            spin.assignments.len(),
            if spin.passed { "PASS" } else { "FAIL" }
        ));
        for (a, b, c, r) in &spin.assignments {
            out.push_str(&format!(
                "      x={a:+} y={b:+} diagonal={c:+}  residual {r:.6}\n"
            ));
        }
        out.push_str(&format!(
            "  quasiboolean obstruction: lattice of {}, {} homomorphisms, resolver sets disjoint: {} — {}\n",
            demos.obstruction.lattice_size,
            demos.obstruction.homomorphism_count,
            demos.obstruction.resolver_sets_disjoint,
            if demos.obstruction.passed { "PASS" } else { "FAIL" }
        ));
        let ce = &demos.counterexample;
        out.push_str(&format!(
            "  commutant counterexample: lattice of {}, generated algebra rank {}, witness in algebra: {}, in lattice: {} — {}\n",
            ce.lattice_size,
            ce.algebra_rank,
            ce.witness_in_algebra,
            ce.witness_in_lattice,
            if ce.passed { "PASS" } else { "FAIL" }
        ));
        out.push_str("      witness projection:\n");
        out.push_str(&render_matrix(&ce.witness, "        "));
    }
    out
}

/// Exit code per the documented contract: 0 when every requested check
/// passed (not-applicable does not count as failure), 1 when any check
/// failed; structural errors exit 2 before a report exists.
pub fn exit_code(report: &AnalysisReport) -> i32 {
    let failed = report
        .checks
        .iter()
        .any(|c| c.status == CheckStatus::Fail);
    if failed {
        1
    } else {
        0
    }
}
