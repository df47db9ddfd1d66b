//! Analysis configuration: JSON schema, parsing, and validation.

use serde::{Deserialize, Serialize};

use modalg_core::{CVector, Operator, RuleSelector, ToleranceContext};

use crate::wire::{wire_to_operator, wire_to_vector, WireMatrix, WireVector};

/// On-disk configuration. `state` accepts either dense matrix entries or an
/// eigenvalue/eigenvector form; complex entries are [re, im] pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub dimension: usize,
    pub state: StateSpec,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bub: Option<BubSection>,
    pub checks: Vec<String>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Matrix {
        matrix: WireMatrix,
    },
    Eigen {
        eigenvalues: Vec<f64>,
        eigenvectors: Vec<WireVector>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BubSection {
    pub psi: WireVector,
    pub observable: WireMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eig_cluster_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Closure,
    QuasiBoolean,
    Statistics,
    Additivity,
    Demos,
}

impl CheckKind {
    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Closure => "closure",
            CheckKind::QuasiBoolean => "quasiboolean",
            CheckKind::Statistics => "statistics",
            CheckKind::Additivity => "additivity",
            CheckKind::Demos => "demos",
        }
    }
}

#[derive(Debug)]
pub enum ConfigError {
    Parse(String),
    Validation { field: String, message: String },
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Parse(msg) => write!(f, "config parse error: {msg}"),
            ConfigError::Validation { field, message } => {
                write!(f, "config validation error at `{field}`: {message}")
            }
        }
    }
}

fn invalid(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Validation {
        field: field.into(),
        message: message.into(),
    }
}

/// A parsed and validated configuration, ready to run.
#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    pub file: ConfigFile,
    pub state: Operator,
    pub rule: RuleSelector,
    pub bub_inputs: Option<(CVector, Operator)>,
    pub checks: Vec<CheckKind>,
    pub seed: u64,
    pub ctx: ToleranceContext,
}

/// Parses and validates configuration text.
pub fn load_config(text: &str) -> Result<AnalysisConfig, ConfigError> {
    let file: ConfigFile =
        serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    validate(file)
}

fn validate(file: ConfigFile) -> Result<AnalysisConfig, ConfigError> {
    if file.dimension == 0 {
        return Err(invalid("dimension", "must be at least 1"));
    }

    let ctx = match &file.tolerances {
        None => ToleranceContext::default(),
        Some(t) => ToleranceContext::new(
            t.atol.unwrap_or(ToleranceContext::DEFAULT_ATOL),
            t.eig_cluster_tol
                .unwrap_or(ToleranceContext::DEFAULT_EIG_CLUSTER_TOL),
            t.max_iter.unwrap_or(ToleranceContext::DEFAULT_MAX_ITER),
        )
        .map_err(|e| invalid("tolerances", e.to_string()))?,
    };

    let state = build_state(&file, &ctx)?;
    if state.dim() != file.dimension {
        return Err(invalid(
            "state",
            format!("state is {}-dimensional, config says {}", state.dim(), file.dimension),
        ));
    }

    let rule = match file.rule.as_str() {
        "naive" => RuleSelector::Naive,
        "orthodox" => RuleSelector::Orthodox,
        "clifton" => RuleSelector::Clifton,
        "kochen-dieks" => RuleSelector::KochenDieks,
        "bub" => RuleSelector::Bub,
        other => {
            return Err(invalid(
                "rule",
                format!(
                    "unknown rule `{other}` (expected naive, orthodox, clifton, kochen-dieks, or bub)"
                ),
            ))
        }
    };

    let bub_inputs = if rule == RuleSelector::Bub {
        let section = file
            .bub
            .as_ref()
            .ok_or_else(|| invalid("bub.psi", "rule `bub` requires the bub section"))?;
        let psi =
            wire_to_vector(&section.psi).map_err(|m| invalid("bub.psi", m))?;
        if psi.len() != file.dimension {
            return Err(invalid(
                "bub.psi",
                format!("has {} entries, expected {}", psi.len(), file.dimension),
            ));
        }
        let observable = wire_to_operator(&section.observable)
            .map_err(|m| invalid("bub.observable", m))?;
        if observable.dim() != file.dimension {
            return Err(invalid(
                "bub.observable",
                format!("is {}-dimensional, expected {}", observable.dim(), file.dimension),
            ));
        }
        // The density state must be the pure projector onto psi.
        let pure = Operator::new(&psi * psi.adjoint()).map_err(|e| invalid("bub.psi", e.to_string()))?;
        if !state.approx_eq(&pure, ctx.loose().max(1e-9)) {
            return Err(invalid(
                "state",
                "rule `bub` requires the state to be the pure projector onto bub.psi",
            ));
        }
        Some((psi, observable))
    } else {
        if file.bub.is_some() {
            return Err(invalid("bub", "only meaningful for rule `bub`"));
        }
        None
    };

    if file.checks.is_empty() {
        return Err(invalid("checks", "must request at least one check"));
    }
    let mut checks = Vec::new();
    for (i, name) in file.checks.iter().enumerate() {
        let kind = match name.as_str() {
            "closure" => CheckKind::Closure,
            "quasiboolean" => CheckKind::QuasiBoolean,
            "statistics" => CheckKind::Statistics,
            "additivity" => CheckKind::Additivity,
            "demos" => CheckKind::Demos,
            other => {
                return Err(invalid(
                    &format!("checks[{i}]"),
                    format!("unknown check `{other}`"),
                ))
            }
        };
        if !checks.contains(&kind) {
            checks.push(kind);
        }
    }

    let seed = file.seed;
    Ok(AnalysisConfig {
        file,
        state,
        rule,
        bub_inputs,
        checks,
        seed,
        ctx,
    })
}

fn build_state(file: &ConfigFile, ctx: &ToleranceContext) -> Result<Operator, ConfigError> {
    match &file.state {
        StateSpec::Matrix { matrix } => {
            wire_to_operator(matrix).map_err(|m| invalid("state.matrix", m))
        }
        StateSpec::Eigen {
            eigenvalues,
            eigenvectors,
        } => {
            if eigenvalues.len() != eigenvectors.len() {
                return Err(invalid(
                    "state.eigenvectors",
                    format!(
                        "{} vectors for {} eigenvalues",
                        eigenvectors.len(),
                        eigenvalues.len()
                    ),
                ));
            }
            let mut vectors = Vec::with_capacity(eigenvectors.len());
            for (k, entry) in eigenvectors.iter().enumerate() {
                let v = wire_to_vector(entry)
                    .map_err(|m| invalid(&format!("state.eigenvectors[{k}]"), m))?;
                if v.len() != file.dimension {
                    return Err(invalid(
                        &format!("state.eigenvectors[{k}]"),
                        format!("has {} entries, expected {}", v.len(), file.dimension),
                    ));
                }
                vectors.push(v);
            }
            // The vectors must be orthonormal for Σ λ v vᴴ to be a spectral form.
            for i in 0..vectors.len() {
                for j in i..vectors.len() {
                    let inner = vectors[i].dotc(&vectors[j]);
                    let expected = if i == j { 1.0 } else { 0.0 };
                    if (inner.re - expected).abs() > ctx.loose().max(1e-9)
                        || inner.im.abs() > ctx.loose().max(1e-9)
                    {
                        return Err(invalid(
                            "state.eigenvectors",
                            format!("vectors {i} and {j} are not orthonormal"),
                        ));
                    }
                }
            }
            let mut acc = Operator::zero(file.dimension);
            for (lambda, v) in eigenvalues.iter().zip(&vectors) {
                let outer = Operator::new(v * v.adjoint())
                    .map_err(|e| invalid("state.eigenvectors", e.to_string()))?;
                acc = &acc + &outer.scale_real(*lambda);
            }
            Ok(acc)
        }
    }
}
