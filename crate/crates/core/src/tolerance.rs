use crate::error::{Error, Result};

/// Numerical tolerances threaded explicitly through every operation.
///
/// There is no global state: each call site receives the context it should
/// judge equalities with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceContext {
    /// Absolute tolerance for operator-norm equality checks.
    pub atol: f64,
    /// Gap threshold for grouping eigenvalues into degenerate clusters.
    pub eig_cluster_tol: f64,
    /// Cap on iterative limits.
    pub max_iter: usize,
}

impl ToleranceContext {
    pub const DEFAULT_ATOL: f64 = 1e-10;
    pub const DEFAULT_EIG_CLUSTER_TOL: f64 = 1e-8;
    pub const DEFAULT_MAX_ITER: usize = 200;

    pub fn new(atol: f64, eig_cluster_tol: f64, max_iter: usize) -> Result<Self> {
        if !(atol > 0.0) || !atol.is_finite() {
            return Err(Error::InvalidTolerance {
                reason: format!("atol must be strictly positive and finite, got {atol}"),
            });
        }
        if !(eig_cluster_tol > 0.0) || !eig_cluster_tol.is_finite() {
            return Err(Error::InvalidTolerance {
                reason: format!(
                    "eig_cluster_tol must be strictly positive and finite, got {eig_cluster_tol}"
                ),
            });
        }
        if max_iter < 1 {
            return Err(Error::InvalidTolerance {
                reason: "max_iter must be at least 1".into(),
            });
        }
        Ok(Self {
            atol,
            eig_cluster_tol,
            max_iter,
        })
    }

    /// Loosened tolerance for quantities accumulated over several
    /// tolerance-bounded steps (reconstructions, oracle agreements).
    pub fn loose(&self) -> f64 {
        10.0 * self.atol
    }
}

impl Default for ToleranceContext {
    fn default() -> Self {
        Self {
            atol: Self::DEFAULT_ATOL,
            eig_cluster_tol: Self::DEFAULT_EIG_CLUSTER_TOL,
            max_iter: Self::DEFAULT_MAX_ITER,
        }
    }
}
