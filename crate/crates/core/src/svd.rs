//! One-sided Jacobi singular value decomposition for complex matrices.
//!
//! Dense general-purpose SVDs of complex matrices are the one numerical
//! primitive the surrounding toolkit cannot take off the shelf here, and all
//! rank decisions in the operator-span machinery hinge on it. One-sided
//! Jacobi orthogonalizes the actual columns, so small singular values come
//! out at full precision (no Gram squaring) and the factorization is
//! deterministic for a fixed input.

use num_complex::Complex64;

use crate::matrix::{CMatrix, CVector};

pub(crate) struct ThinSvd {
    /// Column norms after orthogonalization, unsorted.
    pub sigma: Vec<f64>,
    /// Orthogonalized columns (m×n); column j has norm `sigma[j]`.
    pub columns: CMatrix,
    /// Accumulated right factor (n×n unitary): A = columns · Vᴴ.
    pub v: CMatrix,
}

impl ThinSvd {
    pub fn sigma_max(&self) -> f64 {
        self.sigma.iter().cloned().fold(0.0, f64::max)
    }

    /// Unit left singular vectors for singular values above `cut`.
    pub fn range_vectors(&self, cut: f64) -> Vec<CVector> {
        let mut out = Vec::new();
        for (j, &s) in self.sigma.iter().enumerate() {
            if s > cut {
                out.push(self.columns.column(j).map(|z| z / s));
            }
        }
        out
    }

    /// Right singular vectors for singular values at or below `cut`:
    /// an orthonormal basis of the nullspace at that threshold.
    pub fn null_vectors(&self, cut: f64) -> Vec<CVector> {
        let mut out = Vec::new();
        for (j, &s) in self.sigma.iter().enumerate() {
            if s <= cut {
                out.push(self.v.column(j).into_owned());
            }
        }
        out
    }
}

const MAX_SWEEPS: usize = 60;
const ORTHO_TOL: f64 = 1e-28;

/// One-sided Jacobi: rotates column pairs until all are mutually orthogonal
/// to working precision.
pub(crate) fn jacobi_svd(a: &CMatrix) -> ThinSvd {
    let n = a.ncols();
    let mut w = a.clone();
    let mut v = CMatrix::identity(n, n);

    // Columns at rounding-noise scale are numerically zero; rotating them
    // would divide denormals and produce phases off the unit circle.
    let scale = (0..n)
        .map(|j| w.column(j).norm_squared())
        .fold(0.0, f64::max);
    let floor = scale * (f64::EPSILON * f64::EPSILON);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let xp = w.column(p);
                let xq = w.column(q);
                let alpha = xp.norm_squared();
                let beta = xq.norm_squared();
                if alpha <= floor || beta <= floor {
                    continue;
                }
                let gamma: Complex64 = xp.dotc(&xq);
                let g2 = gamma.norm_sqr();
                if g2 <= ORTHO_TOL * alpha * beta || g2 == 0.0 {
                    continue;
                }
                rotated = true;
                let g = g2.sqrt();
                let phase = gamma / g;
                // Diagonalize the real symmetric 2×2 [[α, g], [g, β]].
                let tau = (beta - alpha) / (2.0 * g);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;

                let cc = Complex64::new(c, 0.0);
                let sc = Complex64::new(s, 0.0);
                let phase_conj = phase.conj();
                for i in 0..w.nrows() {
                    let xi = w[(i, p)];
                    let yi = w[(i, q)] * phase_conj;
                    w[(i, p)] = cc * xi - sc * yi;
                    w[(i, q)] = sc * xi + cc * yi;
                }
                for i in 0..n {
                    let xi = v[(i, p)];
                    let yi = v[(i, q)] * phase_conj;
                    v[(i, p)] = cc * xi - sc * yi;
                    v[(i, q)] = sc * xi + cc * yi;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma: Vec<f64> = (0..n).map(|j| w.column(j).norm()).collect();
    ThinSvd {
        sigma,
        columns: w,
        v,
    }
}
