//! Hermitian spectral decomposition, span projectors, and norm limits.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, CVector, Operator, Projection};
use crate::tolerance::ToleranceContext;

/// Spectral resolution A = Σ λᵢ Pᵢ of a self-adjoint operator, with
/// degenerate eigenvalues merged into a single eigenspace projector.
#[derive(Debug, Clone)]
pub struct SpectralResolution {
    eigenvalues: Vec<f64>,
    projectors: Vec<Projection>,
}

impl SpectralResolution {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[Projection] {
        &self.projectors
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &Projection)> {
        self.eigenvalues.iter().copied().zip(self.projectors.iter())
    }

    /// Σ λᵢ Pᵢ.
    pub fn reconstruct(&self) -> Operator {
        let mut acc = Operator::zero(self.dim());
        for (value, proj) in self.iter() {
            acc = &acc + &proj.as_operator().scale_real(value);
        }
        acc
    }

    /// Multiplicity (rank) of each eigenspace.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.projectors.iter().map(|p| p.rank()).collect()
    }
}

/// Eigendecomposition of a self-adjoint operator with descending eigenvalues
/// and gap-based clustering of degenerate eigenvalues.
///
/// Eigenvalues closer than `ctx.eig_cluster_tol` on the sorted list are merged
/// into one eigenspace projector; the reported eigenvalue of a cluster is the
/// mean of its members. The eigenspace projectors are basis-independent, so
/// the output is deterministic for a fixed input.
pub fn spectral_resolution(a: &Operator, ctx: &ToleranceContext) -> Result<SpectralResolution> {
    let defect = a.self_adjoint_defect();
    if defect > ctx.atol {
        return Err(Error::NotSelfAdjoint { defect });
    }
    // Symmetrize to remove floating-point asymmetry before decomposing.
    let h = a.hermitian_part();
    let eig = h.matrix().clone().symmetric_eigen();

    let dim = a.dim();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| {
        eig.eigenvalues[j]
            .partial_cmp(&eig.eigenvalues[i])
            .expect("finite eigenvalues")
    });

    let mut eigenvalues = Vec::new();
    let mut projectors = Vec::new();
    let mut cluster: Vec<usize> = Vec::new();

    let flush = |cluster: &mut Vec<usize>, eigenvalues: &mut Vec<f64>, projectors: &mut Vec<Projection>| {
        if cluster.is_empty() {
            return;
        }
        let mean = cluster.iter().map(|&k| eig.eigenvalues[k]).sum::<f64>() / cluster.len() as f64;
        let mut mat = CMatrix::zeros(dim, dim);
        for &k in cluster.iter() {
            let v = eig.eigenvectors.column(k);
            mat += &v * v.adjoint();
        }
        eigenvalues.push(mean);
        projectors.push(Projection::new_unchecked(Operator::from_matrix_unchecked(
            mat,
        )));
        cluster.clear();
    };

    for &idx in &order {
        if let Some(&last) = cluster.last() {
            let gap = eig.eigenvalues[last] - eig.eigenvalues[idx];
            if gap > ctx.eig_cluster_tol {
                flush(&mut cluster, &mut eigenvalues, &mut projectors);
            }
        }
        cluster.push(idx);
    }
    flush(&mut cluster, &mut eigenvalues, &mut projectors);

    Ok(SpectralResolution {
        eigenvalues,
        projectors,
    })
}

/// Orthogonal projector onto the span of the given vectors, via a
/// rank-revealing SVD of the column matrix. An empty list (or an all-zero
/// one) yields the zero projection.
pub fn projection_onto_span(
    dim: usize,
    vectors: &[CVector],
    ctx: &ToleranceContext,
) -> Result<Projection> {
    if vectors.is_empty() {
        return Ok(Projection::zero(dim));
    }
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: v.len(),
            });
        }
    }
    let mut cols = CMatrix::zeros(dim, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        cols.set_column(j, v);
    }
    let svd = crate::svd::jacobi_svd(&cols);
    if svd.sigma_max() <= ctx.atol {
        return Ok(Projection::zero(dim));
    }
    let cut = ctx.atol * svd.sigma_max().max(1.0);
    let mut mat = CMatrix::zeros(dim, dim);
    for u in svd.range_vectors(cut) {
        mat += &u * u.adjoint();
    }
    Ok(Projection::new_unchecked(Operator::from_matrix_unchecked(
        mat,
    )))
}

/// Orthonormal basis of ran(P), read off the eigenvalue-1 eigenvectors.
pub fn range_basis(p: &Projection, ctx: &ToleranceContext) -> Vec<CVector> {
    let eig = p.as_operator().hermitian_part().matrix().clone().symmetric_eigen();
    let mut basis = Vec::new();
    for k in 0..p.dim() {
        if (eig.eigenvalues[k] - 1.0).abs() <= ctx.eig_cluster_tol.max(1e-6) {
            basis.push(eig.eigenvectors.column(k).into_owned());
        }
    }
    basis
}

/// Outcome of a norm-limit iteration. Non-convergence is reported through
/// the flag together with the last iterate, not as a hard error.
#[derive(Debug, Clone)]
pub struct NormLimit {
    pub value: Operator,
    pub iterations: usize,
    pub converged: bool,
    pub last_step: f64,
}

/// Iterates `gen(1), gen(2), …` until consecutive iterates are within
/// `ctx.atol` in norm, or `ctx.max_iter` evaluations are spent.
pub fn norm_limit(
    mut gen: impl FnMut(usize) -> Operator,
    ctx: &ToleranceContext,
) -> Result<NormLimit> {
    let mut prev = gen(1);
    let mut last_step = f64::INFINITY;
    for n in 2..=ctx.max_iter {
        let next = gen(n);
        if next.dim() != prev.dim() {
            return Err(Error::DimensionMismatch {
                left: prev.dim(),
                right: next.dim(),
            });
        }
        last_step = next.distance(&prev);
        prev = next;
        if last_step <= ctx.atol {
            return Ok(NormLimit {
                value: prev,
                iterations: n,
                converged: true,
                last_step,
            });
        }
    }
    Ok(NormLimit {
        value: prev,
        iterations: ctx.max_iter,
        converged: false,
        last_step,
    })
}

/// Builds a self-adjoint operator Σ λᵢ Pᵢ from explicit spectral data.
pub fn from_spectral_data(pairs: &[(f64, &Projection)]) -> Operator {
    let dim = pairs[0].1.dim();
    let mut acc = Operator::zero(dim);
    for (value, proj) in pairs {
        acc = &acc + &proj.as_operator().scale_real(*value);
    }
    acc
}

/// Unit vector sum normalization helper used to build superposition
/// projectors in generating families: proj onto (u + phase·v)/‖·‖.
pub fn superposition_projector(u: &CVector, v: &CVector, phase: Complex64) -> Result<Projection> {
    let w = u + v.map(|z| z * phase);
    Projection::onto_vector(&w)
}

pub use crate::matrix::CVector as Vector;
