//! Deterministic pseudo-random generators for operators, projections,
//! unitaries, density states, and block-respecting commuting families.
//!
//! Everything is seeded; identical seeds give identical streams, which keeps
//! verification sweeps and CLI reports reproducible.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::{CMatrix, CVector, Operator, Projection};
use crate::rules::XFormSpec;
use crate::spectral::range_basis;
use crate::tolerance::ToleranceContext;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Dense operator with iid complex gaussian entries.
pub fn random_operator(dim: usize, rng: &mut ChaCha8Rng) -> Operator {
    let mat = CMatrix::from_fn(dim, dim, |_, _| complex_normal(rng));
    Operator::from_matrix_unchecked(mat)
}

/// Hermitian part of a gaussian operator.
pub fn random_self_adjoint(dim: usize, rng: &mut ChaCha8Rng) -> Operator {
    random_operator(dim, rng).hermitian_part()
}

/// Haar-distributed unitary: QR of a gaussian matrix with the phases of the
/// diagonal of R absorbed into Q.
pub fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> Operator {
    let qr = random_operator(dim, rng).matrix().clone().qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    Operator::from_matrix_unchecked(q)
}

pub fn random_unit_vector(dim: usize, rng: &mut ChaCha8Rng) -> CVector {
    loop {
        let v = CVector::from_fn(dim, |_, _| complex_normal(rng));
        let n = v.norm();
        if n > 1e-6 {
            return v.map(|z| z / Complex64::new(n, 0.0));
        }
    }
}

/// Unitary-conjugated coordinate projector of the given rank.
pub fn random_projection(dim: usize, rank: usize, rng: &mut ChaCha8Rng) -> Projection {
    let rank = rank.min(dim);
    let u = random_unitary(dim, rng);
    let diag = Projection::coordinate(dim, &(0..rank).collect::<Vec<_>>());
    let conj = &(u.matrix() * diag.as_operator().matrix()) * u.matrix().adjoint();
    Projection::new_unchecked(Operator::from_matrix_unchecked(conj))
}

/// Random projection with rank drawn uniformly from 0..=dim.
pub fn random_projection_any_rank(dim: usize, rng: &mut ChaCha8Rng) -> Projection {
    let rank = rng.random_range(0..=dim);
    random_projection(dim, rank, rng)
}

/// A pair of rank-1 projections with the given principal angle, embedded in
/// a random 2-plane of the space.
pub fn rank1_pair_at_angle(
    dim: usize,
    theta: f64,
    rng: &mut ChaCha8Rng,
) -> (Projection, Projection) {
    assert!(dim >= 2, "need at least a 2-dimensional space");
    let u = random_unitary(dim, rng);
    let e1 = u.matrix().column(0).into_owned();
    let e2 = u.matrix().column(1).into_owned();
    let tilted = e1.map(|z| z * Complex64::new(theta.cos(), 0.0))
        + e2.map(|z| z * Complex64::new(theta.sin(), 0.0));
    (
        Projection::onto_vector(&e1).expect("unit column"),
        Projection::onto_vector(&tilted).expect("unit combination"),
    )
}

/// Shape of the eigenvalue pattern used when sampling density operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumProfile {
    /// Distinct nonzero eigenvalues.
    Generic,
    /// At least one repeated eigenvalue.
    Degenerate,
    /// At least one zero eigenvalue.
    Singular,
    /// Repeated and zero eigenvalues together (dimension permitting).
    DegenerateSingular,
    /// A single unit eigenvalue.
    Pure,
}

/// Density operator with the requested spectrum profile, conjugated by a
/// random unitary. Distinct eigenvalue levels are built from distinct small
/// integers so they stay far apart relative to the clustering tolerance.
pub fn random_density(dim: usize, profile: SpectrumProfile, rng: &mut ChaCha8Rng) -> Operator {
    let eigenvalues = density_eigenvalues(dim, profile, rng);
    let u = random_unitary(dim, rng);
    let d = Operator::diagonal(&eigenvalues);
    let conj = &(u.matrix() * d.matrix()) * u.matrix().adjoint();
    Operator::from_matrix_unchecked(conj).hermitian_part()
}

fn density_eigenvalues(dim: usize, profile: SpectrumProfile, rng: &mut ChaCha8Rng) -> Vec<f64> {
    assert!(dim >= 1);
    if dim == 1 || profile == SpectrumProfile::Pure {
        let mut v = vec![0.0; dim];
        v[0] = 1.0;
        return v;
    }
    let (zeros, repeated) = match profile {
        SpectrumProfile::Generic => (0usize, false),
        SpectrumProfile::Degenerate => (0, true),
        SpectrumProfile::Singular => (1.max(dim / 3), false),
        SpectrumProfile::DegenerateSingular => (1.max(dim / 3), true),
        SpectrumProfile::Pure => unreachable!(),
    };
    let zeros = zeros.min(dim - 1);
    let nonzero_slots = dim - zeros;
    let levels = if repeated && nonzero_slots >= 2 {
        // One level carries multiplicity two (or more when slots allow).
        1 + rng.random_range(1..nonzero_slots)
    } else {
        nonzero_slots
    };

    // Distinct positive integers as unnormalized level weights.
    let mut weights: Vec<u64> = Vec::with_capacity(levels);
    while weights.len() < levels {
        let w = rng.random_range(1..=24u64);
        if !weights.contains(&w) {
            weights.push(w);
        }
    }

    // Spread the nonzero slots over the levels, every level nonempty.
    let mut multiplicity = vec![1usize; levels];
    for _ in 0..(nonzero_slots - levels) {
        let k = rng.random_range(0..levels);
        multiplicity[k] += 1;
    }

    let total: f64 = weights
        .iter()
        .zip(&multiplicity)
        .map(|(&w, &m)| w as f64 * m as f64)
        .sum();
    let mut eigenvalues = Vec::with_capacity(dim);
    for (w, m) in weights.iter().zip(&multiplicity) {
        for _ in 0..*m {
            eigenvalues.push(*w as f64 / total);
        }
    }
    eigenvalues.extend(std::iter::repeat(0.0).take(zeros));
    eigenvalues.sort_by(|a, b| b.partial_cmp(a).unwrap());
    eigenvalues
}

/// Random member of the X-form set: a random subset of the family plus a
/// random subprojection of the unconstrained complement block.
pub fn random_xform_member(
    spec: &XFormSpec,
    rng: &mut ChaCha8Rng,
    ctx: &ToleranceContext,
) -> Projection {
    let dim = spec.dim();
    let mut acc = Operator::zero(dim);
    for x in spec.members() {
        if rng.random_bool(0.5) {
            acc = &acc + x.as_operator();
        }
    }
    let complement = spec.complement_projector();
    let block = range_basis(&complement, ctx);
    if !block.is_empty() {
        let block_rank = rng.random_range(0..=block.len());
        if block_rank > 0 {
            // Random orthonormal subframe of the block.
            let k = block.len();
            let mixer = random_unitary(k, rng);
            let mut cols = CMatrix::zeros(dim, k);
            for (j, b) in block.iter().enumerate() {
                cols.set_column(j, b);
            }
            let frame = &cols * mixer.matrix();
            for j in 0..block_rank {
                let col = frame.column(j);
                acc = &acc
                    + &Operator::from_matrix_unchecked(&col * col.adjoint());
            }
        }
    }
    Projection::new_unchecked(acc)
}

/// Mutually commuting self-adjoint operators whose spectral projectors all
/// absorb or annihilate every member of the family: eigenvalues are constant
/// on each X block, arbitrary on the complement block, in a shared
/// eigenbasis assembled from the family's ranges.
pub fn commuting_family_in_extension(
    spec: &XFormSpec,
    count: usize,
    rng: &mut ChaCha8Rng,
    ctx: &ToleranceContext,
) -> Vec<Operator> {
    let dim = spec.dim();
    let mut columns: Vec<CVector> = Vec::with_capacity(dim);
    let mut block_of_column: Vec<usize> = Vec::new();
    for (b, x) in spec.members().iter().enumerate() {
        for v in range_basis(x, ctx) {
            columns.push(v);
            block_of_column.push(b);
        }
    }
    let free_start = columns.len();
    for v in range_basis(&spec.complement_projector(), ctx) {
        columns.push(v);
        block_of_column.push(usize::MAX);
    }
    assert_eq!(columns.len(), dim, "family ranges must tile the space");

    let mut basis = CMatrix::zeros(dim, dim);
    for (j, v) in columns.iter().enumerate() {
        basis.set_column(j, v);
    }

    (0..count)
        .map(|_| {
            let block_values: Vec<f64> = (0..spec.len())
                .map(|_| rng.random_range(0..=6) as f64)
                .collect();
            let mut diag = CMatrix::zeros(dim, dim);
            for j in 0..dim {
                let v = if j < free_start {
                    block_values[block_of_column[j]]
                } else {
                    rng.random_range(0..=6) as f64
                };
                diag[(j, j)] = Complex64::new(v, 0.0);
            }
            let m = &(&basis * diag) * basis.adjoint();
            Operator::from_matrix_unchecked(m).hermitian_part()
        })
        .collect()
}
