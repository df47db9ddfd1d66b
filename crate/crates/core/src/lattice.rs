//! Ortholattice operations on projections: order, meet, join, complement,
//! finite sublattices, and their structural checks.

use crate::error::{Error, Result};
use crate::matrix::{check_dims, Operator, Projection};
use crate::spectral::{norm_limit, spectral_resolution, SpectralResolution};
use crate::tolerance::ToleranceContext;

/// Range inclusion: P ≤ Q iff QP = P.
pub fn leq(p: &Projection, q: &Projection, ctx: &ToleranceContext) -> Result<bool> {
    check_dims(p.as_operator(), q.as_operator())?;
    let qp = q.as_operator() * p.as_operator();
    Ok((&qp - p.as_operator()).norm() <= ctx.atol)
}

/// Projection onto ran(P) ∩ ran(Q), computed as the projector onto the
/// nullspace of (I − P) + (I − Q). Both summands are positive semidefinite,
/// so the kernel of the sum is the intersection of the kernels: exactly the
/// common range. Rank-revealing and non-iterative.
pub fn meet_exact(p: &Projection, q: &Projection, ctx: &ToleranceContext) -> Result<Projection> {
    check_dims(p.as_operator(), q.as_operator())?;
    let sum = &p.complement().into_operator() + &q.complement().into_operator();
    let eig = sum.hermitian_part().matrix().clone().symmetric_eigen();
    let lambda_max = eig.eigenvalues.iter().cloned().fold(0.0, f64::max);
    let cut = ctx.atol * lambda_max.max(1.0);
    let dim = p.dim();
    let mut mat = crate::matrix::CMatrix::zeros(dim, dim);
    for k in 0..dim {
        if eig.eigenvalues[k].abs() <= cut {
            let v = eig.eigenvectors.column(k);
            mat += &v * v.adjoint();
        }
    }
    Ok(Projection::new_unchecked(Operator::from_matrix_unchecked(
        mat,
    )))
}

/// Meet through the iterative formula P ∧ Q = lim (½(PQ + QP))ⁿ.
///
/// Powers of the symmetrized product contract onto the common range at a
/// geometric rate set by the largest sub-unit eigenvalue; when the principal
/// angle between the ranges is small that rate approaches one and the
/// iteration can exhaust `ctx.max_iter`, reported as [`Error::NoConvergence`]
/// carrying the contraction rate.
pub fn meet_iterative(
    p: &Projection,
    q: &Projection,
    ctx: &ToleranceContext,
) -> Result<Projection> {
    check_dims(p.as_operator(), q.as_operator())?;
    let pq = p.as_operator() * q.as_operator();
    let qp = q.as_operator() * p.as_operator();
    let s = (&pq + &qp).scale_real(0.5);

    let mut power = s.clone();
    let mut cached_n = 1usize;
    let out = norm_limit(
        |n| {
            while cached_n < n {
                power = &power * &s;
                cached_n += 1;
            }
            power.clone()
        },
        ctx,
    )?;
    if !out.converged {
        return Err(Error::NoConvergence {
            iterations: out.iterations,
            last_step: out.last_step,
            contraction_rate: contraction_rate(&s, ctx),
        });
    }
    Projection::try_new(out.value, &loosened(ctx)).map_err(|_| Error::NoConvergence {
        iterations: out.iterations,
        last_step: out.last_step,
        contraction_rate: contraction_rate(&s, ctx),
    })
}

/// Largest eigenvalue modulus of `s` strictly below one: the geometric rate
/// at which the power iteration approaches its limit.
fn contraction_rate(s: &Operator, ctx: &ToleranceContext) -> Option<f64> {
    let res = spectral_resolution(&s.hermitian_part(), ctx).ok()?;
    res.eigenvalues()
        .iter()
        .map(|v| v.abs())
        .filter(|m| *m < 1.0 - ctx.eig_cluster_tol)
        .fold(None, |acc: Option<f64>, m| {
            Some(acc.map_or(m, |a| a.max(m)))
        })
}

fn loosened(ctx: &ToleranceContext) -> ToleranceContext {
    ToleranceContext {
        atol: ctx.loose(),
        ..*ctx
    }
}

/// Join by de Morgan: P ∨ Q = (P⊥ ∧ Q⊥)⊥.
pub fn join(p: &Projection, q: &Projection, ctx: &ToleranceContext) -> Result<Projection> {
    Ok(meet_exact(&p.complement(), &q.complement(), ctx)?.complement())
}

/// An explicit finite sublattice of the projection lattice, with
/// precomputed order, meet, join, and complement tables.
///
/// Construction validates closure: the element list must contain 0 and the
/// identity, every complement, and every pairwise meet and join (matched
/// within `ctx.atol`).
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    dim: usize,
    elements: Vec<Projection>,
    order: Vec<Vec<bool>>,
    meet_table: Vec<Vec<usize>>,
    join_table: Vec<Vec<usize>>,
    complement_table: Vec<usize>,
    zero_idx: usize,
    one_idx: usize,
}

impl FiniteLattice {
    pub fn new(elements: Vec<Projection>, ctx: &ToleranceContext) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::LatticeNotClosed {
                reason: "empty element list".into(),
            });
        }
        let dim = elements[0].dim();
        for e in &elements {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: e.dim(),
                });
            }
        }
        let n = elements.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if elements[i].approx_eq(&elements[j], ctx.atol) {
                    return Err(Error::LatticeNotClosed {
                        reason: format!("elements {i} and {j} coincide"),
                    });
                }
            }
        }
        let find = |p: &Projection| -> Option<usize> {
            elements.iter().position(|e| e.approx_eq(p, ctx.loose()))
        };
        let zero_idx = find(&Projection::zero(dim)).ok_or_else(|| Error::LatticeNotClosed {
            reason: "zero projection missing".into(),
        })?;
        let one_idx = find(&Projection::identity(dim)).ok_or_else(|| Error::LatticeNotClosed {
            reason: "identity missing".into(),
        })?;

        let mut complement_table = vec![0usize; n];
        for (i, e) in elements.iter().enumerate() {
            complement_table[i] = find(&e.complement()).ok_or_else(|| Error::LatticeNotClosed {
                reason: format!("complement of element {i} missing"),
            })?;
        }

        let mut order = vec![vec![false; n]; n];
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in 0..n {
                order[i][j] = leq(&elements[i], &elements[j], ctx)?;
            }
        }

        let mut meet_table = vec![vec![0usize; n]; n];
        let mut join_table = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in i..n {
                let m = meet_exact(&elements[i], &elements[j], ctx)?;
                let mi = find(&m).ok_or_else(|| Error::LatticeNotClosed {
                    reason: format!("meet of elements {i}, {j} missing"),
                })?;
                let jn = join(&elements[i], &elements[j], ctx)?;
                let ji = find(&jn).ok_or_else(|| Error::LatticeNotClosed {
                    reason: format!("join of elements {i}, {j} missing"),
                })?;
                meet_table[i][j] = mi;
                meet_table[j][i] = mi;
                join_table[i][j] = ji;
                join_table[j][i] = ji;
            }
        }

        Ok(Self {
            dim,
            elements,
            order,
            meet_table,
            join_table,
            complement_table,
            zero_idx,
            one_idx,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Projection] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Projection {
        &self.elements[i]
    }

    pub fn zero_index(&self) -> usize {
        self.zero_idx
    }

    pub fn one_index(&self) -> usize {
        self.one_idx
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.order[i][j]
    }

    pub fn meet_idx(&self, i: usize, j: usize) -> usize {
        self.meet_table[i][j]
    }

    pub fn join_idx(&self, i: usize, j: usize) -> usize {
        self.join_table[i][j]
    }

    pub fn complement_idx(&self, i: usize) -> usize {
        self.complement_table[i]
    }

    pub fn index_of(&self, p: &Projection, ctx: &ToleranceContext) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| e.approx_eq(p, ctx.loose()))
    }

    /// Principal ideal x↓ = { y : y ≤ x }.
    pub fn principal_ideal(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.order[y][x]).collect()
    }

    /// Every ideal of a finite lattice is principal (the join of its members
    /// belongs to it), so the ideals are exactly x↓ for x below the top.
    pub fn all_ideals(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .filter(|&x| x != self.one_idx)
            .map(|x| self.principal_ideal(x))
            .collect()
    }

    /// Join of a set of element indices (the zero element for an empty set).
    pub fn join_all(&self, indices: &[usize]) -> usize {
        indices
            .iter()
            .fold(self.zero_idx, |acc, &i| self.join_table[acc][i])
    }
}

/// Closes `generators` ∪ {0, I} under complement, meet, and join until a
/// fixpoint; generic non-commuting generators produce infinite ortholattices,
/// which surface as [`Error::CapExceeded`].
pub fn generate_ortholattice(
    generators: &[Projection],
    cap: usize,
    ctx: &ToleranceContext,
) -> Result<FiniteLattice> {
    let dim = generators
        .first()
        .map(|p| p.dim())
        .ok_or(Error::EmptySet)?;
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: g.dim(),
            });
        }
    }
    let mut elements: Vec<Projection> = vec![Projection::zero(dim), Projection::identity(dim)];
    let push_unique = |elements: &mut Vec<Projection>, p: Projection| -> bool {
        if elements.iter().any(|e| e.approx_eq(&p, ctx.atol)) {
            false
        } else {
            elements.push(p);
            true
        }
    };
    for g in generators {
        push_unique(&mut elements, g.clone());
    }

    loop {
        let mut added = false;
        let snapshot = elements.len();
        for i in 0..snapshot {
            let c = elements[i].complement();
            added |= push_unique(&mut elements, c);
            if elements.len() > cap {
                return Err(Error::CapExceeded { cap });
            }
        }
        for i in 0..snapshot {
            for j in (i + 1)..snapshot {
                let m = meet_exact(&elements[i], &elements[j], ctx)?;
                added |= push_unique(&mut elements, m);
                let jn = join(&elements[i], &elements[j], ctx)?;
                added |= push_unique(&mut elements, jn);
                if elements.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
            }
        }
        if !added {
            break;
        }
    }

    FiniteLattice::new(elements, ctx)
}

/// Default element cap for [`generate_ortholattice`].
pub const DEFAULT_LATTICE_CAP: usize = 512;

/// Exhaustive orthomodularity check: x ≤ y ⇒ y = x ∨ (y ∧ x⊥).
pub fn check_orthomodular(l: &FiniteLattice) -> bool {
    let n = l.len();
    for x in 0..n {
        for y in 0..n {
            if l.leq_idx(x, y) {
                let inner = l.meet_idx(y, l.complement_idx(x));
                if l.join_idx(x, inner) != y {
                    return false;
                }
            }
        }
    }
    true
}

/// Exhaustive distributivity check: x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z).
pub fn check_boolean(l: &FiniteLattice) -> bool {
    let n = l.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = l.meet_idx(x, l.join_idx(y, z));
                let rhs = l.join_idx(l.meet_idx(x, y), l.meet_idx(x, z));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Indices of the minimal nonzero elements.
pub fn atom_indices(l: &FiniteLattice) -> Vec<usize> {
    let n = l.len();
    (0..n)
        .filter(|&x| {
            x != l.zero_index()
                && (0..n).all(|y| !(y != l.zero_index() && y != x && l.leq_idx(y, x)))
        })
        .collect()
}

/// The minimal nonzero elements of the lattice.
pub fn atoms(l: &FiniteLattice) -> Vec<Projection> {
    atom_indices(l)
        .into_iter()
        .map(|i| l.element(i).clone())
        .collect()
}

/// Finite-truncation demonstration of the accumulating-spectrum construction
/// over a strictly decreasing projection chain.
#[derive(Debug, Clone)]
pub struct ChainDemo {
    /// Mₙ = Pₙ − Pₙ₊₁ for consecutive chain members; mutually orthogonal.
    pub differences: Vec<Projection>,
    /// The final chain element.
    pub tail: Projection,
    /// P₁⊥, the complement of the chain top.
    pub top_complement: Projection,
    /// Q_N = P₁⊥ + Σₙ₌₁ᴺ e⁻ⁿ Mₙ.
    pub truncated: Operator,
    /// Spectral resolution of Q_N.
    pub spectrum: SpectralResolution,
    /// Expected eigenvalues of Q_N, descending.
    pub expected_spectrum: Vec<f64>,
    /// ‖Σ Mₙ + P∞ + P₁⊥ − I‖ over the whole chain.
    pub completeness_defect: f64,
}

/// Builds the chain differences and the truncated operator
/// Q_N = P₁⊥ + Σₙ₌₁ᴺ e⁻ⁿ Mₙ, and verifies the completeness identity
/// Σ Mₙ + P∞ + P₁⊥ = I.
pub fn atomicity_demo(
    chain: &[Projection],
    truncation: usize,
    ctx: &ToleranceContext,
) -> Result<ChainDemo> {
    if chain.len() < 2 {
        return Err(Error::ChainNotStrict { position: 0 });
    }
    let dim = chain[0].dim();
    for (pos, p) in chain.iter().enumerate() {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: p.dim(),
            });
        }
        if p.is_zero(ctx) {
            return Err(Error::ChainNotStrict { position: pos });
        }
    }
    for pos in 0..chain.len() - 1 {
        let lower_leq = leq(&chain[pos + 1], &chain[pos], ctx)?;
        let strict = chain[pos].distance(&chain[pos + 1]) > ctx.atol;
        if !lower_leq || !strict {
            return Err(Error::ChainNotStrict { position: pos + 1 });
        }
    }
    let available = chain.len() - 1;
    if truncation == 0 || truncation > available {
        return Err(Error::TruncationTooDeep {
            requested: truncation,
            available,
        });
    }

    let differences: Vec<Projection> = (0..available)
        .map(|n| Projection::new_unchecked(chain[n].as_operator() - chain[n + 1].as_operator()))
        .collect();
    let tail = chain[chain.len() - 1].clone();
    let top_complement = chain[0].complement();

    let mut completeness = top_complement.as_operator().clone();
    for m in &differences {
        completeness = &completeness + m.as_operator();
    }
    completeness = &completeness + tail.as_operator();
    let completeness_defect = completeness.distance(&Operator::identity(dim));

    let mut truncated = top_complement.as_operator().clone();
    for (n, m) in differences.iter().take(truncation).enumerate() {
        truncated = &truncated + &m.as_operator().scale_real((-((n + 1) as f64)).exp());
    }

    let mut expected_spectrum = Vec::new();
    if top_complement.rank() > 0 {
        expected_spectrum.push(1.0);
    }
    for n in 1..=truncation {
        expected_spectrum.push((-(n as f64)).exp());
    }
    let untruncated_mass =
        tail.rank() > 0 || differences.iter().skip(truncation).any(|m| m.rank() > 0);
    if untruncated_mass {
        expected_spectrum.push(0.0);
    }

    let spectrum = spectral_resolution(&truncated, ctx)?;

    Ok(ChainDemo {
        differences,
        tail,
        top_complement,
        truncated,
        spectrum,
        expected_spectrum,
        completeness_defect,
    })
}
