//! Commutants, double commutants, von Neumann algebra membership, and the
//! restriction/extension maps between self-adjoint operator sets and their
//! projection sets, together with the closure verification that ties the two
//! pictures together.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, CVector, Operator, Projection};
use crate::rules::XFormSpec;
use crate::sample;
use crate::spectral::{range_basis, spectral_resolution, superposition_projector};
use crate::tolerance::ToleranceContext;

/// A finite list of operators of uniform dimension. The `self_adjoint_set`
/// flag records whether the list contains the adjoint of each member.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    elements: Vec<Operator>,
    self_adjoint_set: bool,
}

impl OperatorSet {
    pub fn new(elements: Vec<Operator>, ctx: &ToleranceContext) -> Result<Self> {
        let dim = elements.first().map(|e| e.dim()).ok_or(Error::EmptySet)?;
        for e in &elements {
            if e.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: e.dim(),
                });
            }
        }
        let self_adjoint_set = elements.iter().all(|e| {
            let adj = e.adjoint();
            elements.iter().any(|f| f.approx_eq(&adj, ctx.atol))
        });
        Ok(Self {
            elements,
            self_adjoint_set,
        })
    }

    /// Appends missing adjoints so the flag holds by construction.
    pub fn self_adjoint_closure(mut self, ctx: &ToleranceContext) -> Self {
        let mut extra = Vec::new();
        for e in &self.elements {
            let adj = e.adjoint();
            let present = self
                .elements
                .iter()
                .chain(extra.iter())
                .any(|f| f.approx_eq(&adj, ctx.atol));
            if !present {
                extra.push(adj);
            }
        }
        self.elements.extend(extra);
        self.self_adjoint_set = true;
        self
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn elements(&self) -> &[Operator] {
        &self.elements
    }

    pub fn is_self_adjoint_set(&self) -> bool {
        self.self_adjoint_set
    }
}

/// Column-major vectorization of an operator.
fn vectorize(op: &Operator) -> CVector {
    CVector::from_column_slice(op.matrix().as_slice())
}

fn unvectorize(dim: usize, v: &CVector) -> Operator {
    Operator::from_matrix_unchecked(CMatrix::from_column_slice(dim, dim, v.as_slice()))
}

/// Orthonormal basis of the nullspace of `m`: the right singular vectors
/// whose singular values fall at or below atol·max(σ_max, 1).
fn nullspace_basis(m: &CMatrix, ctx: &ToleranceContext) -> Vec<CVector> {
    let svd = crate::svd::jacobi_svd(m);
    let cut = ctx.atol * svd.sigma_max().max(1.0);
    svd.null_vectors(cut)
}

/// A linear subspace of operators represented by an orthonormal basis in the
/// Hilbert–Schmidt inner product.
#[derive(Debug, Clone)]
pub struct OperatorSpan {
    dim: usize,
    basis: Vec<Operator>,
    contains_identity: bool,
}

impl OperatorSpan {
    /// Orthonormalizes the given operators into a span basis via a
    /// rank-revealing SVD of their vectorizations.
    pub fn from_operators(ops: &[Operator], ctx: &ToleranceContext) -> Result<Self> {
        let dim = ops.first().map(|o| o.dim()).ok_or(Error::EmptySet)?;
        for o in ops {
            if o.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: o.dim(),
                });
            }
        }
        let mut cols = CMatrix::zeros(dim * dim, ops.len());
        for (j, o) in ops.iter().enumerate() {
            cols.set_column(j, &vectorize(o));
        }
        let svd = crate::svd::jacobi_svd(&cols);
        let cut = ctx.atol * svd.sigma_max().max(1.0);
        let basis: Vec<Operator> = svd
            .range_vectors(cut)
            .into_iter()
            .map(|u| unvectorize(dim, &u))
            .collect();
        if basis.is_empty() {
            return Err(Error::EmptySpan { dim });
        }
        let mut span = Self {
            dim,
            basis,
            contains_identity: false,
        };
        span.contains_identity = span.contains(&Operator::identity(dim), ctx);
        Ok(span)
    }

    fn from_basis_unchecked(dim: usize, basis: Vec<Operator>, ctx: &ToleranceContext) -> Self {
        let mut span = Self {
            dim,
            basis,
            contains_identity: false,
        };
        span.contains_identity = span.contains(&Operator::identity(dim), ctx);
        span
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the subspace (number of basis operators).
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Operator] {
        &self.basis
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    /// Orthogonal projection of `q` onto the span.
    pub fn project(&self, q: &Operator) -> Operator {
        let vq = vectorize(q);
        let mut acc = CVector::zeros(self.dim * self.dim);
        for b in &self.basis {
            let vb = vectorize(b);
            let coeff: Complex64 = vb.dotc(&vq);
            acc += vb.map(|z| z * coeff);
        }
        unvectorize(self.dim, &acc)
    }

    /// Distance from `q` to the span.
    pub fn residual(&self, q: &Operator) -> f64 {
        q.distance(&self.project(q))
    }

    /// Membership within `ctx.atol`, scaled by the operator's norm.
    pub fn contains(&self, q: &Operator, ctx: &ToleranceContext) -> bool {
        q.dim() == self.dim && self.residual(q) <= ctx.atol * q.norm().max(1.0)
    }

    pub fn contains_span(&self, other: &OperatorSpan, ctx: &ToleranceContext) -> bool {
        other.basis.iter().all(|b| self.contains(b, ctx))
    }

    pub fn equals_span(&self, other: &OperatorSpan, ctx: &ToleranceContext) -> bool {
        self.rank() == other.rank()
            && self.contains_span(other, ctx)
            && other.contains_span(self, ctx)
    }

    /// Intersection of two spans: the joint nullspace of the two
    /// complement projectors in vectorized form.
    pub fn intersect(&self, other: &OperatorSpan, ctx: &ToleranceContext) -> Result<OperatorSpan> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let n2 = self.dim * self.dim;
        let gram_projector = |span: &OperatorSpan| -> CMatrix {
            let mut p = CMatrix::zeros(n2, n2);
            for b in &span.basis {
                let vb = vectorize(b);
                p += &vb * vb.adjoint();
            }
            p
        };
        let id = CMatrix::identity(n2, n2);
        let mut stacked = CMatrix::zeros(2 * n2, n2);
        stacked.view_mut((0, 0), (n2, n2)).copy_from(&(&id - gram_projector(self)));
        stacked
            .view_mut((n2, 0), (n2, n2))
            .copy_from(&(&id - gram_projector(other)));
        let basis = nullspace_basis(&stacked, ctx)
            .into_iter()
            .map(|v| unvectorize(self.dim, &v))
            .collect();
        Ok(Self::from_basis_unchecked(self.dim, basis, ctx))
    }
}

/// The commutant of a set: the solution space of TB = BT for every element
/// B, vectorized as the stacked nullspace of the maps T ↦ TB − BT.
///
/// The commutant depends only on the span of the generators, so the
/// generator list is orthonormalized first to bound the stacked system.
pub fn commutant(s: &OperatorSet, ctx: &ToleranceContext) -> Result<OperatorSpan> {
    let dim = s.dim();
    let span = match OperatorSpan::from_operators(s.elements(), ctx) {
        Ok(span) => span,
        // Everything commutes with an all-zero generating set.
        Err(Error::EmptySpan { .. }) => return Ok(full_operator_span(dim, ctx)),
        Err(e) => return Err(e),
    };
    let n2 = dim * dim;
    let k = span.rank();
    let id = CMatrix::identity(dim, dim);
    let mut stacked = CMatrix::zeros(k * n2, n2);
    for (block, b) in span.basis().iter().enumerate() {
        // vec(TB − BT) = (Bᵀ ⊗ I − I ⊗ B) vec(T), column-major vec.
        let left = b.matrix().transpose().kronecker(&id);
        let right = id.kronecker(b.matrix());
        stacked
            .view_mut((block * n2, 0), (n2, n2))
            .copy_from(&(left - right));
    }
    let basis: Vec<Operator> = nullspace_basis(&stacked, ctx)
        .into_iter()
        .map(|v| unvectorize(dim, &v))
        .collect();
    if basis.is_empty() {
        // The identity always commutes; an empty nullspace signals a
        // numerical breakdown rather than a legitimate answer.
        return Err(Error::OracleDisagreement {
            context: "commutant lost the identity".into(),
        });
    }
    Ok(OperatorSpan::from_basis_unchecked(dim, basis, ctx))
}

/// All of B(H), spanned by the matrix units.
fn full_operator_span(dim: usize, ctx: &ToleranceContext) -> OperatorSpan {
    let mut basis = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut m = CMatrix::zeros(dim, dim);
            m[(i, j)] = Complex64::new(1.0, 0.0);
            basis.push(Operator::from_matrix_unchecked(m));
        }
    }
    OperatorSpan::from_basis_unchecked(dim, basis, ctx)
}

/// The commutant applied twice: the smallest von Neumann algebra containing
/// the generating set.
pub fn double_commutant(s: &OperatorSet, ctx: &ToleranceContext) -> Result<OperatorSpan> {
    let first = commutant(s, ctx)?;
    let as_set = OperatorSet::new(first.basis().to_vec(), ctx)?;
    commutant(&as_set, ctx)
}

/// Von Neumann algebra test: contains the identity, closed under adjoints
/// and products on basis pairs, and equals its double commutant as a span.
pub fn is_von_neumann_algebra(a: &OperatorSpan, ctx: &ToleranceContext) -> bool {
    if !a.contains_identity() {
        return false;
    }
    for b in a.basis() {
        if !a.contains(&b.adjoint(), ctx) {
            return false;
        }
    }
    for b in a.basis() {
        for c in a.basis() {
            if !a.contains(&(b * c), ctx) {
                return false;
            }
        }
    }
    let set = match OperatorSet::new(a.basis().to_vec(), ctx) {
        Ok(s) => s,
        Err(_) => return false,
    };
    match double_commutant(&set, ctx) {
        Ok(dc) => dc.equals_span(a, ctx),
        Err(_) => false,
    }
}

/// Membership of a self-adjoint operator in the span.
pub fn self_adjoint_part_contains(
    a: &OperatorSpan,
    q: &Operator,
    ctx: &ToleranceContext,
) -> Result<bool> {
    let defect = q.self_adjoint_defect();
    if defect > ctx.atol {
        return Err(Error::NotSelfAdjoint { defect });
    }
    Ok(a.contains(q, ctx))
}

/// Membership of a projection in the span (restriction of the algebra).
pub fn restriction_membership(a: &OperatorSpan, p: &Projection, ctx: &ToleranceContext) -> bool {
    a.contains(p.as_operator(), ctx)
}

/// A definite-valued projection set given as a membership predicate with a
/// finite generating family, never by enumeration (the set is uncountable
/// whenever an unconstrained block of dimension ≥ 2 is present).
#[derive(Debug, Clone)]
pub enum DefiniteSetPredicate {
    /// Every projection (naive realism).
    FullLattice { dim: usize },
    /// X-form set over a mutually orthogonal family.
    XForm(XFormSpec),
    /// Projections lying in a (verified) von Neumann algebra span.
    AlgebraRestriction(OperatorSpan),
    /// An explicit finite list of projections.
    ExplicitFinite { elements: Vec<Projection> },
}

impl DefiniteSetPredicate {
    pub fn dim(&self) -> usize {
        match self {
            Self::FullLattice { dim } => *dim,
            Self::XForm(spec) => spec.dim(),
            Self::AlgebraRestriction(span) => span.dim(),
            Self::ExplicitFinite { elements } => elements[0].dim(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::FullLattice { .. } => "full-lattice",
            Self::XForm(_) => "x-form",
            Self::AlgebraRestriction(_) => "algebra-restriction",
            Self::ExplicitFinite { .. } => "explicit-finite",
        }
    }

    /// Membership of a projection in the definite set.
    pub fn contains(&self, p: &Projection, ctx: &ToleranceContext) -> Result<bool> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: p.dim(),
            });
        }
        match self {
            Self::FullLattice { .. } => Ok(true),
            Self::XForm(spec) => crate::rules::xform_membership(spec, p, ctx),
            Self::AlgebraRestriction(span) => Ok(restriction_membership(span, p, ctx)),
            Self::ExplicitFinite { elements } => {
                Ok(elements.iter().any(|e| e.approx_eq(p, ctx.loose())))
            }
        }
    }

    /// A finite projection family whose span equals the span of the whole
    /// definite set.
    pub fn generating_projections(&self, ctx: &ToleranceContext) -> Result<Vec<Projection>> {
        match self {
            Self::FullLattice { dim } => block_spanning_projections(&Projection::identity(*dim), ctx),
            Self::XForm(spec) => {
                let mut gens: Vec<Projection> = spec.members().to_vec();
                gens.extend(block_spanning_projections(&spec.complement_projector(), ctx)?);
                Ok(gens)
            }
            Self::AlgebraRestriction(span) => algebra_projection_generators(span, ctx),
            Self::ExplicitFinite { elements } => Ok(elements.clone()),
        }
    }

    /// The resolving projection family 𝐏 whose commutant should cut out the
    /// definite set as its restriction: subprojections of each X member for
    /// X-form sets, the trivial family for the full lattice, and the
    /// restriction of the commutant algebra otherwise.
    pub fn resolving_family(&self, ctx: &ToleranceContext) -> Result<Vec<Projection>> {
        match self {
            Self::FullLattice { dim } => {
                Ok(vec![Projection::zero(*dim), Projection::identity(*dim)])
            }
            Self::XForm(spec) => {
                let mut family = Vec::new();
                for x in spec.members() {
                    family.push(x.clone());
                    family.extend(block_spanning_projections(x, ctx)?);
                }
                Ok(family)
            }
            Self::AlgebraRestriction(_) | Self::ExplicitFinite { .. } => {
                let gens = self.generating_projections(ctx)?;
                let ops: Vec<Operator> =
                    gens.iter().map(|p| p.as_operator().clone()).collect();
                let algebra =
                    double_commutant(&OperatorSet::new(ops, ctx)?, ctx)?;
                let commutant_span = commutant(
                    &OperatorSet::new(algebra.basis().to_vec(), ctx)?,
                    ctx,
                )?;
                algebra_projection_generators(&commutant_span, ctx)
            }
        }
    }
}

/// Rank-1 projections spanning the full operator algebra of the block
/// ran(P): projectors onto basis vectors and onto their pairwise real and
/// imaginary superpositions.
fn block_spanning_projections(
    block: &Projection,
    ctx: &ToleranceContext,
) -> Result<Vec<Projection>> {
    let basis = range_basis(block, ctx);
    let mut family = Vec::new();
    for (i, u) in basis.iter().enumerate() {
        family.push(Projection::onto_vector(u)?);
        for v in basis.iter().skip(i + 1) {
            family.push(superposition_projector(u, v, Complex64::new(1.0, 0.0))?);
            family.push(superposition_projector(u, v, Complex64::new(0.0, 1.0))?);
        }
    }
    Ok(family)
}

/// Spectral projectors of the hermitian and skew parts of a span basis:
/// a projection family spanning the same von Neumann algebra.
fn algebra_projection_generators(
    span: &OperatorSpan,
    ctx: &ToleranceContext,
) -> Result<Vec<Projection>> {
    let mut family: Vec<Projection> = Vec::new();
    let mut push_unique = |p: Projection| {
        if p.norm() > ctx.atol && !family.iter().any(|q| q.approx_eq(&p, ctx.loose())) {
            family.push(p);
        }
    };
    for b in span.basis() {
        for part in [b.hermitian_part(), b.skew_part()] {
            if part.norm() <= ctx.atol {
                continue;
            }
            for (_, proj) in spectral_resolution(&part, ctx)?.iter() {
                push_unique(proj.clone());
            }
        }
    }
    if family.is_empty() {
        family.push(Projection::identity(span.dim()));
    }
    Ok(family)
}

/// Membership of a self-adjoint operator in the extension of the definite
/// set: every spectral projector must be a member.
pub fn extension_membership(
    d: &DefiniteSetPredicate,
    q: &Operator,
    ctx: &ToleranceContext,
) -> Result<bool> {
    let resolution = spectral_resolution(q, ctx)?;
    for (_, proj) in resolution.iter() {
        if !d.contains(proj, ctx)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One sampled projection whose memberships disagreed.
#[derive(Debug, Clone)]
pub struct ClosureWitness {
    pub projection: Projection,
    pub in_definite_set: bool,
    pub in_commutant_restriction: bool,
    pub in_algebra_restriction: bool,
}

/// Outcome of [`star_closure_check`].
#[derive(Debug, Clone)]
pub struct ClosureReport {
    /// Whether every sampled projection agreed on all three memberships.
    pub passed: bool,
    pub samples_checked: usize,
    /// Size of the resolving family 𝐏.
    pub resolving_family_size: usize,
    /// Subspace dimension of 𝐏′.
    pub commutant_rank: usize,
    /// Subspace dimension of the algebra generated by the definite set.
    pub algebra_rank: usize,
    /// Whether 𝐏′ and the generated algebra coincide as spans.
    pub spans_agree: bool,
    pub witnesses: Vec<ClosureWitness>,
}

/// Verifies that the definite set is the restriction of the commutant of a
/// projection family, on deterministic pseudo-random samples.
///
/// Two routes are compared against the set's own membership predicate:
/// membership in the restriction of 𝐏′ for the resolving family 𝐏, and
/// membership in the restriction of the von Neumann algebra generated by the
/// set itself. Sets with star-closed extensions agree everywhere; sets
/// without produce witnesses (projections in the restriction that are not in
/// the set).
pub fn star_closure_check(
    d: &DefiniteSetPredicate,
    sample_budget: usize,
    seed: u64,
    ctx: &ToleranceContext,
) -> Result<ClosureReport> {
    let dim = d.dim();
    let gens = d.generating_projections(ctx)?;
    let gen_ops: Vec<Operator> = gens.iter().map(|p| p.as_operator().clone()).collect();
    let algebra = double_commutant(&OperatorSet::new(gen_ops, ctx)?, ctx)?;

    let family = d.resolving_family(ctx)?;
    let family_ops: Vec<Operator> = family.iter().map(|p| p.as_operator().clone()).collect();
    let commutant_span = commutant(&OperatorSet::new(family_ops, ctx)?, ctx)?;

    let spans_agree = commutant_span.equals_span(&algebra, ctx);

    let mut samples: Vec<Projection> = Vec::new();
    samples.extend(gens.iter().cloned());
    samples.extend(family.iter().cloned());
    samples.push(Projection::zero(dim));
    samples.push(Projection::identity(dim));

    let mut rng = sample::rng(seed);
    let structured = sample_budget / 3;
    if let DefiniteSetPredicate::XForm(spec) = d {
        for _ in 0..structured {
            samples.push(sample::random_xform_member(spec, &mut rng, ctx));
        }
    }
    while samples.len() < sample_budget.max(4) {
        samples.push(sample::random_projection_any_rank(dim, &mut rng));
    }

    let mut witnesses = Vec::new();
    for p in &samples {
        let in_d = d.contains(p, ctx)?;
        let in_c = restriction_membership(&commutant_span, p, ctx);
        let in_a = restriction_membership(&algebra, p, ctx);
        if in_d != in_c || in_d != in_a {
            witnesses.push(ClosureWitness {
                projection: p.clone(),
                in_definite_set: in_d,
                in_commutant_restriction: in_c,
                in_algebra_restriction: in_a,
            });
        }
    }

    Ok(ClosureReport {
        passed: witnesses.is_empty() && spans_agree,
        samples_checked: samples.len(),
        resolving_family_size: family.len(),
        commutant_rank: commutant_span.rank(),
        algebra_rank: algebra.rank(),
        spans_agree,
        witnesses,
    })
}
