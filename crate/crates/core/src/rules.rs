//! The definite-valued projection sets of the orthodox, Clifton,
//! Kochen–Dieks, and Bub interpretation rules, built from a density operator
//! (plus a preferred observable for Bub's rule) through the common X-form
//! machinery: a mutually orthogonal projection family 𝐗 whose members every
//! definite projection must absorb or annihilate.

use crate::error::{Error, Result};
use crate::matrix::{CVector, Operator, Projection};
use crate::spectral::{spectral_resolution, SpectralResolution};
use crate::tolerance::ToleranceContext;

/// Which interpretation rule builds the definite set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleSelector {
    /// Every projection is definite; not an X-form set.
    Naive,
    Orthodox,
    Clifton,
    KochenDieks,
    Bub,
}

impl RuleSelector {
    pub fn name(&self) -> &'static str {
        match self {
            RuleSelector::Naive => "naive",
            RuleSelector::Orthodox => "orthodox",
            RuleSelector::Clifton => "clifton",
            RuleSelector::KochenDieks => "kochen-dieks",
            RuleSelector::Bub => "bub",
        }
    }
}

/// A validated density operator with its clustered spectral resolution and
/// the projector onto its null space.
#[derive(Debug, Clone)]
pub struct DensityState {
    state: Operator,
    spectral: SpectralResolution,
    null_projector: Projection,
}

impl DensityState {
    pub fn state(&self) -> &Operator {
        &self.state
    }

    pub fn dim(&self) -> usize {
        self.state.dim()
    }

    pub fn spectral(&self) -> &SpectralResolution {
        &self.spectral
    }

    /// Projector onto the eigenvalue-0 cluster; zero when the state is
    /// nonsingular.
    pub fn null_projector(&self) -> &Projection {
        &self.null_projector
    }

    /// Projector onto the image space: the complement of the null projector.
    pub fn support_projector(&self) -> Projection {
        self.null_projector.complement()
    }

    /// Nonzero-eigenvalue spectral projectors with their weights.
    pub fn support_pairs(&self, ctx: &ToleranceContext) -> Vec<(f64, Projection)> {
        self.spectral
            .iter()
            .filter(|(w, _)| w.abs() > ctx.eig_cluster_tol)
            .map(|(w, p)| (w, p.clone()))
            .collect()
    }

    pub fn is_pure(&self, ctx: &ToleranceContext) -> bool {
        let w2 = self.state() * self.state();
        w2.distance(self.state()) <= ctx.loose()
    }
}

/// Validates and decomposes a density operator: self-adjoint, eigenvalues in
/// [0, 1], unit trace. Inputs are rejected rather than renormalized.
pub fn make_density_state(w: &Operator, ctx: &ToleranceContext) -> Result<DensityState> {
    let adjdef = w.self_adjoint_defect();
    if adjdef > ctx.atol {
        return Err(Error::NotDensityOperator {
            reason: format!("not self-adjoint (defect {adjdef:.3e})"),
        });
    }
    let tr = w.trace();
    if (tr.re - 1.0).abs() > ctx.atol.max(1e-12) || tr.im.abs() > ctx.atol.max(1e-12) {
        return Err(Error::NotDensityOperator {
            reason: format!("trace is {:.12} + {:.3e}i, expected 1", tr.re, tr.im),
        });
    }
    let spectral = spectral_resolution(w, ctx)?;
    for &v in spectral.eigenvalues() {
        if v < -ctx.atol {
            return Err(Error::NotDensityOperator {
                reason: format!("negative eigenvalue {v:.3e}"),
            });
        }
        if v > 1.0 + ctx.atol {
            return Err(Error::NotDensityOperator {
                reason: format!("eigenvalue {v:.12} exceeds 1"),
            });
        }
    }
    let null_projector = spectral
        .iter()
        .find(|(v, _)| v.abs() <= ctx.eig_cluster_tol)
        .map(|(_, p)| p.clone())
        .unwrap_or_else(|| Projection::zero(w.dim()));
    Ok(DensityState {
        state: w.clone(),
        spectral,
        null_projector,
    })
}

/// A mutually orthogonal family 𝐗 of nonzero projections defining the
/// X-form set { P : PX = X or 0 for all X ∈ 𝐗 }.
#[derive(Debug, Clone)]
pub struct XFormSpec {
    dim: usize,
    x_list: Vec<Projection>,
}

impl XFormSpec {
    /// Validates mutual orthogonality and absence of the zero projection.
    pub fn new(x_list: Vec<Projection>, ctx: &ToleranceContext) -> Result<Self> {
        let dim = x_list.first().map(|p| p.dim()).ok_or(Error::EmptySet)?;
        for x in &x_list {
            if x.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: x.dim(),
                });
            }
            if x.is_zero(ctx) {
                return Err(Error::PreconditionViolated {
                    reason: "X-form family must not contain the zero projection".into(),
                });
            }
        }
        for i in 0..x_list.len() {
            for j in (i + 1)..x_list.len() {
                let prod = x_list[i].as_operator() * x_list[j].as_operator();
                if prod.norm() > ctx.loose() {
                    return Err(Error::PreconditionViolated {
                        reason: format!(
                            "X-form members {i} and {j} are not orthogonal (overlap {:.3e})",
                            prod.norm()
                        ),
                    });
                }
            }
        }
        Ok(Self { dim, x_list })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[Projection] {
        &self.x_list
    }

    pub fn len(&self) -> usize {
        self.x_list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x_list.is_empty()
    }

    /// Σ_{X ∈ 𝐗} X.
    pub fn span_projector(&self) -> Projection {
        let mut acc = Operator::zero(self.dim);
        for x in &self.x_list {
            acc = &acc + x.as_operator();
        }
        Projection::new_unchecked(acc)
    }

    /// I − Σ X: the block left unconstrained by the family.
    pub fn complement_projector(&self) -> Projection {
        self.span_projector().complement()
    }
}

/// Orthodox rule: the only definite projections are those that preserve or
/// annihilate the state, so 𝐗 is the singleton support projection.
pub fn rule_orthodox(state: &DensityState, ctx: &ToleranceContext) -> Result<XFormSpec> {
    XFormSpec::new(vec![state.support_projector()], ctx)
}

/// Clifton rule: 𝐗 is the set of nonzero-eigenvalue spectral projectors.
pub fn rule_clifton(state: &DensityState, ctx: &ToleranceContext) -> Result<XFormSpec> {
    let members: Vec<Projection> = state
        .support_pairs(ctx)
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    XFormSpec::new(members, ctx)
}

/// Kochen–Dieks rule: 𝐗 is every spectral projector, including the null
/// projector when the state is singular. The family then sums to the
/// identity and generates a Boolean algebra.
pub fn rule_kochen_dieks(state: &DensityState, ctx: &ToleranceContext) -> Result<XFormSpec> {
    let mut members: Vec<Projection> = state
        .support_pairs(ctx)
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    if state.null_projector().rank() > 0 {
        members.push(state.null_projector().clone());
    }
    XFormSpec::new(members, ctx)
}

/// Input for Bub's rule: a pure state and a preferred observable.
#[derive(Debug, Clone)]
pub struct BubRuleInput {
    psi: CVector,
    observable: Operator,
}

impl BubRuleInput {
    pub fn new(psi: CVector, observable: Operator, ctx: &ToleranceContext) -> Result<Self> {
        if psi.len() != observable.dim() {
            return Err(Error::DimensionMismatch {
                left: psi.len(),
                right: observable.dim(),
            });
        }
        if (psi.norm() - 1.0).abs() > ctx.atol.max(1e-9) {
            return Err(Error::PreconditionViolated {
                reason: format!("state vector norm is {:.12}, expected 1", psi.norm()),
            });
        }
        let defect = observable.self_adjoint_defect();
        if defect > ctx.atol {
            return Err(Error::NotSelfAdjoint { defect });
        }
        Ok(Self { psi, observable })
    }

    pub fn psi(&self) -> &CVector {
        &self.psi
    }

    pub fn observable(&self) -> &Operator {
        &self.observable
    }

    /// The pure density operator |ψ⟩⟨ψ|.
    pub fn density(&self) -> Operator {
        Operator::from_matrix_unchecked(&self.psi * self.psi.adjoint())
    }
}

/// Bub rule: for each eigenspace of the preferred observable holding a
/// nonzero component of ψ, 𝐗 gets the rank-1 projector onto that component.
pub fn rule_bub(input: &BubRuleInput, ctx: &ToleranceContext) -> Result<XFormSpec> {
    let resolution = spectral_resolution(input.observable(), ctx)?;
    let mut members = Vec::new();
    for (_, eigenspace) in resolution.iter() {
        let component = eigenspace.as_operator().apply(input.psi());
        if component.norm() > ctx.atol {
            members.push(Projection::onto_vector(&component)?);
        }
    }
    if members.is_empty() {
        return Err(Error::AllComponentsZero);
    }
    XFormSpec::new(members, ctx)
}

/// Membership in the X-form set: PX = X or PX = 0 for every X ∈ 𝐗.
pub fn xform_membership(
    spec: &XFormSpec,
    p: &Projection,
    ctx: &ToleranceContext,
) -> Result<bool> {
    if p.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            left: spec.dim(),
            right: p.dim(),
        });
    }
    for x in spec.members() {
        let px = p.as_operator() * x.as_operator();
        let absorbs = px.distance(x.as_operator()) <= ctx.atol;
        let annihilates = px.norm() <= ctx.atol;
        if !absorbs && !annihilates {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in the ideal I = { P ∈ d : P · ΣX = 0 } of the X-form set.
/// Errors with [`Error::NotInD`] when P is not a member of the set at all.
pub fn xform_ideal_membership(
    spec: &XFormSpec,
    p: &Projection,
    ctx: &ToleranceContext,
) -> Result<bool> {
    if !xform_membership(spec, p, ctx)? {
        return Err(Error::NotInD);
    }
    let product = p.as_operator() * spec.span_projector().as_operator();
    Ok(product.norm() <= ctx.loose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{C_ONE, C_ZERO};
    use num_complex::Complex64;

    fn ctx() -> ToleranceContext {
        ToleranceContext::default()
    }

    #[test]
    fn density_state_nondegenerate() {
        let s = make_density_state(&Operator::diagonal(&[0.7, 0.3]), &ctx()).unwrap();
        assert_eq!(s.spectral().eigenvalues(), &[0.7, 0.3]);
        assert_eq!(s.null_projector().rank(), 0);
    }

    #[test]
    fn density_state_degenerate_with_null_space() {
        let s = make_density_state(&Operator::diagonal(&[0.5, 0.5, 0.0]), &ctx()).unwrap();
        assert_eq!(s.spectral().len(), 2);
        assert!((s.spectral().eigenvalues()[0] - 0.5).abs() <= 1e-12);
        assert!(s.spectral().projectors()[0].approx_eq(&Projection::coordinate(3, &[0, 1]), 1e-9));
        assert!(s
            .null_projector()
            .approx_eq(&Projection::coordinate(3, &[2]), 1e-9));
    }

    #[test]
    fn density_state_rejects_bad_trace() {
        let err = make_density_state(&Operator::diagonal(&[0.6, 0.6]), &ctx()).unwrap_err();
        assert!(matches!(err, Error::NotDensityOperator { .. }));
    }

    #[test]
    fn density_state_rejects_negative_eigenvalue() {
        let err = make_density_state(&Operator::diagonal(&[1.2, -0.2]), &ctx()).unwrap_err();
        assert!(matches!(err, Error::NotDensityOperator { .. }));
    }

    #[test]
    fn orthodox_support_examples() {
        let full = make_density_state(&Operator::diagonal(&[0.7, 0.3]), &ctx()).unwrap();
        let x = rule_orthodox(&full, &ctx()).unwrap();
        assert_eq!(x.len(), 1);
        assert!(x.members()[0].approx_eq(&Projection::identity(2), 1e-9));

        let singular = make_density_state(&Operator::diagonal(&[0.5, 0.5, 0.0]), &ctx()).unwrap();
        let x = rule_orthodox(&singular, &ctx()).unwrap();
        assert!(x.members()[0].approx_eq(&Projection::coordinate(3, &[0, 1]), 1e-9));

        let pure = make_density_state(&Operator::diagonal(&[1.0, 0.0]), &ctx()).unwrap();
        let x = rule_orthodox(&pure, &ctx()).unwrap();
        assert!(x.members()[0].approx_eq(&Projection::coordinate(2, &[0]), 1e-9));
    }

    #[test]
    fn clifton_examples() {
        let s = make_density_state(&Operator::diagonal(&[0.7, 0.3]), &ctx()).unwrap();
        let x = rule_clifton(&s, &ctx()).unwrap();
        assert_eq!(x.len(), 2);

        let deg = make_density_state(&Operator::diagonal(&[0.5, 0.5, 0.0]), &ctx()).unwrap();
        let x = rule_clifton(&deg, &ctx()).unwrap();
        assert_eq!(x.len(), 1);
        assert!(x.members()[0].approx_eq(&Projection::coordinate(3, &[0, 1]), 1e-9));

        let mixed = make_density_state(&Operator::diagonal(&[0.5, 0.5]), &ctx()).unwrap();
        let x = rule_clifton(&mixed, &ctx()).unwrap();
        assert_eq!(x.len(), 1);
        assert!(x.members()[0].approx_eq(&Projection::identity(2), 1e-9));
    }

    #[test]
    fn kochen_dieks_examples() {
        let deg = make_density_state(&Operator::diagonal(&[0.5, 0.5, 0.0]), &ctx()).unwrap();
        let x = rule_kochen_dieks(&deg, &ctx()).unwrap();
        assert_eq!(x.len(), 2);
        assert!(x.span_projector().approx_eq(&Projection::identity(3), 1e-9));

        let nonsingular = make_density_state(&Operator::diagonal(&[0.7, 0.3]), &ctx()).unwrap();
        let kd = rule_kochen_dieks(&nonsingular, &ctx()).unwrap();
        let c = rule_clifton(&nonsingular, &ctx()).unwrap();
        assert_eq!(kd.len(), c.len());

        let pure = make_density_state(&Operator::diagonal(&[1.0, 0.0]), &ctx()).unwrap();
        let x = rule_kochen_dieks(&pure, &ctx()).unwrap();
        assert_eq!(x.len(), 2);
    }

    #[test]
    fn bub_examples() {
        let sqrt_half = std::f64::consts::FRAC_1_SQRT_2;
        let psi = CVector::from_vec(vec![
            Complex64::new(sqrt_half, 0.0),
            Complex64::new(sqrt_half, 0.0),
        ]);
        let input = BubRuleInput::new(psi, Operator::pauli_z(), &ctx()).unwrap();
        let x = rule_bub(&input, &ctx()).unwrap();
        assert_eq!(x.len(), 2);
        assert!(x.span_projector().approx_eq(&Projection::identity(2), 1e-9));

        let aligned = CVector::from_vec(vec![C_ONE, C_ZERO]);
        let input = BubRuleInput::new(aligned, Operator::pauli_z(), &ctx()).unwrap();
        let x = rule_bub(&input, &ctx()).unwrap();
        assert_eq!(x.len(), 1);
        assert!(x.members()[0].approx_eq(&Projection::coordinate(2, &[0]), 1e-9));
    }

    #[test]
    fn bub_eigenvector_is_orthodox_like() {
        let psi = CVector::from_vec(vec![C_ZERO, C_ONE]);
        let input = BubRuleInput::new(psi.clone(), Operator::pauli_z(), &ctx()).unwrap();
        let x = rule_bub(&input, &ctx()).unwrap();
        assert_eq!(x.len(), 1);
        let expected = Projection::onto_vector(&psi).unwrap();
        assert!(x.members()[0].approx_eq(&expected, 1e-9));
    }

    #[test]
    fn membership_examples() {
        let x = XFormSpec::new(vec![Projection::coordinate(3, &[0, 1])], &ctx()).unwrap();
        assert!(xform_membership(&x, &Projection::coordinate(3, &[0, 1]), &ctx()).unwrap());
        assert!(!xform_membership(&x, &Projection::coordinate(3, &[0]), &ctx()).unwrap());
        assert!(xform_membership(&x, &Projection::identity(3), &ctx()).unwrap());
    }

    #[test]
    fn ideal_membership_examples() {
        let x = XFormSpec::new(vec![Projection::coordinate(3, &[0, 1])], &ctx()).unwrap();
        assert!(xform_ideal_membership(&x, &Projection::coordinate(3, &[2]), &ctx()).unwrap());
        assert!(!xform_ideal_membership(&x, &Projection::coordinate(3, &[0, 1]), &ctx()).unwrap());
        assert!(xform_ideal_membership(&x, &Projection::zero(3), &ctx()).unwrap());
        // Non-members are rejected rather than classified.
        assert!(matches!(
            xform_ideal_membership(&x, &Projection::coordinate(3, &[0]), &ctx()),
            Err(Error::NotInD)
        ));
    }

    #[test]
    fn xform_spec_rejects_overlap_and_zero() {
        let overlap = XFormSpec::new(
            vec![
                Projection::coordinate(2, &[0]),
                Projection::coordinate(2, &[0]),
            ],
            &ctx(),
        );
        assert!(overlap.is_err());
        let zero = XFormSpec::new(vec![Projection::zero(2)], &ctx());
        assert!(zero.is_err());
    }
}
