//! Executable no-go and existence demonstrations: the spin-1/2 linearity
//! obstruction for dispersion-free states, the two-dimensional quasiBoolean
//! obstruction, the two-pairs commutant counterexample, and the positive
//! demonstration that X-form definite sets support closure, valuations, and
//! quantum statistics simultaneously.

use crate::algebra::{
    double_commutant, restriction_membership, star_closure_check, ClosureReport,
    DefiniteSetPredicate, OperatorSet,
};
use crate::error::{Error, Result};
use crate::lattice::{atom_indices, generate_ortholattice, leq, FiniteLattice,
    DEFAULT_LATTICE_CAP};
use crate::matrix::{CVector, Operator, Projection};
use crate::rules::{
    rule_bub, rule_clifton, rule_kochen_dieks, rule_orthodox, xform_membership, BubRuleInput,
    DensityState, RuleSelector, XFormSpec,
};
use crate::sample;
use crate::spectral::{range_basis, spectral_resolution};
use crate::tolerance::ToleranceContext;
use crate::valuation::{
    build_measure, check_countable_additivity, check_quasiboolean, enumerate_homomorphisms,
    verify_statistics, AdditivityReport, QuasiBooleanOutcome, StatisticsReport,
};

use num_complex::Complex64;
use rand::Rng;

/// One dispersion-free assignment of spectrum values to σ_x, σ_y, and their
/// normalized sum, with the linearity residual |c − (a+b)/√2|.
#[derive(Debug, Clone, Copy)]
pub struct SpinAssignment {
    pub x_value: i8,
    pub y_value: i8,
    pub diagonal_value: i8,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct SpinDemoResult {
    pub assignments: Vec<SpinAssignment>,
    pub min_residual: f64,
    /// Spectrum of (σ_x + σ_y)/√2, descending.
    pub diagonal_spectrum: Vec<f64>,
}

/// Enumerates all 2³ dispersion-free assignments for the spin triple and
/// shows that every one of them violates linearity by at least √2 − 1,
/// while the diagonal spin component itself has spectrum {±1}.
pub fn von_neumann_spin_demo(ctx: &ToleranceContext) -> Result<SpinDemoResult> {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut assignments = Vec::with_capacity(8);
    let mut min_residual = f64::INFINITY;
    for &a in &[1i8, -1] {
        for &b in &[1i8, -1] {
            for &c in &[1i8, -1] {
                let residual = (c as f64 - (a as f64 + b as f64) * inv_sqrt2).abs();
                min_residual = min_residual.min(residual);
                assignments.push(SpinAssignment {
                    x_value: a,
                    y_value: b,
                    diagonal_value: c,
                    residual,
                });
            }
        }
    }
    let diagonal =
        (&Operator::pauli_x() + &Operator::pauli_y()).scale_real(inv_sqrt2);
    let diagonal_spectrum = spectral_resolution(&diagonal, ctx)?
        .eigenvalues()
        .to_vec();
    Ok(SpinDemoResult {
        assignments,
        min_residual,
        diagonal_spectrum,
    })
}

#[derive(Debug, Clone)]
pub struct ObstructionReport {
    /// Nonzero lattice atoms lying below P or below P⊥.
    pub p_resolvers: Vec<Projection>,
    /// Nonzero lattice atoms lying below Q or below Q⊥.
    pub q_resolvers: Vec<Projection>,
    /// Whether the two resolver sets are disjoint (no common atom).
    pub resolver_sets_disjoint: bool,
    pub lattice_size: usize,
    pub homomorphism_count: usize,
    /// No atom family can resolve both pairs and no homomorphism exists:
    /// the lattice is I-quasiBoolean for no ideal I.
    pub obstructed: bool,
}

/// For two rank-1 projections in dimension 2 that are neither parallel nor
/// orthogonal: exhibits that the only candidates resolving P are {P, P⊥},
/// similarly for Q, that the candidate sets are disjoint, and that the
/// generated six-element lattice admits no two-valued homomorphism at all.
pub fn h2_quasiboolean_obstruction(
    p: &Projection,
    q: &Projection,
    ctx: &ToleranceContext,
) -> Result<ObstructionReport> {
    if p.dim() != 2 || q.dim() != 2 {
        return Err(Error::PreconditionViolated {
            reason: "the obstruction lives in dimension 2".into(),
        });
    }
    if p.rank() != 1 || q.rank() != 1 {
        return Err(Error::PreconditionViolated {
            reason: "both projections must be rank 1".into(),
        });
    }
    if p.distance(q) <= ctx.atol {
        return Err(Error::PreconditionViolated {
            reason: "projections are parallel".into(),
        });
    }
    if (p.as_operator() * q.as_operator()).norm() <= ctx.atol {
        return Err(Error::PreconditionViolated {
            reason: "projections are orthogonal; that lattice is Boolean".into(),
        });
    }

    let lattice = generate_ortholattice(&[p.clone(), q.clone()], DEFAULT_LATTICE_CAP, ctx)?;
    let atoms = atom_indices(&lattice);

    let resolves = |a: &Projection, target: &Projection| -> Result<bool> {
        Ok(leq(a, target, ctx)? || leq(a, &target.complement(), ctx)?)
    };
    let mut p_resolvers = Vec::new();
    let mut q_resolvers = Vec::new();
    let mut common = false;
    for &ai in &atoms {
        let a = lattice.element(ai);
        let rp = resolves(a, p)?;
        let rq = resolves(a, q)?;
        if rp {
            p_resolvers.push(a.clone());
        }
        if rq {
            q_resolvers.push(a.clone());
        }
        common |= rp && rq;
    }

    let homomorphism_count = enumerate_homomorphisms(&lattice)?.len();

    Ok(ObstructionReport {
        resolver_sets_disjoint: !common,
        lattice_size: lattice.len(),
        homomorphism_count,
        obstructed: !common && homomorphism_count == 0,
        p_resolvers,
        q_resolvers,
    })
}

#[derive(Debug, Clone)]
pub struct CommutantCounterexampleReport {
    pub lattice_size: usize,
    /// Subspace dimension of the von Neumann algebra generated by the
    /// lattice; 4 means everything in dimension 2.
    pub algebra_rank: usize,
    /// A projection inside the generated algebra's restriction but not in
    /// the lattice.
    pub witness: Projection,
    pub witness_in_algebra: bool,
    pub witness_in_lattice: bool,
    pub closure: ClosureReport,
}

/// The two-orthogonal-pairs lattice in dimension 2 is a complete atomic
/// orthomodular lattice whose extension nevertheless fails star-closure: the
/// generated algebra is all of the operators, so its restriction strictly
/// exceeds the six lattice elements.
pub fn h2_commutant_counterexample(
    first_pair: (&Projection, &Projection),
    second_pair: (&Projection, &Projection),
    ctx: &ToleranceContext,
) -> Result<CommutantCounterexampleReport> {
    for (a, b) in [first_pair, second_pair] {
        if a.dim() != 2 || b.dim() != 2 || a.rank() != 1 || b.rank() != 1 {
            return Err(Error::PreconditionViolated {
                reason: "pairs must consist of rank-1 projections in dimension 2".into(),
            });
        }
        if !b.approx_eq(&a.complement(), ctx.loose()) {
            return Err(Error::PreconditionViolated {
                reason: "each pair must be mutually orthogonal".into(),
            });
        }
    }
    let same = first_pair.0.approx_eq(second_pair.0, ctx.loose())
        || first_pair.0.approx_eq(second_pair.1, ctx.loose());
    if same {
        return Err(Error::PairsNotDistinct);
    }

    let lattice = generate_ortholattice(
        &[first_pair.0.clone(), second_pair.0.clone()],
        DEFAULT_LATTICE_CAP,
        ctx,
    )?;
    let elements = lattice.elements().to_vec();
    let ops: Vec<Operator> = elements.iter().map(|p| p.as_operator().clone()).collect();
    let algebra = double_commutant(&OperatorSet::new(ops, ctx)?, ctx)?;

    // A rank-1 direction distinct from all four lattice lines.
    let basis = range_basis(first_pair.0, ctx);
    let u1 = &basis[0];
    let u2 = range_basis(first_pair.1, ctx)[0].clone();
    let mut witness = None;
    for k in 2..6 {
        let candidate = Projection::onto_vector(
            &(u1 + u2.map(|z| z * Complex64::new(k as f64, 0.0))),
        )?;
        if elements
            .iter()
            .all(|e| !e.approx_eq(&candidate, ctx.loose()))
        {
            witness = Some(candidate);
            break;
        }
    }
    let witness = witness.expect("some slope avoids four lines");

    let witness_in_algebra = restriction_membership(&algebra, &witness, ctx);
    let witness_in_lattice = elements
        .iter()
        .any(|e| e.approx_eq(&witness, ctx.loose()));

    let d = DefiniteSetPredicate::ExplicitFinite { elements };
    let closure = star_closure_check(&d, 60, 23, ctx)?;

    Ok(CommutantCounterexampleReport {
        lattice_size: lattice.len(),
        algebra_rank: algebra.rank(),
        witness,
        witness_in_algebra,
        witness_in_lattice,
        closure,
    })
}

#[derive(Debug, Clone)]
pub struct ExistenceDemoReport {
    pub rule: RuleSelector,
    pub xform: XFormSpec,
    pub closure: ClosureReport,
    pub lattice_size: usize,
    pub quasiboolean: QuasiBooleanOutcome,
    pub statistics: Vec<StatisticsReport>,
    pub additivity: AdditivityReport,
    /// Two non-commuting definite projections with their commutator norm,
    /// present when the unconstrained block has dimension at least 2.
    pub incompatibility_exhibit: Option<(Projection, Projection, f64)>,
    pub passed: bool,
}

/// Builds the X-form family for the selected rule, then verifies in one
/// sweep: star-closure of the definite set, quasiBooleanness of the finite
/// lattice generated by the family (with the statistical ideal), agreement
/// of the measure with quantum probabilities over seeded commuting families,
/// and countable additivity. In dimension ≥ 3 with an unconstrained block of
/// dimension ≥ 2, also exhibits two non-commuting definite projections.
pub fn positive_existence_demo(
    state: &DensityState,
    rule: RuleSelector,
    observable_count: usize,
    seed: u64,
    ctx: &ToleranceContext,
) -> Result<ExistenceDemoReport> {
    let mut rng = sample::rng(seed);
    let spec = match rule {
        RuleSelector::Naive => {
            return Err(Error::PreconditionViolated {
                reason: "the naive set is not of X-form; no existence demo applies".into(),
            })
        }
        RuleSelector::Orthodox => rule_orthodox(state, ctx)?,
        RuleSelector::Clifton => rule_clifton(state, ctx)?,
        RuleSelector::KochenDieks => rule_kochen_dieks(state, ctx)?,
        RuleSelector::Bub => {
            if !state.is_pure(ctx) {
                return Err(Error::PreconditionViolated {
                    reason: "Bub's rule needs a pure state".into(),
                });
            }
            let psi = range_basis(&state.support_projector(), ctx)
                .into_iter()
                .next()
                .ok_or(Error::AllComponentsZero)?;
            let observable = sample::random_self_adjoint(state.dim(), &mut rng);
            rule_bub(&BubRuleInput::new(psi, observable, ctx)?, ctx)?
        }
    };

    let d = DefiniteSetPredicate::XForm(spec.clone());
    let closure = star_closure_check(&d, 120, seed.wrapping_add(1), ctx)?;

    let lattice = generate_ortholattice(spec.members(), DEFAULT_LATTICE_CAP, ctx)?;
    let w = state.state();
    let ideal: Vec<usize> = (0..lattice.len())
        .filter(|&i| (lattice.element(i).as_operator() * w).norm() <= ctx.loose())
        .collect();
    let quasiboolean = check_quasiboolean(&lattice, &ideal)?;

    let measure = build_measure(&spec, state, ctx)?;
    let mut statistics = Vec::new();
    for k in 0..observable_count {
        let family_size = 1 + k % 3;
        let family =
            sample::commuting_family_in_extension(&spec, family_size, &mut rng, ctx);
        let mut selections = Vec::new();
        for op in &family {
            let eigenvalues = spectral_resolution(op, ctx)?.eigenvalues().to_vec();
            let take = 1 + rng.random_range(0..eigenvalues.len());
            selections.push(eigenvalues.into_iter().take(take).collect::<Vec<f64>>());
        }
        statistics.push(verify_statistics(&measure, &family, &selections, ctx)?);
    }

    let additivity = check_countable_additivity(&measure, spec.members(), ctx)?;

    let block = spec.complement_projector();
    let incompatibility_exhibit = if block.rank() >= 2 {
        let basis = range_basis(&block, ctx);
        let first = Projection::onto_vector(&basis[0])?;
        let mixed = Projection::onto_vector(
            &(&basis[0] + &basis[1]).map(|z| z * Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)),
        )?;
        debug_assert!(xform_membership(&spec, &first, ctx)?);
        debug_assert!(xform_membership(&spec, &mixed, ctx)?);
        let commutator_norm = first
            .as_operator()
            .commutator(mixed.as_operator())?
            .norm();
        Some((first, mixed, commutator_norm))
    } else {
        None
    };

    let exhibit_ok = match &incompatibility_exhibit {
        Some((a, b, norm)) => {
            *norm > ctx.loose()
                && xform_membership(&spec, a, ctx)?
                && xform_membership(&spec, b, ctx)?
        }
        None => true,
    };
    let passed = closure.passed
        && quasiboolean.is_quasi_boolean
        && statistics.iter().all(|s| s.passed)
        && additivity.passed
        && exhibit_ok;

    Ok(ExistenceDemoReport {
        rule,
        xform: spec,
        closure,
        lattice_size: lattice.len(),
        quasiboolean,
        statistics,
        additivity,
        incompatibility_exhibit,
        passed,
    })
}

/// Standard two-pairs input: the coordinate pair and the ±45° pair.
pub fn standard_two_pairs() -> ((Projection, Projection), (Projection, Projection)) {
    let e1 = Projection::coordinate(2, &[0]);
    let plus = Projection::onto_vector(&CVector::from_vec(vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(1.0, 0.0),
    ]))
    .expect("nonzero");
    ((e1.clone(), e1.complement()), (plus.clone(), plus.complement()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::make_density_state;

    fn ctx() -> ToleranceContext {
        ToleranceContext::default()
    }

    #[test]
    fn spin_demo_residuals() {
        let result = von_neumann_spin_demo(&ctx()).unwrap();
        assert_eq!(result.assignments.len(), 8);
        let expected_min = std::f64::consts::SQRT_2 - 1.0;
        assert!((result.min_residual - expected_min).abs() <= 1e-12);
        for a in &result.assignments {
            assert!(a.residual >= expected_min - 1e-12);
        }
        // (+1, +1, +1) violates by |1 − √2|; mixed signs force c = 0 ∉ {±1}.
        let all_plus = result
            .assignments
            .iter()
            .find(|a| a.x_value == 1 && a.y_value == 1 && a.diagonal_value == 1)
            .unwrap();
        assert!((all_plus.residual - (std::f64::consts::SQRT_2 - 1.0)).abs() <= 1e-12);
        let mixed = result
            .assignments
            .iter()
            .find(|a| a.x_value == 1 && a.y_value == -1)
            .unwrap();
        assert!((mixed.residual - 1.0).abs() <= 1e-12);
        // The diagonal component is itself a spin observable.
        assert_eq!(result.diagonal_spectrum.len(), 2);
        assert!((result.diagonal_spectrum[0] - 1.0).abs() <= 1e-10);
        assert!((result.diagonal_spectrum[1] + 1.0).abs() <= 1e-10);
    }

    #[test]
    fn obstruction_standard_pair() {
        let (pair_a, pair_b) = standard_two_pairs();
        let report = h2_quasiboolean_obstruction(&pair_a.0, &pair_b.0, &ctx()).unwrap();
        assert!(report.obstructed);
        assert_eq!(report.lattice_size, 6);
        assert_eq!(report.homomorphism_count, 0);
        assert_eq!(report.p_resolvers.len(), 2);
        assert_eq!(report.q_resolvers.len(), 2);
        assert!(report.resolver_sets_disjoint);
    }

    #[test]
    fn obstruction_rejects_parallel_and_orthogonal() {
        let p = Projection::coordinate(2, &[0]);
        assert!(matches!(
            h2_quasiboolean_obstruction(&p, &p, &ctx()),
            Err(Error::PreconditionViolated { .. })
        ));
        assert!(matches!(
            h2_quasiboolean_obstruction(&p, &p.complement(), &ctx()),
            Err(Error::PreconditionViolated { .. })
        ));
    }

    #[test]
    fn commutant_counterexample_standard() {
        let (pair_a, pair_b) = standard_two_pairs();
        let report = h2_commutant_counterexample(
            (&pair_a.0, &pair_a.1),
            (&pair_b.0, &pair_b.1),
            &ctx(),
        )
        .unwrap();
        assert_eq!(report.lattice_size, 6);
        assert_eq!(report.algebra_rank, 4);
        assert!(report.witness_in_algebra);
        assert!(!report.witness_in_lattice);
        assert!(!report.closure.passed);
    }

    #[test]
    fn commutant_counterexample_rejects_identical_pairs() {
        let (pair_a, _) = standard_two_pairs();
        let err = h2_commutant_counterexample(
            (&pair_a.0, &pair_a.1),
            (&pair_a.0, &pair_a.1),
            &ctx(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::PairsNotDistinct));
    }

    #[test]
    fn existence_demo_clifton_with_null_block() {
        let state =
            make_density_state(&Operator::diagonal(&[0.6, 0.4, 0.0, 0.0]), &ctx()).unwrap();
        let report =
            positive_existence_demo(&state, RuleSelector::Clifton, 4, 31, &ctx()).unwrap();
        assert!(report.passed);
        let (a, b, norm) = report.incompatibility_exhibit.as_ref().unwrap();
        assert!(*norm > 0.1);
        assert!(xform_membership(&report.xform, a, &ctx()).unwrap());
        assert!(xform_membership(&report.xform, b, &ctx()).unwrap());
    }

    #[test]
    fn existence_demo_orthodox_pure_dim3() {
        let state = make_density_state(&Operator::diagonal(&[1.0, 0.0, 0.0]), &ctx()).unwrap();
        let report =
            positive_existence_demo(&state, RuleSelector::Orthodox, 3, 7, &ctx()).unwrap();
        assert!(report.passed);
        assert!(report.incompatibility_exhibit.is_some());
    }

    #[test]
    fn existence_demo_dim2_has_no_exhibit() {
        let state = make_density_state(&Operator::diagonal(&[0.7, 0.3]), &ctx()).unwrap();
        let report =
            positive_existence_demo(&state, RuleSelector::KochenDieks, 3, 11, &ctx()).unwrap();
        assert!(report.passed);
        assert!(report.incompatibility_exhibit.is_none());
    }

    #[test]
    fn existence_demo_rejects_naive() {
        let state = make_density_state(&Operator::diagonal(&[0.7, 0.3]), &ctx()).unwrap();
        assert!(matches!(
            positive_existence_demo(&state, RuleSelector::Naive, 2, 1, &ctx()),
            Err(Error::PreconditionViolated { .. })
        ));
    }
}
