//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).

use std::time::Instant;

use modalg_core::algebra::{
    commutant, double_commutant, is_von_neumann_algebra, star_closure_check,
    DefiniteSetPredicate, OperatorSet, OperatorSpan,
};
use modalg_core::lattice::{
    atomicity_demo, generate_ortholattice, meet_exact, meet_iterative, FiniteLattice,
    DEFAULT_LATTICE_CAP,
};
use modalg_core::matrix::{CVector, Operator, Projection, C_ONE};
use modalg_core::rules::{
    make_density_state, rule_bub, rule_clifton, rule_kochen_dieks, rule_orthodox, BubRuleInput,
    XFormSpec,
};
use modalg_core::sample::{self, SpectrumProfile};
use modalg_core::spectral::{range_basis, spectral_resolution};
use modalg_core::tolerance::ToleranceContext;
use modalg_core::valuation::{
    build_measure, check_countable_additivity, check_faithful, check_quasiboolean,
    enumerate_homomorphisms, homomorphism_eval, valuation_eval, verify_statistics,
    FaithfulSample, FunctionalValuation, TwoValuedHomomorphism, STATISTICS_TOL,
};
use modalg_core::Error;

fn ctx() -> ToleranceContext {
    ToleranceContext::default()
}

fn report(number: usize, name: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {number} [{status}] {name} — {detail}");
    assert!(pass, "acceptance criterion {number} failed: {detail}");
}

const SPAN_TOL: f64 = 1e-10;

fn residuals_within(span: &OperatorSpan, ops: &[Operator], tol: f64) -> bool {
    ops.iter().all(|o| span.residual(o) <= tol)
}

fn spans_equal(a: &OperatorSpan, b: &OperatorSpan, tol: f64) -> bool {
    a.rank() == b.rank()
        && residuals_within(a, b.basis(), tol)
        && residuals_within(b, a.basis(), tol)
}

#[test]
fn criterion_1_commutant_identities() {
    let start = Instant::now();
    let c = ctx();
    let mut checked = 0usize;
    let mut ok = true;
    for case in 0..100u64 {
        let dim = 2 + (case as usize % 5);
        let count = 1 + (case as usize % 3);
        let mut rng = sample::rng(1000 + case);
        let gens: Vec<Operator> = (0..count)
            .map(|_| sample::random_self_adjoint(dim, &mut rng))
            .collect();
        let set = OperatorSet::new(gens.clone(), &c).unwrap();
        let first = commutant(&set, &c).unwrap();
        let second = double_commutant(&set, &c).unwrap();

        // ℬ ⊆ ℬ″.
        ok &= residuals_within(&second, &gens, SPAN_TOL);
        // ℬ′ = ℬ‴.
        let third = commutant(
            &OperatorSet::new(second.basis().to_vec(), &c).unwrap(),
            &c,
        )
        .unwrap();
        ok &= spans_equal(&first, &third, SPAN_TOL);
        // Commutant of a self-adjoint set is adjoint-closed.
        ok &= first
            .basis()
            .iter()
            .all(|t| first.residual(&t.adjoint()) <= SPAN_TOL);

        // (𝒜 ∪ ℬ)′ = 𝒜′ ∩ ℬ′ on a fresh pair.
        let extra = vec![sample::random_self_adjoint(dim, &mut rng)];
        let mut union = gens.clone();
        union.extend(extra.clone());
        let cu = commutant(&OperatorSet::new(union, &c).unwrap(), &c).unwrap();
        let ce = commutant(&OperatorSet::new(extra, &c).unwrap(), &c).unwrap();
        let meet = first.intersect(&ce, &c).unwrap();
        ok &= spans_equal(&cu, &meet, SPAN_TOL);

        checked += 1;
        if !ok {
            break;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed < 30.0;
    report(
        1,
        "commutant identities",
        ok,
        &format!("{checked} generating sets in dims 2–6, {elapsed:.2}s"),
    );
}

/// Closes a seeded self-adjoint generator list under products within span.
fn seeded_star_algebra(dim: usize, gen_count: usize, seed: u64, c: &ToleranceContext) -> OperatorSpan {
    let mut rng = sample::rng(seed);
    let mut ops = vec![Operator::identity(dim)];
    for _ in 0..gen_count {
        ops.push(sample::random_self_adjoint(dim, &mut rng));
    }
    loop {
        let span = OperatorSpan::from_operators(&ops, c).unwrap();
        let mut added = false;
        for b in span.basis() {
            for d in span.basis() {
                let prod = b * d;
                if !span.contains(&prod, c) {
                    ops.push(prod);
                    added = true;
                }
            }
        }
        if !added {
            return span;
        }
    }
}

#[test]
fn criterion_2_double_commutant_theorem() {
    let start = Instant::now();
    let c = ctx();
    let mut ok = true;
    let mut positives = 0usize;
    let mut negatives = 0usize;
    for case in 0..50u64 {
        let dim = 2 + (case as usize % 4);
        let algebra = seeded_star_algebra(dim, 1 + (case as usize % 2), 2000 + case, &c);
        let vna = is_von_neumann_algebra(&algebra, &c);
        let dc = double_commutant(
            &OperatorSet::new(algebra.basis().to_vec(), &c).unwrap(),
            &c,
        )
        .unwrap();
        ok &= vna && spans_equal(&dc, &algebra, SPAN_TOL);
        positives += 1;

        if case % 2 == 0 {
            // Non-adjoint-closed span: identity plus a rotated matrix unit.
            let mut rng = sample::rng(3000 + case);
            let u = sample::random_unitary(dim, &mut rng);
            let mut unit = modalg_core::CMatrix::zeros(dim, dim);
            unit[(0, 1)] = num_complex::Complex64::new(1.0, 0.0);
            let nilpotent = Operator::new(unit).unwrap().conjugate_by(&u);
            let bad = OperatorSpan::from_operators(
                &[Operator::identity(dim), nilpotent],
                &c,
            )
            .unwrap();
            ok &= !is_von_neumann_algebra(&bad, &c);
            negatives += 1;
        }
        if !ok {
            break;
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed < 30.0;
    report(
        2,
        "double commutant theorem",
        ok,
        &format!("{positives} star-algebras, {negatives} negative controls, {elapsed:.2}s"),
    );
}

#[test]
fn criterion_3_closure_round_trip() {
    let start = Instant::now();
    let c = ctx();
    let mut ok = true;
    let mut cases = 0usize;
    let profiles = [
        SpectrumProfile::Generic,
        SpectrumProfile::Degenerate,
        SpectrumProfile::Singular,
        SpectrumProfile::DegenerateSingular,
    ];
    for rule in ["orthodox", "clifton", "kochen-dieks", "bub"] {
        for i in 0..10u64 {
            let dim = 2 + (i as usize % 4);
            let seed = 4000 + 97 * i;
            let mut rng = sample::rng(seed);
            let spec = if rule == "bub" {
                let psi = sample::random_unit_vector(dim, &mut rng);
                let observable = sample::random_self_adjoint(dim, &mut rng);
                rule_bub(&BubRuleInput::new(psi, observable, &c).unwrap(), &c).unwrap()
            } else {
                let w = sample::random_density(dim, profiles[i as usize % 4], &mut rng);
                let state = make_density_state(&w, &c).unwrap();
                match rule {
                    "orthodox" => rule_orthodox(&state, &c).unwrap(),
                    "clifton" => rule_clifton(&state, &c).unwrap(),
                    _ => rule_kochen_dieks(&state, &c).unwrap(),
                }
            };
            let d = DefiniteSetPredicate::XForm(spec);
            let closure = star_closure_check(&d, 200, seed, &c).unwrap();
            ok &= closure.passed && closure.samples_checked >= 200;
            cases += 1;
            if !ok {
                report(3, "closure round trip", false, &format!("{rule} case {i}"));
            }
        }
    }

    // The two-pairs counterexample must fail with a concrete witness.
    let tilted = Projection::onto_vector(&CVector::from_vec(vec![C_ONE, C_ONE])).unwrap();
    let e1 = Projection::coordinate(2, &[0]);
    let lattice = generate_ortholattice(&[e1, tilted], DEFAULT_LATTICE_CAP, &c).unwrap();
    let d = DefiniteSetPredicate::ExplicitFinite {
        elements: lattice.elements().to_vec(),
    };
    let counterexample = star_closure_check(&d, 200, 5, &c).unwrap();
    ok &= !counterexample.passed;
    ok &= counterexample
        .witnesses
        .iter()
        .any(|w| !w.in_definite_set && w.in_algebra_restriction);

    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed < 60.0;
    report(
        3,
        "closure round trip",
        ok,
        &format!(
            "{cases} rule/state cases at 200 samples each plus counterexample, {elapsed:.2}s"
        ),
    );
}

#[test]
fn criterion_4_meet_oracle_equivalence() {
    let start = Instant::now();
    let c = ctx();
    let mut ok = true;
    let mut agreements = 0usize;
    let mut explained = 0usize;
    let mut commuting = 0usize;

    for i in 0..300u64 {
        let mut rng = sample::rng(5000 + i);
        let dim = 2 + (i as usize % 3);
        // Angles spread over (0°, 90°) exclusive.
        let theta = 0.001 + (i as f64 + 0.5) / 300.0 * (std::f64::consts::FRAC_PI_2 - 0.002);
        let (p, q) = sample::rank1_pair_at_angle(dim, theta, &mut rng);
        match meet_iterative(&p, &q, &c) {
            Ok(m) => {
                let exact = meet_exact(&p, &q, &c).unwrap();
                ok &= m.distance(&exact) <= 1e-8;
                agreements += 1;
            }
            Err(Error::NoConvergence {
                contraction_rate, ..
            }) => {
                ok &= contraction_rate.is_some();
                explained += 1;
            }
            Err(_) => ok = false,
        }
        if !ok {
            break;
        }
    }

    for i in 0..200u64 {
        let mut rng = sample::rng(6000 + i);
        let dim = 2 + (i as usize % 4);
        let u = sample::random_unitary(dim, &mut rng);
        let pick = |axes: &[usize]| Projection::coordinate(dim, axes).conjugate_by(&u);
        let p = pick(&(0..=(i as usize % dim)).collect::<Vec<_>>());
        let q = pick(&((i as usize % dim)..dim).collect::<Vec<_>>());
        let product = p.as_operator() * q.as_operator();
        match meet_iterative(&p, &q, &c) {
            Ok(m) => {
                ok &= m.as_operator().distance(&product) <= 1e-10;
                commuting += 1;
            }
            _ => ok = false,
        }
        if !ok {
            break;
        }
    }

    let elapsed = start.elapsed().as_secs_f64();
    report(
        4,
        "meet oracle equivalence",
        ok,
        &format!(
            "{agreements} agreements + {explained} explained non-convergences + {commuting} commuting, {elapsed:.2}s"
        ),
    );
}

fn golden_lattices(c: &ToleranceContext) -> Vec<(String, FiniteLattice)> {
    let mut suite = Vec::new();
    let gen = |gens: &[Projection]| generate_ortholattice(gens, DEFAULT_LATTICE_CAP, c).unwrap();

    suite.push((
        "trivial dim2".into(),
        FiniteLattice::new(vec![Projection::zero(2), Projection::identity(2)], c).unwrap(),
    ));
    suite.push(("four-element dim2".into(), gen(&[Projection::coordinate(2, &[0])])));

    let mut rng = sample::rng(41);
    let rotated_line = sample::random_projection(3, 1, &mut rng);
    suite.push(("four-element rotated dim3".into(), gen(&[rotated_line])));

    suite.push((
        "boolean-8 dim3".into(),
        gen(&[
            Projection::coordinate(3, &[0]),
            Projection::coordinate(3, &[1]),
        ]),
    ));

    let u = sample::random_unitary(3, &mut rng);
    let conj = |axes: &[usize]| Projection::coordinate(3, axes).conjugate_by(&u);
    suite.push(("boolean-8 rotated dim3".into(), gen(&[conj(&[0]), conj(&[1])])));

    suite.push((
        "boolean-16 dim4".into(),
        gen(&[
            Projection::coordinate(4, &[0]),
            Projection::coordinate(4, &[1]),
            Projection::coordinate(4, &[2]),
        ]),
    ));

    suite.push((
        "x-form block dim3".into(),
        gen(&[Projection::coordinate(3, &[0, 1])]),
    ));
    suite.push((
        "x-form two blocks dim4".into(),
        gen(&[
            Projection::coordinate(4, &[0]),
            Projection::coordinate(4, &[1]),
        ]),
    ));

    let w = Operator::diagonal(&[0.5, 0.3, 0.2, 0.0]);
    let state = make_density_state(&w, c).unwrap();
    let clifton = rule_clifton(&state, c).unwrap();
    suite.push(("clifton family dim4".into(), gen(clifton.members())));

    let kd_state = make_density_state(&Operator::diagonal(&[0.5, 0.5, 0.0]), c).unwrap();
    let kd = rule_kochen_dieks(&kd_state, c).unwrap();
    suite.push(("kochen-dieks family dim3".into(), gen(kd.members())));

    let tilted45 = Projection::onto_vector(&CVector::from_vec(vec![C_ONE, C_ONE])).unwrap();
    suite.push((
        "two-pairs 45 dim2".into(),
        gen(&[Projection::coordinate(2, &[0]), tilted45]),
    ));
    let c30 = (std::f64::consts::PI / 6.0).cos();
    let s30 = (std::f64::consts::PI / 6.0).sin();
    let tilted30 = Projection::onto_vector(&CVector::from_vec(vec![
        num_complex::Complex64::new(c30, 0.0),
        num_complex::Complex64::new(s30, 0.0),
    ]))
    .unwrap();
    suite.push((
        "two-pairs 30 dim2".into(),
        gen(&[Projection::coordinate(2, &[0]), tilted30]),
    ));

    let mut rng2 = sample::rng(43);
    let psi = sample::random_unit_vector(3, &mut rng2);
    let observable = sample::random_self_adjoint(3, &mut rng2);
    let bub = rule_bub(&BubRuleInput::new(psi, observable, c).unwrap(), c).unwrap();
    suite.push(("bub family dim3".into(), gen(bub.members())));

    suite
}

#[test]
fn criterion_5_quasiboolean_characterization() {
    let start = Instant::now();
    let c = ctx();
    let suite = golden_lattices(&c);
    let mut ok = suite.len() >= 12;
    let mut ideals_checked = 0usize;
    for (name, lattice) in &suite {
        ok &= lattice.len() <= 20;
        for ideal in lattice.all_ideals() {
            // check_quasiboolean internally runs both the atom-family route
            // and the exhaustive enumeration route and errors on mismatch.
            let outcome = match check_quasiboolean(lattice, &ideal) {
                Ok(o) => o,
                Err(e) => {
                    report(5, "quasiboolean characterization", false, &format!("{name}: {e}"));
                    return;
                }
            };
            ideals_checked += 1;
            if name.starts_with("two-pairs") {
                ok &= !outcome.is_quasi_boolean;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        5,
        "quasiboolean characterization",
        ok,
        &format!(
            "{} lattices, {ideals_checked} ideals, routes agreed everywhere, {elapsed:.2}s",
            suite.len()
        ),
    );
}

#[test]
fn criterion_6_statistics_identity() {
    let start = Instant::now();
    let c = ctx();
    let mut ok = true;
    let mut families_checked = 0usize;
    let mut additivity_checked = 0usize;
    let profiles = [
        SpectrumProfile::Generic,
        SpectrumProfile::Degenerate,
        SpectrumProfile::Singular,
        SpectrumProfile::DegenerateSingular,
    ];
    'outer: for rule in ["orthodox", "clifton", "kochen-dieks", "bub"] {
        for i in 0..10u64 {
            let dim = 2 + (i as usize % 4);
            let seed = 7000 + 131 * i;
            let mut rng = sample::rng(seed);
            let (spec, state) = if rule == "bub" {
                let psi = sample::random_unit_vector(dim, &mut rng);
                let observable = sample::random_self_adjoint(dim, &mut rng);
                let input = BubRuleInput::new(psi, observable, &c).unwrap();
                let state = make_density_state(&input.density(), &c).unwrap();
                (rule_bub(&input, &c).unwrap(), state)
            } else {
                let w = sample::random_density(dim, profiles[i as usize % 4], &mut rng);
                let state = make_density_state(&w, &c).unwrap();
                let spec = match rule {
                    "orthodox" => rule_orthodox(&state, &c).unwrap(),
                    "clifton" => rule_clifton(&state, &c).unwrap(),
                    _ => rule_kochen_dieks(&state, &c).unwrap(),
                };
                (spec, state)
            };
            let measure = build_measure(&spec, &state, &c).unwrap();

            for family_idx in 0..50usize {
                let family_size = 1 + family_idx % 3;
                let family =
                    sample::commuting_family_in_extension(&spec, family_size, &mut rng, &c);
                let mut selections = Vec::new();
                for op in &family {
                    let eigenvalues = spectral_resolution(op, &c).unwrap().eigenvalues().to_vec();
                    let take = 1 + (family_idx + eigenvalues.len()) % eigenvalues.len();
                    selections.push(eigenvalues.into_iter().take(take).collect::<Vec<f64>>());
                }
                let stats = verify_statistics(&measure, &family, &selections, &c).unwrap();
                ok &= stats.passed && stats.discrepancy <= STATISTICS_TOL;
                families_checked += 1;
                if !ok {
                    break 'outer;
                }
            }

            // Countable additivity over the family itself and a random
            // disjoint refinement of the complement block.
            let additivity = check_countable_additivity(&measure, spec.members(), &c).unwrap();
            ok &= additivity.passed;
            additivity_checked += 1;
            let block = spec.complement_projector();
            if block.rank() >= 2 {
                let basis = range_basis(&block, &c);
                let mut family: Vec<Projection> = basis
                    .iter()
                    .map(|v| Projection::onto_vector(v).unwrap())
                    .collect();
                family.push(spec.members()[0].clone());
                let refined = check_countable_additivity(&measure, &family, &c).unwrap();
                ok &= refined.passed;
                additivity_checked += 1;
            }
            if !ok {
                break 'outer;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    ok &= elapsed < 120.0;
    report(
        6,
        "statistics identity",
        ok,
        &format!(
            "{families_checked} commuting families, {additivity_checked} additivity checks, {elapsed:.2}s"
        ),
    );
}

#[test]
fn criterion_7_valuation_laws() {
    let start = Instant::now();
    let c = ctx();
    let mut ok = true;
    let mut instances = 0usize;
    'outer: for i in 0..125u64 {
        let dim = 2 + (i as usize % 4);
        let seed = 8000 + 17 * i;
        let mut rng = sample::rng(seed);
        let w = sample::random_density(
            dim,
            if i % 2 == 0 {
                SpectrumProfile::Generic
            } else {
                SpectrumProfile::Singular
            },
            &mut rng,
        );
        let state = make_density_state(&w, &c).unwrap();
        let spec = rule_kochen_dieks(&state, &c).unwrap();

        for y in spec.members() {
            let v = FunctionalValuation::new(spec.clone(), y.clone(), &c).unwrap();
            let ops = sample::commuting_family_in_extension(&spec, 2, &mut rng, &c);
            let scale = (i % 7) as f64 - 3.0;
            let sample_pair = FaithfulSample {
                q: ops[0].clone(),
                s: ops[1].clone(),
                scale,
            };
            let faithful = check_faithful(&v, &[sample_pair], &c).unwrap();
            ok &= faithful.passed
                && faithful.max_linear_residual <= 1e-9
                && faithful.max_square_residual <= 1e-9;
            instances += 1;

            // Product law on the commuting pair.
            let sym = (&(&ops[0] * &ops[1]) + &(&ops[1] * &ops[0])).scale_real(0.5);
            let lhs = valuation_eval(&v, &sym, &c).unwrap();
            let rhs = valuation_eval(&v, &ops[0], &c).unwrap()
                * valuation_eval(&v, &ops[1], &c).unwrap();
            ok &= (lhs - rhs).abs() <= 1e-9;

            // Homomorphism restriction laws on definite projections.
            let p1 = sample::random_xform_member(&spec, &mut rng, &c);
            let p2 = sample::random_xform_member(&spec, &mut rng, &c);
            let vp1 = valuation_eval(&v, p1.as_operator(), &c).unwrap();
            let vp2 = valuation_eval(&v, p2.as_operator(), &c).unwrap();
            let vcomp = valuation_eval(&v, p1.complement().as_operator(), &c).unwrap();
            ok &= (vcomp - (1.0 - vp1)).abs() <= 1e-9;
            let meet = meet_exact(&p1, &p2, &c).unwrap();
            let vmeet = valuation_eval(&v, meet.as_operator(), &c).unwrap();
            ok &= (vmeet - vp1 * vp2).abs() <= 1e-9;
            let join = modalg_core::lattice::join(&p1, &p2, &c).unwrap();
            let vjoin = valuation_eval(&v, join.as_operator(), &c).unwrap();
            ok &= (vjoin - (vp1 + vp2 - vp1 * vp2)).abs() <= 1e-9;
            instances += 4;
            if !ok {
                break 'outer;
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    ok &= instances >= 1000;
    report(
        7,
        "valuation laws",
        ok,
        &format!("{instances} law instances, {elapsed:.2}s"),
    );
}

#[test]
fn criterion_8_spin_demo_exact_value() {
    let c = ctx();
    let result = modalg_core::demos::von_neumann_spin_demo(&c).unwrap();
    let expected = std::f64::consts::SQRT_2 - 1.0;
    let mut ok = (result.min_residual - expected).abs() <= 1e-12;
    ok &= result.diagonal_spectrum.len() == 2
        && (result.diagonal_spectrum[0] - 1.0).abs() <= 1e-10
        && (result.diagonal_spectrum[1] + 1.0).abs() <= 1e-10;
    report(
        8,
        "spin demo exact value",
        ok,
        &format!(
            "min residual {:.15} vs √2−1 = {:.15}",
            result.min_residual, expected
        ),
    );
}

#[test]
fn criterion_9_atomicity_demo_identity() {
    let c = ctx();
    let mut ok = true;
    let mut chains = 0usize;
    'outer: for i in 0..30u64 {
        let dim = 3 + (i as usize % 6); // up to 8
        let mut rng = sample::rng(9000 + i);
        let u = sample::random_unitary(dim, &mut rng);
        // Strictly decreasing ranks from below the top, ending nonzero.
        let mut ranks: Vec<usize> = Vec::new();
        let mut r = dim - 1;
        while r >= 1 && ranks.len() < 5 {
            ranks.push(r);
            if r == 1 {
                break;
            }
            r -= 1 + (rand::Rng::random_range(&mut rng, 0..r.min(3)));
        }
        if ranks.len() < 2 {
            continue;
        }
        let chain: Vec<Projection> = ranks
            .iter()
            .map(|&rank| {
                Projection::coordinate(dim, &(0..rank).collect::<Vec<_>>()).conjugate_by(&u)
            })
            .collect();
        let truncation = chain.len() - 1;
        let demo = atomicity_demo(&chain, truncation, &c).unwrap();
        ok &= demo.completeness_defect <= 1e-10;

        let mut expected = vec![1.0];
        for n in 1..=truncation {
            expected.push((-(n as f64)).exp());
        }
        expected.push(0.0);
        ok &= demo.spectrum.eigenvalues().len() == expected.len();
        for (got, want) in demo.spectrum.eigenvalues().iter().zip(&expected) {
            ok &= (got - want).abs() <= 1e-10;
        }
        // Multiplicities follow the rank profile.
        let mut want_mult = vec![dim - ranks[0]];
        for w in ranks.windows(2) {
            want_mult.push(w[0] - w[1]);
        }
        want_mult.push(ranks[ranks.len() - 1]);
        ok &= demo.spectrum.multiplicities() == want_mult;

        chains += 1;
        if !ok {
            break 'outer;
        }
    }
    ok &= chains >= 20;
    report(
        9,
        "atomicity demo identity",
        ok,
        &format!("{chains} seeded chains in dims ≤ 8"),
    );
}

/// Thm 4 atom maps pass the law check on each golden Boolean or X-form
/// lattice (supporting evidence used by criterion 5's suite).
#[test]
fn homomorphism_laws_on_golden_suite() {
    let c = ctx();
    for (name, lattice) in golden_lattices(&c) {
        if name.starts_with("two-pairs") {
            continue;
        }
        let atoms = modalg_core::lattice::atom_indices(&lattice);
        let atom = lattice.element(atoms[0]).clone();
        let h = TwoValuedHomomorphism::new(
            atom,
            DefiniteSetPredicate::FullLattice { dim: lattice.dim() },
            &c,
        )
        .unwrap();
        let report = modalg_core::valuation::check_homomorphism_laws(&h, &lattice, &c).unwrap();
        assert!(report.passed, "laws failed on {name}");
        // Spot value: the homomorphism sends the top to one.
        assert_eq!(
            homomorphism_eval(&h, &Projection::identity(lattice.dim()), &c).unwrap(),
            1
        );
    }
}

/// The enumeration bound surfaces as an error rather than an endless sweep.
#[test]
fn enumeration_bound_guard() {
    let c = ctx();
    let gens: Vec<Projection> = (0..5)
        .map(|i| Projection::coordinate(6, &[i]))
        .collect();
    let lattice = generate_ortholattice(&gens, 200, &c).unwrap();
    assert!(lattice.len() > 20);
    assert!(matches!(
        enumerate_homomorphisms(&lattice),
        Err(Error::TooLarge { .. })
    ));
    let _ = XFormSpec::new(gens, &c).unwrap();
}
