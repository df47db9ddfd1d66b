//! Two-valued homomorphisms on projection lattices, functional valuations on
//! definite-valued operator sets, and the probability measure over valuations
//! that reproduces quantum statistics.

use crate::algebra::DefiniteSetPredicate;
use crate::error::{Error, Result};
use crate::lattice::{atom_indices, leq, meet_exact, join, FiniteLattice};
use crate::matrix::{Operator, Projection};
use crate::rules::{xform_membership, DensityState, XFormSpec};
use crate::spectral::{spectral_resolution, SpectralResolution};
use crate::tolerance::ToleranceContext;

/// Absolute tolerance on probability comparisons: all quantities are finite
/// sums of traces, accumulating only rounding error.
pub const STATISTICS_TOL: f64 = 1e-9;

/// Largest lattice the exhaustive homomorphism search will accept.
pub const EXHAUSTIVE_HOMOMORPHISM_BOUND: usize = 20;

/// The two-valued map induced by a selecting atom b:
/// [x] = 1 when b ≤ x, [x] = 0 when b ≤ x⊥.
#[derive(Debug, Clone)]
pub struct TwoValuedHomomorphism {
    atom: Projection,
    domain: DefiniteSetPredicate,
}

impl TwoValuedHomomorphism {
    pub fn new(
        atom: Projection,
        domain: DefiniteSetPredicate,
        ctx: &ToleranceContext,
    ) -> Result<Self> {
        if atom.is_zero(ctx) {
            return Err(Error::PreconditionViolated {
                reason: "selecting atom must be nonzero".into(),
            });
        }
        if atom.dim() != domain.dim() {
            return Err(Error::DimensionMismatch {
                left: domain.dim(),
                right: atom.dim(),
            });
        }
        Ok(Self { atom, domain })
    }

    pub fn atom(&self) -> &Projection {
        &self.atom
    }

    pub fn domain(&self) -> &DefiniteSetPredicate {
        &self.domain
    }
}

/// Evaluates the atom map: 1 when the atom lies below P, 0 when it lies
/// below P⊥. A projection resolved by neither signals a domain on which no
/// such homomorphism exists.
pub fn homomorphism_eval(
    h: &TwoValuedHomomorphism,
    p: &Projection,
    ctx: &ToleranceContext,
) -> Result<u8> {
    if leq(h.atom(), p, ctx)? {
        return Ok(1);
    }
    if leq(h.atom(), &p.complement(), ctx)? {
        return Ok(0);
    }
    Err(Error::AtomNotResolved)
}

/// A single law violation found by [`check_homomorphism_laws`].
#[derive(Debug, Clone)]
pub enum LawViolation {
    Complement { element: usize, value: u8, complement_value: u8 },
    Meet { left: usize, right: usize },
    Join { left: usize, right: usize },
    Unresolved { element: usize },
}

#[derive(Debug, Clone)]
pub struct LawReport {
    pub passed: bool,
    pub checked_pairs: usize,
    pub violations: Vec<LawViolation>,
}

/// Exhaustively checks the ortholattice homomorphism laws
/// [x⊥] = 1 − [x], [x∧y] = [x]·[y], [x∨y] = [x]+[y]−[x]·[y]
/// for the atom map over a finite lattice.
pub fn check_homomorphism_laws(
    h: &TwoValuedHomomorphism,
    l: &FiniteLattice,
    ctx: &ToleranceContext,
) -> Result<LawReport> {
    let n = l.len();
    let mut values = vec![0u8; n];
    let mut violations = Vec::new();
    for i in 0..n {
        if !h.domain().contains(l.element(i), ctx)? {
            return Err(Error::NotInD);
        }
        match homomorphism_eval(h, l.element(i), ctx) {
            Ok(v) => values[i] = v,
            Err(Error::AtomNotResolved) => {
                violations.push(LawViolation::Unresolved { element: i });
            }
            Err(e) => return Err(e),
        }
    }
    let mut checked_pairs = 0;
    if violations.is_empty() {
        for i in 0..n {
            let ci = l.complement_idx(i);
            if values[ci] != 1 - values[i] {
                violations.push(LawViolation::Complement {
                    element: i,
                    value: values[i],
                    complement_value: values[ci],
                });
            }
        }
        for i in 0..n {
            for j in i..n {
                checked_pairs += 1;
                if values[l.meet_idx(i, j)] != values[i] * values[j] {
                    violations.push(LawViolation::Meet { left: i, right: j });
                }
                let join_expected = values[i] + values[j] - values[i] * values[j];
                if values[l.join_idx(i, j)] != join_expected {
                    violations.push(LawViolation::Join { left: i, right: j });
                }
            }
        }
    }
    Ok(LawReport {
        passed: violations.is_empty(),
        checked_pairs,
        violations,
    })
}

/// All maps L → {0, 1} satisfying the three ortholattice homomorphism laws,
/// found by exhaustive search over the 2^|L| assignments.
pub fn enumerate_homomorphisms(l: &FiniteLattice) -> Result<Vec<Vec<u8>>> {
    let n = l.len();
    if n > EXHAUSTIVE_HOMOMORPHISM_BOUND {
        return Err(Error::TooLarge {
            size: n,
            bound: EXHAUSTIVE_HOMOMORPHISM_BOUND,
        });
    }
    let mut found = Vec::new();
    'mask: for mask in 0u32..(1u32 << n) {
        let value = |i: usize| -> u8 { ((mask >> i) & 1) as u8 };
        for i in 0..n {
            if value(l.complement_idx(i)) != 1 - value(i) {
                continue 'mask;
            }
        }
        for i in 0..n {
            for j in i..n {
                let vi = value(i);
                let vj = value(j);
                if value(l.meet_idx(i, j)) != vi * vj {
                    continue 'mask;
                }
                if value(l.join_idx(i, j)) != vi + vj - vi * vj {
                    continue 'mask;
                }
            }
        }
        found.push((0..n).map(value).collect());
    }
    Ok(found)
}

/// Outcome of [`check_quasiboolean`].
#[derive(Debug, Clone)]
pub struct QuasiBooleanOutcome {
    pub is_quasi_boolean: bool,
    /// The canonical orthogonal atom family: atoms of L outside the ideal.
    pub atom_family: Vec<usize>,
    /// An (atom, element) pair where the atom lies below neither the element
    /// nor its complement, when the atom route fails that way.
    pub unresolved: Option<(usize, usize)>,
    /// Whether the ideal differs from the principal ideal of (∨A)⊥.
    pub ideal_mismatch: bool,
    /// An element outside the ideal sent to 1 by no homomorphism, when the
    /// enumeration route fails.
    pub uncovered: Option<usize>,
    pub homomorphism_count: usize,
}

fn validate_ideal(l: &FiniteLattice, ideal: &[usize]) -> Result<()> {
    if ideal.is_empty() {
        return Err(Error::IdealInvalid {
            reason: "ideal must be non-empty".into(),
        });
    }
    let member = |x: usize| ideal.contains(&x);
    if member(l.one_index()) {
        return Err(Error::IdealInvalid {
            reason: "ideal contains the top element".into(),
        });
    }
    for &x in ideal {
        if x >= l.len() {
            return Err(Error::IdealInvalid {
                reason: format!("index {x} out of range"),
            });
        }
        for y in 0..l.len() {
            if l.leq_idx(y, x) && !member(y) {
                return Err(Error::IdealInvalid {
                    reason: format!("not downward closed: {y} ≤ {x}"),
                });
            }
        }
        for &y in ideal {
            if !member(l.join_idx(x, y)) {
                return Err(Error::IdealInvalid {
                    reason: format!("not join closed at ({x}, {y})"),
                });
            }
        }
    }
    Ok(())
}

struct AtomRoute {
    holds: bool,
    atom_family: Vec<usize>,
    unresolved: Option<(usize, usize)>,
    ideal_mismatch: bool,
}

fn atom_route(l: &FiniteLattice, ideal: &[usize]) -> AtomRoute {
    let in_ideal = |x: usize| ideal.contains(&x);
    let atom_family: Vec<usize> = atom_indices(l)
        .into_iter()
        .filter(|&a| !in_ideal(a))
        .collect();
    let mut unresolved = None;
    'outer: for &a in &atom_family {
        for y in 0..l.len() {
            if !l.leq_idx(a, y) && !l.leq_idx(a, l.complement_idx(y)) {
                unresolved = Some((a, y));
                break 'outer;
            }
        }
    }
    let ideal_mismatch = if atom_family.is_empty() {
        true
    } else {
        let top = l.join_all(&atom_family);
        let mut expected = l.principal_ideal(l.complement_idx(top));
        expected.sort_unstable();
        let mut sorted_ideal = ideal.to_vec();
        sorted_ideal.sort_unstable();
        expected != sorted_ideal
    };
    AtomRoute {
        holds: !atom_family.is_empty() && unresolved.is_none() && !ideal_mismatch,
        atom_family,
        unresolved,
        ideal_mismatch,
    }
}

/// The atom-route decision alone, for lattices too large for the exhaustive
/// homomorphism search. The characterization is sound on its own; the
/// exhaustive route in [`check_quasiboolean`] is a cross-check.
pub fn check_quasiboolean_atoms_only(
    l: &FiniteLattice,
    ideal: &[usize],
) -> Result<QuasiBooleanOutcome> {
    validate_ideal(l, ideal)?;
    let route = atom_route(l, ideal);
    Ok(QuasiBooleanOutcome {
        is_quasi_boolean: route.holds,
        atom_family: route.atom_family,
        unresolved: route.unresolved,
        ideal_mismatch: route.ideal_mismatch,
        uncovered: None,
        homomorphism_count: 0,
    })
}

/// Decides I-quasiBooleanness two independent ways and requires agreement:
///
/// - the atom route: the canonical family A of atoms outside the ideal must
///   resolve every lattice element (lie below it or below its complement)
///   and the ideal must be the principal ideal of (∨A)⊥;
/// - the enumeration route: every element outside the ideal must be sent to
///   1 by some two-valued homomorphism from the exhaustive search.
pub fn check_quasiboolean(l: &FiniteLattice, ideal: &[usize]) -> Result<QuasiBooleanOutcome> {
    validate_ideal(l, ideal)?;
    let in_ideal = |x: usize| ideal.contains(&x);
    let route = atom_route(l, ideal);

    // Enumeration route.
    let homomorphisms = enumerate_homomorphisms(l)?;
    let mut uncovered = None;
    for x in 0..l.len() {
        if !in_ideal(x) && !homomorphisms.iter().any(|h| h[x] == 1) {
            uncovered = Some(x);
            break;
        }
    }
    let enumeration_route = uncovered.is_none();

    if route.holds != enumeration_route {
        return Err(Error::OracleDisagreement {
            context: format!(
                "atom route says {}, enumeration route says {enumeration_route} \
                 on a lattice of {} elements",
                route.holds,
                l.len()
            ),
        });
    }

    Ok(QuasiBooleanOutcome {
        is_quasi_boolean: route.holds,
        atom_family: route.atom_family,
        unresolved: route.unresolved,
        ideal_mismatch: route.ideal_mismatch,
        uncovered,
        homomorphism_count: homomorphisms.len(),
    })
}

/// The functional valuation attached to a selector Y of an X-form family:
/// ⟨Q⟩ = Σ qᵢ [Qᵢ] where [Qᵢ] = 1 exactly when Qᵢ absorbs Y.
#[derive(Debug, Clone)]
pub struct FunctionalValuation {
    selector: Projection,
    spec: XFormSpec,
}

impl FunctionalValuation {
    pub fn new(spec: XFormSpec, selector: Projection, ctx: &ToleranceContext) -> Result<Self> {
        if !spec
            .members()
            .iter()
            .any(|x| x.approx_eq(&selector, ctx.loose()))
        {
            return Err(Error::PreconditionViolated {
                reason: "selector must be a member of the X-form family".into(),
            });
        }
        Ok(Self { selector, spec })
    }

    pub fn selector(&self) -> &Projection {
        &self.selector
    }

    pub fn spec(&self) -> &XFormSpec {
        &self.spec
    }
}

fn assert_in_extension(
    spec: &XFormSpec,
    resolution: &SpectralResolution,
    ctx: &ToleranceContext,
) -> Result<()> {
    for (_, proj) in resolution.iter() {
        if !xform_membership(spec, proj, ctx)? {
            return Err(Error::NotInExtension);
        }
    }
    Ok(())
}

/// Evaluates ⟨Q⟩: spectral-resolves Q, requires every spectral projector to
/// be definite, and returns the eigenvalue of the unique projector absorbing
/// the selector. The result is always in the spectrum of Q.
pub fn valuation_eval(
    v: &FunctionalValuation,
    q: &Operator,
    ctx: &ToleranceContext,
) -> Result<f64> {
    let resolution = spectral_resolution(q, ctx)?;
    assert_in_extension(v.spec(), &resolution, ctx)?;
    let y = v.selector().as_operator();
    let mut selected = Vec::new();
    for (value, proj) in resolution.iter() {
        let py = proj.as_operator() * y;
        if py.distance(y) <= ctx.loose() {
            selected.push(value);
        }
    }
    match selected.len() {
        0 => Err(Error::NoSelectedProjector),
        1 => Ok(selected[0]),
        k => Err(Error::MultipleSelectedProjectors { count: k }),
    }
}

/// One faithfulness sample: operators Q, S and a real scalar a, with the
/// combination aQ + S evaluated against a⟨Q⟩ + ⟨S⟩ and squares against
/// squared values.
#[derive(Debug, Clone)]
pub struct FaithfulSample {
    pub q: Operator,
    pub s: Operator,
    pub scale: f64,
}

#[derive(Debug, Clone)]
pub struct FaithfulnessReport {
    pub passed: bool,
    pub samples_checked: usize,
    pub max_linear_residual: f64,
    pub max_square_residual: f64,
    pub max_spectrum_distance: f64,
}

/// Verifies linearity ⟨aQ+S⟩ = a⟨Q⟩+⟨S⟩, squaring ⟨Q²⟩ = ⟨Q⟩², and spectrum
/// membership on every sample.
pub fn check_faithful(
    v: &FunctionalValuation,
    samples: &[FaithfulSample],
    ctx: &ToleranceContext,
) -> Result<FaithfulnessReport> {
    let mut max_linear = 0.0f64;
    let mut max_square = 0.0f64;
    let mut max_spectrum = 0.0f64;
    for sample in samples {
        let q_val = valuation_eval(v, &sample.q, ctx)?;
        let s_val = valuation_eval(v, &sample.s, ctx)?;
        let combo = &sample.q.scale_real(sample.scale) + &sample.s;
        let combo_val = valuation_eval(v, &combo, ctx)?;
        max_linear = max_linear.max((combo_val - (sample.scale * q_val + s_val)).abs());

        let q_squared = &sample.q * &sample.q;
        let sq_val = valuation_eval(v, &q_squared, ctx)?;
        max_square = max_square.max((sq_val - q_val * q_val).abs());

        let spectrum = spectral_resolution(&sample.q, ctx)?;
        let nearest = spectrum
            .eigenvalues()
            .iter()
            .map(|e| (e - q_val).abs())
            .fold(f64::INFINITY, f64::min);
        max_spectrum = max_spectrum.max(nearest);
    }
    let tol = ctx.loose();
    Ok(FaithfulnessReport {
        passed: max_linear <= tol && max_square <= tol && max_spectrum <= ctx.eig_cluster_tol,
        samples_checked: samples.len(),
        max_linear_residual: max_linear,
        max_square_residual: max_square,
        max_spectrum_distance: max_spectrum,
    })
}

#[derive(Debug, Clone)]
pub struct FunctionalReport {
    pub passed: bool,
    pub converged_at: usize,
    pub target_value: f64,
    pub final_sequence_value: f64,
    /// Largest ‖FₙY − ⟨Fₙ⟩Y‖ along the sequence: the selector must be an
    /// eigenvector of every member with the assigned value as eigenvalue.
    pub max_mechanism_residual: f64,
}

/// Verifies continuity of the valuation along a norm-convergent sequence in
/// the extension: ⟨Fₙ⟩ → ⟨F⟩, cross-checked by FₙY = ⟨Fₙ⟩Y.
pub fn check_functional(
    v: &FunctionalValuation,
    target: &Operator,
    mut sequence: impl FnMut(usize) -> Operator,
    ctx: &ToleranceContext,
) -> Result<FunctionalReport> {
    let target_value = valuation_eval(v, target, ctx)?;
    let y = v.selector().as_operator();
    let mut max_mechanism = 0.0f64;
    let mut converged_at = None;
    let mut final_value = f64::NAN;
    for n in 1..=ctx.max_iter {
        let f_n = sequence(n);
        let value = valuation_eval(v, &f_n, ctx)?;
        let mechanism = (&(&f_n * y) - &y.scale_real(value)).norm();
        max_mechanism = max_mechanism.max(mechanism);
        final_value = value;
        if f_n.distance(target) <= ctx.atol {
            converged_at = Some(n);
            break;
        }
    }
    let converged_at = converged_at.ok_or(Error::SequenceNotConvergent)?;
    let passed =
        (final_value - target_value).abs() <= ctx.loose() && max_mechanism <= ctx.loose();
    Ok(FunctionalReport {
        passed,
        converged_at,
        target_value,
        final_sequence_value: final_value,
        max_mechanism_residual: max_mechanism,
    })
}

/// An X-form family paired with a state whose image its span must cover;
/// exactly then the statistical ideal { P ∈ d : PW = 0 } coincides with the
/// lattice-theoretic ideal { P ∈ d : P·ΣX = 0 }.
#[derive(Debug, Clone)]
pub struct IdealSpec {
    spec: XFormSpec,
    state: DensityState,
}

impl IdealSpec {
    pub fn new(spec: XFormSpec, state: DensityState, ctx: &ToleranceContext) -> Result<Self> {
        if spec.dim() != state.dim() {
            return Err(Error::DimensionMismatch {
                left: spec.dim(),
                right: state.dim(),
            });
        }
        let support = state.support_projector();
        let span = spec.span_projector();
        let defect = (&(span.as_operator() * support.as_operator()) - support.as_operator())
            .norm();
        if defect > ctx.loose() {
            return Err(Error::IdealMismatch { defect });
        }
        Ok(Self { spec, state })
    }

    pub fn spec(&self) -> &XFormSpec {
        &self.spec
    }

    pub fn state(&self) -> &DensityState {
        &self.state
    }
}

/// The atomic probability measure over the finite valuation family
/// { ⟨.⟩_Y : Y ∈ 𝐗 }, weighting the Y-valuation by Tr(YW).
#[derive(Debug, Clone)]
pub struct StatisticsMeasure {
    ideal: IdealSpec,
    weights: Vec<f64>,
}

impl StatisticsMeasure {
    pub fn spec(&self) -> &XFormSpec {
        self.ideal.spec()
    }

    pub fn state(&self) -> &DensityState {
        self.ideal.state()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The valuation attached to the k-th family member.
    pub fn valuation(&self, k: usize, ctx: &ToleranceContext) -> Result<FunctionalValuation> {
        FunctionalValuation::new(self.spec().clone(), self.spec().members()[k].clone(), ctx)
    }

    /// μ(S_P) = Σ over selectors absorbed by P of their weights. P must be a
    /// definite projection.
    pub fn measure_of_set(&self, p: &Projection, ctx: &ToleranceContext) -> Result<f64> {
        if !xform_membership(self.spec(), p, ctx)? {
            return Err(Error::NotInD);
        }
        let mut total = 0.0;
        for (y, w) in self.spec().members().iter().zip(&self.weights) {
            let py = p.as_operator() * y.as_operator();
            if py.distance(y.as_operator()) <= ctx.loose() {
                total += w;
            }
        }
        Ok(total)
    }
}

/// Builds the measure: weight Tr(YW) per selector. Fails with
/// [`Error::IdealMismatch`] when the family does not cover the state's
/// image space.
pub fn build_measure(
    spec: &XFormSpec,
    state: &DensityState,
    ctx: &ToleranceContext,
) -> Result<StatisticsMeasure> {
    let ideal = IdealSpec::new(spec.clone(), state.clone(), ctx)?;
    let weights: Vec<f64> = spec
        .members()
        .iter()
        .map(|y| (y.as_operator() * state.state()).trace().re)
        .collect();
    Ok(StatisticsMeasure { ideal, weights })
}

#[derive(Debug, Clone)]
pub struct StatisticsReport {
    pub passed: bool,
    /// Tr(P_α P_β … W).
    pub quantum_probability: f64,
    /// Measure of the valuations whose values land in every selection.
    pub measure_via_valuations: f64,
    /// Measure of S_J for the joint projector J = P_α P_β ….
    pub measure_via_joint_set: f64,
    pub discrepancy: f64,
}

/// Compares the quantum probability of a joint eigenvalue selection over a
/// mutually commuting family against the measure of the corresponding
/// valuation set, both through per-valuation values and through the joint
/// projector's measurable set.
pub fn verify_statistics(
    measure: &StatisticsMeasure,
    family: &[Operator],
    selections: &[Vec<f64>],
    ctx: &ToleranceContext,
) -> Result<StatisticsReport> {
    if family.is_empty() || family.len() != selections.len() {
        return Err(Error::PreconditionViolated {
            reason: "family and selections must be non-empty and aligned".into(),
        });
    }
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            let defect = family[i].commutator(&family[j])?.norm();
            let scale = (family[i].norm() * family[j].norm()).max(1.0);
            if defect > ctx.atol * scale {
                return Err(Error::NotCommuting { i, j, defect });
            }
        }
    }

    let dim = family[0].dim();
    let mut joint = Operator::identity(dim);
    let mut resolutions = Vec::new();
    for (op, selection) in family.iter().zip(selections) {
        let resolution = spectral_resolution(op, ctx)?;
        assert_in_extension(measure.spec(), &resolution, ctx)?;
        let mut selected = Operator::zero(dim);
        for (value, proj) in resolution.iter() {
            if selection.iter().any(|s| (s - value).abs() <= ctx.eig_cluster_tol) {
                selected = &selected + proj.as_operator();
            }
        }
        joint = &joint * &selected;
        resolutions.push(resolution);
    }
    let joint_projection = Projection::try_new(joint.hermitian_part(), &ToleranceContext {
        atol: ctx.loose(),
        ..*ctx
    })?;

    let quantum = (joint_projection.as_operator() * measure.state().state())
        .trace()
        .re;

    let mut via_valuations = 0.0;
    for (k, weight) in measure.weights().iter().enumerate() {
        let valuation = measure.valuation(k, ctx)?;
        let mut all_selected = true;
        for (op, selection) in family.iter().zip(selections) {
            let value = valuation_eval(&valuation, op, ctx)?;
            if !selection
                .iter()
                .any(|s| (s - value).abs() <= ctx.eig_cluster_tol)
            {
                all_selected = false;
                break;
            }
        }
        if all_selected {
            via_valuations += weight;
        }
    }

    let via_joint_set = measure.measure_of_set(&joint_projection, ctx)?;

    let discrepancy = (quantum - via_valuations)
        .abs()
        .max((quantum - via_joint_set).abs());
    Ok(StatisticsReport {
        passed: discrepancy <= STATISTICS_TOL,
        quantum_probability: quantum,
        measure_via_valuations: via_valuations,
        measure_via_joint_set: via_joint_set,
        discrepancy,
    })
}

#[derive(Debug, Clone)]
pub struct AdditivityReport {
    pub passed: bool,
    pub measure_of_join: f64,
    pub sum_of_measures: f64,
    /// ‖(∨ᵢPᵢ)W − (ΣᵢPᵢ)W‖.
    pub operator_identity_defect: f64,
}

/// Verifies μ(S_{∨Pᵢ}) = Σ μ(S_{Pᵢ}) on a disjoint definite family, along
/// with the operator identity (∨ᵢPᵢ)W = (ΣᵢPᵢ)W that drives it.
pub fn check_countable_additivity(
    measure: &StatisticsMeasure,
    family: &[Projection],
    ctx: &ToleranceContext,
) -> Result<AdditivityReport> {
    if family.is_empty() {
        return Err(Error::EmptySet);
    }
    for p in family {
        if !xform_membership(measure.spec(), p, ctx)? {
            return Err(Error::NotInD);
        }
    }
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            let m = meet_exact(&family[i], &family[j], ctx)?;
            if m.rank() > 0 {
                return Err(Error::NotDisjoint { i, j });
            }
        }
    }
    let mut joined = family[0].clone();
    let mut summed = family[0].as_operator().clone();
    for p in &family[1..] {
        joined = join(&joined, p, ctx)?;
        summed = &summed + p.as_operator();
    }

    let measure_of_join = measure.measure_of_set(&joined, ctx)?;
    let mut sum_of_measures = 0.0;
    for p in family {
        sum_of_measures += measure.measure_of_set(p, ctx)?;
    }
    let w = measure.state().state();
    let operator_identity_defect =
        (&(joined.as_operator() * w) - &(&summed * w)).norm();

    Ok(AdditivityReport {
        passed: (measure_of_join - sum_of_measures).abs() <= STATISTICS_TOL
            && operator_identity_defect <= ctx.atol,
        measure_of_join,
        sum_of_measures,
        operator_identity_defect,
    })
}
