//! Finite-dimensional operator algebra toolkit for definite-valued
//! observable sets.
//!
//! The crate provides, at desk scale (dimensions up to ~64):
//!
//! - dense complex operators, projections, and hermitian spectral
//!   decomposition ([`matrix`], [`spectral`]);
//! - commutants, double commutants, von Neumann algebra checks, and the
//!   restriction/extension maps between operator sets and projection sets
//!   ([`algebra`]);
//! - the ortholattice of projections: meets, joins, finite sublattices,
//!   orthomodularity/distributivity checks ([`lattice`]);
//! - the definite-valued projection sets of the orthodox, Clifton,
//!   Kochen–Dieks, and Bub interpretation rules, all as X-form sets
//!   ([`rules`]);
//! - two-valued homomorphisms, functional valuations, and the probability
//!   measure reproducing quantum statistics over them ([`valuation`]);
//! - executable no-go and existence demonstrations ([`demos`]).

pub mod algebra;
pub mod demos;
pub mod error;
pub mod lattice;
pub mod matrix;
pub mod rules;
pub mod sample;
pub mod spectral;
pub(crate) mod svd;
pub mod tolerance;
pub mod valuation;

pub use algebra::{
    commutant, double_commutant, extension_membership, is_von_neumann_algebra,
    restriction_membership, self_adjoint_part_contains, star_closure_check, ClosureReport,
    DefiniteSetPredicate, OperatorSet, OperatorSpan,
};
pub use error::{Error, Result};
pub use lattice::{
    atomicity_demo, atoms, check_boolean, check_orthomodular, generate_ortholattice, join, leq,
    meet_exact, meet_iterative, ChainDemo, FiniteLattice, DEFAULT_LATTICE_CAP,
};
pub use matrix::{adjoint, is_projection, CMatrix, CVector, Operator, Projection};
pub use rules::{
    make_density_state, rule_bub, rule_clifton, rule_kochen_dieks, rule_orthodox,
    xform_ideal_membership, xform_membership, BubRuleInput, DensityState, RuleSelector, XFormSpec,
};
pub use spectral::{norm_limit, projection_onto_span, spectral_resolution, SpectralResolution};
pub use tolerance::ToleranceContext;
pub use valuation::{
    build_measure, check_countable_additivity, check_faithful, check_functional,
    check_homomorphism_laws, check_quasiboolean, check_quasiboolean_atoms_only,
    enumerate_homomorphisms, homomorphism_eval,
    valuation_eval, FaithfulSample, FunctionalValuation, StatisticsMeasure,
    TwoValuedHomomorphism, STATISTICS_TOL,
};
