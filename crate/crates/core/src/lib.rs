//! Bistellar (Pachner) moves on simplicial complexes, and the exact
//! rational calculus of what they do to face counts.
//!
//! The library has three layers:
//!
//! * combinatorics: [`simplex`], [`complex`], [`iso`], [`builtins`], and
//!   [`manifold`] provide facet-set complexes, stars/links/joins,
//!   isomorphism testing, a small corpus of named manifolds, and
//!   closed-manifold verification by link checking;
//! * moves: [`moves`] detects, validates, applies, and inverts bistellar
//!   moves and reports the moves they induce on vertex links; [`walk`]
//!   composes them into seeded random walks and an annealing flip search
//!   that recognizes spheres; [`gadget`] builds implantable cells that
//!   realize a move of every index inside a single vertex star;
//! * calculus: [`calculus`] tracks f-vectors through moves exactly, and
//!   derives from first principles the unique vertex-local formula (up to
//!   scale) whose vertex sum is move-invariant, which turns out to be
//!   proportional to the Euler characteristic; [`harness`] evaluates such
//!   formulas on actual complexes and cross-checks the derivation by
//!   walks, witness search, and per-move balance identities.
//!
//! All invariant arithmetic is exact (`i64` counts and rational
//! coefficients); floating point appears only in sampling weights and
//! annealing temperatures.

pub mod builtins;
pub mod calculus;
pub mod complex;
pub mod gadget;
pub mod harness;
pub mod io;
pub mod iso;
pub mod manifold;
pub mod moves;
pub mod rat;
pub mod simplex;
pub mod walk;

pub use builtins::{builtin_complex, corpus_of_dim};
pub use calculus::{
    beta, derive_psi, ds_complete, ds_relations, euler_psi, f_delta, globalize, h_values,
    move_counts, proportionality, r_coeff, CalcError, GlobalFormula, HSpectrum, LocalFormula,
    MoveDelta, Proportionality,
};
pub use complex::{ComplexError, FVector, SimplicialComplex};
pub use gadget::{
    a_vector, gadget_2, gadget_3, implant_gadget, verify_gadget, AVector, GadgetCell, GadgetError,
};
pub use harness::{
    balance_check, evaluate_invariant, find_witness, invariance_report, HarnessError,
    InvarianceReport, Verdict,
};
pub use iso::is_isomorphic;
pub use manifold::{verify_closed_manifold, ManifoldStatus, VerifyPolicy};
pub use moves::{
    apply_move, enumerate_moves, induced_link_moves, inverse_move, validate_move, BistellarMove,
    MoveError,
};
pub use rat::Rat;
pub use simplex::{Simplex, VertexId};
pub use walk::{
    random_walk, replay, sphere_recognize, MoveLog, Recognition, RecognizeBudget, WalkConfig,
};
