//! Construction and exact verification of strongest-nonlocal orthogonal
//! state sets in tripartite quantum systems.
//!
//! An orthogonal set has the strongest form of nonlocality when, on every
//! bipartition of the three parties, the only measurements the joint party
//! can perform without breaking mutual orthogonality are trivial (every
//! element proportional to the identity). This crate
//!
//! * builds the minimum-cardinality sets of sizes d²+1 in (d,d,d) and
//!   d₂d₃+1 in (d₁,d₂,d₃), made of two-branch and three-branch states with
//!   cube-root-of-unity phases plus a full-support stopper ([`states`]);
//! * decides triviality rigorously by computing the exact null space of the
//!   orthogonality-preserving constraint system over the cyclotomic field
//!   ℚ(ω₃), with modular and floating cross-checks ([`verifier`]);
//! * replays the observation-style deduction arguments step by step into
//!   auditable traces ([`prover`]);
//! * exports the cell/plane-structure geometry of a set ([`bipartition`]).
//!
//! Everything is exact: amplitudes are elements of ℚ(ω₃) stored on the basis
//! {1, ω₃} with arbitrary-precision rational coordinates ([`field`]), and no
//! verdict ever depends on floating-point arithmetic.

pub mod bipartition;
mod error;
pub mod field;
pub mod linalg;
pub mod prover;
pub mod states;
pub mod verifier;

pub use bipartition::{matched_row_pairs, plane_structure, Bipartition, Cell, PlaneStructure};
pub use error::Error;
pub use field::{CycNum, Rat};
pub use prover::{prove, DeductionTrace, Fact, ProofVerdict, Rule};
pub use states::{
    build_lemma1_set, build_theorem1_set, build_theorem2_set, classify_state, Dims, Family, Ket,
    StateCategory, StateClass, StateSet,
};
pub use verifier::{
    build_system, check_meets_bound, lower_bound, nullity_exact, nullity_float, nullity_modp,
    product_basis, verify_strongest, ConstraintSystem, Mode, ModeSpec, NullityReport,
    StrongestReport, Verdict, DEFAULT_FLOAT_TOL, DEFAULT_PRIMES,
};
