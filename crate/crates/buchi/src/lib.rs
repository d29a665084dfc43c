//! Automata constructions over infinite words, checkable on ultimately
//! periodic (lasso) inputs:
//!
//! - the `{0,1,⋆}` transition-matrix semigroup, Green's relations, and Ramsey
//!   factorisation of lasso words;
//! - Ramsey-based Büchi complementation via rejecting pairs;
//! - determinisation to Rabin automata through the subset and tree-shaping
//!   transducers and the Q-scheme automaton;
//! - an MSO(ℕ, ≤) to Büchi compiler with a sentence decision procedure.
//!
//! Everything is a pure function over immutable values; membership of lasso
//! words is the universal oracle used to cross-check the constructions.

pub mod automata;
pub mod complement;
pub mod determinize;
pub mod format;
pub mod matrix;
pub mod mso;
pub mod ramsey;
pub mod sample;
pub mod semigroup;
pub mod tri;

pub use automata::{
    Alphabet, AnyAutomaton, BuchiAutomaton, LassoRun, LassoWord, RabinAcceptance, RabinAutomaton,
    RabinPair, Transducer,
};
pub use complement::{complement_buchi, is_rejecting_pair, ComplementState};
pub use determinize::determinize;
pub use matrix::TransitionMatrix;
pub use ramsey::{ramsey_factorize_lasso, RamseyFactorisation};
pub use semigroup::{FiniteSemigroup, GreenData};
pub use tri::Tri;

/// Default bound on materialised states in the complement and determinisation
/// constructions; both are worst-case enormous and must fail loudly instead
/// of thrashing.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// A construction exceeded its state budget.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("construction exceeded the state cap of {cap} states")]
pub struct CapExceeded {
    pub cap: usize,
}
