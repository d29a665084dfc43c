//! Automata over infinite words, ultimately periodic (lasso) words, and the
//! membership / emptiness oracles used to check every construction at desk
//! scale.

mod alphabet;
mod buchi;
mod lasso;
mod rabin;
mod transducer;

pub use alphabet::Alphabet;
pub use buchi::{BuchiAutomaton, LassoRun, ValidationError};
pub use lasso::LassoWord;
pub use rabin::{RabinAcceptance, RabinAutomaton, RabinPair};
pub use transducer::Transducer;

/// Either kind of acceptor, for operations that work on both.
pub enum AnyAutomaton {
    Buchi(BuchiAutomaton),
    Rabin(RabinAutomaton),
}

impl AnyAutomaton {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            AnyAutomaton::Buchi(a) => a.alphabet(),
            AnyAutomaton::Rabin(a) => a.alphabet(),
        }
    }

    pub fn accepts_lasso(&self, word: &LassoWord) -> bool {
        match self {
            AnyAutomaton::Buchi(a) => a.accepts_lasso(word),
            AnyAutomaton::Rabin(a) => a.accepts_lasso(word),
        }
    }
}

/// Runs both membership oracles on every sample and returns the samples where
/// they disagree, in input order.
pub fn lasso_disagreements<'a>(
    left: &AnyAutomaton,
    right: &AnyAutomaton,
    samples: &'a [LassoWord],
) -> Vec<&'a LassoWord> {
    samples
        .iter()
        .filter(|w| left.accepts_lasso(w) != right.accepts_lasso(w))
        .collect()
}
