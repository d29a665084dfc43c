//! Ramsey factorisation of lasso words.
//!
//! On an ultimately periodic word the homogeneous decomposition promised by
//! the Additive Ramsey Theorem can be computed directly: take the idempotent
//! power `M` of the period image and cut the word at `stemLen + i·periodLen`.
//! Every inter-cut segment then has image `M`, and the prefix type `N`
//! absorbs one loop block so that `N * M = N`.

use crate::automata::{BuchiAutomaton, LassoWord};
use crate::matrix::TransitionMatrix;
use crate::semigroup::idempotent_by_iteration;

/// The pair `(N, M)` of a homogeneous decomposition together with the cut
/// arithmetic: positions `n_i = stem_len + i · period_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyFactorisation {
    pub prefix_type: TransitionMatrix,
    pub loop_type: TransitionMatrix,
    pub stem_len: usize,
    pub period_len: usize,
}

/// Factorises `u·v^ω` with respect to the automaton's matrix homomorphism:
/// `M` is the idempotent power `h(v)^k`, `period_len = k·|v|`,
/// `stem_len = |u|` and `N = h(u) * M`.
pub fn ramsey_factorize_lasso(aut: &BuchiAutomaton, word: &LassoWord) -> RamseyFactorisation {
    let period_image = aut.word_image(word.period());
    let (loop_type, exponent) =
        idempotent_by_iteration(period_image, |a, b| a.mat_mul(b));
    let prefix_type = aut.word_image(word.stem()).mat_mul(&loop_type);
    RamseyFactorisation {
        prefix_type,
        loop_type,
        stem_len: word.stem().len(),
        period_len: exponent * word.period().len(),
    }
}

impl RamseyFactorisation {
    /// The cut position `n_i`.
    pub fn cut(&self, i: usize) -> usize {
        self.stem_len + i * self.period_len
    }

    /// Checks the defining equations and the segment images on the word this
    /// factorisation was computed from (used by tests and the CLI).
    pub fn verify(&self, aut: &BuchiAutomaton, word: &LassoWord, segments: usize) -> bool {
        let n = &self.prefix_type;
        let m = &self.loop_type;
        if &n.mat_mul(m) != n || &m.mat_mul(m) != m {
            return false;
        }
        (0..segments).all(|i| {
            let letters: Vec<usize> = (self.cut(i)..self.cut(i + 1))
                .map(|p| word.letter_at(p))
                .collect();
            &aut.word_image(&letters) == m
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;

    #[test]
    fn star_self_loop_example() {
        // Single accepting state with an a-self-loop, lasso (ε, "a"):
        // h(a) = [[⋆]] is already idempotent.
        let al = Alphabet::new(["a"]);
        let aut = BuchiAutomaton::from_named(al, 1, 0, &[0], &[(0, "a", 0)]);
        let w = LassoWord::new(vec![], vec![0]);
        let f = ramsey_factorize_lasso(&aut, &w);
        assert_eq!(f.loop_type.compact(), "*");
        assert_eq!(f.prefix_type.compact(), "*");
        assert_eq!(f.stem_len, 0);
        assert_eq!(f.period_len, 1);
        assert!(f.verify(&aut, &w, 5));
    }

    #[test]
    fn idempotent_period_image_keeps_period_length() {
        // Deterministic cycle of length 2 on `a`: h(aa) = identity-ish? Use a
        // single non-accepting self-loop instead: h(a) = [[1]] is idempotent.
        let al = Alphabet::new(["a"]);
        let aut = BuchiAutomaton::from_named(al, 1, 0, &[], &[(0, "a", 0)]);
        let w = LassoWord::new(vec![0], vec![0]);
        let f = ramsey_factorize_lasso(&aut, &w);
        assert_eq!(f.period_len, w.period().len());
        assert!(f.verify(&aut, &w, 5));
    }

    #[test]
    fn two_state_cycle_needs_a_power() {
        // δ(0,a)=1, δ(1,a)=0: h(a) swaps the states, h(aa) = identity-like,
        // so the idempotent power has exponent 2.
        let al = Alphabet::new(["a"]);
        let aut = BuchiAutomaton::from_named(al, 2, 0, &[], &[(0, "a", 1), (1, "a", 0)]);
        let w = LassoWord::new(vec![], vec![0]);
        let f = ramsey_factorize_lasso(&aut, &w);
        assert_eq!(f.period_len, 2);
        assert!(f.verify(&aut, &w, 5));
    }
}
