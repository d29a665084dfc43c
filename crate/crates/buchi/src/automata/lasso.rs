use std::fmt;

use crate::automata::Alphabet;

/// An ultimately periodic word `u·v^ω`, given by its stem `u` and nonempty
/// period `v` as letter indices into some alphabet.
///
/// Lassos are not canonicalised: `(u, v)`, `(u·v, v)` and `(u, v·v)` denote
/// the same infinite word and every oracle must treat them identically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LassoWord {
    stem: Vec<usize>,
    period: Vec<usize>,
}

impl LassoWord {
    pub fn new(stem: Vec<usize>, period: Vec<usize>) -> LassoWord {
        assert!(!period.is_empty(), "lasso period must be nonempty");
        LassoWord { stem, period }
    }

    /// Builds a lasso from letter names, e.g. `from_names(&al, &["a"], &["b"])`.
    pub fn from_names(alphabet: &Alphabet, stem: &[&str], period: &[&str]) -> LassoWord {
        let look = |n: &&str| {
            alphabet
                .index_of(n)
                .unwrap_or_else(|| panic!("unknown letter {n:?}"))
        };
        LassoWord::new(
            stem.iter().map(|n| look(n)).collect(),
            period.iter().map(|n| look(n)).collect(),
        )
    }

    pub fn stem(&self) -> &[usize] {
        &self.stem
    }

    pub fn period(&self) -> &[usize] {
        &self.period
    }

    /// The letter at an absolute position of the infinite word.
    pub fn letter_at(&self, pos: usize) -> usize {
        if pos < self.stem.len() {
            self.stem[pos]
        } else {
            self.period[(pos - self.stem.len()) % self.period.len()]
        }
    }

    /// An equal infinite word re-represented with stem length `stem_len`
    /// (≥ the current one) and period length a positive multiple of the
    /// current period length.
    pub fn unroll(&self, stem_len: usize, period_len: usize) -> LassoWord {
        assert!(stem_len >= self.stem.len());
        assert!(period_len > 0 && period_len % self.period.len() == 0);
        let stem = (0..stem_len).map(|i| self.letter_at(i)).collect();
        let period = (stem_len..stem_len + period_len)
            .map(|i| self.letter_at(i))
            .collect();
        LassoWord::new(stem, period)
    }

    /// Rewrites both words over a common shape (same stem length, same period
    /// length) without changing the denoted infinite words.
    pub fn common_shape(&self, other: &LassoWord) -> (LassoWord, LassoWord) {
        let stem_len = self.stem.len().max(other.stem.len());
        let period_len = lcm(self.period.len(), other.period.len());
        (
            self.unroll(stem_len, period_len),
            other.unroll(stem_len, period_len),
        )
    }

    /// Renders in the CLI lasso format, e.g. `a b ; a`.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        LassoDisplay {
            word: self,
            alphabet,
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

struct LassoDisplay<'a> {
    word: &'a LassoWord,
    alphabet: &'a Alphabet,
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in self.word.stem() {
            write!(f, "{} ", self.alphabet.name(l))?;
        }
        write!(f, ";")?;
        for &l in self.word.period() {
            write!(f, " {}", self.alphabet.name(l))?;
        }
        Ok(())
    }
}
