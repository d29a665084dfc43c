//! The three-valued semiring `{0, 1, ⋆}` underlying transition matrices.
//!
//! An entry records what kind of run segment connects two states: none (`Zero`),
//! one avoiding accepting states at its source positions (`One`), or one passing
//! through an accepting state (`Star`).

use std::fmt;
use std::ops::{Add, Mul};

/// A value of the `{0, 1, ⋆}` semiring, written `0`, `1`, `*` in text output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tri {
    Zero,
    One,
    Star,
}

impl Tri {
    pub const ALL: [Tri; 3] = [Tri::Zero, Tri::One, Tri::Star];

    /// Addition: the maximum under `0 < 1 < ⋆`. Picks the preferred kind of run
    /// (an accepting segment beats a plain one, which beats none).
    pub fn add(self, other: Tri) -> Tri {
        self.max(other)
    }

    /// Multiplication: concatenation of run segments. `0` annihilates, `1` is
    /// the identity, and `⋆ * ⋆ = ⋆`.
    pub fn mul(self, other: Tri) -> Tri {
        if self == Tri::Zero || other == Tri::Zero {
            Tri::Zero
        } else {
            self.max(other)
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Tri::Zero => '0',
            Tri::One => '1',
            Tri::Star => '*',
        }
    }

    pub fn from_char(c: char) -> Option<Tri> {
        match c {
            '0' => Some(Tri::Zero),
            '1' => Some(Tri::One),
            '*' => Some(Tri::Star),
            _ => None,
        }
    }
}

impl Add for Tri {
    type Output = Tri;
    fn add(self, rhs: Tri) -> Tri {
        Tri::add(self, rhs)
    }
}

impl Mul for Tri {
    type Output = Tri;
    fn mul(self, rhs: Tri) -> Tri {
        Tri::mul(self, rhs)
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[cfg(test)]
mod tests {
    use super::Tri::{self, One, Star, Zero};

    // The two operation tables, row by row, exactly as in the source figure.
    const ADD_TABLE: [[Tri; 3]; 3] = [
        [Zero, One, Star],
        [One, One, Star],
        [Star, Star, Star],
    ];
    const MUL_TABLE: [[Tri; 3]; 3] = [
        [Zero, Zero, Zero],
        [Zero, One, Star],
        [Zero, Star, Star],
    ];

    #[test]
    fn add_matches_table() {
        for (i, a) in Tri::ALL.into_iter().enumerate() {
            for (j, b) in Tri::ALL.into_iter().enumerate() {
                assert_eq!(a + b, ADD_TABLE[i][j], "{a} + {b}");
            }
        }
    }

    #[test]
    fn mul_matches_table() {
        for (i, a) in Tri::ALL.into_iter().enumerate() {
            for (j, b) in Tri::ALL.into_iter().enumerate() {
                assert_eq!(a * b, MUL_TABLE[i][j], "{a} * {b}");
            }
        }
    }

    #[test]
    fn spec_cells() {
        assert_eq!(One + Star, Star);
        assert_eq!(Star + Zero, Star);
        assert_eq!(Zero * Star, Zero);
        assert_eq!(Star * One, Star);
        for x in Tri::ALL {
            assert_eq!(Zero + x, x);
            assert_eq!(One * x, x);
        }
    }

    #[test]
    fn ops_are_associative_and_distribute() {
        for a in Tri::ALL {
            for b in Tri::ALL {
                for c in Tri::ALL {
                    assert_eq!((a + b) + c, a + (b + c));
                    assert_eq!((a * b) * c, a * (b * c));
                    assert_eq!(a * (b + c), a * b + a * c);
                    assert_eq!((a + b) * c, a * c + b * c);
                }
            }
        }
    }
}
