//! Transition matrices: square grids over `{0,1,⋆}` describing the possible
//! runs of an automaton over a word. The set of all such matrices for a fixed
//! dimension forms a monoid under `mat_mul` with `identity` as unit.

use std::fmt;

use crate::tri::Tri;

/// A `dim × dim` matrix over [`Tri`], stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TransitionMatrix {
    dim: usize,
    entries: Vec<Tri>,
}

impl TransitionMatrix {
    /// All-zero matrix.
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        TransitionMatrix {
            dim,
            entries: vec![Tri::Zero; dim * dim],
        }
    }

    /// The monoid unit: `1` on the diagonal and `0` outside of it.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for q in 0..dim {
            m.set(q, q, Tri::One);
        }
        m
    }

    pub fn from_rows(rows: &[&[Tri]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zero(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            for (j, &e) in row.iter().enumerate() {
                m.set(i, j, e);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, from: usize, to: usize) -> Tri {
        self.entries[from * self.dim + to]
    }

    pub fn set(&mut self, from: usize, to: usize, value: Tri) {
        self.entries[from * self.dim + to] = value;
    }

    /// Matrix product over the `{0,1,⋆}` semiring:
    /// `(m * n)(q, q'') = Σ_q' m(q, q') * n(q', q'')` with `Σ` the `add` fold.
    pub fn mat_mul(&self, other: &TransitionMatrix) -> TransitionMatrix {
        assert_eq!(
            self.dim, other.dim,
            "dimension mismatch: {} vs {}",
            self.dim, other.dim
        );
        let mut out = TransitionMatrix::zero(self.dim);
        for q in 0..self.dim {
            for qq in 0..self.dim {
                let mut acc = Tri::Zero;
                for mid in 0..self.dim {
                    acc = acc + self.get(q, mid) * other.get(mid, qq);
                }
                out.set(q, qq, acc);
            }
        }
        out
    }

    /// A matrix is tree-shaped when every column has at most one non-zero
    /// entry, i.e. every target vertex has at most one incoming edge.
    pub fn is_tree_shaped(&self) -> bool {
        (0..self.dim).all(|to| {
            (0..self.dim)
                .filter(|&from| self.get(from, to) != Tri::Zero)
                .count()
                <= 1
        })
    }

    /// Single-token rendering with rows joined by `/`, e.g. `"01/*0"` for
    /// `[[0,1],[⋆,0]]`. Used wherever a matrix has to act as a letter name.
    pub fn compact(&self) -> String {
        (0..self.dim)
            .map(|q| {
                (0..self.dim)
                    .map(|qq| self.get(q, qq).as_char())
                    .collect::<String>()
            })
            .collect::<Vec<_>>()
            .join("/")
    }

    pub fn from_compact(s: &str) -> Option<TransitionMatrix> {
        let rows: Vec<&str> = s.split('/').collect();
        let dim = rows.len();
        let mut m = TransitionMatrix::zero(dim);
        for (i, row) in rows.iter().enumerate() {
            let cells: Vec<Tri> = row.chars().map(Tri::from_char).collect::<Option<_>>()?;
            if cells.len() != dim {
                return None;
            }
            for (j, e) in cells.into_iter().enumerate() {
                m.set(i, j, e);
            }
        }
        Some(m)
    }
}

impl fmt::Display for TransitionMatrix {
    /// Canonical multi-line rendering: one row of `0`/`1`/`*` characters per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.dim {
            for qq in 0..self.dim {
                write!(f, "{}", self.get(q, qq).as_char())?;
            }
            if q + 1 < self.dim {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.compact())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tri::Tri::{One, Star, Zero};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut impl Rng, dim: usize) -> TransitionMatrix {
        let mut m = TransitionMatrix::zero(dim);
        for q in 0..dim {
            for qq in 0..dim {
                m.set(q, qq, *Tri::ALL.choose(rng).unwrap());
            }
        }
        m
    }

    #[test]
    fn identity_examples() {
        assert_eq!(TransitionMatrix::identity(1).compact(), "1");
        assert_eq!(TransitionMatrix::identity(2).compact(), "10/01");
    }

    #[test]
    fn identity_is_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 1..=4 {
            let id = TransitionMatrix::identity(dim);
            for _ in 0..20 {
                let m = random_matrix(&mut rng, dim);
                assert_eq!(id.mat_mul(&m), m);
                assert_eq!(m.mat_mul(&id), m);
            }
        }
    }

    #[test]
    fn square_of_spec_example() {
        // m = [[⋆,1],[0,1]]; entry (0,0) of m*m is ⋆*⋆ + 1*0 = ⋆.
        let m = TransitionMatrix::from_rows(&[&[Star, One], &[Zero, One]]);
        let sq = m.mat_mul(&m);
        let expected = TransitionMatrix::from_rows(&[&[Star, Star], &[Zero, One]]);
        assert_eq!(sq, expected);
    }

    #[test]
    fn mat_mul_associative_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let dim = rng.gen_range(1..=4);
            let a = random_matrix(&mut rng, dim);
            let b = random_matrix(&mut rng, dim);
            let c = random_matrix(&mut rng, dim);
            assert_eq!(a.mat_mul(&b).mat_mul(&c), a.mat_mul(&b.mat_mul(&c)));
        }
    }

    #[test]
    fn compact_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let dim = rng.gen_range(1..=4);
            let m = random_matrix(&mut rng, dim);
            assert_eq!(TransitionMatrix::from_compact(&m.compact()), Some(m));
        }
    }

    #[test]
    fn tree_shaped_detection() {
        let t = TransitionMatrix::from_rows(&[&[One, Star], &[Zero, Zero]]);
        assert!(t.is_tree_shaped());
        let not = TransitionMatrix::from_rows(&[&[Zero, Star], &[Zero, One]]);
        assert!(!not.is_tree_shaped());
    }
}
