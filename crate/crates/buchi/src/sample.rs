//! Seeded random generation of automata, lassos, Q-dag letters and small
//! semigroups. Used by the test suites and by the CLI's sampling-based
//! equivalence check; everything is deterministic given the RNG state.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use rand::prelude::*;

use crate::automata::{Alphabet, BuchiAutomaton, LassoWord};
use crate::matrix::TransitionMatrix;
use crate::semigroup::FiniteSemigroup;
use crate::tri::Tri;

/// Alphabet `a, b, c, …` of the requested size (up to 26).
pub fn letter_alphabet(size: usize) -> Alphabet {
    assert!((1..=26).contains(&size));
    Alphabet::new((0..size).map(|i| ((b'a' + i as u8) as char).to_string()))
}

/// A random Büchi automaton: each transition is present independently with
/// the given density, each state is accepting with probability 1/2, and the
/// initial state is 0.
pub fn random_buchi(
    rng: &mut impl Rng,
    states: RangeInclusive<usize>,
    alphabet_size: usize,
    density: f64,
) -> BuchiAutomaton {
    let n = rng.gen_range(states);
    let alphabet = letter_alphabet(alphabet_size);
    let accepting: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let mut transitions = Vec::new();
    for q in 0..n {
        for a in 0..alphabet_size {
            for qq in 0..n {
                if rng.gen_bool(density) {
                    transitions.push((q, a, qq));
                }
            }
        }
    }
    BuchiAutomaton::new(alphabet, n, 0, accepting, transitions)
        .expect("randomly generated automaton is valid")
}

/// A random lasso with `|u| ≤ max_stem` and `1 ≤ |v| ≤ max_period`, letters
/// uniform in `0..alphabet_size`.
pub fn random_lasso(
    rng: &mut impl Rng,
    alphabet_size: usize,
    max_stem: usize,
    max_period: usize,
) -> LassoWord {
    let stem_len = rng.gen_range(0..=max_stem);
    let period_len = rng.gen_range(1..=max_period);
    LassoWord::new(
        (0..stem_len).map(|_| rng.gen_range(0..alphabet_size)).collect(),
        (0..period_len).map(|_| rng.gen_range(0..alphabet_size)).collect(),
    )
}

/// A random `[Q]` letter with the given edge density.
pub fn random_matrix_letter(rng: &mut impl Rng, dim: usize, density: f64) -> TransitionMatrix {
    let mut m = TransitionMatrix::zero(dim);
    for q in 0..dim {
        for qq in 0..dim {
            if rng.gen_bool(density) {
                let kind = if rng.gen_bool(0.5) { Tri::Star } else { Tri::One };
                m.set(q, qq, kind);
            }
        }
    }
    m
}

/// A random tree-shaped `[Q]` letter: every column gets at most one nonzero
/// entry.
pub fn random_tree_shaped_letter(rng: &mut impl Rng, dim: usize) -> TransitionMatrix {
    let mut m = TransitionMatrix::zero(dim);
    for target in 0..dim {
        if rng.gen_bool(0.7) {
            let source = rng.gen_range(0..dim);
            let kind = if rng.gen_bool(0.5) { Tri::Star } else { Tri::One };
            m.set(source, target, kind);
        }
    }
    m
}

/// A random lasso of tree-shaped `[Q]` letters, returned as the letter
/// matrices of stem and period.
pub fn random_tree_shaped_lasso(
    rng: &mut impl Rng,
    dim: usize,
    max_stem: usize,
    max_period: usize,
) -> (Vec<TransitionMatrix>, Vec<TransitionMatrix>) {
    let stem_len = rng.gen_range(0..=max_stem);
    let period_len = rng.gen_range(1..=max_period);
    (
        (0..stem_len)
            .map(|_| random_tree_shaped_letter(rng, dim))
            .collect(),
        (0..period_len)
            .map(|_| random_tree_shaped_letter(rng, dim))
            .collect(),
    )
}

/// Every semigroup of the given size, by exhaustive enumeration of Cayley
/// tables. Feasible for `size ≤ 3` (3^9 candidate tables).
pub fn all_semigroups_of_size(size: usize) -> Vec<FiniteSemigroup> {
    assert!(size <= 3, "exhaustive enumeration is only feasible up to size 3");
    let cells = size * size;
    let mut out = Vec::new();
    let total = (size as u64).pow(cells as u32);
    for code in 0..total {
        let mut table = Vec::with_capacity(cells);
        let mut rest = code;
        for _ in 0..cells {
            table.push((rest % size as u64) as usize);
            rest /= size as u64;
        }
        if let Ok(s) = FiniteSemigroup::new(size, table) {
            out.push(s);
        }
    }
    out
}

/// Closure of random transformations of a small set under composition,
/// truncated to `max_size`; `None` when the closure exceeds the bound.
pub fn random_transformation_semigroup(
    rng: &mut impl Rng,
    points: usize,
    generators: usize,
    max_size: usize,
) -> Option<FiniteSemigroup> {
    let gens: Vec<Vec<usize>> = (0..generators)
        .map(|_| (0..points).map(|_| rng.gen_range(0..points)).collect())
        .collect();
    let compose = |f: &Vec<usize>, g: &Vec<usize>| -> Vec<usize> {
        // (f * g)(x) = g(f(x)): apply f first, matching left-to-right words.
        f.iter().map(|&y| g[y]).collect()
    };
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut elements: Vec<Vec<usize>> = Vec::new();
    for g in gens {
        if !index.contains_key(&g) {
            index.insert(g.clone(), elements.len());
            elements.push(g);
        }
    }
    let mut frontier: Vec<usize> = (0..elements.len()).collect();
    while let Some(i) = frontier.pop() {
        for j in 0..elements.len() {
            for prod in [
                compose(&elements[i], &elements[j]),
                compose(&elements[j], &elements[i]),
            ] {
                if !index.contains_key(&prod) {
                    if elements.len() >= max_size {
                        return None;
                    }
                    index.insert(prod.clone(), elements.len());
                    frontier.push(elements.len());
                    elements.push(prod);
                }
            }
        }
    }
    let n = elements.len();
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = index[&compose(&elements[i], &elements[j])];
        }
    }
    Some(FiniteSemigroup::new(n, table).expect("composition is associative"))
}

/// Handcrafted semigroups of size ≤ 8 with varied Green structure.
pub fn handcrafted_semigroups() -> Vec<FiniteSemigroup> {
    let mut out = Vec::new();

    let from_fn = |n: usize, f: &dyn Fn(usize, usize) -> usize| {
        let table = (0..n).flat_map(|a| (0..n).map(move |b| f(a, b))).collect();
        FiniteSemigroup::new(n, table).expect("handcrafted table must be associative")
    };

    // Cyclic groups Z_2 .. Z_8.
    for n in 2..=8 {
        out.push(from_fn(n, &|a, b| (a + b) % n));
    }
    // (max, {0..k}) chains.
    for k in 1..=3 {
        out.push(from_fn(k + 1, &|a, b| a.max(b)));
    }
    // Logical and on {0,1}.
    out.push(from_fn(2, &|a, b| a & b));
    // Left-zero and right-zero semigroups.
    out.push(from_fn(3, &|a, _| a));
    out.push(from_fn(3, &|_, b| b));
    // 2×2 rectangular band: (a,b)*(c,d) = (a,d), coded as 2*a+b.
    out.push(from_fn(4, &|x, y| (x / 2) * 2 + (y % 2)));
    // Null semigroup: everything multiplies to 0.
    out.push(from_fn(3, &|_, _| 0));
    // Monogenic with preperiod 2, period 3: s^6 = s^3 on {s, s², …, s⁵}.
    out.push(from_fn(5, &|a, b| {
        let e = a + b + 2; // element i codes s^(i+1)
        if e <= 5 {
            e - 1
        } else {
            2 + (e - 3) % 3
        }
    }));
    // Brandt-style 5-element semigroup B2: {0, a, b, ab, ba}.
    {
        const Z: usize = 0;
        const A: usize = 1;
        const B: usize = 2;
        const AB: usize = 3;
        const BA: usize = 4;
        let mul = |x: usize, y: usize| -> usize {
            match (x, y) {
                (A, B) => AB,
                (B, A) => BA,
                (A, BA) => A,
                (AB, A) => A,
                (B, AB) => B,
                (BA, B) => B,
                (AB, AB) => AB,
                (BA, BA) => BA,
                (AB, BA) | (BA, AB) => Z,
                _ => Z,
            }
        };
        out.push(from_fn(5, &mul));
    }
    // Full transformation monoid on 2 points (4 elements).
    {
        let maps = [[0usize, 1], [1, 0], [0, 0], [1, 1]];
        let mul = move |x: usize, y: usize| -> usize {
            let f = maps[x];
            let g = maps[y];
            let h = [g[f[0]], g[f[1]]];
            maps.iter().position(|m| *m == h).unwrap()
        };
        out.push(from_fn(4, &mul));
    }
    // Z_2 × Z_2 (Klein four-group) and Z_4 are already covered (Z_4 above);
    // add Z_2 × Z_2 for a non-cyclic group.
    out.push(from_fn(4, &|a, b| a ^ b));
    // Direct product Z_2 × (max on {0,1}), coded as 2*g + m.
    out.push(from_fn(4, &|x, y| {
        let (gx, mx) = (x / 2, x % 2);
        let (gy, my) = (y / 2, y % 2);
        ((gx + gy) % 2) * 2 + mx.max(my)
    }));
    // Syntactic-style: adjoin an identity to the 2×2 rectangular band.
    out.push(from_fn(5, &|x, y| {
        if x == 4 {
            y
        } else if y == 4 {
            x
        } else {
            (x / 2) * 2 + (y % 2)
        }
    }));

    assert!(out.len() >= 20);
    for s in &out {
        assert!(s.size() <= 8);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_deterministic_per_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        let la = random_lasso(&mut a, 2, 4, 4);
        let lb = random_lasso(&mut b, 2, 4, 4);
        assert_eq!(la, lb);
    }

    #[test]
    fn tree_shaped_letters_are_tree_shaped() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            assert!(random_tree_shaped_letter(&mut rng, 4).is_tree_shaped());
        }
    }

    #[test]
    fn size_two_enumeration_is_complete() {
        // There are 8 semigroup structures on a fixed 2-element set.
        assert_eq!(all_semigroups_of_size(2).len(), 8);
    }

    #[test]
    fn handcrafted_corpus_is_large_enough() {
        assert!(handcrafted_semigroups().len() >= 20);
    }

    #[test]
    fn transformation_closures_stay_closed() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut produced = 0;
        for _ in 0..50 {
            if let Some(s) = random_transformation_semigroup(&mut rng, 3, 2, 5) {
                produced += 1;
                assert!(s.size() <= 5);
            }
        }
        assert!(produced > 0);
    }
}
