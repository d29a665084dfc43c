//! Finite semigroups given by explicit Cayley tables, Green's preorders, and
//! idempotent powers.
//!
//! Elements are dense indices `0..size`; the table stores `a * b` at
//! `a * size + b`. The transition-matrix monoid of an automaton is never built
//! in full (it has `3^(|Q|²)` elements); only the subsemigroup generated by the
//! letter matrices is materialised, see [`generated_matrix_semigroup`].

use std::collections::HashMap;

use thiserror::Error;

use crate::matrix::TransitionMatrix;

/// A finite semigroup `(S, *)` as a Cayley table over element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    table: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("table has {got} entries, expected {expected}")]
    BadTableSize { got: usize, expected: usize },
    #[error("table entry {value} out of range for size {size}")]
    EntryOutOfRange { value: usize, size: usize },
    #[error("operation is not associative: ({a} * {b}) * {c} != {a} * ({b} * {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("the given set is not an H-class of the semigroup")]
    NotAnHClass,
}

impl FiniteSemigroup {
    /// Builds a semigroup from a row-major Cayley table, checking closure and
    /// associativity. Associativity is checked exhaustively for sizes up to 32
    /// and on 10⁵ sampled triples above that.
    pub fn new(size: usize, table: Vec<usize>) -> Result<Self, SemigroupError> {
        if table.len() != size * size {
            return Err(SemigroupError::BadTableSize {
                got: table.len(),
                expected: size * size,
            });
        }
        if let Some(&value) = table.iter().find(|&&v| v >= size) {
            return Err(SemigroupError::EntryOutOfRange { value, size });
        }
        let s = FiniteSemigroup { size, table };
        if size <= 32 {
            for a in 0..size {
                for b in 0..size {
                    for c in 0..size {
                        if s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c)) {
                            return Err(SemigroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut x: u64 = 0x9e3779b97f4a7c15;
            for _ in 0..100_000 {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                let a = (x % size as u64) as usize;
                let b = ((x >> 16) % size as u64) as usize;
                let c = ((x >> 32) % size as u64) as usize;
                if s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c)) {
                    return Err(SemigroupError::NotAssociative { a, b, c });
                }
            }
        }
        Ok(s)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    /// The idempotent power of `s`: some `e = s^k` (k ≥ 1) with `e * e = e`.
    /// Also returns the exponent `k`.
    ///
    /// Successive powers `s, s², s³, …` are eventually periodic; once the cycle
    /// (preperiod `i`, period `p`) is known, the idempotent is `s^m` for the
    /// least multiple `m` of `p` with `m ≥ max(i, 1)`.
    pub fn idempotent_power(&self, s: usize) -> (usize, usize) {
        idempotent_by_iteration(s, |&a, &b| self.mul(a, b))
    }

    /// Green's preorders `≤_R`, `≤_L`, `≤_H` and the H-class partition.
    pub fn green_relations(&self) -> GreenData {
        let n = self.size;
        let mut leq_r = vec![false; n * n];
        let mut leq_l = vec![false; n * n];
        for s in 0..n {
            for t in 0..n {
                let r = s == t || (0..n).any(|a| self.mul(t, a) == s);
                let l = s == t || (0..n).any(|a| self.mul(a, t) == s);
                leq_r[s * n + t] = r;
                leq_l[s * n + t] = l;
            }
        }
        let leq_h: Vec<bool> = (0..n * n).map(|i| leq_r[i] && leq_l[i]).collect();

        let mut class_of = vec![usize::MAX; n];
        let mut h_classes: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if class_of[s] != usize::MAX {
                continue;
            }
            let class: Vec<usize> = (0..n)
                .filter(|&t| leq_h[s * n + t] && leq_h[t * n + s])
                .collect();
            let id = h_classes.len();
            for &t in &class {
                class_of[t] = id;
            }
            h_classes.push(class);
        }

        GreenData {
            size: n,
            leq_r,
            leq_l,
            leq_h,
            h_classes,
            class_of,
        }
    }

    /// If the H-class `h_class` contains `a, b` with `a * b` again in the
    /// class, it is a group; returns its identity. Returns `None` when no such
    /// `a, b` exist. Errors when the set is not an H-class at all.
    pub fn h_class_group_identity(
        &self,
        h_class: &[usize],
    ) -> Result<Option<usize>, SemigroupError> {
        let green = self.green_relations();
        let mut sorted = h_class.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let actual = match sorted.first() {
            Some(&repr) => green.h_class_of(repr),
            None => return Err(SemigroupError::NotAnHClass),
        };
        let mut actual = actual.to_vec();
        actual.sort_unstable();
        if actual != sorted {
            return Err(SemigroupError::NotAnHClass);
        }

        let closes = sorted
            .iter()
            .any(|&a| sorted.iter().any(|&b| sorted.contains(&self.mul(a, b))));
        if !closes {
            return Ok(None);
        }
        let e = sorted
            .iter()
            .copied()
            .find(|&e| self.mul(e, e) == e)
            .expect("an H-class closed under one product contains an idempotent");
        Ok(Some(e))
    }
}

/// Green's relation data for a semigroup: the three preorders as `size × size`
/// boolean grids plus the H-class partition.
#[derive(Clone, Debug)]
pub struct GreenData {
    size: usize,
    leq_r: Vec<bool>,
    leq_l: Vec<bool>,
    leq_h: Vec<bool>,
    h_classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl GreenData {
    pub fn leq_r(&self, s: usize, t: usize) -> bool {
        self.leq_r[s * self.size + t]
    }

    pub fn leq_l(&self, s: usize, t: usize) -> bool {
        self.leq_l[s * self.size + t]
    }

    pub fn leq_h(&self, s: usize, t: usize) -> bool {
        self.leq_h[s * self.size + t]
    }

    pub fn r_equiv(&self, s: usize, t: usize) -> bool {
        self.leq_r(s, t) && self.leq_r(t, s)
    }

    pub fn l_equiv(&self, s: usize, t: usize) -> bool {
        self.leq_l(s, t) && self.leq_l(t, s)
    }

    pub fn h_equiv(&self, s: usize, t: usize) -> bool {
        self.leq_h(s, t) && self.leq_h(t, s)
    }

    pub fn h_classes(&self) -> &[Vec<usize>] {
        &self.h_classes
    }

    pub fn h_class_of(&self, s: usize) -> &[usize] {
        &self.h_classes[self.class_of[s]]
    }
}

/// Idempotent power in an arbitrary (not tabulated) finite semigroup, tracking
/// powers by value. Returns `(s^k, k)` with the result idempotent.
pub fn idempotent_by_iteration<T, F>(s: T, mul: F) -> (T, usize)
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T, &T) -> T,
{
    let mut seen: HashMap<T, usize> = HashMap::new();
    let mut power = s.clone();
    let mut exp = 1usize;
    loop {
        if let Some(&first) = seen.get(&power) {
            // power = s^first = s^exp, cycle length p = exp - first.
            let p = exp - first;
            let mut m = p;
            while m < first.max(1) {
                m += p;
            }
            let mut e = s.clone();
            for _ in 1..m {
                e = mul(&e, &s);
            }
            debug_assert!(mul(&e, &e) == e);
            return (e, m);
        }
        seen.insert(power.clone(), exp);
        if mul(&power, &power) == power {
            return (power, exp);
        }
        power = mul(&power, &s);
        exp += 1;
    }
}

/// Closure of the given matrices under `mat_mul`: the subsemigroup of `[Q]`
/// they generate, as a list of distinct matrices (generators first).
pub fn generated_matrix_semigroup(generators: &[TransitionMatrix]) -> Vec<TransitionMatrix> {
    let mut index: HashMap<TransitionMatrix, usize> = HashMap::new();
    let mut elements: Vec<TransitionMatrix> = Vec::new();
    for g in generators {
        if !index.contains_key(g) {
            index.insert(g.clone(), elements.len());
            elements.push(g.clone());
        }
    }
    let mut frontier: Vec<usize> = (0..elements.len()).collect();
    while let Some(i) = frontier.pop() {
        let mut new = Vec::new();
        for j in 0..elements.len() {
            for prod in [
                elements[i].mat_mul(&elements[j]),
                elements[j].mat_mul(&elements[i]),
            ] {
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), elements.len() + new.len());
                    new.push(prod);
                }
            }
        }
        for m in new {
            frontier.push(elements.len());
            elements.push(m);
        }
    }
    elements
}

/// Tabulates a list of matrices closed under product into a [`FiniteSemigroup`].
pub fn tabulate_matrix_semigroup(elements: &[TransitionMatrix]) -> FiniteSemigroup {
    let index: HashMap<&TransitionMatrix, usize> =
        elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = elements.len();
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            let prod = elements[i].mat_mul(&elements[j]);
            table[i * n + j] = *index
                .get(&prod)
                .expect("element list must be closed under product");
        }
    }
    FiniteSemigroup::new(n, table).expect("matrix product is associative")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `({0..k}, max)`.
    pub(crate) fn max_semigroup(k: usize) -> FiniteSemigroup {
        let n = k + 1;
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| a.max(b)))
            .collect();
        FiniteSemigroup::new(n, table).unwrap()
    }

    /// The cyclic group Z_n.
    pub(crate) fn cyclic_group(n: usize) -> FiniteSemigroup {
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a + b) % n))
            .collect();
        FiniteSemigroup::new(n, table).unwrap()
    }

    #[test]
    fn rejects_non_associative_tables() {
        // 0*0=1 and everything else 0 is not associative: (0*0)*0 = 1*0 = 0
        // but 0*(0*0) = 0*1 = 0 — pick a table where they differ.
        let bad = FiniteSemigroup::new(2, vec![1, 0, 0, 0]);
        assert!(matches!(bad, Err(SemigroupError::NotAssociative { .. })));
    }

    #[test]
    fn idempotent_power_on_max_is_identity_map() {
        let s = max_semigroup(4);
        for e in 0..s.size() {
            assert_eq!(s.idempotent_power(e), (e, 1));
        }
    }

    #[test]
    fn idempotent_power_in_cyclic_group() {
        // In Z_6 the only idempotent is 0; the element 2 has order 3.
        let s = cyclic_group(6);
        let (e, k) = s.idempotent_power(2);
        assert_eq!(e, 0);
        assert_eq!(2 * k % 6, 0);
        // Order-3 element: repeated squaring alone would cycle 2,4,2,4,…
        let s3 = cyclic_group(3);
        let (e, _) = s3.idempotent_power(1);
        assert_eq!(e, 0);
    }

    #[test]
    fn idempotents_are_fixed() {
        let s = max_semigroup(3);
        for e in 0..s.size() {
            let (f, _) = s.idempotent_power(e);
            assert_eq!(s.mul(f, f), f);
        }
    }

    #[test]
    fn group_has_single_h_class() {
        let g = cyclic_group(5);
        let green = g.green_relations();
        assert_eq!(green.h_classes().len(), 1);
        assert_eq!(green.h_class_of(3).len(), 5);
    }

    #[test]
    fn and_semigroup_r_order() {
        // ({0,1}, logical and): 0 ≤_R 1 (0 = 1*0) but not 1 ≤_R 0.
        let s = FiniteSemigroup::new(2, vec![0, 0, 0, 1]).unwrap();
        let green = s.green_relations();
        assert!(green.leq_r(0, 1));
        assert!(!green.leq_r(1, 0));
    }

    #[test]
    fn h_class_identity_of_singleton_idempotent() {
        let s = max_semigroup(2);
        let green = s.green_relations();
        let class = green.h_class_of(1).to_vec();
        assert_eq!(class, vec![1]);
        assert_eq!(s.h_class_group_identity(&class), Ok(Some(1)));
    }

    #[test]
    fn h_class_identity_of_embedded_cyclic_group() {
        // Z_3 with an absorbing zero adjoined: {z, e, a, a²}.
        let n = 4;
        let mul = |x: usize, y: usize| {
            if x == 0 || y == 0 {
                0
            } else {
                (x - 1 + y - 1) % 3 + 1
            }
        };
        let table = (0..n).flat_map(|a| (0..n).map(move |b| mul(a, b))).collect();
        let s = FiniteSemigroup::new(n, table).unwrap();
        let green = s.green_relations();
        let class = green.h_class_of(2).to_vec();
        assert_eq!(class.len(), 3);
        assert_eq!(s.h_class_group_identity(&class), Ok(Some(1)));
    }

    #[test]
    fn h_class_without_internal_product_is_absent() {
        // Right-zero semigroup on two elements: a*b = b. Both elements form
        // one R-class; H-classes are singletons {0}, {1} with x*x = x, so to
        // get an "absent" answer use a null semigroup adjoined with zero:
        // x*y = 0 for all x,y on {0,1,2} — H-classes {1}, {2} have 1*1 = 0 ∉ H.
        let s = FiniteSemigroup::new(3, vec![0; 9]).unwrap();
        let green = s.green_relations();
        let class = green.h_class_of(1).to_vec();
        assert_eq!(class, vec![1]);
        assert_eq!(s.h_class_group_identity(&class), Ok(None));
    }

    #[test]
    fn h_class_identity_rejects_non_h_class_input() {
        let s = max_semigroup(2);
        assert_eq!(
            s.h_class_group_identity(&[0, 2]),
            Err(SemigroupError::NotAnHClass)
        );
        assert_eq!(
            s.h_class_group_identity(&[]),
            Err(SemigroupError::NotAnHClass)
        );
    }

    #[test]
    fn green_preorders_are_preorders_and_h_is_meet() {
        for s in [max_semigroup(3), cyclic_group(4)] {
            let g = s.green_relations();
            let n = s.size();
            for a in 0..n {
                assert!(g.leq_r(a, a) && g.leq_l(a, a));
                for b in 0..n {
                    assert_eq!(g.leq_h(a, b), g.leq_r(a, b) && g.leq_l(a, b));
                    for c in 0..n {
                        if g.leq_r(a, b) && g.leq_r(b, c) {
                            assert!(g.leq_r(a, c));
                        }
                        if g.leq_l(a, b) && g.leq_l(b, c) {
                            assert!(g.leq_l(a, c));
                        }
                    }
                }
            }
        }
    }
}
