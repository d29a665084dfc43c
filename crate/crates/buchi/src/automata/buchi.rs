use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use thiserror::Error;

use crate::automata::{Alphabet, LassoWord};
use crate::matrix::TransitionMatrix;
use crate::tri::Tri;

/// A nondeterministic Büchi automaton `⟨Q, Σ, q_I, δ, F⟩`. A run is accepting
/// when it visits `F` infinitely often.
#[derive(Clone, Debug)]
pub struct BuchiAutomaton {
    alphabet: Alphabet,
    state_count: usize,
    initial: usize,
    accepting: Vec<bool>,
    // successors[q][a] = sorted target list
    successors: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidationError {
    #[error("automaton must have at least one state")]
    NoStates,
    #[error("initial state {0} out of range")]
    BadInitial(usize),
    #[error("accepting state {0} out of range")]
    BadAccepting(usize),
    #[error("transition ({0}, {1}, {2}) out of range")]
    BadTransition(usize, usize, usize),
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
}

impl BuchiAutomaton {
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        initial: usize,
        accepting: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<BuchiAutomaton, ValidationError> {
        if state_count == 0 {
            return Err(ValidationError::NoStates);
        }
        if initial >= state_count {
            return Err(ValidationError::BadInitial(initial));
        }
        let mut acc = vec![false; state_count];
        for q in accepting {
            if q >= state_count {
                return Err(ValidationError::BadAccepting(q));
            }
            acc[q] = true;
        }
        let mut successors = vec![vec![Vec::new(); alphabet.len()]; state_count];
        for (src, letter, dst) in transitions {
            if src >= state_count || letter >= alphabet.len() || dst >= state_count {
                return Err(ValidationError::BadTransition(src, letter, dst));
            }
            successors[src][letter].push(dst);
        }
        for per_state in &mut successors {
            for targets in per_state {
                targets.sort_unstable();
                targets.dedup();
            }
        }
        Ok(BuchiAutomaton {
            alphabet,
            state_count,
            initial,
            accepting: acc,
            successors,
        })
    }

    /// Convenience constructor from letter names, for hand-built automata.
    pub fn from_named(
        alphabet: Alphabet,
        state_count: usize,
        initial: usize,
        accepting: &[usize],
        transitions: &[(usize, &str, usize)],
    ) -> BuchiAutomaton {
        let resolved: Vec<(usize, usize, usize)> = transitions
            .iter()
            .map(|&(src, name, dst)| {
                let letter = alphabet
                    .index_of(name)
                    .unwrap_or_else(|| panic!("unknown letter {name:?}"));
                (src, letter, dst)
            })
            .collect();
        BuchiAutomaton::new(alphabet, state_count, initial, accepting.to_vec(), resolved)
            .expect("hand-built automaton must validate")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.state_count).filter(|&q| self.accepting[q])
    }

    pub fn successors(&self, q: usize, letter: usize) -> &[usize] {
        &self.successors[q][letter]
    }

    pub fn has_transition(&self, src: usize, letter: usize, dst: usize) -> bool {
        self.successors[src][letter].binary_search(&dst).is_ok()
    }

    /// All transitions in (src, letter, dst) order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.state_count).flat_map(move |q| {
            self.alphabet.letters().flat_map(move |a| {
                self.successors[q][a].iter().map(move |&dst| (q, a, dst))
            })
        })
    }

    /// The transition matrix `M_a`: entry `(q, q')` is `0` without a
    /// transition, `⋆` with a transition whose source `q` is accepting, and
    /// `1` otherwise.
    pub fn letter_matrix(&self, letter: usize) -> TransitionMatrix {
        assert!(letter < self.alphabet.len(), "unknown letter index");
        let mut m = TransitionMatrix::zero(self.state_count);
        for q in 0..self.state_count {
            let kind = if self.accepting[q] { Tri::Star } else { Tri::One };
            for &qq in &self.successors[q][letter] {
                m.set(q, qq, kind);
            }
        }
        m
    }

    /// Image of a finite word under the homomorphism `h : Σ* → [Q]` extending
    /// `a ↦ M_a`; the empty word maps to the identity matrix.
    pub fn word_image(&self, word: &[usize]) -> TransitionMatrix {
        word.iter().fold(
            TransitionMatrix::identity(self.state_count),
            |acc, &letter| acc.mat_mul(&self.letter_matrix(letter)),
        )
    }

    /// Whether some run over `u·v^ω` visits an accepting state infinitely
    /// often, decided on the finite product of states and word positions.
    pub fn accepts_lasso(&self, word: &LassoWord) -> bool {
        self.find_accepting_run(word).is_some()
    }

    /// Searches the product graph of (state, lasso position with wrap-around)
    /// for a reachable cycle through an accepting state and extracts the run.
    pub fn find_accepting_run(&self, word: &LassoWord) -> Option<LassoRun> {
        let stem_len = word.stem().len();
        let period_len = word.period().len();
        let width = stem_len + period_len;
        let vertex = |q: usize, t: usize| q * width + t;
        let next_pos = |t: usize| if t + 1 < width { t + 1 } else { stem_len };

        // Forward reachability from (q_I, 0) with parents for path extraction.
        let mut parent = vec![usize::MAX; self.state_count * width];
        let mut seen = vec![false; self.state_count * width];
        let start = vertex(self.initial, 0);
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let (q, t) = (v / width, v % width);
            let letter = word.letter_at(t);
            for &qq in &self.successors[q][letter] {
                let w = vertex(qq, next_pos(t));
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }

        // An accepting vertex in the periodic zone that lies on a cycle.
        for q in 0..self.state_count {
            if !self.accepting[q] {
                continue;
            }
            for t in stem_len..width {
                let x = vertex(q, t);
                if !seen[x] {
                    continue;
                }
                if let Some(cycle) = self.cycle_through(word, x, width, stem_len) {
                    let mut prefix = Vec::new();
                    let mut v = x;
                    while v != start {
                        prefix.push(v / width);
                        v = parent[v];
                    }
                    prefix.push(self.initial);
                    prefix.reverse();
                    // prefix currently ends with the cycle entry state; the
                    // cycle vector starts there too, so drop the duplicate.
                    prefix.pop();
                    return Some(LassoRun { prefix, cycle });
                }
            }
        }
        None
    }

    /// Shortest product-graph cycle from `x` back to `x`, as the state
    /// sequence starting (and implicitly ending) at `x`.
    fn cycle_through(
        &self,
        word: &LassoWord,
        x: usize,
        width: usize,
        stem_len: usize,
    ) -> Option<Vec<usize>> {
        let next_pos = |t: usize| if t + 1 < width { t + 1 } else { stem_len };
        let mut parent = vec![usize::MAX; self.state_count * width];
        let mut seen = vec![false; self.state_count * width];
        let mut queue = VecDeque::new();
        {
            let (q, t) = (x / width, x % width);
            let letter = word.letter_at(t);
            for &qq in &self.successors[q][letter] {
                let w = qq * width + next_pos(t);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = x;
                    queue.push_back(w);
                    if w == x {
                        return Some(vec![x / width]);
                    }
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            if v == x {
                let mut cycle = Vec::new();
                let mut w = parent[v];
                while w != x {
                    cycle.push(w / width);
                    w = parent[w];
                }
                cycle.push(x / width);
                cycle.reverse();
                return Some(cycle);
            }
            let (q, t) = (v / width, v % width);
            let letter = word.letter_at(t);
            for &qq in &self.successors[q][letter] {
                let w = qq * width + next_pos(t);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Emptiness with witness: a lasso accepted by this automaton, or `None`
    /// when the language is empty. Decides via SCC decomposition — the
    /// language is nonempty exactly when a cycle accessible from the initial
    /// state contains an accepting state.
    pub fn emptiness_witness(&self) -> Option<LassoWord> {
        let mut graph: DiGraph<(), usize> = DiGraph::new();
        let nodes: Vec<NodeIndex> = (0..self.state_count).map(|_| graph.add_node(())).collect();
        for (src, letter, dst) in self.transitions() {
            graph.add_edge(nodes[src], nodes[dst], letter);
        }

        let reachable = self.reachable_states();
        let mut live = vec![false; self.state_count];
        for scc in tarjan_scc(&graph) {
            let internal_edge = scc.iter().any(|&n| {
                graph
                    .neighbors(n)
                    .any(|m| scc.contains(&m) && (scc.len() > 1 || m == n))
            });
            if internal_edge {
                for n in scc {
                    live[n.index()] = true;
                }
            }
        }

        let target = (0..self.state_count)
            .find(|&q| self.accepting[q] && reachable[q] && live[q])?;
        let stem = self.shortest_word(self.initial, target, None);
        let cycle = self.shortest_cycle_word(target);
        Some(LassoWord::new(
            stem.expect("target is reachable"),
            cycle.expect("target lies on a cycle"),
        ))
    }

    pub fn reachable_states(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for a in self.alphabet.letters() {
                for &qq in &self.successors[q][a] {
                    if !seen[qq] {
                        seen[qq] = true;
                        queue.push_back(qq);
                    }
                }
            }
        }
        seen
    }

    /// Letters of a shortest path `from → to`; with `restrict`, only states
    /// satisfying the mask may be used.
    fn shortest_word(
        &self,
        from: usize,
        to: usize,
        restrict: Option<&[bool]>,
    ) -> Option<Vec<usize>> {
        if from == to {
            return Some(Vec::new());
        }
        let ok = |q: usize| restrict.map_or(true, |m| m[q]);
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.state_count];
        let mut seen = vec![false; self.state_count];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            for a in self.alphabet.letters() {
                for &qq in &self.successors[q][a] {
                    if !seen[qq] && ok(qq) {
                        seen[qq] = true;
                        parent[qq] = Some((q, a));
                        if qq == to {
                            let mut letters = Vec::new();
                            let mut cur = to;
                            while cur != from {
                                let (p, letter) = parent[cur].unwrap();
                                letters.push(letter);
                                cur = p;
                            }
                            letters.reverse();
                            return Some(letters);
                        }
                        queue.push_back(qq);
                    }
                }
            }
        }
        None
    }

    /// Letters of a shortest nonempty cycle `q → q`.
    fn shortest_cycle_word(&self, q: usize) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for a in self.alphabet.letters() {
            for &qq in &self.successors[q][a] {
                let rest = if qq == q {
                    Some(Vec::new())
                } else {
                    self.shortest_word(qq, q, None)
                };
                if let Some(rest) = rest {
                    let mut word = vec![a];
                    word.extend(rest);
                    if best.as_ref().map_or(true, |b| word.len() < b.len()) {
                        best = Some(word);
                    }
                }
            }
        }
        best
    }

    /// Removes states that cannot appear on any accepting run: keeps states
    /// reachable from the initial state that can also reach an accepting
    /// cycle. An automaton with empty language collapses to a single rejecting
    /// state over the same alphabet.
    pub fn trim(&self) -> BuchiAutomaton {
        let reachable = self.reachable_states();

        // States on accepting cycles.
        let mut core = vec![false; self.state_count];
        for q in self.accepting_states() {
            if self.shortest_cycle_word_exists(q) {
                core[q] = true;
            }
        }
        // Backward closure: states that can reach the core.
        let mut predecessors = vec![Vec::new(); self.state_count];
        for (src, _, dst) in self.transitions() {
            predecessors[dst].push(src);
        }
        let mut useful = core.clone();
        let mut queue: VecDeque<usize> =
            (0..self.state_count).filter(|&q| useful[q]).collect();
        while let Some(q) = queue.pop_front() {
            for &p in &predecessors[q] {
                if !useful[p] {
                    useful[p] = true;
                    queue.push_back(p);
                }
            }
        }
        for q in 0..self.state_count {
            useful[q] &= reachable[q];
        }

        if !useful[self.initial] {
            return BuchiAutomaton::new(self.alphabet.clone(), 1, 0, [], [])
                .expect("trivial automaton is valid");
        }

        let mut remap = vec![usize::MAX; self.state_count];
        let mut kept = 0;
        for q in 0..self.state_count {
            if useful[q] {
                remap[q] = kept;
                kept += 1;
            }
        }
        let accepting: Vec<usize> = (0..self.state_count)
            .filter(|&q| useful[q] && self.accepting[q])
            .map(|q| remap[q])
            .collect();
        let transitions: Vec<(usize, usize, usize)> = self
            .transitions()
            .filter(|&(src, _, dst)| useful[src] && useful[dst])
            .map(|(src, a, dst)| (remap[src], a, remap[dst]))
            .collect();
        BuchiAutomaton::new(
            self.alphabet.clone(),
            kept,
            remap[self.initial],
            accepting,
            transitions,
        )
        .expect("trimmed automaton is valid")
    }

    fn shortest_cycle_word_exists(&self, q: usize) -> bool {
        self.shortest_cycle_word(q).is_some()
    }
}

/// An accepting run over a lasso word, as the states of a path into a cycle.
///
/// Position `i` of the run is `prefix[i]` for `i < prefix.len()` and
/// `cycle[(i - prefix.len()) % cycle.len()]` afterwards. The prefix length and
/// cycle length are aligned with the word: the cycle length is a multiple of
/// the word's period length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoRun {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl LassoRun {
    pub fn state_at(&self, pos: usize) -> usize {
        if pos < self.prefix.len() {
            self.prefix[pos]
        } else {
            self.cycle[(pos - self.prefix.len()) % self.cycle.len()]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"])
    }

    /// Two states over {a,b} accepting exactly the words with infinitely many a.
    fn inf_a() -> BuchiAutomaton {
        BuchiAutomaton::from_named(
            ab(),
            2,
            0,
            &[1],
            &[(0, "b", 0), (0, "a", 1), (1, "a", 1), (1, "b", 0)],
        )
    }

    #[test]
    fn letter_matrix_follows_definition() {
        // Two states, F = {1}, δ = {(0,a,1),(1,a,0)}: M_a = [[0,1],[⋆,0]].
        let aut = BuchiAutomaton::from_named(ab(), 2, 0, &[1], &[(0, "a", 1), (1, "a", 0)]);
        let m = aut.letter_matrix(0);
        assert_eq!(m.compact(), "01/*0");
        // No transitions on b at all.
        assert_eq!(aut.letter_matrix(1), TransitionMatrix::zero(2));
    }

    #[test]
    fn letter_matrix_star_only_from_accepting_sources() {
        let aut = inf_a();
        for a in 0..2 {
            let m = aut.letter_matrix(a);
            for q in 0..2 {
                for qq in 0..2 {
                    if m.get(q, qq) == Tri::Star {
                        assert!(aut.is_accepting(q));
                    }
                }
            }
        }
    }

    #[test]
    fn single_accepting_self_loop() {
        let al = Alphabet::new(["a"]);
        let aut = BuchiAutomaton::from_named(al.clone(), 1, 0, &[0], &[(0, "a", 0)]);
        assert_eq!(aut.letter_matrix(0).compact(), "*");
        assert!(aut.accepts_lasso(&LassoWord::new(vec![], vec![0])));
    }

    #[test]
    fn empty_accepting_set_rejects_everything() {
        let aut = BuchiAutomaton::from_named(ab(), 1, 0, &[], &[(0, "a", 0), (0, "b", 0)]);
        for w in [
            LassoWord::new(vec![], vec![0]),
            LassoWord::new(vec![1], vec![0, 1]),
        ] {
            assert!(!aut.accepts_lasso(&w));
        }
        assert_eq!(aut.emptiness_witness(), None);
    }

    #[test]
    fn inf_a_membership() {
        let aut = inf_a();
        let w1 = LassoWord::from_names(aut.alphabet(), &["b"], &["a", "b"]);
        let w2 = LassoWord::from_names(aut.alphabet(), &["a"], &["b"]);
        assert!(aut.accepts_lasso(&w1));
        assert!(!aut.accepts_lasso(&w2));
    }

    #[test]
    fn membership_invariant_under_unrolling() {
        let aut = inf_a();
        for (stem, period) in [
            (vec![], vec![0]),
            (vec![1], vec![0, 1]),
            (vec![0, 1], vec![1]),
            (vec![1, 1], vec![1, 0]),
        ] {
            let w = LassoWord::new(stem, period);
            let r1 = aut.accepts_lasso(&w);
            let mut s2 = w.stem().to_vec();
            s2.extend_from_slice(w.period());
            let unrolled_stem = LassoWord::new(s2, w.period().to_vec());
            let mut p2 = w.period().to_vec();
            p2.extend_from_slice(w.period());
            let unrolled_period = LassoWord::new(w.stem().to_vec(), p2);
            assert_eq!(r1, aut.accepts_lasso(&unrolled_stem));
            assert_eq!(r1, aut.accepts_lasso(&unrolled_period));
        }
    }

    #[test]
    fn accepting_run_is_a_real_run() {
        let aut = inf_a();
        let w = LassoWord::from_names(aut.alphabet(), &["b"], &["a", "b"]);
        let run = aut.find_accepting_run(&w).expect("accepted");
        assert_eq!(run.state_at(0), aut.initial());
        assert_eq!(run.cycle.len() % w.period().len(), 0);
        for i in 0..run.prefix.len() + 3 * run.cycle.len() {
            let q = run.state_at(i);
            let qq = run.state_at(i + 1);
            assert!(aut.has_transition(q, w.letter_at(i), qq), "step {i}");
        }
        // The cycle must contain an accepting state.
        assert!(run.cycle.iter().any(|&q| aut.is_accepting(q)));
    }

    #[test]
    fn emptiness_witness_self_checks() {
        let aut = inf_a();
        let w = aut.emptiness_witness().expect("nonempty");
        assert!(aut.accepts_lasso(&w));

        let al = Alphabet::new(["a"]);
        let loop_aut = BuchiAutomaton::from_named(al, 1, 0, &[0], &[(0, "a", 0)]);
        let w = loop_aut.emptiness_witness().expect("nonempty");
        assert!(loop_aut.accepts_lasso(&w));
    }

    #[test]
    fn trim_preserves_membership() {
        // A dead branch: state 2 is reachable but cannot reach the accepting loop.
        let aut = BuchiAutomaton::from_named(
            ab(),
            3,
            0,
            &[1],
            &[(0, "a", 1), (1, "a", 1), (0, "b", 2), (2, "b", 2)],
        );
        let trimmed = aut.trim();
        assert!(trimmed.state_count() < aut.state_count());
        for (stem, period) in [
            (vec![], vec![0]),
            (vec![0], vec![0]),
            (vec![1], vec![1]),
            (vec![0], vec![1]),
        ] {
            let w = LassoWord::new(stem, period);
            assert_eq!(aut.accepts_lasso(&w), trimmed.accepts_lasso(&w));
        }
    }

    #[test]
    fn word_image_is_homomorphism() {
        let aut = inf_a();
        assert_eq!(aut.word_image(&[]), TransitionMatrix::identity(2));
        assert_eq!(aut.word_image(&[0]), aut.letter_matrix(0));
        let u = [0, 1, 1];
        let v = [1, 0];
        let mut uv = u.to_vec();
        uv.extend_from_slice(&v);
        assert_eq!(
            aut.word_image(&uv),
            aut.word_image(&u).mat_mul(&aut.word_image(&v))
        );
    }
}
