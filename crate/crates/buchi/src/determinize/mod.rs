//! Determinisation of Büchi automata to deterministic Rabin automata.
//!
//! The pipeline has three stages composed with [`RabinAutomaton::compose_transducer`]:
//!
//! 1. the subset transducer turns an input word into a Q-dag recording all
//!    runs (`Σ → [Q]`);
//! 2. the tree-shaping transducer keeps one optimal incoming edge per vertex
//!    (`[Q] → [Q]`, outputs tree-shaped);
//! 3. the Q-scheme automaton decides whether a tree-shaped Q-dag has an
//!    accepting path, with Rabin pairs indexed by edge identifiers:
//!    accept iff some identifier is deleted finitely but refreshed infinitely
//!    often.
//!
//! Matrix alphabets are materialised lazily: only letters that actually occur
//! as stage outputs exist, never the full `[Q]`.

mod qdag;
mod qscheme;
mod treeshape;

pub use qdag::QDagLasso;
pub use qscheme::{QScheme, SchemeStepError, SchemeStepEvents};
pub use treeshape::rank_step;

use std::collections::{HashMap, VecDeque};

use crate::automata::{Alphabet, BuchiAutomaton, LassoWord, RabinAcceptance, RabinAutomaton, RabinPair, Transducer};
use crate::matrix::TransitionMatrix;
use crate::CapExceeded;

/// An alphabet whose letters are transition matrices; names are the compact
/// matrix renderings, and the matrix of each letter index is kept alongside.
#[derive(Clone, Debug)]
pub struct MatrixLetters {
    alphabet: Alphabet,
    matrices: Vec<TransitionMatrix>,
}

impl MatrixLetters {
    /// Interns the distinct matrices in first-occurrence order.
    pub fn collect<'a>(matrices: impl IntoIterator<Item = &'a TransitionMatrix>) -> MatrixLetters {
        let mut seen: HashMap<TransitionMatrix, usize> = HashMap::new();
        let mut list: Vec<TransitionMatrix> = Vec::new();
        for m in matrices {
            if !seen.contains_key(m) {
                seen.insert(m.clone(), list.len());
                list.push(m.clone());
            }
        }
        assert!(!list.is_empty(), "matrix alphabet must be nonempty");
        MatrixLetters {
            alphabet: Alphabet::new(list.iter().map(TransitionMatrix::compact)),
            matrices: list,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn matrix(&self, letter: usize) -> &TransitionMatrix {
        &self.matrices[letter]
    }

    pub fn index_of(&self, m: &TransitionMatrix) -> Option<usize> {
        self.alphabet.index_of(&m.compact())
    }

    /// Reads a lasso over this alphabet back into matrix form.
    pub fn qdag_of_lasso(&self, word: &LassoWord) -> QDagLasso {
        QDagLasso::new(
            word.stem().iter().map(|&l| self.matrices[l].clone()).collect(),
            word.period().iter().map(|&l| self.matrices[l].clone()).collect(),
        )
    }

    /// Encodes a matrix lasso as a word over this alphabet; every letter must
    /// be present.
    pub fn lasso_of_qdag(&self, dag: &QDagLasso) -> LassoWord {
        let enc = |m: &TransitionMatrix| {
            self.index_of(m)
                .expect("matrix lasso letter missing from alphabet")
        };
        LassoWord::new(
            dag.stem.iter().map(enc).collect(),
            dag.period.iter().map(enc).collect(),
        )
    }
}

/// Interns matrices while a construction discovers them, preserving order.
struct MatrixInterner {
    seen: HashMap<TransitionMatrix, usize>,
    list: Vec<TransitionMatrix>,
}

impl MatrixInterner {
    fn new() -> MatrixInterner {
        MatrixInterner {
            seen: HashMap::new(),
            list: Vec::new(),
        }
    }

    fn intern(&mut self, m: &TransitionMatrix) -> usize {
        if let Some(&i) = self.seen.get(m) {
            return i;
        }
        let i = self.list.len();
        self.seen.insert(m.clone(), i);
        self.list.push(m.clone());
        i
    }

    fn freeze(self) -> MatrixLetters {
        MatrixLetters {
            alphabet: Alphabet::new(self.list.iter().map(TransitionMatrix::compact)),
            matrices: self.list,
        }
    }
}

/// The subset transducer `T₁ : Σ → [Q]`. Its state is the set of states
/// reachable over the consumed prefix (initially `{q_I}`); on a letter it
/// outputs the letter matrix restricted to rows in the current set and moves
/// to the set of successors. Returns the transducer and its output letters.
pub fn subset_transducer(
    aut: &BuchiAutomaton,
    cap: usize,
) -> Result<(Transducer, MatrixLetters), CapExceeded> {
    assert!(aut.state_count() <= 64, "subset construction uses u64 masks");
    let letter_matrices: Vec<TransitionMatrix> = aut
        .alphabet()
        .letters()
        .map(|a| aut.letter_matrix(a))
        .collect();

    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut masks: Vec<u64> = Vec::new();
    let mut rows: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut outputs = MatrixInterner::new();

    let start = 1u64 << aut.initial();
    index.insert(start, 0);
    masks.push(start);
    let mut queue = VecDeque::from([0usize]);
    while let Some(state) = queue.pop_front() {
        let mask = masks[state];
        let mut row = Vec::with_capacity(aut.alphabet().len());
        for a in aut.alphabet().letters() {
            let mut out = TransitionMatrix::zero(aut.state_count());
            let mut next_mask = 0u64;
            for q in 0..aut.state_count() {
                if mask >> q & 1 == 0 {
                    continue;
                }
                for qq in 0..aut.state_count() {
                    let entry = letter_matrices[a].get(q, qq);
                    if entry != crate::tri::Tri::Zero {
                        out.set(q, qq, entry);
                        next_mask |= 1 << qq;
                    }
                }
            }
            let out_letter = outputs.intern(&out);
            let next_state = match index.get(&next_mask) {
                Some(&i) => i,
                None => {
                    if masks.len() >= cap {
                        return Err(CapExceeded { cap });
                    }
                    let i = masks.len();
                    index.insert(next_mask, i);
                    masks.push(next_mask);
                    queue.push_back(i);
                    i
                }
            };
            row.push((out_letter, next_state));
        }
        rows.push(row);
    }

    let letters = outputs.freeze();
    let step = rows.into_iter().flatten().collect();
    let t = Transducer::new(
        aut.alphabet().clone(),
        letters.alphabet().clone(),
        masks.len(),
        0,
        step,
    );
    Ok((t, letters))
}

/// The tree-shaping transducer `T₂ : [Q] → [Q]` over the given input letters,
/// for Q-dags rooted at `root`. Its state is the ranking of the currently
/// reachable vertices by their optimal paths (see [`rank_step`]); outputs are
/// tree-shaped and preserve the reachable vertices of every level.
pub fn tree_shaping_transducer(
    state_count: usize,
    root: usize,
    input: &MatrixLetters,
    cap: usize,
) -> Result<(Transducer, MatrixLetters), CapExceeded> {
    assert!(root < state_count);
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut rankings: Vec<Vec<usize>> = Vec::new();
    let mut rows: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut outputs = MatrixInterner::new();

    let start = vec![root];
    index.insert(start.clone(), 0);
    rankings.push(start);
    let mut queue = VecDeque::from([0usize]);
    while let Some(state) = queue.pop_front() {
        let ranking = rankings[state].clone();
        let mut row = Vec::with_capacity(input.len());
        for a in 0..input.len() {
            let (next_ranking, out) = rank_step(&ranking, input.matrix(a));
            let out_letter = outputs.intern(&out);
            let next_state = match index.get(&next_ranking) {
                Some(&i) => i,
                None => {
                    if rankings.len() >= cap {
                        return Err(CapExceeded { cap });
                    }
                    let i = rankings.len();
                    index.insert(next_ranking.clone(), i);
                    rankings.push(next_ranking);
                    queue.push_back(i);
                    i
                }
            };
            row.push((out_letter, next_state));
        }
        rows.push(row);
    }

    let letters = outputs.freeze();
    let step = rows.into_iter().flatten().collect();
    let t = Transducer::new(
        input.alphabet().clone(),
        letters.alphabet().clone(),
        rankings.len(),
        0,
        step,
    );
    Ok((t, letters))
}

/// The deterministic Rabin automaton on Q-schemes over the given letters,
/// with transition-based pairs indexed by edge identifiers: `E_i` holds the
/// transitions deleting identifier `i` and `F_i` those refreshing it, so a
/// run accepts iff some identifier is deleted finitely but refreshed
/// infinitely often. Letters that are not tree-shaped, and letters on which
/// the whole scheme dies, have no transition (the run rejects).
///
/// Returns the automaton together with the scheme behind each state.
pub fn qscheme_rabin_automaton(
    state_count: usize,
    initial_state: usize,
    letters: &MatrixLetters,
    cap: usize,
) -> Result<(RabinAutomaton, Vec<QScheme>), CapExceeded> {
    let mut index: HashMap<QScheme, usize> = HashMap::new();
    let mut schemes: Vec<QScheme> = Vec::new();
    let mut transitions: Vec<(usize, usize, usize)> = Vec::new();
    let max_id = 2 * state_count as u32;
    let mut pairs: Vec<RabinPair> = (0..=max_id).map(|_| RabinPair::default()).collect();

    let start = QScheme::initial(state_count, initial_state);
    index.insert(start.clone(), 0);
    schemes.push(start);
    let mut queue = VecDeque::from([0usize]);
    while let Some(state) = queue.pop_front() {
        for a in 0..letters.len() {
            let stepped = schemes[state].step(letters.matrix(a));
            let (next, events) = match stepped {
                Ok(ok) => ok,
                Err(SchemeStepError::Dead) | Err(SchemeStepError::NotTreeShaped) => continue,
                Err(e @ SchemeStepError::DimensionMismatch { .. }) => {
                    panic!("letter alphabet inconsistent with scheme: {e}")
                }
            };
            let dst = match index.get(&next) {
                Some(&i) => i,
                None => {
                    if schemes.len() >= cap {
                        return Err(CapExceeded { cap });
                    }
                    let i = schemes.len();
                    index.insert(next.clone(), i);
                    schemes.push(next);
                    queue.push_back(i);
                    i
                }
            };
            let tid = state * letters.len() + a;
            transitions.push((state, a, dst));
            for &id in &events.deleted {
                pairs[id as usize].fin.insert(tid);
            }
            for &id in &events.refreshed {
                pairs[id as usize].inf.insert(tid);
            }
        }
    }

    let automaton = RabinAutomaton::new(
        letters.alphabet().clone(),
        schemes.len(),
        0,
        transitions,
        RabinAcceptance::Transition(pairs),
    )
    .expect("scheme automaton construction is valid");
    Ok((automaton, schemes))
}

/// Full determinisation: an input-deterministic Rabin automaton over the same
/// alphabet accepting exactly the lassos the Büchi automaton accepts.
pub fn determinize(aut: &BuchiAutomaton, cap: usize) -> Result<RabinAutomaton, CapExceeded> {
    let (t1, gamma1) = subset_transducer(aut, cap)?;
    let (t2, gamma2) = tree_shaping_transducer(aut.state_count(), aut.initial(), &gamma1, cap)?;
    let (scheme_aut, _) = qscheme_rabin_automaton(aut.state_count(), aut.initial(), &gamma2, cap)?;
    Ok(scheme_aut.compose_transducer(&t2).compose_transducer(&t1))
}
