//! Ramsey-based Büchi complementation.
//!
//! The complement automaton guesses a homogeneous decomposition of the input
//! word with prefix type `N` and loop type `M` for a rejecting pair `(N, M)`,
//! and verifies it with matrix products. Only states reachable from the
//! initial state are materialised, and candidate pairs are drawn from the
//! subsemigroup of `[Q]` generated by the letter matrices — the full `[Q]`
//! has `3^(|Q|²)` elements and is never enumerated.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::automata::BuchiAutomaton;
use crate::matrix::TransitionMatrix;
use crate::semigroup::generated_matrix_semigroup;
use crate::tri::Tri;
use crate::CapExceeded;

/// A state of the complement automaton: the fresh initial state, a prefix
/// tracker `(N, M, K)`, a loop tracker `(M, K)`, or a cut point `M`. The
/// `Mono` states are exactly the accepting ones.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ComplementState {
    Init,
    Triple(TransitionMatrix, TransitionMatrix, TransitionMatrix),
    Pair(TransitionMatrix, TransitionMatrix),
    Mono(TransitionMatrix),
}

impl fmt::Debug for ComplementState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplementState::Init => write!(f, "Init"),
            ComplementState::Triple(n, m, k) => {
                write!(f, "Triple({}, {}, {})", n.compact(), m.compact(), k.compact())
            }
            ComplementState::Pair(m, k) => write!(f, "Pair({}, {})", m.compact(), k.compact()),
            ComplementState::Mono(m) => write!(f, "Mono({})", m.compact()),
        }
    }
}

/// Whether `(n, m)` is a rejecting pair for the automaton: no state `q₁`
/// satisfies all of `n·m = n`, `m·m = m`, `n(q_I, q₁) ∈ {1, ⋆}` and
/// `m(q₁, q₁) = ⋆`. The quantifier ranges over all four conjuncts, so a pair
/// failing either matrix equation is vacuously rejecting.
pub fn is_rejecting_pair(aut: &BuchiAutomaton, n: &TransitionMatrix, m: &TransitionMatrix) -> bool {
    assert_eq!(n.dim(), aut.state_count());
    assert_eq!(m.dim(), aut.state_count());
    if &n.mat_mul(m) != n || &m.mat_mul(m) != m {
        return true;
    }
    let init = aut.initial();
    !(0..aut.state_count())
        .any(|q1| n.get(init, q1) != Tri::Zero && m.get(q1, q1) == Tri::Star)
}

/// The complement automaton together with the descriptor of each state, for
/// auditing and for the serialised `# state i = ...` comments.
pub struct Complement {
    pub automaton: BuchiAutomaton,
    pub states: Vec<ComplementState>,
}

/// Complements a Büchi automaton: the result accepts exactly the words the
/// input rejects. `cap` bounds the number of materialised states.
pub fn complement_buchi(aut: &BuchiAutomaton, cap: usize) -> Result<Complement, CapExceeded> {
    let letters: Vec<TransitionMatrix> = aut
        .alphabet()
        .letters()
        .map(|a| aut.letter_matrix(a))
        .collect();
    let semigroup = generated_matrix_semigroup(&letters);
    let rejecting: Vec<(TransitionMatrix, TransitionMatrix)> = semigroup
        .iter()
        .flat_map(|n| {
            semigroup
                .iter()
                .filter(|m| is_rejecting_pair(aut, n, m))
                .map(|m| (n.clone(), m.clone()))
        })
        .collect();

    let mut index: HashMap<ComplementState, usize> = HashMap::new();
    let mut states: Vec<ComplementState> = Vec::new();
    let mut transitions: Vec<(usize, usize, usize)> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();

    let mut intern =
        |s: ComplementState,
         states: &mut Vec<ComplementState>,
         queue: &mut VecDeque<usize>|
         -> Result<usize, CapExceeded> {
            if let Some(&i) = index.get(&s) {
                return Ok(i);
            }
            if states.len() >= cap {
                return Err(CapExceeded { cap });
            }
            let i = states.len();
            index.insert(s.clone(), i);
            states.push(s);
            queue.push_back(i);
            Ok(i)
        };

    let init = intern(ComplementState::Init, &mut states, &mut queue)?;
    debug_assert_eq!(init, 0);

    while let Some(src) = queue.pop_front() {
        for (a, m_a) in letters.iter().enumerate() {
            let state = states[src].clone();
            match state {
                ComplementState::Init => {
                    for (n, m) in &rejecting {
                        let dst = intern(
                            ComplementState::Triple(n.clone(), m.clone(), m_a.clone()),
                            &mut states,
                            &mut queue,
                        )?;
                        transitions.push((src, a, dst));
                    }
                }
                ComplementState::Triple(n, m, k) => {
                    let k2 = k.mat_mul(m_a);
                    if k2 == n {
                        let dst =
                            intern(ComplementState::Mono(m.clone()), &mut states, &mut queue)?;
                        transitions.push((src, a, dst));
                    }
                    let dst = intern(
                        ComplementState::Triple(n, m, k2),
                        &mut states,
                        &mut queue,
                    )?;
                    transitions.push((src, a, dst));
                }
                ComplementState::Mono(m) => {
                    if *m_a == m {
                        let dst =
                            intern(ComplementState::Mono(m.clone()), &mut states, &mut queue)?;
                        transitions.push((src, a, dst));
                    }
                    let dst = intern(
                        ComplementState::Pair(m, m_a.clone()),
                        &mut states,
                        &mut queue,
                    )?;
                    transitions.push((src, a, dst));
                }
                ComplementState::Pair(m, k) => {
                    let k2 = k.mat_mul(m_a);
                    if k2 == m {
                        let dst =
                            intern(ComplementState::Mono(m.clone()), &mut states, &mut queue)?;
                        transitions.push((src, a, dst));
                    }
                    let dst = intern(ComplementState::Pair(m, k2), &mut states, &mut queue)?;
                    transitions.push((src, a, dst));
                }
            }
        }
    }

    let accepting: Vec<usize> = states
        .iter()
        .enumerate()
        .filter(|(_, s)| matches!(s, ComplementState::Mono(_)))
        .map(|(i, _)| i)
        .collect();
    let automaton = BuchiAutomaton::new(
        aut.alphabet().clone(),
        states.len(),
        0,
        accepting,
        transitions,
    )
    .expect("complement construction produces a valid automaton");
    Ok(Complement { automaton, states })
}
