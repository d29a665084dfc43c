use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automata::{Alphabet, LassoWord, Transducer, ValidationError};

/// A Rabin pair `(E, F)`: a run is accepted by the pair when everything in
/// `fin` (the paper's `E_i`) occurs finitely often and something in `inf`
/// (`F_i`) occurs infinitely often.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RabinPair {
    pub fin: BTreeSet<usize>,
    pub inf: BTreeSet<usize>,
}

/// What the pair sets range over: states of the run, or transition events.
/// A transition is identified by `state * |Σ| + letter`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RabinAcceptance {
    State(Vec<RabinPair>),
    Transition(Vec<RabinPair>),
}

impl RabinAcceptance {
    pub fn pairs(&self) -> &[RabinPair] {
        match self {
            RabinAcceptance::State(p) | RabinAcceptance::Transition(p) => p,
        }
    }

    pub fn is_state_based(&self) -> bool {
        matches!(self, RabinAcceptance::State(_))
    }
}

/// A deterministic Rabin automaton. The transition map may be partial; a run
/// that falls off the map rejects.
#[derive(Clone, Debug)]
pub struct RabinAutomaton {
    alphabet: Alphabet,
    state_count: usize,
    initial: usize,
    // delta[q * |Σ| + a] = successor
    delta: Vec<Option<usize>>,
    acceptance: RabinAcceptance,
}

impl RabinAutomaton {
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        initial: usize,
        transitions: impl IntoIterator<Item = (usize, usize, usize)>,
        acceptance: RabinAcceptance,
    ) -> Result<RabinAutomaton, ValidationError> {
        if state_count == 0 {
            return Err(ValidationError::NoStates);
        }
        if initial >= state_count {
            return Err(ValidationError::BadInitial(initial));
        }
        let mut delta = vec![None; state_count * alphabet.len()];
        for (src, letter, dst) in transitions {
            if src >= state_count || letter >= alphabet.len() || dst >= state_count {
                return Err(ValidationError::BadTransition(src, letter, dst));
            }
            let slot = &mut delta[src * alphabet.len() + letter];
            if slot.is_some() && *slot != Some(dst) {
                return Err(ValidationError::BadTransition(src, letter, dst));
            }
            *slot = Some(dst);
        }
        let bound = match &acceptance {
            RabinAcceptance::State(_) => state_count,
            RabinAcceptance::Transition(_) => state_count * alphabet.len(),
        };
        for pair in acceptance.pairs() {
            if let Some(&v) = pair.fin.iter().chain(&pair.inf).find(|&&v| v >= bound) {
                return Err(ValidationError::BadAccepting(v));
            }
        }
        Ok(RabinAutomaton {
            alphabet,
            state_count,
            initial,
            delta,
            acceptance,
        })
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

    pub fn acceptance(&self) -> &RabinAcceptance {
        &self.acceptance
    }

    pub fn step(&self, state: usize, letter: usize) -> Option<usize> {
        self.delta[state * self.alphabet.len() + letter]
    }

    pub fn transition_id(&self, state: usize, letter: usize) -> usize {
        state * self.alphabet.len() + letter
    }

    /// Transitions in (src, letter, dst) order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.delta.iter().enumerate().filter_map(|(id, dst)| {
            dst.map(|d| (id / self.alphabet.len(), id % self.alphabet.len(), d))
        })
    }

    /// Runs the unique deterministic run over `u·v^ω` until the pair
    /// (state, period position) repeats, collects the set of states and
    /// transition events inside the detected loop, and evaluates the pairs.
    /// Falling off a partial map rejects.
    pub fn accepts_lasso(&self, word: &LassoWord) -> bool {
        let mut state = self.initial;
        for &letter in word.stem() {
            match self.step(state, letter) {
                Some(next) => state = next,
                None => return false,
            }
        }
        // history[j] = (state entering step j, transition id taken at step j)
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut history: Vec<(usize, usize)> = Vec::new();
        let period = word.period();
        loop {
            let phase = history.len() % period.len();
            if let Some(&start) = seen.get(&(state, phase)) {
                let loop_states: BTreeSet<usize> =
                    history[start..].iter().map(|&(q, _)| q).collect();
                let loop_transitions: BTreeSet<usize> =
                    history[start..].iter().map(|&(_, t)| t).collect();
                let inf = match &self.acceptance {
                    RabinAcceptance::State(_) => &loop_states,
                    RabinAcceptance::Transition(_) => &loop_transitions,
                };
                return self
                    .acceptance
                    .pairs()
                    .iter()
                    .any(|p| p.fin.is_disjoint(inf) && !p.inf.is_disjoint(inf));
            }
            seen.insert((state, phase), history.len());
            let letter = period[phase];
            match self.step(state, letter) {
                Some(next) => {
                    history.push((state, self.transition_id(state, letter)));
                    state = next;
                }
                None => return false,
            }
        }
    }

    /// Converts transition-based acceptance to state-based by remembering the
    /// last transition taken: states become (state, last transition), pairs
    /// lift through the transition's unique target. State-based automata are
    /// returned unchanged.
    pub fn to_state_based(&self) -> RabinAutomaton {
        let pairs = match &self.acceptance {
            RabinAcceptance::State(_) => return self.clone(),
            RabinAcceptance::Transition(pairs) => pairs,
        };

        // Reachable (state, Option<tid>) pairs, dense-indexed in BFS order.
        let mut index: HashMap<(usize, Option<usize>), usize> = HashMap::new();
        let mut order: Vec<(usize, Option<usize>)> = Vec::new();
        let mut transitions = Vec::new();
        let start = (self.initial, None);
        index.insert(start, 0);
        order.push(start);
        let mut queue = VecDeque::from([start]);
        while let Some(node @ (q, _)) = queue.pop_front() {
            let src = index[&node];
            for a in self.alphabet.letters() {
                if let Some(qq) = self.step(q, a) {
                    let tid = self.transition_id(q, a);
                    let next = (qq, Some(tid));
                    let dst = *index.entry(next).or_insert_with(|| {
                        order.push(next);
                        queue.push_back(next);
                        order.len() - 1
                    });
                    transitions.push((src, a, dst));
                }
            }
        }

        let lift = |set: &BTreeSet<usize>| -> BTreeSet<usize> {
            order
                .iter()
                .enumerate()
                .filter(|(_, (_, tid))| tid.map_or(false, |t| set.contains(&t)))
                .map(|(i, _)| i)
                .collect()
        };
        let lifted = pairs
            .iter()
            .map(|p| RabinPair {
                fin: lift(&p.fin),
                inf: lift(&p.inf),
            })
            .collect();

        RabinAutomaton::new(
            self.alphabet.clone(),
            order.len(),
            0,
            transitions,
            RabinAcceptance::State(lifted),
        )
        .expect("state-based conversion is valid")
    }

    /// Product with a transducer `T : Σ → Γ` (this automaton's alphabet being
    /// `Γ`): the result accepts `α` iff this automaton accepts `T(α)`. The
    /// acceptance condition is lifted from the first coordinate.
    pub fn compose_transducer(&self, t: &Transducer) -> RabinAutomaton {
        assert!(
            self.alphabet.same_as(t.output_alphabet()),
            "composition needs the automaton alphabet to equal the transducer output alphabet"
        );
        let sigma = t.input_alphabet().clone();

        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut transitions: Vec<(usize, usize, usize)> = Vec::new();
        // For transition-based lifting: the automaton tid behind each composed tid.
        let mut tid_origin: HashMap<usize, usize> = HashMap::new();

        let start = (self.initial, t.initial());
        index.insert(start, 0);
        order.push(start);
        let mut queue = VecDeque::from([start]);
        while let Some(node @ (qa, qt)) = queue.pop_front() {
            let src = index[&node];
            for a in sigma.letters() {
                let (out, qt2) = t.step(qt, a);
                if let Some(qa2) = self.step(qa, out) {
                    let next = (qa2, qt2);
                    let dst = *index.entry(next).or_insert_with(|| {
                        order.push(next);
                        queue.push_back(next);
                        order.len() - 1
                    });
                    transitions.push((src, a, dst));
                    tid_origin.insert(src * sigma.len() + a, self.transition_id(qa, out));
                }
            }
        }

        let acceptance = match &self.acceptance {
            RabinAcceptance::State(pairs) => {
                let lift = |set: &BTreeSet<usize>| {
                    order
                        .iter()
                        .enumerate()
                        .filter(|(_, (qa, _))| set.contains(qa))
                        .map(|(i, _)| i)
                        .collect()
                };
                RabinAcceptance::State(
                    pairs
                        .iter()
                        .map(|p| RabinPair {
                            fin: lift(&p.fin),
                            inf: lift(&p.inf),
                        })
                        .collect(),
                )
            }
            RabinAcceptance::Transition(pairs) => {
                let lift = |set: &BTreeSet<usize>| {
                    tid_origin
                        .iter()
                        .filter(|(_, origin)| set.contains(origin))
                        .map(|(&composed, _)| composed)
                        .collect()
                };
                RabinAcceptance::Transition(
                    pairs
                        .iter()
                        .map(|p| RabinPair {
                            fin: lift(&p.fin),
                            inf: lift(&p.inf),
                        })
                        .collect(),
                )
            }
        };

        RabinAutomaton::new(sigma, order.len().max(1), 0, transitions, acceptance)
            .expect("composed automaton is valid")
    }
}
