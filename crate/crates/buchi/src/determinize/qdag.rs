//! Q-dag lassos and the direct accepting-path oracle.
//!
//! A Q-dag is an infinite word over `[Q]`: the letter at position `n` encodes
//! the edges between level `n` and level `n+1`, with `⋆` entries accepting.
//! On a lasso of letters the existence of an accepting path (infinitely many
//! accepting edges, starting at the root) reduces to a cycle search in the
//! finite product of states and positions. This oracle is independent of the
//! Q-scheme automaton and is used to cross-check it.

use std::collections::VecDeque;

use crate::matrix::TransitionMatrix;
use crate::tri::Tri;

/// A lasso-shaped Q-dag: stem letters then a repeating period.
#[derive(Clone, Debug)]
pub struct QDagLasso {
    pub stem: Vec<TransitionMatrix>,
    pub period: Vec<TransitionMatrix>,
}

impl QDagLasso {
    pub fn new(stem: Vec<TransitionMatrix>, period: Vec<TransitionMatrix>) -> QDagLasso {
        assert!(!period.is_empty());
        let dim = period[0].dim();
        assert!(stem.iter().chain(&period).all(|m| m.dim() == dim));
        QDagLasso { stem, period }
    }

    pub fn dim(&self) -> usize {
        self.period[0].dim()
    }

    pub fn letter_at(&self, pos: usize) -> &TransitionMatrix {
        if pos < self.stem.len() {
            &self.stem[pos]
        } else {
            &self.period[(pos - self.stem.len()) % self.period.len()]
        }
    }

    pub fn is_tree_shaped(&self) -> bool {
        self.stem
            .iter()
            .chain(&self.period)
            .all(TransitionMatrix::is_tree_shaped)
    }

    /// Whether the dag rooted at `(root, 0)` contains a path with infinitely
    /// many accepting edges: some accepting edge in the recurring zone lies on
    /// a cycle reachable from the root.
    pub fn has_accepting_path(&self, root: usize) -> bool {
        let dim = self.dim();
        let stem_len = self.stem.len();
        let width = stem_len + self.period.len();
        let next = |t: usize| if t + 1 < width { t + 1 } else { stem_len };
        let vertex = |q: usize, t: usize| q * width + t;

        let reach_from = |sources: &[usize]| -> Vec<bool> {
            let mut seen = vec![false; dim * width];
            let mut queue: VecDeque<usize> = VecDeque::new();
            for &s in sources {
                if !seen[s] {
                    seen[s] = true;
                    queue.push_back(s);
                }
            }
            while let Some(v) = queue.pop_front() {
                let (q, t) = (v / width, v % width);
                let m = self.letter_at(t);
                for qq in 0..dim {
                    if m.get(q, qq) != Tri::Zero {
                        let w = vertex(qq, next(t));
                        if !seen[w] {
                            seen[w] = true;
                            queue.push_back(w);
                        }
                    }
                }
            }
            seen
        };

        let from_root = reach_from(&[vertex(root, 0)]);
        for t in stem_len..width {
            let m = self.letter_at(t);
            for q in 0..dim {
                for qq in 0..dim {
                    if m.get(q, qq) != Tri::Star {
                        continue;
                    }
                    let u = vertex(q, t);
                    let v = vertex(qq, next(t));
                    if !from_root[u] {
                        continue;
                    }
                    if reach_from(&[v])[u] {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Reachable vertex sets per position, `0..=positions`, starting from the
    /// root level `{root}`.
    pub fn reachable_levels(&self, root: usize, positions: usize) -> Vec<Vec<usize>> {
        let dim = self.dim();
        let mut levels = Vec::with_capacity(positions + 1);
        let mut current = vec![false; dim];
        current[root] = true;
        levels.push(mask_to_vec(&current));
        for pos in 0..positions {
            let m = self.letter_at(pos);
            let mut next = vec![false; dim];
            for q in 0..dim {
                if current[q] {
                    for qq in 0..dim {
                        if m.get(q, qq) != Tri::Zero {
                            next[qq] = true;
                        }
                    }
                }
            }
            levels.push(mask_to_vec(&next));
            current = next;
        }
        levels
    }
}

fn mask_to_vec(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i)
        .collect()
}
