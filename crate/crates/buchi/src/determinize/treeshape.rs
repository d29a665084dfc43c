//! The tree-shaping step: turning an arbitrary Q-dag into a tree-shaped one
//! with the same reachable vertices, by keeping for every vertex the incoming
//! edge that lies on the lexicographically least path from the root.
//!
//! Path profiles are words over `{1,⋆} × Q²` compared lexicographically with
//! every `⋆`-triple before every `1`-triple, then by (source, target). Two
//! distinct reachable vertices of one level always have distinct optimal-path
//! profiles, so the ranking (vertices ordered by their optimal path) plus the
//! per-step selection below reproduces the order without storing any paths:
//!
//! - the selected incoming edge of a target minimises (source rank, then edge
//!   type with ⋆ before 1) — across distinct sources the earlier profile
//!   position dominates, so the rank decides;
//! - the next ranking orders targets by (selected source rank, selected edge
//!   type ⋆-first, target index) — the target index being the canonical
//!   completion of the paper's partially specified triple order.

use crate::matrix::TransitionMatrix;
use crate::tri::Tri;

/// One step of the ranking transducer: given the current ranking of reachable
/// vertices (most preferred first) and the next letter, returns the next
/// ranking and the tree-shaped output letter containing exactly the selected
/// edges. An empty ranking (dead dag) stays empty and outputs the zero letter.
pub fn rank_step(ranking: &[usize], m: &TransitionMatrix) -> (Vec<usize>, TransitionMatrix) {
    let dim = m.dim();
    let mut rank_of = vec![usize::MAX; dim];
    for (r, &q) in ranking.iter().enumerate() {
        rank_of[q] = r;
    }

    // (source rank, star-first edge type, target) per reachable target.
    let mut selected: Vec<(usize, u8, usize)> = Vec::new();
    let mut out = TransitionMatrix::zero(dim);
    for target in 0..dim {
        let best = ranking
            .iter()
            .copied()
            .filter(|&src| m.get(src, target) != Tri::Zero)
            .min_by_key(|&src| {
                let type_key = if m.get(src, target) == Tri::Star { 0u8 } else { 1 };
                (rank_of[src], type_key)
            });
        if let Some(src) = best {
            let entry = m.get(src, target);
            out.set(src, target, entry);
            let type_key = if entry == Tri::Star { 0u8 } else { 1 };
            selected.push((rank_of[src], type_key, target));
        }
    }
    selected.sort_unstable();
    let next_ranking = selected.into_iter().map(|(_, _, t)| t).collect();
    (next_ranking, out)
}
