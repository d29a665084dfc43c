//! Q-schemes: the states of the deterministic Rabin automaton for tree-shaped
//! Q-dags.
//!
//! A Q-scheme is a finite tree with uniquely Q-labelled leaves, uniquely
//! identified edges (identifiers drawn from `{0, …, 2|Q|}`), and an accepting
//! mark per edge. The root may have a single child; every other internal node
//! branches. A transition appends a tree-shaped letter, prunes branches that
//! die out, contracts unary chains (firing Refresh events), and assigns fresh
//! identifiers (Delete events record identifiers that vanished).
//!
//! Scheme equality ignores internal node labels: they are carried for
//! inspection only. Children are kept sorted by the minimal leaf label of
//! their subtree, which makes equal schemes structurally identical.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::matrix::TransitionMatrix;
use crate::tri::Tri;

#[derive(Clone)]
struct Node {
    label: usize,
    children: Vec<Edge>,
}

#[derive(Clone)]
struct Edge {
    id: Option<u32>,
    accepting: bool,
    child: Node,
}

/// Identifier events of one scheme transition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchemeStepEvents {
    pub deleted: BTreeSet<u32>,
    pub refreshed: BTreeSet<u32>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemeStepError {
    #[error("letter is not tree-shaped")]
    NotTreeShaped,
    #[error("letter dimension {got} does not match the scheme's state count {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    /// No leaf survived the letter: the run of the underlying Q-dag died.
    /// A dead scheme is not a Q-scheme, so the transition does not exist.
    #[error("every branch died out on this letter")]
    Dead,
}

/// A Q-scheme over states `0..state_count`.
#[derive(Clone)]
pub struct QScheme {
    state_count: usize,
    root: Node,
}

impl QScheme {
    /// The initial scheme: a root with a single leaf child, both labelled by
    /// the initial state, connected by a non-accepting edge with identifier 0.
    pub fn initial(state_count: usize, initial_state: usize) -> QScheme {
        assert!(initial_state < state_count);
        QScheme {
            state_count,
            root: Node {
                label: initial_state,
                children: vec![Edge {
                    id: Some(0),
                    accepting: false,
                    child: Node {
                        label: initial_state,
                        children: Vec::new(),
                    },
                }],
            },
        }
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    /// The identifier pool `{0, …, 2|Q|}` as an inclusive upper bound.
    pub fn max_identifier(&self) -> u32 {
        2 * self.state_count as u32
    }

    pub fn node_count(&self) -> usize {
        fn count(node: &Node) -> usize {
            1 + node.children.iter().map(|e| count(&e.child)).sum::<usize>()
        }
        count(&self.root)
    }

    /// Leaf labels in left-to-right order.
    pub fn leaf_labels(&self) -> Vec<usize> {
        fn walk(node: &Node, out: &mut Vec<usize>) {
            if node.children.is_empty() {
                out.push(node.label);
            } else {
                for e in &node.children {
                    walk(&e.child, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    fn edge_ids(&self) -> Vec<Option<u32>> {
        fn walk(node: &Node, out: &mut Vec<Option<u32>>) {
            for e in &node.children {
                out.push(e.id);
                walk(&e.child, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    /// Checks every Q-scheme invariant: at most `2|Q|` nodes, uniquely
    /// labelled leaves, pairwise distinct assigned identifiers within the
    /// pool, the root not a leaf, and all non-root internal nodes branching.
    pub fn invariants_ok(&self) -> bool {
        if self.root.children.is_empty() {
            return false;
        }
        if self.node_count() > 2 * self.state_count {
            return false;
        }
        let leaves = self.leaf_labels();
        let distinct: BTreeSet<usize> = leaves.iter().copied().collect();
        if distinct.len() != leaves.len() || leaves.iter().any(|&l| l >= self.state_count) {
            return false;
        }
        let ids = self.edge_ids();
        let assigned: Vec<u32> = ids.iter().filter_map(|&i| i).collect();
        if assigned.len() != ids.len() {
            return false; // an edge without an identifier
        }
        let unique: BTreeSet<u32> = assigned.iter().copied().collect();
        if unique.len() != assigned.len() || assigned.iter().any(|&i| i > self.max_identifier()) {
            return false;
        }
        fn branching_ok(node: &Node, is_root: bool) -> bool {
            if !is_root && !node.children.is_empty() && node.children.len() < 2 {
                return false;
            }
            node.children.iter().all(|e| branching_ok(&e.child, false))
        }
        branching_ok(&self.root, true)
    }

    /// One transition of the scheme automaton on a tree-shaped letter;
    /// returns the successor scheme and the Delete/Refresh events.
    pub fn step(&self, m: &TransitionMatrix) -> Result<(QScheme, SchemeStepEvents), SchemeStepError> {
        if m.dim() != self.state_count {
            return Err(SchemeStepError::DimensionMismatch {
                got: m.dim(),
                expected: self.state_count,
            });
        }
        if !m.is_tree_shaped() {
            return Err(SchemeStepError::NotTreeShaped);
        }

        let mut root = self.root.clone();
        let mut events = SchemeStepEvents::default();

        // Step 1: append the letter below every leaf.
        append_letter(&mut root, m);

        // Step 2: prune branches that do not reach the new frontier.
        if !prune(&mut root, false, &mut events.deleted) {
            return Err(SchemeStepError::Dead);
        }

        // Step 3: contract unary chains, firing refreshes.
        contract(&mut root, &mut events.refreshed, &mut events.deleted);

        // Canonical child order, then Step 4: fresh identifiers in tree order.
        canonicalize(&mut root);
        let mut used: BTreeSet<u32> = BTreeSet::new();
        collect_used(&root, &mut used);
        assign_fresh(&mut root, &mut used, self.max_identifier());

        let next = QScheme {
            state_count: self.state_count,
            root,
        };
        debug_assert!(next.invariants_ok(), "scheme invariants violated after step");
        Ok((next, events))
    }

    /// DOT rendering of the tree, for the CLI trace output.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph \"{name}\" {{\n"));
        out.push_str("  node [shape=circle];\n");
        fn walk(node: &Node, idx: &mut usize, out: &mut String) -> usize {
            let me = *idx;
            *idx += 1;
            let shape = if node.children.is_empty() {
                "doublecircle"
            } else {
                "circle"
            };
            out.push_str(&format!(
                "  n{me} [label=\"q{}\", shape={shape}];\n",
                node.label
            ));
            for e in &node.children {
                let child = walk(&e.child, idx, out);
                let style = if e.accepting { "solid" } else { "dashed" };
                let id = e
                    .id
                    .map(|i| i.to_string())
                    .unwrap_or_else(|| "?".to_owned());
                out.push_str(&format!(
                    "  n{me} -> n{child} [label=\"{id}\", style={style}];\n"
                ));
            }
            me
        }
        let mut idx = 0;
        walk(&self.root, &mut idx, &mut out);
        out.push_str("}\n");
        out
    }
}

fn append_letter(node: &mut Node, m: &TransitionMatrix) {
    if node.children.is_empty() {
        let q = node.label;
        for qq in 0..m.dim() {
            let entry = m.get(q, qq);
            if entry != Tri::Zero {
                node.children.push(Edge {
                    id: None,
                    accepting: entry == Tri::Star,
                    child: Node {
                        label: qq,
                        children: Vec::new(),
                    },
                });
            }
        }
    } else {
        for e in &mut node.children {
            append_letter(&mut e.child, m);
        }
    }
}

/// Keeps exactly the branches that reach the new frontier (leaves created in
/// step 1 carry `id: None` on their incoming edge). Records the assigned
/// identifiers of removed edges. Returns whether the node survives.
fn prune(node: &mut Node, reached_via_new_edge: bool, deleted: &mut BTreeSet<u32>) -> bool {
    if reached_via_new_edge {
        debug_assert!(node.children.is_empty());
        return true;
    }
    node.children.retain_mut(|e| {
        let keep = prune(&mut e.child, e.id.is_none(), deleted);
        if !keep {
            if let Some(id) = e.id {
                deleted.insert(id);
            }
        }
        keep
    });
    !node.children.is_empty()
}

/// Collapses every maximal unary chain into its first (closest-to-root) edge.
/// The kept edge becomes accepting when any merged edge was; its identifier is
/// refreshed when any LATER merged edge was accepting; merged-away assigned
/// identifiers are deleted.
fn contract(node: &mut Node, refreshed: &mut BTreeSet<u32>, deleted: &mut BTreeSet<u32>) {
    for e in &mut node.children {
        while e.child.children.len() == 1 {
            let inner = e.child.children.pop().expect("length checked");
            if inner.accepting {
                if let Some(id) = e.id {
                    refreshed.insert(id);
                }
            }
            if let Some(id) = inner.id {
                deleted.insert(id);
            }
            e.accepting |= inner.accepting;
            e.child = inner.child;
        }
        contract(&mut e.child, refreshed, deleted);
    }
}

fn min_leaf(node: &Node) -> usize {
    if node.children.is_empty() {
        node.label
    } else {
        node.children
            .iter()
            .map(|e| min_leaf(&e.child))
            .min()
            .expect("internal node has children")
    }
}

fn canonicalize(node: &mut Node) {
    for e in &mut node.children {
        canonicalize(&mut e.child);
    }
    node.children.sort_by_key(|e| min_leaf(&e.child));
}

fn collect_used(node: &Node, used: &mut BTreeSet<u32>) {
    for e in &node.children {
        if let Some(id) = e.id {
            used.insert(id);
        }
        collect_used(&e.child, used);
    }
}

fn assign_fresh(node: &mut Node, used: &mut BTreeSet<u32>, max_id: u32) {
    for e in &mut node.children {
        if e.id.is_none() {
            let id = (0..=max_id)
                .find(|i| !used.contains(i))
                .expect("identifier pool cannot be exhausted while invariants hold");
            used.insert(id);
            e.id = Some(id);
        }
        assign_fresh(&mut e.child, used, max_id);
    }
}

// Equality and hashing ignore internal node labels; leaves compare by label,
// edges by identifier, mark and subtree. Canonical child order makes this a
// sound structural comparison.

fn node_eq(a: &Node, b: &Node) -> bool {
    if a.children.len() != b.children.len() {
        return false;
    }
    if a.children.is_empty() {
        return a.label == b.label;
    }
    a.children.iter().zip(&b.children).all(|(x, y)| {
        x.id == y.id && x.accepting == y.accepting && node_eq(&x.child, &y.child)
    })
}

fn node_hash<H: Hasher>(node: &Node, state: &mut H) {
    if node.children.is_empty() {
        state.write_u8(0);
        state.write_usize(node.label);
        return;
    }
    state.write_u8(1);
    state.write_usize(node.children.len());
    for e in &node.children {
        e.id.hash(state);
        e.accepting.hash(state);
        node_hash(&e.child, state);
    }
}

impl PartialEq for QScheme {
    fn eq(&self, other: &Self) -> bool {
        self.state_count == other.state_count && node_eq(&self.root, &other.root)
    }
}

impl Eq for QScheme {}

impl Hash for QScheme {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.state_count.hash(state);
        node_hash(&self.root, state);
    }
}

impl fmt::Debug for QScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn walk(node: &Node, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "q{}", node.label)?;
            if !node.children.is_empty() {
                write!(f, "(")?;
                for (i, e) in node.children.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    match e.id {
                        Some(id) => write!(f, "-{}{}->", id, if e.accepting { "!" } else { "" })?,
                        None => write!(f, "-?->")?,
                    }
                    walk(&e.child, f)?;
                }
                write!(f, ")")?;
            }
            Ok(())
        }
        walk(&self.root, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::TransitionMatrix;
    use crate::tri::Tri::{One, Star, Zero};

    fn events(deleted: &[u32], refreshed: &[u32]) -> SchemeStepEvents {
        SchemeStepEvents {
            deleted: deleted.iter().copied().collect(),
            refreshed: refreshed.iter().copied().collect(),
        }
    }

    #[test]
    fn initial_scheme_shape() {
        let s = QScheme::initial(1, 0);
        assert!(s.invariants_ok());
        assert_eq!(s.node_count(), 2);
        assert_eq!(s.leaf_labels(), vec![0]);
        for q in 1..=4 {
            assert!(QScheme::initial(q, 0).node_count() <= 2 * q);
        }
    }

    #[test]
    fn star_loop_refreshes_id_zero_every_step() {
        let s = QScheme::initial(1, 0);
        let star = TransitionMatrix::from_rows(&[&[Star]]);
        let (s1, ev1) = s.step(&star).unwrap();
        assert_eq!(ev1, events(&[], &[0]));
        let (s2, ev2) = s1.step(&star).unwrap();
        assert_eq!(ev2, events(&[], &[0]));
        assert_eq!(s1, s2);
        assert!(s1.invariants_ok());
    }

    #[test]
    fn plain_loop_never_refreshes() {
        let s = QScheme::initial(1, 0);
        let one = TransitionMatrix::from_rows(&[&[One]]);
        let (s1, ev) = s.step(&one).unwrap();
        assert_eq!(ev, events(&[], &[]));
        // Unchanged up to edge marking: the non-accepting loop keeps the
        // scheme literally identical here.
        assert_eq!(s, s1);
    }

    #[test]
    fn dead_letter_kills_the_scheme() {
        let s = QScheme::initial(1, 0);
        let zero = TransitionMatrix::zero(1);
        assert_eq!(s.step(&zero).unwrap_err(), SchemeStepError::Dead);
    }

    #[test]
    fn non_tree_shaped_letters_are_rejected() {
        let s = QScheme::initial(2, 0);
        let m = TransitionMatrix::from_rows(&[&[One, Zero], &[One, Zero]]);
        assert_eq!(s.step(&m).unwrap_err(), SchemeStepError::NotTreeShaped);
    }

    /// The worked four-panel transition: a scheme with identifiers
    /// 2,3,9,6,5,7,1 reads a letter that kills the leaves below 9 and 5,
    /// contracts the chains above 6 and 7, and assigns 4,5,6,8.
    #[test]
    fn running_example_transition() {
        // States 0..7; leaves of the scheme: 1 (below id 9), 2 (id 6),
        // 3 (id 5), 4 (id 7), 5 (id 1).
        let leaf = |label: usize| Node {
            label,
            children: Vec::new(),
        };
        let edge = |id: u32, accepting: bool, child: Node| Edge {
            id: Some(id),
            accepting,
            child,
        };
        let node_a = Node {
            label: 1,
            children: vec![edge(9, false, leaf(1)), edge(6, true, leaf(2))],
        };
        let node_b = Node {
            label: 4,
            children: vec![edge(5, false, leaf(3)), edge(7, false, leaf(4)), edge(1, true, leaf(5))],
        };
        let scheme = QScheme {
            state_count: 7,
            root: Node {
                label: 0,
                children: vec![edge(2, true, node_a), edge(3, false, node_b)],
            },
        };
        assert!(scheme.invariants_ok());

        // Letter edges: 0→0 plain, 0→1 accepting, 2→2 plain, 2→3 accepting,
        // 4→4 accepting, 5→5 accepting, 5→6 plain. Rows 1 and 3 are empty, so
        // the leaves below identifiers 9 and 5 die out.
        let mut m = TransitionMatrix::zero(7);
        m.set(0, 0, One);
        m.set(0, 1, Star);
        m.set(2, 2, One);
        m.set(2, 3, Star);
        m.set(4, 4, Star);
        m.set(5, 5, Star);
        m.set(5, 6, One);
        assert!(m.is_tree_shaped());

        let (next, ev) = scheme.step(&m).unwrap();
        assert_eq!(ev, events(&[9, 5, 6], &[2, 7]));
        assert!(next.invariants_ok());

        // Fresh identifiers are the smallest unused: {1,2,3,7} stay, so the
        // four new edges get 0, 4, 5, 6.
        let ids: BTreeSet<u32> = next.edge_ids().into_iter().flatten().collect();
        assert_eq!(ids, [0, 1, 2, 3, 4, 5, 6, 7].into_iter().collect());
        assert_eq!(next.leaf_labels(), vec![2, 3, 4, 5, 6]);
        assert_eq!(next.node_count(), 8);
    }

    #[test]
    fn equality_ignores_internal_labels() {
        let mk = |internal: usize| {
            let leaf = |label: usize| Node {
                label,
                children: Vec::new(),
            };
            QScheme {
                state_count: 3,
                root: Node {
                    label: internal,
                    children: vec![
                        Edge {
                            id: Some(1),
                            accepting: false,
                            child: leaf(0),
                        },
                        Edge {
                            id: Some(2),
                            accepting: true,
                            child: leaf(2),
                        },
                    ],
                },
            }
        };
        assert_eq!(mk(0), mk(2));
        let mut h1 = std::collections::hash_map::DefaultHasher::new();
        let mut h2 = std::collections::hash_map::DefaultHasher::new();
        mk(0).hash(&mut h1);
        mk(2).hash(&mut h2);
        assert_eq!(h1.finish(), h2.finish());
    }
}
