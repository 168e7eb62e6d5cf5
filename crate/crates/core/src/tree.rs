//! The clause tree: a binary trie whose levels are labeled by variables in
//! insertion order.
//!
//! Every node except the root has two pointers. The left pointer of a node
//! labeled `x` stands for the literal `¬x` and the right pointer for `x`, so
//! the labels along a root-to-pointer path spell out a clause. A pointer is
//! either `Open` (a child may still be attached), `Null` (closed for good),
//! or a `Child`.
//!
//! All operations are instrumented through [`Counters`].

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::TreeError;
use crate::formula::{Clause, Literal, Variable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NodeId(u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointerState {
    Open,
    Null,
    Child(NodeId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Negative literal.
    Left,
    /// Positive literal.
    Right,
}

#[derive(Clone, Debug)]
struct TreeNode {
    label: Variable,
    left: PointerState,
    right: PointerState,
}

impl TreeNode {
    fn pointer(&self, side: Side) -> PointerState {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }

    fn pointer_mut(&mut self, side: Side) -> &mut PointerState {
        match side {
            Side::Left => &mut self.left,
            Side::Right => &mut self.right,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Location {
    Root,
    Node(NodeId, Side),
}

/// Per-clause sample taken by the solver driver.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClauseSnapshot {
    /// 1-based position of the clause in the formula.
    pub clause_index: usize,
    pub peak_nodes_incl_root: u64,
    pub current_nodes_incl_root: u64,
    pub visits_delta: u64,
}

/// Instrumentation record for one tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Counters {
    pub nodes_created: u64,
    pub nodes_deleted: u64,
    pub peak_nodes_incl_root: u64,
    pub current_nodes_incl_root: u64,
    pub prune_pointer_visits: u64,
    pub per_clause_snapshots: Vec<ClauseSnapshot>,
    visits_at_last_snapshot: u64,
}

impl Default for Counters {
    fn default() -> Counters {
        Counters {
            nodes_created: 0,
            nodes_deleted: 0,
            peak_nodes_incl_root: 1,
            current_nodes_incl_root: 1,
            prune_pointer_visits: 0,
            per_clause_snapshots: Vec::new(),
            visits_at_last_snapshot: 0,
        }
    }
}

impl Counters {
    pub fn current_nodes_excl_root(&self) -> u64 {
        self.current_nodes_incl_root - 1
    }

    pub fn peak_nodes_excl_root(&self) -> u64 {
        self.peak_nodes_incl_root - 1
    }

    pub fn record_snapshot(&mut self, clause_index: usize) {
        self.per_clause_snapshots.push(ClauseSnapshot {
            clause_index,
            peak_nodes_incl_root: self.peak_nodes_incl_root,
            current_nodes_incl_root: self.current_nodes_incl_root,
            visits_delta: self.prune_pointer_visits - self.visits_at_last_snapshot,
        });
        self.visits_at_last_snapshot = self.prune_pointer_visits;
    }

    fn sample_peak(&mut self) {
        self.peak_nodes_incl_root = self.peak_nodes_incl_root.max(self.current_nodes_incl_root);
    }

    /// Flat `key=value` lines, one per counter, then one line per snapshot.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "nodes_created={}", self.nodes_created);
        let _ = writeln!(out, "nodes_deleted={}", self.nodes_deleted);
        let _ = writeln!(out, "peak_nodes_incl_root={}", self.peak_nodes_incl_root);
        let _ = writeln!(out, "peak_nodes_excl_root={}", self.peak_nodes_excl_root());
        let _ = writeln!(out, "current_nodes_incl_root={}", self.current_nodes_incl_root);
        let _ = writeln!(out, "current_nodes_excl_root={}", self.current_nodes_excl_root());
        let _ = writeln!(out, "prune_pointer_visits={}", self.prune_pointer_visits);
        for (i, s) in self.per_clause_snapshots.iter().enumerate() {
            let _ = writeln!(
                out,
                "snapshot.{i}=clause:{} peak:{} current:{} visits_delta:{}",
                s.clause_index, s.peak_nodes_incl_root, s.current_nodes_incl_root, s.visits_delta
            );
        }
        out
    }
}

/// Binary trie of Algorithm-1 style clause search.
#[derive(Clone, Debug)]
pub struct ClauseTree {
    nodes: Vec<TreeNode>,
    free: Vec<NodeId>,
    root: PointerState,
    inserted: Vec<Variable>,
    inserted_set: HashSet<Variable>,
    open: u64,
    counters: Counters,
}

impl Default for ClauseTree {
    fn default() -> ClauseTree {
        ClauseTree::new()
    }
}

impl ClauseTree {
    /// The empty tree: a root whose single pointer is open.
    pub fn new() -> ClauseTree {
        ClauseTree {
            nodes: Vec::new(),
            free: Vec::new(),
            root: PointerState::Open,
            inserted: Vec::new(),
            inserted_set: HashSet::new(),
            open: 1,
            counters: Counters::default(),
        }
    }

    pub fn counters(&self) -> &Counters {
        &self.counters
    }

    pub fn counters_mut(&mut self) -> &mut Counters {
        &mut self.counters
    }

    pub fn inserted(&self) -> &[Variable] {
        &self.inserted
    }

    pub fn contains_variable(&self, v: Variable) -> bool {
        self.inserted_set.contains(&v)
    }

    pub fn open_pointer_count(&self) -> u64 {
        self.open
    }

    pub fn node_count_incl_root(&self) -> u64 {
        self.counters.current_nodes_incl_root
    }

    pub fn node_count_excl_root(&self) -> u64 {
        self.counters.current_nodes_excl_root()
    }

    /// Root pointer plus two pointers per non-root node.
    pub fn pointer_count(&self) -> u64 {
        1 + 2 * self.node_count_excl_root()
    }

    pub fn root_pointer(&self) -> PointerState {
        self.root
    }

    fn node(&self, id: NodeId) -> &TreeNode {
        &self.nodes[id.0 as usize]
    }

    pub fn label(&self, id: NodeId) -> Variable {
        self.node(id).label
    }

    pub fn pointer(&self, id: NodeId, side: Side) -> PointerState {
        self.node(id).pointer(side)
    }

    fn get(&self, loc: Location) -> PointerState {
        match loc {
            Location::Root => self.root,
            Location::Node(id, side) => self.node(id).pointer(side),
        }
    }

    fn get_mut(&mut self, loc: Location) -> &mut PointerState {
        match loc {
            Location::Root => &mut self.root,
            Location::Node(id, side) => self.nodes[id.0 as usize].pointer_mut(side),
        }
    }

    fn literal_at(&self, loc: Location) -> Option<Literal> {
        match loc {
            Location::Root => None,
            Location::Node(id, side) => Some(Literal::new(self.label(id), side == Side::Right)),
        }
    }

    fn alloc(&mut self, label: Variable) -> NodeId {
        let node = TreeNode { label, left: PointerState::Open, right: PointerState::Open };
        match self.free.pop() {
            Some(id) => {
                self.nodes[id.0 as usize] = node;
                id
            }
            None => {
                let id = NodeId(u32::try_from(self.nodes.len()).expect("node arena exceeds u32"));
                self.nodes.push(node);
                id
            }
        }
    }

    /// Locations of all open pointers, in depth-first left-to-right order.
    fn open_locations(&self) -> Vec<Location> {
        let mut out = Vec::new();
        let mut stack = vec![Location::Root];
        while let Some(loc) = stack.pop() {
            match self.get(loc) {
                PointerState::Open => out.push(loc),
                PointerState::Null => {}
                PointerState::Child(id) => {
                    stack.push(Location::Node(id, Side::Right));
                    stack.push(Location::Node(id, Side::Left));
                }
            }
        }
        out
    }

    /// Hangs a fresh node labeled `v`, with both pointers open, from every
    /// open pointer. Returns the number of nodes created.
    pub fn insert_variable(&mut self, v: Variable) -> Result<u64, TreeError> {
        if self.inserted_set.contains(&v) {
            return Err(TreeError::AlreadyInserted(v));
        }
        if self.open == 0 {
            return Err(TreeError::NoOpenPointers);
        }
        let frontier = self.open_locations();
        debug_assert_eq!(frontier.len() as u64, self.open);
        for loc in &frontier {
            let id = self.alloc(v);
            *self.get_mut(*loc) = PointerState::Child(id);
        }
        let created = frontier.len() as u64;
        self.inserted.push(v);
        self.inserted_set.insert(v);
        self.open = 2 * created;
        self.counters.nodes_created += created;
        self.counters.current_nodes_incl_root += created;
        self.counters.sample_peak();
        Ok(created)
    }

    /// Closes every pointer whose path clause is a superset of `clause`.
    ///
    /// Traversal is depth first from the root pointer, left before right.
    /// Every reachable pointer is visited once and counted, including `Null`
    /// ones; a matching pointer is set to `Null` and the subtree below it is
    /// deleted without being visited. Returns the number of pointers visited.
    pub fn prune(&mut self, clause: &Clause) -> Result<u64, TreeError> {
        if clause.is_null() || clause.is_tautology() {
            return Err(TreeError::DegenerateClause);
        }
        for v in clause.variables() {
            if !self.inserted_set.contains(&v) {
                return Err(TreeError::NotInserted(v));
            }
        }
        let need = clause.len();
        let mut visits = 0u64;
        // (pointer, number of clause literals on the path above it)
        let mut stack = vec![(Location::Root, 0usize)];
        while let Some((loc, above)) = stack.pop() {
            visits += 1;
            let matched = above + usize::from(self.literal_at(loc).is_some_and(|l| clause.contains(l)));
            let state = self.get(loc);
            if matched == need {
                match state {
                    PointerState::Null => {}
                    PointerState::Open => self.open -= 1,
                    PointerState::Child(id) => self.delete_subtree(id),
                }
                *self.get_mut(loc) = PointerState::Null;
                continue;
            }
            if let PointerState::Child(id) = state {
                stack.push((Location::Node(id, Side::Right), matched));
                stack.push((Location::Node(id, Side::Left), matched));
            }
        }
        self.counters.prune_pointer_visits += visits;
        self.counters.sample_peak();
        Ok(visits)
    }

    fn delete_subtree(&mut self, top: NodeId) {
        let mut stack = vec![top];
        let mut deleted = 0u64;
        while let Some(id) = stack.pop() {
            let node = self.node(id).clone();
            for p in [node.left, node.right] {
                match p {
                    PointerState::Open => self.open -= 1,
                    PointerState::Null => {}
                    PointerState::Child(c) => stack.push(c),
                }
            }
            self.free.push(id);
            deleted += 1;
        }
        self.counters.nodes_deleted += deleted;
        self.counters.current_nodes_incl_root -= deleted;
    }

    /// Clauses spelled by every root-to-open-pointer path, sorted
    /// canonically.
    pub fn open_paths(&self) -> Vec<Clause> {
        let mut out = Vec::new();
        self.walk_open_paths(|path| out.push(Clause::from_literals(path.iter().copied())));
        out.sort();
        out
    }

    /// The canonically smallest open path clause, if any.
    pub fn first_open_path(&self) -> Option<Clause> {
        let mut best: Option<Clause> = None;
        self.walk_open_paths(|path| {
            let c = Clause::from_literals(path.iter().copied());
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        });
        best
    }

    fn walk_open_paths(&self, mut visit: impl FnMut(&[Literal])) {
        let mut path: Vec<Literal> = Vec::new();
        // (pointer, depth of the path above it)
        let mut stack = vec![(Location::Root, 0usize)];
        while let Some((loc, depth)) = stack.pop() {
            path.truncate(depth);
            if let Some(l) = self.literal_at(loc) {
                path.push(l);
            }
            match self.get(loc) {
                PointerState::Open => visit(&path),
                PointerState::Null => {}
                PointerState::Child(id) => {
                    let d = path.len();
                    stack.push((Location::Node(id, Side::Right), d));
                    stack.push((Location::Node(id, Side::Left), d));
                }
            }
        }
    }

    /// Graphviz rendering. Nodes are numbered in depth-first preorder so the
    /// output depends only on tree shape and labels.
    pub fn export_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph clause_tree {\n");
        out.push_str("  node [shape=circle];\n");
        out.push_str("  root [label=\"root\", shape=doublecircle];\n");
        let mut next_node = 0usize;
        let mut next_marker = 0usize;
        // (pointer, parent dot id)
        let mut stack = vec![(Location::Root, "root".to_string())];
        while let Some((loc, parent)) = stack.pop() {
            let edge = match self.literal_at(loc) {
                Some(l) => format!(" [label=\"{l}\"]"),
                None => String::new(),
            };
            match self.get(loc) {
                PointerState::Child(id) => {
                    let name = format!("n{next_node}");
                    next_node += 1;
                    let _ = writeln!(out, "  {name} [label=\"{}\"];", self.label(id));
                    let _ = writeln!(out, "  {parent} -> {name}{edge};");
                    stack.push((Location::Node(id, Side::Right), name.clone()));
                    stack.push((Location::Node(id, Side::Left), name));
                }
                state => {
                    let name = format!("p{next_marker}");
                    next_marker += 1;
                    let (label, shape) = match state {
                        PointerState::Open => ("open", "none"),
                        _ => ("null", "box"),
                    };
                    let _ = writeln!(out, "  {name} [label=\"{label}\", shape={shape}];");
                    let _ = writeln!(out, "  {parent} -> {name}{edge};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::tests::{nx, var, x};

    fn fresh(n: u32) -> ClauseTree {
        let mut t = ClauseTree::new();
        for i in 1..=n {
            t.insert_variable(var(i)).unwrap();
        }
        t
    }

    #[test]
    fn new_tree_has_root_only() {
        let t = ClauseTree::new();
        assert_eq!(t.node_count_incl_root(), 1);
        assert_eq!(t.open_pointer_count(), 1);
        assert_eq!(t.counters().nodes_created, 0);
        assert_eq!(t.counters().peak_nodes_incl_root, 1);
        assert_eq!(t.open_paths(), vec![Clause::null()]);
    }

    #[test]
    fn insert_doubles_frontier() {
        let mut t = ClauseTree::new();
        assert_eq!(t.insert_variable(var(1)).unwrap(), 1);
        assert_eq!((t.node_count_incl_root(), t.open_pointer_count()), (2, 2));
        assert_eq!(t.insert_variable(var(2)).unwrap(), 2);
        assert_eq!((t.node_count_incl_root(), t.open_pointer_count()), (4, 4));
    }

    #[test]
    fn fresh_tree_sizes() {
        for k in 0..=10u32 {
            let t = fresh(k);
            assert_eq!(t.open_pointer_count(), 1 << k);
            assert_eq!(t.node_count_incl_root(), 1 << k);
            assert_eq!(t.open_paths().len(), 1 << k);
        }
        for n in 0..=18u32 {
            let t = fresh(n);
            assert_eq!(t.pointer_count(), (1u64 << (n + 1)) - 1);
        }
    }

    #[test]
    fn insert_contract_violations() {
        let mut t = fresh(1);
        assert_eq!(t.insert_variable(var(1)), Err(TreeError::AlreadyInserted(var(1))));
        t.prune(&Clause::from_literals([x(1)])).unwrap();
        t.prune(&Clause::from_literals([nx(1)])).unwrap();
        assert_eq!(t.open_pointer_count(), 0);
        assert_eq!(t.insert_variable(var(2)), Err(TreeError::NoOpenPointers));
    }

    #[test]
    fn prune_contract_violations() {
        let mut t = fresh(1);
        assert_eq!(t.prune(&Clause::from_literals([x(2)])), Err(TreeError::NotInserted(var(2))));
        assert_eq!(t.prune(&Clause::null()), Err(TreeError::DegenerateClause));
        assert_eq!(t.prune(&Clause::from_literals([x(1), nx(1)])), Err(TreeError::DegenerateClause));
    }

    #[test]
    fn prune_single_negative_literal() {
        // Root plus x1, then prune {¬x1}.
        let mut t = fresh(1);
        let visits = t.prune(&Clause::from_literals([nx(1)])).unwrap();
        assert_eq!(visits, 3);
        let PointerState::Child(n) = t.root_pointer() else { panic!() };
        assert_eq!(t.pointer(n, Side::Left), PointerState::Null);
        assert_eq!(t.pointer(n, Side::Right), PointerState::Open);
        assert_eq!(t.counters().nodes_deleted, 0);
    }

    #[test]
    fn prune_inner_pointer_deletes_subtree() {
        let mut t = fresh(2);
        let visits = t.prune(&Clause::from_literals([nx(1)])).unwrap();
        // root, x1.left (matched, not descended), x1.right, x2.left, x2.right
        assert_eq!(visits, 5);
        assert_eq!(t.counters().nodes_deleted, 1);
        assert_eq!(t.node_count_incl_root(), 3);
        assert_eq!(t.open_pointer_count(), 2);
        assert_eq!(t.counters().peak_nodes_incl_root, 4);
    }

    #[test]
    fn prune_full_clause_on_fresh_tree() {
        for n in 1..=12u32 {
            let mut t = fresh(n);
            let c = Clause::from_literals((1..=n).map(x));
            let visits = t.prune(&c).unwrap();
            assert_eq!(visits, (1u64 << (n + 1)) - 1);
            assert_eq!(t.counters().nodes_deleted, 0);
            assert_eq!(t.open_pointer_count(), (1u64 << n) - 1);
            assert!(!t.open_paths().contains(&c));
        }
    }

    #[test]
    fn prune_again_changes_nothing() {
        let mut t = fresh(2);
        let c = Clause::from_literals([x(1), nx(2)]);
        t.prune(&c).unwrap();
        let before = t.export_dot();
        let open = t.open_pointer_count();
        let visits = t.prune(&c).unwrap();
        assert_eq!(visits, 7);
        assert_eq!(t.export_dot(), before);
        assert_eq!(t.open_pointer_count(), open);
    }

    #[test]
    fn null_pointer_stays_null_after_insert() {
        let mut t = fresh(1);
        t.prune(&Clause::from_literals([nx(1)])).unwrap();
        t.insert_variable(var(2)).unwrap();
        let PointerState::Child(n) = t.root_pointer() else { panic!() };
        assert_eq!(t.pointer(n, Side::Left), PointerState::Null);
        assert_eq!(t.node_count_incl_root(), 3);
        assert_eq!(t.label(n), var(1));
    }

    #[test]
    fn open_paths_after_pruning() {
        let mut t = fresh(2);
        t.prune(&Clause::from_literals([nx(1)])).unwrap();
        t.prune(&Clause::from_literals([x(1), nx(2)])).unwrap();
        assert_eq!(t.open_paths(), vec![Clause::from_literals([x(1), x(2)])]);
        assert_eq!(t.first_open_path(), Some(Clause::from_literals([x(1), x(2)])));
    }

    #[test]
    fn deleted_nodes_are_reused() {
        let mut t = fresh(2);
        t.prune(&Clause::from_literals([nx(1)])).unwrap();
        t.insert_variable(var(3)).unwrap();
        assert_eq!(t.node_count_incl_root(), 5);
        assert_eq!(t.nodes.len(), 4);
    }

    #[test]
    fn snapshots_track_visit_deltas() {
        let mut t = fresh(1);
        t.prune(&Clause::from_literals([nx(1)])).unwrap();
        t.counters_mut().record_snapshot(1);
        t.prune(&Clause::from_literals([x(1)])).unwrap();
        t.counters_mut().record_snapshot(2);
        let s = &t.counters().per_clause_snapshots;
        assert_eq!(s[0].visits_delta, 3);
        assert_eq!(s[1].visits_delta, 3);
        let kv = t.counters().to_key_value();
        assert!(kv.contains("prune_pointer_visits=6\n"));
        assert!(kv.contains("snapshot.1=clause:2 peak:2 current:2 visits_delta:3\n"));
    }

    #[test]
    fn new_tree_dot() {
        let expected = "digraph clause_tree {\n  node [shape=circle];\n  root [label=\"root\", shape=doublecircle];\n  p0 [label=\"open\", shape=none];\n  root -> p0;\n}\n";
        assert_eq!(ClauseTree::new().export_dot(), expected);
    }
}
