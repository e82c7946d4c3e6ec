//! SPQ decomposition trees and their construction by degree-2 reduction.
//!
//! The builder keeps a working simple graph in which every live edge owns the
//! subtree describing the part of the input it stands for. Parallel bundles of
//! the input become P-nodes over their Q-leaves. Each degree-2 vertex `c`
//! with neighbors `a`, `b` is then suppressed: its two edges become an S-node
//! between `a` and `b`, which is merged into a P-node if `a` and `b` are
//! already adjacent. Recognition succeeds when exactly one edge survives.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::graph::{connected_components, EdgeId, VertexId, WeightedMultigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Series,
    Parallel,
    Leaf,
}

/// Child list; S-nodes always have two children, stored inline.
pub type Children = SmallVec<[NodeId; 2]>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpNode {
    pub kind: NodeKind,
    pub terminals: (VertexId, VertexId),
    pub children: Children,
    pub edge_id: Option<EdgeId>,
}

impl SpNode {
    pub fn leaf(edge_id: EdgeId, terminals: (VertexId, VertexId)) -> Self {
        SpNode {
            kind: NodeKind::Leaf,
            terminals,
            children: Children::new(),
            edge_id: Some(edge_id),
        }
    }

    pub fn internal(
        kind: NodeKind,
        terminals: (VertexId, VertexId),
        children: impl IntoIterator<Item = NodeId>,
    ) -> Self {
        SpNode {
            kind,
            terminals,
            children: children.into_iter().collect(),
            edge_id: None,
        }
    }
}

/// Arena-backed decomposition tree. Children of an S-node are listed in path
/// order from `terminals.0` to `terminals.1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpTree {
    nodes: Vec<SpNode>,
    root: NodeId,
    /// Set by the builder: every node is reachable, each child has a smaller
    /// id than its parent, and the root is the last node.
    child_first: bool,
}

impl SpTree {
    /// Unchecked constructor; see [`validate_tree`].
    pub fn from_parts(nodes: Vec<SpNode>, root: NodeId) -> Self {
        SpTree {
            nodes,
            root,
            child_first: false,
        }
    }

    /// Whether the arena order itself lists children before parents.
    pub fn is_child_first(&self) -> bool {
        self.child_first
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &SpNode {
        &self.nodes[id.0]
    }

    pub fn try_node(&self, id: NodeId) -> Option<&SpNode> {
        self.nodes.get(id.0)
    }

    pub fn nodes(&self) -> &[SpNode] {
        &self.nodes
    }

    /// Nodes reachable from the root, every child before its parent.
    pub fn post_order(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                order.push(id);
                continue;
            }
            stack.push((id, true));
            for &child in self.node(id).children.iter().rev() {
                stack.push((child, false));
            }
        }
        order
    }

    pub fn leaf_count(&self) -> usize {
        self.post_order()
            .iter()
            .filter(|&&id| self.node(id).kind == NodeKind::Leaf)
            .count()
    }

    /// Nested `S(`/`P(`/`Q(edge)` text, one node per line, two-space
    /// indent, children sorted by their smallest leaf edge id.
    pub fn pretty(&self) -> String {
        let mut min_leaf = vec![usize::MAX; self.nodes.len()];
        for id in self.post_order() {
            let node = self.node(id);
            min_leaf[id.0] = match node.edge_id {
                Some(e) => e,
                None => node.children.iter().map(|c| min_leaf[c.0]).min().unwrap_or(usize::MAX),
            };
        }

        let mut out = String::new();
        let mut stack: Vec<(Option<NodeId>, usize)> = vec![(Some(self.root), 0)];
        while let Some((entry, depth)) = stack.pop() {
            let indent = "  ".repeat(depth);
            let Some(id) = entry else {
                let _ = writeln!(out, "{indent})");
                continue;
            };
            let node = self.node(id);
            match node.kind {
                NodeKind::Leaf => {
                    let _ = writeln!(out, "{indent}Q({})", node.edge_id.unwrap_or(usize::MAX));
                }
                NodeKind::Series | NodeKind::Parallel => {
                    let tag = if node.kind == NodeKind::Series { 'S' } else { 'P' };
                    let _ = writeln!(out, "{indent}{tag}(");
                    let mut children = node.children.clone();
                    children.sort_by_key(|c| min_leaf[c.0]);
                    stack.push((None, depth));
                    for child in children.into_iter().rev() {
                        stack.push((Some(child), depth + 1));
                    }
                }
            }
        }
        out
    }
}

/// Order in which pending degree-2 vertices are taken from the worklist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WorklistOrder {
    /// First in, first out, seeded with vertices in ascending id order.
    #[default]
    Fifo,
    /// Uniformly random pending vertex at every step.
    Random(u64),
}

enum Worklist {
    Fifo(VecDeque<VertexId>),
    Random(Vec<VertexId>, Box<ChaCha8Rng>),
}

impl Worklist {
    fn new(order: WorklistOrder) -> Self {
        match order {
            WorklistOrder::Fifo => Worklist::Fifo(VecDeque::new()),
            WorklistOrder::Random(seed) => Worklist::Random(Vec::new(), Box::new(ChaCha8Rng::seed_from_u64(seed))),
        }
    }

    fn push(&mut self, x: VertexId) {
        match self {
            Worklist::Fifo(q) => q.push_back(x),
            Worklist::Random(v, _) => v.push(x),
        }
    }

    fn pop(&mut self) -> Option<VertexId> {
        match self {
            Worklist::Fifo(q) => q.pop_front(),
            Worklist::Random(v, rng) => {
                if v.is_empty() {
                    None
                } else {
                    let i = rng.gen_range(0..v.len());
                    Some(v.swap_remove(i))
                }
            }
        }
    }
}

/// Subtree of a live edge. A parallel bundle stays pending until its edge is
/// consumed, so every node enters the arena after all of its children.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Live {
    Node(NodeId),
    Bundle(usize),
}

/// Neighbor -> live edge. Low degrees scan a short inline vector; hubs
/// switch to a hash map so removals stay constant time.
#[derive(Clone)]
enum NeighborMap {
    Small(SmallVec<[(VertexId, Live); 4]>),
    Large(FxHashMap<VertexId, Live>),
}

const SMALL_DEGREE: usize = 12;

impl Default for NeighborMap {
    fn default() -> Self {
        NeighborMap::Small(SmallVec::new())
    }
}

impl NeighborMap {
    fn len(&self) -> usize {
        match self {
            NeighborMap::Small(v) => v.len(),
            NeighborMap::Large(m) => m.len(),
        }
    }

    fn get(&self, x: VertexId) -> Option<Live> {
        match self {
            NeighborMap::Small(v) => v.iter().find(|e| e.0 == x).map(|e| e.1),
            NeighborMap::Large(m) => m.get(&x).copied(),
        }
    }

    fn insert(&mut self, x: VertexId, node: Live) {
        match self {
            NeighborMap::Small(v) => match v.iter().position(|e| e.0 == x) {
                Some(i) => v[i].1 = node,
                None if v.len() < SMALL_DEGREE => v.push((x, node)),
                None => {
                    let mut m: FxHashMap<VertexId, Live> = v.drain(..).collect();
                    m.insert(x, node);
                    *self = NeighborMap::Large(m);
                }
            },
            NeighborMap::Large(m) => {
                m.insert(x, node);
            }
        }
    }

    fn remove(&mut self, x: VertexId) {
        match self {
            NeighborMap::Small(v) => {
                if let Some(i) = v.iter().position(|e| e.0 == x) {
                    v.swap_remove(i);
                }
            }
            NeighborMap::Large(m) => {
                m.remove(&x);
            }
        }
    }

    /// Empties a map holding exactly two entries.
    fn take_pair(&mut self) -> [(VertexId, Live); 2] {
        match std::mem::take(self) {
            NeighborMap::Small(v) => [v[0], v[1]],
            NeighborMap::Large(m) => {
                let mut entries = m.into_iter();
                [entries.next().expect("degree 2"), entries.next().expect("degree 2")]
            }
        }
    }
}

struct Builder {
    nodes: Vec<SpNode>,
    adj: Vec<NeighborMap>,
    bundles: Vec<((VertexId, VertexId), Children)>,
}

impl Builder {
    fn push(&mut self, node: SpNode) -> NodeId {
        self.nodes.push(node);
        NodeId(self.nodes.len() - 1)
    }

    /// Puts `incoming` in parallel with the live edge `a`-`b`, or creates it.
    fn attach(&mut self, a: VertexId, b: VertexId, incoming: NodeId) {
        match self.adj[a].get(b) {
            None => {
                self.adj[a].insert(b, Live::Node(incoming));
                self.adj[b].insert(a, Live::Node(incoming));
            }
            Some(Live::Bundle(i)) => self.bundles[i].1.push(incoming),
            Some(Live::Node(existing)) => {
                let terminals = self.nodes[existing.0].terminals;
                self.bundles
                    .push((terminals, [existing, incoming].into_iter().collect()));
                let bundle = Live::Bundle(self.bundles.len() - 1);
                self.adj[a].insert(b, bundle);
                self.adj[b].insert(a, bundle);
            }
        }
    }

    fn materialize(&mut self, live: Live) -> NodeId {
        match live {
            Live::Node(id) => id,
            Live::Bundle(i) => {
                let (terminals, children) = std::mem::take(&mut self.bundles[i]);
                self.push(SpNode::internal(NodeKind::Parallel, terminals, children))
            }
        }
    }
}

pub fn build_sp_tree(g: &WeightedMultigraph) -> Result<SpTree> {
    build_sp_tree_with(g, WorklistOrder::Fifo)
}

/// Builds the decomposition tree, taking degree-2 vertices in `order`.
pub fn build_sp_tree_with(g: &WeightedMultigraph, order: WorklistOrder) -> Result<SpTree> {
    if let Some(e) = g.self_loops().next() {
        return Err(Error::SelfLoop(e.id));
    }
    if g.vertex_count() < 2 {
        return Err(Error::NotSeriesParallel {
            residual_vertices: g.vertex_count(),
            residual_edges: 0,
        });
    }
    let n = g.vertex_count();
    let mut b = Builder {
        nodes: Vec::with_capacity(2 * g.edge_count()),
        adj: vec![NeighborMap::default(); n],
        bundles: Vec::new(),
    };
    for e in g.edges() {
        let leaf = b.push(SpNode::leaf(e.id, (e.u, e.v)));
        b.attach(e.u, e.v, leaf);
    }

    let mut removed = vec![false; n];
    let mut worklist = Worklist::new(order);
    for x in 0..n {
        if b.adj[x].len() == 2 {
            worklist.push(x);
        }
    }

    while let Some(c) = worklist.pop() {
        if removed[c] || b.adj[c].len() != 2 {
            continue;
        }
        let [(a, to_a), (z, to_z)] = b.adj[c].take_pair();
        let (x, to_x, y, to_y) = if a < z { (a, to_a, z, to_z) } else { (z, to_z, a, to_a) };
        removed[c] = true;
        b.adj[x].remove(c);
        b.adj[y].remove(c);

        let to_x = b.materialize(to_x);
        let to_y = b.materialize(to_y);
        let series = b.push(SpNode::internal(NodeKind::Series, (x, y), [to_x, to_y]));
        b.attach(x, y, series);
        for v in [x, y] {
            if b.adj[v].len() == 2 {
                worklist.push(v);
            }
        }
    }

    let live: Vec<VertexId> = (0..n).filter(|&v| !removed[v]).collect();
    let residual_edges = live.iter().map(|&v| b.adj[v].len()).sum::<usize>() / 2;
    if live.len() != 2 || residual_edges != 1 {
        if connected_components(g).len() != 1 {
            return Err(Error::Disconnected);
        }
        return Err(Error::NotSeriesParallel {
            residual_vertices: live.len(),
            residual_edges,
        });
    }
    let live_edge = b.adj[live[0]].get(live[1]).expect("residual edge");
    let root = b.materialize(live_edge);
    debug_assert_eq!(root.0 + 1, b.nodes.len());
    Ok(SpTree {
        nodes: b.nodes,
        root,
        child_first: true,
    })
}

fn same_pair(p: (VertexId, VertexId), q: (VertexId, VertexId)) -> bool {
    p == q || p == (q.1, q.0)
}

/// Checks the structural invariants of `t` and that its leaves are in
/// bijection with the edges of `g`.
pub fn validate_tree(t: &SpTree, g: &WeightedMultigraph) -> bool {
    if t.try_node(t.root).is_none() {
        return false;
    }
    let mut seen_node = vec![false; t.nodes.len()];
    let mut seen_edge = vec![false; g.edge_count()];
    let mut stack = vec![t.root];
    while let Some(id) = stack.pop() {
        let Some(node) = t.try_node(id) else { return false };
        if std::mem::replace(&mut seen_node[id.0], true) {
            return false;
        }
        let (s, k) = node.terminals;
        if s == k {
            return false;
        }
        match node.kind {
            NodeKind::Leaf => {
                let Some(eid) = node.edge_id else { return false };
                let Some(edge) = g.edge(eid) else { return false };
                if !node.children.is_empty() || (edge.u, edge.v) != node.terminals {
                    return false;
                }
                if std::mem::replace(&mut seen_edge[eid], true) {
                    return false;
                }
            }
            NodeKind::Parallel | NodeKind::Series => {
                if node.edge_id.is_some() || node.children.len() < 2 {
                    return false;
                }
                let mut cursor = s;
                for &child in &node.children {
                    let Some(c) = t.try_node(child) else { return false };
                    if node.kind == NodeKind::Parallel {
                        if !same_pair(c.terminals, node.terminals) {
                            return false;
                        }
                    } else if c.terminals.0 == cursor {
                        cursor = c.terminals.1;
                    } else if c.terminals.1 == cursor {
                        cursor = c.terminals.0;
                    } else {
                        return false;
                    }
                    stack.push(child);
                }
                if node.kind == NodeKind::Series && cursor != k {
                    return false;
                }
            }
        }
    }
    seen_edge.iter().all(|&x| x)
}
