//! Partition function evaluation through the decomposition tree.
//!
//! [`evaluate`] strips the features the tree builder does not accept and
//! multiplies in their exact contributions:
//!
//! * a self-loop of weight `v` never changes `K(A)`, so it contributes `1 + v`;
//! * with `reduce_pendants`, a degree-1 vertex whose edge has weight `v`
//!   contributes `q + v` (repeated until none is left);
//! * an isolated vertex contributes `q`;
//! * `Z` factorizes over connected components.
//!
//! Every remaining component is folded into one effective `K2` edge `(w, pref)`
//! and contributes `(q^2 + q w) * pref`. At `q = 0` the answer is 0 for every
//! graph (each subset leaves at least one component) and is returned directly.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{DisjointSet, WeightedMultigraph};
use crate::poly::PolyQ;
use crate::rational::{Rational, Scalar};
use crate::reduction::{parallel_weight, series_weight, EffectiveEdge};
use crate::sptree::{build_sp_tree_with, NodeId, NodeKind, SpNode, SpTree, WorklistOrder};

#[derive(Debug, Clone)]
pub struct EvalRequest<'g, S = Rational> {
    pub graph: &'g WeightedMultigraph,
    pub q: S,
    /// Replaces every edge weight, e.g. `-1` for the chromatic setting.
    pub weight_override: Option<Rational>,
    pub reduce_pendants: bool,
    pub worklist: WorklistOrder,
}

impl<'g, S: Scalar> EvalRequest<'g, S> {
    pub fn new(graph: &'g WeightedMultigraph, q: S) -> Self {
        EvalRequest {
            graph,
            q,
            weight_override: None,
            reduce_pendants: false,
            worklist: WorklistOrder::Fifo,
        }
    }

    pub fn with_weight_override(mut self, w: Option<Rational>) -> Self {
        self.weight_override = w;
        self
    }

    pub fn with_reduce_pendants(mut self, on: bool) -> Self {
        self.reduce_pendants = on;
        self
    }

    pub fn with_worklist(mut self, order: WorklistOrder) -> Self {
        self.worklist = order;
        self
    }
}

/// Depth-first fold of `tree` into one equivalent edge, using the weights
/// of `g`.
pub fn effective_weight(tree: &SpTree, g: &WeightedMultigraph, q: &Rational) -> Result<EffectiveEdge<Rational>> {
    let weights: Vec<Rational> = g.weights().cloned().collect();
    effective_weight_with(tree, &weights, q)
}

/// Same fold over an explicit weight vector indexed by edge id.
///
/// Leaves carry `(v_e, 1)`. A P-node combines child weights with the parallel
/// rule, an S-node with the series rule; prefactors of all children multiply
/// into the parent together with the series prefactor.
pub fn effective_weight_with<S: Scalar>(tree: &SpTree, weights: &[S], q: &S) -> Result<EffectiveEdge<S>> {
    if q.is_zero() {
        return Err(Error::InvalidQ);
    }
    let mut scratch = Vec::new();
    if tree.is_child_first() {
        // The arena is already a valid evaluation order.
        let mut values: Vec<Option<EffectiveEdge<S>>> = Vec::with_capacity(tree.nodes().len());
        for node in tree.nodes() {
            let children = node
                .children
                .iter()
                .map(|c| values[c.0].take().expect("children fold first"));
            let edge = fold_node(node, children, weights, q, &mut scratch)?;
            values.push(Some(edge));
        }
        return Ok(values[tree.root().0].take().expect("root folded"));
    }

    // Depth-first walk; `values` holds the folded siblings of every open
    // frame, in child order.
    let mut frames: Vec<(NodeId, usize)> = vec![(tree.root(), 0)];
    let mut values: Vec<EffectiveEdge<S>> = Vec::new();
    while let Some(frame) = frames.last_mut() {
        let node = tree.node(frame.0);
        if let Some(&child) = node.children.get(frame.1) {
            frame.1 += 1;
            frames.push((child, 0));
            continue;
        }
        frames.pop();
        let first = values.len() - node.children.len();
        let children: Vec<_> = values.drain(first..).collect();
        let edge = fold_node(node, children.into_iter(), weights, q, &mut scratch)?;
        values.push(edge);
    }
    Ok(values.pop().expect("root folded"))
}

/// Effective edge of `node` from the already folded edges of its children.
fn fold_node<S: Scalar>(
    node: &SpNode,
    children: impl Iterator<Item = EffectiveEdge<S>>,
    weights: &[S],
    q: &S,
    scratch: &mut Vec<S>,
) -> Result<EffectiveEdge<S>> {
    if node.kind == NodeKind::Leaf {
        let eid = node.edge_id.expect("leaf carries an edge id");
        return Ok(EffectiveEdge::single(weights[eid].clone()));
    }
    scratch.clear();
    let mut prefactor = S::one();
    for e in children {
        scratch.push(e.weight);
        prefactor = prefactor * e.prefactor;
    }
    if node.kind == NodeKind::Parallel {
        return Ok(EffectiveEdge {
            weight: parallel_weight(scratch),
            prefactor,
        });
    }
    let s = series_weight(scratch, q).map_err(|e| match e {
        Error::SingularPoint { q, .. } => Error::SingularPoint {
            q,
            terminals: Some(node.terminals),
        },
        other => other,
    })?;
    Ok(EffectiveEdge {
        weight: s.weight,
        prefactor: s.prefactor * prefactor,
    })
}

/// Exact (or, for `f64`, approximate) partition function `Z_G(q, v)`.
pub fn evaluate<S: Scalar>(req: &EvalRequest<'_, S>) -> Result<S> {
    let q = &req.q;
    if q.is_zero() {
        return Ok(S::zero());
    }
    let g = req.graph;
    let n = g.vertex_count();
    let m = g.edge_count();
    let weights: Vec<S> = match &req.weight_override {
        Some(w) => vec![S::from_rational(w); m],
        None => g.weights().map(S::from_rational).collect(),
    };

    let mut total = S::one();
    let mut alive = vec![true; m];
    let mut degree = vec![0usize; n];
    let mut removed = vec![false; n];
    for e in g.edges() {
        if e.is_self_loop() {
            alive[e.id] = false;
            total = total * (S::one() + weights[e.id].clone());
        } else {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
    }

    if req.reduce_pendants {
        let adjacency = g.adjacency();
        let mut pending: Vec<usize> = (0..n).filter(|&x| degree[x] == 1).collect();
        while let Some(x) = pending.pop() {
            if degree[x] != 1 {
                continue;
            }
            let &(y, eid) = adjacency[x]
                .iter()
                .find(|&&(_, eid)| alive[eid])
                .expect("degree-1 vertex has a live edge");
            alive[eid] = false;
            degree[x] = 0;
            removed[x] = true;
            degree[y] -= 1;
            total = total * (q.clone() + weights[eid].clone());
            if degree[y] == 1 {
                pending.push(y);
            }
        }
    }

    // The tree builder detects disconnection itself, so an untouched graph
    // skips the component split unless the build reports it.
    if n >= 2 && alive.iter().all(|&a| a) {
        match component_z(g, &weights, &(0..n).collect::<Vec<_>>(), req) {
            Err(Error::Disconnected) => {}
            other => return Ok(total * other?),
        }
    }

    let mut dsu = DisjointSet::new(n);
    for e in g.edges().iter().filter(|e| alive[e.id]) {
        dsu.union(e.u, e.v);
    }

    // Split into components with local vertex and edge ids.
    let mut slot = vec![usize::MAX; n];
    let mut local_id = vec![0usize; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if removed[x] {
            continue;
        }
        if degree[x] == 0 {
            total = total * q.clone();
            continue;
        }
        let root = dsu.find(x);
        if slot[root] == usize::MAX {
            slot[root] = members.len();
            members.push(Vec::new());
        }
        local_id[x] = members[slot[root]].len();
        members[slot[root]].push(x);
    }
    let mut parts: Vec<(WeightedMultigraph, Vec<S>)> = members
        .iter()
        .map(|vs| {
            (
                WeightedMultigraph::new(vs.len()).expect("non-empty component"),
                Vec::new(),
            )
        })
        .collect();
    for e in g.edges().iter().filter(|e| alive[e.id]) {
        let (sub, sub_weights) = &mut parts[slot[dsu.find(e.u)]];
        sub.add_edge(local_id[e.u], local_id[e.v], e.weight.clone())
            .expect("local ids in range");
        sub_weights.push(weights[e.id].clone());
    }
    for ((sub, sub_weights), vertices) in parts.iter().zip(&members) {
        total = total * component_z(sub, sub_weights, vertices, req)?;
    }
    Ok(total)
}

/// `(q^2 + q w) * pref` for one connected, loop-free piece. `vertices` maps
/// local vertex ids back to the caller's graph for error reports.
fn component_z<S: Scalar>(
    piece: &WeightedMultigraph,
    weights: &[S],
    vertices: &[usize],
    req: &EvalRequest<'_, S>,
) -> Result<S> {
    let tree = build_sp_tree_with(piece, req.worklist)?;
    let edge = effective_weight_with(&tree, weights, &req.q).map_err(|e| match e {
        Error::SingularPoint { q, terminals } => Error::SingularPoint {
            q,
            terminals: terminals.map(|(s, t)| (vertices[s], vertices[t])),
        },
        other => other,
    })?;
    Ok(edge.k2_partition_function(&req.q))
}

#[derive(Debug, Clone, Default)]
pub struct PolyOptions {
    pub weight_override: Option<Rational>,
    pub reduce_pendants: bool,
}

/// Each of the first `CANDIDATE_FACTOR * (|V| + 1)` integers is tried as an
/// evaluation point.
const CANDIDATE_FACTOR: usize = 8;

/// `Z_G` as a polynomial in `q` with the edge weights fixed.
pub fn partition_polynomial(g: &WeightedMultigraph, reduce_pendants: bool) -> Result<PolyQ> {
    partition_polynomial_with(
        g,
        &PolyOptions {
            weight_override: None,
            reduce_pendants,
        },
    )
}

/// Chromatic polynomial: every weight set to `-1`.
pub fn chromatic_polynomial(g: &WeightedMultigraph) -> Result<PolyQ> {
    partition_polynomial_with(
        g,
        &PolyOptions {
            weight_override: Some(Rational::from_integer(-1)),
            reduce_pendants: false,
        },
    )
}

/// Evaluates at `|V| + 1` points from `1, 2, 3, ...`, skipping singular ones,
/// and interpolates. `Z(0) = 0` must then hold and is checked.
pub fn partition_polynomial_with(g: &WeightedMultigraph, options: &PolyOptions) -> Result<PolyQ> {
    let needed = g.vertex_count() + 1;
    let budget = CANDIDATE_FACTOR * needed;
    let mut points = Vec::with_capacity(needed);
    for k in 1..=budget {
        if points.len() == needed {
            break;
        }
        let q = Rational::from_integer(k as i64);
        let req = EvalRequest::new(g, q.clone())
            .with_weight_override(options.weight_override.clone())
            .with_reduce_pendants(options.reduce_pendants);
        match evaluate(&req) {
            Ok(z) => points.push((q, z)),
            Err(e) if e.is_singular() => continue,
            Err(e) => return Err(e),
        }
    }
    if points.len() < needed {
        return Err(Error::InterpolationFailure(format!(
            "only {} of {} nonsingular points among the first {} candidates",
            points.len(),
            needed,
            budget
        )));
    }
    let poly = PolyQ::interpolate(&points)?;
    if !poly.coefficient(0).is_zero() {
        return Err(Error::InterpolationFailure(format!(
            "constant term {} is not zero",
            poly.coefficient(0)
        )));
    }
    Ok(poly)
}
