//! Brute-force ground truth: the subset expansion of the partition function
//! and a direct proper-coloring counter. Nothing here touches the
//! decomposition tree or the reduction formulas.

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::WeightedMultigraph;
use crate::rational::Rational;

pub const MAX_SUBSET_EDGES: usize = 24;
pub const MAX_COLORINGS: u128 = 100_000_000;

/// Union-find with undo, plus the state of the subset currently enumerated.
/// `components` is `K(A)` for the edges pushed so far.
struct SubsetAccumulator {
    parent: Vec<usize>,
    rank: Vec<u8>,
    components: usize,
    undo: Vec<Option<(usize, usize, bool)>>,
}

impl SubsetAccumulator {
    fn new(n: usize) -> Self {
        SubsetAccumulator {
            parent: (0..n).collect(),
            rank: vec![0; n],
            components: n,
            undo: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn push_edge(&mut self, u: usize, v: usize) {
        let (mut a, mut b) = (self.find(u), self.find(v));
        if a == b {
            self.undo.push(None);
            return;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        let bumped = self.rank[a] == self.rank[b];
        self.parent[b] = a;
        if bumped {
            self.rank[a] += 1;
        }
        self.components -= 1;
        self.undo.push(Some((a, b, bumped)));
    }

    fn pop_edge(&mut self) {
        if let Some((a, b, bumped)) = self.undo.pop().expect("balanced push/pop") {
            self.parent[b] = b;
            if bumped {
                self.rank[a] -= 1;
            }
            self.components += 1;
        }
    }
}

/// `sums[k] = sum over A with K(A) = k of prod_{e in A} inc[e] * prod_{e not in A} exc[e]`.
fn component_sums<T>(g: &WeightedMultigraph, include: &[T], exclude: &[T]) -> Vec<T>
where
    T: Clone + Zero + One + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
{
    struct Walk<'g, T> {
        ends: Vec<(usize, usize)>,
        include: &'g [T],
        exclude: &'g [T],
        acc: SubsetAccumulator,
        sums: Vec<T>,
    }

    impl<T> Walk<'_, T>
    where
        T: Clone + Zero + One + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
    {
        fn visit(&mut self, i: usize, product: T) {
            if i == self.ends.len() {
                let k = self.acc.components;
                self.sums[k] = std::mem::replace(&mut self.sums[k], T::zero()) + product;
                return;
            }
            let (u, v) = self.ends[i];
            self.visit(i + 1, product.clone() * &self.exclude[i]);
            self.acc.push_edge(u, v);
            self.visit(i + 1, product * &self.include[i]);
            self.acc.pop_edge();
        }
    }

    let mut walk = Walk {
        ends: g.edges().iter().map(|e| (e.u, e.v)).collect(),
        include,
        exclude,
        acc: SubsetAccumulator::new(g.vertex_count()),
        sums: vec![T::zero(); g.vertex_count() + 1],
    };
    walk.visit(0, T::one());
    walk.sums
}

fn check_subset_cap(g: &WeightedMultigraph) -> Result<()> {
    if g.edge_count() > MAX_SUBSET_EDGES {
        return Err(Error::TooLarge {
            what: "edge count",
            actual: g.edge_count() as u128,
            limit: MAX_SUBSET_EDGES as u128,
        });
    }
    Ok(())
}

/// Coefficients of `Z_G` as a polynomial in `q` (index = power), by exact
/// enumeration of all `2^|E|` edge subsets.
pub fn subset_expansion(g: &WeightedMultigraph) -> Result<Vec<Rational>> {
    check_subset_cap(g)?;
    // v_e = n_e / d_e; scaling every subset term by D = prod d_e keeps the
    // enumeration in integers.
    let include: Vec<BigInt> = g.weights().map(|w| w.numer().clone()).collect();
    let exclude: Vec<BigInt> = g.weights().map(|w| w.denom().clone()).collect();
    let scale = exclude.iter().fold(BigInt::one(), |acc, d| acc * d);
    component_sums(g, &include, &exclude)
        .into_iter()
        .map(|s| Rational::new(s, scale.clone()))
        .collect()
}

/// `Z_G(q, v) = sum_{A subset of E} q^K(A) prod_{e in A} v_e`, exactly.
pub fn brute_force_z(g: &WeightedMultigraph, q: &Rational) -> Result<Rational> {
    let coefficients = subset_expansion(g)?;
    let mut power = Rational::one();
    let mut total = Rational::zero();
    for c in &coefficients {
        total = total + c * &power;
        power = power * q;
    }
    Ok(total)
}

/// Floating-point subset expansion, for timing the direct method.
pub fn brute_force_z_f64(g: &WeightedMultigraph, q: f64) -> Result<f64> {
    check_subset_cap(g)?;
    let include: Vec<f64> = g.weights().map(Rational::to_f64).collect();
    let exclude = vec![1.0; g.edge_count()];
    let sums = component_sums(g, &include, &exclude);
    Ok(sums.iter().rev().fold(0.0, |acc, s| acc * q + s))
}

/// Number of maps `V -> {0..q-1}` with no monochromatic edge.
pub fn count_proper_colorings(g: &WeightedMultigraph, q: u32) -> Result<u64> {
    let n = g.vertex_count();
    let total = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > MAX_COLORINGS {
        return Err(Error::TooLarge {
            what: "coloring count q^|V|",
            actual: total,
            limit: MAX_COLORINGS,
        });
    }
    if g.has_self_loops() || q == 0 {
        return Ok(0);
    }
    let ends: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut color = vec![0u32; n];
    let mut count = 0u64;
    loop {
        if ends.iter().all(|&(u, v)| color[u] != color[v]) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(count);
            }
            color[i] += 1;
            if color[i] < q {
                break;
            }
            color[i] = 0;
            i += 1;
        }
    }
}
