//! Seeded random two-terminal series-parallel multigraphs.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::WeightedMultigraph;
use crate::rational::Rational;

/// Resolution of the uniform grid weights are drawn from.
const WEIGHT_GRID: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub composition_ops: usize,
    pub seed: u64,
    pub weight_min: Rational,
    pub weight_max: Rational,
    /// Probability in `[0, 1]` that a composition is a series one.
    pub series_bias: f64,
}

impl GeneratorSpec {
    /// Weights in `[1/100000, 1/20]`, even series/parallel mix.
    pub fn new(composition_ops: usize, seed: u64) -> Self {
        GeneratorSpec {
            composition_ops,
            seed,
            weight_min: Rational::new(1, 100_000).unwrap(),
            weight_max: Rational::new(1, 20).unwrap(),
            series_bias: 0.5,
        }
    }

    pub fn with_weights(mut self, min: Rational, max: Rational) -> Self {
        self.weight_min = min;
        self.weight_max = max;
        self
    }

    pub fn with_series_bias(mut self, bias: f64) -> Self {
        self.series_bias = bias;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.weight_min > self.weight_max {
            return Err(Error::InvalidSpec(format!(
                "weight_min {} exceeds weight_max {}",
                self.weight_min, self.weight_max
            )));
        }
        if !(0.0..=1.0).contains(&self.series_bias) {
            return Err(Error::InvalidSpec(format!(
                "series_bias {} outside [0, 1]",
                self.series_bias
            )));
        }
        Ok(())
    }
}

/// Starts from `K2` on terminals 0 and 1 and applies `composition_ops`
/// compositions. Each one picks a uniformly random edge and replaces it by the
/// series or parallel composition of two `K2`s, which grows a uniformly random
/// composition tree one leaf at a time. The result has `composition_ops + 1`
/// edges; new vertices and edges get the next free ids.
pub fn random_sp_graph(spec: &GeneratorSpec) -> Result<WeightedMultigraph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut vertex_count = 2usize;
    let mut ends: Vec<(usize, usize)> = vec![(0, 1)];
    for _ in 0..spec.composition_ops {
        let pick = rng.gen_range(0..ends.len());
        let (u, v) = ends[pick];
        if rng.gen_bool(spec.series_bias) {
            let mid = vertex_count;
            vertex_count += 1;
            ends[pick] = (u, mid);
            ends.push((mid, v));
        } else {
            ends.push((u, v));
        }
    }

    let span = &spec.weight_max - &spec.weight_min;
    let mut g = WeightedMultigraph::new(vertex_count)?;
    for (u, v) in ends {
        let step: u64 = rng.gen_range(0..=WEIGHT_GRID);
        let frac = Rational::new(BigInt::from(step), BigInt::from(WEIGHT_GRID))?;
        let w = &spec.weight_min + &(&span * &frac);
        g.add_edge(u, v, w)?;
    }
    Ok(g)
}
