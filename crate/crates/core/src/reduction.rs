//! Closed-form edge reductions that preserve the partition function.
//!
//! A reduction replaces a two-terminal gadget by one edge of weight `w` and
//! reports a prefactor `pref` such that
//! `Z(original) = pref * Z(graph with the gadget replaced by the edge)`.
//! For a gadget that is the whole graph this is `(q^2 + q w) * pref`.

use crate::error::{Error, Result};
use crate::rational::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveEdge<S> {
    pub weight: S,
    pub prefactor: S,
}

impl<S: Scalar> EffectiveEdge<S> {
    pub fn single(weight: S) -> Self {
        EffectiveEdge {
            weight,
            prefactor: S::one(),
        }
    }

    /// Partition function of `K2` carrying this edge: `(q^2 + q w) * pref`.
    pub fn k2_partition_function(&self, q: &S) -> S {
        (q.clone() * q.clone() + q.clone() * self.weight.clone()) * self.prefactor.clone()
    }
}

/// Levels of a necklace gadget, each a series path from source to sink.
#[derive(Debug, Clone, PartialEq)]
pub struct NecklaceSpec<S> {
    levels: Vec<Vec<S>>,
}

impl<S: Scalar> NecklaceSpec<S> {
    pub fn new(levels: Vec<Vec<S>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Empty("necklace"));
        }
        if levels.iter().any(Vec::is_empty) {
            return Err(Error::Empty("necklace level"));
        }
        Ok(NecklaceSpec { levels })
    }

    pub fn levels(&self) -> &[Vec<S>] {
        &self.levels
    }
}

fn product<'a, S: Scalar + 'a>(values: impl IntoIterator<Item = &'a S>) -> S {
    values.into_iter().fold(S::one(), |acc, v| acc * v.clone())
}

/// `prod(v_i + q) - prod(v_i)` and `prod(v_i)` for one series chain.
fn series_denominator<S: Scalar>(weights: &[S], q: &S) -> (S, S) {
    let shifted = weights.iter().fold(S::one(), |acc, v| acc * (v.clone() + q.clone()));
    let plain = product(weights);
    (shifted - plain.clone(), plain)
}

fn singular<S: Scalar>(q: &S) -> Error {
    Error::SingularPoint {
        q: q.to_string(),
        terminals: None,
    }
}

/// Bundle of parallel edges: `prod(1 + v_i) - 1`. The empty bundle maps to the
/// identity weight 0.
pub fn parallel_weight<S: Scalar>(weights: &[S]) -> S {
    weights.iter().fold(S::one(), |acc, v| acc * (S::one() + v.clone())) - S::one()
}

/// Path whose internal vertices have degree 2:
/// `w = q prod(v_i) / D`, `pref = D / q` with `D = prod(v_i + q) - prod(v_i)`.
pub fn series_weight<S: Scalar>(weights: &[S], q: &S) -> Result<EffectiveEdge<S>> {
    if q.is_zero() {
        return Err(Error::InvalidQ);
    }
    if weights.is_empty() {
        return Err(Error::Empty("series chain"));
    }
    let (denominator, plain) = series_denominator(weights, q);
    let weight = (q.clone() * plain)
        .checked_div(&denominator)
        .ok_or_else(|| singular(q))?;
    let prefactor = denominator.checked_div(q).ok_or(Error::InvalidQ)?;
    Ok(EffectiveEdge { weight, prefactor })
}

/// Necklace of levels between one source and one sink, in closed form:
/// `w = prod_i (P_i + (q - 1) M_i) / (P_i - M_i) - 1` and
/// `pref = prod_i (P_i - M_i) / q`, where `P_i = prod_j (v_ij + q)` and
/// `M_i = prod_j v_ij`.
pub fn necklace_weight<S: Scalar>(spec: &NecklaceSpec<S>, q: &S) -> Result<EffectiveEdge<S>> {
    if q.is_zero() {
        return Err(Error::InvalidQ);
    }
    let q_minus_one = q.clone() - S::one();
    let mut ratio = S::one();
    let mut prefactor = S::one();
    for level in spec.levels() {
        let (denominator, plain) = series_denominator(level, q);
        let shifted = denominator.clone() + plain.clone();
        let numerator = shifted + q_minus_one.clone() * plain;
        ratio = ratio * numerator.checked_div(&denominator).ok_or_else(|| singular(q))?;
        prefactor = prefactor * denominator.checked_div(q).ok_or(Error::InvalidQ)?;
    }
    Ok(EffectiveEdge {
        weight: ratio - S::one(),
        prefactor,
    })
}
