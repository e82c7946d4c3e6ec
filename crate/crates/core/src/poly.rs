use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense polynomial in `q` with exact coefficients in ascending powers.
/// Trailing zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyQ {
    coefficients: Vec<Rational>,
}

impl PolyQ {
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        PolyQ { coefficients }
    }

    pub fn from_integers(coefficients: &[i64]) -> Self {
        PolyQ::new(coefficients.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coefficient(&self, power: usize) -> Rational {
        self.coefficients.get(power).cloned().unwrap_or_else(Rational::zero)
    }

    /// 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.coefficients.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, q: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * q + c)
    }

    pub fn mul(&self, other: &PolyQ) -> PolyQ {
        if self.is_zero() || other.is_zero() {
            return PolyQ::new(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        PolyQ::new(out)
    }

    /// Unique polynomial of degree `< points.len()` through `points`
    /// (Newton divided differences).
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<PolyQ> {
        let n = points.len();
        let mut table: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let dx = &points[i].0 - &points[i - level].0;
                let dy = &table[i] - &table[i - 1];
                table[i] = dy
                    .checked_div(&dx)
                    .map_err(|_| Error::InterpolationFailure(format!("repeated abscissa {}", points[i].0)))?;
            }
        }

        let mut coefficients: Vec<Rational> = Vec::with_capacity(n);
        for i in (0..n).rev() {
            // coefficients <- coefficients * (q - x_i) + table[i]
            let shift = &points[i].0;
            let mut next = vec![Rational::zero(); coefficients.len() + 1];
            for (k, c) in coefficients.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * shift);
            }
            next[0] = &next[0] + &table[i];
            coefficients = next;
        }
        Ok(PolyQ::new(coefficients))
    }

    /// Coefficients as exact strings, for machine-readable output.
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coefficients.iter().map(ToString::to_string).collect()
    }
}

/// Ascending powers, zero terms omitted, unit coefficients implicit:
/// `2q - 3q^2 + q^3`. Non-integer coefficients are parenthesized.
impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (power, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if power == 0 {
                write!(f, "{magnitude}")?;
                continue;
            }
            if !magnitude.is_one() {
                if magnitude.is_integer() {
                    write!(f, "{magnitude}")?;
                } else {
                    write!(f, "({magnitude})")?;
                }
            }
            if power == 1 {
                write!(f, "q")?;
            } else {
                write!(f, "q^{power}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
