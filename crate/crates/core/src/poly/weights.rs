use num_integer::Integer;
use serde::Serialize;

use super::{Monomial, PolyError};

/// Positive weights of the variables, normalized to have no common divisor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct WeightSystem {
    weights: Vec<u64>,
}

impl WeightSystem {
    /// Builds a weight system on 2 or 3 variables, dividing out the gcd.
    pub fn new(weights: &[u64]) -> Result<Self, PolyError> {
        if !(2..=3).contains(&weights.len()) {
            return Err(PolyError::UnsupportedArity(weights.len()));
        }
        if weights.contains(&0) {
            return Err(PolyError::NonPositiveWeight);
        }
        let g = weights.iter().fold(0u64, |acc, &w| acc.gcd(&w));
        Ok(WeightSystem {
            weights: weights.iter().map(|w| w / g).collect(),
        })
    }

    /// The standard grading, all weights one.
    pub fn standard(nvars: usize) -> Self {
        WeightSystem::new(&vec![1; nvars]).expect("2 or 3 variables")
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, var: usize) -> u64 {
        self.weights[var]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.weights
    }

    /// `|w|`, the sum of the weights.
    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn degree_of(&self, m: &Monomial) -> u64 {
        self.weights
            .iter()
            .enumerate()
            .map(|(i, w)| w * m.exponent(i) as u64)
            .sum()
    }

    /// Weights of the first two variables, renormalized: the planar weights
    /// inherited by a polynomial in `K[x,y]`.
    pub fn planar(&self) -> WeightSystem {
        WeightSystem::new(&self.weights[..2]).expect("positive weights")
    }

    /// The common divisor `gcd(w1, w2)` removed by [`WeightSystem::planar`].
    pub fn planar_scale(&self) -> u64 {
        self.weights[0].gcd(&self.weights[1])
    }
}

impl std::fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_gcd() {
        let w = WeightSystem::new(&[2, 4, 6]).unwrap();
        assert_eq!(w.as_slice(), &[1, 2, 3]);
        assert_eq!(w.total(), 6);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(WeightSystem::new(&[1, 0, 1]).is_err());
        assert!(WeightSystem::new(&[1]).is_err());
        assert!(WeightSystem::new(&[1, 1, 1, 1]).is_err());
    }

    #[test]
    fn planar_weights() {
        let w = WeightSystem::new(&[3, 3, 2]).unwrap();
        assert_eq!(w.planar().as_slice(), &[1, 1]);
        assert_eq!(w.planar_scale(), 3);
    }
}
