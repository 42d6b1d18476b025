//! 1-chains on the edges of a surface complex.

use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// A directed edge occurrence: `sign = 1` follows the edge's reference
/// direction, `sign = -1` runs against it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    pub edge: usize,
    pub sign: i8,
}

impl Token {
    pub fn new(edge: usize, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Token { edge, sign }
    }

    pub fn reversed(self) -> Self {
        Token { edge: self.edge, sign: -self.sign }
    }
}

/// Rational coefficients over the edges, in each edge's reference direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainVector {
    coeffs: Vec<Rational>,
}

impl ChainVector {
    pub fn zero(edges: usize) -> Self {
        ChainVector { coeffs: vec![Rational::zero(); edges] }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        ChainVector { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        ChainVector { coeffs: coeffs.iter().map(|&c| crate::rational::int(c)).collect() }
    }

    /// Sum of the signed edges of a walk.
    pub fn from_tokens(edges: usize, tokens: &[Token]) -> Self {
        let mut chain = Self::zero(edges);
        for t in tokens {
            if t.sign > 0 {
                chain.coeffs[t.edge] += Rational::one();
            } else {
                chain.coeffs[t.edge] -= Rational::one();
            }
        }
        chain
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn get(&self, edge: usize) -> &Rational {
        &self.coeffs[edge]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&e| !self.coeffs[e].is_zero()).collect()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ChainVector { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// `Σ_e w_e |x_e|`.
    pub fn weighted_mass(&self, weights: &[Rational]) -> Rational {
        self.coeffs.iter().zip(weights).map(|(c, w)| c.abs() * w).sum()
    }

    /// True when every coefficient lies in {-1, 0, 1}.
    pub fn is_unit(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero() || c.abs().is_one())
    }
}

impl Add for &ChainVector {
    type Output = ChainVector;
    fn add(self, rhs: &ChainVector) -> ChainVector {
        ChainVector { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ChainVector {
    type Output = ChainVector;
    fn sub(self, rhs: &ChainVector) -> ChainVector {
        ChainVector { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &ChainVector {
    type Output = ChainVector;
    fn neg(self) -> ChainVector {
        ChainVector { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}
