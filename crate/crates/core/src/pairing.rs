//! Intersection form on the first homology of an oriented surface.
//!
//! The second cycle is pushed off its edges to one side; crossings with the
//! first cycle then only happen inside small disks around the vertices,
//! where they are counted from the rotation system alone.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::chain::ChainVector;
use crate::error::{Error, Result};
use crate::homology::{homology_h1, HomologyBasis};
use crate::linalg;
use crate::rational::Rational;
use crate::surface::{End, SurfaceComplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionForm {
    pub matrix: Vec<Vec<i64>>,
}

impl IntersectionForm {
    pub fn as_rational(&self) -> linalg::Matrix {
        self.matrix.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect()
    }

    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let m = self.as_rational();
        crate::rational::dot(x, &linalg::mul_vec(&m, y))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.matrix.len();
        (0..n).all(|i| (0..n).all(|j| self.matrix[i][j] == -self.matrix[j][i]))
    }

    pub fn determinant(&self) -> Rational {
        linalg::determinant(&self.as_rational())
    }
}

/// Signed crossing count of `x` with `y` pushed off to the right of its
/// edges. Bilinear, and for cycles it depends only on homology classes.
fn crossings(surface: &SurfaceComplex, x: &ChainVector, y: &ChainVector) -> Rational {
    let mut total = Rational::zero();
    for v in 0..surface.vertex_count() {
        let rot = surface.rotation(v);
        let k = rot.len();
        // Flow of y leaving the disk, bucketed by the sector its strand
        // exits through: sector i lies just before dart i.
        let mut sector = vec![Rational::zero(); k];
        for (i, d) in rot.iter().enumerate() {
            let flow = d.outflow(y);
            if flow.is_zero() {
                continue;
            }
            let s = match d.end {
                End::Tail => i,
                End::Head => (i + 1) % k,
            };
            sector[s] += flow;
        }
        let mut partial = Rational::zero();
        for (i, d) in rot.iter().enumerate() {
            partial += &sector[i];
            let fx = d.outflow(x);
            if !fx.is_zero() {
                total -= fx * &partial;
            }
        }
    }
    total
}

/// Algebraic intersection number of two cycles on an orientable surface.
pub fn int_number(surface: &SurfaceComplex, x: &ChainVector, y: &ChainVector) -> Result<BigInt> {
    if !surface.is_orientable() {
        return Err(Error::NotOrientable);
    }
    if !surface.is_cycle(x) || !surface.is_cycle(y) {
        return Err(Error::NotACycle);
    }
    let value = crossings(surface, x, y);
    debug_assert!(value.is_integer() || !x.is_unit());
    Ok(value.to_integer())
}

/// Rational-valued version of [`int_number`] for rational cycles.
pub fn int_rational(surface: &SurfaceComplex, x: &ChainVector, y: &ChainVector) -> Result<Rational> {
    if !surface.is_orientable() {
        return Err(Error::NotOrientable);
    }
    if !surface.is_cycle(x) || !surface.is_cycle(y) {
        return Err(Error::NotACycle);
    }
    Ok(crossings(surface, x, y))
}

pub fn intersection_form_in(surface: &SurfaceComplex, basis: &HomologyBasis) -> Result<IntersectionForm> {
    if !surface.is_orientable() {
        return Err(Error::NotOrientable);
    }
    let cycles = &basis.basis_cycles;
    let matrix = cycles
        .iter()
        .map(|x| {
            cycles
                .iter()
                .map(|y| crossings(surface, x, y).to_integer().to_i64().expect("small intersection number"))
                .collect()
        })
        .collect();
    Ok(IntersectionForm { matrix })
}

/// Matrix of the intersection form in the homology basis of `surface`.
pub fn intersection_form(surface: &SurfaceComplex) -> Result<IntersectionForm> {
    intersection_form_in(surface, &homology_h1(surface))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse_surface;
    use num_traits::Signed;

    #[test]
    fn torus_form() {
        let t = parse_surface("face a b -a -b").unwrap();
        let f = intersection_form(&t).unwrap();
        assert_eq!(f.matrix, vec![vec![0, 1], vec![-1, 0]]);
    }

    #[test]
    fn torus_numbers() {
        let t = parse_surface("face a b -a -b").unwrap();
        let c = |v: &[i64]| ChainVector::from_ints(v);
        assert_eq!(int_number(&t, &c(&[1, 0]), &c(&[0, 1])).unwrap(), BigInt::from(1));
        assert_eq!(int_number(&t, &c(&[1, 0]), &c(&[1, 0])).unwrap(), BigInt::from(0));
        // 2a+b against a-b: 2·(-1)·Int(a,b) + 1·1·Int(b,a) = -2 - 1.
        assert_eq!(int_number(&t, &c(&[2, 1]), &c(&[1, -1])).unwrap(), BigInt::from(-3));
    }

    #[test]
    fn genus_two_blocks() {
        let s = parse_surface("face a b -a -b c d -c -d").unwrap();
        let f = intersection_form(&s).unwrap();
        assert_eq!(f.matrix, vec![vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]]);
    }

    #[test]
    fn klein_rejected() {
        let k = parse_surface("face a b a -b").unwrap();
        assert_eq!(intersection_form(&k), Err(Error::NotOrientable));
    }

    #[test]
    fn unimodular_and_skew() {
        for text in ["face a b c -a -b -c", "face a b -d\nface d -a -b", "face a b c d -a -b -c -d"] {
            let s = parse_surface(text).unwrap();
            let f = intersection_form(&s).unwrap();
            assert!(f.is_skew_symmetric(), "{text}");
            assert_eq!(f.determinant().abs(), Rational::from_integer(1.into()), "{text}");
        }
    }
}
