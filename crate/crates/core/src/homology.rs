//! Cellular chain complex and first homology over ℤ and ℚ.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::chain::ChainVector;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::Rational;
use crate::snf::{smith_normal_form, IntMatrix};
use crate::surface::SurfaceComplex;

/// Integer matrices of `∂₂ : C₂ → C₁` (edges × faces) and
/// `∂₁ : C₁ → C₀` (vertices × edges).
pub fn boundary_matrices(surface: &SurfaceComplex) -> (IntMatrix, IntMatrix) {
    let (v, e, f) = (surface.vertex_count(), surface.edge_count(), surface.face_count());
    let mut d2 = vec![vec![BigInt::zero(); f]; e];
    for (j, word) in surface.faces().iter().enumerate() {
        for t in word {
            d2[t.edge][j] += BigInt::from(t.sign);
        }
    }
    let mut d1 = vec![vec![BigInt::zero(); e]; v];
    for edge in 0..e {
        d1[surface.head(edge)][edge] += BigInt::one();
        d1[surface.tail(edge)][edge] -= BigInt::one();
    }
    (d2, d1)
}

/// A fixed basis of `H₁(M, ℤ)/torsion` with coordinates for cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyBasis {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
    #[serde(skip)]
    pub basis_cycles: Vec<ChainVector>,
    /// `free_rank × edges`; applied to a cycle it gives the coordinates of
    /// its real class. Vanishes on boundaries and torsion cycles.
    #[serde(skip)]
    pub coordinate_map: Matrix,
}

impl HomologyBasis {
    /// Coordinates of any chain under the coordinate map. Meaningful only for cycles.
    pub fn coordinates(&self, chain: &ChainVector) -> Vec<Rational> {
        linalg::mul_vec(&self.coordinate_map, chain.coeffs())
    }
}

fn to_rational(m: &IntMatrix) -> Matrix {
    m.iter().map(|row| row.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect()
}

/// Homology from two Smith normal forms: one of `∂₁` to get an integral basis
/// of the cycle lattice, one of `∂₂` written in that basis.
pub fn homology_h1(surface: &SurfaceComplex) -> HomologyBasis {
    let (d2, d1) = boundary_matrices(surface);
    let (v, e, f) = (surface.vertex_count(), surface.edge_count(), surface.face_count());

    let s1 = smith_normal_form(&d1, v, e);
    let r1 = s1.rank;
    let z = e - r1;
    // Columns r1.. of the right transform span ker ∂₁ over ℤ.
    let kernel: IntMatrix = (0..e).map(|row| s1.right[row][r1..].to_vec()).collect();
    // ∂₂ = kernel · a, with a = (right⁻¹ ∂₂)[r1..].
    let a: IntMatrix = (r1..e)
        .map(|row| (0..f).map(|col| (0..e).map(|k| &s1.right_inv[row][k] * &d2[k][col]).sum()).collect())
        .collect();

    let s2 = smith_normal_form(&a, z, f);
    let r2 = s2.rank;
    let torsion = s2
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().expect("torsion coefficient fits in u64"))
        .collect();
    let free_rank = z - r2;

    let basis_cycles = (r2..z)
        .map(|col| {
            let coeffs = (0..e)
                .map(|row| {
                    let x: BigInt = (0..z).map(|k| &kernel[row][k] * &s2.left_inv[k][col]).sum();
                    Rational::from_integer(x)
                })
                .collect();
            ChainVector::from_coeffs(coeffs)
        })
        .collect();

    let left: Matrix = to_rational(&s2.left[r2..].to_vec());
    let proj: Matrix = to_rational(&s1.right_inv[r1..].to_vec());
    let coordinate_map = if z == 0 { Vec::new() } else { linalg::mul(&left, &proj, e) };

    HomologyBasis { free_rank, torsion, basis_cycles, coordinate_map }
}

/// Real homology class of a cycle in the fixed basis.
pub fn class_of_cycle(surface: &SurfaceComplex, basis: &HomologyBasis, chain: &ChainVector) -> Result<Vec<Rational>> {
    if chain.len() != surface.edge_count() {
        return Err(Error::DimensionMismatch { expected: surface.edge_count(), got: chain.len() });
    }
    if !surface.is_cycle(chain) {
        return Err(Error::NotACycle);
    }
    Ok(basis.coordinates(chain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::surface::parse_surface;

    fn ints(m: &IntMatrix) -> Vec<Vec<i64>> {
        m.iter().map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect()).collect()
    }

    #[test]
    fn boundary_examples() {
        let t = parse_surface("face a b -a -b").unwrap();
        let (d2, d1) = boundary_matrices(&t);
        assert_eq!(ints(&d2), vec![vec![0], vec![0]]);
        assert_eq!(ints(&d1), vec![vec![0, 0]]);
        let k = parse_surface("face a b a -b").unwrap();
        let (d2, d1) = boundary_matrices(&k);
        assert_eq!(ints(&d2), vec![vec![2], vec![0]]);
        assert_eq!(ints(&d1), vec![vec![0, 0]]);
        let p = parse_surface("face a a").unwrap();
        assert_eq!(ints(&boundary_matrices(&p).0), vec![vec![2]]);
    }

    #[test]
    fn homology_examples() {
        let t = homology_h1(&parse_surface("face a b -a -b").unwrap());
        assert_eq!((t.free_rank, t.torsion.clone()), (2, vec![]));
        let k = homology_h1(&parse_surface("face a b a -b").unwrap());
        assert_eq!((k.free_rank, k.torsion.clone()), (1, vec![2]));
        let s = homology_h1(&parse_surface("face a b -a -b c c").unwrap());
        assert_eq!((s.free_rank, s.torsion.clone()), (2, vec![2]));
        let sphere = homology_h1(&parse_surface("face a -a").unwrap());
        assert_eq!((sphere.free_rank, sphere.torsion.clone()), (0, vec![]));
    }

    #[test]
    fn class_examples() {
        let t = parse_surface("face a b -a -b").unwrap();
        let hb = homology_h1(&t);
        assert_eq!(class_of_cycle(&t, &hb, &ChainVector::from_ints(&[1, 0])).unwrap(), vec![int(1), int(0)]);
        let k = parse_surface("face a b a -b").unwrap();
        let hk = homology_h1(&k);
        assert_eq!(class_of_cycle(&k, &hk, &ChainVector::from_ints(&[1, 0])).unwrap(), vec![int(0)]);
        assert_eq!(class_of_cycle(&k, &hk, &ChainVector::from_ints(&[0, 3])).unwrap(), vec![int(3)]);
        let s = parse_surface("face a b c\nface -c -b -a").unwrap();
        let hs = homology_h1(&s);
        assert_eq!(class_of_cycle(&s, &hs, &ChainVector::from_ints(&[1, 0, 0])), Err(Error::NotACycle));
    }

    #[test]
    fn basis_cycles_are_unit_coordinates() {
        for text in [
            "face a b -a -b c d -c -d",
            "face a b c -a -b -c",
            "face a b -a -b c c d d",
            "face x x p y y q z z r\nface -r -q -p",
        ] {
            let s = parse_surface(text).unwrap();
            let hb = homology_h1(&s);
            assert_eq!(hb.basis_cycles.len(), hb.free_rank);
            for (i, c) in hb.basis_cycles.iter().enumerate() {
                assert!(s.is_cycle(c));
                let coords = hb.coordinates(c);
                for (j, x) in coords.iter().enumerate() {
                    assert_eq!(*x, if i == j { int(1) } else { int(0) });
                }
            }
            // Face boundaries vanish.
            let (d2, _) = boundary_matrices(&s);
            for col in 0..s.face_count() {
                let chain =
                    ChainVector::from_coeffs(d2.iter().map(|r| Rational::from_integer(r[col].clone())).collect());
                assert!(hb.coordinates(&chain).iter().all(Zero::is_zero));
            }
        }
    }
}
