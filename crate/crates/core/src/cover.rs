//! Orientation double cover of a non-orientable surface.
//!
//! Each face `f` gets two copies, `(f, +)` read as written and `(f, −)` read
//! backwards. An edge `e` whose two occurrences carry exponents `ε₁, ε₂`
//! lifts to `e.0`, joining `(f₁, +)` to `(f₂, −ε₁ε₂)`, and `e.1`, joining
//! `(f₁, −)` to `(f₂, ε₁ε₂)`. The deck involution swaps the two copies of
//! every cell and keeps edge directions.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::chain::{ChainVector, Token};
use crate::error::{Error, Result};
use crate::homology::{homology_h1, HomologyBasis};
use crate::linalg::{self, Matrix};
use crate::pairing::intersection_form_in;
use crate::rational::Rational;
use crate::surface::{resolve_multicurve, SurfaceComplex};

#[derive(Clone, Debug)]
pub struct DoubleCover {
    pub base: SurfaceComplex,
    pub total: SurfaceComplex,
    pub base_homology: HomologyBasis,
    pub total_homology: HomologyBasis,
    /// Total edge → base edge (directions agree).
    pub edge_projection: Vec<usize>,
    pub edge_involution: Vec<usize>,
    pub face_projection: Vec<usize>,
    pub face_involution: Vec<usize>,
    pub vertex_projection: Vec<usize>,
    pub vertex_involution: Vec<usize>,
    /// Action of the involution on `H₁(total, ℚ)` in total coordinates.
    pub i_star: Matrix,
    /// `H₁(total, ℚ) → H₁(base, ℚ)`, `b₁(base) × b₁(total)`.
    pub pi_star: Matrix,
    pub e1_basis: Vec<Vec<Rational>>,
    pub em1_basis: Vec<Vec<Rational>>,
}

/// Builds the orientation cover. The base must be non-orientable.
pub fn orientation_cover(base: &SurfaceComplex) -> Result<DoubleCover> {
    if base.is_orientable() {
        return Err(Error::BaseOrientable);
    }
    let e_count = base.edge_count();
    let mut occurrences: Vec<Vec<(usize, usize, i8)>> = vec![Vec::new(); e_count];
    for (f, word) in base.faces().iter().enumerate() {
        for (i, t) in word.iter().enumerate() {
            occurrences[t.edge].push((f, i, t.sign));
        }
    }
    // Lift of the occurrence (f, i) of edge e inside copy (f, s).
    let lift = |e: usize, f: usize, i: usize, s: i8| -> usize {
        let occ = &occurrences[e];
        let k = if (occ[0].0, occ[0].1) == (f, i) {
            usize::from(s < 0)
        } else {
            let paired = -occ[0].2 * occ[1].2;
            usize::from(s != paired)
        };
        2 * e + k
    };

    let mut faces = Vec::with_capacity(2 * base.face_count());
    for (f, word) in base.faces().iter().enumerate() {
        let plus: Vec<Token> =
            word.iter().enumerate().map(|(i, t)| Token::new(lift(t.edge, f, i, 1), t.sign)).collect();
        let minus: Vec<Token> =
            word.iter().enumerate().rev().map(|(i, t)| Token::new(lift(t.edge, f, i, -1), -t.sign)).collect();
        faces.push(plus);
        faces.push(minus);
    }
    let labels: Vec<String> = (0..2 * e_count).map(|k| format!("{}.{}", base.label(k / 2), k % 2)).collect();
    let weights: Vec<Rational> = (0..2 * e_count).map(|k| base.weight(k / 2).clone()).collect();
    let total = SurfaceComplex::new(format!("{}_cover", base.name()), labels, weights, faces)?;

    let edge_projection: Vec<usize> = (0..2 * e_count).map(|k| k / 2).collect();
    let edge_involution: Vec<usize> = (0..2 * e_count).map(|k| k ^ 1).collect();
    let face_projection: Vec<usize> = (0..total.face_count()).map(|k| k / 2).collect();
    let face_involution: Vec<usize> = (0..total.face_count()).map(|k| k ^ 1).collect();
    let mut vertex_projection = vec![usize::MAX; total.vertex_count()];
    let mut vertex_involution = vec![usize::MAX; total.vertex_count()];
    for (f, word) in base.faces().iter().enumerate() {
        let n = word.len();
        for j in 0..n {
            let up = total.corner_vertex(2 * f, j);
            let down = total.corner_vertex(2 * f + 1, (n - j) % n);
            let v = base.corner_vertex(f, j);
            vertex_projection[up] = v;
            vertex_projection[down] = v;
            vertex_involution[up] = down;
            vertex_involution[down] = up;
        }
    }

    let base_homology = homology_h1(base);
    let total_homology = homology_h1(&total);
    let bt = total_homology.free_rank;
    let mut i_star = linalg::zeros(bt, bt);
    let mut pi_star = linalg::zeros(base_homology.free_rank, bt);
    for (j, z) in total_homology.basis_cycles.iter().enumerate() {
        let swapped = ChainVector::from_coeffs((0..2 * e_count).map(|k| z.get(k ^ 1).clone()).collect());
        for (i, x) in total_homology.coordinates(&swapped).into_iter().enumerate() {
            i_star[i][j] = x;
        }
        let pushed = project_chain(base, &edge_projection, z);
        for (i, x) in base_homology.coordinates(&pushed).into_iter().enumerate() {
            pi_star[i][j] = x;
        }
    }
    let shifted = |s: i64| -> Matrix {
        let mut m = i_star.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= Rational::from_integer(s.into());
        }
        m
    };
    let e1_basis = linalg::kernel(&shifted(1), bt);
    let em1_basis = linalg::kernel(&shifted(-1), bt);

    Ok(DoubleCover {
        base: base.clone(),
        total,
        base_homology,
        total_homology,
        edge_projection,
        edge_involution,
        face_projection,
        face_involution,
        vertex_projection,
        vertex_involution,
        i_star,
        pi_star,
        e1_basis,
        em1_basis,
    })
}

fn project_chain(base: &SurfaceComplex, edge_projection: &[usize], chain: &ChainVector) -> ChainVector {
    let mut out = vec![Rational::zero(); base.edge_count()];
    for (k, c) in chain.coeffs().iter().enumerate() {
        out[edge_projection[k]] += c;
    }
    ChainVector::from_coeffs(out)
}

impl DoubleCover {
    pub fn eigenspaces(&self) -> (&[Vec<Rational>], &[Vec<Rational>]) {
        (&self.e1_basis, &self.em1_basis)
    }

    /// `π⋆` applied to a class of the total space.
    pub fn pushforward(&self, class: &[Rational]) -> Result<Vec<Rational>> {
        let bt = self.total_homology.free_rank;
        if class.len() != bt {
            return Err(Error::DimensionMismatch { expected: bt, got: class.len() });
        }
        Ok(linalg::mul_vec(&self.pi_star, class))
    }

    pub fn involution_class(&self, class: &[Rational]) -> Vec<Rational> {
        linalg::mul_vec(&self.i_star, class)
    }

    /// Pushes a chain on the total space down to the base.
    pub fn project(&self, chain: &ChainVector) -> ChainVector {
        project_chain(&self.base, &self.edge_projection, chain)
    }

    /// Sum of both lifts of a base chain.
    pub fn transfer(&self, chain: &ChainVector) -> ChainVector {
        ChainVector::from_coeffs((0..self.total.edge_count()).map(|k| chain.get(k / 2).clone()).collect())
    }

    /// Preimage of a closed walk, split into its connected components.
    /// A single component (of twice the length) means the walk reverses
    /// orientation.
    pub fn lift_cycle(&self, walk: &[Token]) -> Result<Vec<Vec<Token>>> {
        if !self.base.is_closed_walk(walk) {
            return Err(Error::NotAClosedWalk);
        }
        let start = self.base.source(walk[0]);
        let first = (0..self.total.vertex_count()).find(|&v| self.vertex_projection[v] == start).expect("vertex lifts");
        let step = |at: usize, t: Token| -> (usize, Token) {
            let lifted = [2 * t.edge, 2 * t.edge + 1]
                .into_iter()
                .map(|k| Token::new(k, t.sign))
                .find(|&l| self.total.source(l) == at)
                .expect("unique lift at each vertex");
            (self.total.target(lifted), lifted)
        };
        let lift_from = |v0: usize, rounds: usize| -> (usize, Vec<Token>) {
            let mut at = v0;
            let mut out = Vec::with_capacity(walk.len() * rounds);
            for _ in 0..rounds {
                for &t in walk {
                    let (next, l) = step(at, t);
                    out.push(l);
                    at = next;
                }
            }
            (at, out)
        };
        let (end, component) = lift_from(first, 1);
        if end == first {
            let (_, other) = lift_from(self.vertex_involution[first], 1);
            Ok(vec![component, other])
        } else {
            let (end, whole) = lift_from(first, 2);
            debug_assert_eq!(end, first);
            Ok(vec![whole])
        }
    }

    /// True when both eigenspaces are isotropic for the intersection form
    /// of the cover and each has dimension `b₁(total)/2`.
    pub fn check_lagrangian(&self) -> Result<bool> {
        let form = intersection_form_in(&self.total, &self.total_homology)?;
        let half = self.total_homology.free_rank;
        if self.e1_basis.len() * 2 != half || self.em1_basis.len() * 2 != half {
            return Ok(false);
        }
        let isotropic = |basis: &[Vec<Rational>]| basis.iter().all(|x| basis.iter().all(|y| form.pair(x, y).is_zero()));
        Ok(isotropic(&self.e1_basis) && isotropic(&self.em1_basis))
    }

    /// Audit text: the total surface followed by `map` lines giving the
    /// projection and involution of every cell.
    pub fn to_text(&self) -> String {
        let mut out = self.total.to_text();
        for k in 0..self.total.edge_count() {
            out.push_str(&format!(
                "map edge {} -> {} swap {}\n",
                self.total.label(k),
                self.base.label(self.edge_projection[k]),
                self.total.label(self.edge_involution[k])
            ));
        }
        for k in 0..self.total.face_count() {
            out.push_str(&format!("map face {} -> {} swap {}\n", k, self.face_projection[k], self.face_involution[k]));
        }
        for k in 0..self.total.vertex_count() {
            out.push_str(&format!(
                "map vertex {} -> {} swap {}\n",
                k, self.vertex_projection[k], self.vertex_involution[k]
            ));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sidedness {
    OneSided,
    TwoSided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CurveType {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveClassification {
    pub sidedness: Sidedness,
    #[serde(rename = "type")]
    pub curve_type: CurveType,
}

/// Sidedness and type I/II of a simple closed curve on a non-orientable surface.
pub fn classify_curve(cover: &DoubleCover, curve: &ChainVector) -> Result<CurveClassification> {
    let base = &cover.base;
    if curve.len() != base.edge_count() {
        return Err(Error::DimensionMismatch { expected: base.edge_count(), got: curve.len() });
    }
    if !curve.is_unit() || curve.is_zero() || !base.is_cycle(curve) {
        return Err(Error::NotSimple);
    }
    let resolution = resolve_multicurve(base, std::slice::from_ref(curve))?.ok_or(Error::NotSimple)?;
    let lifts = cover.lift_cycle(&resolution.walks[0])?;
    if lifts.len() == 1 {
        return Ok(CurveClassification { sidedness: Sidedness::OneSided, curve_type: CurveType::I });
    }
    let classes: Vec<Vec<Rational>> = lifts
        .iter()
        .map(|w| cover.total_homology.coordinates(&ChainVector::from_tokens(cover.total.edge_count(), w)))
        .collect();
    let curve_type = if classes[0] == classes[1] { CurveType::I } else { CurveType::II };
    Ok(CurveClassification { sidedness: Sidedness::TwoSided, curve_type })
}

/// Convenience wrapper that builds the cover first.
pub fn classify_curve_on(surface: &SurfaceComplex, curve: &ChainVector) -> Result<CurveClassification> {
    let cover = orientation_cover(surface)?;
    classify_curve(&cover, curve)
}

/// Rank of `π⋆` restricted to `E₁`.
pub fn pushforward_rank_on_e1(cover: &DoubleCover) -> usize {
    let images: Vec<Vec<Rational>> = cover.e1_basis.iter().map(|v| linalg::mul_vec(&cover.pi_star, v)).collect();
    linalg::rank_of_vectors(&images, cover.base_homology.free_rank)
}

/// `I⋆² = id` as exact matrices.
pub fn involution_squares_to_identity(cover: &DoubleCover) -> bool {
    let n = cover.i_star.len();
    let sq = linalg::mul(&cover.i_star, &cover.i_star, n);
    (0..n).all(|i| (0..n).all(|j| sq[i][j] == if i == j { Rational::one() } else { Rational::zero() }))
}
