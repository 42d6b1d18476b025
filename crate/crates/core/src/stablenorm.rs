//! The stable norm of a weighted surface and the geometry of its unit ball.
//!
//! The norm of a class `h` is `min Σ_e w_e |x_e|` over real cycles `x` with
//! `[x] = h`, solved exactly as a linear program. Independently, the unit
//! ball is the symmetric convex hull of `[γ]/w(γ)` over the elementary
//! circuits `γ` of the 1-skeleton. The two routes are cross-checked by the
//! test suites.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::chain::{ChainVector, Token};
use crate::circuits::{circuit_chain, directed_circuits, DEFAULT_CIRCUIT_CAP};
use crate::error::{Error, Result};
use crate::homology::{homology_h1, HomologyBasis};
use crate::hull::{Polytope, MAX_DIMENSION};
use crate::linalg::Matrix;
use crate::rational::{self, Rational};
use crate::ratlp::{solve_weighted_l1, LinearProgram, LpStatus};
use crate::surface::SurfaceComplex;

/// Norm value with a minimizing cycle and a supporting covector `c`:
/// `⟨c, h⟩ = ‖h‖` and `⟨c, [γ]⟩ ≤ w(γ)` for every cycle `γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormValue {
    pub value: Rational,
    pub minimizer: ChainVector,
    pub covector: Vec<Rational>,
    /// Dual values on all but the last vertex; with `covector` they form a
    /// feasible dual solution.
    pub potential: Vec<Rational>,
}

/// A circuit with a positive weight, one piece of a cycle decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedCircuit {
    pub walk: Vec<Token>,
    pub chain: ChainVector,
    pub weight: Rational,
}

/// Precomputed homology and cycle constraints for repeated norm queries.
#[derive(Clone, Debug)]
pub struct NormContext {
    surface: SurfaceComplex,
    homology: HomologyBasis,
    boundary_rows: Matrix,
}

impl NormContext {
    pub fn new(surface: &SurfaceComplex) -> Self {
        Self::with_homology(surface, homology_h1(surface))
    }

    pub fn with_homology(surface: &SurfaceComplex, homology: HomologyBasis) -> Self {
        let mut boundary_rows = vec![vec![rational::zero(); surface.edge_count()]; surface.vertex_count()];
        for e in 0..surface.edge_count() {
            boundary_rows[surface.head(e)][e] += rational::one();
            boundary_rows[surface.tail(e)][e] -= rational::one();
        }
        // One vertex row is implied by the others.
        boundary_rows.pop();
        NormContext { surface: surface.clone(), homology, boundary_rows }
    }

    pub fn surface(&self) -> &SurfaceComplex {
        &self.surface
    }

    pub fn homology(&self) -> &HomologyBasis {
        &self.homology
    }

    pub fn rank(&self) -> usize {
        self.homology.free_rank
    }

    pub fn class_of(&self, chain: &ChainVector) -> Vec<Rational> {
        self.homology.coordinates(chain)
    }

    fn check_class(&self, class: &[Rational]) -> Result<()> {
        if class.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: class.len() });
        }
        Ok(())
    }

    /// The weighted-ℓ¹ program whose optimum is `‖class‖`.
    pub fn program(&self, class: &[Rational]) -> Result<LinearProgram> {
        self.check_class(class)?;
        let mut rows = self.boundary_rows.clone();
        rows.extend(self.homology.coordinate_map.iter().cloned());
        let mut rhs = vec![rational::zero(); self.boundary_rows.len()];
        rhs.extend(class.iter().cloned());
        LinearProgram::new(self.surface.weights().to_vec(), rows, rhs)
    }

    /// Exact stable norm, an optimal basic cycle and a dual covector.
    pub fn stable_norm(&self, class: &[Rational]) -> Result<NormValue> {
        let lp = self.program(class)?;
        let sol = solve_weighted_l1(&lp);
        if sol.status != LpStatus::Optimal {
            // Every real class has a cycle representative.
            return Err(Error::LpFailed("infeasible"));
        }
        let mut potential = sol.dual;
        let covector = potential.split_off(self.boundary_rows.len());
        Ok(NormValue { value: sol.value, minimizer: ChainVector::from_coeffs(sol.point), covector, potential })
    }

    /// Checks a norm claim without solving anything: `x` is a cycle of class
    /// `h` with mass `value`, and `(potential, covector)` is a dual solution
    /// with `⟨covector, h⟩ = value`, so there is no duality gap.
    pub fn certifies(&self, class: &[Rational], claim: &NormValue) -> bool {
        if class.len() != self.rank()
            || claim.covector.len() != self.rank()
            || claim.potential.len() != self.boundary_rows.len()
            || claim.minimizer.len() != self.surface.edge_count()
        {
            return false;
        }
        if !is_minimizer(self, class, &claim.value, &claim.minimizer) {
            return false;
        }
        if rational::dot(&claim.covector, class) != claim.value {
            return false;
        }
        (0..self.surface.edge_count()).all(|e| {
            let slope: Rational = self
                .boundary_rows
                .iter()
                .zip(&claim.potential)
                .map(|(row, y)| &row[e] * y)
                .chain(self.homology.coordinate_map.iter().zip(&claim.covector).map(|(row, c)| &row[e] * c))
                .sum();
            slope.abs() <= *self.surface.weight(e)
        })
    }

    /// Circuit decomposition of an optimal cycle for `class`.
    pub fn minimizing_cycles(&self, class: &[Rational]) -> Result<Vec<WeightedCircuit>> {
        let norm = self.stable_norm(class)?;
        Ok(decompose_cycle(&self.surface, &norm.minimizer))
    }
}

/// `‖h‖` with a minimizing cycle.
pub fn stable_norm(surface: &SurfaceComplex, class: &[Rational]) -> Result<(Rational, ChainVector)> {
    let n = NormContext::new(surface).stable_norm(class)?;
    Ok((n.value, n.minimizer))
}

pub fn minimizing_cycles(surface: &SurfaceComplex, class: &[Rational]) -> Result<Vec<WeightedCircuit>> {
    NormContext::new(surface).minimizing_cycles(class)
}

/// Splits a rational cycle into elementary circuits traversed along its
/// flow, with positive weights summing back to the cycle. Each step removes
/// the bottleneck edge of one circuit.
pub fn decompose_cycle(surface: &SurfaceComplex, cycle: &ChainVector) -> Vec<WeightedCircuit> {
    debug_assert!(surface.is_cycle(cycle));
    let mut rest = cycle.clone();
    let mut out = Vec::new();
    let leaving = |rest: &ChainVector, v: usize| -> Option<Token> {
        rest.support().into_iter().find_map(|e| {
            let t = Token::new(e, if rest.get(e).is_positive() { 1 } else { -1 });
            (surface.source(t) == v).then_some(t)
        })
    };
    while let Some(&e) = rest.support().first() {
        let first = Token::new(e, if rest.get(e).is_positive() { 1 } else { -1 });
        let mut vertices = vec![surface.source(first)];
        let mut walk = vec![first];
        let mut at = surface.target(first);
        let circuit = loop {
            if let Some(p) = vertices.iter().position(|&v| v == at) {
                break walk.split_off(p);
            }
            vertices.push(at);
            let t = leaving(&rest, at).expect("flow conservation");
            walk.push(t);
            at = surface.target(t);
        };
        let weight = circuit.iter().map(|t| rest.get(t.edge).abs()).min().expect("nonempty circuit");
        let chain = circuit_chain(surface, &circuit);
        rest = &rest - &chain.scale(&weight);
        out.push(WeightedCircuit { walk: circuit, chain, weight });
    }
    out
}

/// Exact unit ball of the stable norm with provenance for each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormBall {
    pub polytope: Polytope,
    /// A circuit `γ` with `[γ]/w(γ)` equal to the vertex, per vertex.
    pub provenance: Vec<Vec<Token>>,
    pub circuit_count: usize,
}

/// Face of the unit ball, cut out by a supporting covector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub covector: Vec<Rational>,
    pub vertices: Vec<usize>,
    pub dimension: usize,
}

/// Outcome of [`NormBall::face_lattice_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLatticeReport {
    pub faces: usize,
    pub symmetric: bool,
    pub extension_pairs: usize,
    pub extension_failures: usize,
}

impl FaceLatticeReport {
    pub fn holds(&self) -> bool {
        self.symmetric && self.extension_failures == 0
    }
}

/// Unit ball as the hull of normalized circuit classes.
pub fn unit_ball(surface: &SurfaceComplex) -> Result<NormBall> {
    unit_ball_with_cap(&NormContext::new(surface), DEFAULT_CIRCUIT_CAP)
}

pub fn unit_ball_with_cap(ctx: &NormContext, cap: usize) -> Result<NormBall> {
    let dim = ctx.rank();
    if dim == 0 {
        return Err(Error::TrivialHomology);
    }
    if dim > MAX_DIMENSION {
        return Err(Error::DimensionTooLarge(dim));
    }
    let surface = ctx.surface();
    let circuits = directed_circuits(surface, cap)?;
    let mut points: Vec<(Vec<Rational>, usize)> = circuits
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let chain = circuit_chain(surface, c);
            let w = surface.mass(&chain);
            let class: Vec<Rational> = ctx.class_of(&chain).iter().map(|x| x / &w).collect();
            (class, i)
        })
        .collect();
    points.sort();
    points.dedup_by(|a, b| a.0 == b.0);
    let coords: Vec<Vec<Rational>> = points.iter().map(|p| p.0.clone()).collect();
    let polytope = Polytope::from_points(&coords, dim)?;
    let provenance = polytope
        .vertices
        .iter()
        .map(|v| {
            let k = points.binary_search_by(|p| p.0.cmp(v)).expect("vertex comes from a circuit");
            circuits[points[k].1].clone()
        })
        .collect();
    Ok(NormBall { polytope, provenance, circuit_count: circuits.len() })
}

impl NormBall {
    pub fn dim(&self) -> usize {
        self.polytope.dim
    }

    /// Gauge of the ball at `h`; equals the stable norm.
    pub fn gauge(&self, class: &[Rational]) -> Rational {
        self.polytope.gauge(class)
    }

    /// `max_v |⟨c, v⟩|` over ball vertices.
    pub fn dual_norm(&self, covector: &[Rational]) -> Result<Rational> {
        if covector.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: covector.len() });
        }
        Ok(self.polytope.vertices.iter().map(|v| rational::dot(covector, v).abs()).fold(rational::zero(), |m, x| {
            if x > m {
                x
            } else {
                m
            }
        }))
    }

    /// The face containing `h` in its relative interior. `h` must have norm 1.
    pub fn flat_of(&self, class: &[Rational]) -> Result<Flat> {
        if class.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: class.len() });
        }
        let g = self.gauge(class);
        if g != rational::one() {
            return Err(Error::NotOnSphere(g.to_string()));
        }
        let tight = self.polytope.tight_facets(class);
        let vertices = self.polytope.common_vertices(&tight);
        let n = Rational::from_integer(tight.len().into());
        let covector = (0..self.dim())
            .map(|k| tight.iter().map(|&f| self.polytope.facets[f][k].clone()).sum::<Rational>() / &n)
            .collect();
        let dimension = self.polytope.affine_dimension(&vertices);
        Ok(Flat { covector, vertices, dimension })
    }

    fn facets_of(&self, face: &[usize]) -> Vec<usize> {
        (0..self.polytope.facets.len())
            .filter(|&f| face.iter().all(|j| self.polytope.incidence[f].binary_search(j).is_ok()))
            .collect()
    }

    /// Faces having `point` in their relative interior, found by scanning
    /// the face lattice: faces containing `point` none of whose proper
    /// subfaces do. For a point of the sphere there is exactly one.
    pub fn faces_with_interior_point(&self, point: &[Rational]) -> Vec<Vec<usize>> {
        if !self.polytope.contains(point) {
            return Vec::new();
        }
        let tight = self.polytope.tight_facets(point);
        let faces = self.polytope.faces();
        let holding: Vec<&Vec<usize>> =
            faces.iter().filter(|f| self.facets_of(f).iter().all(|x| tight.binary_search(x).is_ok())).collect();
        holding
            .iter()
            .filter(|f| !holding.iter().any(|g| g.len() < f.len() && g.iter().all(|j| f.contains(j))))
            .map(|f| (*f).clone())
            .collect()
    }

    /// Checks the face lattice: central symmetry, and for every pair of faces
    /// where the second contains a relative-interior point of the first,
    /// that some proper face contains both.
    pub fn face_lattice_report(&self) -> FaceLatticeReport {
        let faces: Vec<Vec<usize>> = self.polytope.faces().into_iter().collect();
        let facet_sets: Vec<Vec<usize>> = faces.iter().map(|f| self.facets_of(f)).collect();
        let mut pairs = 0;
        let mut failures = 0;
        for f1 in &faces {
            let inner = self.polytope.centroid(f1);
            debug_assert!(self.polytope.contains(&inner));
            let tight = self.polytope.tight_facets(&inner);
            for (f2, needed) in faces.iter().zip(&facet_sets) {
                if needed.iter().all(|f| tight.binary_search(f).is_ok()) {
                    pairs += 1;
                    let mut union: Vec<usize> = f1.iter().chain(f2).copied().collect();
                    union.sort_unstable();
                    union.dedup();
                    if self.polytope.face_closure(&union).is_none() {
                        failures += 1;
                    }
                }
            }
        }
        FaceLatticeReport {
            faces: faces.len(),
            symmetric: self.polytope.is_centrally_symmetric(),
            extension_pairs: pairs,
            extension_failures: failures,
        }
    }

    pub fn to_json(&self, surface: &SurfaceComplex) -> BallJson {
        BallJson {
            dim: self.dim(),
            vertices: self.polytope.vertices.clone(),
            facets: self.polytope.facets.clone(),
            incidence: self.polytope.incidence.clone(),
            provenance: self.provenance.iter().map(|w| walk_labels(surface, w)).collect(),
        }
    }
}

/// A deterministic spread of `count` nonzero rational classes: integer
/// vectors of growing sup-norm, divided by denominators cycling through
/// 1, 2, 3, skipping repeats.
pub fn sample_classes(dim: usize, count: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    let mut radius = 1i64;
    while out.len() < count {
        let side = (2 * radius + 1) as usize;
        let total = side.pow(dim as u32);
        for code in 0..total {
            let mut rest = code;
            let v: Vec<i64> = (0..dim)
                .map(|_| {
                    let d = (rest % side) as i64 - radius;
                    rest /= side;
                    d
                })
                .collect();
            if v.iter().map(|x| x.abs()).max() != Some(radius) {
                continue;
            }
            let q = (out.len() % 3) as i64 + 1;
            let h: Vec<Rational> = v.iter().map(|&x| Rational::new(x.into(), q.into())).collect();
            if out.contains(&h) {
                continue;
            }
            out.push(h);
            if out.len() == count {
                break;
            }
        }
        radius += 1;
    }
    out
}

/// Labels of a walk, negative traversals prefixed with `-`.
pub fn walk_labels(surface: &SurfaceComplex, walk: &[Token]) -> Vec<String> {
    walk.iter()
        .map(|t| {
            let l = surface.label(t.edge);
            if t.sign < 0 {
                format!("-{l}")
            } else {
                l.to_string()
            }
        })
        .collect()
}

/// Serialized unit ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallJson {
    pub dim: usize,
    #[serde(with = "crate::rational::serde_matrix")]
    pub vertices: Vec<Vec<Rational>>,
    #[serde(with = "crate::rational::serde_matrix")]
    pub facets: Vec<Vec<Rational>>,
    pub incidence: Vec<Vec<usize>>,
    pub provenance: Vec<Vec<String>>,
}

/// Ball vertex `[γ]/w(γ)` of a circuit, for cross-checking provenance.
pub fn normalized_class(ctx: &NormContext, walk: &[Token]) -> Vec<Rational> {
    let chain = circuit_chain(ctx.surface(), walk);
    let w = ctx.surface().mass(&chain);
    ctx.class_of(&chain).iter().map(|x| x / &w).collect()
}

/// True when `x` is a cycle of class `class` whose mass is `value`.
pub fn is_minimizer(ctx: &NormContext, class: &[Rational], value: &Rational, x: &ChainVector) -> bool {
    ctx.surface().is_cycle(x) && ctx.class_of(x) == class && ctx.surface().mass(x) == *value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::surface::parse_surface;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn torus_norms() {
        let t = parse_surface("face a b -a -b").unwrap();
        let (val, x) = stable_norm(&t, &v(&[1, 0])).unwrap();
        assert_eq!(val, int(1));
        assert_eq!(x, ChainVector::from_ints(&[1, 0]));
        assert_eq!(stable_norm(&t, &v(&[2, 3])).unwrap().0, int(5));
        let (zero, x0) = stable_norm(&t, &v(&[0, 0])).unwrap();
        assert_eq!(zero, int(0));
        assert!(x0.is_zero());
    }

    #[test]
    fn covector_certifies() {
        let t = parse_surface("face a b c -a -b -c\nweight b 2\nweight c 3/2").unwrap();
        let ctx = NormContext::new(&t);
        let h = vec![frac(3, 2), int(-1)];
        let n = ctx.stable_norm(&h).unwrap();
        assert_eq!(rational::dot(&n.covector, &h), n.value);
        assert!(ctx.certifies(&h, &n));
        let ball = unit_ball(&t).unwrap();
        assert!(ball.dual_norm(&n.covector).unwrap() <= int(1));
        let mut forged = n.clone();
        forged.value += int(1);
        assert!(!ctx.certifies(&h, &forged));
    }

    #[test]
    fn torus_ball() {
        let t = parse_surface("face a b -a -b").unwrap();
        let ball = unit_ball(&t).unwrap();
        assert_eq!(ball.polytope.vertices, vec![v(&[-1, 0]), v(&[0, -1]), v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(ball.dual_norm(&v(&[1, 0])).unwrap(), int(1));
        assert_eq!(ball.dual_norm(&v(&[1, 1])).unwrap(), int(1));
        assert_eq!(ball.dual_norm(&v(&[0, 0])).unwrap(), int(0));
    }

    #[test]
    fn klein_ball_is_segment() {
        let k = parse_surface("face a b a -b").unwrap();
        let ball = unit_ball(&k).unwrap();
        assert_eq!(ball.polytope.vertices, vec![v(&[-1]), v(&[1])]);
        assert_eq!(ball.flat_of(&v(&[1])).unwrap().dimension, 0);
    }

    #[test]
    fn torus_flats() {
        let t = parse_surface("face a b -a -b").unwrap();
        let ball = unit_ball(&t).unwrap();
        assert_eq!(ball.flat_of(&v(&[1, 0])).unwrap().dimension, 0);
        let edge = ball.flat_of(&[frac(1, 2), frac(1, 2)]).unwrap();
        assert_eq!(edge.dimension, 1);
        assert_eq!(edge.vertices.len(), 2);
        assert!(matches!(ball.flat_of(&v(&[1, 1])), Err(Error::NotOnSphere(_))));
    }

    #[test]
    fn genus_two_face_lattice() {
        let g = parse_surface("face a b -a -b c d -c -d").unwrap();
        let ball = unit_ball(&g).unwrap();
        // Cross-polytope in four dimensions: 8 + 24 + 32 + 16 proper faces.
        let report = ball.face_lattice_report();
        assert_eq!(report.faces, 80);
        assert!(report.holds());
        let h = vec![frac(1, 4), frac(-1, 4), frac(1, 4), frac(1, 4)];
        let inner = ball.faces_with_interior_point(&h);
        assert_eq!(inner.len(), 1);
        assert_eq!(inner[0], ball.flat_of(&h).unwrap().vertices);
        assert_eq!(ball.flat_of(&h).unwrap().dimension, 3);
    }

    #[test]
    fn minimizing_cycles_reassemble() {
        let t = parse_surface("face a b -a -b").unwrap();
        let pieces = minimizing_cycles(&t, &v(&[1, 1])).unwrap();
        let total: Rational = pieces.iter().map(|p| &p.weight * t.mass(&p.chain)).sum();
        assert_eq!(total, int(2));
        let single = minimizing_cycles(&t, &v(&[1, 0])).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].weight, int(1));
        assert_eq!(single[0].chain, ChainVector::from_ints(&[1, 0]));
        assert!(minimizing_cycles(&t, &v(&[0, 0])).unwrap().is_empty());
    }

    #[test]
    fn decomposition_of_theta_flow() {
        let s = parse_surface("face a b c -a -b -c").unwrap();
        let cs = directed_circuits(&s, DEFAULT_CIRCUIT_CAP).unwrap();
        let mut x = ChainVector::zero(3);
        for (i, c) in cs.iter().enumerate() {
            x = &x + &circuit_chain(&s, c).scale(&frac(i as i64 + 1, 3));
        }
        assert!(s.is_cycle(&x));
        let parts = decompose_cycle(&s, &x);
        let mut sum = ChainVector::zero(3);
        for p in &parts {
            assert!(p.weight.is_positive());
            sum = &sum + &p.chain.scale(&p.weight);
        }
        assert_eq!(sum, x);
    }

    #[test]
    fn samples_are_distinct_and_nonzero() {
        let s = sample_classes(2, 60);
        assert_eq!(s.len(), 60);
        let mut sorted = s.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 60);
        assert!(s.iter().all(|h| !rational::is_zero_vector(h)));
        assert_eq!(sample_classes(1, 5).len(), 5);
    }

    #[test]
    fn trivial_homology_has_no_ball() {
        let s = parse_surface("face a -a").unwrap();
        assert_eq!(unit_ball(&s), Err(Error::TrivialHomology));
        assert_eq!(stable_norm(&s, &[]).unwrap().0, int(0));
    }
}
