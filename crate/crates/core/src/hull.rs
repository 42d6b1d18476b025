//! Exact polytopes containing the origin in their interior.
//!
//! Vertex and facet enumeration both reduce to one routine: the vertices of
//! `{z : ⟨a_j, z⟩ ≤ 1}`, found with the double description method on the
//! homogenized cone `{(t, z) : t ≥ 0, t − ⟨a_j, z⟩ ≥ 0}`. Facets of
//! `conv(P)` are the vertices of the polar of `P`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Rational};

pub const MAX_DIMENSION: usize = 6;

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<Rational>,
    zero_set: Vec<bool>,
}

fn normalize(mut v: Vec<Rational>) -> Vec<Rational> {
    let scale = if !v[0].is_zero() {
        v[0].clone()
    } else {
        match v.iter().find(|x| !x.is_zero()) {
            Some(x) => x.abs(),
            None => return v,
        }
    };
    for x in v.iter_mut() {
        *x /= &scale;
    }
    v
}

/// Vertices of the bounded polytope `{z ∈ ℚ^dim : ⟨a, z⟩ ≤ 1 for a in constraints}`,
/// sorted lexicographically. The constraint normals must positively span
/// `ℚ^dim`; otherwise the region is unbounded and an error is returned.
pub fn polar_vertices(constraints: &[Vec<Rational>], dim: usize) -> Result<Vec<Vec<Rational>>> {
    if dim == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut normals: Vec<Vec<Rational>> =
        constraints.iter().filter(|a| !rational::is_zero_vector(a)).cloned().collect();
    normals.sort();
    normals.dedup();
    // Homogenized rows over (t, z): t ≥ 0 first, then t − ⟨a, z⟩ ≥ 0.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(normals.len() + 1);
    let mut t_row = vec![rational::zero(); dim + 1];
    t_row[0] = rational::one();
    rows.push(t_row);
    for a in &normals {
        let mut row = vec![rational::one()];
        row.extend(a.iter().map(|x| -x));
        rows.push(row);
    }
    let total = rows.len();

    // Initial simplicial cone from the first independent rows.
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(row.clone());
        if linalg::rank(&trial, dim + 1) == trial.len() {
            basis = trial;
            chosen.push(i);
            if chosen.len() == dim + 1 {
                break;
            }
        }
    }
    if chosen.len() < dim + 1 {
        return Err(Error::LpFailed("unbounded: constraint normals do not span"));
    }
    let inv = linalg::inverse(&basis).expect("independent rows");
    let mut processed = vec![false; total];
    for &i in &chosen {
        processed[i] = true;
    }
    let zero_set_of = |coords: &[Rational], processed: &[bool]| -> Vec<bool> {
        (0..total).map(|i| processed[i] && rational::dot(&rows[i], coords).is_zero()).collect()
    };
    let mut rays: Vec<Ray> = (0..=dim)
        .map(|k| {
            let coords = normalize((0..=dim).map(|r| inv[r][k].clone()).collect());
            Ray { zero_set: zero_set_of(&coords, &processed), coords }
        })
        .collect();

    for i in 0..total {
        if processed[i] {
            continue;
        }
        let values: Vec<Rational> = rays.iter().map(|r| rational::dot(&rows[i], &r.coords)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        processed[i] = true;
        if minus.is_empty() {
            for (k, ray) in rays.iter_mut().enumerate() {
                ray.zero_set[i] = values[k].is_zero();
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &n in &minus {
                let common: Vec<usize> = (0..total).filter(|&j| rays[p].zero_set[j] && rays[n].zero_set[j]).collect();
                if common.len() + 1 < dim {
                    continue;
                }
                let adjacent =
                    (0..rays.len()).filter(|&k| k != p && k != n).all(|k| !common.iter().all(|&j| rays[k].zero_set[j]));
                if !adjacent {
                    continue;
                }
                let coords: Vec<Rational> =
                    rays[n].coords.iter().zip(&rays[p].coords).map(|(x, y)| x * &values[p] - y * &values[n]).collect();
                let coords = normalize(coords);
                let zero_set = zero_set_of(&coords, &processed);
                next.push(Ray { coords, zero_set });
            }
        }
        for (k, ray) in rays.into_iter().enumerate() {
            if !values[k].is_negative() {
                let mut ray = ray;
                ray.zero_set[i] = values[k].is_zero();
                next.push(ray);
            }
        }
        rays = next;
    }

    let mut vertices = Vec::new();
    for ray in rays {
        if !ray.coords[0].is_positive() {
            return Err(Error::LpFailed("unbounded: recession direction present"));
        }
        vertices.push(ray.coords[1..].to_vec());
    }
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}

/// A full-dimensional polytope with the origin in its interior, as both
/// vertices and facet covectors `c` (with `⟨c, x⟩ ≤ 1` on the polytope).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    pub dim: usize,
    pub vertices: Vec<Vec<Rational>>,
    pub facets: Vec<Vec<Rational>>,
    /// For each facet, the indices of the vertices lying on it.
    pub incidence: Vec<Vec<usize>>,
}

impl Polytope {
    /// Convex hull of `points`, whose hull must contain the origin in its interior.
    pub fn from_points(points: &[Vec<Rational>], dim: usize) -> Result<Self> {
        if dim > MAX_DIMENSION {
            return Err(Error::DimensionTooLarge(dim));
        }
        let facets = polar_vertices(points, dim)?;
        let mut candidates: Vec<Vec<Rational>> = points.to_vec();
        candidates.sort();
        candidates.dedup();
        let vertices: Vec<Vec<Rational>> = candidates
            .into_iter()
            .filter(|p| {
                let tight: Vec<Vec<Rational>> =
                    facets.iter().filter(|c| rational::dot(c, p).is_one()).cloned().collect();
                linalg::rank(&tight, dim) == dim
            })
            .collect();
        Ok(Self::assemble(dim, vertices, facets))
    }

    /// The polytope `{x : ⟨c, x⟩ ≤ 1}` for the given covectors.
    pub fn from_covectors(covectors: &[Vec<Rational>], dim: usize) -> Result<Self> {
        if dim > MAX_DIMENSION {
            return Err(Error::DimensionTooLarge(dim));
        }
        let vertices = polar_vertices(covectors, dim)?;
        let facets = polar_vertices(&vertices, dim)?;
        Ok(Self::assemble(dim, vertices, facets))
    }

    fn assemble(dim: usize, vertices: Vec<Vec<Rational>>, facets: Vec<Vec<Rational>>) -> Self {
        let incidence = facets
            .iter()
            .map(|c| (0..vertices.len()).filter(|&j| rational::dot(c, &vertices[j]).is_one()).collect())
            .collect();
        Polytope { dim, vertices, facets, incidence }
    }

    /// Minkowski gauge `inf {λ ≥ 0 : x ∈ λP}`.
    pub fn gauge(&self, x: &[Rational]) -> Rational {
        self.facets.iter().map(|c| rational::dot(c, x)).fold(rational::zero(), |m, v| if v > m { v } else { m })
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.gauge(x) <= rational::one()
    }

    /// Facets whose hyperplane passes through `x`.
    pub fn tight_facets(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| rational::dot(&self.facets[i], x).is_one()).collect()
    }

    /// Vertices lying on every listed facet.
    pub fn common_vertices(&self, facets: &[usize]) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|j| facets.iter().all(|&f| self.incidence[f].binary_search(j).is_ok()))
            .collect()
    }

    /// Smallest face containing the given vertices, or `None` when only the
    /// whole polytope does.
    pub fn face_closure(&self, vertex_set: &[usize]) -> Option<Vec<usize>> {
        let facets: Vec<usize> = (0..self.facets.len())
            .filter(|&f| vertex_set.iter().all(|j| self.incidence[f].binary_search(j).is_ok()))
            .collect();
        if facets.is_empty() {
            None
        } else {
            Some(self.common_vertices(&facets))
        }
    }

    /// All nonempty proper faces as sorted vertex-index sets.
    pub fn faces(&self) -> BTreeSet<Vec<usize>> {
        let mut faces: BTreeSet<Vec<usize>> = self.incidence.iter().cloned().collect();
        let mut frontier: Vec<Vec<usize>> = faces.iter().cloned().collect();
        while let Some(face) = frontier.pop() {
            for facet in &self.incidence {
                let meet: Vec<usize> = face.iter().copied().filter(|j| facet.binary_search(j).is_ok()).collect();
                if !meet.is_empty() && faces.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        faces
    }

    /// Affine dimension of a set of vertices.
    pub fn affine_dimension(&self, vertex_set: &[usize]) -> usize {
        let Some((&first, rest)) = vertex_set.split_first() else {
            return 0;
        };
        let diffs: Vec<Vec<Rational>> = rest
            .iter()
            .map(|&j| self.vertices[j].iter().zip(&self.vertices[first]).map(|(a, b)| a - b).collect())
            .collect();
        linalg::rank(&diffs, self.dim)
    }

    pub fn centroid(&self, vertex_set: &[usize]) -> Vec<Rational> {
        let n = Rational::from_integer(vertex_set.len().into());
        (0..self.dim).map(|k| vertex_set.iter().map(|&j| self.vertices[j][k].clone()).sum::<Rational>() / &n).collect()
    }

    /// True when the vertex set equals its own negation.
    pub fn is_centrally_symmetric(&self) -> bool {
        self.vertices.iter().all(|v| {
            let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
            self.vertices.binary_search(&neg).is_ok()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn cross_polytope_facets_are_cube_vertices() {
        let p = Polytope::from_points(&pts(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]), 2).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.facets, pts(&[&[-1, -1], &[-1, 1], &[1, -1], &[1, 1]]));
        for inc in &p.incidence {
            assert_eq!(inc.len(), 2);
        }
        assert_eq!(p.gauge(&[int(2), int(3)]), int(5));
    }

    #[test]
    fn interior_and_boundary_points_dropped() {
        let mut points = pts(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        points.push(vec![frac(1, 2), frac(1, 2)]);
        points.push(vec![frac(1, 4), int(0)]);
        let p = Polytope::from_points(&points, 2).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert!(p.is_centrally_symmetric());
    }

    #[test]
    fn hexagon_and_faces() {
        let p = Polytope::from_points(&pts(&[&[1, 0], &[0, 1], &[1, 1], &[-1, 0], &[0, -1], &[-1, -1]]), 2).unwrap();
        assert_eq!(p.vertices.len(), 6);
        assert_eq!(p.facets.len(), 6);
        assert_eq!(p.faces().len(), 12);
    }

    #[test]
    fn three_dimensional_octahedron_and_cube() {
        let oct = Polytope::from_points(
            &pts(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]]),
            3,
        )
        .unwrap();
        assert_eq!(oct.facets.len(), 8);
        let cube = Polytope::from_covectors(&oct.vertices, 3).unwrap();
        assert_eq!(cube.vertices.len(), 8);
        assert_eq!(cube.facets.len(), 6);
        // 6 facets + 12 edges + 8 vertices.
        assert_eq!(cube.faces().len(), 26);
    }

    #[test]
    fn segment() {
        let p = Polytope::from_points(&pts(&[&[1], &[-1], &[0]]), 1).unwrap();
        assert_eq!(p.vertices, pts(&[&[-1], &[1]]));
        assert_eq!(p.facets, pts(&[&[-1], &[1]]));
    }

    #[test]
    fn unbounded_rejected() {
        assert!(polar_vertices(&pts(&[&[1, 0], &[-1, 0]]), 2).is_err());
    }
}
