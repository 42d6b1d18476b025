//! Embeddedness of edge cycles, decided on the rotation system.
//!
//! A curve running in the 1-skeleton is pushed off each vertex by pairing its
//! arriving and departing darts with chords inside a small disk around the
//! vertex. The curve is simple when the chords can be chosen pairwise
//! non-crossing and the resulting walk closes up into a single loop.

use num_traits::{One, Signed, Zero};

use crate::chain::{ChainVector, Token};
use crate::error::{Error, Result};

use super::{Dart, SurfaceComplex};

const COMBINATION_BUDGET: usize = 1 << 20;

/// Chords pairing port indices at one vertex.
type Matching = Vec<(usize, usize)>;

/// A crossing-free resolution of a family of curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    /// For each curve, its edges in traversal order.
    pub walks: Vec<Vec<Token>>,
}

#[derive(Clone, Copy, Debug)]
struct Port {
    dart: Dart,
    curve: usize,
    outgoing: bool,
}

/// Non-crossing perfect matchings of `ports` (in rotation order) pairing an
/// incoming with an outgoing port of the same curve.
fn matchings(ports: &[Port]) -> Vec<Matching> {
    fn rec(idx: &[usize], ports: &[Port], out: &mut Vec<Matching>, budget: &mut usize) {
        if idx.is_empty() {
            out.push(Vec::new());
            return;
        }
        let first = idx[0];
        for j in (1..idx.len()).step_by(2) {
            let (a, b) = (ports[first], ports[idx[j]]);
            if a.curve != b.curve || a.outgoing == b.outgoing {
                continue;
            }
            let mut inner = Vec::new();
            rec(&idx[1..j], ports, &mut inner, budget);
            if inner.is_empty() {
                continue;
            }
            let mut outer = Vec::new();
            rec(&idx[j + 1..], ports, &mut outer, budget);
            let chord = if a.outgoing { (idx[j], first) } else { (first, idx[j]) };
            for m1 in &inner {
                for m2 in &outer {
                    if *budget == 0 {
                        return;
                    }
                    *budget -= 1;
                    let mut m = Vec::with_capacity(m1.len() + m2.len() + 1);
                    m.push(chord);
                    m.extend_from_slice(m1);
                    m.extend_from_slice(m2);
                    out.push(m);
                }
            }
        }
    }
    let idx: Vec<usize> = (0..ports.len()).collect();
    let mut out = Vec::new();
    let mut budget = COMBINATION_BUDGET;
    rec(&idx, ports, &mut out, &mut budget);
    out
}

/// Finds a simultaneous crossing-free resolution of pairwise edge-disjoint
/// curves in which every curve closes up into one loop. `Ok(None)` when no
/// such resolution exists.
pub fn resolve_multicurve(surface: &SurfaceComplex, curves: &[ChainVector]) -> Result<Option<Resolution>> {
    let edges = surface.edge_count();
    let mut owner = vec![usize::MAX; edges];
    for (i, c) in curves.iter().enumerate() {
        if c.len() != edges {
            return Err(Error::DimensionMismatch { expected: edges, got: c.len() });
        }
        if !c.is_unit() || c.is_zero() || !surface.is_cycle(c) {
            return Ok(None);
        }
        for e in c.support() {
            if owner[e] != usize::MAX {
                return Ok(None);
            }
            owner[e] = i;
        }
    }

    // Per-vertex ports and candidate chord systems.
    let mut choices: Vec<(Vec<Port>, Vec<Matching>)> = Vec::new();
    for v in 0..surface.vertex_count() {
        let ports: Vec<Port> = surface
            .rotation(v)
            .iter()
            .filter(|d| owner[d.edge] != usize::MAX)
            .map(|&d| {
                let curve = owner[d.edge];
                Port { dart: d, curve, outgoing: d.outflow(&curves[curve]).is_positive() }
            })
            .collect();
        if ports.is_empty() {
            continue;
        }
        let m = matchings(&ports);
        if m.is_empty() {
            return Ok(None);
        }
        choices.push((ports, m));
    }

    let token_of = |e: usize| {
        let c = curves[owner[e]].get(e);
        Token::new(e, if c.is_positive() { 1 } else { -1 })
    };
    let mut pick = vec![0usize; choices.len()];
    let mut tried = 0usize;
    loop {
        tried += 1;
        if tried > COMBINATION_BUDGET {
            return Err(Error::SearchBudgetExceeded("curve resolution".into()));
        }
        // successor[e] = edge traversed after e.
        let mut successor = vec![usize::MAX; edges];
        for (k, (ports, ms)) in choices.iter().enumerate() {
            for &(inc, out) in &ms[pick[k]] {
                successor[ports[inc].dart.edge] = ports[out].dart.edge;
            }
        }
        if let Some(walks) = single_loops(curves, &owner, &successor, token_of) {
            return Ok(Some(Resolution { walks }));
        }
        // Odometer over the per-vertex choices.
        let mut k = 0;
        loop {
            if k == choices.len() {
                return Ok(None);
            }
            pick[k] += 1;
            if pick[k] < choices[k].1.len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

fn single_loops(
    curves: &[ChainVector],
    owner: &[usize],
    successor: &[usize],
    token_of: impl Fn(usize) -> Token,
) -> Option<Vec<Vec<Token>>> {
    let mut walks = Vec::with_capacity(curves.len());
    for (i, c) in curves.iter().enumerate() {
        let support = c.support();
        let start = support[0];
        let mut walk = vec![token_of(start)];
        let mut e = successor[start];
        while e != start {
            if e == usize::MAX || owner[e] != i || walk.len() > support.len() {
                return None;
            }
            walk.push(token_of(e));
            e = successor[e];
        }
        if walk.len() != support.len() {
            return None;
        }
        walks.push(walk);
    }
    Some(walks)
}

/// Whether `chain` is an embedded closed curve on the surface.
///
/// Chains with a coefficient outside {-1, 0, 1} are never simple. The zero
/// chain and chains with nonzero boundary are rejected with `NotAClosedWalk`.
pub fn is_simple_on_surface(surface: &SurfaceComplex, chain: &ChainVector) -> Result<bool> {
    if chain.len() != surface.edge_count() {
        return Err(Error::DimensionMismatch { expected: surface.edge_count(), got: chain.len() });
    }
    if chain.is_zero() || !surface.is_cycle(chain) {
        return Err(Error::NotAClosedWalk);
    }
    if !chain.coeffs().iter().all(|c| c.is_zero() || c.abs().is_one()) {
        return Ok(false);
    }
    Ok(resolve_multicurve(surface, std::slice::from_ref(chain))?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse_surface;

    #[test]
    fn torus_curves() {
        let t = parse_surface("face a b -a -b").unwrap();
        assert!(is_simple_on_surface(&t, &ChainVector::from_ints(&[1, 0])).unwrap());
        assert!(is_simple_on_surface(&t, &ChainVector::from_ints(&[1, 1])).unwrap());
        assert!(is_simple_on_surface(&t, &ChainVector::from_ints(&[1, -1])).unwrap());
        assert!(!is_simple_on_surface(&t, &ChainVector::from_ints(&[2, 0])).unwrap());
    }

    #[test]
    fn not_a_closed_walk() {
        let t = parse_surface("face a b -a -b").unwrap();
        assert_eq!(is_simple_on_surface(&t, &ChainVector::from_ints(&[0, 0])), Err(Error::NotAClosedWalk));
        let s = parse_surface("face a b c\nface -c -b -a").unwrap();
        assert_eq!(is_simple_on_surface(&s, &ChainVector::from_ints(&[1, 0, 0])), Err(Error::NotAClosedWalk));
    }

    #[test]
    fn torus_meridian_and_longitude_cross() {
        // a and b meet transversally once, so they cannot be resolved apart.
        let t = parse_surface("face a b -a -b").unwrap();
        let a = ChainVector::from_ints(&[1, 0]);
        let b = ChainVector::from_ints(&[0, 1]);
        assert!(resolve_multicurve(&t, &[a, b]).unwrap().is_none());
    }

    #[test]
    fn disjoint_cross_caps_resolve() {
        let s = parse_surface("face x x y y z z").unwrap();
        let c = |v: &[i64]| ChainVector::from_ints(v);
        let r = resolve_multicurve(&s, &[c(&[1, 0, 0]), c(&[0, 1, 0]), c(&[0, 0, 1])]).unwrap();
        assert!(r.is_some());
    }

    #[test]
    fn walk_order_is_returned() {
        let t = parse_surface("face a b -a -b").unwrap();
        let r = resolve_multicurve(&t, &[ChainVector::from_ints(&[1, 1])]).unwrap().unwrap();
        assert_eq!(r.walks[0].len(), 2);
        assert!(t.is_closed_walk(&r.walks[0]));
    }
}
