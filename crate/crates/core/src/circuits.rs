//! Elementary circuits of the 1-skeleton.
//!
//! A circuit is a closed walk visiting no vertex twice; loops and pairs of
//! parallel edges count. Each circuit is reported once per traversal
//! direction, starting from its smallest vertex.

use crate::chain::{ChainVector, Token};
use crate::error::{Error, Result};
use crate::surface::SurfaceComplex;

pub const DEFAULT_CIRCUIT_CAP: usize = 1_000_000;

/// Directed elementary circuits, in deterministic DFS order. Fails with
/// `CircuitBudgetExceeded` once more than `cap` circuits are found.
pub fn directed_circuits(surface: &SurfaceComplex, cap: usize) -> Result<Vec<Vec<Token>>> {
    let v = surface.vertex_count();
    let mut out_tokens: Vec<Vec<Token>> = vec![Vec::new(); v];
    for e in 0..surface.edge_count() {
        out_tokens[surface.tail(e)].push(Token::new(e, 1));
        out_tokens[surface.head(e)].push(Token::new(e, -1));
    }
    let mut found = Vec::new();
    let mut on_path = vec![false; v];
    let mut path: Vec<Token> = Vec::new();
    for start in 0..v {
        on_path[start] = true;
        extend(surface, &out_tokens, start, start, &mut on_path, &mut path, &mut found, cap)?;
        on_path[start] = false;
    }
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    surface: &SurfaceComplex,
    out_tokens: &[Vec<Token>],
    start: usize,
    at: usize,
    on_path: &mut [bool],
    path: &mut Vec<Token>,
    found: &mut Vec<Vec<Token>>,
    cap: usize,
) -> Result<()> {
    for &t in &out_tokens[at] {
        if path.iter().any(|p| p.edge == t.edge) {
            continue;
        }
        let next = surface.target(t);
        if next == start {
            path.push(t);
            found.push(path.clone());
            path.pop();
            if found.len() > cap {
                return Err(Error::CircuitBudgetExceeded(cap));
            }
        } else if next > start && !on_path[next] {
            on_path[next] = true;
            path.push(t);
            extend(surface, out_tokens, start, next, on_path, path, found, cap)?;
            path.pop();
            on_path[next] = false;
        }
    }
    Ok(())
}

pub fn circuit_chain(surface: &SurfaceComplex, circuit: &[Token]) -> ChainVector {
    ChainVector::from_tokens(surface.edge_count(), circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse_surface;

    #[test]
    fn bouquet_has_two_per_loop() {
        let t = parse_surface("face a b -a -b").unwrap();
        let c = directed_circuits(&t, DEFAULT_CIRCUIT_CAP).unwrap();
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn theta_graph() {
        // Hexagonal torus: 2 vertices joined by 3 edges gives 3 undirected circuits.
        let s = parse_surface("face a b c -a -b -c").unwrap();
        assert_eq!(s.vertex_count(), 2);
        let c = directed_circuits(&s, DEFAULT_CIRCUIT_CAP).unwrap();
        assert_eq!(c.len(), 6);
        for circuit in &c {
            assert!(s.is_closed_walk(circuit));
            assert!(s.is_cycle(&circuit_chain(&s, circuit)));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let t = parse_surface("face a b -a -b").unwrap();
        assert_eq!(directed_circuits(&t, 3), Err(Error::CircuitBudgetExceeded(3)));
    }
}
