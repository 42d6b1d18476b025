//! Closed surfaces presented as polygons glued along labeled edges.
//!
//! A [`SurfaceComplex`] is built from boundary words. Everything else
//! (vertices, the rotation system around each vertex, orientability) is
//! derived once at construction and the value is immutable afterwards.

mod parse;
mod simple;

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

pub use parse::{parse_surface, parse_tokens};
pub use simple::{is_simple_on_surface, resolve_multicurve, Resolution};

use crate::chain::{ChainVector, Token};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Which end of an edge a dart sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

/// An edge-end, seen from the vertex it is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub end: End,
}

impl Dart {
    pub fn tail(edge: usize) -> Self {
        Dart { edge, end: End::Tail }
    }

    pub fn head(edge: usize) -> Self {
        Dart { edge, end: End::Head }
    }

    pub fn index(self) -> usize {
        2 * self.edge + usize::from(self.end == End::Head)
    }

    /// Flow of `chain` leaving the vertex through this dart.
    pub fn outflow(self, chain: &ChainVector) -> Rational {
        match self.end {
            End::Tail => chain.get(self.edge).clone(),
            End::Head => -chain.get(self.edge).clone(),
        }
    }

    /// Dart at which a traversal of `token` starts.
    pub fn start_of(token: Token) -> Self {
        if token.sign > 0 {
            Dart::tail(token.edge)
        } else {
            Dart::head(token.edge)
        }
    }

    /// Dart at which a traversal of `token` ends.
    pub fn end_of(token: Token) -> Self {
        if token.sign > 0 {
            Dart::head(token.edge)
        } else {
            Dart::tail(token.edge)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceComplex {
    name: String,
    labels: Vec<String>,
    weights: Vec<Rational>,
    faces: Vec<Vec<Token>>,
    tail: Vec<usize>,
    head: Vec<usize>,
    vertex_count: usize,
    corner_vertex: Vec<Vec<usize>>,
    rotation: Vec<Vec<Dart>>,
    face_orientation: Option<Vec<i8>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut x = x;
        while self.0[x] != root {
            let next = self.0[x];
            self.0[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl SurfaceComplex {
    /// Validates the gluing data and derives vertices, rotation and orientation.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        weights: Vec<Rational>,
        faces: Vec<Vec<Token>>,
    ) -> Result<Self> {
        let edge_count = labels.len();
        assert_eq!(weights.len(), edge_count);
        let mut occurrences = vec![Vec::new(); edge_count];
        for (f, word) in faces.iter().enumerate() {
            for (i, t) in word.iter().enumerate() {
                occurrences[t.edge].push((f, i, t.sign));
            }
        }
        for (e, occ) in occurrences.iter().enumerate() {
            if occ.len() != 2 {
                return Err(Error::DuplicateLabelCount { label: labels[e].clone(), count: occ.len() });
            }
        }
        for (label, w) in labels.iter().zip(&weights) {
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight { label: label.clone(), weight: w.to_string() });
            }
        }
        if faces.is_empty() {
            return Err(Error::Disconnected);
        }

        // Connectivity of the face adjacency graph.
        let mut seen = vec![false; faces.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(f) = queue.pop_front() {
            for t in &faces[f] {
                for &(g, _, _) in &occurrences[t.edge] {
                    if !seen[g] {
                        seen[g] = true;
                        queue.push_back(g);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Disconnected);
        }

        let face_orientation = orient(&faces, &occurrences);

        // Corners are numbered face by face; corner i of a face starts token i.
        let mut corner_base = Vec::with_capacity(faces.len());
        let mut total = 0;
        for word in &faces {
            corner_base.push(total);
            total += word.len();
        }
        let corner = |f: usize, i: usize| corner_base[f] + i % faces[f].len();
        let mut uf = UnionFind((0..total).collect());
        let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); edge_count];
        for (f, word) in faces.iter().enumerate() {
            for (i, t) in word.iter().enumerate() {
                let (start, stop) = (corner(f, i), corner(f, i + 1));
                let (tail, head) = if t.sign > 0 { (start, stop) } else { (stop, start) };
                ends[t.edge].push((tail, head));
            }
        }
        for pair in &ends {
            uf.union(pair[0].0, pair[1].0);
            uf.union(pair[0].1, pair[1].1);
        }
        let mut vertex_of_root = vec![usize::MAX; total];
        let mut vertex_count = 0;
        let mut corner_vertex = Vec::with_capacity(faces.len());
        for (f, word) in faces.iter().enumerate() {
            let mut row = Vec::with_capacity(word.len());
            for i in 0..word.len() {
                let r = uf.find(corner(f, i));
                if vertex_of_root[r] == usize::MAX {
                    vertex_of_root[r] = vertex_count;
                    vertex_count += 1;
                }
                row.push(vertex_of_root[r]);
            }
            corner_vertex.push(row);
        }
        let mut tail = vec![0; edge_count];
        let mut head = vec![0; edge_count];
        for (e, pair) in ends.iter().enumerate() {
            tail[e] = vertex_of_root[uf.find(pair[0].0)];
            head[e] = vertex_of_root[uf.find(pair[0].1)];
        }

        let rotation = rotation_system(&faces, face_orientation.as_deref(), &corner_vertex, vertex_count);

        Ok(SurfaceComplex {
            name: name.into(),
            labels,
            weights,
            faces,
            tail,
            head,
            vertex_count,
            corner_vertex,
            rotation,
            face_orientation,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, edge: usize) -> &str {
        &self.labels[edge]
    }

    pub fn edge_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, edge: usize) -> &Rational {
        &self.weights[edge]
    }

    pub fn faces(&self) -> &[Vec<Token>] {
        &self.faces
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn tail(&self, edge: usize) -> usize {
        self.tail[edge]
    }

    pub fn head(&self, edge: usize) -> usize {
        self.head[edge]
    }

    /// Vertex at the start of `token`.
    pub fn source(&self, token: Token) -> usize {
        if token.sign > 0 {
            self.tail[token.edge]
        } else {
            self.head[token.edge]
        }
    }

    /// Vertex at the end of `token`.
    pub fn target(&self, token: Token) -> usize {
        if token.sign > 0 {
            self.head[token.edge]
        } else {
            self.tail[token.edge]
        }
    }

    pub fn dart_vertex(&self, dart: Dart) -> usize {
        match dart.end {
            End::Tail => self.tail[dart.edge],
            End::Head => self.head[dart.edge],
        }
    }

    /// Vertex at corner `i` (the start of token `i`) of face `f`.
    pub fn corner_vertex(&self, f: usize, i: usize) -> usize {
        self.corner_vertex[f][i]
    }

    /// Cyclic order of darts around `vertex`. On orientable surfaces the
    /// order is counter-clockwise for the chosen orientation.
    pub fn rotation(&self, vertex: usize) -> &[Dart] {
        &self.rotation[vertex]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn is_orientable(&self) -> bool {
        self.face_orientation.is_some()
    }

    /// The lexicographically first consistent orientation (face 0 positive),
    /// as one sign per face; `None` when non-orientable.
    pub fn face_orientation(&self) -> Option<&[i8]> {
        self.face_orientation.as_deref()
    }

    /// `∂₁ x`, indexed by vertex.
    pub fn boundary(&self, chain: &ChainVector) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.vertex_count];
        for (e, c) in chain.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out[self.head[e]] += c;
            out[self.tail[e]] -= c;
        }
        out
    }

    pub fn is_cycle(&self, chain: &ChainVector) -> bool {
        chain.len() == self.edge_count() && self.boundary(chain).iter().all(Zero::is_zero)
    }

    /// Total weight `Σ w_e |x_e|` of a chain.
    pub fn mass(&self, chain: &ChainVector) -> Rational {
        chain.weighted_mass(&self.weights)
    }

    /// Same complex with new edge weights.
    pub fn with_weights(&self, weights: Vec<Rational>) -> Result<Self> {
        assert_eq!(weights.len(), self.edge_count());
        for (label, w) in self.labels.iter().zip(&weights) {
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight { label: label.clone(), weight: w.to_string() });
            }
        }
        let mut out = self.clone();
        out.weights = weights;
        Ok(out)
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        let mut out = self.clone();
        out.name = name.into();
        out
    }

    /// Canonical text form, readable by [`parse_surface`].
    pub fn to_text(&self) -> String {
        let mut out = format!("surface {}\n", self.name);
        for word in &self.faces {
            out.push_str("face");
            for t in word {
                out.push(' ');
                if t.sign < 0 {
                    out.push('-');
                }
                out.push_str(&self.labels[t.edge]);
            }
            out.push('\n');
        }
        for (label, w) in self.labels.iter().zip(&self.weights) {
            let w = if w.is_integer() { format!("{w}/1") } else { w.to_string() };
            out.push_str(&format!("weight {label} {w}\n"));
        }
        out
    }

    /// Parses a walk written as labels separated by spaces or commas,
    /// e.g. `a -b`.
    pub fn parse_walk(&self, text: &str) -> Result<Vec<Token>> {
        parse_tokens(text, |label| self.edge_index(label))
    }

    /// True when `tokens` is a nonempty closed walk in the 1-skeleton.
    pub fn is_closed_walk(&self, tokens: &[Token]) -> bool {
        if tokens.is_empty() {
            return false;
        }
        tokens.iter().zip(tokens.iter().cycle().skip(1)).all(|(a, b)| self.target(*a) == self.source(*b))
    }
}

/// Consistent face signs with face 0 positive, or `None`.
fn orient(faces: &[Vec<Token>], occurrences: &[Vec<(usize, usize, i8)>]) -> Option<Vec<i8>> {
    let mut sign = vec![0i8; faces.len()];
    sign[0] = 1;
    let mut queue = VecDeque::from([0]);
    while let Some(f) = queue.pop_front() {
        for t in &faces[f] {
            let occ = &occurrences[t.edge];
            // Two occurrences of the same edge must be traversed oppositely.
            let (a, b) = (occ[0], occ[1]);
            for (this, other) in [(a, b), (b, a)] {
                if this.0 != f {
                    continue;
                }
                let want = -(sign[f] * this.2) * other.2;
                if sign[other.0] == 0 {
                    sign[other.0] = want;
                    queue.push_back(other.0);
                } else if sign[other.0] != want {
                    return None;
                }
            }
        }
    }
    Some(sign)
}

/// Rotation around each vertex, from the corner structure. Faces are read
/// with their orientation sign when one exists so the order is
/// counter-clockwise.
fn rotation_system(
    faces: &[Vec<Token>],
    orientation: Option<&[i8]>,
    corner_vertex: &[Vec<usize>],
    vertex_count: usize,
) -> Vec<Vec<Dart>> {
    // Each corner has an incoming dart (end of the previous token) and an
    // outgoing dart (start of the next token), read along the oriented word.
    let mut corners: Vec<(usize, [Dart; 2])> = Vec::new();
    for (f, word) in faces.iter().enumerate() {
        let n = word.len();
        let positive = orientation.is_none_or(|o| o[f] > 0);
        for i in 0..n {
            let (incoming, outgoing) = if positive {
                (Dart::end_of(word[(i + n - 1) % n]), Dart::start_of(word[i]))
            } else {
                // Reversed traversal: corner i sits between token i (reversed,
                // arriving) and token i-1 (reversed, leaving).
                (Dart::end_of(word[i].reversed()), Dart::start_of(word[(i + n - 1) % n].reversed()))
            };
            corners.push((corner_vertex[f][i], [outgoing, incoming]));
        }
    }
    let mut slots_of_dart: Vec<Vec<(usize, usize)>> =
        vec![Vec::new(); 2 * (faces.iter().map(Vec::len).sum::<usize>() / 2)];
    for (c, (_, darts)) in corners.iter().enumerate() {
        for (s, d) in darts.iter().enumerate() {
            slots_of_dart[d.index()].push((c, s));
        }
    }
    let mut rotation = vec![Vec::new(); vertex_count];
    let mut visited = vec![false; corners.len()];
    for start_corner in 0..corners.len() {
        if visited[start_corner] {
            continue;
        }
        let vertex = corners[start_corner].0;
        let start = (start_corner, 0);
        let mut order = vec![corners[start_corner].1[0]];
        let (mut c, mut s) = start;
        loop {
            visited[c] = true;
            let exit = (c, 1 - s);
            let dart = corners[c].1[exit.1];
            let slots = &slots_of_dart[dart.index()];
            let partner = if slots[0] == exit { slots[1] } else { slots[0] };
            if partner == start {
                break;
            }
            order.push(dart);
            (c, s) = partner;
        }
        rotation[vertex] = order;
    }
    rotation
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surf(text: &str) -> SurfaceComplex {
        parse_surface(text).unwrap()
    }

    #[test]
    fn torus_and_klein_counts() {
        let t = surf("face a b -a -b");
        assert_eq!((t.vertex_count(), t.edge_count(), t.face_count()), (1, 2, 1));
        assert!(t.is_orientable());
        assert_eq!(t.euler_characteristic(), 0);
        let k = surf("face a b a -b");
        assert_eq!((k.vertex_count(), k.edge_count(), k.face_count()), (1, 2, 1));
        assert!(!k.is_orientable());
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn projective_plane_and_sphere() {
        let p = surf("face a a");
        assert_eq!(p.euler_characteristic(), 1);
        assert!(!p.is_orientable());
        let s = surf("face a -a");
        assert_eq!(s.euler_characteristic(), 2);
        assert!(s.is_orientable());
        assert_eq!(s.vertex_count(), 2);
        assert_eq!(s.rotation(0).len(), 1);
    }

    #[test]
    fn sigma1_rp2_non_orientable() {
        let s = surf("face a b -a -b c c");
        assert!(!s.is_orientable());
        assert_eq!(s.euler_characteristic(), -1);
    }

    #[test]
    fn duplicate_label_rejected() {
        assert!(matches!(
            parse_surface("face a b -a"),
            Err(Error::DuplicateLabelCount { ref label, count: 1 }) if label == "b"
        ));
    }

    #[test]
    fn disconnected_rejected() {
        assert_eq!(parse_surface("face a -a\nface b -b"), Err(Error::Disconnected));
    }

    #[test]
    fn rotation_covers_every_dart_once() {
        for text in ["face a b -a -b", "face a b a -b", "face a b -a -b c d -c -d", "face a b c -a -b -c"] {
            let s = surf(text);
            let mut all: Vec<Dart> = (0..s.vertex_count()).flat_map(|v| s.rotation(v).to_vec()).collect();
            all.sort();
            all.dedup();
            assert_eq!(all.len(), 2 * s.edge_count());
            for v in 0..s.vertex_count() {
                for d in s.rotation(v) {
                    assert_eq!(s.dart_vertex(*d), v);
                }
            }
        }
    }

    /// Orientability by brute force over all 2^F face sign choices.
    fn orientable_by_enumeration(s: &SurfaceComplex) -> bool {
        let f = s.face_count();
        (0..1u32 << f).any(|mask| {
            let mut seen = vec![Vec::new(); s.edge_count()];
            for (i, word) in s.faces().iter().enumerate() {
                let sign = if mask >> i & 1 == 1 { -1 } else { 1 };
                for t in word {
                    seen[t.edge].push(t.sign * sign);
                }
            }
            seen.iter().all(|v| v[0] == -v[1])
        })
    }

    #[test]
    fn orientability_matches_enumeration() {
        for text in [
            "face a b -a -b",
            "face a b a -b",
            "face a a",
            "face a b\nface -b -a",
            "face a b\nface b -a",
            "face a b c\nface -c -b -a",
            "face a b c\nface c b -a",
            "face a b -a -b c c",
        ] {
            let s = surf(text);
            assert_eq!(s.is_orientable(), orientable_by_enumeration(&s), "{text}");
        }
    }
}
