//! Bundled example surfaces and generated families.

use crate::surface::{parse_surface, SurfaceComplex};

/// Bundled surface files as `(name, text)`, sorted by name.
pub const FILES: &[(&str, &str)] = &[
    ("genus2", include_str!("../corpus/genus2.srf")),
    ("hexagon_torus", include_str!("../corpus/hexagon_torus.srf")),
    ("klein", include_str!("../corpus/klein.srf")),
    ("klein_weighted", include_str!("../corpus/klein_weighted.srf")),
    ("projective_plane", include_str!("../corpus/projective_plane.srf")),
    ("sphere", include_str!("../corpus/sphere.srf")),
    ("three_crosscaps", include_str!("../corpus/three_crosscaps.srf")),
    ("torus", include_str!("../corpus/torus.srf")),
    ("torus_klein", include_str!("../corpus/torus_klein.srf")),
    ("torus_rp2", include_str!("../corpus/torus_rp2.srf")),
    ("triangle_torus", include_str!("../corpus/triangle_torus.srf")),
];

pub fn text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load(name: &str) -> Option<SurfaceComplex> {
    text(name).map(|t| parse_surface(t).expect("bundled surfaces parse"))
}

pub fn all() -> Vec<SurfaceComplex> {
    FILES.iter().map(|(_, t)| parse_surface(t).expect("bundled surfaces parse")).collect()
}

fn handles(k: usize) -> String {
    (1..=k).map(|i| format!("a{i} b{i} -a{i} -b{i}")).collect::<Vec<_>>().join(" ")
}

fn one_face(name: String, word: String) -> SurfaceComplex {
    let word = if word.trim().is_empty() { "s -s".to_string() } else { word };
    parse_surface(&format!("surface {name}\nface {word}\n")).expect("generated word is valid")
}

/// Closed orientable surface of genus `g` as a single `4g`-gon.
pub fn orientable(g: usize) -> SurfaceComplex {
    one_face(format!("genus{g}"), handles(g))
}

/// `k` handles followed by a Klein bottle, `x x y y`.
pub fn handles_plus_klein(k: usize) -> SurfaceComplex {
    one_face(format!("handles{k}_klein"), format!("{} x x y y", handles(k)))
}

/// `k` handles followed by a crosscap, `x x`.
pub fn handles_plus_crosscap(k: usize) -> SurfaceComplex {
    one_face(format!("handles{k}_rp2"), format!("{} x x", handles(k)))
}

/// Sphere with `n` crosscaps, `x1 x1 … xn xn`.
pub fn crosscaps(n: usize) -> SurfaceComplex {
    one_face(format!("crosscaps{n}"), (1..=n).map(|i| format!("x{i} x{i}")).collect::<Vec<_>>().join(" "))
}
