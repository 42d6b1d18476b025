//! SVG pictures of two-dimensional balls and of coordinate-plane slices.
//! Floating point is used for drawing only.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::hull::polar_vertices;
use crate::rational::{self, Rational};
use crate::stablenorm::NormBall;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 30.0;

/// Vertices of the slice of the ball by the plane spanned by basis
/// directions `i` and `j`, in counter-clockwise order.
pub fn slice(ball: &NormBall, i: usize, j: usize) -> Result<Vec<Vec<Rational>>> {
    let dim = ball.dim();
    if dim < 2 || i >= dim || j >= dim || i == j {
        return Err(Error::DimensionMismatch { expected: 2, got: dim });
    }
    let restricted: Vec<Vec<Rational>> =
        ball.polytope.facets.iter().map(|f| vec![f[i].clone(), f[j].clone()]).collect();
    let mut vs = polar_vertices(&restricted, 2)?;
    vs.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
    Ok(vs)
}

fn angle(p: &[Rational]) -> f64 {
    let y = p[1].to_f64().unwrap_or(0.0);
    let x = p[0].to_f64().unwrap_or(0.0);
    y.atan2(x)
}

/// Picture of the ball in the `(i, j)` coordinate plane.
pub fn render(ball: &NormBall, i: usize, j: usize) -> Result<String> {
    let vs = slice(ball, i, j)?;
    let pts: Vec<(f64, f64)> =
        vs.iter().map(|v| (v[0].to_f64().unwrap_or(0.0), v[1].to_f64().unwrap_or(0.0))).collect();
    let reach = pts.iter().fold(0.0f64, |m, (x, y)| m.max(x.abs()).max(y.abs())).max(1e-9);
    let scale = (SIZE / 2.0 - MARGIN) / reach;
    let c = SIZE / 2.0;
    let map = |(x, y): (f64, f64)| (c + x * scale, c - y * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r##"<line x1="0" y1="{c}" x2="{SIZE}" y2="{c}" stroke="#bbb"/>"##);
    let _ = writeln!(out, r##"<line x1="{c}" y1="0" x2="{c}" y2="{SIZE}" stroke="#bbb"/>"##);
    let poly: Vec<String> = pts.iter().map(|&p| map(p)).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let _ =
        writeln!(out, r##"<polygon points="{}" fill="#dde8f5" stroke="#2a5d9f" stroke-width="2"/>"##, poly.join(" "));
    for (p, v) in pts.iter().zip(&vs) {
        let (x, y) = map(*p);
        let _ = writeln!(
            out,
            r##"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="#2a5d9f"><title>{}</title></circle>"##,
            rational::format_vector(v)
        );
    }
    let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="12">h{}</text>"#, SIZE - 20.0, c - 6.0, i + 1);
    let _ = writeln!(out, r#"<text x="{}" y="14" font-size="12">h{}</text>"#, c + 6.0, j + 1);
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stablenorm::unit_ball;
    use crate::surface::parse_surface;

    #[test]
    fn torus_picture_has_four_corners() {
        let ball = unit_ball(&parse_surface("face a b -a -b").unwrap()).unwrap();
        let svg = render(&ball, 0, 1).unwrap();
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(render(&ball, 0, 1).unwrap(), svg);
    }

    #[test]
    fn slices_of_genus_two() {
        let ball = unit_ball(&parse_surface("face a b -a -b c d -c -d").unwrap()).unwrap();
        assert_eq!(slice(&ball, 0, 2).unwrap().len(), 4);
        assert!(slice(&ball, 1, 1).is_err());
    }
}
