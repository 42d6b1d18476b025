use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};
use stablenorm::rational;
use stablenorm::{ChainVector, Rational, SurfaceComplex};

use crate::UsageError;

pub fn rat(x: &Rational) -> Value {
    Value::String(rational::format(x))
}

pub fn rats(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(rat).collect())
}

pub fn matrix(rows: &[Vec<Rational>]) -> Value {
    Value::Array(rows.iter().map(|r| rats(r)).collect())
}

/// Nonzero coefficients keyed by edge label.
pub fn chain(surface: &SurfaceComplex, c: &ChainVector) -> Value {
    let mut map = Map::new();
    for e in c.support() {
        map.insert(surface.label(e).to_string(), rat(c.get(e)));
    }
    Value::Object(map)
}

pub fn chain_text(surface: &SurfaceComplex, c: &ChainVector) -> String {
    let parts: Vec<String> =
        c.support().into_iter().map(|e| format!("{}:{}", surface.label(e), rational::format(c.get(e)))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())).into())
}

pub fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Prints to stdout or writes the file given with `-o`.
pub fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn parse_vector(flag: &str, text: &str) -> Result<Vec<Rational>> {
    rational::parse_vector(text)
        .ok_or_else(|| UsageError(format!("--{flag}: expected rationals like `1/2,-3`, got `{text}`")).into())
}

pub fn surface_json(surface: &SurfaceComplex) -> Value {
    json!({
        "name": surface.name(),
        "vertices": surface.vertex_count(),
        "edges": surface.edge_count(),
        "faces": surface.face_count(),
        "euler_characteristic": surface.euler_characteristic(),
        "orientable": surface.is_orientable(),
    })
}
