use crate::chain::Token;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

use super::SurfaceComplex;

fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label.starts_with('-')
        && label.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | '\''))
}

/// Splits `a -b, c` into signed tokens, resolving labels with `lookup`.
pub fn parse_tokens(text: &str, mut lookup: impl FnMut(&str) -> Option<usize>) -> Result<Vec<Token>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|tok| {
            let (sign, label) = match tok.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, tok),
            };
            lookup(label).map(|edge| Token::new(edge, sign)).ok_or_else(|| Error::UnknownLabel(label.to_string()))
        })
        .collect()
}

/// Reads the line-oriented surface format:
///
/// ```text
/// surface torus
/// face a b -a -b
/// weight a 3/2
/// # comment
/// ```
pub fn parse_surface(text: &str) -> Result<SurfaceComplex> {
    let mut name = String::from("surface");
    let mut labels: Vec<String> = Vec::new();
    let mut faces = Vec::new();
    let mut weights: Vec<(usize, String, Rational)> = Vec::new();
    let syntax = |line: usize, message: String| Error::Syntax { line, message };

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap_or_default();
        match keyword {
            "surface" => {
                let rest: Vec<&str> = words.collect();
                if rest.len() != 1 {
                    return Err(syntax(line_no, "expected `surface <name>`".into()));
                }
                name = rest[0].to_string();
            }
            "face" => {
                let mut word = Vec::new();
                for tok in words {
                    let (sign, label) = match tok.strip_prefix('-') {
                        Some(rest) => (-1, rest),
                        None => (1, tok),
                    };
                    if !valid_label(label) {
                        return Err(syntax(line_no, format!("bad edge token `{tok}`")));
                    }
                    let edge = match labels.iter().position(|l| l == label) {
                        Some(e) => e,
                        None => {
                            labels.push(label.to_string());
                            labels.len() - 1
                        }
                    };
                    word.push(Token::new(edge, sign));
                }
                if word.is_empty() {
                    return Err(syntax(line_no, "empty face".into()));
                }
                faces.push(word);
            }
            "weight" => {
                let rest: Vec<&str> = words.collect();
                if rest.len() != 2 {
                    return Err(syntax(line_no, "expected `weight <label> <p>/<q>`".into()));
                }
                let w =
                    rational::parse(rest[1]).ok_or_else(|| syntax(line_no, format!("bad rational `{}`", rest[1])))?;
                weights.push((line_no, rest[0].to_string(), w));
            }
            // Cover audit lines; they carry no gluing data.
            "map" => {}
            other => return Err(syntax(line_no, format!("unknown keyword `{other}`"))),
        }
    }
    if faces.is_empty() {
        return Err(syntax(0, "no faces".into()));
    }
    let mut w = vec![rational::one(); labels.len()];
    for (line_no, label, value) in weights {
        let edge = labels
            .iter()
            .position(|l| *l == label)
            .ok_or_else(|| syntax(line_no, format!("weight for unknown edge `{label}`")))?;
        w[edge] = value;
    }
    SurfaceComplex::new(name, labels, w, faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn weights_comments_and_name() {
        let s = parse_surface("surface t # torus\nface a b -a -b\nweight b 3/2\n").unwrap();
        assert_eq!(s.name(), "t");
        assert_eq!(s.weight(1), &frac(3, 2));
        assert_eq!(s.weight(0), &frac(1, 1));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_surface("fase a -a"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_surface("face a -a\nweight a x"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_surface("face a -a\nweight z 1"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_surface("face a --a"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_surface(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn non_positive_weight() {
        assert!(matches!(parse_surface("face a -a\nweight a 0"), Err(Error::NonPositiveWeight { .. })));
        assert!(matches!(parse_surface("face a -a\nweight a -1/2"), Err(Error::NonPositiveWeight { .. })));
    }
}
