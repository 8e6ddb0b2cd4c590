//! Pretzel notation: `P(3,1,3)`, `3,1,3`, and `P(3,1^5,7)` for repeated bands.
//! Family templates add variables: `P(3,1^r,b)`, `P(3a,3b,3c)`.

use std::collections::BTreeMap;
use std::fmt;

use pretzel_core::PretzelParams;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(position: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        position,
        message: message.into(),
    }
}

/// Splits `P(...)` or a bare list into `(offset, item)` pieces.
fn items(text: &str) -> Result<Vec<(usize, &str)>, ParseError> {
    let trimmed_start = text.len() - text.trim_start().len();
    let body = text.trim();
    let (inner, base) = if let Some(rest) = body.strip_prefix("P(").or_else(|| body.strip_prefix("p(")) {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| err(trimmed_start + body.len(), "missing closing parenthesis"))?;
        (inner, trimmed_start + 2)
    } else {
        (body, trimmed_start)
    };
    if inner.trim().is_empty() {
        return Err(err(base, "no bands"));
    }
    let mut out = Vec::new();
    let mut offset = base;
    for piece in inner.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        out.push((offset + lead, piece.trim()));
        offset += piece.len() + 1;
    }
    Ok(out)
}

fn parse_int(s: &str, at: usize) -> Result<i64, ParseError> {
    s.parse::<i64>()
        .map_err(|_| err(at, format!("expected an integer, found {s:?}")))
}

pub fn parse_pretzel(text: &str) -> Result<PretzelParams, ParseError> {
    let mut bands = Vec::new();
    for (at, item) in items(text)? {
        let (value, count) = match item.split_once('^') {
            Some((v, c)) => {
                let count = parse_int(c.trim(), at + v.len() + 1)?;
                if count < 1 {
                    return Err(err(at + v.len() + 1, "repeat count must be positive"));
                }
                (parse_int(v.trim(), at)?, count as usize)
            }
            None => (parse_int(item, at)?, 1),
        };
        if value == 0 {
            return Err(err(at, "band parameters must be nonzero"));
        }
        bands.extend(std::iter::repeat_n(value, count));
    }
    Ok(PretzelParams::new(bands).expect("nonempty and nonzero"))
}

/// `P(a_1,...,a_n)`; `parse_pretzel(render(p)) == p`.
pub fn render(p: &PretzelParams) -> String {
    p.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Term {
    Const(i64),
    Var { coef: i64, name: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Count {
    Const(usize),
    Var(String),
}

/// A pretzel family with named integer variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    items: Vec<(Term, Count)>,
}

fn parse_term(s: &str, at: usize) -> Result<Term, ParseError> {
    let split = s
        .char_indices()
        .find(|&(_, c)| c.is_ascii_alphabetic())
        .map(|(i, _)| i);
    match split {
        None => Ok(Term::Const(parse_int(s, at)?)),
        Some(i) => {
            let (coef, name) = s.split_at(i);
            if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(err(at + i, format!("bad variable name {name:?}")));
            }
            let coef = match coef {
                "" | "+" => 1,
                "-" => -1,
                c => parse_int(c, at)?,
            };
            Ok(Term::Var {
                coef,
                name: name.to_string(),
            })
        }
    }
}

impl Template {
    pub fn parse(text: &str) -> Result<Template, ParseError> {
        let mut out = Vec::new();
        for (at, item) in items(text)? {
            let (term, count) = match item.split_once('^') {
                Some((t, c)) => {
                    let c = c.trim();
                    let count = match c.parse::<usize>() {
                        Ok(k) if k > 0 => Count::Const(k),
                        Ok(_) => return Err(err(at + t.len() + 1, "repeat count must be positive")),
                        Err(_) => match parse_term(c, at + t.len() + 1)? {
                            Term::Var { coef: 1, name } => Count::Var(name),
                            _ => return Err(err(at + t.len() + 1, "repeat count must be a number or a variable")),
                        },
                    };
                    (parse_term(t.trim(), at)?, count)
                }
                None => (parse_term(item, at)?, Count::Const(1)),
            };
            out.push((term, count));
        }
        Ok(Template { items: out })
    }

    /// Variable names in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for (t, c) in &self.items {
            for n in [
                if let Term::Var { name, .. } = t { Some(name) } else { None },
                if let Count::Var(name) = c { Some(name) } else { None },
            ]
            .into_iter()
            .flatten()
            {
                if !names.contains(n) {
                    names.push(n.clone());
                }
            }
        }
        names
    }

    /// Substitutes `values`; `None` when a band would be zero or a count nonpositive.
    pub fn instantiate(&self, values: &BTreeMap<String, i64>) -> Option<PretzelParams> {
        let mut bands = Vec::new();
        for (t, c) in &self.items {
            let v = match t {
                Term::Const(v) => *v,
                Term::Var { coef, name } => coef * values.get(name)?,
            };
            let k = match c {
                Count::Const(k) => *k as i64,
                Count::Var(name) => *values.get(name)?,
            };
            if k < 1 {
                return None;
            }
            bands.extend(std::iter::repeat_n(v, k as usize));
        }
        PretzelParams::new(bands).ok()
    }
}

/// `lo..hi` steps by 2 (family parameters are odd), `lo..hi:s` by `s`, or a comma
/// list `1,3,5`.
pub fn parse_range(text: &str) -> Result<Vec<i64>, ParseError> {
    let text = text.trim();
    if let Some((lo, rest)) = text.split_once("..") {
        let (hi, step) = match rest.split_once(':') {
            Some((h, s)) => (h, parse_int(s.trim(), lo.len() + 2 + h.len() + 1)?),
            None => (rest, 2),
        };
        let lo_v = parse_int(lo.trim(), 0)?;
        let hi_v = parse_int(hi.trim(), lo.len() + 2)?;
        if step < 1 {
            return Err(err(lo.len() + 2 + hi.len() + 1, "step must be positive"));
        }
        return Ok((lo_v..=hi_v).step_by(step as usize).collect());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        out.push(parse_int(piece.trim(), offset)?);
        offset += piece.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> PretzelParams {
        PretzelParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn notation() {
        assert_eq!(parse_pretzel("P(3,1,3)"), Ok(p(&[3, 1, 3])));
        assert_eq!(parse_pretzel("3,1,3"), Ok(p(&[3, 1, 3])));
        assert_eq!(parse_pretzel(" P( 3, -1 ,3 ) "), Ok(p(&[3, -1, 3])));
        assert_eq!(parse_pretzel("P(3,1^3,3)"), Ok(p(&[3, 1, 1, 1, 3])));
        assert_eq!(parse_pretzel("P(-3^2)"), Ok(p(&[-3, -3])));
    }

    #[test]
    fn zero_band_position() {
        let e = parse_pretzel("P(3,0,3)").unwrap_err();
        assert_eq!(e.position, 4);
        assert!(e.message.contains("nonzero"));
        assert_eq!(parse_pretzel("3, 0").unwrap_err().position, 3);
    }

    #[test]
    fn malformed() {
        assert!(parse_pretzel("P(3,1,3").is_err());
        assert!(parse_pretzel("P()").is_err());
        assert!(parse_pretzel("3,x").is_err());
        assert!(parse_pretzel("3^0").is_err());
    }

    #[test]
    fn render_roundtrip() {
        for v in [vec![3, 1, 3], vec![-1], vec![5, -7, 2, 2]] {
            assert_eq!(parse_pretzel(&render(&p(&v))), Ok(p(&v)));
        }
    }

    #[test]
    fn templates() {
        let t = Template::parse("P(3,1^r,b)").unwrap();
        assert_eq!(t.variables(), vec!["r", "b"]);
        let vals = BTreeMap::from([("r".to_string(), 3), ("b".to_string(), 5)]);
        assert_eq!(t.instantiate(&vals), Some(p(&[3, 1, 1, 1, 5])));
        let t = Template::parse("P(3a,3b,-3c)").unwrap();
        let vals = BTreeMap::from([("a".into(), 1), ("b".into(), 3), ("c".into(), 1)]);
        assert_eq!(t.instantiate(&vals), Some(p(&[3, 9, -3])));
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..5"), Ok(vec![1, 3, 5]));
        assert_eq!(parse_range("3..9"), Ok(vec![3, 5, 7, 9]));
        assert_eq!(parse_range("1..4:1"), Ok(vec![1, 2, 3, 4]));
        assert_eq!(parse_range("1,3,7"), Ok(vec![1, 3, 7]));
        assert!(parse_range("1..x").is_err());
    }
}
