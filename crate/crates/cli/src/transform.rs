//! Source transforms "g,i": the pair examined is (g·F^i(x), x).
//!
//! g is one of `id`, `F` (the identity, read as a pure Frobenius power),
//! `h_{s}` with s a polynomial in t over F_q labels (the central element
//! s(t) on the D-part), `c_{k}` (the global scalar k) or `@file.json`
//! (a serialized group element).

use zetacorr::{DivisorSpec, FieldTower, GroupElement, Poly};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform {
    pub spec: String,
    pub g: GroupElement,
    pub i: usize,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Strips "name_{...}" or "name_..." down to the argument.
fn argument<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    let rest = s.strip_prefix(name)?.strip_prefix('_')?;
    Some(rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(rest))
}

pub fn parse(spec: &str, n: usize, div: &DivisorSpec, tw: &FieldTower) -> Result<Transform, CliError> {
    let (g_part, i_part) =
        spec.rsplit_once(',').ok_or_else(|| bad(format!("transform '{spec}' must have the form \"g,i\"")))?;
    let i = i_part.trim().parse().map_err(|_| bad(format!("bad Frobenius power '{i_part}'")))?;
    let g_part = g_part.trim();
    let g = if g_part == "id" || g_part == "F" {
        GroupElement::identity(n, div)
    } else if let Some(path) = g_part.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {path}: {e}")))?;
        let g: GroupElement = serde_json::from_str(&text).map_err(|e| bad(format!("{path}: {e}")))?;
        g.check(n, div, tw)?;
        g
    } else if let Some(s) = argument(g_part, "h") {
        GroupElement::central(&parse_poly(s, tw)?, n, div, tw)?
    } else if let Some(c) = argument(g_part, "c") {
        let c: u64 = c.trim().parse().map_err(|_| bad(format!("bad scalar '{c}'")))?;
        if c == 0 || c >= tw.q() {
            return Err(bad(format!("scalar {c} is not a unit of F_{}", tw.q())));
        }
        GroupElement::scalar(c, n, div)
    } else {
        return Err(bad(format!("unknown group element '{g_part}'")));
    };
    Ok(Transform { spec: spec.to_string(), g, i })
}

/// Parses sums of terms `c`, `c*t^k`, `ct^k`, `t^k`, `ct`, `t` with F_q
/// labels as coefficients; a leading '-' negates a term.
pub fn parse_poly(s: &str, tw: &FieldTower) -> Result<Poly, CliError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !current.is_empty() {
            terms.push(std::mem::take(&mut current));
        }
        current.push(ch);
    }
    terms.push(current);
    let mut acc = Poly::zero();
    for term in terms {
        let (negative, body) = match term.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, term.strip_prefix('+').unwrap_or(&term)),
        };
        let (coef, power) = match body.split_once('t') {
            None => (body, 0),
            Some((c, rest)) => {
                let power = match rest {
                    "" => 1,
                    r => r
                        .strip_prefix('^')
                        .and_then(|k| k.parse().ok())
                        .ok_or_else(|| bad(format!("bad term '{term}'")))?,
                };
                (c.strip_suffix('*').unwrap_or(c), power)
            }
        };
        let label: u64 = match coef {
            "" => 1,
            c => c.parse().map_err(|_| bad(format!("bad coefficient in '{term}'")))?,
        };
        let mut c = tw.fq_from_int(label).map_err(|_| bad(format!("{label} is not an element of F_{}", tw.q())))?;
        if negative {
            c = tw.neg(&c);
        }
        let mut coeffs = vec![tw.zero(); power + 1];
        coeffs[power] = c;
        acc = acc.add(&Poly::new(coeffs), tw);
    }
    Ok(acc)
}
