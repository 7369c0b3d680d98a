//! Report values and their two renderings.

use serde::Serialize;
use serde_json::Value;
use zetacorr::{FqElem, Matrix};

/// A named sub-claim with its verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl Claim {
    pub fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Claim { name: name.into(), ok, detail: detail.into() }
    }
}

/// What a command produced: the JSON document, the table text and whether
/// every claim it checked held.
pub struct Report {
    pub json: Value,
    pub table: String,
    pub ok: bool,
}

impl Report {
    pub fn new(json: Value, table: String) -> Self {
        Report { json, table, ok: true }
    }

    pub fn with_claims(json: Value, table: String, claims: &[Claim]) -> Self {
        Report { json, table, ok: claims.iter().all(|c| c.ok) }
    }
}

pub fn elem(x: &FqElem) -> String {
    let c: Vec<String> = x.coeffs().iter().map(u32::to_string).collect();
    format!("[{}]", c.join(","))
}

/// One line per row, entries separated by spaces, indented by `indent`.
pub fn matrix(m: &Matrix, indent: &str) -> String {
    (0..m.rows())
        .map(|i| format!("{indent}{}", m.row(i).iter().map(elem).collect::<Vec<_>>().join(" ")))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn claims_table(claims: &[Claim]) -> String {
    claims
        .iter()
        .map(|c| format!("{} {}: {}", if c.ok { "PASS" } else { "FAIL" }, c.name, c.detail))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}
