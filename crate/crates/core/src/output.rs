//! Text and JSON renderings of catalogs, count tables and reliability tables.
//!
//! Catalog text format:
//!
//! ```text
//! # n=6,k=2,condition=BC1,tol=1e-9,count=3
//! 1,4
//! 2,5
//! 3,6
//! ```
//!
//! Numbers in the sweep CSV carry 12 significant digits, `%g` style.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::reliability::{CountRow, ReliabilityTable};
use crate::system::{BalanceCondition, SystemConfig, UnitSet};
use crate::tiesets::TieSetCatalog;

pub const SWEEP_HEADER: &str = "n,k,condition,r,R_product,R_exact";
pub const TABLE1_HEADER: &str = "k,n,bc1,bc2,bc3,diff21,diff32";

/// Formats `x` with `digits` significant digits, dropping trailing zeros,
/// switching to exponent notation outside `1e-5 <= |x| < 10^digits`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn sweep_csv(table: &ReliabilityTable) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for row in &table.rows {
        let exact = row.r_exact.map(|v| format_significant(v, 12)).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            row.n,
            row.k,
            row.condition,
            format_significant(row.r, 12),
            format_significant(row.r_product, 12),
            exact
        );
    }
    out
}

pub fn sweep_json(table: &ReliabilityTable) -> String {
    to_json(&table.rows)
}

pub fn table1_csv(rows: &[CountRow]) -> String {
    let mut out = String::from(TABLE1_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{},{},{},{},{},{},{}", r.k, r.n, r.bc1, r.bc2, r.bc3, r.diff21(), r.diff32());
    }
    out
}

#[derive(Serialize)]
struct CountRecord {
    k: usize,
    n: usize,
    bc1: usize,
    bc2: usize,
    bc3: usize,
    diff21: i64,
    diff32: i64,
}

pub fn table1_json(rows: &[CountRow]) -> String {
    let records: Vec<CountRecord> = rows
        .iter()
        .map(|r| CountRecord { k: r.k, n: r.n, bc1: r.bc1, bc2: r.bc2, bc3: r.bc3, diff21: r.diff21(), diff32: r.diff32() })
        .collect();
    to_json(&records)
}

pub fn catalog_text(catalog: &TieSetCatalog) -> String {
    let mut out = format!(
        "# n={},k={},condition={},tol={:e},count={}\n",
        catalog.n(),
        catalog.k(),
        catalog.condition(),
        catalog.tol(),
        catalog.len()
    );
    for t in catalog.tiesets() {
        let line: Vec<String> = t.iter().map(|u| u.to_string()).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct CatalogRecord<'a> {
    n: usize,
    k: usize,
    condition: BalanceCondition,
    tol: f64,
    count: usize,
    tiesets: &'a [UnitSet],
}

pub fn catalog_json(catalog: &TieSetCatalog) -> String {
    to_json(&CatalogRecord {
        n: catalog.n(),
        k: catalog.k(),
        condition: catalog.condition(),
        tol: catalog.tol(),
        count: catalog.len(),
        tiesets: catalog.tiesets(),
    })
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Reads the catalog text format back, re-validating every catalog invariant.
pub fn parse_catalog(text: &str) -> Result<TieSetCatalog> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let body = header.strip_prefix('#').ok_or_else(|| parse_err(hline, "header must start with '#'"))?;

    let (mut n, mut k, mut condition, mut tol, mut count) = (None, None, None, None, None);
    for field in body.trim().split(',') {
        let (key, value) = field.split_once('=').ok_or_else(|| parse_err(hline, format!("malformed field '{field}'")))?;
        let bad = |what: &str| parse_err(hline, format!("invalid {what} '{value}'"));
        match key.trim() {
            "n" => n = Some(value.parse::<usize>().map_err(|_| bad("n"))?),
            "k" => k = Some(value.parse::<usize>().map_err(|_| bad("k"))?),
            "condition" => condition = Some(value.parse::<BalanceCondition>().map_err(|_| bad("condition"))?),
            "tol" => tol = Some(value.parse::<f64>().map_err(|_| bad("tol"))?),
            "count" => count = Some(value.parse::<usize>().map_err(|_| bad("count"))?),
            other => return Err(parse_err(hline, format!("unknown field '{other}'"))),
        }
    }
    let missing = |what: &str| parse_err(hline, format!("header lacks {what}"));
    let n = n.ok_or_else(|| missing("n"))?;
    let k = k.ok_or_else(|| missing("k"))?;
    let condition = condition.ok_or_else(|| missing("condition"))?;
    let tol = tol.ok_or_else(|| missing("tol"))?;
    let count = count.ok_or_else(|| missing("count"))?;
    let config = SystemConfig::new(n, k)?;

    let mut tiesets = Vec::new();
    for (lineno, line) in lines {
        let indices = line
            .split(',')
            .map(|s| s.trim().parse::<i64>().map_err(|_| parse_err(lineno, format!("invalid index '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_err(lineno, "indices must be strictly ascending"));
        }
        tiesets.push(UnitSet::new(&indices, n)?);
    }
    if tiesets.len() != count {
        return Err(parse_err(hline, format!("header count {count} but {} tie-sets listed", tiesets.len())));
    }
    TieSetCatalog::from_parts(config, condition, tol, tiesets)
}
