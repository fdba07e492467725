//! Text format for matrices and decompositions.
//!
//! ```text
//! p N n m
//! a11 a12 ...
//! ...
//! ```
//!
//! Entries are integers (read at precision `N`) or `v:u:N` tokens.

use num_bigint::BigInt;

use super::PadicMatrix;
use crate::error::{PadicError, Result};
use crate::padic::scalar::pow_p;
use crate::padic::{PadicContext, PadicScalar, EXACT};

fn parse_err(msg: impl Into<String>) -> PadicError {
    PadicError::Parse(msg.into())
}

pub fn read_matrix(text: &str) -> Result<PadicMatrix> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let m = read_block(&mut lines)?;
    if lines.next().is_some() {
        return Err(parse_err("trailing lines after the matrix"));
    }
    Ok(m)
}

fn read_block<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<PadicMatrix> {
    let header = lines.next().ok_or_else(|| parse_err("missing header line `p N n m`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 {
        return Err(parse_err(format!("header `{header}` should be `p N n m`")));
    }
    let p: u32 = fields[0].parse().map_err(|_| parse_err(format!("bad prime `{}`", fields[0])))?;
    let prec: i64 = fields[1]
        .parse()
        .map_err(|_| parse_err(format!("bad precision `{}`", fields[1])))?;
    let n: usize = fields[2].parse().map_err(|_| parse_err(format!("bad row count `{}`", fields[2])))?;
    let m: usize = fields[3].parse().map_err(|_| parse_err(format!("bad column count `{}`", fields[3])))?;
    let ctx = PadicContext::new(p, prec).map_err(|e| parse_err(e.to_string()))?;
    let mut data = Vec::with_capacity(n * m);
    for i in 0..n {
        let line = lines.next().ok_or_else(|| parse_err(format!("missing row {}", i + 1)))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != m {
            return Err(parse_err(format!("row {} has {} entries, expected {m}", i + 1, toks.len())));
        }
        for tok in toks {
            data.push(parse_entry(p, prec, tok)?);
        }
    }
    PadicMatrix::new(ctx, n, m, data)
}

fn parse_entry(p: u32, prec: i64, tok: &str) -> Result<PadicScalar> {
    if tok.contains(':') {
        return PadicScalar::from_token(p, tok);
    }
    let x: BigInt = tok.parse().map_err(|_| parse_err(format!("bad entry `{tok}`")))?;
    Ok(PadicScalar::from_bigint(p, x, prec))
}

/// The header carries the context precision `N`. Entries known to exactly
/// that precision are written as integers in `[0, p^N)`, exact integers as
/// themselves, everything else as `v:u:N` tokens.
pub fn write_matrix(m: &PadicMatrix) -> String {
    let prec = m.ctx().prec();
    let mut out = format!("{} {} {} {}\n", m.p(), prec, m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| entry_text(x, prec)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn entry_text(x: &PadicScalar, prec: i64) -> String {
    if x.is_exact() {
        match (x.valuation(), x.unit()) {
            (None, _) => return "0".into(),
            (Some(v), Some(u)) if v >= 0 => return (u * pow_p(x.p(), v).as_ref()).to_string(),
            _ => {}
        }
    }
    if x.prec() == prec && prec != EXACT {
        if let Some(r) = x.residue_mod_pk(prec) {
            return r.to_string();
        }
    }
    x.to_token()
}

/// Named factors, each preceded by a `factor NAME` line.
pub fn write_factors(factors: &[(&str, &PadicMatrix)]) -> String {
    let mut out = String::new();
    for (name, m) in factors {
        out.push_str(&format!("factor {name}\n"));
        out.push_str(&write_matrix(m));
    }
    out
}

pub fn read_factors(text: &str) -> Result<Vec<(String, PadicMatrix)>> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .peekable();
    let mut out = Vec::new();
    while let Some(line) = lines.next() {
        let name = line
            .strip_prefix("factor ")
            .ok_or_else(|| parse_err(format!("expected `factor NAME`, got `{line}`")))?;
        out.push((name.trim().to_string(), read_block(&mut lines)?));
    }
    Ok(out)
}
