//! The line-oriented group text format:
//!
//! ```text
//! perm: (1 2)(3 4); (1 3 2)
//! cayley:
//! 0 1
//! 1 0
//! name: Q8
//! ```

use super::catalog;
use super::perm::{from_permutations, parse_cycles};
use super::FiniteGroup;
use crate::error::{Error, Result};

/// Largest Cayley-table order accepted from text (the full group audit runs
/// on untrusted tables).
pub const CAYLEY_INPUT_CAP: usize = 128;

pub fn parse_group_text(text: &str) -> Result<FiniteGroup> {
    let trimmed = text.trim();
    if let Some(rest) = trimmed.strip_prefix("name:") {
        return catalog::by_name(rest.trim());
    }
    if let Some(rest) = trimmed.strip_prefix("perm:") {
        return parse_perm_spec(rest);
    }
    if let Some(rest) = trimmed.strip_prefix("cayley:") {
        return parse_cayley_spec(rest);
    }
    Err(Error::Syntax {
        position: 0,
        message: "expected 'perm:', 'cayley:', or 'name:'".into(),
    })
}

fn parse_perm_spec(rest: &str) -> Result<FiniteGroup> {
    let rest = rest.trim();
    let mut gens = Vec::new();
    if !rest.is_empty() {
        for part in rest.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            gens.push(parse_cycles(part)?);
        }
    }
    let mut g = from_permutations(&gens, super::CLOSURE_CAP)?;
    g.name = Some(format!("perm: {rest}"));
    Ok(g)
}

fn parse_cayley_spec(rest: &str) -> Result<FiniteGroup> {
    let mut entries = Vec::new();
    for tok in rest.split_whitespace() {
        let v: usize = tok.parse().map_err(|_| Error::InvalidTable(
            format!("non-numeric table entry '{tok}'"),
        ))?;
        entries.push(v);
    }
    if entries.is_empty() {
        return Err(Error::InvalidTable("empty table".into()));
    }
    let n = (entries.len() as f64).sqrt().round() as usize;
    if n * n != entries.len() {
        return Err(Error::InvalidTable(format!(
            "{} entries do not form a square table",
            entries.len()
        )));
    }
    if n > CAYLEY_INPUT_CAP {
        return Err(Error::EnumerationCapExceeded {
            order: n,
            cap: CAYLEY_INPUT_CAP,
        });
    }
    let rows: Vec<Vec<usize>> = entries.chunks(n).map(|c| c.to_vec()).collect();
    FiniteGroup::from_table(rows, None, Some(format!("cayley group of order {n}")))
}
