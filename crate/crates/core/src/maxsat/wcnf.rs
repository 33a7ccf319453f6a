//! DIMACS-style weighted CNF.
//!
//! ```text
//! c scale 3
//! c d 11
//! c offset 87
//! c threshold 126
//! c primary_vars 1
//! p wcnf 1 2 130
//! 6 1 0
//! 33 -1 0
//! ```
//!
//! The header carries variable count, clause count and a top weight strictly
//! above the sum of all soft weights, so no clause is read as hard. Reduction
//! metadata rides in `c <key> <value>` comments; other comments are ignored.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;

use super::{Lit, WcnfFormula, WeightedClause};
use crate::error::{Error, Result};

pub fn write_wcnf(f: &WcnfFormula) -> String {
    let mut out = String::new();
    let top = f.total_weight() + BigInt::one();
    let _ = writeln!(out, "c (0,1)-CVP reduction to weighted Max-SAT");
    let _ = writeln!(out, "c scale {}", f.scale);
    let _ = writeln!(out, "c d {}", f.d);
    let _ = writeln!(out, "c offset {}", f.offset);
    let _ = writeln!(out, "c threshold {}", f.threshold);
    let _ = writeln!(out, "c primary_vars {}", f.primary_vars);
    let _ = writeln!(out, "p wcnf {} {} {}", f.num_vars, f.clauses.len(), top);
    for c in &f.clauses {
        let _ = write!(out, "{}", c.weight);
        for l in &c.lits {
            let _ = write!(out, " {l}");
        }
        out.push_str(" 0\n");
    }
    out
}

pub fn parse_wcnf(text: &str) -> Result<WcnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut f = WcnfFormula {
        num_vars: 0,
        primary_vars: 0,
        clauses: Vec::new(),
        offset: BigInt::default(),
        scale: BigInt::one(),
        d: BigInt::one(),
        threshold: BigInt::default(),
    };
    let mut primary = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let big = |s: &str| -> Result<BigInt> {
            s.parse().map_err(|_| Error::parse(line_no, format!("bad integer {s:?}")))
        };
        if let Some(rest) = line.strip_prefix('c') {
            let mut it = rest.split_whitespace();
            match (it.next(), it.next()) {
                (Some("scale"), Some(v)) => f.scale = big(v)?,
                (Some("d"), Some(v)) => f.d = big(v)?,
                (Some("offset"), Some(v)) => f.offset = big(v)?,
                (Some("threshold"), Some(v)) => f.threshold = big(v)?,
                (Some("primary_vars"), Some(v)) => {
                    primary = Some(v.parse().map_err(|_| Error::parse(line_no, "bad primary_vars"))?)
                }
                _ => {}
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() < 3 || fields[0] != "wcnf" {
                return Err(Error::parse(line_no, "expected `p wcnf <vars> <clauses> [top]`"));
            }
            let vars = fields[1].parse().map_err(|_| Error::parse(line_no, "bad variable count"))?;
            let count = fields[2].parse().map_err(|_| Error::parse(line_no, "bad clause count"))?;
            header = Some((vars, count));
            f.num_vars = vars;
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(Error::parse(line_no, "clause before the `p wcnf` header"));
        };
        let mut tokens = line.split_whitespace();
        let weight = big(tokens.next().expect("nonempty line"))?;
        let mut lits: Vec<Lit> = Vec::new();
        let mut terminated = false;
        for tok in tokens {
            let l: Lit = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad literal {tok:?}")))?;
            if l == 0 {
                terminated = true;
                break;
            }
            if l.unsigned_abs() as usize > vars {
                return Err(Error::parse(line_no, format!("literal {l} exceeds {vars} variables")));
            }
            lits.push(l);
        }
        if !terminated {
            return Err(Error::parse(line_no, "clause is not 0-terminated"));
        }
        f.clauses.push(WeightedClause { lits, weight });
    }
    let (_, count) = header.ok_or_else(|| Error::parse(0, "missing `p wcnf` header"))?;
    if count != f.clauses.len() {
        return Err(Error::parse(
            0,
            format!("header announces {count} clauses, found {}", f.clauses.len()),
        ));
    }
    f.primary_vars = primary.unwrap_or(f.num_vars);
    Ok(f)
}
