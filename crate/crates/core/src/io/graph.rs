//! Text formats for the reduced weighted graphs.
//!
//! ```text
//! cvp01-graph 1
//! parts 2 2
//! scale 1
//! threshold_scaled 3
//! blocks 0..1 1..2
//! pair 0 1
//! 0 4
//! 1 5
//! ```
//!
//! Each `pair a b` section lists a `parts[a] × parts[b]` matrix, one row per
//! line. Hypergraph files use the `cvp01-hypergraph` header, a `p` line, and
//! `edge a_1 … a_p` sections whose weights are in mixed-radix order (first part
//! most significant), one line per value of all but the last pick.
//! Weights are already multiplied by `scale`.

use std::fmt::Write as _;
use std::ops::Range;

use num_bigint::BigInt;

use crate::clique::KPartiteGraph;
use crate::error::{Error, Result};
use crate::hyperclique::PUniformHypergraph;

pub const GRAPH_MAGIC: &str = "cvp01-graph";
pub const HYPERGRAPH_MAGIC: &str = "cvp01-hypergraph";

fn write_common(
    out: &mut String,
    parts: &[usize],
    scale: &BigInt,
    threshold: &BigInt,
    blocks: Option<&[Range<usize>]>,
) {
    out.push_str("parts");
    for s in parts {
        let _ = write!(out, " {s}");
    }
    out.push('\n');
    let _ = writeln!(out, "scale {scale}");
    let _ = writeln!(out, "threshold_scaled {threshold}");
    if let Some(bl) = blocks {
        out.push_str("blocks");
        for r in bl {
            let _ = write!(out, " {}..{}", r.start, r.end);
        }
        out.push('\n');
    }
}

fn write_rows(out: &mut String, weights: &[BigInt], row_len: usize) {
    for row in weights.chunks(row_len) {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}

pub fn write_graph(g: &KPartiteGraph) -> String {
    let mut out = format!("{GRAPH_MAGIC} 1\n");
    write_common(&mut out, g.parts(), g.scale(), g.threshold_scaled(), g.blocks());
    let k = g.k();
    for a in 0..k {
        for b in a + 1..k {
            let _ = writeln!(out, "pair {a} {b}");
            write_rows(&mut out, g.pair_weights(a, b), g.parts()[b]);
        }
    }
    out
}

pub fn write_hypergraph(h: &PUniformHypergraph) -> String {
    let mut out = format!("{HYPERGRAPH_MAGIC} 1\n");
    let _ = writeln!(out, "p {}", h.p());
    write_common(&mut out, h.parts(), h.scale(), h.threshold_scaled(), h.blocks());
    for (sub, w) in h.edge_parts().iter().zip(h.edge_weights()) {
        let names: Vec<String> = sub.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "edge {}", names.join(" "));
        write_rows(&mut out, w, h.parts()[*sub.last().expect("p >= 1")]);
    }
    out
}

/// Shared token reader: header fields first, then weight sections.
struct Reader<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
            .filter(|(_, f)| !f.is_empty())
            .collect();
        Reader { lines, pos: 0 }
    }

    fn line_no(&self) -> usize {
        self.lines.get(self.pos).map_or(0, |l| l.0)
    }

    fn peek_key(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|l| l.1[0])
    }

    fn expect(&mut self, key: &str) -> Result<Vec<&'a str>> {
        match self.lines.get(self.pos) {
            Some((_, f)) if f[0] == key => {
                self.pos += 1;
                Ok(f[1..].to_vec())
            }
            _ => Err(Error::parse(self.line_no(), format!("expected `{key}`"))),
        }
    }

    fn weights(&mut self, count: usize) -> Result<Vec<BigInt>> {
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let Some((line_no, fields)) = self.lines.get(self.pos) else {
                return Err(Error::parse(0, format!("expected {count} weights, file ended after {}", out.len())));
            };
            for tok in fields {
                out.push(tok.parse().map_err(|_| Error::parse(*line_no, format!("bad weight {tok:?}")))?);
            }
            self.pos += 1;
        }
        if out.len() != count {
            return Err(Error::parse(self.line_no(), format!("expected {count} weights, found {}", out.len())));
        }
        Ok(out)
    }

    fn uints(&self, fields: &[&str]) -> Result<Vec<usize>> {
        fields
            .iter()
            .map(|s| s.parse().map_err(|_| Error::parse(self.line_no(), format!("bad count {s:?}"))))
            .collect()
    }

    fn big(&self, fields: &[&str]) -> Result<BigInt> {
        match fields {
            [v] => v.parse().map_err(|_| Error::parse(self.line_no(), format!("bad integer {v:?}"))),
            _ => Err(Error::parse(self.line_no(), "expected one integer")),
        }
    }

    fn header(&mut self, magic: &str) -> Result<()> {
        let v = self.expect(magic)?;
        if v != ["1"] {
            return Err(Error::parse(1, "unsupported schema version"));
        }
        Ok(())
    }

    #[allow(clippy::type_complexity)]
    fn common(&mut self) -> Result<(Vec<usize>, BigInt, BigInt, Option<Vec<Range<usize>>>)> {
        let f = self.expect("parts")?;
        let parts = self.uints(&f)?;
        let f = self.expect("scale")?;
        let scale = self.big(&f)?;
        let f = self.expect("threshold_scaled")?;
        let threshold = self.big(&f)?;
        let blocks = if self.peek_key() == Some("blocks") {
            let f = self.expect("blocks")?;
            let line = self.line_no();
            Some(
                f.iter()
                    .map(|s| {
                        let (a, b) = s.split_once("..").ok_or_else(|| Error::parse(line, "bad block range"))?;
                        let a: usize = a.parse().map_err(|_| Error::parse(line, "bad block start"))?;
                        let b: usize = b.parse().map_err(|_| Error::parse(line, "bad block end"))?;
                        Ok(a..b)
                    })
                    .collect::<Result<Vec<_>>>()?,
            )
        } else {
            None
        };
        Ok((parts, scale, threshold, blocks))
    }

    fn finish(&self) -> Result<()> {
        if self.pos != self.lines.len() {
            return Err(Error::parse(self.line_no(), "trailing content"));
        }
        Ok(())
    }
}

pub fn parse_graph(text: &str) -> Result<KPartiteGraph> {
    let mut r = Reader::new(text);
    r.header(GRAPH_MAGIC)?;
    let (parts, scale, threshold, blocks) = r.common()?;
    let k = parts.len();
    let mut weights = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let f = r.expect("pair")?;
            if r.uints(&f)? != [a, b] {
                return Err(Error::parse(r.line_no(), format!("expected section `pair {a} {b}`")));
            }
            weights.push(r.weights(parts[a] * parts[b])?);
        }
    }
    r.finish()?;
    KPartiteGraph::new(parts, weights, scale, threshold, blocks)
}

pub fn parse_hypergraph(text: &str) -> Result<PUniformHypergraph> {
    let mut r = Reader::new(text);
    r.header(HYPERGRAPH_MAGIC)?;
    let f = r.expect("p")?;
    let p = match r.uints(&f)?.as_slice() {
        [p] => *p,
        _ => return Err(Error::parse(r.line_no(), "expected one value for p")),
    };
    let (parts, scale, threshold, blocks) = r.common()?;
    if p == 0 || p > parts.len() {
        return Err(Error::invalid(format!("need 1 <= p={p} <= k={}", parts.len())));
    }
    let mut weights = Vec::new();
    for sub in crate::hyperclique::subsets(parts.len(), p) {
        let f = r.expect("edge")?;
        if r.uints(&f)? != sub {
            return Err(Error::parse(r.line_no(), format!("expected section `edge {sub:?}`")));
        }
        weights.push(r.weights(sub.iter().map(|&a| parts[a]).product())?);
    }
    r.finish()?;
    PUniformHypergraph::new(parts, p, weights, scale, threshold, blocks)
}
