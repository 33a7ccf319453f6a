//! Line-oriented instance files.
//!
//! ```text
//! cvp01-instance 1
//! kind cvp
//! p 2
//! m 2
//! n 2
//! b 2 0
//! b 0 3
//! target 1 1
//! threshold_pow 2
//! planted 1 0
//! seed 7
//! coord_bound 16
//! mode planted-zero
//! ```
//!
//! One `b` line per basis vector, in order. SVP files use `kind svp` and omit
//! `target`. Everything after `threshold_pow` is optional. `#` starts a comment.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{CvpInstance, IntVector, SvpInstance};

pub const INSTANCE_MAGIC: &str = "cvp01-instance";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Problem {
    Cvp(CvpInstance),
    Svp(SvpInstance),
}

impl Problem {
    pub fn p(&self) -> u32 {
        match self {
            Problem::Cvp(c) => c.p(),
            Problem::Svp(s) => s.p(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Problem::Cvp(c) => c.rank(),
            Problem::Svp(s) => s.rank(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Problem::Cvp(c) => c.dim(),
            Problem::Svp(s) => s.dim(),
        }
    }

    pub fn basis(&self) -> &[IntVector] {
        match self {
            Problem::Cvp(c) => c.basis(),
            Problem::Svp(s) => s.basis(),
        }
    }

    pub fn threshold_pow(&self) -> &BigInt {
        match self {
            Problem::Cvp(c) => c.threshold_pow(),
            Problem::Svp(s) => s.threshold_pow(),
        }
    }

    /// `‖Bz − t‖_p^p` for CVP, `‖Bz‖_p^p` for SVP.
    pub fn objective(&self, z: &[bool]) -> Result<BigInt> {
        match self {
            Problem::Cvp(c) => c.distance_pow(z),
            Problem::Svp(s) => s.length_pow(z),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenMode {
    Uniform,
    PlantedZero,
    /// Planted solution plus a perturbation with entries in `[−noise, noise]`.
    PlantedNear { noise: u64 },
}

impl GenMode {
    pub fn name(&self) -> &'static str {
        match self {
            GenMode::Uniform => "uniform",
            GenMode::PlantedZero => "planted-zero",
            GenMode::PlantedNear { .. } => "planted-near",
        }
    }
}

impl std::fmt::Display for GenMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GenMode::PlantedNear { noise } => write!(f, "planted-near:{noise}"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for GenMode {
    type Err = Error;

    /// `uniform`, `planted-zero`, `planted-near` (noise 1) or `planted-near:<noise>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(GenMode::Uniform),
            "planted-zero" => Ok(GenMode::PlantedZero),
            "planted-near" => Ok(GenMode::PlantedNear { noise: 1 }),
            _ => match s.strip_prefix("planted-near:") {
                Some(v) => v
                    .parse()
                    .map(|noise| GenMode::PlantedNear { noise })
                    .map_err(|_| Error::invalid(format!("bad noise bound in {s:?}"))),
                None => Err(Error::invalid(format!("unknown generator mode {s:?}"))),
            },
        }
    }
}

/// Provenance carried alongside generated instances.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InstanceMeta {
    pub seed: Option<u64>,
    pub coord_bound: Option<u64>,
    pub mode: Option<GenMode>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub problem: Problem,
    pub planted: Option<Vec<bool>>,
    pub meta: InstanceMeta,
}

impl InstanceFile {
    pub fn cvp(inst: CvpInstance) -> Self {
        InstanceFile { problem: Problem::Cvp(inst), planted: None, meta: InstanceMeta::default() }
    }

    pub fn svp(inst: SvpInstance) -> Self {
        InstanceFile { problem: Problem::Svp(inst), planted: None, meta: InstanceMeta::default() }
    }
}

fn write_vector(out: &mut String, key: &str, v: &IntVector) {
    out.push_str(key);
    for x in v.entries() {
        let _ = write!(out, " {x}");
    }
    out.push('\n');
}

pub fn write_instance(file: &InstanceFile) -> String {
    let mut out = String::new();
    let problem = &file.problem;
    let _ = writeln!(out, "{INSTANCE_MAGIC} {SCHEMA_VERSION}");
    let kind = match problem {
        Problem::Cvp(_) => "cvp",
        Problem::Svp(_) => "svp",
    };
    let _ = writeln!(out, "kind {kind}");
    let _ = writeln!(out, "p {}", problem.p());
    let _ = writeln!(out, "m {}", problem.dim());
    let _ = writeln!(out, "n {}", problem.rank());
    for b in problem.basis() {
        write_vector(&mut out, "b", b);
    }
    if let Problem::Cvp(c) = problem {
        write_vector(&mut out, "target", c.target());
    }
    let _ = writeln!(out, "threshold_pow {}", problem.threshold_pow());
    if let Some(z) = &file.planted {
        out.push_str("planted");
        for &bit in z {
            out.push_str(if bit { " 1" } else { " 0" });
        }
        out.push('\n');
    }
    if let Some(seed) = file.meta.seed {
        let _ = writeln!(out, "seed {seed}");
    }
    if let Some(eta) = file.meta.coord_bound {
        let _ = writeln!(out, "coord_bound {eta}");
    }
    if let Some(mode) = file.meta.mode {
        let _ = writeln!(out, "mode {mode}");
    }
    out
}

pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let mut version_seen = false;
    let mut kind = None;
    let (mut p, mut m, mut n) = (None, None, None);
    let mut basis = Vec::new();
    let mut target = None;
    let mut threshold = None;
    let mut planted = None;
    let mut meta = InstanceMeta::default();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let key = fields.next().expect("nonempty line");
        let values: Vec<&str> = fields.collect();
        let single = || -> Result<&str> {
            match values.as_slice() {
                [v] => Ok(v),
                _ => Err(Error::parse(line_no, format!("`{key}` takes exactly one value"))),
            }
        };
        let uint = |s: &str| -> Result<u64> {
            s.parse().map_err(|_| Error::parse(line_no, format!("bad unsigned integer {s:?}")))
        };
        let ints = || -> Result<IntVector> {
            let m = m.ok_or_else(|| Error::parse(line_no, "`m` must precede vectors"))?;
            if values.len() != m {
                return Err(Error::parse(line_no, format!("expected {m} entries, found {}", values.len())));
            }
            values
                .iter()
                .map(|s| s.parse::<BigInt>().map_err(|_| Error::parse(line_no, format!("bad integer {s:?}"))))
                .collect::<Result<Vec<_>>>()
                .map(IntVector::new)
        };
        if !version_seen {
            if key != INSTANCE_MAGIC {
                return Err(Error::parse(line_no, format!("expected `{INSTANCE_MAGIC} <version>` header")));
            }
            let version = uint(single()?)?;
            if version != u64::from(SCHEMA_VERSION) {
                return Err(Error::parse(line_no, format!("unsupported schema version {version}")));
            }
            version_seen = true;
            continue;
        }
        match key {
            "kind" => match single()? {
                "cvp" => kind = Some(false),
                "svp" => kind = Some(true),
                other => return Err(Error::parse(line_no, format!("unknown kind {other:?}"))),
            },
            "p" => p = Some(u32::try_from(uint(single()?)?).map_err(|_| Error::parse(line_no, "p too large"))?),
            "m" => m = Some(uint(single()?)? as usize),
            "n" => n = Some(uint(single()?)? as usize),
            "b" => basis.push(ints()?),
            "target" => target = Some(ints()?),
            "threshold_pow" => {
                threshold = Some(
                    single()?
                        .parse::<BigInt>()
                        .map_err(|_| Error::parse(line_no, "bad threshold_pow"))?,
                )
            }
            "planted" => {
                planted = Some(
                    values
                        .iter()
                        .map(|s| match *s {
                            "0" => Ok(false),
                            "1" => Ok(true),
                            other => Err(Error::parse(line_no, format!("bad planted bit {other:?}"))),
                        })
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            "seed" => meta.seed = Some(uint(single()?)?),
            "coord_bound" => meta.coord_bound = Some(uint(single()?)?),
            "mode" => meta.mode = Some(single()?.parse().map_err(|e: Error| Error::parse(line_no, e.to_string()))?),
            other => return Err(Error::parse(line_no, format!("unknown key {other:?}"))),
        }
    }
    if !version_seen {
        return Err(Error::parse(0, "empty instance file"));
    }
    let missing = |what: &str| Error::parse(0, format!("missing `{what}`"));
    let is_svp = kind.ok_or_else(|| missing("kind"))?;
    let p = p.ok_or_else(|| missing("p"))?;
    m.ok_or_else(|| missing("m"))?;
    let n = n.ok_or_else(|| missing("n"))?;
    let threshold = threshold.ok_or_else(|| missing("threshold_pow"))?;
    if basis.len() != n {
        return Err(Error::parse(0, format!("header says n = {n} but {} basis vectors given", basis.len())));
    }
    if let Some(z) = &planted {
        if z.len() != n {
            return Err(Error::parse(0, format!("planted vector has {} bits, expected {n}", z.len())));
        }
    }
    let problem = if is_svp {
        if target.is_some() {
            return Err(Error::parse(0, "SVP instances carry no target"));
        }
        Problem::Svp(SvpInstance::new(basis, p, threshold)?)
    } else {
        Problem::Cvp(CvpInstance::new(basis, target.ok_or_else(|| missing("target"))?, p, threshold)?)
    };
    Ok(InstanceFile { problem, planted, meta })
}
