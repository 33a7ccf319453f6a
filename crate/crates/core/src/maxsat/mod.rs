//! (0,1)-CVP_p and (0,1)-SVP_p to Weighted Max-p-SAT, plus an exhaustive Max-SAT oracle.

mod brute;
mod reduce;
mod wcnf;

pub use brute::{brute_force_maxsat, brute_force_maxsat_with_limit, MaxSatResult};
pub use reduce::{
    maxsat_scale, reduce_cvp_to_wcnf, reduce_cvp_to_wcnf_with_d, reduce_svp_to_wcnf,
};
pub use wcnf::{parse_wcnf, write_wcnf};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A DIMACS literal: `v` for variable `v` (1-based), `-v` for its negation.
pub type Lit = i64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedClause {
    /// Sorted by variable, no variable repeated.
    pub lits: Vec<Lit>,
    pub weight: BigInt,
}

impl WeightedClause {
    pub fn is_satisfied(&self, assignment: &[bool]) -> bool {
        self.lits.iter().any(|&l| {
            let value = assignment[(l.unsigned_abs() - 1) as usize];
            if l > 0 {
                value
            } else {
                !value
            }
        })
    }
}

/// Weighted soft clauses plus the bookkeeping tying them back to lattice distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WcnfFormula {
    pub num_vars: usize,
    /// Leading variables that map to lattice coefficients; the rest are auxiliary.
    pub primary_vars: usize,
    pub clauses: Vec<WeightedClause>,
    /// Weight of clauses that became constant-true during construction.
    pub offset: BigInt,
    /// Common denominator cleared from the rational clause weights.
    pub scale: BigInt,
    /// The per-tuple budget `D`.
    pub d: BigInt,
    /// Decision threshold: YES iff some assignment reaches it (offset included).
    pub threshold: BigInt,
}

impl WcnfFormula {
    /// Checks the structural invariants: valid literals, no repeats or
    /// complementary pairs, width at most `max_width`, positive weights, and at
    /// most one clause per literal set.
    pub fn validate(&self, max_width: usize) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for c in &self.clauses {
            if c.lits.is_empty() || c.lits.len() > max_width {
                return Err(Error::invalid(format!("clause {:?} has bad width", c.lits)));
            }
            if !c.weight.is_positive() {
                return Err(Error::invalid(format!("clause {:?} has non-positive weight", c.lits)));
            }
            let mut vars: Vec<u64> = c.lits.iter().map(|l| l.unsigned_abs()).collect();
            if vars.iter().any(|&v| v == 0 || v as usize > self.num_vars) {
                return Err(Error::invalid(format!("clause {:?} names an unknown variable", c.lits)));
            }
            vars.sort_unstable();
            vars.dedup();
            if vars.len() != c.lits.len() {
                return Err(Error::invalid(format!("clause {:?} repeats a variable", c.lits)));
            }
            let mut key = c.lits.clone();
            key.sort_unstable();
            if !seen.insert(key) {
                return Err(Error::invalid(format!("clause {:?} appears twice", c.lits)));
            }
        }
        Ok(())
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(|c| c.lits.len()).max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> BigInt {
        self.clauses.iter().map(|c| &c.weight).sum()
    }

    /// Weight of satisfied clauses, excluding the offset.
    pub fn satisfied_weight(&self, assignment: &[bool]) -> Result<BigInt> {
        if assignment.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: assignment.len(),
            });
        }
        Ok(self
            .clauses
            .iter()
            .filter(|c| c.is_satisfied(assignment))
            .fold(BigInt::zero(), |acc, c| acc + &c.weight))
    }

    /// Satisfied weight plus offset, the quantity compared against `threshold`.
    pub fn objective(&self, assignment: &[bool]) -> Result<BigInt> {
        Ok(self.satisfied_weight(assignment)? + &self.offset)
    }

    pub fn is_yes(&self, objective: &BigInt) -> bool {
        objective >= &self.threshold
    }
}
