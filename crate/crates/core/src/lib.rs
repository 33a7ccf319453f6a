//! Exact solvers for the (0,1) closest and shortest vector problems in even
//! `ℓ_p` norms, with reductions to minimum-weight (hyper)clique and to
//! Weighted Max-p-SAT.

mod decimal;
pub mod clique;
pub mod enumerate;
pub mod error;
pub mod hyperclique;
pub mod io;
pub mod lattice;
pub mod limits;
pub mod maxsat;
pub mod pipeline;
pub mod solvers;

pub use error::{Error, Result};
pub use lattice::{CvpInstance, IntVector, SolveReport, SvpInstance, Witness};
pub use limits::Limits;
pub use pipeline::{
    brute_force_cvp, brute_force_svp, solve_cvp, solve_cvp_via_clique, solve_svp_via_cvp, CliqueMethod,
    CvpMethod,
};
