//! File formats, instance generation and benchmark suites.

pub mod bench;
mod generate;
mod graph;
mod instance;
mod report;

pub use generate::{generate_instance, generate_svp_instance, GenParams};
pub use graph::{parse_graph, parse_hypergraph, write_graph, write_hypergraph};
pub use instance::{parse_instance, write_instance, GenMode, InstanceFile, InstanceMeta, Problem};
pub use report::{cross_check, report_from_json, report_to_json, verify_report};
