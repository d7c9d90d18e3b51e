//! Batch evaluation of knot tables, clustering by invariant value and
//! symmetry reports.

pub mod annotations;
pub mod batch;
pub mod cluster;
pub mod fingerprint;
pub mod report;

pub use annotations::{Annotations, Clique, CliqueKind};
pub use batch::{run_batch, KnotResult, ResultsFile};
pub use cluster::cluster_fingerprints;
pub use fingerprint::{fingerprint, symmetry_flags, InvariantFingerprint, QParity, SymmetryFlags};
pub use report::{emit_report, Report, ReportMode};
