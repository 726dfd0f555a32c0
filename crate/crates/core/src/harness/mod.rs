//! Stimulus generation, exhaustive verification, width sweeps and reports.

pub mod operands;
pub mod report;
pub mod sweep;
pub mod verify;

pub use operands::{gen_operands, DistKind, OperandDistribution, EXHAUSTIVE_LIMIT, RNG_NAME};
pub use report::{emit_report, write_report, ReportFormat, ReportMeta, ReportRecord, COLUMNS};
pub use sweep::{sweep, ReportRow, SweepConfig};
pub use verify::{exhaustive_verify, exhaustive_verify_with, Mismatch, Verdict};
