//! Verification reports and the operations behind each CLI subcommand.

mod commands;
mod report;

pub use commands::{
    cmd_depth, cmd_gen, cmd_join_demo, cmd_quotient, cmd_theorem, load_graph_file, verify_family,
    verify_graph_file, DepthReport, GenMetadata, GenOutput, HarnessError, QuotientReport, CLAIM_MIN_LEVEL,
};
pub use report::{single, ClaimRecord, Measured, Parameters, Status, VerificationReport};

/// Exit status for a clean pass.
pub const EXIT_PASS: i32 = 0;
/// Exit status when any check fails.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for unusable input or parameters.
pub const EXIT_INVALID: i32 = 2;
