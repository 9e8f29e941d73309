//! File formats and command execution for the `boolnet` binary.

pub mod format;
mod run;

pub use format::{
    emit_instance, emit_net, emit_ts, is_token, parse_instance, parse_net, parse_ts, ts_to_dot, FormatError,
};
pub use run::{parse_omega, run, CliError, Command, RunConfig, Verdict};
