//! Command implementations behind the `mub` binary. Each command returns a
//! serialisable report; `output` turns reports into JSON, CSV or a table.

pub mod config;
pub mod ingest;
pub mod output;
pub mod reports;
pub mod table1;
pub mod verify;

pub use config::{OutputFormat, RunConfig, Switch};
pub use ingest::{ingest_state, parse_state};
pub use table1::{cmd_table1, Achievability, Provenance, Table1, Table1Row};
pub use verify::{cmd_verify_all, VerifyReport};
