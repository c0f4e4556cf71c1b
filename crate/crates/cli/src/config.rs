use std::path::PathBuf;

use mub_core::mub::check_prime;
use mub_core::Result;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Switch {
    On,
    Off,
}

impl Switch {
    pub fn is_on(self) -> bool {
        self == Switch::On
    }
}

/// Everything a command needs besides its own arguments.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub d: Option<u32>,
    pub symmetry: bool,
    pub prefilter: bool,
    pub marathon: bool,
    pub format: OutputFormat,
    pub checkpoint: Option<PathBuf>,
    pub workers: Option<usize>,
    pub timings: bool,
}

impl RunConfig {
    pub fn new(command: impl Into<String>, format: OutputFormat) -> Self {
        RunConfig {
            command: command.into(),
            d: None,
            symmetry: true,
            prefilter: true,
            marathon: false,
            format,
            checkpoint: None,
            workers: None,
            timings: false,
        }
    }

    /// Sets d after checking that it is prime.
    pub fn with_dim(mut self, d: u32) -> Result<Self> {
        check_prime(d)?;
        self.d = Some(d);
        Ok(self)
    }
}
