use mub_core::exactfield::primes_up_to;
use mub_core::search::{classify_d3, saturation_search, sharp_bound, SaturationOptions};
use mub_core::support::complete_bound;
use mub_core::{Error, Result};
use serde::Serialize;

use crate::config::RunConfig;
use crate::output::{opt, Tabular};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Achievability {
    Yes,
    No,
    /// Ruled out by an exhaustive search rather than a proof.
    NumericNo,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Theorem,
    Search,
    PaperNumeric,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Row {
    pub d: u32,
    /// (d+1)²/2 as an exact fraction
    pub t: String,
    pub achievable: Achievability,
    pub t_s: Option<usize>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1 {
    pub rows: Vec<Table1Row>,
}

impl Tabular for Table1 {
    fn headers(&self) -> Vec<&'static str> {
        vec!["d", "T(d)", "achievable", "T_s(d)", "provenance"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let a = match r.achievable {
                    Achievability::Yes => "yes",
                    Achievability::No => "no",
                    Achievability::NumericNo => "(no)",
                    Achievability::Unknown => "?",
                };
                let p = match r.provenance {
                    Provenance::Theorem => "theorem",
                    Provenance::Search => "search",
                    Provenance::PaperNumeric => "paper-numeric",
                };
                vec![r.d.to_string(), r.t.clone(), a.into(), opt(&r.t_s), p.into()]
            })
            .collect()
    }
}

fn row(d: u32, cfg: &RunConfig, search: bool) -> Result<Table1Row> {
    let t = complete_bound(d);
    let mut r = Table1Row {
        d,
        t: t.to_string(),
        achievable: Achievability::Unknown,
        t_s: None,
        provenance: Provenance::Theorem,
    };
    if d <= 7 {
        r.t_s = sharp_bound(d)?.bound.t_s;
    }
    match d {
        // T(2) is not an integer
        2 => r.achievable = Achievability::No,
        3 => {
            r.achievable = if classify_d3()?.is_empty() {
                Achievability::No
            } else {
                Achievability::Yes
            }
        }
        _ if d <= 7 || search => {
            let opts = SaturationOptions {
                marathon: cfg.marathon,
                workers: cfg.workers,
                ..Default::default()
            };
            let report = saturation_search(d, &opts)?;
            let no = if d <= 7 { Achievability::No } else { Achievability::NumericNo };
            r.achievable = if report.hit_count == 0 { no } else { Achievability::Unknown };
            if d > 7 {
                r.provenance = Provenance::Search;
            }
        }
        _ => r.provenance = Provenance::Search,
    }
    // The sharp value at d = 7 rests on facts the literature only supports numerically.
    if d == 7 {
        r.provenance = Provenance::PaperNumeric;
    }
    Ok(r)
}

/// Rows of the bounds table for every prime up to `max_d`. With `search`
/// false, rows beyond d = 7 skip the saturation search and report
/// achievability as unknown.
pub fn cmd_table1(max_d: u32, cfg: &RunConfig, search: bool) -> Result<Table1> {
    if max_d > 13 && search && !cfg.marathon {
        return Err(Error::invalid_dimension(max_d, "rows beyond d = 13 need --marathon"));
    }
    if max_d >= 23 {
        return Err(Error::invalid_dimension(max_d, "dimensions from 23 on are not supported"));
    }
    let rows = primes_up_to(max_d)
        .into_iter()
        .map(|d| row(d, cfg, search))
        .collect::<Result<Vec<_>>>()?;
    Ok(Table1 { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::OutputFormat;

    #[test]
    fn small_rows() {
        let cfg = RunConfig::new("table1", OutputFormat::Json);
        let t = cmd_table1(5, &cfg, true).unwrap();
        let got: Vec<(u32, &str, Achievability, Option<usize>)> =
            t.rows.iter().map(|r| (r.d, r.t.as_str(), r.achievable, r.t_s)).collect();
        assert_eq!(
            got,
            vec![
                (2, "9/2", Achievability::No, Some(5)),
                (3, "8", Achievability::Yes, Some(8)),
                (5, "18", Achievability::No, Some(22)),
            ]
        );
    }

    #[test]
    fn marathon_gate() {
        let cfg = RunConfig::new("table1", OutputFormat::Json);
        assert!(cmd_table1(17, &cfg, true).is_err());
        assert!(cmd_table1(23, &cfg, false).is_err());
    }
}
