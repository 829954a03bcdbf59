//! Experiment records and report files.
//!
//! One record per `(f, ell)` run, with a stable field set shared by the
//! counting and auxiliary-polynomial commands (inapplicable fields are
//! null/empty). `elapsed_ms` is the single nondeterministic field and always
//! comes last, so byte comparisons of reports simply mask the final field;
//! verification reports carry no timing at all. Files are written once,
//! atomically (temp file + rename).

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use fqt_core::{Error, Result};

/// One experiment record.
#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub q: u64,
    pub p: u64,
    pub e: u32,
    /// Canonical text of the polynomial.
    pub f: String,
    /// Total degree.
    pub d: u32,
    /// Number of variables.
    pub n: usize,
    pub ell: u32,
    pub regime: String,
    pub beta: u32,
    /// Printed bad primes, present on auxiliary runs.
    pub bad_primes: Option<Vec<String>>,
    /// Truncated `log_q b(f)` as an exact rational string.
    pub b_log: Option<String>,
    pub count: Option<u64>,
    #[serde(rename = "M")]
    pub m: Option<u32>,
    pub deg_g: Option<u32>,
    pub bound_thm: Option<f64>,
    pub ratio: Option<f64>,
    /// Wall-clock milliseconds; the only nondeterministic field, kept last.
    pub elapsed_ms: u64,
}

pub const CSV_HEADER: &str =
    "q,p,e,f,d,n,ell,regime,beta,bad_primes,b_log,count,M,deg_g,bound_thm,ratio,elapsed_ms";

impl CountReport {
    pub fn csv_row(&self) -> String {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(|x| x.to_string()).unwrap_or_default()
        }
        let bad = self
            .bad_primes
            .as_ref()
            .map(|ps| ps.join("|"))
            .unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.q,
            self.p,
            self.e,
            self.f,
            self.d,
            self.n,
            self.ell,
            self.regime,
            self.beta,
            bad,
            opt(&self.b_log),
            opt(&self.count),
            opt(&self.m),
            opt(&self.deg_g),
            opt(&self.bound_thm),
            opt(&self.ratio),
            self.elapsed_ms,
        )
    }
}

/// Render a batch of records as a CSV table.
pub fn to_csv(reports: &[CountReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Render a batch of records as pretty JSON (stable field order).
pub fn to_json(reports: &[CountReport]) -> Result<String> {
    serde_json::to_string_pretty(reports)
        .map_err(|e| Error::consistency(format!("serialization failed: {e}")))
}

/// Write a report file once, atomically: the content lands in a sibling
/// temp file which is then renamed over the target.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut file = std::fs::File::create(&tmp)
            .map_err(|e| Error::precondition(format!("cannot create {}: {e}", tmp.display())))?;
        file.write_all(content.as_bytes())
            .map_err(|e| Error::precondition(format!("cannot write {}: {e}", tmp.display())))?;
        file.sync_all().ok();
    }
    std::fs::rename(&tmp, path)
        .map_err(|e| Error::precondition(format!("cannot rename to {}: {e}", path.display())))
}

/// Two-column plot data (`ell` vs. a value), consumable by any plotting tool.
pub fn plot_data(pairs: &[(u32, f64)]) -> String {
    let mut out = String::new();
    for (ell, v) in pairs {
        out.push_str(&format!("{ell} {v}\n"));
    }
    out
}
