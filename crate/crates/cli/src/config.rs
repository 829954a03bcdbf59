//! Experiment configuration: a declarative TOML file plus flag overrides.
//!
//! Every cap is explicit; the file keys mirror the runtime configuration
//! one-to-one. Flags always win over file values.

use std::path::PathBuf;

use serde::Deserialize;

use fqt_core::{Budget, Error, Field, Result};

/// Output format of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Whether counting runs over affine tuples or projective representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Affine,
    Projective,
}

/// Validated runtime configuration of a single experiment invocation.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub p: u64,
    pub e: u32,
    pub modulus: Option<String>,
    /// Polynomial text in the x0..x9 grammar.
    pub poly: Option<String>,
    /// Height bounds to run, in order; never empty.
    pub ells: Vec<u32>,
    pub eps: f64,
    pub constant: f64,
    pub mode: Mode,
    pub seed: u64,
    /// Degree cap of the bad-prime search (`--cap-deg`).
    pub bad_prime_cap: Option<u32>,
    pub budget: Budget,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            p: 2,
            e: 1,
            modulus: None,
            poly: None,
            ells: vec![1],
            eps: 0.0,
            constant: 1.0,
            mode: Mode::Projective,
            seed: 42,
            bad_prime_cap: None,
            budget: Budget::default(),
            out: None,
            format: Format::Json,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ells.is_empty() {
            return Err(Error::precondition("the ell range must be nonempty"));
        }
        if self.budget.max_enum_tuples == 0
            || self.budget.max_candidate_polys == 0
            || self.budget.max_field_size == 0
            || self.budget.max_aux_degree == 0
        {
            return Err(Error::precondition("all caps must be positive"));
        }
        Ok(())
    }

    /// Build the field from `p`, `e` and the optional modulus text
    /// (a polynomial in `u` over `F_p`, e.g. `u^2+u+1`).
    pub fn field(&self) -> Result<Field> {
        match (&self.modulus, self.e) {
            (None, _) => Field::new(self.p, self.e, &self.budget),
            (Some(text), _) => {
                let fp = Field::new(self.p, 1, &self.budget)?;
                // the modulus grammar reuses the ring grammar with t := u
                let as_t = text.replace('u', "t");
                let parsed = fqt_core::text::parse_ring_element(&as_t, &fp)?;
                let deg = parsed
                    .degree()
                    .finite()
                    .ok_or_else(|| Error::precondition("the modulus cannot be zero"))?;
                let coeffs: Vec<u64> =
                    (0..=deg as usize).map(|k| parsed.coeff(k).index()).collect();
                Field::with_modulus(self.p, self.e, coeffs, &self.budget)
            }
        }
    }
}

/// Raw shape of the TOML configuration file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FileConfig {
    pub field: FieldSection,
    pub poly: PolySection,
    pub run: RunSection,
    pub caps: CapsSection,
    pub output: OutputSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FieldSection {
    pub p: u64,
    pub e: u32,
    pub modulus: Option<String>,
}

impl Default for FieldSection {
    fn default() -> Self {
        FieldSection { p: 2, e: 1, modulus: None }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PolySection {
    pub inline: Option<String>,
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    pub ell: Vec<u32>,
    pub eps: f64,
    pub c: f64,
    pub mode: String,
    pub seed: u64,
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection { ell: vec![1], eps: 0.0, c: 1.0, mode: "projective".into(), seed: 42 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CapsSection {
    pub enum_budget: u64,
    pub prime_degree: Option<u32>,
    pub max_m: u32,
    pub candidate_polys: u64,
    pub field_size: u64,
    pub minor_combinations: u64,
}

impl Default for CapsSection {
    fn default() -> Self {
        let b = Budget::default();
        CapsSection {
            enum_budget: b.max_enum_tuples,
            prime_degree: None,
            max_m: b.max_aux_degree,
            candidate_polys: b.max_candidate_polys,
            field_size: b.max_field_size,
            minor_combinations: b.max_minor_combinations,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub out: Option<PathBuf>,
    pub format: Option<String>,
}

impl FileConfig {
    pub fn load(path: &std::path::Path) -> Result<FileConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::precondition(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::parse(0, format!("config: {e}")))
    }

    pub fn into_experiment(self) -> Result<ExperimentConfig> {
        let poly = match (self.poly.inline, self.poly.file) {
            (Some(_), Some(_)) => {
                return Err(Error::precondition(
                    "give the polynomial inline or as a file, not both",
                ))
            }
            (Some(text), None) => Some(text),
            (None, Some(path)) => Some(
                std::fs::read_to_string(&path)
                    .map_err(|e| {
                        Error::precondition(format!("cannot read {}: {e}", path.display()))
                    })?
                    .trim()
                    .to_string(),
            ),
            (None, None) => None,
        };
        let mode = match self.run.mode.as_str() {
            "affine" => Mode::Affine,
            "projective" => Mode::Projective,
            other => {
                return Err(Error::precondition(format!(
                    "unknown mode '{other}' (use affine or projective)"
                )))
            }
        };
        let format = match self.output.format.as_deref() {
            None | Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some(other) => {
                return Err(Error::precondition(format!(
                    "unknown format '{other}' (use csv or json)"
                )))
            }
        };
        let budget = Budget {
            max_enum_tuples: self.caps.enum_budget,
            max_candidate_polys: self.caps.candidate_polys,
            max_field_size: self.caps.field_size,
            max_aux_degree: self.caps.max_m,
            max_prime_degree: self
                .caps
                .prime_degree
                .map(|c| c.max(Budget::default().max_prime_degree))
                .unwrap_or(Budget::default().max_prime_degree),
            max_minor_combinations: self.caps.minor_combinations,
        };
        let cfg = ExperimentConfig {
            p: self.field.p,
            e: self.field.e,
            modulus: self.field.modulus,
            poly,
            ells: self.run.ell,
            eps: self.run.eps,
            constant: self.run.c,
            mode,
            seed: self.run.seed,
            bad_prime_cap: self.caps.prime_degree,
            budget,
            out: self.output.out,
            format,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parse an `--ell` argument: a single value `2`, a list `1,2,4`, or an
/// inclusive range `1..3`.
pub fn parse_ell_spec(spec: &str) -> Result<Vec<u32>> {
    let spec = spec.trim();
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u32 = lo
            .trim()
            .parse()
            .map_err(|_| Error::precondition(format!("bad ell range start '{lo}'")))?;
        let hi: u32 = hi
            .trim()
            .parse()
            .map_err(|_| Error::precondition(format!("bad ell range end '{hi}'")))?;
        if lo > hi {
            return Err(Error::precondition("empty ell range"));
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| Error::precondition(format!("bad ell value '{part}'")))
        })
        .collect()
}
