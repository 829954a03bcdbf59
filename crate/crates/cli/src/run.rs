//! The three commands behind the binary: `count`, `aux` and `verify`.

use std::time::Instant;

use fqt_core::detmethod::{
    auxiliary_poly, beta, classify_regime, AuxOptions,
};
use fqt_core::heights::{enumerate_affine, enumerate_projective, CollectMode};
use fqt_core::text::parse_multipoly_auto;
use fqt_core::{Error, MultiPoly, Result};

use crate::config::{ExperimentConfig, Format, Mode};
use crate::report::{to_csv, to_json, write_atomic, CountReport};
use crate::suites::{run_all_suites, SuiteCtx, VerifyReport};

fn parse_poly(cfg: &ExperimentConfig) -> Result<MultiPoly> {
    let text = cfg
        .poly
        .as_deref()
        .ok_or_else(|| Error::precondition("no polynomial given (use --f or the config file)"))?;
    let field = cfg.field()?;
    parse_multipoly_auto(text, &field)
}

fn base_report(cfg: &ExperimentConfig, f: &MultiPoly, ell: u32) -> Result<CountReport> {
    let d = f
        .total_degree()
        .ok_or_else(|| Error::precondition("the zero polynomial has no experiments"))?;
    let regime = classify_regime(cfg.p, d, cfg.eps);
    Ok(CountReport {
        q: f.ctx().q(),
        p: cfg.p,
        e: cfg.e,
        f: f.to_string(),
        d,
        n: f.nvars(),
        ell,
        regime: regime.as_str().into(),
        beta: beta(f.ctx().q(), d, regime),
        bad_primes: None,
        b_log: None,
        count: None,
        m: None,
        deg_g: None,
        bound_thm: None,
        ratio: None,
        elapsed_ms: 0,
    })
}

/// Run the counting command over every configured height bound.
pub fn cmd_count(cfg: &ExperimentConfig) -> Result<Vec<CountReport>> {
    cfg.validate()?;
    let f = parse_poly(cfg)?;
    let mut reports = Vec::new();
    for &ell in &cfg.ells {
        let start = Instant::now();
        let count = match cfg.mode {
            Mode::Affine => enumerate_affine(&f, ell, &cfg.budget, CollectMode::CountOnly)?.count,
            Mode::Projective => {
                enumerate_projective(&f, ell, &cfg.budget, CollectMode::CountOnly)?.count
            }
        };
        let mut report = base_report(cfg, &f, ell)?;
        report.count = Some(count);
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        reports.push(report);
    }
    emit(cfg, &reports)?;
    Ok(reports)
}

/// Run the auxiliary-polynomial command over every configured height bound.
pub fn cmd_aux(cfg: &ExperimentConfig) -> Result<Vec<CountReport>> {
    cfg.validate()?;
    let f = parse_poly(cfg)?;
    let opts = AuxOptions {
        eps: cfg.eps,
        constant: cfg.constant,
        bad_prime_cap: cfg.bad_prime_cap,
    };
    let mut reports = Vec::new();
    for &ell in &cfg.ells {
        let start = Instant::now();
        let res = auxiliary_poly(&f, ell, &opts, &cfg.budget)?;
        let mut report = base_report(cfg, &f, ell)?;
        report.count = Some(res.point_count);
        report.m = Some(res.degree);
        report.deg_g = res.g.total_degree();
        report.bound_thm = Some(res.bound);
        report.ratio = Some(res.ratio);
        report.bad_primes = Some(res.bad_primes.iter().map(|p| p.to_string()).collect());
        report.b_log = Some(res.log_b.to_string());
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        reports.push(report);
    }
    emit(cfg, &reports)?;
    Ok(reports)
}

/// Run every property suite with the configured seed. The report is fully
/// deterministic (no timing), so identical runs produce identical bytes.
pub fn cmd_verify(cfg: &ExperimentConfig, fault: Option<&str>) -> Result<VerifyReport> {
    cfg.validate()?;
    let ctx = SuiteCtx { seed: cfg.seed, budget: cfg.budget.clone(), fault: fault.map(String::from) };
    let report = run_all_suites(&ctx);
    if let Some(out) = &cfg.out {
        let body = serde_json::to_string_pretty(&report)
            .map_err(|e| Error::consistency(format!("serialization failed: {e}")))?;
        write_atomic(out, &body)?;
    }
    Ok(report)
}

fn emit(cfg: &ExperimentConfig, reports: &[CountReport]) -> Result<()> {
    let body = match cfg.format {
        Format::Csv => to_csv(reports),
        Format::Json => to_json(reports)?,
    };
    match &cfg.out {
        Some(path) => write_atomic(path, &body),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_conic_projective() {
        let cfg = ExperimentConfig {
            poly: Some("x0*x2 - x1^2".into()),
            ells: vec![1],
            ..ExperimentConfig::default()
        };
        let reports = cmd_count(&cfg).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].count, Some(3));
        assert_eq!(reports[0].d, 2);
    }

    #[test]
    fn count_empty_variety() {
        let cfg = ExperimentConfig {
            poly: Some("x0*x1 + 1".into()),
            mode: Mode::Affine,
            ells: vec![2],
            p: 2,
            ..ExperimentConfig::default()
        };
        let reports = cmd_count(&cfg).unwrap();
        // x0*x1 = 1 over F_2[t], height < 2: units are constants, so (1,1) only
        assert_eq!(reports[0].count, Some(1));
    }

    #[test]
    fn aux_conic_reports_m2() {
        let cfg = ExperimentConfig {
            poly: Some("x0*x2 - x1^2".into()),
            ells: vec![1],
            bad_prime_cap: Some(2),
            ..ExperimentConfig::default()
        };
        let reports = cmd_aux(&cfg).unwrap();
        assert_eq!(reports[0].m, Some(2));
        assert_eq!(reports[0].count, Some(3));
        assert_eq!(reports[0].bad_primes.as_deref(), Some(&[][..]));
    }

    #[test]
    fn aux_rejects_reducible_with_factor_name() {
        let cfg = ExperimentConfig {
            poly: Some("x0*x2".into()),
            ells: vec![1],
            bad_prime_cap: Some(1),
            ..ExperimentConfig::default()
        };
        match cmd_aux(&cfg) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("reducible")),
            other => panic!("expected a precondition error, got {other:?}"),
        }
    }

    #[test]
    fn budget_error_propagates() {
        let mut budget = fqt_core::Budget::default();
        budget.max_enum_tuples = 4;
        let cfg = ExperimentConfig {
            poly: Some("x0*x2 - x1^2".into()),
            ells: vec![2],
            budget,
            ..ExperimentConfig::default()
        };
        assert!(matches!(cmd_count(&cfg), Err(Error::Budget(_))));
    }
}
