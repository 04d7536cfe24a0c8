//! The `verify` campaign: every enabled check over a range of `k` and moduli,
//! merged into one summary document.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::commands::{parse_reference, reference_densities};
use super::{Format, Opts, EXIT_OK, EXIT_RESOURCE, EXIT_VERIFY_FAILED};
use crate::analysis::{
    analysis_row, check_density_implication, check_lower_bound, joint_densities, max_even_run,
    odd_density, odd_fraction_of_prefix, write_csv, Rational,
};
use crate::engines::{mod_values, Caps, PartitionParams};
use crate::error::{Error, Result};
use crate::period::{
    minimal_period, residual_poly, structural_bound, verify_certificate, CertificateVerdict,
    FactoredInteger, PeriodCertificate, TOOL_VERSION,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Table,
    Period,
    Density,
    Runs,
    Lemma31,
    Thm12,
    Thm13,
    Residual,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Table,
        Check::Period,
        Check::Density,
        Check::Runs,
        Check::Lemma31,
        Check::Thm12,
        Check::Thm13,
        Check::Residual,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Table => "table",
            Check::Period => "period",
            Check::Density => "density",
            Check::Runs => "runs",
            Check::Lemma31 => "lemma31",
            Check::Thm12 => "thm12",
            Check::Thm13 => "thm13",
            Check::Residual => "residual",
        }
    }

    /// Checks other than `period` are parity statements and only run for m = 2.
    fn parity_only(&self) -> bool {
        !matches!(self, Check::Period)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::InvalidParams(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignConfig {
    pub k_min: u32,
    pub k_max: u32,
    pub moduli: Vec<u64>,
    pub checks: BTreeSet<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
    pub formats: Vec<String>,
    pub caps: Caps,
    pub canonical: bool,
    #[serde(skip)]
    pub jobs: usize,
    /// Published densities for k = 1.. used by the `table` check.
    pub reference: Vec<Rational>,
    pub certificates: Vec<PathBuf>,
}

impl CampaignConfig {
    pub fn new(k_min: u32, k_max: u32, moduli: Vec<u64>) -> Result<Self> {
        let cfg = CampaignConfig {
            k_min,
            k_max,
            moduli,
            checks: Check::ALL.into_iter().collect(),
            out_dir: None,
            formats: vec!["json".into()],
            caps: Caps::default(),
            canonical: true,
            jobs: 1,
            reference: reference_densities(),
            certificates: Vec::new(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_opts(o: &Opts) -> Result<Self> {
        let k_max = o.k_max.or(o.k).unwrap_or(10);
        let k_min = o.k.unwrap_or(1).min(k_max);
        let mut cfg = CampaignConfig::new(k_min, k_max, o.moduli()?)?;
        if let Some(list) = &o.checks {
            cfg.checks = list
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(str::parse)
                .collect::<Result<_>>()?;
        }
        cfg.out_dir = o.out.clone();
        cfg.formats = match o.format {
            Some(Format::Csv) => vec!["json".into(), "csv".into()],
            _ => vec!["json".into()],
        };
        cfg.caps = o.caps();
        cfg.canonical = o.canonical;
        cfg.jobs = o.jobs.unwrap_or(1).max(1);
        if let Some(r) = &o.reference_table {
            cfg.reference = parse_reference(r)?;
        }
        cfg.certificates = o.cert.clone();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_min == 0 || self.k_min > self.k_max {
            return Err(Error::InvalidParams(format!(
                "empty k range {}..={}",
                self.k_min, self.k_max
            )));
        }
        if self.moduli.is_empty() || self.moduli.iter().any(|&m| m < 2) {
            return Err(Error::InvalidParams("moduli must be >= 2".into()));
        }
        if self.caps.max_residues == 0 || self.caps.max_exact == 0 {
            return Err(Error::InvalidParams("caps must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub k: u32,
    pub m: u64,
    pub check: Check,
    pub passed: bool,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    #[serde(skip)]
    pub resource_abort: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateResult {
    pub file: String,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignSummary {
    pub tool_version: String,
    pub config: CampaignConfig,
    pub results: Vec<CheckResult>,
    pub certificates: Vec<CertificateResult>,
    pub all_passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl CampaignSummary {
    pub fn resource_abort(&self) -> bool {
        self.results.iter().any(|r| r.resource_abort)
    }

    pub fn exit_code(&self) -> i32 {
        if self.resource_abort() {
            EXIT_RESOURCE
        } else if self.all_passed {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        }
    }
}

fn run_check(check: Check, k: u32, m: u64, cfg: &CampaignConfig) -> Result<(bool, Value)> {
    let caps = &cfg.caps;
    match check {
        Check::Table => {
            let density = odd_density(k, caps)?;
            match cfg.reference.get(k as usize - 1) {
                Some(&r) => Ok((
                    r == density,
                    json!({ "density": density, "reference": r }),
                )),
                None => Ok((true, json!({ "density": density, "reference": null }))),
            }
        }
        Check::Period => {
            let (period, cert) = minimal_period(k, m, caps)?;
            let verdict = verify_certificate(&cert, caps)?;
            let bound = structural_bound(k, m)?;
            let divides = FactoredInteger::from_u64(period).divides(&bound);
            let mut details = json!({
                "L": period,
                "structural_bound": bound.value().to_string(),
                "divides_bound": divides,
                "certificate_valid": verdict.is_valid(),
            });
            if let CertificateVerdict::Invalid(why) = verdict {
                details["certificate_failure"] = json!(why);
            }
            Ok((divides && details["certificate_valid"] == json!(true), details))
        }
        Check::Density => {
            let density = odd_density(k, caps)?;
            let period = crate::period::minimal_period_u64(k, 2)?;
            let over_two_periods = odd_fraction_of_prefix(k, 2 * period, caps)?;
            let naive = mod_values(PartitionParams::new(k, 2)?, 0, period, caps)?;
            let naive_density = Rational::new(naive.values().iter().sum(), period);
            Ok((
                density == over_two_periods && density == naive_density,
                json!({
                    "L": period,
                    "density": density,
                    "density_over_2L": over_two_periods,
                    "density_residue_engine": naive_density,
                }),
            ))
        }
        Check::Runs => {
            let r = max_even_run(k, caps)?;
            Ok((r.holds(), serde_json::to_value(&r)?))
        }
        Check::Lemma31 => {
            if k < 2 {
                return Ok((true, json!({ "applicable": false })));
            }
            let r = joint_densities(k, caps)?;
            let ok = r.odd_column_balanced && r.joint.total() == Rational::integer(1);
            Ok((ok, serde_json::to_value(&r)?))
        }
        Check::Thm12 => {
            let rec = check_density_implication(k + 1, caps)?
                .pop()
                .expect("one record for k < k + 1");
            Ok((rec.holds, serde_json::to_value(&rec)?))
        }
        Check::Thm13 => {
            let r = check_lower_bound(k, caps)?;
            Ok((r.holds(), serde_json::to_value(&r)?))
        }
        Check::Residual => {
            let r = residual_poly(k, caps)?;
            let reconstructs = r.reconstructs()?;
            Ok((
                r.degree_identity_holds() && reconstructs,
                json!({
                    "L": r.period,
                    "degree": r.degree(),
                    "triangular": crate::engines::triangular(k),
                    "degree_identity": r.degree_identity_holds(),
                    "reconstructs": reconstructs,
                }),
            ))
        }
    }
}

fn check_certificate(path: &Path, cfg: &CampaignConfig) -> CertificateResult {
    let file = if cfg.canonical {
        path.file_name()
            .map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into_owned())
    } else {
        path.display().to_string()
    };
    let verdict = PeriodCertificate::read(path).and_then(|c| verify_certificate(&c, &cfg.caps));
    match verdict {
        Ok(CertificateVerdict::Valid) => CertificateResult {
            file,
            valid: true,
            reason: None,
        },
        Ok(CertificateVerdict::Invalid(why)) => CertificateResult {
            file,
            valid: false,
            reason: Some(why),
        },
        Err(e) => CertificateResult {
            file,
            valid: false,
            reason: Some(e.to_string()),
        },
    }
}

/// Runs the campaign without writing anything.
pub fn evaluate_campaign(cfg: &CampaignConfig) -> Result<CampaignSummary> {
    cfg.validate()?;
    let started = Instant::now();
    let mut tasks = Vec::new();
    for k in cfg.k_min..=cfg.k_max {
        for &m in &cfg.moduli {
            for &check in &cfg.checks {
                if check.parity_only() && m != 2 {
                    continue;
                }
                tasks.push((k, m, check));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
    // collect() keeps task order, so the output does not depend on scheduling.
    let results: Vec<CheckResult> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(k, m, check)| {
                let t0 = Instant::now();
                let outcome = run_check(check, k, m, cfg);
                let elapsed_ms = (!cfg.canonical).then(|| t0.elapsed().as_millis());
                match outcome {
                    Ok((passed, details)) => CheckResult {
                        k,
                        m,
                        check,
                        passed,
                        details,
                        error: None,
                        elapsed_ms,
                        resource_abort: false,
                    },
                    Err(e) => CheckResult {
                        k,
                        m,
                        check,
                        passed: false,
                        details: Value::Null,
                        resource_abort: e.is_resource_limit(),
                        error: Some(e.to_string()),
                        elapsed_ms,
                    },
                }
            })
            .collect()
    });

    let certificates: Vec<CertificateResult> =
        cfg.certificates.iter().map(|p| check_certificate(p, cfg)).collect();

    let all_passed = results.iter().all(|r| r.passed) && certificates.iter().all(|c| c.valid);
    let mut config = cfg.clone();
    if cfg.canonical {
        config.out_dir = None;
        config.certificates = config
            .certificates
            .iter()
            .map(|p| p.file_name().map_or_else(|| p.clone(), PathBuf::from))
            .collect();
    }
    Ok(CampaignSummary {
        tool_version: TOOL_VERSION.to_string(),
        config,
        results,
        certificates,
        all_passed,
        elapsed_ms: (!cfg.canonical).then(|| started.elapsed().as_millis()),
    })
}

/// Runs the campaign, prints one line per check, writes `summary.json` (and
/// `analysis.csv` when CSV is requested) to the output directory. Returns the
/// exit code.
pub fn run_campaign(cfg: &CampaignConfig, out: &mut dyn Write) -> Result<i32> {
    let summary = evaluate_campaign(cfg)?;
    for r in &summary.results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        match &r.error {
            Some(e) => writeln!(out, "{status} k={} m={} {}: {e}", r.k, r.m, r.check)?,
            None => writeln!(out, "{status} k={} m={} {}", r.k, r.m, r.check)?,
        }
    }
    for c in &summary.certificates {
        let status = if c.valid { "PASS" } else { "FAIL" };
        writeln!(out, "{status} certificate {}", c.file)?;
    }
    let failed = summary.results.iter().filter(|r| !r.passed).count()
        + summary.certificates.iter().filter(|c| !c.valid).count();
    writeln!(
        out,
        "{} checks, {} failed",
        summary.results.len() + summary.certificates.len(),
        failed
    )?;

    if let Some(dir) = &cfg.out_dir {
        fs::create_dir_all(dir)?;
        let mut json = serde_json::to_string_pretty(&summary)?;
        json.push('\n');
        fs::write(dir.join("summary.json"), json)?;
        if cfg.formats.iter().any(|f| f == "csv") && cfg.moduli.contains(&2) && !summary.resource_abort() {
            let rows = (cfg.k_min..=cfg.k_max)
                .map(|k| analysis_row(k, &cfg.caps))
                .collect::<Result<Vec<_>>>()?;
            let file = fs::File::create(dir.join("analysis.csv"))?;
            write_csv(&rows, file)?;
        }
    }
    Ok(summary.exit_code())
}
