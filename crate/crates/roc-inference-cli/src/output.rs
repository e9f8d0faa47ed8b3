//! Result documents: JSON with the resolved configuration echoed, or tidy
//! CSV tables for external plotting.

use crate::Format;
use roc_inference::data::GridConfig;
use roc_inference::error::{Error, Result};
use roc_inference::inference::{AucComparison, BandResult, DominanceResult, PointwiseCi};
use roc_inference::resample::TailMode;
use roc_inference::roc::RocCurve;
use roc_inference::simulation::{CoverageReport, DgpSpec, RateSummary};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;

/// A possibly infinite bound; the JSON and CSV encodings use "+inf"/"-inf"
/// sentinels because JSON numbers cannot carry infinities.
#[derive(Debug, Clone, Copy)]
pub struct Bound(pub f64);

impl Serialize for Bound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            s.serialize_str("+inf")
        } else if self.0 == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0 == f64::INFINITY {
            write!(f, "+inf")
        } else if self.0 == f64::NEG_INFINITY {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn write_out(path: &Option<PathBuf>, contents: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, contents).map_err(Error::Io),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes()).map_err(Error::Io)?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)
        .map_err(|e| Error::InvalidConfig(format!("serialization: {e}")))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct RocDoc<'a> {
    procedure: &'static str,
    grid: &'a GridConfig,
    beta_hat: Vec<f64>,
    auc: f64,
    t: &'a [f64],
    r: &'a [f64],
    c_hat: Vec<Bound>,
}

pub fn emit_roc(
    out: &Option<PathBuf>,
    format: Format,
    curve: &RocCurve,
    cfg: &GridConfig,
    beta: &[f64],
) -> Result<()> {
    match format {
        Format::Json => {
            let doc = RocDoc {
                procedure: "roc",
                grid: cfg,
                beta_hat: beta.iter().copied().collect(),
                auc: curve.auc,
                t: &curve.t_grid,
                r: &curve.r_values,
                c_hat: curve.c_hat.iter().map(|&c| Bound(c)).collect(),
            };
            write_out(out, &to_json(&doc)?)
        }
        Format::Csv => {
            let mut s = String::from("t,r,c_hat\n");
            for j in 0..curve.t_grid.len() {
                s.push_str(&format!(
                    "{},{},{}\n",
                    curve.t_grid[j],
                    curve.r_values[j],
                    Bound(curve.c_hat[j])
                ));
            }
            write_out(out, &s)
        }
    }
}

#[derive(Serialize)]
struct CiDoc<'a> {
    procedure: &'static str,
    seed: u64,
    boot: usize,
    intervals: &'a [PointwiseCi],
}

pub fn emit_cis(
    out: &Option<PathBuf>,
    format: Format,
    cis: &[PointwiseCi],
    seed: u64,
    boot: usize,
) -> Result<()> {
    match format {
        Format::Json => {
            write_out(out, &to_json(&CiDoc { procedure: "ci", seed, boot, intervals: cis })?)
        }
        Format::Csv => {
            let mut s = String::from("cutoff,estimate,se,lower,upper,level\n");
            for ci in cis {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    ci.cutoff, ci.estimate, ci.se, ci.lower, ci.upper, ci.level
                ));
            }
            write_out(out, &s)
        }
    }
}

#[derive(Serialize)]
struct BandDoc<'a> {
    procedure: &'static str,
    grid: &'a GridConfig,
    scheme: roc_inference::resample::Scheme,
    mode: &'static str,
    seed: u64,
    boot: usize,
    failures: usize,
    critical_value: f64,
    t: &'a [f64],
    r_hat: &'a [f64],
    lower: &'a [f64],
    upper: Vec<Bound>,
    sigma_eps: &'a [f64],
}

pub fn emit_band(
    out: &Option<PathBuf>,
    format: Format,
    band: &BandResult,
    cfg: &GridConfig,
) -> Result<()> {
    let mode = match band.mode {
        TailMode::OneSided => "one-sided",
        TailMode::TwoSided => "two-sided",
    };
    match format {
        Format::Json => {
            let doc = BandDoc {
                procedure: "band",
                grid: cfg,
                scheme: band.scheme,
                mode,
                seed: band.seed,
                boot: band.b,
                failures: band.failures,
                critical_value: band.critical_value,
                t: &band.t_grid,
                r_hat: &band.r_hat,
                lower: &band.lower,
                upper: band.upper.iter().map(|&u| Bound(u)).collect(),
                sigma_eps: &band.sigma_eps,
            };
            write_out(out, &to_json(&doc)?)
        }
        Format::Csv => {
            let mut s = String::from("t,r_hat,lower,upper\n");
            for j in 0..band.t_grid.len() {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    band.t_grid[j],
                    band.r_hat[j],
                    band.lower[j],
                    Bound(band.upper[j])
                ));
            }
            write_out(out, &s)
        }
    }
}

#[derive(Serialize)]
struct DominanceDoc<'a> {
    procedure: &'static str,
    grid: &'a GridConfig,
    scheme: roc_inference::resample::Scheme,
    seed: u64,
    boot: usize,
    failures: usize,
    statistic: f64,
    critical_value: f64,
    reject: bool,
    alpha: f64,
    argmax_t: f64,
}

pub fn emit_dominance(
    out: &Option<PathBuf>,
    format: Format,
    result: &DominanceResult,
    cfg: &GridConfig,
) -> Result<()> {
    let doc = DominanceDoc {
        procedure: "dominance",
        grid: cfg,
        scheme: result.scheme,
        seed: result.seed,
        boot: result.b,
        failures: result.failures,
        statistic: result.statistic,
        critical_value: result.critical_value,
        reject: result.reject,
        alpha: result.alpha,
        argmax_t: result.argmax_t,
    };
    match format {
        Format::Json => write_out(out, &to_json(&doc)?),
        Format::Csv => {
            let s = format!(
                "statistic,critical_value,reject,alpha,argmax_t\n{},{},{},{},{}\n",
                doc.statistic, doc.critical_value, doc.reject, doc.alpha, doc.argmax_t
            );
            write_out(out, &s)
        }
    }
}

#[derive(Serialize)]
struct AucDoc<'a> {
    procedure: &'static str,
    grid: &'a GridConfig,
    #[serde(flatten)]
    result: &'a AucComparison,
}

pub fn emit_auc(
    out: &Option<PathBuf>,
    format: Format,
    result: &AucComparison,
    cfg: &GridConfig,
) -> Result<()> {
    match format {
        Format::Json => {
            write_out(out, &to_json(&AucDoc { procedure: "auc_compare", grid: cfg, result })?)
        }
        Format::Csv => {
            let s = format!(
                "auc1,auc2,diff,se_diff,z,p_value,degenerate_warning\n{},{},{},{},{},{},{}\n",
                result.auc1,
                result.auc2,
                result.diff,
                result.se_diff,
                result.z,
                result.p_value,
                result.degenerate_warning
            );
            write_out(out, &s)
        }
    }
}

#[derive(Serialize)]
struct CoverageDoc<'a> {
    procedure: &'static str,
    dgp: &'a DgpSpec,
    report: &'a CoverageReport,
}

pub fn emit_coverage(
    out: &Option<PathBuf>,
    format: Format,
    report: &CoverageReport,
    spec: &DgpSpec,
) -> Result<()> {
    match format {
        Format::Json => {
            write_out(out, &to_json(&CoverageDoc { procedure: "simulate_coverage", dgp: spec, report })?)
        }
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf).map_err(Error::Io)?;
            write_out(out, std::str::from_utf8(&buf).expect("csv is utf8"))
        }
    }
}

#[derive(Serialize)]
struct RateDoc<'a> {
    procedure: &'a str,
    dgp: &'a DgpSpec,
    grid: &'a GridConfig,
    seed: u64,
    boot: usize,
    #[serde(flatten)]
    summary: &'a RateSummary,
}

#[allow(clippy::too_many_arguments)]
pub fn emit_rate(
    out: &Option<PathBuf>,
    format: Format,
    label: &str,
    summary: &RateSummary,
    spec: &DgpSpec,
    cfg: &GridConfig,
    seed: u64,
    boot: usize,
) -> Result<()> {
    let doc = RateDoc { procedure: label, dgp: spec, grid: cfg, seed, boot, summary };
    match format {
        Format::Json => write_out(out, &to_json(&doc)?),
        Format::Csv => {
            let s = format!(
                "procedure,rate,mc_se,replications,reps_used,failures\n{},{},{},{},{},{}\n",
                label,
                summary.rate,
                summary.mc_se,
                summary.replications,
                summary.reps_used,
                summary.failures
            );
            write_out(out, &s)
        }
    }
}
