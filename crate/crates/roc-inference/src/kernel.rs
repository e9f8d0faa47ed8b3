//! Boundary-corrected kernel estimators of the index densities f1, f0, their
//! ratio, and the one-step gradient estimators of TP and FP with respect to
//! the first-stage coefficients.

use crate::data::{Dataset, IndexValues};
use crate::error::{Error, Result};
use crate::logit::FittedModel;
use crate::stats;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Compact-support kernels, symmetric around zero on [-1, 1].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelFn {
    /// (15/16)(1 - u^2)^2; continuously differentiable everywhere.
    #[default]
    Biweight,
    /// (3/4)(1 - u^2); not C1 at the support edges.
    Epanechnikov,
    /// 1 - |u|.
    Triangular,
}

impl KernelFn {
    pub fn eval(&self, u: f64) -> f64 {
        let a = u.abs();
        if a >= 1.0 {
            return 0.0;
        }
        match self {
            KernelFn::Biweight => {
                let w = 1.0 - u * u;
                0.9375 * w * w
            }
            KernelFn::Epanechnikov => 0.75 * (1.0 - u * u),
            KernelFn::Triangular => 1.0 - a,
        }
    }
}

/// Bandwidth selection rule.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandwidthRule {
    #[default]
    Silverman,
    Fixed(f64),
}

/// Width of the boundary region in which the density estimates are frozen.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaRule {
    /// delta = 1 / log(n).
    #[default]
    InvLogN,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct KernelConfig {
    pub kernel: KernelFn,
    pub bandwidth_rule: BandwidthRule,
    pub delta_rule: DeltaRule,
}

impl KernelConfig {
    pub fn validate(&self) -> Result<()> {
        if let BandwidthRule::Fixed(h) = self.bandwidth_rule {
            if !(h > 0.0) {
                return Err(Error::BandwidthDegenerate("fixed bandwidth must be positive".into()));
            }
        }
        if let DeltaRule::Fixed(d) = self.delta_rule {
            if !(d > 0.0) {
                return Err(Error::InvalidConfig("fixed delta must be positive".into()));
            }
        }
        Ok(())
    }

    fn bandwidth(&self, subsample: &[f64]) -> Result<f64> {
        match self.bandwidth_rule {
            BandwidthRule::Silverman => silverman_bandwidth(subsample),
            BandwidthRule::Fixed(h) => Ok(h),
        }
    }

    fn delta(&self, n: usize) -> f64 {
        match self.delta_rule {
            DeltaRule::InvLogN => 1.0 / (n as f64).ln(),
            DeltaRule::Fixed(d) => d,
        }
    }
}

/// Class-conditional density estimates over a set of evaluation cutoffs.
#[derive(Debug, Clone)]
pub struct DensityPair {
    pub eval_points: Vec<f64>,
    pub f1: Vec<f64>,
    pub f0: Vec<f64>,
    /// f1 / f0 with the floor-and-freeze safeguards applied.
    pub ratio: Vec<f64>,
    pub h1: f64,
    pub h0: f64,
    pub delta: f64,
    /// Support of the Y = 0 index values.
    pub support: (f64, f64),
}

/// Rule-of-thumb bandwidth for a subsample of size m:
/// 1.06 * min(sd, IQR / 1.349) * m^(-1/5).
pub fn silverman_bandwidth(values: &[f64]) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::BandwidthDegenerate("fewer than 2 values".into()));
    }
    let sd = stats::sd(values);
    let iqr = stats::iqr(values);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.349) } else { sd };
    if !(spread > 0.0) {
        return Err(Error::BandwidthDegenerate("zero spread in subsample".into()));
    }
    Ok(1.06 * spread * (values.len() as f64).powf(-0.2))
}

fn split_by_class(data: &Dataset, g: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut g0 = Vec::with_capacity(data.n0());
    let mut g1 = Vec::with_capacity(data.n1());
    for (i, &y) in data.y().iter().enumerate() {
        if y == 1.0 {
            g1.push(g[i]);
        } else {
            g0.push(g[i]);
        }
    }
    (g0, g1)
}

/// Clamp an evaluation point into [lo + width, hi - width]; evaluation points
/// inside the boundary strips reuse the estimate at the strip edge.
fn freeze(c: f64, lo: f64, hi: f64, width: f64) -> f64 {
    let (mut a, mut b) = (lo + width, hi - width);
    if a > b {
        let mid = 0.5 * (lo + hi);
        a = mid;
        b = mid;
    }
    c.clamp(a, b)
}

fn kde(sample: &[f64], h: f64, kernel: KernelFn, c: f64) -> f64 {
    let m = sample.len() as f64;
    let mut acc = 0.0;
    for &v in sample {
        acc += kernel.eval((v - c) / h);
    }
    acc / (m * h)
}

/// Class-conditional kernel density estimates with the boundary regions of
/// the Y = 0 support frozen at their interior edge values.
pub fn density_estimates(
    data: &Dataset,
    g: &IndexValues,
    cfg: &KernelConfig,
    eval: &[f64],
) -> Result<DensityPair> {
    cfg.validate()?;
    if data.n0() < 10 || data.n1() < 10 {
        return Err(Error::TooFewPerClass);
    }
    if eval.iter().any(|v| !v.is_finite()) {
        return Err(Error::RatioUnavailable);
    }
    let (g0, g1) = split_by_class(data, g.values());
    let h0 = cfg.bandwidth(&g0)?;
    let h1 = cfg.bandwidth(&g1)?;
    let delta = cfg.delta(data.n());
    let a0 = g0.iter().cloned().fold(f64::INFINITY, f64::min);
    let b0 = g0.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let mut f0 = Vec::with_capacity(eval.len());
    let mut f1 = Vec::with_capacity(eval.len());
    let mut ratio = Vec::with_capacity(eval.len());
    for &c in eval {
        let cc = freeze(c, a0, b0, delta);
        let d0 = kde(&g0, h0, cfg.kernel, cc);
        let d1 = kde(&g1, h1, cfg.kernel, cc);
        f0.push(d0);
        f1.push(d1);
        ratio.push(d1 / d0.max(1e-12));
    }
    Ok(DensityPair { eval_points: eval.to_vec(), f1, f0, ratio, h1, h0, delta, support: (a0, b0) })
}

/// One-step kernel estimators of the TP and FP gradients with respect to the
/// logit coefficients, evaluated at the given cutoffs. Row j corresponds to
/// cutoff j; columns follow the coefficient order (intercept first).
///
/// The kernel sums are frozen at the interior edges `[a0 + h, b0 - h]` of the
/// Y = 0 index support, while the deterministic c(1-c) factor of the logit
/// link is applied at the requested cutoff itself.
pub fn grad_tp_fp(
    data: &Dataset,
    model: &FittedModel,
    cfg: &KernelConfig,
    eval: &[f64],
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    cfg.validate()?;
    if data.n0() < 10 || data.n1() < 10 {
        return Err(Error::TooFewPerClass);
    }
    if eval.iter().any(|v| !v.is_finite()) {
        return Err(Error::RatioUnavailable);
    }
    let g = crate::logit::index_from_beta(data, model.beta());
    let (g0, g1) = split_by_class(data, &g);
    let h0 = cfg.bandwidth(&g0)?;
    let h1 = cfg.bandwidth(&g1)?;
    let a0 = g0.iter().cloned().fold(f64::INFINITY, f64::min);
    let b0 = g0.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let p = data.k() + 1;
    let xt = data.design();
    let mut grad_tp = DMatrix::zeros(eval.len(), p);
    let mut grad_fp = DMatrix::zeros(eval.len(), p);
    for (row, &c) in eval.iter().enumerate() {
        let scale = c * (1.0 - c);
        let c1 = freeze(c, a0, b0, h1);
        let c0 = freeze(c, a0, b0, h0);
        let mut s1 = vec![0.0; p];
        let mut s0 = vec![0.0; p];
        for (i, &y) in data.y().iter().enumerate() {
            if y == 1.0 {
                let k = cfg.kernel.eval((g[i] - c1) / h1);
                if k != 0.0 {
                    for j in 0..p {
                        s1[j] += xt[(i, j)] * k;
                    }
                }
            } else {
                let k = cfg.kernel.eval((g[i] - c0) / h0);
                if k != 0.0 {
                    for j in 0..p {
                        s0[j] += xt[(i, j)] * k;
                    }
                }
            }
        }
        for j in 0..p {
            grad_tp[(row, j)] = scale * s1[j] / (data.n1() as f64 * h1);
            grad_fp[(row, j)] = scale * s0[j] / (data.n0() as f64 * h0);
        }
    }
    Ok((grad_tp, grad_fp))
}
