//! User-facing procedures: pointwise confidence intervals (conventional and
//! estimation-effect corrected), uniform confidence bands, the ROC dominance
//! test, and AUC comparisons.

use crate::data::{Dataset, GridConfig, IndexValues};
use crate::error::{Error, Result};
use crate::influence::{
    influence_table_for_index, influence_table_pointwise, pointwise_cov, sigma_eps,
};
use crate::kernel::KernelConfig;
use crate::logit::{FittedModel, WeightLaw};
use crate::resample::{
    multiplier_bootstrap, multiplier_bootstrap_difference, pointwise_bootstrap_cov,
    sup_statistics, weighted_bootstrap, weighted_bootstrap_difference, PointwiseIndex, Scheme,
    TailMode,
};
use crate::roc::roc_at_grid;
use crate::stats::{normal_cdf, normal_quantile, trapezoid};
use serde::{Deserialize, Serialize};

/// How a pointwise confidence interval is constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CiMethod {
    /// Conventional normal approximation with the index treated as fixed.
    ConventionalFixedIndex,
    /// Conventional normal approximation applied to an estimated index; the
    /// estimation effect is ignored.
    ConventionalEstimatedIndex,
    /// Estimation-effect correction with the analytic influence plug-in.
    CorrectedAnalytic,
    /// Estimation-effect correction with the weighted-bootstrap covariance.
    CorrectedBootstrap,
}

/// Which functional of (TP, FP) the interval covers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CiTarget {
    Tp,
    Fp,
    /// A linear combination a*TP + b*FP.
    Linear(f64, f64),
}

impl CiTarget {
    fn weights(&self) -> (f64, f64) {
        match *self {
            CiTarget::Tp => (1.0, 0.0),
            CiTarget::Fp => (0.0, 1.0),
            CiTarget::Linear(a, b) => (a, b),
        }
    }
}

/// Index source for pointwise intervals.
pub enum CiSource<'a> {
    /// A fixed predictive index with no first stage.
    FixedIndex(&'a IndexValues),
    /// A fitted first-stage model; the index is its fitted probability.
    Model(&'a FittedModel),
}

/// Tuning knobs for the corrected pointwise methods.
#[derive(Debug, Clone, Copy)]
pub struct CiConfig {
    pub level: f64,
    pub kernel: KernelConfig,
    pub law: WeightLaw,
    pub b: usize,
    pub seed: u64,
}

impl Default for CiConfig {
    fn default() -> Self {
        CiConfig {
            level: 0.90,
            kernel: KernelConfig::default(),
            law: WeightLaw::TwoPoint,
            b: 1000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PointwiseCi {
    pub cutoff: f64,
    pub estimate: f64,
    pub method: CiMethod,
    pub level: f64,
    pub lower: f64,
    pub upper: f64,
    pub se: f64,
}

fn conventional_variance(tp: f64, fp: f64, a: f64, b: f64, pi: f64) -> f64 {
    a * a * tp * (1.0 - tp) / pi + b * b * fp * (1.0 - fp) / (1.0 - pi)
}

fn boundary_check(target: CiTarget, tp: f64, fp: f64) -> Result<()> {
    match target {
        CiTarget::Tp if tp <= 0.0 || tp >= 1.0 => Err(Error::BoundaryEstimate),
        CiTarget::Fp if fp <= 0.0 || fp >= 1.0 => Err(Error::BoundaryEstimate),
        _ => Ok(()),
    }
}

/// Pointwise confidence interval for TP, FP, or a linear combination at a
/// single cutoff.
pub fn pointwise_ci(
    data: &Dataset,
    source: CiSource<'_>,
    cutoff: f64,
    target: CiTarget,
    method: CiMethod,
    cfg: &CiConfig,
) -> Result<PointwiseCi> {
    if !(cfg.level > 0.0 && cfg.level < 1.0) {
        return Err(Error::InvalidConfig("level must lie in (0, 1)".into()));
    }
    let owned_index;
    let (index, model): (&IndexValues, Option<&FittedModel>) = match source {
        CiSource::FixedIndex(idx) => {
            if method != CiMethod::ConventionalFixedIndex {
                return Err(Error::InvalidConfig(
                    "estimated-index methods require a fitted model".into(),
                ));
            }
            (idx, None)
        }
        CiSource::Model(m) => {
            if method == CiMethod::ConventionalFixedIndex {
                return Err(Error::InvalidConfig(
                    "fixed-index method given a fitted model; use the estimated-index method"
                        .into(),
                ));
            }
            owned_index = m.index_values(data)?;
            (&owned_index, Some(m))
        }
    };
    let (tp, fp) = crate::roc::tp_fp_at_cutoff(data, index, cutoff);
    boundary_check(target, tp, fp)?;
    let (a, b) = target.weights();
    let estimate = a * tp + b * fp;
    let n = data.n() as f64;

    let var = match method {
        CiMethod::ConventionalFixedIndex | CiMethod::ConventionalEstimatedIndex => {
            conventional_variance(tp, fp, a, b, data.pi_hat())
        }
        CiMethod::CorrectedAnalytic => {
            let table = influence_table_pointwise(data, model.unwrap(), &[cutoff], &cfg.kernel)?;
            let psi = pointwise_cov(&table, 0);
            a * a * psi[(0, 0)] + 2.0 * a * b * psi[(0, 1)] + b * b * psi[(1, 1)]
        }
        CiMethod::CorrectedBootstrap => {
            let (psi, _) = pointwise_bootstrap_cov(
                data,
                PointwiseIndex::RefitLogit,
                cutoff,
                cfg.law,
                cfg.b,
                cfg.seed,
            )?;
            a * a * psi[(0, 0)] + 2.0 * a * b * psi[(0, 1)] + b * b * psi[(1, 1)]
        }
    };
    if !var.is_finite() || var < 0.0 {
        return Err(Error::VarianceUnavailable);
    }
    if var == 0.0 {
        return Err(Error::BoundaryEstimate);
    }
    let se = (var / n).sqrt();
    let z = normal_quantile(1.0 - (1.0 - cfg.level) / 2.0);
    Ok(PointwiseCi {
        cutoff,
        estimate,
        method,
        level: cfg.level,
        lower: estimate - z * se,
        upper: estimate + z * se,
        se,
    })
}

/// A uniform confidence band over a false-positive-rate interval.
#[derive(Debug, Clone)]
pub struct BandResult {
    pub t_grid: Vec<f64>,
    pub r_hat: Vec<f64>,
    /// Truncated scale series sigma_{t, eps}.
    pub sigma_eps: Vec<f64>,
    pub critical_value: f64,
    pub lower: Vec<f64>,
    /// Positive infinity at every point in one-sided mode.
    pub upper: Vec<f64>,
    pub mode: TailMode,
    pub alpha: f64,
    pub scheme: Scheme,
    pub seed: u64,
    pub b: usize,
    pub failures: usize,
}

/// Uniform confidence band for the ROC curve of a fitted model, with the
/// curve and ranks derived from the supplied index values.
///
/// The index argument exists so that rank-equivalent re-expressions of the
/// model's index verifiably produce bit-identical bands; kernel estimation
/// always runs on the model's probability scale.
#[allow(clippy::too_many_arguments)]
pub fn uniform_band_for_index(
    data: &Dataset,
    model: &FittedModel,
    index: &IndexValues,
    grid_cfg: &GridConfig,
    kernel: &KernelConfig,
    scheme: Scheme,
    law: WeightLaw,
    b: usize,
    seed: u64,
    mode: TailMode,
) -> Result<BandResult> {
    let t_grid = grid_cfg.t_grid()?;
    let (curve, sigma, draws) = match scheme {
        Scheme::Multiplier => {
            let (curve, table) = influence_table_for_index(data, model, index, &t_grid, kernel)?;
            let draws = multiplier_bootstrap(&table, b, seed);
            (curve, table.sigma, draws)
        }
        Scheme::Weighted => {
            let curve = roc_at_grid(data, index, &t_grid)?;
            let draws = weighted_bootstrap(data, index, &t_grid, law, b, seed)?;
            let sigma = draws.col_variance().iter().map(|v| v.sqrt()).collect();
            (curve, sigma, draws)
        }
    };
    let scale = sigma_eps(&sigma, grid_cfg.epsilon);
    let sup = sup_statistics(&draws, &scale, mode)?;
    let cv = sup.critical_value(grid_cfg.alpha);
    let root_n = (data.n() as f64).sqrt();
    let mut lower = Vec::with_capacity(t_grid.len());
    let mut upper = Vec::with_capacity(t_grid.len());
    for (j, &r) in curve.r_values.iter().enumerate() {
        let half = cv * scale[j] / root_n;
        lower.push(r - half);
        upper.push(match mode {
            TailMode::OneSided => f64::INFINITY,
            TailMode::TwoSided => r + half,
        });
    }
    Ok(BandResult {
        t_grid,
        r_hat: curve.r_values,
        sigma_eps: scale,
        critical_value: cv,
        lower,
        upper,
        mode,
        alpha: grid_cfg.alpha,
        scheme,
        seed,
        b,
        failures: draws.failures,
    })
}

/// Uniform confidence band for the ROC curve of a fitted model.
#[allow(clippy::too_many_arguments)]
pub fn uniform_band(
    data: &Dataset,
    model: &FittedModel,
    grid_cfg: &GridConfig,
    kernel: &KernelConfig,
    scheme: Scheme,
    law: WeightLaw,
    b: usize,
    seed: u64,
    mode: TailMode,
) -> Result<BandResult> {
    let index = model.index_values(data)?;
    uniform_band_for_index(data, model, &index, grid_cfg, kernel, scheme, law, b, seed, mode)
}

/// Verdict of the one-sided ROC dominance test of H0: R2 <= R1 everywhere.
#[derive(Debug, Clone)]
pub struct DominanceResult {
    /// sqrt(n) * sup_t (R2 - R1) / sigma_eps.
    pub statistic: f64,
    pub critical_value: f64,
    pub reject: bool,
    pub alpha: f64,
    /// Grid point attaining the supremum.
    pub argmax_t: f64,
    /// Truncated scale series of the difference process.
    pub sigma_rd: Vec<f64>,
    pub scheme: Scheme,
    pub seed: u64,
    pub b: usize,
    pub failures: usize,
}

fn check_same_outcomes(d1: &Dataset, d2: &Dataset) -> Result<()> {
    if d1.n() != d2.n() || d1.y() != d2.y() {
        return Err(Error::DimensionMismatch(
            "the two models must be fitted on the same outcomes".into(),
        ));
    }
    Ok(())
}

/// Test whether the second model's ROC curve rises above the first one's
/// anywhere on the grid. Both models must share the same outcome vector.
#[allow(clippy::too_many_arguments)]
pub fn dominance_test_for_indices(
    d1: &Dataset,
    m1: &FittedModel,
    idx1: &IndexValues,
    d2: &Dataset,
    m2: &FittedModel,
    idx2: &IndexValues,
    grid_cfg: &GridConfig,
    kernel: &KernelConfig,
    scheme: Scheme,
    law: WeightLaw,
    b: usize,
    seed: u64,
) -> Result<DominanceResult> {
    check_same_outcomes(d1, d2)?;
    let t_grid = grid_cfg.t_grid()?;
    let r1 = roc_at_grid(d1, idx1, &t_grid)?.r_values;
    let r2 = roc_at_grid(d2, idx2, &t_grid)?.r_values;

    let (sigma, draws) = match scheme {
        Scheme::Multiplier => {
            let (_, t1) = influence_table_for_index(d1, m1, idx1, &t_grid, kernel)?;
            let (_, t2) = influence_table_for_index(d2, m2, idx2, &t_grid, kernel)?;
            let diff = &t2.psi_r - &t1.psi_r;
            let sigma = crate::influence::analytic_sigma(&diff);
            let draws = multiplier_bootstrap_difference(&t1, &t2, b, seed)?;
            (sigma, draws)
        }
        Scheme::Weighted => {
            let draws =
                weighted_bootstrap_difference(d1, idx1, d2, idx2, &t_grid, law, b, seed)?;
            let sigma: Vec<f64> = draws.col_variance().iter().map(|v| v.sqrt()).collect();
            (sigma, draws)
        }
    };
    if sigma.iter().all(|&s| s <= grid_cfg.epsilon) {
        return Err(Error::DegenerateDifference);
    }
    let scale = sigma_eps(&sigma, grid_cfg.epsilon);
    let root_n = (d1.n() as f64).sqrt();
    let mut statistic = f64::NEG_INFINITY;
    let mut argmax_t = t_grid[0];
    for j in 0..t_grid.len() {
        let v = root_n * (r2[j] - r1[j]) / scale[j];
        if v > statistic {
            statistic = v;
            argmax_t = t_grid[j];
        }
    }
    let sup = sup_statistics(&draws, &scale, TailMode::OneSided)?;
    let critical_value = sup.critical_value(grid_cfg.alpha);
    Ok(DominanceResult {
        statistic,
        critical_value,
        reject: statistic > critical_value,
        alpha: grid_cfg.alpha,
        argmax_t,
        sigma_rd: scale,
        scheme,
        seed,
        b,
        failures: draws.failures,
    })
}

/// Dominance test using each model's own fitted index.
#[allow(clippy::too_many_arguments)]
pub fn dominance_test(
    d1: &Dataset,
    m1: &FittedModel,
    d2: &Dataset,
    m2: &FittedModel,
    grid_cfg: &GridConfig,
    kernel: &KernelConfig,
    scheme: Scheme,
    law: WeightLaw,
    b: usize,
    seed: u64,
) -> Result<DominanceResult> {
    let idx1 = m1.index_values(d1)?;
    let idx2 = m2.index_values(d2)?;
    dominance_test_for_indices(
        d1, m1, &idx1, d2, m2, &idx2, grid_cfg, kernel, scheme, law, b, seed,
    )
}

/// Normal-theory comparison of two models' areas under the ROC curve over
/// the configured grid.
#[derive(Debug, Clone, Serialize)]
pub struct AucComparison {
    pub auc1: f64,
    pub auc2: f64,
    /// auc2 - auc1.
    pub diff: f64,
    pub se_diff: f64,
    pub z: f64,
    pub p_value: f64,
    pub v_hat_a: f64,
    /// Set when the estimated variance of the difference is numerically
    /// negligible, e.g. under two correctly specified first stages.
    pub degenerate_warning: bool,
    pub scheme: Scheme,
    pub seed: u64,
    pub b: usize,
}

const AUC_DEGENERATE_FLOOR: f64 = 1e-6;

/// Compare the grid-restricted AUCs of two models fitted on the same
/// outcomes.
#[allow(clippy::too_many_arguments)]
pub fn auc_compare(
    d1: &Dataset,
    m1: &FittedModel,
    d2: &Dataset,
    m2: &FittedModel,
    grid_cfg: &GridConfig,
    kernel: &KernelConfig,
    scheme: Scheme,
    law: WeightLaw,
    b: usize,
    seed: u64,
) -> Result<AucComparison> {
    check_same_outcomes(d1, d2)?;
    let t_grid = grid_cfg.t_grid()?;
    let idx1 = m1.index_values(d1)?;
    let idx2 = m2.index_values(d2)?;
    let r1 = roc_at_grid(d1, &idx1, &t_grid)?;
    let r2 = roc_at_grid(d2, &idx2, &t_grid)?;
    let auc1 = trapezoid(&t_grid, &r1.r_values);
    let auc2 = trapezoid(&t_grid, &r2.r_values);
    let diff = auc2 - auc1;
    let n = d1.n() as f64;

    let v_hat_a = match scheme {
        Scheme::Multiplier => {
            let (_, t1) = influence_table_for_index(d1, m1, &idx1, &t_grid, kernel)?;
            let (_, t2) = influence_table_for_index(d2, m2, &idx2, &t_grid, kernel)?;
            let mut acc = 0.0;
            let mut row = vec![0.0; t_grid.len()];
            for i in 0..d1.n() {
                for j in 0..t_grid.len() {
                    row[j] = t2.psi_r[(i, j)] - t1.psi_r[(i, j)];
                }
                let integral = trapezoid(&t_grid, &row);
                acc += integral * integral;
            }
            acc / n
        }
        Scheme::Weighted => {
            let draws =
                weighted_bootstrap_difference(d1, &idx1, d2, &idx2, &t_grid, law, b, seed)?;
            // draws are sqrt(n)-scaled; integrate each replicate path
            let vals: Vec<f64> = (0..draws.b_realized())
                .map(|i| {
                    let row: Vec<f64> =
                        (0..t_grid.len()).map(|j| draws.draws[(i, j)]).collect();
                    trapezoid(&t_grid, &row)
                })
                .collect();
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / vals.len() as f64
        }
    };
    let degenerate_warning = v_hat_a < AUC_DEGENERATE_FLOOR;
    let se_diff = (v_hat_a / n).sqrt();
    let (z, p_value) = if se_diff > 0.0 {
        let z = diff / se_diff;
        (z, 2.0 * (1.0 - normal_cdf(z.abs())))
    } else {
        (0.0, 1.0)
    };
    Ok(AucComparison {
        auc1,
        auc2,
        diff,
        se_diff,
        z,
        p_value,
        v_hat_a,
        degenerate_warning,
        scheme,
        seed,
        b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logit::fit_logit;
    use crate::stats;
    use nalgebra::DMatrix;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn dgp_sample(seed: u64, n: usize, k: usize, beta: &[f64]) -> Dataset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut y = Vec::with_capacity(n);
        let mut cols = vec![Vec::with_capacity(n); k];
        for _ in 0..n {
            let x: Vec<f64> = (0..k).map(|_| StandardNormal.sample(&mut rng)).collect();
            let eta: f64 =
                beta[0] + x.iter().zip(&beta[1..]).map(|(xi, bi)| xi * bi).sum::<f64>();
            let p = stats::logistic(eta);
            y.push(if rng.random::<f64>() < p { 1.0 } else { 0.0 });
            for (j, c) in cols.iter_mut().enumerate() {
                c.push(x[j]);
            }
        }
        let x = DMatrix::from_fn(n, k, |i, j| cols[j][i]);
        Dataset::new(y, x).unwrap()
    }

    fn standard_dgp(seed: u64, n: usize) -> Dataset {
        dgp_sample(seed, n, 3, &[0.0, 0.5, 0.25, 1.0])
    }

    #[test]
    fn conventional_ci_brackets_the_estimate() {
        let d = standard_dgp(1, 400);
        let m = fit_logit(&d).unwrap();
        let ci = pointwise_ci(
            &d,
            CiSource::Model(&m),
            0.5,
            CiTarget::Tp,
            CiMethod::ConventionalEstimatedIndex,
            &CiConfig::default(),
        )
        .unwrap();
        assert!(ci.lower <= ci.estimate && ci.estimate <= ci.upper);
        assert!(ci.se > 0.0);
    }

    #[test]
    fn corrected_ci_is_wider_at_high_cutoff() {
        let d = standard_dgp(2, 2000);
        let m = fit_logit(&d).unwrap();
        let cfg = CiConfig::default();
        let conv = pointwise_ci(
            &d,
            CiSource::Model(&m),
            0.8,
            CiTarget::Tp,
            CiMethod::ConventionalEstimatedIndex,
            &cfg,
        )
        .unwrap();
        let corr = pointwise_ci(
            &d,
            CiSource::Model(&m),
            0.8,
            CiTarget::Tp,
            CiMethod::CorrectedAnalytic,
            &cfg,
        )
        .unwrap();
        assert!(corr.se / conv.se > 1.2, "se ratio {}", corr.se / conv.se);
    }

    #[test]
    fn boundary_estimate_is_flagged() {
        let d = standard_dgp(3, 100);
        let g = IndexValues::new((0..d.n()).map(|i| i as f64 / 100.0).collect(), None).unwrap();
        let err = pointwise_ci(
            &d,
            CiSource::FixedIndex(&g),
            2.0,
            CiTarget::Tp,
            CiMethod::ConventionalFixedIndex,
            &CiConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::BoundaryEstimate));
    }

    #[test]
    fn two_sided_band_contains_pointwise_corrected_interval() {
        // the band critical value dominates the marginal normal quantile, so
        // the band contains the pointwise interval built from the same scale
        let d = standard_dgp(4, 600);
        let m = fit_logit(&d).unwrap();
        let grid_cfg = GridConfig { tau_l: 0.15, tau_u: 0.85, step: 0.05, ..Default::default() };
        let band = uniform_band(
            &d,
            &m,
            &grid_cfg,
            &KernelConfig::default(),
            Scheme::Multiplier,
            WeightLaw::TwoPoint,
            1000,
            5,
            TailMode::TwoSided,
        )
        .unwrap();
        let z = stats::normal_quantile(1.0 - grid_cfg.alpha / 2.0);
        let root_n = (d.n() as f64).sqrt();
        assert!(band.critical_value >= z);
        for j in 0..band.t_grid.len() {
            let half_pointwise = z * band.sigma_eps[j] / root_n;
            assert!(band.lower[j] <= band.r_hat[j] - half_pointwise + 1e-12);
            assert!(band.upper[j] >= band.r_hat[j] + half_pointwise - 1e-12);
        }
    }

    #[test]
    fn one_sided_band_has_infinite_uppers() {
        let d = standard_dgp(5, 400);
        let m = fit_logit(&d).unwrap();
        let band = uniform_band(
            &d,
            &m,
            &GridConfig::default(),
            &KernelConfig::default(),
            Scheme::Multiplier,
            WeightLaw::TwoPoint,
            400,
            6,
            TailMode::OneSided,
        )
        .unwrap();
        assert!(band.upper.iter().all(|u| u.is_infinite()));
        assert!(band.lower.iter().zip(&band.r_hat).all(|(l, r)| l <= r));
    }

    #[test]
    fn band_is_bit_identical_under_monotone_index_transforms() {
        let d = standard_dgp(6, 500);
        let m = fit_logit(&d).unwrap();
        let idx = m.index_values(&d).unwrap();
        let grid_cfg = GridConfig { tau_l: 0.1, tau_u: 0.9, step: 0.02, ..Default::default() };
        let kcfg = KernelConfig::default();
        let base = uniform_band_for_index(
            &d, &m, &idx, &grid_cfg, &kcfg, Scheme::Multiplier, WeightLaw::TwoPoint, 300, 7,
            TailMode::TwoSided,
        )
        .unwrap();
        for f in [|v: f64| v.exp(), |v: f64| v * v * v] {
            let tf = idx.transformed(f).unwrap();
            let band = uniform_band_for_index(
                &d, &m, &tf, &grid_cfg, &kcfg, Scheme::Multiplier, WeightLaw::TwoPoint, 300, 7,
                TailMode::TwoSided,
            )
            .unwrap();
            assert_eq!(band.lower, base.lower);
            assert_eq!(band.upper, base.upper);
            assert_eq!(band.critical_value, base.critical_value);
        }
    }

    #[test]
    fn identical_models_are_a_degenerate_difference() {
        let d = standard_dgp(7, 300);
        let m1 = fit_logit(&d).unwrap();
        let m2 = fit_logit(&d).unwrap();
        let err = dominance_test(
            &d,
            &m1,
            &d,
            &m2,
            &GridConfig::default(),
            &KernelConfig::default(),
            Scheme::Multiplier,
            WeightLaw::TwoPoint,
            200,
            8,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegenerateDifference));
    }

    #[test]
    fn dominance_verdict_is_invariant_to_index_transforms() {
        let d = dgp_sample(8, 400, 4, &[0.0, 0.5, 0.25, 1.0, 0.0]);
        let d_noise = d.select_predictors(&[3]).unwrap();
        let d_full = d.select_predictors(&[0, 1, 2]).unwrap();
        let m_noise = fit_logit(&d_noise).unwrap();
        let m_full = fit_logit(&d_full).unwrap();
        let idx_noise = m_noise.index_values(&d_noise).unwrap();
        let idx_full = m_full.index_values(&d_full).unwrap();
        let grid_cfg = GridConfig { alpha: 0.05, ..Default::default() };
        let kcfg = KernelConfig::default();
        let base = dominance_test_for_indices(
            &d_noise, &m_noise, &idx_noise, &d_full, &m_full, &idx_full, &grid_cfg, &kcfg,
            Scheme::Multiplier, WeightLaw::TwoPoint, 300, 9,
        )
        .unwrap();
        for f in [|v: f64| v.exp(), |v: f64| v * v * v] {
            let t1 = idx_noise.transformed(f).unwrap();
            let t2 = idx_full.transformed(f).unwrap();
            let out = dominance_test_for_indices(
                &d_noise, &m_noise, &t1, &d_full, &m_full, &t2, &grid_cfg, &kcfg,
                Scheme::Multiplier, WeightLaw::TwoPoint, 300, 9,
            )
            .unwrap();
            assert_eq!(out.reject, base.reject);
            assert_eq!(out.statistic, base.statistic);
            assert_eq!(out.critical_value, base.critical_value);
        }
        // the informative model beats noise decisively
        assert!(base.reject);
    }

    #[test]
    fn auc_compare_flags_degenerate_identical_models() {
        let d = standard_dgp(9, 300);
        let m1 = fit_logit(&d).unwrap();
        let m2 = fit_logit(&d).unwrap();
        let cmp = auc_compare(
            &d,
            &m1,
            &d,
            &m2,
            &GridConfig::default(),
            &KernelConfig::default(),
            Scheme::Multiplier,
            WeightLaw::TwoPoint,
            200,
            10,
        )
        .unwrap();
        assert_eq!(cmp.diff, 0.0);
        assert!(cmp.degenerate_warning);
    }

    #[test]
    fn auc_compare_separates_noise_from_signal() {
        let d = dgp_sample(10, 500, 4, &[0.0, 0.5, 0.25, 1.0, 0.0]);
        let d_noise = d.select_predictors(&[3]).unwrap();
        let d_full = d.select_predictors(&[0, 1, 2]).unwrap();
        let m_noise = fit_logit(&d_noise).unwrap();
        let m_full = fit_logit(&d_full).unwrap();
        let cmp = auc_compare(
            &d_noise,
            &m_noise,
            &d_full,
            &m_full,
            &GridConfig::default(),
            &KernelConfig::default(),
            Scheme::Multiplier,
            WeightLaw::TwoPoint,
            200,
            11,
        )
        .unwrap();
        assert!(cmp.diff > 0.1);
        assert!(cmp.z > 2.0, "z = {}", cmp.z);
        assert!(!cmp.degenerate_warning);
    }
}
