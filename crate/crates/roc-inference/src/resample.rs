//! Distribution simulation for the ROC process: the weighted bootstrap (full
//! refit per replicate) and the multiplier bootstrap (influence-row
//! perturbation), plus sup-statistic extraction.
//!
//! Replicate r always draws from an RNG stream derived from (seed, r), so
//! results are bit-identical regardless of worker count or execution order.

use crate::data::{Dataset, IndexValues};
use crate::error::{Error, Result};
use crate::influence::InfluenceTable;
use crate::logit::{fit_logit_core, index_from_beta, WeightLaw};
use crate::roc::roc_at_grid;
use nalgebra::{DMatrix, DVector, Matrix2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Which simulation scheme drives a band, test, or comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Weighted,
    #[default]
    Multiplier,
}

/// One- versus two-sided standardization of the sup statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailMode {
    OneSided,
    TwoSided,
}

/// Simulated process draws on a t grid, one row per replicate.
#[derive(Debug, Clone)]
pub struct BootstrapDraws {
    pub scheme: Scheme,
    pub t_grid: Vec<f64>,
    /// Realized draws; `b_requested - failures` rows.
    pub draws: DMatrix<f64>,
    pub b_requested: usize,
    pub seed: u64,
    /// Replicates that failed to refit after the redraw budget.
    pub failures: usize,
}

impl BootstrapDraws {
    pub fn b_realized(&self) -> usize {
        self.draws.nrows()
    }

    /// Per-column variance of the draws (population normalization), the
    /// bootstrap estimate of sigma_t^2.
    pub fn col_variance(&self) -> Vec<f64> {
        let b = self.draws.nrows() as f64;
        (0..self.draws.ncols())
            .map(|j| {
                let col = self.draws.column(j);
                let mean = col.sum() / b;
                col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / b
            })
            .collect()
    }

    /// Centering diagnostic: every column mean should be within
    /// 3 sigma_t / sqrt(B) of zero.
    pub fn centering_ok(&self, sigma: &[f64]) -> bool {
        let b = self.draws.nrows() as f64;
        (0..self.draws.ncols()).all(|j| {
            let mean = self.draws.column(j).sum() / b;
            mean.abs() <= 3.0 * sigma[j].max(1e-12) / b.sqrt()
        })
    }
}

pub(crate) fn replicate_rng(seed: u64, replicate: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate.wrapping_add(1));
    rng
}

/// Weighted empirical ROC values over a t grid: weighted class totals in the
/// TP/FP rates and quantile inversion over positively weighted cutoffs.
pub(crate) fn weighted_roc_values(
    data: &Dataset,
    g: &[f64],
    w: &[f64],
    grid: &[f64],
) -> Vec<f64> {
    let mut neg: Vec<(f64, f64)> = Vec::new();
    let mut pos: Vec<(f64, f64)> = Vec::new();
    for (i, &y) in data.y().iter().enumerate() {
        if w[i] <= 0.0 {
            continue;
        }
        if y == 1.0 {
            pos.push((g[i], w[i]));
        } else {
            neg.push((g[i], w[i]));
        }
    }
    neg.sort_by(|a, b| a.0.total_cmp(&b.0));
    pos.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total0: f64 = neg.iter().map(|v| v.1).sum();
    let total1: f64 = pos.iter().map(|v| v.1).sum();

    // distinct negative values with the weighted FP rate at each (strict >)
    let mut values = Vec::with_capacity(neg.len());
    let mut fp_at = Vec::with_capacity(neg.len());
    let mut i = 0;
    let mut seen = 0.0;
    while i < neg.len() {
        let v = neg[i].0;
        let mut mass = 0.0;
        while i < neg.len() && neg[i].0 == v {
            mass += neg[i].1;
            i += 1;
        }
        seen += mass;
        values.push(v);
        fp_at.push((total0 - seen) / total0);
    }

    let pos_values: Vec<f64> = pos.iter().map(|v| v.0).collect();
    let mut pos_prefix = Vec::with_capacity(pos.len() + 1);
    pos_prefix.push(0.0);
    for v in &pos {
        pos_prefix.push(pos_prefix.last().unwrap() + v.1);
    }
    let tp_at = |c: f64| -> f64 {
        let le = pos_values.partition_point(|&v| v <= c);
        (total1 - pos_prefix[le]) / total1
    };

    grid.iter()
        .map(|&t| {
            if t >= 1.0 {
                return 1.0;
            }
            let k = fp_at.partition_point(|&f| f > t);
            tp_at(values[k])
        })
        .collect()
}

/// Weighted TP/FP at a single cutoff with weighted class totals.
pub(crate) fn weighted_tp_fp(data: &Dataset, g: &[f64], w: &[f64], c: f64) -> (f64, f64) {
    let (mut tp, mut fp, mut w1, mut w0) = (0.0, 0.0, 0.0, 0.0);
    for (i, &y) in data.y().iter().enumerate() {
        if y == 1.0 {
            w1 += w[i];
            if g[i] > c {
                tp += w[i];
            }
        } else {
            w0 += w[i];
            if g[i] > c {
                fp += w[i];
            }
        }
    }
    (tp / w1, fp / w0)
}

const REDRAW_BUDGET: usize = 3;

fn run_weighted<F>(b: usize, seed: u64, per_replicate: F) -> (Vec<Vec<f64>>, usize)
where
    F: Fn(&mut ChaCha8Rng) -> Option<Vec<f64>> + Sync,
{
    let rows: Vec<Option<Vec<f64>>> = (0..b)
        .into_par_iter()
        .map(|r| {
            let mut rng = replicate_rng(seed, r as u64);
            for _ in 0..=REDRAW_BUDGET {
                if let Some(row) = per_replicate(&mut rng) {
                    return Some(row);
                }
            }
            None
        })
        .collect();
    let failures = rows.iter().filter(|r| r.is_none()).count();
    (rows.into_iter().flatten().collect(), failures)
}

fn draws_from_rows(
    scheme: Scheme,
    grid: &[f64],
    rows: Vec<Vec<f64>>,
    b: usize,
    seed: u64,
    failures: usize,
) -> Result<BootstrapDraws> {
    if failures * 20 > b {
        return Err(Error::ExcessiveFailures(failures, b));
    }
    let m = grid.len();
    let draws = DMatrix::from_fn(rows.len(), m, |i, j| rows[i][j]);
    Ok(BootstrapDraws {
        scheme,
        t_grid: grid.to_vec(),
        draws,
        b_requested: b,
        seed,
        failures,
    })
}

/// Weighted bootstrap of the ROC process: per replicate, refit the first
/// stage under mean-one weights, rebuild the weighted curve, and store
/// sqrt(n) times its deviation from the original curve.
pub fn weighted_bootstrap(
    data: &Dataset,
    base_index: &IndexValues,
    grid: &[f64],
    law: WeightLaw,
    b: usize,
    seed: u64,
) -> Result<BootstrapDraws> {
    let base = roc_at_grid(data, base_index, grid)?.r_values;
    let root_n = (data.n() as f64).sqrt();
    let (rows, failures) = run_weighted(b, seed, |rng| {
        let w = law.draw(data.n(), rng);
        let lean = fit_logit_core(data, Some(w.values())).ok()?;
        let g = index_from_beta(data, &lean.beta);
        let rw = weighted_roc_values(data, &g, w.values(), grid);
        Some(rw.iter().zip(&base).map(|(a, b)| root_n * (a - b)).collect())
    });
    draws_from_rows(Scheme::Weighted, grid, rows, b, seed, failures)
}

/// Paired weighted bootstrap of the difference process R2 - R1; one weight
/// draw per replicate drives both refits.
#[allow(clippy::too_many_arguments)]
pub fn weighted_bootstrap_difference(
    d1: &Dataset,
    idx1: &IndexValues,
    d2: &Dataset,
    idx2: &IndexValues,
    grid: &[f64],
    law: WeightLaw,
    b: usize,
    seed: u64,
) -> Result<BootstrapDraws> {
    if d1.n() != d2.n() {
        return Err(Error::DimensionMismatch("datasets differ in length".into()));
    }
    let base1 = roc_at_grid(d1, idx1, grid)?.r_values;
    let base2 = roc_at_grid(d2, idx2, grid)?.r_values;
    let root_n = (d1.n() as f64).sqrt();
    let (rows, failures) = run_weighted(b, seed, |rng| {
        let w = law.draw(d1.n(), rng);
        let lean1 = fit_logit_core(d1, Some(w.values())).ok()?;
        let lean2 = fit_logit_core(d2, Some(w.values())).ok()?;
        let g1 = index_from_beta(d1, &lean1.beta);
        let g2 = index_from_beta(d2, &lean2.beta);
        let r1 = weighted_roc_values(d1, &g1, w.values(), grid);
        let r2 = weighted_roc_values(d2, &g2, w.values(), grid);
        Some(
            (0..grid.len())
                .map(|j| root_n * ((r2[j] - r1[j]) - (base2[j] - base1[j])))
                .collect(),
        )
    });
    draws_from_rows(Scheme::Weighted, grid, rows, b, seed, failures)
}

fn multiplier_from_matrix(
    psi: &DMatrix<f64>,
    grid: &[f64],
    b: usize,
    seed: u64,
) -> BootstrapDraws {
    let n = psi.nrows();
    let root_n = (n as f64).sqrt();
    let rows: Vec<Vec<f64>> = (0..b)
        .into_par_iter()
        .map(|r| {
            let mut rng = replicate_rng(seed, r as u64);
            let u = DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
            let v = psi.tr_mul(&u) / root_n;
            v.iter().copied().collect()
        })
        .collect();
    let draws = DMatrix::from_fn(b, grid.len(), |i, j| rows[i][j]);
    BootstrapDraws {
        scheme: Scheme::Multiplier,
        t_grid: grid.to_vec(),
        draws,
        b_requested: b,
        seed,
        failures: 0,
    }
}

/// Multiplier bootstrap: perturb the estimated influence rows with standard
/// normal multipliers. No refitting takes place.
pub fn multiplier_bootstrap(table: &InfluenceTable, b: usize, seed: u64) -> BootstrapDraws {
    multiplier_from_matrix(&table.psi_r, &table.grid, b, seed)
}

/// Multiplier bootstrap of the difference process from two influence tables
/// on the same grid; one multiplier draw per replicate drives both.
pub fn multiplier_bootstrap_difference(
    t1: &InfluenceTable,
    t2: &InfluenceTable,
    b: usize,
    seed: u64,
) -> Result<BootstrapDraws> {
    if t1.psi_r.shape() != t2.psi_r.shape() {
        return Err(Error::DimensionMismatch("influence tables differ in shape".into()));
    }
    let diff = &t2.psi_r - &t1.psi_r;
    Ok(multiplier_from_matrix(&diff, &t1.grid, b, seed))
}

/// What index the pointwise weighted bootstrap should use per replicate.
pub enum PointwiseIndex<'a> {
    /// Keep the supplied index fixed across replicates (no estimation
    /// effect).
    Fixed(&'a IndexValues),
    /// Refit the logit first stage under each weight draw.
    RefitLogit,
}

/// Weighted-bootstrap estimate of the 2x2 asymptotic covariance of
/// (TP-hat, FP-hat) at one cutoff. Returns the matrix and the failure count.
pub fn pointwise_bootstrap_cov(
    data: &Dataset,
    index: PointwiseIndex<'_>,
    c: f64,
    law: WeightLaw,
    b: usize,
    seed: u64,
) -> Result<(Matrix2<f64>, usize)> {
    let (rows, failures) = run_weighted(b, seed, |rng| {
        let w = law.draw(data.n(), rng);
        let g: Vec<f64> = match &index {
            PointwiseIndex::Fixed(idx) => idx.values().to_vec(),
            PointwiseIndex::RefitLogit => {
                let lean = fit_logit_core(data, Some(w.values())).ok()?;
                index_from_beta(data, &lean.beta)
            }
        };
        // guard against a weight draw that zeroes out a class in fixed mode
        let (mut w1, mut w0) = (0.0, 0.0);
        for (i, &y) in data.y().iter().enumerate() {
            if y == 1.0 {
                w1 += w.values()[i];
            } else {
                w0 += w.values()[i];
            }
        }
        if w1 <= 0.0 || w0 <= 0.0 {
            return None;
        }
        let (tp, fp) = weighted_tp_fp(data, &g, w.values(), c);
        Some(vec![tp, fp])
    });
    if failures * 20 > b {
        return Err(Error::ExcessiveFailures(failures, b));
    }
    let used = rows.len() as f64;
    let mean_tp = rows.iter().map(|r| r[0]).sum::<f64>() / used;
    let mean_fp = rows.iter().map(|r| r[1]).sum::<f64>() / used;
    let mut cov = Matrix2::zeros();
    for r in &rows {
        let a = r[0] - mean_tp;
        let bdev = r[1] - mean_fp;
        cov[(0, 0)] += a * a;
        cov[(0, 1)] += a * bdev;
        cov[(1, 1)] += bdev * bdev;
    }
    cov[(1, 0)] = cov[(0, 1)];
    Ok((cov * (data.n() as f64 / used), failures))
}

/// Per-draw standardized suprema over the grid.
#[derive(Debug, Clone)]
pub struct SupStats {
    pub sups: Vec<f64>,
}

impl SupStats {
    /// Critical value at level alpha: the floor((1 - alpha) * B)-th order
    /// statistic of the per-draw suprema.
    pub fn critical_value(&self, alpha: f64) -> f64 {
        let mut sorted = self.sups.clone();
        sorted.sort_by(f64::total_cmp);
        let b = sorted.len();
        let k = (((1.0 - alpha) * b as f64).floor() as usize).clamp(1, b);
        sorted[k - 1]
    }
}

/// Sup of the standardized process per draw: max over the grid of
/// psi(t) / scale(t), or of the absolute value in two-sided mode.
pub fn sup_statistics(
    draws: &BootstrapDraws,
    scale: &[f64],
    mode: TailMode,
) -> Result<SupStats> {
    if scale.len() != draws.t_grid.len() {
        return Err(Error::DimensionMismatch("scale length vs grid length".into()));
    }
    if scale.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::VarianceUnavailable);
    }
    let sups = (0..draws.draws.nrows())
        .map(|i| {
            let mut best = f64::NEG_INFINITY;
            for j in 0..draws.draws.ncols() {
                let v = draws.draws[(i, j)] / scale[j];
                let v = if mode == TailMode::TwoSided { v.abs() } else { v };
                best = best.max(v);
            }
            best
        })
        .collect();
    Ok(SupStats { sups })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::influence::influence_table;
    use crate::kernel::KernelConfig;
    use crate::logit::{fit_logit, WeightVector};
    use crate::stats;
    use nalgebra::DMatrix;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn dgp_sample(seed: u64, n: usize) -> Dataset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let beta = [0.0, 0.5, 0.25, 1.0];
        let mut y = Vec::with_capacity(n);
        let mut cols = vec![Vec::with_capacity(n); 3];
        for _ in 0..n {
            let x: Vec<f64> = (0..3)
                .map(|_| rand_distr::StandardNormal.sample(&mut rng))
                .collect();
            let eta = beta[0] + beta[1] * x[0] + beta[2] * x[1] + beta[3] * x[2];
            let p = stats::logistic(eta);
            y.push(if rng.random::<f64>() < p { 1.0 } else { 0.0 });
            for (j, c) in cols.iter_mut().enumerate() {
                c.push(x[j]);
            }
        }
        let x = DMatrix::from_fn(n, 3, |i, j| cols[j][i]);
        Dataset::new(y, x).unwrap()
    }

    fn grid(l: f64, u: f64, m: usize) -> Vec<f64> {
        (0..m).map(|j| l + (u - l) * j as f64 / (m - 1) as f64).collect()
    }

    #[test]
    fn unit_weights_produce_zero_rows() {
        let d = dgp_sample(1, 200);
        let m = fit_logit(&d).unwrap();
        let g = m.index_values(&d).unwrap();
        let tg = grid(0.1, 0.9, 9);
        let w = vec![1.0; d.n()];
        let base = roc_at_grid(&d, &g, &tg).unwrap().r_values;
        let lean = fit_logit_core(&d, Some(&w)).unwrap();
        let gw = index_from_beta(&d, &lean.beta);
        let rw = weighted_roc_values(&d, &gw, &w, &tg);
        for (a, b) in rw.iter().zip(&base) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn weighted_tp_fp_reduces_to_unweighted_counts() {
        let d = dgp_sample(2, 150);
        let m = fit_logit(&d).unwrap();
        let g = m.index_values(&d).unwrap();
        let w = vec![1.0; d.n()];
        for c in [0.3, 0.5, 0.7] {
            let (tp_w, fp_w) = weighted_tp_fp(&d, g.values(), &w, c);
            let (tp, fp) = crate::roc::tp_fp_at_cutoff(&d, &g, c);
            assert_eq!(tp_w, tp);
            assert_eq!(fp_w, fp);
        }
    }

    #[test]
    fn zero_multiplier_draw_is_a_zero_row() {
        let d = dgp_sample(3, 300);
        let m = fit_logit(&d).unwrap();
        let (_, table) =
            influence_table(&d, &m, &grid(0.2, 0.8, 7), &KernelConfig::default()).unwrap();
        let u = DVector::zeros(d.n());
        let v = table.psi_r.tr_mul(&u);
        assert!(v.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn determinism_same_seed_same_draws() {
        let d = dgp_sample(4, 250);
        let m = fit_logit(&d).unwrap();
        let g = m.index_values(&d).unwrap();
        let tg = grid(0.1, 0.9, 9);
        let a = weighted_bootstrap(&d, &g, &tg, WeightLaw::TwoPoint, 50, 99).unwrap();
        let b = weighted_bootstrap(&d, &g, &tg, WeightLaw::TwoPoint, 50, 99).unwrap();
        assert_eq!(a.draws, b.draws);
        assert_eq!(a.failures, b.failures);
        let (_, table) = influence_table(&d, &m, &tg, &KernelConfig::default()).unwrap();
        let ma = multiplier_bootstrap(&table, 50, 99);
        let mb = multiplier_bootstrap(&table, 50, 99);
        assert_eq!(ma.draws, mb.draws);
    }

    #[test]
    fn determinism_across_worker_counts() {
        let d = dgp_sample(5, 200);
        let m = fit_logit(&d).unwrap();
        let g = m.index_values(&d).unwrap();
        let tg = grid(0.1, 0.9, 9);
        let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let pool4 = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = pool1
            .install(|| weighted_bootstrap(&d, &g, &tg, WeightLaw::TwoPoint, 40, 7).unwrap());
        let b = pool4
            .install(|| weighted_bootstrap(&d, &g, &tg, WeightLaw::TwoPoint, 40, 7).unwrap());
        assert_eq!(a.draws, b.draws);
    }

    #[test]
    fn multiplier_variance_matches_analytic_sigma() {
        let d = dgp_sample(6, 600);
        let m = fit_logit(&d).unwrap();
        let tg = grid(0.2, 0.8, 7);
        let (_, table) = influence_table(&d, &m, &tg, &KernelConfig::default()).unwrap();
        let draws = multiplier_bootstrap(&table, 2000, 11);
        let var = draws.col_variance();
        for j in 0..tg.len() {
            let analytic = table.sigma[j] * table.sigma[j];
            assert!(
                (var[j] / analytic - 1.0).abs() < 0.10,
                "t {}: {} vs {}",
                tg[j],
                var[j],
                analytic
            );
        }
        assert!(draws.centering_ok(&table.sigma));
    }

    #[test]
    fn multiplier_covariance_matches_cross_products() {
        let d = dgp_sample(7, 500);
        let m = fit_logit(&d).unwrap();
        let tg = [0.25, 0.5, 0.75];
        let (_, table) = influence_table(&d, &m, &tg, &KernelConfig::default()).unwrap();
        let draws = multiplier_bootstrap(&table, 2000, 13);
        let b = draws.b_realized() as f64;
        let (j1, j2) = (0, 2);
        let m1 = draws.draws.column(j1).sum() / b;
        let m2 = draws.draws.column(j2).sum() / b;
        let mut cov = 0.0;
        for i in 0..draws.b_realized() {
            cov += (draws.draws[(i, j1)] - m1) * (draws.draws[(i, j2)] - m2);
        }
        cov /= b;
        let analytic = table.h_r(j1, j2);
        assert!(
            (cov / analytic - 1.0).abs() < 0.10,
            "draw covariance {cov} vs analytic {analytic}"
        );
    }

    #[test]
    fn weighted_variance_cross_checks_analytic_sigma() {
        let spec = crate::simulation::DgpSpec::normal_logit(2000);
        let d = crate::simulation::draw_sample(&spec, 8).unwrap();
        let m = fit_logit(&d).unwrap();
        let g = m.index_values(&d).unwrap();
        let tg = grid(0.25, 0.75, 11);
        let draws = weighted_bootstrap(&d, &g, &tg, WeightLaw::TwoPoint, 1000, 101).unwrap();
        let var = draws.col_variance();
        let (_, table) = influence_table(&d, &m, &tg, &KernelConfig::default()).unwrap();
        for j in 0..tg.len() {
            let analytic = table.sigma[j] * table.sigma[j];
            assert!(
                (var[j] / analytic - 1.0).abs() < 0.15,
                "t {}: weighted {} vs analytic {}",
                tg[j],
                var[j],
                analytic
            );
        }
    }

    #[test]
    fn pointwise_cov_fixed_index_recovers_conventional_variance() {
        let d = dgp_sample(9, 800);
        let m = fit_logit(&d).unwrap();
        let g = m.index_values(&d).unwrap();
        let c = 0.5;
        let (cov, failures) = pointwise_bootstrap_cov(
            &d,
            PointwiseIndex::Fixed(&g),
            c,
            WeightLaw::TwoPoint,
            4000,
            21,
        )
        .unwrap();
        assert_eq!(failures, 0);
        let (tp, fp) = crate::roc::tp_fp_at_cutoff(&d, &g, c);
        let conv_tp = tp * (1.0 - tp) / d.pi_hat();
        let conv_fp = fp * (1.0 - fp) / (1.0 - d.pi_hat());
        assert!((cov[(0, 0)] / conv_tp - 1.0).abs() < 0.10, "{} vs {conv_tp}", cov[(0, 0)]);
        assert!((cov[(1, 1)] / conv_fp - 1.0).abs() < 0.10, "{} vs {conv_fp}", cov[(1, 1)]);
        assert_eq!(cov[(0, 1)], cov[(1, 0)]);
    }

    #[test]
    fn pointwise_cov_refit_matches_analytic_plugin() {
        let d = dgp_sample(10, 500);
        let m = fit_logit(&d).unwrap();
        let c = 0.5;
        let (cov, _) = pointwise_bootstrap_cov(
            &d,
            PointwiseIndex::RefitLogit,
            c,
            WeightLaw::TwoPoint,
            1500,
            23,
        )
        .unwrap();
        let table = crate::influence::influence_table_pointwise(
            &d,
            &m,
            &[c],
            &KernelConfig::default(),
        )
        .unwrap();
        let analytic = crate::influence::pointwise_cov(&table, 0);
        for (a, b) in [(0usize, 0usize), (1, 1)] {
            assert!(
                (cov[(a, b)] / analytic[(a, b)] - 1.0).abs() < 0.15,
                "({a},{b}): {} vs {}",
                cov[(a, b)],
                analytic[(a, b)]
            );
        }
    }

    #[test]
    fn sup_statistics_order_statistic_and_tail_modes() {
        let draws = BootstrapDraws {
            scheme: Scheme::Multiplier,
            t_grid: vec![0.5],
            draws: DMatrix::from_column_slice(4, 1, &[1.0, 2.0, 3.0, 4.0]),
            b_requested: 4,
            seed: 0,
            failures: 0,
        };
        let sup = sup_statistics(&draws, &[1.0], TailMode::OneSided).unwrap();
        assert_eq!(sup.critical_value(0.25), 3.0);

        let neg = BootstrapDraws {
            draws: DMatrix::from_column_slice(4, 1, &[-1.0, -2.0, 3.0, -4.0]),
            ..draws
        };
        let one = sup_statistics(&neg, &[1.0], TailMode::OneSided).unwrap();
        let two = sup_statistics(&neg, &[1.0], TailMode::TwoSided).unwrap();
        for (a, b) in one.sups.iter().zip(&two.sups) {
            assert!(b >= a);
        }
    }

    #[test]
    fn multiplier_critical_value_exceeds_single_point_quantile() {
        let d = dgp_sample(11, 500);
        let m = fit_logit(&d).unwrap();
        let tg = grid(0.1, 0.9, 33);
        let (_, table) = influence_table(&d, &m, &tg, &KernelConfig::default()).unwrap();
        let draws = multiplier_bootstrap(&table, 2000, 29);
        let scale = crate::influence::sigma_eps(&table.sigma, 0.01);
        let sup = sup_statistics(&draws, &scale, TailMode::OneSided).unwrap();
        assert!(
            sup.critical_value(0.10) > 1.645,
            "cv {}",
            sup.critical_value(0.10)
        );
    }

    #[test]
    fn weight_vector_rejects_negatives() {
        assert!(matches!(
            WeightVector::new(vec![1.0, -0.5]),
            Err(Error::NegativeWeight)
        ));
    }
}
