//! Data generating processes and Monte Carlo experiments: coverage of the
//! three pointwise interval constructions, simultaneous band coverage, and
//! size/power of the dominance and AUC tests.

use crate::data::{Dataset, GridConfig, IndexValues};
use crate::error::{Error, Result};
use crate::inference::{auc_compare, dominance_test, uniform_band};
use crate::kernel::KernelConfig;
use crate::logit::{fit_logit, WeightLaw};
use crate::resample::{Scheme, TailMode};
use crate::stats;
use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Marginal law of each predictor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictorLaw {
    /// Independent standard normals.
    #[default]
    Normal01,
    /// Independent uniforms on [-0.5, 1.5].
    Uniform,
}

/// Link mapping the linear index to a conditional probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkFn {
    #[default]
    Logit,
    Cauchit,
}

impl LinkFn {
    pub fn eval(&self, z: f64) -> f64 {
        match self {
            LinkFn::Logit => stats::logistic(z),
            LinkFn::Cauchit => 0.5 + z.atan() / std::f64::consts::PI,
        }
    }
}

/// A simulation design: true coefficients, predictor law, link, sample size.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DgpSpec {
    /// True coefficient vector, intercept first.
    pub beta_true: Vec<f64>,
    pub predictor_law: PredictorLaw,
    pub link: LinkFn,
    pub n: usize,
}

const PAPER_BETA: [f64; 4] = [0.0, 0.5, 0.25, 1.0];

impl DgpSpec {
    /// Three standard-normal predictors with a logistic link.
    pub fn normal_logit(n: usize) -> Self {
        DgpSpec {
            beta_true: PAPER_BETA.to_vec(),
            predictor_law: PredictorLaw::Normal01,
            link: LinkFn::Logit,
            n,
        }
    }

    /// Three uniform[-0.5, 1.5] predictors with a logistic link.
    pub fn uniform_logit(n: usize) -> Self {
        DgpSpec { predictor_law: PredictorLaw::Uniform, ..Self::normal_logit(n) }
    }

    /// Three standard-normal predictors with a cauchit link; the logit first
    /// stage is then mildly misspecified.
    pub fn normal_cauchit(n: usize) -> Self {
        DgpSpec { link: LinkFn::Cauchit, ..Self::normal_logit(n) }
    }

    pub fn k(&self) -> usize {
        self.beta_true.len() - 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.beta_true.is_empty() {
            return Err(Error::InvalidConfig("beta_true must be nonempty".into()));
        }
        if self.n < 50 {
            return Err(Error::InvalidConfig(
                "simulation sample size must be at least 50".into(),
            ));
        }
        Ok(())
    }

    fn draw_predictors<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        (0..self.k())
            .map(|_| match self.predictor_law {
                PredictorLaw::Normal01 => StandardNormal.sample(rng),
                PredictorLaw::Uniform => rng.random::<f64>() * 2.0 - 0.5,
            })
            .collect()
    }

    fn propensity(&self, x: &[f64]) -> f64 {
        let eta: f64 = self.beta_true[0]
            + x.iter().zip(&self.beta_true[1..]).map(|(xi, bi)| xi * bi).sum::<f64>();
        self.link.eval(eta)
    }
}

/// Deterministic sub-seed for a replication, decorrelated from the base seed.
pub(crate) fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draw one sample from the design; deterministic given the seed.
pub fn draw_sample(spec: &DgpSpec, seed: u64) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = crate::resample::replicate_rng(seed, 0);
    let mut y = Vec::with_capacity(spec.n);
    let mut rows = Vec::with_capacity(spec.n);
    for _ in 0..spec.n {
        let x = spec.draw_predictors(&mut rng);
        let p = spec.propensity(&x);
        y.push(if rng.random::<f64>() < p { 1.0 } else { 0.0 });
        rows.push(x);
    }
    let x = DMatrix::from_fn(spec.n, spec.k(), |i, j| rows[i][j]);
    Dataset::new(y, x)
}

/// The true predictive index p(X) of each observation in a drawn sample.
pub fn true_index(spec: &DgpSpec, data: &Dataset) -> Result<IndexValues> {
    let g: Vec<f64> = (0..data.n())
        .map(|i| {
            let x: Vec<f64> = (0..data.k()).map(|j| data.x()[(i, j)]).collect();
            spec.propensity(&x)
        })
        .collect();
    IndexValues::new(g, None)
}

/// Population TP/FP values at fixed cutoffs from a conditional-probability
/// weighted Monte Carlo at the true coefficients.
#[derive(Debug, Clone)]
pub struct TrueValues {
    pub cutoffs: Vec<f64>,
    pub tp: Vec<f64>,
    pub fp: Vec<f64>,
}

impl TrueValues {
    pub fn tp_minus_fp(&self, j: usize) -> f64 {
        self.tp[j] - self.fp[j]
    }
}

const TRUTH_CHUNKS: u64 = 64;

/// Brute-force population TP/FP at the true index, using `mc_n` draws.
pub fn true_tp_fp(spec: &DgpSpec, cutoffs: &[f64], mc_n: usize, seed: u64) -> TrueValues {
    let m = cutoffs.len();
    let per_chunk = mc_n as u64 / TRUTH_CHUNKS;
    let partials: Vec<(Vec<f64>, Vec<f64>, f64, f64)> = (0..TRUTH_CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = crate::resample::replicate_rng(seed, chunk + 1);
            let draws = if chunk == TRUTH_CHUNKS - 1 {
                mc_n as u64 - per_chunk * (TRUTH_CHUNKS - 1)
            } else {
                per_chunk
            };
            let mut s1 = vec![0.0; m];
            let mut s0 = vec![0.0; m];
            let (mut w1, mut w0) = (0.0, 0.0);
            for _ in 0..draws {
                let x = spec.draw_predictors(&mut rng);
                let p = spec.propensity(&x);
                w1 += p;
                w0 += 1.0 - p;
                for (j, &c) in cutoffs.iter().enumerate() {
                    if p > c {
                        s1[j] += p;
                        s0[j] += 1.0 - p;
                    }
                }
            }
            (s1, s0, w1, w0)
        })
        .collect();
    let mut s1 = vec![0.0; m];
    let mut s0 = vec![0.0; m];
    let (mut w1, mut w0) = (0.0, 0.0);
    for (p1, p0, a, b) in partials {
        for j in 0..m {
            s1[j] += p1[j];
            s0[j] += p0[j];
        }
        w1 += a;
        w0 += b;
    }
    TrueValues {
        cutoffs: cutoffs.to_vec(),
        tp: s1.iter().map(|v| v / w1).collect(),
        fp: s0.iter().map(|v| v / w0).collect(),
    }
}

/// Population ROC curve R(t) on a grid, plus the population AUC, from a
/// binned weighted Monte Carlo at the true coefficients.
pub fn true_roc(spec: &DgpSpec, t_grid: &[f64], mc_n: usize, seed: u64) -> (Vec<f64>, f64) {
    const BINS: usize = 4000;
    let per_chunk = mc_n as u64 / TRUTH_CHUNKS;
    let partials: Vec<(Vec<f64>, Vec<f64>)> = (0..TRUTH_CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = crate::resample::replicate_rng(seed, chunk + 1);
            let draws = if chunk == TRUTH_CHUNKS - 1 {
                mc_n as u64 - per_chunk * (TRUTH_CHUNKS - 1)
            } else {
                per_chunk
            };
            let mut w1 = vec![0.0; BINS];
            let mut w0 = vec![0.0; BINS];
            for _ in 0..draws {
                let x = spec.draw_predictors(&mut rng);
                let p = spec.propensity(&x);
                let bin = ((p * BINS as f64) as usize).min(BINS - 1);
                w1[bin] += p;
                w0[bin] += 1.0 - p;
            }
            (w1, w0)
        })
        .collect();
    let mut w1 = vec![0.0; BINS];
    let mut w0 = vec![0.0; BINS];
    for (a, b) in partials {
        for j in 0..BINS {
            w1[j] += a[j];
            w0[j] += b[j];
        }
    }
    // suffix sums: tp/fp when cutting at the lower edge of each bin
    let mut tp = vec![0.0; BINS + 1];
    let mut fp = vec![0.0; BINS + 1];
    for b in (0..BINS).rev() {
        tp[b] = tp[b + 1] + w1[b];
        fp[b] = fp[b + 1] + w0[b];
    }
    let (t1, t0) = (tp[0], fp[0]);
    for b in 0..=BINS {
        tp[b] /= t1;
        fp[b] /= t0;
    }
    // fp[b] is nonincreasing in b; invert on the grid
    let r_values = t_grid
        .iter()
        .map(|&t| {
            if t >= 1.0 {
                return 1.0;
            }
            let b = fp.partition_point(|&f| f > t);
            tp[b.min(BINS)]
        })
        .collect();
    // area under the (fp, tp) polyline
    let mut auc = 0.0;
    for b in 0..BINS {
        auc += (fp[b] - fp[b + 1]) * (tp[b] + tp[b + 1]) * 0.5;
    }
    (r_values, auc)
}

/// Interval construction evaluated in the coverage experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageMethod {
    /// Conventional interval around the true-index rates.
    TrueIndexConventional,
    /// Conventional interval around the estimated-index rates.
    EstimatedIndexConventional,
    /// Analytically corrected interval around the estimated-index rates.
    EstimatedIndexCorrected,
}

pub const COVERAGE_METHODS: [CoverageMethod; 3] = [
    CoverageMethod::TrueIndexConventional,
    CoverageMethod::EstimatedIndexConventional,
    CoverageMethod::EstimatedIndexCorrected,
];

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CoverageCell {
    pub coverage: f64,
    pub mc_se: f64,
}

/// One cutoff row of the coverage table: truths and actual coverage of the
/// three constructions, for TP and for TP - FP.
#[derive(Debug, Clone, Serialize)]
pub struct CoverageRow {
    pub cutoff: f64,
    pub tp_true: f64,
    pub tp_minus_fp_true: f64,
    pub tp: [CoverageCell; 3],
    pub tp_minus_fp: [CoverageCell; 3],
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    pub n: usize,
    pub level: f64,
    pub replications: usize,
    pub reps_used: usize,
    pub failures: usize,
    pub seed: u64,
    pub rows: Vec<CoverageRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageTarget {
    Tp,
    TpMinusFp,
}

impl CoverageReport {
    pub fn cell(&self, cutoff: f64, target: CoverageTarget, method: CoverageMethod) -> f64 {
        let row = self
            .rows
            .iter()
            .find(|r| (r.cutoff - cutoff).abs() < 1e-12)
            .expect("cutoff present in report");
        let idx = COVERAGE_METHODS.iter().position(|&m| m == method).unwrap();
        match target {
            CoverageTarget::Tp => row.tp[idx].coverage,
            CoverageTarget::TpMinusFp => row.tp_minus_fp[idx].coverage,
        }
    }

    /// CSV layout mirroring the coverage table: one row per cutoff, one
    /// column block per target and method, plus MC standard errors.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(
            w,
            "cutoff,tp_true,tp_true_conv,tp_est_conv,tp_corrected,\
             tpfp_true,tpfp_true_conv,tpfp_est_conv,tpfp_corrected,\
             tp_true_conv_se,tp_est_conv_se,tp_corrected_se,\
             tpfp_true_conv_se,tpfp_est_conv_se,tpfp_corrected_se"
        )?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.cutoff,
                r.tp_true,
                r.tp[0].coverage,
                r.tp[1].coverage,
                r.tp[2].coverage,
                r.tp_minus_fp_true,
                r.tp_minus_fp[0].coverage,
                r.tp_minus_fp[1].coverage,
                r.tp_minus_fp[2].coverage,
                r.tp[0].mc_se,
                r.tp[1].mc_se,
                r.tp[2].mc_se,
                r.tp_minus_fp[0].mc_se,
                r.tp_minus_fp[1].mc_se,
                r.tp_minus_fp[2].mc_se,
            )?;
        }
        Ok(())
    }
}

/// Reproduce the coverage experiment: per replication, draw a sample, fit
/// the logit first stage, build the three interval flavors for TP and
/// TP - FP at each cutoff, and score containment of the population truth.
pub fn coverage_experiment(
    spec: &DgpSpec,
    cutoffs: &[f64],
    replications: usize,
    level: f64,
    seed: u64,
    kernel: &KernelConfig,
) -> Result<CoverageReport> {
    spec.validate()?;
    if replications == 0 {
        return Err(Error::InvalidConfig("replications must be positive".into()));
    }
    let truth = true_tp_fp(spec, cutoffs, 1_000_000, derive_seed(seed, 0xABCD));
    let z = stats::normal_quantile(1.0 - (1.0 - level) / 2.0);
    let m = cutoffs.len();

    // per replication and cutoff: covered[target][method]
    let outcomes: Vec<Option<Vec<[[bool; 3]; 2]>>> = (0..replications)
        .into_par_iter()
        .map(|rep| {
            let sample_seed = derive_seed(seed, rep as u64 + 1);
            let data = draw_sample(spec, sample_seed).ok()?;
            let model = fit_logit(&data).ok()?;
            let g_true = true_index(spec, &data).ok()?;
            let g_est = model.index_values(&data).ok()?;
            let table =
                crate::influence::influence_table_pointwise(&data, &model, cutoffs, kernel)
                    .ok()?;
            let pi = data.pi_hat();
            let n = data.n() as f64;
            let mut out = vec![[[false; 3]; 2]; m];
            for (j, &c) in cutoffs.iter().enumerate() {
                let (tp_t, fp_t) = crate::roc::tp_fp_at_cutoff(&data, &g_true, c);
                let (tp_e, fp_e) = crate::roc::tp_fp_at_cutoff(&data, &g_est, c);
                let psi = crate::influence::pointwise_cov(&table, j);
                for ti in 0..2usize {
                    // target weights: TP is (1, 0); TP - FP is (1, -1)
                    let (a, b) = if ti == 0 { (1.0, 0.0) } else { (1.0, -1.0) };
                    let truth_v = a * truth.tp[j] + b * truth.fp[j];
                    // true-index conventional
                    let est_t = a * tp_t + b * fp_t;
                    let var_t = a * a * tp_t * (1.0 - tp_t) / pi
                        + b * b * fp_t * (1.0 - fp_t) / (1.0 - pi);
                    let half_t = z * (var_t / n).sqrt();
                    out[j][ti][0] = (truth_v - est_t).abs() <= half_t;
                    // estimated-index conventional
                    let est_e = a * tp_e + b * fp_e;
                    let var_e = a * a * tp_e * (1.0 - tp_e) / pi
                        + b * b * fp_e * (1.0 - fp_e) / (1.0 - pi);
                    let half_e = z * (var_e / n).sqrt();
                    out[j][ti][1] = (truth_v - est_e).abs() <= half_e;
                    // estimated-index corrected
                    let var_c = a * a * psi[(0, 0)]
                        + 2.0 * a * b * psi[(0, 1)]
                        + b * b * psi[(1, 1)];
                    let half_c = z * (var_c.max(0.0) / n).sqrt();
                    out[j][ti][2] = (truth_v - est_e).abs() <= half_c;
                }
            }
            Some(out)
        })
        .collect();

    let used: Vec<&Vec<[[bool; 3]; 2]>> = outcomes.iter().flatten().collect();
    let failures = replications - used.len();
    let reps_used = used.len();
    if reps_used == 0 {
        return Err(Error::NoConvergence);
    }
    let rows = cutoffs
        .iter()
        .enumerate()
        .map(|(j, &c)| {
            let cell = |ti: usize, mi: usize| {
                let hits = used.iter().filter(|o| o[j][ti][mi]).count();
                let coverage = hits as f64 / reps_used as f64;
                CoverageCell {
                    coverage,
                    mc_se: (coverage * (1.0 - coverage) / reps_used as f64).sqrt(),
                }
            };
            CoverageRow {
                cutoff: c,
                tp_true: truth.tp[j],
                tp_minus_fp_true: truth.tp[j] - truth.fp[j],
                tp: [cell(0, 0), cell(0, 1), cell(0, 2)],
                tp_minus_fp: [cell(1, 0), cell(1, 1), cell(1, 2)],
            }
        })
        .collect();
    Ok(CoverageReport { n: spec.n, level, replications, reps_used, failures, seed, rows })
}

/// Rejection or coverage rate summary of a repeated experiment.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RateSummary {
    pub rate: f64,
    pub mc_se: f64,
    pub replications: usize,
    pub reps_used: usize,
    pub failures: usize,
}

fn summarize(results: Vec<Option<bool>>) -> Result<RateSummary> {
    let replications = results.len();
    let used: Vec<bool> = results.into_iter().flatten().collect();
    if used.is_empty() {
        return Err(Error::NoConvergence);
    }
    let rate = used.iter().filter(|&&v| v).count() as f64 / used.len() as f64;
    Ok(RateSummary {
        rate,
        mc_se: (rate * (1.0 - rate) / used.len() as f64).sqrt(),
        replications,
        reps_used: used.len(),
        failures: replications - used.len(),
    })
}

/// Simultaneous coverage of the uniform confidence band, scored against the
/// population curve from a large Monte Carlo at the true coefficients.
#[allow(clippy::too_many_arguments)]
pub fn band_coverage_experiment(
    spec: &DgpSpec,
    grid_cfg: &GridConfig,
    kernel: &KernelConfig,
    scheme: Scheme,
    law: WeightLaw,
    b: usize,
    replications: usize,
    seed: u64,
    truth_mc: usize,
) -> Result<RateSummary> {
    spec.validate()?;
    let t_grid = grid_cfg.t_grid()?;
    let (r_true, _) = true_roc(spec, &t_grid, truth_mc, derive_seed(seed, 0xBEEF));
    let results: Vec<Option<bool>> = (0..replications)
        .into_par_iter()
        .map(|rep| {
            let sample_seed = derive_seed(seed, rep as u64 + 1);
            let data = draw_sample(spec, sample_seed).ok()?;
            let model = fit_logit(&data).ok()?;
            let band = uniform_band(
                &data,
                &model,
                grid_cfg,
                kernel,
                scheme,
                law,
                b,
                derive_seed(sample_seed, 0xBA4D),
                TailMode::TwoSided,
            )
            .ok()?;
            Some(
                (0..t_grid.len())
                    .all(|j| band.lower[j] <= r_true[j] && r_true[j] <= band.upper[j]),
            )
        })
        .collect();
    summarize(results)
}

/// Two-model designs for the dominance and AUC experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoModelDesign {
    /// Two single-predictor models on exchangeable predictors: the two
    /// population curves coincide, the least favorable configuration of the
    /// dominance null.
    EqualCurves,
    /// Model 1 sees only a pure-noise predictor; model 2 sees the three
    /// informative ones. The alternative holds decisively.
    NoiseVsFull,
}

impl TwoModelDesign {
    pub fn spec(&self, n: usize) -> DgpSpec {
        match self {
            TwoModelDesign::EqualCurves => DgpSpec {
                beta_true: vec![0.0, 0.7, 0.7],
                predictor_law: PredictorLaw::Normal01,
                link: LinkFn::Logit,
                n,
            },
            TwoModelDesign::NoiseVsFull => DgpSpec {
                beta_true: vec![0.0, 0.5, 0.25, 1.0, 0.0],
                predictor_law: PredictorLaw::Normal01,
                link: LinkFn::Logit,
                n,
            },
        }
    }

    /// Predictor columns of (model 1, model 2).
    pub fn columns(&self) -> (Vec<usize>, Vec<usize>) {
        match self {
            TwoModelDesign::EqualCurves => (vec![0], vec![1]),
            TwoModelDesign::NoiseVsFull => (vec![3], vec![0, 1, 2]),
        }
    }
}

/// Rejection rate of the dominance test under a two-model design.
#[allow(clippy::too_many_arguments)]
pub fn dominance_experiment(
    design: TwoModelDesign,
    n: usize,
    grid_cfg: &GridConfig,
    kernel: &KernelConfig,
    scheme: Scheme,
    law: WeightLaw,
    b: usize,
    replications: usize,
    seed: u64,
) -> Result<RateSummary> {
    let spec = design.spec(n);
    let (cols1, cols2) = design.columns();
    let results: Vec<Option<bool>> = (0..replications)
        .into_par_iter()
        .map(|rep| {
            let sample_seed = derive_seed(seed, rep as u64 + 1);
            let data = draw_sample(&spec, sample_seed).ok()?;
            let d1 = data.select_predictors(&cols1).ok()?;
            let d2 = data.select_predictors(&cols2).ok()?;
            let m1 = fit_logit(&d1).ok()?;
            let m2 = fit_logit(&d2).ok()?;
            let out = dominance_test(
                &d1,
                &m1,
                &d2,
                &m2,
                grid_cfg,
                kernel,
                scheme,
                law,
                b,
                derive_seed(sample_seed, 0xD0),
            )
            .ok()?;
            Some(out.reject)
        })
        .collect();
    summarize(results)
}

/// Rejection rate of the two-sided AUC comparison under a two-model design.
#[allow(clippy::too_many_arguments)]
pub fn auc_test_experiment(
    design: TwoModelDesign,
    n: usize,
    grid_cfg: &GridConfig,
    kernel: &KernelConfig,
    scheme: Scheme,
    law: WeightLaw,
    b: usize,
    replications: usize,
    seed: u64,
) -> Result<RateSummary> {
    let spec = design.spec(n);
    let (cols1, cols2) = design.columns();
    let alpha = grid_cfg.alpha;
    let results: Vec<Option<bool>> = (0..replications)
        .into_par_iter()
        .map(|rep| {
            let sample_seed = derive_seed(seed, rep as u64 + 1);
            let data = draw_sample(&spec, sample_seed).ok()?;
            let d1 = data.select_predictors(&cols1).ok()?;
            let d2 = data.select_predictors(&cols2).ok()?;
            let m1 = fit_logit(&d1).ok()?;
            let m2 = fit_logit(&d2).ok()?;
            let out = auc_compare(
                &d1,
                &m1,
                &d2,
                &m2,
                grid_cfg,
                kernel,
                scheme,
                law,
                b,
                derive_seed(sample_seed, 0xA0C),
            )
            .ok()?;
            Some(out.p_value < alpha)
        })
        .collect();
    summarize(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_mean_is_half_under_symmetric_normal_logit() {
        let spec = DgpSpec::normal_logit(200_000);
        let d = draw_sample(&spec, 1).unwrap();
        assert!((d.pi_hat() - 0.5).abs() < 0.005, "pi_hat {}", d.pi_hat());
    }

    #[test]
    fn zero_coefficients_make_y_independent_of_x() {
        let spec = DgpSpec {
            beta_true: vec![0.0, 0.0, 0.0],
            predictor_law: PredictorLaw::Normal01,
            link: LinkFn::Logit,
            n: 100_000,
        };
        let d = draw_sample(&spec, 2).unwrap();
        assert!((d.pi_hat() - 0.5).abs() < 0.01);
    }

    #[test]
    fn draws_are_deterministic_given_seed() {
        let spec = DgpSpec::normal_logit(500);
        let a = draw_sample(&spec, 7).unwrap();
        let b = draw_sample(&spec, 7).unwrap();
        assert_eq!(a.y(), b.y());
        assert_eq!(a.x(), b.x());
    }

    #[test]
    fn empirical_tp_at_true_index_approaches_population_value() {
        let spec = DgpSpec::normal_logit(1_000_000);
        let d = draw_sample(&spec, 3).unwrap();
        let g = true_index(&spec, &d).unwrap();
        let (tp, _) = crate::roc::tp_fp_at_cutoff(&d, &g, 0.5);
        assert!((tp - 0.694).abs() < 0.005, "tp {tp}");
    }

    #[test]
    fn true_values_match_reported_table() {
        let spec = DgpSpec::normal_logit(500);
        let t = true_tp_fp(&spec, &[0.2, 0.5, 0.8], 1_000_000, 11);
        assert!((t.tp[0] - 0.970).abs() < 0.005, "tp(0.2) {}", t.tp[0]);
        assert!((t.tp[1] - 0.694).abs() < 0.005, "tp(0.5) {}", t.tp[1]);
        assert!((t.tp[2] - 0.196).abs() < 0.005, "tp(0.8) {}", t.tp[2]);
        assert!((t.tp_minus_fp(1) - 0.388).abs() < 0.005);
    }

    #[test]
    fn uniform_design_true_values() {
        // frozen from an independent quadrature oracle (numerical convolution
        // of the three uniform components, then integration against the
        // logistic link): TP(0.5) = 0.93384, TP(0.67) = 0.66400,
        // TP(0.8) = 0.30408
        let spec = DgpSpec::uniform_logit(500);
        let t = true_tp_fp(&spec, &[0.5, 0.67, 0.8], 1_000_000, 13);
        assert!((t.tp[0] - 0.93384).abs() < 0.004, "tp(0.5) {}", t.tp[0]);
        assert!((t.tp[1] - 0.66400).abs() < 0.004, "tp(0.67) {}", t.tp[1]);
        assert!((t.tp[2] - 0.30408).abs() < 0.004, "tp(0.8) {}", t.tp[2]);
    }

    #[test]
    fn cauchit_design_true_value() {
        let spec = DgpSpec::normal_cauchit(500);
        let t = true_tp_fp(&spec, &[0.33], 1_000_000, 17);
        assert!((t.tp[0] - 0.862).abs() < 0.006, "tp(0.33) {}", t.tp[0]);
    }

    #[test]
    fn true_roc_is_monotone_with_sane_auc() {
        let spec = DgpSpec::normal_logit(500);
        let grid: Vec<f64> = (1..=9).map(|j| j as f64 / 10.0).collect();
        let (r, auc) = true_roc(&spec, &grid, 2_000_000, 19);
        assert!(r.windows(2).all(|w| w[0] <= w[1]));
        assert!(auc > 0.7 && auc < 0.85, "auc {auc}");
        assert!(r.iter().all(|&v| (0.0..=1.0).contains(&v)));
    }

    #[test]
    fn coverage_experiment_is_reproducible_across_worker_counts() {
        let spec = DgpSpec::normal_logit(200);
        let kcfg = KernelConfig::default();
        let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let pool3 = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let a = pool1
            .install(|| coverage_experiment(&spec, &[0.5], 30, 0.90, 23, &kcfg).unwrap());
        let b = pool3
            .install(|| coverage_experiment(&spec, &[0.5], 30, 0.90, 23, &kcfg).unwrap());
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            for m in 0..3 {
                assert_eq!(ra.tp[m].coverage, rb.tp[m].coverage);
                assert_eq!(ra.tp_minus_fp[m].coverage, rb.tp_minus_fp[m].coverage);
            }
        }
        assert_eq!(a.failures, b.failures);
    }

    #[test]
    fn coverage_smoke_run_produces_sane_rates() {
        let spec = DgpSpec::normal_logit(300);
        let report =
            coverage_experiment(&spec, &[0.5], 150, 0.90, 29, &KernelConfig::default())
                .unwrap();
        let row = &report.rows[0];
        for cell in row.tp.iter().chain(row.tp_minus_fp.iter()) {
            assert!(cell.coverage > 0.5 && cell.coverage <= 1.0);
        }
        assert!(report.failures < 10);
    }
}
