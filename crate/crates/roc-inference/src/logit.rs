//! First-stage logit fitting (unweighted and observation-weighted) together
//! with the influence rows and variance plug-ins used by every downstream
//! correction.

use crate::data::{Dataset, IndexValues};
use crate::error::{Error, Result};
use crate::stats::{logistic, softplus};
use nalgebra::{Cholesky, DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

const MAX_ITER: usize = 100;
const SCORE_TOL: f64 = 1e-8;
const OBJ_TOL: f64 = 1e-12;
const BETA_SUP_LIMIT: f64 = 30.0;

/// A fitted first-stage logit model.
#[derive(Debug, Clone)]
pub struct FittedModel {
    beta_hat: DVector<f64>,
    loglik: f64,
    psi_beta: DMatrix<f64>,
    a_matrix: DMatrix<f64>,
    v_hat: DMatrix<f64>,
    converged: bool,
    iterations: usize,
}

impl FittedModel {
    /// Coefficient vector, intercept first.
    pub fn beta(&self) -> &DVector<f64> {
        &self.beta_hat
    }

    /// Attained log-likelihood (sum over observations).
    pub fn loglik(&self) -> f64 {
        self.loglik
    }

    /// Influence rows, one per observation.
    pub fn psi_beta(&self) -> &DMatrix<f64> {
        &self.psi_beta
    }

    /// Sample analog of the expected negative Hessian.
    pub fn a_matrix(&self) -> &DMatrix<f64> {
        &self.a_matrix
    }

    /// Sample second moment of the influence rows.
    pub fn v_hat(&self) -> &DMatrix<f64> {
        &self.v_hat
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Fitted probabilities, i.e. the predictive index values of this model.
    pub fn index_values(&self, data: &Dataset) -> Result<IndexValues> {
        let g = index_from_beta(data, &self.beta_hat);
        IndexValues::new(g, Some(self.beta_hat.clone()))
    }
}

/// Index values at an arbitrary coefficient vector.
pub(crate) fn index_from_beta(data: &Dataset, beta: &DVector<f64>) -> Vec<f64> {
    let xt = data.design();
    let eta = &xt * beta;
    eta.iter().map(|&z| logistic(z)).collect()
}

/// Nonnegative bootstrap weights, one per observation.
#[derive(Debug, Clone)]
pub struct WeightVector {
    w: Vec<f64>,
}

impl WeightVector {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        if w.iter().any(|&v| v < 0.0) {
            return Err(Error::NegativeWeight);
        }
        Ok(WeightVector { w })
    }

    pub fn values(&self) -> &[f64] {
        &self.w
    }
}

/// Mean-one, variance-one weight laws for the weighted bootstrap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightLaw {
    /// Weights 0 or 2 with equal probability; preserves concavity of the
    /// weighted log-likelihood.
    #[default]
    TwoPoint,
    /// Normal(1, 1) weights, redrawn per component until nonnegative.
    Normal,
}

impl WeightLaw {
    pub fn draw<R: Rng>(&self, n: usize, rng: &mut R) -> WeightVector {
        let w = match self {
            WeightLaw::TwoPoint => {
                (0..n).map(|_| if rng.random::<bool>() { 2.0 } else { 0.0 }).collect()
            }
            WeightLaw::Normal => (0..n)
                .map(|_| loop {
                    let z: f64 = StandardNormal.sample(rng);
                    if z >= -1.0 {
                        break 1.0 + z;
                    }
                })
                .collect(),
        };
        WeightVector { w }
    }
}

/// Lean fit result for hot loops that only need the coefficients.
pub(crate) struct LeanFit {
    pub(crate) beta: DVector<f64>,
    pub(crate) loglik: f64,
    pub(crate) iterations: usize,
}

/// Damped Newton ascent on the (optionally weighted) Bernoulli log-likelihood.
pub(crate) fn fit_logit_core(data: &Dataset, weights: Option<&[f64]>) -> Result<LeanFit> {
    fit_core(data, weights)
}

fn fit_core(data: &Dataset, weights: Option<&[f64]>) -> Result<LeanFit> {
    let n = data.n();
    let p = data.k() + 1;
    if let Some(w) = weights {
        if w.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} weights vs {} observations",
                w.len(),
                n
            )));
        }
        let mut w1 = 0.0;
        let mut w0 = 0.0;
        for (i, &y) in data.y().iter().enumerate() {
            if y == 1.0 {
                w1 += w[i];
            } else {
                w0 += w[i];
            }
        }
        if w1 <= 0.0 || w0 <= 0.0 {
            return Err(Error::AllZeroClassWeight);
        }
    }
    let xt = data.design();
    let wt = |i: usize| weights.map_or(1.0, |w| w[i]);

    // entry rank check on the weighted Gram matrix
    let mut gram = DMatrix::zeros(p, p);
    for i in 0..n {
        let row = xt.row(i);
        let wi = wt(i);
        if wi > 0.0 {
            gram.ger(wi, &row.transpose(), &row.transpose(), 1.0);
        }
    }
    if Cholesky::new(gram.clone()).is_none() {
        return Err(Error::RankDeficient);
    }

    let objective = |beta: &DVector<f64>| -> f64 {
        let eta = &xt * beta;
        let mut acc = 0.0;
        for i in 0..n {
            acc += wt(i) * (data.y()[i] * eta[i] - softplus(eta[i]));
        }
        acc
    };

    let mut beta = DVector::zeros(p);
    let mut obj = objective(&beta);
    for iter in 0..MAX_ITER {
        let eta = &xt * &beta;
        let lam: Vec<f64> = eta.iter().map(|&z| logistic(z)).collect();
        // total score and weighted information
        let mut score = DVector::zeros(p);
        let mut info = DMatrix::zeros(p, p);
        for i in 0..n {
            let wi = wt(i);
            if wi == 0.0 {
                continue;
            }
            let row = xt.row(i).transpose();
            score.axpy(wi * (data.y()[i] - lam[i]), &row, 1.0);
            info.ger(wi * lam[i] * (1.0 - lam[i]), &row, &row, 1.0);
        }
        let max_score = score.amax();
        if beta.amax() > BETA_SUP_LIMIT {
            return Err(Error::Separation);
        }
        if max_score < SCORE_TOL && iter > 0 {
            return Ok(LeanFit { beta, loglik: obj, iterations: iter });
        }

        let chol = match Cholesky::new(info) {
            Some(c) => c,
            None => {
                // information collapses when probabilities saturate
                return if lam.iter().any(|&l| l < 1e-10 || l > 1.0 - 1e-10) {
                    Err(Error::Separation)
                } else {
                    Err(Error::SingularAMatrix)
                };
            }
        };
        let step = chol.solve(&score);

        // step halving keeps the ascent monotone up to rounding noise
        let slack = 1e-10 * (1.0 + obj.abs());
        let mut scale = 1.0;
        let mut improved = false;
        for _ in 0..40 {
            let candidate = &beta + &step * scale;
            let cand_obj = objective(&candidate);
            if cand_obj >= obj - slack {
                let rel_change = (cand_obj - obj).abs() / (1.0 + obj.abs());
                beta = candidate;
                obj = cand_obj;
                improved = true;
                if rel_change < OBJ_TOL && max_score < SCORE_TOL {
                    return Ok(LeanFit { beta, loglik: obj, iterations: iter + 1 });
                }
                break;
            }
            scale *= 0.5;
        }
        if !improved {
            return if lam.iter().any(|&l| l < 1e-10 || l > 1.0 - 1e-10) {
                Err(Error::Separation)
            } else {
                Err(Error::NoConvergence)
            };
        }
    }
    Err(Error::NoConvergence)
}

/// Influence rows, information matrix, and variance plug-in at `beta`.
fn plugins_at(
    data: &Dataset,
    beta: &DVector<f64>,
) -> Result<(DMatrix<f64>, DMatrix<f64>, DMatrix<f64>)> {
    let n = data.n();
    let p = data.k() + 1;
    let xt = data.design();
    let eta = &xt * beta;
    let lam: Vec<f64> = eta.iter().map(|&z| logistic(z)).collect();

    let mut a = DMatrix::zeros(p, p);
    for i in 0..n {
        let row = xt.row(i).transpose();
        a.ger(lam[i] * (1.0 - lam[i]) / n as f64, &row, &row, 1.0);
    }
    let chol = Cholesky::new(a.clone()).ok_or(Error::SingularAMatrix)?;

    // psi_i = A^{-1} x_i (y_i - lam_i), assembled as a matrix solve
    let mut resid_x = DMatrix::zeros(p, n);
    for i in 0..n {
        let r = data.y()[i] - lam[i];
        for j in 0..p {
            resid_x[(j, i)] = xt[(i, j)] * r;
        }
    }
    let psi_t = chol.solve(&resid_x); // p x n
    let psi = psi_t.transpose();
    let v_hat = &psi_t * &psi / n as f64;
    Ok((psi, a, v_hat))
}

fn finish(data: &Dataset, lean: LeanFit, converged: bool) -> Result<FittedModel> {
    let (psi_beta, a_matrix, v_hat) = plugins_at(data, &lean.beta)?;
    Ok(FittedModel {
        beta_hat: lean.beta,
        loglik: lean.loglik,
        psi_beta,
        a_matrix,
        v_hat,
        converged,
        iterations: lean.iterations,
    })
}

/// Fit a logit regression of the outcome on the predictors plus a constant by
/// maximum likelihood.
pub fn fit_logit(data: &Dataset) -> Result<FittedModel> {
    let lean = fit_core(data, None)?;
    finish(data, lean, true)
}

/// Fit the logit model with per-observation weights in the objective.
pub fn fit_logit_weighted(data: &Dataset, w: &WeightVector) -> Result<FittedModel> {
    if w.values().len() != data.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights vs {} observations",
            w.values().len(),
            data.n()
        )));
    }
    let lean = fit_core(data, Some(w.values()))?;
    finish(data, lean, true)
}

/// Recompute the influence rows of a fitted model from scratch.
pub fn influence_rows(model: &FittedModel, data: &Dataset) -> Result<DMatrix<f64>> {
    let (psi, _, _) = plugins_at(data, model.beta())?;
    Ok(psi)
}
