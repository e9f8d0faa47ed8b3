//! Estimated influence functions for TP, FP, and the quantile-inverted ROC
//! curve, plus the analytic variance estimates built from them.
//!
//! The curve-level (uniform-in-t) tables evaluate every kernel quantity on
//! the fitted model's probability scale, so results depend on a supplied
//! index only through the ranks it induces. Strictly increasing transforms of
//! the index therefore leave the tables bit-identical.

use crate::data::{Dataset, IndexValues};
use crate::error::{Error, Result};
use crate::kernel::{density_estimates, grad_tp_fp, KernelConfig};
use crate::logit::FittedModel;
use crate::roc::{roc_at_grid, RocCurve, RocEval};
use nalgebra::{DMatrix, Matrix2};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfluenceKind {
    /// Influence rows of (TP, FP) at fixed cutoffs.
    PointwiseCutoff,
    /// Influence rows of the ROC value R(t) on a false-positive-rate grid.
    UniformT,
}

/// Per-observation, per-grid-point influence values.
#[derive(Debug, Clone)]
pub struct InfluenceTable {
    pub kind: InfluenceKind,
    /// Grid labels: t values for `UniformT`, cutoff values for
    /// `PointwiseCutoff`.
    pub grid: Vec<f64>,
    /// Evaluation cutoffs on the model's probability scale.
    pub cutoffs: Vec<f64>,
    pub psi_tp: DMatrix<f64>,
    pub psi_fp: DMatrix<f64>,
    /// Empty for the pointwise kind.
    pub psi_r: DMatrix<f64>,
    /// Analytic sigma_t per grid point (uniform kind only, else empty).
    pub sigma: Vec<f64>,
    /// Estimated density ratio f1/f0 at each cutoff (uniform kind only).
    pub ratio: Vec<f64>,
}

impl InfluenceTable {
    pub fn n(&self) -> usize {
        self.psi_tp.nrows()
    }

    /// Covariance kernel estimate h_R(t_j1, t_j2) from column cross-products.
    pub fn h_r(&self, j1: usize, j2: usize) -> f64 {
        let n = self.n() as f64;
        self.psi_r.column(j1).dot(&self.psi_r.column(j2)) / n
    }

    /// Dump a per-observation influence matrix as CSV (one row per
    /// observation, one column per grid point).
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        let m = if self.kind == InfluenceKind::UniformT { &self.psi_r } else { &self.psi_tp };
        let header: Vec<String> = self.grid.iter().map(|t| format!("{t}")).collect();
        writeln!(w, "{}", header.join(","))?;
        for i in 0..m.nrows() {
            let row: Vec<String> = (0..m.ncols()).map(|j| format!("{}", m[(i, j)])).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Influence rows of the empirical TP and FP rates at the given cutoffs,
/// combining the indicator terms with the estimation-effect terms
/// grad * psi_beta.
pub fn psi_tp_fp_at_cutoffs(
    data: &Dataset,
    model: &FittedModel,
    grad_tp: &DMatrix<f64>,
    grad_fp: &DMatrix<f64>,
    cutoffs: &[f64],
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let n = data.n();
    let m = cutoffs.len();
    let p = data.k() + 1;
    if grad_tp.nrows() != m || grad_fp.nrows() != m || grad_tp.ncols() != p {
        return Err(Error::DimensionMismatch(format!(
            "gradients are {}x{}, expected {}x{}",
            grad_tp.nrows(),
            grad_tp.ncols(),
            m,
            p
        )));
    }
    let g = crate::logit::index_from_beta(data, model.beta());
    let ev = RocEval::new(data, &g);
    let pi = data.pi_hat();

    // estimation-effect terms via one matrix product each
    let mut psi_tp = model.psi_beta() * grad_tp.transpose(); // n x m
    let mut psi_fp = model.psi_beta() * grad_fp.transpose();
    for (j, &c) in cutoffs.iter().enumerate() {
        let tp = ev.tp(c);
        let fp = ev.fp(c);
        for i in 0..n {
            let ind = if g[i] > c { 1.0 } else { 0.0 };
            let y = data.y()[i];
            psi_tp[(i, j)] += y / pi * (ind - tp);
            psi_fp[(i, j)] += (1.0 - y) / (1.0 - pi) * (ind - fp);
        }
    }
    Ok((psi_tp, psi_fp))
}

/// Influence rows of the quantile-inverted curve:
/// psi_R = psi_TP - (f1/f0) * psi_FP, column by column.
pub fn psi_r_at_t(
    psi_tp: &DMatrix<f64>,
    psi_fp: &DMatrix<f64>,
    ratio: &[f64],
) -> Result<DMatrix<f64>> {
    if psi_tp.ncols() != ratio.len() || psi_fp.ncols() != ratio.len() {
        return Err(Error::DimensionMismatch("ratio length vs influence columns".into()));
    }
    let mut psi_r = psi_tp.clone();
    for j in 0..ratio.len() {
        let r = ratio[j];
        for i in 0..psi_r.nrows() {
            psi_r[(i, j)] -= r * psi_fp[(i, j)];
        }
    }
    Ok(psi_r)
}

/// Column root mean squares: sigma_t = sqrt((1/n) sum_i psi_R(i, t)^2).
pub fn analytic_sigma(psi_r: &DMatrix<f64>) -> Vec<f64> {
    let n = psi_r.nrows() as f64;
    (0..psi_r.ncols()).map(|j| (psi_r.column(j).norm_squared() / n).sqrt()).collect()
}

/// Truncate a sigma series at the floor epsilon.
pub fn sigma_eps(sigma: &[f64], epsilon: f64) -> Vec<f64> {
    sigma.iter().map(|&s| s.max(epsilon)).collect()
}

/// Full curve-level influence table over a t grid, together with the curve
/// built from the supplied index. The index enters only through ranks; all
/// kernel estimation runs on the model's probability scale.
pub fn influence_table_for_index(
    data: &Dataset,
    model: &FittedModel,
    index: &IndexValues,
    t_grid: &[f64],
    kcfg: &KernelConfig,
) -> Result<(RocCurve, InfluenceTable)> {
    let lam = model.index_values(data)?;
    let curve = roc_at_grid(data, index, t_grid)?;
    let lam_ev = RocEval::new(data, lam.values());
    let cutoffs: Vec<f64> = t_grid.iter().map(|&t| lam_ev.fp_inverse(t)).collect();
    if cutoffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::RatioUnavailable);
    }
    let (grad_tp, grad_fp) = grad_tp_fp(data, model, kcfg, &cutoffs)?;
    let dens = density_estimates(data, &lam, kcfg, &cutoffs)?;
    let (psi_tp, psi_fp) = psi_tp_fp_at_cutoffs(data, model, &grad_tp, &grad_fp, &cutoffs)?;
    let psi_r = psi_r_at_t(&psi_tp, &psi_fp, &dens.ratio)?;
    let sigma = analytic_sigma(&psi_r);
    Ok((
        curve,
        InfluenceTable {
            kind: InfluenceKind::UniformT,
            grid: t_grid.to_vec(),
            cutoffs,
            psi_tp,
            psi_fp,
            psi_r,
            sigma,
            ratio: dens.ratio,
        },
    ))
}

/// Curve-level influence table using the model's own index for the curve.
pub fn influence_table(
    data: &Dataset,
    model: &FittedModel,
    t_grid: &[f64],
    kcfg: &KernelConfig,
) -> Result<(RocCurve, InfluenceTable)> {
    let lam = model.index_values(data)?;
    influence_table_for_index(data, model, &lam, t_grid, kcfg)
}

/// Pointwise influence table of (TP, FP) at fixed cutoffs on the model's
/// probability scale.
pub fn influence_table_pointwise(
    data: &Dataset,
    model: &FittedModel,
    cutoffs: &[f64],
    kcfg: &KernelConfig,
) -> Result<InfluenceTable> {
    let (grad_tp, grad_fp) = grad_tp_fp(data, model, kcfg, cutoffs)?;
    let (psi_tp, psi_fp) = psi_tp_fp_at_cutoffs(data, model, &grad_tp, &grad_fp, cutoffs)?;
    Ok(InfluenceTable {
        kind: InfluenceKind::PointwiseCutoff,
        grid: cutoffs.to_vec(),
        cutoffs: cutoffs.to_vec(),
        psi_tp,
        psi_fp,
        psi_r: DMatrix::zeros(0, 0),
        sigma: Vec::new(),
        ratio: Vec::new(),
    })
}

/// Analytic plug-in for the joint asymptotic covariance of
/// (TP-hat, FP-hat) at one cutoff: (1/n) sum_i psi_i psi_i'.
pub fn pointwise_cov(table: &InfluenceTable, j: usize) -> Matrix2<f64> {
    let n = table.n() as f64;
    let mut m = Matrix2::zeros();
    for i in 0..table.n() {
        let a = table.psi_tp[(i, j)];
        let b = table.psi_fp[(i, j)];
        m[(0, 0)] += a * a;
        m[(0, 1)] += a * b;
        m[(1, 1)] += b * b;
    }
    m[(1, 0)] = m[(0, 1)];
    m / n
}
