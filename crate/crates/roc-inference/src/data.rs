//! Validated input data, index evaluations, and grid configuration.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// A validated binary-outcome sample.
///
/// Row `i` of the predictor matrix corresponds to outcome `y[i]`; construction
/// preserves input order.
#[derive(Debug, Clone)]
pub struct Dataset {
    y: Vec<f64>,
    x: DMatrix<f64>,
    n1: usize,
    n0: usize,
    pi_hat: f64,
}

impl Dataset {
    /// Build a dataset from an outcome vector and an n-by-k predictor matrix.
    pub fn new(y: Vec<f64>, x: DMatrix<f64>) -> Result<Self> {
        if y.len() != x.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "{} outcomes vs {} predictor rows",
                y.len(),
                x.nrows()
            )));
        }
        if y.iter().any(|&v| v != 0.0 && v != 1.0) {
            return Err(Error::NonBinaryOutcome);
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        let n1 = y.iter().filter(|&&v| v == 1.0).count();
        let n0 = y.len() - n1;
        if n1 == 0 || n0 == 0 {
            return Err(Error::DegenerateOutcome);
        }
        let pi_hat = n1 as f64 / y.len() as f64;
        Ok(Dataset { y, x, n1, n0, pi_hat })
    }

    /// Load a CSV file with a header row. The named outcome column must hold
    /// 0/1 values; every other column (or the listed subset) is a predictor.
    /// Returns the dataset together with the predictor column names in input
    /// order.
    pub fn from_csv<P: AsRef<Path>>(
        path: P,
        outcome: &str,
        predictors: Option<&[String]>,
    ) -> Result<(Self, Vec<String>)> {
        let mut reader = csv::Reader::from_path(path)?;
        let headers: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
        let outcome_idx = headers
            .iter()
            .position(|h| h == outcome)
            .ok_or_else(|| Error::MissingColumn(outcome.to_owned()))?;
        let pred_idx: Vec<usize> = match predictors {
            Some(names) => names
                .iter()
                .map(|name| {
                    headers
                        .iter()
                        .position(|h| h == name)
                        .ok_or_else(|| Error::MissingColumn(name.clone()))
                })
                .collect::<Result<_>>()?,
            None => (0..headers.len()).filter(|&j| j != outcome_idx).collect(),
        };
        let pred_names: Vec<String> = pred_idx.iter().map(|&j| headers[j].clone()).collect();

        let mut y = Vec::new();
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            let parse = |j: usize| -> Result<f64> {
                record
                    .get(j)
                    .and_then(|s| s.trim().parse::<f64>().ok())
                    .ok_or(Error::NonFiniteValue)
            };
            y.push(parse(outcome_idx)?);
            let mut row = Vec::with_capacity(pred_idx.len());
            for &j in &pred_idx {
                row.push(parse(j)?);
            }
            rows.push(row);
        }
        if y.len() < 2 {
            return Err(Error::InvalidConfig("at least 2 rows required".into()));
        }
        let k = pred_idx.len();
        let x = DMatrix::from_fn(y.len(), k, |i, j| rows[i][j]);
        Ok((Dataset::new(y, x)?, pred_names))
    }

    /// New dataset restricted to the given predictor columns (same outcomes).
    pub fn select_predictors(&self, cols: &[usize]) -> Result<Self> {
        for &c in cols {
            if c >= self.k() {
                return Err(Error::DimensionMismatch(format!(
                    "predictor column {c} out of range (k = {})",
                    self.k()
                )));
            }
        }
        let x = DMatrix::from_fn(self.n(), cols.len(), |i, j| self.x[(i, cols[j])]);
        Dataset::new(self.y.clone(), x)
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn k(&self) -> usize {
        self.x.ncols()
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    /// Sample share of Y = 1.
    pub fn pi_hat(&self) -> f64 {
        self.pi_hat
    }

    /// Design matrix with a leading intercept column.
    pub fn design(&self) -> DMatrix<f64> {
        let n = self.n();
        let k = self.k();
        DMatrix::from_fn(n, k + 1, |i, j| if j == 0 { 1.0 } else { self.x[(i, j - 1)] })
    }
}

/// Evaluated predictive index values, one per observation.
#[derive(Debug, Clone)]
pub struct IndexValues {
    g: Vec<f64>,
    beta: Option<DVector<f64>>,
}

impl IndexValues {
    pub fn new(g: Vec<f64>, beta: Option<DVector<f64>>) -> Result<Self> {
        if g.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue);
        }
        if g.len() < 2 {
            return Err(Error::InvalidConfig("index needs at least 2 values".into()));
        }
        let m = g.iter().sum::<f64>() / g.len() as f64;
        let var = g.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / g.len() as f64;
        if var <= 0.0 {
            return Err(Error::InvalidConfig("degenerate index: zero sample variance".into()));
        }
        Ok(IndexValues { g, beta })
    }

    pub fn values(&self) -> &[f64] {
        &self.g
    }

    pub fn beta(&self) -> Option<&DVector<f64>> {
        self.beta.as_ref()
    }

    /// Apply a strictly increasing map to every index value.
    pub fn transformed(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        IndexValues::new(self.g.iter().map(|&v| f(v)).collect(), None)
    }
}

/// Grid and tuning configuration shared by the band, test, and comparison
/// procedures.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridConfig {
    /// Lower end of the false-positive-rate grid.
    pub tau_l: f64,
    /// Upper end of the false-positive-rate grid.
    pub tau_u: f64,
    /// Grid spacing.
    pub step: f64,
    /// Variance truncation floor for standardized statistics.
    pub epsilon: f64,
    /// Nominal significance level.
    pub alpha: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { tau_l: 0.05, tau_u: 0.95, step: 0.01, epsilon: 0.01, alpha: 0.10 }
    }
}

impl GridConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.tau_l)
            || !(0.0..=1.0).contains(&self.tau_u)
            || self.tau_l >= self.tau_u
        {
            return Err(Error::InvalidConfig("need 0 <= tau_l < tau_u <= 1".into()));
        }
        if !(self.step > 0.0) {
            return Err(Error::InvalidConfig("step must be positive".into()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidConfig("epsilon must be positive".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidConfig("alpha must lie in (0, 1)".into()));
        }
        Ok(())
    }

    pub fn t_grid(&self) -> Result<Vec<f64>> {
        make_t_grid(self)
    }
}

/// Ascending grid from `tau_l` to `tau_u` in steps of `step`, with the last
/// point clamped to `tau_u`.
pub fn make_t_grid(cfg: &GridConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let mut grid = Vec::new();
    let mut j = 0usize;
    loop {
        let t = cfg.tau_l + j as f64 * cfg.step;
        if t >= cfg.tau_u - 1e-12 {
            break;
        }
        grid.push(t);
        j += 1;
    }
    grid.push(cfg.tau_u);
    Ok(grid)
}
