//! Empirical TP/FP rates, quantile-inverted ROC curves, cutoff maps, and AUC.
//!
//! All rates use the strict-inequality convention: an observation is
//! classified positive at cutoff `c` when its index value exceeds `c`.

use crate::data::{Dataset, IndexValues};
use crate::error::{Error, Result};

/// Evaluated ROC curve on a false-positive-rate grid.
#[derive(Debug, Clone)]
pub struct RocCurve {
    /// Ascending grid of target false positive rates.
    pub t_grid: Vec<f64>,
    /// Achieved true positive rate at each grid point.
    pub r_values: Vec<f64>,
    /// Cutoff achieving a false positive rate of at most t (negative infinity
    /// at t = 1).
    pub c_hat: Vec<f64>,
    /// Mann-Whitney area under the full empirical curve.
    pub auc: f64,
}

/// Sorted views of the index values split by outcome, shared by the batch
/// evaluation routines. Negative-class values are deduplicated so that the
/// step levels of the empirical FP rate can be scanned directly.
pub(crate) struct RocEval {
    /// Distinct Y=0 index values, ascending.
    neg_distinct: Vec<f64>,
    /// FP rate at each distinct negative value (strict inequality), aligned
    /// with `neg_distinct`; nonincreasing.
    fp_at: Vec<f64>,
    /// All Y=1 index values, ascending.
    pos_sorted: Vec<f64>,
}

impl RocEval {
    pub(crate) fn new(data: &Dataset, g: &[f64]) -> Self {
        let mut neg: Vec<f64> = Vec::with_capacity(data.n0());
        let mut pos: Vec<f64> = Vec::with_capacity(data.n1());
        for (i, &y) in data.y().iter().enumerate() {
            if y == 1.0 {
                pos.push(g[i]);
            } else {
                neg.push(g[i]);
            }
        }
        neg.sort_by(f64::total_cmp);
        pos.sort_by(f64::total_cmp);
        let n0 = neg.len() as f64;
        let mut neg_distinct = Vec::with_capacity(neg.len());
        let mut fp_at = Vec::with_capacity(neg.len());
        let mut i = 0;
        while i < neg.len() {
            let v = neg[i];
            let mut j = i;
            while j < neg.len() && neg[j] == v {
                j += 1;
            }
            neg_distinct.push(v);
            // strictly greater values are those from position j onward
            fp_at.push((neg.len() - j) as f64 / n0);
            i = j;
        }
        RocEval { neg_distinct, fp_at, pos_sorted: pos }
    }

    /// Number of sorted values strictly greater than c.
    fn count_above(sorted: &[f64], c: f64) -> usize {
        sorted.len() - sorted.partition_point(|&v| v <= c)
    }

    pub(crate) fn tp(&self, c: f64) -> f64 {
        if c == f64::NEG_INFINITY {
            return 1.0;
        }
        Self::count_above(&self.pos_sorted, c) as f64 / self.pos_sorted.len() as f64
    }

    pub(crate) fn fp(&self, c: f64) -> f64 {
        if c == f64::NEG_INFINITY {
            return 1.0;
        }
        // fp is a right-continuous step that drops at each distinct value
        let idx = self.neg_distinct.partition_point(|&v| v <= c);
        if idx == 0 {
            return 1.0; // c below every negative value
        }
        self.fp_at[idx - 1]
    }

    /// Smallest cutoff at which the FP rate falls to t or below.
    pub(crate) fn fp_inverse(&self, t: f64) -> f64 {
        if t >= 1.0 {
            return f64::NEG_INFINITY;
        }
        // fp_at is nonincreasing; find the first index with fp_at <= t
        let k = self.fp_at.partition_point(|&f| f > t);
        self.neg_distinct[k]
    }

}

/// Empirical (TP, FP) at a single cutoff.
pub fn tp_fp_at_cutoff(data: &Dataset, g: &IndexValues, c: f64) -> (f64, f64) {
    let ev = RocEval::new(data, g.values());
    (ev.tp(c), ev.fp(c))
}

/// Smallest cutoff c with an empirical FP rate of at most t. Returns negative
/// infinity at t = 1.
pub fn fp_inverse(data: &Dataset, g: &IndexValues, t: f64) -> f64 {
    RocEval::new(data, g.values()).fp_inverse(t)
}

/// Evaluate the quantile-inverted empirical ROC curve on the given grid.
pub fn roc_at_grid(data: &Dataset, g: &IndexValues, grid: &[f64]) -> Result<RocCurve> {
    if grid.windows(2).any(|w| w[0] >= w[1]) || grid.iter().any(|&t| !(0.0..=1.0).contains(&t)) {
        return Err(Error::InvalidConfig("grid must be ascending within [0, 1]".into()));
    }
    let ev = RocEval::new(data, g.values());
    let mut r_values = Vec::with_capacity(grid.len());
    let mut c_hat = Vec::with_capacity(grid.len());
    for &t in grid {
        let c = ev.fp_inverse(t);
        c_hat.push(c);
        r_values.push(ev.tp(c));
    }
    Ok(RocCurve { t_grid: grid.to_vec(), r_values, c_hat, auc: auc(data, g) })
}

/// Area under the empirical ROC curve, computed as the Mann-Whitney
/// proportion with half credit for tied pairs.
pub fn auc(data: &Dataset, g: &IndexValues) -> f64 {
    let mut neg: Vec<f64> = Vec::with_capacity(data.n0());
    let mut pos: Vec<f64> = Vec::with_capacity(data.n1());
    for (i, &y) in data.y().iter().enumerate() {
        if y == 1.0 {
            pos.push(g.values()[i]);
        } else {
            neg.push(g.values()[i]);
        }
    }
    neg.sort_by(f64::total_cmp);
    let mut u = 0.0;
    for &p in &pos {
        let below = neg.partition_point(|&v| v < p);
        let not_above = neg.partition_point(|&v| v <= p);
        let ties = not_above - below;
        u += below as f64 + 0.5 * ties as f64;
    }
    u / (neg.len() as f64 * pos.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Dataset;
    use nalgebra::DMatrix;
    use proptest::prelude::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn make(y: &[f64], g: &[f64]) -> (Dataset, IndexValues) {
        let x = DMatrix::from_column_slice(y.len(), 1, g);
        let d = Dataset::new(y.to_vec(), x).unwrap();
        let idx = IndexValues::new(g.to_vec(), None).unwrap();
        (d, idx)
    }

    fn random_fixture(seed: u64, n: usize, tie_prone: bool) -> (Dataset, IndexValues) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let y: Vec<f64> =
                (0..n).map(|_| if rng.random::<f64>() < 0.5 { 1.0 } else { 0.0 }).collect();
            if !y.contains(&1.0) || !y.contains(&0.0) {
                continue;
            }
            let g: Vec<f64> = (0..n)
                .map(|_| {
                    if tie_prone {
                        rng.random_range(0..8) as f64 / 8.0
                    } else {
                        rng.random::<f64>()
                    }
                })
                .collect();
            if let Ok(idx) = IndexValues::new(g.clone(), None) {
                let x = DMatrix::from_column_slice(n, 1, &g);
                return (Dataset::new(y, x).unwrap(), idx);
            }
        }
    }

    /// Naive O(n^2)-style counting, kept deliberately independent of the
    /// implementation above.
    fn brute_tp_fp(y: &[f64], g: &[f64], c: f64) -> (f64, f64) {
        let mut tp = 0.0;
        let mut fp = 0.0;
        let n1 = y.iter().filter(|&&v| v == 1.0).count() as f64;
        let n0 = y.len() as f64 - n1;
        for i in 0..y.len() {
            if g[i] > c {
                if y[i] == 1.0 {
                    tp += 1.0;
                } else {
                    fp += 1.0;
                }
            }
        }
        (tp / n1, fp / n0)
    }

    fn brute_fp_inverse(y: &[f64], g: &[f64], t: f64) -> f64 {
        if t >= 1.0 {
            return f64::NEG_INFINITY;
        }
        let mut candidates: Vec<f64> = y
            .iter()
            .zip(g)
            .filter(|(&yi, _)| yi == 0.0)
            .map(|(_, &gi)| gi)
            .collect();
        candidates.sort_by(f64::total_cmp);
        for &c in &candidates {
            if brute_tp_fp(y, g, c).1 <= t {
                return c;
            }
        }
        unreachable!("max candidate always has FP = 0")
    }

    fn brute_auc(y: &[f64], g: &[f64]) -> f64 {
        let mut u = 0.0;
        let mut pairs = 0.0;
        for i in 0..y.len() {
            if y[i] != 1.0 {
                continue;
            }
            for j in 0..y.len() {
                if y[j] != 0.0 {
                    continue;
                }
                pairs += 1.0;
                if g[i] > g[j] {
                    u += 1.0;
                } else if g[i] == g[j] {
                    u += 0.5;
                }
            }
        }
        u / pairs
    }

    #[test]
    fn cutoff_extremes() {
        let (d, g) = make(&[1.0, 1.0, 0.0, 0.0], &[0.9, 0.4, 0.6, 0.2]);
        assert_eq!(tp_fp_at_cutoff(&d, &g, 0.0), (1.0, 1.0));
        assert_eq!(tp_fp_at_cutoff(&d, &g, 0.9), (0.0, 0.0));
        assert_eq!(tp_fp_at_cutoff(&d, &g, 2.0), (0.0, 0.0));
    }

    #[test]
    fn cutoff_midpoint_counts() {
        let (d, g) = make(&[1.0, 1.0, 0.0, 0.0], &[0.9, 0.4, 0.6, 0.2]);
        assert_eq!(tp_fp_at_cutoff(&d, &g, 0.5), (0.5, 0.5));
    }

    #[test]
    fn fp_inverse_hand_example() {
        // negatives at (0.2, 0.4, 0.6, 0.8); at cutoff 0.4 exactly two exceed it
        let (d, g) = make(
            &[1.0, 0.0, 0.0, 0.0, 0.0],
            &[0.5, 0.2, 0.4, 0.6, 0.8],
        );
        assert_eq!(fp_inverse(&d, &g, 0.5), 0.4);
        assert_eq!(fp_inverse(&d, &g, 1.0), f64::NEG_INFINITY);
        // t = 0 returns the largest negative value itself
        assert_eq!(fp_inverse(&d, &g, 0.0), 0.8);
    }

    #[test]
    fn fp_inverse_matches_linear_scan() {
        for seed in 0..30 {
            let (d, g) = random_fixture(seed, 50, seed % 2 == 0);
            let ev = RocEval::new(&d, g.values());
            for t in [0.0, 0.1, 0.25, 0.333, 0.5, 0.77, 0.97, 1.0] {
                assert_eq!(
                    ev.fp_inverse(t),
                    brute_fp_inverse(d.y(), g.values(), t),
                    "seed {seed} t {t}"
                );
            }
        }
    }

    #[test]
    fn grid_matches_pointwise_brute_force() {
        let grid: Vec<f64> = (0..=20).map(|j| j as f64 / 20.0).collect();
        for seed in 100..110 {
            let (d, g) = random_fixture(seed, 50, seed % 2 == 0);
            let curve = roc_at_grid(&d, &g, &grid).unwrap();
            for (j, &t) in grid.iter().enumerate() {
                let c = brute_fp_inverse(d.y(), g.values(), t);
                let tp = if c == f64::NEG_INFINITY {
                    1.0
                } else {
                    brute_tp_fp(d.y(), g.values(), c).0
                };
                assert_eq!(curve.r_values[j], tp);
                assert_eq!(curve.c_hat[j], c);
            }
        }
    }

    #[test]
    fn perfect_separation_gives_flat_one() {
        let (d, g) = make(&[1.0, 1.0, 0.0, 0.0], &[0.8, 0.9, 0.1, 0.2]);
        let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
        let curve = roc_at_grid(&d, &g, &grid).unwrap();
        assert!(curve.r_values.iter().all(|&r| r == 1.0));
        assert_eq!(auc(&d, &g), 1.0);
    }

    #[test]
    fn anti_concordant_index_is_flat_zero_before_step() {
        let (d, g) = make(&[1.0, 1.0, 0.0, 0.0], &[-0.8, -0.9, -0.1, -0.2]);
        let grid = [0.0, 0.25, 0.5, 0.75];
        let curve = roc_at_grid(&d, &g, &grid).unwrap();
        assert!(curve.r_values.iter().all(|&r| r == 0.0));
        assert_eq!(auc(&d, &g), 0.0);
    }

    #[test]
    fn constant_index_rejected_but_near_ties_give_half_auc() {
        let (d, g) = make(&[1.0, 0.0, 1.0, 0.0], &[0.3, 0.3, 0.3, 0.30000001]);
        let a = auc(&d, &g);
        assert!((a - 0.5).abs() < 0.3);
        // exact half credit on a fully tied positive/negative pair
        let (d2, g2) = make(&[1.0, 0.0, 1.0, 0.0], &[0.3, 0.3, 0.7, 0.7]);
        assert_eq!(auc(&d2, &g2), 0.5);
    }

    #[test]
    fn auc_matches_brute_force_on_random_fixtures() {
        for seed in 200..230 {
            let (d, g) = random_fixture(seed, 60, seed % 2 == 0);
            assert_eq!(auc(&d, &g), brute_auc(d.y(), g.values()), "seed {seed}");
        }
    }

    #[test]
    fn auc_equals_trapezoid_over_cutoff_induced_polyline() {
        // The (FP, TP) polyline over all observed cutoffs has trapezoid area
        // equal to the tie-adjusted Mann-Whitney statistic.
        for seed in 300..310 {
            let (d, g) = random_fixture(seed, 60, true);
            let mut cuts: Vec<f64> = g.values().to_vec();
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();
            let mut pts = vec![(0.0f64, 0.0f64)]; // cutoff above max
            for &c in cuts.iter().rev() {
                let (tp, fp) = tp_fp_at_cutoff(&d, &g, c);
                pts.push((fp, tp));
            }
            pts.push((1.0, 1.0)); // cutoff below min
            let mut area = 0.0;
            for w in pts.windows(2) {
                area += (w[1].0 - w[0].0) * (w[1].1 + w[0].1) * 0.5;
            }
            let a = auc(&d, &g);
            assert!((area - a).abs() < 1e-12, "seed {seed}: {area} vs {a}");
        }
    }

    #[test]
    fn curve_is_monotone_and_hits_one_at_t_one() {
        for seed in 400..410 {
            let (d, g) = random_fixture(seed, 37, seed % 2 == 0);
            let grid: Vec<f64> = (0..=10).map(|j| j as f64 / 10.0).collect();
            let curve = roc_at_grid(&d, &g, &grid).unwrap();
            assert!(curve.r_values.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(*curve.r_values.last().unwrap(), 1.0);
            assert!(curve
                .c_hat
                .windows(2)
                .all(|w| w[0] >= w[1] || w[1] == f64::NEG_INFINITY));
        }
    }

    proptest! {
        #[test]
        fn monotone_transform_leaves_curve_and_auc_bit_identical(
            seed in 0u64..500,
            n in 10usize..80,
        ) {
            let (d, g) = random_fixture(seed, n, seed % 3 == 0);
            let grid: Vec<f64> = (0..=10).map(|j| j as f64 / 10.0).collect();
            let base = roc_at_grid(&d, &g, &grid).unwrap();
            for f in [|v: f64| v.exp(), |v: f64| v * v * v] {
                let tg = g.transformed(f).unwrap();
                let curve = roc_at_grid(&d, &tg, &grid).unwrap();
                prop_assert_eq!(&curve.r_values, &base.r_values);
                prop_assert_eq!(curve.auc, base.auc);
            }
        }

        #[test]
        fn fp_of_inverse_is_at_most_t(seed in 0u64..200, t in 0.0f64..1.0) {
            let (d, g) = random_fixture(seed, 40, seed % 2 == 0);
            let ev = RocEval::new(&d, g.values());
            let c = ev.fp_inverse(t);
            prop_assert!(ev.fp(c) <= t + 1e-15);
        }

        #[test]
        fn auc_antisymmetry_on_tie_free_data(seed in 0u64..200) {
            let (d, g) = random_fixture(seed, 40, false);
            let neg = IndexValues::new(g.values().iter().map(|v| -v).collect(), None).unwrap();
            let total = auc(&d, &g) + auc(&d, &neg);
            prop_assert!((total - 1.0).abs() < 1e-12);
        }
    }
}
