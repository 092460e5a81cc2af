//! Curve datasets with metric-ball range queries, sampling-based estimates
//! and kernel density estimation.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::distance::Measure;
use crate::error::{Error, Result};
use crate::geometry::check_dim;

/// Identifier of the generator behind every seeded draw.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Default constant in the sample-size formulas.
pub const DEFAULT_C: f64 = 0.5;

/// Curves with unique ids and a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    curves: Vec<Curve>,
    dim: usize,
    max_complexity: usize,
}

impl Dataset {
    pub fn new(curves: Vec<Curve>) -> Result<Self> {
        let first = curves.first().ok_or(Error::Empty("dataset"))?;
        let dim = first.dim();
        let mut seen = HashSet::with_capacity(curves.len());
        for c in &curves {
            check_dim(dim, c.dim())?;
            if !seen.insert(c.id()) {
                return Err(Error::DuplicateId(c.id().to_string()));
            }
        }
        let max_complexity = curves.iter().map(Curve::len).max().unwrap_or(0);
        Ok(Self { curves, dim, max_complexity })
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    /// Always false: a dataset holds at least one curve.
    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_complexity(&self) -> usize {
        self.max_complexity
    }

    pub fn get(&self, id: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.id() == id)
    }

    /// Uniform sample of `n` distinct curves (all of them if `n >= len`),
    /// in dataset order.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Dataset> {
        if n == 0 {
            return Err(Error::InvalidParameter("sample size 0".into()));
        }
        let idx = sample_indices(self.len(), n, seed);
        Dataset::new(idx.into_iter().map(|i| self.curves[i].clone()).collect())
    }
}

/// Sorted indices of a uniform sample without replacement.
fn sample_indices(len: usize, n: usize, seed: u64) -> Vec<usize> {
    if n >= len {
        return (0..len).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = rand::seq::index::sample(&mut rng, len, n).into_vec();
    idx.sort_unstable();
    idx
}

/// The metric ball of radius `radius` around `center`.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeQuery {
    pub measure: Measure,
    pub center: Curve,
    pub radius: f64,
}

impl RangeQuery {
    pub fn new(measure: Measure, center: Curve, radius: f64) -> Result<Self> {
        if radius.is_nan() || radius < 0.0 {
            return Err(Error::InvalidParameter(format!("radius {radius}")));
        }
        Ok(Self { measure, center, radius })
    }

    /// Membership of `curve` in the ball.
    pub fn contains(&self, curve: &Curve) -> Result<bool> {
        self.measure.decide(&self.center, curve, self.radius)
    }
}

/// Accuracy parameters of a sampling bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub epsilon: f64,
    pub delta: f64,
    pub nu: f64,
    #[serde(rename = "C")]
    pub c: f64,
}

impl SampleSpec {
    /// `epsilon` in `(0, 1]`, `delta` in `(0, 1)`, `nu > 0`, `c > 0`.
    pub fn new(epsilon: f64, delta: f64, nu: f64, c: f64) -> Result<Self> {
        let bad = |what: &str, v: f64| Err(Error::InvalidParameter(format!("{what} = {v}")));
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return bad("epsilon", epsilon);
        }
        if !(delta > 0.0 && delta < 1.0) {
            return bad("delta", delta);
        }
        if !(nu > 0.0 && nu.is_finite()) {
            return bad("nu", nu);
        }
        if !(c > 0.0 && c.is_finite()) {
            return bad("C", c);
        }
        Ok(Self { epsilon, delta, nu, c })
    }

    fn validated(&self) -> Result<Self> {
        Self::new(self.epsilon, self.delta, self.nu, self.c)
    }
}

fn to_count(x: f64) -> Result<usize> {
    if x.is_finite() && x < usize::MAX as f64 {
        Ok((x.ceil() as usize).max(1))
    } else {
        Err(Error::LimitExceeded(format!("sample size {x}")))
    }
}

/// ε-sample size `⌈C/ε² · (ν + ln(1/δ))⌉`.
pub fn sample_size(spec: &SampleSpec) -> Result<usize> {
    let s = spec.validated()?;
    to_count(s.c / (s.epsilon * s.epsilon) * (s.nu + (1.0 / s.delta).ln()))
}

/// Sample size for learning a perfect separator, `⌈C · ν/ε · ln(ν/(ε·δ))⌉`,
/// with the same constant convention as [`sample_size`].
pub fn separator_sample_size(spec: &SampleSpec) -> Result<usize> {
    let s = spec.validated()?;
    let log = (s.nu / (s.epsilon * s.delta)).ln().max(0.0);
    to_count(s.c * s.nu / s.epsilon * log)
}

/// Sample size after which the sampled kernel density is within ε of the
/// full one everywhere. Same arithmetic as [`sample_size`].
pub fn kde_sample_bound(spec: &SampleSpec) -> Result<usize> {
    sample_size(spec)
}

/// Ids of the curves in the ball, sorted.
fn matching_ids<'a>(curves: impl IntoParallelIterator<Item = &'a Curve>, q: &RangeQuery) -> Result<Vec<String>> {
    let hits: Vec<Option<String>> = curves
        .into_par_iter()
        .map(|c| Ok(q.contains(c)?.then(|| c.id().to_string())))
        .collect::<Result<_>>()?;
    let mut ids: Vec<String> = hits.into_iter().flatten().collect();
    ids.sort();
    Ok(ids)
}

/// Linear scan: number and sorted ids of the curves within the ball.
pub fn exact_count(ds: &Dataset, q: &RangeQuery) -> Result<(usize, Vec<String>)> {
    check_dim(ds.dim(), q.center.dim())?;
    let ids = matching_ids(ds.curves(), q)?;
    Ok((ids.len(), ids))
}

/// Estimated count from a seeded uniform sample of `sample_size(spec)`
/// curves drawn without replacement. A sample at least as large as the
/// dataset is a full scan. Returns the estimate and the sampled ids in
/// dataset order.
pub fn approx_count(ds: &Dataset, q: &RangeQuery, spec: &SampleSpec, seed: u64) -> Result<(f64, Vec<String>)> {
    check_dim(ds.dim(), q.center.dim())?;
    let n = sample_size(spec)?;
    let idx = sample_indices(ds.len(), n, seed);
    let sample: Vec<&Curve> = idx.iter().map(|&i| &ds.curves()[i]).collect();
    let hits = matching_ids(sample.par_iter().copied(), q)?.len();
    let estimate = if idx.len() == ds.len() {
        hits as f64
    } else {
        hits as f64 / idx.len() as f64 * ds.len() as f64
    };
    Ok((estimate, sample.iter().map(|c| c.id().to_string()).collect()))
}

/// Kernel density `(1/n) Σ exp(-d(x, p)²)` over the dataset. Continuous
/// measures use bisection values within `tol`.
pub fn kde(ds: &Dataset, x: &Curve, measure: Measure, tol: f64) -> Result<f64> {
    check_dim(ds.dim(), x.dim())?;
    let terms: Vec<f64> = ds
        .curves()
        .par_iter()
        .map(|p| measure.value(x, p, tol).map(|d| (-d * d).exp()))
        .collect::<Result<_>>()?;
    Ok(terms.iter().sum::<f64>() / ds.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{decide_frechet, discrete_frechet};
    use rand::RngExt;

    fn curve(id: &str, rows: &[&[f64]]) -> Curve {
        Curve::from_coords(id, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn random_ds(n: usize, seed: u64) -> Dataset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let curves = (0..n)
            .map(|i| {
                let m = rng.random_range(1..=4);
                let rows: Vec<Vec<f64>> = (0..m).map(|_| vec![rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)]).collect();
                Curve::from_coords(format!("c{i:03}"), &rows).unwrap()
            })
            .collect();
        Dataset::new(curves).unwrap()
    }

    #[test]
    fn dataset_validation() {
        assert_eq!(Dataset::new(vec![]), Err(Error::Empty("dataset")));
        let a = curve("a", &[&[0.0, 0.0]]);
        assert!(matches!(Dataset::new(vec![a.clone(), a.clone()]), Err(Error::DuplicateId(id)) if id == "a"));
        let b = curve("b", &[&[0.0, 0.0, 0.0]]);
        assert!(matches!(Dataset::new(vec![a, b]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn copies_of_center_all_count() {
        let c = curve("x", &[&[0.0, 0.0], &[1.0, 1.0]]);
        let ds = Dataset::new((0..3).map(|i| c.clone().with_id(format!("{i}"))).collect()).unwrap();
        for m in Measure::ALL {
            let q = RangeQuery::new(m, c.clone(), 0.0).unwrap();
            assert_eq!(exact_count(&ds, &q).unwrap().0, 3, "{m}");
        }
    }

    #[test]
    fn closed_ball() {
        let center = curve("q", &[&[0.0, 0.0], &[1.0, 0.0]]);
        let ds = Dataset::new(vec![curve("a", &[&[0.0, 1.0], &[1.0, 1.0]]), curve("b", &[&[0.0, 1.5], &[1.0, 1.5]])]).unwrap();
        let q = RangeQuery::new(Measure::Frechet, center, 1.0).unwrap();
        assert_eq!(exact_count(&ds, &q).unwrap(), (1, vec!["a".to_string()]));
    }

    #[test]
    fn exact_count_matches_per_curve_decisions() {
        let ds = random_ds(100, 1);
        let center = curve("q", &[&[0.0, 0.0], &[1.0, 0.5], &[0.5, -1.0]]);
        let q = RangeQuery::new(Measure::Frechet, center.clone(), 1.5).unwrap();
        let (n, ids) = exact_count(&ds, &q).unwrap();
        let want: Vec<String> = ds
            .curves()
            .iter()
            .filter(|c| decide_frechet(&center, c, 1.5).unwrap())
            .map(|c| c.id().to_string())
            .collect();
        assert_eq!(ids, want);
        assert_eq!(n, want.len());
        // permutation invariance
        let mut rev = ds.curves().to_vec();
        rev.reverse();
        assert_eq!(exact_count(&Dataset::new(rev).unwrap(), &q).unwrap(), (n, ids));
    }

    #[test]
    fn sample_size_formulas() {
        assert_eq!(sample_size(&SampleSpec::new(0.1, 0.05, 10.0, 0.5).unwrap()).unwrap(), 650);
        assert_eq!(sample_size(&SampleSpec::new(1.0, 0.5, 1.0, 1.0).unwrap()).unwrap(), 2);
        let s = SampleSpec::new(0.1, 0.05, 10.0, 0.5).unwrap();
        let want = (0.5 * 10.0 / 0.1 * (10.0f64 / (0.1 * 0.05)).ln()).ceil() as usize;
        assert_eq!(separator_sample_size(&s).unwrap(), want);
        assert_eq!(kde_sample_bound(&s).unwrap(), 650);
        assert!(SampleSpec::new(0.0, 0.1, 1.0, 1.0).is_err());
        assert!(SampleSpec::new(0.1, 1.0, 1.0, 1.0).is_err());
        assert!(SampleSpec::new(0.1, 0.1, -1.0, 1.0).is_err());
        assert!(SampleSpec::new(0.1, 0.1, 1.0, 0.0).is_err());
    }

    #[test]
    fn approx_count_full_sample_is_exact() {
        let ds = random_ds(50, 2);
        let center = curve("q", &[&[0.0, 0.0], &[1.0, 0.0]]);
        let q = RangeQuery::new(Measure::DiscreteFrechet, center, 2.0).unwrap();
        let spec = SampleSpec::new(0.1, 0.05, 10.0, 0.5).unwrap(); // 650 > 50
        let (est, ids) = approx_count(&ds, &q, &spec, 9).unwrap();
        assert_eq!(est, exact_count(&ds, &q).unwrap().0 as f64);
        assert_eq!(ids.len(), 50);
        let all = RangeQuery::new(Measure::DiscreteFrechet, q.center.clone(), f64::INFINITY).unwrap();
        let small = SampleSpec::new(0.5, 0.5, 1.0, 0.5).unwrap();
        assert_eq!(approx_count(&ds, &all, &small, 3).unwrap().0, 50.0);
    }

    #[test]
    fn approx_count_is_seed_deterministic() {
        let ds = random_ds(200, 4);
        let q = RangeQuery::new(Measure::DiscreteHausdorff, curve("q", &[&[0.0, 0.0]]), 2.0).unwrap();
        let spec = SampleSpec::new(0.3, 0.2, 2.0, 0.5).unwrap();
        let a = approx_count(&ds, &q, &spec, 11).unwrap();
        assert_eq!(a, approx_count(&ds, &q, &spec, 11).unwrap());
        assert_ne!(a.1, approx_count(&ds, &q, &spec, 12).unwrap().1);
        let n = sample_size(&spec).unwrap();
        assert_eq!(a.1.len(), n);
        assert_eq!(a.1.iter().collect::<HashSet<_>>().len(), n);
    }

    #[test]
    fn monotone_in_radius() {
        let ds = random_ds(60, 5);
        let center = curve("q", &[&[0.0, 0.0], &[0.5, 0.5]]);
        for m in Measure::ALL {
            let mut last = 0;
            for r in [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0] {
                let n = exact_count(&ds, &RangeQuery::new(m, center.clone(), r).unwrap()).unwrap().0;
                assert!(n >= last, "{m} at {r}");
                last = n;
            }
            assert_eq!(last, 60);
        }
    }

    #[test]
    fn kde_examples() {
        let x = curve("x", &[&[0.0, 0.0], &[1.0, 0.0]]);
        let ds = Dataset::new(vec![x.clone()]).unwrap();
        assert_eq!(kde(&ds, &x, Measure::Frechet, 1e-6).unwrap(), 1.0);
        let far = curve("p", &[&[3.0, 4.0], &[4.0, 4.0]]);
        let ds = Dataset::new(vec![far]).unwrap();
        assert_eq!(kde(&ds, &x, Measure::DiscreteFrechet, 1e-6).unwrap(), (-25.0f64).exp());
    }

    #[test]
    fn kde_matches_pairwise_oracle() {
        let ds = random_ds(20, 6);
        let x = curve("x", &[&[0.0, 0.0], &[1.0, 1.0]]);
        let want: f64 = ds.curves().iter().map(|p| (-discrete_frechet(&x, p).powi(2)).exp()).sum::<f64>() / 20.0;
        assert!((kde(&ds, &x, Measure::DiscreteFrechet, 1e-6).unwrap() - want).abs() < 1e-15);
        // continuous: against discrete Fréchet on resampled curves, which is
        // within the spacing of the true distance; the kernel is 0.86-Lipschitz
        let (tol, spacing) = (1e-6, 1e-2);
        let got = kde(&ds, &x, Measure::Frechet, tol).unwrap();
        let dense = x.resample(spacing);
        let want: f64 = ds
            .curves()
            .iter()
            .map(|p| (-discrete_frechet(&dense, &p.resample(spacing)).powi(2)).exp())
            .sum::<f64>()
            / 20.0;
        assert!((got - want).abs() <= 0.86 * (spacing + tol), "{got} vs {want}");
        assert!(got > 0.0 && got <= 1.0);
    }
}
