//! Shattering experiments: the circle lower-bound construction, induced
//! subsets of a ground set, exhaustive search for shattered subsets and the
//! reference bound formulas.

use std::collections::{BTreeSet, HashSet};
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::Curve;
use crate::distance::Measure;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::range::RangeQuery;

/// Largest ground set the shattered-subset search accepts.
pub const SEARCH_LIMIT: usize = 24;

/// Largest `k` for which all `2^k` circle queries are generated.
pub const CIRCLE_LIMIT: usize = 20;

/// The members `{i | d(ground_i, q) <= r}` of a ground set, as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InducedSubset {
    size: usize,
    words: Vec<u64>,
}

impl InducedSubset {
    pub fn empty(size: usize) -> Self {
        Self { size, words: vec![0; size.div_ceil(64)] }
    }

    pub fn from_members(size: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(size);
        for i in members {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.size, "member {i} outside ground set of {}", self.size);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.size && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Size of the ground set.
    pub fn ground_size(&self) -> usize {
        self.size
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(|&i| self.contains(i))
    }

    /// Low 32 bits; the caller keeps the ground set within [`SEARCH_LIMIT`].
    fn low_mask(&self) -> u32 {
        self.words.first().map_or(0, |&w| w as u32)
    }
}

/// Evaluates every query against every ground curve and returns the
/// distinct induced subsets. Order of evaluation does not matter.
pub fn induced_subsets(ground: &[Curve], queries: &[RangeQuery]) -> Result<BTreeSet<InducedSubset>> {
    let subsets: Vec<InducedSubset> = queries
        .par_iter()
        .map(|q| {
            let mut s = InducedSubset::empty(ground.len());
            for (i, g) in ground.iter().enumerate() {
                if q.contains(g)? {
                    s.insert(i);
                }
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;
    Ok(subsets.into_iter().collect())
}

fn is_shattered(y: u32, traces: &[u32]) -> bool {
    let need = 1usize << y.count_ones();
    let mut seen = HashSet::with_capacity(need);
    for &t in traces {
        seen.insert(t & y);
        if seen.len() == need {
            return true;
        }
    }
    false
}

/// Size of the largest subset of `ground` (at most `max_size`) whose every
/// subset is cut out by some query. Levelwise search: a set is only tried
/// when all its subsets one smaller are shattered.
pub fn shattered_subset_search(ground: &[Curve], queries: &[RangeQuery], max_size: usize) -> Result<usize> {
    if ground.len() > SEARCH_LIMIT {
        return Err(Error::LimitExceeded(format!("ground set of {} > {SEARCH_LIMIT}", ground.len())));
    }
    if max_size > ground.len() {
        return Err(Error::InvalidParameter(format!("max_size {max_size} > ground size {}", ground.len())));
    }
    let traces: Vec<u32> = induced_subsets(ground, queries)?.iter().map(InducedSubset::low_mask).collect();
    shattered_in_traces(ground.len(), &traces, max_size)
}

fn shattered_in_traces(t: usize, traces: &[u32], max_size: usize) -> Result<usize> {
    if traces.is_empty() {
        return Ok(0);
    }
    let mut level: Vec<u32> = vec![0];
    let mut best = 0;
    for c in 1..=max_size {
        let prev: HashSet<u32> = level.iter().copied().collect();
        let candidates: Vec<u32> = level
            .iter()
            .flat_map(|&y| {
                let from = if y == 0 { 0 } else { 32 - y.leading_zeros() as usize };
                (from..t).map(move |j| y | 1 << j)
            })
            .filter(|&y| (0..t).filter(|&i| y >> i & 1 == 1).all(|i| prev.contains(&(y & !(1 << i)))))
            .collect();
        level = candidates.into_par_iter().filter(|&y| is_shattered(y, traces)).collect();
        if level.is_empty() {
            break;
        }
        best = c;
    }
    Ok(best)
}

/// Reference VC-dimension bound with every hidden constant set to 1 and
/// logarithms in base 2: `dk·log(dkm)` for the discrete measures,
/// `d²k·log(dkm)` for weak Fréchet and `d²k²·log(dkm)` otherwise.
pub fn bound_formulas(d: usize, k: usize, m: usize, measure: Measure) -> f64 {
    let (d, k) = (d as f64, k as f64);
    let log = (d * k * m as f64).log2();
    match measure {
        Measure::DiscreteHausdorff | Measure::DiscreteFrechet => d * k * log,
        Measure::WeakFrechet => d * d * k * log,
        Measure::HausdorffDirectedFrom
        | Measure::HausdorffDirectedTo
        | Measure::HausdorffSymmetric
        | Measure::Frechet => d * d * k * k * log,
    }
}

/// Reference lower bound `max(k, log m)`, constant 1.
pub fn lower_bound_formula(k: usize, m: usize) -> f64 {
    (k as f64).max((m as f64).log2())
}

/// Number of subsets of at most `nu` elements of a `t`-set, which bounds
/// the number of induced subsets of a range space of VC dimension `nu`.
pub fn growth_bound(t: usize, nu: f64) -> f64 {
    let nu = nu.floor().max(0.0) as usize;
    let mut sum = 0.0;
    let mut binom = 1.0;
    for i in 0..=nu.min(t) {
        sum += binom;
        binom = binom * (t - i) as f64 / (i + 1) as f64;
    }
    sum
}

/// `k` points evenly spaced on the unit circle in the plane, together with
/// one query per target subset whose ball contains exactly that subset.
///
/// The query for a target `T` has `k` vertices. For every `p ∉ T` one vertex
/// sits at `-(R-1)·p`, at distance exactly `R` from `p`; the others sit at
/// the origin. The ball radius is `R - ε`, so a ground point is inside iff
/// every query vertex is within `R - ε` of it. A point `u ≠ p` at angle `θ`
/// from `p` is at squared distance `R² - 2(R-1)(1 - cos θ)` from `-(R-1)·p`,
/// which is at most `(R - ε)²` once `ε <= (1 - cos(2π/k))/2` and `R >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleConstruction {
    k: usize,
    big_r: f64,
    epsilon: f64,
    ground: Vec<Curve>,
}

impl CircleConstruction {
    /// Default `R`: the larger of 10 and `4/(1 - cos(2π/k))`.
    pub fn new(k: usize) -> Result<Self> {
        Self::with_radius(k, Self::default_radius(k))
    }

    pub fn default_radius(k: usize) -> f64 {
        if k < 2 {
            return 10.0;
        }
        (4.0 / (1.0 - (2.0 * PI / k as f64).cos())).max(10.0)
    }

    /// `R` must exceed 4.
    pub fn with_radius(k: usize, big_r: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("circle construction needs k >= 1".into()));
        }
        if !(big_r > 4.0 && big_r.is_finite()) {
            return Err(Error::InvalidParameter(format!("circle radius R = {big_r} must exceed 4")));
        }
        let epsilon = if k == 1 { 0.5 } else { (0.5 * (1.0 - (2.0 * PI / k as f64).cos())).min(0.5) };
        let ground = (0..k)
            .map(|i| {
                let p = Self::unit_point(k, i);
                Curve::new(format!("circle-{i}"), vec![p]).expect("finite point")
            })
            .collect();
        Ok(Self { k, big_r, epsilon, ground })
    }

    fn unit_point(k: usize, i: usize) -> Point {
        let a = 2.0 * PI * i as f64 / k as f64;
        Point::new(vec![a.cos(), a.sin()]).expect("finite")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn big_r(&self) -> f64 {
        self.big_r
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn radius(&self) -> f64 {
        self.big_r - self.epsilon
    }

    pub fn ground(&self) -> &[Curve] {
        &self.ground
    }

    /// Query whose ball contains exactly the ground points in `target`.
    pub fn query(&self, target: &InducedSubset, measure: Measure) -> Result<RangeQuery> {
        if target.ground_size() != self.k {
            return Err(Error::InvalidParameter(format!(
                "target over {} points, construction has {}",
                target.ground_size(),
                self.k
            )));
        }
        let shift = self.big_r - 1.0;
        let vertices = (0..self.k)
            .map(|i| {
                if target.contains(i) {
                    Point::origin(2)
                } else {
                    self.ground[i].first().map(|_, c| -shift * c)
                }
            })
            .collect();
        let ids: Vec<String> = target.members().map(|i| i.to_string()).collect();
        let center = Curve::new(format!("circle-query-{{{}}}", ids.join(",")), vertices)?;
        RangeQuery::new(measure, center, self.radius())
    }

    /// One query for each of the `2^k` targets, indexed by bitmask.
    pub fn queries(&self, measure: Measure) -> Result<Vec<RangeQuery>> {
        if self.k > CIRCLE_LIMIT {
            return Err(Error::LimitExceeded(format!("2^{} circle queries", self.k)));
        }
        (0..1usize << self.k)
            .map(|mask| {
                let target = InducedSubset::from_members(self.k, (0..self.k).filter(|i| mask >> i & 1 == 1));
                self.query(&target, measure)
            })
            .collect()
    }
}

/// Queries around every center at radius 0 and at every vertex-to-vertex
/// distance to the ground set, plus the midpoints between consecutive radii. For the
/// discrete measures the induced subsets only change at these radii.
pub fn critical_queries(ground: &[Curve], centers: &[Curve], measure: Measure) -> Result<Vec<RangeQuery>> {
    let mut out = Vec::new();
    for c in centers {
        let mut radii: Vec<f64> = c
            .vertices()
            .iter()
            .flat_map(|a| ground.iter().flat_map(|g| g.vertices()).map(move |b| a.dist(b)))
            .collect();
        radii.push(0.0);
        radii.sort_by(f64::total_cmp);
        radii.dedup();
        let mids: Vec<f64> = radii.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        radii.extend(mids);
        radii.sort_by(f64::total_cmp);
        for r in radii {
            out.push(RangeQuery::new(measure, c.clone(), r)?);
        }
    }
    Ok(out)
}

/// Outcome of one shattering experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShatterReport {
    pub construction: String,
    pub measure: Measure,
    pub ground_size: usize,
    pub queries: usize,
    pub distinct_subsets: usize,
    pub largest_shattered: usize,
    /// Reference upper bound on the VC dimension, constants 1.
    pub bound_formula_value: f64,
    /// Reference lower bound `max(k, log m)`, constants 1.
    pub lower_bound_value: f64,
}

/// Runs induced-subset counting and the shattered-subset search. The bound
/// formulas use the ground dimension, the largest query complexity `k` and
/// the largest ground complexity `m`.
pub fn shatter_report(construction: &str, measure: Measure, ground: &[Curve], queries: &[RangeQuery]) -> Result<ShatterReport> {
    let first = ground.first().ok_or(Error::Empty("ground set"))?;
    let d = first.dim();
    let k = queries.iter().map(|q| q.center.len()).max().unwrap_or(1);
    let m = ground.iter().map(Curve::len).max().unwrap_or(1);
    if ground.len() > SEARCH_LIMIT {
        return Err(Error::LimitExceeded(format!("ground set of {} > {SEARCH_LIMIT}", ground.len())));
    }
    let subsets = induced_subsets(ground, queries)?;
    let traces: Vec<u32> = subsets.iter().map(InducedSubset::low_mask).collect();
    let largest = shattered_in_traces(ground.len(), &traces, ground.len())?;
    Ok(ShatterReport {
        construction: construction.to_string(),
        measure,
        ground_size: ground.len(),
        queries: queries.len(),
        distinct_subsets: subsets.len(),
        largest_shattered: largest,
        bound_formula_value: bound_formulas(d, k, m, measure),
        lower_bound_value: lower_bound_formula(k, m),
    })
}

/// Report for the circle construction with `k` points.
pub fn circle_report(k: usize, measure: Measure) -> Result<ShatterReport> {
    let c = CircleConstruction::new(k)?;
    let queries = c.queries(measure)?;
    shatter_report(&format!("circle(k={k}, R={}, eps={})", c.big_r(), c.epsilon()), measure, c.ground(), &queries)
}
