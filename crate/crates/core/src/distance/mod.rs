//! Curve distance measures: decisions `d(a, b) <= r`, exact values for the
//! vertex-based measures and bisection values for the continuous ones.

mod discrete;
mod frechet;
mod hausdorff;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use discrete::{
    directed_discrete_hausdorff, discrete_frechet, discrete_frechet_traversal, discrete_hausdorff,
    Traversal,
};
pub use frechet::{decide_frechet, decide_weak_frechet, FreeSpaceDiagram};
pub use hausdorff::{decide_directed_hausdorff, decide_hausdorff};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::geometry::{check_dim, within};

/// Default bisection tolerance for continuous measures.
pub const DEFAULT_TOL: f64 = 1e-6;

/// A distance between two curves `a` and `b`.
///
/// The directed variants are read left to right: `HausdorffDirectedFrom`
/// is `d_H(a → b)`, the largest distance from a point of `a` to `b`;
/// `HausdorffDirectedTo` is `d_H(b → a)`. Range queries pass the query
/// center as `a` and the dataset curve as `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    DiscreteHausdorff,
    DiscreteFrechet,
    HausdorffDirectedFrom,
    HausdorffDirectedTo,
    #[serde(rename = "hausdorff")]
    HausdorffSymmetric,
    WeakFrechet,
    Frechet,
}

impl Measure {
    pub const ALL: [Measure; 7] = [
        Measure::DiscreteHausdorff,
        Measure::DiscreteFrechet,
        Measure::HausdorffDirectedFrom,
        Measure::HausdorffDirectedTo,
        Measure::HausdorffSymmetric,
        Measure::WeakFrechet,
        Measure::Frechet,
    ];

    /// Measures that coincide when one of the two curves is a single point
    /// and that point is the second argument. Only the direction from the
    /// point towards the curve differs.
    pub const POINT_EQUAL: [Measure; 6] = [
        Measure::DiscreteHausdorff,
        Measure::DiscreteFrechet,
        Measure::HausdorffDirectedFrom,
        Measure::HausdorffSymmetric,
        Measure::WeakFrechet,
        Measure::Frechet,
    ];

    pub fn is_discrete(self) -> bool {
        matches!(self, Measure::DiscreteHausdorff | Measure::DiscreteFrechet)
    }

    pub fn name(self) -> &'static str {
        match self {
            Measure::DiscreteHausdorff => "discrete_hausdorff",
            Measure::DiscreteFrechet => "discrete_frechet",
            Measure::HausdorffDirectedFrom => "hausdorff_directed_from",
            Measure::HausdorffDirectedTo => "hausdorff_directed_to",
            Measure::HausdorffSymmetric => "hausdorff",
            Measure::WeakFrechet => "weak_frechet",
            Measure::Frechet => "frechet",
        }
    }

    /// Decides `d(a, b) <= r`.
    pub fn decide(self, a: &Curve, b: &Curve, r: f64) -> Result<bool> {
        check_dim(a.dim(), b.dim())?;
        if !r.is_finite() || r < 0.0 {
            // an infinite radius contains everything; a negative one nothing
            return match r {
                r if r == f64::INFINITY => Ok(true),
                r if r < 0.0 => Ok(false),
                _ => Err(Error::NonFinite("radius")),
            };
        }
        match self {
            Measure::DiscreteHausdorff => Ok(within(discrete::discrete_hausdorff2(a, b), r)),
            Measure::DiscreteFrechet => Ok(within(discrete::discrete_frechet2(a, b), r)),
            Measure::HausdorffDirectedFrom => decide_directed_hausdorff(a, b, r),
            Measure::HausdorffDirectedTo => decide_directed_hausdorff(b, a, r),
            Measure::HausdorffSymmetric => decide_hausdorff(a, b, r),
            Measure::WeakFrechet => decide_weak_frechet(a, b, r),
            Measure::Frechet => decide_frechet(a, b, r),
        }
    }

    /// Distance value: exact for the discrete measures, within `tol` (from
    /// above) for the continuous ones.
    pub fn value(self, a: &Curve, b: &Curve, tol: f64) -> Result<f64> {
        check_dim(a.dim(), b.dim())?;
        match self {
            Measure::DiscreteHausdorff => Ok(discrete_hausdorff(a, b)),
            Measure::DiscreteFrechet => Ok(discrete_frechet(a, b)),
            _ => value_by_bisection(self, a, b, tol),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Ok(match key.as_str() {
            "discrete_hausdorff" | "dh" => Measure::DiscreteHausdorff,
            "discrete_frechet" | "df" => Measure::DiscreteFrechet,
            "hausdorff_directed_from" => Measure::HausdorffDirectedFrom,
            "hausdorff_directed_to" => Measure::HausdorffDirectedTo,
            "hausdorff" | "hausdorff_symmetric" => Measure::HausdorffSymmetric,
            "weak_frechet" => Measure::WeakFrechet,
            "frechet" => Measure::Frechet,
            _ => return Err(Error::InvalidParameter(format!("unknown measure {s:?}"))),
        })
    }
}

/// Smallest `v` (up to `tol`) with `decide(measure, a, b, v)`, searched in
/// `[0, max vertex distance]`. The result satisfies the decision at `v` and
/// fails it at `v - tol`, unless `v = 0`.
pub fn value_by_bisection(measure: Measure, a: &Curve, b: &Curve, tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!("bisection tolerance {tol}")));
    }
    if measure.decide(a, b, 0.0)? {
        return Ok(0.0);
    }
    let mut lo = 0.0;
    let mut hi = a.max_vertex_distance(b);
    // every measure is bounded by the discrete Fréchet distance, which is
    // bounded by the largest vertex distance
    debug_assert!(measure.decide(a, b, hi)?);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if measure.decide(a, b, mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn curve(rows: &[&[f64]]) -> Curve {
        Curve::from_coords("c", &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Discrete Fréchet on densely resampled curves: an upper bound on the
    /// continuous Fréchet distance, tight up to the spacing.
    fn resampled_frechet(a: &Curve, b: &Curve, spacing: f64) -> f64 {
        discrete_frechet(&a.resample(spacing), &b.resample(spacing))
    }

    #[test]
    fn frechet_examples() {
        let s = curve(&[&[0.0, 0.0], &[1.0, 3.0], &[2.0, 0.0]]);
        assert!(decide_frechet(&s, &s, 0.0).unwrap());
        let a = curve(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let b = curve(&[&[0.0, 1.0], &[1.0, 1.0]]);
        assert!(decide_frechet(&a, &b, 1.0).unwrap());
        assert!(!decide_frechet(&a, &b, 0.999).unwrap());
    }

    #[test]
    fn frechet_backtrack_matches_resampling_oracle() {
        // q runs forward to x = 2, back to x = 0.5, then to x = 4; the leash
        // must cover the backtrack of length 1.5, so d_F = 0.75 lifted by the
        // unit offset: √(0.75² + 1) = 1.25
        let s = curve(&[&[0.0, 0.0], &[4.0, 0.0]]);
        let q = curve(&[&[0.0, 1.0], &[2.0, 1.0], &[0.5, 1.0], &[4.0, 1.0]]);
        let oracle = resampled_frechet(&s, &q, 1e-3);
        assert!((oracle - 1.25).abs() < 2e-3, "{oracle}");
        assert!(decide_frechet(&s, &q, 1.25 + 5e-3).unwrap());
        assert!(!decide_frechet(&s, &q, 1.25 - 5e-3).unwrap());
        // weak Fréchet ignores the backtrack: only the unit offset remains
        assert!(decide_weak_frechet(&s, &q, 1.0).unwrap());
        assert!(!decide_weak_frechet(&s, &q, 0.99).unwrap());
        let v = value_by_bisection(Measure::Frechet, &s, &q, 1e-7).unwrap();
        assert!((v - 1.25).abs() < 1e-6, "{v}");
    }

    #[test]
    fn weak_frechet_examples() {
        let s = curve(&[&[0.0, 0.0], &[2.0, 1.0], &[3.0, 0.0]]);
        assert!(decide_weak_frechet(&s, &s, 0.0).unwrap());
        let a = curve(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let b = curve(&[&[0.0, 1.0], &[1.0, 1.0]]);
        assert!(!decide_weak_frechet(&a, &b, 0.5).unwrap());
        assert!(decide_weak_frechet(&a, &b, 1.0).unwrap());
    }

    #[test]
    fn frechet_matches_oracle_on_random_curves() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut decided = 0;
        for _ in 0..40 {
            let rand_curve = |rng: &mut ChaCha8Rng| {
                let m = rng.random_range(1..=5);
                let rows: Vec<Vec<f64>> = (0..m).map(|_| vec![rng.random_range(0.0..2.0), rng.random_range(0.0..2.0)]).collect();
                Curve::from_coords("r", &rows).unwrap()
            };
            let a = rand_curve(&mut rng);
            let b = rand_curve(&mut rng);
            let oracle = resampled_frechet(&a, &b, 1e-3);
            for r in [0.25, 0.5, 0.75, 1.0, 1.5] {
                if (oracle - r).abs() > 5e-3 {
                    assert_eq!(decide_frechet(&a, &b, r).unwrap(), oracle <= r, "r={r} oracle={oracle}");
                    decided += 1;
                }
            }
        }
        assert!(decided > 150);
    }

    #[test]
    fn degenerate_edges_in_frechet() {
        let a = curve(&[&[0.0, 0.0], &[0.0, 0.0], &[1.0, 0.0], &[1.0, 0.0]]);
        let b = curve(&[&[0.0, 0.0], &[1.0, 0.0]]);
        assert!(decide_frechet(&a, &b, 0.0).unwrap());
        assert!(decide_weak_frechet(&a, &b, 0.0).unwrap());
        assert!(decide_hausdorff(&a, &b, 0.0).unwrap());
    }

    #[test]
    fn single_vertex_curves() {
        let p = curve(&[&[0.0, 0.0]]);
        let q = curve(&[&[3.0, 4.0], &[0.0, 1.0]]);
        for m in Measure::POINT_EQUAL {
            assert!(m.decide(&q, &p, 5.0).unwrap(), "{m}");
            assert!(!m.decide(&q, &p, 4.99).unwrap(), "{m}");
        }
        // the other direction is the distance to the nearest point of q
        assert!(Measure::HausdorffDirectedTo.decide(&q, &p, 1.0).unwrap());
    }

    #[test]
    fn bisection_examples() {
        let a = curve(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let b = curve(&[&[0.0, 1.0], &[1.0, 1.0]]);
        assert_eq!(value_by_bisection(Measure::Frechet, &a, &a, 1e-6).unwrap(), 0.0);
        let v = value_by_bisection(Measure::Frechet, &a, &b, 1e-6).unwrap();
        assert!(v >= 1.0 && v - 1.0 <= 1e-6 + 1e-9, "{v}");
        assert!(value_by_bisection(Measure::Frechet, &a, &b, 0.0).is_err());
        assert_eq!(Measure::DiscreteFrechet.value(&a, &b, 1e-6).unwrap(), 1.0);
    }

    #[test]
    fn measure_names_round_trip() {
        for m in Measure::ALL {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
            let json = serde_json::to_string(&m).unwrap();
            assert_eq!(json, format!("\"{}\"", m.name()));
        }
        assert!("manhattan".parse::<Measure>().is_err());
    }

    fn arb_curve(max_len: usize) -> impl Strategy<Value = Curve> {
        prop::collection::vec(prop::collection::vec(-2.0f64..2.0, 2), 1..=max_len)
            .prop_map(|rows| Curve::from_coords("p", &rows).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn decision_order_and_symmetry(a in arb_curve(5), b in arb_curve(5), r in 0.0f64..3.0) {
            let f = decide_frechet(&a, &b, r).unwrap();
            let w = decide_weak_frechet(&a, &b, r).unwrap();
            let h = decide_hausdorff(&a, &b, r).unwrap();
            let df = Measure::DiscreteFrechet.decide(&a, &b, r).unwrap();
            prop_assert!(!df || f);
            prop_assert!(!f || w);
            prop_assert!(!w || h);
            prop_assert_eq!(f, decide_frechet(&b, &a, r).unwrap());
            prop_assert_eq!(w, decide_weak_frechet(&b, &a, r).unwrap());
            prop_assert_eq!(h, decide_hausdorff(&b, &a, r).unwrap());
        }

        #[test]
        fn decisions_monotone_in_radius(a in arb_curve(5), b in arb_curve(5), r in 0.0f64..2.0, dr in 0.0f64..1.0) {
            for m in Measure::ALL {
                if m.decide(&a, &b, r).unwrap() {
                    prop_assert!(m.decide(&a, &b, r + dr).unwrap(), "{}", m);
                }
            }
        }

        #[test]
        fn point_versus_curve_measures_agree(p in arb_curve(1), q in arb_curve(6), r in 0.0f64..4.0) {
            let first = Measure::POINT_EQUAL[0].decide(&q, &p, r).unwrap();
            for m in Measure::POINT_EQUAL {
                prop_assert_eq!(m.decide(&q, &p, r).unwrap(), first, "{}", m);
            }
        }

        #[test]
        fn free_space_grows_with_radius(a in arb_curve(4), b in arb_curve(4), r in 0.0f64..2.0, dr in 0.0f64..1.0) {
            prop_assume!(a.len() > 1 && b.len() > 1);
            let small = FreeSpaceDiagram::new(&a, &b, r).unwrap();
            let large = FreeSpaceDiagram::new(&a, &b, r + dr).unwrap();
            for i in 0..a.len() {
                for j in 0..b.len() - 1 {
                    if let Some(iv) = small.vertical(i, j) {
                        prop_assert!(large.vertical(i, j).unwrap().contains_interval(&iv));
                    }
                }
            }
            for i in 0..a.len() - 1 {
                for j in 0..b.len() {
                    if let Some(iv) = small.horizontal(i, j) {
                        prop_assert!(large.horizontal(i, j).unwrap().contains_interval(&iv));
                    }
                }
            }
        }
    }
}
