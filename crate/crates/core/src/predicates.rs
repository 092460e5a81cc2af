//! Boolean predicates on curve features at a fixed radius.
//!
//! These are the building blocks from which the curve-distance decisions are
//! assembled:
//!
//! | predicate | meaning |
//! |---|---|
//! | [`p_vertex_edge`] | a vertex lies within `r` of an edge (both orientations) |
//! | [`p_endpoints`] | first vertices and last vertices are within `r` |
//! | [`p_double_stadium_line`] | the line through an edge meets two stadiums in a common point |
//! | [`p_monotonicity`] | two vertices have `r`-close points on a directed line, in order |

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::geometry::{check_dim, line_ball_interval, line_stadium_interval, within, Point, Segment, Shape};

/// True iff `vertex` lies in the closed stadium of radius `r` around `edge`.
///
/// With an edge of the first curve and a vertex of the second this is the
/// horizontal vertex-edge test; with the roles swapped it is the vertical one.
pub fn p_vertex_edge(edge: &Segment, vertex: &Point, r: f64) -> Result<bool> {
    Shape::stadium(edge.clone(), r)?.contains(vertex)
}

/// `(|s_1 - q_1| <= r, |s_m - q_k| <= r)`.
pub fn p_endpoints(s: &Curve, q: &Curve, r: f64) -> Result<(bool, bool)> {
    check_dim(s.dim(), q.dim())?;
    Ok((within(s.first().dist2(q.first()), r), within(s.last().dist2(q.last()), r)))
}

/// The intersection of the stadiums of radius `r` around two segments.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleStadium {
    pub e1: Segment,
    pub e2: Segment,
    pub r: f64,
}

impl DoubleStadium {
    pub fn new(e1: Segment, e2: Segment, r: f64) -> Result<Self> {
        check_dim(e1.dim(), e2.dim())?;
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::InvalidParameter(format!("radius {r}")));
        }
        Ok(Self { e1, e2, r })
    }

    pub fn contains(&self, x: &Point) -> Result<bool> {
        Ok(Shape::stadium(self.e1.clone(), self.r)?.contains(x)?
            && Shape::stadium(self.e2.clone(), self.r)?.contains(x)?)
    }
}

/// True iff the line supporting `probe` meets the double stadium.
///
/// Each stadium cuts a single interval from the line, so the triple
/// intersection is non-empty exactly when those two intervals overlap. A
/// degenerate probe is tested as a point.
pub fn p_double_stadium_line(probe: &Segment, ds: &DoubleStadium) -> Result<bool> {
    check_dim(probe.dim(), ds.e1.dim())?;
    if probe.is_degenerate() {
        return ds.contains(probe.start());
    }
    let i1 = line_stadium_interval(probe, &ds.e1, ds.r)?;
    let i2 = line_stadium_interval(probe, &ds.e2, ds.r)?;
    Ok(match (i1, i2) {
        (Some(a), Some(b)) => a.intersect(&b).is_some(),
        _ => false,
    })
}

/// Pairs of points `(v1, v2)` that have `r`-close points `p1`, `p2` on the
/// line through `seg` with `p1` not after `p2` in the direction of `seg`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneRange {
    pub seg: Segment,
    pub r: f64,
}

impl MonotoneRange {
    pub fn new(seg: Segment, r: f64) -> Result<Self> {
        if seg.is_degenerate() {
            return Err(Error::DegenerateSegment("monotone range direction"));
        }
        Ok(Self { seg, r })
    }

    pub fn contains(&self, v1: &Point, v2: &Point) -> Result<bool> {
        p_monotonicity(&self.seg, v1, v2, self.r)
    }
}

/// True iff both balls meet the line through `seg` and the first entry
/// point of `v1`'s ball is not after the last exit point of `v2`'s ball.
/// `p1 = p2` is allowed.
pub fn p_monotonicity(seg: &Segment, v1: &Point, v2: &Point, r: f64) -> Result<bool> {
    let Some(i1) = line_ball_interval(seg, v1, r)? else {
        return Ok(false);
    };
    let Some(i2) = line_ball_interval(seg, v2, r)? else {
        return Ok(false);
    };
    Ok(i1.lo().le(&i2.hi()))
}
