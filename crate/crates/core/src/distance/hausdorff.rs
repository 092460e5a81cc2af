use crate::curve::Curve;
use crate::error::Result;
use crate::geometry::{check_dim, line_ball_interval, line_stadium_interval, within, SqrtInterval, ETA};
use crate::predicates::p_vertex_edge;

/// Decides `d_H(q → s) <= r`: every point of `q` lies within `r` of `s`.
///
/// Each edge of `q` must be covered by the union of the stadiums around the
/// edges of `s`. Stadiums are convex, so every stadium cuts one interval
/// from the edge's parameter range `[0, 1]` and coverage is a sorted sweep
/// over those intervals.
pub fn decide_directed_hausdorff(q: &Curve, s: &Curve, r: f64) -> Result<bool> {
    check_dim(q.dim(), s.dim())?;
    if q.len() == 1 {
        return point_near_curve(q.first(), s, r);
    }
    for edge in q.edges() {
        if edge.is_degenerate() {
            if !point_near_curve(edge.start(), s, r)? {
                return Ok(false);
            }
            continue;
        }
        let mut parts = Vec::with_capacity(s.len());
        if s.len() == 1 {
            parts.extend(line_ball_interval(&edge, s.first(), r)?);
        } else {
            for e in s.edges() {
                parts.extend(line_stadium_interval(&edge, &e, r)?);
            }
        }
        if !covers_unit(parts) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides the symmetric Hausdorff distance `max(d_H(q → s), d_H(s → q)) <= r`.
pub fn decide_hausdorff(q: &Curve, s: &Curve, r: f64) -> Result<bool> {
    Ok(decide_directed_hausdorff(q, s, r)? && decide_directed_hausdorff(s, q, r)?)
}

fn point_near_curve(p: &crate::geometry::Point, s: &Curve, r: f64) -> Result<bool> {
    if s.len() == 1 {
        return Ok(within(p.dist2(s.first()), r));
    }
    for e in s.edges() {
        if p_vertex_edge(&e, p, r)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True iff the union of the intervals, clipped to `[0, 1]`, covers `[0, 1]`.
/// Gaps no wider than `ETA` count as covered.
pub(crate) fn covers_unit(parts: Vec<SqrtInterval>) -> bool {
    let mut clipped: Vec<SqrtInterval> = parts.iter().filter_map(SqrtInterval::clip_unit).collect();
    if clipped.is_empty() {
        return false;
    }
    clipped.sort_by(|a, b| a.lo().compare(&b.lo()));
    let first = clipped[0];
    if first.lo_value() > ETA {
        return false;
    }
    let mut reach = first.hi();
    for next in &clipped[1..] {
        if reach.lt(&next.lo()) && next.lo_value() - reach.value() > ETA {
            return false;
        }
        reach = reach.max(next.hi());
    }
    1.0 - reach.value() <= ETA
}
