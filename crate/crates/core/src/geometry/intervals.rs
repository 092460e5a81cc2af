//! Parameter intervals of the line `s + (t - s)·x`, `x ∈ R`, inside the
//! closed basic shapes. Endpoints have the form `α ± √β`.

use super::{check_dim, dot, sub, within, Point, Segment, Sign, SqrtExpr, SqrtInterval, ETA};
use crate::error::{Error, Result};

fn check_radius(r: f64) -> Result<()> {
    if !r.is_finite() {
        return Err(Error::NonFinite("radius"));
    }
    if r < 0.0 {
        return Err(Error::InvalidParameter(format!("negative radius {r}")));
    }
    Ok(())
}

fn non_degenerate(seg: &Segment, what: &'static str) -> Result<()> {
    if seg.is_degenerate() {
        Err(Error::DegenerateSegment(what))
    } else {
        Ok(())
    }
}

/// Roots `α ± √β` of `A·x² + 2·B·x + C <= 0` written with `α = -B/A` and
/// `β = -residual/A`, where `residual` is the minimum of the quadratic
/// divided by `A`'s scale. `None` when `β < -ETA`.
fn root_interval(alpha: f64, beta: f64) -> Result<Option<SqrtInterval>> {
    if beta < -ETA {
        return Ok(None);
    }
    let lo = SqrtExpr::new(alpha, beta, Sign::Minus)?;
    let hi = SqrtExpr::new(alpha, beta, Sign::Plus)?;
    Ok(SqrtInterval::new(lo, hi))
}

/// Parameters `x` with `|s + (t - s)·x - center| <= r`.
pub fn line_ball_interval(seg: &Segment, center: &Point, r: f64) -> Result<Option<SqrtInterval>> {
    check_dim(seg.dim(), center.dim())?;
    check_radius(r)?;
    non_degenerate(seg, "line_ball_interval probe")?;
    let dir = seg.direction();
    let w = sub(seg.start().coords(), center.coords());
    let a = dot(&dir, &dir);
    let alpha = -dot(&dir, &w) / a;
    // squared distance from the center to the line
    let rho2: f64 = w.iter().zip(&dir).map(|(wi, di)| (wi + alpha * di).powi(2)).sum();
    root_interval(alpha, (r * r - rho2) / a)
}

/// Parameters `x` whose line point lies within `r` of the infinite line
/// through `axis`. A line parallel to the axis yields either the whole real
/// line (unbounded sentinels) or `None`.
pub fn line_cylinder_interval(seg: &Segment, axis: &Segment, r: f64) -> Result<Option<SqrtInterval>> {
    check_dim(seg.dim(), axis.dim())?;
    check_radius(r)?;
    non_degenerate(seg, "line_cylinder_interval probe")?;
    non_degenerate(axis, "cylinder axis")?;
    let ax = axis.direction();
    let ax2 = dot(&ax, &ax);
    let perp = |v: &[f64]| -> Vec<f64> {
        let k = dot(v, &ax) / ax2;
        v.iter().zip(&ax).map(|(vi, ai)| vi - k * ai).collect()
    };
    let dir = seg.direction();
    let dir_perp = perp(&dir);
    let w_perp = perp(&sub(seg.start().coords(), axis.start().coords()));
    let a = dot(&dir_perp, &dir_perp);
    if a <= 1e-18 * dot(&dir, &dir) {
        let d2 = dot(&w_perp, &w_perp);
        return Ok(within(d2, r).then_some(SqrtInterval::ALL));
    }
    let alpha = -dot(&dir_perp, &w_perp) / a;
    let rho2: f64 = w_perp.iter().zip(&dir_perp).map(|(wi, di)| (wi + alpha * di).powi(2)).sum();
    root_interval(alpha, (r * r - rho2) / a)
}

/// Parameters `x` whose line point lies inside the closed capped cylinder
/// around `axis`: the infinite-cylinder interval clipped by the two cap
/// hyperplanes `(p - u)·(v - u) = 0` and `(p - v)·(v - u) = 0`.
pub fn line_capped_cylinder_interval(
    seg: &Segment,
    axis: &Segment,
    r: f64,
) -> Result<Option<SqrtInterval>> {
    let Some(tube) = line_cylinder_interval(seg, axis, r)? else {
        return Ok(None);
    };
    let ax = axis.direction();
    let ax2 = dot(&ax, &ax);
    let w_along = dot(&sub(seg.start().coords(), axis.start().coords()), &ax);
    let dir_along = dot(&seg.direction(), &ax);
    let slab = if dir_along == 0.0 {
        // line perpendicular to the axis: the slab test is constant along it
        let slack = ETA * ax2.sqrt();
        if w_along >= -slack && w_along <= ax2 + slack {
            SqrtInterval::ALL
        } else {
            return Ok(None);
        }
    } else {
        let y0 = -w_along / dir_along;
        let y1 = (ax2 - w_along) / dir_along;
        let (lo, hi) = if y0 <= y1 { (y0, y1) } else { (y1, y0) };
        SqrtInterval::from_values(lo, hi).expect("ordered slab bounds")
    };
    Ok(tube.intersect(&slab))
}

/// Parameters `x` whose line point lies in the stadium around `e`. Stadiums
/// are convex, so the union of the capped-cylinder interval and the two
/// end-ball intervals is a single interval.
pub fn line_stadium_interval(seg: &Segment, e: &Segment, r: f64) -> Result<Option<SqrtInterval>> {
    check_dim(seg.dim(), e.dim())?;
    non_degenerate(seg, "line_stadium_interval probe")?;
    if e.is_degenerate() {
        return line_ball_interval(seg, e.start(), r);
    }
    let parts = [
        line_capped_cylinder_interval(seg, e, r)?,
        line_ball_interval(seg, e.start(), r)?,
        line_ball_interval(seg, e.end(), r)?,
    ];
    Ok(parts.into_iter().flatten().reduce(|acc, i| acc.hull(&i)))
}
