use super::{check_dim, dist2, dot, sub, within, Point, Segment, ETA};
use crate::error::{Error, Result};

/// The four basic closed shapes.
///
/// The constructors for the segment-based shapes collapse a degenerate
/// segment to `Ball(start, r)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// `{x : |x - center| <= r}`
    Ball { center: Point, radius: f64 },
    /// Points within `r` of the segment: the capped cylinder plus two end balls.
    Stadium { seg: Segment, radius: f64 },
    /// Points within `r` of the supporting line.
    Cylinder { seg: Segment, radius: f64 },
    /// Points `p + u` with `p` on the segment, `|u| <= r`, `u ⊥ seg`.
    CappedCylinder { seg: Segment, radius: f64 },
}

fn check_radius(r: f64) -> Result<()> {
    if !r.is_finite() {
        return Err(Error::NonFinite("radius"));
    }
    if r < 0.0 {
        return Err(Error::InvalidParameter(format!("negative radius {r}")));
    }
    Ok(())
}

impl Shape {
    pub fn ball(center: Point, radius: f64) -> Result<Self> {
        check_radius(radius)?;
        Ok(Shape::Ball { center, radius })
    }

    pub fn stadium(seg: Segment, radius: f64) -> Result<Self> {
        Self::segment_shape(seg, radius, |seg, radius| Shape::Stadium { seg, radius })
    }

    pub fn cylinder(seg: Segment, radius: f64) -> Result<Self> {
        Self::segment_shape(seg, radius, |seg, radius| Shape::Cylinder { seg, radius })
    }

    pub fn capped_cylinder(seg: Segment, radius: f64) -> Result<Self> {
        Self::segment_shape(seg, radius, |seg, radius| Shape::CappedCylinder { seg, radius })
    }

    fn segment_shape(seg: Segment, radius: f64, build: fn(Segment, f64) -> Shape) -> Result<Self> {
        check_radius(radius)?;
        if seg.is_degenerate() {
            Ok(Shape::Ball { center: seg.start().clone(), radius })
        } else {
            Ok(build(seg, radius))
        }
    }

    pub fn radius(&self) -> f64 {
        match self {
            Shape::Ball { radius, .. }
            | Shape::Stadium { radius, .. }
            | Shape::Cylinder { radius, .. }
            | Shape::CappedCylinder { radius, .. } => *radius,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Shape::Ball { center, .. } => center.dim(),
            Shape::Stadium { seg, .. }
            | Shape::Cylinder { seg, .. }
            | Shape::CappedCylinder { seg, .. } => seg.dim(),
        }
    }

    /// Closed membership test, tolerant by [`ETA`] at the boundary.
    pub fn contains(&self, x: &Point) -> Result<bool> {
        check_dim(self.dim(), x.dim())?;
        let x = x.coords();
        Ok(match self {
            Shape::Ball { center, radius } => within(dist2(x, center.coords()), *radius),
            Shape::Stadium { seg, radius } => {
                capped_contains(seg, x, *radius)
                    || within(dist2(x, seg.start().coords()), *radius)
                    || within(dist2(x, seg.end().coords()), *radius)
            }
            Shape::Cylinder { seg, radius } => {
                let (_, perp2) = project(seg, x);
                within(perp2, *radius)
            }
            Shape::CappedCylinder { seg, radius } => capped_contains(seg, x, *radius),
        })
    }
}

/// Returns the projection parameter of `x` onto the supporting line of
/// `seg` (0 at start, 1 at end) and the squared distance to that line.
fn project(seg: &Segment, x: &[f64]) -> (f64, f64) {
    let s = seg.start().coords();
    let dir = seg.direction();
    let len2 = dot(&dir, &dir);
    let w = sub(x, s);
    let lambda = dot(&w, &dir) / len2;
    let perp2 = w.iter().zip(&dir).map(|(wi, di)| (wi - lambda * di).powi(2)).sum();
    (lambda, perp2)
}

fn capped_contains(seg: &Segment, x: &[f64], r: f64) -> bool {
    let (lambda, perp2) = project(seg, x);
    // cap slack measured in distance units along the axis
    let slack = ETA / seg.length2().sqrt();
    lambda >= -slack && lambda <= 1.0 + slack && within(perp2, r)
}
