//! Low-level geometry: points, segments, the four basic shapes and the
//! parameter intervals cut out of a line by those shapes.
//!
//! Every boundary that arises from intersecting a line with a ball or a
//! cylinder is carried as a [`SqrtExpr`] (`a ± √b`) and ordered with
//! [`compare_sqrt`], which decides `a + √b ≤ c + √d` by squaring instead of
//! by subtracting two rounded square roots.
//!
//! All shapes are closed sets. Boundary decisions use the single tolerance
//! [`ETA`]: a distance within `ETA` of the radius counts as inside, and two
//! interval endpoints within `ETA` of each other compare equal.

mod intervals;
mod shapes;
mod sqrt;

pub use intervals::{
    line_ball_interval, line_capped_cylinder_interval, line_cylinder_interval,
    line_stadium_interval,
};
pub use shapes::Shape;
pub use sqrt::{compare_sqrt, Sign, SqrtExpr, SqrtInterval};

use crate::error::{Error, Result};

/// Tolerance for equality of interval endpoints and for closed-set
/// membership at the boundary.
pub const ETA: f64 = 1e-9;

/// A point in `R^d`, `d >= 1`, with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Empty("point has no coordinates"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("point coordinate"));
        }
        Ok(Self(coords))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    /// The origin of `R^d`.
    pub fn origin(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self(vec![0.0; dim])
    }

    #[inline]
    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn dist2(&self, other: &Point) -> f64 {
        dist2(&self.0, &other.0)
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist2(other).sqrt()
    }

    /// Applies `f` to every coordinate. The caller keeps coordinates finite.
    pub fn map(&self, f: impl Fn(usize, f64) -> f64) -> Point {
        Point(self.0.iter().enumerate().map(|(i, &c)| f(i, c)).collect())
    }
}

/// The directed segment from `start` to `end`. May be degenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    start: Point,
    end: Point,
}

impl Segment {
    pub fn new(start: Point, end: Point) -> Result<Self> {
        check_dim(start.dim(), end.dim())?;
        Ok(Self { start, end })
    }

    #[inline]
    pub fn start(&self) -> &Point {
        &self.start
    }

    #[inline]
    pub fn end(&self) -> &Point {
        &self.end
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.start.dim()
    }

    pub fn direction(&self) -> Vec<f64> {
        sub(self.end.coords(), self.start.coords())
    }

    pub fn length2(&self) -> f64 {
        self.start.dist2(&self.end)
    }

    pub fn is_degenerate(&self) -> bool {
        self.length2() == 0.0
    }

    /// The point `start + (end - start) * t` on the supporting line.
    pub fn at(&self, t: f64) -> Point {
        let s = self.start.coords();
        let e = self.end.coords();
        Point(s.iter().zip(e).map(|(a, b)| a + (b - a) * t).collect())
    }

    pub fn reversed(&self) -> Segment {
        Segment { start: self.end.clone(), end: self.start.clone() }
    }

    /// Squared distance from `p` to the closed segment.
    pub fn dist2_to_point(&self, p: &Point) -> f64 {
        point_segment_dist2(p.coords(), self.start.coords(), self.end.coords())
    }
}

#[inline]
pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

#[inline]
pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Squared distance from `p` to the closed segment `[s, t]`.
pub(crate) fn point_segment_dist2(p: &[f64], s: &[f64], t: &[f64]) -> f64 {
    let dir = sub(t, s);
    let len2 = dot(&dir, &dir);
    if len2 == 0.0 {
        return dist2(p, s);
    }
    let w = sub(p, s);
    let lambda = (dot(&w, &dir) / len2).clamp(0.0, 1.0);
    p.iter()
        .zip(s)
        .zip(&dir)
        .map(|((pi, si), di)| {
            let diff = pi - (si + lambda * di);
            diff * diff
        })
        .sum()
}

/// Closed-ball membership with the boundary tolerance: `sqrt(d2) <= r + ETA`.
#[inline]
pub fn within(d2: f64, r: f64) -> bool {
    let slack = r + ETA;
    d2 <= slack * slack
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Point {
        Point::from_slice(c).unwrap()
    }

    #[test]
    fn point_rejects_bad_coordinates() {
        assert!(matches!(Point::new(vec![]), Err(Error::Empty(_))));
        assert!(matches!(Point::new(vec![1.0, f64::NAN]), Err(Error::NonFinite(_))));
        assert!(matches!(Point::new(vec![f64::INFINITY]), Err(Error::NonFinite(_))));
    }

    #[test]
    fn segment_requires_common_dimension() {
        let err = Segment::new(p(&[0.0, 0.0]), p(&[0.0, 0.0, 1.0])).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 3 });
    }

    #[test]
    fn point_segment_distance() {
        let seg = Segment::new(p(&[0.0, 0.0]), p(&[1.0, 1.0])).unwrap();
        let d = seg.dist2_to_point(&p(&[1.0, 0.0])).sqrt();
        assert!((d - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        // beyond the end clamps to the endpoint
        assert_eq!(seg.dist2_to_point(&p(&[2.0, 1.0])), 1.0);
        let degenerate = Segment::new(p(&[1.0, 1.0]), p(&[1.0, 1.0])).unwrap();
        assert!(degenerate.is_degenerate());
        assert_eq!(degenerate.dist2_to_point(&p(&[1.0, 3.0])), 4.0);
    }
}
