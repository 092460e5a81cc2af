use std::cmp::Ordering;

use super::ETA;
use crate::error::{Error, Result};

/// Orders `a + √b` against `c + √d` by squaring, never by subtracting two
/// rounded square roots.
///
/// Values within [`ETA`] of each other compare `Equal`.
pub fn compare_sqrt(a: f64, b: f64, c: f64, d: f64) -> Result<Ordering> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite()) {
        return Err(Error::NonFinite("compare_sqrt argument"));
    }
    if b < 0.0 {
        return Err(Error::NegativeRadicand(b));
    }
    if d < 0.0 {
        return Err(Error::NegativeRadicand(d));
    }
    Ok(compare_sqrt_unchecked(a, b, c, d))
}

fn compare_sqrt_unchecked(a: f64, b: f64, c: f64, d: f64) -> Ordering {
    // |x - y| <= ETA  <=>  x <= y + ETA and y <= x + ETA
    if sqrt_le(a, b, c + ETA, d) && sqrt_le(c, d, a + ETA, b) {
        return Ordering::Equal;
    }
    match (sqrt_le(a, b, c, d), sqrt_le(c, d, a, b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        // Both directions hold only for an exact tie outside the ETA band,
        // which rounding cannot produce; neither holding is impossible.
        _ => Ordering::Equal,
    }
}

/// `a + √b <= c + √d` using only arithmetic and comparisons.
fn sqrt_le(a: f64, b: f64, c: f64, d: f64) -> bool {
    if a == c {
        return b <= d;
    }
    if a < c {
        // √b <= k + √d  <=>  b - k² - d <= 2k√d, with k > 0.
        let k = c - a;
        let lhs = b - k * k - d;
        if lhs < 0.0 {
            return true;
        }
        lhs * lhs <= 4.0 * k * k * d
    } else {
        // k + √b <= √d  <=>  2k√b <= d - b - k², with k > 0.
        let k = a - c;
        let rhs = d - b - k * k;
        if rhs < 0.0 {
            return false;
        }
        4.0 * k * k * b <= rhs * rhs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// A number of the form `a + √b` or `a - √b` with `b >= 0`.
///
/// `a` may be infinite (with `b = 0`) to represent the unbounded ends of the
/// interval cut from a line parallel to a cylinder axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqrtExpr {
    a: f64,
    b: f64,
    sign: Sign,
}

impl SqrtExpr {
    pub const NEG_INFINITY: SqrtExpr = SqrtExpr { a: f64::NEG_INFINITY, b: 0.0, sign: Sign::Plus };
    pub const INFINITY: SqrtExpr = SqrtExpr { a: f64::INFINITY, b: 0.0, sign: Sign::Plus };
    pub const ZERO: SqrtExpr = SqrtExpr::constant(0.0);
    pub const ONE: SqrtExpr = SqrtExpr::constant(1.0);

    /// Builds `a + sign·√b`. A radicand in `[-ETA, 0)` is clamped to zero;
    /// anything more negative is rejected.
    pub fn new(a: f64, b: f64, sign: Sign) -> Result<Self> {
        if a.is_nan() || !b.is_finite() {
            return Err(Error::NonFinite("sqrt expression"));
        }
        if b < -ETA {
            return Err(Error::NegativeRadicand(b));
        }
        if a.is_infinite() && b != 0.0 {
            return Err(Error::NonFinite("infinite sqrt expression with radicand"));
        }
        Ok(Self { a, b: b.max(0.0), sign })
    }

    pub const fn constant(a: f64) -> Self {
        Self { a, b: 0.0, sign: Sign::Plus }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite()
    }

    /// Floating-point value. Use [`SqrtExpr::compare`] for ordering.
    pub fn value(&self) -> f64 {
        match self.sign {
            Sign::Plus => self.a + self.b.sqrt(),
            Sign::Minus => self.a - self.b.sqrt(),
        }
    }

    /// Orders two expressions; values within [`ETA`] are `Equal`.
    pub fn compare(&self, other: &SqrtExpr) -> Ordering {
        match (self.is_finite(), other.is_finite()) {
            (true, true) => {}
            _ => return self.a.partial_cmp(&other.a).unwrap_or(Ordering::Equal),
        }
        let strict = match (self.sign, other.sign) {
            (Sign::Plus, Sign::Plus) => {
                return compare_sqrt_unchecked(self.a, self.b, other.a, other.b)
            }
            // a - √b vs c - √d  <=>  a + √d vs c + √b
            (Sign::Minus, Sign::Minus) => {
                return compare_sqrt_unchecked(self.a, other.b, other.a, self.b)
            }
            _ if (self.value() - other.value()).abs() <= ETA => return Ordering::Equal,
            (Sign::Minus, Sign::Plus) => minus_vs_plus(self, other),
            (Sign::Plus, Sign::Minus) => minus_vs_plus(other, self).reverse(),
        };
        match strict {
            Ordering::Equal => self.value().total_cmp(&other.value()),
            o => o,
        }
    }

    pub fn le(&self, other: &SqrtExpr) -> bool {
        self.compare(other) != Ordering::Greater
    }

    pub fn lt(&self, other: &SqrtExpr) -> bool {
        self.compare(other) == Ordering::Less
    }

    pub fn min(self, other: SqrtExpr) -> SqrtExpr {
        if other.lt(&self) {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: SqrtExpr) -> SqrtExpr {
        if self.lt(&other) {
            other
        } else {
            self
        }
    }
}

/// `x = a - √b` against `y = c + √d`: `x` vs `y`  <=>  `a - c` vs `√b + √d`,
/// and for `a - c >= 0` both sides square to `(a-c)²` vs `b + d + √(4bd)`.
fn minus_vs_plus(x: &SqrtExpr, y: &SqrtExpr) -> Ordering {
    let k = x.a - y.a;
    if k < 0.0 {
        return Ordering::Less;
    }
    compare_sqrt_unchecked(k * k, 0.0, x.b + y.b, 4.0 * x.b * y.b)
}

/// A closed, non-empty parameter interval with [`SqrtExpr`] endpoints.
/// Emptiness is represented by `Option::None` at every call site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqrtInterval {
    lo: SqrtExpr,
    hi: SqrtExpr,
}

impl SqrtInterval {
    /// Returns `None` when `lo > hi` beyond the tolerance.
    pub fn new(lo: SqrtExpr, hi: SqrtExpr) -> Option<Self> {
        if hi.lt(&lo) {
            None
        } else {
            Some(Self { lo, hi })
        }
    }

    pub fn from_values(lo: f64, hi: f64) -> Option<Self> {
        Self::new(SqrtExpr::constant(lo), SqrtExpr::constant(hi))
    }

    pub const UNIT: SqrtInterval = SqrtInterval { lo: SqrtExpr::ZERO, hi: SqrtExpr::ONE };
    pub const ALL: SqrtInterval = SqrtInterval { lo: SqrtExpr::NEG_INFINITY, hi: SqrtExpr::INFINITY };

    pub fn lo(&self) -> SqrtExpr {
        self.lo
    }

    pub fn hi(&self) -> SqrtExpr {
        self.hi
    }

    pub fn intersect(&self, other: &SqrtInterval) -> Option<SqrtInterval> {
        SqrtInterval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &SqrtInterval) -> SqrtInterval {
        SqrtInterval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Intersection with `[0, 1]`.
    pub fn clip_unit(&self) -> Option<SqrtInterval> {
        self.intersect(&SqrtInterval::UNIT)
    }

    /// Tolerant membership of a plain value.
    pub fn contains_value(&self, x: f64) -> bool {
        let x = SqrtExpr::constant(x);
        self.lo.le(&x) && x.le(&self.hi)
    }

    pub fn contains_interval(&self, other: &SqrtInterval) -> bool {
        self.lo.le(&other.lo) && other.hi.le(&self.hi)
    }

    pub fn lo_value(&self) -> f64 {
        self.lo.value()
    }

    pub fn hi_value(&self) -> f64 {
        self.hi.value()
    }
}
