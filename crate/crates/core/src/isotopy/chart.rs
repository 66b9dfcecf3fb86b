//! Numeric chart maps along a [`ChartPath`].

use num::complex::Complex64;

use crate::branch::ComplexPoint;
use crate::error::{Error, Result};
use crate::resolution::{Chart, ChartPath};
use crate::series::rational_to_f64;

/// Divisors below this magnitude make a lift ill-conditioned.
pub const MIN_DIVISOR: f64 = 1e-150;

/// Coordinates of `p` in the chart at the end of `path`.
pub fn lift_point(path: &ChartPath, p: &ComplexPoint) -> Result<ComplexPoint> {
    if path.is_empty() {
        return Ok(*p);
    }
    if *p == ComplexPoint::ORIGIN {
        return Err(Error::LiftIllConditioned("the origin has no lift".into()));
    }
    let mut q = *p;
    for (level, (chart, c)) in path.steps.iter().enumerate() {
        let c = Complex64::new(rational_to_f64(c), 0.0);
        let (num, den) = match chart {
            Chart::A => (q.y, q.x),
            Chart::B => (q.x, q.y),
        };
        if den.norm() < MIN_DIVISOR {
            return Err(Error::LiftIllConditioned(format!(
                "point lies on the blown-down set at level {level}"
            )));
        }
        let ratio = num / den - c;
        q = match chart {
            Chart::A => ComplexPoint::new(q.x, ratio),
            Chart::B => ComplexPoint::new(ratio, q.y),
        };
        if !q.is_finite() {
            return Err(Error::LiftIllConditioned(format!(
                "non-finite coordinates at level {level}"
            )));
        }
    }
    Ok(q)
}

/// Image in `(C^2, 0)` of a point given in the chart at the end of `path`.
pub fn pushdown_point(path: &ChartPath, q: &ComplexPoint) -> ComplexPoint {
    let mut p = *q;
    for (chart, c) in path.steps.iter().rev() {
        let c = Complex64::new(rational_to_f64(c), 0.0);
        p = match chart {
            Chart::A => ComplexPoint::new(p.x, p.x * (p.y + c)),
            Chart::B => ComplexPoint::new((p.x + c) * p.y, p.y),
        };
    }
    p
}
