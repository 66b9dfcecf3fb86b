use crate::branch::ComplexPoint;

/// Radial cutoff: `1` on the ball of radius `r_inner`, `0` outside
/// `r_outer`, smooth and monotone in between (`C^2` read as `R^4`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpSpec {
    pub r_inner: f64,
    pub r_outer: f64,
    pub center: ComplexPoint,
}

impl BumpSpec {
    pub fn new(r_inner: f64, r_outer: f64, center: ComplexPoint) -> Option<BumpSpec> {
        (r_inner > 0.0 && r_outer > r_inner && r_outer.is_finite()).then_some(BumpSpec {
            r_inner,
            r_outer,
            center,
        })
    }

    pub fn at_origin(r_inner: f64, r_outer: f64) -> Option<BumpSpec> {
        Self::new(r_inner, r_outer, ComplexPoint::ORIGIN)
    }

    pub fn contains_support(&self, p: &ComplexPoint) -> bool {
        p.dist(&self.center) < self.r_outer
    }
}

fn flat(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-1.0 / x).exp()
    }
}

/// Smooth step from `1` at `s = 0` to `0` at `s = 1`, flat to all orders at
/// both ends.
pub fn transition(s: f64) -> f64 {
    if s <= 0.0 {
        return 1.0;
    }
    if s >= 1.0 {
        return 0.0;
    }
    let a = flat(1.0 - s);
    a / (a + flat(s))
}

pub fn bump_value(b: &BumpSpec, p: &ComplexPoint) -> f64 {
    let d = p.dist(&b.center);
    if d <= b.r_inner {
        1.0
    } else if d >= b.r_outer {
        0.0
    } else {
        transition((d - b.r_inner) / (b.r_outer - b.r_inner))
    }
}
