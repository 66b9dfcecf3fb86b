//! Bump-glued holomorphic vector fields on a chart and their time-1 flows.

use num::complex::Complex64;
use num::{One, Zero};

use crate::branch::ComplexPoint;
use crate::error::{Error, Result};
use crate::isotopy::bump::{bump_value, BumpSpec};
use crate::series::{horner, rational_to_f64, Rational, TruncatedSeries};

/// Rational linear frame `(p, q) = (u + b v, a u + v)`.
///
/// The multiplicative field is `dq/dt = lambda q`, `dp/dt = 0` in this frame.
/// `b = 0` keeps `{u = 0}` invariant and `a = 0` keeps `{v = 0}` invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub a: Rational,
    pub b: Rational,
}

impl Frame {
    pub fn identity() -> Frame {
        Frame {
            a: Rational::zero(),
            b: Rational::zero(),
        }
    }

    pub fn det(&self) -> Rational {
        Rational::one() - &self.a * &self.b
    }

    /// Slope `q / p` of the direction `[du : dv]`, if finite.
    pub fn slope(&self, du: &Rational, dv: &Rational) -> Option<Rational> {
        let p = du + &self.b * dv;
        let q = &self.a * du + dv;
        (!p.is_zero()).then(|| q / p)
    }

    /// Exact matrix of `L^{-1} diag(1, kappa) L`.
    pub fn conjugated_scaling(&self, kappa: &Rational) -> [[Rational; 2]; 2] {
        let det = self.det();
        let (a, b) = (&self.a, &self.b);
        let one = Rational::one();
        [
            [(&one - kappa * a * b) / &det, b * (&one - kappa) / &det],
            [a * (kappa - &one) / &det, (kappa - a * b) / &det],
        ]
    }

    /// `P = L^{-1} diag(0, 1) L`; the flow for time `s` is `I + (e^{s lambda} - 1) P`.
    pub fn projector(&self) -> [[f64; 2]; 2] {
        let det = rational_to_f64(&self.det());
        let (a, b) = (rational_to_f64(&self.a), rational_to_f64(&self.b));
        [[-a * b / det, -b / det], [a / det, 1.0 / det]]
    }
}

/// Which chart coordinate the graph-matching field moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Graphs `v = s(u)`; the field is `(0, s2(u) - s1(u))`.
    VOverU,
    /// Graphs `u = s(v)`; the field is `(s2(v) - s1(v), 0)`.
    UOverV,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FieldKind {
    Multiplicative { lambda: Complex64, frame: Frame },
    GraphMatch {
        s1: TruncatedSeries,
        s2: TruncatedSeries,
        orientation: Orientation,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum Compiled {
    Linear([[Complex64; 2]; 2]),
    Graph(Vec<f64>, Orientation),
}

/// A holomorphic field on one chart, multiplied by a bump.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub bump: BumpSpec,
    /// Depth of the chart the field lives on.
    pub level: u32,
    direction: f64,
    compiled: Compiled,
}

impl FieldSpec {
    pub fn new(kind: FieldKind, bump: BumpSpec, level: u32) -> Result<FieldSpec> {
        let compiled = match &kind {
            FieldKind::Multiplicative { lambda, frame } => {
                if frame.det().is_zero() {
                    return Err(Error::Construction("degenerate frame".into()));
                }
                let p = frame.projector();
                Compiled::Linear(p.map(|row| row.map(|e| lambda * e)))
            }
            FieldKind::GraphMatch {
                s1,
                s2,
                orientation,
            } => Compiled::Graph(s2.sub(s1).dense_f64(), *orientation),
        };
        Ok(FieldSpec {
            kind,
            bump,
            level,
            direction: 1.0,
            compiled,
        })
    }

    /// The same field run backwards in time.
    pub fn negated(&self) -> FieldSpec {
        FieldSpec {
            direction: -self.direction,
            ..self.clone()
        }
    }

    pub fn is_negated(&self) -> bool {
        self.direction < 0.0
    }

    pub fn lambda(&self) -> Option<Complex64> {
        match &self.kind {
            FieldKind::Multiplicative { lambda, .. } => Some(*lambda),
            FieldKind::GraphMatch { .. } => None,
        }
    }

    /// The holomorphic field before gluing.
    pub fn raw(&self, q: &ComplexPoint) -> ComplexPoint {
        let v = match &self.compiled {
            Compiled::Linear(m) => ComplexPoint::new(
                m[0][0] * q.x + m[0][1] * q.y,
                m[1][0] * q.x + m[1][1] * q.y,
            ),
            Compiled::Graph(diff, Orientation::VOverU) => {
                ComplexPoint::new(Complex64::zero(), horner(diff, q.x))
            }
            Compiled::Graph(diff, Orientation::UOverV) => {
                ComplexPoint::new(horner(diff, q.y), Complex64::zero())
            }
        };
        v.scale(self.direction)
    }

    /// `rho(q) * raw(q)`, exactly zero off the support of the bump.
    pub fn eval(&self, q: &ComplexPoint) -> ComplexPoint {
        let rho = bump_value(&self.bump, q);
        if rho == 0.0 {
            ComplexPoint::ORIGIN
        } else {
            self.raw(q).scale(rho)
        }
    }

    /// Point reached from `q` after time `s` along the unglued field.
    pub fn raw_flow(&self, q: &ComplexPoint, s: f64) -> ComplexPoint {
        let s = s * self.direction;
        match &self.kind {
            FieldKind::Multiplicative { lambda, frame } => {
                let grow = (lambda * s).exp() - 1.0;
                let p = frame.projector();
                ComplexPoint::new(
                    q.x + grow * (p[0][0] * q.x + p[0][1] * q.y),
                    q.y + grow * (p[1][0] * q.x + p[1][1] * q.y),
                )
            }
            FieldKind::GraphMatch { .. } => {
                let v = self.raw(q).scale(self.direction);
                *q + v.scale(s)
            }
        }
    }
}

/// Field `(0, lambda v)` with `lambda = log(c2 / c1)`: its time-1 flow sends
/// the line `v = c1 u` to `v = c2 u` inside the inner ball.
pub fn multiplicative_field(c1: &Rational, c2: &Rational, bump: BumpSpec) -> Result<FieldSpec> {
    if c1.is_zero() || c2.is_zero() {
        return Err(Error::InvalidArgument(
            "multiplicative field needs nonzero slopes".into(),
        ));
    }
    let kappa = rational_to_f64(&(c2 / c1));
    FieldSpec::new(
        FieldKind::Multiplicative {
            lambda: Complex64::new(kappa, 0.0).ln(),
            frame: Frame::identity(),
        },
        bump,
        0,
    )
}

pub fn graph_match_field(
    s1: TruncatedSeries,
    s2: TruncatedSeries,
    orientation: Orientation,
    bump: BumpSpec,
) -> Result<FieldSpec> {
    FieldSpec::new(
        FieldKind::GraphMatch {
            s1,
            s2,
            orientation,
        },
        bump,
        0,
    )
}

fn steps_for(h: f64) -> Result<usize> {
    if !(h > 0.0 && h <= 1.0) {
        return Err(Error::InvalidArgument(format!("step {h} not in (0, 1]")));
    }
    Ok((1.0 / h).round().max(1.0) as usize)
}

/// Time-1 flow by classical RK4 with step `h`.
///
/// A point whose stages all see a zero field is returned unchanged, bit for bit.
pub fn integrate_flow(field: &FieldSpec, start: &ComplexPoint, h: f64) -> Result<ComplexPoint> {
    let n = steps_for(h)?;
    let h = 1.0 / n as f64;
    let mut p = *start;
    for _ in 0..n {
        let k1 = field.eval(&p);
        let k2 = field.eval(&(p + k1.scale(h / 2.0)));
        let k3 = field.eval(&(p + k2.scale(h / 2.0)));
        let k4 = field.eval(&(p + k3.scale(h)));
        if k1 == ComplexPoint::ORIGIN
            && k2 == ComplexPoint::ORIGIN
            && k3 == ComplexPoint::ORIGIN
            && k4 == ComplexPoint::ORIGIN
        {
            continue;
        }
        let incr = (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(h / 6.0);
        p = p + incr;
        if !p.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    Ok(p)
}

/// Time-1 flow with step `h` together with the Richardson estimate
/// `|p_h - p_{h/2}| / 15` of its error.
pub fn integrate_with_estimate(
    field: &FieldSpec,
    start: &ComplexPoint,
    h: f64,
) -> Result<(ComplexPoint, f64)> {
    let coarse = integrate_flow(field, start, h)?;
    let fine = integrate_flow(field, start, h / 2.0)?;
    Ok((coarse, coarse.dist(&fine) / 15.0))
}
