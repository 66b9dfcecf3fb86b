//! Numerical check that a plan carries one branch onto the other.

use num::complex::Complex64;

use crate::branch::{Branch, ComplexPoint};
use crate::error::{Error, Result};
use crate::implicit::implicitize;
use crate::isotopy::plan::{apply_plan_with_estimate, IsotopyPlan};
use crate::poly::BivarPoly;
use crate::series::{horner, horner_derivative};

/// Golden angle in radians; spreads the sample arguments.
const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;
/// Decades of `|t|` covered by the samples.
const DECADES: f64 = 3.0;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub radius: f64,
    pub tol: f64,
    pub step: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 40,
            radius: 0.05,
            tol: 1e-3,
            step: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub index: usize,
    pub t: Complex64,
    pub start: ComplexPoint,
    pub end: ComplexPoint,
    /// Distance from `end` to the target branch.
    pub distance: f64,
    /// `|f(end)| / |grad f(end)|` for the implicit equation of the target,
    /// when it has one.
    pub algebraic_distance: Option<f64>,
    /// Richardson estimate of the integration error.
    pub step_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowReport {
    pub records: Vec<SampleRecord>,
    pub max_distance: f64,
    pub max_step_error: f64,
    pub tol: f64,
    pub step: f64,
    pub pass: bool,
}

fn max_modulus(b: &Branch, r: f64) -> f64 {
    (0..32)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / 32.0;
            b.eval(Complex64::from_polar(r, theta)).norm()
        })
        .fold(0.0, f64::max)
}

/// Parameters `t_j = r_max 10^{-3j/(n-1)} e^{i j phi}` with `|gamma(t_j)|`
/// at most `radius`.
pub fn sample_parameters(branch: &Branch, n: usize, radius: f64) -> Result<Vec<Complex64>> {
    if n == 0 || !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need at least one sample and a positive radius (got {n}, {radius})"
        )));
    }
    let mut hi = 1.0;
    while max_modulus(branch, hi) < radius {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::InvalidArgument("branch too flat to sample".into()));
        }
    }
    let mut lo = 0.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if max_modulus(branch, mid) <= radius {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r_max = lo;
    let denom = (n.max(2) - 1) as f64;
    Ok((0..n)
        .map(|j| {
            let r = r_max * 10f64.powf(-DECADES * j as f64 / denom);
            let mut t = Complex64::from_polar(r, j as f64 * GOLDEN_ANGLE);
            while branch.eval(t).norm() > radius {
                t *= 0.98;
            }
            t
        })
        .collect())
}

/// Numeric model of a branch for nearest-point searches.
pub struct BranchDistance {
    xs: Vec<f64>,
    ys: Vec<f64>,
    n: Option<u32>,
    implicit: Option<BivarPoly>,
}

impl BranchDistance {
    pub fn new(branch: &Branch) -> BranchDistance {
        let implicit = if branch.is_polynomial() {
            implicitize(branch).ok()
        } else {
            None
        };
        BranchDistance {
            xs: branch.xs().dense_f64(),
            ys: branch.ys().dense_f64(),
            n: branch.monomial_x(),
            implicit,
        }
    }

    fn point(&self, s: Complex64) -> ComplexPoint {
        ComplexPoint::new(horner(&self.xs, s), horner(&self.ys, s))
    }

    fn refine(&self, p: &ComplexPoint, mut s: Complex64) -> f64 {
        let mut best = self.point(s).dist(p);
        for _ in 0..60 {
            let r = self.point(s) - *p;
            let dx = horner_derivative(&self.xs, s);
            let dy = horner_derivative(&self.ys, s);
            let denom = dx.norm_sqr() + dy.norm_sqr();
            if denom == 0.0 {
                break;
            }
            let step = (dx.conj() * r.x + dy.conj() * r.y) / denom;
            s -= step;
            if !s.is_finite() {
                break;
            }
            best = best.min(self.point(s).dist(p));
            if step.norm() <= 1e-16 * (1.0 + s.norm()) {
                break;
            }
        }
        best
    }

    /// Distance from `p` to the branch, as the smaller of a Gauss-Newton
    /// refinement from the Puiseux preimages of `p.x` and a minimum over
    /// the dense parameters `dense`.
    pub fn distance(&self, p: &ComplexPoint, dense: &[Complex64]) -> f64 {
        let mut seeds: Vec<Complex64> = match self.n {
            Some(n) => {
                let root = p.x.powf(1.0 / n as f64);
                (0..n)
                    .map(|k| root * Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64))
                    .collect()
            }
            None => Vec::new(),
        };
        let mut dense_best = f64::INFINITY;
        let mut dense_arg = Complex64::new(0.0, 0.0);
        for &s in dense {
            let d = self.point(s).dist(p);
            if d < dense_best {
                dense_best = d;
                dense_arg = s;
            }
        }
        seeds.push(dense_arg);
        seeds
            .into_iter()
            .map(|s| self.refine(p, s))
            .fold(dense_best, f64::min)
    }

    pub fn algebraic_distance(&self, p: &ComplexPoint) -> Option<f64> {
        let f = self.implicit.as_ref()?;
        let value = f.eval(p.x, p.y).norm();
        let (gx, gy) = f.gradient(p.x, p.y);
        let grad = (gx.norm_sqr() + gy.norm_sqr()).sqrt();
        Some(if grad == 0.0 {
            if value == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            value / grad
        })
    }
}

pub fn verify_isotopy(
    g1: &Branch,
    g2: &Branch,
    plan: &IsotopyPlan,
    opts: &VerifyOptions,
) -> Result<FlowReport> {
    let ts = sample_parameters(g1, opts.samples, opts.radius)?;
    let starts: Vec<ComplexPoint> = ts.iter().map(|t| g1.eval(*t)).collect();
    let ends = apply_plan_with_estimate(plan, &starts, opts.step)?;
    let reach = ends.iter().map(|(p, _)| p.norm()).fold(opts.radius, f64::max);
    let dense = sample_parameters(g2, 10 * opts.samples, 2.0 * reach)?;
    let model = BranchDistance::new(g2);
    let records: Vec<SampleRecord> = ts
        .iter()
        .zip(starts)
        .zip(ends)
        .enumerate()
        .map(|(index, ((t, start), (end, step_error)))| SampleRecord {
            index,
            t: *t,
            start,
            end,
            distance: model.distance(&end, &dense),
            algebraic_distance: model.algebraic_distance(&end),
            step_error,
        })
        .collect();
    if records.iter().any(|r| !r.end.is_finite() || !r.distance.is_finite()) {
        return Err(Error::NonFinite);
    }
    let max_distance = records.iter().map(|r| r.distance).fold(0.0, f64::max);
    let max_step_error = records.iter().map(|r| r.step_error).fold(0.0, f64::max);
    Ok(FlowReport {
        pass: max_distance < opts.tol,
        records,
        max_distance,
        max_step_error,
        tol: opts.tol,
        step: opts.step,
    })
}
