//! Construction and application of isotopy plans.
//!
//! Both branches are blown up in lockstep. Where their infinitely near points
//! first separate, a multiplicative field on that chart rotates the first
//! tangent onto the second; on the last chart, where both strict transforms
//! are graphs over the last exceptional curve, a graph-matching field slides
//! one graph onto the other. Every field is linear-algebraic in its chart, so
//! the image of the first branch is tracked exactly as a chart series.

use num::complex::Complex64;
use num::Zero;

use crate::branch::{Branch, ComplexPoint};
use crate::error::{Error, Result};
use crate::invariants::equisingular;
use crate::isotopy::bump::BumpSpec;
use crate::isotopy::chart::{lift_point, pushdown_point};
use crate::isotopy::field::{
    integrate_flow, integrate_with_estimate, FieldKind, FieldSpec, Frame, Orientation,
};
use crate::isotopy::verify::sample_parameters;
use crate::resolution::{blowup_step, resolve, Chart, ChartPath, ChartState, DEFAULT_MAX_STEPS};
use crate::series::{rat_int, rational_to_f64, Rational, TruncatedSeries};

/// Bump radii used when nothing forces them larger.
pub const DEFAULT_OUTER_RADIUS: f64 = 0.1;
/// Inner radius over the largest probe trajectory.
pub const SAFETY_MARGIN: f64 = 1.05;

#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    /// Chart the field lives on.
    pub path: ChartPath,
    pub field: FieldSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsotopyPlan {
    pub stages: Vec<Stage>,
    pub source: Branch,
    pub target: Branch,
}

impl IsotopyPlan {
    pub fn levels(&self) -> Vec<u32> {
        self.stages.iter().map(|s| s.field.level).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanOptions {
    /// Radius of the disc of the source branch that must be carried onto
    /// the target.
    pub working_radius: f64,
    /// Sample points of the source branch used to size the bumps.
    pub probes: usize,
    /// Terms kept in the graph series of the last chart.
    pub graph_terms: u32,
}

impl Default for PlanOptions {
    fn default() -> Self {
        PlanOptions {
            working_radius: 0.05,
            probes: 160,
            graph_terms: 40,
        }
    }
}

const FRAME_COEFFS: [i64; 7] = [0, 1, -1, 2, -2, 3, -3];

/// Frame in which both tangent directions have finite nonzero slope and the
/// labeled axes stay invariant.
fn choose_frame(
    d1: &(Rational, Rational),
    d2: &(Rational, Rational),
    u_labeled: bool,
    v_labeled: bool,
) -> Result<(Frame, Rational)> {
    let allowed = |fixed: bool| -> &[i64] {
        if fixed {
            &FRAME_COEFFS[..1]
        } else {
            &FRAME_COEFFS
        }
    };
    let mut pairs: Vec<(i64, i64)> = allowed(v_labeled)
        .iter()
        .flat_map(|&a| allowed(u_labeled).iter().map(move |&b| (a, b)))
        .collect();
    pairs.sort_by_key(|(a, b)| a.abs() + b.abs());
    for (a, b) in pairs {
        let frame = Frame {
            a: rat_int(a),
            b: rat_int(b),
        };
        if frame.det().is_zero() {
            continue;
        }
        let (Some(s1), Some(s2)) = (frame.slope(&d1.0, &d1.1), frame.slope(&d2.0, &d2.1)) else {
            continue;
        };
        if s1.is_zero() || s2.is_zero() {
            continue;
        }
        return Ok((frame, s2 / s1));
    }
    Err(Error::Construction(
        "no linear frame separates the two tangent directions".into(),
    ))
}

fn principal_log(kappa: &Rational) -> Complex64 {
    let k = rational_to_f64(kappa);
    Complex64::new(k, 0.0).ln()
}

fn apply_linear(state: &ChartState, m: &[[Rational; 2]; 2]) -> ChartState {
    let us = state.us.scale(&m[0][0]).add(&state.vs.scale(&m[0][1]));
    let vs = state.us.scale(&m[1][0]).add(&state.vs.scale(&m[1][1]));
    ChartState {
        us,
        vs,
        ..state.clone()
    }
}

/// Graph of the strict transform over the labeled exceptional axis.
fn graph_series(state: &ChartState, orientation: Orientation, terms: u32) -> Result<TruncatedSeries> {
    let (base, other) = match orientation {
        Orientation::VOverU => (&state.us, &state.vs),
        Orientation::UOverV => (&state.vs, &state.us),
    };
    let cap = base.precision().min(other.precision()).min(terms);
    let inverse = base.truncate(cap).revert()?;
    Ok(other.truncate(cap).compose(&inverse)?.truncate(cap))
}

/// Points where two exceptional curves cross in the current chart, other than
/// the origin; the fields must vanish near them.
#[derive(Debug, Clone, Default)]
struct Corners(Vec<ComplexPoint>);

impl Corners {
    fn blow_up(&mut self, before: &ChartState, chart: Chart, c: &Rational) {
        let cf = Complex64::new(rational_to_f64(c), 0.0);
        let tiny = 1e-300;
        let mut next: Vec<ComplexPoint> = self
            .0
            .iter()
            .filter_map(|p| match chart {
                Chart::A if p.x.norm() > tiny => Some(ComplexPoint::new(p.x, p.y / p.x - cf)),
                Chart::B if p.y.norm() > tiny => Some(ComplexPoint::new(p.x / p.y - cf, p.y)),
                _ => None,
            })
            .collect();
        if !c.is_zero() {
            match chart {
                Chart::A if before.v_axis.is_some() => {
                    next.push(ComplexPoint::new(Complex64::zero(), -cf))
                }
                Chart::B if before.u_axis.is_some() => {
                    next.push(ComplexPoint::new(-cf, Complex64::zero()))
                }
                _ => {}
            }
        }
        self.0 = next;
    }

    fn nearest(&self) -> f64 {
        self.0
            .iter()
            .map(|p| p.norm())
            .filter(|d| *d > 1e-12)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Radii with the probe trajectories inside the inner ball and every corner
/// outside the outer ball.
fn choose_bump(required: f64, corner_distance: f64) -> Result<BumpSpec> {
    let d = corner_distance;
    let base_outer = (d / 2.0).min(DEFAULT_OUTER_RADIUS);
    let mut r_inner = base_outer / 2.0;
    let mut r_outer = base_outer;
    let needed = SAFETY_MARGIN * required;
    if needed > r_inner {
        if needed >= d {
            return Err(Error::Construction(format!(
                "working disc needs radius {needed:.3e} in a chart whose nearest corner is at {d:.3e}"
            )));
        }
        r_inner = needed;
        r_outer = (2.0 * r_inner).min((r_inner + d) / 2.0);
    }
    BumpSpec::at_origin(r_inner, r_outer)
        .ok_or_else(|| Error::Construction(format!("invalid bump radii {r_inner}, {r_outer}")))
}

fn required_radius(field: &FieldSpec, path: &ChartPath, probes: &[ComplexPoint]) -> f64 {
    const SUBSTEPS: usize = 16;
    probes
        .iter()
        .filter_map(|p| lift_point(path, p).ok())
        .flat_map(|q| (0..=SUBSTEPS).map(move |k| (q, k as f64 / SUBSTEPS as f64)))
        .map(|(q, s)| field.raw_flow(&q, s).norm())
        .fold(0.0, f64::max)
}

pub fn build_plan(g1: &Branch, g2: &Branch) -> Result<IsotopyPlan> {
    build_plan_with(g1, g2, &PlanOptions::default())
}

pub fn build_plan_with(g1: &Branch, g2: &Branch, opts: &PlanOptions) -> Result<IsotopyPlan> {
    let verdict = equisingular(g1, g2)?;
    if !verdict.equal {
        return Err(Error::NotEquisingular(verdict.certificate.to_string()));
    }
    let r = resolve(g2, DEFAULT_MAX_STEPS)?.r();
    let mut s1 = ChartState::initial(g1);
    let mut s2 = ChartState::initial(g2);
    let mut path = ChartPath::default();
    let mut corners = Corners::default();
    let mut probes: Vec<ComplexPoint> = sample_parameters(g1, opts.probes, opts.working_radius)?
        .into_iter()
        .map(|t| g1.eval(t))
        .collect();
    let mut stages = Vec::new();

    for level in 0..r as u32 {
        let (ch1, c1, _) = s1.next_centre()?;
        let (ch2, c2, _) = s2.next_centre()?;
        if ch1 != ch2 || c1 != c2 {
            let (frame, kappa) = choose_frame(
                &s1.tangent_direction()?,
                &s2.tangent_direction()?,
                s1.u_axis.is_some(),
                s1.v_axis.is_some(),
            )?;
            let kind = FieldKind::Multiplicative {
                lambda: principal_log(&kappa),
                frame: frame.clone(),
            };
            let unit = BumpSpec::at_origin(1.0, 2.0).expect("valid radii");
            let raw = FieldSpec::new(kind.clone(), unit, level)?;
            let bump = choose_bump(required_radius(&raw, &path, &probes), corners.nearest())?;
            let field = FieldSpec::new(kind, bump, level)?;

            s1 = apply_linear(&s1, &frame.conjugated_scaling(&kappa));
            let (ch1, c1, _) = s1.next_centre()?;
            if ch1 != ch2 || c1 != c2 {
                return Err(Error::Construction(format!(
                    "tangent not matched at level {level}"
                )));
            }
            for p in probes.iter_mut() {
                if let Ok(q) = lift_point(&path, p) {
                    *p = pushdown_point(&path, &field.raw_flow(&q, 1.0));
                }
            }
            stages.push(Stage {
                path: path.clone(),
                field,
            });
        }
        let (n1, _) = blowup_step(&s1)?;
        let (n2, record) = blowup_step(&s2)?;
        corners.blow_up(&s2, record.chart, &record.translation);
        path.push(record.chart, record.translation);
        s1 = n1;
        s2 = n2;
    }

    if !s1.is_resolved() || !s2.is_resolved() {
        return Err(Error::Construction(
            "strict transforms are not transverse graphs on the last chart".into(),
        ));
    }
    let orientation = if s2.u_axis.is_some() {
        Orientation::VOverU
    } else {
        Orientation::UOverV
    };
    let graph1 = graph_series(&s1, orientation, opts.graph_terms)?;
    let graph2 = graph_series(&s2, orientation, opts.graph_terms)?;
    let kind = FieldKind::GraphMatch {
        s1: graph1,
        s2: graph2,
        orientation,
    };
    let unit = BumpSpec::at_origin(1.0, 2.0).expect("valid radii");
    let raw = FieldSpec::new(kind.clone(), unit, r as u32)?;
    let bump = choose_bump(required_radius(&raw, &path, &probes), corners.nearest())?;
    stages.push(Stage {
        path,
        field: FieldSpec::new(kind, bump, r as u32)?,
    });

    Ok(IsotopyPlan {
        stages,
        source: g1.clone(),
        target: g2.clone(),
    })
}

fn apply_stage(stage: &Stage, p: &ComplexPoint, h: f64, estimate: bool) -> Result<(ComplexPoint, f64)> {
    let q = match lift_point(&stage.path, p) {
        Ok(q) => q,
        Err(Error::LiftIllConditioned(_)) => return Ok((*p, 0.0)),
        Err(e) => return Err(e),
    };
    if !stage.field.bump.contains_support(&q) {
        return Ok((*p, 0.0));
    }
    let (moved, err) = if estimate {
        integrate_with_estimate(&stage.field, &q, h)?
    } else {
        (integrate_flow(&stage.field, &q, h)?, 0.0)
    };
    if moved == q {
        return Ok((*p, err));
    }
    Ok((pushdown_point(&stage.path, &moved), err))
}

/// Push points of `(C^2, 0)` through every stage in order.
///
/// Points the flows leave alone, including those with no lift to a stage
/// chart, come back bit for bit.
pub fn apply_plan(plan: &IsotopyPlan, points: &[ComplexPoint], h: f64) -> Result<Vec<ComplexPoint>> {
    points
        .iter()
        .map(|p| {
            plan.stages
                .iter()
                .try_fold(*p, |p, stage| Ok(apply_stage(stage, &p, h, false)?.0))
        })
        .collect()
}

/// As [`apply_plan`], with the summed per-stage Richardson error estimates.
pub fn apply_plan_with_estimate(
    plan: &IsotopyPlan,
    points: &[ComplexPoint],
    h: f64,
) -> Result<Vec<(ComplexPoint, f64)>> {
    points
        .iter()
        .map(|p| {
            plan.stages.iter().try_fold((*p, 0.0), |(p, acc), stage| {
                let (q, err) = apply_stage(stage, &p, h, true)?;
                Ok((q, acc + err))
            })
        })
        .collect()
}

/// `kappa` of a multiplicative stage, read back from its exponent.
pub fn stage_ratio(stage: &Stage) -> Option<Complex64> {
    stage.field.lambda().map(|l| l.exp())
}
