//! Embedded resolution of a branch by iterated point blowups.
//!
//! Each blowup is tracked in one affine chart. Chart A is `(x, y) = (u, uv)`,
//! whose exceptional curve is `{u = 0}`; chart B is `(x, y) = (uv, v)`, whose
//! exceptional curve is `{v = 0}`. After blowing up, the new point of the
//! strict transform is moved to the origin by translating the non-exceptional
//! coordinate.

use std::collections::BTreeSet;
use std::fmt;

use num::Zero;

use crate::branch::Branch;
use crate::error::{Error, Result};
use crate::series::{Rational, TruncatedSeries};

pub const DEFAULT_MAX_STEPS: usize = 64;

/// Exceptional component `E_i`, numbered by blowup order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorLabel(pub u32);

impl fmt::Display for DivisorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chart {
    /// `(x, y) = (u, uv)`
    A,
    /// `(x, y) = (uv, v)`
    B,
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chart::A => write!(f, "A"),
            Chart::B => write!(f, "B"),
        }
    }
}

/// Sequence of charts with translations leading from `(C^2, 0)` to a chart
/// of the blown-up surface.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChartPath {
    pub steps: Vec<(Chart, Rational)>,
}

impl ChartPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn prefix(&self, len: usize) -> ChartPath {
        ChartPath {
            steps: self.steps[..len].to_vec(),
        }
    }

    pub fn push(&mut self, chart: Chart, translation: Rational) {
        self.steps.push((chart, translation));
    }
}

impl fmt::Display for ChartPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (chart, c)) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{chart}{c:+}")?;
        }
        write!(f, "]")
    }
}

/// The strict transform in local chart coordinates `(u, v)`, with the
/// exceptional components lying on the coordinate axes.
///
/// `u_axis` labels the curve `{u = 0}` and `v_axis` the curve `{v = 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartState {
    pub us: TruncatedSeries,
    pub vs: TruncatedSeries,
    pub u_axis: Option<DivisorLabel>,
    pub v_axis: Option<DivisorLabel>,
    pub level: u32,
}

impl ChartState {
    pub fn initial(branch: &Branch) -> ChartState {
        ChartState {
            us: branch.xs().clone(),
            vs: branch.ys().clone(),
            u_axis: None,
            v_axis: None,
            level: 0,
        }
    }

    pub fn labels(&self) -> BTreeSet<u32> {
        self.u_axis.iter().chain(self.v_axis.iter()).map(|l| l.0).collect()
    }

    /// Chart and multiplicity of the next blowup, decided from orders only.
    fn chart_choice(&self) -> Result<(Chart, u32)> {
        let exhausted = || {
            Error::PrecisionExhausted(format!(
                "cannot compare orders at level {} (precisions {} and {})",
                self.level,
                self.us.precision(),
                self.vs.precision()
            ))
        };
        match (self.us.order(), self.vs.order()) {
            (Some(0), _) | (_, Some(0)) => Err(Error::NotThroughOrigin),
            (Some(a), Some(b)) => Ok(if b >= a { (Chart::A, a) } else { (Chart::B, b) }),
            (Some(a), None) if self.vs.precision() >= a => Ok((Chart::A, a)),
            (None, Some(b)) if self.us.precision() > b => Ok((Chart::B, b)),
            _ => Err(exhausted()),
        }
    }

    /// Chart, translation and multiplicity of the next blowup.
    pub fn next_centre(&self) -> Result<(Chart, Rational, u32)> {
        let (chart, m) = self.chart_choice()?;
        let c = match chart {
            Chart::A => self.vs.divide(&self.us)?.coeff(0)?,
            Chart::B => self.us.divide(&self.vs)?.coeff(0)?,
        };
        Ok((chart, c, m))
    }

    /// Smooth, at a free point of the last component and transverse to it.
    pub fn is_resolved(&self) -> bool {
        match (self.u_axis, self.v_axis) {
            (Some(_), None) => self.us.order() == Some(1),
            (None, Some(_)) => self.vs.order() == Some(1),
            _ => false,
        }
    }

    /// Tangent direction `[du : dv]` of the branch at the origin, as the
    /// point of the next blowup: `(1, c)` in chart A, `(0, 1)` in chart B.
    pub fn tangent_direction(&self) -> Result<(Rational, Rational)> {
        let (chart, c, _) = self.next_centre()?;
        Ok(match chart {
            Chart::A => (Rational::from_integer(1.into()), c),
            Chart::B => (Rational::zero(), Rational::from_integer(1.into())),
        })
    }
}

/// One blowup of the resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub centre_index: u32,
    pub multiplicity: u32,
    pub proximate_to: BTreeSet<u32>,
    pub satellite: bool,
    pub chart: Chart,
    pub translation: Rational,
}

/// Blow up the origin of the current chart.
pub fn blowup_step(state: &ChartState) -> Result<(ChartState, StepRecord)> {
    let (chart, multiplicity) = state.chart_choice()?;
    let new_label = DivisorLabel(state.level + 1);
    let (us, vs, translation, u_axis, v_axis) = match chart {
        Chart::A => {
            let ratio = state.vs.divide(&state.us)?;
            let c = ratio.coeff(0)?;
            let vs = ratio.sub(&TruncatedSeries::constant(c.clone(), ratio.precision()));
            let v_axis = if c.is_zero() { state.v_axis } else { None };
            (state.us.clone(), vs, c, Some(new_label), v_axis)
        }
        Chart::B => {
            let ratio = state.us.divide(&state.vs)?;
            let c = ratio.coeff(0)?;
            let us = ratio.sub(&TruncatedSeries::constant(c.clone(), ratio.precision()));
            let u_axis = if c.is_zero() { state.u_axis } else { None };
            (us, state.vs.clone(), c, u_axis, Some(new_label))
        }
    };
    let proximate_to = state.labels();
    let record = StepRecord {
        centre_index: state.level + 1,
        multiplicity,
        satellite: proximate_to.len() == 2,
        proximate_to,
        chart,
        translation,
    };
    let next = ChartState {
        us,
        vs,
        u_axis,
        v_axis,
        level: state.level + 1,
    };
    Ok((next, record))
}

/// Output of [`resolve`].
#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionData {
    pub steps: Vec<StepRecord>,
    pub final_state: ChartState,
}

impl ResolutionData {
    pub fn r(&self) -> usize {
        self.steps.len()
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.steps.iter().map(|s| s.multiplicity).collect()
    }

    pub fn chart_path(&self) -> ChartPath {
        ChartPath {
            steps: self
                .steps
                .iter()
                .map(|s| (s.chart, s.translation.clone()))
                .collect(),
        }
    }

    /// Is `p_j` proximate to `p_i` (1-based)?
    pub fn is_proximate(&self, j: usize, i: usize) -> bool {
        self.steps[j - 1].proximate_to.contains(&(i as u32))
    }
}

pub fn resolve(branch: &Branch, max_steps: usize) -> Result<ResolutionData> {
    let mut state = ChartState::initial(branch);
    let mut steps = Vec::new();
    while !state.is_resolved() {
        if steps.len() >= max_steps {
            return Err(Error::MaxSteps(max_steps));
        }
        let (next, record) = blowup_step(&state)?;
        steps.push(record);
        state = next;
    }
    Ok(ResolutionData {
        steps,
        final_state: state,
    })
}

/// Weighted dual graph of the exceptional divisor with the strict-transform
/// arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    /// `(E_i, E_i . E_i)` in blowup order.
    pub vertices: Vec<(DivisorLabel, i64)>,
    /// `(i, j)` with `i < j`.
    pub edges: BTreeSet<(u32, u32)>,
    pub arrow: DivisorLabel,
}

impl DualGraph {
    pub fn weights(&self) -> Vec<i64> {
        self.vertices.iter().map(|(_, w)| *w).collect()
    }

    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        if self.edges.len() + 1 != n {
            return false;
        }
        // union-find connectivity
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            p[i] = r;
            r
        }
        for (a, b) in &self.edges {
            let ra = find(&mut parent, *a as usize);
            let rb = find(&mut parent, *b as usize);
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    /// DOT rendering with the strict transform as the point node `G`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dual {\n");
        for (label, w) in &self.vertices {
            out.push_str(&format!("{label} [label=\"{label} ({w})\"];\n"));
        }
        out.push_str("G [shape=point];\n");
        for (i, j) in &self.edges {
            out.push_str(&format!("E{i} -- E{j};\n"));
        }
        out.push_str(&format!("G -- {};\n", self.arrow));
        out.push_str("}\n");
        out
    }
}

pub fn dual_graph(rd: &ResolutionData) -> DualGraph {
    let r = rd.r();
    let vertices = (1..=r)
        .map(|i| {
            let later = (i + 1..=r).filter(|&k| rd.is_proximate(k, i)).count() as i64;
            (DivisorLabel(i as u32), -1 - later)
        })
        .collect();
    let mut edges = BTreeSet::new();
    for j in 1..=r {
        for i in 1..j {
            if rd.is_proximate(j, i) && !(j + 1..=r).any(|k| rd.is_proximate(k, i)) {
                edges.insert((i as u32, j as u32));
            }
        }
    }
    DualGraph {
        vertices,
        edges,
        arrow: DivisorLabel(r as u32),
    }
}

/// Lower-triangular proximity matrix: `1` on the diagonal, `-1` at `(j, i)`
/// when `p_j` is proximate to `p_i`.
pub fn proximity_matrix(rd: &ResolutionData) -> Vec<Vec<i64>> {
    let r = rd.r();
    (1..=r)
        .map(|j| {
            (1..=r)
                .map(|i| {
                    if i == j {
                        1
                    } else if i < j && rd.is_proximate(j, i) {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}
