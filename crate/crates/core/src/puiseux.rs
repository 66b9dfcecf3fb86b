//! Newton-Puiseux expansion of a single branch with rational coefficients.

use num::integer::Integer;
use num::{BigInt, One, Signed, Zero};

use crate::branch::Branch;
use crate::error::{Error, Result};
use crate::poly::BivarPoly;
use crate::series::{Rational, TruncatedSeries};

/// One ramified substitution `w = s^q`, `Y = s^p (c + Y')`.
#[derive(Debug, Clone, PartialEq)]
struct Substitution {
    q: u32,
    p: u32,
    c: Rational,
}

fn rational_root(alpha: &Rational, q: u32) -> Option<Rational> {
    if q == 1 {
        return Some(alpha.clone());
    }
    if alpha.is_negative() && q.is_multiple_of(2) {
        return None;
    }
    let root = |v: &BigInt| -> Option<BigInt> {
        let r = v.abs().nth_root(q);
        (num::pow::pow(r.clone(), q as usize) == v.abs()).then_some(r)
    };
    let num = root(alpha.numer())?;
    let den = root(alpha.denom())?;
    let value = Rational::new(num, den);
    Some(if alpha.is_negative() { -value } else { value })
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Find the single Newton polygon edge of `g` and the rational root of its
/// edge equation.
fn edge_substitution(g: &BivarPoly) -> Result<(Substitution, u32)> {
    let j_axis = g
        .order_on_y_axis()
        .ok_or_else(|| Error::Reducible("x divides the polynomial".into()))?;
    let i_axis = g
        .order_on_x_axis()
        .ok_or_else(|| Error::Reducible("the polynomial vanishes on a coordinate axis".into()))?;
    for ((i, j), _) in g.terms() {
        if j < j_axis && (i as u64) * (j_axis as u64) + (j as u64) * (i_axis as u64) < (i_axis as u64) * (j_axis as u64) {
            return Err(Error::Reducible(
                "Newton polygon has more than one edge".into(),
            ));
        }
    }
    let mult = i_axis.gcd(&j_axis);
    let q = j_axis / mult;
    let p = i_axis / mult;
    let a0 = g.coeff(0, j_axis);
    let a1 = g.coeff(p, j_axis - q);
    let alpha = -a1 / (&a0 * Rational::from_integer(BigInt::from(mult)));
    for k in 0..=mult {
        let expect = &a0
            * Rational::from_integer(binomial(mult, k))
            * num::pow::pow(-alpha.clone(), k as usize);
        if g.coeff(k * p, j_axis - k * q) != expect {
            return Err(Error::Reducible(
                "edge polynomial has more than one distinct root".into(),
            ));
        }
    }
    let c = rational_root(&alpha, q).ok_or_else(|| {
        Error::IrrationalRoot(format!("edge equation c^{q} = {alpha} has no rational solution"))
    })?;
    Ok((Substitution { q, p, c }, i_axis * q))
}

/// Solve `g(s, Y(s)) = 0` with `Y(0) = 0` when `dg/dY(0, 0) != 0`.
fn solve_smooth(g: &BivarPoly, precision: u32) -> Result<TruncatedSeries> {
    let slope = g.coeff(0, 1);
    if slope.is_zero() {
        return Err(Error::Reducible("singular point after the last edge".into()));
    }
    let s = TruncatedSeries::monomial(1, Rational::one(), precision);
    let mut y = TruncatedSeries::zero(precision);
    for _ in 0..=precision {
        let residual = g.eval_series(&s, &y).truncate(precision);
        if residual.is_zero_to_precision() {
            return Ok(y);
        }
        y = y.sub(&residual.scale(&slope.recip())).truncate(precision);
    }
    Err(Error::PrecisionExhausted(
        "fixed-point iteration did not settle".into(),
    ))
}

/// Expand the branch of `f` at the origin as `(t^n, y(t))` with
/// `f(x(t), y(t)) = 0 mod t^precision`.
pub fn newton_puiseux(f: &BivarPoly, n_max: u32, precision: u32) -> Result<Branch> {
    if !f.coeff(0, 0).is_zero() {
        return Err(Error::NotThroughOrigin);
    }
    if f.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    let mut g = f.clone();
    let mut subs: Vec<Substitution> = Vec::new();
    let mut n = 1u32;
    loop {
        match g.order_on_y_axis() {
            Some(1) => break,
            Some(_) => {}
            None => return Err(Error::Reducible("x divides the polynomial".into())),
        }
        let (sub, shift) = edge_substitution(&g)?;
        n = n.saturating_mul(sub.q);
        if n > n_max {
            return Err(Error::RamificationLimit { n, limit: n_max });
        }
        g = g.puiseux_substitute(sub.q, sub.p, &sub.c, shift)?;
        subs.push(sub);
    }

    let mut y = solve_smooth(&g, precision)?;
    let mut scale = 1u32;
    for sub in subs.iter().rev() {
        let lifted = y.add(&TruncatedSeries::constant(sub.c.clone(), y.precision()));
        y = lifted.shift_up(sub.p * scale).truncate(precision);
        scale *= sub.q;
    }
    let y = y.with_precision(precision);
    let x = TruncatedSeries::monomial(n, Rational::one(), precision.max(n + 1));
    let residual = f.eval_series(&x, &y);
    if residual.order().is_some_and(|o| o < precision) {
        return Err(Error::PrecisionExhausted(format!(
            "residual of order {} below requested precision {precision}",
            residual.order().unwrap_or(0)
        )));
    }
    Branch::puiseux(n, y, "").map_err(|e| match e {
        Error::NonPrimitive { .. } => Error::Reducible("expansion is not primitive".into()),
        other => other,
    })
}
