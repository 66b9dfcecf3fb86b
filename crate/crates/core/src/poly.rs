//! Bivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use num::integer::Integer;
use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::parse::{content_lines, parse_sum, Cursor};
use crate::series::{rat_int, rational_to_f64, write_signed_term, Rational, TruncatedSeries};

/// Polynomial in `x, y`, keyed by `(deg_x, deg_y)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

/// Lexicographic key with `y > x`.
fn lex(k: &(u32, u32)) -> (u32, u32) {
    (k.1, k.0)
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), Rational)>,
    {
        let mut map: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (k, c) in terms {
            *map.entry(k).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        BivarPoly { terms: map }
    }

    pub fn monomial(dx: u32, dy: u32, c: Rational) -> Self {
        Self::from_terms([((dx, dy), c)])
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> Rational {
        self.terms
            .get(&(dx, dy))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    /// Leading term in lex order with `y > x`.
    pub fn leading(&self) -> Option<((u32, u32), &Rational)> {
        self.terms
            .iter()
            .max_by_key(|(k, _)| lex(k))
            .map(|(k, c)| (*k, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(k, c)| (*k, c.clone())),
        )
    }

    pub fn neg(&self) -> Self {
        BivarPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for ((ax, ay), a) in &self.terms {
            for ((bx, by), b) in &other.terms {
                *out.entry((ax + bx, ay + by)).or_insert_with(Rational::zero) += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        BivarPoly { terms: out }
    }

    /// Exact quotient; fails if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let ((dx, dy), dc) = divisor
            .leading()
            .ok_or_else(|| Error::InvalidArgument("division by the zero polynomial".into()))?;
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = BivarPoly::zero();
        while let Some(((rx, ry), rc)) = rem.leading() {
            if rx < dx || ry < dy {
                return Err(Error::InvalidArgument("inexact polynomial division".into()));
            }
            let q = BivarPoly::monomial(rx - dx, ry - dy, rc / &dc);
            rem = rem.sub(&q.mul(divisor));
            quot = quot.add(&q);
        }
        Ok(quot)
    }

    /// Scale to integer coefficients with content 1 and a positive leading
    /// coefficient (lex order, `y > x`).
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let mut factor = Rational::new(lcm, gcd);
        if self.leading().is_some_and(|(_, c)| c.is_negative()) {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Substitute series for `x` and `y`.
    pub fn eval_series(&self, x: &TruncatedSeries, y: &TruncatedSeries) -> TruncatedSeries {
        let max_dx = self.degree_x().unwrap_or(0);
        let max_dy = self.degree_y().unwrap_or(0);
        let mut xp = vec![TruncatedSeries::constant(Rational::one(), crate::series::EXACT)];
        for i in 0..max_dx as usize {
            let next = xp[i].mul(x);
            xp.push(next);
        }
        let mut yp = vec![TruncatedSeries::constant(Rational::one(), crate::series::EXACT)];
        for j in 0..max_dy as usize {
            let next = yp[j].mul(y);
            yp.push(next);
        }
        let mut acc = TruncatedSeries::zero(crate::series::EXACT);
        for ((dx, dy), c) in &self.terms {
            acc = acc.add(&xp[*dx as usize].mul(&yp[*dy as usize]).scale(c));
        }
        acc
    }

    pub fn eval(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|((dx, dy), c)| rational_to_f64(c) * x.powu(*dx) * y.powu(*dy))
            .sum()
    }

    /// `(df/dx, df/dy)` evaluated numerically.
    pub fn gradient(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        let mut gx = Complex64::new(0.0, 0.0);
        let mut gy = Complex64::new(0.0, 0.0);
        for ((dx, dy), c) in &self.terms {
            let c = rational_to_f64(c);
            if *dx > 0 {
                gx += c * *dx as f64 * x.powu(dx - 1) * y.powu(*dy);
            }
            if *dy > 0 {
                gy += c * *dy as f64 * x.powu(*dx) * y.powu(dy - 1);
            }
        }
        (gx, gy)
    }

    /// Order in `y` of `f(0, y)`; `None` if `x` divides `f`.
    pub fn order_on_y_axis(&self) -> Option<u32> {
        self.terms.keys().filter(|k| k.0 == 0).map(|k| k.1).min()
    }

    /// Order in `x` of `f(x, 0)`; `None` if `y` divides `f`.
    pub fn order_on_x_axis(&self) -> Option<u32> {
        self.terms.keys().filter(|k| k.1 == 0).map(|k| k.0).min()
    }

    /// `f(t^q, t^p (c + Y)) / t^shift` as a polynomial in `(t, Y)`.
    pub(crate) fn puiseux_substitute(&self, q: u32, p: u32, c: &Rational, shift: u32) -> Result<Self> {
        let mut out: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for ((dx, dy), a) in &self.terms {
            let weight = dx * q + dy * p;
            if weight < shift {
                return Err(Error::InvalidArgument(
                    "monomial below the Newton polygon edge".into(),
                ));
            }
            let texp = weight - shift;
            // (c + Y)^dy = sum binom(dy, k) c^(dy-k) Y^k
            let mut binom = BigInt::one();
            for k in 0..=*dy {
                let coeff = a
                    * Rational::from_integer(binom.clone())
                    * num::pow::pow(c.clone(), (dy - k) as usize);
                *out.entry((texp, k)).or_insert_with(Rational::zero) += coeff;
                binom = binom * BigInt::from(dy - k) / BigInt::from(k + 1);
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(BivarPoly { terms: out })
    }

    /// Parse `f = <sum of terms in x, y>` (comments and blank lines allowed).
    pub fn parse(text: &str) -> Result<Self> {
        let lines = content_lines(text);
        let mut found: Option<Self> = None;
        for (line, col, body) in lines {
            let mut cur = Cursor::new(body, line, col);
            let name = cur.assignment()?;
            if name != 'f' {
                return Err(Error::Syntax {
                    line,
                    column: col + 1,
                    message: format!("unexpected line '{name} = ...', expected 'f = ...'"),
                });
            }
            if found.is_some() {
                return Err(Error::Syntax {
                    line,
                    column: col + 1,
                    message: "duplicate 'f' line".into(),
                });
            }
            let terms = parse_sum(&mut cur, &['x', 'y'])?;
            found = Some(Self::from_terms(
                terms
                    .into_iter()
                    .map(|t| ((t.exponents[0], t.exponents[1]), t.coeff)),
            ));
        }
        found.ok_or(Error::Syntax {
            line: 1,
            column: 1,
            message: "missing 'f = ...' line".into(),
        })
    }
}

fn monomial_text(dx: u32, dy: u32) -> String {
    let part = |v: char, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    match (dx, dy) {
        (0, _) => part('y', dy),
        (_, 0) => part('x', dx),
        _ => format!("{}*{}", part('x', dx), part('y', dy)),
    }
}

/// Terms in descending lex order (`y > x`), in the polynomial-file grammar.
impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse(lex(k)));
        for (i, k) in keys.into_iter().enumerate() {
            write_signed_term(f, i == 0, &self.terms[k], &monomial_text(k.0, k.1))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn poly_from_ints(terms: &[((u32, u32), i64)]) -> BivarPoly {
    BivarPoly::from_terms(terms.iter().map(|(k, c)| (*k, rat_int(*c))))
}
