//! Branch parametrizations `(x(t), y(t))` and their file format.

use std::fmt;
use std::ops::{Add, Sub};

use num::complex::Complex64;
use num::integer::Integer;
use num::{One, Signed};

use crate::error::{Error, Result};
use crate::parse::{content_lines, parse_sum, Cursor};
use crate::series::{Rational, TruncatedSeries};

/// A point of `C^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub x: Complex64,
    pub y: Complex64,
}

impl ComplexPoint {
    pub const ORIGIN: ComplexPoint = ComplexPoint {
        x: Complex64::new(0.0, 0.0),
        y: Complex64::new(0.0, 0.0),
    };

    pub fn new(x: Complex64, y: Complex64) -> Self {
        ComplexPoint { x, y }
    }

    pub fn real(x: f64, y: f64) -> Self {
        ComplexPoint::new(Complex64::new(x, 0.0), Complex64::new(y, 0.0))
    }

    /// Euclidean norm in `R^4`.
    pub fn norm(&self) -> f64 {
        (self.x.norm_sqr() + self.y.norm_sqr()).sqrt()
    }

    pub fn dist(&self, other: &ComplexPoint) -> f64 {
        (*self - *other).norm()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn scale(&self, s: f64) -> ComplexPoint {
        ComplexPoint::new(self.x * s, self.y * s)
    }

    pub fn conj(&self) -> ComplexPoint {
        ComplexPoint::new(self.x.conj(), self.y.conj())
    }
}

impl Add for ComplexPoint {
    type Output = ComplexPoint;
    fn add(self, o: ComplexPoint) -> ComplexPoint {
        ComplexPoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for ComplexPoint {
    type Output = ComplexPoint;
    fn sub(self, o: ComplexPoint) -> ComplexPoint {
        ComplexPoint::new(self.x - o.x, self.y - o.y)
    }
}

/// An irreducible germ given by a primitive parametrization through the
/// origin.
#[derive(Clone, PartialEq, Eq)]
pub struct Branch {
    xs: TruncatedSeries,
    ys: TruncatedSeries,
    label: String,
}

impl Branch {
    /// Validates orders and primitivity. Does not normalize.
    pub fn new(xs: TruncatedSeries, ys: TruncatedSeries, label: impl Into<String>) -> Result<Self> {
        match (xs.order(), ys.order()) {
            (Some(a), Some(b)) if a >= 1 && b >= 1 => {}
            _ => return Err(Error::NotThroughOrigin),
        }
        let gcd = xs
            .terms()
            .chain(ys.terms())
            .fold(0u32, |g, (k, _)| g.gcd(&k));
        if gcd != 1 {
            return Err(Error::NonPrimitive { gcd });
        }
        Ok(Branch {
            xs,
            ys,
            label: label.into(),
        })
    }

    /// `(t^n, ys)` normalized as for parsed branches.
    pub fn puiseux(n: u32, ys: TruncatedSeries, label: impl Into<String>) -> Result<Self> {
        let precision = ys.precision();
        let xs = TruncatedSeries::monomial(n, Rational::one(), precision.max(n + 1));
        Ok(Branch::new(xs, ys, label)?.normalized())
    }

    pub fn xs(&self) -> &TruncatedSeries {
        &self.xs
    }

    pub fn ys(&self) -> &TruncatedSeries {
        &self.ys
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `n` when `x = t^n`.
    pub fn monomial_x(&self) -> Option<u32> {
        let mut it = self.xs.terms();
        match (it.next(), it.next()) {
            (Some((n, c)), None) if c.is_one() => Some(n),
            _ => None,
        }
    }

    pub fn precision(&self) -> u32 {
        self.xs.precision().min(self.ys.precision())
    }

    /// Re-declare the stored terms as the full expansion up to `precision`.
    ///
    /// Valid for branches whose parametrization is polynomial, such as every
    /// parsed branch.
    pub fn extend_precision(&self, precision: u32) -> Branch {
        let precision = precision.max(self.precision());
        Branch {
            xs: self.xs.with_precision(precision),
            ys: self.ys.with_precision(precision),
            label: self.label.clone(),
        }
    }

    /// Apply `t -> -t` when `x = t^n` with `n` even and the first `y`
    /// coefficient at an odd exponent is negative.
    pub fn normalized(self) -> Branch {
        let Some(n) = self.monomial_x() else {
            return self;
        };
        if n % 2 != 0 {
            return self;
        }
        let first_odd = self.ys.terms().find(|(k, _)| k % 2 == 1);
        match first_odd {
            Some((_, c)) if c.is_negative() => {
                let minus_one = -Rational::one();
                Branch {
                    xs: self.xs.clone(),
                    ys: self.ys.rescale_variable(&minus_one),
                    label: self.label,
                }
            }
            _ => self,
        }
    }

    pub fn eval(&self, t: Complex64) -> ComplexPoint {
        ComplexPoint::new(self.xs.eval(t), self.ys.eval(t))
    }

    pub fn is_polynomial(&self) -> bool {
        let fits = |s: &TruncatedSeries| s.max_exponent().is_none_or(|m| m < s.precision());
        fits(&self.xs) && fits(&self.ys)
    }

    /// Parse the line-oriented branch format:
    ///
    /// ```text
    /// # cusp
    /// x = t^2
    /// y = t^3 + 1/2 t^5
    /// ```
    pub fn parse(text: &str) -> Result<Branch> {
        Self::parse_labeled(text, "")
    }

    pub fn parse_labeled(text: &str, label: &str) -> Result<Branch> {
        let mut xs: Option<Vec<(u32, Rational)>> = None;
        let mut ys: Option<Vec<(u32, Rational)>> = None;
        for (line, col, body) in content_lines(text) {
            let mut cur = Cursor::new(body, line, col);
            let name = cur.assignment()?;
            let slot_taken = match name {
                'x' => xs.is_some(),
                'y' => ys.is_some(),
                other => {
                    return Err(Error::Syntax {
                        line,
                        column: col + 1,
                        message: format!("unknown line '{other} = ...', expected x or y"),
                    })
                }
            };
            if slot_taken {
                return Err(Error::Syntax {
                    line,
                    column: col + 1,
                    message: format!("duplicate '{name}' line"),
                });
            }
            let terms: Vec<(u32, Rational)> = parse_sum(&mut cur, &['t'])?
                .into_iter()
                .map(|t| (t.exponents[0], t.coeff))
                .collect();
            if name == 'x' {
                xs = Some(terms);
            } else {
                ys = Some(terms);
            }
        }
        let xterms = xs.ok_or(Error::Syntax {
            line: 1,
            column: 1,
            message: "missing 'x = ...' line".into(),
        })?;
        let yterms = ys.ok_or(Error::Syntax {
            line: 1,
            column: 1,
            message: "missing 'y = ...' line".into(),
        })?;
        let max_exp = xterms
            .iter()
            .chain(yterms.iter())
            .map(|(k, _)| *k)
            .max()
            .unwrap_or(0);
        let precision = max_exp + 1;
        let xs = TruncatedSeries::from_terms(xterms, precision);
        let ys = TruncatedSeries::from_terms(yterms, precision);
        let branch = Branch::new(xs, ys, label)?;
        if branch.monomial_x().is_none() {
            return Err(Error::NonMonomialX);
        }
        Ok(branch.normalized())
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "x = {}", self.xs)?;
        write!(f, "y = {}", self.ys)
    }
}

impl fmt::Debug for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Branch({:?}, {:?})", self.xs, self.ys)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, rat_int};

    #[test]
    fn parse_cusp() {
        let b = Branch::parse("x = t^2\ny = t^3").unwrap();
        assert_eq!(b.monomial_x(), Some(2));
        assert_eq!(b.ys().terms().count(), 1);
        assert_eq!(b.precision(), 4);
    }

    #[test]
    fn parse_fraction() {
        let b = Branch::parse("x = t^2\ny = t^3 + 1/2 t^5").unwrap();
        let ys: Vec<_> = b.ys().terms().map(|(k, c)| (k, c.clone())).collect();
        assert_eq!(ys, vec![(3, rat_int(1)), (5, rat(1, 2))]);
        assert_eq!(b.precision(), 6);
    }

    #[test]
    fn parse_rejects_non_primitive() {
        assert_eq!(
            Branch::parse("x = t^2\ny = t^4"),
            Err(Error::NonPrimitive { gcd: 2 })
        );
    }

    #[test]
    fn parse_rejects_non_monomial_x() {
        assert_eq!(
            Branch::parse("x = t^2 + t^3\ny = t^3"),
            Err(Error::NonMonomialX)
        );
        assert_eq!(Branch::parse("x = 2 t^2\ny = t^3"), Err(Error::NonMonomialX));
    }

    #[test]
    fn parse_rejects_constant_term() {
        assert_eq!(
            Branch::parse("x = t\ny = 1 + t"),
            Err(Error::NotThroughOrigin)
        );
    }

    #[test]
    fn parse_reports_position() {
        match Branch::parse("x = t^2\ny = t^3 +") {
            Err(Error::Syntax { line, column, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(column, 10);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Branch::parse("x = t^2"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn sign_normalization() {
        let b = Branch::parse("x = t^2\ny = -t^3 + t^4").unwrap();
        let c = Branch::parse("x = t^2\ny = t^3 + t^4").unwrap();
        assert_eq!(b, c);
        let odd = Branch::parse("x = t^3\ny = -t^4").unwrap();
        assert!(odd.ys().is_negative_leading());
    }

    #[test]
    fn evaluation() {
        let b = Branch::parse("x = t^2\ny = t^3 + 1/2 t^5").unwrap();
        let p = b.eval(Complex64::new(0.1, 0.0));
        assert!((p.x.re - 0.01).abs() < 1e-15);
        assert!((p.y.re - 0.001005).abs() < 1e-15);
        assert_eq!(b.eval(Complex64::new(0.0, 0.0)), ComplexPoint::ORIGIN);
    }
}
