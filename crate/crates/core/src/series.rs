//! Exact rationals and power series in one variable truncated at an explicit
//! precision.

use std::collections::BTreeMap;
use std::fmt;

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient. Always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Precision used for series known exactly (polynomials).
pub const EXACT: u32 = u32::MAX / 4;

/// A power series `sum c_k t^k` whose coefficients are known for `k < precision`.
///
/// Absent exponents below the precision are zero; no coefficient at or above
/// the precision is ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    terms: BTreeMap<u32, Rational>,
    precision: u32,
}

impl TruncatedSeries {
    pub fn zero(precision: u32) -> Self {
        TruncatedSeries {
            terms: BTreeMap::new(),
            precision,
        }
    }

    pub fn from_terms<I>(terms: I, precision: u32) -> Self
    where
        I: IntoIterator<Item = (u32, Rational)>,
    {
        let mut map: BTreeMap<u32, Rational> = BTreeMap::new();
        for (k, c) in terms {
            if k >= precision {
                continue;
            }
            let entry = map.entry(k).or_insert_with(Rational::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        TruncatedSeries {
            terms: map,
            precision,
        }
    }

    pub fn monomial(exponent: u32, coeff: Rational, precision: u32) -> Self {
        Self::from_terms([(exponent, coeff)], precision)
    }

    pub fn constant(c: Rational, precision: u32) -> Self {
        Self::monomial(0, c, precision)
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Lowest exponent carrying a nonzero coefficient, or `None` when the
    /// series is zero up to its precision.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    /// Order as a lower bound: the precision when no term is visible.
    fn order_bound(&self) -> u32 {
        self.order().unwrap_or(self.precision)
    }

    pub fn max_exponent(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^k`; fails if `k` is beyond the known precision.
    pub fn coeff(&self, k: u32) -> Result<Rational> {
        if k >= self.precision {
            return Err(Error::PrecisionExhausted(format!(
                "coefficient of t^{k} requested, precision is {}",
                self.precision
            )));
        }
        Ok(self.coeff_or_zero(k))
    }

    fn coeff_or_zero(&self, k: u32) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading coefficient and its exponent.
    pub fn leading(&self) -> Option<(u32, &Rational)> {
        self.terms.iter().next().map(|(k, c)| (*k, c))
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        Self::from_terms(self.terms.clone(), precision)
    }

    /// Truncate to a smaller precision (no-op if already below).
    pub fn truncate(&self, precision: u32) -> Self {
        self.with_precision(precision.min(self.precision))
    }

    pub fn is_polynomial_exact(&self) -> bool {
        self.precision >= EXACT
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        Self::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(k, c)| (*k, c.clone())),
            precision,
        )
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
            precision: self.precision,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.precision);
        }
        TruncatedSeries {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
            precision: self.precision,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let precision = self
            .precision
            .saturating_add(other.order_bound())
            .min(other.precision.saturating_add(self.order_bound()))
            .min(EXACT);
        let mut out: BTreeMap<u32, Rational> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let k = i + j;
                if k >= precision {
                    break;
                }
                *out.entry(k).or_insert_with(Rational::zero) += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        TruncatedSeries {
            terms: out,
            precision,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(Rational::one(), EXACT);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `t^k`.
    pub fn shift_up(&self, k: u32) -> Self {
        TruncatedSeries {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            precision: self.precision.saturating_add(k).min(EXACT),
        }
    }

    /// Divide by `t^k`; requires every stored exponent to be at least `k`.
    pub fn shift_down(&self, k: u32) -> Result<Self> {
        if let Some(o) = self.order() {
            if o < k {
                return Err(Error::NotPowerSeries {
                    numerator: o,
                    denominator: k,
                });
            }
        }
        if self.precision < k {
            return Err(Error::PrecisionExhausted(format!(
                "cannot divide by t^{k} at precision {}",
                self.precision
            )));
        }
        Ok(TruncatedSeries {
            terms: self.terms.iter().map(|(e, c)| (e - k, c.clone())).collect(),
            precision: if self.precision >= EXACT {
                EXACT
            } else {
                self.precision - k
            },
        })
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff_or_zero(0)
    }

    /// Substitute `t -> c t`.
    pub fn rescale_variable(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut last = 0;
        let mut out = Vec::with_capacity(self.terms.len());
        for (k, v) in &self.terms {
            while last < *k {
                pw *= c;
                last += 1;
            }
            out.push((*k, v * &pw));
        }
        Self::from_terms(out, self.precision)
    }

    /// Substitute `t -> t^q`.
    pub fn ramify(&self, q: u32) -> Self {
        TruncatedSeries {
            terms: self.terms.iter().map(|(e, c)| (e * q, c.clone())).collect(),
            precision: self.precision.saturating_mul(q).min(EXACT),
        }
    }

    /// Exact quotient `self / divisor`.
    ///
    /// The result precision is `min(T_a, T_b + ord a - ord b) - ord b`, the
    /// largest precision at which no unknown coefficient is read.
    pub fn divide(&self, divisor: &Self) -> Result<Self> {
        let ob = divisor.order().ok_or_else(|| {
            Error::PrecisionExhausted(format!(
                "divisor is zero up to precision {}",
                divisor.precision
            ))
        })?;
        let num = self.shift_down(ob)?;
        let den = divisor.shift_down(ob)?;
        let precision = num
            .precision
            .min(den.precision.saturating_add(num.order_bound()))
            .min(EXACT);
        let lead = den.constant_term();
        let mut q: Vec<Rational> = Vec::new();
        let mut out = BTreeMap::new();
        let limit = if precision >= EXACT {
            // Exact quotient of polynomials: stop once the remainder vanishes
            // is not decidable in general, so cap at the combined degree span.
            let span = num.max_exponent().unwrap_or(0) + 1;
            match den.max_exponent() {
                Some(0) => span,
                _ => {
                    return Err(Error::PrecisionExhausted(
                        "exact division by a non-monomial needs a finite precision".into(),
                    ))
                }
            }
        } else {
            precision
        };
        for k in 0..limit {
            let mut acc = num.coeff_or_zero(k);
            for (j, b) in den.terms.range(1..=k.max(1)).filter(|(j, _)| **j <= k) {
                let qi = &q[(k - j) as usize];
                if !qi.is_zero() {
                    acc -= b * qi;
                }
            }
            let c = acc / &lead;
            if !c.is_zero() {
                out.insert(k, c.clone());
            }
            q.push(c);
        }
        Ok(TruncatedSeries {
            terms: out,
            precision,
        })
    }

    /// Composition `self(inner(t))` for `inner` of positive order.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let k = match inner.order() {
            Some(k) if k >= 1 => k,
            Some(_) => {
                return Err(Error::InvalidArgument(
                    "inner series of a composition must have positive order".into(),
                ))
            }
            None => inner.precision.max(1),
        };
        let outer_cap = self.precision.saturating_mul(k).min(EXACT);
        let inner = inner.truncate(outer_cap);
        let mut acc = Self::zero(EXACT);
        let top = match self.max_exponent() {
            Some(m) => m,
            None => return Ok(Self::zero(outer_cap)),
        };
        for e in (0..=top).rev() {
            acc = acc.mul(&inner).truncate(outer_cap);
            let c = self.coeff_or_zero(e);
            if !c.is_zero() {
                acc = acc.add(&Self::constant(c, EXACT));
            }
        }
        Ok(acc.truncate(outer_cap))
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| **k > 0)
                .map(|(k, c)| (k - 1, c * rat_int(*k as i64))),
            self.precision.saturating_sub(1),
        )
    }

    /// Compositional inverse of a series `a_1 t + ...` with `a_1 != 0`.
    pub fn revert(&self) -> Result<Self> {
        match self.order() {
            Some(1) => {}
            _ => {
                return Err(Error::InvalidArgument(
                    "only series of order exactly 1 can be reverted".into(),
                ))
            }
        }
        let precision = self.precision.min(EXACT);
        if precision >= EXACT {
            return Err(Error::PrecisionExhausted(
                "reversion needs a finite precision".into(),
            ));
        }
        let ident = Self::monomial(1, Rational::one(), precision);
        let a1 = self.coeff_or_zero(1);
        let mut tau = Self::monomial(1, a1.recip(), 2.min(precision));
        let deriv = self.derivative();
        // Newton iteration doubles the number of correct coefficients.
        let mut known = 2u32;
        while known < precision {
            known = (known * 2).min(precision);
            let t = tau.with_precision(known);
            let residual = self.compose(&t)?.sub(&ident).truncate(known);
            let slope = deriv.compose(&t)?.truncate(known);
            let step = residual.divide(&slope)?;
            tau = t.sub(&step).truncate(known);
        }
        Ok(tau.with_precision(precision))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut last: Option<u32> = None;
        for (k, c) in self.terms.iter().rev() {
            if let Some(prev) = last {
                acc *= z.powu(prev - k);
            }
            acc += Complex64::new(rational_to_f64(c), 0.0);
            last = Some(*k);
        }
        if let Some(k) = last {
            acc *= z.powu(k);
        }
        acc
    }

    /// Dense `f64` coefficients `c_0, ..., c_max` for fast numeric evaluation.
    pub fn dense_f64(&self) -> Vec<f64> {
        let len = self.max_exponent().map_or(0, |m| m as usize + 1);
        let mut out = vec![0.0; len];
        for (k, c) in &self.terms {
            out[*k as usize] = rational_to_f64(c);
        }
        out
    }

    pub fn is_negative_leading(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

pub fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

pub fn horner_derivative(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, (k, c)| acc * z + c * k as f64)
}

fn fmt_coeff_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational, mono: &str) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { "-" } else { "+" })?;
    }
    if mono.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{abs}*{mono}")
    }
}

pub(crate) fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Rational,
    mono: &str,
) -> fmt::Result {
    fmt_coeff_term(f, first, c, mono)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let mono = match k {
                0 => String::new(),
                _ => format!("t^{k}"),
            };
            fmt_coeff_term(f, i == 0, c, &mono)?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.precision >= EXACT {
            write!(f, "{self}")
        } else {
            write!(f, "{self} + O(t^{})", self.precision)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(terms: &[(u32, i64)], precision: u32) -> TruncatedSeries {
        TruncatedSeries::from_terms(terms.iter().map(|(k, c)| (*k, rat_int(*c))), precision)
    }

    #[test]
    fn monomial_division() {
        let q = s(&[(3, 1)], 10).divide(&s(&[(2, 1)], 10)).unwrap();
        assert_eq!(q, s(&[(1, 1)], 8));
    }

    #[test]
    fn termwise_shift_division() {
        let q = s(&[(3, 1), (4, 1)], 10).divide(&s(&[(2, 1)], 10)).unwrap();
        assert_eq!(q, s(&[(1, 1), (2, 1)], 8));
    }

    #[test]
    fn geometric_quotient() {
        let a = s(&[(2, 1)], 12);
        let b = s(&[(2, 1), (3, 1)], 12);
        let q = a.divide(&b).unwrap();
        assert_eq!(q.precision(), 10);
        for k in 0..10 {
            let expect = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(q.coeff(k).unwrap(), rat_int(expect));
        }
        let back = b.mul(&q).sub(&a);
        assert!(back.order().is_none_or(|o| o >= q.precision()));
    }

    #[test]
    fn division_errors() {
        assert!(matches!(
            s(&[(1, 1)], 5).divide(&s(&[(2, 1)], 5)),
            Err(Error::NotPowerSeries { .. })
        ));
        assert!(matches!(
            s(&[(1, 1)], 5).divide(&TruncatedSeries::zero(5)),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn reading_beyond_precision_fails() {
        let a = s(&[(1, 1)], 3);
        assert!(a.coeff(2).is_ok());
        assert!(matches!(a.coeff(3), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn reversion_inverts() {
        let a = TruncatedSeries::from_terms(
            [(1, rat_int(2)), (2, rat_int(1)), (5, rat(1, 3))],
            20,
        );
        let inv = a.revert().unwrap();
        let id = a.compose(&inv).unwrap();
        assert_eq!(id, s(&[(1, 1)], id.precision()));
        assert_eq!(id.precision(), 20);
    }

    #[test]
    fn display() {
        let a = TruncatedSeries::from_terms([(3, rat_int(1)), (5, rat(-1, 2))], 6);
        assert_eq!(a.to_string(), "t^3 - 1/2*t^5");
    }
}
