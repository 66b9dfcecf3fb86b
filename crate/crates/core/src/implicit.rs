//! Implicit equation of a polynomial branch by eliminating `t`.

use num::One;

use crate::branch::Branch;
use crate::error::{Error, Result};
use crate::poly::BivarPoly;
use crate::series::Rational;

/// Sylvester matrix of two polynomials in `t` with coefficients in `Q[x, y]`,
/// each given from the highest degree down.
fn sylvester(p: &[BivarPoly], q: &[BivarPoly]) -> Vec<Vec<BivarPoly>> {
    let n = p.len() - 1;
    let d = q.len() - 1;
    let size = n + d;
    let mut m = vec![vec![BivarPoly::zero(); size]; size];
    for row in 0..d {
        for (j, c) in p.iter().enumerate() {
            m[row][row + j] = c.clone();
        }
    }
    for row in 0..n {
        for (j, c) in q.iter().enumerate() {
            m[d + row][row + j] = c.clone();
        }
    }
    m
}

/// Fraction-free (Bareiss) determinant over `Q[x, y]`.
pub fn bareiss_determinant(mut m: Vec<Vec<BivarPoly>>) -> Result<BivarPoly> {
    let size = m.len();
    if size == 0 {
        return Ok(BivarPoly::constant(Rational::one()));
    }
    let mut negate = false;
    let mut prev = BivarPoly::constant(Rational::one());
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(BivarPoly::zero()),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Resultant in `t` of `x - t^n` and `y - ys(t)`, with content 1 and positive
/// leading coefficient (lex, `y > x`).
pub fn implicitize(branch: &Branch) -> Result<BivarPoly> {
    let n = branch.monomial_x().ok_or(Error::NonMonomialX)?;
    if !branch.is_polynomial() {
        return Err(Error::PrecisionExhausted(
            "implicitization needs a polynomial parametrization".into(),
        ));
    }
    let ys = branch.ys();
    let d = ys.max_exponent().ok_or(Error::NotThroughOrigin)?;

    let mut p = vec![BivarPoly::zero(); n as usize + 1];
    p[0] = BivarPoly::constant(Rational::one());
    p[n as usize] = BivarPoly::x().neg();

    let mut q = vec![BivarPoly::zero(); d as usize + 1];
    for (k, c) in ys.terms() {
        q[(d - k) as usize] = BivarPoly::constant(c.clone());
    }
    q[d as usize] = q[d as usize].sub(&BivarPoly::y());

    let res = bareiss_determinant(sylvester(&p, &q))?;
    if res.is_zero() {
        return Err(Error::InvalidArgument("resultant vanished identically".into()));
    }
    Ok(res.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::poly_from_ints;

    fn implicit(src: &str) -> BivarPoly {
        implicitize(&Branch::parse(src).unwrap()).unwrap()
    }

    #[test]
    fn cusp() {
        assert_eq!(implicit("x = t^2\ny = t^3").to_string(), "y^2 - x^3");
    }

    #[test]
    fn line() {
        assert_eq!(implicit("x = t\ny = t").to_string(), "y - x");
    }

    // Expected values computed with an independent computer-algebra resultant.
    #[test]
    fn frozen_resultants() {
        assert_eq!(
            implicit("x = t^2\ny = t^3 + t^4"),
            poly_from_ints(&[((0, 2), 1), ((2, 1), -2), ((4, 0), 1), ((3, 0), -1)])
        );
        assert_eq!(
            implicit("x = t^4\ny = t^6 + t^7"),
            poly_from_ints(&[
                ((0, 4), 1),
                ((3, 2), -2),
                ((5, 1), -4),
                ((6, 0), 1),
                ((7, 0), -1)
            ])
        );
        assert_eq!(
            implicit("x = t^2\ny = t^3 + 1/2 t^5"),
            poly_from_ints(&[((0, 2), 4), ((5, 0), -1), ((4, 0), -4), ((3, 0), -4)])
        );
        assert_eq!(
            implicit("x = t^3\ny = t^5 + t^7"),
            poly_from_ints(&[((0, 3), 1), ((4, 1), -3), ((7, 0), -1), ((5, 0), -1)])
        );
    }

    #[test]
    fn rejects_non_monomial_x() {
        let b = Branch::new(
            crate::series::TruncatedSeries::from_terms(
                [(1, Rational::one()), (2, Rational::one())],
                3,
            ),
            crate::series::TruncatedSeries::from_terms([(2, Rational::one())], 3),
            "",
        )
        .unwrap();
        assert_eq!(implicitize(&b), Err(Error::NonMonomialX));
    }
}
