//! Classical invariants of a branch read from its Puiseux support, and the
//! equisingularity decision.
//!
//! The characteristic-exponent path here never touches the blowup engine, so
//! the two can serve as oracles for each other.

use std::fmt;

use num::integer::Integer;

use crate::branch::Branch;
use crate::error::{Error, Result};
use crate::resolution::{dual_graph, resolve, DualGraph, ResolutionData, DEFAULT_MAX_STEPS};

/// `(n; beta_1, ..., beta_g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharExponents {
    pub n: u32,
    pub betas: Vec<u32>,
}

impl CharExponents {
    /// `e_0 = n, e_i = gcd(e_{i-1}, beta_i)`.
    pub fn gcd_chain(&self) -> Vec<u32> {
        let mut chain = vec![self.n];
        for b in &self.betas {
            let last = *chain.last().unwrap_or(&self.n);
            chain.push(last.gcd(b));
        }
        chain
    }
}

impl fmt::Display for CharExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} betas={}", self.n, list(&self.betas))
    }
}

pub(crate) fn list<T: fmt::Display>(items: &[T]) -> String {
    let inner: Vec<String> = items.iter().map(|v| v.to_string()).collect();
    format!("[{}]", inner.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSet {
    pub char_exponents: CharExponents,
    pub mult_seq: Vec<u32>,
    pub semigroup_gens: Vec<u64>,
    pub delta: u64,
    pub milnor: u64,
}

pub fn char_exponents(branch: &Branch) -> Result<CharExponents> {
    let n = branch.monomial_x().ok_or(Error::NonMonomialX)?;
    let ys = branch.ys();
    if n == 1 {
        return Ok(CharExponents { n, betas: Vec::new() });
    }
    match ys.order() {
        Some(o) if o < n => return Err(Error::NotPuiseuxNormal { n, y_order: o }),
        None => return Err(Error::NotThroughOrigin),
        _ => {}
    }
    let mut e = n;
    let mut betas = Vec::new();
    for (k, _) in ys.terms() {
        if e == 1 {
            break;
        }
        let g = e.gcd(&k);
        if g < e {
            betas.push(k);
            e = g;
        }
    }
    if e != 1 {
        return Err(Error::NonPrimitive { gcd: e });
    }
    Ok(CharExponents { n, betas })
}

/// Multiplicity sequence by Euclidean divisions on
/// `(beta_1, n), (beta_2 - beta_1, e_1), ...`; each quotient `q` of a division
/// by `d` contributes `q` copies of `d`.
pub fn mult_seq_from_char(c: &CharExponents) -> Vec<u32> {
    if c.betas.is_empty() {
        return vec![1];
    }
    let mut seq = Vec::new();
    let mut prev_beta = 0;
    let mut e = c.n;
    for &beta in &c.betas {
        let (mut a, mut b) = (beta - prev_beta, e);
        while b != 0 {
            let q = a / b;
            seq.extend(std::iter::repeat_n(b, q as usize));
            (a, b) = (b, a % b);
        }
        prev_beta = beta;
        e = e.gcd(&beta);
    }
    seq
}

/// Minimal generators of the value semigroup.
pub fn semigroup(c: &CharExponents) -> Vec<u64> {
    let mut gens = vec![c.n as u64];
    let chain = c.gcd_chain();
    for (i, &beta) in c.betas.iter().enumerate() {
        let next = if i == 0 {
            beta as u64
        } else {
            let prev = gens[i];
            let ratio = (chain[i - 1] / chain[i]) as u64;
            ratio * prev + beta as u64 - c.betas[i - 1] as u64
        };
        gens.push(next);
    }
    gens
}

pub fn delta_from_multiplicities(mults: &[u32]) -> u64 {
    mults
        .iter()
        .map(|&m| m as u64 * (m as u64).saturating_sub(1) / 2)
        .sum()
}

/// `(delta, milnor)` from the multiplicities of a resolution.
pub fn delta_mu(rd: &ResolutionData) -> (u64, u64) {
    let delta = delta_from_multiplicities(&rd.multiplicities());
    (delta, 2 * delta)
}

/// Invariants computed along the characteristic-exponent path only.
pub fn invariant_set(branch: &Branch) -> Result<InvariantSet> {
    let ce = char_exponents(branch)?;
    let mult_seq = mult_seq_from_char(&ce);
    let delta = delta_from_multiplicities(&mult_seq);
    Ok(InvariantSet {
        semigroup_gens: semigroup(&ce),
        char_exponents: ce,
        mult_seq,
        delta,
        milnor: 2 * delta,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    IdenticalGraphs,
    Mismatch {
        field: String,
        left: String,
        right: String,
    },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::IdenticalGraphs => {
                write!(f, "dual graphs identical under blowup-order labeling")
            }
            Certificate::Mismatch { field, left, right } => {
                write!(f, "{field} differs ({left} vs {right})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquisingularityVerdict {
    pub equal: bool,
    pub certificate: Certificate,
}

/// Compare two dual graphs vertex by vertex under the blowup-order labeling.
pub fn compare_graphs(a: &DualGraph, b: &DualGraph) -> EquisingularityVerdict {
    let mismatch = |field: &str, left: String, right: String| EquisingularityVerdict {
        equal: false,
        certificate: Certificate::Mismatch {
            field: field.to_string(),
            left,
            right,
        },
    };
    if a.vertices.len() != b.vertices.len() {
        return mismatch(
            "r",
            a.vertices.len().to_string(),
            b.vertices.len().to_string(),
        );
    }
    for ((la, wa), (_, wb)) in a.vertices.iter().zip(&b.vertices) {
        if wa != wb {
            return mismatch(&format!("weight of {la}"), wa.to_string(), wb.to_string());
        }
    }
    if a.edges != b.edges {
        let fmt_edges = |g: &DualGraph| {
            let parts: Vec<String> = g.edges.iter().map(|(i, j)| format!("E{i}-E{j}")).collect();
            format!("{{{}}}", parts.join(","))
        };
        return mismatch("edges", fmt_edges(a), fmt_edges(b));
    }
    if a.arrow != b.arrow {
        return mismatch("arrow", a.arrow.to_string(), b.arrow.to_string());
    }
    EquisingularityVerdict {
        equal: true,
        certificate: Certificate::IdenticalGraphs,
    }
}

pub fn equisingular(a: &Branch, b: &Branch) -> Result<EquisingularityVerdict> {
    let ga = dual_graph(&resolve(a, DEFAULT_MAX_STEPS)?);
    let gb = dual_graph(&resolve(b, DEFAULT_MAX_STEPS)?);
    Ok(compare_graphs(&ga, &gb))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn branch(src: &str) -> Branch {
        Branch::parse(src).unwrap()
    }

    fn ce(n: u32, betas: &[u32]) -> CharExponents {
        CharExponents {
            n,
            betas: betas.to_vec(),
        }
    }

    #[test]
    fn exponents_from_support() {
        assert_eq!(char_exponents(&branch("x = t^2\ny = t^3")).unwrap(), ce(2, &[3]));
        assert_eq!(
            char_exponents(&branch("x = t^4\ny = t^6 + t^7")).unwrap(),
            ce(4, &[6, 7])
        );
        assert_eq!(char_exponents(&branch("x = t\ny = t^5")).unwrap(), ce(1, &[]));
        assert_eq!(
            char_exponents(&branch("x = t^4\ny = t^4 + t^6 + t^8 + t^9")).unwrap(),
            ce(4, &[6, 9])
        );
        assert_eq!(
            char_exponents(&branch("x = t^2\ny = t")),
            Err(Error::NotPuiseuxNormal { n: 2, y_order: 1 })
        );
    }

    #[test]
    fn euclidean_multiplicities() {
        assert_eq!(mult_seq_from_char(&ce(2, &[3])), vec![2, 1, 1]);
        assert_eq!(mult_seq_from_char(&ce(1, &[])), vec![1]);
        assert_eq!(mult_seq_from_char(&ce(4, &[6, 7])), vec![4, 2, 2, 1, 1]);
        assert_eq!(mult_seq_from_char(&ce(3, &[4])), vec![3, 1, 1, 1]);
        assert_eq!(mult_seq_from_char(&ce(2, &[5])), vec![2, 2, 1, 1]);
    }

    #[test]
    fn semigroup_generators() {
        assert_eq!(semigroup(&ce(2, &[3])), vec![2, 3]);
        assert_eq!(semigroup(&ce(1, &[])), vec![1]);
        assert_eq!(semigroup(&ce(4, &[6, 7])), vec![4, 6, 13]);
    }

    #[test]
    fn delta_and_milnor() {
        let rd = resolve(&branch("x = t^2\ny = t^3"), DEFAULT_MAX_STEPS).unwrap();
        assert_eq!(delta_mu(&rd), (1, 2));
        let rd = resolve(&branch("x = t\ny = t"), DEFAULT_MAX_STEPS).unwrap();
        assert_eq!(delta_mu(&rd), (0, 0));
        let b = branch("x = t^4\ny = t^6 + t^7");
        let rd = resolve(&b, DEFAULT_MAX_STEPS).unwrap();
        assert_eq!(delta_mu(&rd).0, invariant_set(&b).unwrap().delta);
    }

    #[test]
    fn verdicts() {
        let cusp = branch("x = t^2\ny = t^3");
        let v = equisingular(&cusp, &branch("x = t^2\ny = t^3 + t^4")).unwrap();
        assert!(v.equal);
        assert_eq!(v.certificate, Certificate::IdenticalGraphs);
        let v = equisingular(&cusp, &branch("x = t^4\ny = t^6 + t^7")).unwrap();
        assert!(!v.equal);
        assert_eq!(v.certificate.to_string(), "r differs (3 vs 5)");
        assert!(equisingular(&cusp, &cusp).unwrap().equal);
    }

    #[test]
    fn weight_mismatch_certificate() {
        // both have r = 4
        let a = branch("x = t^3\ny = t^4");
        let b = branch("x = t^2\ny = t^5");
        let v = equisingular(&a, &b).unwrap();
        assert!(!v.equal);
        assert!(matches!(v.certificate, Certificate::Mismatch { .. }));
    }
}
