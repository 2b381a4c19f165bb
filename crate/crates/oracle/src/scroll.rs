//! Scrolls `S = ⋃_t ⟨ι₁(t), ι₂(t)⟩` and whether their rulings are disjoint.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bipoly::BiPoly;
use crate::curve::{minors_gcd, RationalCurve};
use crate::pairs::{count_rank_drops, saturated_minors, CountOptions, PairCount};
use crate::poly::{rank, QPoly, Q};
use crate::{OracleError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScrollSpec {
    first: RationalCurve,
    second: RationalCurve,
}

impl ScrollSpec {
    /// Rejects mismatched ambients and scrolls whose directrices meet.
    pub fn new(first: RationalCurve, second: RationalCurve) -> Result<Self> {
        if first.ambient() != second.ambient() {
            return Err(OracleError::Precondition(format!(
                "directrices live in P^{} and P^{}",
                first.ambient(),
                second.ambient()
            )));
        }
        let spec = Self { first, second };
        spec.check_rulings()?;
        Ok(spec)
    }

    pub fn from_ints(ambient: usize, first: &[&[i64]], second: &[&[i64]]) -> Result<Self> {
        let to = |c: &[&[i64]]| RationalCurve::unchecked(ambient, c.iter().map(|x| QPoly::from_ints(x)).collect());
        Self::new(to(first)?, to(second)?)
    }

    pub fn ambient(&self) -> usize {
        self.first.ambient()
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.first.degree(), self.second.degree())
    }

    pub fn first(&self) -> &RationalCurve {
        &self.first
    }

    pub fn second(&self) -> &RationalCurve {
        &self.second
    }

    /// Every ruling is a line: `ι₁(t)` and `ι₂(t)` are never proportional.
    fn check_rulings(&self) -> Result<()> {
        let g = minors_gcd(&[self.first.coords().to_vec(), self.second.coords().to_vec()]);
        if g.is_zero() || g.degree() != Some(0) {
            return Err(OracleError::Precondition("ι₁(t) and ι₂(t) coincide for some t".into()));
        }
        let (a, b) = (self.first.at_infinity(), self.second.at_infinity());
        if rank(&[a.point(&Q::zero()), b.point(&Q::zero())]) < 2 {
            return Err(OracleError::Precondition("ι₁ and ι₂ coincide at t = ∞".into()));
        }
        Ok(())
    }
}

/// Why a scroll is or is not skew.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `det[ι₁(t), ι₂(t), ι₁(s), ι₂(s)] = c (t − s)^k` with `k = d₁ + d₂`.
    Identity { constant: String, exponent: u32 },
    /// Rulings over `t` meet the rulings over every root `s` of the polynomial
    /// (coefficients by power of `s`; it does not vanish at `s = t`).
    Fibre { t: String, s_polynomial: Vec<String>, rational_s: Option<String> },
    /// The determinant has too few `(t − s)` factors: rulings meet the ruling at
    /// `t = ∞`.
    Infinity { exponent: u32, expected: u32 },
    /// The determinant vanishes identically: every two rulings meet.
    Coplanar,
    /// Elimination count of meeting ordered pairs (ambient 4).
    Count(PairCount),
    /// The rank-drop locus in ambient 4 is positive dimensional.
    Infinite { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScrollVerdict {
    pub skew: bool,
    pub certificate: Certificate,
}

pub fn scroll_skew_test(spec: &ScrollSpec, opts: CountOptions) -> Result<ScrollVerdict> {
    match spec.ambient() {
        3 => Ok(skew_in_p3(spec)),
        4 => {
            let build = |cs: &[RationalCurve]| (cs[0].integer_coords(), cs[1].integer_coords());
            match count_rank_drops(&[spec.first.clone(), spec.second.clone()], opts, build) {
                Ok(count) => Ok(ScrollVerdict { skew: count.count == 0, certificate: Certificate::Count(count) }),
                Err(OracleError::NotFinite(reason)) => {
                    Ok(ScrollVerdict { skew: false, certificate: Certificate::Infinite { reason } })
                }
                Err(OracleError::Precondition(msg)) if msg.contains("every pair") => {
                    Ok(ScrollVerdict { skew: false, certificate: Certificate::Coplanar })
                }
                Err(e) => Err(e),
            }
        }
        n => Err(OracleError::Precondition(format!("scroll test needs ambient 3 or 4, got {n}"))),
    }
}

fn skew_in_p3(spec: &ScrollSpec) -> ScrollVerdict {
    let (a, b) = (spec.first.integer_coords(), spec.second.integer_coords());
    let (det, k) = saturated_minors(&a, &b).pop().expect("one 4x4 minor");
    if det.is_zero() {
        return ScrollVerdict { skew: false, certificate: Certificate::Coplanar };
    }
    let (d1, d2) = spec.bidegree();
    let expected = (d1 + d2) as u32;
    if let Some(c) = det.as_constant() {
        return if k == expected {
            ScrollVerdict { skew: true, certificate: Certificate::Identity { constant: c.to_string(), exponent: k } }
        } else {
            ScrollVerdict { skew: false, certificate: Certificate::Infinity { exponent: k, expected } }
        };
    }
    ScrollVerdict { skew: false, certificate: fibre_certificate(&det) }
}

/// Finds a small integer `t₀` where `det(t₀, s)` is a nonconstant polynomial
/// not vanishing at `s = t₀`.
fn fibre_certificate(det: &BiPoly) -> Certificate {
    for n in 0i64.. {
        for t0 in [Q::from_integer(n.into()), Q::from_integer((-n).into())] {
            let m = det.at_t(&t0);
            if m.degree().unwrap_or(0) == 0 || m.eval(&t0).is_zero() {
                continue;
            }
            let rational_s = (m.degree() == Some(1)).then(|| (-m.coeff(0) / m.coeff(1)).to_string());
            return Certificate::Fibre {
                t: t0.to_string(),
                s_polynomial: m.coeffs().iter().map(Q::to_string).collect(),
                rational_s,
            };
        }
    }
    unreachable!("a nonconstant saturated determinant has a good fibre")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_scroll_is_skew() {
        let s = ScrollSpec::from_ints(3, &[&[1], &[0, 1], &[0], &[0]], &[&[0], &[0], &[1], &[0, 1]]).unwrap();
        let v = scroll_skew_test(&s, CountOptions::default()).unwrap();
        assert!(v.skew);
        assert!(matches!(v.certificate, Certificate::Identity { exponent: 2, .. }));
    }

    #[test]
    fn degenerate_rulings_rejected() {
        let r = ScrollSpec::from_ints(3, &[&[1], &[0, 1], &[0], &[0]], &[&[1], &[0, 1], &[0, 0, 1], &[0]]);
        assert!(matches!(r, Err(OracleError::Precondition(_))));
    }

    #[test]
    fn planar_and_infinite_cases() {
        let planar = ScrollSpec::from_ints(3, &[&[1], &[0, 1], &[0], &[0]], &[&[0], &[1], &[0, 1], &[0]]).unwrap();
        let v = scroll_skew_test(&planar, CountOptions::default()).unwrap();
        assert!(!v.skew);
        assert_eq!(v.certificate, Certificate::Coplanar);
        // ι₂ = ι₁′ on the twisted cubic: both end at (0:0:0:1) when t = ∞
        let developable = ScrollSpec::from_ints(3, &[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1]], &[&[0], &[1], &[0, 2], &[0, 0, 3]]);
        assert!(developable.is_err());
    }
}
