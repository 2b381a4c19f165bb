//! Closed-form skewness identities checked by direct expansion.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bipoly::BiPoly;
use crate::curve::RationalCurve;
use crate::pairs::{derivative, saturated_minors};
use crate::poly::{q, rank, Q};
use crate::{OracleError, Result};

/// `det[f(t), f′(t), f(s), f′(s)]` for a curve in `P^3`, unsaturated.
pub fn tangent_determinant(curve: &RationalCurve) -> Result<BiPoly> {
    if curve.ambient() != 3 {
        return Err(OracleError::Precondition("the tangent determinant needs a curve in P^3".into()));
    }
    let a = curve.integer_coords();
    let b = derivative(&a);
    let (sat, k) = saturated_minors(&a, &b).pop().expect("one minor");
    let t_minus_s = &BiPoly::in_t(&[BigInt::zero(), 1.into()]) - &BiPoly::in_s(&[BigInt::zero(), 1.into()]);
    Ok((0..k).fold(sat, |acc, _| &acc * &t_minus_s))
}

/// For the twisted cubic, `det[f(t), f′(t), f(s), f′(s)] = c (t − s)^k`;
/// returns `(c, k)`.
pub fn twisted_cubic_identity() -> Result<(BigInt, u32)> {
    let det = tangent_determinant(&RationalCurve::rational_normal(3))?;
    let (rest, k) = det.saturate();
    match rest.as_constant() {
        Some(c) if !c.is_zero() => Ok((c, k)),
        _ => Err(OracleError::Inconsistent(format!("the cubic determinant has an off-diagonal factor {rest:?}"))),
    }
}

/// Whether a curve in `P^3` has pairwise disjoint tangent lines, at infinity
/// included: the determinant must be `c (t − s)^{2d−2}` with `c ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct P3Skewness {
    pub skew: bool,
    pub exponent: u32,
    pub expected_exponent: u32,
    /// Set when the saturated determinant is constant.
    pub constant: Option<String>,
}

pub fn p3_curve_skewness(curve: &RationalCurve) -> Result<P3Skewness> {
    let det = tangent_determinant(curve)?;
    let expected_exponent = 2 * curve.degree() as u32 - 2;
    if det.is_zero() {
        return Ok(P3Skewness { skew: false, exponent: 0, expected_exponent, constant: None });
    }
    let (rest, exponent) = det.saturate();
    let constant = rest.as_constant();
    Ok(P3Skewness {
        skew: constant.as_ref().is_some_and(|c| !c.is_zero()) && exponent == expected_exponent,
        exponent,
        expected_exponent,
        constant: constant.map(|c| c.to_string()),
    })
}

/// The degree-3 map `P² → P⁸` by the monomials `x_i^k x_j^{3−k}`, `i < j`.
pub fn veronese_monomials() -> Vec<[u32; 3]> {
    let mut out: Vec<[u32; 3]> = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            for k in 0..=3 {
                let mut e = [0; 3];
                e[i] += k;
                e[j] += 3 - k;
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
    }
    out
}

fn partials(x: &[Q; 3]) -> Vec<Vec<Q>> {
    let mons = veronese_monomials();
    (0..3)
        .map(|v| {
            mons.iter()
                .map(|e| {
                    if e[v] == 0 {
                        return Q::zero();
                    }
                    let mut val = q(i64::from(e[v]));
                    for (w, &p) in e.iter().enumerate() {
                        let p = if w == v { p - 1 } else { p };
                        for _ in 0..p {
                            val *= &x[w];
                        }
                    }
                    val
                })
                .collect()
        })
        .collect()
}

/// Rank of the six vectors spanning the cones over the tangent planes at
/// `x` and `y`.
pub fn veronese_tangent_rank(x: &[Q; 3], y: &[Q; 3]) -> usize {
    let mut rows = partials(x);
    rows.extend(partials(y));
    rank(&rows)
}

/// Samples random pairs of distinct rational points of `P²` and checks that
/// their tangent planes under the cubic map are disjoint.
pub fn veronese_sample_test(samples: usize, seed: u64) -> Result<bool> {
    if samples < 100 {
        return Err(OracleError::Precondition(format!("need at least 100 samples, got {samples}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point = |rng: &mut ChaCha8Rng| -> [Q; 3] {
        loop {
            let p: [Q; 3] = std::array::from_fn(|_| Q::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=9).into()));
            if p.iter().any(|c| !c.is_zero()) {
                return p;
            }
        }
    };
    let mut done = 0;
    while done < samples {
        let (x, y) = (point(&mut rng), point(&mut rng));
        if rank(&[x.to_vec(), y.to_vec()]) < 2 {
            continue;
        }
        if veronese_tangent_rank(&x, &y) != 6 {
            return Ok(false);
        }
        done += 1;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skewness_in_p3() {
        let cubic = p3_curve_skewness(&RationalCurve::rational_normal(3)).unwrap();
        assert!(cubic.skew);
        assert_eq!(cubic.exponent, 4);
        // a quartic in P^3 has meeting tangents
        let quartic = RationalCurve::from_ints(3, &[&[1, 0, 0, 0, 1], &[0, 1], &[0, 0, 1, 0, 2], &[0, 0, 0, 1]]).unwrap();
        assert!(!p3_curve_skewness(&quartic).unwrap().skew);
    }

    #[test]
    fn nine_monomials_without_the_mixed_one() {
        let m = veronese_monomials();
        assert_eq!(m.len(), 9);
        assert!(!m.contains(&[1, 1, 1]));
    }

    #[test]
    fn coincident_points_give_rank_three() {
        let x = [q(1), q(2), q(-3)];
        assert_eq!(veronese_tangent_rank(&x, &x), 3);
        let y = [q(2), q(4), q(-6)];
        assert_eq!(veronese_tangent_rank(&x, &y), 3);
        assert_eq!(veronese_tangent_rank(&x, &[q(0), q(1), q(5)]), 6);
    }
}
