//! Order of contact between the Gauss curve and a rank-one curve at a point.
//!
//! Around `x₀` the curve is put in the form `(1 : τ : f₂(τ) : f₃(τ) : f₄(τ))`
//! with `f(0) = f′(0) = 0`. In the affine chart of `Gr(2,5)` whose top 2×2
//! block is the identity, the Gauss map is `α(τ) = (f − τf′, f′)`, and
//! `β(τ) = (−(τ/2) f′, f′)` has rank ≤ 1 throughout. They agree to second order
//! at 0 and no further: agreeing to third order would force `f‴(0)` to be
//! parallel to `f″(0)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::curve::RationalCurve;
use crate::poly::{inverse, q, rank, QPoly, Q};
use crate::{OracleError, Result};

/// Truncation order of the local power series.
const ORDER: usize = 6;

type Series = Vec<Q>;

fn series(p: &QPoly) -> Series {
    (0..ORDER).map(|k| p.coeff(k)).collect()
}

fn smul(a: &Series, b: &Series) -> Series {
    let mut c = vec![Q::zero(); ORDER];
    for i in 0..ORDER {
        for j in 0..ORDER - i {
            c[i + j] += &a[i] * &b[j];
        }
    }
    c
}

fn sinv(a: &Series) -> Series {
    // a(0) ≠ 0; solve a·b = 1 term by term
    let mut b = vec![Q::zero(); ORDER];
    b[0] = Q::one() / &a[0];
    for k in 1..ORDER {
        let acc: Q = (1..=k).map(|i| &a[i] * &b[k - i]).sum();
        b[k] = -acc / &a[0];
    }
    b
}

/// `a(u(x))` for `u(0) = 0`.
fn compose(a: &Series, u: &Series) -> Series {
    let mut out = vec![Q::zero(); ORDER];
    let mut power = vec![Q::zero(); ORDER];
    power[0] = Q::one();
    for ak in a {
        for (o, p) in out.iter_mut().zip(&power) {
            *o += ak * p;
        }
        power = smul(&power, u);
    }
    out
}

/// Compositional inverse of `z` with `z(0) = 0`, `z′(0) = 1`.
fn revert(z: &Series) -> Series {
    let mut u = vec![Q::zero(); ORDER];
    u[1] = Q::one();
    // u ← u − (z(u) − x); each pass fixes one more coefficient
    for _ in 0..ORDER {
        let zu = compose(z, &u);
        for k in 0..ORDER {
            let target = if k == 1 { Q::one() } else { Q::zero() };
            u[k] -= &zu[k] - target;
        }
    }
    u
}

fn shift(s: &Series) -> Series {
    // multiply by τ
    let mut out = vec![Q::zero(); ORDER];
    out[1..].clone_from_slice(&s[..ORDER - 1]);
    out
}

fn deriv(s: &Series) -> Series {
    let mut out: Series = (1..ORDER).map(|k| &s[k] * q(k as i64)).collect();
    out.push(Q::zero());
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactReport {
    pub t0: String,
    /// Orders `k` at which `α^{(k)}(0) = β^{(k)}(0)`, from 0 up.
    pub matching_orders: Vec<usize>,
    /// First order where they differ.
    pub first_mismatch: Option<usize>,
    /// Rank of `[f″(0), f‴(0)]` in the normalized chart.
    pub second_third_rank: usize,
    /// Order-2 contact and the order-3 obstruction both hold.
    pub confirmed: bool,
    /// Taylor coefficients of `f₂, f₃, f₄` up to `τ³`.
    pub local_form: Vec<Vec<String>>,
}

/// Builds the local normal form at `t₀` and compares `α` and `β` order by order.
pub fn contact_order_test(curve: &RationalCurve, t0: &Q) -> Result<ContactReport> {
    if curve.ambient() != 4 {
        return Err(OracleError::Precondition("contact test needs a curve in P^4".into()));
    }
    if curve.osculating_rank(t0) < 4 {
        return Err(OracleError::Precondition(format!("degenerate third osculating space at t = {t0}")));
    }
    // Taylor expansion in u = t − t₀
    let moved: Vec<Series> =
        curve.coords().iter().map(|c| series(&c.compose(&QPoly::new(vec![t0.clone(), Q::one()])))).collect();
    // columns F(0), F′(0)/1!, F″(0)/2!, F‴(0)/3!, completed by a unit vector
    let taylor: Vec<Vec<Q>> = (0..4).map(|k| moved.iter().map(|s| s[k].clone()).collect()).collect();
    let basis = (0..5)
        .find_map(|j| {
            let mut cols = taylor.clone();
            cols.push((0..5).map(|i| if i == j { Q::one() } else { Q::zero() }).collect());
            let m: Vec<Vec<Q>> = (0..5).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
            inverse(&m)
        })
        .expect("the osculating rank is 4");
    let g: Vec<Series> = (0..5)
        .map(|i| {
            (0..ORDER)
                .map(|k| (0..5).map(|j| &basis[i][j] * &moved[j][k]).sum())
                .collect()
        })
        .collect();
    // affine chart x₀ = 1, then reparametrize so the first coordinate is τ
    let inv0 = sinv(&g[0]);
    let z: Vec<Series> = g[1..].iter().map(|gi| smul(gi, &inv0)).collect();
    let u = revert(&z[0]);
    let f: Vec<Series> = z[1..].iter().map(|zi| compose(zi, &u)).collect();

    let fp: Vec<Series> = f.iter().map(deriv).collect();
    let half = Q::new(1.into(), 2.into());
    let alpha: Vec<Series> = f
        .iter()
        .zip(&fp)
        .map(|(fi, dfi)| fi.iter().zip(shift(dfi)).map(|(a, b)| a - b).collect())
        .chain(fp.iter().cloned())
        .collect();
    let beta: Vec<Series> = fp
        .iter()
        .map(|dfi| shift(dfi).iter().map(|x| -(x * &half)).collect())
        .chain(fp.iter().cloned())
        .collect();
    let agree = |k: usize| alpha.iter().zip(&beta).all(|(a, b)| a[k] == b[k]);
    let matching_orders: Vec<usize> = (0..4).take_while(|&k| agree(k)).collect();
    let first_mismatch = (0..ORDER - 1).find(|&k| !agree(k));
    let second: Vec<Q> = f.iter().map(|s| &s[2] * q(2)).collect();
    let third: Vec<Q> = f.iter().map(|s| &s[3] * q(6)).collect();
    let second_third_rank = rank(&[second, third]);
    let base_ok = f.iter().all(|s| s[0].is_zero() && s[1].is_zero());
    let confirmed = base_ok && matching_orders == [0, 1, 2] && first_mismatch == Some(3) && second_third_rank == 2;
    Ok(ContactReport {
        t0: t0.to_string(),
        matching_orders,
        first_mismatch,
        second_third_rank,
        confirmed,
        local_form: f.iter().map(|s| s[..4].iter().map(Q::to_string).collect()).collect(),
    })
}
