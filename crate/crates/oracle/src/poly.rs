//! Dense univariate polynomials over `Q`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Coefficients indexed by power; never has a trailing zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    c: Vec<Q>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The parameter `t`.
    pub fn t() -> Self {
        Self::new(vec![Q::zero(), Q::one()])
    }

    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Self { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.c.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
    }

    pub fn deriv(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * q(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.c.iter().map(|a| a * k).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `self(p(t))`.
    pub fn compose(&self, p: &QPoly) -> Self {
        self.c.iter().rev().fold(Self::zero(), |acc, a| &(&acc * p) + &Self::constant(a.clone()))
    }

    pub fn divrem(&self, d: &QPoly) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.c.len() - 1;
        let inv = Q::one() / d.lc();
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let coef = &rem[k + dd] * &inv;
            if !coef.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    rem[k + j] -= &coef * b;
                }
            }
            quot[k] = coef;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Q::one() / self.lc()))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &QPoly) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Multiplicity of `t0` as a root.
    pub fn root_multiplicity(&self, t0: &Q) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = QPoly::new(vec![-t0.clone(), Q::one()]);
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (quot, rem) = p.divrem(&lin);
            if !rem.is_zero() {
                return k;
            }
            p = quot;
            k += 1;
        }
    }

    /// `t^n p(1/t)` for `n ≥ deg p`: the same polynomial seen from infinity.
    pub fn reversed(&self, n: usize) -> Self {
        let mut c = vec![Q::zero(); n + 1];
        for (i, a) in self.c.iter().enumerate() {
            c[n - i] = a.clone();
        }
        Self::new(c)
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QPoly::new(c)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        self.scale(&q(-1))
    }
}

/// Rank of a matrix of rationals by exact elimination.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, pivot);
        let inv = Q::one() / &m[r][col];
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = &m[i][col] * &inv;
                for j in col..ncols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Inverse of a square rational matrix, `None` if singular.
pub fn inverse(rows: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = rows.len();
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, pivot);
        let inv = Q::one() / &m[col][col];
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..2 * n {
                    let v = &f * &m[col][j];
                    m[i][j] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = &QPoly::from_ints(&[-1, 0, 1]) * &QPoly::from_ints(&[2, 1]);
        let b = &QPoly::from_ints(&[1, 1]) * &QPoly::from_ints(&[3, 0, 1]);
        assert_eq!(a.gcd(&b), QPoly::from_ints(&[1, 1]));
        let (quot, rem) = a.divrem(&QPoly::from_ints(&[1, 1]));
        assert!(rem.is_zero());
        assert_eq!(quot, &QPoly::from_ints(&[-1, 1]) * &QPoly::from_ints(&[2, 1]));
    }

    #[test]
    fn roots_and_reversal() {
        let p = &QPoly::from_ints(&[-2, 1]).pow(3) * &QPoly::from_ints(&[1, 1]);
        assert_eq!(p.root_multiplicity(&q(2)), 3);
        assert_eq!(p.root_multiplicity(&q(0)), 0);
        assert_eq!(QPoly::from_ints(&[1, 2]).reversed(3), QPoly::from_ints(&[0, 0, 2, 1]));
        assert_eq!(QPoly::from_ints(&[1, 1]).compose(&QPoly::from_ints(&[0, 2])), QPoly::from_ints(&[1, 2]));
    }

    #[test]
    fn linear_algebra() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(rank(&m), 1);
        assert!(inverse(&m).is_none());
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
    }
}
