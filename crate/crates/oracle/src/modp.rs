//! Arithmetic in `F_p` and `F_p[t]` for word-sized primes.
//!
//! The elimination steps of the pair counter produce resultants whose rational
//! coefficients run to hundreds of digits; all of that work happens here, modulo
//! several primes, and only the final counts are compared.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Primes used by the pair counter, largest first.
pub const PRIMES: [u64; 3] = [(1 << 61) - 1, 1_000_000_007, 998_244_353];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field {
    p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        Self { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.p as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }

    pub fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }

    /// Determinant by Gaussian elimination; consumes the matrix.
    pub fn det(&self, mut m: Vec<Vec<u64>>) -> u64 {
        let n = m.len();
        let mut d = 1;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&i| m[i][col] != 0) else { return 0 };
            if piv != col {
                m.swap(piv, col);
                d = self.neg(d);
            }
            d = self.mul(d, m[col][col]);
            let inv = self.inv(m[col][col]);
            for i in col + 1..n {
                if m[i][col] == 0 {
                    continue;
                }
                let f = self.mul(m[i][col], inv);
                for j in col..n {
                    let v = self.mul(f, m[col][j]);
                    m[i][j] = self.sub(m[i][j], v);
                }
            }
        }
        d
    }
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let f = Field { p: n };
    let (mut d, mut r) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense polynomial over `F_p`, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyP {
    c: Vec<u64>,
}

impl PolyP {
    pub fn new(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { c }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self { c: vec![1] }
    }

    pub fn constant(a: u64) -> Self {
        Self::new(vec![a])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, f: &Field, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }

    pub fn add(&self, f: &Field, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Field, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn scale(&self, f: &Field, k: u64) -> Self {
        Self::new(self.c.iter().map(|&a| f.mul(a, k)).collect())
    }

    pub fn mul(&self, f: &Field, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Self::new(c)
    }

    pub fn deriv(&self, f: &Field) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| f.mul(a, i as u64 % f.p))
                .collect(),
        )
    }

    pub fn divrem(&self, f: &Field, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv = f.inv(d.lc());
        let mut rem = self.c.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let coef = f.mul(rem[k + dd], inv);
            if coef != 0 {
                for (j, &b) in d.c.iter().enumerate() {
                    rem[k + j] = f.sub(rem[k + j], f.mul(coef, b));
                }
            }
            quot[k] = coef;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, f: &Field, d: &Self) -> Self {
        self.divrem(f, d).1
    }

    pub fn monic(&self, f: &Field) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(f, f.inv(self.lc()))
    }

    pub fn gcd(&self, f: &Field, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, f: &Field, m: &Self) -> Option<Self> {
        // extended Euclid tracking the coefficient of self
        let (mut r0, mut r1) = (m.clone(), self.rem(f, m));
        let (mut s0, mut s1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(f, &r1);
            let s = s0.sub(f, &q.mul(f, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        Some(s0.scale(f, f.inv(r0.lc())).rem(f, m))
    }

    /// Squarefree decomposition `self = lc · Π a_k^k` (Yun); valid while the
    /// degree is below the characteristic.
    pub fn squarefree_parts(&self, f: &Field) -> Vec<(usize, Self)> {
        assert!((self.deg() as u64) < f.p, "degree exceeds the characteristic");
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let a = self.monic(f);
        let da = a.deriv(f);
        let b = a.gcd(f, &da);
        let mut c = a.divrem(f, &b).0;
        let mut d = da.divrem(f, &b).0.sub(f, &c.deriv(f));
        let mut k = 1;
        while c.deg() > 0 {
            let g = c.gcd(f, &d);
            if g.deg() > 0 {
                out.push((k, g.clone()));
            }
            c = c.divrem(f, &g).0;
            d = d.divrem(f, &g).0.sub(f, &c.deriv(f));
            k += 1;
        }
        out
    }
}

/// Polynomial through `(x_i, y_i)` by Newton's divided differences.
pub fn interpolate(f: &Field, xs: &[u64], ys: &[u64]) -> PolyP {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(coef[i], coef[i - 1]);
            let den = f.sub(xs[i], xs[i - j]);
            coef[i] = f.mul(num, f.inv(den));
        }
    }
    let mut p = PolyP::constant(coef[n - 1]);
    for i in (0..n - 1).rev() {
        p = p.mul(f, &PolyP::new(vec![f.neg(xs[i]), 1])).add(f, &PolyP::constant(coef[i]));
    }
    p
}
