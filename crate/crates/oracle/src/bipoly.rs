//! Integer polynomials in two parameters `t`, `s`.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::{QPoly, Q};

/// `c[i][j]` is the coefficient of `t^i s^j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    c: Vec<Vec<BigInt>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(c: Vec<Vec<BigInt>>) -> Self {
        let mut p = Self { c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        for row in &mut self.c {
            while row.last().is_some_and(Zero::is_zero) {
                row.pop();
            }
        }
        while self.c.last().is_some_and(Vec::is_empty) {
            self.c.pop();
        }
    }

    /// A polynomial in `t` alone.
    pub fn in_t(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|a| vec![a.clone()]).collect())
    }

    /// A polynomial in `s` alone.
    pub fn in_s(coeffs: &[BigInt]) -> Self {
        Self::new(vec![coeffs.to_vec()])
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.c.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg_t(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn deg_s(&self) -> usize {
        self.c.iter().map(|r| r.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.c.len() {
            0 => Some(BigInt::zero()),
            1 if self.c[0].len() == 1 => Some(self.c[0][0].clone()),
            _ => None,
        }
    }

    fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.c.iter().map(|r| r.iter().map(|a| a * k).collect()).collect())
    }

    /// Exact quotient by `t − s`, if it divides.
    pub fn div_t_minus_s(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // write self = Σ a_i(s) t^i and divide by the monic (t − s) in t
        let n = self.c.len() - 1;
        if n == 0 {
            return None;
        }
        let mut quot: Vec<Vec<BigInt>> = vec![Vec::new(); n];
        let mut carry: Vec<BigInt> = Vec::new();
        for i in (1..=n).rev() {
            // q_{i−1} = a_i + s q_i
            let mut row = self.c[i].clone();
            add_shifted(&mut row, &carry);
            quot[i - 1] = row.clone();
            carry = row;
        }
        let mut rem = self.c[0].clone();
        add_shifted(&mut rem, &carry);
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// Divides out the largest power of `t − s`; returns it and the quotient.
    pub fn saturate(&self) -> (Self, u32) {
        if self.is_zero() {
            return (Self::zero(), 0);
        }
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.div_t_minus_s() {
            p = q;
            k += 1;
        }
        (p, k)
    }

    /// `self(t0, s)` as a polynomial in `s`.
    pub fn at_t(&self, t0: &Q) -> QPoly {
        let mut out = QPoly::zero();
        let mut power = Q::one();
        for row in &self.c {
            let r = QPoly::new(row.iter().map(|a| Q::from_integer(a.clone()) * &power).collect());
            out = &out + &r;
            power *= t0;
        }
        out
    }

    /// `self(t, t)`.
    pub fn on_diagonal(&self) -> QPoly {
        let mut c = vec![Q::zero(); self.deg_t() + self.deg_s() + 1];
        for (i, row) in self.c.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                c[i + j] += Q::from_integer(a.clone());
            }
        }
        QPoly::new(c)
    }

    pub fn swap(&self) -> Self {
        let mut c = vec![vec![BigInt::zero(); self.deg_t() + 1]; self.deg_s() + 1];
        for (i, row) in self.c.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                c[j][i] = a.clone();
            }
        }
        Self::new(c)
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }
}

fn add_shifted(row: &mut Vec<BigInt>, carry: &[BigInt]) {
    // row += s · carry
    if row.len() < carry.len() + 1 {
        row.resize(carry.len() + 1, BigInt::zero());
    }
    for (j, a) in carry.iter().enumerate() {
        row[j + 1] += a;
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut c = self.c.clone();
        if c.len() < o.c.len() {
            c.resize(o.c.len(), Vec::new());
        }
        for (i, row) in o.c.iter().enumerate() {
            if c[i].len() < row.len() {
                c[i].resize(row.len(), BigInt::zero());
            }
            for (j, a) in row.iter().enumerate() {
                c[i][j] += a;
            }
        }
        BiPoly::new(c)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        self + &o.neg()
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let mut c = vec![vec![BigInt::zero(); self.deg_s() + o.deg_s() + 1]; self.c.len() + o.c.len() - 1];
        for (i1, r1) in self.c.iter().enumerate() {
            for (j1, a) in r1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (i2, r2) in o.c.iter().enumerate() {
                    for (j2, b) in r2.iter().enumerate() {
                        c[i1 + i2][j1 + j2] += a * b;
                    }
                }
            }
        }
        BiPoly::new(c)
    }
}

/// Determinant by cofactor expansion; the matrices here are at most 5×5.
pub fn determinant(m: &[Vec<BiPoly>]) -> BiPoly {
    match m.len() {
        0 => BiPoly::in_t(&[BigInt::one()]),
        1 => m[0][0].clone(),
        n => {
            let mut acc = BiPoly::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BiPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * &determinant(&minor);
                acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// All maximal minors of a tall matrix (`rows ≥ cols`), dropping row sets in
/// lexicographic order.
pub fn maximal_minors(m: &[Vec<BiPoly>]) -> Vec<BiPoly> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(start: usize, need: usize, rows: usize, chosen: &mut Vec<usize>, m: &[Vec<BiPoly>], out: &mut Vec<BiPoly>) {
        if need == 0 {
            let sub: Vec<Vec<BiPoly>> = chosen.iter().map(|&i| m[i].clone()).collect();
            out.push(determinant(&sub));
            return;
        }
        for i in start..=rows - need {
            chosen.push(i);
            rec(i + 1, need - 1, rows, chosen, m, out);
            chosen.pop();
        }
    }
    rec(0, cols, rows, &mut chosen, m, &mut out);
    out
}
