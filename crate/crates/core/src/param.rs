//! Integer polynomials in the curve parameters `d`, `g` and `dv`.
//!
//! Every intersection number in the engine is a polynomial in the degree `d`,
//! the genus `g` and the dual degree `dv` of the curve (or family of lines)
//! under study. `dv` stays an independent symbol until [`ParamPoly::subs_dual_degree`]
//! replaces it by `2d + 2g - 2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One of the three formal parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    D,
    G,
    Dv,
}

impl Sym {
    const ALL: [Sym; 3] = [Sym::D, Sym::G, Sym::Dv];

    fn index(self) -> usize {
        match self {
            Sym::D => 0,
            Sym::G => 1,
            Sym::Dv => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sym::D => "d",
            Sym::G => "g",
            Sym::Dv => "dv",
        }
    }
}

/// Exponent vector over `(d, g, dv)`.
pub type Monomial = [u32; 3];

fn total_degree(m: &Monomial) -> u32 {
    m.iter().sum()
}

/// Sparse polynomial in `ℤ[d, g, dv]` with arbitrary precision coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term([0, 0, 0], c.into());
        p
    }

    pub fn var(s: Sym) -> Self {
        let mut m = [0; 3];
        m[s.index()] = 1;
        let mut p = Self::zero();
        p.add_term(m, BigInt::one());
        p
    }

    pub fn d() -> Self {
        Self::var(Sym::D)
    }

    pub fn g() -> Self {
        Self::var(Sym::G)
    }

    pub fn dv() -> Self {
        Self::var(Sym::Dv)
    }

    /// Builds `Σ c·d^a g^b dv^e` from `(c, [a, b, e])` pairs.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, Monomial)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (c, m) in terms {
            p.add_term(m, c.into());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value if the polynomial has no symbolic part.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(total_degree).max()
    }

    pub fn contains(&self, s: Sym) -> bool {
        self.terms.keys().any(|m| m[s.index()] > 0)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn scale_i(&self, c: i64) -> Self {
        self.scale(&BigInt::from(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes polynomials for the three symbols.
    pub fn substitute(&self, d: &ParamPoly, g: &ParamPoly, dv: &ParamPoly) -> Self {
        let vals = [d, g, dv];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for s in Sym::ALL {
                let e = m[s.index()];
                if e > 0 {
                    t = &t * &vals[s.index()].pow(e);
                }
            }
            out += t;
        }
        out
    }

    /// Replaces `dv` by `2d + 2g - 2`.
    pub fn subs_dual_degree(&self) -> Self {
        self.substitute(&Self::d(), &Self::g(), &dual_degree())
    }

    pub fn eval(&self, d: i64, g: i64, dv: i64) -> BigInt {
        let vals = [BigInt::from(d), BigInt::from(g), BigInt::from(dv)];
        let mut out = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in vals.iter().enumerate() {
                for _ in 0..m[i] {
                    t *= v;
                }
            }
            out += t;
        }
        out
    }

    /// Evaluates at a curve `(d, g)` with `dv = 2d + 2g - 2`.
    pub fn eval_curve(&self, d: i64, g: i64) -> BigInt {
        self.eval(d, g, 2 * d + 2 * g - 2)
    }

    pub fn eval_i64(&self, d: i64, g: i64, dv: i64) -> Option<i64> {
        self.eval(d, g, dv).to_i64()
    }

    fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        // graded lex: highest total degree first, ties broken lexicographically
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| total_degree(a).cmp(&total_degree(b)).then(a.cmp(b)))
    }

    /// Exact division; `None` if `other` does not divide `self` in `ℤ[d, g, dv]`.
    pub fn div_exact(&self, other: &ParamPoly) -> Option<ParamPoly> {
        let (lm, lc) = other.leading()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((m, c)) = rem.leading() {
            let (m, c) = (*m, c.clone());
            if !(0..3).all(|i| m[i] >= lm[i]) {
                return None;
            }
            let (q, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let qm = [m[0] - lm[0], m[1] - lm[1], m[2] - lm[2]];
            let step = Self::from_terms([(q, qm)]);
            rem -= &step * other;
            quot += step;
        }
        Some(quot)
    }
}

/// `2d + 2g - 2`.
pub fn dual_degree() -> ParamPoly {
    ParamPoly::from_terms([(2, [1, 0, 0]), (2, [0, 1, 0]), (-2, [0, 0, 0])])
}

impl From<i64> for ParamPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for ParamPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(mut self, rhs: ParamPoly) -> ParamPoly {
        self += rhs;
        self
    }
}

impl<'a> AddAssign<&'a ParamPoly> for ParamPoly {
    fn add_assign(&mut self, rhs: &'a ParamPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign for ParamPoly {
    fn add_assign(&mut self, rhs: ParamPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(mut self, rhs: ParamPoly) -> ParamPoly {
        self -= rhs;
        self
    }
}

impl<'a> SubAssign<&'a ParamPoly> for ParamPoly {
    fn sub_assign(&mut self, rhs: &'a ParamPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl SubAssign for ParamPoly {
    fn sub_assign(&mut self, rhs: ParamPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term([ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]], ca * cb);
            }
        }
        out
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        Self {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -self.clone()
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        // descending total degree, then dv before d before g
        terms.sort_by(|(a, _), (b, _)| {
            total_degree(b)
                .cmp(&total_degree(a))
                .then(b[2].cmp(&a[2]))
                .then(b[0].cmp(&a[0]))
                .then(b[1].cmp(&a[1]))
        });
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let is_const = *m == [0, 0, 0];
            if is_const || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            for s in [Sym::Dv, Sym::D, Sym::G] {
                match m[s.index()] {
                    0 => {}
                    1 => write!(f, "{}", s.name())?,
                    e => write!(f, "{}^{}", s.name(), e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl FromStr for ParamPoly {
    type Err = Error;

    /// Parses strings such as `4dv^2-10dv-4g+4` or `2*d*g - 3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
        let chars: Vec<char> = s
            .chars()
            .map(|c| if c == '−' { '-' } else { c })
            .filter(|c| !c.is_whitespace())
            .collect();
        if chars.is_empty() {
            return Err(bad("empty input"));
        }
        let mut out = ParamPoly::zero();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = BigInt::one();
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if i != 0 {
                return Err(bad("expected sign between terms"));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let mut coeff = if i > start {
                chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse::<BigInt>()
                    .map_err(|_| bad("bad coefficient"))?
            } else {
                BigInt::one()
            };
            let mut mono = [0u32; 3];
            let mut saw_factor = i > start;
            loop {
                if i < chars.len() && chars[i] == '*' {
                    i += 1;
                }
                let sym = if chars[i..].starts_with(&['d', 'v']) {
                    i += 2;
                    Sym::Dv
                } else if i < chars.len() && chars[i] == 'd' {
                    i += 1;
                    Sym::D
                } else if i < chars.len() && chars[i] == 'g' {
                    i += 1;
                    Sym::G
                } else {
                    break;
                };
                let mut exp = 1u32;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let es = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = chars[es..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| bad("bad exponent"))?;
                }
                mono[sym.index()] += exp;
                saw_factor = true;
            }
            if !saw_factor {
                return Err(bad("empty term"));
            }
            coeff *= sign;
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}

impl Serialize for ParamPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ParamPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ParamPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_round_trips() {
        for s in ["4dv^2-10dv-4g+4", "dv^2-5dv-6g+6", "0", "-2", "2dvg", "15d+36g-36"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn parse_accepts_star_and_unicode_minus() {
        assert_eq!(p("2*d*g − 3"), p("2dg-3"));
        assert_eq!(p("dv*dv"), p("dv^2"));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<ParamPoly>().is_err());
        assert!("3x".parse::<ParamPoly>().is_err());
        assert!("2+".parse::<ParamPoly>().is_err());
    }

    #[test]
    fn dual_degree_substitution() {
        let q = p("dv^2-10dv-24g+24").subs_dual_degree();
        let r = p("4d^2+8dg+4g^2-8d-8g+4-20d-20g+20-24g+24");
        assert_eq!(q, r);
        assert_eq!(q.eval(8, 5, 0), BigInt::from(240));
    }

    #[test]
    fn exact_division() {
        let a = p("dv^2-2dv");
        assert_eq!(a.div_exact(&p("dv")), Some(p("dv-2")));
        assert_eq!(p("dv+1").div_exact(&p("dv")), None);
        assert_eq!(p("6").div_exact(&p("3")), Some(p("2")));
        assert_eq!(p("7").div_exact(&p("3")), None);
    }

    #[test]
    fn constants() {
        assert_eq!(ParamPoly::zero().as_constant(), Some(BigInt::zero()));
        assert_eq!(p("5").as_constant(), Some(BigInt::from(5)));
        assert_eq!(p("d+5").as_constant(), None);
    }
}
