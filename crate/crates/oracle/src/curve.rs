//! Parametrized rational curves `t ↦ (f_0(t) : … : f_N(t))`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::poly::{QPoly, Q};
use crate::{OracleError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCurve {
    ambient: usize,
    coords: Vec<QPoly>,
}

/// On-disk form: coefficients as `"p/q"` strings, index = power of `t`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveFile {
    pub ambient: usize,
    pub coords: Vec<Vec<String>>,
}

impl RationalCurve {
    /// Validates the coordinate count, coprimality and immersion.
    pub fn new(ambient: usize, coords: Vec<QPoly>) -> Result<Self> {
        let c = Self::unchecked(ambient, coords)?;
        c.check_immersion()?;
        Ok(c)
    }

    /// Only checks shape and that the coordinates have no common factor.
    pub fn unchecked(ambient: usize, coords: Vec<QPoly>) -> Result<Self> {
        if coords.len() != ambient + 1 {
            return Err(OracleError::Precondition(format!(
                "expected {} coordinates in P^{ambient}, got {}",
                ambient + 1,
                coords.len()
            )));
        }
        let g = coords.iter().fold(QPoly::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Err(OracleError::Precondition("all coordinates vanish".into()));
        }
        if g.degree() != Some(0) {
            return Err(OracleError::Precondition("coordinates share a common factor".into()));
        }
        Ok(Self { ambient, coords })
    }

    pub fn from_ints(ambient: usize, coords: &[&[i64]]) -> Result<Self> {
        Self::new(ambient, coords.iter().map(|c| QPoly::from_ints(c)).collect())
    }

    /// The rational normal curve `(1, t, …, t^N)`.
    pub fn rational_normal(ambient: usize) -> Self {
        let coords = (0..=ambient)
            .map(|i| {
                let mut c = vec![0; i + 1];
                c[i] = 1;
                QPoly::from_ints(&c)
            })
            .collect();
        Self::new(ambient, coords).expect("rational normal curve is valid")
    }

    /// A curve with integer coefficients in `[-9, 9]`, each coordinate of
    /// full degree, redrawn until it passes `accept`.
    pub fn random<R: Rng>(ambient: usize, degree: usize, rng: &mut R, accept: impl Fn(&Self) -> bool) -> Self {
        loop {
            let coords = (0..=ambient)
                .map(|_| {
                    let mut c: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-9..=9)).collect();
                    if c[degree] == 0 {
                        c[degree] = 1;
                    }
                    QPoly::from_ints(&c)
                })
                .collect();
            if let Ok(curve) = Self::new(ambient, coords) {
                if accept(&curve) {
                    return curve;
                }
            }
        }
    }

    /// A random curve with nowhere degenerate third osculating spaces.
    pub fn random_nondegenerate<R: Rng>(ambient: usize, degree: usize, rng: &mut R) -> Self {
        Self::random(ambient, degree, rng, |c| c.check_osculating().is_ok())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn coords(&self) -> &[QPoly] {
        &self.coords
    }

    pub fn degree(&self) -> usize {
        self.coords.iter().filter_map(QPoly::degree).max().unwrap_or(0)
    }

    pub fn derivative(&self) -> Vec<QPoly> {
        self.coords.iter().map(QPoly::deriv).collect()
    }

    /// `k`-th derivative of the coordinate vector.
    pub fn nth_derivative(&self, k: usize) -> Vec<QPoly> {
        let mut v = self.coords.clone();
        for _ in 0..k {
            v = v.iter().map(QPoly::deriv).collect();
        }
        v
    }

    pub fn point(&self, t: &Q) -> Vec<Q> {
        self.coords.iter().map(|c| c.eval(t)).collect()
    }

    pub fn velocity(&self, t: &Q) -> Vec<Q> {
        self.coords.iter().map(|c| c.deriv().eval(t)).collect()
    }

    /// The same curve seen through `u ↦ 1/u`, so that `u = 0` is `t = ∞`.
    pub fn at_infinity(&self) -> Self {
        let d = self.degree();
        Self { ambient: self.ambient, coords: self.coords.iter().map(|c| c.reversed(d)).collect() }
    }

    /// Reparametrize by `t = (a u + b)/(c u + e)`, clearing the denominator.
    pub fn moebius(&self, a: i64, b: i64, c: i64, e: i64) -> Result<Self> {
        if a * e - b * c == 0 {
            return Err(OracleError::Precondition("singular reparametrization".into()));
        }
        let d = self.degree();
        let num = QPoly::from_ints(&[b, a]);
        let den = QPoly::from_ints(&[e, c]);
        let coords = self
            .coords
            .iter()
            .map(|f| {
                // Σ f_k num^k den^{d−k}
                f.coeffs().iter().enumerate().fold(QPoly::zero(), |acc, (k, fk)| {
                    let term = (&num.pow(k) * &den.pow(d - k)).scale(fk);
                    &acc + &term
                })
            })
            .collect();
        Self::unchecked(self.ambient, coords)
    }

    /// Coordinates scaled by a common factor to primitive integer polynomials.
    pub fn integer_coords(&self) -> Vec<Vec<BigInt>> {
        let all = self.coords.iter().flat_map(|c| c.coeffs().iter());
        let lcm = all.clone().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<Vec<BigInt>> = self
            .coords
            .iter()
            .map(|c| c.coeffs().iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect())
            .collect();
        let g = ints.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x));
        ints.into_iter().map(|c| c.into_iter().map(|x| x / &g).collect()).collect()
    }

    /// The 2×2 minors of `[f, f′]` have no common zero, at infinity included.
    pub fn check_immersion(&self) -> Result<()> {
        for (view, label) in [(self.clone(), "finite"), (self.at_infinity(), "infinite")] {
            let cols = [view.coords.clone(), view.derivative()];
            let g = minors_gcd(&cols);
            if g.is_zero() {
                return Err(OracleError::Precondition("the curve is constant".into()));
            }
            if label == "finite" && g.degree() != Some(0) {
                return Err(OracleError::Precondition(format!("not an immersion: [f, f'] drops rank where {} = 0", show(&g))));
            }
            if label == "infinite" && g.eval(&Q::zero()).is_zero() {
                return Err(OracleError::Precondition("not an immersion at t = ∞".into()));
            }
        }
        Ok(())
    }

    /// The span of `f, f′, f″, f‴` is 4-dimensional everywhere, at infinity
    /// included.
    pub fn check_osculating(&self) -> Result<()> {
        if self.ambient < 3 {
            return Err(OracleError::Precondition("third osculating spaces need ambient ≥ 3".into()));
        }
        for (view, label) in [(self.clone(), "finite"), (self.at_infinity(), "infinite")] {
            let cols: Vec<Vec<QPoly>> = (0..4).map(|k| view.nth_derivative(k)).collect();
            let g = minors_gcd(&cols);
            if g.is_zero() {
                return Err(OracleError::Precondition("the curve lies in a plane".into()));
            }
            if label == "finite" && g.degree() != Some(0) {
                return Err(OracleError::Precondition(format!(
                    "degenerate third osculating space where {} = 0",
                    show(&g)
                )));
            }
            if label == "infinite" && g.eval(&Q::zero()).is_zero() {
                return Err(OracleError::Precondition("degenerate third osculating space at t = ∞".into()));
            }
        }
        Ok(())
    }

    /// Rank of `f, f′, f″, f‴` at a rational parameter.
    pub fn osculating_rank(&self, t: &Q) -> usize {
        let rows: Vec<Vec<Q>> = (0..4).map(|k| self.nth_derivative(k).iter().map(|c| c.eval(t)).collect()).collect();
        crate::poly::rank(&rows)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CurveFile = serde_json::from_str(text).map_err(|e| OracleError::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &CurveFile) -> Result<Self> {
        let coords = file
            .coords
            .iter()
            .map(|c| {
                c.iter()
                    .map(|s| Q::from_str(s.trim()).map_err(|e| OracleError::Parse(format!("bad coefficient {s:?}: {e}"))))
                    .collect::<Result<Vec<Q>>>()
                    .map(QPoly::new)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.ambient, coords)
    }

    pub fn to_file(&self) -> CurveFile {
        CurveFile {
            ambient: self.ambient,
            coords: self.coords.iter().map(|c| c.coeffs().iter().map(|x| x.to_string()).collect()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("curve serializes")
    }
}

/// Gcd of all maximal minors of the matrix whose columns are `cols`.
pub(crate) fn minors_gcd(cols: &[Vec<QPoly>]) -> QPoly {
    let k = cols.len();
    let n = cols[0].len();
    let mut g = QPoly::zero();
    for rows in subsets(n, k) {
        let m: Vec<Vec<QPoly>> = rows.iter().map(|&r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        g = g.gcd(&det(&m));
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out.sort();
    out
}

pub(crate) fn det(m: &[Vec<QPoly>]) -> QPoly {
    match m.len() {
        0 => QPoly::one(),
        1 => m[0][0].clone(),
        n => (0..n).fold(QPoly::zero(), |acc, col| {
            if m[0][col].is_zero() {
                return acc;
            }
            let minor: Vec<Vec<QPoly>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| v.clone()).collect()).collect();
            let term = &m[0][col] * &det(&minor);
            if col % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            }
        }),
    }
}

fn show(p: &QPoly) -> String {
    let mut parts = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        let body = match (i, mag.is_one()) {
            (0, _) => mag.to_string(),
            (1, true) => "t".into(),
            (1, false) => format!("{mag}t"),
            (_, true) => format!("t^{i}"),
            (_, false) => format!("{mag}t^{i}"),
        };
        parts.push(format!("{sign} {body}"));
    }
    let s = parts.join(" ");
    s.strip_prefix("+ ").map(str::to_string).unwrap_or(s)
}
