//! Formal vector bundles: a rank plus a truncated total Chern class over any
//! graded ring.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::param::ParamPoly;

/// Graded commutative ring with `ParamPoly` scalars, truncated above `dim`.
///
/// Implementors guarantee that `mul` of elements from the same ring handle is
/// always defined.
pub trait GradedRing {
    type Elem: Clone + PartialEq + fmt::Debug;

    /// Top degree; Chern series are truncated here.
    fn dim(&self) -> usize;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &ParamPoly) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.scale(a, &ParamPoly::constant(-1))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, e: usize) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

/// Largest rank accepted by [`FormalBundle::tensor`].
pub const MAX_TENSOR_RANK: usize = 4;

/// Rank and Chern classes `c_0 = 1, c_1, …, c_dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalBundle<E> {
    rank: usize,
    chern: Vec<E>,
}

impl<E: Clone + PartialEq + fmt::Debug> FormalBundle<E> {
    /// `chern[k]` is `c_{k+1}`; missing classes are zero, classes above the
    /// ring dimension are dropped.
    pub fn new<R: GradedRing<Elem = E>>(ring: &R, rank: usize, chern: Vec<E>) -> Self {
        let mut full = Vec::with_capacity(ring.dim() + 1);
        full.push(ring.one());
        full.extend(chern.into_iter().take(ring.dim()));
        full.resize(ring.dim() + 1, ring.zero());
        Self { rank, chern: full }
    }

    pub fn trivial<R: GradedRing<Elem = E>>(ring: &R, rank: usize) -> Self {
        Self::new(ring, rank, Vec::new())
    }

    pub fn line<R: GradedRing<Elem = E>>(ring: &R, c1: E) -> Self {
        Self::new(ring, 1, vec![c1])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `c_k`, zero above the truncation degree.
    pub fn c<R: GradedRing<Elem = E>>(&self, ring: &R, k: usize) -> E {
        self.chern.get(k).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn chern(&self) -> &[E] {
        &self.chern
    }

    /// Total Chern class as one ring element.
    pub fn total<R: GradedRing<Elem = E>>(&self, ring: &R) -> E {
        self.chern.iter().fold(ring.zero(), |acc, c| ring.add(&acc, c))
    }

    /// Segre classes `s_0 … s_dim`: the inverse of the Chern series.
    pub fn segre<R: GradedRing<Elem = E>>(&self, ring: &R) -> Vec<E> {
        inverse_series(ring, &self.chern)
    }

    pub fn dual<R: GradedRing<Elem = E>>(&self, ring: &R) -> Self {
        let chern = self
            .chern
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { ring.neg(c) } else { c.clone() })
            .collect();
        Self {
            rank: self.rank,
            chern,
        }
    }

    /// `c(self ⊕ other) = c(self) c(other)`.
    pub fn direct_sum<R: GradedRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        Self {
            rank: self.rank + other.rank,
            chern: series_product(ring, &self.chern, &other.chern),
        }
    }

    /// `self ⊗ L` for a line bundle with first Chern class `c1_line`:
    /// `c_k = Σ_i binom(rank − k + i, i) c_{k−i} c1_line^i`.
    pub fn twist_by_line<R: GradedRing<Elem = E>>(&self, ring: &R, c1_line: &E) -> Self {
        let r = self.rank;
        let top = r.min(ring.dim());
        let powers: Vec<E> = (0..=top).map(|i| ring.pow(c1_line, i)).collect();
        let mut chern = Vec::with_capacity(top);
        for k in 1..=top {
            let mut ck = ring.zero();
            for i in 0..=k {
                let coeff = binomial(r - k + i, i);
                let term = ring.mul(&self.c(ring, k - i), &powers[i]);
                ck = ring.add(&ck, &ring.scale(&term, &ParamPoly::constant(coeff)));
            }
            chern.push(ck);
        }
        Self::new(ring, r, chern)
    }

    /// `self ⊗ other` by the splitting principle.
    ///
    /// `Π (1 + α_i + β_j)` is expanded in formal roots and rewritten in the
    /// elementary symmetric polynomials of each root set, which are then
    /// replaced by the Chern classes of the factors.
    pub fn tensor<R: GradedRing<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        let (a, b) = (self.rank, other.rank);
        if a > MAX_TENSOR_RANK || b > MAX_TENSOR_RANK {
            return Err(Error::Unsupported(format!(
                "tensor product of ranks {a} and {b} (limit {MAX_TENSOR_RANK})"
            )));
        }
        let top = (a * b).min(ring.dim());
        let expansion = tensor_chern_in_elementary(a, b, top);
        let mut chern = vec![ring.zero(); top];
        for ((ea, eb), coeff) in expansion {
            let degree: usize = ea
                .iter()
                .enumerate()
                .chain(eb.iter().enumerate())
                .map(|(i, &e)| (i + 1) * e as usize)
                .sum();
            if degree == 0 {
                continue;
            }
            let mut term = ring.one();
            for (i, &e) in ea.iter().enumerate() {
                term = ring.mul(&term, &ring.pow(&self.c(ring, i + 1), e as usize));
            }
            for (j, &e) in eb.iter().enumerate() {
                term = ring.mul(&term, &ring.pow(&other.c(ring, j + 1), e as usize));
            }
            let slot = &mut chern[degree - 1];
            *slot = ring.add(slot, &ring.scale(&term, &ParamPoly::from(coeff)));
        }
        Ok(Self::new(ring, a * b, chern))
    }
}

/// `[P(L)] = Σ_{i ≤ r−s} c_i(F/L) ζ^{r−s−i}` in `A(P(F))` for a rank-`s`
/// subbundle `L` of a rank-`r` bundle `F`; `quotient_chern[i]` is `c_i(F/L)`.
pub fn subbundle_class<R: GradedRing>(
    ring: &R,
    zeta: &R::Elem,
    quotient_chern: &[R::Elem],
    r: usize,
    s: usize,
) -> Result<R::Elem> {
    if s > r {
        return Err(domain(format!("subbundle of rank {s} in a bundle of rank {r}")));
    }
    let mut acc = ring.zero();
    for i in 0..=r - s {
        let Some(ci) = quotient_chern.get(i) else { continue };
        acc = ring.add(&acc, &ring.mul(ci, &ring.pow(zeta, r - s - i)));
    }
    Ok(acc)
}

/// A smooth curve `X ⊂ Y` with `T_X ⊂ F|_X`, all classes already pulled back
/// to `P(F)`.
#[derive(Debug, Clone)]
pub struct CurveInBundle<E> {
    /// `π^*[X]`.
    pub curve: E,
    /// `π^* c_1(F)`.
    pub c1_bundle: E,
    /// `π^*` of the class of a point of `X`.
    pub point: E,
    /// `deg K_X = 2g − 2`.
    pub canonical_degree: ParamPoly,
    /// `rank F`.
    pub rank: usize,
}

/// Pushforward of `[P(T_X)]` to `P(F)`:
/// `ζ^{r−1}[X] + ζ^{r−2}(c_1(F)[X] + ι_*K)`.
pub fn projectivized_tangent_class<R: GradedRing>(
    ring: &R,
    zeta: &R::Elem,
    spec: &CurveInBundle<R::Elem>,
) -> Result<R::Elem> {
    let r = spec.rank;
    if r < 2 {
        return Err(domain(format!("P(T_X) needs an ambient bundle of rank >= 2, got {r}")));
    }
    let lead = ring.mul(&ring.pow(zeta, r - 1), &spec.curve);
    let correction = ring.add(
        &ring.mul(&spec.c1_bundle, &spec.curve),
        &ring.scale(&spec.point, &spec.canonical_degree),
    );
    Ok(ring.add(&lead, &ring.mul(&ring.pow(zeta, r - 2), &correction)))
}

/// Chern series of the virtual bundle `b − a`, i.e. `c(b) · s(a)`.
pub fn difference_chern<R: GradedRing>(
    ring: &R,
    b: &FormalBundle<R::Elem>,
    a: &FormalBundle<R::Elem>,
) -> Vec<R::Elem> {
    series_product(ring, &b.chern, &a.segre(ring))
}

/// Class of the locus where a map `a → b` has rank at most `k`:
/// `det(c_{f−k+j−i}(b − a))` of size `e − k`, with `e = rank a`, `f = rank b`.
pub fn porteous<R: GradedRing>(
    ring: &R,
    a: &FormalBundle<R::Elem>,
    b: &FormalBundle<R::Elem>,
    k: i64,
) -> Result<R::Elem> {
    if k < 0 {
        return Err(domain(format!("Porteous rank bound {k} is negative")));
    }
    let k = k as usize;
    let (e, f) = (a.rank(), b.rank());
    if k >= e || k >= f {
        // the rank condition is vacuous
        return Ok(ring.one());
    }
    let size = e - k;
    let series = difference_chern(ring, b, a);
    let entry = |i: usize, j: usize| -> R::Elem {
        let idx = (f - k + j) as i64 - i as i64;
        if idx < 0 {
            ring.zero()
        } else {
            series.get(idx as usize).cloned().unwrap_or_else(|| ring.zero())
        }
    };
    let matrix: Vec<Vec<R::Elem>> = (0..size)
        .map(|i| (0..size).map(|j| entry(i, j)).collect())
        .collect();
    Ok(determinant(ring, &matrix))
}

/// Laplace expansion; matrices here are at most a few rows.
fn determinant<R: GradedRing>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    match m.len() {
        0 => ring.one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = ring.zero();
            for col in 0..n {
                if ring.is_zero(&m[0][col]) {
                    continue;
                }
                let minor: Vec<Vec<R::Elem>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = ring.mul(&m[0][col], &determinant(ring, &minor));
                acc = if col % 2 == 0 {
                    ring.add(&acc, &term)
                } else {
                    ring.sub(&acc, &term)
                };
            }
            acc
        }
    }
}

/// Product of two series `Σ a_i`, `Σ b_j` (index = degree), truncated at
/// the ring dimension.
pub fn series_product<R: GradedRing>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = ring.dim() + 1;
    let mut out = vec![ring.zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    out
}

/// Inverse of a series with constant term one.
pub fn inverse_series<R: GradedRing>(ring: &R, c: &[R::Elem]) -> Vec<R::Elem> {
    let n = ring.dim() + 1;
    let mut s = Vec::with_capacity(n);
    s.push(ring.one());
    for k in 1..n {
        let mut acc = ring.zero();
        for i in 1..=k {
            if let Some(ci) = c.get(i) {
                acc = ring.add(&acc, &ring.mul(ci, &s[k - i]));
            }
        }
        s.push(ring.neg(&acc));
    }
    s
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

type Exps = Vec<u32>;

/// Dense-enough polynomial in formal roots, keyed by exponent vectors.
type RootPoly = BTreeMap<Exps, BigInt>;

fn root_mul(p: &RootPoly, q: &RootPoly, max_degree: usize) -> RootPoly {
    let mut out = RootPoly::new();
    for (m1, c1) in p {
        let d1: u32 = m1.iter().sum();
        for (m2, c2) in q {
            let d2: u32 = m2.iter().sum();
            if (d1 + d2) as usize > max_degree {
                continue;
            }
            let m: Exps = m1.iter().zip(m2).map(|(x, y)| x + y).collect();
            let slot = out.entry(m.clone()).or_insert_with(BigInt::zero);
            *slot += c1 * c2;
            if slot.is_zero() {
                out.remove(&m);
            }
        }
    }
    out
}

/// Elementary symmetric polynomial `e_k` in the variables `offset..offset+n`
/// of a root polynomial with `total` variables.
fn elementary(k: usize, offset: usize, n: usize, total: usize) -> RootPoly {
    let mut out = RootPoly::new();
    fn rec(start: usize, left: usize, offset: usize, n: usize, cur: &mut Exps, out: &mut RootPoly) {
        if left == 0 {
            out.insert(cur.clone(), BigInt::one());
            return;
        }
        for i in start..n {
            cur[offset + i] = 1;
            rec(i + 1, left - 1, offset, n, cur, out);
            cur[offset + i] = 0;
        }
    }
    let mut cur = vec![0; total];
    rec(0, k, offset, n, &mut cur, &mut out);
    out
}

/// Chern classes of `A ⊗ B` (ranks `a`, `b`) up to degree `top`, written as
/// polynomials in `c_i(A)` and `c_j(B)`: keys are exponent vectors
/// `([e_1..e_a], [f_1..f_b])`.
fn tensor_chern_in_elementary(a: usize, b: usize, top: usize) -> BTreeMap<(Exps, Exps), BigInt> {
    let total = a + b;
    let mut prod = RootPoly::new();
    prod.insert(vec![0; total], BigInt::one());
    for i in 0..a {
        for j in 0..b {
            let mut factor = RootPoly::new();
            factor.insert(vec![0; total], BigInt::one());
            let mut alpha = vec![0; total];
            alpha[i] = 1;
            factor.insert(alpha, BigInt::one());
            let mut beta = vec![0; total];
            beta[a + j] = 1;
            factor.insert(beta, BigInt::one());
            prod = root_mul(&prod, &factor, top);
        }
    }

    let e_polys: Vec<RootPoly> = (1..=a).map(|k| elementary(k, 0, a, total)).collect();
    let f_polys: Vec<RootPoly> = (1..=b).map(|k| elementary(k, a, b, total)).collect();

    // Leading monomials in lex order are partitions within each root block;
    // peel them off with the matching product of elementary polynomials.
    let mut out = BTreeMap::new();
    while let Some((lead, coeff)) = prod.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        let ea: Exps = (0..a)
            .map(|i| lead[i] - if i + 1 < a { lead[i + 1] } else { 0 })
            .collect();
        let eb: Exps = (0..b)
            .map(|j| lead[a + j] - if j + 1 < b { lead[a + j + 1] } else { 0 })
            .collect();
        let mut basis = RootPoly::new();
        basis.insert(vec![0; total], BigInt::one());
        for (k, &e) in ea.iter().enumerate() {
            for _ in 0..e {
                basis = root_mul(&basis, &e_polys[k], usize::MAX);
            }
        }
        for (k, &e) in eb.iter().enumerate() {
            for _ in 0..e {
                basis = root_mul(&basis, &f_polys[k], usize::MAX);
            }
        }
        for (m, c) in basis {
            let slot = prod.entry(m.clone()).or_insert_with(BigInt::zero);
            *slot -= &coeff * c;
            if slot.is_zero() {
                prod.remove(&m);
            }
        }
        out.insert((ea, eb), coeff);
    }
    out
}
