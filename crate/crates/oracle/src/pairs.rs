//! Pairs of points whose tangent lines meet.
//!
//! For a curve `F` in `P^4` the tangent lines at `t` and `s` meet exactly when
//! the 5×4 matrix `[F(t), F′(t), F(s), F′(s)]` has rank ≤ 3, i.e. when its five
//! maximal minors vanish. Every minor is divisible by a power of `t − s`; after
//! dividing that out the remaining common zeros are counted by elimination.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bipoly::{maximal_minors, BiPoly};
use crate::curve::RationalCurve;
use crate::modp::{interpolate, Field, PolyP, PRIMES};
use crate::poly::{rank, Q};
use crate::{OracleError, Result};

/// Whether the tangent lines at two distinct rational parameters meet.
pub fn tangent_meet(curve: &RationalCurve, t: &Q, s: &Q) -> Result<bool> {
    if t == s {
        return Err(OracleError::Precondition("t = s: a tangent line trivially meets itself".into()));
    }
    let rows = vec![curve.point(t), curve.velocity(t), curve.point(s), curve.velocity(s)];
    Ok(rank(&rows) <= 3)
}

/// Solutions sharing a multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionGroup {
    pub multiplicity: usize,
    /// Number of (geometric) ordered pairs with this multiplicity.
    pub pairs: usize,
}

/// One reparametrization, one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Run {
    pub seed: u64,
    pub prime: u64,
    /// `t = (a u + b)/(c u + e)`, as `[a, b, c, e]`.
    pub reparametrization: [i64; 4],
    /// Power of `t − s` divided out of each minor.
    pub saturation_exponents: Vec<u32>,
    /// Degree in `t` of the first resultant.
    pub resultant_degree: usize,
    /// Roots of the resultant discarded because the full minor set does not
    /// vanish there (artifacts of the random combinations).
    pub spurious: usize,
    /// Solutions that landed on the diagonal after saturation.
    pub diagonal: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCount {
    /// Ordered pairs `(t, s)`, `t ≠ s`, counted with multiplicity.
    pub count: usize,
    pub groups: Vec<SolutionGroup>,
    pub runs: Vec<Run>,
}

/// How many independent reparametrizations and primes must agree.
#[derive(Debug, Clone, Copy)]
pub struct CountOptions {
    pub seed: u64,
    pub seeds: usize,
    pub primes: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self { seed: 1, seeds: 2, primes: 2 }
    }
}

impl CountOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

/// Ordered pairs of distinct points of a rational curve in `P^4` whose tangent
/// lines meet, counted with multiplicity (pairs at `t = ∞` included).
pub fn count_nonskew_pairs_p4(curve: &RationalCurve, opts: CountOptions) -> Result<PairCount> {
    if curve.ambient() != 4 {
        return Err(OracleError::Precondition(format!("expected a curve in P^4, got P^{}", curve.ambient())));
    }
    curve.check_osculating()?;
    let columns = |c: &RationalCurve| (c.integer_coords(), derivative(&c.integer_coords()));
    count_rank_drops(std::slice::from_ref(curve), opts, |cs| columns(&cs[0]))
}

/// Shared driver: `build` maps reparametrized curves to the two column vectors
/// `A(t), B(t)` of the rank condition `rank[A(t), B(t), A(s), B(s)] ≤ 3`.
pub(crate) fn count_rank_drops(
    curves: &[RationalCurve],
    opts: CountOptions,
    build: impl Fn(&[RationalCurve]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>),
) -> Result<PairCount> {
    if opts.seeds == 0 || opts.primes == 0 || opts.primes > PRIMES.len() {
        return Err(OracleError::Precondition("need at least one seed and between one and three primes".into()));
    }
    let mut runs = Vec::new();
    let mut groups: Option<Vec<SolutionGroup>> = None;
    for k in 0..opts.seeds {
        let seed = opts.seed.wrapping_add(k as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_moebius(&mut rng);
        let moved: Vec<RationalCurve> = curves.iter().map(|c| c.moebius(m[0], m[1], m[2], m[3])).collect::<Result<_>>()?;
        let (a, b) = build(&moved);
        let saturated = saturated_minors(&a, &b);
        let exponents: Vec<u32> = saturated.iter().map(|(_, e)| *e).collect();
        let minors: Vec<BiPoly> = saturated.into_iter().map(|(p, _)| p).filter(|p| !p.is_zero()).collect();
        if minors.is_empty() {
            return Err(OracleError::Precondition("every pair of tangent lines meets".into()));
        }
        for &p in &PRIMES[..opts.primes] {
            let (count, g, stats) = count_mod_p(&minors, Field::new(p), &mut rng)?;
            runs.push(Run {
                seed,
                prime: p,
                reparametrization: m,
                saturation_exponents: exponents.clone(),
                resultant_degree: stats.resultant_degree,
                spurious: stats.spurious,
                diagonal: stats.diagonal,
                count,
            });
            match &groups {
                None => groups = Some(g),
                Some(prev) if *prev != g => {
                    return Err(OracleError::Inconsistent(format!(
                        "seed {seed}, prime {p}: solution groups {g:?} differ from {prev:?}"
                    )))
                }
                Some(_) => {}
            }
        }
    }
    let groups = groups.unwrap_or_default();
    let count = groups.iter().map(|g| g.multiplicity * g.pairs).sum();
    Ok(PairCount { count, groups, runs })
}

fn random_moebius<R: Rng>(rng: &mut R) -> [i64; 4] {
    loop {
        let m: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-7..=7));
        if m[0] * m[3] - m[1] * m[2] != 0 && m[2] != 0 {
            return m;
        }
    }
}

pub(crate) fn derivative(coords: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    coords
        .iter()
        .map(|c| c.iter().enumerate().skip(1).map(|(i, a)| a * BigInt::from(i)).collect())
        .collect()
}

/// Maximal minors of `[A(t), B(t), A(s), B(s)]`, each with its `(t − s)`-power
/// divided out.
pub(crate) fn saturated_minors(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<(BiPoly, u32)> {
    let matrix: Vec<Vec<BiPoly>> = a
        .iter()
        .zip(b)
        .map(|(ai, bi)| vec![BiPoly::in_t(ai), BiPoly::in_t(bi), BiPoly::in_s(ai), BiPoly::in_s(bi)])
        .collect();
    maximal_minors(&matrix).into_iter().map(|m| m.saturate()).collect()
}

struct Stats {
    resultant_degree: usize,
    spurious: usize,
    diagonal: usize,
}

/// Bivariate polynomial reduced mod p: `rows[i][j]` = coefficient of `t^i s^j`.
struct BiP {
    rows: Vec<Vec<u64>>,
}

impl BiP {
    fn reduce(p: &BiPoly, f: &Field) -> Self {
        Self { rows: p.rows().iter().map(|r| r.iter().map(|a| f.from_int(a)).collect()).collect() }
    }

    fn deg_s(&self) -> usize {
        self.rows.iter().map(|r| r.len()).max().unwrap_or(1).saturating_sub(1)
    }

    fn deg_t(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    fn combine(parts: &[BiP], weights: &[u64], f: &Field) -> Self {
        let nt = parts.iter().map(|p| p.rows.len()).max().unwrap_or(0);
        let ns = parts.iter().map(|p| p.deg_s() + 1).max().unwrap_or(0);
        let mut rows = vec![vec![0u64; ns]; nt];
        for (p, &w) in parts.iter().zip(weights) {
            for (i, r) in p.rows.iter().enumerate() {
                for (j, &a) in r.iter().enumerate() {
                    rows[i][j] = f.add(rows[i][j], f.mul(w, a));
                }
            }
        }
        // trim trailing zero columns and rows
        let ns = (0..ns).rev().find(|&j| rows.iter().any(|r| r[j] != 0)).map_or(0, |j| j + 1);
        for r in &mut rows {
            r.truncate(ns);
        }
        while rows.last().is_some_and(|r| r.iter().all(|&a| a == 0)) {
            rows.pop();
        }
        Self { rows }
    }

    /// Coefficients in `s` at a fixed `t`.
    fn at_t(&self, f: &Field, t: u64) -> Vec<u64> {
        let ns = self.deg_s() + 1;
        let mut out = vec![0u64; ns];
        for r in self.rows.iter().rev() {
            for j in 0..ns {
                out[j] = f.add(f.mul(out[j], t), r.get(j).copied().unwrap_or(0));
            }
        }
        out
    }

    /// Coefficients in `s`, each a residue modulo `q` in `F_p[t]`.
    fn over(&self, f: &Field, q: &PolyP) -> Vec<PolyP> {
        (0..=self.deg_s())
            .map(|j| PolyP::new(self.rows.iter().map(|r| r.get(j).copied().unwrap_or(0)).collect()).rem(f, q))
            .collect()
    }
}

/// Sylvester determinant of two polynomials with fixed formal degrees.
fn sylvester(f: &Field, a: &[u64], b: &[u64], m: usize, n: usize) -> u64 {
    let size = m + n;
    if size == 0 {
        return 1;
    }
    let coef = |p: &[u64], k: usize| p.get(k).copied().unwrap_or(0);
    let mut mat = vec![vec![0u64; size]; size];
    for i in 0..n {
        for k in 0..=m {
            mat[i][i + k] = coef(a, m - k);
        }
    }
    for i in 0..m {
        for k in 0..=n {
            mat[n + i][i + k] = coef(b, n - k);
        }
    }
    f.det(mat)
}

/// `Res_s(a, b)` as a polynomial in `t`, by evaluation and interpolation.
fn resultant_in_s(f: &Field, a: &BiP, b: &BiP) -> PolyP {
    let (m, n) = (a.deg_s(), b.deg_s());
    let bound = a.deg_t() * n + b.deg_t() * m;
    let xs: Vec<u64> = (0..=bound as u64).collect();
    let ys: Vec<u64> = xs.iter().map(|&x| sylvester(f, &a.at_t(f, x), &b.at_t(f, x), m, n)).collect();
    interpolate(f, &xs, &ys)
}

fn count_mod_p<R: Rng>(minors: &[BiPoly], f: Field, rng: &mut R) -> Result<(usize, Vec<SolutionGroup>, Stats)> {
    let parts: Vec<BiP> = minors.iter().map(|m| BiP::reduce(m, &f)).collect();
    let mut weights = || -> Vec<u64> { (0..parts.len()).map(|_| rng.gen_range(1..f.modulus())).collect() };
    let h1 = BiP::combine(&parts, &weights(), &f);
    let h2 = BiP::combine(&parts, &weights(), &f);
    let h3 = BiP::combine(&parts, &weights(), &f);
    let r12 = resultant_in_s(&f, &h1, &h2);
    if r12.is_zero() {
        return Err(OracleError::NotFinite("the resultant of two generic combinations vanishes".into()));
    }
    let r13 = resultant_in_s(&f, &h1, &h3);
    let common = r12.gcd(&f, &r13);
    let mut stats = Stats { resultant_degree: r12.deg(), spurious: 0, diagonal: 0 };
    let mut tally: std::collections::BTreeMap<usize, usize> = Default::default();
    for (k, part) in r12.squarefree_parts(&f) {
        stats.spurious += part.deg();
        let q = part.gcd(&f, &common);
        if q.deg() == 0 {
            continue;
        }
        stats.spurious -= q.deg();
        let polys: Vec<Vec<PolyP>> = parts.iter().map(|p| p.over(&f, &q)).collect();
        for (qb, g) in gcd_all(&f, &q, &polys) {
            let dg = g.len().saturating_sub(1);
            if g.is_empty() {
                return Err(OracleError::NotFinite("all minors vanish on a whole fibre".into()));
            }
            match dg {
                0 => stats.spurious += qb.deg(),
                1 => {
                    // g = s + g0, so s = −g0; drop branches with s = t
                    let t_minus_s = PolyP::new(vec![0, 1]).add(&f, &g[0]).rem(&f, &qb);
                    let diag = qb.gcd(&f, &t_minus_s);
                    let diag_deg = if t_minus_s.is_zero() { qb.deg() } else { diag.deg() };
                    stats.diagonal += diag_deg;
                    let n = qb.deg() - diag_deg;
                    if n > 0 {
                        *tally.entry(k).or_default() += n;
                    }
                }
                _ => {
                    return Err(OracleError::Inconsistent(format!(
                        "{dg} solutions share one value of t modulo {}; reparametrize",
                        f.modulus()
                    )))
                }
            }
        }
    }
    let groups: Vec<SolutionGroup> = tally.into_iter().map(|(multiplicity, pairs)| SolutionGroup { multiplicity, pairs }).collect();
    let count = groups.iter().map(|g| g.multiplicity * g.pairs).sum();
    Ok((count, groups, stats))
}

/// A polynomial in `s` over `F_p[t]/(q)`, coefficients by power of `s`.
type SPoly = Vec<PolyP>;

/// Monic gcd over `F_p[t]/(q)` with `q` squarefree, splitting `q` whenever a
/// leading coefficient is a zero divisor. Returns `(factor of q, gcd)` pairs;
/// an empty gcd means every input vanishes on that factor.
fn gcd_all(f: &Field, q: &PolyP, polys: &[SPoly]) -> Vec<(PolyP, SPoly)> {
    let mut branches = vec![(q.clone(), SPoly::new())];
    for p in polys {
        let mut next = Vec::new();
        for (qb, g) in branches {
            let p = p.iter().map(|c| c.rem(f, &qb)).collect();
            next.extend(gcd2(f, &qb, g, p));
        }
        branches = next;
    }
    branches
}

fn gcd2(f: &Field, q: &PolyP, a: SPoly, b: SPoly) -> Vec<(PolyP, SPoly)> {
    let mut out = Vec::new();
    for (qb, bn) in normalize(f, q, b) {
        if bn.is_empty() {
            out.extend(normalize(f, &qb, a.clone()));
            continue;
        }
        let ar: SPoly = a.iter().map(|c| c.rem(f, &qb)).collect();
        let r = srem(f, &qb, &ar, &bn);
        out.extend(gcd2(f, &qb, bn, r));
    }
    out
}

/// Splits `q` until the leading coefficient of `a` is zero or a unit on each
/// piece, and makes `a` monic where it is nonzero.
fn normalize(f: &Field, q: &PolyP, mut a: SPoly) -> Vec<(PolyP, SPoly)> {
    for c in &mut a {
        *c = c.rem(f, q);
    }
    while a.last().is_some_and(PolyP::is_zero) {
        a.pop();
    }
    let Some(lc) = a.last().cloned() else { return vec![(q.clone(), a)] };
    let g = lc.gcd(f, q);
    if g.deg() == 0 {
        let inv = lc.inv_mod(f, q).expect("unit");
        let monic = a.iter().map(|c| c.mul(f, &inv).rem(f, q)).collect();
        return vec![(q.clone(), monic)];
    }
    let rest = q.divrem(f, &g).0;
    let mut out = normalize(f, &g, a.clone());
    if rest.deg() > 0 {
        out.extend(normalize(f, &rest, a));
    }
    out
}

/// Remainder of `a` by the monic `b` over `F_p[t]/(q)`.
fn srem(f: &Field, q: &PolyP, a: &SPoly, b: &SPoly) -> SPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    while r.len() > db {
        let top = r.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let shift = r.len() - db;
        for j in 0..db {
            r[shift + j] = r[shift + j].sub(f, &top.mul(f, &b[j])).rem(f, q);
        }
    }
    while r.last().is_some_and(PolyP::is_zero) {
        r.pop();
    }
    r
}
