//! Chow rings of Grassmannians in the Schubert basis.
//!
//! Products are computed with the Pieri rule only: a general Schubert class is
//! expanded as a Giambelli determinant in the special classes `σ_k = c_k(Q)`,
//! and each special class acts on the other factor by Pieri.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bundles::{FormalBundle, GradedRing};
use crate::error::{domain, Error, Result};
use crate::param::ParamPoly;

/// `Gr(n, N)`: `n`-dimensional subspaces of an `N`-dimensional vector space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrassContext {
    sub: usize,
    ambient: usize,
}

impl GrassContext {
    pub fn new(sub: usize, ambient: usize) -> Result<Self> {
        if sub == 0 || sub > ambient {
            return Err(domain(format!("Gr({sub},{ambient}) needs 1 <= n <= N")));
        }
        Ok(Self { sub, ambient })
    }

    /// Subspace dimension `n`.
    pub fn sub(&self) -> usize {
        self.sub
    }

    /// Ambient dimension `N`.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Width of the partition box, `N - n`.
    pub fn width(&self) -> usize {
        self.ambient - self.sub
    }

    pub fn dim(&self) -> usize {
        self.sub * self.width()
    }

    /// The full box partition, indexing the class of a point.
    pub fn top_partition(&self) -> Partition {
        Partition(vec![self.width() as u32; if self.width() == 0 { 0 } else { self.sub }])
    }

    /// All partitions in the `n × (N-n)` box, in graded order.
    pub fn partitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(ctx: &GrassContext, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition::normalized(cur.clone()));
            if cur.len() == ctx.sub {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                rec(ctx, p, cur, out);
                cur.pop();
            }
        }
        rec(self, self.width() as u32, &mut cur, &mut out);
        out.sort_by(|a, b| a.size().cmp(&b.size()).then(b.cmp(a)));
        out
    }

    pub fn partitions_of_size(&self, k: usize) -> Vec<Partition> {
        self.partitions().into_iter().filter(|p| p.size() == k).collect()
    }
}

impl fmt::Display for GrassContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({},{})", self.sub, self.ambient)
    }
}

/// Weakly decreasing list of positive parts; trailing zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(domain(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Self::normalized(parts))
    }

    fn normalized(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// The one-row partition `(k)`.
    pub fn row(k: u32) -> Self {
        Self::normalized(vec![k])
    }

    /// The one-column partition `(1^k)`.
    pub fn column(k: usize) -> Self {
        Self(vec![1; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of boxes, i.e. the codimension of `σ_λ`.
    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn fits(&self, ctx: &GrassContext) -> bool {
        self.len() <= ctx.sub() && self.part(0) as usize <= ctx.width()
    }

    fn check(&self, ctx: &GrassContext) -> Result<()> {
        if self.fits(ctx) {
            Ok(())
        } else {
            Err(domain(format!("partition {self} does not fit the box of {ctx}")))
        }
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        if self.0.iter().all(|&p| p < 10) {
            for p in &self.0 {
                write!(f, "{p}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

/// Complement partition: the Schubert class with `σ_λ · σ_dual = [pt]`.
pub fn dual(lambda: &Partition, ctx: &GrassContext) -> Result<Partition> {
    lambda.check(ctx)?;
    let n = ctx.sub();
    let w = ctx.width() as u32;
    let parts = (0..n).map(|i| w - lambda.part(n - 1 - i)).collect();
    Ok(Partition::normalized(parts))
}

/// Partitions obtained from `lambda` by adding a horizontal strip of `i` boxes
/// inside the box of `ctx`.
fn horizontal_strips(lambda: &Partition, i: usize, ctx: &GrassContext) -> Vec<Partition> {
    let n = ctx.sub();
    let w = ctx.width() as u32;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(
        row: usize,
        left: u32,
        lambda: &Partition,
        n: usize,
        w: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if row == n {
            if left == 0 {
                out.push(Partition::normalized(cur.clone()));
            }
            return;
        }
        let base = lambda.part(row);
        // no two added boxes in one column: the new row stays below the old row above
        let cap = if row == 0 { w } else { lambda.part(row - 1) };
        let max_add = cap.saturating_sub(base).min(left);
        for add in 0..=max_add {
            cur.push(base + add);
            rec(row + 1, left - add, lambda, n, w, cur, out);
            cur.pop();
        }
    }
    rec(0, i as u32, lambda, n, w, &mut cur, &mut out);
    out
}

/// `σ_λ · σ_i` by the Pieri rule.
pub fn pieri(lambda: &Partition, i: usize, ctx: &GrassContext) -> Result<ChowClass> {
    lambda.check(ctx)?;
    if i > ctx.width() {
        return Err(domain(format!("σ_{i} is out of range in {ctx}")));
    }
    let mut out = ChowClass::zero(*ctx);
    for mu in horizontal_strips(lambda, i, ctx) {
        out.add_term(mu, ParamPoly::one());
    }
    Ok(out)
}

/// Element of `A(Gr(n,N)) ⊗ ℤ[d, g, dv]` in the Schubert basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    ctx: GrassContext,
    terms: BTreeMap<Partition, ParamPoly>,
}

impl ChowClass {
    pub fn zero(ctx: GrassContext) -> Self {
        Self {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: GrassContext) -> Self {
        Self::basis(ctx, Partition::empty())
    }

    pub fn point(ctx: GrassContext) -> Self {
        Self::basis(ctx, ctx.top_partition())
    }

    fn basis(ctx: GrassContext, p: Partition) -> Self {
        let mut c = Self::zero(ctx);
        c.add_term(p, ParamPoly::one());
        c
    }

    /// `σ_λ` for the given parts.
    pub fn sigma(ctx: GrassContext, parts: &[u32]) -> Result<Self> {
        let p = Partition::new(parts.to_vec())?;
        p.check(&ctx)?;
        Ok(Self::basis(ctx, p))
    }

    /// Special class `σ_k = c_k(Q)`; zero when `k` exceeds the box width.
    pub fn special(ctx: GrassContext, k: usize) -> Self {
        if k > ctx.width() {
            Self::zero(ctx)
        } else {
            Self::basis(ctx, Partition::row(k as u32))
        }
    }

    /// `σ_{1^k}`; zero when `k > n`.
    pub fn column(ctx: GrassContext, k: usize) -> Self {
        if k > ctx.sub() || (k > 0 && ctx.width() == 0) {
            Self::zero(ctx)
        } else {
            Self::basis(ctx, Partition::column(k))
        }
    }

    pub fn from_terms(
        ctx: GrassContext,
        terms: impl IntoIterator<Item = (Partition, ParamPoly)>,
    ) -> Result<Self> {
        let mut c = Self::zero(ctx);
        for (p, v) in terms {
            p.check(&ctx)?;
            c.add_term(p, v);
        }
        Ok(c)
    }

    pub(crate) fn add_term(&mut self, p: Partition, v: ParamPoly) {
        if v.is_zero() {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_default();
        *slot += v;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn ctx(&self) -> GrassContext {
        self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Partition) -> ParamPoly {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Codimension if homogeneous.
    pub fn codim(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Partition::size);
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    /// The degree-`k` homogeneous part.
    pub fn part_of_degree(&self, k: usize) -> Self {
        Self {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.size() == k)
                .map(|(p, v)| (p.clone(), v.clone()))
                .collect(),
        }
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{} vs {}", self.ctx, other.ctx)))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let mut out = self.clone();
        for (p, v) in &other.terms {
            out.add_term(p.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&ParamPoly::constant(-1))
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        let mut out = Self::zero(self.ctx);
        if c.is_zero() {
            return out;
        }
        for (p, v) in &self.terms {
            out.add_term(p.clone(), v * c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> Self {
        let mut out = Self::zero(self.ctx);
        for (p, v) in &self.terms {
            out.add_term(p.clone(), f(v));
        }
        out
    }

    /// Multiplies by the special class `σ_k` (Pieri, extended linearly).
    pub fn mul_special(&self, k: usize) -> Self {
        let mut out = Self::zero(self.ctx);
        if k > self.ctx.width() {
            return out;
        }
        for (p, v) in &self.terms {
            for mu in horizontal_strips(p, k, &self.ctx) {
                out.add_term(mu, v.clone());
            }
        }
        out
    }

    /// Multiplies by `σ_λ`, expanding `σ_λ` as a Giambelli determinant.
    pub fn mul_sigma(&self, lambda: &Partition) -> Self {
        let mut out = Self::zero(self.ctx);
        for (sign, specials) in giambelli_terms(lambda) {
            let mut acc = self.clone();
            for k in specials {
                match k {
                    Some(k) => acc = acc.mul_special(k),
                    None => {
                        acc = Self::zero(self.ctx);
                        break;
                    }
                }
            }
            if !acc.is_zero() {
                out = out.add(&acc.scale(&ParamPoly::constant(sign))).expect("same context");
            }
        }
        out
    }

    /// Product in `A(G)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let mut out = Self::zero(self.ctx);
        for (lambda, a) in &self.terms {
            let part = other.mul_sigma(lambda).scale(a);
            out = out.add(&part)?;
        }
        Ok(out)
    }

    /// Same product through a second route: both factors are expanded into
    /// monomials in special classes and every monomial is evaluated by
    /// iterated Pieri starting from `1`.
    pub fn product_iterated_pieri(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let mut out = Self::zero(self.ctx);
        for (lambda, a) in &self.terms {
            for (mu, b) in &other.terms {
                for (s1, m1) in giambelli_terms(lambda) {
                    for (s2, m2) in giambelli_terms(mu) {
                        let mut acc = Self::one(self.ctx);
                        for k in m1.iter().chain(m2.iter()) {
                            match k {
                                Some(k) => acc = acc.mul_special(*k),
                                None => acc = Self::zero(self.ctx),
                            }
                        }
                        let c = &(a * b) * &ParamPoly::constant(s1 * s2);
                        out = out.add(&acc.scale(&c))?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of the point class.
    pub fn point_degree(&self) -> ParamPoly {
        self.coeff(&self.ctx.top_partition())
    }
}

/// Expansion `σ_λ = det(σ_{λ_i + j - i})` as signed products of special
/// classes. `None` marks a factor `σ_k` with `k < 0`, which kills the term.
fn giambelli_terms(lambda: &Partition) -> Vec<(i64, Vec<Option<usize>>)> {
    let l = lambda.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..l).collect();
    permutations(&mut perm, 0, &mut |p| {
        let sign = permutation_sign(p);
        let factors = (0..l)
            .map(|i| {
                let k = lambda.part(i) as i64 + p[i] as i64 - i as i64;
                (k >= 0).then_some(k as usize)
            })
            .collect();
        out.push((sign, factors));
    });
    if l == 0 {
        out.push((1, Vec::new()));
    }
    out
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if v.is_empty() {
        return;
    }
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

fn permutation_sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for p in self.ctx.partitions() {
            let Some(c) = self.terms.get(&p) else { continue };
            let basis = if p.is_empty() { String::new() } else { format!("σ{p}") };
            write_term(f, c, &basis, first)?;
            first = false;
        }
        Ok(())
    }
}

/// Writes `c·basis` with a leading sign, parenthesising compound coefficients.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &ParamPoly,
    basis: &str,
    first: bool,
) -> fmt::Result {
    let text = c.to_string();
    let compound = c.terms().count() > 1;
    if compound {
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "({text})")?;
    } else if let Some(rest) = text.strip_prefix('-') {
        write!(f, "{}", if first { "-" } else { " - " })?;
        if rest != "1" || basis.is_empty() {
            write!(f, "{rest}")?;
        }
    } else {
        if !first {
            write!(f, " + ")?;
        }
        if text != "1" || basis.is_empty() {
            write!(f, "{text}")?;
        }
    }
    write!(f, "{basis}")
}

impl GradedRing for GrassContext {
    type Elem = ChowClass;

    fn dim(&self) -> usize {
        GrassContext::dim(self)
    }
    fn zero(&self) -> ChowClass {
        ChowClass::zero(*self)
    }
    fn one(&self) -> ChowClass {
        ChowClass::one(*self)
    }
    fn add(&self, a: &ChowClass, b: &ChowClass) -> ChowClass {
        a.add(b).expect("classes of one Grassmannian")
    }
    fn mul(&self, a: &ChowClass, b: &ChowClass) -> ChowClass {
        a.product(b).expect("classes of one Grassmannian")
    }
    fn scale(&self, a: &ChowClass, c: &ParamPoly) -> ChowClass {
        a.scale(c)
    }
    fn is_zero(&self, a: &ChowClass) -> bool {
        a.is_zero()
    }
}

/// Tautological subbundle `S`: `c(S) = Σ (−1)^k σ_{1^k}`.
pub fn sub_bundle(ctx: GrassContext) -> FormalBundle<ChowClass> {
    let chern = (1..=ctx.sub())
        .map(|k| {
            let c = ChowClass::column(ctx, k);
            if k % 2 == 1 {
                c.neg()
            } else {
                c
            }
        })
        .collect();
    FormalBundle::new(&ctx, ctx.sub(), chern)
}

/// Tautological quotient bundle `Q`: `c(Q) = 1 + σ_1 + … + σ_{N−n}`.
pub fn quotient_bundle(ctx: GrassContext) -> FormalBundle<ChowClass> {
    let chern = (1..=ctx.width()).map(|k| ChowClass::special(ctx, k)).collect();
    FormalBundle::new(&ctx, ctx.width(), chern)
}

/// Tangent bundle `T_G = S* ⊗ Q`.
pub fn tangent_bundle(ctx: GrassContext) -> Result<FormalBundle<ChowClass>> {
    sub_bundle(ctx).dual(&ctx).tensor(&ctx, &quotient_bundle(ctx))
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Partition,
    coeff: ParamPoly,
}

#[derive(Serialize, Deserialize)]
struct ChowClassJson {
    ctx: [usize; 2],
    terms: Vec<TermJson>,
}

impl Serialize for ChowClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChowClassJson {
            ctx: [self.ctx.sub(), self.ctx.ambient()],
            terms: self
                .terms
                .iter()
                .map(|(p, c)| TermJson {
                    partition: p.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChowClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ChowClassJson::deserialize(d)?;
        let ctx = GrassContext::new(raw.ctx[0], raw.ctx[1]).map_err(serde::de::Error::custom)?;
        ChowClass::from_terms(ctx, raw.terms.into_iter().map(|t| (t.partition, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}
