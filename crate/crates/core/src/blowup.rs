//! The Chow ring of `B = Bl_Δ(G × G)` for a Grassmannian `G`.
//!
//! Elements are kept as `π*(t) + j_*(y)` with `t ∈ A(G×G)` and `y ∈ A(E)`,
//! where `E = P(T_G)` is the exceptional divisor and `ζ` its hyperplane class.
//! The normal form moves the `ζ^{dim G − 1}` stratum of `y` into the pullback
//! part, which makes the decomposition unique.

use std::collections::BTreeMap;
use std::fmt;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::bundles::{porteous, FormalBundle, GradedRing};
use crate::error::{Error, Result};
use crate::param::ParamPoly;
use crate::schubert::{
    dual, quotient_bundle, sub_bundle, tangent_bundle, write_term, ChowClass, GrassContext,
    Partition,
};

/// Element of `A(G × G) = A(G) ⊗ A(G)` in the basis `σ_a ⊗ σ_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorClass {
    ctx: GrassContext,
    terms: BTreeMap<(Partition, Partition), ParamPoly>,
}

impl TensorClass {
    pub fn zero(ctx: GrassContext) -> Self {
        Self {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: GrassContext) -> Self {
        Self::basis(ctx, Partition::empty(), Partition::empty())
    }

    fn basis(ctx: GrassContext, a: Partition, b: Partition) -> Self {
        let mut t = Self::zero(ctx);
        t.add_term(a, b, ParamPoly::one());
        t
    }

    /// `σ_a ⊗ σ_b`.
    pub fn sigma(ctx: GrassContext, a: &[u32], b: &[u32]) -> Result<Self> {
        let a = ChowClass::sigma(ctx, a)?;
        let b = ChowClass::sigma(ctx, b)?;
        Self::external(&a, &b)
    }

    /// External product `α ⊗ β`.
    pub fn external(alpha: &ChowClass, beta: &ChowClass) -> Result<Self> {
        if alpha.ctx() != beta.ctx() {
            return Err(Error::ContextMismatch(format!("{} vs {}", alpha.ctx(), beta.ctx())));
        }
        let mut t = Self::zero(alpha.ctx());
        for (a, x) in alpha.terms() {
            for (b, y) in beta.terms() {
                t.add_term(a.clone(), b.clone(), x * y);
            }
        }
        Ok(t)
    }

    pub fn from_terms(
        ctx: GrassContext,
        terms: impl IntoIterator<Item = (Partition, Partition, ParamPoly)>,
    ) -> Result<Self> {
        let mut t = Self::zero(ctx);
        for (a, b, c) in terms {
            if !a.fits(&ctx) || !b.fits(&ctx) {
                return Err(Error::Domain(format!("σ{a}⊗σ{b} does not fit {ctx}")));
            }
            t.add_term(a, b, c);
        }
        Ok(t)
    }

    fn add_term(&mut self, a: Partition, b: Partition, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn ctx(&self) -> GrassContext {
        self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Partition, Partition), &ParamPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: &Partition, b: &Partition) -> ParamPoly {
        self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn codim(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|(a, b)| a.size() + b.size());
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{} vs {}", self.ctx, other.ctx)))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
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
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), v * c);
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> Self {
        let mut out = Self::zero(self.ctx);
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), f(v));
        }
        out
    }

    /// Componentwise product `(σ_a⊗σ_b)(σ_c⊗σ_d) = σ_aσ_c ⊗ σ_bσ_d`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let ctx = self.ctx;
        let mut out = Self::zero(ctx);
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let left = ChowClass::sigma(ctx, a.parts())?.mul_sigma(c);
                let right = ChowClass::sigma(ctx, b.parts())?.mul_sigma(d);
                let coeff = x * y;
                for (p, u) in left.terms() {
                    for (q, v) in right.terms() {
                        out.add_term(p.clone(), q.clone(), &(u * v) * &coeff);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coefficient of `[pt] ⊗ [pt]`.
    pub fn point_degree(&self) -> ParamPoly {
        let top = self.ctx.top_partition();
        self.coeff(&top, &top)
    }
}

/// `i^*`: restriction to the diagonal, `σ_a ⊗ σ_b ↦ σ_a σ_b`.
pub fn i_pullback(t: &TensorClass) -> ChowClass {
    let ctx = t.ctx();
    let mut out = ChowClass::zero(ctx);
    for ((a, b), c) in t.terms() {
        let prod = ChowClass::one(ctx).mul_sigma(a).mul_sigma(b).scale(c);
        out = out.add(&prod).expect("one context");
    }
    out
}

/// `i_*`: class of a cycle on the diagonal. The coefficient of `σ_a ⊗ σ_b` in
/// `i_*(σ_p)` is `deg(σ_ā σ_b̄ σ_p)`.
pub fn i_pushforward(c: &ChowClass) -> TensorClass {
    let ctx = c.ctx();
    let dim = ctx.dim();
    let parts = ctx.partitions();
    let mut out = TensorClass::zero(ctx);
    for (p, coeff) in c.terms() {
        let target = dim + p.size();
        for a in &parts {
            if a.size() > target {
                continue;
            }
            let abar = dual(a, &ctx).expect("partition from the box");
            let with_a = ChowClass::one(ctx).mul_sigma(p).mul_sigma(&abar);
            for b in parts.iter().filter(|b| a.size() + b.size() == target) {
                let bbar = dual(b, &ctx).expect("partition from the box");
                let n = with_a.mul_sigma(&bbar).point_degree();
                if n.is_zero() {
                    continue;
                }
                if n.as_constant().is_some_and(|k| k > 1.into()) {
                    warn!("diagonal pushforward of σ{p} has coefficient {n} at σ{a}⊗σ{b}");
                }
                out.add_term(a.clone(), b.clone(), &n * coeff);
            }
        }
    }
    out
}

/// `pr_{1*}`: keeps the terms `σ_a ⊗ [pt]`.
fn first_projection(t: &TensorClass) -> ChowClass {
    let ctx = t.ctx();
    let top = ctx.top_partition();
    let mut out = ChowClass::zero(ctx);
    for ((a, b), c) in t.terms() {
        if *b == top {
            out.add_term(a.clone(), c.clone());
        }
    }
    out
}

/// Element of `A(E)`, `E = P(T_G)`: polynomial in `ζ` of degree below
/// `dim G`, coefficients pulled back from `A(G)` (written `σ̄_p`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EClass {
    ctx: GrassContext,
    /// `coeffs[k]` multiplies `ζ^k`; length `dim G`.
    coeffs: Vec<ChowClass>,
}

impl EClass {
    pub fn zero(ctx: GrassContext) -> Self {
        Self {
            ctx,
            coeffs: vec![ChowClass::zero(ctx); ctx.dim().max(1)],
        }
    }

    pub fn one(ctx: GrassContext) -> Self {
        Self::from_base(&ChowClass::one(ctx))
    }

    /// `π_E^*(α)`.
    pub fn from_base(alpha: &ChowClass) -> Self {
        Self::monomial(alpha, 0).expect("exponent zero is in range")
    }

    /// `π_E^*(α) ζ^k` for `k < dim G`.
    pub fn monomial(alpha: &ChowClass, k: usize) -> Result<Self> {
        let ctx = alpha.ctx();
        let mut out = Self::zero(ctx);
        if k >= out.coeffs.len() {
            return Err(Error::Domain(format!(
                "ζ^{k} is not a basis monomial of A(E) over {ctx}; reduce it with the ring"
            )));
        }
        out.coeffs[k] = alpha.clone();
        Ok(out)
    }

    /// `σ̄_p ζ^k`.
    pub fn sigma_zeta(ctx: GrassContext, p: &[u32], k: usize) -> Result<Self> {
        Self::monomial(&ChowClass::sigma(ctx, p)?, k)
    }

    pub fn ctx(&self) -> GrassContext {
        self.ctx
    }

    /// Coefficient of `ζ^k` as a class on `G`.
    pub fn zeta_coeff(&self, k: usize) -> ChowClass {
        self.coeffs.get(k).cloned().unwrap_or_else(|| ChowClass::zero(self.ctx))
    }

    /// Coefficient of `σ̄_p ζ^k`.
    pub fn coeff(&self, p: &[u32], k: usize) -> ParamPoly {
        match Partition::new(p.to_vec()) {
            Ok(p) => self.zeta_coeff(k).coeff(&p),
            Err(_) => ParamPoly::zero(),
        }
    }

    /// Nonzero terms `(p, k, coefficient)`.
    pub fn terms(&self) -> Vec<(Partition, usize, ParamPoly)> {
        let mut out = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            for (p, v) in c.terms() {
                out.push((p.clone(), k, v.clone()));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ChowClass::is_zero)
    }

    /// Highest `ζ`-exponent with a nonzero coefficient.
    pub fn zeta_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Codimension in `E` if homogeneous.
    pub fn codim(&self) -> Option<usize> {
        let mut degrees = self
            .terms()
            .into_iter()
            .map(|(p, k, _)| p.size() + k)
            .collect::<Vec<_>>();
        degrees.dedup();
        let first = *degrees.first()?;
        degrees.iter().all(|&k| k == first).then_some(first)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{} vs {}", self.ctx, other.ctx)))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(Self {
            ctx: self.ctx,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&ParamPoly::constant(-1))
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        Self {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> Self {
        Self {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|a| a.map_coeffs(&f)).collect(),
        }
    }

    /// Multiplies by a class pulled back from `G`; no `ζ` reduction needed.
    pub fn mul_base(&self, alpha: &ChowClass) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.product(alpha))
            .collect::<Result<_>>()?;
        Ok(Self {
            ctx: self.ctx,
            coeffs,
        })
    }

    /// Divides by `ζ`; fails unless the `ζ^0` coefficient vanishes.
    pub fn div_zeta(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Inconsistent(format!("{self} is not divisible by ζ")));
        }
        let mut coeffs: Vec<ChowClass> = self.coeffs[1..].to_vec();
        coeffs.push(ChowClass::zero(self.ctx));
        Ok(Self {
            ctx: self.ctx,
            coeffs,
        })
    }
}

impl fmt::Display for EClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let order = self.ctx.partitions();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            for p in &order {
                let v = c.coeff(p);
                if v.is_zero() {
                    continue;
                }
                let mut basis = String::new();
                if !p.is_empty() {
                    basis.push_str(&format!("σ̄{p}"));
                }
                match k {
                    0 => {}
                    1 => basis.push('ζ'),
                    _ => basis.push_str(&format!("ζ^{k}")),
                }
                write_term(f, &v, &basis, first)?;
                first = false;
            }
        }
        Ok(())
    }
}

/// `π^*(pullback) + j_*(exceptional)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupClass {
    pub pullback: TensorClass,
    pub exceptional: EClass,
}

impl BlowupClass {
    pub fn zero(ctx: GrassContext) -> Self {
        Self {
            pullback: TensorClass::zero(ctx),
            exceptional: EClass::zero(ctx),
        }
    }

    /// `π^*(t)`.
    pub fn pullback(t: TensorClass) -> Self {
        let ctx = t.ctx();
        Self {
            pullback: t,
            exceptional: EClass::zero(ctx),
        }
    }

    /// `j_*(y)`.
    pub fn pushforward(y: EClass) -> Self {
        Self {
            pullback: TensorClass::zero(y.ctx()),
            exceptional: y,
        }
    }

    /// `[E] = j_*(1)`.
    pub fn exceptional_divisor(ctx: GrassContext) -> Self {
        Self::pushforward(EClass::one(ctx))
    }

    pub fn ctx(&self) -> GrassContext {
        self.pullback.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.pullback.is_zero() && self.exceptional.is_zero()
    }

    /// Codimension in `B` if homogeneous (a `j_*` term gains one).
    pub fn codim(&self) -> Option<usize> {
        let a = self.pullback.codim();
        let b = self.exceptional.codim().map(|k| k + 1);
        match (a, b) {
            (Some(a), Some(b)) => (a == b).then_some(a),
            (Some(a), None) if self.exceptional.is_zero() => Some(a),
            (None, Some(b)) if self.pullback.is_zero() => Some(b),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            pullback: self.pullback.add(&other.pullback)?,
            exceptional: self.exceptional.add(&other.exceptional)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&ParamPoly::constant(-1))
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        Self {
            pullback: self.pullback.scale(c),
            exceptional: self.exceptional.scale(c),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> Self {
        Self {
            pullback: self.pullback.map_coeffs(&f),
            exceptional: self.exceptional.map_coeffs(&f),
        }
    }
}

impl fmt::Display for BlowupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if !self.pullback.is_zero() {
            write!(f, "π*({})", self.pullback)?;
            wrote = true;
        }
        if !self.exceptional.is_zero() {
            let all_negative = self
                .exceptional
                .terms()
                .iter()
                .all(|(_, _, c)| c.terms().all(|(_, v)| v.sign() == num_bigint::Sign::Minus));
            match (wrote, all_negative) {
                (true, true) => write!(f, " - j*({})", self.exceptional.neg())?,
                (true, false) => write!(f, " + j*({})", self.exceptional)?,
                (false, true) => write!(f, "-j*({})", self.exceptional.neg())?,
                (false, false) => write!(f, "j*({})", self.exceptional)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Display for TensorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let order = self.ctx.partitions();
        let rank = |p: &Partition| order.iter().position(|q| q == p).unwrap_or(usize::MAX);
        let mut keys: Vec<_> = self.terms.keys().collect();
        keys.sort_by_key(|(a, b)| (std::cmp::Reverse(a.size() + b.size()), std::cmp::Reverse(rank(a)), rank(b)));
        let name = |p: &Partition| if p.is_empty() { "1".to_string() } else { format!("σ{p}") };
        for (i, key) in keys.into_iter().enumerate() {
            let basis = format!("{}⊗{}", name(&key.0), name(&key.1));
            let c = &self.terms[key];
            let text = c.to_string();
            let compound = c.terms().count() > 1;
            if compound {
                write!(f, "{}({text})", if i == 0 { "" } else { " + " })?;
            } else if let Some(rest) = text.strip_prefix('-') {
                write!(f, "{}", if i == 0 { "-" } else { " - " })?;
                if rest != "1" {
                    write!(f, "{rest}")?;
                }
            } else {
                if i > 0 {
                    write!(f, " + ")?;
                }
                if text != "1" {
                    write!(f, "{text}")?;
                }
            }
            write!(f, "{basis}")?;
        }
        Ok(())
    }
}

/// Handle for `A(B)` over one Grassmannian; caches `c(T_G)`.
#[derive(Debug, Clone)]
pub struct Blowup {
    ctx: GrassContext,
    /// `c_0 … c_{dim G}` of `T_G ≅ N_{Δ, G×G}`.
    tangent_chern: Vec<ChowClass>,
}

impl Blowup {
    pub fn new(ctx: GrassContext) -> Result<Self> {
        if ctx.dim() == 0 {
            return Err(Error::Domain(format!("{ctx} is a point")));
        }
        let t = tangent_bundle(ctx)?;
        Ok(Self {
            ctx,
            tangent_chern: t.chern().to_vec(),
        })
    }

    pub fn ctx(&self) -> GrassContext {
        self.ctx
    }

    pub fn dim_g(&self) -> usize {
        self.ctx.dim()
    }

    pub fn tangent_chern(&self, i: usize) -> ChowClass {
        self.tangent_chern.get(i).cloned().unwrap_or_else(|| ChowClass::zero(self.ctx))
    }

    fn check(&self, ctx: GrassContext) -> Result<()> {
        if ctx == self.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{ctx} used with the blowup of {}", self.ctx)))
        }
    }

    /// Reduces a polynomial in `ζ` (any length) with `Σ c_i(T_G) ζ^{D−i} = 0`.
    fn reduce(&self, mut poly: Vec<ChowClass>) -> EClass {
        let d = self.dim_g();
        for top in (d..poly.len()).rev() {
            let lead = std::mem::replace(&mut poly[top], ChowClass::zero(self.ctx));
            if lead.is_zero() {
                continue;
            }
            // ζ^top = −Σ_{i≥1} c_i ζ^{top−i}
            for i in 1..=d {
                let ci = &self.tangent_chern[i];
                if ci.is_zero() {
                    continue;
                }
                let term = lead.product(ci).expect("one context");
                poly[top - i] = poly[top - i].sub(&term).expect("one context");
            }
        }
        poly.truncate(d);
        poly.resize(d, ChowClass::zero(self.ctx));
        EClass {
            ctx: self.ctx,
            coeffs: poly,
        }
    }

    /// `π_E^*(α) ζ^k` for any `k`, reduced into the basis.
    pub fn e_monomial(&self, alpha: &ChowClass, k: usize) -> Result<EClass> {
        self.check(alpha.ctx())?;
        let mut poly = vec![ChowClass::zero(self.ctx); (k + 1).max(self.dim_g())];
        poly[k] = alpha.clone();
        Ok(self.reduce(poly))
    }

    /// `ζ^k` in `A(E)`.
    pub fn zeta_power(&self, k: usize) -> EClass {
        self.e_monomial(&ChowClass::one(self.ctx), k).expect("own context")
    }

    /// Product in `A(E)`.
    pub fn mult_e(&self, x: &EClass, y: &EClass) -> Result<EClass> {
        self.check(x.ctx())?;
        self.check(y.ctx())?;
        let mut poly = vec![ChowClass::zero(self.ctx); 2 * self.dim_g()];
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                poly[i + j] = poly[i + j].add(&a.product(b)?)?;
            }
        }
        Ok(self.reduce(poly))
    }

    /// `ζ · y`.
    pub fn mul_zeta(&self, y: &EClass) -> Result<EClass> {
        self.mult_e(y, &self.zeta_power(1))
    }

    /// Degree of a top-dimensional class on `E`: `π_{E*} ζ^{D−1} = 1`.
    pub fn e_degree(&self, y: &EClass) -> ParamPoly {
        y.zeta_coeff(self.dim_g() - 1).point_degree()
    }

    /// Moves every `j_*(σ̄_p ζ^{D−1})` into `π^*(i_*(σ_p))` minus lower `ζ` terms.
    pub fn normal_form(&self, x: &BlowupClass) -> Result<BlowupClass> {
        self.check(x.ctx())?;
        let d = self.dim_g();
        let top = x.exceptional.zeta_coeff(d - 1);
        if top.is_zero() {
            return Ok(x.clone());
        }
        let mut exceptional = x.exceptional.clone();
        exceptional.coeffs[d - 1] = ChowClass::zero(self.ctx);
        for i in 1..d {
            let term = top.product(&self.tangent_chern[i])?;
            exceptional.coeffs[d - 1 - i] = exceptional.coeffs[d - 1 - i].sub(&term)?;
        }
        Ok(BlowupClass {
            pullback: x.pullback.add(&i_pushforward(&top))?,
            exceptional,
        })
    }

    /// `π^*(i_*(σ_p))` written entirely as `j_*`, the inverse of the
    /// normal-form step. `None` if the pullback part is not supported on the
    /// diagonal.
    pub fn exceptional_form(&self, x: &BlowupClass) -> Result<Option<EClass>> {
        let x = self.normal_form(x)?;
        let t = first_projection(&x.pullback);
        if i_pushforward(&t) != x.pullback {
            return Ok(None);
        }
        let d = self.dim_g();
        let mut exceptional = x.exceptional.clone();
        exceptional.coeffs[d - 1] = exceptional.coeffs[d - 1].add(&t)?;
        for i in 1..d {
            let term = t.product(&self.tangent_chern[i])?;
            exceptional.coeffs[d - 1 - i] = exceptional.coeffs[d - 1 - i].add(&term)?;
        }
        Ok(Some(exceptional))
    }

    /// Product in `A(B)`:
    /// `(π^*a + j_*x)(π^*b + j_*y) = π^*(ab) + j_*(x·i^*b + y·i^*a − xyζ)`.
    pub fn mult_b(&self, x: &BlowupClass, y: &BlowupClass) -> Result<BlowupClass> {
        self.check(x.ctx())?;
        self.check(y.ctx())?;
        let pullback = x.pullback.product(&y.pullback)?;
        let xb = x.exceptional.mul_base(&i_pullback(&y.pullback))?;
        let ya = y.exceptional.mul_base(&i_pullback(&x.pullback))?;
        let xy = self.mult_e(&x.exceptional, &y.exceptional)?;
        let xyz = self.mul_zeta(&xy)?;
        let exceptional = xb.add(&ya)?.sub(&xyz)?;
        self.normal_form(&BlowupClass {
            pullback,
            exceptional,
        })
    }

    /// Degree of a zero-dimensional class on `B`.
    pub fn degree(&self, x: &BlowupClass) -> Result<ParamPoly> {
        let x = self.normal_form(x)?;
        Ok(x.pullback.point_degree() + self.e_degree(&x.exceptional))
    }

    /// `A(E)` as a graded ring for Chern-class computations on `E`.
    pub fn e_ring(&self) -> ERing<'_> {
        ERing(self)
    }

    /// `[D_1]`: pairs of subspaces meeting nontrivially, as the locus where
    /// `S_1 ⊕ S_2 → V` drops rank.
    pub fn class_d1(&self) -> Result<TensorClass> {
        let ring = ProductRing(self.ctx);
        let n = self.ctx.sub();
        let s = sub_bundle(self.ctx);
        let s1 = FormalBundle::new(
            &ring,
            n,
            (1..=n).map(|k| TensorClass::external(&s.c(&self.ctx, k), &ChowClass::one(self.ctx))).collect::<Result<_>>()?,
        );
        let s2 = FormalBundle::new(
            &ring,
            n,
            (1..=n).map(|k| TensorClass::external(&ChowClass::one(self.ctx), &s.c(&self.ctx, k))).collect::<Result<_>>()?,
        );
        let v = FormalBundle::trivial(&ring, self.ctx.ambient());
        porteous(&ring, &s1.direct_sum(&ring, &s2), &v, 2 * n as i64 - 1)
    }

    /// `[D̃_1 ∩ E]` in `A(E)`: on `E = P(Hom(S, Q))` the tautological map
    /// `O(−1) ⊗ S → Q` has rank below `n`.
    pub fn d1_tilde_on_e(&self) -> Result<EClass> {
        let ring = self.e_ring();
        let lift = |b: FormalBundle<ChowClass>| {
            let chern = b.chern()[1..].iter().map(EClass::from_base).collect();
            FormalBundle::new(&ring, b.rank(), chern)
        };
        let s = lift(sub_bundle(self.ctx));
        let q = lift(quotient_bundle(self.ctx));
        let twisted = s.twist_by_line(&ring, &self.zeta_power(1).neg());
        porteous(&ring, &twisted, &q, self.ctx.sub() as i64 - 1)
    }

    /// `[D̃_1] = π^*[D_1] + j_*(μ)`, with `μ` and the multiplicity `m` solved
    /// from `[E]·[D̃_1] = m [D̃_1 ∩ E]`.
    pub fn d1_tilde(&self) -> Result<ProperTransform> {
        let d1 = self.class_d1()?;
        let geo = self.d1_tilde_on_e()?;
        let restricted = i_pullback(&d1);
        let base = geo.zeta_coeff(0);
        let m = solve_multiple(&restricted, &base)?;
        // [E]·(π^*[D_1] + j_*μ) = j_*(i^*[D_1] − μζ)
        let mu = EClass::from_base(&restricted).sub(&geo.scale(&m))?.div_zeta()?;
        let class = BlowupClass {
            pullback: d1,
            exceptional: mu,
        };
        let check = self.mult_b(&BlowupClass::exceptional_divisor(self.ctx), &class)?;
        let expected = self.normal_form(&BlowupClass::pushforward(geo.scale(&m)))?;
        if check != expected {
            return Err(Error::Inconsistent(format!(
                "[E]·[D̃1] = {check} but the degeneracy locus gives {expected}"
            )));
        }
        Ok(ProperTransform {
            class,
            on_exceptional: geo,
            multiplicity: m,
        })
    }

    /// Class of the curve `C` of lines with `[C] = dv σ_{w,w−1}`, `w = N − 2`.
    pub fn curve_class(&self, dv: &ParamPoly) -> Result<ChowClass> {
        self.require_lines()?;
        let w = self.ctx.width() as u32;
        Ok(ChowClass::sigma(self.ctx, &[w, w - 1])?.scale(dv))
    }

    fn require_lines(&self) -> Result<()> {
        if self.ctx.sub() != 2 || self.ctx.width() < 2 {
            return Err(Error::Domain(format!(
                "one-parameter families of lines need Gr(2,N) with N >= 4, got {}",
                self.ctx
            )));
        }
        Ok(())
    }

    /// `[Γ̃ ∩ E] = [P(T_C)]` inside `E = P(T_G)`.
    pub fn gamma_tilde_on_e(&self, dv: &ParamPoly, g: &ParamPoly) -> Result<EClass> {
        let curve = self.curve_class(dv)?;
        let canonical = g.scale_i(2) - ParamPoly::constant(2);
        let ring = self.e_ring();
        let spec = CurveInBundle {
            curve: EClass::from_base(&curve),
            c1_bundle: EClass::from_base(&self.tangent_chern(1)),
            point: EClass::from_base(&ChowClass::point(self.ctx)),
            canonical_degree: canonical,
            rank: self.dim_g(),
        };
        crate::bundles::projectivized_tangent_class(&ring, &self.zeta_power(1), &spec)
    }

    /// `[Γ̃] = dv² π^*([σ_C]⊗[σ_C]) + j_*(ν)` with `−νζ = [Γ̃ ∩ E]`.
    pub fn gamma_tilde(&self, dv: &ParamPoly, g: &ParamPoly) -> Result<ProperTransform> {
        let curve = self.curve_class(dv)?;
        let geo = self.gamma_tilde_on_e(dv, g)?;
        let pullback = TensorClass::external(&curve, &curve)?;
        let restricted = i_pullback(&pullback);
        let nu = EClass::from_base(&restricted).sub(&geo)?.div_zeta()?;
        let class = BlowupClass {
            pullback,
            exceptional: nu,
        };
        Ok(ProperTransform {
            class: self.normal_form(&class)?,
            on_exceptional: geo,
            multiplicity: ParamPoly::one(),
        })
    }
}

/// A proper transform together with its restriction to `E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperTransform {
    pub class: BlowupClass,
    /// The class of the intersection with `E`, computed geometrically.
    pub on_exceptional: EClass,
    /// `m` in `[E]·[X̃] = m [X̃ ∩ E]`.
    pub multiplicity: ParamPoly,
}

/// Finds `m` with `target = m · base`.
fn solve_multiple(target: &ChowClass, base: &ChowClass) -> Result<ParamPoly> {
    let Some((p, b)) = base.terms().next() else {
        return Err(Error::Inconsistent("degeneracy class has no ζ-free part".into()));
    };
    let m = target
        .coeff(p)
        .div_exact(b)
        .ok_or_else(|| Error::Inconsistent(format!("{target} is not a multiple of {base}")))?;
    if base.scale(&m) != *target {
        return Err(Error::Inconsistent(format!("{target} is not a multiple of {base}")));
    }
    Ok(m)
}

pub use crate::bundles::CurveInBundle;

/// `A(G × G)` as a graded ring.
#[derive(Debug, Clone, Copy)]
pub struct ProductRing(pub GrassContext);

impl GradedRing for ProductRing {
    type Elem = TensorClass;
    fn dim(&self) -> usize {
        2 * self.0.dim()
    }
    fn zero(&self) -> TensorClass {
        TensorClass::zero(self.0)
    }
    fn one(&self) -> TensorClass {
        TensorClass::one(self.0)
    }
    fn add(&self, a: &TensorClass, b: &TensorClass) -> TensorClass {
        a.add(b).expect("one context")
    }
    fn mul(&self, a: &TensorClass, b: &TensorClass) -> TensorClass {
        a.product(b).expect("one context")
    }
    fn scale(&self, a: &TensorClass, c: &ParamPoly) -> TensorClass {
        a.scale(c)
    }
    fn is_zero(&self, a: &TensorClass) -> bool {
        a.is_zero()
    }
}

/// `A(E)` as a graded ring.
#[derive(Debug, Clone, Copy)]
pub struct ERing<'a>(&'a Blowup);

impl GradedRing for ERing<'_> {
    type Elem = EClass;
    fn dim(&self) -> usize {
        2 * self.0.dim_g() - 1
    }
    fn zero(&self) -> EClass {
        EClass::zero(self.0.ctx)
    }
    fn one(&self) -> EClass {
        EClass::one(self.0.ctx)
    }
    fn add(&self, a: &EClass, b: &EClass) -> EClass {
        a.add(b).expect("one context")
    }
    fn mul(&self, a: &EClass, b: &EClass) -> EClass {
        self.0.mult_e(a, b).expect("one context")
    }
    fn scale(&self, a: &EClass, c: &ParamPoly) -> EClass {
        a.scale(c)
    }
    fn is_zero(&self, a: &EClass) -> bool {
        a.is_zero()
    }
}

#[derive(Serialize, Deserialize)]
struct TensorTermJson {
    left: Partition,
    right: Partition,
    coeff: ParamPoly,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    ctx: [usize; 2],
    terms: Vec<TensorTermJson>,
}

#[derive(Serialize, Deserialize)]
struct ETermJson {
    partition: Partition,
    zeta: usize,
    coeff: ParamPoly,
}

#[derive(Serialize, Deserialize)]
struct EJson {
    ctx: [usize; 2],
    terms: Vec<ETermJson>,
}

impl Serialize for TensorClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorJson {
            ctx: [self.ctx.sub(), self.ctx.ambient()],
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| TensorTermJson {
                    left: a.clone(),
                    right: b.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TensorJson::deserialize(d)?;
        let ctx = GrassContext::new(raw.ctx[0], raw.ctx[1]).map_err(serde::de::Error::custom)?;
        TensorClass::from_terms(ctx, raw.terms.into_iter().map(|t| (t.left, t.right, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for EClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EJson {
            ctx: [self.ctx.sub(), self.ctx.ambient()],
            terms: self
                .terms()
                .into_iter()
                .map(|(partition, zeta, coeff)| ETermJson {
                    partition,
                    zeta,
                    coeff,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = EJson::deserialize(d)?;
        let ctx = GrassContext::new(raw.ctx[0], raw.ctx[1]).map_err(serde::de::Error::custom)?;
        let mut out = EClass::zero(ctx);
        for t in raw.terms {
            let base = ChowClass::from_terms(ctx, [(t.partition, t.coeff)])
                .map_err(serde::de::Error::custom)?;
            let term = EClass::monomial(&base, t.zeta).map_err(serde::de::Error::custom)?;
            out = out.add(&term).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct BlowupJson {
    pullback: TensorClass,
    exceptional: EClass,
}

impl Serialize for BlowupClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BlowupJson {
            pullback: self.pullback.clone(),
            exceptional: self.exceptional.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BlowupClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BlowupJson::deserialize(d)?;
        if raw.pullback.ctx() != raw.exceptional.ctx() {
            return Err(serde::de::Error::custom("pullback and exceptional parts disagree on the Grassmannian"));
        }
        Ok(BlowupClass {
            pullback: raw.pullback,
            exceptional: raw.exceptional,
        })
    }
}
