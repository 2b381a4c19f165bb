//! End-to-end intersection computations for curves in `P^3` and `P^4`.
//!
//! Each public function derives its numbers by ring arithmetic in the Chow
//! rings of this crate; nothing is transcribed. Polynomials are in `d`, `g`
//! and the dual degree `dv`; results that mix `d` and `dv` only agree with
//! closed forms after [`ParamPoly::subs_dual_degree`].

use serde::{Deserialize, Serialize};

use crate::blowup::{Blowup, BlowupClass, EClass, TensorClass};
use crate::bundles::{inverse_series, projectivized_tangent_class, subbundle_class, CurveInBundle, FormalBundle, GradedRing};
use crate::error::{domain, Error, Result};
use crate::numerics::{CurveBundleNumerics, CurveSquare};
use crate::param::ParamPoly;
use crate::quotient::{QElem, QuotientRing};
use crate::schubert::GrassContext;

/// A smooth curve of degree `d` and genus `g` in `P^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInvariants {
    pub ambient: usize,
    pub degree: i64,
    pub genus: i64,
}

impl CurveInvariants {
    pub fn new(ambient: usize, degree: i64, genus: i64) -> Result<Self> {
        if degree < 1 || genus < 0 {
            return Err(domain(format!("no curve of degree {degree} and genus {genus}")));
        }
        if ambient < 2 {
            return Err(domain(format!("ambient P^{ambient} is too small")));
        }
        Ok(Self { ambient, degree, genus })
    }

    /// Degree of the tangent developable's curve of lines, `2d + 2g − 2`.
    pub fn dual_degree(&self) -> i64 {
        2 * self.degree + 2 * self.genus - 2
    }

    pub fn canonical_degree(&self) -> i64 {
        2 * self.genus - 2
    }

    /// Evaluates a polynomial at this curve.
    pub fn eval(&self, p: &ParamPoly) -> Result<i64> {
        p.eval_i64(self.degree, self.genus, self.dual_degree())
            .ok_or_else(|| domain(format!("{p} overflows at d={}, g={}", self.degree, self.genus)))
    }
}

fn canonical() -> ParamPoly {
    ParamPoly::g().scale_i(2) - ParamPoly::constant(2)
}

fn c(k: i64) -> ParamPoly {
    ParamPoly::constant(k)
}

/// Dimension of the locus of pairs of `n`-planes in `C^N` meeting in
/// dimension at least `r`.
pub fn dim_degeneracy_stratum(r: usize, n: usize, big_n: usize) -> Result<usize> {
    if n == 0 || n >= big_n {
        return Err(domain(format!("Gr({n},{big_n}) is not a proper Grassmannian")));
    }
    let lowest = (2 * n).saturating_sub(big_n);
    if r < lowest || r > n {
        return Err(domain(format!(
            "two {n}-planes in C^{big_n} meet in dimension between {lowest} and {n}, not {r}"
        )));
    }
    Ok(r * (big_n - r) + 2 * (n - r) * (big_n - n))
}

/// Lower and upper bounds `(3n, 4n + 1)` on the smallest projective space
/// in which an `n`-fold embeds with pairwise skew tangent spaces.
pub fn msdim_bounds(n: usize) -> Result<(usize, usize)> {
    if n == 0 {
        return Err(domain("a point has no tangent spaces to separate"));
    }
    Ok((3 * n, 4 * n + 1))
}

/// Degree of the scroll joining two curves of degrees `d1`, `d2` along a
/// correspondence.
pub fn scroll_degree(d1: u64, d2: u64) -> Result<u64> {
    if d1 == 0 || d2 == 0 {
        return Err(domain("scroll directrices need positive degree"));
    }
    Ok(d1 + d2)
}

/// `[D̃_1][Γ̃]` over `Gr(2,4)`, which is supported on `E`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct P3Intersection {
    /// Coefficients of `j_*(σ̄_21 ζ^3)` and `j_*(σ̄_22 ζ^2)` in the product.
    pub product: (ParamPoly, ParamPoly),
    /// The same coefficients of `j_*[Γ̃ ∩ E]`.
    pub tangent_curve: (ParamPoly, ParamPoly),
    /// `m` with `product ≡ m · tangent_curve` in the first coefficient.
    pub multiplicity: ParamPoly,
    /// `m · tangent_curve − product`; vanishes exactly for rational curves.
    pub genus_obstruction: (ParamPoly, ParamPoly),
}

pub fn p3_intersection() -> Result<P3Intersection> {
    let b = Blowup::new(GrassContext::new(2, 4)?)?;
    let (dv, g) = (ParamPoly::dv(), ParamPoly::g());
    let d1 = b.d1_tilde()?.class;
    let gamma = b.gamma_tilde(&dv, &g)?;
    let prod = b.mult_b(&d1, &gamma.class)?;
    let on_e = b
        .exceptional_form(&prod)?
        .ok_or_else(|| Error::Inconsistent("[D̃1][Γ̃] is not supported on E".into()))?;
    let on_e_geo = b
        .exceptional_form(&BlowupClass::pushforward(gamma.on_exceptional))?
        .ok_or_else(|| Error::Inconsistent("j_*[Γ̃ ∩ E] left E".into()))?;
    let pick = |x: &EClass| (x.coeff(&[2, 1], 3), x.coeff(&[2, 2], 2));
    let product = pick(&on_e);
    let tangent_curve = pick(&on_e_geo);
    if on_e.terms().len() > 2 || on_e_geo.terms().len() > 2 {
        return Err(Error::Inconsistent(format!("unexpected terms in {on_e} or {on_e_geo}")));
    }
    let multiplicity = product
        .0
        .div_exact(&tangent_curve.0)
        .ok_or_else(|| Error::Inconsistent("product is not a multiple of the tangent curve".into()))?;
    let genus_obstruction = (
        &multiplicity * &tangent_curve.0 - product.0.clone(),
        &multiplicity * &tangent_curve.1 - product.1.clone(),
    );
    Ok(P3Intersection {
        product,
        tangent_curve,
        multiplicity,
        genus_obstruction,
    })
}

/// `deg [D̃_1][Γ̃]` over `Gr(2,5)`: the number of pairs of meeting lines of a
/// scroll in `P^4`, in terms of `dv` and `g`.
pub fn p4_scroll_count() -> Result<ParamPoly> {
    let b = Blowup::new(GrassContext::new(2, 5)?)?;
    let d1 = b.d1_tilde()?.class;
    let gamma = b.gamma_tilde(&ParamPoly::dv(), &ParamPoly::g())?.class;
    b.degree(&b.mult_b(&d1, &gamma)?)
}

/// How the fibre relation of `A(Δ̃_D)` is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FibreRelation {
    /// `ζ_H^3 = −Σ_{j=1..3} c_j ζ_H^{3−j}`.
    Full,
    /// Only the `c_1` term, `ζ_H^3 = −c_1 ζ_H^2`.
    Truncated,
}

/// Chow rings over `P^4 = P(V)`:
/// `A(Δ̂_D) = A(P(Q))` with generators `e, ζQ`;
/// `A(D̂_1) = A(P(Q) ×_{P^4} P(Q))` with `e, ζ1, ζ2`;
/// `A(Δ̃_D) = A(P(Hom(S_2/S_1, V/S_2)))` over `Δ̂_D`, adding `ζH`.
#[derive(Debug, Clone)]
pub struct P4Rings {
    pub delta_hat: QuotientRing,
    pub d1_hat: QuotientRing,
    pub delta_tilde: QuotientRing,
    /// `c_0 … c_3` of `Hom(S_2/S_1, V/S_2)` in `A(Δ̂_D)`.
    pub hom_chern: Vec<QElem>,
    /// `c_1(T_{P^4})` in `A(Δ̂_D)`.
    pub c1_tangent_p4: QElem,
}

const P4_DIM: usize = 4;

/// `Σ_i c_i(F) ζ^{r−i}` with the `ζ^r` term removed and negated: the
/// right-hand side of the projective-bundle relation.
fn bundle_relation(ring: &QuotientRing, zeta: &QElem, chern: &[QElem], r: usize) -> QElem {
    let mut rhs = ring.zero();
    for i in 1..=r {
        if let Some(ci) = chern.get(i) {
            rhs = ring.sub(&rhs, &ring.mul(ci, &ring.pow(zeta, r - i)));
        }
    }
    rhs
}

/// `S_1 = O(−1)` and `Q = V/S_1` on `P^4`, with classes in `ring`.
fn p4_quotient_chern(ring: &QuotientRing, e: &QElem) -> (FormalBundle<QElem>, FormalBundle<QElem>) {
    let s1 = FormalBundle::line(ring, ring.neg(e));
    let q = FormalBundle::new(ring, P4_DIM, inverse_series(ring, s1.chern())[1..].to_vec());
    (s1, q)
}

impl P4Rings {
    pub fn new(relation: FibreRelation) -> Result<Self> {
        // P^4 and the bundle Q there
        let base = QuotientRing::new(&["e"], P4_DIM).with_rule(0, 5, QElem::default())?;
        let e = base.gen(0);
        let (_, q) = p4_quotient_chern(&base, &e);

        // Δ̂_D = P(Q)
        let pq = base.extend("ζQ", P4_DIM + 3);
        let q_up: Vec<QElem> = q.chern().iter().map(|x| pq.embed(x)).collect();
        let rhs = bundle_relation(&pq, &pq.gen(1), &q_up, P4_DIM);
        let delta_hat = pq.with_rule(1, P4_DIM as u32, rhs)?;

        // D̂_1 = P(Q) ×_{P^4} P(Q)
        let pq2 = delta_hat.extend("ζ2", P4_DIM + 6);
        let q_up2: Vec<QElem> = q.chern().iter().map(|x| pq2.embed(x)).collect();
        let rhs = bundle_relation(&pq2, &pq2.gen(2), &q_up2, P4_DIM);
        let mut d1_hat = pq2.with_rule(2, P4_DIM as u32, rhs)?;
        d1_hat.rename(1, "ζ1");

        // Hom(S_2/S_1, V/S_2) on Δ̂_D
        let e = delta_hat.gen(0);
        let zq = delta_hat.gen(1);
        let (s1, _) = p4_quotient_chern(&delta_hat, &e);
        let s21 = FormalBundle::line(&delta_hat, delta_hat.neg(&zq));
        let s2 = s1.direct_sum(&delta_hat, &s21);
        let v_s2 = FormalBundle::new(&delta_hat, 3, s2.segre(&delta_hat)[1..].to_vec());
        let hom = s21.dual(&delta_hat).tensor(&delta_hat, &v_s2)?;
        let hom_chern: Vec<QElem> = (0..=3).map(|j| hom.c(&delta_hat, j)).collect();

        // T_{P^4} = Hom(S_1, Q)
        let (s1, q) = p4_quotient_chern(&delta_hat, &e);
        let tangent = s1.dual(&delta_hat).tensor(&delta_hat, &q)?;
        let c1_tangent_p4 = tangent.c(&delta_hat, 1);

        // Δ̃_D = P(Hom) over Δ̂_D
        let big = delta_hat.extend("ζH", P4_DIM + 3 + 2);
        let used = match relation {
            FibreRelation::Full => 3,
            FibreRelation::Truncated => 1,
        };
        let chern_up: Vec<QElem> = hom_chern[..=used].iter().map(|x| big.embed(x)).collect();
        let rhs = bundle_relation(&big, &big.gen(2), &chern_up, 3);
        let delta_tilde = big.with_rule(2, 3, rhs)?;

        Ok(Self {
            delta_hat,
            d1_hat,
            delta_tilde,
            hom_chern,
            c1_tangent_p4,
        })
    }

    /// The point class `e^4 ζQ^3 ζH^2` of `Δ̃_D`.
    pub fn delta_tilde_degree(&self, x: &QElem) -> ParamPoly {
        self.delta_tilde.coeff(x, &[4, 3, 2])
    }

    /// `[γ̂(X)]` in `A(Δ̂_D)`: the tangent directions of `X` inside
    /// `P(T_{P^4}) ≅ P(Q)`, whose hyperplane class is `ζQ − e`.
    pub fn tangent_direction_class(&self) -> Result<QElem> {
        let ring = &self.delta_hat;
        let e = ring.gen(0);
        let zeta_t = ring.sub(&ring.gen(1), &e);
        let spec = CurveInBundle {
            curve: ring.scale(&ring.pow(&e, 3), &ParamPoly::d()),
            c1_bundle: self.c1_tangent_p4.clone(),
            point: ring.pow(&e, 4),
            canonical_degree: canonical(),
            rank: P4_DIM,
        };
        projectivized_tangent_class(ring, &zeta_t, &spec)
    }

    /// `[Δ̃_Γ]` in `A(Δ̃_D)`: the lift of `γ̂(X)` along its tangent
    /// directions in the fibres of `Δ̃_D → Δ̂_D`.
    pub fn tilde_delta_gamma_class(&self) -> Result<QElem> {
        let ring = &self.delta_tilde;
        let curve = ring.embed(&self.tangent_direction_class()?);
        let spec = CurveInBundle {
            curve,
            c1_bundle: ring.embed(&self.hom_chern[1]),
            point: ring.monomial(&[4, 3, 0], ParamPoly::one()),
            canonical_degree: canonical(),
            rank: 3,
        };
        projectivized_tangent_class(ring, &ring.gen(2), &spec)
    }
}

/// `c_1(T_{P(F)}) = r ζ + c_1(F) + c_1(T_Y)` for a rank-`r` bundle `F → Y`.
pub fn c1_projective_bundle<R: GradedRing>(ring: &R, zeta: &R::Elem, rank: usize, c1_f: &R::Elem, c1_base: &R::Elem) -> R::Elem {
    let lead = ring.scale(zeta, &c(rank as i64));
    ring.add(&lead, &ring.add(c1_f, c1_base))
}

/// `c_1(T)` of the blowup of `Y` along a centre of codimension `r`:
/// `π^* c_1(T_Y) + (1 − r) [E]`, kept as its two parts.
#[derive(Debug, Clone, PartialEq)]
pub struct BlowupTangentC1<E> {
    pub pullback: E,
    /// Coefficient of `j_*(1)`, i.e. `1 − r`.
    pub exceptional: i64,
    pub centre_codim: usize,
}

fn blowup_tangent_c1<E>(pullback: E, centre_codim: usize) -> BlowupTangentC1<E> {
    BlowupTangentC1 {
        pullback,
        exceptional: 1 - centre_codim as i64,
        centre_codim,
    }
}

/// Tangent classes of the spaces over `P^4`.
#[derive(Debug, Clone)]
pub struct P4TangentClasses {
    /// `c_1(T_{Δ̂_D})` in `A(Δ̂_D)`.
    pub delta_hat: QElem,
    /// `c_1(T_{D̂_1})` in `A(D̂_1)`.
    pub d1_hat: QElem,
    /// `c_1(T_{D̃_1})`, with `D̃_1` the blowup of `D̂_1` along `Δ̂_D`.
    pub d1_tilde: BlowupTangentC1<QElem>,
}

pub fn c1_tangent_d1_tilde(rings: &P4Rings) -> Result<P4TangentClasses> {
    let ring = &rings.delta_hat;
    let e = ring.gen(0);
    let (_, q) = p4_quotient_chern(ring, &e);
    let delta_hat = c1_projective_bundle(ring, &ring.gen(1), P4_DIM, &q.c(ring, 1), &rings.c1_tangent_p4);

    let big = &rings.d1_hat;
    let d1_hat = c1_projective_bundle(big, &big.gen(2), P4_DIM, &big.embed(&q.c(ring, 1)), &big.embed(&delta_hat));
    let codim = big.dim() - ring.dim();
    Ok(P4TangentClasses {
        delta_hat,
        d1_hat: d1_hat.clone(),
        d1_tilde: blowup_tangent_c1(d1_hat, codim),
    })
}

/// Degrees of first Chern classes restricted to the curve `Δ̃_Γ ≅ X` of
/// tangent-line pairs meeting at the point of tangency, and the normal
/// bundle data built from them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeLedger {
    /// `deg i_{D†}^* c_1(T_{D̃_1})`.
    pub tangent_d1_tilde: ParamPoly,
    /// `deg i_†^* c_1(T_B)`.
    pub tangent_blowup: ParamPoly,
    /// `deg c_1(T_{Δ†_Γ})`.
    pub tangent_curve: ParamPoly,
    /// `deg ι^* c_1(T_{Γ†})`.
    pub tangent_gamma: ParamPoly,
    /// `deg ι^* c_1(T_{B†})`.
    pub tangent_second_blowup: ParamPoly,
    /// `deg ι^* c_1(T_{D_1†})`.
    pub tangent_d1_dagger: ParamPoly,
    /// `deg c_1(N_{Δ̃_Γ, B})`.
    pub normal_in_blowup: ParamPoly,
    /// `deg c_1(N_{Δ̃_Γ, D̃_1})`.
    pub normal_in_d1_tilde: ParamPoly,
    /// `deg c_1(N_{Δ̃_Γ, Γ̃})`.
    pub normal_in_gamma: ParamPoly,
}

const BLOWUP_DIM: usize = 12;
const D1_TILDE_DIM: usize = 10;

/// `deg i_†^* c_1(T_B)` with `B` the blowup of `Gr(2,5)²` along the diagonal.
fn tangent_blowup_degree() -> Result<ParamPoly> {
    let b = Blowup::new(GrassContext::new(2, 5)?)?;
    let ctx = b.ctx();
    let geo = b.gamma_tilde_on_e(&ParamPoly::dv(), &ParamPoly::g())?;
    let one = crate::schubert::ChowClass::one(ctx);
    let c1g = b.tangent_chern(1);
    let base = TensorClass::external(&c1g, &one)?.add(&TensorClass::external(&one, &c1g)?)?;
    let c1 = blowup_tangent_c1(base, b.dim_g());
    let c1_class = BlowupClass::pullback(c1.pullback).add(&BlowupClass::pushforward(
        EClass::one(ctx).scale(&c(c1.exceptional)),
    ))?;
    let curve = BlowupClass::pushforward(geo);
    b.degree(&b.mult_b(&curve, &c1_class)?)
}

/// `deg i_{D†}^* c_1(T_{D̃_1})` by multiplying `[Δ̃_Γ]` in `A(Δ̃_D)`.
fn tangent_d1_tilde_degree(rings: &P4Rings) -> Result<ParamPoly> {
    let t = c1_tangent_d1_tilde(rings)?;
    let ring = &rings.delta_tilde;
    // restriction D̂_1 ⊃ Δ̂_D identifies both fibre classes with ζQ
    let images = [ring.gen(0), ring.gen(1), ring.gen(1)];
    let pulled = rings.d1_hat.map_to(&t.d1_tilde.pullback, &images, ring)?;
    // j^* j_*(a) = a · c_1(O(−1)) = −a ζH
    let correction = ring.scale(&ring.gen(2), &c(-t.d1_tilde.exceptional));
    let restricted = ring.add(&pulled, &correction);
    let curve = rings.tilde_delta_gamma_class()?;
    Ok(rings.delta_tilde_degree(&ring.mul(&curve, &restricted)))
}

/// `c_1(T_{Ỹ})` restricted to the exceptional `P(N)` of a curve blowup, with
/// `deg` of the base part given: `base · F − (1 − r) ζ`.
fn restricted_blowup_c1(ring: &CurveBundleNumerics, base_degree: &ParamPoly) -> crate::numerics::CurveBundleClass {
    // the centre is the curve, of codimension rank + 1; j^* j_* = −ζ
    let codim_factor = c(ring.rank() as i64 - 1);
    ring.add(&ring.scale(&ring.fiber(), base_degree), &ring.scale(&ring.zeta(), &codim_factor))
}

/// `[P(L)] ⊂ P(N)` for a sub-line-bundle `L` of `N` over the curve.
fn line_subbundle(ring: &CurveBundleNumerics, quotient_c1: &ParamPoly) -> Result<crate::numerics::CurveBundleClass> {
    let chern = [ring.one(), ring.scale(&ring.fiber(), quotient_c1)];
    subbundle_class(ring, &ring.zeta(), &chern, ring.rank(), 1)
}

pub fn p4_degree_ledger_symbolic() -> Result<DegreeLedger> {
    let rings = P4Rings::new(FibreRelation::Full)?;
    let tangent_d1_tilde = tangent_d1_tilde_degree(&rings)?;
    let tangent_blowup = tangent_blowup_degree()?;

    let square = CurveSquare::new(canonical());
    let tangent_curve = -canonical();
    let tangent_gamma = square.degree(&square.mul(&square.diagonal(), &square.c1_tangent()));

    let normal_in_blowup = &tangent_blowup - &tangent_curve;
    let normal_in_d1_tilde = &tangent_d1_tilde - &tangent_curve;
    let normal_in_gamma = &tangent_gamma - &tangent_curve;

    // E† = P(N_{Δ̃_Γ, B})
    let e_dagger = CurveBundleNumerics::new(BLOWUP_DIM - 1, normal_in_blowup.clone());
    let curve_in_e = line_subbundle(&e_dagger, &(&normal_in_blowup - &normal_in_gamma))?;
    let restricted = restricted_blowup_c1(&e_dagger, &tangent_blowup);
    let tangent_second_blowup = e_dagger.degree(&e_dagger.mul(&curve_in_e, &restricted));

    // E_D† = P(N_{Δ̃_Γ, D̃_1})
    let e_d = CurveBundleNumerics::new(D1_TILDE_DIM - 1, normal_in_d1_tilde.clone());
    let curve_in_ed = line_subbundle(&e_d, &(&normal_in_d1_tilde - &normal_in_gamma))?;
    let restricted = restricted_blowup_c1(&e_d, &tangent_d1_tilde);
    let tangent_d1_dagger = e_d.degree(&e_d.mul(&curve_in_ed, &restricted));

    Ok(DegreeLedger {
        tangent_d1_tilde,
        tangent_blowup,
        tangent_curve,
        tangent_gamma,
        tangent_second_blowup,
        tangent_d1_dagger,
        normal_in_blowup,
        normal_in_d1_tilde,
        normal_in_gamma,
    })
}

/// `deg [D_1†][Γ†]` on the blowup `B†` of `B` along `Δ̃_Γ`.
pub fn dagger_intersection(ledger: &DegreeLedger) -> Result<ParamPoly> {
    let before = p4_scroll_count()?;
    let ring = CurveBundleNumerics::new(BLOWUP_DIM - 1, ledger.normal_in_blowup.clone());
    let zeta = ring.zeta();
    // [E†][D_1†] = [P(N_{Δ̃_Γ, D̃_1})] = j†_*(μ ζ)
    let d1_rank = D1_TILDE_DIM - 1;
    let quotient_c1 = &ledger.normal_in_blowup - &ledger.normal_in_d1_tilde;
    let chern = [ring.one(), ring.scale(&ring.fiber(), &quotient_c1)];
    let d1_meet = subbundle_class(&ring, &zeta, &chern, ring.rank(), d1_rank)?;
    let mu = ring
        .div_zeta(&d1_meet)
        .ok_or_else(|| Error::Inconsistent("[E†][D1†] is not divisible by ζ".into()))?;
    // [E†][Γ†] = [Δ†_Γ] = j†_*(ν ζ)
    let gamma_meet = line_subbundle(&ring, &(&ledger.normal_in_blowup - &ledger.normal_in_gamma))?;
    let nu = ring
        .div_zeta(&gamma_meet)
        .ok_or_else(|| Error::Inconsistent("[E†][Γ†] is not divisible by ζ".into()))?;
    // (π^*a − j_*μ)(π^*b − j_*ν) = π^*(ab) − j_*(μνζ): cross terms restrict
    // classes of codimension ≥ 2 to a curve
    let correction = ring.degree(&ring.mul(&ring.mul(&mu, &nu), &zeta));
    Ok(before - correction)
}

/// Excess contribution of the curve `Δ†_Γ` to `[D_1†][Γ†]`.
pub fn excess_term(ledger: &DegreeLedger) -> ParamPoly {
    &(&(&ledger.tangent_second_blowup - &ledger.tangent_gamma) - &ledger.tangent_d1_dagger) + &ledger.tangent_curve
}

/// Pairs of distinct tangent lines of `X ⊂ P^4` that meet, as a polynomial
/// in `d`, `g`, `dv`.
pub fn nonskew_count() -> Result<ParamPoly> {
    let ledger = p4_degree_ledger_symbolic()?;
    Ok(dagger_intersection(&ledger)? - excess_term(&ledger))
}

/// The same count written in `d` and `g` alone.
pub fn nonskew_count_in_degree_genus() -> Result<ParamPoly> {
    Ok(nonskew_count()?.subs_dual_degree())
}

/// Castelnuovo's bound on the genus of a nondegenerate curve of degree `d`
/// in `P^r`.
pub fn castelnuovo_bound(d: i64, r: i64) -> Result<i64> {
    if r < 2 || d < r {
        return Err(domain(format!("no nondegenerate curve of degree {d} in P^{r}")));
    }
    let m = (d - 1) / (r - 1);
    let eps = d - 1 - m * (r - 1);
    Ok(m * (m - 1) * (r - 1) / 2 + m * eps)
}

/// A solution of `nonskew_count = 0` in `P^4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewCandidate {
    pub genus: i64,
    pub degree: i64,
    pub dual_degree: i64,
    pub genus_bound: i64,
    pub exists: bool,
}

/// Dual degrees searched: `dv ≥ 2` always, and `dv ≤ 16` because otherwise
/// the count's positive leading term dominates.
pub const DUAL_DEGREE_RANGE: std::ops::RangeInclusive<i64> = 2..=16;

/// All `(g, d)` with `d ≥ 4` where the nonskew count vanishes, with their
/// Castelnuovo verdict.
pub fn skew_candidates_p4() -> Result<Vec<SkewCandidate>> {
    let count = nonskew_count()?;
    let mut out = Vec::new();
    for dv in DUAL_DEGREE_RANGE {
        // dv = 2d + 2g − 2 with d ≥ 1 bounds g
        for g in 0..=dv / 2 {
            let twice_d = dv - 2 * g + 2;
            if twice_d % 2 != 0 {
                continue;
            }
            let d = twice_d / 2;
            if d < 4 {
                continue;
            }
            if count.eval(d, g, dv) != 0.into() {
                continue;
            }
            let genus_bound = castelnuovo_bound(d, 4)?;
            out.push(SkewCandidate {
                genus: g,
                degree: d,
                dual_degree: dv,
                genus_bound,
                exists: g <= genus_bound,
            });
        }
    }
    out.sort_by_key(|c| (c.genus, c.degree));
    Ok(out)
}

/// `(g, d)` of smooth nondegenerate curves in `P^4` with pairwise skew
/// tangent lines.
pub fn classify_p4() -> Result<Vec<(i64, i64)>> {
    Ok(skew_candidates_p4()?
        .into_iter()
        .filter(|c| c.exists)
        .map(|c| (c.genus, c.degree))
        .collect())
}

/// One computed quantity with its polynomial and its value on a curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub name: String,
    pub description: String,
    pub symbolic: ParamPoly,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedClass {
    pub name: String,
    pub class: String,
}

/// Everything computed for a curve in `P^4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub curve: CurveInvariants,
    pub dual_degree: i64,
    pub classes: Vec<NamedClass>,
    pub degrees: Vec<ReportEntry>,
    pub nonskew_pairs: ReportEntry,
    pub skew_classification: Vec<(i64, i64)>,
}

impl PipelineReport {
    pub fn degree(&self, name: &str) -> Option<&ReportEntry> {
        self.degrees.iter().find(|e| e.name == name)
    }
}

pub fn p4_report(curve: CurveInvariants) -> Result<PipelineReport> {
    if curve.ambient != 4 {
        return Err(Error::Unsupported(format!(
            "the full ledger is implemented for curves in P^4, not P^{}",
            curve.ambient
        )));
    }
    let rings = P4Rings::new(FibreRelation::Full)?;
    let tangents = c1_tangent_d1_tilde(&rings)?;
    let ledger = p4_degree_ledger_symbolic()?;
    let dagger = dagger_intersection(&ledger)?;
    let excess = excess_term(&ledger);
    let count = &dagger - &excess;

    let mut classes = vec![
        ("tangent_directions", rings.delta_hat.display(&rings.tangent_direction_class()?)),
        ("tangent_line_pairs_on_diagonal", rings.delta_tilde.display(&rings.tilde_delta_gamma_class()?)),
        ("c1_hom_bundle", rings.delta_hat.display(&rings.hom_chern[1])),
        ("c1_tangent_line_space", rings.delta_hat.display(&tangents.delta_hat)),
        ("c1_tangent_line_pairs", rings.d1_hat.display(&tangents.d1_hat)),
    ];
    classes.push((
        "c1_tangent_d1_tilde_exceptional",
        format!("{}·[E] (centre of codimension {})", tangents.d1_tilde.exceptional, tangents.d1_tilde.centre_codim),
    ));
    let classes = classes
        .into_iter()
        .map(|(n, c)| NamedClass {
            name: n.to_string(),
            class: c,
        })
        .collect();

    let entry = |name: &str, description: &str, p: &ParamPoly| -> Result<ReportEntry> {
        Ok(ReportEntry {
            name: name.to_string(),
            description: description.to_string(),
            symbolic: p.clone(),
            value: Some(curve.eval(p)?),
        })
    };
    let degrees = vec![
        entry("tangent_d1_tilde", "deg c1(T) of the blown-up incidence variety on the curve", &ledger.tangent_d1_tilde)?,
        entry("tangent_blowup", "deg c1(T) of Bl_diag(G×G) on the curve", &ledger.tangent_blowup)?,
        entry("tangent_curve", "deg c1(T) of the curve itself", &ledger.tangent_curve)?,
        entry("tangent_gamma", "deg c1(T) of the tangent-pair surface on the curve", &ledger.tangent_gamma)?,
        entry("tangent_second_blowup", "deg c1(T) of the second blowup on the curve", &ledger.tangent_second_blowup)?,
        entry("tangent_d1_dagger", "deg c1(T) of the second incidence transform on the curve", &ledger.tangent_d1_dagger)?,
        entry("normal_in_blowup", "deg c1 of the normal bundle in Bl_diag(G×G)", &ledger.normal_in_blowup)?,
        entry("normal_in_d1_tilde", "deg c1 of the normal bundle in the incidence transform", &ledger.normal_in_d1_tilde)?,
        entry("scroll_pair_count", "deg [D̃1][Γ̃] before the second blowup", &p4_scroll_count()?)?,
        entry("dagger_intersection", "deg [D1†][Γ†]", &dagger)?,
        entry("excess_term", "contribution of the diagonal curve", &excess)?,
    ];
    Ok(PipelineReport {
        curve,
        dual_degree: curve.dual_degree(),
        classes,
        degrees,
        nonskew_pairs: entry("nonskew_pairs", "pairs of distinct tangent lines that meet", &count.subs_dual_degree())?,
        skew_classification: classify_p4()?,
    })
}
