//! Acceptance checks: one PASS/FAIL line per criterion, with a runtime limit
//! each. Exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewcalc_core::blowup::{Blowup, BlowupClass, EClass, TensorClass};
use skewcalc_core::bundles::{series_product, FormalBundle, GradedRing};
use skewcalc_core::param::dual_degree;
use skewcalc_core::pipeline::*;
use skewcalc_core::quotient::{QElem, QuotientRing};
use skewcalc_core::schubert::{dual, ChowClass, GrassContext};
use skewcalc_core::ParamPoly;
use skewcalc_oracle::pairs::CountOptions;
use skewcalc_oracle::poly::q;
use skewcalc_oracle::scroll::Certificate;
use skewcalc_oracle::{
    contact_order_test, count_nonskew_pairs_p4, scroll_skew_test, twisted_cubic_identity, RationalCurve, ScrollSpec,
};

type Check = Result<String, String>;
type Criterion = (u32, &'static str, u64, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(s: &str) -> ParamPoly {
    s.parse().unwrap()
}

fn k(c: i64) -> ParamPoly {
    ParamPoly::constant(c)
}

fn ctx(n: usize, big_n: usize) -> GrassContext {
    GrassContext::new(n, big_n).unwrap()
}

fn tensor(c: GrassContext, terms: &[(&[u32], &[u32])]) -> TensorClass {
    terms.iter().fold(TensorClass::zero(c), |acc, (a, b)| acc.add(&TensorClass::sigma(c, a, b).unwrap()).unwrap())
}

/// `Σ coeff · σ̄_p ζ^z` on the exceptional divisor.
fn e_class(c: GrassContext, terms: &[(ParamPoly, &[u32], usize)]) -> EClass {
    terms.iter().fold(EClass::zero(c), |acc, (coeff, p, z)| {
        acc.add(&EClass::sigma_zeta(c, p, *z).unwrap().scale(coeff)).unwrap()
    })
}

fn c1_degeneracy() -> Check {
    let b24 = Blowup::new(ctx(2, 4)).unwrap();
    let want = tensor(ctx(2, 4), &[(&[1], &[]), (&[], &[1])]);
    let got = b24.class_d1().unwrap();
    ensure(got == want, || format!("[D1(2,4)] = {got}"))?;
    let b25 = Blowup::new(ctx(2, 5)).unwrap();
    let want = tensor(ctx(2, 5), &[(&[2], &[]), (&[1], &[1]), (&[], &[2])]);
    let got = b25.class_d1().unwrap();
    ensure(got == want, || format!("[D1(2,5)] = {got}"))?;
    Ok(format!("[D1(2,5)] = {got}"))
}

fn c2_proper_transforms() -> Check {
    let (dv, g) = (ParamPoly::dv(), ParamPoly::g());
    let mut shown = Vec::new();
    for (c, pulled, exc) in [
        (ctx(2, 4), tensor(ctx(2, 4), &[(&[1], &[]), (&[], &[1])]), e_class(ctx(2, 4), &[(k(2), &[], 0)])),
        (
            ctx(2, 5),
            tensor(ctx(2, 5), &[(&[2], &[]), (&[1], &[1]), (&[], &[2])]),
            e_class(ctx(2, 5), &[(k(5), &[1], 0), (k(3), &[], 1)]),
        ),
    ] {
        let b = Blowup::new(c).unwrap();
        let t = b.d1_tilde().unwrap();
        ensure(t.multiplicity.is_one(), || format!("D̃1 multiplicity {} in {c}", t.multiplicity))?;
        let want = BlowupClass::pullback(pulled).sub(&BlowupClass::pushforward(exc)).unwrap();
        let (got, want) = (b.normal_form(&t.class).unwrap(), b.normal_form(&want).unwrap());
        ensure(got == want, || format!("[D̃1] in {c}: {got} vs {want}"))?;
        shown.push(got.to_string());
    }
    // [Γ̃] = dv² π^*(σ_C ⊗ σ_C) − j_*(dv σ̄_C ζ^{D−2} + ((N+1)dv + 2g − 2) σ̄_top ζ^{D−3})
    for (c, curve, top, lin) in [(ctx(2, 4), [2, 1], [2, 2], 4), (ctx(2, 5), [3, 2], [3, 3], 5)] {
        let b = Blowup::new(c).unwrap();
        let d = b.dim_g();
        let gt = b.gamma_tilde(&dv, &g).unwrap();
        let pulled = TensorClass::sigma(c, &curve, &curve).unwrap().scale(&dv.pow(2));
        let second = &(&dv.scale_i(lin) + &g.scale_i(2)) - &k(2);
        let exc = e_class(c, &[(dv.clone(), &curve, d - 2), (second, &top, d - 3)]);
        let want = b.normal_form(&BlowupClass::pullback(pulled).sub(&BlowupClass::pushforward(exc)).unwrap()).unwrap();
        ensure(gt.class == want, || format!("[Γ̃] in {c}: {} vs {want}", gt.class))?;
        shown.push(gt.class.to_string());
    }
    Ok(format!("m = 1; [D̃1(2,5)] = {}", shown[1]))
}

fn c3_p3_product() -> Check {
    let p3 = p3_intersection().map_err(|e| e.to_string())?;
    ensure(p3.product == (poly("dv^2-2dv"), poly("4dv^2-10dv-4g+4")), || format!("{:?}", p3.product))?;
    ensure(p3.multiplicity == poly("dv-2"), || format!("m = {}", p3.multiplicity))?;
    ensure(p3.genus_obstruction == (ParamPoly::zero(), poly("2dv*g")), || format!("{:?}", p3.genus_obstruction))?;
    Ok(format!("({}, {}), m = {}, residual 2dv·g", p3.product.0, p3.product.1, p3.multiplicity))
}

/// Smallest degree of a smooth embedded curve of genus `g`: plane curves have
/// genus exactly `(d−1)(d−2)/2`, space curves at most the Castelnuovo bound.
fn min_embedding_degree(g: i64) -> i64 {
    (1..)
        .find(|&d| g == 0 || (d - 1) * (d - 2) / 2 == g || (d >= 3 && castelnuovo_bound(d, 3).unwrap() >= g))
        .unwrap()
}

fn c4_p4_scroll() -> Check {
    let count = p4_scroll_count().map_err(|e| e.to_string())?;
    ensure(count == poly("dv^2-5dv-6g+6"), || format!("{count}"))?;
    let listed = [(0, 2), (0, 3), (1, 5)];
    let mut extra = Vec::new();
    for g in 0..=60 {
        for dv in 2..=200 {
            let zero = count.eval(0, g, dv) == 0.into();
            if listed.contains(&(g, dv)) {
                ensure(zero, || format!("nonzero at g={g}, dv={dv}"))?;
            } else if zero {
                // both directrices are embeddings of a genus-g curve
                ensure(dv < 2 * min_embedding_degree(g), || format!("realizable zero at g={g}, dv={dv}"))?;
                extra.push(format!("({g},{dv})"));
            }
        }
    }
    Ok(format!(
        "{count}; zeros (0,2),(0,3),(1,5); other integer zeros {} admit no scroll",
        extra.join(",")
    ))
}

fn c5_ledger() -> Check {
    let l = p4_degree_ledger_symbolic().map_err(|e| e.to_string())?;
    let want = ["15d+20g-20", "10dv+10g-10", "2-2g", "4-4g", "10dv+30g-30", "15d+36g-36"];
    let got = [
        &l.tangent_d1_tilde,
        &l.tangent_blowup,
        &l.tangent_curve,
        &l.tangent_gamma,
        &l.tangent_second_blowup,
        &l.tangent_d1_dagger,
    ];
    for (g, w) in got.iter().zip(want) {
        ensure(g.subs_dual_degree() == poly(w).subs_dual_degree(), || format!("{g} vs {w}"))?;
    }
    Ok(got.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))
}

fn c6_final_formula() -> Check {
    let l = p4_degree_ledger_symbolic().map_err(|e| e.to_string())?;
    let count = (dagger_intersection(&l).map_err(|e| e.to_string())? - excess_term(&l)).subs_dual_degree();
    let want = &(&dual_degree().pow(2) - &poly("20d+44g")) + &k(44);
    ensure(count == want, || format!("{count} vs {want}"))?;
    let at = |d, g| count.eval_curve(d, g);
    ensure(at(8, 5) == 240.into() && at(4, 0) == 0.into() && at(5, 1) == 0.into(), || {
        format!("values {} {} {}", at(8, 5), at(4, 0), at(5, 1))
    })?;
    Ok(format!("{count}; 240 at (8,5), 0 at (4,0) and (5,1)"))
}

fn c7_classification() -> Check {
    let cands: Vec<(i64, i64)> =
        skew_candidates_p4().map_err(|e| e.to_string())?.iter().map(|c| (c.genus, c.degree)).collect();
    ensure(cands == [(0, 4), (1, 5), (2, 5), (5, 4)], || format!("candidates {cands:?}"))?;
    let skew = classify_p4().map_err(|e| e.to_string())?;
    ensure(skew == [(0, 4), (1, 5)], || format!("classified {skew:?}"))?;
    Ok(format!("{skew:?} from {cands:?}"))
}

fn c8_oracle_agreement() -> Check {
    let formula = nonskew_count_in_degree_genus().map_err(|e| e.to_string())?;
    let mut shown = Vec::new();
    for (degree, seed) in [(5, 11), (5, 12), (6, 21)] {
        let curve = RationalCurve::random_nondegenerate(4, degree, &mut ChaCha8Rng::seed_from_u64(seed));
        // default options run two elimination seeds and fail unless they agree
        let r = count_nonskew_pairs_p4(&curve, CountOptions::with_seed(seed)).map_err(|e| e.to_string())?;
        let want = formula.eval_curve(degree as i64, 0);
        ensure(want == (r.count as i64).into(), || format!("degree {degree}, seed {seed}: {} vs {want}", r.count))?;
        let seeds: std::collections::BTreeSet<u64> = r.runs.iter().map(|run| run.seed).collect();
        ensure(seeds.len() >= 2, || "fewer than two seeds".into())?;
        shown.push(format!("d={degree}: {}", r.count));
    }
    let r = count_nonskew_pairs_p4(&RationalCurve::rational_normal(4), CountOptions::default())
        .map_err(|e| e.to_string())?;
    ensure(r.count == 0, || format!("normal quartic: {}", r.count))?;
    shown.push("normal quartic: 0".into());
    Ok(shown.join(", "))
}

fn c9_certificates() -> Check {
    let (c, exp) = twisted_cubic_identity().map_err(|e| e.to_string())?;
    ensure(exp == 4 && c != 0.into(), || format!("twisted cubic: {c}(t−s)^{exp}"))?;
    let opts = CountOptions::default();
    let line = ScrollSpec::from_ints(3, &[&[1], &[0, 1], &[0], &[0]], &[&[0], &[0], &[1], &[0, 1]])
        .map_err(|e| e.to_string())?;
    let v = scroll_skew_test(&line, opts).map_err(|e| e.to_string())?;
    ensure(v.skew, || format!("(1,1) scroll: {v:?}"))?;
    // ι₁ = (1, 2t, t², 0), ι₂ = (2t, t², 0, 1)
    let quadric = ScrollSpec::from_ints(3, &[&[1], &[0, 2], &[0, 0, 1], &[0]], &[&[0, 2], &[0, 0, 1], &[0], &[1]])
        .map_err(|e| e.to_string())?;
    let v = scroll_skew_test(&quadric, opts).map_err(|e| e.to_string())?;
    let Certificate::Identity { constant, exponent } = &v.certificate else {
        return Err(format!("(2,2) scroll: {v:?}"));
    };
    ensure(v.skew && *exponent == 4, || format!("(2,2) scroll: {v:?}"))?;
    Ok(format!("cubic {c}(t−s)^4; (1,1) and (2,2) scrolls skew, (2,2) as {constant}(t−s)^4"))
}

fn c10_contact() -> Check {
    let quartic = RationalCurve::rational_normal(4);
    for t0 in [q(0), q(1), q(-3)] {
        let r = contact_order_test(&quartic, &t0).map_err(|e| e.to_string())?;
        ensure(r.confirmed && r.matching_orders == [0, 1, 2] && r.first_mismatch == Some(3), || format!("{r:?}"))?;
    }
    Ok("orders 0,1,2 agree, order 3 differs, at t = 0, 1, −3".into())
}

fn c11_properties() -> Check {
    let mut products = 0;
    for c in [ctx(2, 4), ctx(2, 5)] {
        let parts = c.partitions();
        for a in &parts {
            let x = ChowClass::sigma(c, a.parts()).unwrap();
            for b in &parts {
                let y = ChowClass::sigma(c, b.parts()).unwrap();
                ensure(x.product(&y).unwrap() == x.product_iterated_pieri(&y).unwrap(), || format!("σ{a}·σ{b} in {c}"))?;
                products += 1;
                if a.size() + b.size() == c.dim() {
                    let deg = x.product(&y).unwrap().point_degree();
                    let expected = k(i64::from(*b == dual(a, &c).unwrap()));
                    ensure(deg == expected, || format!("pairing σ{a}·σ{b} in {c}"))?;
                }
            }
        }
    }

    let c = ctx(2, 4);
    let b = Blowup::new(c).unwrap();
    let parts = c.partitions();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let random_class = |rng: &mut ChaCha8Rng| {
        let mut x = BlowupClass::zero(c);
        for _ in 0..rng.gen_range(0..4) {
            let (a, bb) = (&parts[rng.gen_range(0..parts.len())], &parts[rng.gen_range(0..parts.len())]);
            let t = TensorClass::sigma(c, a.parts(), bb.parts()).unwrap().scale(&k(rng.gen_range(-3..4)));
            x = x.add(&BlowupClass::pullback(t)).unwrap();
        }
        for _ in 0..rng.gen_range(0..4) {
            let p = &parts[rng.gen_range(0..parts.len())];
            let e = EClass::sigma_zeta(c, p.parts(), rng.gen_range(0..4)).unwrap().scale(&k(rng.gen_range(-3..4)));
            x = x.add(&BlowupClass::pushforward(e)).unwrap();
        }
        x
    };
    for i in 0..200 {
        let (x, y, z) = (random_class(&mut rng), random_class(&mut rng), random_class(&mut rng));
        let nf = b.normal_form(&x).unwrap();
        ensure(b.normal_form(&nf).unwrap() == nf, || format!("triple {i}: normal form not idempotent"))?;
        let yz = y.add(&z).unwrap();
        let lhs = b.mult_b(&nf, &yz).unwrap();
        let rhs = b.normal_form(&b.mult_b(&x, &y).unwrap().add(&b.mult_b(&x, &z).unwrap()).unwrap()).unwrap();
        ensure(lhs == rhs, || format!("triple {i}: nf(x)(y+z) ≠ xy + xz"))?;
    }

    let ring = QuotientRing::new(&["h"], 6).with_rule(0, 7, QElem::default()).unwrap();
    let h = ring.gen(0);
    for i in 0..50 {
        let rank = rng.gen_range(1..6);
        let chern = (1..=rank).map(|j| ring.scale(&ring.pow(&h, j), &k(rng.gen_range(-5..6)))).collect();
        let bundle = FormalBundle::new(&ring, rank, chern);
        let prod = series_product(&ring, bundle.chern(), &bundle.segre(&ring));
        ensure(prod[0] == ring.one() && prod[1..].iter().all(QElem::is_zero), || format!("bundle {i}: c·s ≠ 1"))?;
    }

    let full = P4Rings::new(FibreRelation::Full).unwrap();
    let short = P4Rings::new(FibreRelation::Truncated).unwrap();
    let (a, s) = (full.tilde_delta_gamma_class().unwrap(), short.tilde_delta_gamma_class().unwrap());
    ensure(full.delta_tilde.display(&a) == short.delta_tilde.display(&s), || "curve classes differ".into())?;
    let (a, s) = (full.tangent_direction_class().unwrap(), short.tangent_direction_class().unwrap());
    ensure(full.delta_tilde.display(&a) == short.delta_tilde.display(&s), || "tangent directions differ".into())?;
    let mut degrees = Vec::new();
    for rings in [&full, &short] {
        let t = c1_tangent_d1_tilde(rings).unwrap();
        let r = &rings.delta_tilde;
        let images = [r.gen(0), r.gen(1), r.gen(1)];
        let pulled = rings.d1_hat.map_to(&t.d1_tilde.pullback, &images, r).unwrap();
        let restricted = r.add(&pulled, &r.scale(&r.gen(2), &k(-t.d1_tilde.exceptional)));
        let curve = rings.tilde_delta_gamma_class().unwrap();
        degrees.push(rings.delta_tilde_degree(&r.mul(&curve, &restricted)));
    }
    ensure(degrees[0] == degrees[1], || format!("tangent degrees {} vs {}", degrees[0], degrees[1]))?;
    Ok(format!("{products} products, 200 triples, 50 bundles, fibre relations agree"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "degeneracy-locus classes", 1, c1_degeneracy),
        (2, "proper transforms", 1, c2_proper_transforms),
        (3, "P^3 product", 5, c3_p3_product),
        (4, "P^4 scroll count", 10, c4_p4_scroll),
        (5, "degree ledger", 10, c5_ledger),
        (6, "final formula", 10, c6_final_formula),
        (7, "classification", 1, c7_classification),
        (8, "oracle agrees with formula", 120, c8_oracle_agreement),
        (9, "exact skewness certificates", 30, c9_certificates),
        (10, "contact orders", 5, c10_contact),
        (11, "property suites", 60, c11_properties),
    ];
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > Duration::from_secs(limit) => Err(format!("over time limit; {detail}")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("{tag} criterion {n}: {name} (limit {limit}s, took {:.2}s) — {detail}", took.as_secs_f64());
        failed += usize::from(outcome.is_err());
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
