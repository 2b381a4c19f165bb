use skewcalc_core::bundles::GradedRing;
use skewcalc_core::pipeline::*;
use skewcalc_core::ParamPoly;

fn poly(s: &str) -> ParamPoly {
    s.parse().unwrap()
}

/// `(2d + 2g − 2)^2 − 20d − 44g + 44`, written out by hand.
fn closed_count(d: i64, g: i64) -> i64 {
    let dv = 2 * d + 2 * g - 2;
    dv * dv - 20 * d - 44 * g + 44
}

#[test]
fn p3_self_intersection() {
    let p3 = p3_intersection().unwrap();
    assert_eq!(p3.product, (poly("dv^2-2dv"), poly("4dv^2-10dv-4g+4")));
    assert_eq!(p3.tangent_curve, (poly("dv"), poly("4dv+2g-2")));
    assert_eq!(p3.multiplicity, poly("dv-2"));
    assert_eq!(p3.genus_obstruction, (ParamPoly::zero(), poly("2dv*g")));
    // twisted cubic: dv = 4, g = 0
    let at = |p: &ParamPoly| p.eval(3, 0, 4);
    assert_eq!((at(&p3.product.0), at(&p3.product.1)), (8.into(), 28.into()));
    assert_eq!(at(&p3.multiplicity), 2.into());
}

#[test]
fn p4_scroll_pairs() {
    let count = p4_scroll_count().unwrap();
    assert_eq!(count, poly("dv^2-5dv-6g+6"));
    assert_eq!(count.eval(0, 0, 3), 0.into());
    assert_eq!(count.eval(0, 1, 5), 0.into());
    assert_eq!(count.eval(0, 0, 4), 2.into());
    assert_eq!(count.eval(0, 0, 2), 0.into());
}

#[test]
fn truncated_fibre_relation_gives_the_same_numbers() {
    let full = P4Rings::new(FibreRelation::Full).unwrap();
    let short = P4Rings::new(FibreRelation::Truncated).unwrap();
    let a = full.tilde_delta_gamma_class().unwrap();
    let b = short.tilde_delta_gamma_class().unwrap();
    assert_eq!(full.delta_tilde.display(&a), short.delta_tilde.display(&b));
    for rings in [&full, &short] {
        let t = c1_tangent_d1_tilde(rings).unwrap();
        let r = &rings.delta_tilde;
        let images = [r.gen(0), r.gen(1), r.gen(1)];
        let pulled = rings.d1_hat.map_to(&t.d1_tilde.pullback, &images, r).unwrap();
        let restricted = r.add(&pulled, &r.scale(&r.gen(2), &ParamPoly::constant(2)));
        let curve = rings.tilde_delta_gamma_class().unwrap();
        assert_eq!(rings.delta_tilde_degree(&r.mul(&curve, &restricted)), poly("15d+20g-20"));
    }
}

#[test]
fn lifted_class_at_rational_normal_quartic() {
    let rings = P4Rings::new(FibreRelation::Full).unwrap();
    let x = rings.tilde_delta_gamma_class().unwrap();
    let coeffs: Vec<i64> = [[3, 3, 2], [4, 2, 2], [4, 3, 1]]
        .iter()
        .map(|m| rings.delta_tilde.coeff(&x, m).eval_i64(4, 0, 6).unwrap())
        .collect();
    assert_eq!(coeffs, vec![4, 6, 10]);
}

#[test]
fn ledger_at_genus_five_octic() {
    let curve = CurveInvariants::new(4, 8, 5).unwrap();
    let report = p4_report(curve).unwrap();
    let value = |k: &str| report.degree(k).unwrap().value.unwrap();
    let ledger: Vec<i64> = [
        "tangent_d1_tilde",
        "tangent_blowup",
        "tangent_curve",
        "tangent_gamma",
        "tangent_second_blowup",
        "tangent_d1_dagger",
    ]
    .iter()
    .map(|k| value(k))
    .collect();
    assert_eq!(ledger, vec![200, 280, -8, -16, 360, 264]);
    assert_eq!(value("normal_in_blowup"), 10 * 24 + 12 * 5 - 12);
    assert_eq!(value("dagger_intersection"), 344);
    assert_eq!(value("excess_term"), 104);
    assert_eq!(report.nonskew_pairs.value, Some(240));
}

#[test]
fn dagger_and_excess_at_quartic() {
    let ledger = p4_degree_ledger_symbolic().unwrap();
    let dagger = dagger_intersection(&ledger).unwrap();
    let excess = excess_term(&ledger);
    assert_eq!(dagger.eval_curve(4, 0), 4.into());
    assert_eq!(excess.eval_curve(4, 0), 4.into());
}

#[test]
fn count_matches_closed_form_on_a_grid() {
    let count = nonskew_count().unwrap();
    for d in 1..=20 {
        for g in 0..=15 {
            assert_eq!(count.eval_curve(d, g), closed_count(d, g).into(), "d={d} g={g}");
        }
    }
    assert_eq!(closed_count(4, 0), 0);
    assert_eq!(closed_count(5, 1), 0);
    assert_eq!(closed_count(5, 0), 8);
    assert_eq!(closed_count(6, 0), 24);
}

#[test]
fn classification_in_p4() {
    let candidates = skew_candidates_p4().unwrap();
    let all: Vec<(i64, i64)> = candidates.iter().map(|c| (c.genus, c.degree)).collect();
    assert_eq!(all, vec![(0, 4), (1, 5), (2, 5), (5, 4)]);
    assert_eq!(classify_p4().unwrap(), vec![(0, 4), (1, 5)]);
    let excluded: Vec<(i64, i64, i64)> = candidates
        .iter()
        .filter(|c| !c.exists)
        .map(|c| (c.genus, c.degree, c.genus_bound))
        .collect();
    assert_eq!(excluded, vec![(2, 5, 1), (5, 4, 0)]);
}

#[test]
fn report_round_trips_through_json() {
    let report = p4_report(CurveInvariants::new(4, 5, 0).unwrap()).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: PipelineReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    assert_eq!(report.nonskew_pairs.value, Some(8));
    assert!(p4_report(CurveInvariants::new(3, 3, 0).unwrap()).is_err());
}
