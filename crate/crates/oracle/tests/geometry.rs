use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use skewcalc_oracle::identities::{tangent_determinant, veronese_tangent_rank};
use skewcalc_oracle::pairs::{tangent_meet, CountOptions};
use skewcalc_oracle::poly::{q, QPoly, Q};
use skewcalc_oracle::scroll::Certificate;
use skewcalc_oracle::{
    contact_order_test, scroll_skew_test, twisted_cubic_identity, veronese_sample_test, OracleError, RationalCurve,
    ScrollSpec,
};

#[test]
fn twisted_cubic_determinant_is_a_pure_power() {
    let (c, k) = twisted_cubic_identity().unwrap();
    assert_eq!(k, 4);
    assert!(!c.is_zero());
    // by hand: det[f(t), f′(t), f(s), f′(s)] = (t − s)^4 for f = (1, t, t², t³)
    assert_eq!(c.clone() * &c, BigInt::from(1));
    let det = tangent_determinant(&RationalCurve::rational_normal(3)).unwrap();
    assert_eq!(det.on_diagonal(), QPoly::zero());
    let conic = RationalCurve::from_ints(3, &[&[1], &[0, 1], &[0, 0, 1], &[0]]).unwrap();
    assert!(tangent_determinant(&conic).unwrap().is_zero());
    // the cubic's tangents never meet at sampled rational pairs
    let cubic = RationalCurve::rational_normal(3);
    assert!(!tangent_meet(&cubic, &q(0), &q(1)).unwrap());
}

#[test]
fn scrolls_in_p3() {
    let normal = ScrollSpec::from_ints(3, &[&[1], &[0, 1], &[0], &[0]], &[&[0], &[0], &[1], &[0, 1]]).unwrap();
    assert!(scroll_skew_test(&normal, CountOptions::default()).unwrap().skew);
    // ι₁ = (1, 2t, t², 0), ι₂ = (2t, t², 0, 1)
    let quadric = ScrollSpec::from_ints(3, &[&[1], &[0, 2], &[0, 0, 1], &[0]], &[&[0, 2], &[0, 0, 1], &[0], &[1]]).unwrap();
    let v = scroll_skew_test(&quadric, CountOptions::default()).unwrap();
    assert!(v.skew, "{v:?}");
    assert!(matches!(v.certificate, Certificate::Identity { exponent: 4, .. }));
}

#[test]
fn generic_quadric_scroll_has_meeting_rulings() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut coords = || -> Vec<Vec<i64>> { (0..4).map(|_| (0..3).map(|_| rng.gen_range(-5..=5)).collect()).collect() };
    let (a, b) = (coords(), coords());
    fn view(c: &[Vec<i64>]) -> Vec<&[i64]> {
        c.iter().map(Vec::as_slice).collect()
    }
    let spec = ScrollSpec::from_ints(3, &view(&a), &view(&b)).unwrap();
    let v = scroll_skew_test(&spec, CountOptions::default()).unwrap();
    assert!(!v.skew);
    let Certificate::Fibre { t, s_polynomial, .. } = v.certificate else { panic!("{v:?}") };
    // the certificate polynomial is nonconstant and does not vanish at s = t
    let m = QPoly::new(s_polynomial.iter().map(|x| x.parse::<Q>().unwrap()).collect());
    let t0: Q = t.parse().unwrap();
    assert!(m.degree().unwrap() >= 1);
    assert!(!m.eval(&t0).is_zero());
}

#[test]
fn cubic_scroll_in_p4_is_skew() {
    // S(1, 2): ι₁ = (1, t, t², 0, 0), ι₂ = (0, 0, 0, 1, t)
    let s = ScrollSpec::from_ints(4, &[&[1], &[0, 1], &[0, 0, 1], &[0], &[0]], &[&[0], &[0], &[0], &[1], &[0, 1]]).unwrap();
    let v = scroll_skew_test(&s, CountOptions::default()).unwrap();
    assert!(v.skew, "{v:?}");
    // a cone: every ruling passes through (0:0:0:0:1)
    let cone = ScrollSpec::from_ints(4, &[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1], &[0]], &[&[0], &[0], &[0], &[0], &[1]]).unwrap();
    assert!(!scroll_skew_test(&cone, CountOptions::default()).unwrap().skew);
}

#[test]
fn cubic_veronese_surface_is_skew() {
    assert!(veronese_sample_test(100, 3).unwrap());
    assert!(veronese_sample_test(10, 3).is_err());
    let x = [q(1), q(-2), q(3)];
    assert_eq!(veronese_tangent_rank(&x, &x), 3);
}

#[test]
fn contact_orders() {
    let quartic = RationalCurve::rational_normal(4);
    let r = contact_order_test(&quartic, &q(0)).unwrap();
    assert!(r.confirmed);
    assert_eq!(r.matching_orders, vec![0, 1, 2]);
    assert_eq!(r.first_mismatch, Some(3));
    assert_eq!(r.second_third_rank, 2);

    let quintic = RationalCurve::random_nondegenerate(4, 5, &mut ChaCha8Rng::seed_from_u64(8));
    let t0 = Q::new(3.into(), 7.into());
    assert!(contact_order_test(&quintic, &t0).unwrap().confirmed);

    // f‴(0) = 0: the third osculating space degenerates at the origin
    let flat = RationalCurve::from_ints(4, &[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 0, 1], &[0, 0, 0, 0, 0, 1]]).unwrap();
    assert!(matches!(contact_order_test(&flat, &q(0)), Err(OracleError::Precondition(_))));
    assert!(contact_order_test(&flat, &q(1)).unwrap().confirmed);
}
