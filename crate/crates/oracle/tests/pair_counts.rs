use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skewcalc_oracle::pairs::CountOptions;
use skewcalc_oracle::poly::{q, Q};
use skewcalc_oracle::{count_nonskew_pairs_p4, tangent_meet, OracleError, RationalCurve};

/// `(2d − 2)² − 20d + 44` for rational curves, written out by hand.
fn expected(d: i64) -> usize {
    ((2 * d - 2).pow(2) - 20 * d + 44) as usize
}

fn random_curve(degree: usize, seed: u64) -> RationalCurve {
    RationalCurve::random_nondegenerate(4, degree, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[test]
fn random_quintics_have_eight_pairs() {
    for seed in [11, 12] {
        let c = random_curve(5, seed);
        let r = count_nonskew_pairs_p4(&c, CountOptions::with_seed(seed)).unwrap();
        assert_eq!(r.count, expected(5), "{r:?}");
        assert_eq!(r.count % 2, 0);
        // the saturation removes the same power from every nonzero minor
        assert!(r.runs.iter().all(|run| run.count == 8));
    }
}

#[test]
fn random_sextic_has_twenty_four_pairs() {
    let c = random_curve(6, 21);
    let r = count_nonskew_pairs_p4(&c, CountOptions::with_seed(21)).unwrap();
    assert_eq!(r.count, expected(6), "{r:?}");
}

#[test]
fn count_is_invariant_under_reparametrization_and_seed() {
    let c = random_curve(5, 31);
    let moved = c.moebius(2, -1, 3, 1).unwrap();
    let a = count_nonskew_pairs_p4(&c, CountOptions::with_seed(5)).unwrap().count;
    let b = count_nonskew_pairs_p4(&moved, CountOptions::with_seed(99)).unwrap().count;
    assert_eq!(a, b);
}

#[test]
fn gap_quintic_is_cuspidal_at_infinity() {
    // (1, t, t², t³, t⁵) is (u⁵, u⁴, u³, u², 1) near t = ∞, where f′ vanishes
    let coords: &[&[i64]] = &[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1], &[0, 0, 0, 0, 0, 1]];
    match RationalCurve::from_ints(4, coords) {
        Err(OracleError::Precondition(msg)) => assert!(msg.contains("immersion"), "{msg}"),
        other => panic!("expected a precondition failure, got {other:?}"),
    }
}

#[test]
fn normal_quartic_is_skew_on_samples() {
    let c = RationalCurve::rational_normal(4);
    for (t, s) in [(0, 1), (-3, 7), (2, 5)] {
        assert!(!tangent_meet(&c, &q(t), &q(s)).unwrap());
        assert!(!tangent_meet(&c, &q(s), &q(t)).unwrap());
    }
    let half = Q::new(1.into(), 2.into());
    assert!(!tangent_meet(&c, &half, &q(-4)).unwrap());
}

#[test]
fn degenerate_osculation_is_rejected() {
    let c = RationalCurve::from_ints(4, &[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 0, 1], &[0, 0, 0, 0, 0, 1]]).unwrap();
    assert!(matches!(count_nonskew_pairs_p4(&c, CountOptions::default()), Err(OracleError::Precondition(_))));
    let cubic = RationalCurve::rational_normal(3);
    assert!(count_nonskew_pairs_p4(&cubic, CountOptions::default()).is_err());
}
