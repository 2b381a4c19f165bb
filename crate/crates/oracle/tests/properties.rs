use proptest::prelude::*;

use skewcalc_oracle::bipoly::BiPoly;
use skewcalc_oracle::poly::{q, QPoly};
use skewcalc_oracle::{tangent_meet, RationalCurve};

fn curve_strategy() -> impl Strategy<Value = Option<RationalCurve>> {
    prop::collection::vec(prop::collection::vec(-6i64..7, 5), 5)
        .prop_map(|c| RationalCurve::new(4, c.iter().map(|x| QPoly::from_ints(x)).collect()).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn meeting_is_symmetric(c in curve_strategy(), t in -9i64..10, s in -9i64..10) {
        prop_assume!(t != s);
        if let Some(c) = c {
            prop_assert_eq!(tangent_meet(&c, &q(t), &q(s)).unwrap(), tangent_meet(&c, &q(s), &q(t)).unwrap());
        }
    }

    #[test]
    fn saturation_undoes_multiplication(
        rows in prop::collection::vec(prop::collection::vec(-5i64..6, 1..4), 1..4),
        k in 0u32..4,
    ) {
        let p = BiPoly::new(rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect());
        prop_assume!(!p.is_zero());
        let line = &BiPoly::in_t(&[0.into(), 1.into()]) - &BiPoly::in_s(&[0.into(), 1.into()]);
        let (base, e0) = p.saturate();
        let lifted = (0..k).fold(p.clone(), |acc, _| &acc * &line);
        let (base2, e) = lifted.saturate();
        prop_assert_eq!(e, e0 + k);
        prop_assert_eq!(base2, base);
    }
}
