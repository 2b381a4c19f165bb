use proptest::prelude::*;

use skewcalc_core::blowup::{Blowup, BlowupClass, EClass, TensorClass};
use skewcalc_core::bundles::{series_product, FormalBundle, GradedRing};
use skewcalc_core::quotient::{QElem, QuotientRing};
use skewcalc_core::schubert::{dual, ChowClass, GrassContext, Partition};
use skewcalc_core::ParamPoly;

fn c(k: i64) -> ParamPoly {
    ParamPoly::constant(k)
}

// ---------------------------------------------------------------------------
// Littlewood–Richardson coefficients by counting tableaux directly.

/// Number of LR tableaux of skew shape `nu / lambda` with content `mu`.
fn lr_coefficient(lambda: &[u32], mu: &[u32], nu: &[u32]) -> u64 {
    let rows = nu.len();
    let part = |p: &[u32], i: usize| p.get(i).copied().unwrap_or(0) as usize;
    if (0..rows.max(lambda.len())).any(|i| part(lambda, i) > part(nu, i)) {
        return 0;
    }
    let total: usize = mu.iter().map(|&x| x as usize).sum();
    let skew: usize = (0..rows).map(|i| part(nu, i) - part(lambda, i)).sum();
    if total != skew {
        return 0;
    }
    // cells in reading order: rows top to bottom, each row right to left
    let mut cells = Vec::new();
    for i in 0..rows {
        for j in (part(lambda, i)..part(nu, i)).rev() {
            cells.push((i, j));
        }
    }
    let width = part(nu, 0);
    let mut grid = vec![vec![0u32; width]; rows];
    let mut used = vec![0u32; mu.len() + 1];
    fn go(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<u32>>,
        used: &mut Vec<u32>,
        mu: &[u32],
        lambda: &[u32],
    ) -> u64 {
        if k == cells.len() {
            return 1;
        }
        let (i, j) = cells[k];
        let lam = |r: usize| lambda.get(r).copied().unwrap_or(0) as usize;
        let mut count = 0;
        for v in 1..=mu.len() as u32 {
            if used[v as usize] >= mu[v as usize - 1] {
                continue;
            }
            // lattice condition on the reverse reading word
            if v > 1 && used[v as usize] + 1 > used[v as usize - 1] {
                continue;
            }
            // rows weakly increase: the cell to the right was filled already
            if j + 1 < grid[i].len() && grid[i][j + 1] != 0 && grid[i][j + 1] < v {
                continue;
            }
            // columns strictly increase from the row above
            if i > 0 && j >= lam(i - 1) && grid[i - 1][j] >= v {
                continue;
            }
            grid[i][j] = v;
            used[v as usize] += 1;
            count += go(k + 1, cells, grid, used, mu, lambda);
            used[v as usize] -= 1;
            grid[i][j] = 0;
        }
        count
    }
    go(0, &cells, &mut grid, &mut used, mu, lambda)
}

fn check_against_tableaux(ctx: GrassContext) {
    let parts = ctx.partitions();
    for a in &parts {
        for b in &parts {
            let prod = ChowClass::sigma(ctx, a.parts())
                .unwrap()
                .product(&ChowClass::sigma(ctx, b.parts()).unwrap())
                .unwrap();
            for nu in &parts {
                let expected = lr_coefficient(a.parts(), b.parts(), nu.parts());
                assert_eq!(prod.coeff(nu), c(expected as i64), "σ{a}·σ{b} at σ{nu} in {ctx}");
            }
        }
    }
}

#[test]
fn products_match_tableau_counts() {
    for (n, big_n) in [(2, 4), (2, 5), (3, 6), (2, 6)] {
        check_against_tableaux(GrassContext::new(n, big_n).unwrap());
    }
}

#[test]
fn pieri_and_giambelli_routes_agree() {
    for (n, big_n) in [(2, 4), (2, 5), (3, 6)] {
        let ctx = GrassContext::new(n, big_n).unwrap();
        for a in ctx.partitions() {
            for b in ctx.partitions() {
                let x = ChowClass::sigma(ctx, a.parts()).unwrap();
                let y = ChowClass::sigma(ctx, b.parts()).unwrap();
                assert_eq!(x.product(&y).unwrap(), x.product_iterated_pieri(&y).unwrap());
            }
        }
    }
}

#[test]
fn duality_pairing() {
    for (n, big_n) in [(2, 4), (2, 5)] {
        let ctx = GrassContext::new(n, big_n).unwrap();
        for a in ctx.partitions() {
            let da = dual(&a, &ctx).unwrap();
            for b in ctx.partitions_of_size(ctx.dim() - a.size()) {
                let deg = ChowClass::sigma(ctx, a.parts())
                    .unwrap()
                    .product(&ChowClass::sigma(ctx, b.parts()).unwrap())
                    .unwrap()
                    .point_degree();
                assert_eq!(deg, c(i64::from(b == da)), "σ{a}·σ{b}");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Random classes on the blowup of Gr(2,4) × Gr(2,4) along the diagonal.

fn gr24() -> GrassContext {
    GrassContext::new(2, 4).unwrap()
}

fn basis_parts() -> Vec<Partition> {
    gr24().partitions()
}

fn blowup_class(pull: &[(usize, usize, i64)], exc: &[(usize, usize, i64)]) -> BlowupClass {
    let ctx = gr24();
    let parts = basis_parts();
    let mut x = BlowupClass::zero(ctx);
    for &(a, b, k) in pull {
        let t = TensorClass::sigma(ctx, parts[a].parts(), parts[b].parts()).unwrap().scale(&c(k));
        x = x.add(&BlowupClass::pullback(t)).unwrap();
    }
    for &(p, z, k) in exc {
        let e = EClass::sigma_zeta(ctx, parts[p].parts(), z).unwrap().scale(&c(k));
        x = x.add(&BlowupClass::pushforward(e)).unwrap();
    }
    x
}

fn arb_class() -> impl Strategy<Value = BlowupClass> {
    let n = basis_parts().len();
    (
        prop::collection::vec((0..n, 0..n, -3i64..4), 0..4),
        prop::collection::vec((0..n, 0..4usize, -3i64..4), 0..4),
    )
        .prop_map(|(p, e)| blowup_class(&p, &e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_idempotent_and_congruent(x in arb_class(), y in arb_class()) {
        let b = Blowup::new(gr24()).unwrap();
        let nf = b.normal_form(&x).unwrap();
        prop_assert_eq!(b.normal_form(&nf).unwrap(), nf.clone());
        // x and its normal form act identically
        let lhs = b.mult_b(&x, &y).unwrap();
        let rhs = b.mult_b(&nf, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn blowup_product_is_commutative_and_associative(
        x in arb_class(), y in arb_class(), z in arb_class()
    ) {
        let b = Blowup::new(gr24()).unwrap();
        prop_assert_eq!(b.mult_b(&x, &y).unwrap(), b.mult_b(&y, &x).unwrap());
        let left = b.mult_b(&b.mult_b(&x, &y).unwrap(), &z).unwrap();
        let right = b.mult_b(&x, &b.mult_b(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

// ---------------------------------------------------------------------------
// Chern and Segre series.

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn chern_times_segre_is_one(coeffs in prop::collection::vec(-5i64..6, 1..6)) {
        let ring = QuotientRing::new(&["h"], 6).with_rule(0, 7, QElem::default()).unwrap();
        let h = ring.gen(0);
        let chern: Vec<QElem> = coeffs
            .iter()
            .enumerate()
            .map(|(i, &k)| ring.scale(&ring.pow(&h, i + 1), &c(k)))
            .collect();
        let bundle = FormalBundle::new(&ring, coeffs.len(), chern);
        let prod = series_product(&ring, bundle.chern(), &bundle.segre(&ring));
        prop_assert_eq!(&prod[0], &ring.one());
        for term in &prod[1..] {
            prop_assert!(term.is_zero());
        }
    }
}

#[test]
fn exceptional_divisor_relation_reproduces_tangent_classes() {
    // ζ^D + c_1 ζ^{D−1} + … + c_D = 0 on E for every Grassmannian tested
    for (n, big_n) in [(2, 4), (2, 5)] {
        let ctx = GrassContext::new(n, big_n).unwrap();
        let b = Blowup::new(ctx).unwrap();
        let d = b.dim_g();
        let mut acc = b.zeta_power(d);
        for i in 1..=d {
            let term = b.e_monomial(&b.tangent_chern(i), d - i).unwrap();
            acc = acc.add(&term).unwrap();
        }
        assert!(acc.is_zero(), "relation fails in {ctx}: {acc}");
    }
}
