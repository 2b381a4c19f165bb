//! Numerical Chow rings attached to a smooth curve `X` of genus `g`.
//!
//! Only intersection numbers matter once everything is restricted to a curve,
//! so these rings keep just the classes that appear: a projectivized vector
//! bundle over `X`, and the diagonal inside `X × X`.

use crate::bundles::GradedRing;
use crate::param::ParamPoly;

/// `P(N)` for a rank-`r` bundle `N` on a curve, `deg c_1(N) = c1_degree`.
///
/// Basis `ζ^k` and `F ζ^k` for `0 ≤ k < r`, where `F` is a fibre, `F² = 0`,
/// `F ζ^{r−1}` is a point and `ζ^r = −c_1(N) F ζ^{r−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveBundleNumerics {
    rank: usize,
    c1_degree: ParamPoly,
}

/// `Σ a_k ζ^k + Σ b_k F ζ^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveBundleClass {
    pub zeta: Vec<ParamPoly>,
    pub fiber: Vec<ParamPoly>,
}

impl CurveBundleNumerics {
    pub fn new(rank: usize, c1_degree: ParamPoly) -> Self {
        assert!(rank >= 1, "a projective bundle needs rank at least one");
        Self { rank, c1_degree }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn c1_degree(&self) -> &ParamPoly {
        &self.c1_degree
    }

    pub fn zeta(&self) -> CurveBundleClass {
        self.build(&[(1, ParamPoly::one())], &[])
    }

    /// The fibre class `F`.
    pub fn fiber(&self) -> CurveBundleClass {
        self.build(&[], &[(0, ParamPoly::one())])
    }

    /// `Σ c ζ^k + Σ c' F ζ^k` from sparse lists, any exponents.
    pub fn build(&self, zeta: &[(usize, ParamPoly)], fiber: &[(usize, ParamPoly)]) -> CurveBundleClass {
        let r = self.rank;
        let mut out = CurveBundleClass {
            zeta: vec![ParamPoly::zero(); r],
            fiber: vec![ParamPoly::zero(); r],
        };
        for (k, c) in fiber {
            if *k < r {
                out.fiber[*k] += c.clone();
            }
        }
        for (k, c) in zeta {
            match k.cmp(&r) {
                std::cmp::Ordering::Less => out.zeta[*k] += c.clone(),
                std::cmp::Ordering::Equal => out.fiber[r - 1] -= c * &self.c1_degree,
                // ζ^{r+1} = −c_1 F ζ^r = 0
                std::cmp::Ordering::Greater => {}
            }
        }
        out
    }

    /// Degree of the zero-cycle part.
    pub fn degree(&self, x: &CurveBundleClass) -> ParamPoly {
        x.fiber[self.rank - 1].clone()
    }

    /// A quotient `x / ζ` without a `ζ^{r−1}` term, when one exists.
    pub fn div_zeta(&self, x: &CurveBundleClass) -> Option<CurveBundleClass> {
        if !x.zeta[0].is_zero() || !x.fiber[0].is_zero() {
            return None;
        }
        let r = self.rank;
        let zeta: Vec<(usize, ParamPoly)> = (1..r).map(|k| (k - 1, x.zeta[k].clone())).collect();
        let fiber: Vec<(usize, ParamPoly)> = (1..r).map(|k| (k - 1, x.fiber[k].clone())).collect();
        let q = self.build(&zeta, &fiber);
        (self.mul(&q, &self.zeta()) == *x).then_some(q)
    }
}

impl GradedRing for CurveBundleNumerics {
    type Elem = CurveBundleClass;

    fn dim(&self) -> usize {
        self.rank
    }
    fn zero(&self) -> CurveBundleClass {
        self.build(&[], &[])
    }
    fn one(&self) -> CurveBundleClass {
        self.build(&[(0, ParamPoly::one())], &[])
    }
    fn add(&self, a: &CurveBundleClass, b: &CurveBundleClass) -> CurveBundleClass {
        CurveBundleClass {
            zeta: a.zeta.iter().zip(&b.zeta).map(|(x, y)| x + y).collect(),
            fiber: a.fiber.iter().zip(&b.fiber).map(|(x, y)| x + y).collect(),
        }
    }
    fn mul(&self, a: &CurveBundleClass, b: &CurveBundleClass) -> CurveBundleClass {
        let mut zeta = Vec::new();
        let mut fiber = Vec::new();
        for (i, x) in a.zeta.iter().enumerate() {
            for (j, y) in b.zeta.iter().enumerate() {
                zeta.push((i + j, x * y));
            }
            for (j, y) in b.fiber.iter().enumerate() {
                fiber.push((i + j, x * y));
            }
        }
        for (i, x) in a.fiber.iter().enumerate() {
            for (j, y) in b.zeta.iter().enumerate() {
                fiber.push((i + j, x * y));
            }
        }
        // F ζ^k with k ≥ r vanishes; ζ^k with k ≥ r is handled by `build`
        self.build(&zeta, &fiber)
    }
    fn scale(&self, a: &CurveBundleClass, c: &ParamPoly) -> CurveBundleClass {
        CurveBundleClass {
            zeta: a.zeta.iter().map(|x| x * c).collect(),
            fiber: a.fiber.iter().map(|x| x * c).collect(),
        }
    }
    fn is_zero(&self, a: &CurveBundleClass) -> bool {
        a.zeta.iter().chain(&a.fiber).all(ParamPoly::is_zero)
    }
}

/// Numerical classes on `X × X`: `1`, the two fibres `F_1 = p × X`,
/// `F_2 = X × p`, the diagonal `Δ`, and a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSquare {
    canonical_degree: ParamPoly,
}

/// `c + f_1 F_1 + f_2 F_2 + δ Δ + p·pt`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CurveSquareClass {
    pub unit: ParamPoly,
    pub f1: ParamPoly,
    pub f2: ParamPoly,
    pub diagonal: ParamPoly,
    pub point: ParamPoly,
}

impl CurveSquare {
    /// `deg K_X = canonical_degree`; then `Δ² = −deg K_X`.
    pub fn new(canonical_degree: ParamPoly) -> Self {
        Self { canonical_degree }
    }

    pub fn diagonal(&self) -> CurveSquareClass {
        CurveSquareClass {
            diagonal: ParamPoly::one(),
            ..Default::default()
        }
    }

    /// `c_1(T_{X×X}) = −K_X ⊠ 1 − 1 ⊠ K_X`, numerically `−deg K (F_1 + F_2)`.
    pub fn c1_tangent(&self) -> CurveSquareClass {
        let minus_k = -self.canonical_degree.clone();
        CurveSquareClass {
            f1: minus_k.clone(),
            f2: minus_k,
            ..Default::default()
        }
    }

    pub fn degree(&self, x: &CurveSquareClass) -> ParamPoly {
        x.point.clone()
    }
}

impl GradedRing for CurveSquare {
    type Elem = CurveSquareClass;

    fn dim(&self) -> usize {
        2
    }
    fn zero(&self) -> CurveSquareClass {
        CurveSquareClass::default()
    }
    fn one(&self) -> CurveSquareClass {
        CurveSquareClass {
            unit: ParamPoly::one(),
            ..Default::default()
        }
    }
    fn add(&self, a: &CurveSquareClass, b: &CurveSquareClass) -> CurveSquareClass {
        CurveSquareClass {
            unit: &a.unit + &b.unit,
            f1: &a.f1 + &b.f1,
            f2: &a.f2 + &b.f2,
            diagonal: &a.diagonal + &b.diagonal,
            point: &a.point + &b.point,
        }
    }
    fn mul(&self, a: &CurveSquareClass, b: &CurveSquareClass) -> CurveSquareClass {
        // F_i² = 0, F_1 F_2 = F_i Δ = 1, Δ² = −deg K
        let divisor_pairing = &a.f1 * &b.f2
            + &a.f2 * &b.f1
            + &a.f1 * &b.diagonal
            + &a.diagonal * &b.f1
            + &a.f2 * &b.diagonal
            + &a.diagonal * &b.f2
            - &(&a.diagonal * &b.diagonal) * &self.canonical_degree;
        CurveSquareClass {
            unit: &a.unit * &b.unit,
            f1: &a.unit * &b.f1 + &a.f1 * &b.unit,
            f2: &a.unit * &b.f2 + &a.f2 * &b.unit,
            diagonal: &a.unit * &b.diagonal + &a.diagonal * &b.unit,
            point: &a.unit * &b.point + &a.point * &b.unit + divisor_pairing,
        }
    }
    fn scale(&self, a: &CurveSquareClass, c: &ParamPoly) -> CurveSquareClass {
        CurveSquareClass {
            unit: &a.unit * c,
            f1: &a.f1 * c,
            f2: &a.f2 * c,
            diagonal: &a.diagonal * c,
            point: &a.point * c,
        }
    }
    fn is_zero(&self, a: &CurveSquareClass) -> bool {
        *a == CurveSquareClass::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: i64) -> ParamPoly {
        ParamPoly::constant(k)
    }

    #[test]
    fn hirzebruch_surface() {
        // P(O ⊕ O(−1)) over P^1 is F_1: ζ² = −c_1 = 1 point, ζ·F = 1.
        let ring = CurveBundleNumerics::new(2, c(-1));
        let z = ring.zeta();
        assert_eq!(ring.degree(&ring.mul(&z, &z)), c(1));
        assert_eq!(ring.degree(&ring.mul(&z, &ring.fiber())), c(1));
        assert!(ring.is_zero(&ring.mul(&ring.fiber(), &ring.fiber())));
    }

    #[test]
    fn chern_relation_holds() {
        let ring = CurveBundleNumerics::new(4, ParamPoly::g().scale_i(3));
        let z = ring.zeta();
        let top = ring.pow(&z, 4);
        let expected = ring.build(&[], &[(3, -ParamPoly::g().scale_i(3))]);
        assert_eq!(top, expected);
        assert!(ring.is_zero(&ring.pow(&z, 5)));
    }

    #[test]
    fn divide_by_zeta() {
        let ring = CurveBundleNumerics::new(3, ParamPoly::d());
        let x = ring.mul(&ring.add(&ring.pow(&ring.zeta(), 2), &ring.fiber()), &ring.zeta());
        let q = ring.div_zeta(&x).unwrap();
        assert_eq!(ring.mul(&q, &ring.zeta()), x);
        assert!(ring.div_zeta(&ring.one()).is_none());
    }

    #[test]
    fn diagonal_of_curve_square() {
        let k = ParamPoly::g().scale_i(2) - c(2);
        let ring = CurveSquare::new(k);
        let delta = ring.diagonal();
        // Δ² = 2 − 2g and Δ · c_1(T) = 2 deg T_X
        assert_eq!(ring.degree(&ring.mul(&delta, &delta)), c(2) - ParamPoly::g().scale_i(2));
        assert_eq!(ring.degree(&ring.mul(&delta, &ring.c1_tangent())), c(4) - ParamPoly::g().scale_i(4));
    }
}
