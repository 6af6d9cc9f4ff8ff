mod common;

use common::det_cofactor;
use proptest::prelude::*;
use rsmld::{build_field, FieldElement, Matrix, Poly};

fn e(b: u128) -> FieldElement {
    FieldElement::from_bits(b)
}

fn elems(m: u32, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<FieldElement>> {
    prop::collection::vec(0u128..(1 << m), len).prop_map(|v| v.into_iter().map(e).collect())
}

fn distinct(m: u32, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<FieldElement>> {
    prop::collection::btree_set(0u128..(1 << m), len).prop_map(|s| s.into_iter().map(e).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn determinant_matches_cofactor_expansion(n in 1usize..6, seed in elems(8, 25..26)) {
        let ctx = build_field(8).unwrap();
        let low = ctx.modulus_low();
        let a = Matrix::from_fn(n, n, |i, j| seed[i * 5 + j]);
        let rows: Vec<Vec<u128>> = (0..n).map(|i| a.row(i).iter().map(|x| x.bits()).collect()).collect();
        prop_assert_eq!(a.determinant(&ctx).unwrap().bits(), det_cofactor(&rows, 8, low));
    }

    #[test]
    fn determinant_is_multiplicative(seed in elems(6, 18..19)) {
        let ctx = build_field(6).unwrap();
        let a = Matrix::from_fn(3, 3, |i, j| seed[i * 3 + j]);
        let b = Matrix::from_fn(3, 3, |i, j| seed[9 + i * 3 + j]);
        let ab = a.mul(&ctx, &b).unwrap();
        prop_assert_eq!(
            ab.determinant(&ctx).unwrap(),
            ctx.mul(a.determinant(&ctx).unwrap(), b.determinant(&ctx).unwrap())
        );
    }

    #[test]
    fn nullspace_vector_is_in_kernel(rows in 1usize..5, cols in 1usize..6, seed in elems(4, 30..31)) {
        let ctx = build_field(4).unwrap();
        let a = Matrix::from_fn(rows, cols, |i, j| seed[i * 6 + j]);
        match a.nullspace_vector(&ctx) {
            Some(u) => {
                prop_assert!(u.iter().any(|x| !x.is_zero()));
                prop_assert!(a.mul_vec(&ctx, &u).unwrap().iter().all(|x| x.is_zero()));
            }
            None => prop_assert_eq!(a.rank(&ctx), cols),
        }
        if rows == cols {
            let singular = a.determinant(&ctx).unwrap().is_zero();
            prop_assert_eq!(singular, a.nullspace_vector(&ctx).is_some());
        }
    }

    #[test]
    fn interpolation_round_trip(xs in distinct(7, 1..12), ys in elems(7, 12..13)) {
        let ctx = build_field(7).unwrap();
        let pts: Vec<_> = xs.iter().copied().zip(ys.iter().copied()).collect();
        let p = Poly::interpolate(&ctx, &pts).unwrap();
        prop_assert!(p.degree_below(xs.len()));
        for &(x, y) in &pts {
            prop_assert_eq!(p.eval(&ctx, x), y);
        }
    }

    #[test]
    fn interpolation_recovers_low_degree(coeffs in elems(9, 0..6), xs in distinct(9, 6..10)) {
        let ctx = build_field(9).unwrap();
        let p = Poly::from_coeffs(coeffs);
        let pts: Vec<_> = xs.iter().map(|&x| (x, p.eval(&ctx, x))).collect();
        prop_assert_eq!(Poly::interpolate(&ctx, &pts).unwrap(), p);
    }

    #[test]
    fn from_roots_vanishes_exactly_on_roots(roots in distinct(5, 0..8), probe in 0u128..32) {
        let ctx = build_field(5).unwrap();
        let p = Poly::from_roots(&ctx, &roots);
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.degree(), Some(roots.len()));
        let probe = e(probe);
        prop_assert_eq!(p.eval(&ctx, probe).is_zero(), roots.contains(&probe));
    }

    #[test]
    fn derivative_product_rule(a in elems(6, 0..6), b in elems(6, 0..6)) {
        let ctx = build_field(6).unwrap();
        let (a, b) = (Poly::from_coeffs(a), Poly::from_coeffs(b));
        let lhs = a.mul(&ctx, &b).derivative();
        let rhs = a.derivative().mul(&ctx, &b).add(&a.mul(&ctx, &b.derivative()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_of_square_vanishes(a in elems(6, 0..6)) {
        let ctx = build_field(6).unwrap();
        let a = Poly::from_coeffs(a);
        prop_assert!(a.mul(&ctx, &a).derivative().is_zero());
    }
}

#[test]
fn vandermonde_determinant() {
    let ctx = build_field(6).unwrap();
    let xs: Vec<_> = [3u128, 9, 17, 40, 63].map(e).to_vec();
    let v = Matrix::power(&ctx, &xs, xs.len());
    let mut expected = FieldElement::ONE;
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            expected = ctx.mul(expected, xs[a] + xs[b]);
        }
    }
    assert_eq!(v.determinant(&ctx).unwrap(), expected);
}
