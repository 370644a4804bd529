mod common;

use std::sync::OnceLock;

use common::*;
use hsformal::{Element, PureModel, Scalar};
use proptest::prelude::*;

fn models() -> &'static Vec<PureModel> {
    static MODELS: OnceLock<Vec<PureModel>> = OnceLock::new();
    MODELS.get_or_init(|| CATALOG.iter().map(|s| model(s)).collect())
}

/// A combination of the degree-`k` basis with the given coefficients.
fn element(m: &PureModel, k: u32, coeffs: &[i64]) -> Element {
    let basis = m.algebra.basis(k).unwrap();
    let mut e = Element::zero();
    for (mono, c) in basis.into_iter().zip(coeffs.iter().cycle()) {
        e.add_term(mono, Q::from_i64(*c));
    }
    e
}

fn sign(k: u32) -> Q {
    if k % 2 == 0 { Q::from_i64(1) } else { Q::from_i64(-1) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn differential_squares_to_zero(i in 0..CATALOG.len(), k in 0u32..16, coeffs in prop::collection::vec(-3i64..4, 1..12)) {
        let m = &models()[i];
        let a = element(m, k, &coeffs);
        prop_assert!(m.algebra.d(&m.algebra.d(&a)).is_zero());
    }

    #[test]
    fn leibniz_rule(i in 0..CATALOG.len(), p in 0u32..9, q in 0u32..9,
                    ca in prop::collection::vec(-3i64..4, 1..8), cb in prop::collection::vec(-3i64..4, 1..8)) {
        let m = &models()[i];
        let d = |e: &Element| m.algebra.d(e);
        let (a, b) = (element(m, p, &ca), element(m, q, &cb));
        let lhs = d(&(&a * &b));
        let rhs = &(&d(&a) * &b) + &(&a * &d(&b)).scale(&sign(p));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_is_associative(i in 0..CATALOG.len(), p in 0u32..7, q in 0u32..7, r in 0u32..7,
                              ca in prop::collection::vec(-3i64..4, 1..6), cb in prop::collection::vec(-3i64..4, 1..6),
                              cc in prop::collection::vec(-3i64..4, 1..6)) {
        let m = &models()[i];
        let (a, b, c) = (element(m, p, &ca), element(m, q, &cb), element(m, r, &cc));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn product_is_graded_commutative(i in 0..CATALOG.len(), p in 0u32..10, q in 0u32..10,
                                     ca in prop::collection::vec(-3i64..4, 1..8), cb in prop::collection::vec(-3i64..4, 1..8)) {
        let m = &models()[i];
        let (a, b) = (element(m, p, &ca), element(m, q, &cb));
        prop_assert_eq!(&a * &b, (&b * &a).scale(&sign(p * q)));
    }
}

#[test]
fn odd_generators_square_to_zero() {
    for m in models() {
        for g in m.odd_generators() {
            let x = m.algebra.gen(g.id);
            assert!((&x * &x).is_zero());
        }
    }
}
