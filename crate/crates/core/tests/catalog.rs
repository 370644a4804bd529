mod common;

use common::*;
use hsformal::cohomology::{betti_table, ring_structure};
use hsformal::descriptor::{parse, ResolvedSpace};
use hsformal::formality::{decide, decide_model, reduce_to_torus, DecideOptions};
use hsformal::lie::GroupSpec;
use hsformal::models::{homogeneous_model, minimize_pure};
use num_traits::Zero;

#[test]
fn catalog_is_small() {
    for s in CATALOG {
        assert!(model(s).formal_dimension() <= 40, "{s}");
    }
}

#[test]
fn differential_squares_to_zero_on_generators() {
    for s in CATALOG {
        let m = model(s);
        for g in m.algebra.generators() {
            let x = m.algebra.gen(g.id);
            assert!(m.algebra.d(&m.algebra.d(&x)).is_zero(), "{s} {}", g.name);
        }
    }
}

#[test]
fn poincare_duality() {
    for s in CATALOG {
        let m = model(s);
        let fd = m.formal_dimension() as u32;
        let t = betti_table(&m.algebra, fd + 4).unwrap();
        assert_eq!(t.betti(fd), 1, "{s}");
        assert_eq!(t.top_degree(), Some(fd), "{s}");
        for k in 0..=fd {
            assert_eq!(t.betti(k), t.betti(fd - k), "{s} degree {k}");
        }
    }
}

#[test]
fn minimizing_preserves_betti_numbers() {
    for s in CATALOG {
        let m = model(s);
        let min = minimize_pure(&m).unwrap();
        assert!(min.model.is_minimal(), "{s}");
        assert_eq!(min.model.formal_dimension(), m.formal_dimension(), "{s}");
        let cap = m.formal_dimension() as u32 + 2;
        let a = betti_table(&m.algebra, cap).unwrap();
        let b = betti_table(&min.model.algebra, cap).unwrap();
        assert_eq!(a.betti, b.betti, "{s}");
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Weyl group orders: `S_n` for `U(n)` and `SU(n)`, `2^n n!` for `Sp(n)` and
/// `SO(2n+1)`, `2^{n-1} n!` for `SO(2n)`.
fn weyl_order(g: &GroupSpec) -> u64 {
    match g {
        GroupSpec::SU(n) | GroupSpec::U(n) | GroupSpec::UTilde(n) => factorial(*n as u64),
        GroupSpec::Sp(n) => (1u64 << n) * factorial(*n as u64),
        GroupSpec::SO(m) if m % 2 == 1 => (1u64 << (m / 2)) * factorial((m / 2) as u64),
        GroupSpec::SO(m) => (1u64 << (m / 2 - 1)) * factorial((m / 2) as u64),
        GroupSpec::SUBlocks(b) => b.iter().map(|&p| factorial(p as u64)).product(),
        GroupSpec::Torus(_) => 1,
        GroupSpec::Product(parts) => parts.iter().map(weyl_order).product(),
    }
}

#[test]
fn equal_rank_spaces_are_formal_with_positive_euler_characteristic() {
    let mut seen = 0;
    for s in CATALOG {
        let d = descriptor(s);
        if d.numerator.rank() != d.denominator.rank() {
            continue;
        }
        seen += 1;
        let m = model(s);
        let t = betti_table(&m.algebra, m.formal_dimension() as u32).unwrap();
        let chi = t.euler_characteristic();
        assert!(chi > 0, "{s}");
        assert!(t.support().iter().all(|k| k % 2 == 0), "{s}");
        if d.kind == hsformal::descriptor::SpaceKind::Homogeneous {
            assert_eq!(chi as u64, weyl_order(&d.numerator) / weyl_order(&d.denominator), "{s}");
        }
        let v = decide::<Q>(&d, DecideOptions::default()).unwrap();
        assert!(v.formal, "{s}");
    }
    assert!(seen >= 10);
}

#[test]
fn grassmannian_euler_characteristic() {
    let m = model("SU(6)/S(U(3)xU(3))");
    let t = betti_table(&m.algebra, 18).unwrap();
    assert_eq!(t.euler_characteristic(), 20);
    assert_eq!(weyl_order(&GroupSpec::SU(6)) / weyl_order(&GroupSpec::SUBlocks(vec![3, 3])), 720 / 36);
}

#[test]
fn torus_reduction_keeps_verdict() {
    let pairs = [
        ("SU(6)/(SU(3)xSU(3))", false),
        ("SU(7)/(SU(3)xSU(4))", true),
        ("SU(4)/(SU(2)xSU(2))", true),
        ("SU(4)/S(U(2)xU(2))", true),
        ("SO(9)/(SO(3)xSO(4))", true),
        ("SU(6)/(SU(2)xSU(2)xSU(2))", true),
        ("Sp(3)/Sp(1)", true),
    ];
    for (s, expected) in pairs {
        let ResolvedSpace::Homogeneous { g, h, embedding } = parse(s).unwrap().resolve().unwrap() else { unreachable!() };
        let direct = decide_model(&homogeneous_model::<Q>(&g, &h, &embedding).unwrap()).unwrap();
        let (g2, t, e2) = reduce_to_torus(&g, &h, &embedding).unwrap();
        assert_eq!(t, GroupSpec::Torus(h.rank() as u32));
        let reduced = decide_model(&homogeneous_model::<Q>(&g2, &t, &e2).unwrap()).unwrap();
        assert_eq!(direct, expected, "{s}");
        assert_eq!(reduced, expected, "{s} over its torus");
    }
}

#[test]
fn ring_is_graded_commutative_and_associative() {
    for s in ["SU(3)/T(2)", "Sp(3)/(U(2)xSp(1))", "SU(6)/(SU(3)xSU(3))", "SO(9)/(SO(3)xSO(4))"] {
        let m = minimize_pure(&model(s)).unwrap().model;
        let fd = m.formal_dimension() as u32;
        let t = betti_table(&m.algebra, fd).unwrap();
        let ring = ring_structure(&m.algebra, &t).unwrap();
        let reps: Vec<(u32, usize)> = t.support().into_iter().flat_map(|k| (0..t.betti(k)).map(move |i| (k, i))).collect();
        let rep = |(k, i): (u32, usize)| t.representatives[k as usize][i].clone();
        let mut dec = hsformal::cohomology::ClassDecomposer::new(&m.algebra, fd).unwrap();
        for &a in &reps {
            for &b in &reps {
                if a.0 + b.0 > fd {
                    continue;
                }
                let ab = dec.decompose(a.0 + b.0, &(&rep(a) * &rep(b))).unwrap();
                let ba = dec.decompose(a.0 + b.0, &(&rep(b) * &rep(a))).unwrap();
                let sign = if a.0 * b.0 % 2 == 0 { 1 } else { -1 };
                for (x, y) in ab.iter().zip(&ba) {
                    assert_eq!(x.clone(), y * Q::from_integer(sign.into()), "{s}");
                }
                let key = if (a.0, a.1) <= (b.0, b.1) { (a, b) } else { (b, a) };
                if let Some(stored) = ring.products.get(&key) {
                    let plain = if key.0 == a { &ab } else { &ba };
                    assert_eq!(stored, plain, "{s}");
                }
                for &c in &reps {
                    if a.0 + b.0 + c.0 > fd {
                        continue;
                    }
                    let left = dec.decompose(a.0 + b.0 + c.0, &(&(&rep(a) * &rep(b)) * &rep(c))).unwrap();
                    let right = dec.decompose(a.0 + b.0 + c.0, &(&rep(a) * &(&rep(b) * &rep(c)))).unwrap();
                    assert_eq!(left, right, "{s}");
                }
            }
        }
    }
}

#[test]
fn fundamental_class_pairs_nondegenerately() {
    let m = model("Sp(3)/(U(2)xSp(1))");
    let fd = 14;
    let t = betti_table(&m.algebra, fd).unwrap();
    let mut dec = hsformal::cohomology::ClassDecomposer::new(&m.algebra, fd).unwrap();
    for k in 0..=fd {
        for a in &t.representatives[k as usize] {
            let paired = t.representatives[(fd - k) as usize]
                .iter()
                .any(|b| !dec.decompose(fd, &(a * b)).unwrap().iter().all(Zero::is_zero));
            assert!(paired, "degree {k}");
        }
    }
}
