mod common;

use common::*;
use hsformal::cohomology::betti_table;
use hsformal::descriptor::{parse, EmbeddingChoice, ResolvedSpace};
use hsformal::lie::{GroupSpec, TorusEmbedding};
use hsformal::models::{biquotient_model, homogeneous_model, minimize_pure};
use num_rational::Rational64;

fn golden(s: &str) -> String {
    let m = model(s);
    format!("{}minimal\n{}", m.dump(), minimize_pure(&m).unwrap().model.dump())
}

#[test]
fn two_block_model_matches_fixture() {
    assert_eq!(golden("SU(6)/(SU(3)xSU(3))"), include_str!("fixtures/su6_su3_su3.model"));
}

#[test]
fn split_sphere_model_matches_fixture() {
    assert_eq!(golden("SU(7)/(SU(3)xSU(4))"), include_str!("fixtures/su7_su3_su4.model"));
}

#[test]
fn fixed_width_rationals_agree() {
    let d = parse("SU(6)/(SU(3)xSU(3))").unwrap();
    let ResolvedSpace::Homogeneous { g, h, embedding } = d.resolve().unwrap() else { unreachable!() };
    let small = homogeneous_model::<Rational64>(&g, &h, &embedding).unwrap();
    let big = homogeneous_model::<Q>(&g, &h, &embedding).unwrap();
    assert_eq!(small.dump(), big.dump());
    assert_eq!(minimize_pure(&small).unwrap().model.dump(), minimize_pure(&big).unwrap().model.dump());
}

#[test]
fn degree_six_class_vanishes_on_two_blocks() {
    let m = model("SU(4)/(SU(2)xSU(2))");
    let alg = &m.algebra;
    let x3 = alg.find("x3").unwrap();
    assert!(alg.differential_of(x3.id).is_zero());
    assert_eq!(alg.render(alg.differential_of(alg.find("x2").unwrap().id)), "c2_1 + c2_2");
    assert_eq!(alg.render(alg.differential_of(alg.find("x4").unwrap().id)), "c2_1*c2_2");
}

#[test]
fn group_mod_itself_is_a_point() {
    for g in ["SU(4)", "Sp(3)", "SO(7)", "SO(8)", "U(3)"] {
        let g = hsformal::descriptor::parse_group(g).unwrap();
        let e = TorusEmbedding::identity(&g).unwrap();
        let m = homogeneous_model::<Q>(&g, &g, &e).unwrap();
        let min = minimize_pure(&m).unwrap();
        assert!(min.model.algebra.generators().is_empty(), "{g}");
        let t = betti_table(&m.algebra, 12).unwrap();
        assert_eq!(t.support(), vec![0], "{g}");
    }
}

#[test]
fn basis_counts_match_hilbert_series() {
    for s in CATALOG {
        let m = model(s);
        let even: Vec<u32> = m.even_generators().iter().map(|g| g.degree).collect();
        let odd: Vec<u32> = m.odd_generators().iter().map(|g| g.degree).collect();
        let fd = m.formal_dimension() as usize;
        let series = hilbert_series(&even, &odd, fd);
        for (k, expected) in series.iter().enumerate() {
            assert_eq!(m.algebra.basis(k as u32).unwrap().len() as u64, *expected, "{s} degree {k}");
        }
    }
}

#[test]
fn two_block_basis_in_degree_nineteen() {
    let m = model("SU(6)/(SU(3)xSU(3))");
    let series = hilbert_series(&[4, 4, 6, 6], &[3, 5, 7, 9, 11], 19);
    assert_eq!(m.algebra.basis(19).unwrap().len() as u64, series[19]);
}

#[test]
fn trivial_right_map_gives_homogeneous_model() {
    for s in ["SU(6)/(SU(3)xSU(3))", "Sp(3)/(U(2)xSp(1))", "SO(9)/(SO(3)xSO(4))", "SU(4)/S(U(2)xU(2))"] {
        let d = parse(s).unwrap();
        let ResolvedSpace::Homogeneous { g, h, embedding } = d.resolve().unwrap() else { unreachable!() };
        let zero = TorusEmbedding::new(h.clone(), g.clone(), vec![vec![0; h.coordinates()]; g.coordinates()]).unwrap();
        let bq = biquotient_model::<Q>(&g, &h, &embedding, &zero).unwrap();
        let hom = homogeneous_model::<Q>(&g, &h, &embedding).unwrap();
        assert_eq!(bq.algebra, hom.algebra, "{s}");
        assert_eq!(bq.even_count, hom.even_count);
    }
}

#[test]
fn equal_sides_give_zero_differentials() {
    for s in ["SU(6)/(SU(3)xSU(3))", "U(3)/T(3)", "Sp(2)/T(2)"] {
        let d = parse(s).unwrap();
        let ResolvedSpace::Homogeneous { g, h, embedding } = d.resolve().unwrap() else { unreachable!() };
        let m = biquotient_model::<Q>(&g, &h, &embedding, &embedding).unwrap();
        assert!(m.odd_generators().iter().all(|x| m.algebra.differential_of(x.id).is_zero()), "{s}");
    }
}

#[test]
fn eschenburg_type_biquotient() {
    let m = model_of(&eschenburg());
    let even: Vec<u32> = m.even_generators().iter().map(|g| g.degree).collect();
    let odd: Vec<u32> = m.odd_generators().iter().map(|g| g.degree).collect();
    assert_eq!(even, vec![2, 2, 2]);
    assert_eq!(odd, vec![1, 3, 5]);
    let t = betti_table(&m.algebra, m.formal_dimension() as u32).unwrap();
    assert_eq!(t.euler_characteristic(), 6);
    assert_eq!(t.total_dimension(), 6);
}

#[test]
fn biquotient_descriptor_defaults_to_one_sided() {
    let d = parse("SU(3)//T(2)").unwrap();
    let ResolvedSpace::Biquotient { g, k, left, right } = d.resolve().unwrap() else { unreachable!() };
    let bq = biquotient_model::<Q>(&g, &k, &left, &right).unwrap();
    let hom = homogeneous_model::<Q>(&g, &k, &left).unwrap();
    assert_eq!(bq.algebra, hom.algebra);
}

#[test]
fn manifold_dimensions() {
    for (p1, p2) in [(1, 1), (2, 3), (3, 3), (2, 5)] {
        let d = parse(&format!("SU({})/S(U({p1})xU({p2}))", p1 + p2)).unwrap();
        assert_eq!(d.dimension(), 2 * p1 * p2);
    }
    for (p, l) in [(2, 1), (1, 3), (3, 2)] {
        let d = parse(&format!("Sp({})/(U({p})xSp({l}))", p + l)).unwrap();
        assert_eq!(d.dimension(), p * p + 4 * l * p + p);
    }
    let d = parse("SU(6)/(SU(3)xSU(3))").unwrap();
    assert_eq!(d.dimension(), 19);
    assert_ne!(d.numerator.rank(), d.denominator.rank());
}

#[test]
fn embedding_mismatch_is_rejected() {
    let g = GroupSpec::SU(5);
    let h = GroupSpec::SU(3);
    let e = TorusEmbedding::blockwise(&h, &GroupSpec::SU(4)).unwrap();
    assert_eq!(homogeneous_model::<Q>(&g, &h, &e).unwrap_err().kind(), "EmbeddingMismatch");
    let d = parse("SU(3)/(SU(4))").unwrap();
    assert_eq!(d.resolve().unwrap_err().kind(), "BlocksDoNotFit");
    let bad = parse("SU(4)/SU(2)").unwrap().with_embedding(EmbeddingChoice::Matrix(vec![vec![1]]));
    assert!(bad.resolve().is_err());
}
