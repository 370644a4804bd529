#![allow(dead_code)]

use hsformal::descriptor::{parse, EmbeddingChoice, ResolvedSpace, SpaceDescriptor};
use hsformal::lie::SpecialEmbedding;
use hsformal::models::{biquotient_model, homogeneous_model};
use hsformal::{PureModel, Rational};

pub type Q = Rational;

/// Spaces small enough for full cohomology computations.
pub const CATALOG: [&str; 25] = [
    "SU(6)/(SU(3)xSU(3))",
    "SU(7)/(SU(3)xSU(4))",
    "SU(4)/(SU(2)xSU(2))",
    "SU(5)/(SU(2)xSU(3))",
    "SU(3)/T(2)",
    "SU(4)/S(U(2)xU(2))",
    "SU(6)/S(U(3)xU(3))",
    "Sp(2)/T(2)",
    "Sp(3)/(U(2)xSp(1))",
    "SO(7)/SO(5)",
    "SO(8)/Ut(4)",
    "SO(9)/(SO(3)xSO(4))",
    "SU(4)/Sp(2)",
    "SU(5)/SO(5)",
    "Sp(3)/Sp(1)",
    "SU(5)/SU(3)",
    "U(4)/(U(2)xU(2))",
    "SO(6)/(SO(2)xSO(2)xSO(2))",
    "SU(3)/SU(2)",
    "Sp(2)/Sp(1)",
    "SO(8)/SO(7)",
    "SU(6)/Sp(3)",
    "SO(10)/Ut(5)",
    "U(3)//(T(1)xT(2))",
    "SU(6)/(SU(2)xSU(2)xSU(2))",
];

/// Left: the scalar circle with weight one on every coordinate. Right: two
/// of the three diagonal coordinates.
pub fn eschenburg() -> SpaceDescriptor {
    let left = vec![vec![1, 0, 0], vec![1, 0, 0], vec![1, 0, 0]];
    let right = vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]];
    parse("U(3)//(T(1)xT(2))").unwrap().with_embedding(EmbeddingChoice::Matrices(left, right))
}

pub fn descriptor(s: &str) -> SpaceDescriptor {
    let d = parse(s).unwrap();
    match s {
        "SU(4)/Sp(2)" => d.with_embedding(EmbeddingChoice::Special(SpecialEmbedding::SymplecticInUnitary(2))),
        "SU(6)/Sp(3)" => d.with_embedding(EmbeddingChoice::Special(SpecialEmbedding::SymplecticInUnitary(3))),
        "SU(5)/SO(5)" => d.with_embedding(EmbeddingChoice::Special(SpecialEmbedding::OrthogonalInUnitary(5))),
        "SO(8)/Ut(4)" => d.with_embedding(EmbeddingChoice::Special(SpecialEmbedding::TwistedUnitaryInOrthogonal(4))),
        "SO(10)/Ut(5)" => d.with_embedding(EmbeddingChoice::Special(SpecialEmbedding::TwistedUnitaryInOrthogonal(5))),
        "U(3)//(T(1)xT(2))" => eschenburg(),
        _ => d,
    }
}

pub fn model_of(desc: &SpaceDescriptor) -> PureModel {
    match desc.resolve().unwrap() {
        ResolvedSpace::Homogeneous { g, h, embedding } => homogeneous_model::<Q>(&g, &h, &embedding).unwrap(),
        ResolvedSpace::Biquotient { g, k, left, right } => biquotient_model::<Q>(&g, &k, &left, &right).unwrap(),
    }
}

pub fn model(s: &str) -> PureModel {
    model_of(&descriptor(s))
}

/// Coefficients of `Π(1 + t^odd) / Π(1 - t^even)` up to `t^cap`.
pub fn hilbert_series(even: &[u32], odd: &[u32], cap: usize) -> Vec<u64> {
    let mut series = vec![0u64; cap + 1];
    series[0] = 1;
    for &d in odd {
        for k in (d as usize..=cap).rev() {
            series[k] += series[k - d as usize];
        }
    }
    for &d in even {
        for k in d as usize..=cap {
            series[k] += series[k - d as usize];
        }
    }
    series
}
