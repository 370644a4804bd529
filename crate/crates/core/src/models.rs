//! Pure Sullivan models of homogeneous spaces and biquotients, and their
//! reduction to minimal models.

use std::fmt::Write as _;

use crate::cdga::{Element, FreeCdga, Generator};
use crate::error::{Error, Result};
use crate::lie::{ClassifyingRing, GroupSpec, TorusEmbedding};
use crate::scalar::Scalar;

/// Degrees beyond the formal dimension that bases may be enumerated to.
pub const CAP_MARGIN: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelMetadata {
    /// Canonical descriptor of the space, when the model came from one.
    pub descriptor: String,
    /// `dim G - dim H`, when known.
    pub manifold_dimension: Option<i64>,
}

/// A pure model `(ΛQ ⊗ ΛP, d)`: even generators with `d = 0` and odd
/// generators whose differentials are polynomials in the even ones.
///
/// Even generators have ids `0..even`, odd generators the ids after them.
#[derive(Clone, Debug, PartialEq)]
pub struct PureModel<S> {
    pub algebra: FreeCdga<S>,
    pub even_count: usize,
    pub metadata: ModelMetadata,
}

/// A pure model without linear terms in its differential, together with the
/// `(odd, even)` generator pairs removed to get there.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalPureModel<S> {
    pub model: PureModel<S>,
    pub eliminated: Vec<(String, String)>,
}

impl<S: Scalar> PureModel<S> {
    /// Builds a pure model. `differentials[i]` is `d` of the i-th odd
    /// generator and may only involve even generators (ids `0..even.len()`).
    pub fn new(
        even: Vec<(String, u32)>,
        odd: Vec<(String, u32)>,
        differentials: Vec<Element<S>>,
        metadata: ModelMetadata,
    ) -> Result<Self> {
        if odd.len() != differentials.len() {
            return Err(Error::MismatchedGenerators(format!(
                "{} odd generators but {} differentials",
                odd.len(),
                differentials.len()
            )));
        }
        for (name, deg) in &even {
            if deg % 2 == 1 || *deg == 0 {
                return Err(Error::NotPure(format!("{name} has degree {deg}, expected positive even")));
            }
        }
        for (name, deg) in &odd {
            if deg % 2 == 0 {
                return Err(Error::NotPure(format!("{name} has even degree {deg}")));
            }
        }
        let m = even.len() as u32;
        for ((name, _), dx) in odd.iter().zip(&differentials) {
            if dx.terms().any(|(mono, _)| mono.factors().iter().any(|f| f.gen >= m)) {
                return Err(Error::NotPure(format!("d{name} involves an odd generator")));
            }
        }
        let fd = formal_dimension_of(&even, &odd);
        let cap = fd.max(0) as u32 + CAP_MARGIN;
        let mut generators = Vec::new();
        let mut all_d = Vec::new();
        for (name, deg) in even {
            generators.push(Generator::new(generators.len() as u32, name, deg));
            all_d.push(Element::zero());
        }
        let even_count = generators.len();
        for ((name, deg), dx) in odd.into_iter().zip(differentials) {
            generators.push(Generator::new(generators.len() as u32, name, deg));
            all_d.push(dx);
        }
        let algebra = FreeCdga::new(generators, all_d, cap)?;
        Ok(PureModel { algebra, even_count, metadata })
    }

    pub fn even_generators(&self) -> &[Generator] {
        &self.algebra.generators()[..self.even_count]
    }

    pub fn odd_generators(&self) -> &[Generator] {
        &self.algebra.generators()[self.even_count..]
    }

    /// `Σ deg(odd) - Σ (deg(even) - 1)`, the top degree of the cohomology
    /// when it is finite dimensional.
    pub fn formal_dimension(&self) -> i64 {
        let even: Vec<(String, u32)> = self.even_generators().iter().map(|g| (g.name.clone(), g.degree)).collect();
        let odd: Vec<(String, u32)> = self.odd_generators().iter().map(|g| (g.name.clone(), g.degree)).collect();
        formal_dimension_of(&even, &odd)
    }

    /// `#odd - #even`, which is zero exactly when the Euler characteristic
    /// is positive.
    pub fn rank_deficiency(&self) -> i64 {
        self.odd_generators().len() as i64 - self.even_count as i64
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.algebra = self.algebra.with_cap(cap);
        self
    }

    /// Whether no differential has a linear term.
    pub fn is_minimal(&self) -> bool {
        self.odd_generators().iter().all(|g| linear_terms(self.algebra.differential_of(g.id)).is_empty())
    }

    /// Canonical text form: generators with degrees, then differentials.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        if !self.metadata.descriptor.is_empty() {
            let _ = writeln!(out, "space {}", self.metadata.descriptor);
        }
        if let Some(d) = self.metadata.manifold_dimension {
            let _ = writeln!(out, "dimension {d}");
        }
        let _ = writeln!(out, "formal-dimension {}", self.formal_dimension());
        for g in self.even_generators() {
            let _ = writeln!(out, "even {} {}", g.name, g.degree);
        }
        for g in self.odd_generators() {
            let _ = writeln!(out, "odd {} {}", g.name, g.degree);
        }
        for g in self.odd_generators() {
            let _ = writeln!(out, "d {} = {}", g.name, self.algebra.render(self.algebra.differential_of(g.id)));
        }
        out
    }
}

fn formal_dimension_of(even: &[(String, u32)], odd: &[(String, u32)]) -> i64 {
    odd.iter().map(|g| g.1 as i64).sum::<i64>() - even.iter().map(|g| g.1 as i64 - 1).sum::<i64>()
}

/// `(generator, coefficient)` of the linear terms of `e`.
fn linear_terms<S: Scalar>(e: &Element<S>) -> Vec<(u32, S)> {
    e.terms()
        .filter(|(m, _)| m.factors().len() == 1 && m.factors()[0].exp == 1)
        .map(|(m, c)| (m.factors()[0].gen, c.clone()))
        .collect()
}

/// Name of the odd generator paired with a classifying generator.
fn odd_name(even: &str) -> String {
    if let Some(rest) = even.strip_prefix("eu") {
        format!("xe{rest}")
    } else if let Some(rest) = even.strip_prefix('t') {
        format!("y{rest}")
    } else {
        format!("x{}", &even[1..])
    }
}

/// Model of `G/H` for the given torus embedding of `H` into `G`: even
/// generators from `H^*(BH)`, odd generators for the generators of
/// `H^*(BG)`, `d` the restriction.
pub fn homogeneous_model<S: Scalar>(g: &GroupSpec, h: &GroupSpec, embedding: &TorusEmbedding) -> Result<PureModel<S>> {
    if &embedding.source != h || &embedding.target != g {
        return Err(Error::EmbeddingMismatch(format!(
            "embedding {} -> {} does not match {h} -> {g}",
            embedding.source, embedding.target
        )));
    }
    let rg = ClassifyingRing::<S>::new(g)?;
    let rh = ClassifyingRing::<S>::new(h)?;
    let images = embedding.pullback(&rg, &rh)?;
    let metadata = ModelMetadata {
        descriptor: format!("{g}/{}", parenthesize(h)),
        manifold_dimension: Some(g.dimension() as i64 - h.dimension() as i64),
    };
    assemble(&rg, &rh, images, metadata)
}

/// Model of the biquotient `G//K`, where `K` acts through `left` and
/// `right`: `d x_i = f_i^left - f_i^right`.
pub fn biquotient_model<S: Scalar>(
    g: &GroupSpec,
    k: &GroupSpec,
    left: &TorusEmbedding,
    right: &TorusEmbedding,
) -> Result<PureModel<S>> {
    for e in [left, right] {
        if &e.source != k || &e.target != g {
            return Err(Error::EmbeddingMismatch(format!(
                "embedding {} -> {} does not match {k} -> {g}",
                e.source, e.target
            )));
        }
    }
    let rg = ClassifyingRing::<S>::new(g)?;
    let rk = ClassifyingRing::<S>::new(k)?;
    let l = left.pullback(&rg, &rk)?;
    let r = right.pullback(&rg, &rk)?;
    let images = l.iter().zip(&r).map(|(a, b)| a - b).collect();
    let metadata = ModelMetadata {
        descriptor: format!("{g}//{}", parenthesize(k)),
        manifold_dimension: Some(g.dimension() as i64 - k.dimension() as i64),
    };
    assemble(&rg, &rk, images, metadata)
}

pub(crate) fn parenthesize(h: &GroupSpec) -> String {
    if matches!(h, GroupSpec::Product(_)) {
        format!("({h})")
    } else {
        h.to_string()
    }
}

fn assemble<S: Scalar>(
    rg: &ClassifyingRing<S>,
    rh: &ClassifyingRing<S>,
    images: Vec<Element<S>>,
    metadata: ModelMetadata,
) -> Result<PureModel<S>> {
    let even = rh.generators.iter().map(|g| (g.name.clone(), g.degree)).collect();
    let odd = rg.generators.iter().map(|g| (odd_name(&g.name), g.degree - 1)).collect();
    PureModel::new(even, odd, images, metadata)
}

/// Removes contractible pairs `(x, c)` where `dx` has a linear term in `c`,
/// until no differential has a linear term. Odd generators are taken in
/// order of degree, then id; the even partner is the lowest-id generator
/// occurring linearly. Finally each odd generator is rescaled so that its
/// differential has leading coefficient one.
pub fn minimize_pure<S: Scalar>(model: &PureModel<S>) -> Result<MinimalPureModel<S>> {
    let mut even: Vec<(String, u32)> = model.even_generators().iter().map(|g| (g.name.clone(), g.degree)).collect();
    let mut odd: Vec<(String, u32)> = model.odd_generators().iter().map(|g| (g.name.clone(), g.degree)).collect();
    let mut diffs: Vec<Element<S>> =
        model.odd_generators().iter().map(|g| model.algebra.differential_of(g.id).clone()).collect();
    let mut eliminated = Vec::new();
    loop {
        let mut order: Vec<usize> = (0..odd.len()).collect();
        order.sort_by_key(|&i| (odd[i].1, i));
        let found = order.into_iter().find_map(|i| {
            let lin = linear_terms(&diffs[i]);
            lin.into_iter().min_by_key(|(g, _)| *g).map(|(g, c)| (i, g, c))
        });
        let Some((xi, c, lambda)) = found else { break };
        let dx = diffs.remove(xi);
        let (xname, _) = odd.remove(xi);
        let cdeg = even[c as usize].1;
        // c = -(dx - λ c) / λ modulo the contractible ideal
        let cgen = Element::generator(c, cdeg);
        let replacement = &cgen - &dx.scale(&lambda.inv());
        let (cname, _) = even.remove(c as usize);
        let reindex = |g: u32| -> Option<Element<S>> {
            if g == c {
                None
            } else if g > c {
                Some(Element::generator(g - 1, even_degree(&even, g - 1)))
            } else {
                Some(Element::generator(g, even_degree(&even, g)))
            }
        };
        let replacement = replacement.substitute(&|g| if g == c { Some(Element::zero()) } else { reindex(g) });
        for d in diffs.iter_mut() {
            *d = d.substitute(&|g| if g == c { Some(replacement.clone()) } else { reindex(g) });
        }
        eliminated.push((xname, cname));
    }
    for d in diffs.iter_mut() {
        if let Some((_, lc)) = d.leading_term() {
            let inv = lc.inv();
            *d = d.scale(&inv);
        }
    }
    let model = PureModel::new(even, odd, diffs, model.metadata.clone())?;
    Ok(MinimalPureModel { model, eliminated })
}

fn even_degree(even: &[(String, u32)], id: u32) -> u32 {
    even[id as usize].1
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn model_of_su3_mod_su2() {
        let g = GroupSpec::SU(3);
        let h = GroupSpec::SU(2);
        let e = TorusEmbedding::blockwise(&h, &g).unwrap();
        let m: PureModel<Rational64> = homogeneous_model(&g, &h, &e).unwrap();
        let min = minimize_pure(&m).unwrap();
        assert_eq!(min.model.even_count, 0);
        assert_eq!(min.model.odd_generators().len(), 1);
        assert_eq!(min.model.odd_generators()[0].degree, 5);
    }
}
