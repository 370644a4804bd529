//! Formality of pure models, and the reductions that shrink a space before
//! its model is built.
//!
//! A pure minimal model `(Λ(Q ⊕ P), d)` with `Q` even and `P` odd is formal
//! exactly when, after a change of odd generators, it splits as an
//! `F_0`-model tensored with an exterior algebra on closed generators. The
//! closed generators are counted as `|P| - μ(I)`, where `I ⊂ ΛQ` is the ideal
//! generated by the differentials and `μ` its minimal number of generators.

use std::collections::HashMap;

use crate::atlas::{self, CriterionResult, CriterionVerdict};
use crate::cdga::{Element, FreeCdga, Generator, Monomial};
use crate::cohomology::{betti_table, find_nontrivial_massey, MasseyResult};
use crate::descriptor::{ResolvedSpace, SpaceDescriptor};
use crate::error::{Error, Result};
use crate::lie::{GroupSpec, Inclusion, TorusEmbedding};
use crate::linalg::{self, SpanSolver, SparseMatrix, SparseVec};
use crate::modular::{self, Modular};
use crate::models::{biquotient_model, homogeneous_model, minimize_pure, MinimalPureModel, PureModel};
use crate::scalar::Scalar;

/// An odd generator that becomes closed after subtracting a combination of
/// lower generators.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedGenerator<S> {
    pub name: String,
    pub degree: u32,
    /// The new closed generator `x - Σ p_j x_j`.
    pub representative: Element<S>,
    pub rendered: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplittingWitness<S> {
    pub closed: Vec<ClosedGenerator<S>>,
    /// Names of the odd generators whose differentials generate the ideal
    /// minimally.
    pub kept: Vec<String>,
    pub f0_even_count: usize,
    pub f0_odd_count: usize,
    pub f0_formal_dimension: i64,
    pub window: (i64, i64),
    pub window_check_passed: bool,
}

impl<S> SplittingWitness<S> {
    /// Degrees of the odd spheres split off.
    pub fn sphere_degrees(&self) -> Vec<u32> {
        self.closed.iter().map(|c| c.degree).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    PureCriterion,
    MasseyWitness,
    ReductionPureCriterion,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::PureCriterion => "pure-criterion",
            Method::MasseyWitness => "massey-witness",
            Method::ReductionPureCriterion => "reduction+pure-criterion",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FormalityVerdict<S> {
    pub formal: bool,
    pub method: Method,
    pub splitting: SplittingWitness<S>,
    /// A nontrivial triple product, when one was searched for and found.
    pub massey: Option<MasseyResult<S>>,
    pub criteria: Vec<CriterionResult>,
    /// Human-readable log of the reductions applied before the model was
    /// built.
    pub reductions: Vec<String>,
    /// The space the model was finally built for.
    pub decided_space: String,
}

/// Polynomial ring on the even generators of a pure model.
struct EvenRing<S> {
    algebra: FreeCdga<S>,
}

impl<S: Scalar> EvenRing<S> {
    fn new(even: &[Generator], top: u32) -> Result<Self> {
        let d = vec![Element::zero(); even.len()];
        Ok(EvenRing { algebra: FreeCdga::new(even.to_vec(), d, top)? })
    }

    /// Whether the ideal generated by `gens` fills the whole degree-`k`
    /// part. Full rank modulo a prime settles it; otherwise the rank is
    /// recomputed over the field.
    fn ideal_fills(&self, gens: &[&Element<S>], k: u32) -> Result<bool> {
        let (index, vectors, _) = self.ideal_vectors(gens, k)?;
        let dim = index.len();
        if modular::rank_mod_prime(dim, &vectors) == Some(dim) {
            return Ok(true);
        }
        let m = SparseMatrix::from_columns(dim, &vectors)?;
        Ok(linalg::rank(&m) == dim)
    }

    /// Degree-`k` part of the ideal generated by `gens`: the basis index, the
    /// products `m · gens[j]`, and `(m, j)` for each product.
    #[allow(clippy::type_complexity)]
    fn ideal_vectors(
        &self,
        gens: &[&Element<S>],
        k: u32,
    ) -> Result<(HashMap<Monomial, usize>, Vec<SparseVec<S>>, Vec<(Monomial, usize)>)> {
        let basis = self.algebra.basis(k)?;
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut vectors = Vec::new();
        let mut inputs = Vec::new();
        for (j, f) in gens.iter().enumerate() {
            let Some(df) = f.degree() else { continue };
            if df > k {
                continue;
            }
            for m in self.algebra.basis(k - df)? {
                vectors.push(to_sparse(&index, &f.mul_monomial(&S::one(), &m))?);
                inputs.push((m, j));
            }
        }
        Ok((index, vectors, inputs))
    }
}

fn to_sparse<S: Scalar>(index: &HashMap<Monomial, usize>, e: &Element<S>) -> Result<SparseVec<S>> {
    e.terms()
        .map(|(m, c)| {
            index
                .get(m)
                .map(|&i| (i, c.clone()))
                .ok_or_else(|| Error::InternalInconsistency("term outside the expected degree".into()))
        })
        .collect()
}

/// Decides formality of a pure minimal model.
///
/// Odd generators are processed by increasing degree; a generator whose
/// differential lies in the ideal of the differentials kept so far is
/// replaced by a closed one. The model is formal iff as many differentials
/// are kept as there are even generators and the quotient by them vanishes
/// on the window `(B, B + D]`. A model failing the window check is not
/// elliptic, which is reported as an error.
pub fn pure_formality<S: Scalar>(m: &MinimalPureModel<S>) -> Result<SplittingWitness<S>> {
    let model = &m.model;
    if !model.is_minimal() {
        return Err(Error::NotMinimal(format!("{} has linear differentials", model.metadata.descriptor)));
    }
    let even = model.even_generators();
    let odd = model.odd_generators();
    let alg = &model.algebra;
    let n = even.len();
    let diffs: Vec<&Element<S>> = odd.iter().map(|g| alg.differential_of(g.id)).collect();

    let sum_even: i64 = even.iter().map(|g| g.degree as i64).sum();
    let max_even = even.iter().map(|g| g.degree).max().unwrap_or(0);
    let max_odd = odd.iter().map(|g| g.degree).max().unwrap_or(0);
    let mut order: Vec<usize> = (0..odd.len()).collect();
    order.sort_by_key(|&i| (odd[i].degree, i));

    let bound = max_odd + 1;
    let ring = EvenRing::new(even, bound.max(1))?;
    let mut kept: Vec<usize> = Vec::new();
    let mut closed = Vec::new();
    for &i in &order {
        let f = diffs[i];
        let g = &odd[i];
        let kept_diffs: Vec<&Element<S>> = kept.iter().map(|&j| diffs[j]).collect();
        let solution = if f.is_zero() {
            Some(Vec::new())
        } else {
            let (index, vectors, inputs) = ring.ideal_vectors(&kept_diffs, g.degree + 1)?;
            let v = to_sparse(&index, f)?;
            let coeffs = match modular::solve_multimodular(index.len(), &vectors, &v) {
                Modular::Solved(c) => Some(c),
                Modular::Outside => None,
                Modular::Undecided => {
                    let mut solver = SpanSolver::new(index.len());
                    for u in &vectors {
                        solver.push(u)?;
                    }
                    solver.solve(&v)?
                }
            };
            coeffs.map(|coeffs| {
                coeffs
                    .into_iter()
                    .zip(inputs)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, (mono, j))| (c, mono, kept[j]))
                    .collect::<Vec<_>>()
            })
        };
        match solution {
            Some(terms) => {
                let mut rep = g.element::<S>();
                for (c, mono, j) in terms {
                    let xj = odd[j].element::<S>();
                    rep -= &xj.mul_monomial(&c, &mono);
                }
                debug_assert!(alg.d(&rep).is_zero());
                closed.push(ClosedGenerator {
                    name: g.name.clone(),
                    degree: g.degree,
                    rendered: alg.render(&rep),
                    representative: rep,
                });
            }
            None => kept.push(i),
        }
    }

    let sum_kept: i64 = kept.iter().map(|&i| odd[i].degree as i64 + 1).sum();
    let b = sum_kept - sum_even;
    let window = (b, b + max_even as i64);
    let window_check_passed = if kept.len() < n {
        false
    } else {
        let top = window.1.max(0) as u32;
        let ring = EvenRing::new(even, top.max(1))?;
        let kept_diffs: Vec<&Element<S>> = kept.iter().map(|&j| diffs[j]).collect();
        let mut ok = true;
        for k in (window.0 + 1).max(0)..=window.1 {
            if !ring.ideal_fills(&kept_diffs, k as u32)? {
                ok = false;
                break;
            }
        }
        ok
    };
    if !window_check_passed {
        return Err(Error::InvalidDifferential(format!(
            "{} is not elliptic: the quotient by the differentials survives in degrees {}..={}",
            if model.metadata.descriptor.is_empty() { "model" } else { &model.metadata.descriptor },
            window.0 + 1,
            window.1
        )));
    }
    let f0_odd_count = kept.len();
    let f0_formal_dimension =
        kept.iter().map(|&i| odd[i].degree as i64).sum::<i64>() - even.iter().map(|g| g.degree as i64 - 1).sum::<i64>();
    Ok(SplittingWitness {
        closed,
        kept: kept.iter().map(|&i| odd[i].name.clone()).collect(),
        f0_even_count: n,
        f0_odd_count,
        f0_formal_dimension,
        window,
        window_check_passed,
    })
}

/// Whether a splitting witness certifies formality.
pub fn is_formal<S>(w: &SplittingWitness<S>) -> bool {
    w.window_check_passed && w.f0_even_count == w.f0_odd_count
}

/// Replaces `H` by its maximal torus, with the composed embedding.
pub fn reduce_to_torus(g: &GroupSpec, h: &GroupSpec, e: &TorusEmbedding) -> Result<(GroupSpec, GroupSpec, TorusEmbedding)> {
    if &e.source != h || &e.target != g {
        return Err(Error::EmbeddingMismatch(format!("embedding does not map {h} into {g}")));
    }
    let t = TorusEmbedding::maximal_torus(h)?;
    let composed = t.then(e)?;
    Ok((g.clone(), t.source.clone(), composed))
}

/// Restricts `G/K` to `G'/K` along an inclusion `G' ⊂ G`, provided the torus
/// map of `K` factors through it with integer coefficients.
pub fn reduce_via_inclusion(
    g: &GroupSpec,
    k: &GroupSpec,
    e: &TorusEmbedding,
    rule: Inclusion,
) -> Result<(GroupSpec, TorusEmbedding)> {
    rule.validate()?;
    if &rule.supergroup() != g {
        return Err(Error::RuleNotApplicable(format!("{} does not end in {g}", rule.describe())));
    }
    if &e.source != k || &e.target != g {
        return Err(Error::EmbeddingMismatch(format!("embedding does not map {k} into {g}")));
    }
    let inc = rule.embedding()?;
    let rows = inc.matrix.len();
    let mut solver: SpanSolver<crate::Rational> = SpanSolver::new(rows);
    let cols = inc.source.coordinates();
    for j in 0..cols {
        let v: SparseVec<crate::Rational> =
            (0..rows).filter(|&i| inc.matrix[i][j] != 0).map(|i| (i, crate::Rational::from_i64(inc.matrix[i][j]))).collect();
        solver.push(&v)?;
    }
    let mut factor = vec![vec![0i64; k.coordinates()]; cols];
    for c in 0..k.coordinates() {
        let v: SparseVec<crate::Rational> =
            (0..rows).filter(|&i| e.matrix[i][c] != 0).map(|i| (i, crate::Rational::from_i64(e.matrix[i][c]))).collect();
        let sol = solver
            .solve(&v)?
            .ok_or_else(|| Error::RuleNotApplicable(format!("{k} does not lie in {}", rule.subgroup())))?;
        for (r, x) in sol.into_iter().enumerate() {
            if !x.is_integer() {
                return Err(Error::RuleNotApplicable(format!("{k} meets {} only up to a cover", rule.subgroup())));
            }
            factor[r][c] = num_traits::ToPrimitive::to_i64(&x.to_integer())
                .ok_or_else(|| Error::RuleNotApplicable("coefficient overflow".into()))?;
        }
    }
    let restricted = TorusEmbedding::new(k.clone(), rule.subgroup(), factor)
        .map_err(|err| Error::RuleNotApplicable(err.to_string()))?;
    Ok((rule.subgroup(), restricted))
}

/// Lifts `G/K` to `G̃/K` along an inclusion `G ⊂ G̃`.
pub fn extend_via_inclusion(e: &TorusEmbedding, rule: Inclusion) -> Result<(GroupSpec, TorusEmbedding)> {
    rule.validate()?;
    if rule.subgroup() != e.target {
        return Err(Error::RuleNotApplicable(format!("{} does not start at {}", rule.describe(), e.target)));
    }
    let lifted = e.then(&rule.embedding()?)?;
    Ok((rule.supergroup(), lifted))
}

/// Inclusions into `g` from strictly smaller groups, smallest first.
fn shrink_candidates(g: &GroupSpec) -> Vec<Inclusion> {
    let mut out = Vec::new();
    match *g {
        GroupSpec::SU(big) => {
            out.extend((2..big).map(|n| Inclusion::Unitary { n, big }));
            if big % 2 == 0 {
                out.push(Inclusion::SymplecticInUnitary { n: big / 2 });
            }
            if big % 2 == 1 {
                out.push(Inclusion::OrthogonalInUnitary { n: big });
            }
        }
        GroupSpec::U(big) => out.extend((1..big).map(|n| Inclusion::FullUnitary { n, big })),
        GroupSpec::Sp(big) => out.extend((1..big).map(|n| Inclusion::Symplectic { n, big })),
        GroupSpec::SO(big) => out.extend((3..big).step_by(2).map(|n| Inclusion::Orthogonal { n, big })),
        _ => {}
    }
    out.sort_by_key(|r| (r.subgroup().dimension(), r.subgroup().to_string()));
    out
}

/// Repeatedly restricts the numerator to the smallest group from the
/// inclusion catalog that still contains the denominator.
pub fn shrink_numerator(
    g: &GroupSpec,
    h: &GroupSpec,
    e: &TorusEmbedding,
) -> Result<(GroupSpec, TorusEmbedding, Vec<String>)> {
    let (mut g, mut e) = (g.clone(), e.clone());
    let mut log = Vec::new();
    loop {
        let step = shrink_candidates(&g)
            .into_iter()
            .find_map(|rule| reduce_via_inclusion(&g, h, &e, rule).ok().map(|r| (rule, r)));
        match step {
            Some((rule, (g2, e2))) => {
                log.push(format!("restricted along {}", rule.describe()));
                g = g2;
                e = e2;
            }
            None => return Ok((g, e, log)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// Search for a nontrivial triple Massey product on non-formal models.
    pub massey_confirm: bool,
    /// Restrict the numerator along the inclusion catalog first.
    pub shrink: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { massey_confirm: false, shrink: true }
    }
}

/// Minimal model of the space actually decided, and the reduction log.
pub fn prepared_model<S: Scalar>(
    desc: &SpaceDescriptor,
    shrink: bool,
) -> Result<(MinimalPureModel<S>, Vec<String>, String)> {
    let (model, log, label): (PureModel<S>, Vec<String>, String) = match desc.resolve()? {
        ResolvedSpace::Homogeneous { g, h, embedding } => {
            let (g2, e2, log) = if shrink { shrink_numerator(&g, &h, &embedding)? } else { (g.clone(), embedding, Vec::new()) };
            let label = format!("{g2}/{}", crate::models::parenthesize(&h));
            (homogeneous_model(&g2, &h, &e2)?, log, label)
        }
        ResolvedSpace::Biquotient { g, k, left, right } => {
            (biquotient_model(&g, &k, &left, &right)?, Vec::new(), desc.to_string())
        }
    };
    Ok((minimize_pure(&model)?, log, label))
}

/// Builds, minimizes and decides the model of a described space, checking
/// the verdict against every applicable closed-form criterion and, on
/// request, against a Massey product search.
pub fn decide<S: Scalar>(desc: &SpaceDescriptor, options: DecideOptions) -> Result<FormalityVerdict<S>> {
    let (min, reductions, decided_space) = prepared_model::<S>(desc, options.shrink)?;
    let splitting = pure_formality(&min)?;
    let formal = is_formal(&splitting);
    let criteria = atlas::criteria_for(desc);
    for c in &criteria {
        if c.verdict == CriterionVerdict::NonFormal && formal {
            return Err(Error::InternalInconsistency(format!(
                "{} is formal by its model but non-formal by {}",
                desc, c.family
            )));
        }
    }
    let mut massey = None;
    if options.massey_confirm {
        let alg = &min.model.algebra;
        let fd = min.model.formal_dimension().max(0) as u32;
        let table = betti_table(alg, fd)?;
        massey = find_nontrivial_massey(alg, &table, fd)?;
        if massey.is_some() && formal {
            return Err(Error::InternalInconsistency(format!(
                "{desc} is formal by its model but carries a nontrivial Massey product"
            )));
        }
    }
    let method = if massey.is_some() {
        Method::MasseyWitness
    } else if reductions.is_empty() {
        Method::PureCriterion
    } else {
        Method::ReductionPureCriterion
    };
    Ok(FormalityVerdict { formal, method, splitting, massey, criteria, reductions, decided_space })
}

/// Verdict for a single pure model, without reductions or cross-checks.
pub fn decide_model<S: Scalar>(model: &PureModel<S>) -> Result<bool> {
    let min = minimize_pure(model)?;
    Ok(is_formal(&pure_formality(&min)?))
}
