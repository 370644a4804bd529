//! Cohomology of free graded-commutative algebras: Betti numbers, cocycle
//! representatives, products and triple Massey products.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::cdga::{Element, FreeCdga, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{self, SparseMatrix, SparseVec, SpanSolver};
use crate::scalar::Scalar;

/// Betti numbers up to `cap`, with a basis of cocycle representatives in
/// each degree.
#[derive(Clone, Debug)]
pub struct BettiTable<S> {
    pub cap: u32,
    /// `betti[k] = dim H^k`.
    pub betti: Vec<usize>,
    /// Cocycles whose classes form a basis of `H^k`.
    pub representatives: Vec<Vec<Element<S>>>,
}

impl<S: Scalar> BettiTable<S> {
    pub fn betti(&self, k: u32) -> usize {
        self.betti.get(k as usize).copied().unwrap_or(0)
    }

    /// Degrees with nonzero cohomology.
    pub fn support(&self) -> Vec<u32> {
        (0..=self.cap).filter(|&k| self.betti(k) > 0).collect()
    }

    pub fn total_dimension(&self) -> usize {
        self.betti.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// Highest degree with nonzero cohomology.
    pub fn top_degree(&self) -> Option<u32> {
        self.support().last().copied()
    }
}

/// Whether every differential lands in the even-generated subalgebra and
/// even generators are closed.
pub fn is_pure<S: Scalar>(alg: &FreeCdga<S>) -> bool {
    alg.generators().iter().all(|g| {
        let d = alg.differential_of(g.id);
        if g.is_odd() {
            d.terms().all(|(m, _)| m.odd_length() == 0)
        } else {
            d.is_zero()
        }
    })
}

/// Cochains of one degree split by odd length (only for pure algebras;
/// otherwise a single block).
struct Block<S> {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Image of `d` from the previous degree, then the representatives.
    solver: SpanSolver<S>,
    image_count: usize,
    reps: Vec<SparseVec<S>>,
}

struct Cochains<S> {
    alg: FreeCdga<S>,
    pure: bool,
    odd_count: usize,
}

impl<S: Scalar> Cochains<S> {
    fn new(alg: &FreeCdga<S>, top: u32) -> Self {
        let pure = is_pure(alg);
        let odd_count = alg.generators().iter().filter(|g| g.is_odd()).count();
        Cochains { alg: alg.clone().with_cap(top + 1), pure, odd_count }
    }

    fn lengths(&self) -> Vec<usize> {
        if self.pure {
            (0..=self.odd_count).collect()
        } else {
            vec![0]
        }
    }

    fn basis(&self, k: i64, j: usize) -> Vec<Monomial> {
        if k < 0 {
            return Vec::new();
        }
        let r = if self.pure { self.alg.basis_with_odd_length(k as u32, j) } else { self.alg.basis(k as u32) };
        r.expect("cap raised to cover the request")
    }

    /// Odd length of the target of `d` from length `j`.
    fn down(&self, j: usize) -> Option<usize> {
        if self.pure {
            j.checked_sub(1)
        } else {
            Some(j)
        }
    }

    fn up(&self, j: usize) -> Option<usize> {
        if self.pure {
            (j < self.odd_count).then_some(j + 1)
        } else {
            Some(j)
        }
    }

    fn matrix(&self, src: &[Monomial], dst: &[Monomial]) -> SparseMatrix<S> {
        let index: HashMap<&Monomial, usize> = dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let cols: Vec<SparseVec<S>> = src
            .iter()
            .map(|m| {
                self.alg
                    .d_monomial(m)
                    .terms()
                    .map(|(n, c)| (*index.get(n).expect("d preserves the grading"), c.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix::from_columns(dst.len(), &cols).expect("indices in range")
    }

    fn block(&self, k: u32, j: usize) -> Block<S> {
        let k = k as i64;
        let basis = self.basis(k, j);
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut solver = SpanSolver::new(basis.len());
        let mut image_count = 0;
        if let Some(up) = self.up(j) {
            let prev = self.basis(k - 1, up);
            if !prev.is_empty() && !basis.is_empty() {
                for v in linalg::reduce(&self.matrix(&prev, &basis)).image {
                    solver.push(&v).expect("image vectors fit");
                    image_count += 1;
                }
            }
        }
        let image_solver = solver.clone();
        let mut reps = Vec::new();
        let next: Vec<Monomial> = match self.down(j) {
            Some(dj) => self.basis(k + 1, dj),
            None => Vec::new(),
        };
        let kernel: Vec<SparseVec<S>> = if basis.is_empty() {
            Vec::new()
        } else if next.is_empty() {
            (0..basis.len()).map(|i| BTreeMap::from([(i, S::one())])).collect()
        } else {
            linalg::reduce(&self.matrix(&basis, &next)).kernel
        };
        for v in kernel {
            if solver.push(&v).expect("kernel vectors fit") {
                reps.push(image_solver.reduce(&v).expect("fits").0);
            }
        }
        Block { basis, index, solver, image_count, reps }
    }
}

fn to_element<S: Scalar>(basis: &[Monomial], v: &SparseVec<S>) -> Element<S> {
    let mut e = Element::zero();
    for (&i, c) in v {
        e.add_term(basis[i].clone(), c.clone());
    }
    e
}

/// Betti numbers and representatives in degrees `0..=cap`. Degrees are
/// computed in parallel on the current rayon pool.
pub fn betti_table<S: Scalar>(alg: &FreeCdga<S>, cap: u32) -> Result<BettiTable<S>> {
    if cap > alg.cap() {
        return Err(Error::CappedDegree { requested: cap, cap: alg.cap() });
    }
    let cochains = Cochains::new(alg, cap);
    let lengths = cochains.lengths();
    let per_degree: Vec<Vec<Element<S>>> = (0..=cap)
        .into_par_iter()
        .map(|k| {
            let mut reps = Vec::new();
            for &j in &lengths {
                let b = cochains.block(k, j);
                reps.extend(b.reps.iter().map(|v| to_element(&b.basis, v)));
            }
            reps
        })
        .collect();
    Ok(BettiTable { cap, betti: per_degree.iter().map(|r| r.len()).collect(), representatives: per_degree })
}

/// Expresses cocycles in the representative basis of a [`BettiTable`].
pub struct ClassDecomposer<S> {
    cochains: Cochains<S>,
    blocks: BTreeMap<u32, Vec<(usize, Block<S>)>>,
}

impl<S: Scalar> ClassDecomposer<S> {
    /// Uses the same choices as [`betti_table`] with the same cap.
    pub fn new(alg: &FreeCdga<S>, cap: u32) -> Result<Self> {
        if cap > alg.cap() {
            return Err(Error::CappedDegree { requested: cap, cap: alg.cap() });
        }
        Ok(ClassDecomposer { cochains: Cochains::new(alg, cap), blocks: BTreeMap::new() })
    }

    fn ensure(&mut self, k: u32) {
        if !self.blocks.contains_key(&k) {
            let lengths = self.cochains.lengths();
            let blocks = lengths.into_iter().map(|j| (j, self.cochains.block(k, j))).collect();
            self.blocks.insert(k, blocks);
        }
    }

    /// Coordinates of the class of the cocycle `w` (homogeneous of degree
    /// `k`) in the representative basis of `H^k`.
    pub fn decompose(&mut self, k: u32, w: &Element<S>) -> Result<Vec<S>> {
        if !self.cochains.alg.d(w).is_zero() {
            return Err(Error::InvalidParameters("element is not a cocycle".into()));
        }
        if !w.is_zero() && w.degree() != Some(k) {
            return Err(Error::InvalidParameters(format!("element is not homogeneous of degree {k}")));
        }
        self.ensure(k);
        let pure = self.cochains.pure;
        let mut out = Vec::new();
        for (j, block) in &self.blocks[&k] {
            let part = w.filter(|m| m.degree() == k && (!pure || m.odd_length() == *j));
            let mut v: SparseVec<S> = BTreeMap::new();
            for (m, c) in part.terms() {
                let i = block.index.get(m).ok_or_else(|| {
                    Error::InvalidParameters(format!("element has a term outside degree {k}"))
                })?;
                v.insert(*i, c.clone());
            }
            let coeffs = block
                .solver
                .solve(&v)?
                .ok_or_else(|| Error::InternalInconsistency("cocycle outside kernel span".into()))?;
            out.extend(coeffs[block.image_count..].iter().cloned());
        }
        Ok(out)
    }

    /// Whether the cocycle `w` of degree `k` is a coboundary.
    pub fn is_exact(&mut self, k: u32, w: &Element<S>) -> Result<bool> {
        Ok(self.decompose(k, w)?.iter().all(|c| c.is_zero()))
    }
}

/// Product table of the cohomology ring on the representative basis.
#[derive(Clone, Debug)]
pub struct RingStructure<S> {
    /// `((deg_a, i), (deg_b, j)) -> coordinates of [a_i][b_j]` in
    /// `H^{deg_a + deg_b}`.
    pub products: BTreeMap<((u32, usize), (u32, usize)), Vec<S>>,
}

pub fn ring_structure<S: Scalar>(alg: &FreeCdga<S>, table: &BettiTable<S>) -> Result<RingStructure<S>> {
    let mut dec = ClassDecomposer::new(alg, table.cap)?;
    let mut products = BTreeMap::new();
    for p in 0..=table.cap {
        for q in p..=table.cap - p {
            for (i, a) in table.representatives[p as usize].iter().enumerate() {
                for (j, b) in table.representatives[q as usize].iter().enumerate() {
                    if p == q && j < i {
                        continue;
                    }
                    let coords = dec.decompose(p + q, &(a * b))?;
                    products.insert(((p, i), (q, j)), coords);
                }
            }
        }
    }
    Ok(RingStructure { products })
}

/// Outcome of a triple Massey product computation.
#[derive(Clone, Debug)]
pub struct MasseyResult<S> {
    /// `(degree, cocycle)` of the three inputs.
    pub classes: [(u32, Element<S>); 3],
    pub degree: u32,
    /// `ξ c - (-1)^{|a|} a η` with `dξ = ab` and `dη = bc`.
    pub representative: Element<S>,
    /// Dimension of `a·H + H·c` in cohomology.
    pub indeterminacy_dimension: usize,
    /// Whether the representative is nonzero modulo the indeterminacy.
    pub nontrivial: bool,
}

/// Solves `dξ = target` in degree `k - 1`, choosing the solution with free
/// coordinates zero.
fn primitive<S: Scalar>(alg: &FreeCdga<S>, k: u32, target: &Element<S>) -> Result<Option<Element<S>>> {
    if target.is_zero() {
        return Ok(Some(Element::zero()));
    }
    if k == 0 {
        return Ok(None);
    }
    let src = alg.basis(k - 1)?;
    let dst = alg.basis(k)?;
    let index: HashMap<&Monomial, usize> = dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut solver = SpanSolver::new(dst.len());
    for m in &src {
        let v: SparseVec<S> = alg.d_monomial(m).terms().map(|(n, c)| (index[n], c.clone())).collect();
        solver.push(&v)?;
    }
    let mut t: SparseVec<S> = BTreeMap::new();
    for (m, c) in target.terms() {
        let i = index
            .get(m)
            .ok_or_else(|| Error::InvalidParameters(format!("target is not homogeneous of degree {k}")))?;
        t.insert(*i, c.clone());
    }
    Ok(solver.solve(&t)?.map(|coeffs| {
        let mut e = Element::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            e.add_term(src[i].clone(), c);
        }
        e
    }))
}

/// The triple Massey product `<a, b, c>` of cocycles with `ab` and `bc`
/// exact. `table` must reach the degree of the product.
pub fn massey_triple<S: Scalar>(
    alg: &FreeCdga<S>,
    table: &BettiTable<S>,
    a: &Element<S>,
    b: &Element<S>,
    c: &Element<S>,
) -> Result<MasseyResult<S>> {
    let mut degs = [0u32; 3];
    for (i, x) in [a, b, c].into_iter().enumerate() {
        degs[i] = x.degree().ok_or_else(|| Error::InvalidParameters("classes must be nonzero and homogeneous".into()))?;
        if !alg.d(x).is_zero() {
            return Err(Error::InvalidParameters(format!("argument {} is not a cocycle", i + 1)));
        }
    }
    let [p, q, r] = degs;
    let n = p + q + r - 1;
    if n > table.cap {
        return Err(Error::CappedDegree { requested: n, cap: table.cap });
    }
    let ab = a * b;
    let bc = b * c;
    let xi = primitive(alg, p + q, &ab)?.ok_or_else(|| Error::ProductsNotExact("ab is not exact".into()))?;
    let eta = primitive(alg, q + r, &bc)?.ok_or_else(|| Error::ProductsNotExact("bc is not exact".into()))?;
    let sign = if p % 2 == 1 { S::one() } else { -S::one() };
    let representative = &(&xi * c) + &(a * &eta).scale(&sign);
    debug_assert!(alg.d(&representative).is_zero());

    let mut dec = ClassDecomposer::new(alg, table.cap)?;
    let dim = table.betti(n);
    let mut indet = SpanSolver::new(dim);
    let to_sparse = |v: Vec<S>| -> SparseVec<S> {
        v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    };
    for h in &table.representatives[(q + r - 1) as usize] {
        indet.push(&to_sparse(dec.decompose(n, &(a * h))?))?;
    }
    for h in &table.representatives[(p + q - 1) as usize] {
        indet.push(&to_sparse(dec.decompose(n, &(h * c))?))?;
    }
    let class = to_sparse(dec.decompose(n, &representative)?);
    let nontrivial = !indet.contains(&class)?;
    Ok(MasseyResult {
        classes: [(p, a.clone()), (q, b.clone()), (r, c.clone())],
        degree: n,
        representative,
        indeterminacy_dimension: indet.rank(),
        nontrivial,
    })
}

/// Searches triples of representatives in increasing degree order for a
/// nontrivial Massey product, up to `max_degree` for the product.
pub fn find_nontrivial_massey<S: Scalar>(
    alg: &FreeCdga<S>,
    table: &BettiTable<S>,
    max_degree: u32,
) -> Result<Option<MasseyResult<S>>> {
    let mut dec = ClassDecomposer::new(alg, table.cap)?;
    let reps: Vec<(u32, &Element<S>)> = (1..=table.cap)
        .flat_map(|k| table.representatives[k as usize].iter().map(move |e| (k, e)))
        .collect();
    for x in &reps {
        for y in &reps {
            if x.0 + y.0 > table.cap || !dec.is_exact(x.0 + y.0, &(x.1 * y.1))? {
                continue;
            }
            for z in &reps {
                let n = x.0 + y.0 + z.0 - 1;
                if n > max_degree.min(table.cap) || y.0 + z.0 > table.cap {
                    continue;
                }
                if !dec.is_exact(y.0 + z.0, &(y.1 * z.1))? {
                    continue;
                }
                let m = massey_triple(alg, table, x.1, y.1, z.1)?;
                if m.nontrivial {
                    return Ok(Some(m));
                }
            }
        }
    }
    Ok(None)
}
