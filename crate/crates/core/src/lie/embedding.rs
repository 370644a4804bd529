use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::classifying::ClassifyingRing;
use super::group::GroupSpec;
use crate::cdga::Element;
use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec};
use crate::scalar::Scalar;

/// Homomorphism of maximal tori, as an integer matrix with one row per
/// target coordinate and one column per source coordinate: the target
/// coordinate `u_i` pulls back to `Σ_j matrix[i][j] s_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusEmbedding {
    pub source: GroupSpec,
    pub target: GroupSpec,
    pub matrix: Vec<Vec<i64>>,
}

/// Named embeddings that are not blockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpecialEmbedding {
    /// `Sp(n) ⊂ SU(2n)`.
    SymplecticInUnitary(u32),
    /// `SO(n) ⊂ SU(n)` for odd `n`.
    OrthogonalInUnitary(u32),
    /// `Ũ(n) ⊂ SO(2n)`.
    TwistedUnitaryInOrthogonal(u32),
    /// `S^1 × SU(p1) × SU(p2) → S(U(p1) × U(p2))`, the circle acting with
    /// weights `p2` and `-p1` on the two blocks.
    CircleSplitting(u32, u32),
}

impl TorusEmbedding {
    /// Checks sizes and that every relation of the target pulls back into
    /// the span of the source relations.
    pub fn new(source: GroupSpec, target: GroupSpec, matrix: Vec<Vec<i64>>) -> Result<Self> {
        source.validate()?;
        target.validate()?;
        let (m, n) = (target.coordinates(), source.coordinates());
        if matrix.len() != m || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::EmbeddingMismatch(format!(
                "expected a {m}x{n} matrix for {source} -> {target}"
            )));
        }
        let e = TorusEmbedding { source, target, matrix };
        e.check_relations()?;
        Ok(e)
    }

    fn check_relations(&self) -> Result<()> {
        let n = self.source.coordinates();
        let span: Vec<SparseVec<BigRational>> = self
            .source
            .relations()
            .iter()
            .map(|r| r.iter().map(|&i| (i, BigRational::from_i64(1))).collect())
            .collect();
        for rel in self.target.relations() {
            let mut pulled: SparseVec<BigRational> = BTreeMap::new();
            for &i in &rel {
                for (j, &a) in self.matrix[i].iter().enumerate() {
                    if a != 0 {
                        linalg::axpy(&mut pulled, &BigRational::from_i64(a), &BTreeMap::from([(j, BigRational::from_i64(1))]));
                    }
                }
            }
            if !linalg::membership(n, &span, &pulled)? {
                return Err(Error::EmbeddingMismatch(format!(
                    "{} -> {}: a relation of the target does not vanish on the source torus",
                    self.source, self.target
                )));
            }
        }
        Ok(())
    }

    pub fn identity(group: &GroupSpec) -> Result<Self> {
        let n = group.coordinates();
        let matrix = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        Self::new(group.clone(), group.clone(), matrix)
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &TorusEmbedding) -> Result<Self> {
        if self.target != other.source {
            return Err(Error::EmbeddingMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        let n = self.source.coordinates();
        let matrix = other
            .matrix
            .iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().enumerate().map(|(k, &a)| a * self.matrix[k][j]).sum())
                    .collect()
            })
            .collect();
        Self::new(self.source.clone(), other.target.clone(), matrix)
    }

    /// Target coordinates as linear forms in the source coordinates.
    pub fn forms<S: Scalar>(&self) -> Vec<Element<S>> {
        self.matrix
            .iter()
            .map(|row| {
                let mut e = Element::zero();
                for (j, &a) in row.iter().enumerate() {
                    if a != 0 {
                        e += Element::generator(j as u32, 2).scale(&S::from_i64(a));
                    }
                }
                e
            })
            .collect()
    }

    /// Images of the target's classifying generators, written in the
    /// source's classifying generators.
    pub fn pullback<S: Scalar>(
        &self,
        target: &ClassifyingRing<S>,
        source: &ClassifyingRing<S>,
    ) -> Result<Vec<Element<S>>> {
        if target.group != self.target || source.group != self.source {
            return Err(Error::EmbeddingMismatch("classifying rings do not match the embedding".into()));
        }
        let forms = self.forms::<S>();
        target.evaluate_on(&forms).iter().map(|p| source.express(p)).collect()
    }

    /// Order of the kernel on maximal tori when the ranks agree and the map
    /// is injective on Lie algebras; `None` otherwise.
    pub fn kernel_order(&self) -> Option<u64> {
        let s = lattice_basis(&self.source);
        let t = lattice_projection(&self.target);
        let rows = t.len();
        let cols = s.first().map_or(0, |c| c.len());
        if rows != cols {
            return None;
        }
        let mut m = vec![vec![BigRational::zero(); cols]; rows];
        for (r, proj) in t.iter().enumerate() {
            for c in 0..cols {
                let mut acc: i64 = 0;
                for &(i, w) in proj {
                    for (k, &a) in self.matrix[i].iter().enumerate() {
                        acc += w * a * s[k][c];
                    }
                }
                m[r][c] = BigRational::from_integer(BigInt::from(acc));
            }
        }
        let det = determinant(m);
        if det.is_zero() {
            None
        } else {
            det.abs().to_integer().to_u64()
        }
    }

    /// Standard blockwise placement of the factors of `source` into the
    /// factors of `target`, filling each target factor from the top left.
    pub fn blockwise(source: &GroupSpec, target: &GroupSpec) -> Result<Self> {
        source.validate()?;
        target.validate()?;
        let mut matrix = vec![vec![0i64; source.coordinates()]; target.coordinates()];
        let targets = target.atoms();
        let mut cursors: Vec<Slot> = Vec::new();
        let mut offset = 0;
        for t in &targets {
            cursors.push(Slot::for_target(t, offset)?);
            offset += t.coordinates();
        }
        let mut col = 0;
        for part in source.atoms() {
            let placed = cursors.iter_mut().any(|slot| slot.try_place(part, col, &mut matrix));
            if !placed {
                return Err(Error::BlocksDoNotFit(format!("{part} does not fit into what is left of {target}")));
            }
            col += part.coordinates();
        }
        Self::new(source.clone(), target.clone(), matrix)
    }

    pub fn special(kind: SpecialEmbedding) -> Result<Self> {
        match kind {
            SpecialEmbedding::SymplecticInUnitary(n) => {
                let source = GroupSpec::Sp(n);
                Self::blockwise(&source, &GroupSpec::SU(2 * n))
            }
            SpecialEmbedding::OrthogonalInUnitary(n) => {
                if n % 2 == 0 {
                    return Err(Error::InvalidParameters(format!("SO({n}) -> SU({n}) needs n odd")));
                }
                Self::blockwise(&GroupSpec::SO(n), &GroupSpec::SU(n))
            }
            SpecialEmbedding::TwistedUnitaryInOrthogonal(n) => {
                Self::blockwise(&GroupSpec::UTilde(n), &GroupSpec::SO(2 * n))
            }
            SpecialEmbedding::CircleSplitting(p1, p2) => {
                let source = GroupSpec::product(vec![GroupSpec::Torus(1), GroupSpec::SU(p1), GroupSpec::SU(p2)]);
                let target = GroupSpec::SUBlocks(vec![p1, p2]);
                let cols = 1 + (p1 + p2) as usize;
                let mut matrix = Vec::new();
                for i in 0..(p1 + p2) as usize {
                    let mut row = vec![0i64; cols];
                    row[0] = if i < p1 as usize { p2 as i64 } else { -(p1 as i64) };
                    row[1 + i] = 1;
                    matrix.push(row);
                }
                Self::new(source, target, matrix)
            }
        }
    }

    /// Inclusion of a maximal torus `T → group`, written in a lattice basis of
    /// the torus.
    pub fn maximal_torus(group: &GroupSpec) -> Result<Self> {
        group.validate()?;
        let basis = lattice_basis(group);
        let rank = group.rank();
        if rank == 0 {
            return Err(Error::InvalidGroup(format!("{group} has rank 0")));
        }
        Self::new(GroupSpec::Torus(rank as u32), group.clone(), basis)
    }
}

/// Integer basis of the coordinate lattice of the maximal torus, one column
/// per basis vector: for a relation set, `e_i - e_last`.
fn lattice_basis(group: &GroupSpec) -> Vec<Vec<i64>> {
    let n = group.coordinates();
    let rels = group.relations();
    let last_of: BTreeMap<usize, usize> = rels.iter().filter_map(|r| r.last().map(|&l| (l, l))).collect();
    let rel_of = |i: usize| rels.iter().find(|r| r.contains(&i));
    let free: Vec<usize> = (0..n).filter(|i| !last_of.contains_key(i)).collect();
    let mut m = vec![vec![0i64; free.len()]; n];
    for (c, &i) in free.iter().enumerate() {
        m[i][c] = 1;
        if let Some(r) = rel_of(i) {
            m[*r.last().expect("nonempty relation")][c] = -1;
        }
    }
    m
}

/// Coordinates of a lattice vector in [`lattice_basis`]: drop the last
/// coordinate of every relation set. Each row lists `(coordinate, weight)`.
fn lattice_projection(group: &GroupSpec) -> Vec<Vec<(usize, i64)>> {
    let n = group.coordinates();
    let lasts: Vec<usize> = group.relations().iter().filter_map(|r| r.last().copied()).collect();
    (0..n).filter(|i| !lasts.contains(i)).map(|i| vec![(i, 1)]).collect()
}

fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::from_i64(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= pivot.clone();
        for r in c + 1..n {
            let f = m[r][c].clone() / pivot.clone();
            for k in c..n {
                let v = m[c][k].clone() * f.clone();
                m[r][k] -= v;
            }
        }
    }
    det
}

/// Remaining room in one target factor during blockwise placement.
struct Slot {
    kind: SlotKind,
    offset: usize,
    coords: usize,
    used_coords: usize,
    budget: u32,
    used: u32,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SlotKind {
    /// Complex dimensions; `special` when the determinant must be one.
    Unitary { special: bool },
    /// Quaternionic dimensions.
    Symplectic,
    /// Real dimensions.
    Orthogonal,
    Torus,
}

impl Slot {
    fn for_target(t: &GroupSpec, offset: usize) -> Result<Self> {
        let (kind, budget) = match t {
            GroupSpec::SU(n) => (SlotKind::Unitary { special: true }, *n),
            GroupSpec::U(n) => (SlotKind::Unitary { special: false }, *n),
            GroupSpec::Sp(n) => (SlotKind::Symplectic, *n),
            GroupSpec::SO(m) => (SlotKind::Orthogonal, *m),
            GroupSpec::Torus(r) => (SlotKind::Torus, *r),
            other => {
                return Err(Error::BlocksDoNotFit(format!(
                    "no blockwise placement into {other}; give an explicit embedding"
                )))
            }
        };
        Ok(Slot { kind, offset, coords: t.coordinates(), used_coords: 0, budget, used: 0 })
    }

    /// Writes the placement of `part` (whose coordinates start at column
    /// `col`) into `matrix` if it fits.
    fn try_place(&mut self, part: &GroupSpec, col: usize, matrix: &mut [Vec<i64>]) -> bool {
        // (target coordinate, source coordinate, coefficient) entries, the
        // budget consumed and the number of target coordinates consumed
        let mut entries: Vec<(usize, usize, i64)> = Vec::new();
        let k = part.coordinates();
        let (cost, width) = match (self.kind, part) {
            (SlotKind::Unitary { .. }, GroupSpec::SU(_) | GroupSpec::SUBlocks(_)) => {
                entries.extend((0..k).map(|i| (i, i, 1)));
                (k as u32, k)
            }
            (SlotKind::Unitary { special }, GroupSpec::U(_) | GroupSpec::UTilde(_) | GroupSpec::Torus(_)) => {
                entries.extend((0..k).map(|i| (i, i, 1)));
                if special {
                    // determinant compensation in the next coordinate
                    entries.extend((0..k).map(|i| (k, i, -1)));
                    (k as u32 + 1, k + 1)
                } else {
                    (k as u32, k)
                }
            }
            (SlotKind::Unitary { .. }, GroupSpec::Sp(_)) => {
                for i in 0..k {
                    entries.push((2 * i, i, 1));
                    entries.push((2 * i + 1, i, -1));
                }
                (2 * k as u32, 2 * k)
            }
            (SlotKind::Unitary { .. }, GroupSpec::SO(m)) => {
                for i in 0..k {
                    entries.push((2 * i, i, 1));
                    entries.push((2 * i + 1, i, -1));
                }
                (*m, *m as usize)
            }
            (SlotKind::Symplectic, GroupSpec::Sp(_))
            | (
                SlotKind::Symplectic,
                GroupSpec::SU(_) | GroupSpec::U(_) | GroupSpec::UTilde(_) | GroupSpec::SUBlocks(_) | GroupSpec::Torus(_),
            ) => {
                entries.extend((0..k).map(|i| (i, i, 1)));
                (k as u32, k)
            }
            (SlotKind::Orthogonal, GroupSpec::SO(m)) => {
                entries.extend((0..k).map(|i| (i, i, 1)));
                (*m, k)
            }
            (
                SlotKind::Orthogonal,
                GroupSpec::SU(_) | GroupSpec::U(_) | GroupSpec::SUBlocks(_) | GroupSpec::Torus(_),
            ) => {
                entries.extend((0..k).map(|i| (i, i, 1)));
                (2 * k as u32, k)
            }
            (SlotKind::Orthogonal, GroupSpec::UTilde(_)) => {
                entries.extend((0..k).map(|i| (i, i, if i + 1 == k { -1 } else { 1 })));
                (2 * k as u32, k)
            }
            (SlotKind::Torus, GroupSpec::Torus(_)) => {
                entries.extend((0..k).map(|i| (i, i, 1)));
                (k as u32, k)
            }
            _ => return false,
        };
        if self.used + cost > self.budget || self.used_coords + width > self.coords {
            return false;
        }
        for (r, c, a) in entries {
            matrix[self.offset + self.used_coords + r][col + c] = a;
        }
        self.used += cost;
        self.used_coords += width;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_su3_blocks_in_su6() {
        let h = GroupSpec::product(vec![GroupSpec::SU(3), GroupSpec::SU(3)]);
        let e = TorusEmbedding::blockwise(&h, &GroupSpec::SU(6)).unwrap();
        assert_eq!(e.matrix[4], vec![0, 0, 0, 0, 1, 0]);
    }

    #[test]
    fn circle_splitting_kernel() {
        let e = TorusEmbedding::special(SpecialEmbedding::CircleSplitting(3, 3)).unwrap();
        assert_eq!(e.kernel_order(), Some(9));
    }

    #[test]
    fn maximal_torus_of_su3() {
        let e = TorusEmbedding::maximal_torus(&GroupSpec::SU(3)).unwrap();
        assert_eq!(e.matrix, vec![vec![1, 0], vec![0, 1], vec![-1, -1]]);
    }

    #[test]
    fn overfull_blocks_are_rejected() {
        let h = GroupSpec::product(vec![GroupSpec::SU(4), GroupSpec::SU(3)]);
        assert!(matches!(TorusEmbedding::blockwise(&h, &GroupSpec::SU(6)), Err(Error::BlocksDoNotFit(_))));
    }
}
