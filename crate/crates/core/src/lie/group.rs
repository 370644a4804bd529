use std::fmt;

use crate::error::{Error, Result};

/// Largest size parameter accepted for a single factor.
pub const MAX_SIZE: u32 = 256;

/// A compact connected Lie group from the supported families.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    SU(u32),
    U(u32),
    /// `SO(m)`, indexed by the matrix size `m`.
    SO(u32),
    Sp(u32),
    /// `S(U(p_1) × ... × U(p_t))`.
    SUBlocks(Vec<u32>),
    /// `U(n)` embedded in `SO(2n)` through the orientation-reversed complex
    /// structure.
    UTilde(u32),
    Torus(u32),
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn product(parts: Vec<GroupSpec>) -> GroupSpec {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                GroupSpec::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().expect("one part")
        } else {
            GroupSpec::Product(flat)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let check = |n: u32, what: &str| {
            if n == 0 || n > MAX_SIZE {
                Err(Error::InvalidGroup(format!("{what} parameter {n} is outside 1..={MAX_SIZE}")))
            } else {
                Ok(())
            }
        };
        match self {
            GroupSpec::SU(n) => check(*n, "SU"),
            GroupSpec::U(n) => check(*n, "U"),
            GroupSpec::SO(n) => check(*n, "SO"),
            GroupSpec::Sp(n) => check(*n, "Sp"),
            GroupSpec::UTilde(n) => check(*n, "Ut"),
            GroupSpec::Torus(n) => check(*n, "T"),
            GroupSpec::SUBlocks(b) => {
                if b.is_empty() {
                    return Err(Error::InvalidGroup("S(...) needs at least one block".into()));
                }
                for &p in b {
                    check(p, "S(U(..))")?;
                }
                Ok(())
            }
            GroupSpec::Product(parts) => {
                if parts.is_empty() {
                    return Err(Error::InvalidGroup("empty product".into()));
                }
                for p in parts {
                    if matches!(p, GroupSpec::Product(_)) {
                        return Err(Error::InvalidGroup("nested product".into()));
                    }
                    p.validate()?;
                }
                Ok(())
            }
        }
    }

    /// Simple factors in order; a non-product group is its own only factor.
    pub fn atoms(&self) -> Vec<&GroupSpec> {
        match self {
            GroupSpec::Product(parts) => parts.iter().collect(),
            other => vec![other],
        }
    }

    /// Number of torus coordinates, counting the redundant ones of `SU`-type
    /// factors.
    pub fn coordinates(&self) -> usize {
        match self {
            GroupSpec::SU(n) | GroupSpec::U(n) | GroupSpec::Sp(n) | GroupSpec::UTilde(n) | GroupSpec::Torus(n) => {
                *n as usize
            }
            GroupSpec::SO(m) => (*m / 2) as usize,
            GroupSpec::SUBlocks(b) => b.iter().map(|&p| p as usize).sum(),
            GroupSpec::Product(parts) => parts.iter().map(|p| p.coordinates()).sum(),
        }
    }

    /// Coordinate index sets whose sum vanishes on the maximal torus.
    pub fn relations(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut offset = 0;
        for atom in self.atoms() {
            let n = atom.coordinates();
            if matches!(atom, GroupSpec::SU(_) | GroupSpec::SUBlocks(_)) {
                out.push((offset..offset + n).collect());
            }
            offset += n;
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.coordinates() - self.relations().len()
    }

    pub fn dimension(&self) -> u64 {
        match self {
            GroupSpec::SU(n) => (*n as u64).pow(2) - 1,
            GroupSpec::U(n) | GroupSpec::UTilde(n) => (*n as u64).pow(2),
            GroupSpec::SO(m) => (*m as u64) * (*m as u64 - 1) / 2,
            GroupSpec::Sp(n) => (*n as u64) * (2 * *n as u64 + 1),
            GroupSpec::SUBlocks(b) => b.iter().map(|&p| (p as u64).pow(2)).sum::<u64>() - 1,
            GroupSpec::Torus(r) => *r as u64,
            GroupSpec::Product(parts) => parts.iter().map(|p| p.dimension()).sum(),
        }
    }

    /// Degrees of the rational homotopy, i.e. of the primitive generators of
    /// the cohomology, sorted ascending.
    pub fn homotopy_degrees(&self) -> Vec<u32> {
        let mut out: Vec<u32> = match self {
            GroupSpec::SU(n) => (2..=*n).map(|k| 2 * k - 1).collect(),
            GroupSpec::U(n) | GroupSpec::UTilde(n) => (1..=*n).map(|k| 2 * k - 1).collect(),
            GroupSpec::Sp(n) => (1..=*n).map(|k| 4 * k - 1).collect(),
            GroupSpec::SO(m) if m % 2 == 1 => (1..=m / 2).map(|k| 4 * k - 1).collect(),
            GroupSpec::SO(m) => {
                let n = m / 2;
                let mut v: Vec<u32> = (1..n).map(|k| 4 * k - 1).collect();
                v.push(2 * n - 1);
                v
            }
            GroupSpec::SUBlocks(b) => {
                let mut v: Vec<u32> = b.iter().flat_map(|&p| (1..=p).map(|k| 2 * k - 1)).collect();
                v.remove(0);
                v
            }
            GroupSpec::Torus(r) => vec![1; *r as usize],
            GroupSpec::Product(parts) => parts.iter().flat_map(|p| p.homotopy_degrees()).collect(),
        };
        out.sort_unstable();
        out
    }

    pub fn top_homotopy_degree(&self) -> u32 {
        self.homotopy_degrees().last().copied().unwrap_or(0)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::SU(n) => write!(f, "SU({n})"),
            GroupSpec::U(n) => write!(f, "U({n})"),
            GroupSpec::SO(n) => write!(f, "SO({n})"),
            GroupSpec::Sp(n) => write!(f, "Sp({n})"),
            GroupSpec::UTilde(n) => write!(f, "Ut({n})"),
            GroupSpec::Torus(n) => write!(f, "T({n})"),
            GroupSpec::SUBlocks(b) => {
                let inner: Vec<String> = b.iter().map(|p| format!("U({p})")).collect();
                write!(f, "S({})", inner.join("x"))
            }
            GroupSpec::Product(parts) => {
                let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", inner.join("x"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_and_dimensions() {
        let h = GroupSpec::product(vec![GroupSpec::SU(3), GroupSpec::SU(3)]);
        assert_eq!(h.rank(), 4);
        assert_eq!(h.dimension(), 16);
        assert_eq!(GroupSpec::SO(8).homotopy_degrees(), vec![3, 7, 7, 11]);
        assert_eq!(GroupSpec::SUBlocks(vec![2, 1]).homotopy_degrees(), vec![1, 3]);
        assert_eq!(GroupSpec::SUBlocks(vec![2, 1]).dimension(), 4);
    }

    #[test]
    fn rank_matches_homotopy_count() {
        for g in [
            GroupSpec::SU(5),
            GroupSpec::SO(7),
            GroupSpec::SO(10),
            GroupSpec::Sp(3),
            GroupSpec::SUBlocks(vec![2, 3, 1]),
            GroupSpec::Torus(3),
        ] {
            assert_eq!(g.rank(), g.homotopy_degrees().len(), "{g}");
        }
    }
}
