use super::embedding::TorusEmbedding;
use super::group::GroupSpec;
use crate::error::{Error, Result};

/// Subgroup inclusions that induce injections on rational homotopy, so that
/// formality of `G/H` can be tested inside the smaller or the larger group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inclusion {
    /// `SO(n) ⊂ SO(N)` for odd `n ≤ N`.
    Orthogonal { n: u32, big: u32 },
    /// `SU(n) ⊂ SU(N)`.
    Unitary { n: u32, big: u32 },
    /// `U(n) ⊂ U(N)`.
    FullUnitary { n: u32, big: u32 },
    /// `Sp(n) ⊂ Sp(N)`.
    Symplectic { n: u32, big: u32 },
    /// `SO(n) ⊂ SU(n)` for odd `n`.
    OrthogonalInUnitary { n: u32 },
    /// `Sp(n) ⊂ SU(2n)`.
    SymplecticInUnitary { n: u32 },
}

impl Inclusion {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        match *self {
            Inclusion::Orthogonal { n, big } if n % 2 == 0 || big < n => {
                bad(format!("SO({n}) in SO({big}) needs n odd and n <= N"))
            }
            Inclusion::Unitary { n, big } | Inclusion::FullUnitary { n, big } | Inclusion::Symplectic { n, big }
                if big < n || n == 0 =>
            {
                bad(format!("inclusion of size {n} into size {big}"))
            }
            Inclusion::OrthogonalInUnitary { n } if n % 2 == 0 => bad(format!("SO({n}) in SU({n}) needs n odd")),
            _ => Ok(()),
        }
    }

    pub fn subgroup(&self) -> GroupSpec {
        match *self {
            Inclusion::Orthogonal { n, .. } | Inclusion::OrthogonalInUnitary { n } => GroupSpec::SO(n),
            Inclusion::Unitary { n, .. } => GroupSpec::SU(n),
            Inclusion::FullUnitary { n, .. } => GroupSpec::U(n),
            Inclusion::Symplectic { n, .. } | Inclusion::SymplecticInUnitary { n } => GroupSpec::Sp(n),
        }
    }

    pub fn supergroup(&self) -> GroupSpec {
        match *self {
            Inclusion::Orthogonal { big, .. } => GroupSpec::SO(big),
            Inclusion::Unitary { big, .. } => GroupSpec::SU(big),
            Inclusion::FullUnitary { big, .. } => GroupSpec::U(big),
            Inclusion::Symplectic { big, .. } => GroupSpec::Sp(big),
            Inclusion::OrthogonalInUnitary { n } => GroupSpec::SU(n),
            Inclusion::SymplecticInUnitary { n } => GroupSpec::SU(2 * n),
        }
    }

    pub fn embedding(&self) -> Result<TorusEmbedding> {
        self.validate()?;
        TorusEmbedding::blockwise(&self.subgroup(), &self.supergroup())
    }

    pub fn describe(&self) -> String {
        format!("{} ⊂ {}", self.subgroup(), self.supergroup())
    }
}
