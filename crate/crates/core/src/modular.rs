//! Linear algebra modulo word-sized primes, used to settle rational
//! questions quickly: non-membership and full rank transfer from a prime to
//! the rationals, and rational solutions are recovered from several primes
//! and then checked exactly.


use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{axpy, SparseVec};
use crate::scalar::Scalar;

/// Primes below `2^31`, so products of residues fit in `u64`.
pub const PRIMES: [u64; 12] = [
    2_147_483_647,
    2_147_483_629,
    2_147_483_587,
    2_147_483_579,
    2_147_483_563,
    2_147_483_549,
    2_147_483_543,
    2_147_483_497,
    2_147_483_489,
    2_147_483_477,
    2_147_483_423,
    2_147_483_399,
];

pub fn inverse_mod(a: u64, p: u64) -> u64 {
    let (mut result, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Echelon basis over `Z/p` in a space of fixed dimension. A vector in a
/// rational span stays in the span of the residues, and residues of
/// independent vectors can only become dependent; so non-membership and
/// full rank modulo `p` hold over the rationals too.
#[derive(Clone, Debug)]
pub struct ModularEchelon {
    p: u64,
    /// `rows[c]`: the row with leading one in column `c`, entries after it.
    rows: Vec<Option<Vec<(usize, u64)>>>,
    rank: usize,
}

impl ModularEchelon {
    pub fn new(dim: usize, p: u64) -> Self {
        ModularEchelon { p, rows: vec![None; dim], rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// First column of `v` not cancelled by the basis, with the partially
    /// reduced vector, or `None` when a denominator vanishes modulo `p`.
    fn reduce<S: Scalar>(&self, v: &SparseVec<S>) -> Option<(Option<usize>, Vec<u64>)> {
        let p = self.p;
        let mut acc = vec![0u64; self.rows.len()];
        let mut first = usize::MAX;
        for (&i, c) in v {
            acc[i] = c.residue(p)?;
            if acc[i] != 0 {
                first = first.min(i);
            }
        }
        for c in first.min(acc.len())..acc.len() {
            let x = acc[c];
            if x == 0 {
                continue;
            }
            match &self.rows[c] {
                Some(row) => {
                    acc[c] = 0;
                    for &(j, y) in row {
                        acc[j] = (acc[j] + p - x * y % p) % p;
                    }
                }
                None => return Some((Some(c), acc)),
            }
        }
        Some((None, acc))
    }

    /// Adds `v`; returns whether it enlarged the span, or `None` when a
    /// denominator vanishes modulo `p`.
    pub fn push<S: Scalar>(&mut self, v: &SparseVec<S>) -> Option<bool> {
        let (lead, acc) = self.reduce(v)?;
        let Some(lead) = lead else { return Some(false) };
        let inv = inverse_mod(acc[lead], self.p);
        let row = (lead + 1..acc.len()).filter(|&j| acc[j] != 0).map(|j| (j, acc[j] * inv % self.p)).collect();
        self.rows[lead] = Some(row);
        self.rank += 1;
        Some(true)
    }

    pub fn contains<S: Scalar>(&self, v: &SparseVec<S>) -> Option<bool> {
        Some(self.reduce(v)?.0.is_none())
    }
}

/// Solution of `Σ c_i vectors[i] = v` modulo `p` by dense row reduction of
/// the augmented matrix: the pivot inputs, and the coefficients on them,
/// or `None` for the coefficients when `v` is outside the span.
#[allow(clippy::type_complexity)]
fn solve_mod<S: Scalar>(dim: usize, vectors: &[SparseVec<S>], v: &SparseVec<S>, p: u64) -> Option<(Vec<usize>, Option<Vec<u64>>)> {
    let n = vectors.len();
    let width = n + 1;
    let mut a = vec![0u64; dim * width];
    for (j, u) in vectors.iter().chain(std::iter::once(v)).enumerate() {
        for (&i, c) in u {
            a[i * width + j] = c.residue(p)?;
        }
    }
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        if rank == dim {
            break;
        }
        let Some(r) = (rank..dim).find(|&r| a[r * width + col] != 0) else { continue };
        if r != rank {
            for k in col..width {
                a.swap(r * width + k, rank * width + k);
            }
        }
        let inv = inverse_mod(a[rank * width + col], p);
        for k in col..width {
            a[rank * width + k] = a[rank * width + k] * inv % p;
        }
        for r in 0..dim {
            if r == rank {
                continue;
            }
            let f = a[r * width + col];
            if f == 0 {
                continue;
            }
            for k in col..width {
                let x = a[rank * width + k];
                if x != 0 {
                    a[r * width + k] = (a[r * width + k] + p - f * x % p) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if pivots.last() == Some(&n) {
        pivots.pop();
        return Some((pivots, None));
    }
    let coeffs = (0..pivots.len()).map(|r| a[r * width + n]).collect();
    Some((pivots, Some(coeffs)))
}

/// Rank modulo the first prime of `vectors` in a space of dimension `dim`;
/// a lower bound for the rational rank.
pub fn rank_mod_prime<S: Scalar>(dim: usize, vectors: &[SparseVec<S>]) -> Option<usize> {
    let mut e = ModularEchelon::new(dim, PRIMES[0]);
    for v in vectors {
        e.push(v)?;
        if e.rank() == dim {
            break;
        }
    }
    Some(e.rank())
}

/// Outcome of [`solve_multimodular`].
#[derive(Clone, Debug, PartialEq)]
pub enum Modular<S> {
    /// Exact coefficients, checked over the rationals.
    Solved(Vec<S>),
    /// `v` is not in the span.
    Outside,
    /// No conclusion; use exact elimination.
    Undecided,
}

/// Rational reconstruction of `a` modulo `m` with numerator and denominator
/// below `sqrt(m / 2)`.
fn reconstruct(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), &r0 - &q * &r1);
        (t0, t1) = (t1.clone(), &t0 - &q * &t1);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Coefficients `c` with `Σ c_i vectors[i] = v`, supported on the inputs
/// that enlarge the span in order, as exact elimination would choose them.
/// Solves modulo several primes, lifts by Chinese remaindering and rational
/// reconstruction, and accepts the lift only after an exact check.
pub fn solve_multimodular<S: Scalar>(dim: usize, vectors: &[SparseVec<S>], v: &SparseVec<S>) -> Modular<S> {
    let mut pivots: Option<Vec<usize>> = None;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    for &p in &PRIMES {
        let Some((piv, solution)) = solve_mod(dim, vectors, v, p) else { continue };
        let Some(solution) = solution else { return Modular::Outside };
        match &pivots {
            Some(old) if old.len() > piv.len() => continue,
            Some(old) if *old == piv => {}
            _ => {
                pivots = Some(piv);
                modulus = BigInt::one();
                acc = vec![BigInt::zero(); solution.len()];
            }
        }
        let pb = BigInt::from(p);
        let inv = BigInt::from(inverse_mod((&modulus % &pb).try_into().unwrap_or(0u64), p));
        for (a, r) in acc.iter_mut().zip(&solution) {
            let delta = ((BigInt::from(*r) - &*a).mod_floor(&pb) * &inv).mod_floor(&pb);
            *a += &modulus * delta;
        }
        modulus *= &pb;
        let mut coeffs = vec![S::zero(); vectors.len()];
        let piv = pivots.as_ref().expect("set above");
        let lifted = acc.iter().zip(piv).all(|(a, &i)| {
            match reconstruct(a, &modulus).and_then(|(n, d)| S::from_ratio(n, d)) {
                Some(c) => {
                    coeffs[i] = c;
                    true
                }
                None => false,
            }
        });
        if lifted && combination(vectors, &coeffs) == *v {
            return Modular::Solved(coeffs);
        }
    }
    Modular::Undecided
}

fn combination<S: Scalar>(vectors: &[SparseVec<S>], coeffs: &[S]) -> SparseVec<S> {
    let mut out = SparseVec::new();
    for (u, c) in vectors.iter().zip(coeffs) {
        if !c.is_zero() {
            axpy(&mut out, c, u);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::solve;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn vec(entries: &[(usize, BigRational)]) -> SparseVec<BigRational> {
        entries.iter().cloned().collect()
    }

    #[test]
    fn reconstructs_fractions() {
        let m = BigInt::from(PRIMES[0]) * BigInt::from(PRIMES[1]);
        let a = (BigInt::from(-7) * BigInt::from(inverse_mod(13, PRIMES[0]))).mod_floor(&BigInt::from(PRIMES[0]));
        assert_eq!(reconstruct(&a, &BigInt::from(PRIMES[0])), Some((BigInt::from(-7), BigInt::from(13))));
        assert!(reconstruct(&BigInt::from(5), &m).is_some());
    }

    #[test]
    fn agrees_with_exact_elimination() {
        let vs = vec![
            vec(&[(0, q(1, 1)), (1, q(2, 3))]),
            vec(&[(0, q(2, 1)), (1, q(4, 3))]),
            vec(&[(1, q(5, 7)), (2, q(1, 1))]),
            vec(&[(0, q(3, 1)), (2, q(-1, 2))]),
        ];
        let target = vec(&[(0, q(1, 5)), (1, q(3, 11)), (2, q(-4, 9))]);
        let exact = solve(3, &vs, &target).unwrap().unwrap();
        assert_eq!(solve_multimodular(3, &vs, &target), Modular::Solved(exact));
        let outside = vs[..2].to_vec();
        assert_eq!(solve_multimodular(3, &outside, &target), Modular::Outside);
    }

    #[test]
    fn large_coefficients_need_several_primes() {
        let big = BigRational::new(BigInt::from(10).pow(30) + 7, BigInt::from(3));
        let vs = vec![vec(&[(0, q(1, 1))])];
        let target = vec(&[(0, big.clone())]);
        assert_eq!(solve_multimodular(1, &vs, &target), Modular::Solved(vec![big]));
    }
}
