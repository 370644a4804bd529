use std::cmp::Ordering;

/// One factor `g^exp` of a monomial. The generator's degree is carried along
/// so signs can be computed without consulting the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub gen: u32,
    pub deg: u32,
    pub exp: u32,
}

impl Factor {
    pub fn is_odd(&self) -> bool {
        self.deg % 2 == 1
    }
}

/// Product of generator powers, factors sorted by generator id. Odd
/// generators appear with exponent 1 only.
///
/// Monomials are ordered by total degree and then lexicographically on the
/// exponent vector, where a larger exponent on a smaller id ranks higher.
/// The largest monomial of an element is its leading monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<Factor>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn generator(gen: u32, deg: u32) -> Self {
        Monomial { factors: vec![Factor { gen, deg, exp: 1 }], degree: deg }
    }

    pub fn power(gen: u32, deg: u32, exp: u32) -> Option<Self> {
        if exp == 0 {
            return Some(Self::one());
        }
        if deg % 2 == 1 && exp > 1 {
            return None;
        }
        Some(Monomial { factors: vec![Factor { gen, deg, exp }], degree: deg * exp })
    }

    /// Builds a monomial from factors in any order. Returns `None` if an odd
    /// generator repeats; the Koszul sign of the reordering is discarded.
    pub fn from_factors(mut factors: Vec<Factor>) -> Option<Self> {
        factors.retain(|f| f.exp > 0);
        factors.sort_by_key(|f| f.gen);
        let mut merged: Vec<Factor> = Vec::with_capacity(factors.len());
        for f in factors {
            match merged.last_mut() {
                Some(last) if last.gen == f.gen => last.exp += f.exp,
                _ => merged.push(f),
            }
        }
        if merged.iter().any(|f| f.is_odd() && f.exp > 1) {
            return None;
        }
        let degree = merged.iter().map(|f| f.deg * f.exp).sum();
        Some(Monomial { factors: merged, degree })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of odd factors.
    pub fn odd_length(&self) -> usize {
        self.factors.iter().filter(|f| f.is_odd()).count()
    }

    pub fn exponent(&self, gen: u32) -> u32 {
        self.factors
            .binary_search_by_key(&gen, |f| f.gen)
            .map(|i| self.factors[i].exp)
            .unwrap_or(0)
    }

    /// Product with its Koszul sign, or `None` when an odd generator repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        let mut negative = false;
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        // odd factors of `a` not yet emitted; each odd factor of `b` taken
        // before them jumps over all of them
        let mut odd_left_in_a = a.iter().filter(|f| f.is_odd()).count();
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].gen < b[j].gen);
            let take_b = i >= a.len() || (j < b.len() && b[j].gen < a[i].gen);
            if take_a {
                if a[i].is_odd() {
                    odd_left_in_a -= 1;
                }
                out.push(a[i]);
                i += 1;
            } else if take_b {
                if b[j].is_odd() && odd_left_in_a % 2 == 1 {
                    negative = !negative;
                }
                out.push(b[j]);
                j += 1;
            } else {
                if a[i].is_odd() {
                    return None;
                }
                out.push(Factor { exp: a[i].exp + b[j].exp, ..a[i] });
                i += 1;
                j += 1;
            }
        }
        Some((negative, Monomial { factors: out, degree: self.degree + other.degree }))
    }

    /// Splits off the factor at `pos`, returning `(prefix, factor, suffix)`.
    pub(crate) fn split_at(&self, pos: usize) -> (Monomial, Factor, Monomial) {
        let prefix = Monomial::from_sorted(self.factors[..pos].to_vec());
        let suffix = Monomial::from_sorted(self.factors[pos + 1..].to_vec());
        (prefix, self.factors[pos], suffix)
    }

    pub(crate) fn from_sorted(factors: Vec<Factor>) -> Monomial {
        let degree = factors.iter().map(|f| f.deg * f.exp).sum();
        Monomial { factors, degree }
    }

    /// Whether `other` divides `self` (exponentwise).
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        other.factors.iter().all(|f| self.exponent(f.gen) >= f.exp)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let (a, b) = (&self.factors, &other.factors);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(x), Some(y)) => {
                        if x.gen != y.gen {
                            return if x.gen < y.gen { Ordering::Greater } else { Ordering::Less };
                        }
                        if x.exp != y.exp {
                            return x.exp.cmp(&y.exp);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_sign_of_odd_swap() {
        let x = Monomial::generator(0, 3);
        let y = Monomial::generator(1, 5);
        let (s1, m1) = x.mul(&y).unwrap();
        let (s2, m2) = y.mul(&x).unwrap();
        assert_eq!(m1, m2);
        assert!(!s1);
        assert!(s2);
        assert!(x.mul(&x).is_none());
    }

    #[test]
    fn graded_lex_order() {
        let c2 = Monomial::power(0, 4, 2).unwrap();
        let cd = Monomial::generator(0, 4).mul(&Monomial::generator(1, 4)).unwrap().1;
        let d2 = Monomial::power(1, 4, 2).unwrap();
        assert!(c2 > cd && cd > d2);
    }
}
