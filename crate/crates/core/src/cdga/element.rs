use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::monomial::Monomial;
use crate::scalar::Scalar;

/// Finite linear combination of monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<S> {
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Default for Element<S> {
    fn default() -> Self {
        Element { terms: BTreeMap::new() }
    }
}

impl<S: Scalar> Element<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(S::one(), m)
    }

    pub fn term(c: S, m: Monomial) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn generator(gen: u32, deg: u32) -> Self {
        Self::monomial(Monomial::generator(gen, deg))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e = e.clone() + c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Largest monomial with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &S)> {
        self.terms.iter().next_back()
    }

    /// The degree, if the element is nonzero and homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element { terms: self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())).collect() }
    }

    pub fn mul_monomial(&self, c: &S, m: &Monomial) -> Self {
        let mut out = Self::zero();
        for (n, v) in &self.terms {
            if let Some((neg, p)) = n.mul(m) {
                let coef = v.clone() * c.clone();
                out.add_term(p, if neg { -coef } else { coef });
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Part spanned by monomials satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Element { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, v)| (m.clone(), v.clone())).collect() }
    }

    /// Substitutes each generator by an element; generators for which `f`
    /// returns `None` are kept. Multiplication order follows the factor order,
    /// so signs are right whenever the images have the generators' parity.
    pub fn substitute(&self, f: &dyn Fn(u32) -> Option<Element<S>>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for fac in m.factors() {
                let image = f(fac.gen).unwrap_or_else(|| Self::generator(fac.gen, fac.deg));
                acc = &acc * &image.pow(fac.exp);
            }
            out += acc;
        }
        out
    }
}

impl<S: Scalar> AddAssign<Element<S>> for Element<S> {
    fn add_assign(&mut self, rhs: Element<S>) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<S: Scalar> AddAssign<&Element<S>> for Element<S> {
    fn add_assign(&mut self, rhs: &Element<S>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<S: Scalar> SubAssign<&Element<S>> for Element<S> {
    fn sub_assign(&mut self, rhs: &Element<S>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<S: Scalar> Add for &Element<S> {
    type Output = Element<S>;
    fn add(self, rhs: Self) -> Element<S> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<S: Scalar> Add for Element<S> {
    type Output = Element<S>;
    fn add(mut self, rhs: Self) -> Element<S> {
        self += rhs;
        self
    }
}

impl<S: Scalar> Sub for &Element<S> {
    type Output = Element<S>;
    fn sub(self, rhs: Self) -> Element<S> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<S: Scalar> Sub for Element<S> {
    type Output = Element<S>;
    fn sub(mut self, rhs: Self) -> Element<S> {
        self -= &rhs;
        self
    }
}

impl<S: Scalar> Neg for &Element<S> {
    type Output = Element<S>;
    fn neg(self) -> Element<S> {
        Element { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<S: Scalar> Neg for Element<S> {
    type Output = Element<S>;
    fn neg(self) -> Element<S> {
        -&self
    }
}

impl<S: Scalar> Mul for &Element<S> {
    type Output = Element<S>;
    fn mul(self, rhs: Self) -> Element<S> {
        let mut out = Element::zero();
        for (m, c) in &rhs.terms {
            out += self.mul_monomial(c, m);
        }
        out
    }
}

impl<S: Scalar> Mul for Element<S> {
    type Output = Element<S>;
    fn mul(self, rhs: Self) -> Element<S> {
        &self * &rhs
    }
}
