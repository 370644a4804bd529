use super::element::Element;
use super::monomial::{Factor, Monomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub id: u32,
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(id: u32, name: impl Into<String>, degree: u32) -> Self {
        Generator { id, name: name.into(), degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }

    pub fn element<S: Scalar>(&self) -> Element<S> {
        Element::generator(self.id, self.degree)
    }
}

/// Free graded-commutative algebra on finitely many generators of positive
/// degree, with a differential given on generators.
///
/// Bases are enumerated only up to `cap`; asking for more is an error rather
/// than a silent truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeCdga<S> {
    generators: Vec<Generator>,
    differential: Vec<Element<S>>,
    cap: u32,
}

impl<S: Scalar> FreeCdga<S> {
    /// Generator `i` must have id `i`. Checks homogeneity and `d∘d = 0`.
    pub fn new(generators: Vec<Generator>, differential: Vec<Element<S>>, cap: u32) -> Result<Self> {
        if generators.len() != differential.len() {
            return Err(Error::MismatchedGenerators(format!(
                "{} generators but {} differentials",
                generators.len(),
                differential.len()
            )));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.id as usize != i {
                return Err(Error::MismatchedGenerators(format!("generator {} has id {}", g.name, g.id)));
            }
            if g.degree == 0 {
                return Err(Error::InvalidDifferential(format!("generator {} has degree 0", g.name)));
            }
        }
        let algebra = FreeCdga { generators, differential, cap };
        for (g, dg) in algebra.generators.iter().zip(&algebra.differential) {
            for (m, _) in dg.terms() {
                if m.degree() != g.degree + 1 {
                    return Err(Error::InvalidDifferential(format!(
                        "d{} has a term of degree {} instead of {}",
                        g.name,
                        m.degree(),
                        g.degree + 1
                    )));
                }
                for f in m.factors() {
                    match algebra.generators.get(f.gen as usize) {
                        Some(h) if h.degree == f.deg => {}
                        _ => {
                            return Err(Error::MismatchedGenerators(format!(
                                "d{} mentions an unknown generator {}",
                                g.name, f.gen
                            )))
                        }
                    }
                }
            }
        }
        for (g, dg) in algebra.generators.iter().zip(&algebra.differential) {
            if !algebra.d(dg).is_zero() {
                return Err(Error::InvalidDifferential(format!("d(d{}) is not zero", g.name)));
            }
        }
        Ok(algebra)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, id: u32) -> &Generator {
        &self.generators[id as usize]
    }

    pub fn find(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn differential_of(&self, id: u32) -> &Element<S> {
        &self.differential[id as usize]
    }

    pub fn differentials(&self) -> &[Element<S>] {
        &self.differential
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn gen(&self, id: u32) -> Element<S> {
        self.generators[id as usize].element()
    }

    /// The differential, extended by the Leibniz rule.
    pub fn d(&self, e: &Element<S>) -> Element<S> {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out += self.d_monomial(m).scale(c);
        }
        out
    }

    pub fn d_monomial(&self, m: &Monomial) -> Element<S> {
        let mut out = Element::zero();
        let mut prefix_degree = 0;
        for pos in 0..m.factors().len() {
            let (prefix, f, suffix) = m.split_at(pos);
            let dg = &self.differential[f.gen as usize];
            if !dg.is_zero() {
                // d(g^e) = e g^(e-1) dg for even g
                let lower = Monomial::power(f.gen, f.deg, f.exp - 1).expect("valid power");
                let mut coef = S::from_i64(f.exp as i64);
                if prefix_degree % 2 == 1 {
                    coef = -coef;
                }
                let head = prefix.mul(&lower).expect("distinct factors").1;
                let term = &Element::monomial(head) * dg;
                out += term.mul_monomial(&coef, &suffix);
            }
            prefix_degree += f.deg * f.exp;
        }
        out
    }

    /// Monomial basis of degree `k`, leading monomial first.
    pub fn basis(&self, k: u32) -> Result<Vec<Monomial>> {
        self.basis_filtered(k, None)
    }

    /// Monomials of degree `k` with exactly `odd` odd factors.
    pub fn basis_with_odd_length(&self, k: u32, odd: usize) -> Result<Vec<Monomial>> {
        self.basis_filtered(k, Some(odd))
    }

    fn basis_filtered(&self, k: u32, odd: Option<usize>) -> Result<Vec<Monomial>> {
        if k > self.cap {
            return Err(Error::CappedDegree { requested: k, cap: self.cap });
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.enumerate(0, k, odd, &mut current, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        Ok(out)
    }

    fn enumerate(
        &self,
        idx: usize,
        remaining: u32,
        odd: Option<usize>,
        current: &mut Vec<Factor>,
        out: &mut Vec<Monomial>,
    ) {
        if remaining == 0 {
            if odd.map_or(true, |o| o == current.iter().filter(|f| f.is_odd()).count()) {
                out.push(Monomial::from_sorted(current.clone()));
            }
            return;
        }
        if idx == self.generators.len() {
            return;
        }
        let g = &self.generators[idx];
        let odd_so_far = current.iter().filter(|f| f.is_odd()).count();
        let max_exp = if g.is_odd() {
            if odd.map_or(false, |o| odd_so_far >= o) {
                0
            } else {
                1
            }
        } else {
            remaining / g.degree
        };
        for e in (0..=max_exp.min(remaining / g.degree)).rev() {
            if e > 0 {
                current.push(Factor { gen: g.id, deg: g.degree, exp: e });
            }
            self.enumerate(idx + 1, remaining - e * g.degree, odd, current, out);
            if e > 0 {
                current.pop();
            }
        }
    }

    /// Canonical text form, leading term first.
    pub fn render(&self, e: &Element<S>) -> String {
        render_element(e, &|id| self.generators[id as usize].name.clone())
    }
}

pub fn render_monomial(m: &Monomial, name: &dyn Fn(u32) -> String) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    m.factors()
        .iter()
        .map(|f| if f.exp == 1 { name(f.gen) } else { format!("{}^{}", name(f.gen), f.exp) })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn render_element<S: Scalar>(e: &Element<S>, name: &dyn Fn(u32) -> String) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in e.terms().rev().enumerate() {
        let negative = c.is_negative();
        let abs = if negative { -c.clone() } else { c.clone() };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mono = render_monomial(m, name);
        if m.is_one() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}
