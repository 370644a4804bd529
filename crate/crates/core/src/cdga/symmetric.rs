use std::collections::{BTreeMap, HashMap};

use super::element::Element;
use super::monomial::{Factor, Monomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Elementary symmetric polynomials `e_0, ..., e_k` of the given elements.
pub fn elementary_symmetric_all<S: Scalar>(values: &[Element<S>], k: usize) -> Vec<Element<S>> {
    let mut e = vec![Element::zero(); k + 1];
    e[0] = Element::one();
    for v in values {
        for j in (1..=k).rev() {
            let add = &e[j - 1] * v;
            e[j] += add;
        }
    }
    e
}

pub fn elementary_symmetric<S: Scalar>(values: &[Element<S>], k: usize) -> Element<S> {
    elementary_symmetric_all(values, k).pop().expect("k + 1 entries")
}

/// Writes `p` as a polynomial in `basis`, by repeatedly cancelling the
/// leading term against a product of basis leading terms.
///
/// The answer uses generator id `j` (of degree `deg basis[j]`) for
/// `basis[j]`. All inputs must be polynomials in even generators.
pub fn express_in_invariants<S: Scalar>(p: &Element<S>, basis: &[Element<S>]) -> Result<Element<S>> {
    let mut leads = Vec::with_capacity(basis.len());
    let mut degrees = Vec::with_capacity(basis.len());
    for (j, b) in basis.iter().enumerate() {
        let Some((m, c)) = b.leading_term() else {
            return Err(Error::InvalidParameters(format!("basis element {j} is zero")));
        };
        let deg = b
            .degree()
            .ok_or_else(|| Error::InvalidParameters(format!("basis element {j} is not homogeneous")))?;
        if deg % 2 == 1 || m.odd_length() > 0 {
            return Err(Error::InvalidParameters(format!("basis element {j} is not even")));
        }
        leads.push((exponents(m), c.clone()));
        degrees.push(deg);
    }
    let mut powers: HashMap<(usize, u32), Element<S>> = HashMap::new();
    let mut rest = p.clone();
    let mut out = Element::zero();
    while let Some((m, c)) = rest.leading_term() {
        let target = exponents(m);
        let c = c.clone();
        let mut choice = vec![0u32; basis.len()];
        if !decompose(&target, &leads, basis.len(), &mut choice) {
            return Err(Error::NonInvariantInput(format!(
                "leading monomial of degree {} is not a product of basis leading monomials",
                m.degree()
            )));
        }
        let mut lead_coef = S::one();
        let mut product = Element::one();
        let mut factors = Vec::new();
        for (j, &a) in choice.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for _ in 0..a {
                lead_coef = lead_coef * leads[j].1.clone();
            }
            let pw = powers.entry((j, a)).or_insert_with(|| basis[j].pow(a)).clone();
            product = &product * &pw;
            factors.push(Factor { gen: j as u32, deg: degrees[j], exp: a });
        }
        let coef = c / lead_coef;
        out.add_term(Monomial::from_factors(factors).expect("even factors"), coef.clone());
        rest -= &product.scale(&coef);
    }
    Ok(out)
}

fn exponents(m: &Monomial) -> BTreeMap<u32, u32> {
    m.factors().iter().map(|f| (f.gen, f.exp)).collect()
}

/// Finds multiplicities with `Σ choice_j lead_j = target`, trying the basis
/// from the back and larger multiplicities first.
fn decompose<S>(
    target: &BTreeMap<u32, u32>,
    leads: &[(BTreeMap<u32, u32>, S)],
    upto: usize,
    choice: &mut [u32],
) -> bool {
    if target.values().all(|&e| e == 0) {
        return true;
    }
    if upto == 0 {
        return false;
    }
    let j = upto - 1;
    let lead = &leads[j].0;
    let max = lead
        .iter()
        .map(|(g, e)| target.get(g).copied().unwrap_or(0) / e)
        .min()
        .unwrap_or(0);
    for a in (0..=max).rev() {
        let mut t = target.clone();
        if a > 0 {
            for (g, e) in lead {
                *t.get_mut(g).expect("bounded by max") -= a * e;
            }
        }
        choice[j] = a;
        if decompose(&t, leads, j, choice) {
            return true;
        }
    }
    choice[j] = 0;
    false
}
