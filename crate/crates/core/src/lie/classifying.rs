use super::group::GroupSpec;
use crate::cdga::{elementary_symmetric_all, express_in_invariants, Element};
use crate::error::Result;
use crate::scalar::Scalar;

/// How an invariant is built from the torus coordinates of its factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantKind {
    /// `e_k` of the coordinates.
    Elementary(usize),
    /// `e_k` of the squared coordinates.
    ElementarySquares(usize),
    /// Product of the coordinates.
    Euler,
    /// A single coordinate.
    Coordinate,
}

/// One polynomial generator of `H^*(BG)`, living on the coordinates
/// `offset..offset + len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantGenerator {
    pub name: String,
    pub degree: u32,
    pub kind: InvariantKind,
    pub offset: usize,
    pub len: usize,
}

/// How a lifted invariant is written in the actual generators.
#[derive(Clone, Debug, PartialEq, Eq)]
enum LiftImage {
    Generator(usize),
    Zero,
    /// Minus the sum of the listed generators.
    NegatedSum(Vec<usize>),
}

/// `H^*(BG; Q)` as the Weyl invariants in the torus coordinates.
///
/// Coordinates are degree-2 variables with ids `0..coordinates`. `SU`-type
/// factors keep all `n` diagonal coordinates together with the relation that
/// they sum to zero.
#[derive(Clone, Debug)]
pub struct ClassifyingRing<S> {
    pub group: GroupSpec,
    pub coordinates: usize,
    pub relations: Vec<Vec<usize>>,
    pub generators: Vec<InvariantGenerator>,
    /// The generators as polynomials in the coordinates.
    pub polynomials: Vec<Element<S>>,
    lift: Vec<InvariantGenerator>,
    lift_images: Vec<LiftImage>,
}

impl<S: Scalar> ClassifyingRing<S> {
    pub fn new(group: &GroupSpec) -> Result<Self> {
        group.validate()?;
        let atoms = group.atoms();
        let suffix = |j: usize| if atoms.len() > 1 { format!("_{}", j + 1) } else { String::new() };
        let mut generators = Vec::new();
        let mut lift = Vec::new();
        let mut lift_images = Vec::new();
        let mut offset = 0;
        for (j, atom) in atoms.iter().enumerate() {
            let sfx = suffix(j);
            let n = atom.coordinates();
            let push = |gens: &mut Vec<InvariantGenerator>, name: String, degree, kind, off, len| {
                gens.push(InvariantGenerator { name, degree, kind, offset: off, len });
                gens.len() - 1
            };
            match atom {
                GroupSpec::SU(_) | GroupSpec::U(_) | GroupSpec::UTilde(_) => {
                    let special = matches!(atom, GroupSpec::SU(_));
                    for k in 1..=n {
                        lift.push(InvariantGenerator {
                            name: String::new(),
                            degree: 2 * k as u32,
                            kind: InvariantKind::Elementary(k),
                            offset,
                            len: n,
                        });
                        if special && k == 1 {
                            lift_images.push(LiftImage::Zero);
                        } else {
                            let id = push(
                                &mut generators,
                                format!("c{k}{sfx}"),
                                2 * k as u32,
                                InvariantKind::Elementary(k),
                                offset,
                                n,
                            );
                            lift_images.push(LiftImage::Generator(id));
                        }
                    }
                }
                GroupSpec::SUBlocks(blocks) => {
                    let mut first_classes = Vec::new();
                    let mut block_offset = offset;
                    for (b, &p) in blocks.iter().enumerate() {
                        let p = p as usize;
                        let last = b + 1 == blocks.len();
                        for k in 1..=p {
                            lift.push(InvariantGenerator {
                                name: String::new(),
                                degree: 2 * k as u32,
                                kind: InvariantKind::Elementary(k),
                                offset: block_offset,
                                len: p,
                            });
                            if last && k == 1 {
                                lift_images.push(LiftImage::NegatedSum(first_classes.clone()));
                            } else {
                                let id = push(
                                    &mut generators,
                                    format!("c{k}b{}{sfx}", b + 1),
                                    2 * k as u32,
                                    InvariantKind::Elementary(k),
                                    block_offset,
                                    p,
                                );
                                if k == 1 {
                                    first_classes.push(id);
                                }
                                lift_images.push(LiftImage::Generator(id));
                            }
                        }
                        block_offset += p;
                    }
                }
                GroupSpec::Sp(_) | GroupSpec::SO(_) => {
                    let even_so = matches!(atom, GroupSpec::SO(m) if m % 2 == 0);
                    let squares = if even_so { n.saturating_sub(1) } else { n };
                    for k in 1..=squares {
                        let kind = InvariantKind::ElementarySquares(k);
                        lift.push(InvariantGenerator { name: String::new(), degree: 4 * k as u32, kind, offset, len: n });
                        let id = push(&mut generators, format!("p{k}{sfx}"), 4 * k as u32, kind, offset, n);
                        lift_images.push(LiftImage::Generator(id));
                    }
                    if even_so {
                        let kind = InvariantKind::Euler;
                        lift.push(InvariantGenerator { name: String::new(), degree: 2 * n as u32, kind, offset, len: n });
                        let id = push(&mut generators, format!("eu{sfx}"), 2 * n as u32, kind, offset, n);
                        lift_images.push(LiftImage::Generator(id));
                    }
                }
                GroupSpec::Torus(_) => {
                    for i in 0..n {
                        let kind = InvariantKind::Coordinate;
                        lift.push(InvariantGenerator { name: String::new(), degree: 2, kind, offset: offset + i, len: 1 });
                        let id = push(&mut generators, format!("t{}{sfx}", i + 1), 2, kind, offset + i, 1);
                        lift_images.push(LiftImage::Generator(id));
                    }
                }
                GroupSpec::Product(_) => unreachable!("atoms are not products"),
            }
            offset += n;
        }
        let coordinates = group.coordinates();
        let coords: Vec<Element<S>> = (0..coordinates as u32).map(|i| Element::generator(i, 2)).collect();
        let polynomials = evaluate(&generators, &coords);
        Ok(ClassifyingRing {
            group: group.clone(),
            coordinates,
            relations: group.relations(),
            generators,
            polynomials,
            lift,
            lift_images,
        })
    }

    /// Evaluates every generator on the given linear forms, one per
    /// coordinate of this group.
    pub fn evaluate_on(&self, forms: &[Element<S>]) -> Vec<Element<S>> {
        evaluate(&self.generators, forms)
    }

    /// Writes a Weyl-invariant polynomial in the coordinates as a polynomial
    /// in the generators (generator `j` has id `j`).
    pub fn express(&self, p: &Element<S>) -> Result<Element<S>> {
        let coords: Vec<Element<S>> = (0..self.coordinates as u32).map(|i| Element::generator(i, 2)).collect();
        let lift_polys = evaluate(&self.lift, &coords);
        let in_lift = express_in_invariants(p, &lift_polys)?;
        let gen = |id: usize| Element::generator(id as u32, self.generators[id].degree);
        Ok(in_lift.substitute(&|j| {
            Some(match &self.lift_images[j as usize] {
                LiftImage::Generator(id) => gen(*id),
                LiftImage::Zero => Element::zero(),
                LiftImage::NegatedSum(ids) => {
                    let mut s = Element::zero();
                    for &id in ids {
                        s -= &gen(id);
                    }
                    s
                }
            })
        }))
    }

    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }
}

fn evaluate<S: Scalar>(gens: &[InvariantGenerator], forms: &[Element<S>]) -> Vec<Element<S>> {
    // elementary symmetric functions are computed once per coordinate range
    let mut cache: Vec<((usize, usize, bool), Vec<Element<S>>)> = Vec::new();
    let mut table = |offset: usize, len: usize, squares: bool, k: usize| -> Element<S> {
        let key = (offset, len, squares);
        if let Some((_, v)) = cache.iter().find(|(kk, v)| *kk == key && v.len() > k) {
            return v[k].clone();
        }
        let vals: Vec<Element<S>> = forms[offset..offset + len]
            .iter()
            .map(|f| if squares { f * f } else { f.clone() })
            .collect();
        let all = elementary_symmetric_all(&vals, len);
        let out = all[k].clone();
        cache.push((key, all));
        out
    };
    gens.iter()
        .map(|g| match g.kind {
            InvariantKind::Elementary(k) => table(g.offset, g.len, false, k),
            InvariantKind::ElementarySquares(k) => table(g.offset, g.len, true, k),
            InvariantKind::Euler => forms[g.offset..g.offset + g.len].iter().fold(Element::one(), |acc, f| &acc * f),
            InvariantKind::Coordinate => forms[g.offset].clone(),
        })
        .collect()
}
