//! Text descriptors such as `SU(6)/(SU(3)xSU(3))` or `U(3)//T(3)`.
//!
//! ```text
//! space   := group "/" group | group "//" group
//! group   := term (("x" | "×" | "*") term)*
//! term    := atom | "(" group ")"
//! atom    := ("SU" | "SO" | "Sp" | "U" | "Ut" | "T") "(" n ")"
//!          | "S(" "U(" n ")" ("x" "U(" n ")")* ")"
//! ```
//! Whitespace is ignored.

use std::fmt;

use crate::error::{Error, Result};
use crate::lie::{GroupSpec, SpecialEmbedding, TorusEmbedding};
use crate::models::parenthesize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Homogeneous,
    Biquotient,
}

/// How the denominator sits inside the numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum EmbeddingChoice {
    #[default]
    Blockwise,
    Special(SpecialEmbedding),
    /// Torus matrix for `H → G`.
    Matrix(Vec<Vec<i64>>),
    /// Left and right torus matrices for `K → G × G`.
    Matrices(Vec<Vec<i64>>, Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceDescriptor {
    pub numerator: GroupSpec,
    pub denominator: GroupSpec,
    pub kind: SpaceKind,
    pub embedding: EmbeddingChoice,
}

/// A descriptor with its embeddings worked out.
#[derive(Clone, Debug, PartialEq)]
pub enum ResolvedSpace {
    Homogeneous { g: GroupSpec, h: GroupSpec, embedding: TorusEmbedding },
    Biquotient { g: GroupSpec, k: GroupSpec, left: TorusEmbedding, right: TorusEmbedding },
}

impl SpaceDescriptor {
    pub fn homogeneous(numerator: GroupSpec, denominator: GroupSpec) -> Self {
        SpaceDescriptor { numerator, denominator, kind: SpaceKind::Homogeneous, embedding: EmbeddingChoice::Blockwise }
    }

    pub fn with_embedding(mut self, embedding: EmbeddingChoice) -> Self {
        self.embedding = embedding;
        self
    }

    /// `dim G - dim H`.
    pub fn dimension(&self) -> i64 {
        self.numerator.dimension() as i64 - self.denominator.dimension() as i64
    }

    /// Text that determines the space completely, embedding included.
    pub fn canonical_key(&self) -> String {
        let emb = match &self.embedding {
            EmbeddingChoice::Blockwise => "blockwise".to_string(),
            EmbeddingChoice::Special(s) => format!("{s:?}"),
            EmbeddingChoice::Matrix(m) => format!("matrix{m:?}"),
            EmbeddingChoice::Matrices(l, r) => format!("matrices{l:?}{r:?}"),
        };
        format!("{self}|{emb}")
    }

    pub fn resolve(&self) -> Result<ResolvedSpace> {
        let (g, h) = (&self.numerator, &self.denominator);
        g.validate()?;
        h.validate()?;
        let single = |kind: &EmbeddingChoice| -> Result<TorusEmbedding> {
            match kind {
                EmbeddingChoice::Blockwise => TorusEmbedding::blockwise(h, g),
                EmbeddingChoice::Special(s) => {
                    let e = TorusEmbedding::special(*s)?;
                    if &e.source != h || &e.target != g {
                        return Err(Error::EmbeddingMismatch(format!(
                            "{s:?} embeds {} into {}, not {h} into {g}",
                            e.source, e.target
                        )));
                    }
                    Ok(e)
                }
                EmbeddingChoice::Matrix(m) => TorusEmbedding::new(h.clone(), g.clone(), m.clone()),
                EmbeddingChoice::Matrices(..) => {
                    Err(Error::EmbeddingMismatch("two matrices given for a homogeneous space".into()))
                }
            }
        };
        match self.kind {
            SpaceKind::Homogeneous => Ok(ResolvedSpace::Homogeneous { g: g.clone(), h: h.clone(), embedding: single(&self.embedding)? }),
            SpaceKind::Biquotient => {
                let (left, right) = match &self.embedding {
                    EmbeddingChoice::Matrices(l, r) => (
                        TorusEmbedding::new(h.clone(), g.clone(), l.clone())?,
                        TorusEmbedding::new(h.clone(), g.clone(), r.clone())?,
                    ),
                    other => {
                        let zero = vec![vec![0; h.coordinates()]; g.coordinates()];
                        (single(other)?, TorusEmbedding::new(h.clone(), g.clone(), zero)?)
                    }
                };
                Ok(ResolvedSpace::Biquotient { g: g.clone(), k: h.clone(), left, right })
            }
        }
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = match self.kind {
            SpaceKind::Homogeneous => "/",
            SpaceKind::Biquotient => "//",
        };
        write!(f, "{}{sep}{}", parenthesize(&self.numerator), parenthesize(&self.denominator))
    }
}

impl std::str::FromStr for SpaceDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Parses a space descriptor.
pub fn parse(input: &str) -> Result<SpaceDescriptor> {
    let mut p = Parser::new(input);
    let numerator = p.group()?;
    let kind = if p.eat("//") {
        SpaceKind::Biquotient
    } else if p.eat("/") {
        SpaceKind::Homogeneous
    } else {
        return Err(p.error("'/' or '//'"));
    };
    let denominator = p.group()?;
    if !p.at_end() {
        return Err(p.error("end of input"));
    }
    numerator.validate()?;
    denominator.validate()?;
    Ok(SpaceDescriptor { numerator, denominator, kind, embedding: EmbeddingChoice::Blockwise })
}

/// Parses a group expression on its own.
pub fn parse_group(input: &str) -> Result<GroupSpec> {
    let mut p = Parser::new(input);
    let g = p.group()?;
    if !p.at_end() {
        return Err(p.error("end of input"));
    }
    g.validate()?;
    Ok(g)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn new(input: &str) -> Self {
        let chars: Vec<(usize, char)> = input.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, pos: 0, len: input.len() }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |c| c.0)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn error(&self, expected: &str) -> Error {
        let found = if self.at_end() {
            "end of input".to_string()
        } else {
            let rest: String = self.chars[self.pos..].iter().take(8).map(|c| c.1).collect();
            format!("'{rest}'")
        };
        Error::Parse { offset: self.offset(), expected: expected.to_string(), found }
    }

    fn eat(&mut self, s: &str) -> bool {
        let want: Vec<char> = s.chars().collect();
        let have: Vec<char> = self.chars[self.pos..].iter().take(want.len()).map(|c| c.1).collect();
        if have == want {
            self.pos += want.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(&format!("'{s}'")))
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            v = v * 10 + c.to_digit(10).expect("digit") as u64;
            if v > u32::MAX as u64 {
                return Err(self.error("a smaller number"));
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("a number"));
        }
        Ok(v as u32)
    }

    fn separator(&mut self) -> bool {
        self.eat("x") || self.eat("×") || self.eat("*")
    }

    fn group(&mut self) -> Result<GroupSpec> {
        let mut parts = vec![self.term()?];
        while self.separator() {
            parts.push(self.term()?);
        }
        Ok(GroupSpec::product(parts))
    }

    fn term(&mut self) -> Result<GroupSpec> {
        if self.eat("(") {
            let g = self.group()?;
            self.expect(")")?;
            return Ok(g);
        }
        self.atom()
    }

    fn parenthesized_number(&mut self) -> Result<u32> {
        self.expect("(")?;
        let n = self.number()?;
        self.expect(")")?;
        Ok(n)
    }

    fn atom(&mut self) -> Result<GroupSpec> {
        if self.eat("SU") {
            return Ok(GroupSpec::SU(self.parenthesized_number()?));
        }
        if self.eat("SO") {
            return Ok(GroupSpec::SO(self.parenthesized_number()?));
        }
        if self.eat("Sp") {
            return Ok(GroupSpec::Sp(self.parenthesized_number()?));
        }
        if self.eat("S(") {
            let mut blocks = Vec::new();
            loop {
                self.expect("U")?;
                blocks.push(self.parenthesized_number()?);
                if !self.separator() {
                    break;
                }
            }
            self.expect(")")?;
            return Ok(GroupSpec::SUBlocks(blocks));
        }
        if self.eat("Ut") {
            return Ok(GroupSpec::UTilde(self.parenthesized_number()?));
        }
        if self.eat("U") {
            return Ok(GroupSpec::U(self.parenthesized_number()?));
        }
        if self.eat("T") {
            return Ok(GroupSpec::Torus(self.parenthesized_number()?));
        }
        Err(self.error("a group (SU, SO, Sp, U, Ut, T, S(U(..)x..) or a parenthesized product)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_renders() {
        let d = parse(" SU(6) / ( SU(3) x SU(3) ) ").unwrap();
        assert_eq!(d.to_string(), "SU(6)/(SU(3)xSU(3))");
        assert_eq!(d.dimension(), 19);
        let b = parse("U(3)//(T(1)xT(2))").unwrap();
        assert_eq!(b.kind, SpaceKind::Biquotient);
        let s = parse("SU(9)/(S(U(1)xU(1)xU(1))xSU(6))").unwrap();
        assert_eq!(s.to_string(), "SU(9)/(S(U(1)xU(1)xU(1))xSU(6))");
    }

    #[test]
    fn reports_offsets() {
        match parse("SU(6)/(SU(3)xQ(3))") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 13),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("SU(0)/SU(1)"), Err(Error::InvalidGroup(_))));
    }
}
