//! The `--embedding` argument: a named rule or a matrix file.

use std::fs;

use hsformal::descriptor::{EmbeddingChoice, SpaceDescriptor, SpaceKind};
use hsformal::lie::{GroupSpec, SpecialEmbedding};
use hsformal::Error;

/// Named rules; their size parameters are read off the denominator.
pub const RULES: [&str; 5] = ["blockwise", "sp-in-su", "so-in-su", "ut-in-so", "circle-splitting"];

pub fn apply(desc: SpaceDescriptor, arg: Option<&str>) -> Result<SpaceDescriptor, Error> {
    let Some(arg) = arg else { return Ok(desc) };
    let choice = match arg {
        "blockwise" => EmbeddingChoice::Blockwise,
        "sp-in-su" | "so-in-su" | "ut-in-so" | "circle-splitting" => {
            EmbeddingChoice::Special(named(arg, &desc.denominator)?)
        }
        path => from_file(path, desc.kind)?,
    };
    Ok(desc.with_embedding(choice))
}

fn named(rule: &str, h: &GroupSpec) -> Result<SpecialEmbedding, Error> {
    let found = match (rule, h) {
        ("sp-in-su", GroupSpec::Sp(n)) => Some(SpecialEmbedding::SymplecticInUnitary(*n)),
        ("so-in-su", GroupSpec::SO(n)) => Some(SpecialEmbedding::OrthogonalInUnitary(*n)),
        ("ut-in-so", GroupSpec::UTilde(n)) => Some(SpecialEmbedding::TwistedUnitaryInOrthogonal(*n)),
        ("circle-splitting", GroupSpec::Product(parts)) => match parts.as_slice() {
            [GroupSpec::Torus(1), GroupSpec::SU(a), GroupSpec::SU(b)] => Some(SpecialEmbedding::CircleSplitting(*a, *b)),
            _ => None,
        },
        _ => None,
    };
    found.ok_or_else(|| Error::EmbeddingMismatch(format!("rule {rule} does not apply to the subgroup {h}")))
}

/// Whitespace-separated integer rows, one per target coordinate. Lines
/// starting with `#` are skipped. For a biquotient a blank line separates
/// the left matrix from the right one; without it the right map is zero.
fn from_file(path: &str, kind: SpaceKind) -> Result<EmbeddingChoice, Error> {
    let text = fs::read_to_string(path).map_err(|e| {
        Error::InvalidParameters(format!("'{path}' is neither a rule ({}) nor a readable file: {e}", RULES.join(", ")))
    })?;
    let blocks = parse_matrices(&text)?;
    match (kind, blocks.len()) {
        (_, 1) => Ok(EmbeddingChoice::Matrix(blocks.into_iter().next().expect("one block"))),
        (SpaceKind::Biquotient, 2) => {
            let mut it = blocks.into_iter();
            Ok(EmbeddingChoice::Matrices(it.next().expect("left"), it.next().expect("right")))
        }
        (_, n) => Err(Error::InvalidParameters(format!("{path} holds {n} matrices"))),
    }
}

pub fn parse_matrices(text: &str) -> Result<Vec<Vec<Vec<i64>>>, Error> {
    let mut blocks = vec![Vec::new()];
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !blocks.last().expect("nonempty").is_empty() {
                blocks.push(Vec::new());
            }
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidParameters(format!("matrix line {}: {e}", no + 1)))?;
        blocks.last_mut().expect("nonempty").push(row);
    }
    if blocks.last().is_some_and(Vec::is_empty) {
        blocks.pop();
    }
    if blocks.is_empty() {
        return Err(Error::InvalidParameters("empty matrix file".into()));
    }
    Ok(blocks)
}
