//! The generator file format: a header line `degree=<D> rank=<R>
//! family=<name>` followed by one permutation per line in cycle notation.
//! This is the wire format `construct` writes and `verify` reads back.

use std::fmt::Write as _;

use thiserror::Error;

use crate::families::{CStringCandidate, Family, FamilyError};
use crate::perm::PermError;
use crate::perm::Permutation;

/// Errors from reading a generator file.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenFileError {
    #[error("the file is empty")]
    Empty,
    #[error("the header must read `degree=<D> rank=<R> family=<name>`, got {0:?}")]
    BadHeader(String),
    #[error("the degree must be even (permutations act on {{1..2n}}), got {0}")]
    OddDegree(usize),
    #[error("the header declares rank {declared} but the file holds {found} permutations")]
    RankMismatch { declared: usize, found: usize },
    #[error("line {line}: {source}")]
    BadPermutation { line: usize, source: PermError },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Renders a candidate in the generator file format. The permutations are
/// printed in canonical cycle form, so equal candidates render identically.
pub fn write_candidate(candidate: &CStringCandidate) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "degree={} rank={} family={}",
        candidate.degree(),
        candidate.rank,
        candidate.family
    )
    .expect("writing to a string cannot fail");
    for gen in &candidate.generators {
        writeln!(out, "{}", gen.format_cycles()).expect("writing to a string cannot fail");
    }
    out
}

/// Parses a generator file back into a candidate, re-running all the
/// involution and string-condition checks. Blank lines are ignored.
pub fn parse_candidate(text: &str) -> Result<CStringCandidate, GenFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or(GenFileError::Empty)?;
    let (degree, rank, family) = parse_header(header)?;
    if degree % 2 != 0 {
        return Err(GenFileError::OddDegree(degree));
    }
    let mut generators = Vec::new();
    for (line, text) in lines {
        let perm = Permutation::parse_cycles(text, degree)
            .map_err(|source| GenFileError::BadPermutation { line, source })?;
        generators.push(perm);
    }
    if generators.len() != rank {
        return Err(GenFileError::RankMismatch {
            declared: rank,
            found: generators.len(),
        });
    }
    Ok(CStringCandidate::new(family, degree / 2, generators)?)
}

fn parse_header(header: &str) -> Result<(usize, usize, Family), GenFileError> {
    let bad = || GenFileError::BadHeader(header.to_owned());
    let mut degree = None;
    let mut rank = None;
    let mut family = None;
    for token in header.split_whitespace() {
        let (key, value) = token.split_once('=').ok_or_else(bad)?;
        match key {
            "degree" => degree = Some(value.parse::<usize>().map_err(|_| bad())?),
            "rank" => rank = Some(value.parse::<usize>().map_err(|_| bad())?),
            "family" => family = Some(value.parse::<Family>().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
    }
    match (degree, rank, family) {
        (Some(d), Some(r), Some(f)) => Ok((d, r, f)),
        _ => Err(bad()),
    }
}
