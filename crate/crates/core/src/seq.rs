//! Sequences over the four-letter RNA alphabet.
//!
//! Positions are 1-based everywhere in the public API, matching the usual
//! convention for writing a sequence as `s_1 s_2 ... s_n`. Internal storage
//! is a plain 0-based `Vec<Base>` and never leaks through the interface.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the four RNA nucleotides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Base {
    A,
    C,
    G,
    U,
}

impl Base {
    pub const ALL: [Base; 4] = [Base::A, Base::C, Base::G, Base::U];

    /// Watson-Crick complement: A<->U, C<->G.
    pub fn complement(self) -> Base {
        match self {
            Base::A => Base::U,
            Base::U => Base::A,
            Base::C => Base::G,
            Base::G => Base::C,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Base::A => 'A',
            Base::C => 'C',
            Base::G => 'G',
            Base::U => 'U',
        }
    }

    /// Index in 0..4 (A=0, C=1, G=2, U=3), used by pattern codes and censuses.
    pub fn index(self) -> usize {
        match self {
            Base::A => 0,
            Base::C => 1,
            Base::G => 2,
            Base::U => 3,
        }
    }

    pub fn from_index(idx: usize) -> Base {
        Base::ALL[idx]
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// True iff `{a, b}` is `{A, U}` or `{C, G}`. Wobble pairs (G-U) are not
/// admitted.
pub fn is_watson_crick(a: Base, b: Base) -> bool {
    a.complement() == b
}

/// A validated RNA sequence `s_1 s_2 ... s_n`.
///
/// Serializes as its plain string form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RnaSequence {
    bases: Vec<Base>,
}

impl Serialize for RnaSequence {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RnaSequence {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_sequence(&text).map_err(serde::de::Error::custom)
    }
}

impl RnaSequence {
    pub fn new(bases: Vec<Base>) -> Self {
        RnaSequence { bases }
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// Base at 1-based position `pos`; `None` when out of range.
    pub fn base(&self, pos: usize) -> Option<Base> {
        if pos == 0 {
            return None;
        }
        self.bases.get(pos - 1).copied()
    }

    /// Base at 1-based position `pos`; panics when out of range.
    pub fn at(&self, pos: usize) -> Base {
        self.bases[pos - 1]
    }

    /// Underlying bases in order (0-based slice).
    pub fn as_slice(&self) -> &[Base] {
        &self.bases
    }

    /// The window `s_pos .. s_{pos+len-1}` (1-based, inclusive start).
    pub fn window(&self, pos: usize, len: usize) -> &[Base] {
        &self.bases[pos - 1..pos - 1 + len]
    }
}

impl fmt::Display for RnaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bases {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for RnaSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_sequence(s)
    }
}

/// Parse a sequence from text.
///
/// Accepts `A`, `C`, `G`, `U` and `T` case-insensitively; `T` is read as `U`
/// so DNA-alphabet inputs work unchanged. Whitespace is skipped. Any other
/// character is rejected with its 1-based position in the raw text.
///
/// ```
/// use stackfold::seq::parse_sequence;
/// assert_eq!(parse_sequence("acgt").unwrap().to_string(), "ACGU");
/// assert!(parse_sequence("ACXU").is_err());
/// ```
pub fn parse_sequence(text: &str) -> Result<RnaSequence> {
    let mut bases = Vec::with_capacity(text.len());
    for (idx, ch) in text.chars().enumerate() {
        if ch.is_whitespace() {
            continue;
        }
        let base = match ch.to_ascii_uppercase() {
            'A' => Base::A,
            'C' => Base::C,
            'G' => Base::G,
            'U' | 'T' => Base::U,
            other => {
                return Err(Error::InvalidBase {
                    position: idx + 1,
                    found: other,
                })
            }
        };
        bases.push(base);
    }
    Ok(RnaSequence::new(bases))
}

/// Reverse complement. Applying it twice is the identity, and a window of a
/// sequence ladder-pairs perfectly exactly with a window carrying its
/// conjugate.
pub fn conjugate(seq: &RnaSequence) -> RnaSequence {
    RnaSequence::new(conjugate_bases(seq.as_slice()))
}

/// Reverse complement of a raw base slice.
pub fn conjugate_bases(bases: &[Base]) -> Vec<Base> {
    bases.iter().rev().map(|b| b.complement()).collect()
}

/// Occurrence counts for the 16 ordered two-letter patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    /// Indexed by `first.index() * 4 + second.index()`.
    counts: [u64; 16],
}

impl Census {
    pub fn zero() -> Self {
        Census { counts: [0; 16] }
    }

    pub fn get(&self, first: Base, second: Base) -> u64 {
        self.counts[first.index() * 4 + second.index()]
    }

    pub fn set(&mut self, first: Base, second: Base, count: u64) {
        self.counts[first.index() * 4 + second.index()] = count;
    }

    pub fn add(&mut self, first: Base, second: Base, count: u64) {
        self.counts[first.index() * 4 + second.index()] += count;
    }

    /// Total over all 16 patterns; equals `n - 1` for a census of a
    /// length-`n` sequence (`n >= 1`).
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// All 16 patterns with their counts, in lexicographic pattern order.
    pub fn entries(&self) -> impl Iterator<Item = ((Base, Base), u64)> + '_ {
        Base::ALL
            .iter()
            .flat_map(move |&a| Base::ALL.iter().map(move |&b| ((a, b), self.get(a, b))))
    }
}

/// Count every adjacent two-letter pattern of `seq`.
pub fn census(seq: &RnaSequence) -> Census {
    let mut c = Census::zero();
    for w in seq.as_slice().windows(2) {
        c.add(w[0], w[1], 1);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_identity() {
        let s = parse_sequence("ACGU").unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.as_slice(), &[Base::A, Base::C, Base::G, Base::U]);
    }

    #[test]
    fn parse_normalizes_case_and_t() {
        assert_eq!(parse_sequence("acgt").unwrap().to_string(), "ACGU");
        assert_eq!(parse_sequence("tTuU").unwrap().to_string(), "UUUU");
    }

    #[test]
    fn parse_skips_whitespace() {
        assert_eq!(parse_sequence("AC GU\n").unwrap().to_string(), "ACGU");
    }

    #[test]
    fn parse_rejects_bad_character() {
        let err = parse_sequence("ACXU").unwrap_err();
        assert_eq!(
            err,
            Error::InvalidBase {
                position: 3,
                found: 'X'
            }
        );
    }

    #[test]
    fn watson_crick_table() {
        assert!(is_watson_crick(Base::A, Base::U));
        assert!(is_watson_crick(Base::U, Base::A));
        assert!(is_watson_crick(Base::C, Base::G));
        assert!(is_watson_crick(Base::G, Base::C));
        assert!(!is_watson_crick(Base::G, Base::U));
        assert!(!is_watson_crick(Base::A, Base::A));
        assert!(!is_watson_crick(Base::A, Base::C));
    }

    #[test]
    fn conjugate_examples() {
        let aa = parse_sequence("AA").unwrap();
        assert_eq!(conjugate(&aa).to_string(), "UU");
        let ua = parse_sequence("UA").unwrap();
        assert_eq!(conjugate(&ua).to_string(), "UA");
        let empty = parse_sequence("").unwrap();
        assert_eq!(conjugate(&empty).to_string(), "");
    }

    #[test]
    fn census_direct_count() {
        let s = parse_sequence("GGAACC").unwrap();
        let c = census(&s);
        assert_eq!(c.get(Base::G, Base::G), 1);
        assert_eq!(c.get(Base::G, Base::A), 1);
        assert_eq!(c.get(Base::A, Base::A), 1);
        assert_eq!(c.get(Base::A, Base::C), 1);
        assert_eq!(c.get(Base::C, Base::C), 1);
        assert_eq!(c.total(), 5);
    }

    #[test]
    fn census_degenerate() {
        assert_eq!(census(&parse_sequence("").unwrap()).total(), 0);
        assert_eq!(census(&parse_sequence("G").unwrap()).total(), 0);
    }
}
