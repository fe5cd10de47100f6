//! Base pairs, secondary structures, and ladders of consecutive stacking
//! pairs.
//!
//! A secondary structure is a set of Watson-Crick pairs `(i, j)` with
//! `i + 2 <= j` in which no position occurs twice. Two pairs `(i, j)` and
//! `(i+1, j-1)` that are both present form a *stacking pair*; runs of
//! consecutive stacking pairs are the only stabilizing unit counted by every
//! solver in this crate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::{is_watson_crick, RnaSequence};

/// Minimum separation between the endpoints of a pair: `i + MIN_PAIR_SEP <= j`.
///
/// Two is the weakest constraint that leaves a base between the endpoints;
/// the biological convention of three would only shrink the feasible set and
/// is not used here.
pub const MIN_PAIR_SEP: usize = 2;

/// One base pair, 1-based, with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasePair {
    pub i: usize,
    pub j: usize,
}

impl BasePair {
    /// Build a pair, enforcing `i + 2 <= j`. Watson-Crick validity depends
    /// on a sequence and is checked by [`SecondaryStructure::new`].
    pub fn new(i: usize, j: usize) -> Result<BasePair> {
        if i == 0 || i + MIN_PAIR_SEP > j {
            return Err(Error::PairTooClose {
                i,
                j,
                min_sep: MIN_PAIR_SEP,
            });
        }
        Ok(BasePair { i, j })
    }

    /// True iff this pair crosses `other`: one opens strictly inside the
    /// other and closes strictly outside it.
    pub fn crosses(&self, other: &BasePair) -> bool {
        let (a, b) = (self, other);
        (a.i < b.i && b.i < a.j && a.j < b.j) || (b.i < a.i && a.i < b.j && b.j < a.j)
    }
}

impl fmt::Display for BasePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// A validated secondary structure over a sequence of length `n`.
///
/// Pairs are stored sorted by left endpoint. The structure remembers only
/// the sequence length; Watson-Crick validity is established once at
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecondaryStructure {
    n: usize,
    pairs: Vec<BasePair>,
}

impl SecondaryStructure {
    /// Validate `pairs` against `seq`: bounds, separation, Watson-Crick
    /// complementarity, and base-disjointness.
    pub fn new(seq: &RnaSequence, pairs: impl IntoIterator<Item = BasePair>) -> Result<Self> {
        let n = seq.len();
        let mut list: Vec<BasePair> = pairs.into_iter().collect();
        list.sort();
        list.dedup();
        let mut used = vec![false; n + 1];
        for p in &list {
            if p.i == 0 || p.j > n {
                return Err(Error::PairOutOfBounds { i: p.i, j: p.j, n });
            }
            if p.i + MIN_PAIR_SEP > p.j {
                return Err(Error::PairTooClose {
                    i: p.i,
                    j: p.j,
                    min_sep: MIN_PAIR_SEP,
                });
            }
            let (a, b) = (seq.at(p.i), seq.at(p.j));
            if !is_watson_crick(a, b) {
                return Err(Error::NotComplementary {
                    i: p.i,
                    j: p.j,
                    a,
                    b,
                });
            }
            for pos in [p.i, p.j] {
                if used[pos] {
                    return Err(Error::SharedBase { position: pos });
                }
                used[pos] = true;
            }
        }
        Ok(SecondaryStructure { n, pairs: list })
    }

    /// An empty structure over a sequence of length `n`.
    pub fn empty(n: usize) -> Self {
        SecondaryStructure {
            n,
            pairs: Vec::new(),
        }
    }

    pub fn seq_len(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[BasePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Partner table: `partner[pos] = Some(partner_of_pos)`, 1-based.
    pub fn partner_table(&self) -> Vec<Option<usize>> {
        let mut t = vec![None; self.n + 1];
        for p in &self.pairs {
            t[p.i] = Some(p.j);
            t[p.j] = Some(p.i);
        }
        t
    }

    /// Number of stacking pairs: positions `(i, j)` with both `(i, j)` and
    /// `(i+1, j-1)` present and `i + 4 <= j`.
    pub fn count_stacking_pairs(&self) -> usize {
        let t = self.partner_table();
        self.pairs
            .iter()
            .filter(|p| p.i + 4 <= p.j && t[p.i + 1] == Some(p.j - 1))
            .count()
    }

    /// The sub-structure keeping only pairs that participate in at least one
    /// stacking pair.
    pub fn stacking_only(&self) -> SecondaryStructure {
        let t = self.partner_table();
        let keep: Vec<BasePair> = self
            .pairs
            .iter()
            .copied()
            .filter(|p| {
                let outer = p.i >= 2 && p.j < self.n && t[p.i - 1] == Some(p.j + 1);
                let inner = p.i + 4 <= p.j && t[p.i + 1] == Some(p.j - 1);
                outer || inner
            })
            .collect();
        SecondaryStructure {
            n: self.n,
            pairs: keep,
        }
    }

    /// The outer pairs of all stacking pairs: each `(i, j)` such that
    /// `(i, j)` and `(i+1, j-1)` are both present.
    pub fn stacking_outer_pairs(&self) -> Vec<BasePair> {
        let t = self.partner_table();
        self.pairs
            .iter()
            .copied()
            .filter(|p| p.i + 4 <= p.j && t[p.i + 1] == Some(p.j - 1))
            .collect()
    }
}

/// Convenience free function mirroring [`SecondaryStructure::count_stacking_pairs`].
pub fn count_stacking_pairs(structure: &SecondaryStructure) -> usize {
    structure.count_stacking_pairs()
}

/// A ladder of `len >= 1` consecutive stacking pairs: the pairs
/// `(p + t, q - t)` for `t = 0..=len`, occupying positions `p..=p+len` and
/// `q-len..=q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackRun {
    /// Leftmost position of the left window.
    pub p: usize,
    /// Rightmost position of the right window.
    pub q: usize,
    /// Number of stacking pairs; the run holds `len + 1` base pairs.
    pub len: usize,
}

impl StackRun {
    /// Build a run, enforcing shape constraints (`len >= 1`, windows in
    /// order, and the innermost pair separated by at least one base).
    pub fn new(p: usize, q: usize, len: usize) -> Result<StackRun> {
        if len == 0 || p == 0 || q <= p || (q - len) < (p + len) + MIN_PAIR_SEP {
            return Err(Error::MalformedRun { p, q, len });
        }
        Ok(StackRun { p, q, len })
    }

    /// The base pairs `(p + t, q - t)` for `t = 0..=len`.
    pub fn pairs(&self) -> impl Iterator<Item = BasePair> + '_ {
        (0..=self.len).map(|t| BasePair {
            i: self.p + t,
            j: self.q - t,
        })
    }

    /// All `2 (len + 1)` positions occupied by the run.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        (self.p..=self.p + self.len).chain(self.q - self.len..=self.q)
    }
}

impl fmt::Display for StackRun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={}, len={})", self.p, self.q, self.len)
    }
}

/// Expand a list of runs into a validated structure. Fails if the runs
/// overlap or any expanded pair is invalid for `seq`. The stacking count of
/// the result is at least the sum of run lengths; abutting runs can only add
/// stacking pairs at their junctions.
pub fn runs_to_structure(seq: &RnaSequence, runs: &[StackRun]) -> Result<SecondaryStructure> {
    let mut seen = vec![false; seq.len() + 1];
    for run in runs {
        if run.q > seq.len() {
            return Err(Error::PairOutOfBounds {
                i: run.p,
                j: run.q,
                n: seq.len(),
            });
        }
        for pos in run.positions() {
            if seen[pos] {
                return Err(Error::SharedBase { position: pos });
            }
            seen[pos] = true;
        }
    }
    SecondaryStructure::new(seq, runs.iter().flat_map(|r| r.pairs()))
}

/// Parse the pair-list text format: one `i j` pair per line, 1-based, with
/// `#`-prefixed comment lines and blank lines ignored.
pub fn parse_pair_list(text: &str) -> Result<Vec<BasePair>> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (i, j) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => {
                let i: usize = a.parse().map_err(|_| {
                    Error::Format(format!("line {}: expected integer, got '{a}'", lineno + 1))
                })?;
                let j: usize = b.parse().map_err(|_| {
                    Error::Format(format!("line {}: expected integer, got '{b}'", lineno + 1))
                })?;
                (i, j)
            }
            _ => {
                return Err(Error::Format(format!(
                    "line {}: expected 'i j', got '{line}'",
                    lineno + 1
                )))
            }
        };
        pairs.push(BasePair::new(i, j)?);
    }
    pairs.sort();
    Ok(pairs)
}

/// Emit the pair-list text format, ascending by left endpoint.
pub fn format_pair_list(pairs: &[BasePair]) -> String {
    let mut sorted: Vec<BasePair> = pairs.to_vec();
    sorted.sort();
    let mut out = String::new();
    for p in sorted {
        out.push_str(&format!("{} {}\n", p.i, p.j));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::parse_sequence;

    fn structure(seq: &str, pairs: &[(usize, usize)]) -> SecondaryStructure {
        let s = parse_sequence(seq).unwrap();
        SecondaryStructure::new(&s, pairs.iter().map(|&(i, j)| BasePair { i, j })).unwrap()
    }

    /// Quadratic reference: check every ordered combination of two pairs for
    /// the adjacency relation.
    fn count_stacking_reference(st: &SecondaryStructure) -> usize {
        let mut count = 0;
        for a in st.pairs() {
            for b in st.pairs() {
                if b.i == a.i + 1 && b.j + 1 == a.j && a.i + 4 <= a.j {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn stacking_count_examples() {
        let st = structure("AAGUU", &[(1, 5), (2, 4)]);
        assert_eq!(st.count_stacking_pairs(), 1);
        assert_eq!(count_stacking_reference(&st), 1);

        let st = structure("GGGAAACCC", &[(1, 9), (2, 8), (3, 7)]);
        assert_eq!(st.count_stacking_pairs(), 2);
        assert_eq!(count_stacking_reference(&st), 2);

        let st = SecondaryStructure::empty(7);
        assert_eq!(st.count_stacking_pairs(), 0);
    }

    #[test]
    fn rejects_shared_base() {
        let s = parse_sequence("AAGUUU").unwrap();
        let err = SecondaryStructure::new(&s, [BasePair { i: 1, j: 5 }, BasePair { i: 1, j: 6 }])
            .unwrap_err();
        assert_eq!(err, Error::SharedBase { position: 1 });
    }

    #[test]
    fn rejects_non_complementary() {
        let s = parse_sequence("AAGGG").unwrap();
        assert!(matches!(
            SecondaryStructure::new(&s, [BasePair { i: 1, j: 5 }]),
            Err(Error::NotComplementary { .. })
        ));
    }

    #[test]
    fn rejects_too_close() {
        assert!(BasePair::new(3, 4).is_err());
        assert!(BasePair::new(3, 5).is_ok());
    }

    #[test]
    fn run_expansion() {
        let s = parse_sequence("AAGUU").unwrap();
        let run = StackRun::new(1, 5, 1).unwrap();
        let st = runs_to_structure(&s, &[run]).unwrap();
        assert_eq!(
            st.pairs(),
            &[BasePair { i: 1, j: 5 }, BasePair { i: 2, j: 4 }]
        );
        assert_eq!(st.count_stacking_pairs(), 1);

        let s = parse_sequence("GGGGAAACCCC").unwrap();
        let run = StackRun::new(1, 11, 3).unwrap();
        let st = runs_to_structure(&s, &[run]).unwrap();
        assert_eq!(
            st.pairs(),
            &[
                BasePair { i: 1, j: 11 },
                BasePair { i: 2, j: 10 },
                BasePair { i: 3, j: 9 },
                BasePair { i: 4, j: 8 },
            ]
        );
        assert_eq!(st.count_stacking_pairs(), 3);
    }

    #[test]
    fn empty_run_list() {
        let s = parse_sequence("AAGUU").unwrap();
        let st = runs_to_structure(&s, &[]).unwrap();
        assert!(st.is_empty());
    }

    #[test]
    fn overlapping_runs_rejected() {
        let s = parse_sequence("GGGGAAACCCC").unwrap();
        let a = StackRun::new(1, 11, 1).unwrap();
        let b = StackRun::new(2, 10, 1).unwrap();
        // a occupies {1,2,10,11}; b occupies {2,3,9,10}.
        assert!(matches!(
            runs_to_structure(&s, &[a, b]),
            Err(Error::SharedBase { .. })
        ));
    }

    #[test]
    fn run_shape_constraints() {
        // len 1 requires q >= p + 4.
        assert!(StackRun::new(1, 4, 1).is_err());
        assert!(StackRun::new(1, 5, 1).is_ok());
        // len 3 needs the innermost pair separated: q >= p + 8.
        assert!(StackRun::new(1, 8, 3).is_err());
        assert!(StackRun::new(1, 9, 3).is_ok());
        assert!(StackRun::new(1, 11, 0).is_err());
    }

    #[test]
    fn pair_list_round_trip() {
        let text = "# comment\n1 9\n2 8\n\n3 7\n";
        let pairs = parse_pair_list(text).unwrap();
        assert_eq!(pairs.len(), 3);
        let emitted = format_pair_list(&pairs);
        assert_eq!(parse_pair_list(&emitted).unwrap(), pairs);
        assert_eq!(emitted, "1 9\n2 8\n3 7\n");
    }

    #[test]
    fn pair_list_rejects_garbage() {
        assert!(parse_pair_list("1 2 3").is_err());
        assert!(parse_pair_list("a b").is_err());
        assert!(parse_pair_list("5 6").is_err()); // too close
    }
}
