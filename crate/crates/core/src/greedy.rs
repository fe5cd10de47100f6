//! Greedy construction of disjoint stacking-pair ladders — a linear-time
//! 1/3-approximation of the general (pseudoknot-allowing) optimum.
//!
//! With `width = i`, the fold runs phases `k = i, i-1, ..., 2, 1`. Each
//! phase repeatedly selects a ladder of exactly `k` consecutive stacking
//! pairs formed entirely by unmarked bases, then marks all `2(k + 1)` of its
//! bases. Selection is deterministic: smallest left-window start `p`, then
//! smallest right-window end `q`.
//!
//! The fast path indexes, for every window length `L = 2..=width+1`, the
//! start positions of every `L`-letter pattern. A ladder of `k` stacking
//! pairs is a window whose conjugate occurs far enough to its right, so each
//! phase is a left-to-right scan that consumes index entries through
//! per-pattern cursors. An entry is visited at most twice (once when
//! selected, once more when its now-marked window is discarded), which keeps
//! each phase linear for fixed `width`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::seq::{Base, RnaSequence};
use crate::structure::{StackRun, MIN_PAIR_SEP};

/// Largest supported `width`; beyond this the pattern space is pointless
/// for four-letter sequences of any realistic length.
pub const MAX_WIDTH: usize = 30;

/// Window lengths up to this use direct-addressed tables (`4^L` slots).
const DIRECT_LEN_LIMIT: usize = 8;

/// Number of consecutive stacking pairs sought by the first phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreedyConfig {
    width: usize,
}

impl GreedyConfig {
    /// `width >= 3`; the approximation ratio argument needs at least 3.
    pub fn new(width: usize) -> Result<GreedyConfig> {
        if width < 3 {
            return Err(Error::WidthTooSmall { width });
        }
        if width > MAX_WIDTH {
            return Err(Error::WidthTooLarge {
                width,
                max: MAX_WIDTH,
            });
        }
        Ok(GreedyConfig { width })
    }

    pub fn width(&self) -> usize {
        self.width
    }
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig { width: 3 }
    }
}

/// Per-position marks. Once marked, a position stays marked. A
/// path-compressed successor array answers "next unmarked position at or
/// after x" in amortized near-constant time.
#[derive(Debug, Clone)]
pub struct MarkSet {
    marked: Vec<bool>,
    next_free: Vec<u32>,
}

impl MarkSet {
    pub fn new(n: usize) -> MarkSet {
        MarkSet {
            marked: vec![false; n + 2],
            next_free: (0..n as u32 + 2).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.marked.len() - 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_marked(&self, pos: usize) -> bool {
        self.marked[pos]
    }

    pub fn mark(&mut self, pos: usize) {
        self.marked[pos] = true;
        self.next_free[pos] = pos as u32 + 1;
    }

    /// Smallest unmarked position `>= pos`, or `None` past the end.
    pub fn next_unmarked(&mut self, pos: usize) -> Option<usize> {
        let n = self.len();
        if pos > n {
            return None;
        }
        let mut root = pos;
        while self.next_free[root] != root as u32 {
            root = self.next_free[root] as usize;
        }
        // Path compression.
        let mut cur = pos;
        while self.next_free[cur] != root as u32 {
            let nxt = self.next_free[cur] as usize;
            self.next_free[cur] = root as u32;
            cur = nxt;
        }
        (root <= n).then_some(root)
    }

    /// True iff positions `p ..= p+len-1` are all unmarked.
    fn window_unmarked(&self, p: usize, len: usize) -> bool {
        self.marked[p..p + len].iter().all(|&m| !m)
    }

    /// Largest marked position within `p ..= p+len-1`, if any.
    fn last_marked_in(&self, p: usize, len: usize) -> Option<usize> {
        (p..p + len).rev().find(|&pos| self.marked[pos])
    }
}

fn window_code(window: &[Base]) -> u64 {
    window
        .iter()
        .fold(0u64, |acc, b| (acc << 2) | b.index() as u64)
}

fn conj_window_code(window: &[Base]) -> u64 {
    window
        .iter()
        .rev()
        .fold(0u64, |acc, b| (acc << 2) | b.complement().index() as u64)
}

enum LengthIndex {
    Direct(Vec<Vec<u32>>),
    Sparse(HashMap<u64, Vec<u32>>),
}

impl LengthIndex {
    fn occurrences(&self, code: u64) -> &[u32] {
        match self {
            LengthIndex::Direct(t) => &t[code as usize],
            LengthIndex::Sparse(m) => m.get(&code).map(Vec::as_slice).unwrap_or(&[]),
        }
    }
}

/// For each window length `L = 2..=max_len`, the ascending start positions
/// of every `L`-letter pattern occurring in the sequence.
pub struct OccurrenceIndex {
    max_len: usize,
    tables: Vec<LengthIndex>,
}

impl OccurrenceIndex {
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Ascending 1-based start positions of `pattern` (length `2..=max_len`).
    pub fn occurrences(&self, pattern: &[Base]) -> &[u32] {
        let len = pattern.len();
        assert!(
            (2..=self.max_len).contains(&len),
            "pattern length {len} outside indexed range"
        );
        self.tables[len - 2].occurrences(window_code(pattern))
    }

    fn occurrences_by_code(&self, len: usize, code: u64) -> &[u32] {
        self.tables[len - 2].occurrences(code)
    }
}

/// Index every window of length `2..=max_len`; one pass per length.
pub fn build_index(seq: &RnaSequence, max_len: usize) -> Result<OccurrenceIndex> {
    if max_len < 2 {
        return Err(Error::WindowTooShort { len: max_len });
    }
    let s = seq.as_slice();
    let n = s.len();
    let mut tables = Vec::with_capacity(max_len - 1);
    for len in 2..=max_len {
        let mut table = if len <= DIRECT_LEN_LIMIT {
            LengthIndex::Direct(vec![Vec::new(); 1 << (2 * len)])
        } else {
            LengthIndex::Sparse(HashMap::new())
        };
        if n >= len {
            let mask = (1u64 << (2 * len)) - 1;
            let mut code = 0u64;
            for (idx, b) in s.iter().enumerate() {
                code = ((code << 2) | b.index() as u64) & mask;
                if idx + 1 >= len {
                    let start = (idx + 2 - len) as u32;
                    match &mut table {
                        LengthIndex::Direct(t) => t[code as usize].push(start),
                        LengthIndex::Sparse(m) => m.entry(code).or_default().push(start),
                    }
                }
            }
        }
        tables.push(table);
    }
    Ok(OccurrenceIndex { max_len, tables })
}

/// Reference search: the leftmost ladder of exactly `k` stacking pairs
/// formed by unmarked bases (smallest `p`, then smallest `q`), or `None`.
///
/// Quadratic; the fold below reproduces its selections in linear total time.
pub fn find_run(seq: &RnaSequence, k: usize, marks: &MarkSet) -> Option<StackRun> {
    assert!(k >= 1, "run length must be at least 1");
    let n = seq.len();
    let len = k + 1;
    if n < 2 * len + MIN_PAIR_SEP - 1 {
        return None;
    }
    for p in 1..=n - 2 * k - MIN_PAIR_SEP {
        if !marks.window_unmarked(p, len) {
            continue;
        }
        let target = conj_window_code(seq.window(p, len));
        for r in p + k + MIN_PAIR_SEP..=n - k {
            if marks.window_unmarked(r, len) && window_code(seq.window(r, len)) == target {
                return Some(StackRun {
                    p,
                    q: r + k,
                    len: k,
                });
            }
        }
    }
    None
}

/// The ladders selected by a fold, in selection order, and their total
/// number of stacking pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyResult {
    pub runs: Vec<StackRun>,
    pub total: usize,
}

/// Run the full greedy fold on `seq`.
///
/// ```
/// use stackfold::greedy::{greedy_fold, GreedyConfig};
/// use stackfold::seq::parse_sequence;
/// let seq = parse_sequence("GGGGAAACCCC").unwrap();
/// let result = greedy_fold(&seq, &GreedyConfig::new(3).unwrap());
/// assert_eq!(result.total, 3);
/// ```
pub fn greedy_fold(seq: &RnaSequence, cfg: &GreedyConfig) -> GreedyResult {
    let n = seq.len();
    let mut marks = MarkSet::new(n);
    let mut runs = Vec::new();
    if n > 2 + MIN_PAIR_SEP {
        let index =
            build_index(seq, (cfg.width + 1).min(n.max(2))).expect("window length is at least 2");
        for k in (1..=cfg.width).rev() {
            phase(seq, &index, k, &mut marks, &mut runs);
        }
    }
    let total = runs.iter().map(|r| r.len).sum();
    GreedyResult { runs, total }
}

/// One phase: repeatedly select the smallest-(p, q) ladder of exactly `k`
/// stacking pairs over unmarked bases.
fn phase(
    seq: &RnaSequence,
    index: &OccurrenceIndex,
    k: usize,
    marks: &mut MarkSet,
    runs: &mut Vec<StackRun>,
) {
    let n = seq.len();
    let len = k + 1;
    if len > index.max_len() || n < 2 * len + MIN_PAIR_SEP - 1 {
        return;
    }
    let p_max = n - 2 * k - MIN_PAIR_SEP;

    // One cursor per pattern of this length. Cursors only move forward:
    // entries behind a cursor are below some earlier threshold (thresholds
    // grow with p) or had a marked window (marks are permanent), so they can
    // never become selectable again within this phase.
    let mut cursors: HashMap<u64, usize> = HashMap::new();

    let mut p = 1;
    while p <= p_max {
        p = match marks.next_unmarked(p) {
            Some(pos) if pos <= p_max => pos,
            _ => break,
        };
        if let Some(last) = marks.last_marked_in(p, len) {
            p = last + 1;
            continue;
        }
        let target = conj_window_code(seq.window(p, len));
        let occ = index.occurrences_by_code(len, target);
        let cursor = cursors.entry(target).or_insert(0);
        let threshold = (p + k + MIN_PAIR_SEP) as u32;
        let mut found = None;
        while *cursor < occ.len() {
            let r = occ[*cursor];
            if r < threshold || !marks.window_unmarked(r as usize, len) {
                *cursor += 1;
                continue;
            }
            found = Some(r as usize);
            break;
        }
        match found {
            Some(r) => {
                let run = StackRun {
                    p,
                    q: r + k,
                    len: k,
                };
                for pos in run.positions() {
                    marks.mark(pos);
                }
                runs.push(run);
                // The left window is now marked; the scan advances past it
                // on the next iteration.
            }
            None => p += 1,
        }
    }
}
