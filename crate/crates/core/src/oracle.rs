//! Exponential-time exact solvers used as ground truth at small scale.
//!
//! A structure's stacking pairs decompose into maximal ladders, and a pair
//! belonging to no stacking pair can be dropped without changing the count,
//! so maximizing stacking pairs is the same as packing base-disjoint ladders
//! to maximize the sum of their lengths. The search below branches on the
//! leftmost still-available position: it either stays unused or becomes the
//! left end of a ladder. This is equivalent to per-position pair branching
//! but far smaller, and it makes the classic `available/2` upper bound on
//! the remaining gain sound (a ladder of `t` stacking pairs consumes
//! `2(t + 1)` bases). At an optimum the packing value equals the witness's
//! exact stacking count: abutting ladders would merge into a single longer
//! ladder and contradict maximality.
//!
//! Three feasibility modes: `General` (anything), `Nested` (no two ladders
//! cross), and `Planar` (the ladder crossing graph stays bipartite, which
//! matches the two-page test applied to the stacking-only structure).

use crate::error::{Error, Result};
use crate::seq::{is_watson_crick, RnaSequence};
use crate::structure::{runs_to_structure, SecondaryStructure, StackRun, MIN_PAIR_SEP};

/// Which family of structures the oracle searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    /// Arbitrary pseudoknots.
    General,
    /// Edgeless crossing graph.
    Nested,
    /// Bipartite crossing graph of the stacking-only structure.
    Planar,
}

impl OracleMode {
    /// Default sequence-length cap guarding against runaway search.
    pub fn default_limit(self) -> usize {
        match self {
            OracleMode::General | OracleMode::Nested => 18,
            OracleMode::Planar => 16,
        }
    }
}

/// Exact optimum plus a witness and search statistics.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub optimum: usize,
    pub witness: SecondaryStructure,
    /// Search-tree nodes visited.
    pub explored: u64,
}

/// Exact maximum of stacking pairs over all structures admissible in
/// `mode`. Refuses sequences longer than `limit` (default per mode).
pub fn exact_optimum(
    seq: &RnaSequence,
    mode: OracleMode,
    limit: Option<usize>,
) -> Result<OracleResult> {
    let limit = limit.unwrap_or_else(|| mode.default_limit());
    let n = seq.len();
    if n > limit {
        return Err(Error::SequenceTooLong { n, limit });
    }

    let by_start = candidate_runs(seq);
    let mut search = Search {
        mode,
        by_start,
        available: vec![true; n + 1],
        avail_count: n,
        selected: Vec::new(),
        current: 0,
        best: 0,
        best_runs: Vec::new(),
        explored: 0,
    };
    search.run(1);

    let witness = runs_to_structure(seq, &search.best_runs)
        .expect("selected runs are disjoint and valid by construction");
    debug_assert_eq!(witness.count_stacking_pairs(), search.best);
    Ok(OracleResult {
        optimum: search.best,
        witness,
        explored: search.explored,
    })
}

/// All ladders `(p, q, len)` valid for `seq`, grouped by `p`.
fn candidate_runs(seq: &RnaSequence) -> Vec<Vec<StackRun>> {
    let n = seq.len();
    let mut by_start = vec![Vec::new(); n + 1];
    let s = seq.as_slice();
    for p in 1..=n {
        let mut len = 1;
        // Windows [p, p+len] and [q-len, q] with one base of slack.
        while p + 2 * len + MIN_PAIR_SEP <= n {
            'q: for q in (p + 2 * len + MIN_PAIR_SEP)..=n {
                for t in 0..=len {
                    if !is_watson_crick(s[p + t - 1], s[q - t - 1]) {
                        continue 'q;
                    }
                }
                by_start[p].push(StackRun { p, q, len });
            }
            len += 1;
        }
    }
    by_start
}

struct Search {
    mode: OracleMode,
    by_start: Vec<Vec<StackRun>>,
    available: Vec<bool>,
    avail_count: usize,
    selected: Vec<StackRun>,
    current: usize,
    best: usize,
    best_runs: Vec<StackRun>,
    explored: u64,
}

impl Search {
    fn run(&mut self, from: usize) {
        self.explored += 1;
        // No further selection can beat the incumbent strictly.
        if self.current + self.avail_count / 2 <= self.best {
            return;
        }
        let n = self.available.len() - 1;
        let mut x = from;
        while x <= n && !self.available[x] {
            x += 1;
        }
        if x > n {
            return; // current >= best was already recorded below.
        }

        // Branch 1: some ladder starts exactly at x.
        let runs = std::mem::take(&mut self.by_start[x]);
        for run in &runs {
            if !run.positions().all(|pos| self.available[pos]) {
                continue;
            }
            if !self.admissible(run) {
                continue;
            }
            self.place(run, false);
            if self.current > self.best {
                self.best = self.current;
                self.best_runs = self.selected.clone();
            }
            self.run(x + 1);
            self.place(run, true);
        }
        self.by_start[x] = runs;

        // Branch 2: x stays unused.
        self.available[x] = false;
        self.avail_count -= 1;
        self.run(x + 1);
        self.available[x] = true;
        self.avail_count += 1;
    }

    fn place(&mut self, run: &StackRun, undo: bool) {
        for pos in run.positions() {
            self.available[pos] = undo;
        }
        if undo {
            self.avail_count += 2 * (run.len + 1);
            self.current -= run.len;
            self.selected.pop();
        } else {
            self.avail_count -= 2 * (run.len + 1);
            self.current += run.len;
            self.selected.push(*run);
        }
    }

    fn admissible(&self, run: &StackRun) -> bool {
        match self.mode {
            OracleMode::General => true,
            OracleMode::Nested => !self.selected.iter().any(|s| runs_cross(s, run)),
            OracleMode::Planar => {
                // Two-color the ladder crossing graph including the newcomer.
                let mut all: Vec<&StackRun> = self.selected.iter().collect();
                all.push(run);
                ladder_graph_bipartite(&all)
            }
        }
    }
}

/// Ladders with disjoint windows either fully cross (every pair of one
/// crosses every pair of the other) or not at all; the outermost arcs
/// decide.
fn runs_cross(a: &StackRun, b: &StackRun) -> bool {
    (a.p < b.p && b.p < a.q && a.q < b.q) || (b.p < a.p && a.p < b.q && b.q < a.q)
}

fn ladder_graph_bipartite(runs: &[&StackRun]) -> bool {
    let n = runs.len();
    let mut color = vec![-1i8; n];
    for start in 0..n {
        if color[start] != -1 {
            continue;
        }
        color[start] = 0;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if v == u || !runs_cross(runs[u], runs[v]) {
                    continue;
                }
                if color[v] == -1 {
                    color[v] = 1 - color[u];
                    stack.push(v);
                } else if color[v] == color[u] {
                    return false;
                }
            }
        }
    }
    true
}
