//! Exact maximization of stacking pairs over pseudoknot-free structures.
//!
//! Cubic-time dynamic program over two tables:
//!
//! - `V(i, j)`: maximum stacking pairs in `s_i..s_j` given that `(i, j)` is
//!   paired. Defined only where `s_i`, `s_j` are complementary and
//!   `i + 2 <= j`; other cells hold an "undefined" sentinel that no max
//!   expression ever selects.
//! - `W(i, j)`: maximum stacking pairs in `s_i..s_j`, unconstrained.
//!
//! Both are zero on the basis `j <= i + 3` (no window that short can host a
//! stacking pair).
//!
//! The textbook-style recurrence
//! `W(i,j) = max(V(i,j), W(i+1,j), W(i,j-1))` is not optimal: it cannot
//! place two helices side by side at the top level. On `AAGUUAAGUU` it
//! yields 1 while the true pseudoknot-free optimum is 2. The corrected
//! recurrence adds a concatenation branch
//! `max_{i <= k < j} W(i,k) + W(k+1,j)`, which subsumes the two shrink
//! branches and preserves the cubic total cost. [`Recurrence::Literal`]
//! keeps the uncorrected version around for comparison.

use crate::seq::{is_watson_crick, RnaSequence};
use crate::structure::{BasePair, SecondaryStructure};

/// Which `W` recurrence to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Recurrence {
    /// With the concatenation branch; computes the true nested optimum.
    #[default]
    Corrected,
    /// Without it; suboptimal on inputs needing top-level concatenation.
    Literal,
}

const UNDEF: i64 = i64::MIN;

/// Traceback choice for a `W` cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WChoice {
    /// Basis cell or empty optimum: no pairs in this window.
    Empty,
    /// Take `V(i, j)`: pair the window ends.
    Pair,
    /// Split into `W(i, k)` and `W(k+1, j)`.
    Split(usize),
    /// Drop `s_i` (literal recurrence only).
    DropLeft,
    /// Drop `s_j` (literal recurrence only).
    DropRight,
}

/// Traceback choice for a defined `V` cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VChoice {
    /// Basis cell: the pair `(i, j)` with nothing inside.
    Leaf,
    /// Pair `(i+1, j-1)` too, gaining one stacking pair.
    StackInner,
    /// `(i+1, j-1)` unpaired: split the interior at `k`.
    Split(usize),
}

/// Filled DP tables, exposed for testing and tracing.
pub struct DpTables {
    n: usize,
    recurrence: Recurrence,
    v: Vec<i64>,
    w: Vec<i64>,
    v_choice: Vec<u32>,
    w_choice: Vec<u32>,
}

const CHOICE_NONE: u32 = u32::MAX;
const CHOICE_PAIR: u32 = u32::MAX - 1;
const CHOICE_DROP_LEFT: u32 = u32::MAX - 2;
const CHOICE_DROP_RIGHT: u32 = u32::MAX - 3;

impl DpTables {
    fn idx(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.n + (j - 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn recurrence(&self) -> Recurrence {
        self.recurrence
    }

    /// `V(i, j)`, or `None` where the cell is undefined (ends not
    /// complementary, or `j < i + 2`).
    pub fn v(&self, i: usize, j: usize) -> Option<usize> {
        assert!(i >= 1 && i <= j && j <= self.n, "V({i},{j}) out of range");
        let val = self.v[self.idx(i, j)];
        (val != UNDEF).then_some(val as usize)
    }

    /// `W(i, j)`.
    pub fn w(&self, i: usize, j: usize) -> usize {
        assert!(i >= 1 && i <= j && j <= self.n, "W({i},{j}) out of range");
        self.w[self.idx(i, j)] as usize
    }

    pub fn w_choice(&self, i: usize, j: usize) -> WChoice {
        match self.w_choice[self.idx(i, j)] {
            CHOICE_NONE => WChoice::Empty,
            CHOICE_PAIR => WChoice::Pair,
            CHOICE_DROP_LEFT => WChoice::DropLeft,
            CHOICE_DROP_RIGHT => WChoice::DropRight,
            k => WChoice::Split(k as usize),
        }
    }

    pub fn v_choice(&self, i: usize, j: usize) -> VChoice {
        match self.v_choice[self.idx(i, j)] {
            CHOICE_NONE => VChoice::Leaf,
            CHOICE_PAIR => VChoice::StackInner,
            k => VChoice::Split(k as usize),
        }
    }
}

/// Fill the tables for `seq` under the given recurrence.
pub fn dp_tables(seq: &RnaSequence, recurrence: Recurrence) -> DpTables {
    let n = seq.len();
    let mut t = DpTables {
        n,
        recurrence,
        v: vec![UNDEF; n * n],
        w: vec![0; n * n],
        v_choice: vec![CHOICE_NONE; n * n],
        w_choice: vec![CHOICE_NONE; n * n],
    };
    if n == 0 {
        return t;
    }
    let s = seq.as_slice();
    let wc = |i: usize, j: usize| is_watson_crick(s[i - 1], s[j - 1]);

    // Basis: spans 1..=4 (j <= i + 3). W stays 0 with Empty choice; V is 0
    // where the pair is admissible.
    for i in 1..=n {
        for j in i..=n.min(i + 3) {
            if j >= i + 2 && wc(i, j) {
                let id = t.idx(i, j);
                t.v[id] = 0;
                // v_choice stays CHOICE_NONE: leaf pair.
            }
        }
    }

    for span in 5..=n {
        for i in 1..=n - span + 1 {
            let j = i + span - 1;
            let id = t.idx(i, j);

            // V(i, j): only defined where (i, j) itself is a legal pair.
            if wc(i, j) {
                let mut best = UNDEF;
                let mut choice = CHOICE_NONE;
                if wc(i + 1, j - 1) {
                    let inner = t.v[t.idx(i + 1, j - 1)];
                    debug_assert!(inner != UNDEF);
                    best = inner + 1;
                    choice = CHOICE_PAIR;
                }
                for k in i + 1..=j - 2 {
                    let cand = t.w[t.idx(i + 1, k)] + t.w[t.idx(k + 1, j - 1)];
                    if cand > best {
                        best = cand;
                        choice = k as u32;
                    }
                }
                t.v[id] = best;
                t.v_choice[id] = choice;
            }

            // W(i, j).
            let mut best: i64 = 0;
            let mut choice = CHOICE_NONE;
            if wc(i, j) && t.v[id] > best {
                best = t.v[id];
                choice = CHOICE_PAIR;
            }
            match recurrence {
                Recurrence::Corrected => {
                    for k in i..=j - 1 {
                        let cand = t.w[t.idx(i, k)] + t.w[t.idx(k + 1, j)];
                        if cand > best {
                            best = cand;
                            choice = k as u32;
                        }
                    }
                }
                Recurrence::Literal => {
                    if t.w[t.idx(i + 1, j)] > best {
                        best = t.w[t.idx(i + 1, j)];
                        choice = CHOICE_DROP_LEFT;
                    }
                    if t.w[t.idx(i, j - 1)] > best {
                        best = t.w[t.idx(i, j - 1)];
                        choice = CHOICE_DROP_RIGHT;
                    }
                }
            }
            t.w[id] = best;
            t.w_choice[id] = choice;
        }
    }
    t
}

/// Result of the nested fold: the optimum count and a witness structure
/// achieving it without pseudoknots.
#[derive(Debug, Clone)]
pub struct NestedResult {
    pub count: usize,
    pub structure: SecondaryStructure,
}

/// Maximum stacking pairs over pseudoknot-free structures, with a witness.
///
/// ```
/// use stackfold::seq::parse_sequence;
/// use stackfold::dp::max_stacking_pairs_nested;
/// let seq = parse_sequence("GGGAAACCC").unwrap();
/// assert_eq!(max_stacking_pairs_nested(&seq).count, 2);
/// ```
pub fn max_stacking_pairs_nested(seq: &RnaSequence) -> NestedResult {
    fold_nested(seq, Recurrence::Corrected)
}

/// Like [`max_stacking_pairs_nested`] but with an explicit recurrence choice.
pub fn fold_nested(seq: &RnaSequence, recurrence: Recurrence) -> NestedResult {
    let tables = dp_tables(seq, recurrence);
    let n = seq.len();
    if n == 0 {
        return NestedResult {
            count: 0,
            structure: SecondaryStructure::empty(0),
        };
    }
    let count = tables.w(1, n);
    let structure = traceback(seq, &tables);
    debug_assert_eq!(structure.count_stacking_pairs(), count);
    NestedResult { count, structure }
}

enum Cell {
    W(usize, usize),
    V(usize, usize),
}

/// Reconstruct a witness from the stored choices. Tie-breaking is fixed at
/// fill time: the pair branch wins ties, then the split with the smallest k.
fn traceback(seq: &RnaSequence, t: &DpTables) -> SecondaryStructure {
    let n = t.n();
    let mut pairs: Vec<BasePair> = Vec::new();
    let mut stack = vec![Cell::W(1, n)];
    while let Some(cell) = stack.pop() {
        match cell {
            Cell::W(i, j) => {
                if j <= i + 3 {
                    continue;
                }
                match t.w_choice(i, j) {
                    WChoice::Empty => {}
                    WChoice::Pair => stack.push(Cell::V(i, j)),
                    WChoice::Split(k) => {
                        stack.push(Cell::W(i, k));
                        stack.push(Cell::W(k + 1, j));
                    }
                    WChoice::DropLeft => stack.push(Cell::W(i + 1, j)),
                    WChoice::DropRight => stack.push(Cell::W(i, j - 1)),
                }
            }
            Cell::V(i, j) => {
                pairs.push(BasePair { i, j });
                if j <= i + 3 {
                    continue;
                }
                match t.v_choice(i, j) {
                    VChoice::Leaf => {}
                    VChoice::StackInner => stack.push(Cell::V(i + 1, j - 1)),
                    VChoice::Split(k) => {
                        stack.push(Cell::W(i + 1, k));
                        stack.push(Cell::W(k + 1, j - 1));
                    }
                }
            }
        }
    }
    SecondaryStructure::new(seq, pairs)
        .expect("traceback always yields a valid pseudoknot-free structure")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarity::crossing_graph;
    use crate::seq::parse_sequence;

    fn seq(s: &str) -> RnaSequence {
        parse_sequence(s).unwrap()
    }

    #[test]
    fn small_examples() {
        let r = max_stacking_pairs_nested(&seq("AAGUU"));
        assert_eq!(r.count, 1);
        assert_eq!(
            r.structure.pairs(),
            &[BasePair { i: 1, j: 5 }, BasePair { i: 2, j: 4 }]
        );

        assert_eq!(max_stacking_pairs_nested(&seq("AAAA")).count, 0);

        let r = max_stacking_pairs_nested(&seq("GGGAAACCC"));
        assert_eq!(r.count, 2);
        assert_eq!(
            r.structure.pairs(),
            &[
                BasePair { i: 1, j: 9 },
                BasePair { i: 2, j: 8 },
                BasePair { i: 3, j: 7 }
            ]
        );
    }

    #[test]
    fn side_by_side_helices_need_concatenation() {
        let s = seq("AAGUUAAGUU");
        assert_eq!(fold_nested(&s, Recurrence::Corrected).count, 2);
        assert_eq!(fold_nested(&s, Recurrence::Literal).count, 1);
    }

    #[test]
    fn literal_witness_matches_its_count() {
        let s = seq("AAGUUAAGUU");
        let r = fold_nested(&s, Recurrence::Literal);
        assert_eq!(r.structure.count_stacking_pairs(), r.count);
    }

    #[test]
    fn table_basis_and_cells() {
        let t = dp_tables(&seq("ACGU"), Recurrence::Corrected);
        for i in 1..=4 {
            for j in i..=4 {
                assert_eq!(t.w(i, j), 0);
            }
        }
        // A-U at basis distance 3.
        assert_eq!(t.v(1, 4), Some(0));
        assert_eq!(t.v(2, 4), None); // C-U not complementary
        assert_eq!(t.v(1, 2), None); // distance below 2 is undefined

        let t = dp_tables(&seq("AAGUU"), Recurrence::Corrected);
        assert_eq!(t.v(1, 5), Some(1));
        assert_eq!(t.w(1, 5), 1);
    }

    #[test]
    fn empty_and_tiny_sequences() {
        assert_eq!(max_stacking_pairs_nested(&seq("")).count, 0);
        assert_eq!(max_stacking_pairs_nested(&seq("ACGU")).count, 0);
        assert!(max_stacking_pairs_nested(&seq("ACGU")).structure.is_empty());
    }

    #[test]
    fn witness_is_pseudoknot_free() {
        for s in ["AAGUUAAGUU", "GGGAAACCCGGGAAACCC", "ACGUACGUACGUACGU"] {
            let r = max_stacking_pairs_nested(&seq(s));
            assert!(crossing_graph(&r.structure).edges.is_empty(), "on {s}");
            assert_eq!(r.structure.count_stacking_pairs(), r.count, "on {s}");
        }
    }

    #[test]
    fn monotone_in_window() {
        let s = seq("GGGAAACCCAAGUUGCGCAU");
        let t = dp_tables(&s, Recurrence::Corrected);
        let n = s.len();
        for i in 1..=n {
            for j in i + 1..=n {
                assert!(t.w(i, j) >= t.w(i + 1, j).max(t.w(i, j - 1)));
            }
        }
    }
}
