//! Browser bindings for the demo page.
//!
//! Three operations, each taking plain strings and returning a JSON
//! document (or an error string that surfaces as a JS exception):
//!
//! - [`analyze_sequence`]: exact pseudoknot-free DP (corrected and
//!   uncorrected recurrences), the greedy fold, and, on tiny inputs, the
//!   unrestricted exact optimum;
//! - [`check_planarity`]: crossing-graph planarity report for a structure
//!   given in the pair-list format;
//! - [`encode_matching`]: tripartite-instance encoding with census check
//!   and, when a perfect matching is supplied, the target-achieving
//!   witness.
//!
//! The same functions compile and run natively, which is how the test
//! suite drives them.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use stackfold::dotbracket::{assign_layers, format_dotbracket, layers_from_pages};
use stackfold::dp::{fold_nested, Recurrence};
use stackfold::greedy::{greedy_fold, GreedyConfig};
use stackfold::oracle::{exact_optimum, OracleMode};
use stackfold::planarity::{
    crossing_graph, has_interleaving_block, is_planar_stacked, page_assignment,
};
use stackfold::reduction::{build_witness, census_matches, encode_instance, parse_instance};
use stackfold::seq::parse_sequence;
use stackfold::structure::{parse_pair_list, runs_to_structure, SecondaryStructure};

/// DP input cap: the fold is cubic, so a page freeze guard is needed.
const DP_MAX_LEN: usize = 800;
/// Exact-search cap inside the browser.
const EXACT_MAX_LEN: usize = 14;

#[derive(Serialize)]
struct StructureDoc {
    count: usize,
    pairs: Vec<[usize; 2]>,
    layers: Vec<usize>,
    dotbracket: Option<String>,
    planar: bool,
}

impl StructureDoc {
    fn from_structure(st: &SecondaryStructure, n: usize) -> StructureDoc {
        let layered = match page_assignment(st) {
            Some(pages) => layers_from_pages(&pages),
            None => assign_layers(st),
        };
        let mut by_pair = layered.clone();
        by_pair.sort();
        StructureDoc {
            count: st.count_stacking_pairs(),
            pairs: by_pair.iter().map(|&(p, _)| [p.i, p.j]).collect(),
            layers: by_pair.iter().map(|&(_, l)| l).collect(),
            dotbracket: format_dotbracket(n, &layered),
            planar: is_planar_stacked(st),
        }
    }
}

#[derive(Serialize)]
struct AnalyzeDoc {
    sequence: String,
    n: usize,
    dp: Option<StructureDoc>,
    dp_literal_count: Option<usize>,
    dp_skipped_reason: Option<String>,
    greedy: StructureDoc,
    greedy_selected_total: usize,
    greedy_runs: Vec<[usize; 3]>,
    exact_count: Option<usize>,
}

/// Fold `seq` with the exact nested DP and the greedy ladder selector.
#[wasm_bindgen]
pub fn analyze_sequence(seq: &str, width: usize) -> Result<String, String> {
    let seq = parse_sequence(seq).map_err(|e| e.to_string())?;
    let n = seq.len();
    let cfg = GreedyConfig::new(width).map_err(|e| e.to_string())?;

    let greedy = greedy_fold(&seq, &cfg);
    let greedy_structure = runs_to_structure(&seq, &greedy.runs).map_err(|e| e.to_string())?;

    let (dp, dp_literal_count, dp_skipped_reason) = if n <= DP_MAX_LEN {
        let corrected = fold_nested(&seq, Recurrence::Corrected);
        let literal = fold_nested(&seq, Recurrence::Literal);
        (
            Some(StructureDoc::from_structure(&corrected.structure, n)),
            Some(literal.count),
            None,
        )
    } else {
        (
            None,
            None,
            Some(format!(
                "sequence longer than {DP_MAX_LEN}; cubic fold skipped"
            )),
        )
    };

    let exact_count = (n <= EXACT_MAX_LEN)
        .then(|| exact_optimum(&seq, OracleMode::General, None).map(|r| r.optimum))
        .transpose()
        .map_err(|e| e.to_string())?;

    let doc = AnalyzeDoc {
        sequence: seq.to_string(),
        n,
        dp,
        dp_literal_count,
        dp_skipped_reason,
        greedy: StructureDoc::from_structure(&greedy_structure, n),
        greedy_selected_total: greedy.total,
        greedy_runs: greedy.runs.iter().map(|r| [r.p, r.q, r.len]).collect(),
        exact_count,
    };
    serde_json::to_string(&doc).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct PlanarityDoc {
    sequence: String,
    n: usize,
    structure: StructureDoc,
    crossing_edges: usize,
    interleaving_block: bool,
    two_page: bool,
}

/// Planarity report for a pair-list structure over `seq`.
#[wasm_bindgen]
pub fn check_planarity(seq: &str, pairs_text: &str) -> Result<String, String> {
    let seq = parse_sequence(seq).map_err(|e| e.to_string())?;
    let pairs = parse_pair_list(pairs_text).map_err(|e| e.to_string())?;
    let structure = SecondaryStructure::new(&seq, pairs).map_err(|e| e.to_string())?;
    let doc = PlanarityDoc {
        sequence: seq.to_string(),
        n: seq.len(),
        structure: StructureDoc::from_structure(&structure, seq.len()),
        crossing_edges: crossing_graph(&structure).edges.len(),
        interleaving_block: has_interleaving_block(&structure),
        two_page: page_assignment(&structure).is_some(),
    };
    serde_json::to_string(&doc).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct EncodeDoc {
    n: usize,
    m: usize,
    d: usize,
    sigma: usize,
    h: usize,
    sequence_length: usize,
    census_consistent: bool,
    sequence: Option<String>,
    witness: Option<WitnessDoc>,
}

#[derive(Serialize)]
struct WitnessDoc {
    count: usize,
    matches_target: bool,
    structure: StructureDoc,
}

/// Encode an instance (text format: `n <int>` / `m <int>` / `x y z` lines)
/// and, when `matching` is a non-empty comma-separated edge list, build the
/// witness structure for it.
#[wasm_bindgen]
pub fn encode_matching(instance_text: &str, matching: &str) -> Result<String, String> {
    let inst = parse_instance(instance_text).map_err(|e| e.to_string())?;
    let layout = encode_instance(&inst);
    let n_bases = layout.sequence.len();

    let witness = if matching.trim().is_empty() {
        None
    } else {
        let selected: Vec<usize> = matching
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| "matching must be comma-separated edge indices".to_string())?;
        let st = build_witness(&layout, &selected).map_err(|e| e.to_string())?;
        Some(WitnessDoc {
            count: st.count_stacking_pairs(),
            matches_target: st.count_stacking_pairs() == layout.params.h,
            structure: StructureDoc::from_structure(&st, n_bases),
        })
    };

    let doc = EncodeDoc {
        n: layout.n,
        m: layout.m,
        d: layout.params.d,
        sigma: layout.params.sigma,
        h: layout.params.h,
        sequence_length: n_bases,
        census_consistent: census_matches(&layout, &inst),
        sequence: (n_bases <= 20_000).then(|| layout.sequence.to_string()),
        witness,
    };
    serde_json::to_string(&doc).map_err(|e| e.to_string())
}
