//! Structured output documents.
//!
//! Human-readable text by default; `--json` emits the same content as a
//! stable serde document. Timing is reported on the human side only so that
//! JSON output stays byte-identical across runs for identical inputs and
//! seeds.

use anyhow::{ensure, Result};
use serde::Serialize;
use serde_json::{Map, Value};

use stackfold::dotbracket::{assign_layers, format_dotbracket, layers_from_pages};
use stackfold::planarity::{is_planar_stacked, page_assignment};
use stackfold::seq::RnaSequence;
use stackfold::structure::{format_pair_list, SecondaryStructure, StackRun};

#[derive(Serialize)]
pub struct RunDoc {
    pub p: usize,
    pub q: usize,
    pub len: usize,
}

#[derive(Serialize)]
pub struct OutputDocument {
    pub sequence: String,
    pub n: usize,
    pub algorithm: String,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub parameters: Map<String, Value>,
    pub count: usize,
    pub pairs: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runs: Option<Vec<RunDoc>>,
    /// Layer per pair, parallel to `pairs`; 0 renders as `()`, 1 as `[]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layers: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dotbracket: Option<String>,
    pub planar: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl OutputDocument {
    /// Assemble and cross-validate: the pairs must re-validate against the
    /// echoed sequence and the count must equal the recount.
    pub fn new(
        seq: &RnaSequence,
        algorithm: &str,
        parameters: Map<String, Value>,
        structure: &SecondaryStructure,
        count: usize,
        runs: Option<&[StackRun]>,
        timing_ms: Option<f64>,
    ) -> Result<OutputDocument> {
        let revalidated = SecondaryStructure::new(seq, structure.pairs().iter().copied())?;
        ensure!(
            revalidated.count_stacking_pairs() == count,
            "internal error: reported count {count} does not match the recount {}",
            revalidated.count_stacking_pairs()
        );

        let layered = match page_assignment(structure) {
            Some(pages) => layers_from_pages(&pages),
            None => assign_layers(structure),
        };
        let mut by_pair = layered.clone();
        by_pair.sort();
        let layers: Vec<usize> = by_pair.iter().map(|&(_, l)| l).collect();
        let dotbracket = format_dotbracket(seq.len(), &layered);

        Ok(OutputDocument {
            sequence: seq.to_string(),
            n: seq.len(),
            algorithm: algorithm.to_string(),
            parameters,
            count,
            pairs: structure.pairs().iter().map(|p| [p.i, p.j]).collect(),
            runs: runs.map(|rs| {
                rs.iter()
                    .map(|r| RunDoc {
                        p: r.p,
                        q: r.q,
                        len: r.len,
                    })
                    .collect()
            }),
            layers: Some(layers),
            dotbracket,
            planar: is_planar_stacked(structure),
            timing_ms,
        })
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("sequence ({} nt): {}\n", self.n, self.sequence));
        out.push_str(&format!("algorithm: {}", self.algorithm));
        if !self.parameters.is_empty() {
            let params: Vec<String> = self
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            out.push_str(&format!(" ({})", params.join(", ")));
        }
        out.push('\n');
        out.push_str(&format!("stacking pairs: {}\n", self.count));
        if let Some(runs) = &self.runs {
            out.push_str(&format!("runs ({}):\n", runs.len()));
            for r in runs {
                out.push_str(&format!("  p={} q={} len={}\n", r.p, r.q, r.len));
            }
        }
        if self.pairs.is_empty() {
            out.push_str("pairs: none\n");
        } else {
            out.push_str(&format!("pairs ({}):\n", self.pairs.len()));
            for [i, j] in &self.pairs {
                out.push_str(&format!("  {i} {j}\n"));
            }
        }
        match &self.dotbracket {
            Some(db) => out.push_str(&format!("dot-bracket: {db}\n")),
            None => {
                out.push_str(
                    "dot-bracket: needs more than four layers; pair list above is authoritative\n",
                );
            }
        }
        out.push_str(&format!(
            "planar (stacking-only two-page test): {}\n",
            if self.planar { "yes" } else { "no" }
        ));
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("time: {ms:.3} ms\n"));
        }
        out
    }
}

/// Emit one top-level document: pretty JSON in `--json` mode, otherwise the
/// provided human rendering.
pub fn emit<T: Serialize>(json: bool, doc: &T, human: &str) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(doc)?);
    } else {
        print!("{human}");
    }
    Ok(())
}

/// Pair list as text, used by `--out` files and human fallbacks.
pub fn pairs_text(structure: &SecondaryStructure) -> String {
    format_pair_list(structure.pairs())
}
