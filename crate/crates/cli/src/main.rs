//! `stackfold` — stacking-pair structure tools on the command line.

mod doc;
mod input;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map};

use stackfold::dp::{fold_nested, Recurrence};
use stackfold::greedy::{greedy_fold, GreedyConfig};
use stackfold::oracle::{exact_optimum, OracleMode};
use stackfold::planarity::{has_interleaving_block, is_planar_stacked, page_assignment};
use stackfold::reduction::{
    build_witness, census_matches, encode_instance, parse_instance, ReductionLayout,
};
use stackfold::seq::{census, Base, RnaSequence};
use stackfold::structure::{parse_pair_list, runs_to_structure, SecondaryStructure};

use doc::{emit, pairs_text, OutputDocument};
use input::{format_fasta, read_input, Record};

#[derive(Parser)]
#[command(
    name = "stackfold",
    version,
    about = "Maximize stacking pairs in RNA secondary structures, pseudoknots allowed"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit structured JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Exact pseudoknot-free fold (cubic DP) with witness structure.
    Dp {
        /// FASTA file, raw sequence, or `-` for stdin.
        input: String,
        /// Run the uncorrected recurrence (no top-level concatenation
        /// branch) for comparison; suboptimal on some inputs.
        #[arg(long)]
        literal_recurrence: bool,
    },
    /// Linear-time greedy fold, at least 1/3 of the unrestricted optimum.
    Greedy {
        input: String,
        /// Ladder length sought by the first phase (>= 3).
        #[arg(long, default_value_t = 3)]
        width: usize,
    },
    /// Exponential exact search (small inputs only).
    Exact {
        input: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Override the per-mode input length guard.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Planarity report for a structure given as a pair-list file.
    Planar {
        input: String,
        /// Pair-list file: `i j` per line, 1-based, `#` comments.
        #[arg(long)]
        pairs: PathBuf,
    },
    /// Two-letter pattern counts.
    Census { input: String },
    /// Encode a tripartite matching instance as an RNA sequence.
    Reduce {
        /// Instance file: `n <int>`, `m <int>`, then m lines `x y z`.
        #[arg(long)]
        instance: PathBuf,
        /// Writes `<prefix>.fasta` and `<prefix>.layout.json`.
        #[arg(long)]
        out_prefix: String,
    },
    /// Build the target-achieving structure for a perfect matching.
    Witness {
        /// Layout sidecar written by `reduce`.
        #[arg(long)]
        layout: PathBuf,
        /// Comma-separated 1-based edge indices, e.g. "1,4,5".
        #[arg(long)]
        matching: String,
        /// Write the witness pair list here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Greedy-vs-exact ratio study on random sequences.
    RatioBench {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 14)]
        len: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Wall-time scaling across input sizes.
    ScaleBench {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        /// Comma-separated sizes, e.g. 250,500,1000.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Greedy width (greedy algo only).
        #[arg(long, default_value_t = 3)]
        width: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    General,
    Nested,
    Planar,
}

impl From<ModeArg> for OracleMode {
    fn from(m: ModeArg) -> OracleMode {
        match m {
            ModeArg::General => OracleMode::General,
            ModeArg::Nested => OracleMode::Nested,
            ModeArg::Planar => OracleMode::Planar,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Dp,
    Greedy,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Dp {
            input,
            literal_recurrence,
        } => cmd_dp(&input, literal_recurrence, cli.json),
        Command::Greedy { input, width } => cmd_greedy(&input, width, cli.json),
        Command::Exact {
            input,
            mode,
            max_len,
        } => cmd_exact(&input, mode.into(), max_len, cli.json),
        Command::Planar { input, pairs } => cmd_planar(&input, &pairs, cli.json),
        Command::Census { input } => cmd_census(&input, cli.json),
        Command::Reduce {
            instance,
            out_prefix,
        } => cmd_reduce(&instance, &out_prefix, cli.json),
        Command::Witness {
            layout,
            matching,
            out,
        } => cmd_witness(&layout, &matching, out.as_deref(), cli.json),
        Command::RatioBench { count, len, seed } => cmd_ratio_bench(count, len, seed, cli.json),
        Command::ScaleBench {
            algo,
            sizes,
            seed,
            width,
        } => cmd_scale_bench(algo, &sizes, seed, width, cli.json),
    }
}

fn emit_records(json: bool, docs: Vec<OutputDocument>) -> Result<()> {
    let human: String = docs
        .iter()
        .map(OutputDocument::render_human)
        .collect::<Vec<_>>()
        .join("\n");
    emit(json, &docs, &human)
}

fn cmd_dp(input: &str, literal: bool, json: bool) -> Result<()> {
    let recurrence = if literal {
        Recurrence::Literal
    } else {
        Recurrence::Corrected
    };
    let mut docs = Vec::new();
    for Record { name, seq } in read_input(input)? {
        let start = Instant::now();
        let result = fold_nested(&seq, recurrence);
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let mut params = Map::new();
        params.insert(
            "recurrence".into(),
            json!(if literal { "literal" } else { "corrected" }),
        );
        if let Some(name) = name {
            params.insert("record".into(), json!(name));
        }
        docs.push(OutputDocument::new(
            &seq,
            "nested-dp",
            params,
            &result.structure,
            result.count,
            None,
            (!json).then_some(ms),
        )?);
    }
    emit_records(json, docs)
}

fn cmd_greedy(input: &str, width: usize, json: bool) -> Result<()> {
    let cfg = GreedyConfig::new(width)?;
    let mut docs = Vec::new();
    for Record { name, seq } in read_input(input)? {
        let start = Instant::now();
        let result = greedy_fold(&seq, &cfg);
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let structure = runs_to_structure(&seq, &result.runs)?;
        let mut params = Map::new();
        params.insert("width".into(), json!(width));
        params.insert("selected_total".into(), json!(result.total));
        if let Some(name) = name {
            params.insert("record".into(), json!(name));
        }
        let count = structure.count_stacking_pairs();
        docs.push(OutputDocument::new(
            &seq,
            "greedy",
            params,
            &structure,
            count,
            Some(&result.runs),
            (!json).then_some(ms),
        )?);
    }
    emit_records(json, docs)
}

fn cmd_exact(input: &str, mode: OracleMode, max_len: Option<usize>, json: bool) -> Result<()> {
    let mut docs = Vec::new();
    for Record { name, seq } in read_input(input)? {
        let start = Instant::now();
        let result = exact_optimum(&seq, mode, max_len)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let mut params = Map::new();
        params.insert(
            "mode".into(),
            json!(match mode {
                OracleMode::General => "general",
                OracleMode::Nested => "nested",
                OracleMode::Planar => "planar",
            }),
        );
        params.insert("explored_nodes".into(), json!(result.explored));
        if let Some(name) = name {
            params.insert("record".into(), json!(name));
        }
        docs.push(OutputDocument::new(
            &seq,
            "exact",
            params,
            &result.witness,
            result.optimum,
            None,
            (!json).then_some(ms),
        )?);
    }
    emit_records(json, docs)
}

fn cmd_planar(input: &str, pairs_path: &std::path::Path, json: bool) -> Result<()> {
    let records = read_input(input)?;
    if records.len() != 1 {
        bail!("planar expects exactly one sequence, got {}", records.len());
    }
    let seq = &records[0].seq;
    let text = std::fs::read_to_string(pairs_path)
        .with_context(|| format!("reading {}", pairs_path.display()))?;
    let pairs = parse_pair_list(&text)?;
    let structure = SecondaryStructure::new(seq, pairs)?;
    let mut params = Map::new();
    params.insert(
        "interleaving_block".into(),
        json!(has_interleaving_block(&structure)),
    );
    params.insert(
        "two_page_assignment".into(),
        json!(page_assignment(&structure).is_some()),
    );
    let count = structure.count_stacking_pairs();
    let doc = OutputDocument::new(
        seq,
        "planarity-check",
        params,
        &structure,
        count,
        None,
        None,
    )?;
    emit_records(json, vec![doc])
}

#[derive(Serialize)]
struct CensusDoc {
    sequence: String,
    n: usize,
    counts: BTreeMap<String, u64>,
    total: u64,
}

fn cmd_census(input: &str, json: bool) -> Result<()> {
    let mut docs = Vec::new();
    for Record { seq, .. } in read_input(input)? {
        let c = census(&seq);
        let counts: BTreeMap<String, u64> = c
            .entries()
            .map(|((a, b), count)| (format!("{a}{b}"), count))
            .collect();
        docs.push(CensusDoc {
            sequence: seq.to_string(),
            n: seq.len(),
            counts,
            total: c.total(),
        });
    }
    let mut human = String::new();
    for d in &docs {
        human.push_str(&format!("sequence ({} nt): {}\n", d.n, d.sequence));
        for (pattern, count) in &d.counts {
            if *count > 0 {
                human.push_str(&format!("  {pattern}: {count}\n"));
            }
        }
        human.push_str(&format!("  total adjacent pairs: {}\n", d.total));
    }
    emit(json, &docs, &human)
}

#[derive(Serialize)]
struct ReduceDoc {
    n: usize,
    m: usize,
    d: usize,
    sigma: usize,
    h: usize,
    sequence_length: usize,
    census_consistent: bool,
    fasta: String,
    layout: String,
}

fn cmd_reduce(instance_path: &std::path::Path, out_prefix: &str, json: bool) -> Result<()> {
    let text = std::fs::read_to_string(instance_path)
        .with_context(|| format!("reading {}", instance_path.display()))?;
    let inst = parse_instance(&text)?;
    let layout = encode_instance(&inst);
    let census_consistent = census_matches(&layout, &inst);

    let fasta_path = format!("{out_prefix}.fasta");
    let layout_path = format!("{out_prefix}.layout.json");
    let header = format!(
        "S_E n={} m={} d={} sigma={} h={}",
        layout.n, layout.m, layout.params.d, layout.params.sigma, layout.params.h
    );
    std::fs::write(&fasta_path, format_fasta(&header, &layout.sequence))
        .with_context(|| format!("writing {fasta_path}"))?;
    std::fs::write(&layout_path, serde_json::to_string_pretty(&layout)?)
        .with_context(|| format!("writing {layout_path}"))?;

    let doc = ReduceDoc {
        n: layout.n,
        m: layout.m,
        d: layout.params.d,
        sigma: layout.params.sigma,
        h: layout.params.h,
        sequence_length: layout.sequence.len(),
        census_consistent,
        fasta: fasta_path.clone(),
        layout: layout_path.clone(),
    };
    let mut human = format!(
        "encoded instance: n={} m={}\nd={} sigma={} h={}\nsequence length: {}\nwrote {fasta_path}\nwrote {layout_path}\n",
        doc.n, doc.m, doc.d, doc.sigma, doc.h, doc.sequence_length
    );
    if !census_consistent {
        human.push_str(
            "WARNING: generated census deviates from the analytic formulas; the sequence is authoritative\n",
        );
    }
    emit(json, &doc, &human)
}

#[derive(Serialize)]
struct WitnessDoc {
    h: usize,
    count: usize,
    matches_target: bool,
    planar: bool,
    pair_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<String>,
    pairs: Vec<[usize; 2]>,
}

fn cmd_witness(
    layout_path: &std::path::Path,
    matching: &str,
    out: Option<&std::path::Path>,
    json: bool,
) -> Result<()> {
    let text = std::fs::read_to_string(layout_path)
        .with_context(|| format!("reading {}", layout_path.display()))?;
    let layout: ReductionLayout = serde_json::from_str(&text)
        .with_context(|| format!("parsing layout {}", layout_path.display()))?;
    let selected: Vec<usize> = matching
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .context("matching must be comma-separated 1-based edge indices")?;
    let witness = build_witness(&layout, &selected)?;
    let count = witness.count_stacking_pairs();
    let doc = WitnessDoc {
        h: layout.params.h,
        count,
        matches_target: count == layout.params.h,
        planar: is_planar_stacked(&witness),
        pair_count: witness.len(),
        out: out.map(|p| p.display().to_string()),
        pairs: witness.pairs().iter().map(|p| [p.i, p.j]).collect(),
    };
    if let Some(path) = out {
        std::fs::write(path, pairs_text(&witness))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let mut human = format!(
        "witness for matching [{matching}]\nstacking pairs: {} (target h = {})\ntarget met: {}\nplanar (two-page): {}\nbase pairs: {}\n",
        doc.count,
        doc.h,
        if doc.matches_target { "yes" } else { "no" },
        if doc.planar { "yes" } else { "no" },
        doc.pair_count
    );
    if let Some(path) = &doc.out {
        human.push_str(&format!("wrote pair list to {path}\n"));
    }
    emit(json, &doc, &human)
}

#[derive(Serialize)]
struct TrialDoc {
    trial: usize,
    sequence: String,
    greedy_total: usize,
    optimum: usize,
}

#[derive(Serialize)]
struct RatioBenchDoc {
    count: usize,
    len: usize,
    seed: u64,
    width: usize,
    violations: usize,
    min_ratio: Option<f64>,
    mean_ratio: Option<f64>,
    trials: Vec<TrialDoc>,
}

fn cmd_ratio_bench(count: usize, len: usize, seed: u64, json: bool) -> Result<()> {
    if len > OracleMode::General.default_limit() {
        bail!(
            "ratio-bench needs exact optima; --len {len} exceeds the exact-search limit {}",
            OracleMode::General.default_limit()
        );
    }
    let cfg = GreedyConfig::new(3)?;
    let trials: Vec<TrialDoc> = (0..count)
        .into_par_iter()
        .map(|trial| {
            // One stream per trial keeps the corpus identical no matter how
            // trials are scheduled.
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64 + 1);
            let seq = RnaSequence::new(
                (0..len)
                    .map(|_| Base::ALL[rng.random_range(0..4)])
                    .collect(),
            );
            let greedy_total = greedy_fold(&seq, &cfg).total;
            let optimum = exact_optimum(&seq, OracleMode::General, None)
                .expect("length checked above")
                .optimum;
            TrialDoc {
                trial,
                sequence: seq.to_string(),
                greedy_total,
                optimum,
            }
        })
        .collect();

    let violations = trials
        .iter()
        .filter(|t| 3 * t.greedy_total < t.optimum)
        .count();
    let ratios: Vec<f64> = trials
        .iter()
        .filter(|t| t.optimum > 0)
        .map(|t| t.greedy_total as f64 / t.optimum as f64)
        .collect();
    let min_ratio = ratios.iter().copied().fold(None, |acc: Option<f64>, r| {
        Some(acc.map_or(r, |a| a.min(r)))
    });
    let mean_ratio = (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64);

    let doc = RatioBenchDoc {
        count,
        len,
        seed,
        width: 3,
        violations,
        min_ratio,
        mean_ratio,
        trials,
    };
    let human = format!(
        "ratio bench: {} trials, length {}, seed {}\nviolations of the 1/3 bound: {}\nmin observed ratio: {}\nmean observed ratio: {}\n",
        doc.count,
        doc.len,
        doc.seed,
        doc.violations,
        doc.min_ratio
            .map_or("n/a (all optima zero)".into(), |r| format!("{r:.4}")),
        doc.mean_ratio
            .map_or("n/a (all optima zero)".into(), |r| format!("{r:.4}")),
    );
    emit(json, &doc, &human)?;
    if violations > 0 {
        bail!("{violations} trials fell below the guaranteed 1/3 ratio");
    }
    Ok(())
}

#[derive(Serialize)]
struct ScalePoint {
    n: usize,
    wall_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio_vs_previous: Option<f64>,
}

fn cmd_scale_bench(
    algo: AlgoArg,
    sizes: &[usize],
    seed: u64,
    width: usize,
    json: bool,
) -> Result<()> {
    let cfg = GreedyConfig::new(width)?;
    let mut points: Vec<ScalePoint> = Vec::new();
    for (idx, &n) in sizes.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(idx as u64 + 1);
        let seq = RnaSequence::new((0..n).map(|_| Base::ALL[rng.random_range(0..4)]).collect());
        let run = || match algo {
            AlgoArg::Dp => fold_nested(&seq, Recurrence::Corrected).count,
            AlgoArg::Greedy => greedy_fold(&seq, &cfg).total,
        };
        run(); // warm-up, excluded
        let mut best = f64::INFINITY;
        for _ in 0..2 {
            let start = Instant::now();
            std::hint::black_box(run());
            best = best.min(start.elapsed().as_secs_f64() * 1e3);
        }
        let ratio = points.last().map(|prev| best / prev.wall_ms);
        points.push(ScalePoint {
            n,
            wall_ms: best,
            ratio_vs_previous: ratio,
        });
    }
    let mut human = format!(
        "scale bench: algo {}, seed {seed}\n",
        match algo {
            AlgoArg::Dp => "dp",
            AlgoArg::Greedy => "greedy",
        }
    );
    human.push_str("      n      wall_ms   ratio\n");
    for p in &points {
        human.push_str(&format!(
            "{:>8} {:>11.3} {:>7}\n",
            p.n,
            p.wall_ms,
            p.ratio_vs_previous
                .map_or("-".into(), |r| format!("{r:.2}"))
        ));
    }
    emit(json, &points, &human)
}
