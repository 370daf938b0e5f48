//! Command-line front end. All vertex numbers in files and JSON are 1-based.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::embed::{embed, Algorithm, EmbedResult, GreedyConfig};
use crate::error::{Error, Result};
use crate::exact::ExactValue;
use crate::graph::generate::{gen_forest, gen_regular_graph, gen_zero_sum_labeling, ForestKind, LabelingPattern};
use crate::graph::io::{read_forest, read_graph, read_labeling, write_forest, write_graph, write_labeling};
use crate::harness::bench::{self, ExperimentConfig};
use crate::harness::verify::{self, Check};
use crate::local_search::{descend, descend_heuristic, Rule, SpanningSubgraph};
use crate::oracle::{enumerate_sums, DEFAULT_CAP};
use crate::rng::PRNG_NAME;
use crate::theory::analyze_trace;

#[derive(Parser, Debug)]
#[command(
    name = "lowsum",
    version,
    about = "Low-sum copies of spanning forests in ±1-labeled complete graphs"
)]
struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Random zero-sum labeling of K_n.
    GenLabeling {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "uniform")]
        pattern: LabelingPattern,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spanning forest from a named family.
    GenForest {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kind: ForestKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random regular spanning subgraph for `local-search`.
    GenSubgraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Embed a forest with one of the algorithms and report its copy sum.
    Embed {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value = "best")]
        algo: Algorithm,
        #[arg(long, default_value = "1/5")]
        epsilon: ExactValue,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include wall-clock runtime (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Role-swap descent on a spanning subgraph.
    LocalSearch {
        #[arg(long)]
        labeling: PathBuf,
        #[arg(long)]
        subgraph: PathBuf,
        #[arg(long, default_value = "best")]
        rule: Rule,
        /// Accept labelings that are not zero-sum (no certificate).
        #[arg(long)]
        heuristic: bool,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the final subgraph here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact distribution of copy sums over all n! embeddings.
    Oracle {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Randomized consistency checks on one instance.
    Verify {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_delimiter = ',', default_value = "recurrence,formula,claim3,claim4")]
        checks: Vec<Check>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = verify::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Batch experiment: `results.csv` and `summary.json` in the output directory.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Inputs {
    #[arg(long)]
    labeling: PathBuf,
    #[arg(long)]
    forest: PathBuf,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns 0 on success, 1 on a domain error and 2 on a usage error.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    let mut buffer = Vec::new();
    let outcome = match cli.threads {
        Some(0) => Err(Error::BadParameters("--threads must be at least 1".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::BadParameters(format!("thread pool: {e}")))
            .and_then(|pool| pool.install(|| execute(cli.command, cli.threads, &mut buffer))),
        None => execute(cli.command, None, &mut buffer),
    };
    if stdout.write_all(&buffer).is_err() {
        return 1;
    }
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn emit(text: &str, path: Option<&Path>, stdout: &mut Vec<u8>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_json(value: &Value, path: Option<&Path>, stdout: &mut Vec<u8>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    emit(&text, path, stdout)
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn provenance(command: &str, params: &str) -> Vec<String> {
    vec![format!("{command} {params}"), format!("prng {PRNG_NAME}")]
}

fn execute(command: Command, threads: Option<usize>, stdout: &mut Vec<u8>) -> Result<i32> {
    match command {
        Command::GenLabeling { n, seed, pattern, out } => {
            let l = gen_zero_sum_labeling(n, seed, pattern)?;
            let meta = provenance("gen-labeling", &format!("n={n} seed={seed} pattern={pattern}"));
            emit(&write_labeling(&l, &meta), out.as_deref(), stdout)?;
        }
        Command::GenForest { n, kind, seed, out } => {
            let f = gen_forest(n, kind, seed)?;
            let meta = provenance("gen-forest", &format!("n={n} kind={kind} seed={seed}"));
            emit(&write_forest(&f, &meta), out.as_deref(), stdout)?;
        }
        Command::GenSubgraph { n, degree, seed, out } => {
            let g = gen_regular_graph(n, degree, seed)?;
            let meta = provenance("gen-subgraph", &format!("n={n} degree={degree} seed={seed}"));
            emit(&write_graph(&g, &meta), out.as_deref(), stdout)?;
        }
        Command::Embed {
            inputs,
            algo,
            epsilon,
            json,
            timings,
        } => {
            let l = read_labeling(&inputs.labeling)?;
            let f = read_forest(&inputs.forest)?;
            let cfg = GreedyConfig::new(epsilon)?;
            let r = embed(&l, &f, algo, &cfg)?;
            let mut report = embed_report(&r, &cfg);
            if r.selected == Algorithm::Greedy {
                report["trace_report"] = serde_json::to_value(analyze_trace(&r, &f, &cfg)?).expect("serializable");
            }
            if timings {
                report["runtime_seconds"] = json!(r.runtime.as_secs_f64());
            }
            emit_json(&report, json.as_deref(), stdout)?;
        }
        Command::LocalSearch {
            labeling,
            subgraph,
            rule,
            heuristic,
            json,
            out,
        } => {
            let l = read_labeling(&labeling)?;
            let h = SpanningSubgraph::new(read_graph(&subgraph)?);
            let d = if heuristic {
                descend_heuristic(&l, &h, rule)?
            } else {
                descend(&l, &h, rule)?
            };
            if let Some(path) = out {
                fs::write(path, write_graph(d.subgraph.graph(), &[]))?;
            }
            let report = json!({
                "n": h.n(),
                "rule": rule,
                "max_degree": h.max_degree(),
                "regular": h.is_regular(),
                "window": 2 * h.max_degree(),
                "initial_sum": d.trace[0],
                "final_sum": d.final_sum(),
                "status": d.status,
                "steps": d.swaps.len(),
                "trace": d.trace,
                "swaps": d.swaps.iter().map(|&(u, v)| [u + 1, v + 1]).collect::<Vec<_>>(),
                "edges": d.subgraph.edges().iter().map(|&(u, v)| [u + 1, v + 1]).collect::<Vec<_>>(),
            });
            emit_json(&report, json.as_deref(), stdout)?;
        }
        Command::Oracle { inputs, cap, json } => {
            let l = read_labeling(&inputs.labeling)?;
            let f = read_forest(&inputs.forest)?;
            let d = enumerate_sums(&l, &f, cap)?;
            let mut report = d.to_json();
            report["n"] = json!(l.n());
            report["edges"] = json!(f.edge_count());
            report["max_degree"] = json!(f.max_degree());
            emit_json(&report, json.as_deref(), stdout)?;
        }
        Command::Verify {
            inputs,
            checks,
            seed,
            samples,
            json,
        } => {
            let l = read_labeling(&inputs.labeling)?;
            let f = read_forest(&inputs.forest)?;
            let report = verify::verify(&l, &f, &checks, seed, samples)?;
            emit_json(
                &serde_json::to_value(&report).expect("serializable"),
                json.as_deref(),
                stdout,
            )?;
            if !report.all_passed {
                return Ok(1);
            }
        }
        Command::Bench { config, out } => {
            let mut cfg = ExperimentConfig::from_json(&fs::read_to_string(&config)?)?;
            if threads.is_some() {
                cfg.threads = threads;
            }
            let plan = cfg.plan()?;
            let rows = bench::run(&plan)?;
            fs::create_dir_all(&out)?;
            bench::write_csv(&rows, fs::File::create(out.join("results.csv"))?)?;
            let summary = serde_json::to_value(bench::summarize(&rows)).expect("serializable");
            emit_json(&summary, Some(&out.join("summary.json")), stdout)?;
            writeln!(stdout, "{} rows written to {}", rows.len(), out.display())?;
        }
    }
    Ok(0)
}

/// JSON form of an embedding result, without the runtime.
pub fn embed_report(r: &EmbedResult, cfg: &GreedyConfig) -> Value {
    let delta = r.certificates.max_degree;
    json!({
        "algorithm": r.algorithm,
        "selected": r.selected,
        "n": r.embedding.n(),
        "max_degree": delta,
        "epsilon": cfg.epsilon(),
        "c_value": r.c_value,
        "embedding": one_based(r.embedding.as_slice()),
        "ordering": one_based(r.ordering.order()),
        "prefix_length": r.ordering.prefix_len(),
        "trace": r.trace,
        "step_deltas": r.step_deltas,
        "bounds": {
            "delta_plus_1": delta + 1,
            "theorem": cfg.theorem_bound(delta),
        },
        "certificates": r.certificates,
        "walk": r.walk.as_ref().map(|w| json!({
            "pivot": w.pivot + 1,
            "length": w.length(),
            "sums": w.sums,
            "best_index": w.best_index,
        })),
    })
}
