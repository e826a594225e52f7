//! `ska`: command-line analysis of multiterminal sources.
//!
//! Exit codes: 0 on success, 2 on malformed input, invalid sources or usage
//! errors, 3 when a perturbation check disagrees with the rate formulas.

mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ska_core::mmi::{i_p, DEFAULT_ENUM_CAP};
use ska_core::random::{self, HypergraphParams};
use ska_core::report::{
    ConjectureJson, ConjectureTally, CriticalJson, EdgeJson, GrowthJson, MmiReport, PartitionEntry,
    PartitionsReport, TMaxJson, UniqueJson, ValidationJson, VerdictJson, VerifyJson,
};
use ska_core::sfm::SfmEngine;
use ska_core::ska::{self as rates, Analysis, PerturbationMode};
use ska_core::{enumerate_partitions, Rational, SourceModel, Subset};

/// Largest ground set for which `partitions --all` lists every partition.
const LIST_ALL_LIMIT: usize = 10;

#[derive(Parser, Debug)]
#[command(
    name = "ska",
    version,
    about = "Exact secret key agreement analysis of multiterminal sources"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Submodular minimizer used for the zero-set structure.
    #[arg(long, global = true, value_enum, default_value_t = Engine::Mnp)]
    engine: Engine,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Mnp,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Increment,
    Decrement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Hypergraph,
    Pin,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// MMI, optimal partitions, fundamental partition and gap.
    Mmi { source: PathBuf },
    /// Optimal partitions, or every partition with its value (`--all`).
    Partitions {
        source: PathBuf,
        #[arg(long)]
        all: bool,
    },
    /// Critical edges via T_max, cross-checked by exhaustive search.
    Critical { source: PathBuf },
    /// Growth rates of order 0..=k.
    Growth {
        source: PathBuf,
        /// Highest order; defaults to the number of users.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Loss rate of an edge.
    Loss {
        source: PathBuf,
        /// Comma-separated user labels.
        #[arg(long)]
        edge: String,
    },
    /// Whether an edge is excess (removable without loss).
    Excess {
        source: PathBuf,
        #[arg(long)]
        edge: String,
    },
    /// Maximal blocks of optimal partitions and the dichotomy case.
    Tmax { source: PathBuf },
    /// Whether the optimal partition is unique.
    Unique { source: PathBuf },
    /// Compares rate formulas with recomputed MMI after a perturbation.
    /// Without --set, checks every subset (increment) and every edge (decrement).
    Verify {
        source: PathBuf,
        #[arg(long)]
        set: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Increment)]
        mode: Mode,
        /// Perturbation size as p/q; defaults to half the gap.
        #[arg(long)]
        epsilon: Option<Rational>,
    },
    /// Growth rate of each critical edge against (|S|-1)/(l-1).
    Conjecture {
        #[arg(required_unless_present = "random")]
        source: Option<PathBuf>,
        /// Tally over a seeded random batch instead of one source.
        #[arg(long, conflicts_with = "source")]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Users per instance; cycles through 4..=6 when omitted.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Family::Hypergraph)]
        family: Family,
    },
    /// Checks normalization, monotonicity and submodularity.
    Validate { source: PathBuf },
}

fn enum_cap() -> anyhow::Result<usize> {
    match std::env::var("SKA_ENUM_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("SKA_ENUM_CAP must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn load(path: &Path) -> anyhow::Result<SourceModel> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    SourceModel::from_json(&text).with_context(|| format!("in {}", path.display()))
}

fn analyze(path: &Path, engine: Engine) -> anyhow::Result<Analysis> {
    let source = load(path)?;
    let engine = match engine {
        Engine::Mnp => SfmEngine::MinNormPoint,
        Engine::Brute => SfmEngine::BruteForce,
    };
    Ok(Analysis::with_options(source, enum_cap()?, engine)?)
}

fn parse_set(a: &Analysis, text: &str) -> anyhow::Result<Subset> {
    Ok(a.source.users().parse_key(text)?)
}

fn emit<T: Serialize>(format: Format, report: &T, text: impl FnOnce(&T) -> String) {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize") + "\n",
        Format::Text => text(report),
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn edge_report(a: &Analysis, edge: &str) -> anyhow::Result<EdgeJson> {
    let s = parse_set(a, edge)?;
    Ok(EdgeJson {
        edge: a.source.users().labels_of(s),
        loss_rate: a.loss_rate(s)?,
        weight: a.source.has_edge(s)?,
        growth_rate: a.growth_rate(s),
        excess: a.is_excess(s)?,
    })
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let fmt = cli.format;
    match &cli.command {
        Command::Mmi { source } => {
            let a = analyze(source, cli.engine)?;
            let report = MmiReport::new(a.source.users(), &a.mmi);
            emit(fmt, &report, render::mmi);
        }
        Command::Partitions { source, all } => {
            let a = analyze(source, cli.engine)?;
            let users = a.source.users();
            let listed: Vec<_> = if *all {
                if users.len() > LIST_ALL_LIMIT {
                    bail!(
                        "listing every partition is limited to {LIST_ALL_LIMIT} users, source has {}",
                        users.len()
                    );
                }
                enumerate_partitions(users.all(), 2).collect()
            } else {
                a.mmi.optimal_partitions.clone()
            };
            let partitions = listed
                .iter()
                .map(|p| {
                    Ok(PartitionEntry {
                        blocks: users.partition_labels(p),
                        value: i_p(&a.source, p)?,
                        optimal: a.mmi.is_optimal(p),
                    })
                })
                .collect::<ska_core::Result<Vec<_>>>()?;
            let report = PartitionsReport {
                gamma: a.mmi.gamma.clone(),
                partitions,
            };
            emit(fmt, &report, render::partitions);
        }
        Command::Critical { source } => {
            let a = analyze(source, cli.engine)?;
            let tm = a.t_max()?;
            let crit = rates::critical_edges(&tm, a.all());
            let agrees = crit.edges == rates::critical_edges_bruteforce(&a.mmi);
            let report = CriticalJson::new(
                a.source.users(),
                &tm,
                &crit,
                a.greedy_critical_edge(),
                agrees,
            );
            emit(fmt, &report, render::critical);
            if !agrees {
                bail!("critical edges from T_max disagree with exhaustive search");
            }
        }
        Command::Growth { source, k } => {
            let a = analyze(source, cli.engine)?;
            let k = k.unwrap_or(a.source.n());
            let report = GrowthJson::new(a.source.users(), &a.growth_curve(k)?);
            emit(fmt, &report, render::growth);
        }
        Command::Loss { source, edge } | Command::Excess { source, edge } => {
            let a = analyze(source, cli.engine)?;
            let report = edge_report(&a, edge)?;
            emit(fmt, &report, render::edge);
        }
        Command::Tmax { source } => {
            let a = analyze(source, cli.engine)?;
            let report = TMaxJson::new(a.source.users(), &a.t_max()?);
            emit(fmt, &report, render::t_max);
        }
        Command::Unique { source } => {
            let a = analyze(source, cli.engine)?;
            let report = UniqueJson {
                unique_optimal: a.is_unique_optimal()?,
                optimal_partition_count: a.mmi.optimal_partitions.len(),
            };
            emit(fmt, &report, render::unique);
        }
        Command::Verify {
            source,
            set,
            mode,
            epsilon,
        } => {
            let a = analyze(source, cli.engine)?;
            let mode = match mode {
                Mode::Increment => PerturbationMode::Increment,
                Mode::Decrement => PerturbationMode::Decrement,
            };
            let mut verdicts = Vec::new();
            match set {
                Some(s) => verdicts.push(a.verify(parse_set(&a, s)?, mode, epsilon.clone())?),
                None => {
                    for s in a.all().submasks() {
                        verdicts.push(a.verify(s, PerturbationMode::Increment, epsilon.clone())?);
                    }
                    if let Some(h) = a.source.as_hypergraph() {
                        for e in h.edge_sets() {
                            verdicts.push(a.verify(
                                e,
                                PerturbationMode::Decrement,
                                epsilon.clone(),
                            )?);
                        }
                    }
                }
            }
            let users = a.source.users();
            let verdicts: Vec<VerdictJson> = verdicts
                .iter()
                .map(|v| VerdictJson::new(users, v))
                .collect();
            let report = VerifyJson {
                passed: verdicts.iter().all(|v| v.passed),
                verdicts,
            };
            emit(fmt, &report, render::verify);
            if !report.passed {
                eprintln!("verification failed: a perturbation disagrees with the rate formula");
                return Ok(ExitCode::from(3));
            }
        }
        Command::Conjecture {
            source: Some(source),
            ..
        } => {
            let a = analyze(source, cli.engine)?;
            let report = ConjectureJson::new(a.source.users(), &a.conjecture()?);
            emit(fmt, &report, render::conjecture);
        }
        Command::Conjecture {
            source: None,
            seed,
            count,
            n,
            family,
            ..
        } => {
            let tally = conjecture_batch(*seed, *count, *n, *family, cli.engine)?;
            emit(fmt, &tally, render::tally);
        }
        Command::Validate { source } => {
            let model = load(source)?;
            let report = ValidationJson::new(model.users(), &model.validate());
            emit(fmt, &report, render::validation);
            if !report.valid {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn conjecture_batch(
    seed: u64,
    count: usize,
    n: Option<usize>,
    family: Family,
    engine: Engine,
) -> anyhow::Result<ConjectureTally> {
    let engine = match engine {
        Engine::Mnp => SfmEngine::MinNormPoint,
        Engine::Brute => SfmEngine::BruteForce,
    };
    let cap = enum_cap()?;
    let mut rng = random::rng(seed);
    let mut tally = ConjectureTally::default();
    for k in 0..count {
        let n = n.unwrap_or(4 + k % 3);
        let source: SourceModel = match family {
            Family::Hypergraph => random::random_hypergraph(&mut rng, HypergraphParams::new(n))?,
            Family::Pin => random::random_unit_pin(&mut rng, n, 0.5)?,
        }
        .into();
        let a = Analysis::with_options(source, cap, engine)?;
        let report = a.conjecture()?;
        tally.instances += 1;
        tally.edges_checked += report.entries.len();
        let holding = report.entries.iter().filter(|e| e.holds).count();
        tally.holds += holding;
        tally.violations += report.entries.len() - holding;
        if !report.holds() {
            tally
                .counterexamples
                .push(serde_json::to_value(a.source.to_document())?);
        }
    }
    Ok(tally)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
