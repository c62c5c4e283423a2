use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hyperrecon::cover_oracle::{
    clique_g_closed_form, g_value, star_g_closed_form, CoverTable, DeltaProfile, EdgeSet,
};
use hyperrecon::error::{Error, Result};
use hyperrecon::harness::{run_sweep, run_trial, sweep_csv, ExperimentConfig};
use hyperrecon::model::{project, sample_hypergraph, ModelParams};
use hyperrecon::probability::{probcheck, PROBCHECK_HEADER};
use hyperrecon::scalar::{ext_to_f64, parse_decimal};
use hyperrecon::{estimator, textio, Rational};

#[derive(Parser)]
#[command(name = "hyperrecon", version, about = "Hypergraph recovery from graph projections")]
struct Cli {
    /// Worker threads for parallel commands (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a hypergraph from a model parameter file.
    Generate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Project a hypergraph file to its edge list.
    Project {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximal cliques of a given size in an edge-list graph.
    Recover {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Vertex count; defaults to one more than the largest id.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One sample/project/recover/score round, printed as JSON.
    Trial {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        target_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an experiment grid and write the CSV table.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `base_seed` from the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides `output_path` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact cover exponents of cliques and stars as CSV.
    Gtable {
        #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
        degrees: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
        deltas: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare exact bounds, rate prediction and simulation for an edge set.
    Probcheck {
        #[arg(long)]
        config: PathBuf,
        /// Edges as `a-b` pairs, e.g. `0-1,1-2,0-2`.
        #[arg(long, value_delimiter = ',')]
        edges: Vec<String>,
        /// Vertex counts to evaluate; defaults to the config's `n`.
        #[arg(long, value_delimiter = ',')]
        n_grid: Vec<usize>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_params(path: &Path) -> Result<ModelParams> {
    let params: ModelParams = serde_json::from_str(&read(path)?)?;
    params.validate()?;
    Ok(params)
}

fn parse_edges(specs: &[String]) -> Result<EdgeSet> {
    let pairs = specs
        .iter()
        .map(|s| {
            let (a, b) = s
                .split_once('-')
                .ok_or_else(|| Error::InvalidArgument(format!("edge {s:?} is not a-b")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad vertex in edge {s:?}")))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect::<Result<Vec<_>>>()?;
    if pairs.is_empty() {
        return Err(Error::InvalidArgument("no edges given".into()));
    }
    EdgeSet::new(pairs)
}

fn gtable(degrees: &[usize], deltas: &[String]) -> Result<String> {
    let mut out = String::from("d,delta,g_clique,g_star,argmax_cover\n");
    for &d in degrees {
        if d < 3 {
            return Err(Error::InvalidArgument(format!("clique degree {d} below 3")));
        }
        let clique = EdgeSet::complete(d);
        let star = EdgeSet::star(d);
        let clique_table = CoverTable::new(&clique, d - 1)?;
        for text in deltas {
            let delta: Rational = parse_decimal(text)
                .ok_or_else(|| Error::InvalidArgument(format!("bad delta {text:?}")))?;
            let profile = DeltaProfile::without_full_clique(delta, d)?;
            let g_clique = clique_table.g(&profile);
            debug_assert_eq!(g_clique.finite(), Some(&clique_g_closed_form(d, delta)));
            let g_star = g_value(&star, &DeltaProfile::constant(delta, d)?)?;
            debug_assert_eq!(g_star.finite(), Some(&star_g_closed_form(d, delta)));
            let argmax = clique_table
                .argmax(&profile)
                .map(ToString::to_string)
                .unwrap_or_default();
            out.push_str(&format!(
                "{d},{text},{},{},\"{argmax}\"\n",
                ext_to_f64(&g_clique),
                ext_to_f64(&g_star)
            ));
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<()> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    match cli.command {
        Command::Generate { config, seed, out } => {
            let h = sample_hypergraph(&load_params(&config)?, seed)?;
            emit(out.as_deref(), &textio::write_hypergraph(&h))
        }
        Command::Project { input, out } => {
            let h = textio::parse_hypergraph(&read(&input)?)?;
            emit(out.as_deref(), &textio::write_graph(&project(&h)))
        }
        Command::Recover {
            input,
            degree,
            n,
            out,
        } => {
            if degree < 2 {
                return Err(Error::InvalidArgument(format!("degree {degree} below 2")));
            }
            let g = textio::parse_graph(&read(&input)?, n)?;
            emit(out.as_deref(), &textio::write_cliques(&estimator::recover(&g, degree)))
        }
        Command::Trial {
            config,
            target_degree,
            seed,
            out,
        } => {
            let params = load_params(&config)?;
            let target = params.class_index(target_degree).ok_or_else(|| {
                Error::InvalidArgument(format!("no class with degree {target_degree}"))
            })?;
            let report = run_trial(&params, target, seed)?;
            emit(out.as_deref(), &(serde_json::to_string(&report)? + "\n"))
        }
        Command::Sweep { config, seed, out } => {
            let mut cfg = ExperimentConfig::from_json(&read(&config)?)?;
            if let Some(seed) = seed {
                cfg.base_seed = seed;
            }
            let path = out.or_else(|| {
                (!cfg.output_path.is_empty()).then(|| PathBuf::from(&cfg.output_path))
            });
            let rows = run_sweep(&cfg)?;
            emit(path.as_deref(), &sweep_csv(&rows))
        }
        Command::Gtable {
            degrees,
            deltas,
            out,
        } => emit(out.as_deref(), &gtable(&degrees, &deltas)?),
        Command::Probcheck {
            config,
            edges,
            n_grid,
            trials,
            seed,
            out,
        } => {
            let params = load_params(&config)?;
            let e = parse_edges(&edges)?;
            let grid = if n_grid.is_empty() { vec![params.n] } else { n_grid };
            let rows = probcheck(&e, &params, &grid, trials, seed)?;
            let mut text = format!("{PROBCHECK_HEADER}\n");
            for r in rows {
                text.push_str(&r.to_csv());
                text.push('\n');
            }
            emit(out.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
