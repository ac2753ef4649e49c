//! Command-line front end: builds scroll configurations, computes Graver
//! bases, circuits and reduced Gröbner bases, enumerates primitive colored
//! partition identities, evaluates degree bounds, and reproduces the
//! reference degree tables.
//!
//! Exit codes: 0 success, 2 usage error, 3 failed cross-check.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use scrollgb::cpi;
use scrollgb::gb::{self, TermOrder};
use scrollgb::graver::{self, degree_table, GraverOptions};
use scrollgb::io;
use scrollgb::par::Parallelism;
use scrollgb::reference;
use scrollgb::scroll::{self, PointConfig, ScrollSpec};

#[derive(Parser)]
#[command(
    name = "scrollgb",
    about = "Exact Graver bases, circuits and reduced Groebner bases for scroll ideals",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Scroll selection shared by most commands. `--scroll` takes the
/// `S(a_1,...,a_c)` degrees; `--blocks` takes raw block sizes `n_j = a_j+1`.
#[derive(Args, Clone)]
struct SpecArgs {
    /// Scroll degrees a_1,a_2,... (each >= 1), e.g. `--scroll 3,2`
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with = "blocks")]
    scroll: Option<Vec<usize>>,
    /// Raw block sizes n_1,n_2,... (each >= 1), e.g. `--blocks 4,3`
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    blocks: Option<Vec<usize>>,
}

impl SpecArgs {
    fn resolve(&self) -> Result<ScrollSpec, CliError> {
        match (&self.scroll, &self.blocks) {
            (Some(degrees), None) => {
                ScrollSpec::from_degrees(degrees).map_err(CliError::usage)
            }
            (None, Some(blocks)) => ScrollSpec::new(blocks.clone()).map_err(CliError::usage),
            _ => Err(CliError::Usage("supply exactly one of --scroll or --blocks".into())),
        }
    }
}

#[derive(Args, Clone)]
struct ConfigArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Read the configuration from a matrix file instead
    #[arg(long, conflicts_with_all = ["scroll", "blocks"])]
    matrix_file: Option<PathBuf>,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<PointConfig, CliError> {
        if let Some(path) = &self.matrix_file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {}", path.display(), e)))?;
            return io::config_from_files(&text, None).map_err(CliError::usage);
        }
        Ok(scroll::build_config(&self.spec.resolve()?))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write the parametrization matrix of a scroll
    Matrix {
        #[command(flatten)]
        spec: SpecArgs,
        /// Output file for the matrix (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Companion file receiving the colors/exponents label lines
        #[arg(long)]
        labels_file: Option<PathBuf>,
    },
    /// Compute the Graver basis
    Graver {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Degree-bounded completion, cross-checked against the identity
        /// oracle (scroll inputs only)
        #[arg(long)]
        bounded: bool,
        /// Run single-threaded
        #[arg(long)]
        sequential: bool,
    },
    /// Enumerate the circuits
    Circuits {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate primitive color-homogeneous identities
    Cpi {
        #[command(flatten)]
        spec: SpecArgs,
        /// Side-degree bound (defaults to the sharp degree bound)
        #[arg(long)]
        max_degree: Option<usize>,
        /// `text` or `json`
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Degree bounds for primitive binomials
    Bound {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Reproduce the reference degree tables (all rows when no scroll given)
    Table {
        #[command(flatten)]
        config: ConfigArgs,
        /// Per-row time budget in seconds for the full reproduction
        #[arg(long, default_value_t = 120)]
        budget: u64,
    },
    /// Reduced Groebner basis for a weight order, or coverage sampling
    Gb {
        #[command(flatten)]
        config: ConfigArgs,
        /// Weight vector w_1,w_2,... (defaults to all ones)
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        weights: Option<Vec<i64>>,
        /// Number of random weight orders to sample; switches to coverage
        /// reporting
        #[arg(long)]
        trials: Option<usize>,
        /// Random seed for --trials
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Project a scroll configuration onto kept exponents
    Project {
        #[command(flatten)]
        spec: SpecArgs,
        /// Kept exponents per color, e.g. `--keep 1:1,3,4 --keep 2:1,2,3`
        #[arg(long)]
        keep: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        labels_file: Option<PathBuf>,
    },
    /// Dimension of the state polytope
    Statedim {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Cross-check the completion engine against the identity oracle
    OracleCheck {
        #[command(flatten)]
        spec: SpecArgs,
    },
}

enum CliError {
    Usage(String),
    Integrity(String),
    Other(String),
}

impl CliError {
    fn usage(e: scrollgb::Error) -> Self {
        CliError::Usage(e.to_string())
    }

    fn other(e: scrollgb::Error) -> Self {
        CliError::Other(e.to_string())
    }
}

/// Writes to the requested path (honoring SCROLLGB_OUT_DIR for relative
/// paths) or to stdout when no path is given.
fn emit(output: Option<&Path>, content: &str) -> Result<(), CliError> {
    match output {
        None => {
            print!("{}", content);
            Ok(())
        }
        Some(path) => {
            let target = match std::env::var_os("SCROLLGB_OUT_DIR") {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path.to_path_buf(),
            };
            std::fs::write(&target, content)
                .map_err(|e| CliError::Other(format!("cannot write {}: {}", target.display(), e)))
        }
    }
}

fn histogram_line(hist: &BTreeMap<usize, usize>) -> String {
    hist.iter()
        .map(|(d, c)| format!("{}:{}", d, c))
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Matrix { spec, output, labels_file } => {
            let spec = spec.resolve()?;
            let config = scroll::build_config(&spec);
            emit(output.as_deref(), &io::write_matrix(config.matrix()))?;
            if let Some(path) = labels_file {
                emit(Some(&path), &io::write_labels(config.labels().unwrap()))?;
            }
            Ok(())
        }
        Command::Graver { config, output, bounded, sequential } => {
            let config = config.resolve()?;
            let mut opts = GraverOptions::default();
            if sequential {
                opts.parallelism = Parallelism::Sequential;
            }
            if bounded {
                let spec = config
                    .origin()
                    .ok_or_else(|| {
                        CliError::Usage("--bounded needs a scroll configuration".into())
                    })?
                    .clone();
                opts.degree_cutoff = Some(cpi::enumeration_bound(&spec));
                let basis = graver::graver_with(&config, &opts).map_err(CliError::other)?;
                let oracle =
                    cpi::oracle_vectors(&spec, opts.degree_cutoff.unwrap(), opts.parallelism);
                let engine: Vec<Vec<i64>> =
                    basis.elements().iter().map(|e| e.entries().to_vec()).collect();
                if oracle != engine {
                    return Err(CliError::Integrity(format!(
                        "bounded completion disagrees with the identity oracle \
                         (engine {}, oracle {})",
                        engine.len(),
                        oracle.len()
                    )));
                }
                println!("graver: {} elements (bounded mode, oracle-certified)", basis.len());
                if let Some(h) = basis.degree_histogram() {
                    println!("degrees: {}", histogram_line(h));
                }
                return emit(
                    output.as_deref(),
                    &io::write_vector_rows(basis.elements(), config.columns()),
                );
            }
            let basis = graver::graver_with(&config, &opts).map_err(CliError::other)?;
            println!("graver: {} elements", basis.len());
            if let Some(h) = basis.degree_histogram() {
                println!("degrees: {}", histogram_line(h));
            }
            emit(output.as_deref(), &io::write_vector_rows(basis.elements(), config.columns()))
        }
        Command::Circuits { config, output } => {
            let config = config.resolve()?;
            let circuits = graver::circuits(&config).map_err(CliError::other)?;
            println!("circuits: {} elements", circuits.len());
            let mut degrees: BTreeMap<usize, usize> = BTreeMap::new();
            if config.is_homogeneous() {
                for c in &circuits {
                    *degrees.entry(c.degree()).or_insert(0) += 1;
                }
                println!("degrees: {}", histogram_line(&degrees));
            }
            emit(output.as_deref(), &io::write_vector_rows(&circuits, config.columns()))
        }
        Command::Cpi { spec, max_degree, format, output } => {
            let spec = spec.resolve()?;
            let bound = max_degree.unwrap_or_else(|| cpi::enumeration_bound(&spec));
            let list = cpi::enumerate_pcpi(&spec, bound);
            println!("primitive identities (side degree <= {}): {}", bound, list.len());
            let body = match format.as_str() {
                "text" => {
                    list.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\n") + "\n"
                }
                "json" => {
                    let items: Vec<String> = list.iter().map(cpi::cpi_to_json).collect();
                    format!("[{}]\n", items.join(","))
                }
                other => {
                    return Err(CliError::Usage(format!("unknown format {:?}", other)));
                }
            };
            emit(output.as_deref(), &body)
        }
        Command::Bound { spec } => {
            let spec = spec.resolve()?;
            if spec.color_count() < 2 {
                let d = scroll::scroll_degree(&spec);
                println!("sharp={} (curve; empirical bound n-1)", d);
                return Ok(());
            }
            let report = scroll::sharp_degree_bound(&spec).map_err(CliError::usage)?;
            let ((_, u), (_, v)) = report.witness;
            println!(
                "sharp={} naive={} witness=({},{})",
                report.sharp_bound, report.naive_bound, u, v
            );
            if !report.reduction_trail.is_empty() {
                let trail: Vec<String> = report
                    .reduction_trail
                    .iter()
                    .map(|(color, dec)| format!("color {} down {}", color, dec))
                    .collect();
                println!("trail: {}", trail.join(", "));
            }
            let config = scroll::build_config(&spec);
            let general = scroll::general_toric_bound(&config).map_err(CliError::other)?;
            println!(
                "scroll-degree={} general-toric-bound={}{}",
                scroll::scroll_degree(&spec),
                general.ceil(),
                if general.is_integral() { "" } else { " (rounded up from a half-integer)" }
            );
            Ok(())
        }
        Command::Table { config, budget } => {
            if config.matrix_file.is_some()
                || config.spec.scroll.is_some()
                || config.spec.blocks.is_some()
            {
                let config = config.resolve()?;
                let basis = graver::graver(&config).map_err(CliError::other)?;
                let table = degree_table(&basis).map_err(CliError::other)?;
                println!("degrees: {}", histogram_line(&table));
                println!("total: {}", basis.len());
                return Ok(());
            }
            reproduce_table(budget)
        }
        Command::Gb { config, weights, trials, seed, output } => {
            let config = config.resolve()?;
            if let Some(trials) = trials {
                let report =
                    gb::universal_sample(&config, trials, seed).map_err(|e| match e {
                        scrollgb::Error::Integrity(msg) => CliError::Integrity(msg),
                        other => CliError::Other(other.to_string()),
                    })?;
                println!(
                    "coverage: {}/{} Graver elements realized over {} sampled orders",
                    report.covered, report.graver, trials
                );
                let json = serde_json::to_string_pretty(&report)
                    .expect("coverage report serializes");
                return emit(output.as_deref(), &(json + "\n"));
            }
            let order = match weights {
                Some(w) => TermOrder::new(w).map_err(CliError::usage)?,
                None => TermOrder::all_ones(config.columns()),
            };
            if order.weights().len() != config.columns() {
                return Err(CliError::Usage(format!(
                    "{} weights for {} columns",
                    order.weights().len(),
                    config.columns()
                )));
            }
            let gb = gb::reduced_gb_of_config(&config, &order).map_err(CliError::other)?;
            println!("reduced basis: {} elements", gb.len());
            if let Some(d) = gb.max_degree() {
                println!("max degree: {}", d);
            }
            emit(output.as_deref(), &io::write_reduced_gb(&gb).map_err(CliError::other)?)
        }
        Command::Project { spec, keep, output, labels_file } => {
            let spec = spec.resolve()?;
            let config = scroll::build_config(&spec);
            let mut keep_sets: Vec<Vec<usize>> = vec![Vec::new(); spec.color_count()];
            for item in &keep {
                let (color, exps) = item
                    .split_once(':')
                    .ok_or_else(|| CliError::Usage(format!("bad --keep {:?}", item)))?;
                let color: usize = color
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad color in --keep {:?}", item)))?;
                if color < 1 || color > spec.color_count() {
                    return Err(CliError::Usage(format!("color {} out of range", color)));
                }
                keep_sets[color - 1] = exps
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse()
                            .map_err(|_| CliError::Usage(format!("bad exponent {:?}", t)))
                    })
                    .collect::<Result<_, _>>()?;
            }
            // unspecified colors keep everything
            for (k, set) in keep_sets.iter_mut().enumerate() {
                if set.is_empty() {
                    *set = (1..=spec.blocks()[k]).collect();
                }
            }
            let projected = scroll::project_config(&config, &keep_sets).map_err(CliError::usage)?;
            println!(
                "projected configuration: {} of {} columns kept",
                projected.columns(),
                config.columns()
            );
            emit(output.as_deref(), &io::write_matrix(projected.matrix()))?;
            if let Some(path) = labels_file {
                emit(Some(&path), &io::write_labels(projected.labels().unwrap()))?;
            }
            Ok(())
        }
        Command::Statedim { config } => {
            let config = config.resolve()?;
            println!("{}", scroll::state_polytope_dim(&config));
            Ok(())
        }
        Command::OracleCheck { spec } => {
            let spec = spec.resolve()?;
            let bound = cpi::enumeration_bound(&spec);
            let oracle = cpi::oracle_vectors(&spec, bound, Parallelism::default());
            let config = scroll::build_config(&spec);
            let basis = graver::graver(&config).map_err(CliError::other)?;
            let engine: Vec<Vec<i64>> =
                basis.elements().iter().map(|e| e.entries().to_vec()).collect();
            if oracle == engine {
                println!(
                    "oracle-check {}: OK ({} elements by both routes)",
                    spec.name(),
                    engine.len()
                );
                Ok(())
            } else {
                Err(CliError::Integrity(format!(
                    "{}: identity oracle found {} elements, completion engine {}",
                    spec.name(),
                    oracle.len(),
                    engine.len()
                )))
            }
        }
    }
}

fn reproduce_table(budget_secs: u64) -> Result<(), CliError> {
    let mut failures = Vec::new();
    let mut skipped = 0usize;
    for row in reference::KNOWN_TABLES {
        let spec = ScrollSpec::new(row.blocks.to_vec()).expect("reference blocks are valid");
        let config = scroll::build_config(&spec);
        let budget = Duration::from_secs(budget_secs.min(row.budget_secs));
        let opts = GraverOptions {
            deadline: Some(Instant::now() + budget),
            ..Default::default()
        };
        let started = Instant::now();
        match graver::graver_with(&config, &opts) {
            Ok(basis) => {
                let computed = degree_table(&basis).map_err(CliError::other)?;
                let expected: BTreeMap<usize, usize> = row.histogram.iter().copied().collect();
                if computed == expected {
                    println!("{:<12} OK    {:.1}s  {}", row.name, started.elapsed().as_secs_f64(), histogram_line(&computed));
                } else {
                    println!("{:<12} MISMATCH", row.name);
                    for (d, want) in &expected {
                        let got = computed.get(d).copied().unwrap_or(0);
                        if got != *want {
                            println!("    degree {}: computed {} expected {}", d, got, want);
                            failures.push(format!("{} degree {}", row.name, d));
                        }
                    }
                    for (d, got) in &computed {
                        if !expected.contains_key(d) {
                            println!("    degree {}: computed {} expected 0", d, got);
                            failures.push(format!("{} degree {}", row.name, d));
                        }
                    }
                }
            }
            Err(scrollgb::Error::Timeout) => {
                println!("{:<12} SKIPPED (over {}s budget)", row.name, budget.as_secs());
                skipped += 1;
            }
            Err(e) => return Err(CliError::Other(format!("{}: {}", row.name, e))),
        }
    }
    println!("rows skipped: {}", skipped);
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Integrity(format!("mismatched cells: {}", failures.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(CliError::Integrity(msg)) => {
            eprintln!("cross-check failure: {}", msg);
            ExitCode::from(3)
        }
        Err(CliError::Other(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::FAILURE
        }
    }
}
