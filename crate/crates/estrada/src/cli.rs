//! The `estrada` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use estrada_core::{
    estrada_index, graph_energy, invariant_set, spectrum, BoundId, FamilyId, Graph,
    DEFAULT_TOLERANCE, MAX_ENUMERATION_ORDER,
};

use crate::harness::{
    exhaustive_verify, family_sweep, find_equality_cases, random_campaign, sweep_points,
    verify_graphs, CorpusDescriptor, HarnessError, Mode, Outcome, RandomModel, Settings,
};
use crate::io::{parse_graph6, read_documents, write_graph6, FormatError, InputFormat};
use crate::report::{
    compute_csv_header, compute_csv_record, compute_json, sink_for, violations_json, OutputFormat,
    SCHEMA_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "estrada",
    version,
    about = "Estrada index lower bounds: compute, check and sweep"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, default_value = "table")]
    format: OutputFormat,

    /// Equality and violation tolerance
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tol)]
    tol: f64,

    /// Worker threads (default: available parallelism)
    #[arg(long, global = true, env = "ESTRADA_JOBS", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print invariants, Estrada index, energy and spectral radius
    Compute(Input),
    /// Evaluate all bounds on the given graphs
    CheckBounds(Input),
    /// Evaluate all bounds along a graph family
    Sweep {
        #[arg(long)]
        family: FamilyId,
        /// `name=range`, e.g. `n=3..8`, `p=1,2,4` or `q=5`; repeatable
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, Vec<usize>)>,
    },
    /// Evaluate all bounds on every labeled graph up to an order
    Exhaustive {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=MAX_ENUMERATION_ORDER as i64))]
        n_max: u8,
        #[arg(long, default_value = "all")]
        mode: Mode,
    },
    /// Evaluate all bounds on seeded random graphs
    Random {
        #[arg(long, value_enum, default_value_t = Model::Er)]
        model: Model,
        /// Order of Erdős–Rényi samples
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Edge probability
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Part sizes of bipartite samples
        #[arg(long, default_value_t = 8)]
        left: usize,
        #[arg(long, default_value_t = 8)]
        right: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List labeled graphs attaining a bound
    EqualityCases {
        #[arg(long)]
        bound: BoundId,
        #[arg(long, default_value_t = MAX_ENUMERATION_ORDER as u8,
              value_parser = clap::value_parser!(u8).range(1..=MAX_ENUMERATION_ORDER as i64))]
        n_max: u8,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// A single graph in graph6
    #[arg(long)]
    graph6: Option<String>,
    /// A graph6 (.g6) or edge-list (.el) file
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Input {
    #[command(flatten)]
    source: Source,
    /// Overrides the format inferred from the file extension
    #[arg(long, requires = "file")]
    input_format: Option<InputFormat>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Model {
    Er,
    Bipartite,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("`{s}`: {e}"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(format!("tolerance must be positive and finite, got `{s}`"))
    }
}

/// `n=3..8` (inclusive), `n=3..=8`, `p=1,2,4` or `q=5`.
fn parse_param(s: &str) -> Result<(String, Vec<usize>), String> {
    let (name, spec) = s
        .split_once('=')
        .ok_or_else(|| format!("`{s}`: expected name=values"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{s}`: `{t}` is not a non-negative integer"))
    };
    let values = if let Some((a, b)) = spec.split_once("..") {
        let (lo, hi) = (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?);
        if lo > hi {
            return Err(format!("`{s}`: empty range"));
        }
        (lo..=hi).collect()
    } else {
        spec.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    Ok((name.trim().to_string(), values))
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error(transparent)]
    Graph(#[from] estrada_core::GraphError),
    #[error("{0}")]
    Usage(String),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
    #[error("writing output: {0}")]
    Csv(#[from] csv::Error),
}

impl From<estrada_core::SpectralError> for CliError {
    fn from(e: estrada_core::SpectralError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn load(input: &Input) -> Result<Vec<(String, Graph)>, CliError> {
    if let Some(g6) = &input.source.graph6 {
        let g = parse_graph6(g6).map_err(|e| CliError::Usage(format!("--graph6 `{g6}`: {e}")))?;
        return Ok(vec![(write_graph6(&g)?, g)]);
    }
    let path = input.source.file.as_ref().expect("clap enforces one input");
    let docs = read_documents(path, input.input_format)?;
    docs.into_iter()
        .map(|d| Ok((write_graph6(&d.graph)?, d.graph)))
        .collect()
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(&cli, stdout) {
        Ok(None) => EXIT_OK,
        Ok(Some(outcome)) => exit_for(&outcome, stderr),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

/// Exit code for a finished campaign; violations are written to `stderr`
/// as a JSON counterexample block.
fn exit_for(outcome: &Outcome, stderr: &mut dyn Write) -> i32 {
    if outcome.violations.is_empty() {
        return EXIT_OK;
    }
    let block = json!({
        "counterexamples": violations_json(&outcome.violations),
        "corpus": crate::report::corpus_json(&outcome.corpus),
    });
    let _ = writeln!(
        stderr,
        "error: {} bound or lemma violation(s)\n{block:#}",
        outcome.violations.len()
    );
    EXIT_VIOLATION
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Option<Outcome>, CliError> {
    let settings = Settings {
        tol: cli.tol,
        jobs: cli.jobs.map(usize::from),
    };
    let mut sink = sink_for(cli.format, &mut *out);
    let outcome = match &cli.command {
        Command::Compute(input) => {
            drop(sink);
            compute(&load(input)?, cli.format, out)?;
            return Ok(None);
        }
        Command::CheckBounds(input) => {
            let loaded = load(input)?;
            let source = match (&input.source.graph6, &input.source.file) {
                (Some(_), _) => "graph6".to_string(),
                (_, Some(p)) => format!("file:{}", p.display()),
                _ => unreachable!(),
            };
            let graphs: Vec<Graph> = loaded.into_iter().map(|(_, g)| g).collect();
            let corpus = CorpusDescriptor {
                source,
                filters: String::new(),
                seed: None,
                tolerance: settings.tol,
                params: BTreeMap::new(),
            };
            verify_graphs(&graphs, corpus, settings, sink.as_mut())?
        }
        Command::Sweep { family, params } => {
            let mut map = BTreeMap::new();
            for (k, v) in params {
                if map.insert(k.clone(), v.clone()).is_some() {
                    return Err(CliError::Usage(format!("parameter `{k}` given twice")));
                }
            }
            let points = sweep_points(*family, &map)?;
            family_sweep(*family, &points, settings, sink.as_mut())?
        }
        Command::Exhaustive { n_max, mode } => {
            exhaustive_verify(usize::from(*n_max), *mode, settings, sink.as_mut())?
        }
        Command::Random {
            model,
            n,
            p,
            left,
            right,
            trials,
            seed,
        } => {
            let model = match model {
                Model::Er => RandomModel::ErdosRenyi { n: *n, p: *p },
                Model::Bipartite => RandomModel::Bipartite {
                    p: *left,
                    q: *right,
                    prob: *p,
                },
            };
            random_campaign(model, *trials, *seed, settings, sink.as_mut())?
        }
        Command::EqualityCases { bound, n_max } => {
            drop(sink);
            let cases = find_equality_cases(*bound, usize::from(*n_max), settings)?;
            equality_output(*bound, usize::from(*n_max), &cases, cli.format, out)?;
            return Ok(None);
        }
    };
    Ok(Some(outcome))
}

fn compute(
    graphs: &[(String, Graph)],
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let mut items = Vec::with_capacity(graphs.len());
    for (g6, g) in graphs {
        let inv = invariant_set(g)?;
        let s = spectrum(g)?;
        items.push((
            g6.as_str(),
            inv,
            estrada_index(&s),
            graph_energy(&s),
            s.largest(),
        ));
    }
    match format {
        OutputFormat::Json => {
            let graphs: Vec<_> = items
                .iter()
                .map(|(g6, inv, ee, en, l1)| compute_json(g6, inv, *ee, *en, *l1))
                .collect();
            writeln!(
                out,
                "{}",
                json!({ "version": SCHEMA_VERSION, "graphs": graphs })
            )?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(compute_csv_header())?;
            for (g6, inv, ee, en, l1) in &items {
                w.write_record(compute_csv_record(g6, inv, *ee, *en, *l1))?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            writeln!(
                out,
                "{:<16} {:>3} {:>4} {:>3} {:>3} {:>4} {:>5} {:>12} {:>16} {:>12} {:>12}",
                "graph6", "n", "m", "Δ", "δ", "diam", "tri", "randic", "ee", "energy", "lambda1"
            )?;
            for (g6, inv, ee, en, l1) in &items {
                writeln!(
                    out,
                    "{:<16} {:>3} {:>4} {:>3} {:>3} {:>4} {:>5} {:>12.6} {:>16.9} {:>12.6} {:>12.6}",
                    g6,
                    inv.n,
                    inv.m,
                    inv.max_degree,
                    inv.min_degree,
                    inv.diameter.to_string(),
                    inv.triangles,
                    inv.randic,
                    ee,
                    en,
                    l1
                )?;
            }
        }
    }
    Ok(())
}

fn equality_output(
    bound: BoundId,
    n_max: usize,
    cases: &[String],
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => writeln!(
            out,
            "{}",
            json!({ "version": SCHEMA_VERSION, "bound": bound.as_str(), "n_max": n_max, "graphs": cases })
        )?,
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["graph6"])?;
            for c in cases {
                w.write_record([c])?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            writeln!(
                out,
                "{} equality cases up to n = {n_max}: {}",
                bound,
                cases.len()
            )?;
            for c in cases {
                writeln!(out, "{c}")?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params() {
        assert_eq!(parse_param("n=3..5"), Ok(("n".into(), vec![3, 4, 5])));
        assert_eq!(parse_param("n=3..=5"), Ok(("n".into(), vec![3, 4, 5])));
        assert_eq!(parse_param("p=1,4"), Ok(("p".into(), vec![1, 4])));
        assert_eq!(parse_param("q=7"), Ok(("q".into(), vec![7])));
        assert!(parse_param("n=5..3").is_err());
        assert!(parse_param("n").is_err());
        assert!(parse_param("n=x").is_err());
    }

    #[test]
    fn tolerance_must_be_positive() {
        assert!(parse_tol("0").is_err());
        assert!(parse_tol("-1e-8").is_err());
        assert!(parse_tol("nan").is_err());
        assert_eq!(parse_tol("1e-6"), Ok(1e-6));
    }

    #[test]
    fn violations_exit_two_with_counterexamples() {
        use crate::harness::{Summary, Violation};
        let mut outcome = Outcome {
            corpus: CorpusDescriptor::default(),
            summary: Summary::default(),
            violations: Vec::new(),
        };
        let mut err = Vec::new();
        assert_eq!(exit_for(&outcome, &mut err), EXIT_OK);
        assert!(err.is_empty());
        outcome.violations.push(Violation {
            graph6: "Cl".into(),
            subject: "B6".into(),
            gap: -1e-3,
        });
        assert_eq!(exit_for(&outcome, &mut err), EXIT_VIOLATION);
        let text = String::from_utf8(err).unwrap();
        let json_start = text.find('{').unwrap();
        let v: serde_json::Value = serde_json::from_str(&text[json_start..]).unwrap();
        assert_eq!(v["counterexamples"][0]["graph6"], "Cl");
        assert_eq!(v["counterexamples"][0]["subject"], "B6");
    }

    #[test]
    fn in_process_run_writes_to_given_streams() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            ["estrada", "compute", "--graph6", "A_", "--format", "csv"],
            &mut out,
            &mut err,
        );
        assert_eq!(code, EXIT_OK);
        assert!(String::from_utf8(out).unwrap().starts_with("graph6,n,m"));
        assert!(err.is_empty());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
