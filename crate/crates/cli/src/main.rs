use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use hajos_core::generator::enumerate_nonisomorphic;
use hajos_core::graph6::read_graph6;
use hajos_core::ip::{build_ip_gen, build_ip_hd, emit_lp};
use hajos_core::pipeline::{
    emit_filter_report, emit_report, filter_stream, lp_file_name, verify_stream, ReportFormat, StreamOptions,
    VerifyConfig,
};
use hajos_core::{hajos_bound, to_graph6};

const EXIT_COUNTEREXAMPLE: u8 = 2;
const EXIT_ABORTED: u8 = 3;

type CliResult = Result<ExitCode, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(name = "hajos", version, about = "Cycle decompositions of small Eulerian graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ReportFormat::Csv,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Formulation {
    Hd,
    Gen,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every graph of a graph6 stream and print per-order tallies.
    Verify {
        /// graph6 file, or - for standard input.
        input: PathBuf,
        #[arg(long, env = "HAJOS_SEED", default_value_t = 0)]
        seed: u64,
        /// Per-graph wall budget in milliseconds; 0 disables it.
        #[arg(long, default_value_t = 60_000)]
        timeout_ms: u64,
        /// Run only the exact search in the last stage.
        #[arg(long)]
        no_race: bool,
        #[arg(long, default_value_t = hajos_core::heuristics::DEFAULT_MAX_ATTEMPTS)]
        max_attempts: u64,
        /// Cap on exact search nodes per graph.
        #[arg(long)]
        node_limit: Option<u64>,
        /// Write an LP model for each graph that reaches the exact stage.
        #[arg(long, value_name = "DIR")]
        emit_lp: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        report: Format,
        #[arg(long)]
        halt_on_counterexample: bool,
        /// Append counterexamples (graph6) to this file instead of standard error.
        #[arg(long, value_name = "FILE")]
        counterexamples: Option<PathBuf>,
        /// Skip unreadable or non-Eulerian lines instead of stopping.
        #[arg(long)]
        skip_invalid: bool,
    },
    /// List one graph per isomorphism class of biconnected Eulerian graphs.
    Generate {
        #[arg(long)]
        order: usize,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Print the summary as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the cycle bound for an order.
    Bound {
        #[arg(long)]
        order: usize,
    },
    /// Write one LP model per graph of a graph6 stream.
    EmitLp {
        input: PathBuf,
        #[arg(long, value_enum)]
        formulation: Formulation,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Tally which minimum-counterexample condition each graph fails first.
    Filter {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        report: Format,
    },
}

fn open_input(path: &Path) -> io::Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        Ok(Box::new(BufReader::new(File::open(path)?)))
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Verify {
            input,
            seed,
            timeout_ms,
            no_race,
            max_attempts,
            node_limit,
            emit_lp,
            report,
            halt_on_counterexample,
            counterexamples,
            skip_invalid,
        } => {
            let config = VerifyConfig {
                seed,
                timeout: (timeout_ms > 0).then(|| Duration::from_millis(timeout_ms)),
                race: !no_race,
                max_attempts,
                node_limit,
                emit_lp,
            };
            let options = StreamOptions { halt_on_counterexample, skip_invalid };
            let mut sink: Box<dyn Write> = match &counterexamples {
                Some(p) => Box::new(fs::OpenOptions::new().create(true).append(true).open(p)?),
                None => Box::new(io::stderr()),
            };
            let mut sink_error = None;
            let result = verify_stream(open_input(&input)?, &config, &options, |g| {
                let written = writeln!(sink, "{}", to_graph6(g)).and_then(|_| sink.flush());
                if let Err(e) = written {
                    sink_error.get_or_insert(e);
                }
            })?;
            if let Some(e) = sink_error {
                return Err(e.into());
            }
            print!("{}", emit_report(&result, report.into()));
            for (line, reason) in &result.rejected {
                eprintln!("skipped line {line}: {reason}");
            }
            for g in &result.aborted {
                eprintln!("aborted: {g}");
            }
            eprintln!("wall time {:.3}s", result.wall_time.as_secs_f64());
            Ok(if result.has_counterexamples() {
                ExitCode::from(EXIT_COUNTEREXAMPLE)
            } else if result.has_aborted() {
                ExitCode::from(EXIT_ABORTED)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Generate { order, out, json } => {
            let (graphs, summary) = enumerate_nonisomorphic(order)?;
            let mut w: Box<dyn Write> = match &out {
                Some(p) => Box::new(BufWriter::new(File::create(p)?)),
                None => Box::new(BufWriter::new(io::stdout().lock())),
            };
            for g in &graphs {
                writeln!(w, "{}", to_graph6(g))?;
            }
            w.flush()?;
            if json {
                eprintln!("{}", serde_json::to_string(&summary)?);
            } else {
                eprintln!(
                    "n={} labeled_even={} labeled_biconnected={} classes={} elapsed={:.3}s",
                    summary.n,
                    summary.labeled_even_count,
                    summary.connected_biconnected_count,
                    summary.nonisomorphic_count,
                    summary.elapsed.as_secs_f64()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound { order } => {
            println!("{}", hajos_bound(order));
            Ok(ExitCode::SUCCESS)
        }
        Command::EmitLp { input, formulation, out } => {
            fs::create_dir_all(&out)?;
            let mut failed = false;
            for item in read_graph6(open_input(&input)?) {
                let (line, parsed) = item?;
                let g = parsed?;
                let built = match formulation {
                    Formulation::Gen => build_ip_gen(&g).map(|m| (m, "gen")),
                    Formulation::Hd => build_ip_hd(&g).map(|m| (m, "hd")),
                };
                let (model, kind) = match built {
                    Ok(pair) => pair,
                    Err(e) => {
                        eprintln!("line {line}: {e}");
                        failed = true;
                        continue;
                    }
                };
                fs::write(out.join(lp_file_name(&g, kind)), emit_lp(&model))?;
            }
            Ok(if failed { ExitCode::FAILURE } else { ExitCode::SUCCESS })
        }
        Command::Filter { input, report } => {
            let result = filter_stream(open_input(&input)?)?;
            print!("{}", emit_filter_report(&result, report.into()));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
