//! Per-graph verification: filter, one pass of each heuristic, then the exact
//! search raced against repeated long-cycle walks. Streams of graph6 lines
//! are verified one graph at a time and tallied per order.

mod report;

use std::fs;
use std::io::{self, BufRead};
use std::path::{Path, PathBuf};
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cancel::CancelToken;
use crate::canon::{canonical_form, MAX_CANON_ORDER};
use crate::exact::{decide, ExactStatus, SearchBudget};
use crate::filter::{apply_filter, Criterion};
use crate::graph::{hajos_bound, validate_decomposition, Decomposition, Graph};
use crate::graph6::{read_graph6, to_graph6, LineError};
use crate::heuristics::{decompose, rlc_repeat, RngStream, Strategy, DEFAULT_MAX_ATTEMPTS};
use crate::ip::{build_ip_gen, build_ip_hd, emit_lp, IpError};

pub use report::{emit_report, emit_filter_report, FilterReport, FilterTally, ReportFormat, RunReport, Tally};

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Wall budget for one graph; `None` waits indefinitely.
    pub timeout: Option<Duration>,
    /// Race repeated long-cycle walks against the exact search.
    pub race: bool,
    pub max_attempts: u64,
    pub node_limit: Option<u64>,
    /// Directory receiving an LP model for every graph that reaches the exact stage.
    pub emit_lp: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            timeout: Some(Duration::from_secs(60)),
            race: true,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            node_limit: None,
            emit_lp: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FilterReason {
    Criterion(Criterion),
    NotBiconnected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutcomeTag {
    FilteredNotMinimal(FilterReason),
    HeuristicVerified(Strategy),
    ExactVerified,
    RaceRlcVerified,
    Counterexample(Graph),
    Aborted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub tag: OutcomeTag,
    pub decomposition: Option<Decomposition>,
    pub elapsed: Duration,
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("graph has a vertex of odd degree")]
    NotEven,
    #[error("graph has no edges or its edges are not connected")]
    NotConnected,
    #[error("writing LP model: {0}")]
    Io(#[from] io::Error),
    #[error("building LP model: {0}")]
    Model(#[from] IpError),
    #[error("{stage} returned an invalid decomposition")]
    InvalidDecomposition { stage: &'static str },
}

/// FNV-1a, used to derive a per-graph seed that is stable across platforms.
fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Random stream for `g` that depends on the master seed and the graph's
/// isomorphism class, not on its position in the input.
pub fn graph_stream(seed: u64, g: &Graph) -> RngStream {
    let key = if g.order() <= MAX_CANON_ORDER { canonical_form(g) } else { to_graph6(g).into_bytes() };
    RngStream::new(seed).substream(fnv1a(&key))
}

fn checked(g: &Graph, d: Decomposition, stage: &'static str) -> Result<Decomposition, VerifyError> {
    if validate_decomposition(g, &d).is_ok() && d.within_bound() {
        Ok(d)
    } else {
        Err(VerifyError::InvalidDecomposition { stage })
    }
}

/// Runs the three stages on one graph.
pub fn verify_graph(g: &Graph, config: &VerifyConfig) -> Result<VerifyOutcome, VerifyError> {
    let started = Instant::now();
    if !g.is_even() {
        return Err(VerifyError::NotEven);
    }
    if g.size() == 0 || !g.is_connected() {
        return Err(VerifyError::NotConnected);
    }
    let done = |tag, decomposition| Ok(VerifyOutcome { tag, decomposition, elapsed: started.elapsed() });

    let verdict = apply_filter(g);
    if !verdict.biconnected {
        return done(OutcomeTag::FilteredNotMinimal(FilterReason::NotBiconnected), None);
    }
    if let Some(c) = verdict.first_violated {
        return done(OutcomeTag::FilteredNotMinimal(FilterReason::Criterion(c)), None);
    }

    let stream = graph_stream(config.seed, g);
    for (k, strategy) in Strategy::ALL.into_iter().enumerate() {
        let outcome = decompose(g, strategy, &mut stream.substream(k as u64)).expect("input is even with edges");
        if outcome.within_bound {
            let d = checked(g, outcome.decomposition, strategy.name())?;
            return done(OutcomeTag::HeuristicVerified(strategy), Some(d));
        }
    }

    if let Some(dir) = &config.emit_lp {
        write_lp(g, dir)?;
    }
    let deadline = config.timeout.map(|t| started + t);
    let (exact, rlc) = race(g, config, stream.substream(Strategy::ALL.len() as u64), deadline);
    match (exact, rlc) {
        (ExactStatus::Feasible(d), _) => {
            let d = checked(g, d, "exact search")?;
            done(OutcomeTag::ExactVerified, Some(d))
        }
        (ExactStatus::Infeasible, _) => done(OutcomeTag::Counterexample(*g), None),
        (ExactStatus::Aborted, Some(d)) => {
            let d = checked(g, d, "repeated RLC")?;
            done(OutcomeTag::RaceRlcVerified, Some(d))
        }
        (ExactStatus::Aborted, None) => done(OutcomeTag::Aborted, None),
    }
}

/// Exact search and (optionally) repeated RLC sharing one cancellation flag;
/// whichever settles the question first stops the other.
fn race(g: &Graph, config: &VerifyConfig, mut rng: RngStream, deadline: Option<Instant>) -> (ExactStatus, Option<Decomposition>) {
    let cancel = match deadline {
        Some(d) => CancelToken::with_deadline(d),
        None => CancelToken::new(),
    };
    let budget = SearchBudget { k: hajos_bound(g.order()), node_limit: config.node_limit, cancel: cancel.clone() };
    if !config.race {
        return (decide(g, &budget).status, None);
    }
    thread::scope(|s| {
        let exact = s.spawn(|| {
            let status = decide(g, &budget).status;
            if status != ExactStatus::Aborted {
                budget.cancel.cancel();
            }
            status
        });
        let walks = s.spawn(|| {
            let found = rlc_repeat(g, &mut rng, &cancel, config.max_attempts);
            if found.is_some() {
                cancel.cancel();
            }
            found
        });
        (exact.join().expect("exact search panicked"), walks.join().expect("RLC loop panicked"))
    })
}

/// IP-HD when the graph has an anchor, IP-Gen otherwise.
fn write_lp(g: &Graph, dir: &Path) -> Result<(), VerifyError> {
    let (model, kind) = match build_ip_hd(g) {
        Ok(m) => (m, "hd"),
        Err(_) => (build_ip_gen(g)?, "gen"),
    };
    fs::create_dir_all(dir)?;
    fs::write(dir.join(lp_file_name(g, kind)), emit_lp(&model))?;
    Ok(())
}

/// `n{order}_{hex of the graph6 string}_{kind}.lp`; graph6 itself may contain
/// characters that are awkward in file names.
pub fn lp_file_name(g: &Graph, kind: &str) -> String {
    let hex: String = to_graph6(g).bytes().map(|b| format!("{b:02x}")).collect();
    format!("n{}_{hex}_{kind}.lp", g.order())
}

#[derive(Debug, Clone, Default)]
pub struct StreamOptions {
    pub halt_on_counterexample: bool,
    /// Record unreadable or unsuitable lines and continue instead of failing.
    pub skip_invalid: bool,
}

#[derive(Debug, Error)]
pub enum StreamError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Parse(#[from] LineError),
    #[error("line {line}: {error}")]
    Verify { line: usize, error: VerifyError },
}

/// Verifies every graph of a graph6 stream. `on_counterexample` sees each
/// counterexample as soon as it is found.
pub fn verify_stream<R: BufRead>(
    source: R,
    config: &VerifyConfig,
    options: &StreamOptions,
    mut on_counterexample: impl FnMut(&Graph),
) -> Result<RunReport, StreamError> {
    let started = Instant::now();
    let mut report = RunReport::default();
    for item in read_graph6(source) {
        let (line, parsed) = item?;
        let g = match parsed {
            Ok(g) => g,
            Err(e) if options.skip_invalid => {
                report.rejected.push((line, e.error.to_string()));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let outcome = match verify_graph(&g, config) {
            Ok(o) => o,
            Err(error @ (VerifyError::NotEven | VerifyError::NotConnected)) if options.skip_invalid => {
                report.rejected.push((line, error.to_string()));
                continue;
            }
            Err(error) => return Err(StreamError::Verify { line, error }),
        };
        report.record(&g, &outcome);
        if let OutcomeTag::Counterexample(c) = &outcome.tag {
            on_counterexample(c);
            if options.halt_on_counterexample {
                break;
            }
        }
    }
    report.wall_time = started.elapsed();
    Ok(report)
}

/// Filter-only tallies of a graph6 stream.
pub fn filter_stream<R: BufRead>(source: R) -> Result<FilterReport, StreamError> {
    let mut report = FilterReport::default();
    for item in read_graph6(source) {
        let (_, parsed) = item?;
        report.record(&parsed?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::graph6::parse_graph6;

    fn exact_only() -> VerifyConfig {
        VerifyConfig { race: false, ..VerifyConfig::default() }
    }

    #[test]
    fn filtered_examples() {
        let c6 = verify_graph(&named::cycle(6), &exact_only()).unwrap();
        assert_eq!(c6.tag, OutcomeTag::FilteredNotMinimal(FilterReason::Criterion(Criterion::I)));
        let k7 = verify_graph(&named::complete(7), &exact_only()).unwrap();
        assert_eq!(k7.tag, OutcomeTag::FilteredNotMinimal(FilterReason::Criterion(Criterion::V)));
        let bowtie = verify_graph(&named::bowtie(), &exact_only()).unwrap();
        assert_eq!(bowtie.tag, OutcomeTag::FilteredNotMinimal(FilterReason::NotBiconnected));
    }

    #[test]
    fn rejects_unsuitable_input() {
        assert!(matches!(verify_graph(&named::path(4), &exact_only()), Err(VerifyError::NotEven)));
        assert!(matches!(verify_graph(&Graph::empty(3).unwrap(), &exact_only()), Err(VerifyError::NotConnected)));
        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(matches!(verify_graph(&two, &exact_only()), Err(VerifyError::NotConnected)));
    }

    #[test]
    fn stream_errors_carry_line_numbers() {
        let input = "Bw\n\nB!\n";
        let err = verify_stream(input.as_bytes(), &exact_only(), &StreamOptions::default(), |_| {}).unwrap_err();
        assert!(matches!(err, StreamError::Parse(LineError { line: 3, .. })), "{err}");
        let skip = StreamOptions { skip_invalid: true, ..Default::default() };
        let report = verify_stream("Bw\nB!\nCr\nCF\n".as_bytes(), &exact_only(), &skip, |_| {}).unwrap();
        assert_eq!(report.rejected.iter().map(|r| r.0).collect::<Vec<_>>(), vec![2, 4]);
        assert_eq!(report.rows[&3].total, 1);
        assert_eq!(report.rows[&4].total, 1);
    }

    #[test]
    fn empty_stream() {
        let report = verify_stream(&b""[..], &exact_only(), &StreamOptions::default(), |_| {}).unwrap();
        assert!(report.rows.is_empty());
        assert!(!report.has_counterexamples() && !report.has_aborted());
    }

    #[test]
    fn seeds_follow_isomorphism_class() {
        let a = named::cycle(5);
        let b = parse_graph6(&to_graph6(&a.relabel(&[2, 4, 1, 0, 3]))).unwrap();
        assert_eq!(graph_stream(7, &a).seed(), graph_stream(7, &b).seed());
        assert_ne!(graph_stream(7, &a).seed(), graph_stream(8, &a).seed());
    }
}
