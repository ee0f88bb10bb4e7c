mod checkpoint;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use forcing_core::families::FamilySpec;
use forcing_core::forcing::{cycle_packing, max_anti_forcing, spectrum};
use forcing_core::report::{verify_lines, Report, Universe};
use forcing_core::verifier::{Status, VerifyOptions};
use forcing_core::{graph6, Edge, Error, Graph, Limits};
use serde::Serialize;
use serde_json::json;

const EXIT_FAIL: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_CONJECTURE: u8 = 4;

#[derive(Parser)]
#[command(name = "forcing-lab", version, about = "Forcing numbers of perfect matchings and theorem sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "FORCING_LAB_WORKERS")]
    workers: Option<usize>,

    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args)]
struct LimitArgs {
    /// Maximum number of perfect matchings enumerated per graph.
    #[arg(long, global = true, default_value_t = 100_000)]
    pm_limit: usize,
    /// Maximum branch-and-bound nodes per search.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    node_limit: u64,
    /// Maximum number of alternating cycles listed per matching.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cycle_limit: usize,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            pm_limit: self.pm_limit,
            node_limit: self.node_limit,
            cycle_limit: self.cycle_limit,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the full JSON report ("-" for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write one JSON verdict per line ("-" for stdout).
    #[arg(long)]
    jsonl: Option<PathBuf>,
    /// Write the CSV projection of the verdicts ("-" for stdout).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Exit with status 4 when a conjecture counterexample is found.
    #[arg(long)]
    strict_conjectures: bool,
    /// Skip anti-forcing numbers and the checks that need them.
    #[arg(long)]
    no_anti_forcing: bool,
}

impl OutputArgs {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            anti_forcing: !self.no_anti_forcing,
            ..VerifyOptions::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Forcing spectrum, anti-forcing number and witnesses of one graph.
    Compute {
        /// A graph6 string or a family spec such as "H:6,2" or "Q:3".
        input: String,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print graph6 lines for the members of a family.
    Generate {
        /// Family spec; partial specs such as "G1:3" expand to every member.
        /// With --range, the token "n" is replaced by each value.
        spec: String,
        /// Inclusive range for "n", written LO..HI.
        #[arg(long)]
        range: Option<String>,
        /// Print at most this many graphs.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Verify every graph6 line of a file ("-" for stdin).
    Verify {
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify every graph of an exhaustive universe.
    Sweep {
        #[arg(long, value_enum, default_value_t = Mode::AllGraphs)]
        mode: Mode,
        /// Largest order for all-graphs mode.
        #[arg(long, default_value_t = 6)]
        max_order: usize,
        /// Largest side size for bipartite-balanced mode.
        #[arg(long, default_value_t = 3)]
        side: usize,
        /// One graph per isomorphism class (the default).
        #[arg(long, overrides_with = "no_dedup")]
        dedup: bool,
        /// Every labeled graph.
        #[arg(long)]
        no_dedup: bool,
        /// Resume from and periodically save to this file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Graphs between checkpoints.
        #[arg(long, default_value_t = 1000)]
        checkpoint_every: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    AllGraphs,
    BipartiteBalanced,
}

/// Failure carrying the process exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn parse_error(e: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code: EXIT_PARSE,
        error: e.into(),
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(e) if e.is_resource() => EXIT_RESOURCE,
            Some(Error::Graph6(_) | Error::FamilyParse(_) | Error::InvalidParameters { .. }) => EXIT_PARSE,
            _ => EXIT_FAIL,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    if let Some(workers) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let limits = cli.limits.limits();
    match &cli.command {
        Command::Compute { input, json } => compute(input, *json, &limits),
        Command::Generate { spec, range, count } => generate(spec, range.as_deref(), *count),
        Command::Verify { input, output } => {
            let lines = read_lines(input)?;
            let started = Instant::now();
            let records = verify_lines(&lines, &limits, output.options());
            let config = json!({
                "command": "verify",
                "input": input.display().to_string(),
                "limits": limits,
                "anti_forcing": !output.no_anti_forcing,
            });
            let report = Report::new(config, records);
            eprintln!("{} lines, {} records in {:.2?}", lines.len(), report.records.len(), started.elapsed());
            finish(&report, output)
        }
        Command::Sweep {
            mode,
            max_order,
            side,
            no_dedup,
            checkpoint,
            checkpoint_every,
            output,
            ..
        } => {
            let universe = match mode {
                Mode::AllGraphs => Universe::AllGraphs {
                    max_order: *max_order,
                    dedup: !no_dedup,
                },
                Mode::BipartiteBalanced => Universe::BipartiteBalanced { max_side: *side },
            };
            let started = Instant::now();
            let graphs = universe.graphs().map_err(parse_error)?;
            let config = json!({
                "command": "sweep",
                "universe": universe,
                "require_pm": true,
                "limits": limits,
                "anti_forcing": !output.no_anti_forcing,
            });
            let records = match checkpoint {
                Some(path) => checkpoint::run(path, &config, &graphs, *checkpoint_every, &limits, output.options())?,
                None => forcing_core::report::verify_graphs(&graphs, &limits, output.options()),
            };
            let report = Report::new(config, records);
            eprintln!(
                "{universe}: {} graphs, {} records in {:.2?}",
                graphs.len(),
                report.records.len(),
                started.elapsed()
            );
            finish(&report, output)
        }
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>, Failure> {
    let reader: Box<dyn BufRead> = if path.as_os_str() == "-" {
        Box::new(BufReader::new(io::stdin()))
    } else {
        let file = File::open(path).with_context(|| format!("cannot open {}", path.display())).map_err(parse_error)?;
        Box::new(BufReader::new(file))
    };
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        if !line.is_empty() {
            out.push(line.to_string());
        }
    }
    Ok(out)
}

fn open_output(path: &Path) -> io::Result<Box<dyn Write>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(io::stdout().lock()))
    } else {
        Ok(Box::new(BufWriter::new(File::create(path)?)))
    }
}

fn finish(report: &Report, output: &OutputArgs) -> Result<u8, Failure> {
    let mut wrote_stdout = false;
    if let Some(path) = &output.json {
        let mut w = open_output(path)?;
        w.write_all(report.to_json().as_bytes())?;
        w.write_all(b"\n")?;
        w.flush()?;
        wrote_stdout |= path.as_os_str() == "-";
    }
    if let Some(path) = &output.jsonl {
        let mut w = open_output(path)?;
        report.write_jsonl(&mut w)?;
        w.flush()?;
        wrote_stdout |= path.as_os_str() == "-";
    }
    if let Some(path) = &output.csv {
        report.write_csv(open_output(path)?).context("writing CSV")?;
        wrote_stdout |= path.as_os_str() == "-";
    }
    if !wrote_stdout {
        print_summary(report);
    }
    Ok(exit_code(report, output.strict_conjectures))
}

fn print_summary(report: &Report) {
    println!("{:<20} {:>8} {:>6} {:>12} {:>14} {:>8}", "theorem", "pass", "fail", "inapplicable", "counterexample", "aborted");
    for (id, c) in &report.summary {
        println!(
            "{id:<20} {:>8} {:>6} {:>12} {:>14} {:>8}",
            c.pass, c.fail, c.inapplicable, c.counterexample, c.aborted
        );
    }
    let t = &report.totals;
    println!("{:<20} {:>8} {:>6} {:>12} {:>14} {:>8}", "total", t.pass, t.fail, t.inapplicable, t.counterexample, t.aborted);
    if report.equality_mismatches > 0 {
        println!("equality mismatches: {}", report.equality_mismatches);
    }
    if report.counterexample_found {
        println!("CONJECTURE COUNTEREXAMPLE FOUND:");
        for r in report.records.iter().filter(|r| r.status == Status::Counterexample) {
            println!("  {} n={} e={} F={:?}", r.graph_id, r.inputs.n, r.inputs.e, r.inputs.big_f);
        }
    }
    for r in report.records.iter().filter(|r| r.status == Status::Fail) {
        println!("FAIL {} {} {}", r.theorem_id, r.graph_id, r.detail.as_deref().unwrap_or(""));
    }
    if !report.exploratory.is_empty() {
        println!("non-bipartite graphs with f = n-2: {}", report.exploratory.len());
    }
}

fn exit_code(report: &Report, strict: bool) -> u8 {
    let resource_abort = report
        .records
        .iter()
        .any(|r| r.status == Status::Aborted && r.theorem_id != forcing_core::verifier::TheoremId::Parse);
    if report.has_failures() {
        EXIT_FAIL
    } else if strict && report.counterexample_found {
        EXIT_CONJECTURE
    } else if resource_abort {
        EXIT_RESOURCE
    } else {
        0
    }
}

fn parse_graph(input: &str) -> Result<Graph, Failure> {
    if input.contains(':') {
        let spec: FamilySpec = input.parse().map_err(parse_error)?;
        Ok(spec.build()?)
    } else {
        graph6::decode(input).map_err(parse_error)
    }
}

#[derive(Serialize)]
struct MatchingRow {
    matching: Vec<Edge>,
    forcing: usize,
    forcing_set: Vec<Edge>,
    cycle_packing: usize,
}

#[derive(Serialize)]
struct AntiForcing {
    value: usize,
    matching: Vec<Edge>,
    anti_forcing_set: Vec<Edge>,
}

#[derive(Serialize)]
struct ComputeOutput {
    graph6: String,
    n: usize,
    e: usize,
    delta: usize,
    f: usize,
    #[serde(rename = "F")]
    big_f: usize,
    #[serde(rename = "Af")]
    af: AntiForcing,
    matchings: Vec<MatchingRow>,
}

fn edge_list(edges: &[Edge]) -> String {
    edges.iter().map(Edge::to_string).collect::<Vec<_>>().join(" ")
}

fn compute(input: &str, as_json: bool, limits: &Limits) -> Result<u8, Failure> {
    let g = parse_graph(input)?;
    let s = spectrum(&g, limits)?;
    let af = max_anti_forcing(&g, limits)?;
    let mut matchings = Vec::with_capacity(s.per_matching.len());
    for row in &s.per_matching {
        matchings.push(MatchingRow {
            matching: row.matching.edges().to_vec(),
            forcing: row.forcing,
            forcing_set: row.witness.clone(),
            cycle_packing: cycle_packing(&g, &row.matching, limits)?,
        });
    }
    let out = ComputeOutput {
        graph6: graph6::encode(&g),
        n: g.order() / 2,
        e: g.edge_count(),
        delta: g.min_degree(),
        f: s.f_min,
        big_f: s.f_max,
        af: AntiForcing {
            value: af.value,
            matching: af.witness_matching.edges().to_vec(),
            anti_forcing_set: af.witness_set,
        },
        matchings,
    };
    if as_json {
        println!("{}", serde_json::to_string_pretty(&out).context("serializing")?);
        return Ok(0);
    }
    println!("graph6 {}", out.graph6);
    println!("n={} e={} delta={}", out.n, out.e, out.delta);
    println!("f={} F={} Af={}", out.f, out.big_f, out.af.value);
    let min = s.min_witness();
    let max = s.max_witness();
    println!("f witness: M = {} S = {}", edge_list(min.matching.edges()), edge_list(&min.witness));
    println!("F witness: M = {} S = {}", edge_list(max.matching.edges()), edge_list(&max.witness));
    println!("Af witness: M = {} X = {}", edge_list(&out.af.matching), edge_list(&out.af.anti_forcing_set));
    let c: Vec<String> = out.matchings.iter().map(|m| m.cycle_packing.to_string()).collect();
    println!("C values: {}", c.join(" "));
    Ok(0)
}

fn parse_range(text: &str) -> Option<(usize, usize)> {
    let (lo, hi) = text.split_once("..")?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    Some((lo.trim().parse().ok()?, hi.trim().parse().ok()?))
}

fn substitute(spec: &str, n: usize) -> String {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let rest: String = rest
        .split_inclusive(|c: char| !c.is_ascii_alphanumeric())
        .map(|tok| {
            let body = tok.trim_end_matches(|c: char| !c.is_ascii_alphanumeric());
            if body == "n" {
                format!("{n}{}", &tok[body.len()..])
            } else {
                tok.to_string()
            }
        })
        .collect();
    format!("{name}:{rest}")
}

fn generate(spec: &str, range: Option<&str>, count: Option<usize>) -> Result<u8, Failure> {
    let texts: Vec<String> = match range {
        None => vec![spec.to_string()],
        Some(r) => {
            let (lo, hi) = parse_range(r).ok_or_else(|| parse_error(anyhow::anyhow!("bad range {r:?}")))?;
            (lo..=hi).map(|n| substitute(spec, n)).collect()
        }
    };
    let mut specs = Vec::new();
    for t in &texts {
        specs.extend(FamilySpec::expand(t).map_err(parse_error)?);
    }
    let mut out = io::stdout().lock();
    for s in specs.iter().take(count.unwrap_or(usize::MAX)) {
        let g = s.build().map_err(parse_error)?;
        writeln!(out, "{}", graph6::encode(&g))?;
    }
    Ok(0)
}
