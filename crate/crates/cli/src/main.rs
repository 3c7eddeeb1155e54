//! `hamconn`: spectra, oracle and condition checks for small graphs.
//!
//! Graphs are read from a file argument or stdin, as graph6 lines or as one
//! edge list (`--format edges`).

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use hamconn_core::codec::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph6};
use hamconn_core::conditions::{parse_condition_list, ConditionId, Evaluator};
use hamconn_core::families::{
    enumerate_deleted, named_variant, np1_graphs, s_graph, sporadic_exception, t_graph, Family,
    FamilySpec, Sporadic, Variant,
};
use hamconn_core::harness::{
    reference_checks, reference_csv, run_campaign, run_ingest, CampaignConfig, Mode, EXIT_ANOMALIES,
    EXIT_CLEAN, EXIT_INPUT,
};
use hamconn_core::oracle::{is_hamilton_connected_with, OracleOptions};
use hamconn_core::spectra::{spectral_radius, MatrixKind, DEFAULT_TOL};
use hamconn_core::{Error, Graph};

#[derive(Parser, Debug)]
#[command(name = "hamconn", version, about = "Hamilton-connectedness conditions, spectra and exact checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Power-iteration residual tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Oracle wall-clock budget per graph, in seconds (0 disables).
    #[arg(long, global = true)]
    timeout: Option<f64>,
    /// Seed for campaigns and sampled family members.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for campaigns (0 = all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Comma-separated condition ids, e.g. `main,cor14`.
    #[arg(long, global = true)]
    conditions: Option<String>,
    /// Graph text format for input and output.
    #[arg(long, global = true, value_enum, default_value_t = Format::G6)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    G6,
    Edges,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print rho and q with their residuals.
    Spectra { input: Option<PathBuf> },
    /// Decide Hamilton-connectedness exactly.
    Oracle {
        input: Option<PathBuf>,
        /// Also print one Hamilton path per pair.
        #[arg(long)]
        witnesses: bool,
    },
    /// Evaluate the sufficient conditions.
    Check { input: Option<PathBuf> },
    /// Emit family members and exception graphs.
    Family(FamilyArgs),
    /// Run a campaign described by a key=value file.
    Verify {
        config: PathBuf,
        /// Write JSON lines here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the CSV summary here instead of stderr.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Recompute the reference values and sign checks as CSV.
    Reproduce,
    /// Convert between graph6 and edge lists.
    Convert {
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        to: Format,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("which").required(true).args(["s", "t", "variant", "np1", "sporadic", "deleted"])))]
struct FamilyArgs {
    /// S_n^k = K_k join (K_{n-2k+1} + (k-1)K_1).
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    s: Option<Vec<usize>>,
    /// T_n^k = K_2 join (K_{n-k-1} + K_{k-1}).
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    t: Option<Vec<usize>>,
    /// One-edge-deleted variant H1..H3, T1..T3.
    #[arg(long, num_args = 2, value_names = ["NAME", "N"])]
    variant: Option<Vec<String>>,
    /// Members of the n-vertex exception set of the `zw` condition.
    #[arg(long, value_name = "N")]
    np1: Option<usize>,
    /// S11_5, S13_6, K7_K2_K16, or Kn1_ee N.
    #[arg(long, num_args = 1..=2, value_names = ["ID", "N"])]
    sporadic: Option<Vec<String>>,
    /// Members of S or T with k and t deleted edges, one per isomorphism class.
    #[arg(long, num_args = 4, value_names = ["FAMILY", "N", "K", "T"])]
    deleted: Option<Vec<String>>,
    /// With --deleted, emit every member instead of one per class.
    #[arg(long)]
    all: bool,
}

type CliResult<T> = Result<T, Error>;

fn read_input(path: &Option<PathBuf>) -> CliResult<String> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = fs::read_to_string(p)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", p.display())))?
        }
        None => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Input(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn read_graphs(path: &Option<PathBuf>, format: Format) -> CliResult<Vec<Graph>> {
    let text = read_input(path)?;
    let graphs = match format {
        Format::Edges => vec![parse_edge_list(&text)?],
        Format::G6 => text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(parse_graph6)
            .collect::<CliResult<Vec<_>>>()?,
    };
    if graphs.is_empty() {
        return Err(Error::Input("no graph in input".into()));
    }
    Ok(graphs)
}

fn emit(g: &Graph, format: Format, out: &mut String) -> CliResult<()> {
    match format {
        Format::G6 => {
            out.push_str(&emit_graph6(g)?);
            out.push('\n');
        }
        Format::Edges => out.push_str(&emit_edge_list(g)),
    }
    Ok(())
}

fn tol(global: &Global) -> CliResult<f64> {
    let t = global.tol.unwrap_or(DEFAULT_TOL);
    if t.is_nan() || t <= 0.0 {
        return Err(Error::Input("--tol must be positive".into()));
    }
    Ok(t)
}

fn timeout(global: &Global) -> Option<Duration> {
    match global.timeout {
        Some(s) if s <= 0.0 => None,
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => Some(Duration::from_secs(10)),
    }
}

fn conditions(global: &Global) -> CliResult<Vec<ConditionId>> {
    match &global.conditions {
        Some(list) => parse_condition_list(list),
        None => Ok(ConditionId::ALL.to_vec()),
    }
}

fn spectra(graphs: &[Graph], tol: f64) -> CliResult<String> {
    let mut out = String::new();
    for g in graphs {
        for (name, kind) in [("rho", MatrixKind::Adjacency), ("q", MatrixKind::SignlessLaplacian)] {
            let r = spectral_radius(g, kind, tol)?;
            out.push_str(&format!("{name} = {:.6} (residual {:.3e})\n", r.value, r.residual));
        }
    }
    Ok(out)
}

fn oracle(graphs: &[Graph], witnesses: bool, timeout: Option<Duration>) -> CliResult<String> {
    let mut out = String::new();
    let opts = OracleOptions { witnesses, timeout };
    for g in graphs {
        let v = is_hamilton_connected_with(g, &opts)?;
        match v.failing_pair {
            None => out.push_str("Hamilton-connected\n"),
            Some((s, t)) => out.push_str(&format!("not Hamilton-connected; first failing pair {s} {t}\n")),
        }
        for ((s, t), path) in v.witnesses.iter().flatten() {
            let p: Vec<String> = path.iter().map(usize::to_string).collect();
            out.push_str(&format!("  {s} {t}: {}\n", p.join(" ")));
        }
    }
    Ok(out)
}

fn check(graphs: &[Graph], tol: f64, which: &[ConditionId]) -> CliResult<String> {
    let mut out = String::new();
    for (i, g) in graphs.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str("condition    outcome          exception      evidence\n");
        let ev = Evaluator::with_tol(g, tol);
        for &c in which {
            let v = ev.evaluate(c)?;
            let evidence: Vec<String> = v.evidence.iter().map(|(k, x)| format!("{k}={x}")).collect();
            let line = format!(
                "{:<12} {:<16} {:<14} {}",
                c.id(),
                v.outcome.to_string(),
                v.exception.as_deref().unwrap_or("-"),
                evidence.join(" ")
            );
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
    Ok(out)
}

fn parse_num(s: &str, what: &str) -> CliResult<usize> {
    s.parse()
        .map_err(|_| Error::Input(format!("{what} must be a non-negative integer, got '{s}'")))
}

fn family(args: &FamilyArgs) -> CliResult<Vec<Graph>> {
    if let Some(v) = &args.s {
        return Ok(vec![s_graph(v[0], v[1])?]);
    }
    if let Some(v) = &args.t {
        return Ok(vec![t_graph(v[0], v[1])?]);
    }
    if let Some(v) = &args.variant {
        let which: Variant = v[0].parse()?;
        return Ok(vec![named_variant(which, parse_num(&v[1], "N")?)?]);
    }
    if let Some(n) = args.np1 {
        return Ok(np1_graphs(n).into_iter().map(|m| m.graph).collect());
    }
    if let Some(v) = &args.sporadic {
        let which: Sporadic = v[0].parse()?;
        let n = v.get(1).map(|s| parse_num(s, "N")).transpose()?;
        return Ok(vec![sporadic_exception(which, n)?]);
    }
    if let Some(v) = &args.deleted {
        let fam = match v[0].to_ascii_uppercase().as_str() {
            "S" => Family::S,
            "T" => Family::T,
            other => return Err(Error::Input(format!("family must be S or T, got '{other}'"))),
        };
        let spec = FamilySpec::new(fam, parse_num(&v[1], "N")?, parse_num(&v[2], "K")?, parse_num(&v[3], "T")?)?;
        return Ok(enumerate_deleted(&spec, !args.all).collect());
    }
    unreachable!("clap requires one family selector")
}

fn campaign_config(path: &PathBuf, global: &Global) -> CliResult<CampaignConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut cfg = CampaignConfig::parse(&text)?;
    if let Some(t) = global.tol {
        cfg.tol = t;
    }
    if global.timeout.is_some() {
        cfg.timeout = timeout(global);
    }
    if let Some(s) = global.seed {
        cfg.seed = s;
    }
    if let Some(w) = global.workers {
        cfg.workers = w;
    }
    if global.conditions.is_some() {
        cfg.conditions = conditions(global)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_to(path: &Option<PathBuf>, text: &str, fallback: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Input(format!("cannot write {}: {e}", p.display()))),
        None => fallback
            .write_all(text.as_bytes())
            .map_err(|e| Error::Input(format!("write failed: {e}"))),
    }
}

fn run(cli: &Cli) -> CliResult<(String, i32)> {
    let g = &cli.global;
    Ok(match &cli.command {
        Command::Spectra { input } => (spectra(&read_graphs(input, g.format)?, tol(g)?)?, EXIT_CLEAN),
        Command::Oracle { input, witnesses } => {
            (oracle(&read_graphs(input, g.format)?, *witnesses, timeout(g))?, EXIT_CLEAN)
        }
        Command::Check { input } => {
            (check(&read_graphs(input, g.format)?, tol(g)?, &conditions(g)?)?, EXIT_CLEAN)
        }
        Command::Family(args) => {
            let mut out = String::new();
            for graph in family(args)? {
                emit(&graph, g.format, &mut out)?;
            }
            (out, EXIT_CLEAN)
        }
        Command::Verify { config, report, summary } => {
            let cfg = campaign_config(config, g)?;
            let rep = match (&cfg.mode, &cfg.input) {
                (Mode::Ingest, Some(p)) if p.as_os_str() == "-" => run_ingest(io::stdin().lock(), &cfg)?,
                _ => run_campaign(&cfg)?,
            };
            for e in &rep.input_errors {
                eprintln!("input line {}: {}", e.line, e.message);
            }
            write_to(summary, &rep.summary_csv(), &mut io::stderr())?;
            match report {
                Some(_) => {
                    write_to(report, &rep.to_jsonl(), &mut io::stdout())?;
                    (String::new(), rep.exit_code())
                }
                None => (rep.to_jsonl(), rep.exit_code()),
            }
        }
        Command::Reproduce => {
            let rows = reference_checks();
            let code = if rows.iter().all(|r| r.pass) { EXIT_CLEAN } else { EXIT_ANOMALIES };
            (reference_csv(&rows), code)
        }
        Command::Convert { input, to } => {
            let mut out = String::new();
            for graph in read_graphs(input, g.format)? {
                emit(&graph, *to, &mut out)?;
            }
            (out, EXIT_CLEAN)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_INPUT as u8);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
