mod expr;

use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use affine_hecke_d::audit::oracle_suites;
use affine_hecke_d::hecke::basis_symbol;
use affine_hecke_d::machine::laurent_to_json;
use affine_hecke_d::oracle::{oracle_length, Oracle};
use affine_hecke_d::{
    enumerate_compositions, verify_relations, AffinePerm, BigInt, Error, GenLabel, Hecke, Table,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::expr::ExprError;

/// Exact arithmetic in the extended affine Hecke algebra of type D.
#[derive(Parser, Debug)]
#[command(name = "heckd", version)]
struct Cli {
    /// Emit one JSON record per command, including errors.
    #[arg(long, global = true)]
    machine: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Rank {
    /// Rank d (at least 3); windows have 2d entries.
    #[arg(long, default_value_t = 3)]
    d: usize,
}

#[derive(Args, Debug)]
struct Window {
    #[command(flatten)]
    rank: Rank,
    /// Window w(1),...,w(2d), comma separated.
    #[arg(long, allow_hyphen_values = true)]
    w: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an element expression, e.g. "Trho * T1 * Trho".
    Mult {
        #[command(flatten)]
        rank: Rank,
        /// Expressions; several are multiplied left to right.
        #[arg(required = true, allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Print the reduced factorization of [w].
    Factor {
        #[command(flatten)]
        win: Window,
        /// Multiply the word back out and require exactly 1·[w].
        #[arg(long)]
        replay: bool,
    },
    /// Print the length of w.
    Length {
        #[command(flatten)]
        win: Window,
        /// Compare against the matrix-count oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Compare two elements in the Bruhat order.
    Bruhat {
        #[command(flatten)]
        rank: Rank,
        /// Exactly two windows: --w y --w w.
        #[arg(long, num_args = 1, allow_hyphen_values = true, required = true)]
        w: Vec<String>,
        /// Compare against the subword oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Kazhdan-Lusztig polynomials, optionally persisted in a cache file.
    Kl {
        #[command(flatten)]
        rank: Rank,
        /// Fill every column with l(w) <= L.
        #[arg(long, default_value_t = 2)]
        upto_length: usize,
        /// Print only the canonical element of this window.
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        #[arg(long, env = "HECKD_CACHE")]
        cache: Option<PathBuf>,
    },
    /// Verify the defining relations; with --verify also run the oracle suites.
    Check {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        verify: bool,
        /// Length bound for the oracle suites.
        #[arg(long, default_value_t = 3)]
        upto_length: usize,
    },
    /// List the palindromic weight compositions of length n.
    Compositions {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        n: usize,
    },
    /// Cache file maintenance.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Load and check every record.
    Validate {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, env = "HECKD_CACHE")]
        cache: PathBuf,
    },
    /// Merge the given files into the cache file.
    Merge {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, env = "HECKD_CACHE")]
        cache: PathBuf,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Parse { message: String, column: Option<usize> },
    Config(String),
    Invariant(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse { .. } | Failure::Config(_) => 2,
            Failure::Invariant(_) => 3,
            Failure::Verification(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Parse { .. } => "parse",
            Failure::Config(_) => "config",
            Failure::Invariant(_) => "invariant",
            Failure::Verification(_) => "verification",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Parse { message, column: Some(c) } => format!("column {c}: {message}"),
            Failure::Parse { message, column: None } => message.clone(),
            Failure::Config(m) | Failure::Invariant(m) | Failure::Verification(m) => m.clone(),
        }
    }

    fn record(&self) -> Value {
        let mut err = json!({ "kind": self.kind(), "code": self.code(), "message": self.message() });
        if let Failure::Parse { column: Some(c), message } = self {
            err["column"] = json!(c);
            err["message"] = json!(message);
        }
        json!({ "error": err })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::MalformedRecord { .. } => Failure::Parse { message, column: None },
            Error::RankTooSmall { .. }
            | Error::GeneratorIndex { .. }
            | Error::CompositionLength { .. }
            | Error::IntervalTooLarge { .. }
            | Error::Io(_) => Failure::Config(message),
            _ => Failure::Invariant(message),
        }
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Syntax { column, message } => Failure::Parse { message, column: Some(column) },
            ExprError::Core(e) => e.into(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

/// Command result: text for humans, a JSON record for machines, and whether
/// a verification step failed after the output was produced.
struct Output {
    text: String,
    record: Value,
    failed: Option<String>,
}

impl Output {
    fn ok(text: impl Into<String>, record: Value) -> Self {
        Output { text: text.into(), record, failed: None }
    }
}

fn raw(json: &str) -> Value {
    serde_json::from_str(json).expect("core emits valid JSON")
}

fn window(d: usize, text: &str) -> Result<AffinePerm, Failure> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    let entries = affine_hecke_d::weyl::parse_int_list(inner).ok_or_else(|| Failure::Parse {
        message: format!("`{text}` is not a comma-separated integer list"),
        column: None,
    })?;
    Ok(AffinePerm::from_window(d, entries)?)
}

fn cmd_mult(d: usize, exprs: &[String]) -> Result<Output, Failure> {
    let mut acc = Hecke::unit(d)?;
    for e in exprs {
        acc = acc.mult(&expr::parse(d, e)?)?;
    }
    Ok(Output::ok(acc.to_string(), raw(&acc.to_json())))
}

fn cmd_factor(win: &Window, replay: bool) -> Result<Output, Failure> {
    let d = win.rank.d;
    let w = window(d, &win.w)?;
    let rw = w.reduced_word();
    let word: Vec<String> = rw.word.iter().map(|g| g.to_string()).collect();
    let mut out = Output::ok(
        rw.to_string(),
        json!({ "d": d, "w": w.window(), "rho": rw.rho, "word": word, "length": w.length() }),
    );
    if replay {
        let mut x = Hecke::unit(d)?;
        if rw.rho {
            x = x.mult_gen_left(GenLabel::Rho);
        }
        for &g in rw.word.iter().rev() {
            x = x.mult_gen_left(g);
        }
        let ok = x == Hecke::basis(&w);
        out.record["replay"] = json!(ok);
        if !ok {
            out.failed = Some(format!("replay of {rw} gives {x}, not 1·[w]"));
        }
    }
    Ok(out)
}

fn cmd_length(win: &Window, verify: bool) -> Result<Output, Failure> {
    let w = window(win.rank.d, &win.w)?;
    let l = w.length();
    let mut out = Output::ok(l.to_string(), json!({ "d": w.d(), "w": w.window(), "length": l }));
    if verify {
        let o = oracle_length(&w);
        out.record["oracle"] = json!(o);
        if o != l {
            out.failed = Some(format!("length {l} disagrees with oracle {o}"));
        }
    }
    Ok(out)
}

fn cmd_bruhat(d: usize, ws: &[String], verify: bool) -> Result<Output, Failure> {
    if ws.len() != 2 {
        return Err(Failure::Config(format!("bruhat needs exactly two --w, got {}", ws.len())));
    }
    let (y, w) = (window(d, &ws[0])?, window(d, &ws[1])?);
    let verdict = |below: bool, above: bool| match (below, above) {
        (true, true) => "equal",
        (true, false) => "below",
        (false, true) => "above",
        (false, false) => "incomparable",
    };
    let (below, above) = (y.bruhat_leq(&w)?, w.bruhat_leq(&y)?);
    let v = verdict(below, above);
    let mut out = Output::ok(v, json!({ "d": d, "y": y.window(), "w": w.window(), "verdict": v }));
    if verify {
        let mut oracle = Oracle::new(d)?;
        let ov = verdict(oracle.bruhat(&y, &w)?, oracle.bruhat(&w, &y)?);
        out.record["oracle"] = json!(ov);
        if ov != v {
            out.failed = Some(format!("verdict `{v}` disagrees with subword oracle `{ov}`"));
        }
    }
    Ok(out)
}

fn load_cache(path: &Path, d: usize) -> Result<Table, Failure> {
    Ok(Table::load(BufReader::new(File::open(path)?), d)?)
}

/// Writes through a sibling temporary file so readers never see a torn cache.
fn save_cache(table: &Table, path: &Path) -> Result<(), Failure> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut f = File::create(&tmp)?;
        table.save(&mut f)?;
        f.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn cmd_kl(d: usize, upto: usize, w: Option<&str>, cache: Option<&Path>) -> Result<Output, Failure> {
    let mut table = match cache {
        Some(p) if p.exists() => load_cache(p, d)?,
        _ => Table::new(d),
    };
    let before = table.num_columns();
    table.fill_upto(upto)?;
    let out = match w {
        Some(text) => {
            let w = window(d, text)?;
            let c = table.canonical(&w)?;
            Output::ok(c.to_string(), json!({ "d": d, "w": w.window(), "canonical": raw(&c.to_json()) }))
        }
        None => {
            let mut lines = Vec::new();
            let mut records = Vec::new();
            for (y, w, p) in table.entries().into_iter().filter(|(_, w, _)| w.length() <= upto) {
                lines.push(format!("P({}, {}) = {}", basis_symbol(y), basis_symbol(w), p.to_compact_string()));
                records.push(json!({ "y": y.window(), "w": w.window(), "p": raw(&laurent_to_json(p)) }));
            }
            Output::ok(lines.join("\n"), json!({ "d": d, "upto_length": upto, "records": records }))
        }
    };
    if let Some(p) = cache {
        if table.num_columns() != before || !p.exists() {
            save_cache(&table, p)?;
        }
    }
    Ok(out)
}

fn cmd_check(d: usize, verify: bool, upto: usize) -> Result<Output, Failure> {
    let report = verify_relations::<BigInt>(d)?;
    let mut text = report.to_string();
    let relations: Vec<Value> = report.checks.iter().map(|c| json!({ "name": c.name, "holds": c.holds })).collect();
    let mut failures: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
    let mut suites = Vec::new();
    if verify {
        for s in oracle_suites::<BigInt>(d, upto)? {
            text.push_str(&format!("{s}\n"));
            if !s.passed() {
                failures.push(format!("oracle suite {}", s.name));
            }
            suites.push(json!({
                "name": s.name,
                "cases": s.cases,
                "mismatches": s.mismatches,
                "first": s.first,
            }));
        }
    }
    let passed = failures.is_empty();
    let mut record = json!({ "d": d, "relations": relations, "passed": passed });
    if verify {
        record["suites"] = json!(suites);
        record["upto_length"] = json!(upto);
    }
    Ok(Output {
        text: text.trim_end().to_string(),
        record,
        failed: (!passed).then(|| format!("failed: {}", failures.join(", "))),
    })
}

fn cmd_compositions(d: usize, n: usize) -> Result<Output, Failure> {
    let all = enumerate_compositions(n, d)?;
    let text: Vec<String> = all.iter().map(|c| c.to_string()).collect();
    let parts: Vec<&[u64]> = all.iter().map(|c| c.parts()).collect();
    Ok(Output::ok(text.join("\n"), json!({ "d": d, "n": n, "compositions": parts })))
}

fn cmd_cache(action: &CacheAction) -> Result<Output, Failure> {
    match action {
        CacheAction::Validate { rank, cache } => {
            let table = load_cache(cache, rank.d)?;
            table.validate()?;
            let records = table.entries().len();
            Ok(Output::ok(
                format!("ok: {records} records in {} columns", table.num_columns()),
                json!({ "d": rank.d, "valid": true, "records": records, "columns": table.num_columns() }),
            ))
        }
        CacheAction::Merge { rank, cache, inputs } => {
            let mut table = if cache.exists() { load_cache(cache, rank.d)? } else { Table::new(rank.d) };
            for input in inputs {
                table.merge(&load_cache(input, rank.d)?)?;
            }
            table.validate()?;
            save_cache(&table, cache)?;
            let records = table.entries().len();
            Ok(Output::ok(
                format!("merged {} files: {records} records in {} columns", inputs.len(), table.num_columns()),
                json!({ "d": rank.d, "merged": inputs.len(), "records": records, "columns": table.num_columns() }),
            ))
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Mult { rank, exprs } => cmd_mult(rank.d, exprs),
        Command::Factor { win, replay } => cmd_factor(win, *replay),
        Command::Length { win, verify } => cmd_length(win, *verify),
        Command::Bruhat { rank, w, verify } => cmd_bruhat(rank.d, w, *verify),
        Command::Kl { rank, upto_length, w, cache } => cmd_kl(rank.d, *upto_length, w.as_deref(), cache.as_deref()),
        Command::Check { rank, verify, upto_length } => cmd_check(rank.d, *verify, *upto_length),
        Command::Compositions { rank, n } => cmd_compositions(rank.d, *n),
        Command::Cache { action } => cmd_cache(action),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            if std::env::args().any(|a| a == "--machine") {
                let f = Failure::Config(e.kind().to_string());
                println!("{}", f.record());
            } else {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.machine {
                println!("{}", out.record);
            } else if !out.text.is_empty() {
                println!("{}", out.text);
            }
            match out.failed {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    let f = Failure::Verification(msg);
                    if !cli.machine {
                        eprintln!("heckd: {} error: {}", f.kind(), f.message());
                    }
                    ExitCode::from(f.code())
                }
            }
        }
        Err(f) => {
            if cli.machine {
                println!("{}", f.record());
            } else {
                eprintln!("heckd: {} error: {}", f.kind(), f.message());
            }
            ExitCode::from(f.code())
        }
    }
}
