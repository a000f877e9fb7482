//! The `parity-blocks` command line.
//!
//! [`run`] parses arguments and writes to caller-supplied streams, so the
//! binary is a one-line wrapper and tests can drive it in-process.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::bijections;
use crate::error::Error;
use crate::partitions::{self, FrobeniusSymbol};
use crate::posets::{Composition, PosetPartition};
use crate::qseries::{self, QSeries};
use crate::sign::Sign;
use crate::verify::{self, Selection, SuiteSummary, Target, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable consulted when `--jobs` is absent.
pub const JOBS_ENV: &str = "PARITY_BLOCKS_JOBS";

const CSV_HELP: &str = "\
CSV columns:
  count   n,d,m,sign,mode,count
  list    top,bottom,sizes,signs        (rows space-separated)
  biject  stage,weight,rows             (rows as `a b / c d`)
  series  exponent,coefficient
  verify  target,parameters,status,exponent,expected,actual";

#[derive(Debug, Parser)]
#[command(
    name = "parity-blocks",
    version,
    about = "Count partitions by the parity blocks of their successive ranks and check the closed forms",
    after_help = CSV_HELP
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for `verify` (defaults to $PARITY_BLOCKS_JOBS, then all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Omit timings so that output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Mode {
    /// Fixed columns and blocks.
    Exact,
    /// Fixed blocks, any number of columns.
    ByBlocks,
    /// Fixed columns, any number of blocks.
    ByColumns,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count partitions by columns, blocks and last-block sign.
    Count(CountArgs),
    /// List the Frobenius symbols behind an exact count.
    List(ListArgs),
    /// Trace a symbol through the bijection to poset partitions, or invert.
    Biject(BijectArgs),
    /// Expand a closed form as a power series.
    Series(SeriesArgs),
    /// Compare enumerations with closed forms.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    sign: Sign,
    /// Defaults to `exact` when both --d and --m are given, otherwise to the
    /// marginal matching the one that is.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
}

#[derive(Debug, Args)]
struct ListArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    sign: Sign,
}

#[derive(Debug, Args)]
struct BijectArgs {
    /// A symbol such as "16 14 / 17 14" or {"top":[..],"bottom":[..]}; with
    /// --invert, a poset partition {"beta":[..],"rows":[[..],..]}.
    input: String,
    /// Map a poset partition back to its symbol.
    #[arg(long)]
    invert: bool,
    /// Last-block sign: required with --invert, checked otherwise.
    #[arg(long)]
    sign: Option<Sign>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesTarget {
    /// By columns and blocks (needs --d, --m, --sign).
    #[value(alias = "thm-main", alias = "main")]
    BlocksColumns,
    /// By blocks (needs --m, --sign).
    Blocks,
    /// By columns (needs --d, --sign).
    Columns,
    /// 1/(q;q)_inf.
    EulerInverse,
    /// The Gaussian binomial [n over k] (needs --n, --k).
    Qbinomial,
}

#[derive(Debug, Args)]
struct SeriesArgs {
    #[arg(long, value_enum)]
    target: SeriesTarget,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    sign: Option<Sign>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    /// Highest exponent printed. Defaults to 40, or the degree for qbinomial.
    #[arg(long)]
    precision: Option<usize>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Comma-separated target names, or `all`.
    #[arg(long, default_value = "all", value_delimiter = ',')]
    targets: Vec<String>,
    /// Pin the number of columns (Durfee side).
    #[arg(long)]
    d: Option<usize>,
    /// Pin the number of parity blocks.
    #[arg(long)]
    m: Option<usize>,
    /// Pin the last-block sign.
    #[arg(long)]
    sign: Option<Sign>,
    /// Pin the number of up steps in path targets.
    #[arg(long)]
    s: Option<usize>,
    /// Pin the number of down steps in path targets (t < s).
    #[arg(long)]
    t: Option<usize>,
    /// Pin the number of marked returns.
    #[arg(long)]
    r: Option<usize>,
    /// Pin the composition for poset targets, e.g. 2,3,1,2.
    #[arg(long)]
    beta: Option<Composition>,
    /// Precision or size bound replacing each target's default.
    #[arg(long)]
    n: Option<usize>,
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    format: Format,
    jobs: Option<usize>,
    no_timing: bool,
}

enum Failure {
    Usage(String),
    Verify,
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn usage<T>(msg: impl Into<String>) -> std::result::Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let to_stdout = !e.use_stderr();
            let rendered = e.render().to_string();
            let _ = if to_stdout {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return if to_stdout { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let mut ctx = Ctx {
        out,
        err,
        format: cli.format,
        jobs: cli.jobs,
        no_timing: cli.no_timing,
    };
    let result = match cli.command {
        Command::Count(a) => cmd_count(&mut ctx, a),
        Command::List(a) => cmd_list(&mut ctx, a),
        Command::Biject(a) => cmd_biject(&mut ctx, a),
        Command::Series(a) => cmd_series(&mut ctx, a),
        Command::Verify(a) => cmd_verify(&mut ctx, a),
    };
    let code = match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Verify) => EXIT_VERIFY_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(ctx.err, "error: {e}");
            EXIT_USAGE
        }
    };
    let _ = ctx.out.flush();
    code
}

fn write_json<T: Serialize>(out: &mut dyn Write, v: &T) -> CmdResult {
    serde_json::to_writer(&mut *out, v).map_err(|e| Failure::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn cmd_count(ctx: &mut Ctx, a: CountArgs) -> CmdResult {
    let mode = match (a.mode, a.d, a.m) {
        (Some(mode), _, _) => mode,
        (None, Some(_), Some(_)) => Mode::Exact,
        (None, None, Some(_)) => Mode::ByBlocks,
        (None, Some(_), None) => Mode::ByColumns,
        (None, None, None) => return usage("count needs --d, --m or both"),
    };
    if a.n == 0 {
        return usage("--n must be positive");
    }
    let count = match mode {
        Mode::Exact => {
            let (Some(d), Some(m)) = (a.d, a.m) else {
                return usage("exact mode needs --d and --m");
            };
            if m == 0 || m > d {
                return usage(format!("need d >= m >= 1, got d = {d}, m = {m}"));
            }
            partitions::count_a(a.n, d, m, a.sign)
        }
        Mode::ByBlocks => {
            let Some(m) = a.m.filter(|&m| m >= 1) else {
                return usage("by-blocks mode needs --m >= 1");
            };
            partitions::count_a_by_blocks(a.n, m, a.sign)
        }
        Mode::ByColumns => {
            let Some(d) = a.d.filter(|&d| d >= 1) else {
                return usage("by-columns mode needs --d >= 1");
            };
            partitions::count_a_by_columns(a.n, d, a.sign)
        }
    };
    let (d, m) = match mode {
        Mode::Exact => (a.d, a.m),
        Mode::ByBlocks => (None, a.m),
        Mode::ByColumns => (a.d, None),
    };
    match ctx.format {
        Format::Text => writeln!(ctx.out, "{count}")?,
        Format::Json => write_json(
            ctx.out,
            &json!({"n": a.n, "d": d, "m": m, "sign": a.sign, "mode": mode, "count": count}),
        )?,
        Format::Csv => {
            let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
            let mode_name = serde_json::to_value(mode).unwrap();
            writeln!(ctx.out, "n,d,m,sign,mode,count")?;
            writeln!(
                ctx.out,
                "{},{},{},{},{},{count}",
                a.n,
                opt(d),
                opt(m),
                a.sign,
                mode_name.as_str().unwrap()
            )?;
        }
    }
    Ok(())
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_list(ctx: &mut Ctx, a: ListArgs) -> CmdResult {
    if a.m == 0 || a.m > a.d {
        return usage(format!("need d >= m >= 1, got d = {}, m = {}", a.d, a.m));
    }
    let symbols = partitions::list_a(a.n, a.d, a.m, a.sign);
    match ctx.format {
        Format::Text => {
            for f in &symbols {
                writeln!(ctx.out, "{}", f.to_block_notation())?;
            }
        }
        Format::Json => {
            let items: Vec<_> = symbols
                .iter()
                .map(|f| json!({"top": f.top(), "bottom": f.bottom(), "blocks": f.parity_blocks()}))
                .collect();
            write_json(ctx.out, &items)?;
        }
        Format::Csv => {
            writeln!(ctx.out, "top,bottom,sizes,signs")?;
            for f in &symbols {
                let b = f.parity_blocks();
                writeln!(
                    ctx.out,
                    "{},{},{},{}",
                    join(f.top()),
                    join(f.bottom()),
                    join(b.sizes()),
                    b.sign_word()
                )?;
            }
        }
    }
    Ok(())
}

fn grid_text(rows: &[Vec<u64>]) -> String {
    rows.iter().map(|r| join(r)).collect::<Vec<_>>().join(" / ")
}

fn cmd_biject(ctx: &mut Ctx, a: BijectArgs) -> CmdResult {
    if a.invert {
        let Some(sign) = a.sign else {
            return usage("--invert needs --sign");
        };
        let pi: PosetPartition = serde_json::from_str(&a.input)
            .map_err(|e| Failure::Usage(format!("expected a poset partition as JSON: {e}")))?;
        let lambda = bijections::pi_to_lambda(&pi, sign)?;
        match ctx.format {
            Format::Text => writeln!(ctx.out, "{}", lambda.to_block_notation())?,
            Format::Json => write_json(ctx.out, &lambda)?,
            Format::Csv => {
                writeln!(ctx.out, "top,bottom")?;
                writeln!(ctx.out, "{},{}", join(lambda.top()), join(lambda.bottom()))?;
            }
        }
        return Ok(());
    }
    let lambda: FrobeniusSymbol = a.input.parse()?;
    let inferred = lambda.parity_blocks().last_sign().expect("nonempty symbol");
    if let Some(s) = a.sign {
        if s != inferred {
            return usage(format!(
                "the last block of {} is {inferred}, not {s}",
                lambda.to_block_notation()
            ));
        }
    }
    let stages = bijections::trace(&lambda)?;
    match ctx.format {
        Format::Text => {
            for s in &stages {
                writeln!(ctx.out, "{}", s.describe())?;
            }
        }
        Format::Json => write_json(ctx.out, &stages)?,
        Format::Csv => {
            writeln!(ctx.out, "stage,weight,rows")?;
            for s in &stages {
                let rows = match s {
                    bijections::Stage::Lambda { top, bottom, .. }
                    | bijections::Stage::Mu { top, bottom, .. }
                    | bijections::Stage::MuHat { top, bottom, .. } => {
                        format!("{} / {}", join(top), join(bottom))
                    }
                    bijections::Stage::Gamma { rows, .. } | bijections::Stage::Pi { rows, .. } => {
                        grid_text(rows)
                    }
                };
                writeln!(ctx.out, "{},{},{rows}", s.name(), s.weight())?;
            }
        }
    }
    Ok(())
}

fn need<T>(v: Option<T>, flag: &str, target: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("series target {target} needs {flag}")))
}

fn cmd_series(ctx: &mut Ctx, a: SeriesArgs) -> CmdResult {
    let top = |default: usize| a.precision.unwrap_or(default);
    let (name, params, series) = match a.target {
        SeriesTarget::BlocksColumns => {
            let d = need(a.d, "--d", "blocks-columns")?;
            let m = need(a.m, "--m", "blocks-columns")?;
            let sign = need(a.sign, "--sign", "blocks-columns")?;
            let p = top(qseries::DEFAULT_PRECISION);
            (
                "blocks-columns",
                json!({"d": d, "m": m, "sign": sign}),
                qseries::closed_form_main(d, m, sign, p)?,
            )
        }
        SeriesTarget::Blocks => {
            let m = need(a.m, "--m", "blocks")?;
            let sign = need(a.sign, "--sign", "blocks")?;
            let p = top(qseries::DEFAULT_PRECISION);
            ("blocks", json!({"m": m, "sign": sign}), qseries::closed_form_by_blocks(m, sign, p)?)
        }
        SeriesTarget::Columns => {
            let d = need(a.d, "--d", "columns")?;
            let sign = need(a.sign, "--sign", "columns")?;
            let p = top(qseries::DEFAULT_PRECISION);
            ("columns", json!({"d": d, "sign": sign}), qseries::closed_form_by_columns(d, sign, p)?)
        }
        SeriesTarget::EulerInverse => {
            let p = top(qseries::DEFAULT_PRECISION);
            ("euler-inverse", json!({}), qseries::euler_inverse(p))
        }
        SeriesTarget::Qbinomial => {
            let n = need(a.n, "--n", "qbinomial")?;
            let k = need(a.k, "--k", "qbinomial")?;
            let degree = if (0..=n as i64).contains(&k) { k as usize * (n - k as usize) } else { 0 };
            let p = top(degree);
            ("qbinomial", json!({"n": n, "k": k}), qseries::qbinomial(n, k, p))
        }
    };
    print_series(ctx, name, params, &series)
}

fn print_series(ctx: &mut Ctx, name: &str, params: serde_json::Value, s: &QSeries) -> CmdResult {
    match ctx.format {
        Format::Text => {
            let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
            writeln!(ctx.out, "{}", coeffs.join(","))?;
        }
        Format::Json => write_json(
            ctx.out,
            &json!({"target": name, "parameters": params, "series": s}),
        )?,
        Format::Csv => {
            writeln!(ctx.out, "exponent,coefficient")?;
            for (k, c) in s.coeffs().iter().enumerate() {
                writeln!(ctx.out, "{k},{c}")?;
            }
        }
    }
    Ok(())
}

fn parse_targets(names: &[String]) -> std::result::Result<Vec<Target>, Failure> {
    let mut out = Vec::new();
    for name in names.iter().map(|n| n.trim()).filter(|n| !n.is_empty()) {
        if name.eq_ignore_ascii_case("all") {
            out.extend(Target::ALL);
        } else {
            out.push(name.parse()?);
        }
    }
    if out.is_empty() {
        return usage("no targets selected");
    }
    Ok(out)
}

fn worker_count(flag: Option<usize>) -> std::result::Result<Option<usize>, Failure> {
    if let Some(j) = flag {
        return if j == 0 { usage("--jobs must be positive") } else { Ok(Some(j)) };
    }
    match std::env::var(JOBS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(j) if j > 0 => Ok(Some(j)),
            _ => usage(format!("{JOBS_ENV}={v:?} is not a positive integer")),
        },
        Err(_) => Ok(None),
    }
}

fn cmd_verify(ctx: &mut Ctx, a: VerifyArgs) -> CmdResult {
    let targets = parse_targets(&a.targets)?;
    let pins = Selection {
        d: a.d,
        m: a.m,
        sign: a.sign,
        s: a.s,
        t: a.t,
        r: a.r,
        beta: a.beta,
        n: a.n,
    };
    pins.validate()?;
    let checks = verify::plan(&VerifyConfig::default(), &targets, &pins);
    if checks.is_empty() {
        return usage("the given parameters select no checks");
    }
    let jobs = worker_count(ctx.jobs)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start worker pool: {e}")))?;
    let results: Vec<_> = pool.install(|| checks.par_iter().map(|c| c.run()).collect());
    let mut reports = Vec::with_capacity(results.len());
    for r in results {
        let r = r?;
        reports.push(if ctx.no_timing { r.without_timing() } else { r });
    }
    let summary = SuiteSummary::of(&reports);
    match ctx.format {
        Format::Json => {
            for r in &reports {
                write_json(ctx.out, r)?;
            }
            write_json(ctx.out, &json!({ "summary": summary }))?;
        }
        Format::Text => {
            for r in &reports {
                writeln!(ctx.out, "{}", r.summary_line())?;
            }
            writeln!(ctx.out, "{} of {} checks passed", summary.passed, summary.total)?;
        }
        Format::Csv => {
            writeln!(ctx.out, "target,parameters,status,exponent,expected,actual")?;
            for r in &reports {
                let (e, x, y) = match &r.first_discrepancy {
                    Some(d) => (
                        d.exponent.map(|e| e.to_string()).unwrap_or_default(),
                        d.expected.clone(),
                        d.actual.clone(),
                    ),
                    None => Default::default(),
                };
                let status = if r.passed() { "pass" } else { "fail" };
                writeln!(ctx.out, "{},{},{status},{e},{x},{y}", r.target, r.parameters)?;
            }
        }
    }
    if !summary.all_passed() {
        writeln!(ctx.err, "{} of {} checks failed", summary.failed, summary.total)?;
        return Err(Failure::Verify);
    }
    Ok(())
}
