//! `brjuno`: continued fractions, Brjuno functions, the Brjuno operator, the
//! complex Brjuno function and Lindstedt series from the command line.
//!
//! Exit codes: 0 success, 2 domain or usage error, 3 result flagged unreliable.

mod commands;
mod output;
mod sweep;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use brjuno::error::Error;
use commands::{
    BrjunoArgs, BseriesArgs, CfArgs, Command, CompareArgs, ComplexArgs, Ctx, DiophArgs, LindstedtArgs, OperatorArgs,
    ScanArgs,
};
use output::{Artifact, Cell, Format, Meta, Report};
use sweep::Sweep;

pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_UNRELIABLE: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub msg: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_DOMAIN, msg: msg.into() }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_DOMAIN, msg: msg.into() }
    }

    pub fn io<E: Into<std::io::Error>>(e: E) -> Self {
        CliError { code: 1, msg: e.into().to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InsufficientDepth { .. } | Error::NoConvergence(_) | Error::Unstable(_) => EXIT_UNRELIABLE,
            _ => EXIT_DOMAIN,
        };
        CliError { code, msg: e.to_string() }
    }
}

#[derive(Parser, Debug)]
#[command(name = "brjuno", version, about = "Brjuno functions, continued fractions and Lindstedt series")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; a directory when sweeping. Defaults to stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Precision of decimal literals without `@bits`.
    #[arg(long, global = true, env = "BRJUNO_BITS", default_value_t = brjuno::input::DEFAULT_BITS)]
    bits: u32,
    /// `VAR=SPEC` with VAR in x, rho, alpha, eps, gamma and SPEC a comma
    /// list, `start:stop:count`, `noble:N` or `metallic:N`.
    #[arg(long, global = true)]
    sweep: Option<String>,
    /// Worker threads for sweeps; 1 runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// α-continued fraction expansion.
    Cf(CfArgs),
    /// Brjuno series `Σ β_{n−1} f(x_n)`.
    Brjuno(BrjunoArgs),
    /// `B_ν` with its convergent bracket.
    Bseries(BseriesArgs),
    /// Diophantine exponent estimate from the `β_n`.
    Dioph(DiophArgs),
    /// Grid operator `T f (x) = x f(1/x)`, its Neumann inverse and seminorms.
    Operator(OperatorArgs),
    /// Complex Brjuno function at `x + i·eps`.
    Complex(ComplexArgs),
    /// Samples along `Im z = eps` and real-part jumps at rationals.
    Scan(ScanArgs),
    /// Lindstedt coefficients and root-test radii.
    Lindstedt(LindstedtArgs),
    /// Critical-constant estimate against `2B(ρ)`.
    Compare(CompareArgs),
}

struct Opts {
    format: Format,
    output: Option<PathBuf>,
    sweep: Option<String>,
    jobs: Option<usize>,
    ctx: Ctx,
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(CliError::io),
        None => std::io::stdout().lock().write_all(bytes).map_err(CliError::io),
    }
}

fn exit_of(r: &Report) -> u8 {
    if r.unreliable {
        EXIT_UNRELIABLE
    } else {
        0
    }
}

fn execute<C: Command>(cmd: C, o: &Opts) -> Result<u8, CliError> {
    match &o.sweep {
        None => {
            let r = cmd.run(&o.ctx)?;
            let meta = Meta::new(C::NAME, cmd.param_map(), o.ctx.bits, None);
            write_out(o.output.as_deref(), &Artifact::from_report(&meta, &r).render(o.format)?)?;
            Ok(exit_of(&r))
        }
        Some(spec) => run_sweep(cmd, o, &Sweep::parse(spec, o.ctx.bits)?),
    }
}

fn run_sweep<C: Command>(cmd: C, o: &Opts, sw: &Sweep) -> Result<u8, CliError> {
    if sw.points.is_empty() {
        return Ok(0);
    }
    let commands = sw
        .points
        .iter()
        .map(|p| {
            let mut c = cmd.clone();
            c.set(sw.var, &p.text)?;
            Ok(c)
        })
        .collect::<Result<Vec<C>, CliError>>()?;
    let eval = |c: &C| c.run(&o.ctx);
    let results: Vec<Result<Report, CliError>> = match o.jobs {
        Some(1) => commands.iter().map(eval).collect(),
        jobs => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| CliError::usage(e.to_string()))?;
            pool.install(|| commands.par_iter().map(eval).collect())
        }
    };

    let mut code = 0u8;
    let mut columns: Option<Vec<&'static str>> = None;
    let mut rows = Vec::new();
    if let Some(dir) = &o.output {
        std::fs::create_dir_all(dir).map_err(CliError::io)?;
    }
    for (i, ((p, c), res)) in sw.points.iter().zip(&commands).zip(&results).enumerate() {
        let r = match res {
            Ok(r) => r,
            Err(e) => {
                eprintln!("{}={}: {e}", sw.var, p.text);
                code = code.max(e.code);
                continue;
            }
        };
        code = code.max(exit_of(r));
        if columns.is_none() {
            let key = if r.columns.contains(&sw.var.name()) { sw.var.sweep_column() } else { sw.var.name() };
            let mut cols = vec![key];
            cols.extend(&r.columns);
            cols.push("bits");
            columns = Some(cols);
        }
        for row in &r.rows {
            let mut full = Vec::with_capacity(row.len() + 2);
            full.push(Cell::Text(p.text.clone()));
            full.extend(row.iter().cloned());
            full.push(Cell::Int(r.bits as i64));
            rows.push(full);
        }
        if let Some(dir) = &o.output {
            let meta = Meta::new(C::NAME, c.param_map(), o.ctx.bits, None);
            let name = format!("{}_{}_{i:04}.{}", C::NAME, sw.var, o.format.extension());
            write_out(Some(&dir.join(name)), &Artifact::from_report(&meta, r).render(o.format)?)?;
        }
    }
    if let Some(columns) = columns {
        let meta = Meta::new(C::NAME, cmd.param_map(), o.ctx.bits, Some(sw.to_string()));
        let agg = Artifact { meta: &meta, columns, rows, summary: &[], detail: None };
        let bytes = agg.render(o.format)?;
        let path = o
            .output
            .as_ref()
            .map(|d| d.join(format!("{}_{}_aggregate.{}", C::NAME, sw.var, o.format.extension())));
        write_out(path.as_deref(), &bytes)?;
    }
    Ok(code)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    if cli.bits < 64 {
        return Err(CliError::domain(format!("--bits must be at least 64, got {}", cli.bits)));
    }
    let mut o = Opts { format: cli.format, output: cli.output, sweep: cli.sweep, jobs: cli.jobs, ctx: Ctx { bits: cli.bits } };
    if o.jobs == Some(0) {
        return Err(CliError::usage("--jobs must be positive"));
    }
    match cli.cmd {
        Cmd::Cf(a) => execute(a, &o),
        Cmd::Brjuno(a) => execute(a, &o),
        Cmd::Bseries(a) => execute(a, &o),
        Cmd::Dioph(a) => execute(a, &o),
        Cmd::Operator(a) => execute(a, &o),
        Cmd::Complex(a) => execute(a, &o),
        Cmd::Scan(a) => execute(a, &o),
        Cmd::Lindstedt(a) => execute(a, &o),
        Cmd::Compare(a) => {
            if let Some(set) = &a.set {
                if o.sweep.is_some() {
                    return Err(CliError::usage("--set and --sweep cannot be combined"));
                }
                o.sweep = Some(format!("rho={set}"));
            }
            execute(a, &o)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
