//! Command-line front end: loads or generates instances, runs one
//! operation, and prints a JSON report.
//!
//! Exit codes: 0 when the checked property holds, 2 when it was checked and
//! found false, 1 on usage errors or malformed input.

pub mod gen;
pub mod instance;
pub mod ops;
pub mod wire;

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::gen::{GenKind, GenParams};
use crate::instance::{Instance, Overrides};
use crate::ops::Outcome;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "GFL_THREADS";

#[derive(Parser, Debug)]
#[command(name = "gfl", version, about = "Flag maps, valuations, Galois data of curves, l-adic divisors and projective structures")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Instance file (JSON).
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Seed for generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Field characteristic.
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// The prime l of the coefficient ring Z/l^m.
    #[arg(long, global = true)]
    pub ell: Option<u32>,
    /// The exponent m of the coefficient ring Z/l^m.
    #[arg(long, global = true)]
    pub level: Option<u32>,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report elapsed time as 0, for byte-comparable output.
    #[arg(long, global = true)]
    pub mask_elapsed: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Homogeneous and flag maps.
    #[command(subcommand)]
    Flagmap(FlagmapOp),
    /// Valuations on function fields of the line and the plane.
    #[command(subcommand)]
    Val(ValOp),
    /// Galois data of the projective line.
    #[command(subcommand)]
    Curve(CurveOp),
    /// Truncated l-adic divisors and functions on the plane.
    #[command(subcommand)]
    Ladic(LadicOp),
    /// Projective structures.
    #[command(subcommand)]
    Proj(ProjOp),
    /// Generate a seeded instance.
    Gen(GenArgs),
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum FlagmapOp {
    /// Is every map a flag map; report a flag of the whole space.
    Check,
    /// Search (c : c') with c mu + c' mu' a flag map.
    FindCombo,
    /// Maximal sets of pairwise c-pairs.
    Cliques,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum ValOp {
    Ord,
    /// Residue along one curve, or a sweep when no valuation is given.
    Residue,
    OrderFromFlag,
    Compatible,
}

#[derive(Subcommand, Debug, Clone)]
pub enum CurveOp {
    Div,
    Pair,
    Separator,
    Genus,
    CcMatch {
        /// First curve (points only).
        #[arg(long)]
        a: Option<PathBuf>,
        /// Second curve (points, images and bijection).
        #[arg(long)]
        b: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum LadicOp {
    Class,
    Decompose,
    Gff,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum ProjOp {
    Axioms,
    Pappus,
    Coordinatize,
    Partial,
    Generating,
}

#[derive(Args, Debug, Clone)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GenKind,
    /// Support size, span dimension, point count or projective dimension.
    #[arg(long)]
    pub size: Option<usize>,
    /// Field order for PG(n, q).
    #[arg(long)]
    pub q: Option<u32>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Report {
    pub operation: String,
    pub inputs_digest: String,
    pub holds: bool,
    pub result: Value,
    pub witnesses: Value,
    pub elapsed_ms: u64,
}

pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

/// What a command produced: text to emit and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emitted {
    pub text: String,
    pub code: i32,
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path, o: Overrides) -> Result<(Instance, Vec<u8>)> {
    let bytes = read(path)?;
    let inst = Instance::parse(&bytes)?.with_defaults(o);
    inst.validate()?;
    Ok((inst, bytes))
}

fn to_text<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn operation_name(cmd: &Command) -> String {
    let dbg = |x: &dyn std::fmt::Debug| {
        let s = format!("{x:?}");
        let head = s.split([' ', '{', '(']).next().unwrap_or_default().to_string();
        let mut out = String::new();
        for (i, ch) in head.chars().enumerate() {
            if ch.is_uppercase() && i > 0 {
                out.push('-');
            }
            out.push(ch.to_ascii_lowercase());
        }
        out
    };
    match cmd {
        Command::Flagmap(op) => format!("flagmap {}", dbg(op)),
        Command::Val(op) => format!("val {}", dbg(op)),
        Command::Curve(op) => format!("curve {}", dbg(op)),
        Command::Ladic(op) => format!("ladic {}", dbg(op)),
        Command::Proj(op) => format!("proj {}", dbg(op)),
        Command::Gen(g) => format!("gen {}", dbg(&g.kind)),
    }
}

type OpFn = fn(&Instance) -> Result<Outcome>;

fn single_op(cmd: &Command) -> Option<OpFn> {
    use crate::ops::*;
    Some(match cmd {
        Command::Flagmap(FlagmapOp::Check) => flagmap_check,
        Command::Flagmap(FlagmapOp::FindCombo) => flagmap_find_combo,
        Command::Flagmap(FlagmapOp::Cliques) => flagmap_cliques,
        Command::Val(ValOp::Ord) => val_ord,
        Command::Val(ValOp::Residue) => val_residue,
        Command::Val(ValOp::OrderFromFlag) => val_order_from_flag,
        Command::Val(ValOp::Compatible) => val_compatible,
        Command::Curve(CurveOp::Div) => curve_div,
        Command::Curve(CurveOp::Pair) => curve_pair,
        Command::Curve(CurveOp::Separator) => curve_separator,
        Command::Curve(CurveOp::Genus) => curve_genus,
        Command::Ladic(LadicOp::Class) => ladic_class,
        Command::Ladic(LadicOp::Decompose) => ladic_decompose,
        Command::Ladic(LadicOp::Gff) => ladic_gff,
        Command::Proj(ProjOp::Axioms) => proj_axioms,
        Command::Proj(ProjOp::Pappus) => proj_pappus,
        Command::Proj(ProjOp::Coordinatize) => proj_coordinatize,
        Command::Proj(ProjOp::Partial) => proj_partial,
        Command::Proj(ProjOp::Generating) => proj_generating,
        _ => return None,
    })
}

/// Run a parsed command. Errors are usage errors.
pub fn execute(cli: &Cli) -> Result<Emitted> {
    let c = &cli.common;
    let o = Overrides { p: c.p, ell: c.ell, m: c.level };
    let start = Instant::now();
    if let Command::Gen(g) = &cli.command {
        let params = GenParams { seed: c.seed, p: c.p, ell: c.ell, m: c.level, size: g.size, q: g.q };
        let inst = gen::generate(g.kind, params)?;
        return Ok(Emitted { text: to_text(&inst)?, code: EXIT_OK });
    }
    let (outcome, inputs): (Outcome, Vec<Vec<u8>>) = match (&cli.command, &c.file) {
        (Command::Curve(CurveOp::CcMatch { a: Some(a), b: Some(b) }), _) => {
            let (ia, ba) = load(a, o)?;
            let (ib, bb) = load(b, o)?;
            (ops::curve_cc_match_files(&ia, &ib)?, vec![ba, bb])
        }
        (Command::Curve(CurveOp::CcMatch { .. }), Some(f)) => {
            let (inst, bytes) = load(f, o)?;
            (ops::curve_cc_match(&inst)?, vec![bytes])
        }
        (Command::Curve(CurveOp::CcMatch { .. }), None) => anyhow::bail!("cc-match needs --a and --b, or --file"),
        (cmd, Some(f)) => {
            let (inst, bytes) = load(f, o)?;
            let op = single_op(cmd).expect("every other command is a single-instance operation");
            (op(&inst)?, vec![bytes])
        }
        (_, None) => anyhow::bail!("this operation needs --file"),
    };
    let elapsed_ms = if c.mask_elapsed { 0 } else { start.elapsed().as_millis() as u64 };
    let parts: Vec<&[u8]> = inputs.iter().map(|v| v.as_slice()).collect();
    let report = Report {
        operation: operation_name(&cli.command),
        inputs_digest: digest(&parts),
        holds: outcome.holds,
        result: outcome.result,
        witnesses: outcome.witnesses,
        elapsed_ms,
    };
    let code = if report.holds { EXIT_OK } else { EXIT_VIOLATION };
    Ok(Emitted { text: to_text(&report)?, code })
}

/// Thread cap from the environment; `None` leaves the default pool.
pub fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => {
            let n: usize = s.trim().parse().with_context(|| format!("{THREADS_ENV} must be a positive integer"))?;
            anyhow::ensure!(n > 0, "{THREADS_ENV} must be a positive integer");
            Ok(Some(n))
        }
    }
}

/// Full program: parse, configure threads, run, emit. Returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let run = || -> Result<i32> {
        if let Some(n) = thread_cap()? {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("thread pool")?;
        }
        let em = execute(&cli)?;
        match &cli.common.out {
            Some(path) => std::fs::write(path, &em.text).with_context(|| format!("cannot write {}", path.display()))?,
            None => print!("{}", em.text),
        }
        Ok(em.code)
    };
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}
