//! Argument parsing. Every option can come from a flag, from a `MONO_*`
//! environment variable, or from the config file, in that order of
//! precedence; clap handles the first two.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::config::{Config, IntValue};
use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "puremono", version, about = "Monogenity of pure number fields Q(alpha), alpha^(p^r) = m")]
pub struct Cli {
    /// TOML file supplying defaults for any subcommand option
    #[arg(long, env = "MONO_CONFIG", global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one field and print its certificate
    Analyze(AnalyzeArgs),
    /// Classify every m in a range and write one row per m
    Scan(ScanArgs),
    /// Draw the Newton polygon of x^(p^r) - m at a prime
    Render(RenderArgs),
}

fn parse_bigint(s: &str) -> Result<BigInt, String> {
    BigInt::from_str(s.trim()).map_err(|_| format!("not an integer: {s:?}"))
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, env = "MONO_P", value_parser = parse_bigint)]
    pub p: Option<BigInt>,
    #[arg(long, env = "MONO_R")]
    pub r: Option<u32>,
    #[arg(long, env = "MONO_M", value_parser = parse_bigint, allow_hyphen_values = true)]
    pub m: Option<BigInt>,
    #[arg(long, env = "MONO_ANALYZE_FORMAT", value_enum)]
    pub format: Option<AnalyzeFormat>,
    /// Re-check the certificate with the brute-force oracles
    #[arg(long, env = "MONO_VERIFY", num_args = 0..=1, require_equals = true, default_missing_value = "true")]
    pub verify: Option<bool>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, env = "MONO_P", value_parser = parse_bigint)]
    pub p: Option<BigInt>,
    #[arg(long, env = "MONO_R")]
    pub r: Option<u32>,
    #[arg(long, env = "MONO_M_FROM", allow_hyphen_values = true)]
    pub m_from: Option<i64>,
    #[arg(long, env = "MONO_M_TO", allow_hyphen_values = true)]
    pub m_to: Option<i64>,
    /// Keep only m congruent to RESIDUE modulo MODULUS
    #[arg(long, env = "MONO_RESIDUE", allow_hyphen_values = true)]
    pub residue: Option<i64>,
    #[arg(long, env = "MONO_MODULUS")]
    pub modulus: Option<u64>,
    #[arg(long, env = "MONO_SCAN_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, env = "MONO_SCAN_FORMAT", value_enum)]
    pub format: Option<ScanFormat>,
    /// Worker threads; output does not depend on this
    #[arg(long, env = "MONO_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, env = "MONO_P", value_parser = parse_bigint)]
    pub p: Option<BigInt>,
    #[arg(long, env = "MONO_R")]
    pub r: Option<u32>,
    #[arg(long, env = "MONO_M", value_parser = parse_bigint, allow_hyphen_values = true)]
    pub m: Option<BigInt>,
    /// Prime at which the polygon is drawn
    #[arg(long, env = "MONO_AT", value_parser = parse_bigint)]
    pub at: Option<BigInt>,
    #[arg(long, env = "MONO_RENDER_FORMAT", value_enum)]
    pub format: Option<RenderFormat>,
    #[arg(long, env = "MONO_RENDER_OUT")]
    pub out: Option<PathBuf>,
    /// Linear abscissa even past x = 32
    #[arg(long, env = "MONO_LINEAR", num_args = 0..=1, require_equals = true, default_missing_value = "true")]
    pub linear: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AnalyzeFormat {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

fn required<T>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("missing --{flag} (flag, environment or config)")))
}

fn int_from(flag: Option<BigInt>, cfg: &Option<IntValue>, key: &str) -> CliResult<Option<BigInt>> {
    match (flag, cfg) {
        (Some(v), _) => Ok(Some(v)),
        (None, Some(c)) => c.to_bigint(key).map(Some),
        (None, None) => Ok(None),
    }
}

fn enum_from<T: ValueEnum>(flag: Option<T>, cfg: &Option<String>, key: &str) -> CliResult<Option<T>> {
    match (flag, cfg) {
        (Some(v), _) => Ok(Some(v)),
        (None, Some(s)) => T::from_str(s, true)
            .map(Some)
            .map_err(|_| CliError::Usage(format!("config key {key}: unknown value {s:?}"))),
        (None, None) => Ok(None),
    }
}

#[derive(Debug, Clone)]
pub struct AnalyzeRequest {
    pub p: BigInt,
    pub r: u32,
    pub m: BigInt,
    pub format: AnalyzeFormat,
    pub verify: bool,
}

impl AnalyzeRequest {
    pub fn resolve(args: AnalyzeArgs, config: &Config) -> CliResult<Self> {
        let c = &config.analyze;
        Ok(AnalyzeRequest {
            p: required(int_from(args.p, &c.p, "analyze.p")?, "p")?,
            r: required(args.r.or(c.r), "r")?,
            m: required(int_from(args.m, &c.m, "analyze.m")?, "m")?,
            format: enum_from(args.format, &c.format, "analyze.format")?.unwrap_or(AnalyzeFormat::Human),
            verify: args.verify.or(c.verify).unwrap_or(false),
        })
    }
}

#[derive(Debug, Clone)]
pub struct ScanRequest {
    pub p: BigInt,
    pub r: u32,
    pub m_from: i64,
    pub m_to: i64,
    pub filter: Option<(i64, u64)>,
    pub out: PathBuf,
    pub format: ScanFormat,
    pub jobs: Option<usize>,
}

impl ScanRequest {
    pub fn resolve(args: ScanArgs, config: &Config) -> CliResult<Self> {
        let c = &config.scan;
        let filter = match (args.residue.or(c.residue), args.modulus.or(c.modulus)) {
            (None, None) => None,
            (Some(res), Some(modulus)) => Some((res, modulus)),
            _ => return Err(CliError::Usage("--residue and --modulus go together".into())),
        };
        Ok(ScanRequest {
            p: required(int_from(args.p, &c.p, "scan.p")?, "p")?,
            r: required(args.r.or(c.r), "r")?,
            m_from: required(args.m_from.or(c.m_from), "m-from")?,
            m_to: required(args.m_to.or(c.m_to), "m-to")?,
            filter,
            out: required(args.out.or_else(|| c.out.clone()), "out")?,
            format: enum_from(args.format, &c.format, "scan.format")?.unwrap_or(ScanFormat::Csv),
            jobs: args.jobs.or(c.jobs),
        })
    }
}

#[derive(Debug, Clone)]
pub struct RenderRequest {
    pub p: BigInt,
    pub r: u32,
    pub m: BigInt,
    pub at: BigInt,
    pub format: RenderFormat,
    pub out: PathBuf,
    pub linear: bool,
}

impl RenderRequest {
    pub fn resolve(args: RenderArgs, config: &Config) -> CliResult<Self> {
        let c = &config.render;
        Ok(RenderRequest {
            p: required(int_from(args.p, &c.p, "render.p")?, "p")?,
            r: required(args.r.or(c.r), "r")?,
            m: required(int_from(args.m, &c.m, "render.m")?, "m")?,
            at: required(int_from(args.at, &c.at, "render.at")?, "at")?,
            format: required(enum_from(args.format, &c.format, "render.format")?, "format")?,
            out: required(args.out.or_else(|| c.out.clone()), "out")?,
            linear: args.linear.or(c.linear).unwrap_or(false),
        })
    }
}
