//! Command-line front end: `analyze`, `scan` and `render`.
//!
//! Exit codes: 0 success, 2 rejected input, 3 I/O failure, 4 internal
//! invariant violation, 5 oracle disagreement under `--verify`.

pub mod cli;
pub mod config;
pub mod error;
pub mod output;
pub mod render;
pub mod scan;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use puremono::oracle::cross_check;
use puremono::{classify, PureFieldParams};

use crate::cli::{AnalyzeFormat, AnalyzeRequest, Cli, Command, RenderRequest, ScanRequest};
use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::output::AnalyzeOutput;

/// Runs the full pipeline for one field; the oracle section is present
/// exactly when `verify` is set.
pub fn cmd_analyze(req: &AnalyzeRequest) -> CliResult<AnalyzeOutput> {
    let params = PureFieldParams::new(&req.p, req.r, req.m.clone())?;
    let verdict = classify(&params)?;
    let checks = if req.verify {
        Some(cross_check(&verdict)?)
    } else {
        None
    };
    AnalyzeOutput::new(&verdict, checks.as_deref())
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let out_err = |e| CliError::io("stdout", e);
    match cli.command {
        Command::Analyze(args) => {
            let req = AnalyzeRequest::resolve(args, &config)?;
            let out = cmd_analyze(&req)?;
            let text = match req.format {
                AnalyzeFormat::Human => out.to_human(),
                AnalyzeFormat::Json => out.to_json() + "\n",
            };
            stdout.write_all(text.as_bytes()).map_err(out_err)?;
            let bad = out.oracle.iter().flatten().filter(|c| !c.agree).count();
            if bad > 0 {
                return Err(CliError::OracleDisagreement(bad));
            }
        }
        Command::Scan(args) => {
            let req = ScanRequest::resolve(args, &config)?;
            let summary = scan::cmd_scan(&req)?;
            writeln!(stdout, "{summary}").map_err(out_err)?;
        }
        Command::Render(args) => {
            let req = RenderRequest::resolve(args, &config)?;
            render::cmd_render(&req)?;
            writeln!(stdout, "wrote {}", req.out.display()).map_err(out_err)?;
        }
    }
    Ok(())
}

/// Parses `args`, runs the subcommand and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
