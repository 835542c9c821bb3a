//! Command-line driver. Each subcommand reads and writes files so that
//! every step of the ko-cover computation can be checked on its own.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::chart::{chart_from_ext, connective_cover_chart, render_ascii, render_svg, Chart};
use crate::fpmodule::{FpModule, Preset};
use crate::hurewicz::{annotate_delta, apply_criterion, is_prime, HurewiczReport};
use crate::resolve::minimal_resolution;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, bad input files, or violated preconditions.
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Internal(_) => ExitCode::from(1),
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "adams-hurewicz",
    version,
    about = "Adams E2 charts and Hurewicz vanishing for covers of ko"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Resolve a module and write its Ext chart.
    Resolve(ResolveArgs),
    /// Turn the ko chart into the chart of the cover ko<c>.
    Cover(CoverArgs),
    /// Apply the vanishing criterion and report the possible Hurewicz image.
    Hurewicz(HurewiczArgs),
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Write an ASCII rendering (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    pub ascii: Option<PathBuf>,
    /// Write an SVG rendering (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ResolveArgs {
    /// One of sphere-A, sphere-A1, ko-A1, ko-A.
    #[arg(long, conflicts_with = "module", required_unless_present = "module")]
    pub preset: Option<String>,
    /// Module description file.
    #[arg(long, value_name = "FILE")]
    pub module: Option<PathBuf>,
    #[arg(long)]
    pub smax: u32,
    #[arg(long)]
    pub tmax: u32,
    /// Chart output (default stdout).
    #[arg(short = 'o', value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Resolution dump output.
    #[arg(long, value_name = "FILE")]
    pub dump: Option<PathBuf>,
    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    /// Connectivity of the cover; must be 0, 1, 2 or 4 mod 8.
    #[arg(short = 'c')]
    pub c: u32,
    /// The ko chart.
    pub input: PathBuf,
    #[arg(short = 'o', value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Debug, Args)]
pub struct HurewiczArgs {
    /// The spectrum is (c-1)-connected.
    #[arg(short = 'c')]
    pub c: u32,
    #[arg(short = 'p', default_value_t = 2)]
    pub p: u32,
    pub input: PathBuf,
    /// Annotated chart output.
    #[arg(short = 'o', value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Report output (default stdout).
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub render: RenderArgs,
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Internal(format!("writing stdout: {e}"))),
        Some(p) if p == Path::new("-") => write_out(None, text),
        Some(p) => fs::write(p, text).map_err(|e| CliError::Internal(format!("writing {}: {e}", p.display()))),
    }
}

fn read_in(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("reading {}: {e}", path.display())))
}

fn read_chart(path: &Path) -> Result<Chart, CliError> {
    Chart::parse(&read_in(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn render(chart: &Chart, args: &RenderArgs) -> Result<(), CliError> {
    if let Some(p) = &args.ascii {
        write_out(Some(p), &render_ascii(chart))?;
    }
    if let Some(p) = &args.svg {
        write_out(Some(p), &render_svg(chart))?;
    }
    Ok(())
}

pub fn cmd_resolve(args: &ResolveArgs) -> Result<(), CliError> {
    let module = match (&args.preset, &args.module) {
        (Some(name), _) => name.parse::<Preset>().map_err(usage)?.build(args.tmax),
        (None, Some(path)) => {
            let name = path
                .file_stem()
                .map_or("module".into(), |s| s.to_string_lossy().into_owned());
            FpModule::parse(&name, &read_in(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        (None, None) => return Err(usage("one of --preset or --module is required")),
    };
    let name = module.name.clone();
    let resolution = minimal_resolution(Arc::new(module), args.smax, args.tmax);
    let mut chart = chart_from_ext(&resolution.ext_table());
    chart.source = Some(name);
    if let Some(p) = &args.dump {
        write_out(Some(p), &resolution.dump())?;
    }
    write_out(args.output.as_deref(), &chart.serialize())?;
    render(&chart, &args.render)
}

pub fn cmd_cover(args: &CoverArgs) -> Result<(), CliError> {
    let ko = read_chart(&args.input)?;
    let cover = connective_cover_chart(&ko, args.c).map_err(usage)?;
    write_out(args.output.as_deref(), &cover.serialize())?;
    render(&cover, &args.render)
}

pub fn cmd_hurewicz(args: &HurewiczArgs) -> Result<(), CliError> {
    if !is_prime(args.p) {
        return Err(usage(format!("-p {} is not prime", args.p)));
    }
    let chart = read_chart(&args.input)?;
    // A (c-1)-connected spectrum with c >= 1 is 0-connected.
    let annotated = annotate_delta(&apply_criterion(&chart, args.c, args.p).map_err(usage)?, true);
    let id = args.input.display().to_string();
    let report = HurewiczReport::from_chart(&annotated, id, args.c, args.p);
    if let Some(p) = &args.output {
        write_out(Some(p), &annotated.serialize())?;
    }
    write_out(args.report.as_deref(), &report.to_text())?;
    render(&annotated, &args.render)
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Resolve(a) => cmd_resolve(a),
        Command::Cover(a) => cmd_cover(a),
        Command::Hurewicz(a) => cmd_hurewicz(a),
    }
}
