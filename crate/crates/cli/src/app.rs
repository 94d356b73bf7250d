//! Command-line interface, kept in the library so it can be driven from
//! tests without spawning a process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{parse_config_for, Format, Scheme};
use crate::emit::emit;
use crate::presets::preset;
use crate::run::run;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_ROW_ERRORS: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "magsup",
    version,
    about = "Magneto-mechanical superposition models: single points, sweeps and figure presets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Magnet sphere pushed by an anti-Helmholtz ring pair.
    Scheme1(RunArgs),
    /// Superconducting ring levitated above a magnet sphere.
    Scheme2(RunArgs),
    /// Superconducting sphere between two antiparallel dipoles.
    Meissner(RunArgs),
    /// Gas-damping quality factor.
    Qfactor(RunArgs),
    /// Run a config that names its own scheme.
    Run(RunArgs),
    /// Write a shipped preset config.
    Preset {
        name: PresetName,
        /// Destination file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the config keys of a scheme with units and defaults.
    Keys { scheme: SchemeName },
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Config file (`key = value` lines).
    #[arg(long)]
    config: PathBuf,
    /// Output file; overrides `output.path`. Stdout when neither is set.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; overrides `output.format`.
    #[arg(long, value_enum)]
    format: Option<FormatName>,
    /// Worker threads for sweep evaluation.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatName {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeName {
    Scheme1,
    Scheme2,
    Meissner,
    Qfactor,
}

impl From<SchemeName> for Scheme {
    fn from(s: SchemeName) -> Self {
        match s {
            SchemeName::Scheme1 => Scheme::Scheme1,
            SchemeName::Scheme2 => Scheme::Scheme2,
            SchemeName::Meissner => Scheme::Meissner,
            SchemeName::Qfactor => Scheme::QFactor,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PresetName {
    Fig2,
    Fig4,
    Qfig,
    QfigTorus,
    Table2,
    Backaction,
}

impl PresetName {
    fn text(self) -> &'static str {
        let name = self.to_possible_value().expect("no skipped variants");
        preset(name.get_name()).expect("every preset name is shipped")
    }
}

fn write_output(path: Option<&PathBuf>, bytes: &[u8], stdout: &mut dyn Write) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, bytes),
        None => stdout.write_all(bytes),
    }
}

fn run_scheme(args: RunArgs, scheme: Option<Scheme>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let text = match fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot read {}: {e}", args.config.display());
            return EXIT_USAGE;
        }
    };
    let mut cfg = match parse_config_for(&text, scheme) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}: {e}", args.config.display());
            return EXIT_USAGE;
        }
    };
    if let Some(f) = args.format {
        cfg.format = match f {
            FormatName::Csv => Format::Csv,
            FormatName::Json => Format::Json,
        };
    }
    let result = match run(&cfg, args.threads.map(usize::from)) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let bytes = match emit(&result, cfg.format) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let dest = args.out.as_ref().or(cfg.output.as_ref());
    if let Err(e) = write_output(dest, &bytes, stdout) {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    let failed = result.error_count();
    if failed > 0 {
        let _ = writeln!(stderr, "{failed} of {} rows failed; see the error column", result.rows.len());
        EXIT_ROW_ERRORS
    } else {
        EXIT_OK
    }
}

fn list_keys(scheme: Scheme, stdout: &mut dyn Write) -> std::io::Result<()> {
    for k in scheme.keys() {
        let default = k.default.map(|d| format!("default {d:e}")).unwrap_or_else(|| "required".into());
        writeln!(stdout, "{:<14} {:<8} {:<18} {}", k.key, k.unit, default, k.doc)?;
    }
    Ok(())
}

/// Runs the CLI and returns the process exit code.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match cli.command {
        Command::Scheme1(a) => run_scheme(a, Some(Scheme::Scheme1), stdout, stderr),
        Command::Scheme2(a) => run_scheme(a, Some(Scheme::Scheme2), stdout, stderr),
        Command::Meissner(a) => run_scheme(a, Some(Scheme::Meissner), stdout, stderr),
        Command::Qfactor(a) => run_scheme(a, Some(Scheme::QFactor), stdout, stderr),
        Command::Run(a) => run_scheme(a, None, stdout, stderr),
        Command::Preset { name, out } => match write_output(out.as_ref(), name.text().as_bytes(), stdout) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot write preset: {e}");
                EXIT_USAGE
            }
        },
        Command::Keys { scheme } => match list_keys(scheme.into(), stdout) {
            Ok(()) => EXIT_OK,
            Err(_) => EXIT_USAGE,
        },
    }
}
