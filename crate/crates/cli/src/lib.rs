//! Command-line front end: model files, analyses, verification suites and
//! Hasse-diagram export.

pub mod analysis;
pub mod model;
pub mod render;
pub mod report;
pub mod suites;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use pfspec_core::Caps;

use analysis::{CliError, StructureKind};
use model::{parse_model, NamedObject};
use report::{run_check, Report, Verdict};
use suites::Suite;

#[derive(Debug, Parser)]
#[command(name = "pfspec", version, about = "Spectra of finite localic semirings, with exhaustive verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Limits {
    /// Largest carrier searched subset-exhaustively.
    #[arg(long, env = "PFSPEC_MAX_EXHAUSTIVE")]
    pub max_exhaustive: Option<usize>,
    /// Largest product carrier for which a tensor product is built.
    #[arg(long)]
    pub max_tensor_carrier: Option<usize>,
}

impl Limits {
    pub fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            max_exhaustive: self.max_exhaustive.unwrap_or(d.max_exhaustive),
            max_tensor_carrier: self.max_tensor_carrier.unwrap_or(d.max_tensor_carrier),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumMode {
    /// `Idl(R)` with its multiplication.
    Quantic,
    /// The radical frame `Rad(R)`.
    Localic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Tensor,
    Duality,
    Representability,
    Oracles,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::All => Suite::ALL.to_vec(),
            SuiteArg::Tensor => vec![Suite::Tensor],
            SuiteArg::Duality => vec![Suite::Duality],
            SuiteArg::Representability => vec![Suite::Representability],
            SuiteArg::Oracles => vec![Suite::Oracles],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StructureArg {
    Idl,
    Rad,
    MonoidIdeals,
    Saturated,
    Opens,
    Lattice,
    Poset,
}

impl From<StructureArg> for StructureKind {
    fn from(s: StructureArg) -> Self {
        match s {
            StructureArg::Idl => StructureKind::Idl,
            StructureArg::Rad => StructureKind::Rad,
            StructureArg::MonoidIdeals => StructureKind::MonoidIdeals,
            StructureArg::Saturated => StructureKind::Saturated,
            StructureArg::Opens => StructureKind::Opens,
            StructureArg::Lattice => StructureKind::Lattice,
            StructureArg::Poset => StructureKind::Poset,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Report,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a model and build every object in it.
    Validate { file: PathBuf },
    /// Print a model in canonical form.
    Print { file: PathBuf },
    /// Summarise one object.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Print `Idl(R)` (quantic) or `Rad(R)` (localic).
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long, value_enum)]
        mode: SpectrumMode,
        #[command(flatten)]
        limits: Limits,
    },
    /// List the points, as open prime anti-ideals.
    Points {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Run verification suites against every object in a model.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[command(flatten)]
        limits: Limits,
        /// Treat SKIPPED(cap) as failure.
        #[arg(long)]
        strict_caps: bool,
        /// Append per-check wall-clock times (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Write a structure's Hasse diagram as DOT or as a text report.
    Export {
        file: PathBuf,
        #[arg(long)]
        object: String,
        /// Defaults to idl for semirings, monoid-ideals for monoids, and the object itself otherwise.
        #[arg(long, value_enum)]
        structure: Option<StructureArg>,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
}

/// What a command prints and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn find(objects: Vec<NamedObject>, name: &str) -> Result<NamedObject, CliError> {
    objects
        .into_iter()
        .find(|o| o.name == name)
        .ok_or_else(|| CliError::NoSuchObject(name.to_string()))
}

fn load_object(file: &Path, name: &str) -> Result<NamedObject, CliError> {
    let m = parse_model(file)?;
    let block = m.block(name).ok_or_else(|| CliError::NoSuchObject(name.to_string()))?;
    Ok(m.resolve_block(block)?)
}

pub fn verify(file: &Path, suite: SuiteArg, caps: &Caps, strict_caps: bool, timings: bool) -> Result<(Report, i32), CliError> {
    let objects = parse_model(file)?.resolve()?;
    let mut report = Report {
        header: vec![
            ("file".into(), file.display().to_string()),
            ("suite".into(), format!("{suite:?}").to_lowercase()),
            ("objects".into(), objects.len().to_string()),
            (
                "caps".into(),
                format!("max-exhaustive {}, max-tensor-carrier {}", caps.max_exhaustive, caps.max_tensor_carrier),
            ),
        ],
        checks: Vec::new(),
        timings,
    };
    for s in suite.suites() {
        report.checks.extend(suites::run_suite(s, &objects, caps));
    }
    let code = report.exit_code(strict_caps);
    Ok((report, code))
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Validate { file } => {
            let m = parse_model(&file)?;
            let mut report = Report {
                header: vec![("file".into(), file.display().to_string())],
                ..Report::default()
            };
            for b in &m.blocks {
                report.checks.push(run_check("validate", format!("{} {}", b.kind(), b.name()), || {
                    match m.resolve_block(b) {
                        Ok(_) => Ok(Verdict::pass("well-formed")),
                        Err(e) => Ok(Verdict::fail(e.to_string())),
                    }
                }));
            }
            let code = report.exit_code(false);
            Ok(Outcome {
                stdout: report.render(),
                code,
            })
        }
        Command::Print { file } => Ok(Outcome::ok(parse_model(&file)?.to_string())),
        Command::Analyze { file, object, limits } => {
            let o = load_object(&file, &object)?;
            Ok(Outcome::ok(analysis::analyze(&o, &limits.caps())?))
        }
        Command::Spectrum {
            file,
            object,
            mode,
            limits,
        } => {
            let o = load_object(&file, &object)?;
            let caps = limits.caps();
            let kind = match mode {
                SpectrumMode::Quantic => StructureKind::Idl,
                SpectrumMode::Localic => StructureKind::Rad,
            };
            let mut text = render::hasse_text(&analysis::structure(&o, kind, &caps)?);
            if mode == SpectrumMode::Localic {
                text.push_str(&analysis::points(&o, &caps)?);
            }
            Ok(Outcome::ok(text))
        }
        Command::Points { file, object, limits } => {
            let o = load_object(&file, &object)?;
            Ok(Outcome::ok(analysis::points(&o, &limits.caps())?))
        }
        Command::Verify {
            file,
            suite,
            limits,
            strict_caps,
            timings,
        } => {
            let (report, code) = verify(&file, suite, &limits.caps(), strict_caps, timings)?;
            Ok(Outcome {
                stdout: report.render(),
                code,
            })
        }
        Command::Export {
            file,
            object,
            structure,
            format,
            out,
            limits,
        } => {
            let objects = parse_model(&file)?.resolve()?;
            let o = find(objects, &object)?;
            let kind = structure.map_or_else(|| StructureKind::default_for(&o.object), StructureKind::from);
            let s = analysis::structure(&o, kind, &limits.caps())?;
            let text = match format {
                ExportFormat::Dot => render::dot(&s),
                ExportFormat::Report => render::hasse_text(&s),
            };
            std::fs::write(&out, text).map_err(|source| CliError::Io {
                path: out.display().to_string(),
                source,
            })?;
            Ok(Outcome::ok(format!(
                "wrote {} ({} nodes, {} edges)\n",
                out.display(),
                s.len(),
                s.covers().len()
            )))
        }
    }
}
