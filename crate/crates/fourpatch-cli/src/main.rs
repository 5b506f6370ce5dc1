use std::fs;
use std::io::Write;
use std::panic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use fourpatch::construct::{FilletOptions, FourthPatchParams, HoleMode};
use fourpatch::gcont::Tolerances;
use fourpatch::io_cli::{
    check_document, complete_corner_document, export_obj, fill_hole_document, fillet_document,
    load_surface, render_table, save_surface, to_json_string, CommandError, Continuity, CornerMode,
    CornerOptions, HoleOptions, SurfaceDocument, EXIT_DISCONTINUOUS, EXIT_OK, EXIT_USAGE,
};

/// G1/G2 checks and G1 constructions for Bezier patch networks.
#[derive(Debug, Parser)]
#[command(name = "fourpatch", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Check tangent-plane continuity of every edge and vertex.
    #[command(name = "check-g1")]
    CheckG1(CheckArgs),
    /// Check curvature continuity of every edge and vertex.
    #[command(name = "check-g2")]
    CheckG2(CheckArgs),
    /// Complete a corner of patches 1, 2, 4 with a fourth patch.
    #[command(name = "complete-4patch", allow_negative_numbers = true)]
    CompleteFourPatch(CornerArgs),
    /// Fill the hole in a ring of eight bi-cubic patches.
    #[command(name = "fill-hole", allow_negative_numbers = true)]
    FillHole(HoleArgs),
    /// Join two strips of bi-cubic patches by a row of patches.
    #[command(allow_negative_numbers = true)]
    Fillet(FilletArgs),
    /// Tessellate every patch into a Wavefront OBJ file.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    surface: PathBuf,
    /// Also write the JSON report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Degree of the polynomial fit of λ and κ.
    #[arg(long, default_value_t = 8)]
    fit_degree: usize,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output surface document; stdout if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write the construction report (JSON) to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CornerArgs {
    surface: PathBuf,
    #[arg(long, value_parser = finite)]
    alpha23: Option<f64>,
    #[arg(long, value_parser = finite)]
    alpha43: Option<f64>,
    /// λ on edge (2,3) at its far end.
    #[arg(long, value_parser = finite)]
    lambda23: Option<f64>,
    /// λ on edge (4,3) at its far end.
    #[arg(long, value_parser = finite)]
    lambda43: Option<f64>,
    /// κ on edge (2,3) at its far end.
    #[arg(long, value_parser = finite, default_value_t = 0.0)]
    kappa23: f64,
    /// κ on edge (4,3) at its far end.
    #[arg(long, value_parser = finite, default_value_t = 0.0)]
    kappa43: f64,
    #[arg(long = "beta2-23", value_parser = finite, default_value_t = 0.0)]
    beta2_23: f64,
    #[arg(long = "beta2-43", value_parser = finite, default_value_t = 0.0)]
    beta2_43: f64,
    /// Bi-quartic completion instead of bi-quintic.
    #[arg(long)]
    quartic: bool,
    /// Quartic mode: κ middle ordinate on edge (2,3).
    #[arg(long, value_parser = finite)]
    beta23: Option<f64>,
    /// Quartic mode: κ middle ordinate on edge (4,3).
    #[arg(long, value_parser = finite)]
    beta43: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct HoleArgs {
    surface: PathBuf,
    /// Bi-sextic fill.
    #[arg(long)]
    deg6: bool,
    /// α on sides 2, 4, 6, 8 of the hole.
    #[arg(long, value_parser = finite, allow_hyphen_values = true, value_delimiter = ',', value_name = "A2,A4,A6,A8")]
    alpha: Option<Vec<f64>>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct FilletArgs {
    a: PathBuf,
    b: PathBuf,
    /// Number of patches taken from each strip.
    #[arg(short = 'n')]
    n: usize,
    #[arg(long, value_parser = finite, default_value_t = 1.0)]
    lambda_a: f64,
    #[arg(long, value_parser = finite, default_value_t = 1.0)]
    lambda_b: f64,
    /// Bi-sextic hole fills.
    #[arg(long)]
    deg6: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct ExportArgs {
    surface: PathBuf,
    #[arg(long)]
    obj: PathBuf,
    /// Samples per patch as NU,NV.
    #[arg(long, value_delimiter = ',', default_values_t = [8, 8], value_name = "NU,NV")]
    samples: Vec<usize>,
}

fn finite(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) => Err("value must be finite".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CommandError> {
    fs::write(path, text).map_err(|e| {
        CommandError::Io(fourpatch::io_cli::IoError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    })
}

fn emit(doc: &SurfaceDocument, report: &str, out: &OutputArgs) -> Result<i32, CommandError> {
    match &out.output {
        Some(p) => save_surface(doc, p)?,
        None => print!("{}", doc.to_json()?),
    }
    if let Some(p) = &out.report {
        write_file(p, report)?;
    }
    Ok(EXIT_OK)
}

fn check(args: &CheckArgs, order: Continuity) -> Result<i32, CommandError> {
    if args.fit_degree == 0 {
        return Err(CommandError::Usage("--fit-degree must be positive".into()));
    }
    let doc = load_surface(&args.surface)?;
    let report = check_document(
        &doc,
        order,
        &Tolerances::default(),
        (args.fit_degree, args.fit_degree),
    )?;
    let json = to_json_string(&report).map_err(|e| CommandError::Usage(e.to_string()))?;
    print!("{json}");
    eprint!("{}", render_table(&report));
    if let Some(p) = &args.report {
        write_file(p, &json)?;
    }
    Ok(if report.pass {
        EXIT_OK
    } else {
        EXIT_DISCONTINUOUS
    })
}

fn run(cmd: Cmd) -> Result<i32, CommandError> {
    match cmd {
        Cmd::CheckG1(a) => check(&a, Continuity::G1),
        Cmd::CheckG2(a) => check(&a, Continuity::G2),
        Cmd::CompleteFourPatch(a) => {
            let doc = load_surface(&a.surface)?;
            let opts = CornerOptions {
                mode: if a.quartic {
                    CornerMode::Quartic
                } else {
                    CornerMode::Quintic
                },
                params: FourthPatchParams {
                    lambda23_1: a.lambda23,
                    lambda43_1: a.lambda43,
                    kappa23_1: a.kappa23,
                    kappa43_1: a.kappa43,
                    alpha23: a.alpha23,
                    alpha43: a.alpha43,
                    beta2_23: a.beta2_23,
                    beta2_43: a.beta2_43,
                },
                beta23: a.beta23,
                beta43: a.beta43,
            };
            let (out, report) = complete_corner_document(&doc, &opts)?;
            emit(&out, &report, &a.out)
        }
        Cmd::FillHole(a) => {
            let doc = load_surface(&a.surface)?;
            let alphas = match a.alpha.as_deref() {
                None => None,
                Some(&[a2, a4, a6, a8]) => Some([a2, a4, a6, a8]),
                Some(_) => {
                    return Err(CommandError::Usage(
                        "--alpha takes four values A2,A4,A6,A8".into(),
                    ))
                }
            };
            let (out, report) = fill_hole_document(
                &doc,
                &HoleOptions {
                    deg6: a.deg6,
                    alphas,
                },
            )?;
            emit(&out, &report, &a.out)
        }
        Cmd::Fillet(a) => {
            let (da, db) = (load_surface(&a.a)?, load_surface(&a.b)?);
            let opts = FilletOptions {
                lambda_a: a.lambda_a,
                lambda_b: a.lambda_b,
                mode: if a.deg6 {
                    HoleMode::Sextic
                } else {
                    HoleMode::Quintic
                },
                ..FilletOptions::default()
            };
            let (out, report) = fillet_document(&da, &db, a.n, &opts)?;
            emit(&out, &report, &a.out)
        }
        Cmd::Export(a) => {
            let &[nu, nv] = a.samples.as_slice() else {
                return Err(CommandError::Usage(
                    "--samples takes two values NU,NV".into(),
                ));
            };
            let doc = load_surface(&a.surface)?;
            export_obj(&doc, nu, nv, &a.obj)?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_OK as u8),
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    panic::set_hook(Box::new(|_| {}));
    let code = match panic::catch_unwind(|| run(cli.cmd)) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unexpected failure".into());
            eprintln!("error: internal failure: {msg}");
            EXIT_USAGE
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
