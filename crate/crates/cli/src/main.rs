use clap::{Parser, Subcommand};
use gnr_cli::mesh::{companion_curves, curves_obj, mesh_obj, surface_mesh};
use gnr_cli::report::{analyze, frenet, to_json};
use gnr_cli::verify::verify;
use gnr_cli::{exit, CliError, Scene, SceneConfig};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Analyze generalized normal ruled surfaces.
#[derive(Debug, Parser)]
#[command(name = "gnr", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classification, extrema, singular locus, striction and slant verdicts as JSON.
    Report {
        config: PathBuf,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Triangulated surface as OBJ, plus base curve, striction curve and
    /// singular locus as OBJ polylines.
    Mesh {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Companion curve file; defaults to `<out stem>.curves.obj`.
        #[arg(long)]
        curves_out: Option<PathBuf>,
    },
    /// Run the invariant suite and print one residual line per check.
    Verify { config: PathBuf },
    /// Frenet apparatus and ruled-surface frame at one parameter value.
    Frenet {
        config: PathBuf,
        #[arg(long)]
        at: f64,
    },
}

fn load(path: &Path) -> Result<Scene, CliError> {
    SceneConfig::load(path)?.build()
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Report { config, out } => {
            let json = to_json(&analyze(&load(&config)?)?);
            match out {
                Some(path) => write(&path, &json)?,
                None => print!("{json}"),
            }
        }
        Command::Mesh {
            config,
            out,
            curves_out,
        } => {
            let scene = load(&config)?;
            let mesh = surface_mesh(&scene)?;
            let (lines, points) = companion_curves(&scene)?;
            write(&out, &mesh_obj(&mesh))?;
            let curves_path = curves_out.unwrap_or_else(|| out.with_extension("curves.obj"));
            write(&curves_path, &curves_obj(&lines, &points))?;
            eprintln!(
                "wrote {} ({} vertices, {} triangles) and {}",
                out.display(),
                mesh.vertices.len(),
                mesh.triangles.len(),
                curves_path.display()
            );
        }
        Command::Verify { config } => {
            let result = verify(&load(&config)?)?;
            print!("{}", result.render());
            if !result.passed() {
                return Ok(exit::VERIFY_FAILED);
            }
        }
        Command::Frenet { config, at } => print!("{}", to_json(&frenet(&load(&config)?, at)?)),
    }
    Ok(exit::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(value) = std::env::var("GNR_THREADS") {
        match value.parse::<usize>() {
            Ok(n) if n > 0 => {
                if let Err(e) = gnr_core::parallel::configure_threads(n) {
                    eprintln!("gnr: GNR_THREADS ignored: {e}");
                }
            }
            _ => {
                eprintln!("gnr: GNR_THREADS must be a positive integer, got {value:?}");
                return ExitCode::from(exit::CONFIG);
            }
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("gnr: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
