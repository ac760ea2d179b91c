use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use delaunay_lab::commands::{self, Spacing, SweepConfig, Which, DEFAULT_REL_TOL};
use delaunay_lab::verify::{self, Level};

#[derive(Parser)]
#[command(name = "delaunay-lab", version, about = "Delaunay tori and spheres: energies, sweeps, profiles, meshes")]
struct Cli {
    /// Relative tolerance of the surface quadratures.
    #[arg(long, global = true, env = "DELAUNAY_LAB_RELTOL", default_value_t = DEFAULT_REL_TOL)]
    rel_tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the balance system at one c and report energies and metrics as JSON.
    Solve {
        #[arg(long)]
        c: f64,
    },
    /// Tabulate the torus family over a grid of c values as CSV.
    Sweep {
        #[arg(long)]
        c_min: f64,
        #[arg(long)]
        c_max: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Spacing::Linear)]
        spacing: Spacing,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a sampled meridian as CSV.
    Profile {
        #[arg(long)]
        c: f64,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a triangulated surface of revolution as OBJ.
    Mesh {
        #[arg(long)]
        c: f64,
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 256)]
        u: usize,
        #[arg(long, default_value_t = 128)]
        v: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate K, E and their derivatives at modulus k.
    Elliptic {
        #[arg(long)]
        k: f64,
    },
    /// Run the verification suite and print a JSON report.
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        level: Level,
        /// Also write the JSON report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<bool> {
    commands::check_rel_tol(cli.rel_tol)?;
    match cli.command {
        Command::Solve { c } => {
            println!("{}", serde_json::to_string_pretty(&commands::solve(c, cli.rel_tol)?)?);
        }
        Command::Sweep { c_min, c_max, steps, spacing, out } => {
            let config = SweepConfig { c_min, c_max, steps, spacing, rel_tol: cli.rel_tol };
            let rows = commands::sweep(&config)?;
            let mut w = output(out.as_deref())?;
            commands::write_sweep_csv(&rows, &mut w)?;
            w.flush()?;
        }
        Command::Profile { c, which, samples, out } => {
            let profile = commands::profile(c, which, samples)?;
            let mut w = output(out.as_deref())?;
            commands::write_profile_csv(&profile, &mut w)?;
            w.flush()?;
        }
        Command::Mesh { c, which, u, v, out } => {
            let mut w = output(out.as_deref())?;
            commands::mesh(c, which, u, v, &mut w)?;
            w.flush()?;
        }
        Command::Elliptic { k } => {
            println!("{}", serde_json::to_string_pretty(&commands::elliptic(k)?)?);
        }
        Command::Verify { level, report } => {
            let result = verify::run_all(level);
            for check in &result.checks {
                eprintln!("{}", check.summary());
            }
            let json = serde_json::to_string_pretty(&result)?;
            if let Some(path) = report {
                std::fs::write(&path, &json).with_context(|| format!("writing {}", path.display()))?;
            }
            println!("{json}");
            return Ok(result.passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            eprintln!("error: {first}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
