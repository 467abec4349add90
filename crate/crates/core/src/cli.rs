//! Command-line front end.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::mesh::{parse_off, Polyhedron};
use crate::oracle::{census, census_csv};
use crate::pipeline::{stretch_and_unfold, Options};
use crate::transform::{sweep_csv, sweep_directions};
use crate::tree::TieRule;
use crate::unfold::{export_json, export_svg, import_json};
use crate::verify::{certify_net, Status};

pub const EXIT_NET: i32 = 0;
pub const EXIT_OVERLAP: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "stretchfold",
    version,
    about = "Nets of stretched convex polyhedra"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Json,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieArg {
    Steepest,
    First,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stretch, unfold and certify a polyhedron given as OFF.
    Unfold {
        #[arg(long)]
        input: PathBuf,
        /// SVG path; the JSON layout goes next to it with a `.json` extension.
        #[arg(long, default_value = "net.svg")]
        out: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "both")]
        format: Format,
        /// Edge angle bound in radians, in (0, π/10). Default π/(20N).
        #[arg(long)]
        theta_max: Option<f64>,
        #[arg(long, value_enum, default_value = "steepest")]
        tie_rule: TieArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-certify a stored JSON layout.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Certify every spanning-tree unfolding at each stretch factor.
    Census {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        lambda_list: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Stretch factor needed along each of k directions.
    Sweep {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        sweep_k: usize,
    },
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_NET };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    }
}

fn read_polyhedron(path: &Path) -> Result<Polyhedron, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_off(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn tie_rule(arg: TieArg, seed: u64) -> TieRule {
    match arg {
        TieArg::Steepest => TieRule::SteepestAscent,
        TieArg::First => TieRule::FirstByIndex,
        TieArg::Random => TieRule::Random(seed),
    }
}

fn exit_for(status: Status) -> i32 {
    match status {
        Status::Net => EXIT_NET,
        Status::Overlap | Status::PreconditionFailure => EXIT_OVERLAP,
    }
}

fn execute(cmd: Command) -> Result<i32, String> {
    match cmd {
        Command::Unfold {
            input,
            out,
            json,
            format,
            theta_max,
            tie_rule: tie,
            seed,
        } => {
            if let Some(t) = theta_max {
                if !(t > 0.0 && t < PI / 10.0) {
                    return Err(format!("--theta-max {t} is outside (0, π/10)"));
                }
            }
            let p = read_polyhedron(&input)?;
            let opts = Options {
                theta_max,
                tie_rule: tie_rule(tie, seed),
                seed,
            };
            let r = stretch_and_unfold(&p, &opts).map_err(|e| e.to_string())?;
            let u = &r.unfolding;
            if matches!(format, Format::Svg | Format::Both) {
                let pts: Vec<_> = u.verdict.witnesses.iter().map(|w| w.point).collect();
                write_or_print(Some(&out), &export_svg(&u.layout, &u.surface, &pts))?;
            }
            if matches!(format, Format::Json | Format::Both) {
                let path = json.unwrap_or_else(|| out.with_extension("json"));
                let text = export_json(
                    &u.layout,
                    &u.surface,
                    r.stretch.lambda,
                    r.stretch.theta_max,
                    seed,
                );
                write_or_print(Some(&path), &text)?;
            }
            println!("{}", u.verdict.to_json());
            Ok(exit_for(u.verdict.status))
        }
        Command::Verify { input } => {
            let text =
                fs::read_to_string(&input).map_err(|e| format!("{}: {e}", input.display()))?;
            let (layout, surface, _) =
                import_json(&text).map_err(|e| format!("{}: {e}", input.display()))?;
            let v = certify_net(&layout, &surface);
            println!("{}", v.to_json());
            Ok(exit_for(v.status))
        }
        Command::Census {
            input,
            out,
            lambda_list,
            cap,
            seed,
        } => {
            if lambda_list.iter().any(|l| !(l.is_finite() && *l >= 1.0)) {
                return Err("stretch factors must be finite and at least 1".into());
            }
            let p = read_polyhedron(&input)?;
            let rows = census(&p, &lambda_list, cap, seed).map_err(|e| e.to_string())?;
            write_or_print(
                out.as_deref(),
                &census_csv(&rows).map_err(|e| e.to_string())?,
            )?;
            Ok(EXIT_NET)
        }
        Command::Sweep {
            input,
            out,
            sweep_k,
        } => {
            let p = read_polyhedron(&input)?;
            let rows = sweep_directions(&p, sweep_k);
            write_or_print(
                out.as_deref(),
                &sweep_csv(&rows).map_err(|e| e.to_string())?,
            )?;
            Ok(EXIT_NET)
        }
    }
}
