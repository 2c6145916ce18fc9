use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fisher_discord::closed_forms::FamilyId;
use fisher_discord::random::DEFAULT_SEED;
use fisher_discord::sweep::{
    compute, family_extremum, family_from_args, format_report, parse_real, run_sweep, run_verify, write_figures, Grid,
    HamSpec, Mode, StateSpec, SweepSpec, Target, VerifyOptions,
};
use fisher_discord::{Error, FockConfig};

#[derive(Parser)]
#[command(name = "fdiscord", version, about = "Fisher information, skew information and Fisher discord")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct FockArgs {
    /// Initial Fock truncation.
    #[arg(long, default_value_t = 32)]
    dim: usize,
    #[arg(long, default_value_t = 512)]
    max_dim: usize,
    #[arg(long, default_value_t = 1e-8)]
    conv_tol: f64,
}

impl FockArgs {
    fn config(self) -> Result<FockConfig, Error> {
        FockConfig::new(self.dim, self.conv_tol, self.max_dim, 2)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one state and observable, e.g. `compute mixture:p=0.5,m=0,n=1 number`.
    Compute {
        state: String,
        ham: String,
        #[command(flatten)]
        fock: FockArgs,
    },
    /// Sweep one parameter over a linear grid and write CSV.
    Sweep {
        /// Closed-form family (e.g. THERMAL_X); alternatively give --state and --ham.
        #[arg(long, conflicts_with_all = ["state", "ham"])]
        family: Option<String>,
        #[arg(long, requires = "ham")]
        state: Option<String>,
        #[arg(long, requires = "state")]
        ham: Option<String>,
        /// Fixed family parameters as key=value (levels, weights=a;b;c, z=mod@arg ...).
        #[arg(long = "set", value_name = "KEY=VALUE")]
        fixed: Vec<String>,
        #[arg(long)]
        param: String,
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long, allow_hyphen_values = true)]
        stop: String,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        closed_only: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        fock: FockArgs,
    },
    /// Golden-section search of a closed form along one parameter.
    Extremum {
        family: String,
        #[arg(long)]
        param: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: String,
        #[arg(long, allow_hyphen_values = true)]
        hi: String,
        #[arg(long, default_value = "max")]
        mode: String,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        fixed: Vec<String>,
    },
    /// Invariant suite and closed-form oracle grid.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, hide = true)]
        corrupt_family: Option<String>,
        #[command(flatten)]
        fock: FockArgs,
    },
    /// Regenerate every figure preset into a directory.
    Figures {
        #[arg(long, default_value = "figures")]
        out: PathBuf,
        #[arg(long)]
        closed_only: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        fock: FockArgs,
    },
}

fn key_values(items: &[String]) -> Result<Vec<(String, String)>, Error> {
    items
        .iter()
        .map(|s| {
            s.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{s}'")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Compute { state, ham, fock } => {
            let (state, ham) = (StateSpec::parse(&state)?, HamSpec::parse(&ham)?);
            print!("{}", format_report(&compute(&state, &ham, &fock.config()?)?));
        }
        Command::Sweep {
            family,
            state,
            ham,
            fixed,
            param,
            start,
            stop,
            count,
            closed_only,
            format: Format::Csv,
            out,
            fock,
        } => {
            let target = match (family, state, ham) {
                (Some(f), _, _) => Target::Family(family_from_args(&f, &key_values(&fixed)?)?),
                (None, Some(s), Some(h)) => {
                    if !fixed.is_empty() {
                        return Err(Error::Parse("--set applies to families; put state parameters in --state".into()));
                    }
                    Target::Pair {
                        state: StateSpec::parse(&s)?,
                        ham: HamSpec::parse(&h)?,
                    }
                }
                _ => return Err(Error::Parse("give --family, or --state with --ham".into())),
            };
            let grid = Grid::new(parse_real(&start)?, parse_real(&stop)?, count)?;
            let spec = SweepSpec::new(target, &param, grid, fock.config()?)?.closed_only(closed_only)?;
            let text = run_sweep(&spec)?.render();
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
        Command::Extremum {
            family,
            param,
            lo,
            hi,
            mode,
            fixed,
        } => {
            let f = family_from_args(&family, &key_values(&fixed)?)?;
            let mode: Mode = mode.parse()?;
            let e = family_extremum(&f, &param, (parse_real(&lo)?, parse_real(&hi)?), mode)?;
            println!("arg={}\nvalue={}", e.arg, e.value);
        }
        Command::Verify {
            seed,
            trials,
            corrupt_family,
            fock,
        } => {
            let corrupt = corrupt_family.map(|s| s.parse::<FamilyId>()).transpose()?;
            let rows = run_verify(&VerifyOptions {
                seed,
                trials,
                fock: fock.config()?,
                corrupt,
            })?;
            for r in &rows {
                println!("{}", r.render());
            }
            let failed: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
            if !failed.is_empty() {
                eprintln!("failed: {}", failed.join(", "));
                return Ok(ExitCode::from(1));
            }
            println!("all {} checks passed", rows.len());
        }
        Command::Figures {
            out,
            closed_only,
            format: Format::Csv,
            fock,
        } => {
            for path in write_figures(&out, &fock.config()?, closed_only)? {
                println!("{}", path.display());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parse() { 2 } else { 3 })
        }
    }
}
