use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod output;

/// Exact stable norms of weighted polygonal surfaces.
#[derive(Debug, Parser)]
#[command(name = "stablenorm", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Surface file
    pub file: PathBuf,
    /// Machine-readable JSON instead of the text summary
    #[arg(long)]
    pub json: bool,
    /// Write the main result here instead of stdout
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cell counts, Euler characteristic and orientability
    Info(Common),
    /// First homology with its integral torsion
    Homology(Common),
    /// Orientation double cover of a non-orientable surface
    Cover(Common),
    /// Sidedness and lift type of a closed curve
    Classify {
        #[command(flatten)]
        common: Common,
        /// Closed walk such as `a -b`
        #[arg(long)]
        cycle: String,
    },
    /// Stable norm of a class with a minimizing cycle
    Norm {
        #[command(flatten)]
        common: Common,
        /// Class coordinates `p1/q1,p2/q2,...`
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Unit ball of the stable norm
    Ball {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = stablenorm::circuits::DEFAULT_CIRCUIT_CAP)]
        cap_circuits: usize,
        /// Also draw the ball, or its slice by the first two axes
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Face of the unit ball containing a class of norm one
    Flat {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        #[arg(long, default_value_t = stablenorm::circuits::DEFAULT_CIRCUIT_CAP)]
        cap_circuits: usize,
    },
    /// Dual stable norm of a cohomology class
    Dual {
        #[command(flatten)]
        common: Common,
        /// Covector coordinates `p1/q1,p2/q2,...`
        #[arg(long, allow_hyphen_values = true)]
        covector: String,
        #[arg(long, default_value_t = stablenorm::circuits::DEFAULT_CIRCUIT_CAP)]
        cap_circuits: usize,
    },
    /// Reweight a surface so its ball realizes the prescribed cycles
    Construct {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = stablenorm::polyconstruct::DEFAULT_MAX_ESCALATIONS)]
        max_escalations: usize,
        /// Write the certificate JSON here
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Check a prescription, or run the property checks on a surface
    Verify {
        #[command(flatten)]
        common: Common,
        /// Certificate produced by `construct`
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, default_value_t = stablenorm::circuits::DEFAULT_CIRCUIT_CAP)]
        cap_circuits: usize,
    },
}

/// Bad invocation or unreadable input; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
