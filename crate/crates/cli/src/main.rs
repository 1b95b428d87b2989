//! `snakeineq` command-line front end.
//!
//! Exit codes: 0 all checks passed, 1 a verification failed, 2 usage or
//! configuration error.

mod args;
mod commands;
mod output;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, ScanCmd, VerifyCmd};

/// `print!` that propagates I/O errors instead of panicking.
#[macro_export]
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        write!(std::io::stdout().lock(), $($t)*)?
    }};
}

#[macro_export]
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        writeln!(std::io::stdout().lock(), $($t)*)?
    }};
}

/// A problem with the invocation rather than with the mathematics.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn init_threads() -> Result<(), UsageError> {
    let Ok(v) = std::env::var("SNAKEINEQ_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        UsageError(format!(
            "SNAKEINEQ_THREADS: `{v}` is not a positive integer"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| UsageError(format!("cannot start thread pool: {e}")))
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    use commands as c;
    match cli.command {
        Command::Snake(o) => c::snake(&o.merged()?),
        Command::Growth(o) => c::growth(&o.merged()?),
        Command::Scan {
            what: ScanCmd::Tau(o),
        } => c::scan_tau(&o.merged()?),
        Command::Verify { what } => match what {
            VerifyCmd::TheoremMain(o) => c::theorem_main(&o.merged()?),
            VerifyCmd::TauMax(o) => c::tau_max(&o.merged()?),
            VerifyCmd::Fg(o) => c::fg(&o.merged()?),
            VerifyCmd::Tau2(o) => c::tau2(&o.merged()?),
            VerifyCmd::PropDd(o) => c::prop_dd(&o.merged()?),
            VerifyCmd::Interlace(o) => c::interlace(&o.merged()?),
            VerifyCmd::Psi(o) => c::psi(&o.merged()?),
        },
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use snakeineq::Error as E;
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<E>() {
        Some(E::ConstructionFailed(_) | E::NotASnake(_) | E::BoundaryDegenerate) => 1,
        _ => 2,
    }
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.downcast_ref::<std::io::Error>()
        .is_some_and(|e| e.kind() == std::io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
