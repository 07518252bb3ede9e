use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use isolat_cli::{run, Cli};

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = cli.resolve().and_then(|cfg| run(&cfg, &mut out));
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.code == 0 => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("isolat: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
