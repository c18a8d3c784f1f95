use std::io;
use std::process::ExitCode;

use clap::Parser;
use mnesor::app::{self, Cli, Io};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut out = io::stdout().lock();
    let mut err = io::stderr().lock();
    let code = app::run(
        cli,
        &mut Io {
            input: &mut input,
            out: &mut out,
            err: &mut err,
        },
    );
    ExitCode::from(code as u8)
}
