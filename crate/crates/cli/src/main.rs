use std::process::ExitCode;

use clap::Parser;

use xlab_cli::{run, Cli, EXIT_PARSE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = run(&cli);
    if let Some(text) = out.stdout {
        println!("{text}");
    }
    if let Some(text) = out.stderr {
        eprintln!("{text}");
    }
    ExitCode::from(out.code)
}
