mod args;
mod commands;
mod figures;
mod state;

use std::process::ExitCode;

use chronomap::{Error, ErrorCategory};
use clap::Parser;

use args::{Cli, Command};

fn exit_code(e: &Error) -> u8 {
    match e.category() {
        ErrorCategory::Config => 2,
        ErrorCategory::Data => 3,
        ErrorCategory::Compute => 4,
        ErrorCategory::Io => 5,
    }
}

fn run(cli: Cli) -> chronomap::Result<()> {
    match (cli.command, cli.figure) {
        (Some(cmd), _) => match cmd {
            Command::Simulate(a) => commands::simulate(&a),
            Command::Frog(a) => commands::frog(&a),
            Command::Wigner(a) => commands::wigner(&a),
            Command::Crosscut(a) => commands::crosscut(&a),
            Command::Areas(a) => commands::areas(&a),
            Command::Sweep(a) => commands::sweep(&a),
            Command::Correspond(a) => commands::correspond(&a),
            Command::Ingest(a) => commands::ingest(&a),
            Command::Compare(a) => commands::compare(&a),
        },
        (None, Some(figure)) => {
            let root = figures::out_dir(cli.out_dir.as_deref());
            let written = figures::run(figure, &root, cli.dry_run)?;
            if cli.dry_run {
                println!(
                    "dry run: figure bundle under {}; all preconditions hold",
                    root.display()
                );
            }
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        (None, None) => Err(Error::Config(
            "nothing to do: give a subcommand or --figure (see --help)".into(),
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // a closed downstream pipe (e.g. `| head`) is not a failure
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
