mod args;
mod commands;
mod output;
mod suites;

use clap::Parser;

use args::{Cli, Command};

fn configure_threads() {
    if let Some(n) = std::env::var("DESCFF_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    configure_threads();
    let res = match &cli.command {
        Command::Eval(a) => commands::eval(a),
        Command::Verify(a) => commands::verify(a),
        Command::Reflect(a) => commands::reflect(a),
        Command::Constants(a) => commands::constants(a),
    };
    match res {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("descff: {e}");
            std::process::exit(args::exit_code(&e));
        }
    }
}
