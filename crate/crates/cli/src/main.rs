use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = pfspec::Cli::parse();
    match pfspec::run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {:#}", anyhow::Error::new(e));
            ExitCode::from(2)
        }
    }
}
