use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use lambda_osc::cli::Cli;
use lambda_osc::Rendered;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let rendered = match lambda_osc::run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = write(&cli, &rendered) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if let Rendered::Checks(c) = &rendered {
        let failed = c.iter().filter(|c| !c.pass).count();
        if !cli.global.quiet {
            eprintln!("{} checks, {} failed", c.len(), failed);
        }
    }
    if rendered.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn write(cli: &Cli, r: &Rendered) -> io::Result<()> {
    match &cli.global.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            r.write(cli.global.format, &mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            r.write(cli.global.format, &mut w)?;
            w.flush()
        }
    }
}
