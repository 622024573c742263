use std::fs;
use std::process::ExitCode;

use clap::Parser;

use davlab_runner::{bundle_json, run, RunConfig, RunError};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&config).and_then(|bundle| {
        let text = bundle_json(&bundle)?;
        match &config.out {
            Some(path) => fs::write(path, &text).map_err(|source| RunError::Io {
                path: path.clone(),
                source,
            })?,
            None => print!("{text}"),
        }
        for c in bundle.checks.iter().filter(|c| c.failed > 0) {
            eprintln!("FAILED {}: {} of {}", c.name, c.failed, c.failed + c.passed);
        }
        Ok(bundle.exit_code())
    }) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
