use std::process::ExitCode;

use clap::Parser;
use cuspdim::{commands, effective_config, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = match effective_config(&cli) {
        Ok(c) => c.threads,
        Err(e) => {
            eprintln!("cuspdim {}: {e}", cli.command.name());
            return e.to_exit();
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
        eprintln!("cuspdim: thread pool: {e}");
        return ExitCode::from(1);
    }
    // the header records the command without the config and output paths
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut shown = Vec::new();
    let mut skip = false;
    for a in &args {
        if skip {
            skip = false;
            continue;
        }
        if a == "--out" || a == "--config" {
            skip = true;
            continue;
        }
        if a.starts_with("--out=") || a.starts_with("--config=") {
            continue;
        }
        shown.push(a.as_str());
    }
    match run(&cli, &shown.join(" ")) {
        Ok((result, out)) => {
            let _ = commands::summarize(&result, std::io::stdout());
            for path in out.written() {
                println!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("cuspdim {}: {e}", cli.command.name());
            e.to_exit()
        }
    }
}
