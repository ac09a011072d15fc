use clap::Parser;

use hyperchrom::cli::{run, RunConfig};

fn main() {
    let config = RunConfig::parse();
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = run(config, &mut stdout) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
