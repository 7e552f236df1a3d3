//! Runs one verification suite with a reduced configuration and prints its JSON report.
use cuntz::io::suite::{run_timed, Config};

fn main() -> cuntz::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "embeddings".into());
    let cfg = Config { samples: 100, ..Config::default() };
    let run = run_timed(&name, &cfg)?;
    eprint!("{}", run.report);
    println!("{}", run.to_json());
    Ok(())
}
