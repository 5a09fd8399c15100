//! Small seeded run of every property suite.

use orbicalc::harness::{run_suite, Config, Corpus};

fn main() -> orbicalc::Result<()> {
    let config = Config { max_order: 8, gsets: 5, seed: 7, ..Config::default() };
    let report = run_suite(&Corpus::build(config)?)?;
    print!("{}", report.summary());
    Ok(())
}
