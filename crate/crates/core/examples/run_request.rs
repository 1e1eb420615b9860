//! Driving the command layer from code: build a request, run it and print
//! the structured report.
//!
//! `cargo run --example run_request`

use quotvi::cli::{run, Command, RunRequest, Settings};
use quotvi::localization::QuotProblem;

fn main() -> quotvi::Result<()> {
    let mut req = RunRequest::new(Command::Localize).with_problem(QuotProblem::new(2, 3, 1, 2)?, "a1^2 a2^2");
    req.breakdown = true;
    print!("{}", run(&req)?.to_json());

    // The same thing from flat config text, as the binary reads it.
    let settings = Settings::from_config_text("command = bees\nr = 2\nN = 3\ng = 1\nd = 2\ns = 1\ninsertion = a1^5\n")?;
    print!("{}", run(&settings.into_request()?)?.to_human());
    Ok(())
}
