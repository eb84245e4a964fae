//! Run the verification registry for one `m` and print the JSON report.
//!
//! ```text
//! cargo run --example verify_report -- 3 lemma41,center-dim
//! ```

use odd_terwilliger::report::{parse_checks, run, RunConfig};

fn main() -> odd_terwilliger::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(2);
    let checks = parse_checks(&args.next().unwrap_or_else(|| "all".into()))?;
    let outcome = run(&RunConfig::new(m).with_checks(checks))?;
    println!("{}", outcome.to_json());
    for r in &outcome.reports {
        eprintln!(
            "{:<20} {:?} ({} ms)",
            r.check.as_str(),
            r.status,
            r.elapsed_ms
        );
    }
    std::process::exit(outcome.exit_code());
}
