//! Runs the quick invariant suites from library code.

use slow_walks::selftest::{run, Scale};

fn main() {
    let results = run(Scale::quick());
    for r in &results {
        let mark = if r.passed() { "PASS" } else { "FAIL" };
        println!("{mark} {} ({:.2}s)", r.label, r.elapsed.as_secs_f64());
    }
    if results.iter().any(|r| !r.passed()) {
        std::process::exit(3);
    }
}
