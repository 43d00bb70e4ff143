//! One PASS/FAIL line per acceptance criterion, at full scale.

use cmlp_cli::suite::{run_all, Scale};

fn main() {
    let outcomes = run_all(Scale::Full);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let passed = outcomes.iter().filter(|o| o.passed && o.within_limit()).count();
    println!("{passed}/{} criteria passed", outcomes.len());
}
