//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;

use faraday_cli::claims::check_paper;

fn main() -> ExitCode {
    let check = check_paper(0);
    for c in &check.claims {
        println!("{}", c.line());
    }
    for line in &check.discrepancy {
        println!("  multiphoton endpoint: {line}");
    }
    let failed = check.claims.iter().filter(|c| !c.pass).count();
    println!("acceptance: {} passed, {failed} failed", check.claims.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
