//! End-to-end acceptance run. Prints one PASS/FAIL line per check, followed by
//! the details of failing cells and of recorded exceptions.

use std::process::ExitCode;

use hamlab::verify::{self, Check, Scale};

const SEED: u64 = 20_240_501;

fn report(c: &Check) {
    let verdict = if c.pass() { "PASS" } else { "FAIL" };
    println!("[{verdict}] {:>2} {} ({} cells, {} ms)", c.id, c.name, c.cells.len(), c.millis);
    for cell in c.failures() {
        println!("       fail {}: {}", cell.label, cell.detail);
    }
    for cell in c.cells.iter().filter(|x| x.detail.starts_with("exception:")) {
        println!("       {}: {}", cell.label, cell.detail);
    }
}

fn main() -> ExitCode {
    // `cargo test -- --list` and filters are passed through by cargo; honour listing only.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let scale = Scale::FULL;
    let checks = [
        verify::codegree_grid(),
        verify::extremal_nonham(),
        verify::parity_positive(),
        verify::closed_form_degrees(),
        verify::connector_counts(),
        verify::fk_concentration(SEED, scale.trials),
        verify::goodness_bounds(SEED, scale.goodness),
        verify::kpartite_paths(SEED, scale.thinned),
        verify::tight_paths(SEED, scale.paths, scale.covers),
        verify::stability_pipeline(SEED, scale.variants),
        verify::parity_repair(SEED, scale.planted),
        verify::reproducibility(SEED, Scale::QUICK),
    ];
    let mut failed = 0;
    for c in &checks {
        report(c);
        failed += usize::from(!c.pass());
    }
    println!("acceptance: {} passed, {failed} failed", checks.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
