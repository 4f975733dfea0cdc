//! Builds every catalog model, prints the first few basis polynomials and
//! checks the ladder axioms exactly.

use umbra::model::catalog;
use umbra::verify_model;

pub fn run_example() -> umbra::Result<()> {
    for m in catalog(8, &["2", "5/2"])? {
        let report = verify_model(&m);
        println!(
            "{}: {}",
            m.label(),
            if report.passed() {
                "ladder axioms hold"
            } else {
                "FAILED"
            }
        );
        for n in 0..4 {
            println!("  p_{n} = {}", m.p(n));
        }
        for r in report.all() {
            if !r.passed() {
                println!("  {r}");
            }
        }
        assert!(report.passed());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
