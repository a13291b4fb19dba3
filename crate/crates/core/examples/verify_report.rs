//! Runs the verification suite and writes the JSON report to the
//! system temporary directory, printing any failing record.

use dp1_lattice::report::{verify, ClassSelector, Format};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = verify(ClassSelector::All, None, 0);
    let path = std::env::temp_dir().join("dp1-verify.json");
    std::fs::write(&path, report.render(Format::Json)?)?;
    println!(
        "{} passed, {} failed; report in {}",
        report.passed,
        report.failed,
        path.display()
    );
    for r in report.failures() {
        println!(
            "FAIL {} ({}): expected {}, got {:?}",
            r.check, r.anchor, r.expected, r.actual
        );
    }
    if report.failed > 0 {
        std::process::exit(1);
    }
    Ok(())
}
