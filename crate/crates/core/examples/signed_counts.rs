//! Signed sums over B^2 and B^4 for every class, the per-class total and the
//! Bertini pair totals.

use dp1_lattice::counting::{c0_total, c2_total, full_count, paired_count, signed_sum};
use dp1_lattice::model::Catalog;
use dp1_lattice::real_forms::bertini_pairs;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = Catalog::standard()?;
    println!(
        "{:<13} {:>2} {:>5} {:>5} {:>5} {:>5} {:>5}",
        "class", "r", "roots", "c0", "c2", "c4", "total"
    );
    for m in catalog.models() {
        println!(
            "{:<13} {:>2} {:>5} {:>5} {:>5} {:>5} {:>5}",
            m.id().as_str(),
            m.rank(),
            signed_sum(m, 1)?,
            c0_total(m.rank()),
            c2_total(m)?,
            signed_sum(m, 2)?,
            full_count(m)?
        );
    }
    println!();
    for (a, _) in bertini_pairs() {
        let dual = catalog.dual_of(a)?;
        println!("pair {a}/{}: {}", dual.id(), paired_count(catalog.get(a), &dual)?);
    }
    Ok(())
}
