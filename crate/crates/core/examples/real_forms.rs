//! The eleven deformation classes, their stored lattices and the
//! orthogonal complements that realise the Bertini duals.

use dp1_lattice::ade::root_system_type;
use dp1_lattice::real_forms::{bertini_pairs, deformation_classes, lambda_basis};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:<13} {:<12} {:<7} {:<2} {:<7} complement",
        "class", "topology", "lambda", "r", "roots"
    );
    for c in deformation_classes() {
        let emb = lambda_basis(&c)?;
        let complement = root_system_type(&emb.complement()?)?;
        println!(
            "{:<13} {:<12} {:<7} {:<2} {:<7} {}",
            c.id.as_str(),
            c.topology,
            c.lambda_type,
            c.rank_r,
            emb.roots()?.len(),
            complement
        );
    }
    println!("\nBertini pairs:");
    for (a, b) in bertini_pairs() {
        println!("  {a} <-> {b}");
    }
    Ok(())
}
