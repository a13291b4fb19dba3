//! Enumerates the roots and (-4)-vectors of K^perp = E8 and prints the root
//! levels of the maximal class.

use dp1_lattice::counting::root_level_table;
use dp1_lattice::lattice::{enumerate_vectors, Sublattice};
use dp1_lattice::model::Catalog;
use dp1_lattice::real_forms::ClassId;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e8 = Sublattice::k_perp();
    println!("rank {}, determinant {}", e8.rank(), e8.determinant());
    let roots = enumerate_vectors(&e8, -2)?;
    let norm4 = enumerate_vectors(&e8, -4)?;
    println!("roots: {}", roots.len());
    println!("(-4)-vectors: {}", norm4.len());
    println!("first roots: {:?}", &roots[..4]);

    let catalog = Catalog::standard()?;
    println!("\nlevel  type                  number  qhat");
    for row in root_level_table(catalog.get(ClassId::MConnected))? {
        println!("{:<6} {:<21} {:<7} {}", row.level, row.pattern, row.count, row.qhat);
    }
    Ok(())
}
