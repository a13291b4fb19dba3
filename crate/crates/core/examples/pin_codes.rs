//! Quadratic values from blowup-model codes, Cremona moves between codes,
//! and the agreement of a code with a vanishing root basis.

use dp1_lattice::lattice::PicClass;
use dp1_lattice::model::{Catalog, RealModel};
use dp1_lattice::pin::{normalize_code, qhat_code, Code};
use dp1_lattice::real_forms::ClassId;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (r, entries) in [
        (0, vec![1, 1, 1, 1, 1, -1, -1, -1, -1]),
        (1, vec![1, 1, 1, 1, -1, -1, -1]),
    ] {
        let seed = Code::new(r, &entries)?;
        let (normal, moves) = normalize_code(&seed);
        println!("seed {seed} -> {normal}");
        for m in &moves {
            println!("  via {m}");
        }
    }

    let code = Code::canonical(0);
    let x = PicClass::curve(3, &[1, 2, 3, 4, 5, 6, 7, 8]);
    println!("\nq({x}) = {} under {code}", qhat_code(&code, &x)?);

    let catalog = Catalog::standard()?;
    let e8 = catalog.get(ClassId::MConnected);
    let basis = e8.equivalent_vanishing_basis()?.expect("E8 has a vanishing basis");
    println!("\nvanishing basis for the maximal code:");
    for b in &basis {
        println!("  {b}");
    }
    let alt = RealModel::with_vanishing_basis(&e8.class, basis)?;
    let agree = e8
        .norm4()?
        .iter()
        .filter(|v| e8.qhat(v).ok() == alt.qhat(v).ok())
        .count();
    println!("agreement on (-4)-vectors: {agree}/{}", e8.norm4()?.len());
    Ok(())
}
