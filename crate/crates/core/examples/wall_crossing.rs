//! Splittings of B classes along a vanishing root and the difference table,
//! shown for the D6 class and summarised for every class.

use dp1_lattice::counting::b_classes;
use dp1_lattice::model::Catalog;
use dp1_lattice::real_forms::ClassId;
use dp1_lattice::report::wallcross_summary;
use dp1_lattice::wallcross::{delta_table, splittings, vanishing_roots};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = Catalog::standard()?;
    let d6 = catalog.get(ClassId::M2Connected);
    let roots = vanishing_roots(d6)?;
    let e = &roots[0];
    println!("D6: {} vanishing roots, E = {}", roots.len(), e.e);
    let mut shown = 0;
    for k in 0..=2 {
        for b in b_classes(d6, k)? {
            for s in splittings(d6, &b, e)? {
                if shown < 8 {
                    println!(
                        "  B^{}: {} = ({}) + {}E   D.D = {}, D.E = {}",
                        b.stratum, b.alpha, s.d, s.r, s.d_square, s.d_dot_e
                    );
                }
                shown += 1;
            }
        }
    }
    println!("  {shown} splittings in total");
    let d = delta_table(d6, e)?;
    println!(
        "differences {:?}, weighted balance {}",
        d.as_array(),
        d.weighted_balance()
    );

    println!("\nclass          roots  splittings ok");
    for m in catalog.models() {
        let w = wallcross_summary(m)?;
        println!(
            "{:<14} {:>5}  {}/{}",
            m.id().as_str(),
            w.roots,
            w.splitting_matches,
            w.splitting_checks
        );
    }
    Ok(())
}
