use proptest::prelude::*;

use dp1_lattice::lattice::{enumerate_vectors, intersect, reflect, PicClass, Sublattice};
use dp1_lattice::pin::{
    cremona_path, normalize_code, qhat_code, qhat_vanishing_basis, qhat_vanishing_recursive, Code, VanishingBasis,
};
use dp1_lattice::report::{Provenance, Report, VerificationRecord};

fn code_strategy() -> impl Strategy<Value = Code> {
    (0usize..=4)
        .prop_flat_map(|r| (Just(r), prop::collection::vec(prop::bool::ANY, 9 - 2 * r)))
        .prop_filter_map("entries must sum to 1 mod 4", |(r, bits)| {
            let entries: Vec<i64> = bits.iter().map(|&b| if b { 1 } else { -1 }).collect();
            Code::new(r, &entries).ok()
        })
}

fn real_class(r: usize, raw: [i64; 9]) -> PicClass {
    let mut c = raw;
    for p in 0..r {
        c[8 - 2 * p] = c[7 - 2 * p];
    }
    PicClass::new(c)
}

fn e8_basis() -> Vec<PicClass> {
    Sublattice::k_perp().basis().to_vec()
}

proptest! {
    #[test]
    fn code_values_obey_quadratic_law(code in code_strategy(), a in prop::array::uniform9(-5i64..=5), b in prop::array::uniform9(-5i64..=5)) {
        let (x, y) = (real_class(code.r(), a), real_class(code.r(), b));
        let q = |v: &PicClass| qhat_code(&code, v).unwrap().value() as i64;
        prop_assert_eq!((q(&(x + y)) - q(&x) - q(&y) - 2 * intersect(&x, &y)).rem_euclid(4), 0);
        prop_assert_eq!((q(&x) - x.square()).rem_euclid(2), 0);
    }

    #[test]
    fn normalization_is_reached_by_its_moves(code in code_strategy()) {
        let (normal, moves) = normalize_code(&code);
        let mut cur = code.clone();
        for m in &moves {
            cur = m.apply(&cur).unwrap();
        }
        prop_assert_eq!(&cur, &normal);
        prop_assert_eq!(normalize_code(&normal).0, normal.clone());
        prop_assert!(cremona_path(&normal, &code).is_some());
    }

    #[test]
    fn vanishing_evaluators_agree(coords in prop::collection::vec(-4i64..=4, 8)) {
        let vb = VanishingBasis::new(e8_basis()).unwrap();
        let x = vb.lattice().combine(&coords);
        prop_assert_eq!(qhat_vanishing_basis(&vb, &x).unwrap(), qhat_vanishing_recursive(&vb, &x).unwrap());
    }

    #[test]
    fn reflection_is_an_involutive_isometry(a in prop::array::uniform9(-6i64..=6), b in prop::array::uniform9(-6i64..=6), pick in 0usize..8) {
        let e = e8_basis()[pick];
        let (x, y) = (PicClass::new(a), PicClass::new(b));
        let rx = reflect(&x, &e).unwrap();
        prop_assert_eq!(reflect(&rx, &e).unwrap(), x);
        prop_assert_eq!(intersect(&rx, &reflect(&y, &e).unwrap()), intersect(&x, &y));
    }

    #[test]
    fn small_lattices_are_closed_under_negation(picks in prop::collection::vec(0usize..8, 1..=3)) {
        let mut basis: Vec<PicClass> = Vec::new();
        for p in picks {
            let b = e8_basis()[p];
            if !basis.contains(&b) {
                basis.push(b);
            }
        }
        let lattice = Sublattice::new(basis).unwrap();
        let roots = enumerate_vectors(&lattice, -2).unwrap();
        for r in &roots {
            prop_assert!(roots.contains(&-*r));
            prop_assert!(lattice.contains(r));
        }
    }

    #[test]
    fn records_round_trip(check in "[a-z_]{1,12}", expected in -500i64..500, actual in proptest::option::of(-500i64..500), cited in prop::bool::ANY) {
        let prov = if cited { Provenance::CitedFormula } else { Provenance::Enumerated };
        let rec = match actual {
            Some(a) => VerificationRecord::new(check.clone(), "anchor", expected, prov, a),
            None => VerificationRecord::failed(check.clone(), "anchor", expected, prov, &dp1_lattice::error::Error::NodeLimit(7)),
        };
        prop_assert_eq!(rec.pass, actual == Some(expected));
        let report = Report::new("all".into(), vec![rec]);
        let text = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, report);
    }
}
