//! Individual published values, one test each.

use dp1_lattice::counting::{b_classes, c2_total, full_count, norm4_residue_groups, paired_count, signed_sum};
use dp1_lattice::model::Catalog;
use dp1_lattice::real_forms::{bertini_pairs, deformation_classes, ClassId};

fn cat() -> Catalog {
    Catalog::standard().unwrap()
}

#[test]
fn eleven_classes_in_seven_pairs() {
    assert_eq!(deformation_classes().len(), 11);
    assert_eq!(bertini_pairs().len(), 7);
}

#[test]
fn maximal_class_has_2160_norm4_vectors() {
    assert_eq!(cat().get(ClassId::MConnected).norm4().unwrap().len(), 2160);
}

#[test]
fn e7_class_has_756_real_b4_classes() {
    assert_eq!(b_classes(cat().get(ClassId::M1Connected), 2).unwrap().len(), 756);
}

#[test]
fn maximal_b4_sum_is_112() {
    assert_eq!(signed_sum(cat().get(ClassId::MConnected), 2).unwrap(), 112);
}

#[test]
fn e7_b4_sum_is_84() {
    assert_eq!(signed_sum(cat().get(ClassId::M1Connected), 2).unwrap(), 84);
}

#[test]
fn d6_b4_sum_is_60() {
    assert_eq!(signed_sum(cat().get(ClassId::M2Connected), 2).unwrap(), 60);
}

#[test]
fn d6_norm4_groups_decompose_as_12_plus_16_times_3() {
    let groups = norm4_residue_groups(cat().get(ClassId::M2Connected)).unwrap();
    let twelve: Vec<_> = groups.iter().filter(|g| g.size == 12).collect();
    assert_eq!(twelve.len(), 1);
    assert_eq!(twelve[0].qhat, 0);
    let sixteen: Vec<_> = groups.iter().filter(|g| g.size == 16).collect();
    assert_eq!(sixteen.len(), 15);
    let zero = sixteen.iter().filter(|g| g.qhat == 0).count();
    assert_eq!((zero, sixteen.len() - zero), (9, 6));
}

#[test]
fn d4_plus_a1_b4_sum_is_40() {
    assert_eq!(signed_sum(cat().get(ClassId::M3Connected), 2).unwrap(), 40);
}

#[test]
fn d4_classes_b4_sum_is_24() {
    let c = cat();
    assert_eq!(signed_sum(c.get(ClassId::M2IA), 2).unwrap(), 24);
    assert_eq!(signed_sum(c.get(ClassId::M2IB), 2).unwrap(), 24);
}

#[test]
fn maximal_b2_count_is_minus_128() {
    assert_eq!(c2_total(cat().get(ClassId::MConnected)).unwrap(), -128);
}

#[test]
fn every_class_totals_30() {
    let c = cat();
    for m in c.models() {
        assert_eq!(full_count(m).unwrap(), 30, "{}", m.id());
    }
}

#[test]
fn every_pair_totals_96() {
    let c = cat();
    for (a, _) in bertini_pairs() {
        let dual = c.dual_of(a).unwrap();
        assert_eq!(paired_count(c.get(a), &dual).unwrap(), 96, "{a}");
    }
}
