//! Second-layer classes `-2K - v`, their signed sums, and the level tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{degree, PicClass};
use crate::model::{Catalog, RealModel};
use crate::pin::Qhat;
use crate::real_forms::{ClassId, DeformationClass};

/// A class `alpha = -2K - v` with `v` in `Λ`, `v.v = -stratum`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BClass {
    pub class_id: ClassId,
    pub alpha: PicClass,
    pub v: PicClass,
    pub stratum: u8,
    pub qhat: Qhat,
}

impl BClass {
    pub fn new(model: &RealModel, v: PicClass) -> Result<Self> {
        let stratum = match v.square() {
            0 if v.is_zero() => 0,
            -2 => 2,
            -4 => 4,
            s => return Err(Error::InvalidCode(format!("v = {v} has square {s}, not 0, -2 or -4"))),
        };
        let qhat = model.qhat(&v)?;
        Ok(BClass {
            class_id: model.id(),
            alpha: PicClass::K * -2 - v,
            v,
            stratum,
            qhat,
        })
    }
}

/// `k = 0, 1, 2` selects `B^0`, `B^2`, `B^4`.
pub fn b_classes(model: &RealModel, k: u8) -> Result<Vec<BClass>> {
    let vs = match k {
        0 => vec![PicClass::ZERO],
        1 => model.roots()?,
        2 => model.norm4()?,
        _ => return Err(Error::InvalidCode(format!("stratum index {k} is not 0, 1 or 2"))),
    };
    vs.into_iter().map(|v| BClass::new(model, v)).collect()
}

/// `sum i^q` over `B^{2k}`.
pub fn signed_sum(model: &RealModel, k: u8) -> Result<i64> {
    b_classes(model, k)?.iter().map(|b| b.qhat.sign()).sum()
}

pub fn c2_total(model: &RealModel) -> Result<i64> {
    let c = &model.class;
    Ok(signed_sum(model, 1)? * (c.rank_dual() as i64 - c.rank_r as i64))
}

/// Cited input `2(r-3)(r-4) + 6`.
pub fn c0_total(r: usize) -> i64 {
    let r = r as i64;
    2 * (r - 3) * (r - 4) + 6
}

pub fn c2_closed(r: usize) -> i64 {
    let r = r as i64;
    4 * r * (4 - r)
}

pub fn c4_closed(r: usize) -> i64 {
    let r = r as i64;
    2 * r * (r - 1)
}

/// `c0 + c2 + c4` for one class; 30 for every class.
pub fn full_count(model: &RealModel) -> Result<i64> {
    Ok(c0_total(model.rank()) + c2_total(model)? + signed_sum(model, 2)?)
}

fn c2_plus_double_c4(model: &RealModel) -> Result<i64> {
    Ok(c2_total(model)? + 2 * signed_sum(model, 2)?)
}

/// `(c2 + 2 c4)` summed over a Bertini pair; 96 for every pair.
pub fn paired_count(model: &RealModel, dual: &RealModel) -> Result<i64> {
    Ok(c2_plus_double_c4(model)? + c2_plus_double_c4(dual)?)
}

/// `(2r + 2r', 2r + (chi - 1))`, expected `(16, 8)`.
pub fn lines_identities(c: &DeformationClass) -> (i64, i64) {
    let r = c.rank_r as i64;
    (2 * r + 2 * c.rank_dual() as i64, 2 * r + c.euler_char - 1)
}

/// One row of a level table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRow {
    pub level: String,
    pub pattern: String,
    pub count: usize,
    pub qhat: u8,
}

/// Pattern of a class up to permuting real exceptional indices, such as
/// `3h-2l-l-l-l-l-l-l`. Imaginary-pair coefficients are written separately.
pub fn type_label(x: &PicClass, imaginary_from: usize) -> String {
    let c = x.0;
    let mut real: Vec<i64> = c[1..imaginary_from].iter().copied().filter(|&a| a != 0).collect();
    real.sort_by_key(|&a| (-a.signum(), -a.abs()));
    let mut s = match c[0] {
        0 => String::new(),
        1 => "h".to_string(),
        d => format!("{d}h"),
    };
    let term = |a: i64, name: &str| -> String {
        let sign = if a < 0 { "-" } else { "+" };
        if a.abs() == 1 {
            format!("{sign}{name}")
        } else {
            format!("{sign}{}{name}", a.abs())
        }
    };
    for a in real {
        s.push_str(&term(a, "l"));
    }
    for (i, &a) in c.iter().enumerate().skip(imaginary_from) {
        if a != 0 {
            s.push_str(&term(a, &format!("l{i}")));
        }
    }
    s.trim_start_matches('+').to_string()
}

fn sorted_real(x: &PicClass, upto: usize) -> Vec<i64> {
    let mut v: Vec<i64> = x.0[1..upto].iter().map(|a| -a).collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// Level label, type label and the values seen, per group.
type Groups<K> = BTreeMap<K, (String, String, Vec<Qhat>)>;

fn rows_from_groups<K: Ord>(groups: Groups<K>) -> Result<Vec<LevelRow>> {
    groups
        .into_values()
        .map(|(level, pattern, qs)| {
            let q = qs[0];
            if qs.iter().any(|&x| x != q) {
                return Err(Error::InvalidCode(format!(
                    "quadratic value not constant on row {level} {pattern}"
                )));
            }
            Ok(LevelRow {
                level,
                pattern,
                count: qs.len(),
                qhat: q.value(),
            })
        })
        .collect()
}

/// Roots grouped by `|h|` coefficient, for the maximal class.
pub fn root_level_table(model: &RealModel) -> Result<Vec<LevelRow>> {
    let mut groups: Groups<i64> = BTreeMap::new();
    for e in model.roots()? {
        let rep = if e.h_coeff() < 0 || (e.h_coeff() == 0 && e.0[1..].iter().find(|&&a| a != 0) == Some(&-1)) {
            -e
        } else {
            e
        };
        let level = e.h_coeff().abs();
        let entry = groups
            .entry(level)
            .or_insert_with(|| (level.to_string(), type_label(&rep, 9), Vec::new()));
        entry.2.push(model.qhat(&e)?);
    }
    rows_from_groups(groups)
}

/// Classes of `B^{2k}` grouped by the `h` coefficient of `alpha` and the
/// multiset of exceptional coefficients.
pub fn b_level_table(model: &RealModel, k: u8) -> Result<Vec<LevelRow>> {
    let mut groups: Groups<(i64, Vec<i64>)> = BTreeMap::new();
    for b in b_classes(model, k)? {
        let key = (b.alpha.h_coeff(), sorted_real(&b.alpha, 9));
        let entry = groups
            .entry(key)
            .or_insert_with(|| (b.alpha.h_coeff().to_string(), type_label(&b.alpha, 9), Vec::new()));
        entry.2.push(b.qhat);
    }
    rows_from_groups(groups)
}

/// `(a, b)`: parity of the `h` coefficient and number of odd coefficients on
/// `l1..l6`.
pub fn bi_level(x: &PicClass) -> (i64, i64) {
    let a = x.h_coeff().rem_euclid(2);
    let b = x.0[1..7].iter().filter(|c| c.rem_euclid(2) == 1).count() as i64;
    (a, b)
}

/// `B^4` classes of the `E7` model grouped by type, with the bi-level as
/// the level column. Also checks that the value equals `a + b mod 4`.
pub fn bi_level_table(model: &RealModel) -> Result<Vec<LevelRow>> {
    let mut groups: Groups<(i64, Vec<i64>, i64)> = BTreeMap::new();
    for b in b_classes(model, 2)? {
        let (a, bb) = bi_level(&b.alpha);
        if b.qhat != Qhat::new(a + bb) {
            return Err(Error::InvalidCode(format!(
                "{}: value {} differs from a+b = {}",
                b.alpha,
                b.qhat,
                a + bb
            )));
        }
        let key = (b.alpha.h_coeff(), sorted_real(&b.alpha, 7), -b.alpha.0[7]);
        let entry = groups
            .entry(key)
            .or_insert_with(|| (format!("{a},{bb}"), type_label(&b.alpha, 7), Vec::new()));
        entry.2.push(b.qhat);
    }
    rows_from_groups(groups)
}

/// Totals of a level table.
pub fn rows_total(rows: &[LevelRow]) -> (usize, i64) {
    let count = rows.iter().map(|r| r.count).sum();
    let signed = rows
        .iter()
        .map(|r| r.count as i64 * if r.qhat == 0 { 1 } else { -1 })
        .sum();
    (count, signed)
}

/// A group of `(-4)`-vectors congruent modulo twice the dual lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueGroup {
    pub size: usize,
    pub qhat: u8,
}

/// Splits the `(-4)`-vectors by `v.b_i mod 2` over the basis. In `D_n`
/// written in `<-1>^n` coordinates the groups are the `±2 x_i` and one group
/// per support of the `(±1, ±1, ±1, ±1, 0, ...)` vectors.
pub fn norm4_residue_groups(model: &RealModel) -> Result<Vec<ResidueGroup>> {
    let basis = model.lattice().basis().to_vec();
    let mut groups: BTreeMap<Vec<i64>, Vec<Qhat>> = BTreeMap::new();
    for v in model.norm4()? {
        let key = basis
            .iter()
            .map(|b| crate::lattice::intersect(&v, b).rem_euclid(2))
            .collect();
        groups.entry(key).or_default().push(model.qhat(&v)?);
    }
    groups
        .into_values()
        .map(|qs| {
            if qs.iter().any(|&q| q != qs[0]) {
                return Err(Error::InvalidCode(
                    "quadratic value not constant on a residue group".into(),
                ));
            }
            Ok(ResidueGroup {
                size: qs.len(),
                qhat: qs[0].value(),
            })
        })
        .collect()
}

/// Check that every `B` class has degree 2 and an even value.
pub fn b_class_invariants(model: &RealModel) -> Result<()> {
    for k in 0..=2 {
        for b in b_classes(model, k)? {
            if degree(&b.alpha) != 2 {
                return Err(Error::InvalidCode(format!(
                    "{} has degree {}",
                    b.alpha,
                    degree(&b.alpha)
                )));
            }
            if !b.qhat.is_even() {
                return Err(Error::OddQhat(b.qhat.value()));
            }
        }
    }
    Ok(())
}

/// The summary grid: six columns of Bertini pairs, six rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryGrid {
    pub columns: Vec<String>,
    pub rows: Vec<GridRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridRow {
    pub label: String,
    pub cited: bool,
    pub values: Vec<i64>,
    /// The closed form in `r` evaluated on each column's rank.
    pub closed_form: Vec<i64>,
}

/// Connected member (or self-dual class) of each grid column.
pub const GRID_COLUMNS: [(ClassId, &str); 6] = [
    (ClassId::MConnected, "M"),
    (ClassId::M1Connected, "M-1"),
    (ClassId::M2Connected, "M-2"),
    (ClassId::M3Connected, "M-3"),
    (ClassId::M4, "M-4"),
    (ClassId::M2IA, "(M-2)_I"),
];

pub fn summary_grid(catalog: &Catalog) -> Result<SummaryGrid> {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (id, _) in GRID_COLUMNS {
        plus.push(catalog.get(id).clone());
        minus.push(catalog.dual_of(id)?);
    }
    let mut rows = Vec::new();
    for (label, side) in [("C2+", &plus), ("C2-", &minus)] {
        rows.push(GridRow {
            label: label.into(),
            cited: true,
            values: side.iter().map(c2_total).collect::<Result<_>>()?,
            closed_form: side.iter().map(|m| c2_closed(m.rank())).collect(),
        });
    }
    for (label, side) in [("C4+", &plus), ("C4-", &minus)] {
        rows.push(GridRow {
            label: label.into(),
            cited: false,
            values: side.iter().map(|m| signed_sum(m, 2)).collect::<Result<_>>()?,
            closed_form: side.iter().map(|m| c4_closed(m.rank())).collect(),
        });
    }
    for (label, side) in [("C0+", &plus), ("C0-", &minus)] {
        let v: Vec<i64> = side.iter().map(|m| c0_total(m.rank())).collect();
        rows.push(GridRow {
            label: label.into(),
            cited: true,
            values: v.clone(),
            closed_form: v,
        });
    }
    Ok(SummaryGrid {
        columns: GRID_COLUMNS.iter().map(|(_, n)| n.to_string()).collect(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> Catalog {
        Catalog::standard().unwrap()
    }

    #[test]
    fn e8_counts_and_sums() {
        let c = cat();
        let m = c.get(ClassId::MConnected);
        assert_eq!(b_classes(m, 1).unwrap().len(), 240);
        assert_eq!(signed_sum(m, 1).unwrap(), 16);
        assert_eq!(signed_sum(m, 2).unwrap(), 112);
        assert_eq!(c2_total(m).unwrap(), -128);
        assert_eq!(full_count(m).unwrap(), 30);
        assert_eq!(paired_count(m, c.get(ClassId::MSplit)).unwrap(), 96);
    }

    #[test]
    fn e7_has_756_real_norm4() {
        let c = cat();
        let m = c.get(ClassId::M1Connected);
        assert_eq!(b_classes(m, 2).unwrap().len(), 756);
        assert_eq!(signed_sum(m, 2).unwrap(), 84);
    }

    #[test]
    fn c0_values() {
        assert_eq!(c0_total(8), 46);
        assert_eq!(c0_total(7), 30);
        assert_eq!(c0_total(4), 6);
    }

    #[test]
    fn type_labels() {
        assert_eq!(
            type_label(&PicClass::curve(3, &[1, 1, 2, 3, 4, 5, 6, 7, 8]), 9),
            "3h-2l-l-l-l-l-l-l-l"
        );
        assert_eq!(type_label(&(PicClass::ell(1) - PicClass::ell(2)), 9), "l-l");
        assert_eq!(type_label(&PicClass::curve(2, &[1, 2, 7, 8]), 7), "2h-l-l-l7-l8");
    }

    #[test]
    fn empty_lattice_is_empty() {
        let c = cat();
        let m = c.get(ClassId::MSplit);
        assert!(b_classes(m, 1).unwrap().is_empty());
        assert!(b_classes(m, 2).unwrap().is_empty());
        assert_eq!(b_classes(m, 0).unwrap().len(), 1);
        assert_eq!(full_count(m).unwrap(), 30);
    }
}
