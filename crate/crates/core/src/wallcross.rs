//! Lattice side of wall-crossing through a real nodal degeneration with
//! vanishing root `E`.

use serde::{Deserialize, Serialize};

use crate::counting::{b_classes, BClass};
use crate::error::{Error, Result};
use crate::lattice::{intersect, reflect, PicClass};
use crate::model::RealModel;
use crate::pin::Qhat;
use crate::real_forms::ClassId;

/// A root of `Λ` with vanishing quadratic value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingRoot {
    pub class_id: ClassId,
    pub e: PicClass,
}

impl VanishingRoot {
    /// Checks all defining conditions against `model`.
    pub fn new(model: &RealModel, e: PicClass) -> Result<Self> {
        if e.square() != -2 {
            return Err(Error::NotARoot(e.to_string()));
        }
        if intersect(&e, &PicClass::K) != 0 {
            return Err(Error::NotInKPerp(e.to_string()));
        }
        if model.qhat(&e)? != Qhat::ZERO {
            return Err(Error::InvalidCode(format!("root {e} has nonzero quadratic value")));
        }
        Ok(VanishingRoot {
            class_id: model.id(),
            e,
        })
    }
}

pub fn vanishing_roots(model: &RealModel) -> Result<Vec<VanishingRoot>> {
    let mut out = Vec::new();
    for e in model.roots()? {
        if model.qhat(&e)? == Qhat::ZERO {
            out.push(VanishingRoot {
                class_id: model.id(),
                e,
            });
        }
    }
    Ok(out)
}

/// A limit `alpha = D + r E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplittingCase {
    pub r: i64,
    pub d: PicClass,
    pub d_square: i64,
    pub d_dot_e: i64,
    pub d_stratum: u8,
}

/// The invariants a lemma table records for one splitting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseShape {
    pub r: i64,
    pub d_square: i64,
    pub d_dot_e: i64,
    pub d_stratum: u8,
}

impl SplittingCase {
    pub fn shape(&self) -> CaseShape {
        CaseShape {
            r: self.r,
            d_square: self.d_square,
            d_dot_e: self.d_dot_e,
            d_stratum: self.d_stratum,
        }
    }
}

/// Multiplicities of `E` searched; the filters cut this down to at most 2.
pub const MAX_MULTIPLICITY: i64 = 4;

fn stratum_of(d: &PicClass) -> Option<u8> {
    let w = PicClass::K * -2 - *d;
    match w.square() {
        0 if w.is_zero() => Some(0),
        -2 => Some(2),
        -4 => Some(4),
        _ => None,
    }
}

/// All splittings `alpha = D + r E` passing the numerical filters
/// `D.(-K-E) >= 0`, `D.E >= 1`, `D.D >= -1`, with `D` again of the form
/// `-2K - w`.
pub fn splittings(model: &RealModel, alpha: &BClass, e: &VanishingRoot) -> Result<Vec<SplittingCase>> {
    if alpha.class_id != model.id() || e.class_id != model.id() {
        return Err(Error::ProvenanceMismatch(
            alpha.class_id.to_string(),
            e.class_id.to_string(),
        ));
    }
    let line = -PicClass::K - e.e;
    let mut out = Vec::new();
    for r in 1..=MAX_MULTIPLICITY {
        let d = alpha.alpha - e.e * r;
        let d_square = d.square();
        let d_dot_e = intersect(&d, &e.e);
        if intersect(&d, &line) < 0 || d_dot_e < 1 || d_square < -1 {
            continue;
        }
        let Some(d_stratum) = stratum_of(&d) else { continue };
        if d_stratum == 4 && d_square < 0 {
            continue;
        }
        out.push(SplittingCase {
            r,
            d,
            d_square,
            d_dot_e,
            d_stratum,
        });
    }
    Ok(out)
}

/// The lemma tables, indexed by the stratum of `alpha` and `v.E` where
/// `alpha = -2K - v`.
pub fn expected_splittings(stratum: u8, v_dot_e: i64) -> Vec<CaseShape> {
    let s = |r, d_square, d_dot_e, d_stratum| CaseShape {
        r,
        d_square,
        d_dot_e,
        d_stratum,
    };
    match (stratum, v_dot_e) {
        (0, _) => vec![s(1, 2, 2, 2)],
        (2, 1) => vec![s(1, 2, 1, 2)],
        (2, 0) => vec![s(1, 0, 2, 4)],
        (2, 2) => vec![s(2, 2, 2, 2)],
        (4, 1) => vec![s(1, 0, 1, 4)],
        (4, 2) => vec![s(2, 0, 2, 4)],
        _ => Vec::new(),
    }
}

/// `sum i^q(e)` over roots `e` of `Λ` orthogonal to `E`.
pub fn orth_root_sum(model: &RealModel, e: &VanishingRoot) -> Result<i64> {
    let mut total = 0;
    for root in model.roots()? {
        if intersect(&root, &e.e) == 0 {
            total += model.qhat(&root)?.sign()?;
        }
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingReport {
    /// `sum i^q(alpha)` over `alpha` in `B^{2k}` with `|alpha.E| = 1`.
    pub sum: i64,
    /// Size of that set.
    pub paired: usize,
    /// Reflection in `E` maps the set to itself without fixed points and
    /// shifts every value by 2.
    pub flips: bool,
    /// Reflection in `E` keeps the value when `|alpha.E|` is 0 or 2.
    pub invariant_elsewhere: bool,
}

pub fn pairing_cancellation(model: &RealModel, e: &VanishingRoot, k: u8) -> Result<PairingReport> {
    let classes = b_classes(model, k)?;
    let mut report = PairingReport {
        sum: 0,
        paired: 0,
        flips: true,
        invariant_elsewhere: true,
    };
    for b in &classes {
        let dot = intersect(&b.alpha, &e.e);
        let image_v = reflect(&b.v, &e.e)?;
        let image_q = model.qhat(&image_v)?;
        match dot.abs() {
            1 => {
                report.sum += b.qhat.sign()?;
                report.paired += 1;
                let image_alpha = PicClass::K * -2 - image_v;
                if image_alpha == b.alpha || intersect(&image_alpha, &e.e).abs() != 1 || image_q != b.qhat + Qhat::TWO {
                    report.flips = false;
                }
            }
            0 | 2 if image_q != b.qhat => report.invariant_elsewhere = false,
            _ => {}
        }
    }
    Ok(report)
}

/// The five wall-crossing differences, plus the root sum they come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaTable {
    pub d41: i64,
    pub d42: i64,
    pub d20: i64,
    pub d21: i64,
    /// Uses the cited Euler-characteristic input.
    pub d22: i64,
    pub orth_root_sum: i64,
}

impl DeltaTable {
    /// `2 (d41 + d42) + (d20 + d21 + d22)`.
    pub fn weighted_balance(&self) -> i64 {
        2 * (self.d41 + self.d42) + (self.d20 + self.d21 + self.d22)
    }

    pub fn as_array(&self) -> [i64; 5] {
        [self.d41, self.d42, self.d20, self.d21, self.d22]
    }
}

pub fn delta_table(model: &RealModel, e: &VanishingRoot) -> Result<DeltaTable> {
    let orth = orth_root_sum(model, e)?;
    let r = model.rank() as i64;
    let r_dual = model.class.rank_dual() as i64;
    Ok(DeltaTable {
        d41: pairing_cancellation(model, e, 2)?.sum,
        d42: 2 * orth,
        d20: -2 * orth,
        d21: pairing_cancellation(model, e, 1)?.sum,
        d22: -2 * (r - r_dual),
        orth_root_sum: orth,
    })
}

/// Closed forms in `r`: `(0, 4(r-1), -4(r-1), 0, -2(r - r'))`.
pub fn expected_delta(r: usize) -> [i64; 5] {
    let r = r as i64;
    [0, 4 * (r - 1), -4 * (r - 1), 0, -2 * (r - (8 - r))]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Catalog;

    #[test]
    fn e8_vanishing_roots_and_delta() {
        let cat = Catalog::standard().unwrap();
        let m = cat.get(ClassId::MConnected);
        let vr = vanishing_roots(m).unwrap();
        assert_eq!(vr.len(), 128);
        let d = delta_table(m, &vr[0]).unwrap();
        assert_eq!(d.as_array(), [0, 28, -28, 0, -16]);
        assert_eq!(d.orth_root_sum, 14);
        assert_eq!(d.weighted_balance(), 12);
    }

    #[test]
    fn lemma_examples() {
        let cat = Catalog::standard().unwrap();
        let m = cat.get(ClassId::MConnected);
        let e = VanishingRoot::new(m, PicClass::curve(1, &[1, 2, 3])).unwrap();
        let b0 = BClass::new(m, PicClass::ZERO).unwrap();
        let cases = splittings(m, &b0, &e).unwrap();
        assert_eq!(cases.len(), 1);
        assert_eq!(cases[0].d, PicClass::K * -2 - e.e);
        assert_eq!(cases[0].shape(), expected_splittings(0, 0)[0]);
        let third = BClass::new(m, -e.e).unwrap();
        let cases = splittings(m, &third, &e).unwrap();
        assert_eq!(
            cases.iter().map(|c| c.shape()).collect::<Vec<_>>(),
            expected_splittings(2, 2)
        );
        assert_eq!(cases[0].d, PicClass::K * -2 - e.e);
    }

    #[test]
    fn provenance_is_checked() {
        let cat = Catalog::standard().unwrap();
        let e8 = cat.get(ClassId::MConnected);
        let e7 = cat.get(ClassId::M1Connected);
        let e = vanishing_roots(e7).unwrap()[0];
        let b0 = BClass::new(e8, PicClass::ZERO).unwrap();
        assert!(matches!(splittings(e8, &b0, &e), Err(Error::ProvenanceMismatch(..))));
    }

    #[test]
    fn rejects_nonvanishing_root() {
        let cat = Catalog::standard().unwrap();
        let m = cat.get(ClassId::MConnected);
        assert!(VanishingRoot::new(m, PicClass::ell(1) - PicClass::ell(2)).is_err());
    }
}
