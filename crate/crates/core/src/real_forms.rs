//! The eleven real deformation classes and their real root lattices.
//!
//! Each class carries a stored simple-root basis of its lattice `Λ` inside
//! `K^perp`. [`lambda_basis`] re-validates the basis every time it is built:
//! Dynkin type, root count, primitivity, and the root type of the orthogonal
//! complement must all match the class record.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ade::{root_system_type, RootSystemType};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_vectors, PicClass, Sublattice, RANK};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassId {
    #[serde(rename = "M-connected")]
    MConnected,
    #[serde(rename = "M-split")]
    MSplit,
    #[serde(rename = "M1-connected")]
    M1Connected,
    #[serde(rename = "M1-split")]
    M1Split,
    #[serde(rename = "M2-connected")]
    M2Connected,
    #[serde(rename = "M2-split")]
    M2Split,
    #[serde(rename = "M3-connected")]
    M3Connected,
    #[serde(rename = "M3-split")]
    M3Split,
    #[serde(rename = "M4")]
    M4,
    #[serde(rename = "M2I-a")]
    M2IA,
    #[serde(rename = "M2I-b")]
    M2IB,
}

impl ClassId {
    pub const ALL: [ClassId; 11] = [
        ClassId::MConnected,
        ClassId::MSplit,
        ClassId::M1Connected,
        ClassId::M1Split,
        ClassId::M2Connected,
        ClassId::M2Split,
        ClassId::M3Connected,
        ClassId::M3Split,
        ClassId::M4,
        ClassId::M2IA,
        ClassId::M2IB,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassId::MConnected => "M-connected",
            ClassId::MSplit => "M-split",
            ClassId::M1Connected => "M1-connected",
            ClassId::M1Split => "M1-split",
            ClassId::M2Connected => "M2-connected",
            ClassId::M2Split => "M2-split",
            ClassId::M3Connected => "M3-connected",
            ClassId::M3Split => "M3-split",
            ClassId::M4 => "M4",
            ClassId::M2IA => "M2I-a",
            ClassId::M2IB => "M2I-b",
        }
    }

    /// The record for this id.
    pub fn class(self) -> DeformationClass {
        deformation_class(self)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownClass(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SmithType {
    #[serde(rename = "M")]
    M,
    #[serde(rename = "M-1")]
    M1,
    #[serde(rename = "M-2")]
    M2,
    #[serde(rename = "M-3")]
    M3,
    #[serde(rename = "M-4")]
    M4,
    #[serde(rename = "(M-2)_I-a")]
    M2IA,
    #[serde(rename = "(M-2)_I-b")]
    M2IB,
}

impl fmt::Display for SmithType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SmithType::M => "M",
            SmithType::M1 => "M-1",
            SmithType::M2 => "M-2",
            SmithType::M3 => "M-3",
            SmithType::M4 => "M-4",
            SmithType::M2IA => "(M-2)_I-a",
            SmithType::M2IB => "(M-2)_I-b",
        })
    }
}

/// How the Z/4 quadratic function of a class is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QhatModelKind {
    Code,
    VanishingRootBasis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationClass {
    pub id: ClassId,
    pub topology: String,
    pub smith_type: SmithType,
    pub lambda_type: String,
    pub rank_r: usize,
    pub euler_char: i64,
    pub bertini_dual_id: ClassId,
    pub qhat_model: QhatModelKind,
}

impl DeformationClass {
    pub fn lambda_root_type(&self) -> RootSystemType {
        self.lambda_type.parse().expect("stored labels parse")
    }

    /// Rank of the dual lattice, `8 - r`.
    pub fn rank_dual(&self) -> usize {
        8 - self.rank_r
    }

    pub fn is_self_dual(&self) -> bool {
        self.bertini_dual_id == self.id
    }
}

fn deformation_class(id: ClassId) -> DeformationClass {
    use ClassId::*;
    let (topology, smith_type, lambda, r, dual) = match id {
        MConnected => ("RP2#4T2", SmithType::M, "E8", 8, MSplit),
        MSplit => ("RP2+4S2", SmithType::M, "0", 0, MConnected),
        M1Connected => ("RP2#3T2", SmithType::M1, "E7", 7, M1Split),
        M1Split => ("RP2+3S2", SmithType::M1, "A1", 1, M1Connected),
        M2Connected => ("RP2#2T2", SmithType::M2, "D6", 6, M2Split),
        M2Split => ("RP2+2S2", SmithType::M2, "2A1", 2, M2Connected),
        M3Connected => ("RP2#T2", SmithType::M3, "D4+A1", 5, M3Split),
        M3Split => ("RP2+S2", SmithType::M3, "3A1", 3, M3Connected),
        M4 => ("RP2", SmithType::M4, "4A1", 4, M4),
        M2IA => ("RP2+K2", SmithType::M2IA, "D4", 4, M2IA),
        M2IB => ("(RP2#T2)+S2", SmithType::M2IB, "D4", 4, M2IB),
    };
    let qhat_model = match id {
        MConnected | M1Connected => QhatModelKind::Code,
        _ => QhatModelKind::VanishingRootBasis,
    };
    DeformationClass {
        id,
        topology: topology.to_string(),
        smith_type,
        lambda_type: lambda.to_string(),
        rank_r: r,
        euler_char: 9 - 2 * r as i64,
        bertini_dual_id: dual,
        qhat_model,
    }
}

/// All eleven classes, connected/split pairs adjacent.
pub fn deformation_classes() -> Vec<DeformationClass> {
    ClassId::ALL.into_iter().map(deformation_class).collect()
}

pub fn bertini_dual(c: &DeformationClass) -> DeformationClass {
    deformation_class(c.bertini_dual_id)
}

/// The seven Bertini pairs, connected (or self-dual) member first.
pub fn bertini_pairs() -> Vec<(ClassId, ClassId)> {
    ClassId::ALL
        .into_iter()
        .filter(|&id| id <= deformation_class(id).bertini_dual_id)
        .map(|id| (id, deformation_class(id).bertini_dual_id))
        .collect()
}

/// A validated simple-root basis of `Λ(c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaEmbedding {
    pub class_id: ClassId,
    pub sublattice: Sublattice,
}

fn l(i: usize) -> PicClass {
    PicClass::ell(i)
}

fn c(d: i64, pts: &[usize]) -> PicClass {
    PicClass::curve(d, pts)
}

/// The stored simple roots for each class, before validation.
pub fn stored_simple_roots(id: ClassId) -> Vec<PicClass> {
    use ClassId::*;
    match id {
        MConnected => Sublattice::k_perp().basis().to_vec(),
        MSplit => Vec::new(),
        // K^perp with equal l7, l8 coefficients
        M1Connected => vec![
            l(2) - l(1),
            l(3) - l(2),
            l(4) - l(3),
            l(5) - l(4),
            l(6) - l(5),
            c(1, &[4, 5, 6]),
            c(1, &[6, 7, 8]),
        ],
        M1Split => vec![l(7) - l(8)],
        M2Connected => vec![
            l(2) - l(1),
            l(3) - l(2),
            l(4) - l(3),
            c(1, &[2, 3, 4]),
            c(1, &[4, 5, 6]),
            c(1, &[4, 7, 8]),
        ],
        M2Split => vec![l(5) - l(6), l(7) - l(8)],
        M3Connected => vec![
            l(2) - l(1),
            c(1, &[2, 3, 4]),
            c(1, &[2, 5, 6]),
            c(1, &[2, 7, 8]),
            c(2, &[3, 4, 5, 6, 7, 8]),
        ],
        M3Split => vec![l(3) - l(4), l(5) - l(6), l(7) - l(8)],
        M4 => vec![
            c(2, &[1, 2, 3, 4, 5, 6]),
            c(2, &[1, 2, 3, 4, 7, 8]),
            c(2, &[1, 2, 5, 6, 7, 8]),
            c(2, &[3, 4, 5, 6, 7, 8]),
        ],
        M2IA => vec![l(1) - l(2), l(2) - l(3), l(3) - l(4), c(1, &[1, 2, 5])],
        // the orthogonal complement of the M2I-a lattice
        M2IB => vec![l(7) - l(6), l(8) - l(7), c(1, &[5, 7, 8]), c(2, &[1, 2, 3, 4, 7, 8])],
    }
}

/// Builds and validates the embedding of `Λ(c)`.
pub fn lambda_basis(c: &DeformationClass) -> Result<LambdaEmbedding> {
    validate_embedding(c, stored_simple_roots(c.id))
}

/// Runs every embedding check on a candidate basis for class `c`.
pub fn validate_embedding(c: &DeformationClass, basis: Vec<PicClass>) -> Result<LambdaEmbedding> {
    let fail = |reason: String| Error::Embedding {
        class: c.id.to_string(),
        reason,
    };
    let expected = c.lambda_root_type();
    if basis.len() != c.rank_r {
        return Err(fail(format!(
            "basis has {} vectors, expected rank {}",
            basis.len(),
            c.rank_r
        )));
    }
    let sublattice = Sublattice::new(basis).map_err(|e| fail(e.to_string()))?;
    let diagram = crate::ade::dynkin_type(sublattice.basis());
    if diagram != expected {
        return Err(fail(format!("Gram matrix is of type {diagram}, expected {expected}")));
    }
    let roots = enumerate_vectors(&sublattice, -2).map_err(|e| fail(e.to_string()))?;
    let want = expected.root_count().unwrap_or(0);
    if c.rank_r > 0 && roots.len() != want {
        return Err(fail(format!("{} roots generated, expected {want}", roots.len())));
    }
    let sat = saturate(&sublattice)?;
    if sat.determinant() != sublattice.determinant() {
        return Err(fail(format!(
            "not primitive: determinant {} but saturation has {}",
            sublattice.determinant(),
            sat.determinant()
        )));
    }
    let dual_type = bertini_dual(c).lambda_root_type();
    let comp_type = root_system_type(&orthogonal_complement(&sublattice)?)?;
    if comp_type != dual_type {
        return Err(fail(format!(
            "complement has root type {comp_type}, expected {dual_type}"
        )));
    }
    Ok(LambdaEmbedding {
        class_id: c.id,
        sublattice,
    })
}

impl LambdaEmbedding {
    pub fn basis(&self) -> &[PicClass] {
        self.sublattice.basis()
    }

    pub fn roots(&self) -> Result<Vec<PicClass>> {
        enumerate_vectors(&self.sublattice, -2)
    }

    /// The lattice of the Bertini dual: the complement of this one.
    pub fn complement(&self) -> Result<Sublattice> {
        orthogonal_complement(&self.sublattice)
    }
}

/// Row vector `r` with `r . x = x . b` in standard coordinates.
fn form_row(b: &PicClass) -> Vec<i64> {
    let mut row = b.0.to_vec();
    for x in row.iter_mut().skip(1) {
        *x = -*x;
    }
    row
}

/// `{x in K^perp : x.b = 0 for all b in L}`, as a primitive sublattice.
pub fn orthogonal_complement(lattice: &Sublattice) -> Result<Sublattice> {
    let mut rows = vec![form_row(&PicClass::K)];
    rows.extend(lattice.basis().iter().map(form_row));
    kernel_sublattice(&rows)
}

/// The primitive closure of `L` in `K^perp`, as the double complement.
pub fn saturate(lattice: &Sublattice) -> Result<Sublattice> {
    orthogonal_complement(&orthogonal_complement(lattice)?)
}

fn kernel_sublattice(rows: &[Vec<i64>]) -> Result<Sublattice> {
    let kernel = linalg::integer_kernel(rows, RANK);
    let basis = kernel
        .into_iter()
        .map(|v| {
            let mut c = [0i64; RANK];
            c.copy_from_slice(&v);
            PicClass(c)
        })
        .collect();
    Sublattice::new(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eleven_classes_seven_pairs() {
        let all = deformation_classes();
        assert_eq!(all.len(), 11);
        assert_eq!(bertini_pairs().len(), 7);
        for c in &all {
            assert_eq!(c.euler_char, 9 - 2 * c.rank_r as i64);
            let d = bertini_dual(c);
            assert_eq!(bertini_dual(&d).id, c.id);
            assert_eq!(c.rank_r + d.rank_r, 8);
            assert_eq!(c.euler_char + d.euler_char, 2);
            assert_eq!(c.lambda_root_type().rank(), Some(c.rank_r));
        }
    }

    #[test]
    fn lookups() {
        let m: ClassId = "M-connected".parse().unwrap();
        let c = m.class();
        assert_eq!(
            (c.lambda_type.as_str(), c.rank_r, c.topology.as_str()),
            ("E8", 8, "RP2#4T2")
        );
        let s = ClassId::MSplit.class();
        assert_eq!(
            (s.lambda_type.as_str(), s.rank_r, s.topology.as_str()),
            ("0", 0, "RP2+4S2")
        );
        assert_eq!(bertini_dual(&c).id, ClassId::MSplit);
        assert_eq!(bertini_dual(&ClassId::M4.class()).id, ClassId::M4);
        assert!("nope".parse::<ClassId>().is_err());
    }

    #[test]
    fn every_stored_embedding_validates() {
        for c in deformation_classes() {
            let emb = lambda_basis(&c).unwrap_or_else(|e| panic!("{}: {e}", c.id));
            assert_eq!(emb.basis().len(), c.rank_r);
        }
    }

    #[test]
    fn complements() {
        let e8 = Sublattice::k_perp();
        assert_eq!(orthogonal_complement(&e8).unwrap().rank(), 0);
        assert_eq!(orthogonal_complement(&Sublattice::zero()).unwrap().rank(), 8);
        let e7 = lambda_basis(&ClassId::M1Connected.class()).unwrap();
        let comp = e7.complement().unwrap();
        assert_eq!(comp.rank(), 1);
        assert_eq!(enumerate_vectors(&comp, -2).unwrap().len(), 2);
        let d4 = lambda_basis(&ClassId::M2IA.class()).unwrap();
        assert_eq!(root_system_type(&d4.complement().unwrap()).unwrap().to_string(), "D4");
    }

    #[test]
    fn four_a1_is_primitive_with_eight_roots() {
        let emb = lambda_basis(&ClassId::M4.class()).unwrap();
        let sat = saturate(&emb.sublattice).unwrap();
        assert_eq!(enumerate_vectors(&sat, -2).unwrap().len(), 8);
    }

    #[test]
    fn wrong_embedding_is_rejected() {
        // four orthogonal roots whose half-sum h-l2-l4-l5 is a root: they span
        // an index-2 sublattice of a D4
        let bad = vec![l(1) - l(2), l(3) - l(4), c(1, &[1, 2, 5]), c(1, &[3, 4, 5])];
        let err = validate_embedding(&ClassId::M4.class(), bad).unwrap_err();
        assert!(err.to_string().contains("not primitive"), "{err}");
    }

    #[test]
    fn second_four_a1_also_passes() {
        let alt = vec![l(1) - l(2), l(3) - l(4), l(5) - l(6), c(1, &[1, 2, 7])];
        assert!(validate_embedding(&ClassId::M4.class(), alt).is_ok());
    }
}
