//! The Picard lattice `Z^{1,8}` of a degree-1 del Pezzo surface.
//!
//! Classes are stored as coordinates in the ordered basis `(h, l1, ..., l8)`
//! with `h.h = 1`, `li.li = -1` and all cross terms zero. The canonical class
//! is `K = -3h + l1 + ... + l8`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, Rational};

pub const RANK: usize = 9;

/// Environment variable holding an optional cap on search nodes visited by
/// [`enumerate_vectors`]. Exceeding it turns the enumeration into an error.
pub const NODE_LIMIT_VAR: &str = "DP1_ENUM_NODE_LIMIT";

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PicClass(pub [i64; RANK]);

impl PicClass {
    pub const ZERO: PicClass = PicClass([0; RANK]);
    pub const H: PicClass = PicClass([1, 0, 0, 0, 0, 0, 0, 0, 0]);
    pub const K: PicClass = PicClass([-3, 1, 1, 1, 1, 1, 1, 1, 1]);

    pub fn new(coeffs: [i64; RANK]) -> Self {
        PicClass(coeffs)
    }

    /// Exceptional class `l_i`, `1 <= i <= 8`.
    pub fn ell(i: usize) -> Self {
        assert!((1..RANK).contains(&i), "exceptional index {i} out of range");
        let mut c = [0; RANK];
        c[i] = 1;
        PicClass(c)
    }

    /// `d*h - sum l_i` over the given indices (each index may repeat).
    pub fn curve(d: i64, points: &[usize]) -> Self {
        let mut c = PicClass::H * d;
        for &i in points {
            c = c - PicClass::ell(i);
        }
        c
    }

    pub fn coeffs(&self) -> &[i64; RANK] {
        &self.0
    }

    pub fn h_coeff(&self) -> i64 {
        self.0[0]
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; RANK]
    }

    pub fn square(&self) -> i64 {
        intersect(self, self)
    }
}

impl fmt::Debug for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PicClass {
    /// Renders `a0*h + a1*l1 + ...`, e.g. `h-l1-l2-l3` or `3h-2l1-l2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = if i == 0 { "h".to_string() } else { format!("l{i}") };
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{mag}{name}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for PicClass {
    type Output = PicClass;
    fn add(self, rhs: PicClass) -> PicClass {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(rhs.0) {
            *x += y;
        }
        PicClass(c)
    }
}

impl AddAssign for PicClass {
    fn add_assign(&mut self, rhs: PicClass) {
        *self = *self + rhs;
    }
}

impl Sub for PicClass {
    type Output = PicClass;
    fn sub(self, rhs: PicClass) -> PicClass {
        self + (-rhs)
    }
}

impl Neg for PicClass {
    type Output = PicClass;
    fn neg(self) -> PicClass {
        PicClass(self.0.map(|x| -x))
    }
}

impl Mul<i64> for PicClass {
    type Output = PicClass;
    fn mul(self, k: i64) -> PicClass {
        PicClass(self.0.map(|x| x * k))
    }
}

/// The intersection form `a0 b0 - sum ai bi`.
pub fn intersect(a: &PicClass, b: &PicClass) -> i64 {
    a.0[0] * b.0[0] - (1..RANK).map(|i| a.0[i] * b.0[i]).sum::<i64>()
}

/// Canonical degree `-a.K`.
pub fn degree(a: &PicClass) -> i64 {
    -intersect(a, &PicClass::K)
}

/// Reflection in a root: `a + (a.e) e`.
pub fn reflect(a: &PicClass, e: &PicClass) -> Result<PicClass> {
    if e.square() != -2 {
        return Err(Error::NotARoot(e.to_string()));
    }
    Ok(*a + *e * intersect(a, e))
}

/// A sublattice of `K^perp` given by an ordered basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sublattice {
    basis: Vec<PicClass>,
    gram: IntMatrix,
}

impl Sublattice {
    /// Builds the sublattice, checking `b.K = 0`, linear independence and
    /// negative definiteness.
    pub fn new(basis: Vec<PicClass>) -> Result<Self> {
        for b in &basis {
            if intersect(b, &PicClass::K) != 0 {
                return Err(Error::NotInKPerp(b.to_string()));
            }
        }
        let gram = gram_matrix(&basis);
        let neg: IntMatrix = gram.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        if linalg::completed_squares(&neg).is_none() {
            return Err(Error::NotNegativeDefinite);
        }
        Ok(Sublattice { basis, gram })
    }

    /// The full `K^perp`, with the standard `E8` simple roots
    /// `h-l1-l2-l3, l1-l2, ..., l7-l8`.
    pub fn k_perp() -> Self {
        let mut basis = vec![PicClass::curve(1, &[1, 2, 3])];
        basis.extend((1..8).map(|i| PicClass::ell(i) - PicClass::ell(i + 1)));
        Sublattice::new(basis).expect("standard E8 basis is valid")
    }

    pub fn zero() -> Self {
        Sublattice {
            basis: Vec::new(),
            gram: Vec::new(),
        }
    }

    pub fn basis(&self) -> &[PicClass] {
        &self.basis
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Determinant of the Gram matrix (sign `(-1)^rank`).
    pub fn determinant(&self) -> i128 {
        linalg::determinant(&self.gram)
    }

    /// Ambient class with the given basis coordinates.
    pub fn combine(&self, coords: &[i64]) -> PicClass {
        self.basis
            .iter()
            .zip(coords)
            .fold(PicClass::ZERO, |acc, (b, &n)| acc + *b * n)
    }

    /// Basis coordinates of `x`, or an error if `x` is not an integral
    /// combination of the basis.
    pub fn coordinates(&self, x: &PicClass) -> Result<Vec<i64>> {
        CoordinateSolver::new(self).solve(x)
    }

    pub fn contains(&self, x: &PicClass) -> bool {
        self.coordinates(x).is_ok()
    }
}

pub fn gram_matrix(basis: &[PicClass]) -> IntMatrix {
    basis
        .iter()
        .map(|a| basis.iter().map(|b| intersect(a, b)).collect())
        .collect()
}

/// Solves for basis coordinates with a cached adjugate of the Gram matrix.
#[derive(Clone, Debug)]
pub struct CoordinateSolver {
    basis: Vec<PicClass>,
    adj: Vec<Vec<i128>>,
    det: i128,
}

impl CoordinateSolver {
    pub fn new(lattice: &Sublattice) -> Self {
        CoordinateSolver {
            basis: lattice.basis.clone(),
            adj: linalg::adjugate(&lattice.gram),
            det: lattice.determinant(),
        }
    }

    pub fn solve(&self, x: &PicClass) -> Result<Vec<i64>> {
        let rhs: Vec<i128> = self.basis.iter().map(|b| intersect(x, b) as i128).collect();
        let mut coords = Vec::with_capacity(rhs.len());
        for row in &self.adj {
            let num: i128 = row.iter().zip(&rhs).map(|(a, r)| a * r).sum();
            if num % self.det != 0 {
                return Err(Error::NotInSpan(x.to_string()));
            }
            coords.push((num / self.det) as i64);
        }
        let back = self
            .basis
            .iter()
            .zip(&coords)
            .fold(PicClass::ZERO, |acc, (b, &n)| acc + *b * n);
        if back != *x {
            return Err(Error::NotInSpan(x.to_string()));
        }
        Ok(coords)
    }
}

fn node_limit_from_env() -> Option<u64> {
    static LIMIT: OnceLock<Option<u64>> = OnceLock::new();
    *LIMIT.get_or_init(|| std::env::var(NODE_LIMIT_VAR).ok().and_then(|s| s.trim().parse().ok()))
}

/// All `v` in the lattice with `v.v = norm`, in ambient coordinates, sorted
/// lexicographically by basis coordinates.
pub fn enumerate_vectors(lattice: &Sublattice, norm: i64) -> Result<Vec<PicClass>> {
    Ok(enumerate_with_coords(lattice, norm, node_limit_from_env())?
        .into_iter()
        .map(|(_, v)| v)
        .collect())
}

/// Fincke-Pohst search on the negated Gram matrix, with exact rational bounds.
/// Returns `(basis coordinates, ambient class)` pairs in lexicographic order of
/// the coordinates.
pub fn enumerate_with_coords(
    lattice: &Sublattice,
    norm: i64,
    node_limit: Option<u64>,
) -> Result<Vec<(Vec<i64>, PicClass)>> {
    if norm >= 0 {
        return Err(Error::NonNegativeNorm(norm));
    }
    let n = lattice.rank();
    if n == 0 {
        return Ok(Vec::new());
    }
    let neg: IntMatrix = lattice.gram.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let q = linalg::completed_squares(&neg).ok_or(Error::NotNegativeDefinite)?;
    let mut search = Search {
        q,
        x: vec![0; n],
        found: Vec::new(),
        nodes: 0,
        limit: node_limit,
    };
    search.descend(n - 1, Rational::from_integer(-norm as i128))?;
    let mut out: Vec<(Vec<i64>, PicClass)> = search
        .found
        .into_iter()
        .map(|c| {
            let v = lattice.combine(&c);
            (c, v)
        })
        .collect();
    out.sort();
    Ok(out)
}

struct Search {
    q: Vec<Vec<Rational>>,
    x: Vec<i64>,
    found: Vec<Vec<i64>>,
    nodes: u64,
    limit: Option<u64>,
}

impl Search {
    fn descend(&mut self, i: usize, remaining: Rational) -> Result<()> {
        self.nodes += 1;
        if let Some(limit) = self.limit {
            if self.nodes > limit {
                return Err(Error::NodeLimit(limit));
            }
        }
        let n = self.x.len();
        let mut center = Rational::from_integer(0);
        for j in i + 1..n {
            center += self.q[i][j] * Rational::from_integer(self.x[j] as i128);
        }
        let qii = self.q[i][i];
        // (x + center)^2 <= remaining / qii; scan a slightly widened integer window
        let t = remaining / qii;
        let s = linalg::isqrt(t.floor().to_integer()) + 1;
        let u = -center;
        let lo = u.floor().to_integer() - s;
        let hi = u.ceil().to_integer() + s;
        for xi in lo..=hi {
            let d = Rational::from_integer(xi) + center;
            let used = qii * d * d;
            if used > remaining {
                continue;
            }
            self.x[i] = xi as i64;
            let rest = remaining - used;
            if i == 0 {
                if rest == Ratio::from_integer(0) && self.x.iter().any(|&c| c != 0) {
                    self.found.push(self.x.clone());
                }
            } else {
                self.descend(i - 1, rest)?;
            }
        }
        self.x[i] = 0;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(i: usize) -> PicClass {
        PicClass::ell(i)
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(intersect(&PicClass::H, &PicClass::H), 1);
        assert_eq!(intersect(&PicClass::K, &PicClass::K), 1);
        let a = PicClass::curve(1, &[1, 2, 3]);
        assert_eq!(intersect(&a, &(l(1) - l(2))), 0);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&-PicClass::K), 1);
        assert_eq!(degree(&(PicClass::K * -2)), 2);
        assert_eq!(degree(&l(1)), 1);
    }

    #[test]
    fn reflect_examples() {
        let e = l(1) - l(2);
        assert_eq!(reflect(&e, &e).unwrap(), -e);
        let a = l(5) + PicClass::H;
        assert_eq!(intersect(&a, &e), 0);
        assert_eq!(reflect(&a, &e).unwrap(), a);
        assert!(matches!(reflect(&a, &l(1)), Err(Error::NotARoot(_))));
    }

    #[test]
    fn display_forms() {
        assert_eq!(PicClass::curve(1, &[1, 2, 3]).to_string(), "h-l1-l2-l3");
        assert_eq!((l(1) - l(2)).to_string(), "l1-l2");
        assert_eq!(PicClass::K.to_string(), "-3h+l1+l2+l3+l4+l5+l6+l7+l8");
        assert_eq!(PicClass::ZERO.to_string(), "0");
    }

    #[test]
    fn e8_counts() {
        let e8 = Sublattice::k_perp();
        assert_eq!(e8.determinant(), 1);
        assert_eq!(enumerate_vectors(&e8, -2).unwrap().len(), 240);
        assert_eq!(enumerate_vectors(&e8, -4).unwrap().len(), 2160);
    }

    #[test]
    fn four_a1_norm_four() {
        let basis = vec![l(1) - l(2), l(3) - l(4), l(5) - l(6), l(7) - l(8)];
        let lat = Sublattice::new(basis).unwrap();
        assert_eq!(enumerate_vectors(&lat, -4).unwrap().len(), 24);
        assert_eq!(enumerate_vectors(&lat, -2).unwrap().len(), 8);
    }

    #[test]
    fn rejects_bad_inputs() {
        let e8 = Sublattice::k_perp();
        assert_eq!(enumerate_vectors(&e8, 0), Err(Error::NonNegativeNorm(0)));
        assert!(matches!(Sublattice::new(vec![l(1)]), Err(Error::NotInKPerp(_))));
        let e = l(1) - l(2);
        assert_eq!(Sublattice::new(vec![e, -e]), Err(Error::NotNegativeDefinite));
    }

    #[test]
    fn output_is_lexicographic() {
        let e8 = Sublattice::k_perp();
        let out = enumerate_with_coords(&e8, -2, None).unwrap();
        assert!(out.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn node_limit_trips() {
        let e8 = Sublattice::k_perp();
        assert_eq!(enumerate_with_coords(&e8, -4, Some(10)), Err(Error::NodeLimit(10)));
    }

    #[test]
    fn coordinates_roundtrip() {
        let e8 = Sublattice::k_perp();
        let v = PicClass::new([3, -2, -1, -1, -1, -1, -1, -1, -1]);
        let c = e8.coordinates(&v).unwrap();
        assert_eq!(e8.combine(&c), v);
        let a1 = Sublattice::new(vec![l(1) - l(2)]).unwrap();
        assert!(a1.coordinates(&(l(2) - l(3))).is_err());
    }
}
