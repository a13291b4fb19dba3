//! Z/4 quadratic functions on real classes.
//!
//! Two evaluators are provided. A [`Code`] lists the values on the
//! orthogonal family `h, l_1, ..., l_{8-2r}` of a blowup model, with the sums
//! of imaginary pairs sent to 0. A [`VanishingBasis`] is a root basis of `Λ`
//! on which the function vanishes. Both extend by the quadratic law
//! `q(u+v) = q(u) + q(v) + 2 u.v`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Add;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{intersect, reflect, CoordinateSolver, PicClass, Sublattice};

/// A residue mod 4, stored as `0..=3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Qhat(u8);

impl Qhat {
    pub const ZERO: Qhat = Qhat(0);
    pub const TWO: Qhat = Qhat(2);

    pub fn new(v: i64) -> Self {
        Qhat(v.rem_euclid(4) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// `i^q` for even `q`, as `+1` or `-1`.
    pub fn sign(self) -> Result<i64> {
        match self.0 {
            0 => Ok(1),
            2 => Ok(-1),
            odd => Err(Error::OddQhat(odd)),
        }
    }
}

impl Add for Qhat {
    type Output = Qhat;
    fn add(self, rhs: Qhat) -> Qhat {
        Qhat((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Qhat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `q(n b) = n q(b) + (n^2 - n) b.b`, reduced mod 4.
fn scaled(n: i64, q_b: i64, b_sq: i64) -> i64 {
    (n * q_b + (n * n - n) * b_sq).rem_euclid(4)
}

/// Residues `(a_0, ..., a_{8-2r})` of a blowup model with `r` imaginary
/// pairs. The pairs are `(l7, l8)`, `(l5, l6)`, ... taken from the end.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Code {
    r: usize,
    residues: Vec<u8>,
}

impl Code {
    /// Builds a code from `±1` (or `1`/`3`) entries, checking the length and
    /// that the entries sum to 1 mod 4.
    pub fn new(r: usize, entries: &[i64]) -> Result<Self> {
        if r > 4 {
            return Err(Error::InvalidCode(format!("{r} imaginary pairs, at most 4 allowed")));
        }
        let len = 9 - 2 * r;
        if entries.len() != len {
            return Err(Error::InvalidCode(format!(
                "{} entries given, {len} expected for {r} imaginary pair(s)",
                entries.len()
            )));
        }
        let residues: Vec<u8> = entries.iter().map(|&a| a.rem_euclid(4) as u8).collect();
        if residues.iter().any(|&a| a % 2 == 0) {
            return Err(Error::InvalidCode(format!("entries must be ±1 mod 4: {entries:?}")));
        }
        let sum: u32 = residues.iter().map(|&a| a as u32).sum();
        if sum % 4 != 1 {
            return Err(Error::InvalidCode(format!("entries sum to {} mod 4, not 1", sum % 4)));
        }
        Ok(Code { r, residues })
    }

    /// The code with every entry equal to `sign`, if it is valid for `r`.
    pub fn uniform(r: usize, sign: i64) -> Result<Self> {
        Code::new(r, &vec![sign; 9 - 2 * r])
    }

    /// The valid uniform code for `r`: all `+1` when `9 - 2r = 1 mod 4`,
    /// otherwise all `-1`.
    pub fn canonical(r: usize) -> Self {
        Code::uniform(r, 1)
            .or_else(|_| Code::uniform(r, -1))
            .expect("one uniform code is valid")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn residues(&self) -> &[u8] {
        &self.residues
    }

    /// Entries as `±1`.
    pub fn signs(&self) -> Vec<i64> {
        self.residues.iter().map(|&a| if a == 1 { 1 } else { -1 }).collect()
    }

    /// Number of real exceptional classes, `8 - 2r`.
    pub fn real_count(&self) -> usize {
        8 - 2 * self.r
    }

    /// Index pairs of the imaginary exceptional classes.
    pub fn imaginary_pairs(&self) -> Vec<(usize, usize)> {
        imaginary_pairs(self.r)
    }

    /// Whether `x` has equal coefficients on every imaginary pair.
    pub fn is_real(&self, x: &PicClass) -> bool {
        self.imaginary_pairs().iter().all(|&(i, j)| x.0[i] == x.0[j])
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.signs().iter().map(|v| v.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn imaginary_pairs(r: usize) -> Vec<(usize, usize)> {
    (0..r).map(|k| (8 - 2 * k - 1, 8 - 2 * k)).rev().collect()
}

/// Evaluates the code's quadratic function on a real class.
pub fn qhat_code(code: &Code, x: &PicClass) -> Result<Qhat> {
    if !code.is_real(x) {
        return Err(Error::NotReal(x.to_string(), code.r));
    }
    let c = &x.0;
    let mut total = scaled(c[0], code.residues[0] as i64, 1);
    for i in 1..=code.real_count() {
        total += scaled(c[i], code.residues[i] as i64, -1);
    }
    for (i, _) in code.imaginary_pairs() {
        total += scaled(c[i], 0, -2);
    }
    Ok(Qhat::new(total))
}

/// A basis change of a blowup model together with its effect on the code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CremonaMove {
    /// Quadratic transformation based at three real points.
    Real { i: usize, j: usize, k: usize },
    /// Quadratic transformation based at a real point and the last
    /// imaginary pair.
    Imaginary { i: usize },
}

impl CremonaMove {
    /// The root `h - l_i - l_j - l_k` whose reflection realises the move on
    /// classes.
    pub fn root(&self) -> PicClass {
        match *self {
            CremonaMove::Real { i, j, k } => PicClass::curve(1, &[i, j, k]),
            CremonaMove::Imaginary { i } => PicClass::curve(1, &[i, 7, 8]),
        }
    }

    pub fn apply(&self, code: &Code) -> Result<Code> {
        match *self {
            CremonaMove::Real { i, j, k } => cremona_code(code, i, j, k),
            CremonaMove::Imaginary { i } => cremona_imaginary(code, i),
        }
    }

    /// Coordinates of a fixed class in the transformed basis.
    pub fn transform_class(&self, x: &PicClass) -> PicClass {
        reflect(x, &self.root()).expect("move root has square -2")
    }
}

impl fmt::Display for CremonaMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CremonaMove::Real { i, j, k } => write!(f, "cremona({i},{j},{k})"),
            CremonaMove::Imaginary { i } => write!(f, "cremona_imaginary({i})"),
        }
    }
}

/// Replaces each of `a_0, a_i, a_j, a_k` by the sum of the other three.
pub fn cremona_code(code: &Code, i: usize, j: usize, k: usize) -> Result<Code> {
    let n = code.real_count();
    if !(i < j && j < k && i >= 1 && k <= n) {
        return Err(Error::BadIndices(format!(
            "need 1 <= i < j < k <= {n}, got ({i},{j},{k})"
        )));
    }
    let a = &code.residues;
    let idx = [0, i, j, k];
    let total: u32 = idx.iter().map(|&t| a[t] as u32).sum();
    let mut out = a.clone();
    for &t in &idx {
        out[t] = ((total - a[t] as u32) % 4) as u8;
    }
    Ok(Code {
        r: code.r,
        residues: out,
    })
}

/// Swaps `a_0` and `a_i`.
pub fn cremona_imaginary(code: &Code, i: usize) -> Result<Code> {
    if code.r == 0 {
        return Err(Error::BadIndices("no imaginary pair to base the move at".into()));
    }
    if i == 0 || i > code.real_count() {
        return Err(Error::BadIndices(format!(
            "real index {i} out of 1..={}",
            code.real_count()
        )));
    }
    let mut out = code.residues.clone();
    out.swap(0, i);
    Ok(Code {
        r: code.r,
        residues: out,
    })
}

fn all_moves(r: usize) -> Vec<CremonaMove> {
    let n = 8 - 2 * r;
    let mut moves = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                moves.push(CremonaMove::Real { i, j, k });
            }
        }
    }
    if r > 0 {
        moves.extend((1..=n).map(|i| CremonaMove::Imaginary { i }));
    }
    moves
}

/// Breadth-first search over Cremona moves; returns parent links.
fn explore(start: &Code) -> HashMap<Code, Option<(Code, CremonaMove)>> {
    let moves = all_moves(start.r);
    let mut seen = HashMap::new();
    seen.insert(start.clone(), None);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(cur) = queue.pop_front() {
        for m in &moves {
            let next = m.apply(&cur).expect("generated moves are in range");
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), Some((cur.clone(), *m)));
                queue.push_back(next);
            }
        }
    }
    seen
}

fn path_to(tree: &HashMap<Code, Option<(Code, CremonaMove)>>, target: &Code) -> Option<Vec<CremonaMove>> {
    let mut path = Vec::new();
    let mut cur = target.clone();
    loop {
        match tree.get(&cur)? {
            None => break,
            Some((prev, m)) => {
                path.push(*m);
                cur = prev.clone();
            }
        }
    }
    path.reverse();
    Some(path)
}

/// Ordering key for normalization: distance to the canonical uniform code,
/// then the residues lexicographically.
fn normal_key(code: &Code) -> (usize, Vec<u8>) {
    let canon = Code::canonical(code.r);
    let dist = code
        .residues
        .iter()
        .zip(&canon.residues)
        .filter(|(a, b)| a != b)
        .count();
    (dist, code.residues.clone())
}

/// The normal form of a code in its Cremona orbit, with a shortest witnessing
/// move sequence. The canonical uniform code wins whenever it is reachable.
pub fn normalize_code(code: &Code) -> (Code, Vec<CremonaMove>) {
    let tree = explore(code);
    let best = tree
        .keys()
        .min_by_key(|c| normal_key(c))
        .expect("start is reachable")
        .clone();
    let path = path_to(&tree, &best).expect("best is reachable");
    (best, path)
}

/// A shortest move sequence from `from` to `to`, if one exists.
pub fn cremona_path(from: &Code, to: &Code) -> Option<Vec<CremonaMove>> {
    if from.r != to.r {
        return None;
    }
    path_to(&explore(from), to)
}

/// A root basis of `Λ` on which the quadratic function vanishes.
#[derive(Clone, Debug)]
pub struct VanishingBasis {
    lattice: Sublattice,
    solver: CoordinateSolver,
}

impl VanishingBasis {
    pub fn new(basis: Vec<PicClass>) -> Result<Self> {
        for b in &basis {
            if b.square() != -2 {
                return Err(Error::NotARoot(b.to_string()));
            }
        }
        let lattice = Sublattice::new(basis)?;
        let solver = CoordinateSolver::new(&lattice);
        Ok(VanishingBasis { lattice, solver })
    }

    pub fn basis(&self) -> &[PicClass] {
        self.lattice.basis()
    }

    pub fn lattice(&self) -> &Sublattice {
        &self.lattice
    }

    pub fn coordinates(&self, x: &PicClass) -> Result<Vec<i64>> {
        self.solver.solve(x)
    }

    /// Applies the same isometry (a product of reflections) to every basis
    /// vector.
    pub fn transformed(&self, reflections: &[PicClass]) -> Result<Self> {
        let mut basis = self.basis().to_vec();
        for e in reflections {
            for b in basis.iter_mut() {
                *b = reflect(b, e)?;
            }
        }
        VanishingBasis::new(basis)
    }

    /// A random Weyl-group image of this basis, using `steps` reflections in
    /// the given roots.
    pub fn random_weyl_image<R: Rng>(&self, roots: &[PicClass], steps: usize, rng: &mut R) -> Result<Self> {
        let word: Vec<PicClass> = (0..steps).filter_map(|_| roots.choose(rng).copied()).collect();
        self.transformed(&word)
    }
}

/// Closed form `x.x + 2 sum n_i` for `x = sum n_i b_i`.
pub fn qhat_vanishing_basis(basis: &VanishingBasis, x: &PicClass) -> Result<Qhat> {
    let n = basis.coordinates(x)?;
    Ok(Qhat::new(x.square() + 2 * n.iter().sum::<i64>()))
}

/// The same value obtained by adding basis roots one at a time with the
/// quadratic law. Used to cross-check [`qhat_vanishing_basis`].
pub fn qhat_vanishing_recursive(basis: &VanishingBasis, x: &PicClass) -> Result<Qhat> {
    let n = basis.coordinates(x)?;
    let mut acc = PicClass::ZERO;
    let mut q = 0i64;
    for (b, &k) in basis.basis().iter().zip(&n) {
        let step = if k < 0 { -*b } else { *b };
        for _ in 0..k.abs() {
            // q(step) = 0 for step = ±b
            q += 2 * intersect(&acc, &step);
            acc += step;
        }
    }
    Ok(Qhat::new(q))
}

/// The evaluator attached to a real class.
#[derive(Clone, Debug)]
pub enum PinModel {
    Code(Code),
    Vanishing(VanishingBasis),
}

impl PinModel {
    /// Value on a class of `Λ` (any real class for a code model).
    pub fn qhat(&self, x: &PicClass) -> Result<Qhat> {
        match self {
            PinModel::Code(c) => qhat_code(c, x),
            PinModel::Vanishing(b) => qhat_vanishing_basis(b, x),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            PinModel::Code(_) => "code",
            PinModel::Vanishing(_) => "vanishing_root_basis",
        }
    }
}

/// Searches `candidates` for roots with the same Gram matrix as `template`
/// (matched position by position). Returns the first hit in search order.
pub fn find_basis_with_gram(template: &[PicClass], candidates: &[PicClass]) -> Option<Vec<PicClass>> {
    let n = template.len();
    let gram: Vec<Vec<i64>> = template
        .iter()
        .map(|a| template.iter().map(|b| intersect(a, b)).collect())
        .collect();
    let mut chosen: Vec<PicClass> = Vec::with_capacity(n);
    fn go(i: usize, gram: &[Vec<i64>], cand: &[PicClass], chosen: &mut Vec<PicClass>) -> bool {
        if i == gram.len() {
            return true;
        }
        for c in cand {
            if c.square() != gram[i][i] {
                continue;
            }
            if chosen.iter().enumerate().all(|(j, p)| intersect(p, c) == gram[i][j]) {
                chosen.push(*c);
                if go(i + 1, gram, cand, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if go(0, &gram, candidates, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(i: usize) -> PicClass {
        PicClass::ell(i)
    }

    #[test]
    fn code_values_on_known_classes() {
        let plus = Code::canonical(0);
        assert_eq!(plus.signs(), vec![1; 9]);
        assert_eq!(qhat_code(&plus, &(l(1) - l(2))).unwrap(), Qhat::TWO);
        assert_eq!(qhat_code(&plus, &PicClass::curve(1, &[1, 2, 3])).unwrap(), Qhat::ZERO);
        let minus = Code::canonical(1);
        assert_eq!(minus.signs(), vec![-1; 7]);
        assert_eq!(qhat_code(&minus, &PicClass::curve(1, &[1])).unwrap(), Qhat::TWO);
        assert_eq!(qhat_code(&minus, &PicClass::ZERO).unwrap(), Qhat::ZERO);
        assert!(matches!(qhat_code(&minus, &l(7)), Err(Error::NotReal(_, 1))));
    }

    #[test]
    fn minus_k_has_value_one_for_every_code() {
        for r in 0..=4 {
            let len = 9 - 2 * r;
            for mask in 0u32..(1 << len) {
                let entries: Vec<i64> = (0..len).map(|b| if mask >> b & 1 == 1 { -1 } else { 1 }).collect();
                if let Ok(code) = Code::new(r, &entries) {
                    assert_eq!(qhat_code(&code, &-PicClass::K).unwrap(), Qhat::new(1), "{code}");
                }
            }
        }
    }

    #[test]
    fn code_validation() {
        assert!(Code::new(0, &[1; 8]).is_err());
        assert!(Code::new(0, &[-1; 9]).is_err());
        assert!(Code::new(1, &[1; 7]).is_err());
        assert!(Code::new(0, &[2, 1, 1, 1, 1, 1, 1, 1, 1]).is_err());
        assert!(Code::new(5, &[]).is_err());
    }

    #[test]
    fn cremona_rules() {
        let c = Code::new(0, &[1, 1, 1, 1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(cremona_code(&c, 1, 2, 3).unwrap().signs()[..4], [-1, -1, -1, -1]);
        let c = Code::new(0, &[1, 1, -1, -1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(cremona_code(&c, 1, 2, 3).unwrap().signs()[..4], [-1, -1, 1, 1]);
        let c = Code::new(0, &[1, 1, 1, -1, 1, 1, 1, 1, -1]).unwrap();
        assert_eq!(cremona_code(&c, 1, 2, 3).unwrap(), c);
        assert!(cremona_code(&c, 1, 1, 3).is_err());
        assert!(cremona_code(&c, 1, 2, 9).is_err());
        let m = Code::new(1, &[1, -1, 1, 1, 1, -1, -1]).unwrap();
        let s = cremona_imaginary(&m, 1).unwrap();
        assert_eq!(s.signs()[..2], [-1, 1]);
        assert_eq!(cremona_imaginary(&s, 1).unwrap(), m);
        assert!(cremona_imaginary(&Code::canonical(0), 1).is_err());
    }

    #[test]
    fn normalization_reaches_uniform_codes() {
        let seed = Code::new(0, &[1, 1, 1, 1, 1, -1, -1, -1, -1]).unwrap();
        let (norm, path) = normalize_code(&seed);
        assert_eq!(norm, Code::canonical(0));
        let mut c = seed.clone();
        for m in &path {
            c = m.apply(&c).unwrap();
        }
        assert_eq!(c, norm);

        let seed = Code::new(1, &[1, 1, 1, 1, -1, -1, -1]).unwrap();
        let (norm, _) = normalize_code(&seed);
        assert_eq!(norm, Code::canonical(1));
        assert!(cremona_path(&seed, &Code::uniform(1, -1).unwrap()).is_some());

        let (same, path) = normalize_code(&Code::canonical(0));
        assert_eq!(same, Code::canonical(0));
        assert!(path.is_empty());
    }

    #[test]
    fn vanishing_basis_closed_form() {
        let b = VanishingBasis::new(vec![l(1) - l(2), l(3) - l(4)]).unwrap();
        let sum = l(1) - l(2) + l(3) - l(4);
        assert_eq!(qhat_vanishing_basis(&b, &(l(1) - l(2))).unwrap(), Qhat::ZERO);
        assert_eq!(qhat_vanishing_basis(&b, &sum).unwrap(), Qhat::ZERO);
        let a2 = VanishingBasis::new(vec![l(1) - l(2), l(2) - l(3)]).unwrap();
        assert_eq!(qhat_vanishing_basis(&a2, &(l(1) - l(3))).unwrap(), Qhat::TWO);
        assert_eq!(qhat_vanishing_recursive(&a2, &(l(1) - l(3))).unwrap(), Qhat::TWO);
        assert!(qhat_vanishing_basis(&a2, &(l(4) - l(5))).is_err());
    }

    #[test]
    fn odd_sign_is_an_error() {
        assert_eq!(Qhat::new(1).sign(), Err(Error::OddQhat(1)));
        assert_eq!(Qhat::new(-2).sign(), Ok(-1));
    }
}
