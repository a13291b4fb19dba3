//! Identification of simply-laced root systems inside `K^perp`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{enumerate_vectors, intersect, PicClass, Sublattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    E,
    D,
    A,
}

/// A root system type, e.g. `D4+A1` or `3A1`. `components` is kept sorted
/// (E before D before A, larger rank first) so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootSystemType {
    Known(Vec<(Family, usize)>),
    Unknown,
}

impl RootSystemType {
    pub fn new(mut components: Vec<(Family, usize)>) -> Self {
        components.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        RootSystemType::Known(components)
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            RootSystemType::Known(c) => Some(c.iter().map(|&(_, n)| n).sum()),
            RootSystemType::Unknown => None,
        }
    }

    /// Number of roots of the system.
    pub fn root_count(&self) -> Option<usize> {
        match self {
            RootSystemType::Known(c) => Some(c.iter().map(|&(f, n)| component_roots(f, n)).sum()),
            RootSystemType::Unknown => None,
        }
    }
}

fn component_roots(f: Family, n: usize) -> usize {
    match f {
        Family::A => n * (n + 1),
        Family::D => 2 * n * (n - 1),
        Family::E => match n {
            6 => 72,
            7 => 126,
            8 => 240,
            _ => 0,
        },
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps = match self {
            RootSystemType::Unknown => return write!(f, "unknown"),
            RootSystemType::Known(c) if c.is_empty() => return write!(f, "0"),
            RootSystemType::Known(c) => c,
        };
        let mut parts = Vec::new();
        let mut i = 0;
        while i < comps.len() {
            let mut j = i;
            while j < comps.len() && comps[j] == comps[i] {
                j += 1;
            }
            let (fam, n) = comps[i];
            let letter = match fam {
                Family::A => "A",
                Family::D => "D",
                Family::E => "E",
            };
            let mult = j - i;
            if mult > 1 {
                parts.push(format!("{mult}{letter}{n}"));
            } else {
                parts.push(format!("{letter}{n}"));
            }
            i = j;
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(RootSystemType::new(Vec::new()));
        }
        if s == "unknown" {
            return Ok(RootSystemType::Unknown);
        }
        let mut comps = Vec::new();
        for part in s.split('+') {
            let pos = part
                .find(['A', 'D', 'E'])
                .ok_or_else(|| Error::InvalidCode(format!("bad root system label `{s}`")))?;
            let mult: usize = if pos == 0 {
                1
            } else {
                part[..pos]
                    .parse()
                    .map_err(|_| Error::InvalidCode(format!("bad root system label `{s}`")))?
            };
            let fam = match &part[pos..pos + 1] {
                "A" => Family::A,
                "D" => Family::D,
                _ => Family::E,
            };
            let n: usize = part[pos + 1..]
                .parse()
                .map_err(|_| Error::InvalidCode(format!("bad root system label `{s}`")))?;
            comps.extend(std::iter::repeat_n((fam, n), mult));
        }
        Ok(RootSystemType::new(comps))
    }
}

/// Weights for the linear functional that splits roots into positive and
/// negative ones. Root coordinates are far below 8 in absolute value, so
/// base-16 digits keep the functional injective on them.
const POSITIVITY_WEIGHTS: [i64; 9] = [
    1 << 32,
    -(1 << 28),
    -(1 << 24),
    -(1 << 20),
    -(1 << 16),
    -(1 << 12),
    -(1 << 8),
    -(1 << 4),
    -1,
];

fn height_functional(x: &PicClass) -> i64 {
    x.0.iter().zip(POSITIVITY_WEIGHTS).map(|(a, w)| a * w).sum()
}

/// Simple roots of the positive system cut out by a fixed generic functional,
/// sorted descending by that functional.
pub fn simple_roots(roots: &[PicClass]) -> Result<Vec<PicClass>> {
    if roots.iter().any(|r| height_functional(r) == 0) {
        return Err(Error::InvalidCode("positivity functional vanishes on a root".into()));
    }
    let positive: Vec<PicClass> = roots.iter().copied().filter(|r| height_functional(r) > 0).collect();
    let pos_set: HashSet<PicClass> = positive.iter().copied().collect();
    let mut simple: Vec<PicClass> = positive
        .iter()
        .copied()
        .filter(|&r| !positive.iter().any(|&p| pos_set.contains(&(r - p))))
        .collect();
    simple.sort_by_key(|r| std::cmp::Reverse(height_functional(r)));
    Ok(simple)
}

/// Dynkin type of a set of simple roots, read off from their Gram matrix.
/// Returns `Unknown` if the Gram matrix is not that of a simply-laced
/// simple system.
pub fn dynkin_type(simple: &[PicClass]) -> RootSystemType {
    let n = simple.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        if simple[i].square() != -2 {
            return RootSystemType::Unknown;
        }
        for j in i + 1..n {
            match intersect(&simple[i], &simple[j]) {
                0 => {}
                1 => {
                    adj[i].push(j);
                    adj[j].push(i);
                }
                _ => return RootSystemType::Unknown,
            }
        }
    }
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut nodes = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < nodes.len() {
            for &m in &adj[nodes[k]] {
                if !seen[m] {
                    seen[m] = true;
                    nodes.push(m);
                }
            }
            k += 1;
        }
        match classify_tree(&nodes, &adj) {
            Some(c) => comps.push(c),
            None => return RootSystemType::Unknown,
        }
    }
    RootSystemType::new(comps)
}

fn classify_tree(nodes: &[usize], adj: &[Vec<usize>]) -> Option<(Family, usize)> {
    let n = nodes.len();
    let edges: usize = nodes.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges + 1 != n {
        return None;
    }
    let branch: Vec<usize> = nodes.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some((Family::A, n)),
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b].iter().map(|&s| arm_length(*b, s, adj)).collect();
            arms.sort();
            match (arms[0], arms[1], arms[2]) {
                (1, 1, c) => Some((Family::D, c + 3)),
                (1, 2, 2) => Some((Family::E, 6)),
                (1, 2, 3) => Some((Family::E, 7)),
                (1, 2, 4) => Some((Family::E, 8)),
                _ => None,
            }
        }
        _ => None,
    }
}

fn arm_length(from: usize, start: usize, adj: &[Vec<usize>]) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
        match next.as_slice() {
            [nx] => {
                prev = cur;
                cur = *nx;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// Root system type of a negative definite sublattice: enumerate its roots,
/// pick simple roots, identify the Dynkin diagram and check the root count.
pub fn root_system_type(lattice: &Sublattice) -> Result<RootSystemType> {
    if lattice.rank() == 0 {
        return Ok(RootSystemType::new(Vec::new()));
    }
    let roots = enumerate_vectors(lattice, -2)?;
    Ok(type_of_roots(&roots))
}

/// Type of a (closed, symmetric) set of roots.
pub fn type_of_roots(roots: &[PicClass]) -> RootSystemType {
    let Ok(simple) = simple_roots(roots) else {
        return RootSystemType::Unknown;
    };
    let t = dynkin_type(&simple);
    if t.root_count() != Some(roots.len()) {
        return RootSystemType::Unknown;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_roundtrip() {
        for s in ["E8", "E7", "D6", "D4+A1", "4A1", "D4", "3A1", "2A1", "A1", "0"] {
            let t: RootSystemType = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        let t: RootSystemType = "A1+D4".parse().unwrap();
        assert_eq!(t.to_string(), "D4+A1");
        assert_eq!("D4+A1".parse::<RootSystemType>().unwrap().root_count(), Some(26));
    }

    #[test]
    fn full_k_perp_is_e8() {
        let t = root_system_type(&Sublattice::k_perp()).unwrap();
        assert_eq!(t.to_string(), "E8");
    }

    #[test]
    fn rank_zero_is_zero() {
        assert_eq!(root_system_type(&Sublattice::zero()).unwrap().to_string(), "0");
    }

    #[test]
    fn standard_e8_basis_diagram() {
        let e8 = Sublattice::k_perp();
        assert_eq!(dynkin_type(e8.basis()).to_string(), "E8");
        assert_eq!(dynkin_type(&e8.basis()[..7]).to_string(), "E7");
        assert_eq!(dynkin_type(&e8.basis()[1..]).to_string(), "A7");
    }

    #[test]
    fn incomplete_root_set_is_unknown() {
        let e8 = Sublattice::k_perp();
        let mut roots = enumerate_vectors(&e8, -2).unwrap();
        roots.truncate(100);
        assert_eq!(type_of_roots(&roots), RootSystemType::Unknown);
    }
}
