//! Coxeter matrices, the named Weyl constructors and parabolic subsets.
//!
//! Generators are numbered `0..rank`. The named constructors follow one
//! fixed numbering so that parabolic subsets written as index lists mean the
//! same thing everywhere:
//!
//! * `A_n`, `B_n`, `F_4`, `G_2`: a chain `s_0 - s_1 - ... - s_{n-1}`; in
//!   `B_n` the bond 4 joins the last two generators, in `F_4` it is the
//!   middle bond.
//! * `D_n`: a chain `s_0 - ... - s_{n-3}` with the two fork generators
//!   `s_{n-2}` and `s_{n-1}` both attached to `s_{n-3}`.
//! * `E_n`: a chain `s_0 - ... - s_{n-2}` with the branch generator
//!   `s_{n-1}` attached to `s_2`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("invalid rank {rank} for type {family}")]
    InvalidRank { family: Family, rank: usize },
    #[error("unknown Weyl type `{0}`")]
    UnknownType(String),
    #[error("coxeter matrix is not square")]
    NotSquare,
    #[error("coxeter matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("diagonal entry m({0},{0}) must be 1")]
    BadDiagonal(usize),
    #[error("off-diagonal entry m({0},{1}) must be at least 2")]
    BadBond(usize, usize),
    #[error("generator {generator} is out of range for rank {rank}")]
    GeneratorOutOfRange { generator: usize, rank: usize },
}

/// A Coxeter matrix entry `m(s, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bond {
    Finite(u32),
    Infinite,
}

impl Bond {
    pub fn finite(self) -> Option<u32> {
        match self {
            Bond::Finite(m) => Some(m),
            Bond::Infinite => None,
        }
    }

    /// True when the two generators do not commute (an edge of the Coxeter graph).
    pub fn is_edge(self) -> bool {
        self > Bond::Finite(2)
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Bond {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Bond::Finite(m) => serializer.serialize_u32(*m),
            Bond::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Bond {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u32),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(m) => Ok(Bond::Finite(m)),
            Raw::Text(s) if s == "inf" => Ok(Bond::Infinite),
            Raw::Text(s) => Err(serde::de::Error::custom(format!("invalid bond `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
        };
        f.write_str(c)
    }
}

/// An irreducible finite Weyl type such as `B3` or `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylType {
    family: Family,
    rank: usize,
}

impl WeylType {
    pub fn new(family: Family, rank: usize) -> Result<Self, CoxeterError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(WeylType { family, rank })
        } else {
            Err(CoxeterError::InvalidRank { family, rank })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Every irreducible Weyl type with rank at most `max_rank`, in a fixed order.
    pub fn all_up_to(max_rank: usize) -> Vec<WeylType> {
        let mut out = Vec::new();
        for rank in 1..=max_rank {
            for family in [Family::A, Family::B, Family::D, Family::E, Family::F, Family::G] {
                if let Ok(t) = WeylType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for WeylType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for WeylType {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(CoxeterError::UnknownType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| CoxeterError::UnknownType(s.to_string()))?;
        WeylType::new(family, rank)
    }
}

/// A symmetric Coxeter matrix on generators `0..rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    bonds: Vec<Bond>,
}

impl CoxeterMatrix {
    pub fn new(rows: Vec<Vec<Bond>>) -> Result<Self, CoxeterError> {
        let rank = rows.len();
        if rows.iter().any(|r| r.len() != rank) {
            return Err(CoxeterError::NotSquare);
        }
        for i in 0..rank {
            if rows[i][i] != Bond::Finite(1) {
                return Err(CoxeterError::BadDiagonal(i));
            }
            for j in 0..rank {
                if rows[i][j] != rows[j][i] {
                    return Err(CoxeterError::NotSymmetric(i, j));
                }
                if i != j && rows[i][j] < Bond::Finite(2) {
                    return Err(CoxeterError::BadBond(i, j));
                }
            }
        }
        Ok(CoxeterMatrix {
            rank,
            bonds: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix in which every pair commutes except the listed edges.
    pub fn from_edges(rank: usize, edges: &[(usize, usize, Bond)]) -> Result<Self, CoxeterError> {
        let mut rows = vec![vec![Bond::Finite(2); rank]; rank];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Bond::Finite(1);
        }
        for &(a, b, m) in edges {
            for g in [a, b] {
                if g >= rank {
                    return Err(CoxeterError::GeneratorOutOfRange { generator: g, rank });
                }
            }
            rows[a][b] = m;
            rows[b][a] = m;
        }
        CoxeterMatrix::new(rows)
    }

    /// The Coxeter matrix of a named irreducible Weyl type.
    pub fn weyl(t: WeylType) -> CoxeterMatrix {
        let n = t.rank();
        let three = Bond::Finite(3);
        let mut edges: Vec<(usize, usize, Bond)> = Vec::new();
        match t.family() {
            Family::A => {
                edges.extend((1..n).map(|i| (i - 1, i, three)));
            }
            Family::B => {
                edges.extend((1..n - 1).map(|i| (i - 1, i, three)));
                edges.push((n - 2, n - 1, Bond::Finite(4)));
            }
            Family::D => {
                edges.extend((1..n - 1).map(|i| (i - 1, i, three)));
                edges.push((n - 3, n - 1, three));
            }
            Family::E => {
                edges.extend((1..n - 1).map(|i| (i - 1, i, three)));
                edges.push((2, n - 1, three));
            }
            Family::F => {
                edges.push((0, 1, three));
                edges.push((1, 2, Bond::Finite(4)));
                edges.push((2, 3, three));
            }
            Family::G => edges.push((0, 1, Bond::Finite(6))),
        }
        CoxeterMatrix::from_edges(n, &edges).expect("named Weyl types are well formed")
    }

    /// Disjoint union; generators of later factors are shifted past earlier ones.
    pub fn product(ms: &[CoxeterMatrix]) -> CoxeterMatrix {
        let rank: usize = ms.iter().map(|m| m.rank).sum();
        let mut edges = Vec::new();
        let mut offset = 0;
        for m in ms {
            for i in 0..m.rank {
                for j in i + 1..m.rank {
                    let b = m.bond(i, j);
                    if b != Bond::Finite(2) {
                        edges.push((offset + i, offset + j, b));
                    }
                }
            }
            offset += m.rank;
        }
        CoxeterMatrix::from_edges(rank, &edges).expect("product of valid matrices")
    }

    /// Product of named types, e.g. `[A2, B2]`.
    pub fn weyl_product(types: &[WeylType]) -> CoxeterMatrix {
        let ms: Vec<_> = types.iter().map(|&t| CoxeterMatrix::weyl(t)).collect();
        CoxeterMatrix::product(&ms)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bond(&self, i: usize, j: usize) -> Bond {
        self.bonds[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<Bond>> {
        self.bonds.chunks(self.rank.max(1)).take(self.rank).map(|r| r.to_vec()).collect()
    }

    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&j| j != i && self.bond(i, j).is_edge())
    }

    /// Edges `(i, j, m)` with `i < j` and `m > 2`.
    pub fn edges(&self) -> Vec<(usize, usize, Bond)> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                if self.bond(i, j).is_edge() {
                    out.push((i, j, self.bond(i, j)));
                }
            }
        }
        out
    }

    /// All off-diagonal entries lie in {2, 3, 4, 6}.
    pub fn is_crystallographic(&self) -> bool {
        (0..self.rank).all(|i| {
            (0..self.rank).all(|j| {
                i == j || matches!(self.bond(i, j), Bond::Finite(2 | 3 | 4 | 6))
            })
        })
    }

    /// Restriction to the listed generators, renumbered in the given order.
    pub fn restrict(&self, generators: &[usize]) -> CoxeterMatrix {
        let rows = generators
            .iter()
            .map(|&i| generators.iter().map(|&j| self.bond(i, j)).collect())
            .collect();
        CoxeterMatrix::new(rows).expect("restriction of a valid matrix")
    }

    /// Connected components of the Coxeter graph, each sorted, ordered by least member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.components_within(&(0..self.rank).collect::<Vec<_>>())
    }

    /// Components of the induced subgraph on `vertices`.
    pub fn components_within(&self, vertices: &[usize]) -> Vec<Vec<usize>> {
        let inside: BTreeSet<usize> = vertices.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &inside {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbours(v) {
                    if inside.contains(&w) && seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected and acyclic.
    pub fn is_simple(&self) -> bool {
        self.rank > 0
            && self.connected_components().len() == 1
            && self.edges().len() == self.rank - 1
    }

    /// All permutations `p` of the generators with `m(p(i), p(j)) = m(i, j)`.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        self.isomorphisms(self)
    }

    /// All bijections `p` onto the generators of `other` with
    /// `other(p(i), p(j)) = m(i, j)`.
    pub fn isomorphisms(&self, other: &CoxeterMatrix) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if self.rank != other.rank {
            return out;
        }
        let mut image = vec![usize::MAX; self.rank];
        let mut used = vec![false; self.rank];
        self.extend_isomorphism(other, 0, &mut image, &mut used, &mut out);
        out
    }

    fn extend_isomorphism(
        &self,
        other: &CoxeterMatrix,
        i: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == self.rank {
            out.push(image.clone());
            return;
        }
        for cand in 0..self.rank {
            if used[cand] {
                continue;
            }
            if (0..i).all(|j| self.bond(i, j) == other.bond(cand, image[j])) {
                image[i] = cand;
                used[cand] = true;
                self.extend_isomorphism(other, i + 1, image, used, out);
                used[cand] = false;
                image[i] = usize::MAX;
            }
        }
    }

    /// Names the matrix as a product of irreducible Weyl types (one per
    /// component, in component order), or `None` if some component is not
    /// of finite Weyl type.
    pub fn identify(&self) -> Option<Vec<WeylType>> {
        self.connected_components()
            .iter()
            .map(|c| identify_connected(&self.restrict(c)))
            .collect()
    }
}

fn identify_connected(m: &CoxeterMatrix) -> Option<WeylType> {
    let n = m.rank();
    if n == 1 {
        return WeylType::new(Family::A, 1).ok();
    }
    if !m.is_simple() {
        return None;
    }
    let edges = m.edges();
    let labels: Vec<Bond> = edges.iter().map(|e| e.2).collect();
    let degree = |v: usize| m.neighbours(v).count();
    let count = |b: u32| labels.iter().filter(|&&l| l == Bond::Finite(b)).count();
    if labels.iter().any(|l| !matches!(l, Bond::Finite(3 | 4 | 6))) {
        return None;
    }
    if count(6) > 0 {
        return (n == 2).then(|| WeylType::new(Family::G, 2).unwrap());
    }
    let max_degree = (0..n).map(degree).max().unwrap_or(0);
    match count(4) {
        0 => {}
        1 => {
            if max_degree > 2 {
                return None;
            }
            let (a, b, _) = *edges.iter().find(|e| e.2 == Bond::Finite(4)).unwrap();
            let at_end = degree(a) == 1 || degree(b) == 1;
            if at_end {
                return WeylType::new(Family::B, n).ok();
            }
            return (n == 4).then(|| WeylType::new(Family::F, 4).unwrap());
        }
        _ => return None,
    }
    if max_degree <= 2 {
        return WeylType::new(Family::A, n).ok();
    }
    let branches: Vec<usize> = (0..n).filter(|&v| degree(v) >= 3).collect();
    if branches.len() != 1 || degree(branches[0]) != 3 {
        return None;
    }
    let centre = branches[0];
    let mut arms: Vec<usize> = m
        .neighbours(centre)
        .map(|start| {
            let (mut prev, mut cur, mut len) = (centre, start, 1);
            loop {
                let next: Vec<usize> = m.neighbours(cur).filter(|&w| w != prev).collect();
                match next.as_slice() {
                    [] => break len,
                    [w] => {
                        prev = cur;
                        cur = *w;
                        len += 1;
                    }
                    _ => break usize::MAX,
                }
            }
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, k] => WeylType::new(Family::D, k + 3).ok(),
        [1, 2, 2] => WeylType::new(Family::E, 6).ok(),
        [1, 2, 3] => WeylType::new(Family::E, 7).ok(),
        [1, 2, 4] => WeylType::new(Family::E, 8).ok(),
        _ => None,
    }
}

/// Formats a product of types as `A3xA1`, larger factors first; the empty
/// product is `1`.
pub fn product_name(types: &[WeylType]) -> String {
    if types.is_empty() {
        return "1".to_string();
    }
    let mut sorted = types.to_vec();
    sorted.sort_by(|a, b| b.rank().cmp(&a.rank()).then(a.family().cmp(&b.family())));
    sorted.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("x")
}

impl Serialize for CoxeterMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoxeterMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Bond>>::deserialize(deserializer)?;
        CoxeterMatrix::new(rows).map_err(serde::de::Error::custom)
    }
}

/// A subset `J` of the generators of some Coxeter matrix.
///
/// Serialised as the sorted list of generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParabolicSubset(Vec<usize>);

impl ParabolicSubset {
    pub fn new(
        ambient: &CoxeterMatrix,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, CoxeterError> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&g) = set.iter().find(|&&g| g >= ambient.rank()) {
            return Err(CoxeterError::GeneratorOutOfRange {
                generator: g,
                rank: ambient.rank(),
            });
        }
        Ok(ParabolicSubset(set.into_iter().collect()))
    }

    pub fn empty() -> Self {
        ParabolicSubset(Vec::new())
    }

    pub fn full(ambient: &CoxeterMatrix) -> Self {
        ParabolicSubset((0..ambient.rank()).collect())
    }

    /// Subset given by the set bits of `mask`.
    pub fn from_mask(ambient: &CoxeterMatrix, mask: u64) -> Self {
        ParabolicSubset((0..ambient.rank()).filter(|&i| mask >> i & 1 == 1).collect())
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |acc, &i| acc | 1 << i)
    }

    pub fn contains(&self, g: usize) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `S \ J` for an ambient matrix of the given rank.
    pub fn complement(&self, rank: usize) -> Vec<usize> {
        (0..rank).filter(|&g| !self.contains(g)).collect()
    }

    /// Image under a generator permutation.
    pub fn permuted(&self, perm: &[usize]) -> ParabolicSubset {
        let mut v: Vec<usize> = self.0.iter().map(|&g| perm[g]).collect();
        v.sort_unstable();
        ParabolicSubset(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> WeylType {
        s.parse().unwrap()
    }

    #[test]
    fn rank_bounds() {
        assert!(WeylType::new(Family::A, 0).is_err());
        assert!(WeylType::new(Family::B, 1).is_err());
        assert!(WeylType::new(Family::D, 3).is_err());
        assert!(WeylType::new(Family::E, 9).is_err());
        assert!(WeylType::new(Family::F, 3).is_err());
        assert!(WeylType::new(Family::G, 3).is_err());
        assert!("H3".parse::<WeylType>().is_err());
        assert_eq!(t("e6").to_string(), "E6");
    }

    #[test]
    fn named_constructors() {
        let g2 = CoxeterMatrix::weyl(t("G2"));
        assert_eq!(g2.bond(0, 1), Bond::Finite(6));
        let a1 = CoxeterMatrix::weyl(t("A1"));
        assert_eq!(a1.rank(), 1);
        assert!(a1.edges().is_empty());
        let b3 = CoxeterMatrix::weyl(t("B3"));
        assert_eq!(b3.bond(0, 1), Bond::Finite(3));
        assert_eq!(b3.bond(1, 2), Bond::Finite(4));
        assert_eq!(b3.bond(0, 2), Bond::Finite(2));
        let d5 = CoxeterMatrix::weyl(t("D5"));
        assert_eq!(d5.neighbours(2).collect::<Vec<_>>(), vec![1, 3, 4]);
        let e6 = CoxeterMatrix::weyl(t("E6"));
        assert_eq!(e6.neighbours(2).collect::<Vec<_>>(), vec![1, 3, 5]);
    }

    #[test]
    fn products_and_components() {
        let a1 = CoxeterMatrix::weyl(t("A1"));
        let p = CoxeterMatrix::product(&[a1.clone(), a1]);
        assert_eq!(p.rank(), 2);
        assert_eq!(p.bond(0, 1), Bond::Finite(2));

        let p = CoxeterMatrix::weyl_product(&[t("A3"), t("A1")]);
        assert_eq!(p.rank(), 4);
        assert_eq!(p.bond(0, 1), Bond::Finite(3));
        assert!((0..3).all(|i| p.bond(i, 3) == Bond::Finite(2)));

        let p = CoxeterMatrix::weyl_product(&[t("B2"), t("G2")]);
        assert_eq!(p.bond(0, 1), Bond::Finite(4));
        assert_eq!(p.bond(2, 3), Bond::Finite(6));
        assert_eq!(p.connected_components(), vec![vec![0, 1], vec![2, 3]]);

        let p = CoxeterMatrix::weyl_product(&[t("A2"), t("B2")]);
        let sizes: Vec<usize> = p.connected_components().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![2, 2]);
        assert_eq!(CoxeterMatrix::weyl(t("E6")).connected_components().len(), 1);
        assert!(CoxeterMatrix::product(&[]).connected_components().is_empty());
    }

    #[test]
    fn simplicity() {
        assert!(CoxeterMatrix::weyl(t("E8")).is_simple());
        assert!(!CoxeterMatrix::weyl_product(&[t("A1"), t("A1")]).is_simple());
        let three = Bond::Finite(3);
        let cycle = CoxeterMatrix::from_edges(3, &[(0, 1, three), (1, 2, three), (0, 2, three)]);
        assert!(!cycle.unwrap().is_simple());
    }

    #[test]
    fn invalid_matrices() {
        let f = Bond::Finite;
        assert_eq!(
            CoxeterMatrix::new(vec![vec![f(1), f(3)], vec![f(4), f(1)]]),
            Err(CoxeterError::NotSymmetric(0, 1))
        );
        assert_eq!(
            CoxeterMatrix::new(vec![vec![f(2)]]),
            Err(CoxeterError::BadDiagonal(0))
        );
        assert_eq!(
            CoxeterMatrix::new(vec![vec![f(1), f(1)], vec![f(1), f(1)]]),
            Err(CoxeterError::BadBond(0, 1))
        );
        // Non-Weyl entries are allowed by the type itself.
        let h = CoxeterMatrix::from_edges(2, &[(0, 1, Bond::Finite(5))]).unwrap();
        assert!(!h.is_crystallographic());
        assert!(CoxeterMatrix::from_edges(2, &[(0, 1, Bond::Infinite)]).is_ok());
    }

    #[test]
    fn identification() {
        for ty in WeylType::all_up_to(8) {
            assert_eq!(CoxeterMatrix::weyl(ty).identify(), Some(vec![ty]), "{ty}");
        }
        let f4 = CoxeterMatrix::weyl(t("F4"));
        assert_eq!(f4.restrict(&[1, 2, 3]).identify(), Some(vec![t("B3")]));
        assert_eq!(f4.restrict(&[0, 1, 2]).identify(), Some(vec![t("B3")]));
        let e6 = CoxeterMatrix::weyl(t("E6"));
        assert_eq!(e6.restrict(&[1, 2, 3, 4, 5]).identify(), Some(vec![t("D5")]));
        let j = e6.restrict(&[0, 1, 2, 4]);
        assert_eq!(product_name(&j.identify().unwrap()), "A3xA1");
        assert_eq!(product_name(&[]), "1");
    }

    #[test]
    fn automorphism_counts() {
        let count = |s: &str| CoxeterMatrix::weyl(t(s)).automorphisms().len();
        assert_eq!(count("A1"), 1);
        assert_eq!(count("A4"), 2);
        assert_eq!(count("B3"), 1);
        assert_eq!(count("B2"), 2);
        assert_eq!(count("D4"), 6);
        assert_eq!(count("D5"), 2);
        assert_eq!(count("E6"), 2);
        assert_eq!(count("E7"), 1);
        assert_eq!(count("F4"), 2);
        assert_eq!(count("G2"), 2);
    }

    #[test]
    fn parabolic_subsets() {
        let b3 = CoxeterMatrix::weyl(t("B3"));
        assert!(ParabolicSubset::new(&b3, [0, 3]).is_err());
        let j = ParabolicSubset::new(&b3, [2, 0, 2]).unwrap();
        assert_eq!(j.members(), &[0, 2]);
        assert_eq!(j.complement(3), vec![1]);
        assert_eq!(ParabolicSubset::from_mask(&b3, j.mask()), j);
        assert_eq!(serde_json::to_string(&j).unwrap(), "[0,2]");
    }
}
