//! Coxeter pairs `(W, J)`: naming, canonical keys up to diagram symmetry,
//! enumeration, and the families of pairs singled out by the classification.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::coxeter::{product_name, CoxeterError, CoxeterMatrix, Family, ParabolicSubset, WeylType};
use crate::poset::{bruhat_order, PointedPoset};
use crate::weyl::{self, enumerate_quotient, product_order, QuotientTable, WeylError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairError {
    #[error("some component of the Coxeter graph is not of finite Weyl type")]
    NotWeyl,
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// A Weyl group `W`, given by its Coxeter matrix, with a subset `J` of its
/// simple reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterPair {
    pub name: String,
    pub matrix: CoxeterMatrix,
    pub subset: ParabolicSubset,
    /// One type per connected component, in component order.
    pub types: Vec<WeylType>,
}

impl CoxeterPair {
    pub fn new(matrix: CoxeterMatrix, subset: ParabolicSubset) -> Result<CoxeterPair, PairError> {
        let types = matrix.identify().ok_or(PairError::NotWeyl)?;
        let mut pair = CoxeterPair {
            name: String::new(),
            matrix,
            subset,
            types,
        };
        pair.name = pair.default_name();
        Ok(pair)
    }

    /// The product of the standard matrices of `types` with `J` given by
    /// 0-based indices into the concatenated generators.
    pub fn standard(
        types: &[WeylType],
        subset: impl IntoIterator<Item = usize>,
    ) -> Result<CoxeterPair, PairError> {
        let m = CoxeterMatrix::weyl_product(types);
        let j = ParabolicSubset::new(&m, subset)?;
        CoxeterPair::new(m, j)
    }

    pub fn irreducible(t: WeylType, subset: &[usize]) -> CoxeterPair {
        CoxeterPair::standard(&[t], subset.iter().copied()).expect("subset within rank")
    }

    /// `W/JTYPE@{i,...}` with 1-based indices, or `W/1` for empty `J`.
    fn default_name(&self) -> String {
        let w = self.group_name();
        if self.subset.is_empty() {
            return format!("{w}/1");
        }
        let indices: Vec<String> = self.subset.members().iter().map(|g| (g + 1).to_string()).collect();
        format!("{w}/{}@{{{}}}", self.subset_type_name(), indices.join(","))
    }

    pub fn group_name(&self) -> String {
        self.types.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("x")
    }

    pub fn subset_types(&self) -> Vec<WeylType> {
        self.matrix
            .restrict(self.subset.members())
            .identify()
            .expect("parabolic subgroups of Weyl groups are Weyl")
    }

    pub fn subset_type_name(&self) -> String {
        product_name(&self.subset_types())
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn group_order(&self) -> u64 {
        product_order(&self.types)
    }

    /// `|W| / |W_J|`.
    pub fn quotient_size(&self) -> u64 {
        self.group_order() / product_order(&self.subset_types())
    }

    pub fn quotient_length(&self) -> usize {
        weyl::quotient_length(&self.matrix, &self.subset).expect("Weyl pairs are finite")
    }

    pub fn is_trivial(&self) -> bool {
        self.subset.len() == self.rank()
    }

    /// One irreducible pair per connected component, in component order.
    pub fn factors(&self) -> Vec<CoxeterPair> {
        self.matrix
            .connected_components()
            .iter()
            .map(|comp| {
                let m = self.matrix.restrict(comp);
                let j: Vec<usize> = comp
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| self.subset.contains(**g))
                    .map(|(i, _)| i)
                    .collect();
                let j = ParabolicSubset::new(&m, j).expect("restricted subset");
                CoxeterPair::new(m, j).expect("components of Weyl matrices are Weyl")
            })
            .collect()
    }

    /// Factors whose quotient has more than one element.
    pub fn essential_factors(&self) -> Vec<CoxeterPair> {
        self.factors().into_iter().filter(|f| !f.is_trivial()).collect()
    }

    /// Equal exactly for pairs related by an isomorphism of Coxeter systems
    /// carrying one `J` to the other.
    pub fn symmetry_key(&self) -> String {
        let factors = self.factors();
        if factors.len() == 1 {
            let t = self.types[0];
            let standard = CoxeterMatrix::weyl(t);
            let best = self
                .matrix
                .isomorphisms(&standard)
                .iter()
                .map(|phi| self.subset.permuted(phi))
                .min()
                .expect("identified matrices are isomorphic to the standard one");
            let members: Vec<String> = best.members().iter().map(|g| (g + 1).to_string()).collect();
            return format!("{t}@{{{}}}", members.join(","));
        }
        let mut keys: Vec<String> = factors.iter().map(|f| f.symmetry_key()).collect();
        keys.sort();
        keys.join("x")
    }

    /// [`CoxeterPair::symmetry_key`] after discarding factors with trivial
    /// quotient; `1` when nothing is left.
    pub fn reduced_key(&self) -> String {
        let mut keys: Vec<String> = self.essential_factors().iter().map(|f| f.symmetry_key()).collect();
        if keys.is_empty() {
            return "1".to_string();
        }
        keys.sort();
        keys.join("x")
    }

    pub fn enumerate(&self, cap: Option<usize>) -> Result<QuotientTable<i64>, WeylError> {
        enumerate_quotient::<i64>(&self.matrix, &self.subset, cap)
    }

    pub fn poset(&self, cap: Option<usize>) -> Result<PointedPoset, WeylError> {
        Ok(bruhat_order(&self.enumerate(cap)?))
    }
}

impl fmt::Display for CoxeterPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn all_subsets(t: WeylType) -> impl Iterator<Item = CoxeterPair> {
    let m = CoxeterMatrix::weyl(t);
    (0u64..1 << t.rank()).map(move |mask| {
        CoxeterPair::new(m.clone(), ParabolicSubset::from_mask(&m, mask)).expect("Weyl type")
    })
}

/// Keeps the first pair of each symmetry key, in input order.
pub fn dedup_pairs(pairs: impl IntoIterator<Item = CoxeterPair>) -> Vec<CoxeterPair> {
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for p in pairs {
        if seen.insert(p.symmetry_key(), ()).is_none() {
            out.push(p);
        }
    }
    out
}

/// Every irreducible pair of rank at most `max_rank`, one per diagram
/// symmetry class.
pub fn irreducible_pairs(max_rank: usize) -> Vec<CoxeterPair> {
    dedup_pairs(WeylType::all_up_to(max_rank).into_iter().flat_map(all_subsets))
}

/// Every pair `(W1 x W2, J)` with both factors irreducible and total rank at
/// most `max_rank`, up to symmetry (including swapping the factors).
pub fn two_factor_pairs(max_rank: usize) -> Vec<CoxeterPair> {
    let types = WeylType::all_up_to(max_rank);
    let mut out = Vec::new();
    for (i, &a) in types.iter().enumerate() {
        for &b in &types[i..] {
            if a.rank() + b.rank() > max_rank {
                continue;
            }
            let m = CoxeterMatrix::weyl_product(&[a, b]);
            for mask in 0u64..1 << m.rank() {
                out.push(CoxeterPair::new(m.clone(), ParabolicSubset::from_mask(&m, mask)).unwrap());
            }
        }
    }
    dedup_pairs(out)
}

/// Every multiset of irreducible types with total rank at most `max_rank`
/// and group order at most `max_order`, each listed once.
pub fn type_products(max_rank: usize, max_order: u64) -> Vec<Vec<WeylType>> {
    fn extend(
        types: &[WeylType],
        from: usize,
        current: &mut Vec<WeylType>,
        rank_left: usize,
        max_order: u64,
        out: &mut Vec<Vec<WeylType>>,
    ) {
        for (i, &t) in types.iter().enumerate().skip(from) {
            if t.rank() > rank_left {
                continue;
            }
            current.push(t);
            if product_order(current) <= max_order {
                out.push(current.clone());
                extend(types, i, current, rank_left - t.rank(), max_order, out);
            }
            current.pop();
        }
    }
    let types = WeylType::all_up_to(max_rank);
    let mut out = Vec::new();
    extend(&types, 0, &mut Vec::new(), max_rank, max_order, &mut out);
    out
}

/// `(W, J)` for every subset `J` of the standard product of `types`, with no
/// identification under symmetry.
pub fn all_pairs_of(types: &[WeylType]) -> Vec<CoxeterPair> {
    let m = CoxeterMatrix::weyl_product(types);
    (0u64..1 << m.rank())
        .map(|mask| CoxeterPair::new(m.clone(), ParabolicSubset::from_mask(&m, mask)).expect("Weyl type"))
        .collect()
}

fn ty(family: Family, rank: usize) -> WeylType {
    WeylType::new(family, rank).expect("valid type")
}

/// The predicted coincidence classes among irreducible pairs of rank at most
/// `rank_bound`: the infinite families restricted to the bound (classes
/// sharing a pair are merged), then the class of all one-point quotients.
pub fn expected_coincidences(rank_bound: usize) -> Vec<Vec<CoxeterPair>> {
    use Family::*;
    let mut raw: Vec<Vec<CoxeterPair>> = Vec::new();
    // A_{2n+1} / A_{2n}  and  B_{n+1} / B_n, n >= 2.
    for n in 2.. {
        if n + 1 > rank_bound {
            break;
        }
        let mut class = vec![CoxeterPair::irreducible(ty(B, n + 1), &(1..=n).collect::<Vec<_>>())];
        if 2 * n < rank_bound {
            class.push(CoxeterPair::irreducible(ty(A, 2 * n + 1), &(0..2 * n).collect::<Vec<_>>()));
        }
        raw.push(class);
    }
    // B_n / A_{n-1}  and  D_{n+1} / A_n, n >= 3.
    for n in 3..rank_bound.max(3) {
        let b = CoxeterPair::irreducible(ty(B, n), &(0..n - 1).collect::<Vec<_>>());
        let d = CoxeterPair::irreducible(ty(D, n + 1), &(0..n).collect::<Vec<_>>());
        raw.push(vec![b, d]);
    }
    if rank_bound >= 3 {
        raw.push(vec![
            CoxeterPair::irreducible(ty(A, 3), &[0, 1]),
            CoxeterPair::irreducible(ty(B, 2), &[0]),
        ]);
    }
    if rank_bound >= 2 {
        let mut class = vec![CoxeterPair::irreducible(ty(G, 2), &[0])];
        if rank_bound >= 3 {
            class.push(CoxeterPair::irreducible(ty(B, 3), &[1, 2]));
        }
        if rank_bound >= 5 {
            class.push(CoxeterPair::irreducible(ty(A, 5), &[0, 1, 2, 3]));
        }
        raw.push(class);
    }
    let mut classes = merge_classes(raw);
    classes.retain(|c| c.len() >= 2);
    let trivial: Vec<CoxeterPair> = WeylType::all_up_to(rank_bound)
        .into_iter()
        .map(|t| CoxeterPair::irreducible(t, &(0..t.rank()).collect::<Vec<_>>()))
        .collect();
    if trivial.len() >= 2 {
        classes.push(trivial);
    }
    classes
}

/// Unions classes sharing a symmetry key; members deduplicated, classes
/// and members sorted by name.
fn merge_classes(raw: Vec<Vec<CoxeterPair>>) -> Vec<Vec<CoxeterPair>> {
    let mut merged: Vec<BTreeMap<String, CoxeterPair>> = Vec::new();
    for class in raw {
        let mut incoming: BTreeMap<String, CoxeterPair> =
            class.into_iter().map(|p| (p.symmetry_key(), p)).collect();
        merged.retain(|existing| {
            if existing.keys().any(|k| incoming.contains_key(k)) {
                for (k, p) in existing {
                    incoming.entry(k.clone()).or_insert_with(|| p.clone());
                }
                false
            } else {
                true
            }
        });
        merged.push(incoming);
    }
    let mut out: Vec<Vec<CoxeterPair>> = merged
        .into_iter()
        .map(|m| {
            let mut v: Vec<CoxeterPair> = m.into_values().collect();
            v.sort_by(|a, b| a.name.cmp(&b.name));
            v
        })
        .collect();
    out.sort_by(|a, b| a[0].name.cmp(&b[0].name));
    out
}

/// One instance of the two bw-graph-only families.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub family: &'static str,
    pub m: usize,
    pub n: usize,
    pub left: CoxeterPair,
    pub right: CoxeterPair,
    /// Predicted `length(left) - length(right)`.
    pub length_difference: i64,
}

fn subsets_of(range: std::ops::Range<usize>) -> Vec<Vec<usize>> {
    let items: Vec<usize> = range.collect();
    (0u64..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &g)| g)
                .collect()
        })
        .collect()
}

/// All instances with `m <= m_bound`, `2 <= n <= n_bound` and
/// `m + n <= sum_bound`. In the D family both choices of fork are listed.
pub fn lemnew_instances(m_bound: usize, n_bound: usize, sum_bound: usize) -> Vec<FamilyInstance> {
    use Family::*;
    let mut out = Vec::new();
    for m in 1..=m_bound {
        for n in 2..=n_bound {
            if m + n > sum_bound {
                continue;
            }
            let r = m + n;
            // B_{m+n} with P x A_{n-1} against D_{m+n+1} with P x A_n.
            for p in subsets_of(0..m.saturating_sub(1)) {
                let mut jb = p.clone();
                jb.extend(m..r - 1);
                let left = CoxeterPair::irreducible(ty(B, r), &jb);
                for fork in [r - 1, r] {
                    let mut jd = p.clone();
                    jd.extend(m..r - 1);
                    jd.push(fork);
                    out.push(FamilyInstance {
                        family: "B/D",
                        m,
                        n,
                        left: left.clone(),
                        right: CoxeterPair::irreducible(ty(D, r + 1), &jd),
                        length_difference: -(m as i64),
                    });
                }
            }
            // B_{m+n} with Q x B_{n-1} against A_{m+2n-1} with Q x A_{2n-2}.
            for q in subsets_of(0..m) {
                let mut jb = q.clone();
                jb.extend(m + 1..r);
                let mut ja = q.clone();
                ja.extend(m + 1..m + 2 * n - 1);
                out.push(FamilyInstance {
                    family: "B/A",
                    m,
                    n,
                    left: CoxeterPair::irreducible(ty(B, r), &jb),
                    right: CoxeterPair::irreducible(ty(A, m + 2 * n - 1), &ja),
                    length_difference: (m * (m + 1) / 2) as i64,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> WeylType {
        s.parse().unwrap()
    }

    #[test]
    fn names() {
        let p = CoxeterPair::irreducible(t("F4"), &[1, 2, 3]);
        assert_eq!(p.name, "F4/B3@{2,3,4}");
        assert_eq!(CoxeterPair::irreducible(t("A3"), &[]).name, "A3/1");
        let p = CoxeterPair::standard(&[t("A2"), t("B2")], [0, 2]).unwrap();
        assert_eq!(p.name, "A2xB2/A1xA1@{1,3}");
        assert_eq!(p.quotient_size(), 48 / 4);
    }

    #[test]
    fn keys_identify_symmetric_subsets() {
        let a = CoxeterPair::irreducible(t("A4"), &[0]);
        let b = CoxeterPair::irreducible(t("A4"), &[3]);
        assert_eq!(a.symmetry_key(), b.symmetry_key());
        let c = CoxeterPair::irreducible(t("A4"), &[1]);
        assert_ne!(a.symmetry_key(), c.symmetry_key());
        let d4: Vec<String> = [[0, 1, 2], [0, 1, 3], [1, 2, 3]]
            .iter()
            .map(|j| CoxeterPair::irreducible(t("D4"), j).symmetry_key())
            .collect();
        assert!(d4.iter().all(|k| k == &d4[0]));
        // Trivial factors drop out.
        let p = CoxeterPair::standard(&[t("A2"), t("A1")], [2]).unwrap();
        assert_eq!(p.reduced_key(), CoxeterPair::irreducible(t("A2"), &[]).reduced_key());
        assert_ne!(p.symmetry_key(), CoxeterPair::irreducible(t("A2"), &[]).symmetry_key());
        let full = CoxeterPair::irreducible(t("E6"), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(full.reduced_key(), "1");
        assert_eq!(full.symmetry_key(), "E6@{1,2,3,4,5,6}");
        let swapped = CoxeterPair::standard(&[t("A1"), t("A2")], [0]).unwrap();
        assert_eq!(p.symmetry_key(), swapped.symmetry_key());
    }

    #[test]
    fn enumeration_counts() {
        // A3: subsets up to reversal.
        let a3 = irreducible_pairs(3).into_iter().filter(|p| p.types[0] == t("A3")).count();
        assert_eq!(a3, 6);
        let d4 = irreducible_pairs(4).into_iter().filter(|p| p.types[0] == t("D4")).count();
        // Orbits of the symmetric group on the three leaves, times the centre.
        assert_eq!(d4, 2 * 4);
        let products = two_factor_pairs(2);
        // A1xA1 up to swap: {}, {one}, {both}.
        assert_eq!(products.len(), 3);
    }

    #[test]
    fn expected_classes() {
        let names = |bound| -> Vec<Vec<String>> {
            expected_coincidences(bound)
                .iter()
                .map(|c| c.iter().map(|p| p.name.clone()).collect())
                .collect()
        };
        let six = names(6);
        assert!(six.contains(&vec![
            "A5/A4@{1,2,3,4}".to_string(),
            "B3/B2@{2,3}".to_string(),
            "G2/A1@{1}".to_string()
        ]));
        assert!(names(7).contains(&vec!["B3/A2@{1,2}".to_string(), "D4/A3@{1,2,3}".to_string()]));
        assert!(names(4).contains(&vec!["A3/A2@{1,2}".to_string(), "B2/A1@{1}".to_string()]));
        let five = expected_coincidences(5);
        assert_eq!(five.len(), 5);
        assert!(five.last().unwrap().iter().all(|p| p.is_trivial()));
    }

    #[test]
    fn family_instances() {
        let all = lemnew_instances(2, 2, 4);
        let first = all
            .iter()
            .find(|i| i.family == "B/D" && i.m == 1)
            .unwrap();
        assert_eq!(first.left.name, "B3/A1@{2}");
        assert_eq!(first.right.name, "D4/A2@{2,3}");
        let first = all.iter().find(|i| i.family == "B/A" && i.m == 1).unwrap();
        assert_eq!(first.left.name, "B3/A1@{3}");
        assert_eq!(first.right.name, "A4/A2@{3,4}");
        for inst in &all {
            let diff = inst.left.quotient_length() as i64 - inst.right.quotient_length() as i64;
            assert_eq!(diff, inst.length_difference, "{} {}", inst.left, inst.right);
        }
    }
}
