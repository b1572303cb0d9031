//! Brute-force ground truth for small Weyl groups.
//!
//! Elements are integer matrices of the reflection representation in the
//! simple-root basis, found by breadth-first search over right
//! multiplication. Nothing here touches the weight-orbit engine; the two
//! meet only through reduced words.

use std::collections::HashMap;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::coxeter::{Bond, CoxeterMatrix, ParabolicSubset};
use crate::poset::PointedPoset;

pub const DEFAULT_GROUP_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("bond {2} between {0} and {1} has no integral reflection representation")]
    NotCrystallographic(usize, usize, Bond),
    #[error("group has more than {cap} elements")]
    CapExceeded { cap: usize },
}

type Matrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub matrix: Matrix,
    /// A reduced word `s_{w[0]} s_{w[1]} ...`.
    pub word: Vec<usize>,
}

impl GroupElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// A finite Weyl group with its right multiplication table.
#[derive(Clone, Debug)]
pub struct Group {
    rank: usize,
    elements: Vec<GroupElement>,
    right: Vec<Vec<usize>>,
    inversions: Vec<usize>,
}

fn multiply(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn apply(a: &Matrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Simple reflections in the root basis. For a double or triple bond the
/// lower index carries the long root.
fn generators(m: &CoxeterMatrix) -> Result<Vec<Matrix>, OracleError> {
    let n = m.rank();
    // a[i][j] = <alpha_j, alpha_i^vee>
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        for j in 0..n {
            if i == j {
                continue;
            }
            let (long_side, short_side) = match m.bond(i, j) {
                Bond::Finite(2) => (0, 0),
                Bond::Finite(3) => (-1, -1),
                Bond::Finite(4) => (-2, -1),
                Bond::Finite(6) => (-3, -1),
                b => return Err(OracleError::NotCrystallographic(i.min(j), i.max(j), b)),
            };
            a[i][j] = if i > j { long_side } else { short_side };
        }
    }
    Ok((0..n)
        .map(|i| {
            let mut s: Matrix = (0..n)
                .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
                .collect();
            for j in 0..n {
                s[i][j] -= a[i][j];
            }
            s
        })
        .collect())
}

pub fn enumerate_group(m: &CoxeterMatrix, cap: usize) -> Result<Group, OracleError> {
    let n = m.rank();
    let gens = generators(m)?;
    let identity: Matrix = (0..n)
        .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
        .collect();
    let mut elements = vec![GroupElement {
        matrix: identity.clone(),
        word: Vec::new(),
    }];
    let mut index: HashMap<Matrix, usize> = HashMap::from([(identity, 0)]);
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    while next < elements.len() {
        let mut row = Vec::with_capacity(n);
        for (i, g) in gens.iter().enumerate() {
            let product = multiply(&elements[next].matrix, g);
            let target = match index.get(&product) {
                Some(&k) => k,
                None => {
                    if elements.len() == cap {
                        return Err(OracleError::CapExceeded { cap });
                    }
                    let mut word = elements[next].word.clone();
                    word.push(i);
                    index.insert(product.clone(), elements.len());
                    elements.push(GroupElement {
                        matrix: product,
                        word,
                    });
                    elements.len() - 1
                }
            };
            row.push(target);
        }
        right.push(row);
        next += 1;
    }

    // Positive roots: images of simple roots with non-negative coordinates.
    let mut roots: Vec<Vec<i64>> = Vec::new();
    for e in &elements {
        for i in 0..n {
            let image: Vec<i64> = e.matrix.iter().map(|row| row[i]).collect();
            if image.iter().all(|&c| c >= 0) && !roots.contains(&image) {
                roots.push(image);
            }
        }
    }
    let inversions = elements
        .iter()
        .map(|e| {
            roots
                .iter()
                .filter(|r| apply(&e.matrix, r).iter().any(|&c| c < 0))
                .count()
        })
        .collect();
    Ok(Group {
        rank: n,
        elements,
        right,
        inversions,
    })
}

impl Group {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn get(&self, w: usize) -> &GroupElement {
        &self.elements[w]
    }

    /// `w * s_i`.
    pub fn times(&self, w: usize, i: usize) -> usize {
        self.right[w][i]
    }

    /// Number of positive roots sent to negative ones.
    pub fn inversion_count(&self, w: usize) -> usize {
        self.inversions[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].word.len()
    }

    pub fn index_of_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |w, &i| self.times(w, i))
    }

    pub fn right_descents(&self, w: usize) -> Vec<usize> {
        (0..self.rank)
            .filter(|&i| self.length(self.times(w, i)) < self.length(w))
            .collect()
    }

    /// A reduced word for `w` built by peeling off the largest right
    /// descent each time; usually differs from the stored one.
    pub fn alternative_word(&self, w: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut x = w;
        while let Some(&i) = self.right_descents(x).last() {
            word.push(i);
            x = self.times(x, i);
        }
        word.reverse();
        word
    }

    /// Elements given by reduced subwords of `word`.
    pub fn reduced_subword_products(&self, word: &[usize]) -> BitSet {
        let mut reached = BitSet::from_indices(self.len(), [0]);
        for &i in word {
            let extended: Vec<usize> = reached
                .iter()
                .map(|x| (x, self.times(x, i)))
                .filter(|&(x, y)| self.length(y) == self.length(x) + 1)
                .map(|(_, y)| y)
                .collect();
            for y in extended {
                reached.insert(y);
            }
        }
        reached
    }

    /// Subword criterion against the stored reduced word of `v`.
    pub fn bruhat_le(&self, u: usize, v: usize) -> bool {
        self.bruhat_le_with_word(u, &self.elements[v].word)
    }

    pub fn bruhat_le_with_word(&self, u: usize, word_of_v: &[usize]) -> bool {
        self.reduced_subword_products(word_of_v).contains(u)
    }

    /// The shortest element of each coset `w W_J`, sorted by length then index.
    pub fn min_coset_reps(&self, j: &ParabolicSubset) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.len()).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for w in 0..self.len() {
            for &s in j.members() {
                let (a, b) = (find(&mut parent, w), find(&mut parent, self.times(w, s)));
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut best: HashMap<usize, usize> = HashMap::new();
        for w in 0..self.len() {
            let root = find(&mut parent, w);
            let entry = best.entry(root).or_insert(w);
            if self.length(w) < self.length(*entry) {
                *entry = w;
            }
        }
        let mut reps: Vec<usize> = best.into_values().collect();
        reps.sort_by_key(|&w| (self.length(w), w));
        reps
    }

    /// Reduced words of every element, by summing over right descents.
    pub fn reduced_word_counts(&self) -> Vec<u64> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&w| self.length(w));
        let mut counts = vec![0u64; self.len()];
        for w in order {
            counts[w] = if w == 0 {
                1
            } else {
                self.right_descents(w)
                    .iter()
                    .map(|&i| counts[self.times(w, i)])
                    .sum()
            };
        }
        counts
    }

    pub fn count_reduced_words(&self, w: usize) -> u64 {
        self.reduced_word_counts()[w]
    }

    /// Generators occurring in reduced words of `w`.
    pub fn support(&self, w: usize) -> Vec<usize> {
        let mut s = self.elements[w].word.clone();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// The order restricted to the shortest coset representatives. Element `i`
/// of `poset` is group element `reps[i]`.
#[derive(Clone, Debug)]
pub struct OraclePoset {
    pub group: Group,
    pub subset: ParabolicSubset,
    pub reps: Vec<usize>,
    pub poset: PointedPoset,
}

pub fn oracle_poset(
    m: &CoxeterMatrix,
    j: &ParabolicSubset,
    cap: usize,
) -> Result<OraclePoset, OracleError> {
    let group = enumerate_group(m, cap)?;
    let reps = group.min_coset_reps(j);
    let position: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let mut relation = Vec::new();
    for (vi, &v) in reps.iter().enumerate() {
        let below = group.reduced_subword_products(&group.get(v).word);
        for u in below.iter() {
            if u != v {
                if let Some(&ui) = position.get(&u) {
                    relation.push((ui, vi));
                }
            }
        }
    }
    let ranks = reps.iter().map(|&w| group.length(w)).collect();
    let poset = PointedPoset::from_relation(ranks, &relation);
    Ok(OraclePoset {
        group,
        subset: j.clone(),
        reps,
        poset,
    })
}

impl OraclePoset {
    /// Both conditions characterising the special vertices for the
    /// representative at position `i`: unique reduced words throughout its
    /// lower interval in the quotient, and exactly one generator outside
    /// `J` in its support.
    pub fn unique_below(&self, i: usize) -> bool {
        let counts = self.group.reduced_word_counts();
        self.unique_below_with(i, &counts)
    }

    fn unique_below_with(&self, i: usize, counts: &[u64]) -> bool {
        let w = self.reps[i];
        let interval_unique = self
            .poset
            .down_set(i)
            .iter()
            .all(|k| counts[self.reps[k]] == 1);
        let outside = self
            .group
            .support(w)
            .into_iter()
            .filter(|&s| !self.subset.contains(s))
            .count();
        interval_unique && outside == 1
    }

    /// Positions of all representatives satisfying [`OraclePoset::unique_below`].
    pub fn unique_set(&self) -> Vec<usize> {
        let counts = self.group.reduced_word_counts();
        (0..self.reps.len())
            .filter(|&i| self.unique_below_with(i, &counts))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::WeylType;
    use crate::invariants::vx;
    use crate::weyl::group_order;

    fn weyl(name: &str) -> CoxeterMatrix {
        CoxeterMatrix::weyl(name.parse().unwrap())
    }

    fn group(name: &str) -> Group {
        enumerate_group(&weyl(name), DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn group_sizes() {
        assert_eq!(group("A3").len(), 24);
        let g = group("G2");
        assert_eq!(g.len(), 12);
        assert_eq!((0..g.len()).map(|w| g.length(w)).max(), Some(6));
        assert_eq!(group("A1").len(), 2);
        for t in WeylType::all_up_to(4) {
            assert_eq!(group(&t.to_string()).len() as u64, group_order(t), "{t}");
        }
        assert_eq!(
            enumerate_group(&weyl("B3"), 47).unwrap_err(),
            OracleError::CapExceeded { cap: 47 }
        );
        let h3 = CoxeterMatrix::from_edges(3, &[(0, 1, Bond::Finite(5)), (1, 2, Bond::Finite(3))]).unwrap();
        assert!(matches!(enumerate_group(&h3, 1000), Err(OracleError::NotCrystallographic(0, 1, _))));
    }

    #[test]
    fn lengths_agree() {
        for name in ["A3", "B3", "G2", "F4", "D4"] {
            let g = group(name);
            assert!((0..g.len()).all(|w| g.inversion_count(w) == g.length(w)), "{name}");
        }
    }

    #[test]
    fn subword_order() {
        let g = group("A2");
        let s1 = g.index_of_word(&[0]);
        let s2 = g.index_of_word(&[1]);
        let s1s2 = g.index_of_word(&[0, 1]);
        let s2s1 = g.index_of_word(&[1, 0]);
        assert!((0..g.len()).all(|v| g.bruhat_le(0, v)));
        assert!(g.bruhat_le(s1, s1s2) && g.bruhat_le(s2, s1s2));
        assert!(!g.bruhat_le(s1s2, s2s1));
        let b2 = group("B2");
        let top = (0..b2.len()).max_by_key(|&w| b2.length(w)).unwrap();
        assert!((0..b2.len()).all(|u| b2.bruhat_le(u, top)));
    }

    #[test]
    fn stored_word_does_not_matter() {
        let g = group("A3");
        let mut differing = 0;
        for v in 0..g.len() {
            let alt = g.alternative_word(v);
            assert_eq!(g.index_of_word(&alt), v);
            assert_eq!(alt.len(), g.length(v));
            differing += usize::from(alt != g.get(v).word);
            for u in 0..g.len() {
                assert_eq!(g.bruhat_le(u, v), g.bruhat_le_with_word(u, &alt));
            }
        }
        assert!(differing > 0);
    }

    #[test]
    fn coset_representatives() {
        let m = weyl("A3");
        let g = group("A3");
        assert_eq!(g.min_coset_reps(&ParabolicSubset::new(&m, [0, 1]).unwrap()).len(), 4);
        let b2 = weyl("B2");
        let p = oracle_poset(&b2, &ParabolicSubset::empty(), DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(p.reps.len(), 8);
        let b3 = weyl("B3");
        let p = oracle_poset(&b3, &ParabolicSubset::new(&b3, [1, 2]).unwrap(), DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(p.poset.rank_sizes(), vec![1; 6]);
    }

    #[test]
    fn reduced_word_counts() {
        let g = group("A2");
        assert_eq!(g.count_reduced_words(0), 1);
        assert_eq!(g.count_reduced_words(g.index_of_word(&[0, 1, 0])), 2);
        // Longest element of A3 has 16 reduced words.
        let g = group("A3");
        assert_eq!(g.reduced_word_counts().into_iter().max(), Some(16));
    }

    #[test]
    fn unique_set_is_vx() {
        let m = weyl("A3");
        let p = oracle_poset(&m, &ParabolicSubset::new(&m, [1]).unwrap(), DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(p.unique_set(), vx(&p.poset));
        assert_eq!(p.unique_set().len(), 4);
    }
}
