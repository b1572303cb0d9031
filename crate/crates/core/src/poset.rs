//! Graded posets with a least element, and the Bruhat order on a quotient.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::scalar::Scalar;
use crate::weyl::{self, Direction, QuotientTable};

/// Above this size the order relation is answered by search instead of a
/// materialised bit matrix.
pub const DENSE_LIMIT: usize = 1 << 15;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("not gradable: {0}")]
    NotGradable(String),
    #[error("relation is not a partial order: {0}")]
    NotAnOrder(String),
    #[error("element {0} out of range")]
    OutOfRange(usize),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

#[derive(Clone, Debug)]
enum Order {
    /// `down[x]` is the principal ideal of `x`.
    Dense(Vec<BitSet>),
    OnDemand,
}

/// A finite graded poset with least element. Elements are `0..len()`.
#[derive(Clone, Debug)]
pub struct PointedPoset {
    ranks: Vec<usize>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    bottom: usize,
    order: Order,
}

impl PointedPoset {
    /// Builds the order generated by `relations` (pairs `(u, v)` meaning
    /// `u < v`, each strictly increasing in `ranks`); covers are the
    /// comparable pairs whose ranks differ by one. `ranks` must be a valid
    /// grading of the generated order.
    fn from_graded_relation(
        ranks: Vec<usize>,
        relations: &[(usize, usize)],
        dense_limit: usize,
    ) -> PointedPoset {
        let n = ranks.len();
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in relations {
            debug_assert!(ranks[u] < ranks[v]);
            below[v].push(u);
        }
        let mut by_rank: Vec<usize> = (0..n).collect();
        by_rank.sort_by_key(|&x| (ranks[x], x));
        let bottom = by_rank.first().copied().unwrap_or(0);

        if n <= dense_limit {
            let mut down: Vec<BitSet> = vec![BitSet::new(n); n];
            for &v in &by_rank {
                let mut set = BitSet::new(n);
                set.insert(v);
                for &u in &below[v] {
                    set.union_with(&down[u]);
                }
                down[v] = set;
            }
            let mut lower = vec![Vec::new(); n];
            let mut upper = vec![Vec::new(); n];
            for v in 0..n {
                for u in down[v].iter() {
                    if ranks[u] + 1 == ranks[v] {
                        lower[v].push(u);
                        upper[u].push(v);
                    }
                }
            }
            PointedPoset {
                ranks,
                lower,
                upper,
                bottom,
                order: Order::Dense(down),
            }
        } else {
            // Without a closure the covers are the generating pairs with rank
            // difference one; every relation must therefore be generated by
            // such pairs.
            let mut lower = vec![Vec::new(); n];
            let mut upper = vec![Vec::new(); n];
            for v in 0..n {
                let mut ls: Vec<usize> = below[v]
                    .iter()
                    .copied()
                    .filter(|&u| ranks[u] + 1 == ranks[v])
                    .collect();
                ls.sort_unstable();
                ls.dedup();
                for &u in &ls {
                    upper[u].push(v);
                }
                lower[v] = ls;
            }
            PointedPoset {
                ranks,
                lower,
                upper,
                bottom,
                order: Order::OnDemand,
            }
        }
    }

    /// Poset from an explicit cover list with known ranks (no validation
    /// beyond index bounds; see [`grade_abstract`] for the checked path).
    pub fn from_covers(ranks: Vec<usize>, covers: &[(usize, usize)]) -> PointedPoset {
        PointedPoset::from_graded_relation(ranks, covers, DENSE_LIMIT)
    }

    /// Poset from a full comparability list (pairs `u < v`) with known ranks.
    pub fn from_relation(ranks: Vec<usize>, relation: &[(usize, usize)]) -> PointedPoset {
        PointedPoset::from_graded_relation(ranks, relation, DENSE_LIMIT)
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn is_materialised(&self) -> bool {
        matches!(self.order, Order::Dense(_))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    /// All covers `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .lower
            .iter()
            .enumerate()
            .flat_map(|(v, ls)| ls.iter().map(move |&u| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn cover_count(&self) -> usize {
        self.lower.iter().map(Vec::len).sum()
    }

    pub fn elements_of_rank(&self, r: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.ranks[x] == r).collect()
    }

    /// The principal ideal `{y : y <= x}`.
    pub fn down_set(&self, x: usize) -> BitSet {
        match &self.order {
            Order::Dense(down) => down[x].clone(),
            Order::OnDemand => self.search(x, &self.lower),
        }
    }

    /// The principal filter `{y : y >= x}`.
    pub fn up_set(&self, x: usize) -> BitSet {
        match &self.order {
            Order::Dense(down) => {
                BitSet::from_indices(self.len(), (0..self.len()).filter(|&y| down[y].contains(x)))
            }
            Order::OnDemand => self.search(x, &self.upper),
        }
    }

    fn search(&self, start: usize, step: &[Vec<usize>]) -> BitSet {
        let mut seen = BitSet::new(self.len());
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &step[v] {
                if !seen.contains(w) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        match &self.order {
            Order::Dense(down) => down[b].contains(a),
            Order::OnDemand => {
                if self.ranks[a] > self.ranks[b] {
                    return false;
                }
                self.search(b, &self.lower).contains(a)
            }
        }
    }

    /// Number of comparable pairs `a <= b`.
    pub fn leq_count(&self) -> usize {
        (0..self.len()).map(|x| self.down_set(x).count()).sum()
    }

    pub fn rank_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.length() + 1];
        for &r in &self.ranks {
            sizes[r] += 1;
        }
        sizes
    }

    /// The maximal rank.
    pub fn length(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    /// The subposet on `elements` with inherited order and inherited ranks.
    /// Element `i` of the result is `elements[i]` (after sorting and
    /// deduplication, which the caller can reproduce).
    pub fn induced(&self, elements: &[usize]) -> PointedPoset {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let k = elements.len();
        let inside = BitSet::from_indices(self.len(), elements.iter().copied());
        let local = |x: usize| elements.binary_search(&x).unwrap();
        let ranks: Vec<usize> = elements.iter().map(|&x| self.ranks[x]).collect();
        let down_closed = elements
            .iter()
            .all(|&x| self.lower[x].iter().all(|&u| inside.contains(u)));
        let relation: Vec<(usize, usize)> = if down_closed {
            elements
                .iter()
                .flat_map(|&v| self.lower[v].iter().map(move |&u| (local(u), local(v))))
                .collect()
        } else {
            // Hasse reduction of the induced order.
            let downs: Vec<BitSet> = elements
                .iter()
                .map(|&x| {
                    let mut d = self.down_set(x);
                    d.intersect_with(&inside);
                    d
                })
                .collect();
            let mut rel = Vec::new();
            for (vi, &v) in elements.iter().enumerate() {
                let mut strict = downs[vi].clone();
                strict.remove(v);
                let mut covered = BitSet::new(self.len());
                for w in strict.iter() {
                    let mut below = downs[local(w)].clone();
                    below.remove(w);
                    covered.union_with(&below);
                }
                strict.difference_with(&covered);
                rel.extend(strict.iter().map(|u| (local(u), vi)));
            }
            rel
        };
        let mut out = PointedPoset::from_graded_relation(ranks, &relation, DENSE_LIMIT);
        if !down_closed {
            // Inherited ranks need not step by one across induced covers.
            let mut lower = vec![Vec::new(); k];
            let mut upper = vec![Vec::new(); k];
            for &(u, v) in &relation {
                lower[v].push(u);
                upper[u].push(v);
            }
            for l in lower.iter_mut().chain(upper.iter_mut()) {
                l.sort_unstable();
            }
            out.lower = lower;
            out.upper = upper;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = PosetDoc {
            n: self.len(),
            ranks: self.ranks.clone(),
            covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
        };
        serde_json::to_value(doc).expect("poset serialises")
    }

    /// Reads the JSON written by [`PointedPoset::to_json`] and re-validates it.
    pub fn from_json(text: &str) -> Result<PointedPoset, PosetError> {
        let doc: PosetDoc = serde_json::from_str(text).map_err(|e| PosetError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if doc.ranks.len() != doc.n {
            return Err(PosetError::Parse {
                line: 0,
                column: 0,
                message: format!("expected {} ranks, found {}", doc.n, doc.ranks.len()),
            });
        }
        let covers: Vec<(usize, usize)> = doc.covers.iter().map(|c| (c[0], c[1])).collect();
        let p = grade_abstract(doc.n, &covers)?;
        if p.ranks != doc.ranks {
            return Err(PosetError::NotGradable(
                "stored ranks disagree with the cover relation".into(),
            ));
        }
        Ok(p)
    }

    /// Graphviz Hasse diagram with one layer per rank.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
        for (r, size) in self.rank_sizes().iter().enumerate() {
            if *size == 0 {
                continue;
            }
            let members: Vec<String> =
                self.elements_of_rank(r).iter().map(|x| x.to_string()).collect();
            writeln!(out, "  {{ rank=same; {}; }}", members.join("; ")).unwrap();
        }
        for (a, b) in self.covers() {
            writeln!(out, "  {a} -> {b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct PosetDoc {
    n: usize,
    ranks: Vec<usize>,
    covers: Vec<[usize; 2]>,
}

/// The Bruhat order on `W^J`: the transitive closure of the reflection
/// edges of the table, graded by length.
pub fn bruhat_order<T: Scalar>(q: &QuotientTable<T>) -> PointedPoset {
    bruhat_order_with_limit(q, DENSE_LIMIT)
}

/// As [`bruhat_order`], choosing the on-demand representation above `dense_limit` elements.
pub fn bruhat_order_with_limit<T: Scalar>(q: &QuotientTable<T>, dense_limit: usize) -> PointedPoset {
    let ranks: Vec<usize> = q.elements().iter().map(|e| e.length).collect();
    let mut relation = Vec::new();
    for v in 0..q.len() {
        for image in weyl::reflection_images(q, v) {
            if image.direction == Direction::Down {
                relation.push((image.index, v));
            }
        }
    }
    PointedPoset::from_graded_relation(ranks, &relation, dense_limit)
}

/// Grades the order generated by the declared cover pairs `(lower, upper)`.
///
/// Requires a unique minimal element and that every declared pair joins
/// consecutive ranks, where the rank of `x` is the length of the longest
/// declared chain from the minimum (so all saturated chains between two
/// elements have equal length).
pub fn grade_abstract(n: usize, covers: &[(usize, usize)]) -> Result<PointedPoset, PosetError> {
    if n == 0 {
        return Err(PosetError::NotGradable("empty poset has no least element".into()));
    }
    let mut succ = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    let pairs: BTreeSet<(usize, usize)> = covers.iter().copied().collect();
    for &(a, b) in &pairs {
        for x in [a, b] {
            if x >= n {
                return Err(PosetError::OutOfRange(x));
            }
        }
        if a == b {
            return Err(PosetError::NotAnOrder(format!("reflexive pair ({a}, {a})")));
        }
        succ[a].push(b);
        indegree[b] += 1;
    }
    let minima: Vec<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
    // Topological order; a leftover element means a cycle.
    let mut order = Vec::with_capacity(n);
    let mut remaining = indegree.clone();
    let mut queue: VecDeque<usize> = minima.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &succ[v] {
            remaining[w] -= 1;
            if remaining[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    if order.len() != n {
        return Err(PosetError::NotAnOrder("relation contains a cycle".into()));
    }
    if minima.len() != 1 {
        return Err(PosetError::NotGradable(format!(
            "{} minimal elements, no least element",
            minima.len()
        )));
    }
    let mut ranks = vec![0usize; n];
    for &v in &order {
        for &w in &succ[v] {
            ranks[w] = ranks[w].max(ranks[v] + 1);
        }
    }
    if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| ranks[b] != ranks[a] + 1) {
        return Err(PosetError::NotGradable(format!(
            "chains through {a} -> {b} have different lengths"
        )));
    }
    let relation: Vec<(usize, usize)> = pairs.into_iter().collect();
    Ok(PointedPoset::from_graded_relation(ranks, &relation, DENSE_LIMIT))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterMatrix, ParabolicSubset};
    use crate::weyl::enumerate_quotient;

    fn quotient(ty: &str, j: &[usize]) -> PointedPoset {
        let m = CoxeterMatrix::weyl(ty.parse().unwrap());
        let j = ParabolicSubset::new(&m, j.iter().copied()).unwrap();
        bruhat_order(&enumerate_quotient::<i64>(&m, &j, None).unwrap())
    }

    fn chain(n: usize) -> PointedPoset {
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        grade_abstract(n, &covers).unwrap()
    }

    fn is_chain(p: &PointedPoset) -> bool {
        p.rank_sizes().iter().all(|&s| s == 1)
    }

    #[test]
    fn small_bruhat_orders() {
        let p = quotient("A3", &[0, 1]);
        assert!(is_chain(&p));
        assert_eq!(p.len(), 4);
        let p = quotient("G2", &[0]);
        assert!(is_chain(&p));
        assert_eq!(p.len(), 6);
        // Two length-one elements; 24 / 2 elements in all.
        let p = quotient("A3", &[1]);
        assert_eq!(p.len(), 12);
        assert_eq!(p.elements_of_rank(1).len(), 2);
    }

    #[test]
    fn grading_of_quotients() {
        let p = quotient("B3", &[1, 2]);
        assert_eq!(p.length(), 5);
        assert_eq!(p.rank_sizes(), vec![1; 6]);
        let p = quotient("E6", &[1, 2, 3, 4, 5]);
        assert_eq!(p.length(), 16);
        assert_eq!(p.len(), 27);
        assert_eq!(chain(1).length(), 0);
    }

    #[test]
    fn abstract_grading() {
        let p = chain(4);
        assert_eq!(p.ranks(), &[0, 1, 2, 3]);
        // Two incomparable points: no least element.
        assert!(matches!(grade_abstract(2, &[]), Err(PosetError::NotGradable(_))));
        // 0 < a < c and a declared 0 -> c: chains of lengths 2 and 1.
        let (zero, a, b, c) = (0, 1, 2, 3);
        let declared = [(zero, a), (a, c), (zero, b), (b, c), (zero, c)];
        assert!(matches!(grade_abstract(4, &declared), Err(PosetError::NotGradable(_))));
        // A genuinely ungraded order: 0 < a < x < c and 0 < b < c.
        let x = 4;
        let declared = [(zero, a), (a, x), (x, c), (zero, b), (b, c)];
        assert!(matches!(grade_abstract(5, &declared), Err(PosetError::NotGradable(_))));
        assert!(matches!(grade_abstract(2, &[(0, 1), (1, 0)]), Err(PosetError::NotAnOrder(_))));
        assert!(matches!(grade_abstract(2, &[(0, 2)]), Err(PosetError::OutOfRange(2))));
    }

    #[test]
    fn bruhat_order_is_graded_with_seed_bottom() {
        for (ty, j) in [("B3", vec![]), ("D4", vec![1]), ("F4", vec![0, 3]), ("G2", vec![])] {
            let p = quotient(ty, &j);
            assert_eq!(p.bottom(), 0);
            assert!((0..p.len()).all(|x| p.leq(0, x)));
            let regraded = grade_abstract(p.len(), &p.covers()).unwrap();
            assert_eq!(regraded.ranks(), p.ranks());
            let tops = p.elements_of_rank(p.length());
            assert_eq!(tops.len(), 1);
            assert!((0..p.len()).all(|x| p.leq(x, tops[0])));
        }
    }

    #[test]
    fn on_demand_matches_dense() {
        let m = CoxeterMatrix::weyl("B3".parse().unwrap());
        let q = enumerate_quotient::<i64>(&m, &ParabolicSubset::empty(), None).unwrap();
        let dense = bruhat_order_with_limit(&q, DENSE_LIMIT);
        let lazy = bruhat_order_with_limit(&q, 0);
        assert!(dense.is_materialised() && !lazy.is_materialised());
        assert_eq!(dense.covers(), lazy.covers());
        for a in 0..q.len() {
            assert_eq!(dense.down_set(a), lazy.down_set(a));
            assert_eq!(dense.up_set(a), lazy.up_set(a));
            for b in 0..q.len() {
                assert_eq!(dense.leq(a, b), lazy.leq(a, b));
            }
        }
    }

    #[test]
    fn induced_subposets() {
        let p = quotient("A2", &[]);
        let s = p.elements_of_rank(1)[0];
        let keep: Vec<usize> = (0..p.len()).filter(|&x| x != s).collect();
        let sub = p.induced(&keep);
        assert_eq!(sub.len(), 5);
        assert_eq!(sub.elements_of_rank(1).len(), 1);
        assert_eq!(sub.cover_count(), 5);

        let c = chain(4);
        let sub = c.induced(&[3, 0, 2]);
        assert_eq!(sub.ranks(), &[0, 2, 3]);
        assert_eq!(sub.covers(), vec![(0, 1), (1, 2)]);
        let ideal = p.induced(&[0, s]);
        assert!(ideal.leq(0, 1) && ideal.cover_count() == 1);
    }

    #[test]
    fn serialisation() {
        let p = quotient("B2", &[0]);
        let text = p.to_json().to_string();
        let back = PointedPoset::from_json(&text).unwrap();
        assert_eq!(back.covers(), p.covers());
        assert_eq!(back.ranks(), p.ranks());
        assert!(matches!(PointedPoset::from_json(""), Err(PosetError::Parse { .. })));
        let err = PointedPoset::from_json("{\n\"n\": 2,\n\"ranks\": [0, 1],\n\"covers\": [[0, 1]\n").unwrap_err();
        assert!(matches!(err, PosetError::Parse { line: 5, .. }), "{err:?}");
        let dot = chain(2).to_dot();
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("{ rank=same; 0; }") && dot.contains("{ rank=same; 1; }"));
    }
}
