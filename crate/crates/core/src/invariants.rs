//! Reconstruction operators on a pointed graded poset: the distinguished
//! subsets of low rank, the triple `(X1, mu, nu)`, the relations that split
//! `X1` into irreducible classes, and the black-and-white graph of the poset.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::bwgraph::{BWGraph, Color};
use crate::coxeter::Bond;
use crate::poset::PointedPoset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("element {0} does not have rank 1")]
    NotRankOne(usize),
    #[error("mu needs two distinct elements, got {0} twice")]
    SameElement(usize),
}

/// A subset of a poset together with the induced pointed poset.
/// Element `i` of `poset` is `elements[i]`.
#[derive(Clone, Debug)]
pub struct SubPoset {
    pub elements: Vec<usize>,
    pub poset: PointedPoset,
}

impl SubPoset {
    fn of(p: &PointedPoset, elements: Vec<usize>) -> SubPoset {
        let poset = p.induced(&elements);
        SubPoset { elements, poset }
    }

    /// Largest inherited rank.
    pub fn length(&self) -> usize {
        self.poset.length()
    }
}

fn check_rank_one(p: &PointedPoset, set: &[usize]) -> Result<(), InvariantError> {
    match set.iter().find(|&&a| a >= p.len() || p.rank(a) != 1) {
        Some(&a) => Err(InvariantError::NotRankOne(a)),
        None => Ok(()),
    }
}

/// Everything at or above some element of `seeds`.
fn up_closure(p: &PointedPoset, seeds: impl IntoIterator<Item = usize>) -> BitSet {
    let mut seen = BitSet::new(p.len());
    let mut queue = VecDeque::new();
    for s in seeds {
        if !seen.contains(s) {
            seen.insert(s);
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in p.upper_covers(v) {
            if !seen.contains(w) {
                seen.insert(w);
                queue.push_back(w);
            }
        }
    }
    seen
}

pub fn x1(p: &PointedPoset) -> Vec<usize> {
    p.elements_of_rank(1)
}

/// Rank-2 elements whose lower covers are exactly `set`.
pub fn x2_of(p: &PointedPoset, set: &[usize]) -> Vec<usize> {
    let mut want = set.to_vec();
    want.sort_unstable();
    want.dedup();
    p.elements_of_rank(2)
        .into_iter()
        .filter(|&x| {
            let mut lower = p.lower_covers(x).to_vec();
            lower.sort_unstable();
            lower == want
        })
        .collect()
}

/// Rank 0, the set itself, and the elements of rank at least 2 all of whose
/// rank-2 predecessors lie in [`x2_of`]`(set)`.
pub fn x0_of(p: &PointedPoset, set: &[usize]) -> Result<SubPoset, InvariantError> {
    check_rank_one(p, set)?;
    let good = BitSet::from_indices(p.len(), x2_of(p, set));
    let bad = p.elements_of_rank(2).into_iter().filter(|&y| !good.contains(y));
    let excluded = up_closure(p, bad);
    let mut elements: Vec<usize> = (0..p.len())
        .filter(|&x| match p.rank(x) {
            0 => true,
            1 => set.contains(&x),
            _ => !excluded.contains(x),
        })
        .collect();
    elements.dedup();
    Ok(SubPoset::of(p, elements))
}

/// Elements whose rank-1 predecessors all lie in `set`.
pub fn xinf_of(p: &PointedPoset, set: &[usize]) -> Result<SubPoset, InvariantError> {
    check_rank_one(p, set)?;
    let others = x1(p).into_iter().filter(|a| !set.contains(a));
    let excluded = up_closure(p, others);
    let elements = (0..p.len()).filter(|&x| !excluded.contains(x)).collect();
    Ok(SubPoset::of(p, elements))
}

/// The length of [`x0_of`]`({a, b})`.
pub fn mu(p: &PointedPoset, a: usize, b: usize) -> Result<Bond, InvariantError> {
    if a == b {
        return Err(InvariantError::SameElement(a));
    }
    let sub = x0_of(p, &[a, b])?;
    Ok(Bond::Finite(sub.length() as u32))
}

/// The number of rank-2 elements covering `a` and nothing else.
pub fn nu(p: &PointedPoset, a: usize) -> Result<usize, InvariantError> {
    check_rank_one(p, &[a])?;
    Ok(x2_of(p, &[a]).len())
}

/// The triple `(X1, mu, nu)`. `mu` is stored on pairs `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconTriple {
    pub x1: Vec<usize>,
    pub mu: BTreeMap<(usize, usize), Bond>,
    pub nu: BTreeMap<usize, usize>,
}

#[derive(Serialize)]
struct TripleDoc {
    x1: Vec<usize>,
    mu: Vec<(usize, usize, Bond)>,
    nu: Vec<(usize, usize)>,
}

impl ReconTriple {
    pub fn mu(&self, a: usize, b: usize) -> Option<Bond> {
        self.mu.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = TripleDoc {
            x1: self.x1.clone(),
            mu: self.mu.iter().map(|(&(a, b), &v)| (a, b, v)).collect(),
            nu: self.nu.iter().map(|(&a, &v)| (a, v)).collect(),
        };
        serde_json::to_value(doc).expect("triple serialises")
    }

    /// Sorted `mu` values and sorted `nu` values.
    pub fn multisets(&self) -> (Vec<Bond>, Vec<usize>) {
        let mut m: Vec<Bond> = self.mu.values().copied().collect();
        let mut n: Vec<usize> = self.nu.values().copied().collect();
        m.sort_unstable();
        n.sort_unstable();
        (m, n)
    }
}

pub fn triple(p: &PointedPoset) -> ReconTriple {
    let x1 = x1(p);
    let mut mu_map = BTreeMap::new();
    for (i, &a) in x1.iter().enumerate() {
        for &b in &x1[i + 1..] {
            mu_map.insert((a, b), mu(p, a, b).expect("rank-one pair"));
        }
    }
    let nu_map = x1.iter().map(|&a| (a, x2_of(p, &[a]).len())).collect();
    ReconTriple {
        x1,
        mu: mu_map,
        nu: nu_map,
    }
}

/// `a ~> b`: `mu(a, b) = 2` and some `y` in [`x0_of`]`({a})` has two distinct
/// upper covers that both lie above `b`.
pub fn leads_to(p: &PointedPoset, a: usize, b: usize) -> Result<bool, InvariantError> {
    if mu(p, a, b)? != Bond::Finite(2) {
        return Ok(false);
    }
    Ok(leads_to_unchecked(p, a, b))
}

fn leads_to_unchecked(p: &PointedPoset, a: usize, b: usize) -> bool {
    let above_b = up_closure(p, [b]);
    let base = x0_of(p, &[a]).expect("rank-one element");
    base.elements.iter().any(|&y| {
        p.upper_covers(y)
            .iter()
            .filter(|&&z| above_b.contains(z))
            .nth(1)
            .is_some()
    })
}

/// The classes of the equivalence relation on `X1` generated by `mu > 2`
/// and by `~>` in either direction. Blocks and their members are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimClasses {
    pub blocks: Vec<Vec<usize>>,
}

pub fn sim_classes(p: &PointedPoset) -> SimClasses {
    let x1 = x1(p);
    let t = triple(p);
    let k = x1.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..k {
        for j in i + 1..k {
            let (a, b) = (x1[i], x1[j]);
            let m = t.mu(a, b).expect("pair present");
            let joined = m > Bond::Finite(2)
                || (m == Bond::Finite(2)
                    && (leads_to_unchecked(p, a, b) || leads_to_unchecked(p, b, a)));
            if joined {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..k {
        let r = find(&mut parent, i);
        blocks.entry(r).or_default().push(x1[i]);
    }
    SimClasses {
        blocks: blocks.into_values().collect(),
    }
}

/// One [`xinf_of`] per class of [`sim_classes`].
pub fn factor_posets(p: &PointedPoset) -> Vec<SubPoset> {
    sim_classes(p)
        .blocks
        .iter()
        .map(|block| xinf_of(p, block).expect("blocks are rank one"))
        .collect()
}

/// Elements of positive rank lying above at most one element of each rank,
/// computed by the recursion: exactly one lower cover, itself either the
/// minimum or a member.
pub fn vx(p: &PointedPoset) -> Vec<usize> {
    let mut member = vec![false; p.len()];
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&x| p.rank(x));
    for x in order {
        if p.rank(x) == 0 {
            continue;
        }
        if let [y] = p.lower_covers(x) {
            member[x] = p.rank(*y) == 0 || member[*y];
        }
    }
    (0..p.len()).filter(|&x| member[x]).collect()
}

/// [`vx`] straight from the definition, by counting the principal ideal
/// rank by rank.
pub fn vx_direct(p: &PointedPoset) -> Vec<usize> {
    (0..p.len())
        .filter(|&x| {
            if p.rank(x) == 0 {
                return false;
            }
            let mut per_rank = vec![0usize; p.rank(x) + 1];
            p.down_set(x).iter().all(|y| {
                per_rank[p.rank(y)] += 1;
                per_rank[p.rank(y)] <= 1
            })
        })
        .collect()
}

/// The black-and-white graph of the poset. Vertex `i` of the graph is poset
/// element `vertices[i]`: first `X1`, then the rest of [`vx`], each in
/// increasing order.
#[derive(Clone, Debug)]
pub struct PosetGraph {
    pub graph: BWGraph,
    pub vertices: Vec<usize>,
}

pub fn g_of(p: &PointedPoset) -> PosetGraph {
    let blacks = x1(p);
    let whites: Vec<usize> = vx(p).into_iter().filter(|&x| p.rank(x) > 1).collect();
    let vertices: Vec<usize> = blacks.iter().chain(&whites).copied().collect();
    let position: BTreeMap<usize, usize> =
        vertices.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let colors = blacks
        .iter()
        .map(|_| Color::Black)
        .chain(whites.iter().map(|_| Color::White))
        .collect();
    let mut graph = BWGraph::new(colors);
    let mut edges: BTreeMap<(usize, usize), Option<Bond>> = BTreeMap::new();

    let t = triple(p);
    for (&(a, b), &m) in &t.mu {
        if m > Bond::Finite(2) {
            let label = (m > Bond::Finite(3)).then_some(m);
            edges.insert((position[&a], position[&b]), label);
        }
    }
    for &y in &vertices {
        for x in p.lower_covers(y) {
            if let Some(&i) = position.get(x) {
                edges.entry((i, position[&y])).or_insert(None);
            }
        }
    }
    let in_vx = BitSet::from_indices(p.len(), vertices.iter().copied());
    for &a in &blacks {
        let above_a = up_closure(p, [a]);
        let candidates: Vec<usize> = (0..p.len())
            .filter(|&x| in_vx.contains(x) && !above_a.contains(x))
            .filter(|&x| {
                p.upper_covers(x)
                    .iter()
                    .filter(|&&z| above_a.contains(z))
                    .nth(1)
                    .is_some()
            })
            .collect();
        for &x in &candidates {
            let minimal = !candidates.iter().any(|&c| c != x && p.leq(c, x));
            if minimal {
                let (i, j) = (position[&a], position[&x]);
                edges.entry((i.min(j), i.max(j))).or_insert(None);
            }
        }
    }
    for ((a, b), label) in edges {
        graph
            .add_edge(a, b, label)
            .expect("labels above 3 on black pairs only");
    }
    PosetGraph { graph, vertices }
}
