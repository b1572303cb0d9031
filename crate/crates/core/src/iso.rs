//! Isomorphism search for vertex- and edge-coloured graphs.
//!
//! Both graphs are refined together (colour refinement on their disjoint
//! union, so colour ids are comparable across the two sides); the search
//! then individualises one vertex of the smallest non-trivial cell against
//! every candidate of the same colour on the other side and recurses.
//! Directed structure is encoded through edge colours.

use std::collections::HashMap;

#[derive(Clone, Debug, Default)]
pub struct ColoredGraph {
    colors: Vec<u64>,
    adjacency: Vec<Vec<(usize, u64)>>,
}

impl ColoredGraph {
    pub fn new(colors: Vec<u64>) -> Self {
        let n = colors.len();
        ColoredGraph {
            colors,
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Adds the arc `a -> b` recorded as `(b, forward)` at `a` and `(a, backward)` at `b`.
    pub fn add_arc(&mut self, a: usize, b: usize, forward: u64, backward: u64) {
        self.adjacency[a].push((b, forward));
        self.adjacency[b].push((a, backward));
    }

    pub fn add_edge(&mut self, a: usize, b: usize, color: u64) {
        self.add_arc(a, b, color, color);
    }

    fn sorted_adjacency(&self, v: usize) -> Vec<(usize, u64)> {
        let mut adj = self.adjacency[v].clone();
        adj.sort_unstable();
        adj
    }
}

/// Returns `map` with `map[v]` the image in `h` of vertex `v` of `g`.
pub fn find_isomorphism(g: &ColoredGraph, h: &ColoredGraph) -> Option<Vec<usize>> {
    let n = g.len();
    if n != h.len() {
        return None;
    }
    let mut degree_g: Vec<usize> = g.adjacency.iter().map(Vec::len).collect();
    let mut degree_h: Vec<usize> = h.adjacency.iter().map(Vec::len).collect();
    degree_g.sort_unstable();
    degree_h.sort_unstable();
    if degree_g != degree_h {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let union = Union { g, h, n };
    let initial: Vec<u64> = g.colors.iter().chain(&h.colors).copied().collect();
    let colors = canonical_ids(&initial);
    union.search(colors)
}

struct Union<'a> {
    g: &'a ColoredGraph,
    h: &'a ColoredGraph,
    n: usize,
}

impl Union<'_> {
    fn neighbours(&self, v: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        let (graph, offset) = if v < self.n { (self.g, 0) } else { (self.h, self.n) };
        graph.adjacency[v - offset].iter().map(move |&(w, c)| (w + offset, c))
    }

    /// Colour refinement to a stable partition.
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut classes = count_distinct(&colors);
        loop {
            let signatures: Vec<(u32, Vec<(u64, u32)>)> = (0..colors.len())
                .map(|v| {
                    let mut nbrs: Vec<(u64, u32)> =
                        self.neighbours(v).map(|(w, c)| (c, colors[w])).collect();
                    nbrs.sort_unstable();
                    (colors[v], nbrs)
                })
                .collect();
            let mut distinct: Vec<&(u32, Vec<(u64, u32)>)> = signatures.iter().collect();
            distinct.sort_unstable();
            distinct.dedup();
            let ids: HashMap<&(u32, Vec<(u64, u32)>), u32> = distinct
                .iter()
                .enumerate()
                .map(|(i, s)| (*s, i as u32))
                .collect();
            let next: Vec<u32> = signatures.iter().map(|s| ids[s]).collect();
            let next_classes = distinct.len();
            colors = next;
            if next_classes == classes {
                return colors;
            }
            classes = next_classes;
        }
    }

    fn search(&self, colors: Vec<u32>) -> Option<Vec<usize>> {
        let colors = self.refine(colors);
        let n = self.n;
        let mut members: HashMap<u32, (Vec<usize>, Vec<usize>)> = HashMap::new();
        for (v, &c) in colors.iter().enumerate() {
            let entry = members.entry(c).or_default();
            if v < n {
                entry.0.push(v);
            } else {
                entry.1.push(v - n);
            }
        }
        if members.values().any(|(a, b)| a.len() != b.len()) {
            return None;
        }
        let target = members
            .iter()
            .filter(|(_, (a, _))| a.len() > 1)
            .min_by_key(|(&c, (a, _))| (a.len(), c));
        match target {
            None => {
                let mut map = vec![0; n];
                for (a, b) in members.values() {
                    map[a[0]] = b[0];
                }
                self.verify(&map).then_some(map)
            }
            Some((_, (left, right))) => {
                let fresh = colors.iter().max().copied().unwrap_or(0) + 1;
                let v = left[0];
                for &w in right {
                    let mut next = colors.clone();
                    next[v] = fresh;
                    next[w + n] = fresh;
                    if let Some(map) = self.search(next) {
                        return Some(map);
                    }
                }
                None
            }
        }
    }

    fn verify(&self, map: &[usize]) -> bool {
        (0..self.n).all(|v| {
            if self.g.colors[v] != self.h.colors[map[v]] {
                return false;
            }
            let mut image: Vec<(usize, u64)> = self.g.adjacency[v]
                .iter()
                .map(|&(w, c)| (map[w], c))
                .collect();
            image.sort_unstable();
            image == self.h.sorted_adjacency(map[v])
        })
    }
}

fn canonical_ids(values: &[u64]) -> Vec<u32> {
    let mut distinct = values.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    values
        .iter()
        .map(|v| distinct.binary_search(v).unwrap() as u32)
        .collect()
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}
