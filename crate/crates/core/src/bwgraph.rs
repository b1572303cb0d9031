//! Black/white Coxeter graphs, the white-component expansion and its inverse.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{Bond, CoxeterMatrix, ParabolicSubset};
use crate::iso::{self, ColoredGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BwGraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge label {0} is not allowed (labels must be at least 4)")]
    BadLabel(Bond),
    #[error("labelled edge {0}-{1} meets a white vertex")]
    LabelledWhiteEdge(usize, usize),
    #[error("graph is not simple (connected and acyclic)")]
    NotSimple,
    #[error("malformed graph JSON: {0}")]
    Parse(String),
}

/// The graph is not the expansion of any bw-graph.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("graph is not in the image of the white-component expansion")]
pub struct NotInImage;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

/// A Coxeter graph with coloured vertices. An edge without label has bond 3.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BWGraph {
    colors: Vec<Color>,
    edges: BTreeMap<(usize, usize), Option<Bond>>,
}

impl BWGraph {
    pub fn new(colors: Vec<Color>) -> Self {
        BWGraph {
            colors,
            edges: BTreeMap::new(),
        }
    }

    /// Adds (or relabels) the edge `a-b`. `Some(label)` requires a label of at least 4.
    pub fn add_edge(&mut self, a: usize, b: usize, label: Option<Bond>) -> Result<(), BwGraphError> {
        if a == b {
            return Err(BwGraphError::SelfLoop(a));
        }
        for v in [a, b] {
            if v >= self.colors.len() {
                return Err(BwGraphError::VertexOutOfRange(v));
            }
        }
        if let Some(l) = label {
            if l < Bond::Finite(4) {
                return Err(BwGraphError::BadLabel(l));
            }
        }
        self.edges.insert((a.min(b), a.max(b)), label);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn count(&self, color: Color) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    /// Edges `(a, b, label)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Option<Bond>)> + '_ {
        self.edges.iter().map(|(&(a, b), &l)| (a, b, l))
    }

    pub fn edge(&self, a: usize, b: usize) -> Option<Option<Bond>> {
        self.edges.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(a, b) in self.edges.keys() {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Connected and acyclic (the empty graph counts as simple).
    pub fn is_simple(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.len() && self.edges.len() + 1 == self.len()
    }

    /// Connected components of the white vertices, each sorted.
    pub fn white_components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.colors[start] != Color::White {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] && self.colors[w] == Color::White {
                        seen[w] = true;
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

    fn check_labels_black_only(&self) -> Result<(), (usize, usize)> {
        for (&(a, b), label) in &self.edges {
            if label.is_some() && (self.colors[a] == Color::White || self.colors[b] == Color::White) {
                return Err((a, b));
            }
        }
        Ok(())
    }

    fn to_colored(&self) -> ColoredGraph {
        let colors = self
            .colors
            .iter()
            .map(|c| match c {
                Color::Black => 0,
                Color::White => 1,
            })
            .collect();
        let mut g = ColoredGraph::new(colors);
        for (a, b, label) in self.edges() {
            g.add_edge(a, b, label_code(label));
        }
        g
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = GraphDoc {
            vertices: self
                .colors
                .iter()
                .enumerate()
                .map(|(id, &color)| VertexDoc { id, color })
                .collect(),
            edges: self
                .edges()
                .map(|(a, b, label)| EdgeDoc { a, b, label })
                .collect(),
        };
        serde_json::to_value(doc).expect("graph serialises")
    }

    pub fn from_json(text: &str) -> Result<BWGraph, BwGraphError> {
        let doc: GraphDoc =
            serde_json::from_str(text).map_err(|e| BwGraphError::Parse(e.to_string()))?;
        let mut colors = vec![None; doc.vertices.len()];
        for v in &doc.vertices {
            let slot = colors
                .get_mut(v.id)
                .ok_or(BwGraphError::VertexOutOfRange(v.id))?;
            if slot.replace(v.color).is_some() {
                return Err(BwGraphError::Parse(format!("duplicate vertex id {}", v.id)));
            }
        }
        let colors: Vec<Color> = colors.into_iter().map(|c| c.unwrap()).collect();
        let mut g = BWGraph::new(colors);
        for e in doc.edges {
            if g.edge(e.a, e.b).is_some() {
                return Err(BwGraphError::Parse(format!("duplicate edge {}-{}", e.a, e.b)));
            }
            g.add_edge(e.a, e.b, e.label)?;
        }
        Ok(g)
    }

    /// Graphviz rendering: black vertices filled, white ones hollow.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph bw {\n  node [shape=circle, label=\"\", width=0.25];\n");
        for (v, c) in self.colors.iter().enumerate() {
            let style = match c {
                Color::Black => "style=filled, fillcolor=black",
                Color::White => "style=solid, fillcolor=white",
            };
            writeln!(out, "  {v} [{style}, xlabel=\"{v}\"];").unwrap();
        }
        for (a, b, label) in self.edges() {
            match label {
                Some(l) => writeln!(out, "  {a} -- {b} [label=\"{l}\"];").unwrap(),
                None => writeln!(out, "  {a} -- {b};").unwrap(),
            }
        }
        out.push_str("}\n");
        out
    }
}

fn label_code(label: Option<Bond>) -> u64 {
    match label {
        None => 3,
        Some(Bond::Finite(m)) => m as u64,
        Some(Bond::Infinite) => u64::MAX,
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct VertexDoc {
    id: usize,
    color: Color,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    a: usize,
    b: usize,
    label: Option<Bond>,
}

/// The bw-Coxeter graph of `(W, W_J)`: generators in `J` are white.
pub fn bw_graph(m: &CoxeterMatrix, j: &ParabolicSubset) -> BWGraph {
    let colors = (0..m.rank())
        .map(|g| if j.contains(g) { Color::White } else { Color::Black })
        .collect();
    let mut g = BWGraph::new(colors);
    for (a, b, bond) in m.edges() {
        let label = (bond != Bond::Finite(3)).then_some(bond);
        g.add_edge(a, b, label).expect("coxeter edges are valid");
    }
    g
}

/// Replaces every white component by one copy per neighbouring black vertex,
/// each copy attached exactly like the original. White components without a
/// black neighbour are dropped.
///
/// The output lists the black vertices first, in their original order,
/// followed by the white copies component by component.
pub fn bu_expand(g: &BWGraph) -> Result<BWGraph, BwGraphError> {
    if let Err((a, b)) = g.check_labels_black_only() {
        return Err(BwGraphError::LabelledWhiteEdge(a, b));
    }
    if !g.is_simple() {
        return Err(BwGraphError::NotSimple);
    }
    Ok(expand_unchecked(g))
}

fn expand_unchecked(g: &BWGraph) -> BWGraph {
    let blacks: Vec<usize> = (0..g.len()).filter(|&v| g.color(v) == Color::Black).collect();
    let black_index: HashMap<usize, usize> = blacks.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let components = g.white_components();
    let copies: Vec<usize> = components
        .iter()
        .map(|comp| black_neighbours(g, comp).len())
        .collect();
    let whites: usize = components.iter().zip(&copies).map(|(c, n)| c.len() * n).sum();

    let mut colors = vec![Color::Black; blacks.len()];
    colors.extend(std::iter::repeat_n(Color::White, whites));
    let mut out = BWGraph::new(colors);
    for (a, b, label) in g.edges() {
        if let (Some(&x), Some(&y)) = (black_index.get(&a), black_index.get(&b)) {
            out.add_edge(x, y, label).unwrap();
        }
    }
    let mut next = blacks.len();
    for (comp, &n) in components.iter().zip(&copies) {
        for _ in 0..n {
            let local: HashMap<usize, usize> =
                comp.iter().enumerate().map(|(i, &v)| (v, next + i)).collect();
            for &v in comp {
                for w in g.neighbours(v) {
                    let label = g.edge(v, w).unwrap();
                    if let Some(&wl) = local.get(&w) {
                        out.add_edge(local[&v], wl, label).unwrap();
                    } else if let Some(&bw) = black_index.get(&w) {
                        out.add_edge(local[&v], bw, label).unwrap();
                    }
                }
            }
            next += comp.len();
        }
    }
    out
}

fn black_neighbours(g: &BWGraph, comp: &[usize]) -> BTreeSet<usize> {
    comp.iter()
        .flat_map(|&v| g.neighbours(v))
        .filter(|&w| g.color(w) == Color::Black)
        .collect()
}

/// Recovers `h` with `bu_expand(h) ≅ g`.
///
/// White components are grouped by shape together with how they attach to
/// the black vertices. A class of `k` components adjacent to `n` black
/// vertices must have `n` dividing `k`, and keeps `k / n` of them. The
/// candidate is re-expanded and compared with `g`.
pub fn invert_bu(g: &BWGraph) -> Result<BWGraph, NotInImage> {
    if g.check_labels_black_only().is_err() {
        return Err(NotInImage);
    }
    let components = g.white_components();
    // Vertex colour inside a component: the exact set of black neighbours.
    let mut attachment_ids: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    let attachments: Vec<Vec<u64>> = components
        .iter()
        .map(|comp| {
            comp.iter()
                .map(|&v| {
                    let mut blacks: Vec<usize> = g
                        .neighbours(v)
                        .into_iter()
                        .filter(|&w| g.color(w) == Color::Black)
                        .collect();
                    blacks.sort_unstable();
                    let next = attachment_ids.len() as u64;
                    *attachment_ids.entry(blacks).or_insert(next)
                })
                .collect()
        })
        .collect();
    let shapes: Vec<ColoredGraph> = components
        .iter()
        .zip(&attachments)
        .map(|(comp, colors)| {
            let local: HashMap<usize, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let mut cg = ColoredGraph::new(colors.clone());
            for (a, b, label) in g.edges() {
                if let (Some(&x), Some(&y)) = (local.get(&a), local.get(&b)) {
                    cg.add_edge(x, y, label_code(label));
                }
            }
            cg
        })
        .collect();

    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, shape) in shapes.iter().enumerate() {
        match classes
            .iter_mut()
            .find(|class| iso::find_isomorphism(&shapes[class[0]], shape).is_some())
        {
            Some(class) => class.push(i),
            None => classes.push(vec![i]),
        }
    }

    let mut keep: BTreeSet<usize> = (0..g.len()).filter(|&v| g.color(v) == Color::Black).collect();
    for class in &classes {
        let n = black_neighbours(g, &components[class[0]]).len();
        if n == 0 || class.len() % n != 0 {
            return Err(NotInImage);
        }
        for &c in &class[..class.len() / n] {
            keep.extend(components[c].iter().copied());
        }
    }
    let keep: Vec<usize> = keep.into_iter().collect();
    let index: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut h = BWGraph::new(keep.iter().map(|&v| g.color(v)).collect());
    for (a, b, label) in g.edges() {
        if let (Some(&x), Some(&y)) = (index.get(&a), index.get(&b)) {
            h.add_edge(x, y, label).unwrap();
        }
    }
    let expanded = bu_expand(&h).map_err(|_| NotInImage)?;
    if bwgraph_isomorphic(&expanded, g).is_some() {
        Ok(h)
    } else {
        Err(NotInImage)
    }
}

/// A colour-, edge- and label-preserving bijection `g -> h`, if one exists.
pub fn bwgraph_isomorphic(g: &BWGraph, h: &BWGraph) -> Option<Vec<usize>> {
    if g.len() != h.len()
        || g.edges.len() != h.edges.len()
        || g.count(Color::Black) != h.count(Color::Black)
    {
        return None;
    }
    iso::find_isomorphism(&g.to_colored(), &h.to_colored())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::WeylType;

    fn weyl(s: &str) -> CoxeterMatrix {
        CoxeterMatrix::weyl(s.parse::<WeylType>().unwrap())
    }

    fn pair(s: &str, j: &[usize]) -> BWGraph {
        let m = weyl(s);
        let j = ParabolicSubset::new(&m, j.iter().copied()).unwrap();
        bw_graph(&m, &j)
    }

    fn path(colors: &[Color]) -> BWGraph {
        let mut g = BWGraph::new(colors.to_vec());
        for i in 1..colors.len() {
            g.add_edge(i - 1, i, None).unwrap();
        }
        g
    }

    /// `(E6, A3 x A1)` with black generators s1 and s4 (zero-based 0 and 3).
    fn e6_example() -> BWGraph {
        pair("E6", &[1, 2, 4, 5])
    }

    #[test]
    fn colouring_and_labels() {
        let g = pair("A3", &[0, 1, 2]);
        assert_eq!(g.count(Color::White), 3);
        assert_eq!(g.edges().count(), 2);
        assert!(g.edges().all(|e| e.2.is_none()));

        let g = pair("B3", &[0, 1]);
        assert_eq!(g.color(2), Color::Black);
        assert_eq!(g.edge(1, 2), Some(Some(Bond::Finite(4))));
        assert_eq!(g.edge(0, 1), Some(None));

        let g = e6_example();
        assert_eq!((g.count(Color::Black), g.count(Color::White)), (2, 4));
    }

    #[test]
    fn expansion_of_the_e6_example() {
        let out = bu_expand(&e6_example()).unwrap();
        assert_eq!(out.count(Color::Black), 2);
        assert_eq!(out.count(Color::White), 7);
        // Two copies of the 3-vertex component attached to both blacks, one
        // copy of the isolated white vertex attached to its single neighbour.
        let expected = {
            use Color::*;
            let mut g = BWGraph::new(vec![Black, Black, White, White, White, White, White, White, White]);
            for (a, b) in [(0, 2), (2, 3), (3, 4), (3, 1), (0, 5), (5, 6), (6, 7), (6, 1), (1, 8)] {
                g.add_edge(a, b, None).unwrap();
            }
            g
        };
        assert!(bwgraph_isomorphic(&out, &expected).is_some());
        assert_eq!(invert_bu(&out).map(|h| bwgraph_isomorphic(&h, &e6_example()).is_some()), Ok(true));
    }

    #[test]
    fn expansion_fixed_points() {
        let black = pair("F4", &[]);
        assert_eq!(bu_expand(&black).unwrap(), black);
        assert_eq!(invert_bu(&black), Ok(black.clone()));
        let g = path(&[Color::Black, Color::White]);
        assert_eq!(bu_expand(&g).unwrap(), g);
        // All-white: the only component has no black neighbour.
        assert!(bu_expand(&pair("A3", &[0, 1, 2])).unwrap().is_empty());
    }

    #[test]
    fn expansion_preconditions() {
        assert_eq!(
            bu_expand(&pair("B3", &[1, 2])),
            Err(BwGraphError::LabelledWhiteEdge(1, 2))
        );
        let mut cyc = BWGraph::new(vec![Color::Black; 3]);
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            cyc.add_edge(a, b, None).unwrap();
        }
        assert_eq!(bu_expand(&cyc), Err(BwGraphError::NotSimple));
        let mut g = BWGraph::new(vec![Color::Black; 2]);
        assert_eq!(g.add_edge(0, 0, None), Err(BwGraphError::SelfLoop(0)));
        assert_eq!(g.add_edge(0, 1, Some(Bond::Finite(3))), Err(BwGraphError::BadLabel(Bond::Finite(3))));
    }

    #[test]
    fn inversion_rejects_asymmetric_copies() {
        // One white component attached to two blacks but present once.
        let g = path(&[Color::Black, Color::White, Color::Black]);
        assert_eq!(invert_bu(&g), Err(NotInImage));
        // Two identical copies: the A3 with a white middle vertex.
        let h = pair("A3", &[1]);
        let expanded = bu_expand(&h).unwrap();
        assert_eq!(expanded.count(Color::White), 2);
        let back = invert_bu(&expanded).unwrap();
        assert!(bwgraph_isomorphic(&back, &h).is_some());
    }

    #[test]
    fn isomorphism_respects_structure() {
        assert!(bwgraph_isomorphic(&path(&[Color::White; 3]), &path(&[Color::White; 4])).is_none());
        let a = pair("A4", &[0]);
        let b = pair("A4", &[3]);
        let map = bwgraph_isomorphic(&a, &b).unwrap();
        assert_eq!(map, vec![3, 2, 1, 0]);
        assert!(bwgraph_isomorphic(&pair("A4", &[1]), &a).is_none());
        assert!(bwgraph_isomorphic(&pair("B3", &[]), &pair("A3", &[])).is_none());
    }

    #[test]
    fn json_and_dot() {
        let g = pair("B3", &[0, 1]);
        let text = g.to_json().to_string();
        assert_eq!(
            text,
            r#"{"edges":[{"a":0,"b":1,"label":null},{"a":1,"b":2,"label":4}],"vertices":[{"color":"white","id":0},{"color":"white","id":1},{"color":"black","id":2}]}"#
        );
        assert_eq!(BWGraph::from_json(&text).unwrap(), g);
        assert!(BWGraph::from_json("").is_err());
        assert!(BWGraph::from_json(r#"{"vertices":[{"id":0,"color":"black"}],"edges":[{"a":0,"b":0,"label":null}]}"#).is_err());
        let dot = g.to_dot();
        assert!(dot.contains("2 [style=filled, fillcolor=black"));
        assert!(dot.contains("1 -- 2 [label=\"4\"]"));
    }
}
