//! Poset isomorphism, invariant fingerprints, and the machine checks of the
//! classification of coinciding quotients.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde::Serialize;

use crate::bwgraph::{bw_graph, bwgraph_isomorphic, invert_bu, BWGraph, Color};
use crate::coxeter::{Bond, CoxeterMatrix, ParabolicSubset};
use crate::invariants::{g_of, triple};
use crate::iso::{find_isomorphism, ColoredGraph};
use crate::pair::{expected_coincidences, lemnew_instances, CoxeterPair};
use crate::poset::{bruhat_order, PointedPoset};
use crate::weyl::{enumerate_quotient, WeylError};

fn cover_graph(p: &PointedPoset) -> ColoredGraph {
    let mut g = ColoredGraph::new(p.ranks().iter().map(|&r| r as u64).collect());
    for (a, b) in p.covers() {
        g.add_arc(a, b, 1, 2);
    }
    g
}

/// A rank-preserving order isomorphism `map` from `p` onto `q`, if any.
pub fn poset_isomorphic(p: &PointedPoset, q: &PointedPoset) -> Option<Vec<usize>> {
    if p.len() != q.len() || p.rank_sizes() != q.rank_sizes() || p.cover_count() != q.cover_count() {
        return None;
    }
    find_isomorphism(&cover_graph(p), &cover_graph(q))
}

/// Checks that `map` is a bijection carrying ranks to ranks and the cover
/// relation of `p` exactly onto that of `q`.
pub fn is_order_isomorphism(p: &PointedPoset, q: &PointedPoset, map: &[usize]) -> bool {
    if map.len() != p.len() || p.len() != q.len() {
        return false;
    }
    let mut hit = vec![false; q.len()];
    for &y in map {
        if y >= q.len() || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    if (0..p.len()).any(|x| p.rank(x) != q.rank(map[x])) {
        return false;
    }
    let mut image: Vec<(usize, usize)> = p.covers().iter().map(|&(a, b)| (map[a], map[b])).collect();
    image.sort_unstable();
    image == q.covers()
}

/// Invariants of a poset up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub size: usize,
    pub rank_sizes: Vec<usize>,
    /// Per rank, the sorted `(up, down)` degrees.
    pub degrees: Vec<Vec<(usize, usize)>>,
    pub refinement: u64,
    pub mu: Vec<Bond>,
    pub nu: Vec<usize>,
}

fn hash_of(value: &impl Hash) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

pub fn refinement_rounds(size: usize) -> usize {
    let log = usize::BITS - size.max(1).saturating_sub(1).leading_zeros();
    3 * log as usize + 2
}

pub fn fingerprint(p: &PointedPoset) -> Fingerprint {
    let n = p.len();
    let mut degrees = vec![Vec::new(); p.rank_sizes().len()];
    for x in 0..n {
        degrees[p.rank(x)].push((p.upper_covers(x).len(), p.lower_covers(x).len()));
    }
    degrees.iter_mut().for_each(|d| d.sort_unstable());

    let mut colors: Vec<u64> = (0..n)
        .map(|x| hash_of(&(p.rank(x), p.upper_covers(x).len(), p.lower_covers(x).len())))
        .collect();
    for _ in 0..refinement_rounds(n) {
        colors = (0..n)
            .map(|x| {
                let mut up: Vec<u64> = p.upper_covers(x).iter().map(|&y| colors[y]).collect();
                let mut down: Vec<u64> = p.lower_covers(x).iter().map(|&y| colors[y]).collect();
                up.sort_unstable();
                down.sort_unstable();
                hash_of(&(colors[x], up, down))
            })
            .collect();
    }
    let mut final_colors = colors;
    final_colors.sort_unstable();
    let (mu, nu) = triple(p).multisets();
    Fingerprint {
        size: n,
        rank_sizes: p.rank_sizes(),
        degrees,
        refinement: hash_of(&final_colors),
        mu,
        nu,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub from: String,
    pub to: String,
    /// `bijection[i]` is the image of element `i` of `from`.
    pub bijection: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoincidenceClass {
    pub pairs: Vec<String>,
    pub size: usize,
    pub length: usize,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedPair {
    pub pair: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoincidenceReport {
    pub pairs_checked: usize,
    pub classes: Vec<CoincidenceClass>,
    pub skipped: Vec<SkippedPair>,
    pub discrepancies: Vec<String>,
}

impl CoincidenceReport {
    /// Classes with at least two pairs.
    pub fn coincidences(&self) -> impl Iterator<Item = &CoincidenceClass> {
        self.classes.iter().filter(|c| c.pairs.len() >= 2)
    }

    pub fn is_consistent(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialises")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{:<6} {:<7} pairs", "size", "length").unwrap();
        for c in self.coincidences() {
            writeln!(out, "{:<6} {:<7} {}", c.size, c.length, c.pairs.join("  ")).unwrap();
        }
        writeln!(
            out,
            "{} pairs, {} classes, {} coincidences, {} skipped, {} discrepancies",
            self.pairs_checked,
            self.classes.len(),
            self.coincidences().count(),
            self.skipped.len(),
            self.discrepancies.len()
        )
        .unwrap();
        for s in &self.skipped {
            writeln!(out, "skipped {}: {}", s.pair, s.reason).unwrap();
        }
        for d in &self.discrepancies {
            writeln!(out, "DISCREPANCY {d}").unwrap();
        }
        out
    }
}

/// The predicted class of a pair: its essential irreducible factors, each
/// replaced by a representative of its predicted class, as a sorted list.
fn predicted_key(pair: &CoxeterPair, table: &BTreeMap<String, String>) -> String {
    let mut keys: Vec<String> = pair
        .essential_factors()
        .iter()
        .map(|f| {
            let k = f.symmetry_key();
            table.get(&k).cloned().unwrap_or(k)
        })
        .collect();
    keys.sort();
    if keys.is_empty() {
        "1".into()
    } else {
        keys.join("x")
    }
}

/// Partitions `pairs` into isomorphism classes of their quotient posets and
/// compares the partition with the predicted coincidences.
pub fn classify(pairs: &[CoxeterPair], cap: usize) -> CoincidenceReport {
    let mut pairs = pairs.to_vec();
    pairs.sort_by(|a, b| a.name.cmp(&b.name));
    let computed: Vec<Result<(PointedPoset, Fingerprint), WeylError>> = pairs
        .par_iter()
        .map(|pair| {
            let p = pair.poset(Some(cap))?;
            let f = fingerprint(&p);
            Ok((p, f))
        })
        .collect();

    let mut skipped = Vec::new();
    let mut kept: Vec<(usize, PointedPoset, Fingerprint)> = Vec::new();
    for (i, r) in computed.into_iter().enumerate() {
        match r {
            Ok((p, f)) => kept.push((i, p, f)),
            Err(e) => skipped.push(SkippedPair {
                pair: pairs[i].name.clone(),
                reason: e.to_string(),
            }),
        }
    }

    let mut buckets: BTreeMap<&Fingerprint, Vec<usize>> = BTreeMap::new();
    for (k, (_, _, f)) in kept.iter().enumerate() {
        buckets.entry(f).or_default().push(k);
    }
    let buckets: Vec<Vec<usize>> = buckets.into_values().collect();
    let mut classes: Vec<CoincidenceClass> = buckets
        .par_iter()
        .flat_map_iter(|bucket| {
            // Split the bucket greedily against class representatives.
            let mut groups: Vec<(usize, Vec<Witness>, Vec<usize>)> = Vec::new();
            for &k in bucket {
                let (i, p, _) = &kept[k];
                let mut placed = false;
                for (rep, witnesses, members) in groups.iter_mut() {
                    let (ri, rp, _) = &kept[*rep];
                    if let Some(map) = poset_isomorphic(rp, p) {
                        assert!(is_order_isomorphism(rp, p, &map));
                        witnesses.push(Witness {
                            from: pairs[*ri].name.clone(),
                            to: pairs[*i].name.clone(),
                            bijection: map,
                        });
                        members.push(k);
                        placed = true;
                        break;
                    }
                }
                if !placed {
                    groups.push((k, Vec::new(), vec![k]));
                }
            }
            groups
                .into_iter()
                .map(|(rep, witnesses, members)| {
                    let p = &kept[rep].1;
                    CoincidenceClass {
                        pairs: members.iter().map(|&k| pairs[kept[k].0].name.clone()).collect(),
                        size: p.len(),
                        length: p.length(),
                        witnesses,
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    classes.sort_by(|a, b| a.pairs[0].cmp(&b.pairs[0]));

    let max_rank = pairs.iter().map(|p| p.rank()).max().unwrap_or(0);
    let mut table = BTreeMap::new();
    for class in expected_coincidences(max_rank) {
        let rep = class[0].symmetry_key();
        for p in &class {
            table.insert(p.symmetry_key(), rep.clone());
        }
    }
    let by_name: BTreeMap<&str, &CoxeterPair> = pairs.iter().map(|p| (p.name.as_str(), p)).collect();
    let predicted = |name: &str| predicted_key(by_name[name], &table);

    let mut discrepancies = Vec::new();
    let mut observed_class: BTreeMap<String, usize> = BTreeMap::new();
    for (ci, class) in classes.iter().enumerate() {
        for name in &class.pairs {
            observed_class.insert(name.clone(), ci);
        }
        let first = predicted(&class.pairs[0]);
        for name in &class.pairs[1..] {
            if predicted(name) != first {
                discrepancies.push(format!(
                    "{} and {} have isomorphic posets but are not predicted to",
                    class.pairs[0], name
                ));
            }
        }
    }
    let mut predicted_groups: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for name in observed_class.keys() {
        predicted_groups.entry(predicted(name)).or_default().push(name.clone());
    }
    for group in predicted_groups.values() {
        let seen: BTreeSet<usize> = group.iter().map(|n| observed_class[n]).collect();
        if seen.len() > 1 {
            discrepancies.push(format!(
                "predicted coincidence {} splits into {} classes",
                group.join(", "),
                seen.len()
            ));
        }
    }

    CoincidenceReport {
        pairs_checked: kept.len(),
        classes,
        skipped,
        discrepancies,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyCheck {
    pub family: String,
    pub m: usize,
    pub n: usize,
    pub left: String,
    pub right: String,
    pub graphs_isomorphic: bool,
    /// Black and white vertex counts of the two poset graphs.
    pub left_colors: (usize, usize),
    pub right_colors: (usize, usize),
    pub length_difference: i64,
    pub predicted_difference: i64,
    pub posets_isomorphic: bool,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.graphs_isomorphic
            && self.length_difference == self.predicted_difference
            && self.length_difference != 0
            && !self.posets_isomorphic
    }
}

/// For each instance of the two families with `m <= m_bound`, `n <= n_bound`
/// and `m + n <= sum_bound`: the poset graphs agree, the lengths differ by
/// the predicted amount, so the posets differ.
pub fn lemnew_families_check(m_bound: usize, n_bound: usize, sum_bound: usize) -> Vec<FamilyCheck> {
    lemnew_instances(m_bound, n_bound, sum_bound)
        .par_iter()
        .map(|inst| {
            let p = inst.left.poset(None).expect("small pair");
            let q = inst.right.poset(None).expect("small pair");
            let (gp, gq) = (g_of(&p).graph, g_of(&q).graph);
            let colors = |g: &BWGraph| (g.count(Color::Black), g.count(Color::White));
            FamilyCheck {
                family: inst.family.to_string(),
                m: inst.m,
                n: inst.n,
                left: inst.left.name.clone(),
                right: inst.right.name.clone(),
                graphs_isomorphic: bwgraph_isomorphic(&gp, &gq).is_some(),
                left_colors: colors(&gp),
                right_colors: colors(&gq),
                length_difference: p.length() as i64 - q.length() as i64,
                predicted_difference: inst.length_difference,
                posets_isomorphic: poset_isomorphic(&p, &q).is_some(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub pair: String,
    pub x1_matches: bool,
    pub mu_matches: bool,
    pub nu_matches: bool,
    /// When no generator outside `J` neighbours `J`: whether the poset is
    /// the full Bruhat order of the subgroup generated outside `J`.
    pub product_shape: Option<bool>,
    pub problems: Vec<String>,
}

impl Theorem1Report {
    pub fn passed(&self) -> bool {
        self.x1_matches && self.mu_matches && self.nu_matches && self.product_shape != Some(false)
    }
}

/// Compares the triple of the quotient poset with the Coxeter data.
pub fn verify_theorem1(pair: &CoxeterPair, cap: usize) -> Result<Theorem1Report, WeylError> {
    let q = pair.enumerate(Some(cap))?;
    let p = bruhat_order(&q);
    let t = triple(&p);
    let m = &pair.matrix;
    let outside = pair.subset.complement(m.rank());
    let mut problems = Vec::new();

    let gens: Vec<Option<usize>> = outside.iter().map(|&s| q.generator_element(s)).collect();
    let mut from_gens: Vec<usize> = gens.iter().flatten().copied().collect();
    from_gens.sort_unstable();
    let x1_matches = gens.iter().all(Option::is_some) && from_gens == t.x1;
    if !x1_matches {
        problems.push(format!("rank one {:?} vs generators {:?}", t.x1, outside));
    }

    let mut mu_matches = x1_matches;
    let mut nu_matches = x1_matches;
    if x1_matches {
        for (i, &s) in outside.iter().enumerate() {
            let a = gens[i].unwrap();
            let neighbours = m.neighbours(s).filter(|&u| pair.subset.contains(u)).count();
            if t.nu[&a] != neighbours {
                nu_matches = false;
                problems.push(format!("nu({}) = {} but {} neighbours in J", s + 1, t.nu[&a], neighbours));
            }
            for (k, &u) in outside.iter().enumerate().skip(i + 1) {
                let b = gens[k].unwrap();
                if t.mu(a, b) != Some(m.bond(s, u)) {
                    mu_matches = false;
                    problems.push(format!("mu({}, {}) = {:?} but m = {}", s + 1, u + 1, t.mu(a, b), m.bond(s, u)));
                }
            }
        }
    }

    let product_shape = if x1_matches && t.nu.values().all(|&v| v == 0) {
        let sub = m.restrict(&outside);
        let full = enumerate_quotient::<i64>(&sub, &ParabolicSubset::empty(), Some(cap))?;
        Some(poset_isomorphic(&p, &bruhat_order(&full)).is_some())
    } else {
        None
    };
    if product_shape == Some(false) {
        problems.push("poset is not the Bruhat order of the complement".into());
    }
    Ok(Theorem1Report {
        pair: pair.name.clone(),
        x1_matches,
        mu_matches,
        nu_matches,
        product_shape,
        problems,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Undecided;

/// Recovers the black-and-white graph of the pair from its poset, when the
/// poset graph is the expansion of a graph with label-free white edges.
pub fn reconstruct_pair(p: &PointedPoset) -> Result<BWGraph, Undecided> {
    invert_bu(&g_of(p).graph).map_err(|_| Undecided)
}

/// True when `J` touches no labelled edge of a simple Coxeter graph.
pub fn label_free_j_edges(m: &CoxeterMatrix, j: &ParabolicSubset) -> bool {
    m.is_simple()
        && m.edges()
            .iter()
            .all(|&(a, b, bond)| bond == Bond::Finite(3) || !(j.contains(a) || j.contains(b)))
}

/// The graph of the pair without the components lying entirely in `J`,
/// which leave no trace in the poset.
pub fn essential_bw_graph(m: &CoxeterMatrix, j: &ParabolicSubset) -> BWGraph {
    let keep: Vec<usize> = m
        .connected_components()
        .into_iter()
        .filter(|c| c.iter().any(|&g| !j.contains(g)))
        .flatten()
        .collect();
    let mut keep = keep;
    keep.sort_unstable();
    let sub = m.restrict(&keep);
    let local = keep
        .iter()
        .enumerate()
        .filter(|(_, &g)| j.contains(g))
        .map(|(i, _)| i);
    bw_graph(&sub, &ParabolicSubset::new(&sub, local).expect("restricted subset"))
}

/// Whether [`reconstruct_pair`] returns the graph of the pair itself.
pub fn round_trips(pair: &CoxeterPair, cap: usize) -> Result<bool, WeylError> {
    let p = pair.poset(Some(cap))?;
    Ok(match reconstruct_pair(&p) {
        Ok(g) => bwgraph_isomorphic(&g, &essential_bw_graph(&pair.matrix, &pair.subset)).is_some(),
        Err(Undecided) => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::WeylType;
    use crate::pair::irreducible_pairs;
    use crate::weyl::DEFAULT_CAP;

    fn pair(t: &str, j: &[usize]) -> CoxeterPair {
        CoxeterPair::irreducible(t.parse().unwrap(), j)
    }

    fn poset(t: &str, j: &[usize]) -> PointedPoset {
        pair(t, j).poset(None).unwrap()
    }

    #[test]
    fn isomorphic_chains() {
        let a = poset("A3", &[0, 1]);
        let b = poset("B2", &[0]);
        let map = poset_isomorphic(&a, &b).unwrap();
        assert!(is_order_isomorphism(&a, &b, &map));
        let six = [poset("A5", &[0, 1, 2, 3]), poset("G2", &[0]), poset("B3", &[1, 2])];
        for x in &six {
            for y in &six {
                assert!(poset_isomorphic(x, y).is_some());
                assert_eq!(fingerprint(x), fingerprint(y));
            }
        }
        assert!(poset_isomorphic(&poset("F4", &[2, 3]), &poset("D5", &[2, 3, 4])).is_none());
    }

    #[test]
    fn automorphic_relabelling() {
        let p = poset("A3", &[]);
        let map = poset_isomorphic(&p, &p).unwrap();
        assert!(is_order_isomorphism(&p, &p, &map));
        let mut bad = map.clone();
        bad.swap(0, 1);
        assert!(!is_order_isomorphism(&p, &p, &bad));
    }

    #[test]
    fn fingerprint_rounds() {
        assert_eq!(refinement_rounds(1), 2);
        assert_eq!(refinement_rounds(2), 5);
        assert_eq!(refinement_rounds(1024), 32);
        assert_eq!(refinement_rounds(1025), 35);
    }

    #[test]
    fn classify_small_ranks() {
        let report = classify(&irreducible_pairs(3), DEFAULT_CAP);
        assert!(report.is_consistent(), "{}", report.to_table());
        let mut classes: Vec<Vec<String>> = report.coincidences().map(|c| c.pairs.clone()).collect();
        classes.sort();
        assert_eq!(
            classes,
            vec![
                vec!["A1/A1@{1}", "A2/A2@{1,2}", "A3/A3@{1,2,3}", "B2/B2@{1,2}", "B3/B3@{1,2,3}", "G2/G2@{1,2}"],
                vec!["A3/A2@{1,2}", "B2/A1@{1}"],
                vec!["B3/B2@{2,3}", "G2/A1@{1}"],
            ]
        );
        for c in report.coincidences() {
            assert_eq!(c.witnesses.len(), c.pairs.len() - 1);
        }
    }

    #[test]
    fn bw_only_coincidence_is_not_a_poset_coincidence() {
        let report = classify(&[pair("F4", &[1, 2, 3]), pair("E6", &[1, 2, 3, 4, 5])], DEFAULT_CAP);
        assert_eq!(report.classes.len(), 2);
        assert!(report.is_consistent());
        let single = classify(&[pair("B2", &[])], DEFAULT_CAP);
        assert_eq!(single.classes.len(), 1);
        let capped = classify(&[pair("B3", &[]), pair("A2", &[])], 10);
        assert_eq!(capped.skipped.len(), 1);
        assert_eq!(capped.skipped[0].pair, "B3/1");
    }

    #[test]
    fn family_checks() {
        let checks = lemnew_families_check(2, 2, 4);
        let pick = |l: &str, r: &str| checks.iter().find(|c| c.left == l && c.right == r).unwrap().clone();
        let ba = pick("B3/A1@{3}", "A4/A2@{3,4}");
        assert!(ba.passed(), "{ba:?}");
        assert_eq!(ba.length_difference, 1);
        assert!(checks.iter().filter(|c| c.family == "B/A").all(FamilyCheck::passed));
        let m2: BTreeSet<i64> = checks.iter().filter(|c| c.m == 2).map(|c| c.length_difference).collect();
        assert_eq!(m2, BTreeSet::from([-2, 3]));

        // Lengths follow the formula, but the poset graphs of the B side have
        // one white vertex fewer than those of the D side.
        let bd = pick("B3/A1@{2}", "D4/A2@{2,3}");
        assert_eq!((bd.length_difference, bd.predicted_difference), (-1, -1));
        assert!(!bd.graphs_isomorphic && !bd.posets_isomorphic);
        let p = pair("B3", &[1]).poset(None).unwrap();
        let q = pair("D4", &[1, 2]).poset(None).unwrap();
        let whites = |p: &PointedPoset| g_of(p).graph.count(crate::bwgraph::Color::White);
        assert_eq!((whites(&p), whites(&q)), (3, 4));
    }

    #[test]
    fn triple_matches_coxeter_data() {
        let r = verify_theorem1(&pair("E6", &[1, 2, 3, 4, 5]), DEFAULT_CAP).unwrap();
        assert!(r.passed(), "{:?}", r.problems);
        let r = verify_theorem1(&pair("B3", &[0, 1, 2]), DEFAULT_CAP).unwrap();
        assert!(r.passed());
        let r = verify_theorem1(&pair("B4", &[1, 2]), DEFAULT_CAP).unwrap();
        assert!(r.passed() && r.product_shape.is_none());
    }

    #[test]
    fn reconstruction() {
        let e6 = pair("E6", &[1, 2, 4, 5]);
        assert!(round_trips(&e6, DEFAULT_CAP).unwrap());
        for r in 1..=5 {
            let t = WeylType::new(crate::coxeter::Family::A, r).unwrap();
            let m = CoxeterMatrix::weyl(t);
            for mask in 0..1u64 << r {
                let p = CoxeterPair::new(m.clone(), ParabolicSubset::from_mask(&m, mask)).unwrap();
                assert!(round_trips(&p, DEFAULT_CAP).unwrap(), "{p}");
            }
        }
        assert_eq!(reconstruct_pair(&poset("F4", &[1, 2])), Err(Undecided));
    }
}
