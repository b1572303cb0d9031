//! Exhaustive-in-range verification suites. Each returns a [`SuiteReport`]
//! with one row per checked case, printable as a traceability table.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bwgraph::{bu_expand, bw_graph, bwgraph_isomorphic, invert_bu, BWGraph, Color};
use crate::classify::{
    classify, label_free_j_edges, lemnew_families_check, poset_isomorphic, verify_theorem1,
};
use crate::coxeter::{CoxeterMatrix, Family, ParabolicSubset, WeylType};
use crate::invariants::{g_of, sim_classes, vx, xinf_of};
use crate::oracle::{oracle_poset, DEFAULT_GROUP_CAP};
use crate::pair::{
    all_pairs_of, irreducible_pairs, lemnew_instances, two_factor_pairs, type_products, CoxeterPair,
};
use crate::poset::bruhat_order;
use crate::weyl::{cartan_of, positive_roots, quotient_length, DEFAULT_CAP};

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 5] = ["thm1", "thmnew", "propirr", "lemnew", "lemunique"];

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub case: String,
    pub property: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: &str, mut checks: Vec<Check>) -> SuiteReport {
        checks.sort_by(|a, b| (&a.property, &a.case).cmp(&(&b.property, &b.case)));
        SuiteReport {
            suite: suite.to_string(),
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialises")
    }

    pub fn to_table(&self) -> String {
        let case_width = self.checks.iter().map(|c| c.case.len()).max().unwrap_or(4).max(4);
        let prop_width = self.checks.iter().map(|c| c.property.len()).max().unwrap_or(8).max(8);
        let mut out = String::new();
        writeln!(out, "suite {}", self.suite).unwrap();
        writeln!(out, "{:<case_width$}  {:<prop_width$}  result  detail", "case", "property").unwrap();
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{:<case_width$}  {:<prop_width$}  {verdict:<6}  {}", c.case, c.property, c.detail)
                .unwrap();
        }
        let failed = self.failures().count();
        writeln!(out, "{} checks, {} passed, {} failed", self.checks.len(), self.checks.len() - failed, failed)
            .unwrap();
        out
    }
}

fn check(case: impl Into<String>, property: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        case: case.into(),
        property: property.to_string(),
        passed,
        detail: detail.into(),
    }
}

fn ty(family: Family, rank: usize) -> WeylType {
    WeylType::new(family, rank).expect("valid type")
}

fn pair(t: WeylType, j: &[usize]) -> CoxeterPair {
    CoxeterPair::irreducible(t, j)
}

/// Runs a suite by name with its default bounds.
pub fn run_suite(name: &str) -> Option<SuiteReport> {
    Some(match name {
        "thm1" => thm1(4, DEFAULT_CAP),
        "thmnew" => thmnew(5, DEFAULT_CAP),
        "propirr" => propirr(5, DEFAULT_CAP),
        "lemnew" => lemnew(5),
        "lemunique" => lemunique(120),
        _ => return None,
    })
}

/// Number of positive roots of each listed type against its closed form.
pub fn longest_lengths(types: &[WeylType]) -> SuiteReport {
    let checks = types
        .iter()
        .map(|&t| {
            let n = t.rank();
            let expected = match t.family() {
                Family::A => n * (n + 1) / 2,
                Family::B => n * n,
                Family::D => n * n - n,
                Family::E => [0, 0, 0, 0, 0, 0, 36, 63, 120][n],
                Family::F => 24,
                Family::G => 6,
            };
            let m = CoxeterMatrix::weyl(t);
            let roots = cartan_of::<i64>(&m).and_then(|c| positive_roots(&c)).map(|r| r.len());
            let top = quotient_length(&m, &ParabolicSubset::empty());
            let ok = roots.as_ref() == Ok(&expected) && top.as_ref() == Ok(&expected);
            check(t.to_string(), "length of w0", ok, format!("{roots:?} roots, top {top:?}, expected {expected}"))
        })
        .collect();
    SuiteReport::new("w0", checks)
}

/// The length differences of the four exceptional coincidences and of both
/// families with `m + n <= sum_bound`, from lengths alone.
pub fn length_differences(sum_bound: usize) -> SuiteReport {
    use Family::*;
    let mut cases = vec![
        (pair(ty(F, 4), &[2, 3]), pair(ty(D, 5), &[2, 3, 4]), 7),
        (pair(ty(F, 4), &[1, 2, 3]), pair(ty(E, 6), &[1, 2, 3, 4, 5]), -1),
    ];
    for inst in lemnew_instances(sum_bound, sum_bound, sum_bound) {
        cases.push((inst.left, inst.right, inst.length_difference));
    }
    let checks = cases
        .par_iter()
        .map(|(a, b, expected)| {
            let la = a.quotient_length() as i64;
            let lb = b.quotient_length() as i64;
            check(
                format!("{a} vs {b}"),
                "length difference",
                la - lb == *expected,
                format!("{la} - {lb} = {}, expected {expected}", la - lb),
            )
        })
        .collect();
    SuiteReport::new("lengths", checks)
}

/// Engine poset against the subword oracle, element for element: the
/// oracle's representatives map bijectively onto the engine's table and
/// the two orders agree on every pair.
pub fn oracle_equivalence_check(pair: &CoxeterPair, cap: usize) -> Check {
    let name = pair.name.clone();
    let q = match pair.enumerate(Some(cap)) {
        Ok(q) => q,
        Err(e) => return check(name, "oracle equivalence", false, e.to_string()),
    };
    let o = match oracle_poset(&pair.matrix, &pair.subset, DEFAULT_GROUP_CAP.max(cap)) {
        Ok(o) => o,
        Err(e) => return check(name, "oracle equivalence", false, e.to_string()),
    };
    let p = bruhat_order(&q);
    let map: Option<Vec<usize>> = o
        .reps
        .iter()
        .map(|&w| q.element_of_word(&o.group.get(w).word))
        .collect();
    let Some(map) = map else {
        return check(name, "oracle equivalence", false, "a representative word leaves the table");
    };
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    if map.len() != p.len() || distinct.len() != p.len() {
        return check(
            name,
            "oracle equivalence",
            false,
            format!("{} representatives vs {} engine elements", map.len(), p.len()),
        );
    }
    let n = map.len();
    let mut mismatches = 0;
    for i in 0..n {
        if o.poset.rank(i) != p.rank(map[i]) {
            mismatches += 1;
        }
        for k in 0..n {
            if o.poset.leq(i, k) != p.leq(map[i], map[k]) {
                mismatches += 1;
            }
        }
    }
    check(
        name,
        "oracle equivalence",
        mismatches == 0,
        format!("{n} elements, {mismatches} mismatches"),
    )
}

/// Every pair with `|W| <= max_order`, all `J`, plus the listed extras.
pub fn oracle_equivalence(max_order: u64, extra: &[CoxeterPair]) -> SuiteReport {
    let mut pairs: Vec<CoxeterPair> = type_products(max_order.max(1).ilog2() as usize, max_order)
        .iter()
        .flat_map(|types| all_pairs_of(types))
        .collect();
    pairs.extend(extra.iter().cloned());
    let checks = pairs
        .par_iter()
        .map(|p| oracle_equivalence_check(p, DEFAULT_CAP))
        .collect();
    SuiteReport::new("oracle", checks)
}

/// The triple read off the poset against the Coxeter data, for every
/// product of total rank at most `max_rank` and every `J`.
pub fn thm1(max_rank: usize, cap: usize) -> SuiteReport {
    let pairs: Vec<CoxeterPair> = type_products(max_rank, u64::MAX)
        .iter()
        .flat_map(|types| all_pairs_of(types))
        .collect();
    let checks = pairs
        .par_iter()
        .map(|p| match verify_theorem1(p, cap) {
            Ok(r) => {
                let detail = if r.problems.is_empty() {
                    match r.product_shape {
                        Some(true) => "x1, mu, nu match; product shape".to_string(),
                        _ => "x1, mu, nu match".to_string(),
                    }
                } else {
                    r.problems.join("; ")
                };
                check(p.name.clone(), "triple", r.passed(), detail)
            }
            Err(e) => check(p.name.clone(), "triple", false, e.to_string()),
        })
        .collect();
    SuiteReport::new("thm1", checks)
}

/// The expansion of the graph of `(E6, A3 x A1)` with black `s1`, `s4`: two
/// copies of the path component, one of the isolated white vertex.
pub fn e6_figure_graph() -> BWGraph {
    use Color::*;
    let mut g = BWGraph::new(vec![Black, Black, White, White, White, White, White, White, White]);
    for (a, b) in [(0, 2), (2, 3), (3, 4), (3, 1), (0, 5), (5, 6), (6, 7), (6, 1), (1, 8)] {
        g.add_edge(a, b, None).expect("fresh edge");
    }
    g
}

/// `G(P) = BU(bw graph)` for every irreducible pair of rank at most
/// `max_rank` whose `J` meets only unlabelled edges, and the E6 example.
pub fn thmnew(max_rank: usize, cap: usize) -> SuiteReport {
    let pairs: Vec<CoxeterPair> = irreducible_pairs(max_rank)
        .into_iter()
        .filter(|p| label_free_j_edges(&p.matrix, &p.subset))
        .collect();
    let mut checks: Vec<Check> = pairs
        .par_iter()
        .map(|p| {
            let poset = match p.poset(Some(cap)) {
                Ok(poset) => poset,
                Err(e) => return check(p.name.clone(), "G = BU", false, e.to_string()),
            };
            let g = g_of(&poset).graph;
            let expected = bu_expand(&bw_graph(&p.matrix, &p.subset)).expect("label-free white edges");
            let ok = bwgraph_isomorphic(&g, &expected).is_some();
            check(
                p.name.clone(),
                "G = BU",
                ok,
                format!(
                    "{}b+{}w vs {}b+{}w",
                    g.count(Color::Black),
                    g.count(Color::White),
                    expected.count(Color::Black),
                    expected.count(Color::White)
                ),
            )
        })
        .collect();

    let e6 = pair(ty(Family::E, 6), &[1, 2, 4, 5]);
    let c = match e6.poset(Some(cap)) {
        Ok(poset) => {
            let g = g_of(&poset).graph;
            let counts = (g.count(Color::Black), g.count(Color::White));
            check(
                e6.name.clone(),
                "figure graph",
                counts == (2, 7) && bwgraph_isomorphic(&g, &e6_figure_graph()).is_some(),
                format!("{}b+{}w", counts.0, counts.1),
            )
        }
        Err(e) => check(e6.name.clone(), "figure graph", false, e.to_string()),
    };
    checks.push(c);
    SuiteReport::new("thmnew", checks)
}

/// For products of two irreducible factors: the classes of `X1` are the
/// Coxeter components meeting `S \ J`, and each class generates a copy of
/// the quotient of its component.
pub fn propirr(max_rank: usize, cap: usize) -> SuiteReport {
    let pairs = two_factor_pairs(max_rank);
    let checks = pairs
        .par_iter()
        .flat_map_iter(|p| propirr_checks(p, cap))
        .collect();
    SuiteReport::new("propirr", checks)
}

fn propirr_checks(p: &CoxeterPair, cap: usize) -> Vec<Check> {
    let q = match p.enumerate(Some(cap)) {
        Ok(q) => q,
        Err(e) => return vec![check(p.name.clone(), "classes", false, e.to_string())],
    };
    let poset = bruhat_order(&q);
    let components = p.matrix.connected_components();
    let mut expected: Vec<Vec<usize>> = components
        .iter()
        .map(|comp| {
            let mut block: Vec<usize> = comp
                .iter()
                .filter(|&&g| !p.subset.contains(g))
                .map(|&g| q.generator_element(g).expect("generator outside J"))
                .collect();
            block.sort_unstable();
            block
        })
        .collect();
    let factor_pairs: Vec<CoxeterPair> = p.factors();
    let mut keyed: Vec<(Vec<usize>, &CoxeterPair)> =
        expected.iter().cloned().zip(factor_pairs.iter()).filter(|(b, _)| !b.is_empty()).collect();
    expected.retain(|b| !b.is_empty());
    expected.sort();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));

    let blocks = sim_classes(&poset).blocks;
    let mut out = vec![check(
        p.name.clone(),
        "classes",
        blocks == expected,
        format!("{} classes, {} components meet S\\J", blocks.len(), expected.len()),
    )];
    for (block, factor) in keyed {
        let c = match (xinf_of(&poset, &block), factor.poset(Some(cap))) {
            (Ok(sub), Ok(fp)) => {
                let ok = poset_isomorphic(&sub.poset, &fp).is_some();
                check(
                    p.name.clone(),
                    "class quotient",
                    ok,
                    format!("{}: {} vs {} elements", factor.name, sub.poset.len(), fp.len()),
                )
            }
            (Err(e), _) => check(p.name.clone(), "class quotient", false, e.to_string()),
            (_, Err(e)) => check(p.name.clone(), "class quotient", false, e.to_string()),
        };
        out.push(c);
    }
    out
}

/// Pairs whose posets differ although their poset graphs agree, and the
/// pair whose poset graph has no preimage under the expansion.
pub fn lemnew(sum_bound: usize) -> SuiteReport {
    use Family::*;
    let exceptional = [
        (pair(ty(F, 4), &[2, 3]), pair(ty(D, 5), &[2, 3, 4]), 7i64),
        (pair(ty(F, 4), &[1, 2, 3]), pair(ty(E, 6), &[1, 2, 3, 4, 5]), -1),
    ];
    let mut checks: Vec<Check> = exceptional
        .par_iter()
        .map(|(a, b, expected)| {
            let pa = a.poset(None).expect("small pair");
            let pb = b.poset(None).expect("small pair");
            let graphs = bwgraph_isomorphic(&g_of(&pa).graph, &g_of(&pb).graph).is_some();
            let diff = pa.length() as i64 - pb.length() as i64;
            let posets = poset_isomorphic(&pa, &pb).is_some();
            check(
                format!("{a} vs {b}"),
                "same G, different posets",
                graphs && diff == *expected && !posets,
                format!("graphs {graphs}, length difference {diff} (expected {expected}), posets isomorphic {posets}"),
            )
        })
        .collect();

    for f in lemnew_families_check(sum_bound, sum_bound, sum_bound) {
        checks.push(check(
            format!("{} vs {}", f.left, f.right),
            &format!("family {} (m={}, n={})", f.family, f.m, f.n),
            f.passed(),
            format!(
                "graphs {} ({}b+{}w vs {}b+{}w), length difference {} (expected {}), posets isomorphic {}",
                f.graphs_isomorphic,
                f.left_colors.0,
                f.left_colors.1,
                f.right_colors.0,
                f.right_colors.1,
                f.length_difference,
                f.predicted_difference,
                f.posets_isomorphic
            ),
        ));
    }

    let f4 = pair(ty(F, 4), &[1, 2]);
    let g = g_of(&f4.poset(None).expect("small pair")).graph;
    let verdict = invert_bu(&g);
    checks.push(check(
        f4.name.clone(),
        "not in image",
        verdict.is_err(),
        format!("{:?}", verdict.map(|h| h.len())),
    ));
    SuiteReport::new("lemnew", checks)
}

/// `VX` against the oracle's unique-reduced-word characterisation, for
/// every irreducible pair with `|W| <= max_order` and every `J`.
pub fn lemunique(max_order: u64) -> SuiteReport {
    let pairs: Vec<CoxeterPair> = type_products(max_order.max(1).ilog2() as usize, max_order)
        .into_iter()
        .filter(|types| types.len() == 1)
        .flat_map(|types| all_pairs_of(&types))
        .collect();
    let checks = pairs
        .par_iter()
        .map(|p| {
            let q = p.enumerate(None).expect("small pair");
            let engine = bruhat_order(&q);
            let o = oracle_poset(&p.matrix, &p.subset, DEFAULT_GROUP_CAP).expect("small group");
            let map: Vec<usize> = o
                .reps
                .iter()
                .map(|&w| q.element_of_word(&o.group.get(w).word).expect("representative in table"))
                .collect();
            let mut from_oracle: Vec<usize> = o.unique_set().into_iter().map(|i| map[i]).collect();
            from_oracle.sort_unstable();
            let ours = vx(&engine);
            check(
                p.name.clone(),
                "VX = unique words",
                ours == from_oracle,
                format!("{} vs {} elements", ours.len(), from_oracle.len()),
            )
        })
        .collect();
    SuiteReport::new("lemunique", checks)
}

/// Classification of every irreducible pair of rank at most `max_rank`
/// against the predicted classes.
pub fn classification(max_rank: usize, cap: usize) -> crate::classify::CoincidenceReport {
    classify(&irreducible_pairs(max_rank), cap)
}
