//! Root systems and orbit enumeration of minimal coset representatives.
//!
//! Conventions: `C[i][j] = <alpha_i, alpha_j^vee>`; for a bond 4 or 6 between
//! generators `i < j` the root `alpha_j` is the short one, so
//! `C[i][j] = -2` (resp. `-3`) and `C[j][i] = -1`. With the named
//! constructors this puts the short roots of `B_n`, `F_4` and `G_2` at the end
//! of the chain. Weights are written in fundamental-weight coordinates, where
//! `alpha_i` is row `i` of the Cartan matrix and
//! `s_i(v) = v - v_i * alpha_i`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::coxeter::{Bond, CoxeterMatrix, Family, ParabolicSubset, WeylType};
use crate::scalar::Scalar;

/// Default cap on the number of orbit points held in memory.
pub const DEFAULT_CAP: usize = 5_000_000;

const MAX_POSITIVE_ROOTS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("bond m({0},{1}) = {2} is not crystallographic")]
    NonCrystallographic(usize, usize, Bond),
    #[error("root enumeration exceeded {0} positive roots; not of finite type")]
    NotFinite(usize),
    #[error("quotient has more than {cap} elements")]
    CapExceeded { cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix<T> {
    rank: usize,
    entries: Vec<T>,
}

impl<T: Scalar> CartanMatrix<T> {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.rank + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.rank..(i + 1) * self.rank]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.rank).map(|i| self.row(i).to_vec()).collect()
    }

    /// Principal submatrix on the listed generators.
    pub fn restrict(&self, generators: &[usize]) -> CartanMatrix<T> {
        CartanMatrix {
            rank: generators.len(),
            entries: generators
                .iter()
                .flat_map(|&i| generators.iter().map(move |&j| self.get(i, j)))
                .collect(),
        }
    }
}

/// The crystallographic Cartan matrix of `m` under the orientation above.
pub fn cartan_of<T: Scalar>(m: &CoxeterMatrix) -> Result<CartanMatrix<T>, WeylError> {
    let n = m.rank();
    let mut entries = vec![T::zero(); n * n];
    for i in 0..n {
        entries[i * n + i] = T::from_int(2);
        for j in i + 1..n {
            let long_side = match m.bond(i, j) {
                Bond::Finite(2) => 0,
                Bond::Finite(3) => -1,
                Bond::Finite(4) => -2,
                Bond::Finite(6) => -3,
                b => return Err(WeylError::NonCrystallographic(i, j, b)),
            };
            entries[i * n + j] = T::from_int(long_side);
            entries[j * n + i] = T::from_int(long_side.signum());
        }
    }
    Ok(CartanMatrix { rank: n, entries })
}

/// A positive root with its coroot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root<T> {
    /// Coordinates over the simple roots.
    pub coords: Vec<T>,
    /// Coordinates of the coroot over the simple coroots.
    pub coroot_coords: Vec<T>,
}

impl<T: Scalar> Root<T> {
    /// `<v, beta^vee>` for a weight `v` in fundamental-weight coordinates.
    pub fn pairing(&self, weight: &[T]) -> T {
        weight
            .iter()
            .zip(&self.coroot_coords)
            .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem<T> {
    cartan: CartanMatrix<T>,
    roots: Vec<Root<T>>,
    /// `roots[k]` expressed in fundamental-weight coordinates.
    root_weights: Vec<Vec<T>>,
}

impl<T: Scalar> RootSystem<T> {
    pub fn cartan(&self) -> &CartanMatrix<T> {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root<T>] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root_weight(&self, k: usize) -> &[T] {
        &self.root_weights[k]
    }

    /// `s_i(v)` on a weight.
    pub fn reflect_weight(&self, i: usize, v: &[T]) -> Vec<T> {
        let c = v[i];
        v.iter()
            .zip(self.cartan.row(i))
            .map(|(&x, &a)| x - c * a)
            .collect()
    }

    /// `t_beta(v) = v - <v, beta^vee> beta` for the `k`-th positive root.
    pub fn reflect_by_root(&self, k: usize, v: &[T]) -> Vec<T> {
        let p = self.roots[k].pairing(v);
        v.iter()
            .zip(&self.root_weights[k])
            .map(|(&x, &b)| x - p * b)
            .collect()
    }

    /// Number of positive roots with negative pairing against `v`.
    pub fn inversion_count(&self, v: &[T]) -> usize {
        self.roots.iter().filter(|r| r.pairing(v).is_negative()).count()
    }
}

/// All positive roots, generated from the simple roots by simple reflections.
pub fn positive_roots<T: Scalar>(c: &CartanMatrix<T>) -> Result<RootSystem<T>, WeylError> {
    let n = c.rank();
    let unit = |i: usize| {
        let mut v = vec![T::zero(); n];
        v[i] = T::one();
        v
    };
    let mut roots: Vec<Root<T>> = (0..n)
        .map(|i| Root {
            coords: unit(i),
            coroot_coords: unit(i),
        })
        .collect();
    let mut index: HashMap<Vec<T>, usize> =
        roots.iter().enumerate().map(|(k, r)| (r.coords.clone(), k)).collect();
    let mut cursor = 0;
    while cursor < roots.len() {
        let current = roots[cursor].clone();
        cursor += 1;
        for i in 0..n {
            if current.coords == unit(i) {
                continue;
            }
            // s_i(beta) = beta - <beta, alpha_i^vee> alpha_i
            let p = (0..n).fold(T::zero(), |acc, j| acc + current.coords[j] * c.get(j, i));
            // s_i(gamma) = gamma - <alpha_i, gamma> alpha_i^vee
            let q = (0..n).fold(T::zero(), |acc, j| acc + current.coroot_coords[j] * c.get(i, j));
            let mut coords = current.coords.clone();
            coords[i] = coords[i] - p;
            if coords[i].is_negative() || index.contains_key(&coords) {
                continue;
            }
            let mut coroot_coords = current.coroot_coords.clone();
            coroot_coords[i] = coroot_coords[i] - q;
            index.insert(coords.clone(), roots.len());
            roots.push(Root {
                coords,
                coroot_coords,
            });
            if roots.len() > MAX_POSITIVE_ROOTS {
                return Err(WeylError::NotFinite(MAX_POSITIVE_ROOTS));
            }
        }
    }
    let root_weights = roots
        .iter()
        .map(|r| {
            (0..n)
                .map(|k| (0..n).fold(T::zero(), |acc, j| acc + r.coords[j] * c.get(j, k)))
                .collect()
        })
        .collect();
    Ok(RootSystem {
        cartan: c.clone(),
        roots,
        root_weights,
    })
}

/// `|W|` from the closed forms.
pub fn group_order(t: WeylType) -> u64 {
    let n = t.rank() as u64;
    let factorial = |k: u64| (1..=k).try_fold(1u64, |acc, i| acc.checked_mul(i));
    let power = |k: u64| 1u64.checked_shl(k as u32).filter(|_| k < 64);
    let order = match t.family() {
        Family::A => factorial(n + 1),
        Family::B => power(n).zip(factorial(n)).and_then(|(a, b)| a.checked_mul(b)),
        Family::D => power(n - 1).zip(factorial(n)).and_then(|(a, b)| a.checked_mul(b)),
        Family::E => Some(match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        }),
        Family::F => Some(1152),
        Family::G => Some(12),
    };
    // Saturates for ranks where the order exceeds u64.
    order.unwrap_or(u64::MAX)
}

pub fn product_order(types: &[WeylType]) -> u64 {
    types
        .iter()
        .try_fold(1u64, |acc, &t| acc.checked_mul(group_order(t)))
        .unwrap_or(u64::MAX)
}

/// A minimal coset representative `w`, stored as the orbit point `w * lambda_J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitElement<T> {
    pub length: usize,
    pub weight: Vec<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReflectionImage {
    pub index: usize,
    pub direction: Direction,
}

/// The orbit of `lambda_J`, one point per element of `W^J`, sorted by
/// `(length, weight)`. Index 0 is the seed.
#[derive(Clone, Debug)]
pub struct QuotientTable<T> {
    matrix: CoxeterMatrix,
    subset: ParabolicSubset,
    roots: RootSystem<T>,
    elements: Vec<OrbitElement<T>>,
    by_weight: HashMap<Vec<T>, usize>,
}

impl<T: Scalar> QuotientTable<T> {
    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn subset(&self) -> &ParabolicSubset {
        &self.subset
    }

    pub fn roots(&self) -> &RootSystem<T> {
        &self.roots
    }

    pub fn elements(&self) -> &[OrbitElement<T>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, index: usize) -> &OrbitElement<T> {
        &self.elements[index]
    }

    pub fn index_of(&self, weight: &[T]) -> Option<usize> {
        self.by_weight.get(weight).copied()
    }

    pub fn seed(&self) -> &OrbitElement<T> {
        &self.elements[0]
    }

    pub fn max_length(&self) -> usize {
        self.elements.last().map_or(0, |e| e.length)
    }

    /// Index of `s_g * seed`; for `g` outside `J` this is a length-one element.
    pub fn generator_element(&self, g: usize) -> Option<usize> {
        let w = self.roots.reflect_weight(g, &self.seed().weight);
        self.index_of(&w)
    }

    /// Index of the element with reduced word `word` (letters applied right to left).
    pub fn element_of_word(&self, word: &[usize]) -> Option<usize> {
        let mut v = self.seed().weight.clone();
        for &g in word.iter().rev() {
            v = self.roots.reflect_weight(g, &v);
        }
        self.index_of(&v)
    }

    /// Length histogram.
    pub fn length_histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.max_length() + 1];
        for e in &self.elements {
            h[e.length] += 1;
        }
        h
    }

    pub fn to_json(&self, name: &str) -> serde_json::Value {
        let elements: Vec<serde_json::Value> = self
            .elements
            .iter()
            .map(|e| {
                let weight: Vec<i64> = e
                    .weight
                    .iter()
                    .map(|x| x.to_i64().expect("integral weight"))
                    .collect();
                serde_json::json!({ "weight": weight, "length": e.length })
            })
            .collect();
        serde_json::json!({
            "pair": {
                "name": name,
                "coxeter_matrix": self.matrix,
                "parabolic": self.subset,
            },
            "elements": elements,
        })
    }
}

/// Breadth-first enumeration of the orbit of `lambda_J`: `s_i` is applied
/// to `v` only when `v_i > 0`, which raises the length by one.
pub fn enumerate_quotient<T: Scalar>(
    m: &CoxeterMatrix,
    j: &ParabolicSubset,
    cap: Option<usize>,
) -> Result<QuotientTable<T>, WeylError> {
    let cap = cap.unwrap_or(DEFAULT_CAP);
    let roots = positive_roots(&cartan_of::<T>(m)?)?;
    let n = m.rank();
    let seed: Vec<T> = (0..n)
        .map(|g| if j.contains(g) { T::zero() } else { T::one() })
        .collect();

    let mut by_weight: HashMap<Vec<T>, usize> = HashMap::new();
    let mut elements: Vec<OrbitElement<T>> = Vec::new();
    let mut level = vec![seed];
    let mut length = 0;
    while !level.is_empty() {
        level.sort_unstable();
        if elements.len() + level.len() > cap {
            return Err(WeylError::CapExceeded { cap });
        }
        for w in &level {
            by_weight.insert(w.clone(), elements.len());
            elements.push(OrbitElement {
                length,
                weight: w.clone(),
            });
        }
        let mut next: Vec<Vec<T>> = Vec::new();
        let mut fresh: HashMap<Vec<T>, ()> = HashMap::new();
        for v in &level {
            for i in 0..n {
                if v[i].is_positive() {
                    let w = roots.reflect_weight(i, v);
                    if !by_weight.contains_key(&w) && fresh.insert(w.clone(), ()).is_none() {
                        next.push(w);
                    }
                }
            }
        }
        level = next;
        length += 1;
    }
    Ok(QuotientTable {
        matrix: m.clone(),
        subset: j.clone(),
        roots,
        elements,
        by_weight,
    })
}

/// `l(w_0) - l(w_0^J)`, from positive-root counts.
pub fn quotient_length(m: &CoxeterMatrix, j: &ParabolicSubset) -> Result<usize, WeylError> {
    let full = positive_roots(&cartan_of::<i64>(m)?)?.len();
    let sub = positive_roots(&cartan_of::<i64>(&m.restrict(j.members()))?)?.len();
    Ok(full - sub)
}

/// Images of element `e` under all reflections that move it.
pub fn reflection_images<T: Scalar>(q: &QuotientTable<T>, e: usize) -> Vec<ReflectionImage> {
    let element = &q.elements[e];
    (0..q.roots.len())
        .filter(|&k| !q.roots.roots[k].pairing(&element.weight).is_zero())
        .map(|k| {
            let image = q.roots.reflect_by_root(k, &element.weight);
            let index = q.index_of(&image).expect("orbit is closed under reflections");
            let direction = if q.elements[index].length > element.length {
                Direction::Up
            } else {
                Direction::Down
            };
            ReflectionImage { index, direction }
        })
        .collect()
}
