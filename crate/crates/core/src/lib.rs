//! Bruhat posets of Weyl group quotients `W^J` and the black-and-white
//! graphs that classify when two such posets coincide.
//!
//! The numeric core is generic over an exact [`Scalar`]; the aliases at the
//! crate root fix it to `i64`, which is ample for every finite type.

pub mod bitset;
pub mod bwgraph;
pub mod classify;
pub mod coxeter;
pub mod invariants;
pub mod iso;
pub mod oracle;
pub mod pair;
pub mod poset;
pub mod scalar;
pub mod suites;
pub mod weyl;

pub use bwgraph::{bu_expand, bw_graph, bwgraph_isomorphic, invert_bu, BWGraph, BwGraphError, Color, NotInImage};
pub use coxeter::{Bond, CoxeterError, CoxeterMatrix, Family, ParabolicSubset, WeylType};
pub use poset::{bruhat_order, grade_abstract, PointedPoset, PosetError};
pub use scalar::Scalar;
pub use weyl::{enumerate_quotient, group_order, WeylError, DEFAULT_CAP};

pub type CartanMatrix = weyl::CartanMatrix<i64>;
pub type RootSystem = weyl::RootSystem<i64>;
pub type QuotientTable = weyl::QuotientTable<i64>;
pub type OrbitElement = weyl::OrbitElement<i64>;

/// Rational-coefficient variants, for cross-checking the integer engine.
pub mod rational {
    use num_rational::Rational64;

    pub type CartanMatrix = crate::weyl::CartanMatrix<Rational64>;
    pub type RootSystem = crate::weyl::RootSystem<Rational64>;
    pub type QuotientTable = crate::weyl::QuotientTable<Rational64>;
}
