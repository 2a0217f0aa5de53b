//! Exact computations around a one-dimensional Gorenstein monomial curve
//! whose Poincaré–Betti series is transcendental: numerical semigroups,
//! binomial presentations and their gradings, graded Lie superalgebras given
//! by generators and relations, monomial algebras, and Poincaré series
//! transforms.

pub mod data;
pub mod field;
pub mod grading;
pub mod lie;
pub mod monomial;
pub mod presentation;
pub mod semigroup;
pub mod series;
pub mod sparse;
