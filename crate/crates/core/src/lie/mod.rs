//! Finitely presented graded Lie superalgebras with odd generators of degree
//! one, computed inside their enveloping algebras.

pub mod algebra;
pub mod enveloping;
pub mod expr;
pub mod lambda;
pub mod words;

pub use algebra::{BasisOrder, Element, LieAlgebra, Subspace};
pub use expr::{parse_expr, parse_expr_list, parse_presentation, LieError, LieExpr, LiePresentation};
pub use lambda::LambdaTable;
