//! Free graded-commutative algebras over an exact field.

mod algebra;
mod element;
mod monomial;
mod symmetric;

pub use algebra::{render_element, render_monomial, FreeCdga, Generator};
pub use element::Element;
pub use monomial::{Factor, Monomial};
pub use symmetric::{elementary_symmetric, elementary_symmetric_all, express_in_invariants};
