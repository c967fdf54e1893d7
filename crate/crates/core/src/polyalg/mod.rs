//! Exact arithmetic in `t = λ^k`: polynomials, reduced quotients and the factored
//! characteristic-polynomial container.

mod factored;
mod tpoly;
mod trat;

pub use factored::{CharPolyAccumulator, FactoredCharPoly};
pub use tpoly::TPoly;
pub(crate) use tpoly::bigint_to_f64;
pub use trat::TRat;
