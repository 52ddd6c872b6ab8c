//! Exact algebra over the base field: scalars, polynomials, factorization,
//! Laurent series and linear algebra.

pub mod factor;
pub mod field;
pub mod linalg;
pub mod mpoly;
pub mod poly;
pub mod ratfunc;
pub mod series;

pub use field::{BaseField, FieldElem, QuadElem, Scalar};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use series::Series;
