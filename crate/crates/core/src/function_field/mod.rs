//! Curve models, function-field elements, places and divisors.

pub mod curve;
pub mod divisor;
pub mod element;
pub mod expr;
pub mod place;

pub use curve::Curve;
pub use divisor::{principal_divisor, Divisor, DivisorTerm};
pub use element::{FFElement, Numer};
pub use place::{Place, PlaceKind};
