//! Graded calculus of differential forms and multivector fields on a chart:
//! wedge products with Koszul signs, exterior derivative, interior product,
//! Lie derivative, pullback, the twisted differential d + theta ^ -, and the
//! Schouten-Nijenhuis bracket.

pub mod blade;
mod error;
mod form;
mod graded;
mod multivector;
mod parse;
mod polymap;

pub use error::Error;
pub use form::{exterior_d, lichnerowicz_d, DifferentialForm};
pub use multivector::{
    form_on_vector, interior_product, lie_derivative, mv_pairing_scalar, mv_pairing_vector,
    schouten_bracket, MultiVectorField,
};
pub use parse::{parse_form, parse_multivector, parse_value, Value};
pub use polymap::PolyMap;
