//! Exact arithmetic toolkit for quadratic forms over odd finite fields,
//! the affine polar graphs they generate, their spectra and independence
//! bounds, ovoid constructions, and light-cone preserving maps of finite
//! Minkowski spaces.

pub mod error;
pub mod field;
pub mod json;
pub mod linalg;
pub mod minkowski;
pub mod mis;
pub mod ovoid;
pub mod polar;
pub mod quadspace;
pub mod spectrum;

pub use error::{Error, Result};
pub use field::{Elt, Field, FieldSpec};
pub use linalg::{bilinear, Mat, Vect};
pub use quadspace::{named_form, FormClass, FormKind, SymForm};
