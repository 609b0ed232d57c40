//! Exact construction and verification of the cubo-cubic Cremona
//! transformation of P³ and the pair of determinantal quartic K3 surfaces
//! it identifies.

pub mod cli;
pub mod cremona;
pub mod error;
pub mod field;
pub mod geometry;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod polymatrix;
pub mod report;
pub mod rng;
pub mod tensor;

pub use cremona::{CremonaMap, DeterminantalData};
pub use error::{Error, Result};
pub use field::{Field, FieldElem};
pub use matrix::ScalarMatrix;
pub use monomial::{Monomial, Namespace};
pub use poly::MultiPoly;
pub use polymatrix::{jacobian, PolyMatrix};
pub use report::{CheckOutcome, VerificationReport};
pub use tensor::CoefficientTensor;
