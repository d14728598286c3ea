//! Exact representation theory of the nonstandard q-deformed algebra
//! `U'_q(so4)` over `Q(i)(q^(1/2))`.

pub mod acceptance;
pub mod error;
pub mod field;
pub mod homtensor;
pub mod io;
pub mod irreps;
pub mod ladder;
pub mod linalg;
pub mod matrix;
pub mod scalars;
pub mod so4core;
pub mod uqsl2;

pub use error::{Error, Result};
pub use field::{Field, QParam};
pub use matrix::Matrix;
pub use scalars::{HalfInt, Scalar};
pub use irreps::{IrrepLabel, Sign, Weight};
pub use so4core::So4Rep;

use num_complex::Complex64;

pub type ExactQ = QParam<Scalar>;
pub type NumericQ = QParam<Complex64>;
pub type ExactRep = So4Rep<Scalar>;
pub type NumericRep = So4Rep<Complex64>;
pub type ExactMatrix = Matrix<Scalar>;
pub type NumericMatrix = Matrix<Complex64>;
