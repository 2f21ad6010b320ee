pub mod carlitz;
pub mod certified;
pub mod cigl;
pub mod classical;
pub mod error;
pub mod partition;
pub mod poly;
pub mod psi;
pub mod qcore;
pub mod qpoisson;
pub mod ratfunc;
pub mod report;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use poly::{Degree, Poly};
pub use ratfunc::QRationalFunction;
pub use series::TruncatedSeries;

pub type Rational = num_rational::BigRational;
pub type QPoly = Poly<Rational>;
