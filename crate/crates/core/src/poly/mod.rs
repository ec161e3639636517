//! Polynomial arithmetic: dense univariate, sparse multivariate, parsing
//! and factorization.

pub mod factor;
mod mpoly;
mod parse;
mod upoly;

pub use factor::{factor_bivariate, factor_over, factor_rat, is_irreducible, FACTOR_DEGREE_CAP};
pub use mpoly::{bareiss_det, MPoly, Mono, RatFunc, Vars};
pub use parse::parse_poly;
pub use upoly::UPoly;
