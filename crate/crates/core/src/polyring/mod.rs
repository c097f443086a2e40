//! Exact arithmetic foundation: rationals, sparse multivariate polynomials,
//! polynomial matrices, resultants, gcd and squarefree parts.

mod gcd;
pub mod linalg;
mod matrix;
mod monomial;
mod parse;
mod poly;
mod resultant;
mod ring;

pub use gcd::{gcd, is_squarefree, lcm, squarefree_part};
pub use matrix::{determinant, PolyMatrix};
pub use monomial::{Exponent, Monomial, MonomialOrder};
pub use parse::{parse_polynomial, parse_polynomial_list};
pub use poly::{exact_divide, parse_rational, rat, rat_frac, Polynomial, Rational};
pub use resultant::{resultant_univariate, sylvester_matrix};
pub use ring::Ring;
