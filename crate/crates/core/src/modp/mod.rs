//! Polynomials over prime fields: factorization and root extraction.

pub mod factor;
mod poly;
pub mod primes;
mod roots;

pub use factor::{
    factor_mod_p, factor_modpoly, has_root_mod_p, parse_factorization, roots_mod_p, squarefree_degrees,
    FactorizationModP,
};
pub use poly::ModPoly;
pub use primes::{is_prime, is_prime_big};
pub use roots::roots_mod_pk;
