//! Factorization and irreducibility over Q by Hensel lifting and
//! Zassenhaus recombination.

mod hensel;
mod zassenhaus;

pub use hensel::{hensel_lift, LiftedFactorization};
pub use zassenhaus::{
    degree_sieve, factor_over_q, factor_over_q_capped, good_primes, is_irreducible, is_irreducible_capped,
    target_degree_factor, DegreeSieve, FactorizationQ, Irreducibility, IrreducibilityProof, DEFAULT_SUBSET_CAP,
    SIEVE_PRIMES,
};
