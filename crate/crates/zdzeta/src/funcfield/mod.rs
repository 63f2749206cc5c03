//! Exact arithmetic in F_p[t] and F_p(t): polynomials, factorization,
//! places, and normalized absolute values.

mod factor;
mod gf2;
mod poly;
mod ratfunc;

pub use factor::{factor, is_irreducible};
pub use poly::PolyFp;
pub use ratfunc::{
    abs_exponent_at, factor_u64, is_prime, mult_order, ord_at, p_part, residue_order, support,
    Place, PlaceKind, RatFunc,
};
