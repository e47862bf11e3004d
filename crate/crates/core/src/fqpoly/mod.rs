//! Finite fields `F_q` and the index set of monic irreducible polynomials
//! with nonzero constant term.

mod count;
mod factor;
mod field;
mod poly;

pub use count::{
    count_irreducibles, count_irreducibles_q, count_repeated_factor_polys,
    count_repeated_factor_polys_by_factoring, enumerate_irreducibles, necklace_identity_holds,
    verify_repeated_factor_counts,
};
pub use factor::{distinct_degree, equal_degree, expand, factor_count, factor_poly, squarefree_decomposition};
pub use field::{prime_power, FqCtx, MAX_FIELD};
pub use poly::{MonicPoly, Poly};
