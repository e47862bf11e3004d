//! Classes and characters of `GL(n,q)` as degree-`n` maps `ν` from monic
//! irreducibles to partitions: class sizes, character degrees, counting,
//! sampling, and the prime-divisor bookkeeping on degrees and class sizes.

mod counting;
mod data;
mod lemmas;
mod numap;
mod pairs;
mod sampler;

pub use counting::{
    class_count_bounds_hold, count_degree_m_single_box, count_high_deficiency, count_numaps,
    deficiency_bound_holds, degree_m_bound_holds, verify_class_count_bounds, verify_counting_lemmas,
};
pub use data::{
    centralizer_factor, centralizer_order, char_degree, class_data, degree_of, group_order, q_factorial_part,
    sum_degree_squares, CharData, ClassData,
};
pub use lemmas::{
    fact_distribution, ord_ell_degree, prime_powers_up_to, prob_order_equality, repeated_factor_probability,
    verify_ord_ell, verify_parametrization, Evaluation, OrdEll, OrderEquality,
};
pub use numap::{enumerate_numaps, visit_numaps, IrreducibleTable, NuMap};
pub use pairs::{build_r_set, ratio_at_least, ratio_statistic, Excluded, PairStats, RClass, RReport, Spectrum};
pub use sampler::{chi_square_statistic, sample_numap, verify_sampler_fit, FitCheck, NuSampler, SampleMode};
