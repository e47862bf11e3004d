//! Elementary and cyclotomic number theory.

mod cyclo;
mod factor;
mod primes;
mod verify;

pub use cyclo::{
    cyclotomic_value, ord_prime, ord_prime_u64, smallest_prime_factor_primitive,
    smallest_primitive_prime_u64, split_primitive_part, CycloFactorization,
};
pub use factor::{divisors, euler_phi, factor_big, factor_u64, moebius, prime_divisors};
pub use primes::{is_prime_u64, is_probable_prime, primality, Primality};
pub use verify::{
    verify_big_factor, verify_cong, verify_cong_batch, verify_primitive_orders,
    verify_product_identity,
};

/// Serializes a big natural number as a decimal string.
pub(crate) fn ser_decimal<S: serde::Serializer>(x: &num_bigint::BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
