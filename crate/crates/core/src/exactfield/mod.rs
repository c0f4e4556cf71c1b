//! Exact arithmetic in Q(ω) for prime orders (and Q(i) for the qubit case),
//! the integral fast path Z[ω], and the number theory behind Gauss sums.

mod cyclotomic;
mod number;
mod ring;
mod zomega;

pub use cyclotomic::{field_degree, Cyclotomic};
pub use number::{
    completing_square_exponent, gauss_sum, gauss_sum_int, is_prime, jacobi_symbol, mod_inverse,
    primes_up_to, QuadraticGaussElement,
};
pub use ring::{determinant, Fp, ModularImage, Ring};
pub use zomega::{integral_batch, ZOmega};
pub(crate) use zomega::{rotate_add, slice_is_zero};
