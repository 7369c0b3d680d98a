//! Finite-field tower F_p ⊂ F_q ⊂ F_{q^M} and exact linear algebra over it.

mod matrix;
mod prime;
mod tower;

pub use matrix::Matrix;
pub use prime::{is_prime, FpMatrix};
pub use tower::{FieldTower, FqElem};

pub(crate) use prime::SpanTracker;

/// The canonical (lexicographically least) monic irreducible of degree `k`
/// over F_p, constant term first.
pub fn least_irreducible_poly(p: u32, k: usize) -> Vec<u32> {
    prime::least_irreducible(p, k)
}
