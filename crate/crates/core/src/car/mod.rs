//! The CAR side: polynomials in `a_n`, transport through `Φ_{SR_1}`, closed-form
//! restriction tables and the nonlinear automorphisms induced by `U(2^p)`.

pub mod closed_form;
pub mod induced;
pub mod poly;
pub mod transport;

pub use poly::{CarPoly, Parity};
pub use transport::{compose, from_cuntz, restrict_endomorphism, to_cuntz, CarMorphism};

/// Parity of `x` under `a_n -> -a_n`.
pub fn gamma_parity<S: crate::scalar::Scalar>(x: &CarPoly<S>) -> Parity {
    x.parity()
}
