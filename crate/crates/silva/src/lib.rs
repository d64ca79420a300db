//! Exact counting and direct congruence resolution over 64-bit naturals.
//!
//! The crate is organized in layers:
//!
//! - [`arith`]: gcd / extended gcd, modular exponentiation and inversion,
//!   deterministic 64-bit primality, and integer factorization.
//! - [`pie`]: an inclusion-exclusion engine over finite universes
//!   `{1, ..., n}` with divisibility and explicit-set properties.
//! - [`totient`]: Euler's totient computed by three independent routes
//!   (product formula, inclusion-exclusion, brute-force gcd scan).
//! - [`congruence`]: Euler's theorem and da Silva's generalized congruence
//!   as executable identities, plus closed-form solvers for Bezout
//!   coefficients and linear / simultaneous / binomial congruences.
//! - [`cli`]: the `silva` command-line front end with stable, replayable
//!   output.
//!
//! All values are `u64`; products are widened to `u128` so intermediate
//! results never wrap. Operations return errors for domain violations
//! instead of panicking; panics are reserved for broken internal
//! invariants (theorems that must hold).

pub mod arith;
pub mod cli;
pub mod congruence;
pub mod pie;
pub mod totient;
