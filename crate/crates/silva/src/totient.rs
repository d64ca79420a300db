//! Euler's totient by three mutually independent routes.
//!
//! Throughout, `phi(n)` counts the integers `k` in the closed range
//! `1..=n` with `gcd(k, n) = 1`. Under that convention `phi(1) = 1`
//! (k = 1 qualifies), which is what makes `phi` multiplicative and the
//! divisor-sum identity `sum of phi(d) over d | n = n` hold.
//!
//! The routes:
//! - [`phi_factored`]: the product formula
//!   `phi(n) = n * prod(1 - 1/p) = prod p^(e-1) * (p - 1)` over the prime
//!   factorization;
//! - [`phi_via_pie`]: inclusion-exclusion over the divisibility
//!   properties "p divides k" for each prime `p | n`, counting the
//!   elements of `{1..n}` possessing none of them;
//! - [`phi_bruteforce`]: a literal gcd scan over `1..=n`.
//!
//! Each route has an independent failure mode (factorization, signed
//! counting, gcd), so their agreement is strong evidence of correctness;
//! the test suite checks it exhaustively.

use thiserror::Error;

use crate::arith::factorize;
use crate::pie::{self, Property, PropertyFamily};

/// Largest `n` accepted by [`phi_bruteforce`].
pub const BRUTEFORCE_LIMIT: u64 = 10_000_000;

/// Largest `n` accepted by [`phi_via_pie`].
pub const PIE_LIMIT: u64 = 1 << 32;

/// Errors reported by the totient routes.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum TotientError {
    /// The totient is defined for `n >= 1` only.
    #[error("n must be ≥ 1")]
    Zero,
    /// The requested route only supports arguments up to `max`.
    #[error("n = {n} exceeds this route's bound of {max}")]
    OutOfRange { n: u64, max: u64 },
}

/// Euler's totient via the prime-power product formula:
/// `phi(prod p^e) = prod p^(e-1) * (p - 1)`.
///
/// # Errors
///
/// [`TotientError::Zero`] if `n == 0`.
pub fn phi_factored(n: u64) -> Result<u64, TotientError> {
    if n == 0 {
        return Err(TotientError::Zero);
    }
    let f = factorize(n).expect("n >= 1");
    // Every partial product is phi of a divisor of n, hence <= n: no
    // overflow is possible.
    Ok(f.factors()
        .iter()
        .fold(1u64, |acc, &(p, e)| acc * p.pow(e - 1) * (p - 1)))
}

/// Euler's totient by inclusion-exclusion: count the elements of
/// `{1..n}` divisible by none of the primes dividing `n`.
///
/// # Errors
///
/// [`TotientError::Zero`] if `n == 0`; [`TotientError::OutOfRange`] if
/// `n` exceeds [`PIE_LIMIT`].
pub fn phi_via_pie(n: u64) -> Result<u64, TotientError> {
    if n == 0 {
        return Err(TotientError::Zero);
    }
    if n > PIE_LIMIT {
        return Err(TotientError::OutOfRange { n, max: PIE_LIMIT });
    }
    if n == 1 {
        // No prime divisors: nothing to exclude, the count is the whole
        // universe {1}.
        return Ok(1);
    }
    let properties: Vec<Property> = factorize(n)
        .expect("n >= 1")
        .primes()
        .map(Property::DivisibleBy)
        .collect();
    let family = PropertyFamily::new(n, properties)
        .expect("a 64-bit value has at most 15 distinct prime factors, each >= 2");
    Ok(pie::count_none(&family))
}

/// Binary gcd; `u32` suffices because [`BRUTEFORCE_LIMIT`] < 2^32, and it
/// keeps the scan fast enough to be usable as an exhaustive oracle.
fn gcd_u32(mut a: u32, mut b: u32) -> u32 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// Euler's totient by definition: scan `k = 1..=n` and count
/// `gcd(k, n) = 1`. Deliberately free of any factorization or counting
/// machinery so it can serve as the oracle for the other two routes.
///
/// # Errors
///
/// [`TotientError::Zero`] if `n == 0`; [`TotientError::OutOfRange`] if
/// `n` exceeds [`BRUTEFORCE_LIMIT`].
pub fn phi_bruteforce(n: u64) -> Result<u64, TotientError> {
    if n == 0 {
        return Err(TotientError::Zero);
    }
    if n > BRUTEFORCE_LIMIT {
        return Err(TotientError::OutOfRange {
            n,
            max: BRUTEFORCE_LIMIT,
        });
    }
    let n = n as u32;
    let count = if n.is_multiple_of(2) {
        // Even k share the factor 2 with n and can be skipped unseen.
        (1..=n).step_by(2).filter(|&k| gcd_u32(k, n) == 1).count()
    } else {
        (1..=n).filter(|&k| gcd_u32(k, n) == 1).count()
    };
    Ok(count as u64)
}
