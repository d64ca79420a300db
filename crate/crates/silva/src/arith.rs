//! Integer kernel over `u64`: gcd, Bezout coefficients, modular
//! exponentiation and inversion, deterministic primality, factorization.
//!
//! Products are computed through `u128` intermediates, so no operation
//! silently wraps. Domain violations (zero modulus, non-invertible
//! element, factorizing zero) are reported as [`ArithError`].

use std::sync::OnceLock;
use thiserror::Error;

/// Trial division covers primes up to this bound; larger factors are
/// found with Pollard's rho (Brent variant).
const TRIAL_LIMIT: u64 = 1_000_000;

/// Errors reported by the integer kernel.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum ArithError {
    /// Bezout coefficients are undefined when both arguments are zero.
    #[error("Bezout coefficients are undefined for (0, 0)")]
    BothZero,
    /// A modulus of zero was supplied where a modulus >= 1 is required.
    #[error("modulus must be >= 1")]
    ZeroModulus,
    /// The element has no inverse for this modulus.
    #[error("{a} is not invertible modulo {n} (gcd = {g})")]
    NotInvertible { a: u64, n: u64, g: u64 },
    /// Zero is not a product of primes.
    #[error("0 has no prime factorization")]
    FactorizeZero,
}

/// Greatest common divisor by Euclid's algorithm.
///
/// Convention: `gcd(0, 0) = 0` (the only value dividing 0 that every
/// common divisor of 0 and 0 divides... is taken to be 0 itself).
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Result of the extended Euclidean algorithm: `g = a*x + b*y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutTriple {
    /// `gcd(a, b)`.
    pub g: u64,
    /// Coefficient of `a`.
    pub x: i128,
    /// Coefficient of `b`.
    pub y: i128,
}

/// Extended Euclidean algorithm.
///
/// Returns the triple `(g, x, y)` with `a*x + b*y = g = gcd(a, b)` and
/// minimal coefficients: `|x| <= b` and `|y| <= a` whenever `a, b > 0`.
///
/// # Errors
///
/// `(0, 0)` has no Bezout coefficients and reports [`ArithError::BothZero`].
pub fn ext_gcd(a: u64, b: u64) -> Result<BezoutTriple, ArithError> {
    if a == 0 && b == 0 {
        return Err(ArithError::BothZero);
    }
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    Ok(BezoutTriple {
        g: old_r as u64,
        x: old_s,
        y: old_t,
    })
}

/// `a * b mod n` without overflow; `n` must be nonzero.
pub(crate) fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    debug_assert!(n != 0);
    ((a as u128 * b as u128) % n as u128) as u64
}

/// `base ^ exp mod n` for `n >= 1`, by binary exponentiation.
/// The empty product convention applies: `exp == 0` yields `1 mod n`.
pub(crate) fn mod_pow_raw(mut base: u64, mut exp: u64, n: u64) -> u64 {
    debug_assert!(n != 0);
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, n);
        }
        base = mulmod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Modular exponentiation `base ^ exp mod modulus`.
///
/// `0^0` is the empty product and evaluates to `1 mod modulus`.
///
/// # Errors
///
/// [`ArithError::ZeroModulus`] if `modulus == 0`.
pub fn mod_pow(base: u64, exp: u64, modulus: u64) -> Result<u64, ArithError> {
    if modulus == 0 {
        return Err(ArithError::ZeroModulus);
    }
    Ok(mod_pow_raw(base, exp, modulus))
}

/// Modular inverse: the unique `u` in `0..n` with `a * u = 1 (mod n)`.
///
/// For `n == 1` the inverse is `0` (every congruence holds modulo 1).
///
/// # Errors
///
/// [`ArithError::ZeroModulus`] if `n == 0`;
/// [`ArithError::NotInvertible`] if `gcd(a, n) != 1`.
pub fn mod_inv(a: u64, n: u64) -> Result<u64, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroModulus);
    }
    if n == 1 {
        return Ok(0);
    }
    let bez = ext_gcd(a % n, n).expect("n >= 1, so not both arguments are zero");
    if bez.g != 1 {
        return Err(ArithError::NotInvertible { a, n, g: bez.g });
    }
    Ok(bez.x.rem_euclid(n as i128) as u64)
}

/// Deterministic Miller-Rabin primality test, exact for all `u64`.
///
/// Uses the seven-witness set `{2, 325, 9375, 28178, 450775, 9780504,
/// 1795265022}`, which is known to classify every integer below 2^64
/// correctly.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // n is now odd, above 37, and composite only if it has a factor > 37;
    // in particular every composite below 37^2 has been rejected already.
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    const WITNESSES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];
    'witness: for w in WITNESSES {
        let w = w % n;
        if w == 0 {
            continue;
        }
        let mut x = mod_pow_raw(w, d, n);
        if x == 1 || x == n - 1 {
            continue 'witness;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime factorization: `(prime, exponent)` pairs with strictly
/// increasing primes whose product reconstructs the original value.
/// `factorize(1)` yields the empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factored value.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// The `(prime, exponent)` pairs, primes strictly increasing.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The distinct primes, in increasing order.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Recomputes the product of all prime powers with checked arithmetic.
    pub fn reconstruct(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, &(p, e)| {
            (0..e).fold(acc, |acc, _| {
                acc.checked_mul(p).expect("factor product fits in u64")
            })
        })
    }
}

/// The primes up to [`TRIAL_LIMIT`], sieved once on first use.
fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// One round of Brent's cycle-finding variant of Pollard's rho with the
/// polynomial `x^2 + c`. Returns a divisor of `n`, possibly trivial.
fn pollard_brent(n: u64, c: u64) -> u64 {
    let f = |x: u64| ((mulmod(x, x, n) as u128 + c as u128) % n as u128) as u64;
    const BATCH: u64 = 128;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mulmod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        // The batched gcd jumped past the factor; replay one step at a time.
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                return g;
            }
        }
    }
    g
}

/// A nontrivial divisor of an odd composite `n` with no factor below
/// [`TRIAL_LIMIT`].
fn nontrivial_divisor(n: u64) -> u64 {
    for c in 1.. {
        let d = pollard_brent(n, c);
        if d > 1 && d < n {
            return d;
        }
    }
    unreachable!("pollard rho eventually splits every odd composite")
}

/// Splits `m` (no prime factor below [`TRIAL_LIMIT`]) into primes.
fn split_into_primes(m: u64, out: &mut Vec<u64>) {
    if is_prime(m) {
        out.push(m);
        return;
    }
    let d = nontrivial_divisor(m);
    split_into_primes(d, out);
    split_into_primes(m / d, out);
}

/// Prime factorization of `n >= 1`.
///
/// Strategy: trial division by sieved primes up to 10^6, then
/// Pollard rho (Brent) on whatever cofactor survives, recursing until
/// every piece passes the deterministic primality test.
///
/// # Errors
///
/// [`ArithError::FactorizeZero`] if `n == 0`.
pub fn factorize(n: u64) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::FactorizeZero);
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut m = n;
    for &p in small_primes() {
        let p = p as u64;
        if p * p > m {
            break;
        }
        if m.is_multiple_of(p) {
            let mut e = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if m > 1 {
        if m < TRIAL_LIMIT * TRIAL_LIMIT {
            // No prime factor at or below sqrt(m) survived trial division,
            // so the cofactor itself is prime.
            factors.push((m, 1));
        } else {
            let mut large = Vec::new();
            split_into_primes(m, &mut large);
            large.sort_unstable();
            let mut i = 0;
            while i < large.len() {
                let p = large[i];
                let mut e = 0u32;
                while i < large.len() && large[i] == p {
                    e += 1;
                    i += 1;
                }
                factors.push((p, e));
            }
        }
    }
    Ok(Factorization { n, factors })
}
