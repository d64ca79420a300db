//! Euler's theorem and da Silva's generalized congruence as executable
//! identities, plus direct (closed-form) resolution of linear,
//! simultaneous, and binomial congruences.
//!
//! The central classical facts, over 64-bit naturals:
//!
//! - Euler: `a^phi(n) = 1 (mod n)` whenever `gcd(a, n) = 1`
//!   ([`euler_power`]), with Fermat's little theorem as the prime
//!   special case ([`fermat_check`]).
//! - da Silva's generalization: if `n = a_1 * ... * a_k` with the
//!   factors pairwise coprime and `k > 1`, then
//!   `sum of a_i^phi(n / a_i) = k - 1 (mod n)` ([`silva_sum`]).
//! - The `k = 2` case rearranges into closed-form Bezout coefficients:
//!   `x = a^(phi(b) - 1)`, `y = b^(phi(a) - 1)` satisfy
//!   `a*x + b*y = 1 (mod a*b)` ([`bezout_silva`]) — no Euclidean descent.
//!
//! The same power trick resolves congruences directly:
//! `a*x = b (mod n)` via `x = b * a^(phi(n) - 1)` ([`solve_linear`]),
//! simultaneous congruences via `x = sum b_i * (N/n_i)^phi(n_i)`
//! ([`solve_crt`]), and prime-modulus `a*x^n = b (mod N)` by inverting
//! the exponent modulo `N - 1` ([`solve_binomial`]). The modern-day
//! descendant of the exponent trick is demonstrated by
//! [`rsa_roundtrip`].
//!
//! Identities marked "asserts" are checked at runtime on every call:
//! they are theorems, and a violation means broken arithmetic, which
//! panics rather than returning garbage.

use thiserror::Error;

use crate::arith::{self, ext_gcd, gcd, is_prime, mod_inv, mulmod};
use crate::totient::phi_factored;

/// Largest modulus accepted by [`solve_binomial`] (its fallback is an
/// exhaustive residue scan).
pub const BINOMIAL_MODULUS_LIMIT: u64 = 1_000_000;

/// Largest prime accepted by [`rsa_roundtrip`].
pub const RSA_PRIME_LIMIT: u64 = 1 << 31;

/// Errors reported by the congruence solvers.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceError {
    /// Two values that must be coprime share a factor.
    #[error("{a} and {b} must be coprime (gcd = {g})")]
    NotCoprime { a: u64, b: u64, g: u64 },
    /// A value that must be prime is not.
    #[error("{n} is not prime")]
    NotPrime { n: u64 },
    /// A modulus of zero was supplied.
    #[error("modulus must be >= 1")]
    ZeroModulus,
    /// A modulus or factor that must be at least 2 is smaller.
    #[error("value {value} must be at least 2")]
    BelowTwo { value: u64 },
    /// Fermat's theorem requires the base not to be a multiple of p.
    #[error("{a} is a multiple of the prime modulus {p}")]
    MultipleOfPrime { a: u64, p: u64 },
    /// Fewer than two pieces were supplied where at least two are needed.
    #[error("need at least 2 {what}, got {got}")]
    TooFew { what: &'static str, got: usize },
    /// A residue was not reduced below its modulus.
    #[error("residue {residue} must be below its modulus {modulus}")]
    ResidueOutOfRange { residue: u64, modulus: u64 },
    /// A product overflowed 64 bits.
    #[error("product exceeds 64 bits")]
    Overflow,
    /// The exponent of a binomial congruence must be at least 1.
    #[error("exponent must be >= 1")]
    ZeroExponent,
    /// [`solve_binomial`] only supports moduli up to its scan limit.
    #[error("modulus {n} exceeds the supported bound {BINOMIAL_MODULUS_LIMIT}")]
    UnsupportedModulus { n: u64 },
    /// The RSA demonstration requires two distinct primes.
    #[error("the two primes must be distinct, both were {p}")]
    PrimesNotDistinct { p: u64 },
    /// The RSA demonstration caps its primes at 2^31.
    #[error("prime {p} exceeds the supported bound {RSA_PRIME_LIMIT}")]
    PrimeTooLarge { p: u64 },
    /// An RSA message must be reduced below the public modulus.
    #[error("message {message} must be below the modulus {modulus}")]
    MessageOutOfRange { message: u64, modulus: u64 },
}

/// A modulus split into `k >= 2` pairwise coprime factors, each at
/// least 2, whose product fits in 64 bits. Construction validates all
/// of it, so every value of this type satisfies da Silva's hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoprimeFactorization {
    factors: Vec<u64>,
    n: u64,
}

impl CoprimeFactorization {
    /// Validates and builds a pairwise coprime factorization.
    ///
    /// # Errors
    ///
    /// [`CongruenceError::TooFew`] for fewer than two factors;
    /// [`CongruenceError::BelowTwo`] for a factor below 2;
    /// [`CongruenceError::NotCoprime`] for a sharing pair;
    /// [`CongruenceError::Overflow`] if the product exceeds `u64`.
    pub fn new(factors: Vec<u64>) -> Result<Self, CongruenceError> {
        if factors.len() < 2 {
            return Err(CongruenceError::TooFew {
                what: "factors",
                got: factors.len(),
            });
        }
        for &a in &factors {
            if a < 2 {
                return Err(CongruenceError::BelowTwo { value: a });
            }
        }
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                let g = gcd(factors[i], factors[j]);
                if g != 1 {
                    return Err(CongruenceError::NotCoprime {
                        a: factors[i],
                        b: factors[j],
                        g,
                    });
                }
            }
        }
        let n = factors
            .iter()
            .try_fold(1u64, |acc, &a| acc.checked_mul(a))
            .ok_or(CongruenceError::Overflow)?;
        Ok(CoprimeFactorization { factors, n })
    }

    /// The factors, in the order supplied.
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// The product of all factors.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Number of factors.
    pub fn k(&self) -> usize {
        self.factors.len()
    }
}

/// Closed-form Bezout coefficients modulo `a*b`: both are plain powers,
/// no Euclidean descent involved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutCongruencePair {
    /// First input.
    pub a: u64,
    /// Second input.
    pub b: u64,
    /// `a^(phi(b) - 1) mod a*b`.
    pub x: u64,
    /// `b^(phi(a) - 1) mod a*b`.
    pub y: u64,
}

/// The complete, sorted set of residues solving a congruence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSolutionSet {
    modulus: u64,
    residues: Vec<u64>,
}

impl ResidueSolutionSet {
    fn new(modulus: u64, mut residues: Vec<u64>) -> Self {
        debug_assert!(modulus >= 1);
        residues.sort_unstable();
        residues.dedup();
        debug_assert!(residues.iter().all(|&r| r < modulus));
        ResidueSolutionSet { modulus, residues }
    }

    /// The modulus the residues live under.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The solutions, strictly increasing, each below the modulus.
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// True when the congruence has no solution.
    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

/// Which algorithmic route produced a solution set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolvePath {
    /// Coprime case resolved by one Euler power: `x = b * a^(phi(n)-1)`.
    DirectEulerPower,
    /// Common factor divided out, then the coprime core lifted back.
    ReduceAndLift,
    /// `gcd(a, n)` does not divide `b`: provably no solution.
    NoSolution,
    /// Prime modulus with invertible exponent: one power of the folded
    /// right-hand side.
    ExponentInversion,
    /// Every residue tried in turn.
    ExhaustiveScan,
}

impl SolvePath {
    /// Stable kebab-case label (used verbatim in CLI output).
    pub fn label(self) -> &'static str {
        match self {
            SolvePath::DirectEulerPower => "direct-euler-power",
            SolvePath::ReduceAndLift => "reduce-and-lift",
            SolvePath::NoSolution => "no-solution",
            SolvePath::ExponentInversion => "exponent-inversion",
            SolvePath::ExhaustiveScan => "exhaustive-scan",
        }
    }
}

/// A solved congruence: the complete residue set plus the route taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solved {
    /// All solutions, sorted, duplicate-free.
    pub solutions: ResidueSolutionSet,
    /// The algorithmic route that produced them.
    pub path: SolvePath,
}

/// Euler's theorem, executed: returns `a^phi(n) mod n` after asserting
/// it equals 1 (or 0 in the degenerate universe mod 1).
///
/// # Errors
///
/// [`CongruenceError::ZeroModulus`] if `n == 0`;
/// [`CongruenceError::NotCoprime`] if `gcd(a, n) != 1`.
pub fn euler_power(a: u64, n: u64) -> Result<u64, CongruenceError> {
    if n == 0 {
        return Err(CongruenceError::ZeroModulus);
    }
    let g = gcd(a, n);
    if g != 1 {
        return Err(CongruenceError::NotCoprime { a, b: n, g });
    }
    let phi = phi_factored(n).expect("n >= 1");
    let r = arith::mod_pow_raw(a, phi, n);
    let expected = if n == 1 { 0 } else { 1 };
    assert_eq!(
        r, expected,
        "Euler's theorem violated for a = {a}, n = {n}: got {r}"
    );
    Ok(r)
}

/// Fermat's little theorem, executed: `a^(p-1) mod p == 1` for prime `p`
/// not dividing `a`. Returns the truth of that equality (always true;
/// the exhaustive tests lean on it).
///
/// # Errors
///
/// [`CongruenceError::NotPrime`] if `p` fails the primality test;
/// [`CongruenceError::MultipleOfPrime`] if `p | a`.
pub fn fermat_check(a: u64, p: u64) -> Result<bool, CongruenceError> {
    if !is_prime(p) {
        return Err(CongruenceError::NotPrime { n: p });
    }
    if a.is_multiple_of(p) {
        return Err(CongruenceError::MultipleOfPrime { a, p });
    }
    Ok(arith::mod_pow_raw(a, p - 1, p) == 1)
}

/// da Silva's generalized congruence, executed: for pairwise coprime
/// factors `a_1 * ... * a_k = n` (`k >= 2`), computes
/// `sum of a_i^phi(n / a_i) mod n` and asserts the theorem's claim that
/// it equals `k - 1` before returning it.
pub fn silva_sum(factorization: &CoprimeFactorization) -> u64 {
    let n = factorization.n();
    let k = factorization.k() as u64;
    let mut sum = 0u64;
    for &a in factorization.factors() {
        let phi = phi_factored(n / a).expect("factors are >= 2, so n / a >= 1");
        let term = arith::mod_pow_raw(a, phi, n);
        sum = ((sum as u128 + term as u128) % n as u128) as u64;
    }
    assert_eq!(
        sum,
        (k - 1) % n,
        "da Silva congruence violated for factors {:?}",
        factorization.factors()
    );
    sum
}

/// Closed-form Bezout coefficients: `x = a^(phi(b)-1) mod ab` and
/// `y = b^(phi(a)-1) mod ab` satisfy `a*x + b*y = 1 (mod ab)` whenever
/// `gcd(a, b) = 1` — asserted at runtime.
///
/// # Errors
///
/// [`CongruenceError::BelowTwo`] unless both inputs are at least 2;
/// [`CongruenceError::NotCoprime`] if they share a factor;
/// [`CongruenceError::Overflow`] if `a*b` exceeds 64 bits.
pub fn bezout_silva(a: u64, b: u64) -> Result<BezoutCongruencePair, CongruenceError> {
    if a < 2 {
        return Err(CongruenceError::BelowTwo { value: a });
    }
    if b < 2 {
        return Err(CongruenceError::BelowTwo { value: b });
    }
    let g = gcd(a, b);
    if g != 1 {
        return Err(CongruenceError::NotCoprime { a, b, g });
    }
    let ab = a.checked_mul(b).ok_or(CongruenceError::Overflow)?;
    let x = arith::mod_pow_raw(a, phi_factored(b).expect("b >= 2") - 1, ab);
    let y = arith::mod_pow_raw(b, phi_factored(a).expect("a >= 2") - 1, ab);
    let combination = (mulmod(a, x, ab) as u128 + mulmod(b, y, ab) as u128) % ab as u128;
    assert_eq!(
        combination, 1,
        "closed-form Bezout identity violated for a = {a}, b = {b}"
    );
    Ok(BezoutCongruencePair { a, b, x, y })
}

/// Core of the coprime case: the unique solution of `a*x = b (mod n)`
/// with `gcd(a, n) = 1`, namely `b * a^(phi(n) - 1) mod n`.
fn linear_coprime_root(a: u64, b: u64, n: u64) -> u64 {
    debug_assert!(n >= 1);
    debug_assert_eq!(gcd(a % n, n), 1);
    let phi = phi_factored(n).expect("n >= 1");
    let power = arith::mod_pow_raw(a, phi - 1, n);
    mulmod(b % n, power, n)
}

/// Solves `a*x = b (mod n)` in closed form.
///
/// With `g = gcd(a, n)`: no solution unless `g | b`; otherwise the
/// congruence reduces to a coprime one solved by a single Euler power,
/// and the `g` solutions are lifted back to the original modulus.
///
/// # Errors
///
/// [`CongruenceError::ZeroModulus`] if `n == 0`.
pub fn solve_linear(a: u64, b: u64, n: u64) -> Result<Solved, CongruenceError> {
    if n == 0 {
        return Err(CongruenceError::ZeroModulus);
    }
    let a = a % n;
    let b = b % n;
    let g = gcd(a, n); // g = n when a = 0
    if !b.is_multiple_of(g) {
        return Ok(Solved {
            solutions: ResidueSolutionSet::new(n, vec![]),
            path: SolvePath::NoSolution,
        });
    }
    let solved = if g == 1 {
        let root = linear_coprime_root(a, b, n);
        debug_assert_eq!(mulmod(a, root, n), b);
        Solved {
            solutions: ResidueSolutionSet::new(n, vec![root]),
            path: SolvePath::DirectEulerPower,
        }
    } else {
        // Divide the shared factor out, solve the coprime core, then
        // translate the core solution across the g residue classes.
        let (a_red, b_red, n_red) = (a / g, b / g, n / g);
        let root = linear_coprime_root(a_red, b_red, n_red);
        let residues = (0..g).map(|t| root + t * n_red).collect();
        Solved {
            solutions: ResidueSolutionSet::new(n, residues),
            path: SolvePath::ReduceAndLift,
        }
    };
    debug_assert!(solved
        .solutions
        .residues()
        .iter()
        .all(|&x| mulmod(a, x, n) == b));
    Ok(solved)
}

/// Solves a system `x = r_i (mod n_i)` of at least two congruences with
/// pairwise coprime moduli, directly:
/// `x = sum of r_i * (N / n_i)^phi(n_i) (mod N)` where `N = prod n_i`.
/// Every `(N/n_i)^phi(n_i)` is 1 modulo `n_i` (Euler) and 0 modulo every
/// other factor, so the sum satisfies all congruences at once — asserted
/// at runtime. No iterated extended-gcd is involved.
///
/// # Errors
///
/// [`CongruenceError::TooFew`] for fewer than two pairs;
/// [`CongruenceError::BelowTwo`] for a modulus below 2;
/// [`CongruenceError::ResidueOutOfRange`] for an unreduced residue;
/// [`CongruenceError::NotCoprime`] for sharing moduli;
/// [`CongruenceError::Overflow`] if the combined modulus exceeds `u64`.
pub fn solve_crt(pairs: &[(u64, u64)]) -> Result<u64, CongruenceError> {
    if pairs.len() < 2 {
        return Err(CongruenceError::TooFew {
            what: "congruences",
            got: pairs.len(),
        });
    }
    for &(r, m) in pairs {
        if m < 2 {
            return Err(CongruenceError::BelowTwo { value: m });
        }
        if r >= m {
            return Err(CongruenceError::ResidueOutOfRange {
                residue: r,
                modulus: m,
            });
        }
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let g = gcd(pairs[i].1, pairs[j].1);
            if g != 1 {
                return Err(CongruenceError::NotCoprime {
                    a: pairs[i].1,
                    b: pairs[j].1,
                    g,
                });
            }
        }
    }
    let modulus = pairs
        .iter()
        .try_fold(1u64, |acc, &(_, m)| acc.checked_mul(m))
        .ok_or(CongruenceError::Overflow)?;
    let mut x = 0u64;
    for &(r, m) in pairs {
        let phi = phi_factored(m).expect("m >= 2");
        let basis = arith::mod_pow_raw(modulus / m, phi, modulus);
        x = ((x as u128 + mulmod(r, basis, modulus) as u128) % modulus as u128) as u64;
    }
    for &(r, m) in pairs {
        assert_eq!(x % m, r, "direct simultaneous resolution violated");
    }
    Ok(x)
}

/// Solves `a * x^e = b (mod n)` for moduli up to
/// [`BINOMIAL_MODULUS_LIMIT`], reporting the route taken.
///
/// Fast route (`gcd(a, n) = 1`, `n` prime, `gcd(e, n-1) = 1`): fold `a`
/// into the right-hand side (`c = b * a^-1`), invert the exponent
/// modulo `n - 1` (`d = e^-1`), and the unique solution is `x = c^d` —
/// raising to the `e`-th power permutes the residues, so completeness
/// is guaranteed. Anything else falls back to scanning every residue.
/// `e = 1` degenerates to [`solve_linear`].
///
/// # Errors
///
/// [`CongruenceError::BelowTwo`] if `n < 2`;
/// [`CongruenceError::UnsupportedModulus`] if `n` exceeds the scan bound;
/// [`CongruenceError::ZeroExponent`] if `e == 0`.
pub fn solve_binomial(a: u64, e: u64, b: u64, n: u64) -> Result<Solved, CongruenceError> {
    if n < 2 {
        return Err(CongruenceError::BelowTwo { value: n });
    }
    if n > BINOMIAL_MODULUS_LIMIT {
        return Err(CongruenceError::UnsupportedModulus { n });
    }
    if e == 0 {
        return Err(CongruenceError::ZeroExponent);
    }
    if e == 1 {
        return solve_linear(a, b, n);
    }
    let a = a % n;
    let b = b % n;
    if gcd(a, n) == 1 && is_prime(n) && gcd(e, n - 1) == 1 {
        let c = mulmod(b, mod_inv(a, n).expect("gcd(a, n) = 1"), n);
        // d represents e^-1 modulo n-1; for n = 2 the group is trivial and
        // any positive representative works — use 1 so that 0^d = 0.
        let d = match mod_inv(e % (n - 1), n - 1) {
            Ok(0) => 1,
            Ok(d) => d,
            Err(_) => unreachable!("gcd(e, n-1) = 1"),
        };
        let x = arith::mod_pow_raw(c, d, n);
        assert_eq!(
            mulmod(a, arith::mod_pow_raw(x, e, n), n),
            b,
            "exponent inversion produced a non-solution for ({a}, {e}, {b}, {n})"
        );
        return Ok(Solved {
            solutions: ResidueSolutionSet::new(n, vec![x]),
            path: SolvePath::ExponentInversion,
        });
    }
    let residues = (0..n)
        .filter(|&x| mulmod(a, arith::mod_pow_raw(x, e, n), n) == b)
        .collect();
    Ok(Solved {
        solutions: ResidueSolutionSet::new(n, residues),
        path: SolvePath::ExhaustiveScan,
    })
}

/// Outcome of one RSA encrypt/decrypt round trip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RsaRoundtrip {
    /// Public modulus `p*q`.
    pub modulus: u64,
    /// `phi(p*q) = (p-1)(q-1)`.
    pub phi: u64,
    /// Private exponent `e^-1 mod phi`.
    pub d: u64,
    /// `message^e mod pq`.
    pub encrypted: u64,
    /// `encrypted^d mod pq`.
    pub decrypted: u64,
}

/// Demonstrates that RSA decryption inverts encryption, which is
/// Euler's theorem at work: `m^(e*d) = m^(1 + t*phi) = m (mod pq)`.
/// For messages coprime to `pq` the round trip is asserted at runtime.
///
/// # Errors
///
/// [`CongruenceError::NotPrime`] unless `p` and `q` are prime;
/// [`CongruenceError::PrimesNotDistinct`] if they coincide;
/// [`CongruenceError::PrimeTooLarge`] above 2^31;
/// [`CongruenceError::NotCoprime`] unless `gcd(e, phi) = 1`;
/// [`CongruenceError::MessageOutOfRange`] unless `message < p*q`.
pub fn rsa_roundtrip(
    p: u64,
    q: u64,
    e: u64,
    message: u64,
) -> Result<RsaRoundtrip, CongruenceError> {
    for prime in [p, q] {
        if !is_prime(prime) {
            return Err(CongruenceError::NotPrime { n: prime });
        }
        if prime > RSA_PRIME_LIMIT {
            return Err(CongruenceError::PrimeTooLarge { p: prime });
        }
    }
    if p == q {
        return Err(CongruenceError::PrimesNotDistinct { p });
    }
    let modulus = p * q; // both below 2^31, so the product fits easily
    let phi = (p - 1) * (q - 1);
    let g = gcd(e, phi);
    if g != 1 {
        return Err(CongruenceError::NotCoprime { a: e, b: phi, g });
    }
    if message >= modulus {
        return Err(CongruenceError::MessageOutOfRange { message, modulus });
    }
    let d = mod_inv(e % phi, phi).expect("gcd(e, phi) = 1");
    let encrypted = arith::mod_pow_raw(message, e, modulus);
    let decrypted = arith::mod_pow_raw(encrypted, d, modulus);
    if gcd(message, modulus) == 1 {
        assert_eq!(
            decrypted, message,
            "RSA round trip failed for p = {p}, q = {q}, e = {e}, m = {message}"
        );
    }
    Ok(RsaRoundtrip {
        modulus,
        phi,
        d,
        encrypted,
        decrypted,
    })
}

/// Cross-check helper: the closed-form Bezout `x` must agree with the
/// extended-gcd inverse of `a` modulo `b` (both solve `a*x = 1 (mod b)`).
pub fn bezout_agrees_with_ext_gcd(pair: &BezoutCongruencePair) -> bool {
    let by_euclid = ext_gcd(pair.a % pair.b, pair.b)
        .expect("b >= 2")
        .x
        .rem_euclid(pair.b as i128) as u64;
    pair.x % pair.b == by_euclid
}
