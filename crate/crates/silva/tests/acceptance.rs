//! Acceptance suite: ten end-to-end criteria, one test each, every one
//! checked against an oracle computed independently of the code under
//! test (direct filters, brute-force scans, bucketed enumeration).
//!
//! Each test prints a single `acceptance NN: PASS` line with its
//! measured wall time; run with `-- --nocapture` to see the lines.
//! The exhaustive sweeps are embarrassingly parallel and use rayon, so
//! wall time scales with available cores.

mod support;

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use silva::arith::gcd;
use silva::congruence::{
    bezout_agrees_with_ext_gcd, bezout_silva, euler_power, rsa_roundtrip, silva_sum,
    solve_binomial, solve_crt, solve_linear, CoprimeFactorization, SolvePath,
};
use silva::pie::{count_none, count_union, Property, PropertyFamily};
use silva::totient::{phi_bruteforce, phi_factored, phi_via_pie};
use support::{golden_path, run_silva, GOLDEN_CASES};

#[test]
fn c01_totient_routes_agree_exhaustively() {
    let start = Instant::now();
    const LIMIT: u64 = 100_000;
    let mismatches: Vec<u64> = (1..=LIMIT)
        .into_par_iter()
        .filter(|&n| {
            let factored = phi_factored(n).unwrap();
            let via_pie = phi_via_pie(n).unwrap();
            let brute = phi_bruteforce(n).unwrap();
            factored != via_pie || via_pie != brute
        })
        .collect();
    assert!(
        mismatches.is_empty(),
        "totient routes disagree at n = {:?}",
        &mismatches[..mismatches.len().min(5)]
    );
    println!(
        "acceptance 01: PASS — product formula, inclusion-exclusion, and brute force \
         agree for every n in 1..={LIMIT} ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

/// A random mixed family over a universe of at most 5000 elements.
fn random_family(rng: &mut ChaCha8Rng) -> PropertyFamily {
    let universe = rng.gen_range(1..=5000u64);
    let count = rng.gen_range(1..=6usize);
    let properties = (0..count)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Property::DivisibleBy(rng.gen_range(2..=60))
            } else {
                let size = rng.gen_range(0..=40);
                let members: BTreeSet<u64> =
                    (0..size).map(|_| rng.gen_range(1..=universe)).collect();
                Property::explicit(members)
            }
        })
        .collect();
    PropertyFamily::new(universe, properties).unwrap()
}

#[test]
fn c02_signed_expansion_matches_direct_filter_on_random_families() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    const TRIALS: usize = 1000;
    for trial in 0..TRIALS {
        let family = random_family(&mut rng);
        let universe = family.universe_size();
        let direct_none = (1..=universe)
            .filter(|&x| family.properties().iter().all(|p| !p.contains(x)))
            .count() as u64;
        assert_eq!(
            count_none(&family),
            direct_none,
            "trial {trial}: {family:?}"
        );
        assert_eq!(
            count_union(&family),
            universe - direct_none,
            "trial {trial}: {family:?}"
        );
    }
    println!(
        "acceptance 02: PASS — signed expansion equals the direct filter on {TRIALS} \
         random mixed families ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn c03_euler_theorem_holds_on_random_coprime_pairs() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    const TRIALS: usize = 10_000;
    for _ in 0..TRIALS {
        let n = rng.gen_range(2..1_000_000u64);
        let a = loop {
            let candidate = rng.gen_range(1..1u64 << 40);
            if gcd(candidate % n, n) == 1 {
                break candidate;
            }
        };
        // euler_power also asserts this internally before returning.
        assert_eq!(euler_power(a, n).unwrap(), 1, "a = {a}, n = {n}");
    }
    println!(
        "acceptance 03: PASS — a^phi(n) == 1 (mod n) for {TRIALS} random coprime pairs \
         with n < 10^6 ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn c04_generalized_congruence_holds_on_random_factorizations() {
    let start = Instant::now();

    // The two-factor seed case, fully unfolded: 3^phi(5) + 5^phi(3)
    // = 81 + 25 = 106 = 7*15 + 1.
    let seed = CoprimeFactorization::new(vec![3, 5]).unwrap();
    assert_eq!(3u64.pow(4) + 5u64.pow(2), 106);
    assert_eq!(silva_sum(&seed), 106 % 15);

    const POOL: &[u64] = &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    const TRIALS: usize = 1000;
    for trial in 0..TRIALS {
        let k = rng.gen_range(2..=5usize);
        let mut primes = POOL.to_vec();
        primes.shuffle(&mut rng);
        // Distinct primes raised to power 1 or 2 are pairwise coprime,
        // and the largest possible product is below 2^63.
        let factors: Vec<u64> = primes[..k]
            .iter()
            .map(|&p| p.pow(rng.gen_range(1..=2u32)))
            .collect();
        let f = CoprimeFactorization::new(factors.clone()).unwrap();
        let sum = silva_sum(&f); // asserts the identity internally
        assert_eq!(
            sum,
            (f.k() as u64 - 1) % f.n(),
            "trial {trial}: factors {factors:?}"
        );
    }
    println!(
        "acceptance 04: PASS — sum of a_i^phi(n/a_i) == k-1 (mod n) on {TRIALS} random \
         coprime factorizations with 2..=5 factors ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn c05_closed_form_bezout_on_random_coprime_pairs() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1005);
    const TRIALS: usize = 1000;
    for _ in 0..TRIALS {
        let a = rng.gen_range(2..=1u64 << 31);
        let b = loop {
            let candidate = rng.gen_range(2..=1u64 << 31);
            if gcd(a, candidate) == 1 {
                break candidate;
            }
        };
        let pair = bezout_silva(a, b).unwrap(); // asserts a*x + b*y == 1 (mod ab)
        let modulus = (a as u128) * (b as u128);
        let combination = (a as u128 * pair.x as u128 + b as u128 * pair.y as u128) % modulus;
        assert_eq!(combination, 1, "a = {a}, b = {b}");
        assert!(
            bezout_agrees_with_ext_gcd(&pair),
            "a = {a}, b = {b}: power route disagrees with extended gcd"
        );
    }
    println!(
        "acceptance 05: PASS — power-form Bezout identity verified against extended gcd \
         on {TRIALS} random coprime pairs up to 2^31 ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn c06_linear_solver_matches_enumeration_exhaustively() {
    let start = Instant::now();
    const LIMIT: u64 = 200;
    let checked: u64 = (1..=LIMIT)
        .into_par_iter()
        .map(|n| {
            let mut count = 0u64;
            for a in 0..n {
                // Bucket every x by the value a*x (mod n): bucket b then
                // holds exactly the solutions of a*x == b (mod n).
                let mut buckets: Vec<Vec<u64>> = vec![Vec::new(); n as usize];
                for x in 0..n {
                    buckets[(a * x % n) as usize].push(x);
                }
                for b in 0..n {
                    let solved = solve_linear(a, b, n).unwrap();
                    assert_eq!(
                        solved.solutions.residues(),
                        buckets[b as usize].as_slice(),
                        "a = {a}, b = {b}, n = {n}"
                    );
                    let g = gcd(a, n);
                    match solved.path {
                        SolvePath::NoSolution => assert!(b % g != 0),
                        SolvePath::DirectEulerPower => assert_eq!(g, 1),
                        SolvePath::ReduceAndLift => assert!(g > 1 && b % g == 0),
                        other => panic!("unexpected path {other:?}"),
                    }
                    count += 1;
                }
            }
            count
        })
        .sum();
    println!(
        "acceptance 06: PASS — linear solver matches full enumeration on all {checked} \
         instances with n <= {LIMIT} ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn c07_crt_solver_satisfies_every_congruence() {
    let start = Instant::now();

    // Deterministic small systems, verified against a full scan.
    const SMALL_POOL: &[u64] = &[4, 9, 5, 7, 11, 13]; // pairwise coprime
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    let mut scanned = 0u64;
    for size in 2..=4usize {
        for selector in 0u32..(1 << SMALL_POOL.len()) {
            if selector.count_ones() as usize != size {
                continue;
            }
            let moduli: Vec<u64> = SMALL_POOL
                .iter()
                .enumerate()
                .filter(|&(i, _)| selector >> i & 1 == 1)
                .map(|(_, &m)| m)
                .collect();
            for _ in 0..3 {
                let pairs: Vec<(u64, u64)> =
                    moduli.iter().map(|&m| (rng.gen_range(0..m), m)).collect();
                let x = solve_crt(&pairs).unwrap();
                let product: u64 = moduli.iter().product();
                let matches: Vec<u64> = (0..product)
                    .filter(|&c| pairs.iter().all(|&(r, m)| c % m == r))
                    .collect();
                assert_eq!(matches, vec![x], "pairs {pairs:?}");
                scanned += 1;
            }
        }
    }

    // Large random systems: distinct primes raised to random powers.
    const PRIME_POOL: &[u64] = &[
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
        97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
        191, 193, 197, 199,
    ];
    const TRIALS: usize = 1000;
    for _ in 0..TRIALS {
        // Rejection-sample systems of distinct prime powers whose overall
        // modulus stays comfortably inside u64; oversize draws are rare.
        let pairs: Vec<(u64, u64)> = loop {
            let k = rng.gen_range(2..=4usize);
            let mut primes = PRIME_POOL.to_vec();
            primes.shuffle(&mut rng);
            let moduli: Vec<u64> = primes[..k]
                .iter()
                .map(|&p| p.pow(rng.gen_range(1..=3u32)))
                .collect();
            if moduli.iter().map(|&m| m as u128).product::<u128>() < 1 << 62 {
                break moduli
                    .into_iter()
                    .map(|m| (rng.gen_range(0..m), m))
                    .collect();
            }
        };
        let x = solve_crt(&pairs).unwrap(); // asserts each congruence internally
        for &(r, m) in &pairs {
            assert_eq!(x % m, r, "pairs {pairs:?}");
        }
    }
    println!(
        "acceptance 07: PASS — simultaneous congruences solved for {scanned} scan-verified \
         small systems and {TRIALS} random large systems ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn c08_binomial_solver_matches_enumeration_exhaustively() {
    let start = Instant::now();
    const LIMIT: u64 = 100;
    const MAX_EXP: u64 = 10;
    let (checked, fast_path_hits): (u64, u64) = (2..=LIMIT)
        .into_par_iter()
        .map(|n| {
            let mut count = 0u64;
            let mut fast = 0u64;
            for e in 1..=MAX_EXP {
                // x^e (mod n) by plain repeated multiplication; all
                // intermediates stay far below 2^64.
                let powers: Vec<u64> = (0..n)
                    .map(|x| (0..e).fold(1u64, |acc, _| acc * x % n))
                    .collect();
                for a in 0..n {
                    let mut buckets: Vec<Vec<u64>> = vec![Vec::new(); n as usize];
                    for x in 0..n {
                        buckets[(a * powers[x as usize] % n) as usize].push(x);
                    }
                    for b in 0..n {
                        let solved = solve_binomial(a, e, b, n).unwrap();
                        assert_eq!(
                            solved.solutions.residues(),
                            buckets[b as usize].as_slice(),
                            "a = {a}, e = {e}, b = {b}, n = {n}"
                        );
                        if solved.path == SolvePath::ExponentInversion {
                            fast += 1;
                        }
                        count += 1;
                    }
                }
            }
            (count, fast)
        })
        .reduce(|| (0, 0), |(c1, f1), (c2, f2)| (c1 + c2, f1 + f2));
    assert!(
        fast_path_hits > 0,
        "the exponent-inversion fast path never fired"
    );
    println!(
        "acceptance 08: PASS — binomial solver matches full enumeration on all {checked} \
         instances with n <= {LIMIT}, e <= {MAX_EXP}; fast path took {fast_path_hits} of \
         them ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn c09_rsa_roundtrip_exhaustive_over_small_prime_pairs() {
    let start = Instant::now();
    const PRIMES: &[u64] = &[3, 5, 7, 11, 13];
    let mut instances = 0u64;
    for &p in PRIMES {
        for &q in PRIMES {
            if p == q {
                continue;
            }
            let n = p * q;
            let phi = (p - 1) * (q - 1);
            for e in 1..phi {
                if gcd(e, phi) != 1 {
                    continue;
                }
                for message in 0..n {
                    let r = rsa_roundtrip(p, q, e, message).unwrap();
                    assert_eq!(
                        r.decrypted, message,
                        "p = {p}, q = {q}, e = {e}, message = {message}"
                    );
                    instances += 1;
                }
            }
        }
    }
    println!(
        "acceptance 09: PASS — encrypt/decrypt restored every message on {instances} \
         exhaustive instances over prime pairs from {PRIMES:?} ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn c10_cli_transcripts_are_reproducible_and_committed() {
    let start = Instant::now();
    for (stem, args) in GOLDEN_CASES {
        let first = run_silva(args);
        let second = run_silva(args);
        assert_eq!(first.status.code(), Some(0), "{stem}");
        assert!(first.stderr.is_empty(), "{stem}");
        assert_eq!(
            first.stdout, second.stdout,
            "{stem}: two runs produced different bytes"
        );
        let committed = std::fs::read(golden_path(stem)).expect("golden file exists");
        assert_eq!(
            first.stdout, committed,
            "{stem}: output diverged from the committed transcript"
        );
    }
    println!(
        "acceptance 10: PASS — {} CLI transcripts byte-identical across runs and equal \
         to the committed golden files ({:.1}s)",
        GOLDEN_CASES.len(),
        start.elapsed().as_secs_f64()
    );
}
