//! The `silva` command-line front end.
//!
//! Every subcommand produces either human-readable text or, with
//! `--json`, a single-line [`OutputRecord`]. Output is byte-stable: no
//! timestamps, no locale, no hash-map iteration order — replaying the
//! same invocation yields identical bytes.
//!
//! Exit codes: `0` on success; `1` for domain errors (bad mathematical
//! input), diagnosed on stderr with nothing written to stdout; `2` for
//! usage errors (unknown flags or subcommands, malformed integers).

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::congruence::{self, bezout_agrees_with_ext_gcd, CoprimeFactorization, Solved};
use crate::pie::{self, Property, PropertyFamily};
use crate::totient;

/// The machine-readable result of one CLI invocation. Serialized as a
/// single JSON line with fields in this fixed order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// Subcommand name, e.g. `"solve-linear"`.
    pub command: String,
    /// The parsed inputs, echoed back.
    pub inputs: Value,
    /// The computed result.
    pub result: Value,
    /// Which algorithmic route ran, e.g. `"direct-euler-power"`.
    pub path: String,
    /// Runtime identities that were verified during the computation.
    pub checks: Vec<String>,
}

/// Accepts decimal or `0x`-prefixed hexadecimal 64-bit naturals.
fn parse_natural(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse::<u64>(),
    };
    parsed.map_err(|_| format!("'{s}' is not a natural number below 2^64 (decimal or 0x hex)"))
}

/// One `residue:modulus` pair as written on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct ResiduePair {
    residue: u64,
    modulus: u64,
}

fn parse_residue_pair(s: &str) -> Result<ResiduePair, String> {
    let (r, m) = s
        .split_once(':')
        .ok_or_else(|| format!("'{s}' is not of the form residue:modulus"))?;
    Ok(ResiduePair {
        residue: parse_natural(r)?,
        modulus: parse_natural(m)?,
    })
}

/// Comma-separated member list of an explicit-set property.
#[derive(Debug, Clone, PartialEq, Eq)]
struct MemberList(Vec<u64>);

fn parse_member_list(s: &str) -> Result<MemberList, String> {
    if s.trim().is_empty() {
        return Ok(MemberList(Vec::new()));
    }
    s.split(',')
        .map(parse_natural)
        .collect::<Result<_, _>>()
        .map(MemberList)
}

#[derive(Debug, Parser)]
#[command(
    name = "silva",
    version,
    about = "Inclusion-exclusion counting and direct congruence resolution"
)]
struct Cli {
    /// Emit one machine-readable JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Euler's totient of n by three independent routes, cross-checked.
    Phi {
        #[arg(value_parser = parse_natural)]
        n: u64,
    },
    /// Count universe elements by inclusion-exclusion.
    Pie(PieArgs),
    /// Closed-form Bezout coefficients: a*x + b*y = 1 (mod a*b) by powers.
    Bezout {
        #[arg(value_parser = parse_natural)]
        a: u64,
        #[arg(value_parser = parse_natural)]
        b: u64,
    },
    /// Generalized Euler congruence over pairwise coprime factors.
    Silva {
        /// Pairwise coprime factors (at least two).
        #[arg(value_parser = parse_natural, num_args = 1.., required = true)]
        factors: Vec<u64>,
    },
    /// Solve congruences in closed form.
    #[command(subcommand)]
    Solve(SolveCommand),
    /// Toy RSA encrypt/decrypt round trip (Euler's theorem in action).
    RsaDemo {
        #[arg(value_parser = parse_natural)]
        p: u64,
        #[arg(value_parser = parse_natural)]
        q: u64,
        #[arg(value_parser = parse_natural)]
        e: u64,
        #[arg(value_parser = parse_natural)]
        message: u64,
    },
}

#[derive(Debug, Args)]
#[command(group = ArgGroup::new("mode").required(true).args(["none", "union"]))]
struct PieArgs {
    /// Universe size n; the universe is {1, ..., n}.
    #[arg(long, value_parser = parse_natural)]
    universe: u64,
    /// Divisibility property "multiple of D" (repeatable).
    #[arg(long = "div", value_name = "D", value_parser = parse_natural)]
    div: Vec<u64>,
    /// Explicit-set property as comma-separated members (repeatable).
    #[arg(long = "set", value_name = "CSV", value_parser = parse_member_list)]
    set: Vec<MemberList>,
    /// Count elements possessing none of the properties.
    #[arg(long)]
    none: bool,
    /// Count elements possessing at least one property.
    #[arg(long)]
    union: bool,
    /// Also print every signed expansion term.
    #[arg(long)]
    show_terms: bool,
}

#[derive(Debug, Subcommand)]
enum SolveCommand {
    /// Solve a*x = b (mod n).
    Linear {
        #[arg(value_parser = parse_natural)]
        a: u64,
        #[arg(value_parser = parse_natural)]
        b: u64,
        #[arg(value_parser = parse_natural)]
        n: u64,
    },
    /// Solve x = r (mod m) simultaneously, pairwise coprime moduli.
    Crt {
        /// Congruences as residue:modulus (at least two).
        #[arg(value_parser = parse_residue_pair, num_args = 1.., required = true)]
        pairs: Vec<ResiduePair>,
    },
    /// Solve a*x^e = b (mod n).
    Binomial {
        #[arg(value_parser = parse_natural)]
        a: u64,
        #[arg(value_parser = parse_natural)]
        e: u64,
        #[arg(value_parser = parse_natural)]
        b: u64,
        #[arg(value_parser = parse_natural)]
        n: u64,
    },
}

/// Parses `argv` and executes one subcommand, printing the outcome.
/// Returns the process exit code (0 success, 1 domain error, 2 usage).
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap routes help/version to stdout and errors to stderr.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok((plain, record)) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string(&record).expect("record serializes")
                );
            } else {
                print!("{plain}");
            }
            0
        }
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    }
}

/// Runs one parsed subcommand. On success yields the full plain-text
/// rendering (newline-terminated) together with the JSON record; on a
/// domain error yields the diagnostic for stderr.
fn execute(command: Command) -> Result<(String, OutputRecord), String> {
    match command {
        Command::Phi { n } => cmd_phi(n),
        Command::Pie(args) => cmd_pie(args),
        Command::Bezout { a, b } => cmd_bezout(a, b),
        Command::Silva { factors } => cmd_silva(factors),
        Command::Solve(SolveCommand::Linear { a, b, n }) => cmd_solve_linear(a, b, n),
        Command::Solve(SolveCommand::Crt { pairs }) => cmd_solve_crt(pairs),
        Command::Solve(SolveCommand::Binomial { a, e, b, n }) => cmd_solve_binomial(a, e, b, n),
        Command::RsaDemo { p, q, e, message } => cmd_rsa_demo(p, q, e, message),
    }
}

fn fmt_residue_set(residues: &[u64]) -> String {
    let inner = residues
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    format!("{{{inner}}}")
}

fn cmd_phi(n: u64) -> Result<(String, OutputRecord), String> {
    let factored = totient::phi_factored(n).map_err(|e| e.to_string())?;
    let via_pie = (n <= totient::PIE_LIMIT).then(|| totient::phi_via_pie(n).expect("n >= 1"));
    let brute =
        (n <= totient::BRUTEFORCE_LIMIT).then(|| totient::phi_bruteforce(n).expect("n >= 1"));

    let mut routes = vec!["product-formula"];
    let mut checks = Vec::new();
    if let Some(v) = via_pie {
        if v != factored {
            return Err(format!(
                "totient routes disagree at n = {n}: product formula {factored}, inclusion-exclusion {v}"
            ));
        }
        routes.push("inclusion-exclusion");
        checks.push("product-formula == inclusion-exclusion".to_string());
    }
    if let Some(v) = brute {
        if v != factored {
            return Err(format!(
                "totient routes disagree at n = {n}: product formula {factored}, brute force {v}"
            ));
        }
        routes.push("brute-force");
        checks.push("product-formula == brute-force".to_string());
    }

    let fmt_route = |v: Option<u64>, bound: u64| match v {
        Some(v) => v.to_string(),
        None => format!("skipped (n > {bound})"),
    };
    let plain = format!(
        "phi({n}) = {factored}\n  product-formula:     {factored}\n  inclusion-exclusion: {}\n  brute-force:         {}\nagreement: ok\n",
        fmt_route(via_pie, totient::PIE_LIMIT),
        fmt_route(brute, totient::BRUTEFORCE_LIMIT),
    );
    let record = OutputRecord {
        command: "phi".into(),
        inputs: json!({ "n": n }),
        result: json!({
            "phi": factored,
            "product_formula": factored,
            "inclusion_exclusion": via_pie,
            "brute_force": brute,
        }),
        path: routes.join(","),
        checks,
    };
    Ok((plain, record))
}

fn cmd_pie(args: PieArgs) -> Result<(String, OutputRecord), String> {
    let mut properties: Vec<Property> =
        args.div.iter().map(|&d| Property::DivisibleBy(d)).collect();
    properties.extend(args.set.iter().map(|m| Property::explicit(m.0.clone())));
    let family = PropertyFamily::new(args.universe, properties).map_err(|e| e.to_string())?;

    let none = pie::count_none(&family);
    let union = family.universe_size() - none;
    let (mode_flag, count) = if args.none {
        ("none", none)
    } else {
        ("union", union)
    };

    let has_div = !args.div.is_empty();
    let has_set = !args.set.is_empty();
    let path = match (has_div, has_set) {
        (true, false) => "divisor-mode",
        (false, true) => "explicit-mode",
        _ => "mixed-mode",
    };

    let mut plain = format!("universe: 1..={}\nproperties:", family.universe_size());
    for (i, p) in family.properties().iter().enumerate() {
        plain.push_str(&format!(" [{i}] {p}"));
    }
    plain.push('\n');

    let mut terms_json = None;
    if args.show_terms {
        let expansion = pie::expand(&family);
        plain.push_str("terms:\n");
        for term in expansion.terms() {
            let indices = term
                .indices()
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",");
            plain.push_str(&format!(
                "  {:+} * |{{{indices}}}| = {}\n",
                term.sign, term.cardinality
            ));
        }
        terms_json = Some(
            expansion
                .terms()
                .iter()
                .map(|t| {
                    json!({
                        "sign": t.sign,
                        "indices": t.indices(),
                        "cardinality": t.cardinality,
                    })
                })
                .collect::<Vec<_>>(),
        );
    }
    plain.push_str(&format!("count-{mode_flag} = {count}\n"));

    let checks = vec![format!(
        "count-none {none} + count-union {union} == universe {}",
        family.universe_size()
    )];
    let mut result = json!({
        "count_none": none,
        "count_union": union,
        "requested": mode_flag,
        "count": count,
    });
    if let Some(terms) = terms_json {
        result["terms"] = Value::Array(terms);
    }
    let record = OutputRecord {
        command: "pie".into(),
        inputs: json!({
            "universe": args.universe,
            "div": args.div,
            "set": args.set.iter().map(|m| m.0.clone()).collect::<Vec<_>>(),
        }),
        result,
        path: path.into(),
        checks,
    };
    Ok((plain, record))
}

fn cmd_bezout(a: u64, b: u64) -> Result<(String, OutputRecord), String> {
    let pair = congruence::bezout_silva(a, b).map_err(|e| e.to_string())?;
    let euclid = crate::arith::ext_gcd(a, b).expect("a, b >= 2");
    if !bezout_agrees_with_ext_gcd(&pair) {
        return Err(format!(
            "closed-form coefficient disagrees with the extended-gcd inverse for a = {a}, b = {b}"
        ));
    }
    let ab = a * b; // bezout_silva already proved this fits
    let plain = format!(
        "bezout: {a}*x + {b}*y \u{2261} 1 (mod {ab})\nclosed-form: x = {x}, y = {y}\next-gcd: g = {g}, x = {ex}, y = {ey}\ncheck: {a}*{x} + {b}*{y} \u{2261} 1 (mod {ab})\n",
        x = pair.x,
        y = pair.y,
        g = euclid.g,
        ex = euclid.x,
        ey = euclid.y,
    );
    let record = OutputRecord {
        command: "bezout".into(),
        inputs: json!({ "a": a, "b": b }),
        result: json!({
            "modulus": ab,
            "x": pair.x,
            "y": pair.y,
            "ext_gcd": { "g": euclid.g, "x": euclid.x as i64, "y": euclid.y as i64 },
        }),
        path: "euler-closed-form".into(),
        checks: vec![
            format!("{a}*{x} + {b}*{y} == 1 (mod {ab})", x = pair.x, y = pair.y),
            format!("closed-form x == ext-gcd inverse of {a} (mod {b})"),
        ],
    };
    Ok((plain, record))
}

fn cmd_silva(factors: Vec<u64>) -> Result<(String, OutputRecord), String> {
    let factorization = CoprimeFactorization::new(factors).map_err(|e| e.to_string())?;
    let sum = congruence::silva_sum(&factorization);
    let n = factorization.n();
    let k = factorization.k() as u64;
    let k_minus_1 = (k - 1) % n;
    let factor_list = factorization
        .factors()
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    let plain = format!(
        "factors: {factor_list}\nn = {n}, k = {k}\nsum of a_i^phi(n/a_i) \u{2261} {sum} (mod {n})\nk - 1 \u{2261} {k_minus_1} (mod {n})\nidentity: ok\n"
    );
    let record = OutputRecord {
        command: "silva".into(),
        inputs: json!({ "factors": factorization.factors() }),
        result: json!({ "n": n, "k": k, "sum": sum, "k_minus_1": k_minus_1 }),
        path: "euler-power-sum".into(),
        checks: vec![format!("sum {sum} == k-1 {k_minus_1} (mod {n})")],
    };
    Ok((plain, record))
}

/// Shared rendering for the two residue-set solvers.
fn solved_output(
    command: &str,
    congruence_text: String,
    inputs: Value,
    solved: &Solved,
    verify: impl Fn(u64) -> bool,
) -> Result<(String, OutputRecord), String> {
    for &x in solved.solutions.residues() {
        if !verify(x) {
            return Err(format!("claimed solution {x} fails {congruence_text}"));
        }
    }
    let plain = format!(
        "congruence: {congruence_text}\nsolutions: {}\npath: {}\n",
        fmt_residue_set(solved.solutions.residues()),
        solved.path.label(),
    );
    let record = OutputRecord {
        command: command.into(),
        inputs,
        result: json!({
            "modulus": solved.solutions.modulus(),
            "solutions": solved.solutions.residues(),
        }),
        path: solved.path.label().into(),
        checks: vec![format!(
            "{} solution(s) verified by substitution",
            solved.solutions.residues().len()
        )],
    };
    Ok((plain, record))
}

fn cmd_solve_linear(a: u64, b: u64, n: u64) -> Result<(String, OutputRecord), String> {
    let solved = congruence::solve_linear(a, b, n).map_err(|e| e.to_string())?;
    solved_output(
        "solve-linear",
        format!("{a}*x \u{2261} {b} (mod {n})"),
        json!({ "a": a, "b": b, "n": n }),
        &solved,
        |x| (a as u128 * x as u128) % n as u128 == (b % n) as u128,
    )
}

fn cmd_solve_crt(pairs: Vec<ResiduePair>) -> Result<(String, OutputRecord), String> {
    let raw: Vec<(u64, u64)> = pairs.iter().map(|p| (p.residue, p.modulus)).collect();
    let x = congruence::solve_crt(&raw).map_err(|e| e.to_string())?;
    let modulus: u64 = raw.iter().map(|&(_, m)| m).product();

    let mut plain = String::from("system:\n");
    let mut checks = Vec::new();
    for &(r, m) in &raw {
        plain.push_str(&format!("  x \u{2261} {r} (mod {m})\n"));
        if x % m != r {
            return Err(format!("claimed solution {x} fails x = {r} (mod {m})"));
        }
        checks.push(format!("{x} == {r} (mod {m})"));
    }
    plain.push_str(&format!(
        "solution: x \u{2261} {x} (mod {modulus})\npath: direct-euler-power\n"
    ));
    let record = OutputRecord {
        command: "solve-crt".into(),
        inputs: json!({
            "pairs": raw
                .iter()
                .map(|&(r, m)| json!({ "residue": r, "modulus": m }))
                .collect::<Vec<_>>(),
        }),
        result: json!({ "modulus": modulus, "x": x }),
        path: "direct-euler-power".into(),
        checks,
    };
    Ok((plain, record))
}

fn cmd_solve_binomial(a: u64, e: u64, b: u64, n: u64) -> Result<(String, OutputRecord), String> {
    let solved = congruence::solve_binomial(a, e, b, n).map_err(|err| err.to_string())?;
    solved_output(
        "solve-binomial",
        format!("{a}*x^{e} \u{2261} {b} (mod {n})"),
        json!({ "a": a, "e": e, "b": b, "n": n }),
        &solved,
        |x| {
            let xe = crate::arith::mod_pow(x, e, n).expect("n >= 2");
            (a as u128 * xe as u128) % n as u128 == (b % n) as u128
        },
    )
}

fn cmd_rsa_demo(p: u64, q: u64, e: u64, message: u64) -> Result<(String, OutputRecord), String> {
    let r = congruence::rsa_roundtrip(p, q, e, message).map_err(|err| err.to_string())?;
    if r.decrypted != message {
        return Err(format!(
            "round trip failed: message {message} decrypted to {}",
            r.decrypted
        ));
    }
    let plain = format!(
        "modulus = {}, phi = {}\npublic exponent e = {e}, private exponent d = {}\nmessage {message} -> encrypted {} -> decrypted {}\nroundtrip: ok\n",
        r.modulus, r.phi, r.d, r.encrypted, r.decrypted,
    );
    let record = OutputRecord {
        command: "rsa-demo".into(),
        inputs: json!({ "p": p, "q": q, "e": e, "message": message }),
        result: json!({
            "modulus": r.modulus,
            "phi": r.phi,
            "d": r.d,
            "encrypted": r.encrypted,
            "decrypted": r.decrypted,
        }),
        path: "euler-exponent-inversion".into(),
        checks: vec![format!("decrypted {} == message {message}", r.decrypted)],
    };
    Ok((plain, record))
}
