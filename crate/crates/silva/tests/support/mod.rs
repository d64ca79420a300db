//! Shared helpers for the integration test targets: locating the
//! compiled `silva` binary and the table of golden CLI transcripts.

use std::path::PathBuf;
use std::process::{Command, Output};

/// Golden transcript cases: (file stem under `tests/golden/`, argv).
/// Every subcommand appears at least once in both plain and JSON form.
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    ("phi_30", &["phi", "30"]),
    ("phi_97_json", &["--json", "phi", "97"]),
    (
        "pie_divisors_30_terms",
        &[
            "pie",
            "--universe",
            "30",
            "--div",
            "2",
            "--div",
            "3",
            "--div",
            "5",
            "--none",
            "--show-terms",
        ],
    ),
    (
        "pie_mixed_union",
        &[
            "pie",
            "--universe",
            "20",
            "--div",
            "2",
            "--set",
            "1,3,5,7",
            "--union",
        ],
    ),
    (
        "pie_json",
        &[
            "--json",
            "pie",
            "--universe",
            "30",
            "--div",
            "2",
            "--div",
            "3",
            "--div",
            "5",
            "--none",
        ],
    ),
    ("bezout_3_5", &["bezout", "3", "5"]),
    ("bezout_json", &["--json", "bezout", "2", "3"]),
    ("silva_3_5", &["silva", "3", "5"]),
    ("silva_2_3_5", &["silva", "2", "3", "5"]),
    ("silva_json", &["--json", "silva", "4", "9", "25"]),
    ("solve_linear_3_4_7", &["solve", "linear", "3", "4", "7"]),
    ("solve_linear_4_2_6", &["solve", "linear", "4", "2", "6"]),
    ("solve_linear_none", &["solve", "linear", "2", "3", "4"]),
    ("solve_crt", &["solve", "crt", "2:3", "3:5", "2:7"]),
    ("solve_crt_json", &["--json", "solve", "crt", "2:3", "3:5"]),
    (
        "solve_binomial_3_5",
        &["solve", "binomial", "1", "3", "2", "5"],
    ),
    (
        "solve_binomial_fast",
        &["solve", "binomial", "17", "7", "20", "23"],
    ),
    ("rsa_demo", &["rsa-demo", "3", "11", "7", "5"]),
    (
        "rsa_demo_json",
        &["--json", "rsa-demo", "5", "13", "7", "2"],
    ),
];

/// Runs the compiled CLI binary with the given arguments.
pub fn run_silva(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_silva"))
        .args(args)
        .output()
        .expect("silva binary runs")
}

/// Absolute path of a committed golden transcript.
pub fn golden_path(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{stem}.txt"))
}
