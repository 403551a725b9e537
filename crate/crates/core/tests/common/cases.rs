//! Command lines shared by the CLI tests and the acceptance run.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const BIN: &str = env!("CARGO_BIN_EXE_invsemi");

pub fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

pub fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn invsemi(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("INVSEMI_BOUND").output().expect("binary runs")
}

/// Golden cases: file name and arguments. Fixture names are expanded by `args`.
pub fn golden_cases() -> Vec<(&'static str, Vec<String>)> {
    let f = fixture;
    let s = |x: &str| x.to_string();
    vec![
        ("closure_sym3.json", vec![s("closure"), s("--semigroup"), f("sym3.json")]),
        ("closure_group_c3.txt", vec![s("closure"), s("--semigroup"), f("group_c3.json"), s("--format"), s("text")]),
        ("greens_brandt_c2.json", vec![s("greens"), s("--semigroup"), f("brandt_c2.json")]),
        ("eggbox_brandt_c2.dot", vec![s("eggbox"), s("--semigroup"), f("brandt_c2.json"), s("--format"), s("dot")]),
        ("eggbox_semilattice3.dot", vec![s("eggbox"), s("--semigroup"), f("semilattice3.json"), s("--format"), s("dot")]),
        ("eggbox_group_c3.dot", vec![s("eggbox"), s("--semigroup"), f("group_c3.json"), s("--format"), s("dot")]),
        ("eggbox_sym3.txt", vec![s("eggbox"), s("--semigroup"), f("sym3.json"), s("--format"), s("text")]),
        (
            "howson_sym3.json",
            vec![s("howson"), s("--semigroup"), f("sym3.json"), s("--u"), f("sym3_u2.json"), s("--v"), f("sym3_v2.json")],
        ),
        (
            "intersect_sym3.json",
            vec![s("intersect"), s("--semigroup"), f("sym3.json"), s("--u"), f("sym3_u2.json"), s("--v"), f("sym3_v2.json")],
        ),
        (
            "intersect_brandt.json",
            vec![
                s("intersect"),
                s("--brandt"),
                f("brandt_c2.brandt.json"),
                s("--u"),
                f("brandt_u.json"),
                s("--v"),
                f("brandt_v.json"),
            ],
        ),
        ("bicyclic_summary.json", vec![s("bicyclic-summary"), s("--gens"), f("bicyclic_gens.json")]),
        (
            "bicyclic_intersect.json",
            vec![s("bicyclic-intersect"), s("--u"), s("[[0,2]]"), s("--v"), s("[[0,3]]"), s("--bound"), s("60")],
        ),
        (
            "monogenic_eq.json",
            vec![s("monogenic-eq"), s("--presentation"), f("bicyclic_ext2.json"), s("--lhs"), s("xx"), s("--rhs"), s("Xxxx")],
        ),
        (
            "monogenic_intersect_finite.json",
            vec![
                s("monogenic-intersect"),
                s("--presentation"),
                f("finite_kl_2_2.json"),
                s("--u"),
                s(r#"["xxX","xx"]"#),
                s("--v"),
                s(r#"["xxx"]"#),
            ],
        ),
        (
            "monogenic_intersect_bicyclic.json",
            vec![
                s("monogenic-intersect"),
                s("--presentation"),
                s(r#"{"variant":"bicyclic_ext","k":1}"#),
                s("--u"),
                s(r#"["x"]"#),
                s("--v"),
                s(r#"["xx"]"#),
                s("--bound"),
                s("40"),
            ],
        ),
    ]
}

/// Arguments, expected exit code, and a fragment expected on stderr.
pub fn exit_cases() -> Vec<(Vec<String>, i32, &'static str)> {
    let sym3 = fixture("sym3.json");
    let cases: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["closure", "--semigroup", &sym3], 0, ""),
        (vec!["--help"], 0, ""),
        // parse errors carry a path into the JSON
        (vec!["closure", "--semigroup", r#"{"degree":2,"generators":[{"degree":2,"graph":[[0,"a"]]}]}"#], 1, "generators[0].graph[0][1]"),
        (vec!["closure", "--semigroup", r#"{"degree":2,"generators":[],"extra":1}"#], 1, "extra"),
        (vec!["closure", "--semigroup", "no/such/file.json"], 1, "no/such/file.json"),
        (vec!["bicyclic-summary", "--gens", "[[0,1]]", "--bound", "ten"], 1, "ten"),
        (vec!["frobnicate"], 1, "unrecognized subcommand"),
        // preconditions
        (vec!["closure", "--semigroup", r#"{"degree":2,"generators":[{"degree":3,"graph":[]}]}"#], 2, "degree mismatch"),
        (vec!["bicyclic-summary", "--gens", "[[0,200]]"], 2, "exceeds the bound"),
        (vec!["bicyclic-summary", "--gens", "[[0,2]]", "--bound", "0"], 2, "bound must be positive"),
        (vec!["closure", "--semigroup", &sym3, "--format", "dot"], 2, "not available"),
        (vec!["howson", "--semigroup", &sym3, "--u", r#"[{"degree":3,"graph":[[0,1]]}]"#, "--v", r#"[{"degree":2,"graph":[]}]"#], 2, ""),
        // certification failures ask for a larger bound or cap
        (vec!["bicyclic-summary", "--gens", "[[3,10],[7,2]]", "--bound", "10", "--cap", "1"], 3, "raise the bound"),
        (vec!["bicyclic-intersect", "--u", "[[0,9]]", "--v", "[[0,7]]", "--bound", "10", "--cap", "1"], 3, "raise the bound"),
        (vec!["monogenic-eq", "--presentation", r#"{"variant":"commuting_power","k":3}"#, "--lhs", "x", "--rhs", "X", "--span-cap", "1"], 3, "raise the cap"),
    ];
    cases.into_iter().map(|(a, c, n)| (a.into_iter().map(String::from).collect(), c, n)).collect()
}
