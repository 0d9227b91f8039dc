//! The command line, both in-process and through the built binary.

use std::io::Write;
use std::process::{Command, Stdio};

use cumulant_trees::cli::run;
use cumulant_trees::cumulants::WordTable;
use cumulant_trees::partitions::SetPartition;
use cumulant_trees::trees::LabeledTree;
use cumulant_trees::{ColoredTree, Permutation};
use proptest::prelude::*;

fn call_with(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cumulant-trees").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn call(args: &[&str]) -> (i32, String, String) {
    call_with(args, "")
}

fn binary(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_cumulant-trees"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap(), String::from_utf8(o.stderr).unwrap())
}

#[test]
fn binary_examples() {
    assert_eq!(binary(&["count", "--kind", "bpt", "--n", "5"], "").1, "42\n");
    assert_eq!(binary(&["transform", "--coeffs", "1,2,4,8,16", "--order", "6"], "").1, "1,2,5,14,42\n");
    let (code, out, _) = binary(&["verify", "--troupe", "all", "--n", "7"], "");
    assert_eq!(code, 0);
    assert_eq!(out.matches("  pass").count(), 7);
    assert!(out.ends_with("series check color 0 order 8: ok\npass\n"));
    assert_eq!(binary(&["frobnicate"], "").0, 2);
}

#[test]
fn malformed_table_names_the_line() {
    let text = "word 0 = 1\nword 0,0 = 2\nword 0,0,0 = 1/\n";
    let (code, out, err) = binary(&["cumulants", "--moments", "-"], text);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 3"), "{err}");
    let (code, _, err) = call(&["cumulants", "--moments", "/nonexistent/moments.txt"]);
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent/moments.txt"));
}

#[test]
fn cumulant_tables_parse_back() {
    let moments = "word 0 = 0\nword 1 = 1\nword 0,0 = 1\nword 0,1 = 1/2\nword 1,0 = 1/2\nword 1,1 = 2\n";
    let (code, out, _) = call_with(&["cumulants", "--moments", "-"], moments);
    assert_eq!(code, 0);
    let sections: Vec<&str> = out.split("\n\n").collect();
    assert_eq!(sections.len(), 3);
    for (s, kind) in sections.iter().zip(["classical", "free", "boolean"]) {
        let (header, body) = s.split_once('\n').unwrap();
        assert_eq!(header, format!("# {kind}"));
        let t: WordTable = body.parse().unwrap();
        assert_eq!(t.to_string().trim_end(), body.trim_end());
    }
    // a centered variable: every order-2 cumulant is the second moment
    let (_, out, _) = call(&["cumulants", "--coeffs", "0,3", "--kind", "classical"]);
    assert_eq!(out, "# classical\nword 0 = 0\nword 0,0 = 3\n");
}

#[test]
fn enumerations_parse_back() {
    let (_, out, _) = call(&["enumerate", "--kind", "bpt", "--colors", "0,1,0,1"]);
    let trees: Vec<ColoredTree> = out.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(trees.len(), 5);
    assert_eq!(trees.iter().map(|t| format!("{t}\n")).collect::<String>(), out);
    let (_, out, _) = call(&["enumerate", "--kind", "dbpt", "--n", "4"]);
    let trees: Vec<LabeledTree> = out.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(trees.len(), 24);
    assert_eq!(trees.iter().map(|t| format!("{}\n", t.encode())).collect::<String>(), out);
    let (_, out, _) = call(&["enumerate", "--kind", "nc-irreducible", "--n", "5"]);
    for l in out.lines() {
        assert_eq!(l.parse::<SetPartition>().unwrap().to_string(), l);
    }
    assert_eq!(out.lines().count(), 14);
    let (_, out, _) = call(&["enumerate", "--kind", "p", "--colors", "0,1,1"]);
    for block in out.split("\n\n") {
        let x: cumulant_trees::bijections::PsiInput = block.parse().unwrap();
        assert_eq!(x.to_string().trim_end(), block.trim_end());
    }
}

#[test]
fn transform_inverts() {
    let (_, out, _) = call(&["transform", "--troupe", "motzkin", "--order", "9"]);
    assert_eq!(out, "1,1,2,4,9,21,51,127\n");
    let catalan = "1,2,5,14,42,132,429,1430,4862,16796,58786";
    let (_, out, _) = call(&["transform", "--coeffs", catalan, "--inverse"]);
    assert_eq!(out, "1,2,4,8,16,32,64,128,256,512,1024\n");
    let (_, out, _) = call(&["transform", "--coeffs", "q,q+q^2,q+2q^2+q^3", "--order", "4"]);
    assert_eq!(out, "1*q,1*q + 1*q^2,1*q + 3*q^2 + 1*q^3\n");
}

#[test]
fn peaks_and_sort() {
    let w = "15 16 10 11 6 20 18 12 1 7 13 17 8 3 2 9 5 4 14 19";
    let (code, out, _) = call(&["peaks", w]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "peaks 2 4 6 12 16");
    assert_eq!(lines[1], "rest: (1,15)");
    assert_eq!(lines.iter().filter(|l| l.starts_with("factor ")).count(), 6);
    assert_eq!(call(&["sort", "35214"]).1, "31245\n");
    let sorted: Permutation = call(&["sort", "6,1,5,2,4,3"]).1.parse().unwrap();
    assert_eq!(sorted.to_string(), "123456");
}

#[test]
fn examples_and_failures() {
    let (_, out, _) = call(&["examples"]);
    assert_eq!(out.lines().count(), 5);
    let (code, out, _) = call(&["examples", "gamma_minus_one", "--order", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("n=4 moment=-3 classical=-6"), "{out}");
    assert_eq!(call(&["examples", "nonsense"]).0, 2);
    let (code, out, _) = call(&["verify", "--troupe", "colorcount:1", "--colors", "0,1,1,0,1"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = call(&["verify", "--seed", "11", "--n", "5"]);
    assert_eq!(code, 0, "{out}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn output_is_deterministic(seed in 0u64..50, n in 2usize..=5, p in Just((1..=7).collect::<Vec<usize>>()).prop_shuffle()) {
        let s = seed.to_string();
        let n = n.to_string();
        let args = ["verify", "--seed", s.as_str(), "--n", n.as_str()];
        prop_assert_eq!(call(&args), call(&args));
        let perm = p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        prop_assert_eq!(call(&["peaks", perm.as_str()]), call(&["peaks", perm.as_str()]));
        let args = ["enumerate", "--kind", "q", "--colors", "0,1,0,1"];
        prop_assert_eq!(call(&args), call(&args));
    }
}
