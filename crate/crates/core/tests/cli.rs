use std::process::Command;

use foldlie::cli::{run, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn call(args: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("foldlie").chain(args.split_whitespace());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &str) -> (i32, Value) {
    let (code, out, err) = call(&format!("--format json {args}"));
    assert!(code != EXIT_USAGE, "{args}: {err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn fold_a5() {
    let (code, v) = json("fold A5 2");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["coinvariants"], "C3");
    assert_eq!(v["invariants"], "B3");
    assert_eq!(v["weyl_orders"]["folded"], 48);
}

#[test]
fn dims_and_isogeny() {
    let (code, v) = json("dims --type C2 --genus 2 --isogeny --fold-from A3");
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["total"], 10);
    assert_eq!(v["fold_from"]["invariant_part"], 10);
    assert_eq!(v["isogeny"]["dim_j2z"], 17);
    let (_, v) = json("dims --type G2 --genus 2 --isogeny");
    assert_eq!((v["total"].as_u64(), v["isogeny"]["dim_j2z"].as_u64()), (Some(14), Some(32)));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call("dims --type C2 --genus 1").0, EXIT_USAGE);
    assert_eq!(call("verify nosuch").0, EXIT_USAGE);
    assert_eq!(call("fold X9").0, EXIT_USAGE);
    assert_eq!(call("frobnicate").0, EXIT_USAGE);
    assert_eq!(call("threefold --type B3 --genus 2").0, EXIT_USAGE);
    // an odd number of reflections cannot multiply to the identity
    assert_eq!(call("cameral cover --type C2 --genus 2 --branches 3").0, EXIT_USAGE);
    assert_eq!(call("--help").0, EXIT_PASS);
}

#[test]
fn text_output_is_key_value() {
    let (code, out, _) = call("--format text fold A3");
    assert_eq!(code, EXIT_PASS);
    assert!(out.lines().any(|l| l == "coinvariants: C2"));
    assert!(out.lines().any(|l| l == "  homogeneous: 24"));
}

#[test]
fn subcommands_pass() {
    for args in [
        "weyl --type A3 --fold 2",
        "weyl --type D4 --fold 3",
        "liealg dump --type C2",
        "slice show --type sp4",
        "slice show --type appendix",
        "slice verify-appendix --samples 10",
        "deform --type A3 --fold",
        "deform --type D4 --fold",
        "threefold --type C2 --genus 3",
        "threefold --type G2 --genus 2",
        "cameral induce --type A3 --genus 2",
        "cameral cover --type C2 --genus 2 --branches 2",
    ] {
        let (code, _) = json(args);
        assert_eq!(code, EXIT_PASS, "{args}");
    }
    let (_, v) = json("cameral induce --type A3 --genus 2");
    assert_eq!(v["index"], 3);
    assert_eq!(v["fiber_rank"]["folded_lattice"], 20);
    assert_eq!(v["fiber_rank"]["invariant_sublattice"], 20);
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("foldlie-cli-{}.json", std::process::id()));
    let (code, out, _) = call(&format!("--format json --out {} verify appendix --samples 5", path.display()));
    assert_eq!(code, EXIT_PASS);
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, out);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_foldlie");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["verify", "appendix", "--samples", "100", "--seed", "7"]);
    assert_eq!(ok.status.code(), Some(EXIT_PASS));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(status(&["verify", "nosuch"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(status(&["dims", "--type", "C2", "--genus", "1"]).status.code(), Some(EXIT_USAGE));
    let e6 = Command::new(bin).args(["weyl", "--type", "E6"]).env_remove("FOLDLIE_ENABLE_E6").output().unwrap();
    assert_eq!(e6.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8_lossy(&e6.stderr).contains("FOLDLIE_ENABLE_E6"));
}
