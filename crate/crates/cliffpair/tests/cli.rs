use std::process::Command;

use cliffpair::scalars::Gf2k;
use cliffpair::triality::{random_similitude, Oct};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cliffpair(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cliffpair")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

fn identity8() -> String {
    (0..64).map(|k| if k % 9 == 0 { "1" } else { "0" }).collect::<Vec<_>>().join(",")
}

#[test]
fn arf_of_anisotropic_gf2_plane_is_one() {
    let (code, out, _) = cliffpair(&["arf", "--field", "gf2", "--blocks", "[[1,1]]"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "arf.class: 1"), "{out}");
    assert!(out.lines().any(|l| l == "witt.index: 0"), "{out}");
}

#[test]
fn arf_from_gram_matrix_in_kv_format() {
    let (code, out, _) = cliffpair(&["arf", "--gram", "[[0,1],[0,0]]", "--format", "kv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "field=gf2\ndim=2\narf.value=0\narf.class=0\nwitt.index=1\nhyperbolic=true\n");
}

#[test]
fn triality_of_identity_is_identity() {
    let (code, out, err) = cliffpair(&["triality", "--field", "gf2", "--matrix", &identity8()]);
    assert_eq!(code, 0, "{err}");
    let id = format!(
        "[{}]",
        (0..8).map(|i| format!("[{}]", (0..8).map(|j| if i == j { "1" } else { "0" }).collect::<Vec<_>>().join(","))).collect::<Vec<_>>().join(",")
    );
    assert!(out.contains(&format!("theta_plus: {id}")));
    assert!(out.contains(&format!("theta_minus: {id}")));
    assert!(out.contains("nullity: 1"));
}

#[test]
fn triality_rejects_improper_and_non_similitudes() {
    let f = Gf2k::gf2();
    let oct = Oct::cayley_dickson(&f, &0, &1, &1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let t = random_similitude(oct.norm(), false, &mut rng);
    let swap = t.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let mut bad: Vec<String> = identity8().split(',').map(str::to_string).collect();
    bad[1] = "1".into();
    for m in [swap, bad.join(",")] {
        let (code, _, err) = cliffpair(&["triality", "--matrix", &m]);
        assert_eq!(code, 2, "{err}");
    }
}

#[test]
fn clifford_gf4_decomposition_parameters() {
    let (code, out, err) = cliffpair(&[
        "clifford",
        "--field",
        "gf4:g^2+g+1",
        "--blocks",
        "[[1,1],[g,1],[1,g],[1,1]]",
        "--decompose",
    ]);
    assert_eq!(code, 0, "{err}");
    for line in ["Q1: [1, 1)", "Q2: [g, g)", "Q3: [g, 1)", "centre.dim: 2", "PASS decomposition-relations 1/1"] {
        assert!(out.lines().any(|l| l == line), "missing {line} in\n{out}");
    }
}

#[test]
fn full_clifford_of_hyperbolic_six_dim_form() {
    let (code, out, err) = cliffpair(&["clifford", "--full", "--blocks", "[[0,0],[1,1],[1,1]]"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("algebra.dim: 64"));
    assert!(out.contains("semitrace.pair: degree=8 disc=0 arf=0 witt=4"), "{out}");
}

#[test]
fn triple_requires_trivial_arf() {
    let (code, out, _) = cliffpair(&["triple", "--blocks", "[[1,1],[1,1],[0,0],[0,0]]"]);
    assert_eq!(code, 0);
    assert!(out.contains("A: degree=8 disc=0 arf=0 witt=4"));
    let (code, _, err) = cliffpair(&["triple", "--blocks", "[[1,1],[0,0],[0,0],[0,0]]"]);
    assert_eq!(code, 2);
    assert!(err.contains("nontrivial"));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(cliffpair(&["suite", "bogus"]).0, 2);
}

#[test]
fn malformed_inputs_exit_two() {
    for args in [
        &["arf", "--field", "gf6", "--blocks", "[[1,1]]"][..],
        &["arf", "--blocks", "[[1,1],[1]]"],
        &["arf", "--blocks", "[[1,1]]", "--gram", "[[1]]"],
        &["triality", "--matrix", "1,0,0"],
        &["triple", "--field", "gf2(t)", "--blocks", "[[1,1]]"],
    ] {
        assert_eq!(cliffpair(args).0, 2, "{args:?}");
    }
}

#[test]
fn suite_output_is_deterministic_and_kv_parsable() {
    let args = ["suite", "semitrace", "--seed", "7", "-n", "5", "--format", "kv"];
    let (code, a, _) = cliffpair(&args);
    let (_, b, _) = cliffpair(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    for line in a.lines().filter(|l| l.starts_with("check=")) {
        let keys: Vec<&str> = line.split(' ').map(|kv| kv.split_once('=').expect("key=value").0).collect();
        assert_eq!(keys, ["check", "status", "passed", "total"]);
        assert!(line.contains("status=pass"));
    }
}
