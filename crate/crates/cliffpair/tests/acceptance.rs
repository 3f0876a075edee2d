//! One pass/fail line per acceptance criterion.  Sample counts and time
//! limits are pinned here; comparisons are exact field equality.

use std::process::Command;
use std::time::{Duration, Instant};

use cliffpair::cli::suite::{self, Check};

const SEED: u64 = 1;
const IMAGE_FORMS_PER_CASE: usize = 20;
const IMAGE_LIMIT: Duration = Duration::from_secs(30);
const LAMBDA_PAIRS_PER_FORM: usize = 100;
const SYMPLECTIC_PAIRS_PER_FORM: usize = 50;
const FORMS_PER_FIELD: usize = 2;
const DECOMPOSITION_FORMS: usize = 20;
const ISOTROPIC_8: usize = 20;
const ISOTROPIC_6: usize = 10;
const DISC_FORMS: usize = 50;
const PROPER_SIMILITUDES: usize = 50;
const IMPROPER_SIMILITUDES: usize = 25;
const TRIALITY_LIMIT: Duration = Duration::from_secs(60);
const TRIPLE_FORMS: usize = 20;
const TENSOR_SAMPLES: usize = 10;
const PFISTER_TRIPLES: usize = 2 + 9 * 4;

struct Outcome {
    ok: bool,
    detail: String,
}

fn summarize(checks: &[Check], expected: &[(&str, usize)]) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, total) in expected {
        match checks.iter().find(|c| c.name == *name) {
            Some(c) => {
                ok &= c.ok() && c.total == *total;
                parts.push(format!("{} {}/{}", c.name, c.passed, c.total));
            }
            None => {
                ok = false;
                parts.push(format!("{name} missing"));
            }
        }
    }
    Outcome { ok, detail: parts.join(", ") }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    out.ok &= elapsed < limit;
    out.detail = format!("{} (limit {} s{})", out.detail, limit.as_secs(), if elapsed < limit { "" } else { ", exceeded" });
    out
}

fn c1() -> Outcome {
    timed(IMAGE_LIMIT, || {
        summarize(&[suite::image_subspaces(SEED, IMAGE_FORMS_PER_CASE)], &[("image-subspaces", 4 * IMAGE_FORMS_PER_CASE)])
    })
}

fn c2() -> Outcome {
    let c = suite::semitrace_independence(SEED, FORMS_PER_FIELD, LAMBDA_PAIRS_PER_FORM);
    summarize(&[c], &[("canonical-semitrace-independent", FORMS_PER_FIELD * LAMBDA_PAIRS_PER_FORM)])
}

fn c3() -> Outcome {
    let c = suite::pair_semitraces(SEED, FORMS_PER_FIELD, SYMPLECTIC_PAIRS_PER_FORM);
    summarize(&[c], &[("pair-semitraces-agree", FORMS_PER_FIELD * SYMPLECTIC_PAIRS_PER_FORM)])
}

fn c4() -> Outcome {
    summarize(
        &suite::decomposition(SEED, DECOMPOSITION_FORMS),
        &[
            ("even-decomposition-relations", 3 * DECOMPOSITION_FORMS),
            ("canonical-semitrace-vanishes-on-tensor-sym", DECOMPOSITION_FORMS),
        ],
    )
}

fn c5() -> Outcome {
    summarize(&[suite::pfister_components(SEED)], &[("pfister-components", PFISTER_TRIPLES)])
}

fn c6() -> Outcome {
    summarize(
        &suite::isotropic(SEED, ISOTROPIC_8, ISOTROPIC_6),
        &[("isotropic-components-hyperbolic", ISOTROPIC_8), ("isotropic-full-clifford-hyperbolic", ISOTROPIC_6)],
    )
}

fn c7() -> Outcome {
    summarize(&[suite::discriminant(SEED, DISC_FORMS)], &[("disc-equals-arf", DISC_FORMS)])
}

fn c8() -> Outcome {
    timed(TRIALITY_LIMIT, || {
        summarize(
            &suite::triality_solver(SEED, PROPER_SIMILITUDES, IMPROPER_SIMILITUDES),
            &[
                ("triality-nullity-one", PROPER_SIMILITUDES),
                ("triality-relations", PROPER_SIMILITUDES),
                ("triality-multipliers", PROPER_SIMILITUDES),
                ("triality-theta-action", PROPER_SIMILITUDES),
                ("triality-improper-refused", IMPROPER_SIMILITUDES),
            ],
        )
    })
}

fn c9() -> Outcome {
    summarize(
        &suite::psi1_transport(),
        &[("psi1-algebra-isomorphism", 3), ("psi1-involution-transport", 3), ("psi1-semitrace-transport", 3)],
    )
}

fn c10() -> Outcome {
    summarize(
        &suite::triples(SEED, TRIPLE_FORMS),
        &[("triple-permutation", TRIPLE_FORMS), ("totally-decomposable-components", TRIPLE_FORMS)],
    )
}

fn c11() -> Outcome {
    summarize(
        &suite::tensor_semitraces(SEED, TENSOR_SAMPLES),
        &[
            ("tensor-semitrace-unique", TENSOR_SAMPLES),
            ("tensor-semitrace-factor-independent", TENSOR_SAMPLES),
            ("quaternion-square-is-norm-pair", TENSOR_SAMPLES),
        ],
    )
}

fn c12() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_cliffpair"))
            .args(["suite", "all", "--seed", "1"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    let ok = a.status.code() == Some(0) && a.status == b.status && a.stdout == b.stdout && !a.stdout.is_empty();
    Outcome { ok, detail: format!("{} bytes, exit {:?}", a.stdout.len(), a.status.code()) }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("canonical image: Skew and Alt parts coincide", c1),
        ("canonical semi-trace independent of lambda", c2),
        ("symplectic-pair semi-traces agree with the canonical one", c3),
        ("even Clifford quaternion decomposition", c4),
        ("Pfister form components", c5),
        ("isotropic forms give hyperbolic pairs", c6),
        ("discriminant equals Arf invariant", c7),
        ("triality solver", c8),
        ("Psi1 transports the canonical pair", c9),
        ("trialitarian triples", c10),
        ("tensor product semi-traces", c11),
        ("deterministic suite output", c12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let out = f();
        failed += !out.ok as usize;
        println!("criterion {:>2} {}: {} [{}]", i + 1, if out.ok { "PASS" } else { "FAIL" }, name, out.detail);
    }
    println!("acceptance: {} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
