//! Acceptance criterion 10: repeated runs of every command on the fixture
//! suite produce byte-identical output.

mod common;

use common::*;

#[test]
fn criterion_10_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let singleton = singleton_file(dir.path());
    let broken = broken_introspection_file(dir.path());
    let measure = measure_file(dir.path());
    let field = powerset_field_file(dir.path());
    let identity = identity_map_file(dir.path());
    let w2 = w2_file(dir.path());

    let singleton = singleton.to_str().unwrap();
    let broken = broken.to_str().unwrap();
    let measure = measure.to_str().unwrap();
    let field = field.to_str().unwrap();
    let identity = identity.to_str().unwrap();
    let w2 = w2.to_str().unwrap();

    let invocations: Vec<Vec<&str>> = vec![
        vec!["validate", singleton],
        vec!["validate", broken],
        vec!["validate", w2],
        vec!["eval", singleton, "--expr", "nat(h)"],
        vec!["eval", w2, "--expr", "B[a,1/2](not nat(h))"],
        vec!["eval", w2, "--expr", "and(nat(h), B[b,1](nat(t)))"],
        vec!["describe", singleton, "--state", "m", "--depth", "3"],
        vec!["describe", w2, "--state", "h_a10_b01"],
        vec!["minimize", singleton],
        vec!["minimize", w2],
        vec!["morphism", singleton, singleton, "--map", identity],
        vec!["morphism", singleton, singleton, "--enumerate"],
        vec!["extend", measure, "--set", "p0,p2", "--p", "1/2"],
        vec!["extend", measure, "--target-field", field],
        vec!["soberdrunk", "build", "1"],
        vec!["soberdrunk", "separate", "2"],
        vec!["soberdrunk", "separate", "3", "--alpha", "1"],
        vec!["soberdrunk", "lemmas", "2"],
    ];

    for args in &invocations {
        let first = run(args);
        let second = run(args);
        assert_eq!(
            first.status.code(),
            second.status.code(),
            "exit codes differ for {args:?}"
        );
        assert_eq!(
            first.stdout, second.stdout,
            "stdout differs between runs for {args:?}"
        );
        assert!(!first.stdout.is_empty(), "no output for {args:?}");
    }

    // File outputs are byte-identical across runs as well.
    let out_a = dir.path().join("quotient_a.json");
    let out_b = dir.path().join("quotient_b.json");
    let run_a = run(&["minimize", w2, "-o", out_a.to_str().unwrap()]);
    let run_b = run(&["minimize", w2, "-o", out_b.to_str().unwrap()]);
    assert!(run_a.status.success() && run_b.status.success());
    assert_eq!(std::fs::read(&out_a).unwrap(), std::fs::read(&out_b).unwrap());

    let w2_again = dir.path().join("w2_again.json");
    let out = run(&["soberdrunk", "build", "2", "-o", w2_again.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read(w2).unwrap(), std::fs::read(&w2_again).unwrap());

    println!(
        "ACCEPTANCE 10 PASS: {} command invocations byte-identical across repeated runs",
        invocations.len()
    );
}
