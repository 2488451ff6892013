use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = deltacx::cli::run(
        std::iter::once("deltacx").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    let stdout = String::from_utf8(out).unwrap();
    let value = if stdout.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&stdout).unwrap()
    };
    (code, value, String::from_utf8(err).unwrap())
}

fn group(h: &Value, degree: i64) -> Option<&Value> {
    h["groups"]
        .as_array()
        .unwrap()
        .iter()
        .find(|g| g["degree"] == degree)
}

#[test]
fn subdivide_counts() {
    let (code, v, _) = run(&["subdivide", "fixture:circle", "--counts"]);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!([2, 2]));
    let (_, v, _) = run(&["subdivide", "fixture:dunce-hat", "--counts"]);
    assert_eq!(v, serde_json::json!([3, 8, 6]));
}

#[test]
fn dunce_hat_dual_homology() {
    let (code, v, _) = run(&["dual", "fixture:dunce-hat", "--simplex", "x0", "--homology"]);
    assert_eq!(code, 0);
    let g = group(&v["homology"], 2).unwrap();
    assert_eq!(g["free_rank"], 2);
    assert_eq!(g["torsion"], serde_json::json!([]));
    assert_eq!(v["homology"], v["image_homology"]);
}

#[test]
fn empty_homology_is_zero() {
    let (code, v, _) = run(&["homology", "fixture:empty"]);
    assert_eq!(code, 0);
    assert!(v["homology"]["groups"]
        .as_array()
        .unwrap()
        .iter()
        .all(|g| g["free_rank"] == 0));
}

#[test]
fn relative_homology_of_a_pair() {
    // (Δ², ∂Δ²) has ℤ in degree 2
    let (code, v, _) = run(&[
        "homology",
        "fixture:simplex-2",
        "--pair",
        "[0,1]",
        "[0,2]",
        "[1,2]",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(group(&v["homology"], 2).unwrap()["free_rank"], 1);
    assert!(group(&v["homology"], 0).map_or(true, |g| g["free_rank"] == 0));
}

#[test]
fn error_classes() {
    let (code, _, err) = run(&["homology", "fixture:nope"]);
    assert_eq!(code, 1);
    let e: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(e["error"], "unknown-fixture");
    assert_eq!(err.trim().lines().count(), 1);

    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(serde_json::from_str::<Value>(err.trim()).is_ok());

    let (code, _, _) = run(&["homology", "fixture:circle", "--ring", "Z/4"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["star", "fixture:circle", "--simplex", "zz"]);
    assert_eq!(code, 1);
}

#[test]
fn parse_errors_from_files() {
    let dir = std::env::temp_dir().join(format!("deltacx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let (code, _, err) = run(&["info", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("\"parse\""));

    // ∂₀∂₁ t = ∂₀ b ≠ ∂₀∂₀ t = ∂₀ a
    let broken = dir.join("broken.json");
    std::fs::write(
        &broken,
        r#"{"simplices": {"0": ["p", "q"], "1": ["a", "b", "c"], "2": ["t"]},
            "faces": {"a": ["p", "q"], "b": ["q", "p"], "c": ["p", "p"], "t": ["a", "b", "c"]}}"#,
    )
    .unwrap();
    let (code, v, _) = run(&["validate", broken.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["valid"], false);
    let (code, _, _) = run(&["homology", broken.to_str().unwrap()]);
    assert_eq!(code, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn manifold_verdicts() {
    let (_, v, _) = run(&["manifold-check", "fixture:circle", "--dim", "1"]);
    assert_eq!(v["verdict"], true);
    let (_, v, _) = run(&["manifold-check", "fixture:dunce-hat", "--dim", "2"]);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["failures"], serde_json::json!(["x0", "x1"]));
}

#[test]
fn tot_chain_dual_cohomology_and_assembly() {
    let (_, v, _) = run(&["tot", "fixture:dunce-hat", "--constant"]);
    assert_eq!(v["sign_isomorphism"], true);
    let (_, v, _) = run(&["tot", "fixture:circle"]);
    assert_eq!(v["matches_assembly"], true);
    let (_, v, _) = run(&["chain-dual", "fixture:circle"]);
    assert_eq!(v["ranks"]["x0"], serde_json::json!({"-1": 2, "0": 3}));
    assert_eq!(v["double_dual"], true);
    let (_, v, _) = run(&["cohomology", "fixture:dunce-hat"]);
    assert_eq!(v["agrees_with_cochains"], true);
    let (_, v, _) = run(&["assemble", "--cover", "fixture:cyclic-cover-3"]);
    assert_eq!(v["complex"]["ranks"], serde_json::json!({"0": 2, "1": 2}));
    assert_eq!(v["restricted_ranks"], serde_json::json!([6, 6]));
}

#[test]
fn describe_goes_to_stderr_only() {
    let (_, plain, err_plain) = run(&["subdivide", "fixture:circle", "--counts"]);
    let (_, described, err) = run(&["subdivide", "fixture:circle", "--counts", "--describe"]);
    assert_eq!(plain, described);
    assert!(err_plain.is_empty() && !err.is_empty());
}

#[test]
fn binary_output_is_repeatable() {
    let bin = env!("CARGO_BIN_EXE_deltacx");
    for args in [
        ["dual", "fixture:dunce-hat", "--simplex", "x1", "--homology"],
        [
            "chain-dual",
            "fixture:dunce-hat",
            "--ring",
            "Z/2",
            "--describe",
        ],
    ] {
        let a = Command::new(bin).args(args).output().unwrap();
        let b = Command::new(bin).args(args).output().unwrap();
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}
