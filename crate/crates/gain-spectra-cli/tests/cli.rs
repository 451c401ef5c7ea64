//! End-to-end runs of the command dispatch against real files.

use std::io::Write as _;

use gain_spectra_cli::{format, run, EXIT_OK, EXIT_USAGE};

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&args, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write_graph(content: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(content.as_bytes()).unwrap();
    file
}

const K3_MINUS_ONE: &str = "vertices 3\n0 1 -1\n0 2 -1\n1 2 -1\n";
const K3_I: &str = "vertices 3\n0 1 i\n0 2 i\n1 2 i\n";
const TREE: &str = "vertices 4\n0 1 i\n1 2 -i\n1 3 polar:0.5\n";

#[test]
fn spectrum_k3_minus_one_norm_laplacian() {
    let file = write_graph(K3_MINUS_ONE);
    let (code, out, _) = run_cli(&["spectrum", file.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let values: Vec<f64> = out.split_whitespace().map(|t| t.parse().unwrap()).collect();
    let expect = [0.5, 0.5, 2.0];
    assert_eq!(values.len(), 3);
    for (got, want) in values.iter().zip(expect) {
        assert!((got - want).abs() < 1e-9, "got {got}, want {want}");
    }
}

#[test]
fn spectrum_matrix_selection() {
    let file = write_graph(K3_MINUS_ONE);
    let path = file.path().to_str().unwrap();
    // Adjacency of K3 with all gains -1 is -A(K3): spectrum {-2, 1, 1}.
    let (code, out, _) = run_cli(&["spectrum", path, "--matrix", "A"]);
    assert_eq!(code, EXIT_OK);
    let values: Vec<f64> = out.split_whitespace().map(|t| t.parse().unwrap()).collect();
    for (got, want) in values.iter().zip([-2.0, 1.0, 1.0]) {
        assert!((got - want).abs() < 1e-9);
    }
    let (code, _, _) = run_cli(&["spectrum", path, "--matrix", "L"]);
    assert_eq!(code, EXIT_OK);
    let (code, _, err) = run_cli(&["spectrum", path, "--matrix", "Q"]);
    assert_eq!(code, EXIT_USAGE, "stderr: {err}");
}

#[test]
fn balance_tree_and_unbalanced_triangle() {
    let tree = write_graph(TREE);
    let (code, out, _) = run_cli(&["balance", tree.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("BALANCED"));
    // One zeta row per vertex.
    assert_eq!(out.lines().filter(|l| l.starts_with("zeta")).count(), 4);

    let tri = write_graph(K3_I);
    let (code, out, _) = run_cli(&["balance", tri.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("UNBALANCED"), "{out}");
    assert!(out.contains("cycle 0 1 2"));
    assert!(
        out.contains("gain 0,1") || out.contains("gain -0,1"),
        "{out}"
    );
}

#[test]
fn charpoly_with_oracle_deviation_small() {
    let file = write_graph(K3_MINUS_ONE);
    let path = file.path().to_str().unwrap();
    for basis in ["x", "x1", "adjacency"] {
        let (code, out, _) = run_cli(&["charpoly", path, "--basis", basis, "--oracle"]);
        assert_eq!(code, EXIT_OK, "basis {basis}: {out}");
        let deviation_line = out
            .lines()
            .find(|l| l.starts_with("max_deviation"))
            .unwrap_or_else(|| panic!("missing deviation line in {out}"));
        let value: f64 = deviation_line
            .split_whitespace()
            .nth(1)
            .unwrap()
            .parse()
            .unwrap();
        assert!(value < 1e-8, "basis {basis}: deviation {value}");
    }
    // Spectrum {0.5, 0.5, 2} has x-basis coefficients 1 -3 2.25 -0.5.
    let (_, out, _) = run_cli(&["charpoly", path, "--basis", "x"]);
    let coeff_line = out.lines().find(|l| l.starts_with("coeffs")).unwrap();
    let coeffs: Vec<f64> = coeff_line
        .split_whitespace()
        .skip(1)
        .map(|t| t.parse().unwrap())
        .collect();
    for (got, want) in coeffs.iter().zip([1.0, -3.0, 2.25, -0.5]) {
        assert!((got - want).abs() < 1e-9);
    }
}

#[test]
fn interlace_pass_and_bad_edge() {
    let file = write_graph(K3_MINUS_ONE);
    let path = file.path().to_str().unwrap();
    let (code, out, _) = run_cli(&["interlace", path, "--edge", "0", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("PASS"), "{out}");
    assert!(out.contains("lambda"));
    assert!(out.contains("theta"));

    let tree = write_graph(TREE);
    let (code, _, err) = run_cli(&[
        "interlace",
        tree.path().to_str().unwrap(),
        "--edge",
        "0",
        "3",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("not present"), "{err}");
}

#[test]
fn verify_text_and_json() {
    let file = write_graph(K3_I);
    let path = file.path().to_str().unwrap();
    let (code, out, _) = run_cli(&["verify", path]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("singular_iff_balanced"));

    let (code, out, _) = run_cli(&["verify", path, "--json"]);
    assert_eq!(code, EXIT_OK);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    let checks = parsed["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for check in checks {
        assert!(check["check_id"].is_string());
        assert!(check["status"].is_string());
        assert!(check["details"].is_string());
    }
    // The non-bipartite symmetric spectrum is recorded, not failed.
    assert!(out.contains("non-implication"), "{out}");
}

#[test]
fn fuzz_deterministic_and_green() {
    let args = [
        "fuzz",
        "--trials",
        "30",
        "--seed",
        "7",
        "--n-max",
        "6",
        "--gain-mode",
        "signs",
    ];
    let (code_a, out_a, _) = run_cli(&args);
    let (code_b, out_b, _) = run_cli(&args);
    assert_eq!(code_a, EXIT_OK, "{out_a}");
    assert_eq!(code_a, code_b);
    assert_eq!(
        out_a, out_b,
        "fuzz output must be deterministic under a fixed seed"
    );
    assert!(out_a.contains("total_failures 0"), "{out_a}");
}

#[test]
fn conjecture_reports_nearest_miss() {
    let (code, out, _) = run_cli(&[
        "conjecture",
        "--trials",
        "200",
        "--seed",
        "3",
        "--tol",
        "1e-9",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(
        out.contains("no counterexample") || out.contains("counterexample candidate"),
        "{out}"
    );
    if out.contains("no counterexample") {
        assert!(out.contains("nearest miss"), "{out}");
    }
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, _) = run_cli(&[]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = run_cli(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, err) = run_cli(&["spectrum", "/nonexistent/file.graph"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("cannot read"));
    let (code, _, _) = run_cli(&["help"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let bad = write_graph("vertices 2\n0 1 3,4\n");
    let (code, _, err) = run_cli(&["spectrum", bad.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn serialize_parse_round_trip_random_graphs() {
    use gain_spectra::{fuzz, FuzzConfig, GainMode};
    let cfg = FuzzConfig {
        n_range: (2, 7),
        edge_probability: 0.6,
        gain_mode: GainMode::UniformCircle,
        trials: 25,
        seed: 42,
    };
    for g in fuzz::random_gain_graphs(&cfg).unwrap() {
        let text = format::serialize(&g);
        let back = format::parse_str(&text).unwrap();
        assert!(g.same_underlying(&back));
        for (a, b) in g.edges().iter().zip(back.edges()) {
            assert!(
                (a.gain.value() - b.gain.value()).norm() <= 1e-12,
                "round trip changed a gain"
            );
        }
    }
}
