//! Acceptance suite: golden spectra, formula-vs-oracle sweeps, theorem and
//! interlacing fuzz campaigns, oracle independence, and the radius
//! coincidence search. Each criterion prints one PASS/FAIL line
//! (`cargo test --test acceptance -- --nocapture` shows them all).

use std::time::{Duration, Instant};

use gain_spectra::{
    adjacency, adjacency_coeffs, basis_convert, charpoly_oracle, det_adjacency, eigenvalues,
    fuzz::{self, trial_graph},
    interlace_check, multi_edge_interlace, norm_lap_b_coeffs, norm_lap_c_coeffs, norm_laplacian,
    theorem_suite, CheckStatus, FuzzConfig, GainGraph, GainMode, HermitianMatrix,
};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn k3_all(g: Complex64) -> GainGraph {
    GainGraph::build(3, &[(0, 1, g), (0, 2, g), (1, 2, g)]).unwrap()
}

fn report(num: usize, name: &str, pass: bool, elapsed: Duration, details: &str) {
    println!(
        "ACCEPTANCE {num:>2} {name:<38} {} ({elapsed:<10.2?}) {details}",
        if pass { "PASS" } else { "FAIL" },
    );
}

fn spectra_close(got: &[f64], want: &[f64], tol: f64) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(a, b)| (a - b).abs() <= tol)
}

const MODES: [GainMode; 4] = [
    GainMode::AllOne,
    GainMode::Signs,
    GainMode::FourthRoots,
    GainMode::UniformCircle,
];

/// Deterministic stream of connected graphs (no isolated vertices) drawn
/// from the trial generator.
fn connected_graphs(cfg: &FuzzConfig, count: usize) -> Vec<GainGraph> {
    let mut graphs = Vec::with_capacity(count);
    let mut index = 0u64;
    while graphs.len() < count {
        assert!(
            index < (cfg.trials as u64) * 50,
            "generator failed to produce {count} connected graphs"
        );
        let g = trial_graph(cfg, index);
        index += 1;
        if g.vertex_count() >= 2 && g.is_connected() {
            graphs.push(g);
        }
    }
    graphs
}

#[test]
fn criterion_1_spectrum_k3_all_gains_minus_one() {
    let start = Instant::now();
    let g = k3_all(c(-1.0, 0.0));
    let spectrum = eigenvalues(&norm_laplacian(&g).unwrap()).unwrap();
    let golden_ok = spectra_close(spectrum.values(), &[0.5, 0.5, 2.0], 1e-9);

    let suite = theorem_suite(&g);
    let summary_ok = suite.graph_summary.contains("bipartite=false")
        && suite.graph_summary.contains("balanced=false");
    let two_in_spec = spectrum.multiplicity(2.0, 1e-9) == 1;
    let no_failures = !suite.has_failures();

    let pass = golden_ok && summary_ok && two_in_spec && no_failures;
    let elapsed = start.elapsed();
    report(
        1,
        "golden spectrum, all gains -1",
        pass,
        elapsed,
        &format!("spectrum={:?}", spectrum.values()),
    );
    assert!(
        golden_ok,
        "spectrum {:?} differs from {{0.5, 0.5, 2}}",
        spectrum.values()
    );
    assert!(summary_ok, "suite summary: {}", suite.graph_summary);
    assert!(two_in_spec, "2 must be a (simple) eigenvalue");
    assert!(no_failures, "suite failures: {:?}", suite.checks);
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
}

#[test]
fn criterion_2_spectrum_k3_all_gains_i() {
    let start = Instant::now();
    let g = k3_all(c(0.0, 1.0));
    let spectrum = eigenvalues(&norm_laplacian(&g).unwrap()).unwrap();
    let half_sqrt3 = 3.0_f64.sqrt() / 2.0;
    let golden_ok = spectra_close(
        spectrum.values(),
        &[1.0 - half_sqrt3, 1.0, 1.0 + half_sqrt3],
        1e-9,
    );

    // Symmetric about 1 yet not bipartite: the suite must record the
    // non-implication rather than fail.
    let suite = theorem_suite(&g);
    let note = suite
        .checks
        .iter()
        .find(|ch| ch.check_id == "symmetry_without_bipartite_note")
        .unwrap();
    let recorded = note.status == CheckStatus::Pass && note.details.contains("non-implication");
    let symmetric = spectrum.symmetric_about(1.0, 1e-9);
    let not_bipartite = !g.is_bipartite();
    let no_failures = !suite.has_failures();

    let pass = golden_ok && recorded && symmetric && not_bipartite && no_failures;
    let elapsed = start.elapsed();
    report(
        2,
        "golden spectrum, all gains i",
        pass,
        elapsed,
        &format!("spectrum={:?}", spectrum.values()),
    );
    assert!(
        golden_ok,
        "spectrum {:?} differs from 1 -/+ sqrt(3)/2",
        spectrum.values()
    );
    assert!(symmetric && not_bipartite);
    assert!(recorded, "note: {:?}", note);
    assert!(no_failures, "suite failures: {:?}", suite.checks);
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
}

#[test]
fn criterion_3_cospectral_pair_not_switching_equivalent() {
    let start = Instant::now();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let phi1 = GainGraph::build(
        3,
        &[(0, 1, c(0.0, 1.0)), (0, 2, c(s, s)), (1, 2, c(0.0, -1.0))],
    )
    .unwrap();
    let phi2 = GainGraph::build(
        3,
        &[(0, 1, c(-s, -s)), (0, 2, c(0.0, 1.0)), (1, 2, c(0.0, -1.0))],
    )
    .unwrap();

    let spec1 = eigenvalues(&adjacency(&phi1)).unwrap();
    let spec2 = eigenvalues(&adjacency(&phi2)).unwrap();
    let cospectral = spectra_close(spec1.values(), spec2.values(), 1e-8);
    let equivalent = phi1.switching_equivalent(&phi2).unwrap();

    let pass = cospectral && !equivalent;
    let elapsed = start.elapsed();
    report(
        3,
        "cospectral non-equivalent pair",
        pass,
        elapsed,
        &format!(
            "spec1={:?} switching_equivalent={equivalent}",
            spec1.values()
        ),
    );
    assert!(
        cospectral,
        "adjacency spectra differ: {:?} vs {:?}",
        spec1.values(),
        spec2.values()
    );
    assert!(!equivalent, "the pair must not be switching equivalent");
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
}

#[test]
fn criterion_4_coefficient_formulas_match_oracle() {
    let start = Instant::now();
    let per_mode = 50;
    let mut worst: f64 = 0.0;
    let mut checked = 0;

    for (mode_index, mode) in MODES.iter().enumerate() {
        let cfg = FuzzConfig {
            n_range: (3, 8),
            edge_probability: 0.5,
            gain_mode: *mode,
            trials: 5000,
            seed: 0x4C0E_FF00 + mode_index as u64,
        };
        let graphs = connected_graphs(&cfg, per_mode);
        let deviations: Vec<f64> = graphs
            .par_iter()
            .map(|g| {
                let n = g.vertex_count();
                let oracle_a = charpoly_oracle(&adjacency(g)).unwrap();
                let oracle_nl = charpoly_oracle(&norm_laplacian(g).unwrap()).unwrap();

                let dev_a = adjacency_coeffs(g)
                    .unwrap()
                    .max_deviation(&oracle_a)
                    .unwrap();
                let dev_b = norm_lap_b_coeffs(g)
                    .unwrap()
                    .max_deviation(&oracle_nl)
                    .unwrap();
                let dev_c = basis_convert(&norm_lap_c_coeffs(g).unwrap())
                    .unwrap()
                    .max_deviation(&oracle_nl)
                    .unwrap();

                let det = det_adjacency(g).unwrap();
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let det_oracle = sign * oracle_a.coeffs().last().unwrap();
                let dev_det = (det - det_oracle).abs();

                dev_a.max(dev_b).max(dev_c).max(dev_det)
            })
            .collect();
        checked += deviations.len();
        worst = deviations.into_iter().fold(worst, f64::max);
    }

    let pass = worst <= 1e-8 && checked == 200;
    let elapsed = start.elapsed();
    report(
        4,
        "subgraph formulas vs oracle (200)",
        pass,
        elapsed,
        &format!("graphs={checked} worst_deviation={worst:.3e}"),
    );
    assert_eq!(checked, 200);
    assert!(
        worst <= 1e-8,
        "worst coefficient deviation {worst:e} exceeds 1e-8"
    );
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
}

#[test]
fn criterion_5_theorem_suite_fuzz_1000() {
    let start = Instant::now();
    let per_mode = 250;
    let mut graphs = Vec::with_capacity(1000);
    for (mode_index, mode) in MODES.iter().enumerate() {
        let cfg = FuzzConfig {
            n_range: (2, 10),
            edge_probability: 0.5,
            gain_mode: *mode,
            trials: 8000,
            seed: 0xF077_0000 + mode_index as u64,
        };
        graphs.extend(connected_graphs(&cfg, per_mode));
    }
    assert_eq!(graphs.len(), 1000);

    let reports: Vec<_> = graphs.par_iter().map(theorem_suite).collect();
    let failures: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.failures()
                .map(|ch| format!("[{}] {}: {}", r.graph_summary, ch.check_id, ch.details))
                .collect::<Vec<_>>()
        })
        .collect();

    // The specific claims the campaign must cover, by check id.
    let required = [
        "eigenvalues_in_0_2",
        "trace_equals_order",
        "second_smallest_bound",
        "strict_unit_straddle",
        "singular_iff_balanced",
        "zero_eigenvalue_simple",
        "negation_reflects_spectrum",
        "bipartite_spectrum_symmetry",
        "spectrum_recovers_balance",
        "laplacian_quadratic_form",
        "normalized_quadratic_form",
    ];
    let mut pass_counts = vec![0usize; required.len()];
    for r in &reports {
        for ch in &r.checks {
            if let Some(k) = required.iter().position(|id| *id == ch.check_id) {
                if ch.status == CheckStatus::Pass {
                    pass_counts[k] += 1;
                }
            }
        }
    }
    let coverage_ok = pass_counts.iter().all(|&count| count > 0);

    let pass = failures.is_empty() && coverage_ok;
    let elapsed = start.elapsed();
    report(
        5,
        "theorem-suite fuzz (1000 graphs)",
        pass,
        elapsed,
        &format!(
            "failures={} min_check_passes={:?}",
            failures.len(),
            pass_counts.iter().min()
        ),
    );
    assert!(
        failures.is_empty(),
        "{} theorem failures, first: {}",
        failures.len(),
        failures.first().map(String::as_str).unwrap_or("")
    );
    assert!(
        coverage_ok,
        "some required check never passed: {pass_counts:?}"
    );
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
}

#[test]
fn criterion_6_interlacing_fuzz() {
    let start = Instant::now();

    // 500 single-edge deletions, including ones that isolate vertices.
    let cfg = FuzzConfig {
        n_range: (2, 10),
        edge_probability: 0.45,
        gain_mode: GainMode::UniformCircle,
        trials: 8000,
        seed: 0x17E5_1ACE,
    };
    let graphs: Vec<GainGraph> = {
        let mut out = Vec::new();
        let mut index = 0u64;
        while out.len() < 500 {
            let g = trial_graph(&cfg, index);
            index += 1;
            assert!(index < 100_000, "not enough eligible graphs");
            if g.vertex_count() >= 2 && g.is_connected() && g.edge_count() >= 1 {
                out.push(g);
            }
        }
        out
    };

    let mut isolating_deletions = 0usize;
    let mut single_failures = Vec::new();
    let results: Vec<(bool, bool)> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let mut rng = StdRng::seed_from_u64(0xED6E ^ (i as u64));
            let e = g.edges()[rng.gen_range(0..g.edge_count())];
            let isolating = g.degree(e.u).unwrap() == 1 || g.degree(e.v).unwrap() == 1;
            let pass = interlace_check(g, (e.u, e.v))
                .map(|out| out.pass)
                .unwrap_or(false);
            (pass, isolating)
        })
        .collect();
    for (i, (pass, isolating)) in results.iter().enumerate() {
        if *isolating {
            isolating_deletions += 1;
        }
        if !pass {
            single_failures.push(i);
        }
    }

    // 100 multi-edge deletions: 50 double, 50 triple.
    let mut multi_failures = Vec::new();
    let mut multi_done = 0usize;
    let mut index = 0u64;
    let multi_cfg = FuzzConfig {
        n_range: (4, 10),
        edge_probability: 0.55,
        gain_mode: GainMode::FourthRoots,
        trials: 8000,
        seed: 0x3D6E_DE1E,
    };
    while multi_done < 100 {
        let g = trial_graph(&multi_cfg, index);
        index += 1;
        assert!(
            index < 100_000,
            "not enough eligible graphs for multi-edge deletions"
        );
        let t = if multi_done < 50 { 2 } else { 3 };
        if !(g.vertex_count() >= 2 && g.is_connected() && g.edge_count() > t) {
            continue;
        }
        let mut rng = StdRng::seed_from_u64(0x0D06_F00D ^ index);
        let mut h = g.clone();
        for _ in 0..t {
            let e = h.edges()[rng.gen_range(0..h.edge_count())];
            h = h.remove_edge(e.u, e.v).unwrap();
        }
        match multi_edge_interlace(&g, &h) {
            Ok(true) => {}
            _ => multi_failures.push(index),
        }
        multi_done += 1;
    }

    let pass = single_failures.is_empty()
        && multi_failures.is_empty()
        && isolating_deletions > 0
        && multi_done == 100;
    let elapsed = start.elapsed();
    report(
        6,
        "interlacing fuzz (500 + 100)",
        pass,
        elapsed,
        &format!(
            "single_failures={} multi_failures={} isolating_deletions={isolating_deletions}",
            single_failures.len(),
            multi_failures.len()
        ),
    );
    assert!(
        single_failures.is_empty(),
        "failing trials: {single_failures:?}"
    );
    assert!(
        multi_failures.is_empty(),
        "failing multi trials: {multi_failures:?}"
    );
    assert!(
        isolating_deletions > 0,
        "campaign never exercised an isolating deletion"
    );
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
}

#[test]
fn criterion_7_eigensolver_vs_polynomial_roots() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x00AC_1E00);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.gen_range(2..=6);
        let mut entries = vec![c(0.0, 0.0); n * n];
        for i in 0..n {
            entries[i * n + i] = c(rng.gen_range(-2.0..2.0), 0.0);
            for j in (i + 1)..n {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                entries[i * n + j] = z;
                entries[j * n + i] = z.conj();
            }
        }
        let m = HermitianMatrix::from_entries(n, entries).unwrap();
        let eigs = eigenvalues(&m).unwrap();
        let roots = charpoly_oracle(&m).unwrap().real_roots();
        assert_eq!(roots.len(), eigs.len(), "root count mismatch at n = {n}");
        for (r, e) in roots.iter().zip(eigs.values()) {
            worst = worst.max((r - e).abs());
        }
    }
    let pass = worst <= 1e-7;
    let elapsed = start.elapsed();
    report(
        7,
        "oracle independence (100 matrices)",
        pass,
        elapsed,
        &format!("worst_root_gap={worst:.3e}"),
    );
    assert!(pass, "worst eigenvalue/root gap {worst:e} exceeds 1e-7");
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
}

#[test]
fn criterion_8_conjecture_campaign() {
    let start = Instant::now();
    let tol = 1e-7;

    // Main campaign: non-bipartite unbalanced graphs. A hit is archived,
    // never asserted away: the statement is open.
    let cfg = FuzzConfig {
        n_range: (3, 8),
        edge_probability: 0.5,
        gain_mode: GainMode::FourthRoots,
        trials: 10_000,
        seed: 0x0C04_1EC7,
    };
    let outcome = fuzz::conjecture_search(&cfg, tol).unwrap();
    if let Some(hit) = &outcome.hit {
        let g = trial_graph(&cfg, hit.trial);
        println!("ARCHIVED radius-coincidence candidate (gap {:e}):", hit.gap);
        println!("vertices {}", g.vertex_count());
        for e in g.edges() {
            let z = e.gain.value();
            println!("{} {} {},{}", e.u, e.v, z.re, z.im);
        }
    }

    // Bipartite-restricted campaign: a hit here contradicts a theorem.
    let bipartite_cfg = FuzzConfig {
        n_range: (3, 8),
        edge_probability: 0.5,
        gain_mode: GainMode::FourthRoots,
        trials: 2000,
        seed: 0xB1B1,
    };
    let bipartite_outcome = fuzz::conjecture_search_bipartite(&bipartite_cfg, tol).unwrap();

    let pass =
        bipartite_outcome.hit.is_none() && outcome.tested > 0 && bipartite_outcome.tested > 0;
    let elapsed = start.elapsed();
    let nearest = outcome
        .nearest_miss
        .as_ref()
        .map(|m| format!("{:.3e}", m.gap))
        .unwrap_or_else(|| "none".into());
    report(
        8,
        "conjecture campaign (10^4 trials)",
        pass,
        elapsed,
        &format!(
            "tested={} hit={} nearest_miss_gap={nearest} bipartite_tested={} bipartite_hit={}",
            outcome.tested,
            outcome.hit.is_some(),
            bipartite_outcome.tested,
            bipartite_outcome.hit.is_some()
        ),
    );
    assert!(
        outcome.tested > 0,
        "campaign never tested an eligible graph"
    );
    assert!(
        bipartite_outcome.tested > 0,
        "bipartite campaign never tested an eligible graph"
    );
    assert!(
        bipartite_outcome.hit.is_none(),
        "radius coincidence on a bipartite graph contradicts the bipartite radius theorem: {:?}",
        bipartite_outcome.hit
    );
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
}
