//! Reproducible random gain graphs and the fuzz campaigns built on them:
//! theorem-suite sweeps, interlacing sweeps, and the spectral-radius
//! coincidence search.
//!
//! Every trial derives its own RNG from (seed, trial index), so campaigns
//! produce identical streams sequentially and in parallel, and results merge
//! deterministically by trial index. With the `parallel` feature (default)
//! trials run on rayon; without it the same code runs sequentially.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::GainGraph;
use crate::theorems::{self, CheckStatus, VerificationReport};

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// How edge gains are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GainMode {
    /// Every gain 1 (the underlying graph itself; always balanced).
    AllOne,
    /// Gains from {1, -1}.
    Signs,
    /// Gains from {1, i, -1, -i}.
    FourthRoots,
    /// Uniform over the whole unit circle.
    UniformCircle,
}

impl std::str::FromStr for GainMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all_one" => Ok(GainMode::AllOne),
            "signs" => Ok(GainMode::Signs),
            "fourth_roots" => Ok(GainMode::FourthRoots),
            "uniform_circle" => Ok(GainMode::UniformCircle),
            other => Err(Error::BadConfig(format!(
                "unknown gain mode '{other}' (expected all_one | signs | fourth_roots | uniform_circle)"
            ))),
        }
    }
}

impl std::fmt::Display for GainMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GainMode::AllOne => "all_one",
            GainMode::Signs => "signs",
            GainMode::FourthRoots => "fourth_roots",
            GainMode::UniformCircle => "uniform_circle",
        };
        write!(f, "{s}")
    }
}

/// Reproducible trial stream configuration. Identical configs produce
/// identical graph streams.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FuzzConfig {
    /// Inclusive vertex-count range.
    pub n_range: (usize, usize),
    /// Edge probability of the underlying Erdos-Renyi graph, in (0, 1].
    pub edge_probability: f64,
    pub gain_mode: GainMode,
    pub trials: usize,
    pub seed: u64,
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.n_range;
        if lo < 1 || lo > hi {
            return Err(Error::BadConfig(format!("bad vertex range [{lo}, {hi}]")));
        }
        if !(self.edge_probability > 0.0 && self.edge_probability <= 1.0) {
            return Err(Error::BadConfig(format!(
                "edge probability {} outside (0, 1]",
                self.edge_probability
            )));
        }
        if self.trials == 0 {
            return Err(Error::BadConfig("trials must be positive".into()));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// splitmix64; decorrelates per-trial seeds.
fn mix(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn draw_gain(rng: &mut StdRng, mode: GainMode) -> Complex64 {
    match mode {
        GainMode::AllOne => Complex64::new(1.0, 0.0),
        GainMode::Signs => {
            if rng.gen_bool(0.5) {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(-1.0, 0.0)
            }
        }
        GainMode::FourthRoots => match rng.gen_range(0..4) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        },
        GainMode::UniformCircle => {
            Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
        }
    }
}

/// The graph of trial `index` under `cfg`: an Erdos-Renyi underlying graph
/// with gains drawn per mode. Deterministic in (cfg.seed, index).
pub fn trial_graph(cfg: &FuzzConfig, index: u64) -> GainGraph {
    let mut rng = StdRng::seed_from_u64(mix(cfg.seed, index));
    let (lo, hi) = cfg.n_range;
    let n = rng.gen_range(lo..=hi);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(cfg.edge_probability) {
                edges.push((u, v, draw_gain(&mut rng, cfg.gain_mode)));
            }
        }
    }
    GainGraph::build(n, &edges).expect("generated edges are valid by construction")
}

/// Bipartite companion generator: vertices are split into two sides at
/// random and only cross edges are drawn, so the underlying graph is always
/// bipartite.
pub fn bipartite_trial_graph(cfg: &FuzzConfig, index: u64) -> GainGraph {
    let mut rng = StdRng::seed_from_u64(mix(cfg.seed ^ 0x0B1_9A27, index));
    let (lo, hi) = cfg.n_range;
    let n = rng.gen_range(lo..=hi);
    let sides: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if sides[u] != sides[v] && rng.gen_bool(cfg.edge_probability) {
                edges.push((u, v, draw_gain(&mut rng, cfg.gain_mode)));
            }
        }
    }
    GainGraph::build(n, &edges).expect("generated edges are valid by construction")
}

/// The full stream of `cfg.trials` graphs.
pub fn random_gain_graphs(cfg: &FuzzConfig) -> Result<impl Iterator<Item = GainGraph> + '_> {
    cfg.validate()?;
    Ok((0..cfg.trials as u64).map(move |i| trial_graph(cfg, i)))
}

// ---------------------------------------------------------------------------
// Parallel trial mapping
// ---------------------------------------------------------------------------

/// Maps trial indices through `f`, in parallel when the `parallel` feature
/// is enabled. Output order is by trial index either way.
pub fn map_trials<T, F>(trials: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..trials as u64).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..trials as u64).map(f).collect()
    }
}

// ---------------------------------------------------------------------------
// Theorem-suite campaign
// ---------------------------------------------------------------------------

/// Outcome counts for one check id across a campaign.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckTally {
    pub check_id: String,
    pub pass: usize,
    pub fail: usize,
    pub hypothesis_not_met: usize,
}

/// A single failing check with its trial context.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FailureRecord {
    pub trial: u64,
    pub check_id: String,
    pub details: String,
    pub graph_summary: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub trials: usize,
    pub tallies: Vec<CheckTally>,
    pub total_failures: usize,
    /// First failures by trial index, capped to keep the report small.
    pub failures: Vec<FailureRecord>,
}

const MAX_STORED_FAILURES: usize = 25;

/// Runs the theorem suite against every trial graph and aggregates
/// per-check counts.
pub fn run_fuzz_campaign(cfg: &FuzzConfig) -> Result<FuzzSummary> {
    cfg.validate()?;
    let reports: Vec<(u64, VerificationReport)> = map_trials(cfg.trials, |i| {
        (i, theorems::theorem_suite(&trial_graph(cfg, i)))
    });

    let mut tallies: Vec<CheckTally> = theorems::CHECK_IDS
        .iter()
        .map(|id| CheckTally {
            check_id: (*id).to_string(),
            pass: 0,
            fail: 0,
            hypothesis_not_met: 0,
        })
        .collect();
    let mut failures = Vec::new();
    let mut total_failures = 0;

    for (trial, report) in &reports {
        for (slot, check) in tallies.iter_mut().zip(&report.checks) {
            debug_assert_eq!(slot.check_id, check.check_id);
            match check.status {
                CheckStatus::Pass => slot.pass += 1,
                CheckStatus::Fail => {
                    slot.fail += 1;
                    total_failures += 1;
                    if failures.len() < MAX_STORED_FAILURES {
                        failures.push(FailureRecord {
                            trial: *trial,
                            check_id: check.check_id.clone(),
                            details: check.details.clone(),
                            graph_summary: report.graph_summary.clone(),
                        });
                    }
                }
                CheckStatus::HypothesisNotMet => slot.hypothesis_not_met += 1,
            }
        }
    }

    Ok(FuzzSummary {
        trials: cfg.trials,
        tallies,
        total_failures,
        failures,
    })
}

// ---------------------------------------------------------------------------
// Interlacing campaign
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InterlaceSummary {
    pub trials: usize,
    /// Trials whose graph had no deletable edge or an isolated vertex.
    pub skipped: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<FailureRecord>,
}

/// Deletes one random edge per trial graph and checks interlacing.
/// Graphs with isolated vertices (undefined normalized Laplacian) or
/// without edges are skipped and counted.
pub fn run_interlace_campaign(cfg: &FuzzConfig) -> Result<InterlaceSummary> {
    cfg.validate()?;
    #[derive(Clone)]
    enum Outcome {
        Skip,
        Pass,
        Fail(String, String),
    }
    let outcomes = map_trials(cfg.trials, |i| {
        let g = trial_graph(cfg, i);
        if g.edge_count() == 0 || g.degrees().contains(&0) {
            return Outcome::Skip;
        }
        let mut rng = StdRng::seed_from_u64(mix(cfg.seed ^ 0x1E7AC, i));
        let e = g.edges()[rng.gen_range(0..g.edge_count())];
        match theorems::interlace_check(&g, (e.u, e.v)) {
            Ok(out) if out.pass => Outcome::Pass,
            Ok(out) => Outcome::Fail(
                format!(
                    "edge=({}, {}) lambda={:?} theta={:?}",
                    e.u,
                    e.v,
                    out.lambda.values(),
                    out.theta.values()
                ),
                summarize_graph(&g),
            ),
            Err(err) => Outcome::Fail(format!("error: {err}"), summarize_graph(&g)),
        }
    });

    let mut summary = InterlaceSummary {
        trials: cfg.trials,
        skipped: 0,
        passed: 0,
        failed: 0,
        failures: Vec::new(),
    };
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Outcome::Skip => summary.skipped += 1,
            Outcome::Pass => summary.passed += 1,
            Outcome::Fail(details, graph_summary) => {
                summary.failed += 1;
                if summary.failures.len() < MAX_STORED_FAILURES {
                    summary.failures.push(FailureRecord {
                        trial: trial as u64,
                        check_id: "interlacing".into(),
                        details,
                        graph_summary,
                    });
                }
            }
        }
    }
    Ok(summary)
}

fn summarize_graph(g: &GainGraph) -> String {
    format!("n={} m={}", g.vertex_count(), g.edge_count())
}

// ---------------------------------------------------------------------------
// Conjecture search
// ---------------------------------------------------------------------------

/// One tested sample in the radius-coincidence search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadiusGap {
    pub trial: u64,
    /// |rho(NL(Phi)) - rho(NL(G))|.
    pub gap: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureOutcome {
    pub trials: usize,
    /// Samples that met the hypotheses (connected, unbalanced, underlying
    /// class as requested) and were actually measured.
    pub tested: usize,
    pub skipped: usize,
    /// Trial index of a coincidence within tolerance, if any was found.
    pub hit: Option<RadiusGap>,
    /// Smallest gap among tested samples.
    pub nearest_miss: Option<RadiusGap>,
}

enum UnderlyingClass {
    NonBipartite,
    Bipartite,
}

/// Searches for a connected, non-bipartite, unbalanced graph whose
/// normalized-Laplacian spectral radius coincides with that of its
/// underlying graph within `tol`. Bipartite underlying graphs are skipped:
/// for those a coincidence already forces balance, so they cannot produce a
/// counterexample.
pub fn conjecture_search(cfg: &FuzzConfig, tol: f64) -> Result<ConjectureOutcome> {
    search(cfg, tol, UnderlyingClass::NonBipartite, trial_graph)
}

/// Radius-coincidence search restricted to bipartite underlying graphs,
/// drawn from the bipartite generator. Any hit here contradicts a theorem,
/// so callers treat it as a failure rather than a discovery.
pub fn conjecture_search_bipartite(cfg: &FuzzConfig, tol: f64) -> Result<ConjectureOutcome> {
    search(cfg, tol, UnderlyingClass::Bipartite, bipartite_trial_graph)
}

fn search(
    cfg: &FuzzConfig,
    tol: f64,
    class: UnderlyingClass,
    generate: fn(&FuzzConfig, u64) -> GainGraph,
) -> Result<ConjectureOutcome> {
    cfg.validate()?;
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::BadConfig(format!(
            "tolerance {tol} must be positive"
        )));
    }

    let gaps: Vec<Option<RadiusGap>> = map_trials(cfg.trials, |i| {
        let g = generate(cfg, i);
        let wanted_bipartite = matches!(class, UnderlyingClass::Bipartite);
        if g.vertex_count() < 2
            || !g.is_connected()
            || g.is_bipartite() != wanted_bipartite
            || g.is_balanced()
        {
            return None;
        }
        let rho = crate::eigen::spectral_radius(&crate::matrix::norm_laplacian(&g).ok()?).ok()?;
        let rho_u =
            crate::eigen::spectral_radius(&crate::matrix::norm_laplacian(&g.underlying()).ok()?)
                .ok()?;
        Some(RadiusGap {
            trial: i,
            gap: (rho - rho_u).abs(),
        })
    });

    let mut outcome = ConjectureOutcome {
        trials: cfg.trials,
        tested: 0,
        skipped: 0,
        hit: None,
        nearest_miss: None,
    };
    for gap in gaps.into_iter() {
        match gap {
            None => outcome.skipped += 1,
            Some(sample) => {
                outcome.tested += 1;
                if sample.gap < tol && outcome.hit.is_none() {
                    outcome.hit = Some(sample.clone());
                }
                if outcome
                    .nearest_miss
                    .as_ref()
                    .is_none_or(|m| sample.gap < m.gap)
                {
                    outcome.nearest_miss = Some(sample);
                }
            }
        }
    }
    Ok(outcome)
}
