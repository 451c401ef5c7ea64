//! Command-line front end: parse gain-graph files, run the spectral
//! operations, and render text or JSON reports.
//!
//! Exit codes: 0 success, 1 theorem failure (a check that should hold did
//! not), 2 usage or input errors.

pub mod format;

use std::io::Write;

use gain_spectra::{
    adjacency, basis_convert, charpoly_oracle, eigenvalues, fuzz, laplacian, norm_adjacency,
    norm_laplacian, theorem_suite, Balance, CharPolyCoeffs, FuzzConfig, GainGraph, GainMode,
    HermitianMatrix, PolyBasis,
};
use num_complex::Complex64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_THEOREM_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const USAGE: &str = "\
gain-spectra <command> [options]

Commands:
  spectrum <file> [--matrix A|L|NA|NL]   sorted eigenvalues (default NL)
  balance <file>                          balance decision with witness
  charpoly <file> [--basis x|x1|adjacency] [--oracle]
                                          characteristic-polynomial coefficients
  interlace <file> --edge <u> <v>         edge-deletion interlacing check
  verify <file> [--json]                  full check suite on one graph
  fuzz [--trials T] [--seed S] [--n-max N] [--gain-mode M]
                                          random-graph check campaign
  conjecture [--trials T] [--seed S] [--tol E]
                                          spectral-radius coincidence search

Graph files are text: '# comment' lines, a 'vertices <n>' header, then
'u v <gain>' lines with 0-based vertex indices. Gains: 1, -1, i, -i,
'<re>,<im>', or 'polar:<theta>'.

Gain modes: all_one, signs, fourth_roots, uniform_circle.
Exit codes: 0 success, 1 theorem failure, 2 usage or input error.
";

/// Dispatches `args` (without the program name), writing normal output to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(args, out) {
        Ok(code) => code,
        Err(CliError::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            let _ = write!(err, "{USAGE}");
            EXIT_USAGE
        }
        Err(CliError::Input(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                // The consumer closed the stream (e.g. piping into head).
                return EXIT_OK;
            }
            let _ = writeln!(err, "i/o error: {e}");
            EXIT_USAGE
        }
    }
}

enum CliError {
    /// Wrong flags or arguments.
    Usage(String),
    /// Well-formed invocation over bad input data.
    Input(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<format::ParseError> for CliError {
    fn from(e: format::ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<gain_spectra::Error> for CliError {
    fn from(e: gain_spectra::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

type CliResult = Result<i32, CliError>;

fn dispatch(args: &[String], out: &mut dyn Write) -> CliResult {
    let mut iter = args.iter().map(String::as_str);
    let command = iter
        .next()
        .ok_or_else(|| CliError::Usage("missing command".into()))?;
    let rest: Vec<&str> = iter.collect();
    match command {
        "-h" | "--help" | "help" => {
            write!(out, "{USAGE}")?;
            Ok(EXIT_OK)
        }
        "spectrum" => cmd_spectrum(&rest, out),
        "balance" => cmd_balance(&rest, out),
        "charpoly" => cmd_charpoly(&rest, out),
        "interlace" => cmd_interlace(&rest, out),
        "verify" => cmd_verify(&rest, out),
        "fuzz" => cmd_fuzz(&rest, out),
        "conjecture" => cmd_conjecture(&rest, out),
        other => Err(CliError::Usage(format!("unknown command '{other}'"))),
    }
}

// ---------------------------------------------------------------------------
// Formatting helpers
// ---------------------------------------------------------------------------

/// 12 significant digits in positional notation.
fn fmt_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0.000000000000".into();
    }
    let exponent = v.abs().log10().floor() as i32;
    let decimals = (11 - exponent).max(0) as usize;
    format!("{:.*}", decimals, v)
}

fn fmt_values(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| fmt_sig12(v))
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_complex(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

fn cmd_spectrum(args: &[&str], out: &mut dyn Write) -> CliResult {
    let mut file = None;
    let mut which = "NL";
    let mut i = 0;
    while i < args.len() {
        match args[i] {
            "--matrix" => {
                which = args
                    .get(i + 1)
                    .copied()
                    .ok_or_else(|| CliError::Usage("--matrix needs a value".into()))?;
                i += 2;
            }
            flag if flag.starts_with('-') => {
                return Err(CliError::Usage(format!("unknown flag '{flag}'")))
            }
            path => {
                if file.replace(path).is_some() {
                    return Err(CliError::Usage("more than one file given".into()));
                }
                i += 1;
            }
        }
    }
    let file = file.ok_or_else(|| CliError::Usage("spectrum needs a graph file".into()))?;
    let g = format::parse_file(file)?;
    let matrix = build_matrix(&g, which)?;
    let spectrum = eigenvalues(&matrix)?;
    writeln!(out, "{}", fmt_values(spectrum.values()))?;
    Ok(EXIT_OK)
}

fn build_matrix(g: &GainGraph, which: &str) -> Result<HermitianMatrix, CliError> {
    match which {
        "A" => Ok(adjacency(g)),
        "L" => Ok(laplacian(g)),
        "NA" => Ok(norm_adjacency(g)?),
        "NL" => Ok(norm_laplacian(g)?),
        other => Err(CliError::Usage(format!(
            "unknown matrix '{other}' (expected A | L | NA | NL)"
        ))),
    }
}

// ---------------------------------------------------------------------------
// balance
// ---------------------------------------------------------------------------

fn cmd_balance(args: &[&str], out: &mut dyn Write) -> CliResult {
    let [file] = args else {
        return Err(CliError::Usage(
            "balance needs exactly one graph file".into(),
        ));
    };
    let g = format::parse_file(file)?;
    match g.balance() {
        Balance::Balanced(zeta) => {
            writeln!(out, "BALANCED")?;
            for (v, gain) in zeta.gains().iter().enumerate() {
                writeln!(out, "zeta {} {}", v, fmt_complex(gain.value()))?;
            }
        }
        Balance::Unbalanced(cycle) => {
            writeln!(out, "UNBALANCED")?;
            let verts: Vec<String> = cycle.vertices().iter().map(|v| v.to_string()).collect();
            writeln!(out, "cycle {}", verts.join(" "))?;
            let gain = g.cycle_gain(&cycle)?;
            writeln!(out, "gain {}", fmt_complex(gain))?;
        }
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// charpoly
// ---------------------------------------------------------------------------

fn cmd_charpoly(args: &[&str], out: &mut dyn Write) -> CliResult {
    let mut file = None;
    let mut basis = "x";
    let mut oracle = false;
    let mut i = 0;
    while i < args.len() {
        match args[i] {
            "--basis" => {
                basis = args
                    .get(i + 1)
                    .copied()
                    .ok_or_else(|| CliError::Usage("--basis needs a value".into()))?;
                i += 2;
            }
            "--oracle" => {
                oracle = true;
                i += 1;
            }
            flag if flag.starts_with('-') => {
                return Err(CliError::Usage(format!("unknown flag '{flag}'")))
            }
            path => {
                if file.replace(path).is_some() {
                    return Err(CliError::Usage("more than one file given".into()));
                }
                i += 1;
            }
        }
    }
    let file = file.ok_or_else(|| CliError::Usage("charpoly needs a graph file".into()))?;
    let g = format::parse_file(file)?;

    let (label, ours): (&str, CharPolyCoeffs) = match basis {
        "x" => ("x", gain_spectra::norm_lap_b_coeffs(&g)?),
        "x1" => ("x-1", gain_spectra::norm_lap_c_coeffs(&g)?),
        "adjacency" => ("adjacency", gain_spectra::adjacency_coeffs(&g)?),
        other => {
            return Err(CliError::Usage(format!(
                "unknown basis '{other}' (expected x | x1 | adjacency)"
            )))
        }
    };
    writeln!(out, "basis {}", label)?;
    writeln!(out, "coeffs {}", fmt_values(ours.coeffs()))?;

    if oracle {
        // The oracle works in powers of x; the (x-1)-basis coefficients are
        // converted before comparing.
        let reference = match ours.basis() {
            PolyBasis::Adjacency => charpoly_oracle(&adjacency(&g))?,
            _ => charpoly_oracle(&norm_laplacian(&g)?)?,
        };
        let comparable = match ours.basis() {
            PolyBasis::XMinusOne => basis_convert(&ours)?,
            _ => ours.clone(),
        };
        writeln!(out, "oracle {}", fmt_values(reference.coeffs()))?;
        let deviation = comparable.max_deviation(&reference)?;
        writeln!(out, "max_deviation {:e}", deviation)?;
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// interlace
// ---------------------------------------------------------------------------

fn cmd_interlace(args: &[&str], out: &mut dyn Write) -> CliResult {
    let mut file = None;
    let mut edge = None;
    let mut i = 0;
    while i < args.len() {
        match args[i] {
            "--edge" => {
                let u = args.get(i + 1).and_then(|t| t.parse::<usize>().ok());
                let v = args.get(i + 2).and_then(|t| t.parse::<usize>().ok());
                match (u, v) {
                    (Some(u), Some(v)) => edge = Some((u, v)),
                    _ => return Err(CliError::Usage("--edge needs two vertex indices".into())),
                }
                i += 3;
            }
            flag if flag.starts_with('-') => {
                return Err(CliError::Usage(format!("unknown flag '{flag}'")))
            }
            path => {
                if file.replace(path).is_some() {
                    return Err(CliError::Usage("more than one file given".into()));
                }
                i += 1;
            }
        }
    }
    let file = file.ok_or_else(|| CliError::Usage("interlace needs a graph file".into()))?;
    let edge = edge.ok_or_else(|| CliError::Usage("interlace needs --edge <u> <v>".into()))?;
    let g = format::parse_file(file)?;
    let outcome = gain_spectra::interlace_check(&g, edge)?;
    writeln!(out, "lambda {}", fmt_values(outcome.lambda.values()))?;
    writeln!(out, "theta  {}", fmt_values(outcome.theta.values()))?;
    if outcome.pass {
        writeln!(out, "PASS")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "FAIL")?;
        Ok(EXIT_THEOREM_FAILURE)
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: &[&str], out: &mut dyn Write) -> CliResult {
    let mut file = None;
    let mut json = false;
    for &arg in args {
        match arg {
            "--json" => json = true,
            flag if flag.starts_with('-') => {
                return Err(CliError::Usage(format!("unknown flag '{flag}'")))
            }
            path => {
                if file.replace(path).is_some() {
                    return Err(CliError::Usage("more than one file given".into()));
                }
            }
        }
    }
    let file = file.ok_or_else(|| CliError::Usage("verify needs a graph file".into()))?;
    let g = format::parse_file(file)?;
    let report = theorem_suite(&g);
    if json {
        let rendered = serde_json::to_string_pretty(&report)
            .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
        writeln!(out, "{rendered}")?;
    } else {
        writeln!(out, "graph {}", report.graph_summary)?;
        for check in &report.checks {
            writeln!(
                out,
                "{:<42} {:<18} {}",
                check.check_id,
                check.status.to_string(),
                check.details
            )?;
        }
    }
    if report.has_failures() {
        Ok(EXIT_THEOREM_FAILURE)
    } else {
        Ok(EXIT_OK)
    }
}

// ---------------------------------------------------------------------------
// fuzz
// ---------------------------------------------------------------------------

fn parse_flag_value<T: std::str::FromStr>(
    args: &[&str],
    i: usize,
    flag: &str,
) -> Result<T, CliError> {
    args.get(i + 1)
        .and_then(|t| t.parse::<T>().ok())
        .ok_or_else(|| CliError::Usage(format!("{flag} needs a value")))
}

fn cmd_fuzz(args: &[&str], out: &mut dyn Write) -> CliResult {
    let mut cfg = FuzzConfig {
        n_range: (3, 8),
        edge_probability: 0.5,
        gain_mode: GainMode::FourthRoots,
        trials: 100,
        seed: 0,
    };
    let mut i = 0;
    while i < args.len() {
        match args[i] {
            "--trials" => {
                cfg.trials = parse_flag_value(args, i, "--trials")?;
                i += 2;
            }
            "--seed" => {
                cfg.seed = parse_flag_value(args, i, "--seed")?;
                i += 2;
            }
            "--n-max" => {
                cfg.n_range.1 = parse_flag_value(args, i, "--n-max")?;
                i += 2;
            }
            "--gain-mode" => {
                let token: String = parse_flag_value(args, i, "--gain-mode")?;
                cfg.gain_mode = token.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
                i += 2;
            }
            other => return Err(CliError::Usage(format!("unknown flag '{other}'"))),
        }
    }
    cfg.n_range.1 = cfg.n_range.1.max(cfg.n_range.0);
    let summary = fuzz::run_fuzz_campaign(&cfg)?;
    writeln!(
        out,
        "trials {} seed {} n in [{}, {}] gain_mode {}",
        summary.trials, cfg.seed, cfg.n_range.0, cfg.n_range.1, cfg.gain_mode
    )?;
    writeln!(
        out,
        "{:<42} {:>6} {:>6} {:>6}",
        "check", "pass", "fail", "skip"
    )?;
    for tally in &summary.tallies {
        writeln!(
            out,
            "{:<42} {:>6} {:>6} {:>6}",
            tally.check_id, tally.pass, tally.fail, tally.hypothesis_not_met
        )?;
    }
    writeln!(out, "total_failures {}", summary.total_failures)?;
    for failure in &summary.failures {
        writeln!(
            out,
            "failure trial={} check={} [{}] {}",
            failure.trial, failure.check_id, failure.graph_summary, failure.details
        )?;
    }
    if summary.total_failures > 0 {
        Ok(EXIT_THEOREM_FAILURE)
    } else {
        Ok(EXIT_OK)
    }
}

// ---------------------------------------------------------------------------
// conjecture
// ---------------------------------------------------------------------------

fn cmd_conjecture(args: &[&str], out: &mut dyn Write) -> CliResult {
    let mut cfg = FuzzConfig {
        n_range: (3, 8),
        edge_probability: 0.5,
        gain_mode: GainMode::FourthRoots,
        trials: 1000,
        seed: 0,
    };
    let mut tol = 1e-7;
    let mut i = 0;
    while i < args.len() {
        match args[i] {
            "--trials" => {
                cfg.trials = parse_flag_value(args, i, "--trials")?;
                i += 2;
            }
            "--seed" => {
                cfg.seed = parse_flag_value(args, i, "--seed")?;
                i += 2;
            }
            "--tol" => {
                tol = parse_flag_value(args, i, "--tol")?;
                i += 2;
            }
            "--gain-mode" => {
                let token: String = parse_flag_value(args, i, "--gain-mode")?;
                cfg.gain_mode = token.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
                i += 2;
            }
            other => return Err(CliError::Usage(format!("unknown flag '{other}'"))),
        }
    }
    let outcome = fuzz::conjecture_search(&cfg, tol)?;
    match &outcome.hit {
        Some(hit) => {
            writeln!(
                out,
                "counterexample candidate at trial {} (radius gap {:e}):",
                hit.trial, hit.gap
            )?;
            let g = fuzz::trial_graph(&cfg, hit.trial);
            write!(out, "{}", format::serialize(&g))?;
        }
        None => {
            writeln!(
                out,
                "no counterexample in {} trials ({} tested, {} skipped)",
                outcome.trials, outcome.tested, outcome.skipped
            )?;
            match &outcome.nearest_miss {
                Some(miss) => writeln!(
                    out,
                    "nearest miss: radius gap {:e} at trial {}",
                    miss.gap, miss.trial
                )?,
                None => writeln!(out, "nearest miss: none (no sample met the hypotheses)")?,
            }
        }
    }
    Ok(EXIT_OK)
}
