//! The gain-graph text format.
//!
//! ```text
//! # comment
//! vertices 3
//! 0 1 i
//! 0 2 0.7071067811865476,0.7071067811865476
//! 1 2 polar:1.5707963267948966
//! ```
//!
//! Vertex indices are 0-based. A gain token is one of `1`, `-1`, `i`, `-i`,
//! a decimal pair `<re>,<im>`, or `polar:<theta>` with the angle in radians.
//! Parsed gains must be unit-modulus within 1e-6; decimal entry of
//! irrational gains survives through renormalization.

use gain_spectra::{GainGraph, Result as LibResult};
use num_complex::Complex64;

/// Parse failures carry the 1-based line number where they occurred.
#[derive(Debug, Clone, PartialEq)]
pub enum ParseError {
    BadHeader(String),
    Syntax { line: usize, message: String },
    NonUnitGain { line: usize, modulus: f64 },
    DuplicateEdge { line: usize, u: usize, v: usize },
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseError::BadHeader(m) => write!(f, "bad header: {m}"),
            ParseError::Syntax { line, message } => write!(f, "line {line}: {message}"),
            ParseError::NonUnitGain { line, modulus } => {
                write!(
                    f,
                    "line {line}: gain modulus {modulus} is not 1 within 1e-6"
                )
            }
            ParseError::DuplicateEdge { line, u, v } => {
                write!(f, "line {line}: duplicate edge ({u}, {v})")
            }
        }
    }
}

impl std::error::Error for ParseError {}

pub fn parse_gain_token(token: &str) -> Option<Complex64> {
    match token {
        "1" => return Some(Complex64::new(1.0, 0.0)),
        "-1" => return Some(Complex64::new(-1.0, 0.0)),
        "i" => return Some(Complex64::new(0.0, 1.0)),
        "-i" => return Some(Complex64::new(0.0, -1.0)),
        _ => {}
    }
    if let Some(theta) = token.strip_prefix("polar:") {
        return theta
            .parse::<f64>()
            .ok()
            .map(|t| Complex64::from_polar(1.0, t));
    }
    let (re, im) = token.split_once(',')?;
    Some(Complex64::new(re.parse().ok()?, im.parse().ok()?))
}

/// Parses the text form into a gain graph with line-precise errors.
pub fn parse_str(text: &str) -> Result<GainGraph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize, Complex64)> = Vec::new();
    let mut seen: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut fields = content.split_whitespace();
        if n.is_none() {
            // First substantive line must be the header.
            if fields.next() != Some("vertices") {
                return Err(ParseError::BadHeader(format!(
                    "line {line}: expected 'vertices <n>' before any edge line"
                )));
            }
            let count = fields
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| {
                    ParseError::BadHeader(format!("line {line}: unreadable vertex count"))
                })?;
            if fields.next().is_some() {
                return Err(ParseError::BadHeader(format!(
                    "line {line}: trailing tokens"
                )));
            }
            n = Some(count);
            continue;
        }
        let n = n.unwrap();

        let syntax = |message: String| ParseError::Syntax { line, message };
        let u: usize = fields
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| syntax("expected '<u> <v> <gain>'".into()))?;
        let v: usize = fields
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| syntax("expected '<u> <v> <gain>'".into()))?;
        let token = fields
            .next()
            .ok_or_else(|| syntax("missing gain token".into()))?;
        if fields.next().is_some() {
            return Err(syntax("trailing tokens after gain".into()));
        }
        if u >= n || v >= n {
            return Err(syntax(format!(
                "vertex index out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(syntax(format!("self-loop at vertex {u}")));
        }
        let z = parse_gain_token(token)
            .ok_or_else(|| syntax(format!("unreadable gain token '{token}'")))?;
        let modulus = z.norm();
        if (modulus - 1.0).abs() > 1e-6 {
            return Err(ParseError::NonUnitGain { line, modulus });
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        edges.push((u, v, z));
    }

    let n = n.ok_or_else(|| ParseError::BadHeader("missing 'vertices <n>' header".into()))?;
    finish_build(n, &edges)
}

fn finish_build(n: usize, edges: &[(usize, usize, Complex64)]) -> Result<GainGraph, ParseError> {
    let built: LibResult<GainGraph> = GainGraph::build(n, edges);
    built.map_err(|e| ParseError::Syntax {
        line: 0,
        message: e.to_string(),
    })
}

pub fn parse_file(path: &str) -> Result<GainGraph, ParseError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError::BadHeader(format!("cannot read '{path}': {e}")))?;
    parse_str(&text)
}

fn gain_token(z: Complex64) -> String {
    const EXACT: f64 = 1e-12;
    for (value, token) in [
        (Complex64::new(1.0, 0.0), "1"),
        (Complex64::new(-1.0, 0.0), "-1"),
        (Complex64::new(0.0, 1.0), "i"),
        (Complex64::new(0.0, -1.0), "-i"),
    ] {
        if (z - value).norm() <= EXACT {
            return token.into();
        }
    }
    // Shortest round-trip decimal form keeps reparses exact.
    format!("{},{}", z.re, z.im)
}

/// Renders a graph in the text format; `parse_str` recovers it exactly
/// (gains within 1e-12).
pub fn serialize(g: &GainGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("vertices {}\n", g.vertex_count()));
    for e in g.edges() {
        out.push_str(&format!("{} {} {}\n", e.u, e.v, gain_token(e.gain.value())));
    }
    out
}
