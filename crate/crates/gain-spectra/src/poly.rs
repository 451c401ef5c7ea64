//! Characteristic-polynomial coefficients, the Faddeev-LeVerrier oracle, and
//! root extraction for real-rooted polynomials.
//!
//! The oracle is structurally independent of both the Jacobi eigensolver and
//! the subgraph formulas, so each route can check the others.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;

/// Which expansion the coefficient sequence describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyBasis {
    /// `det(xI - A(Phi))` in powers of `x` (the `a_k`).
    Adjacency,
    /// `det(xI - NL(Phi))` in powers of `x` (the `b_k`).
    X,
    /// `det(xI - NL(Phi))` in powers of `(x - 1)` (the `c_k`).
    XMinusOne,
}

/// Coefficient sequence of a monic characteristic polynomial; index 0 holds
/// the leading 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPolyCoeffs {
    basis: PolyBasis,
    coeffs: Vec<f64>,
}

impl CharPolyCoeffs {
    pub fn new(basis: PolyBasis, coeffs: Vec<f64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        debug_assert!(
            (coeffs[0] - 1.0).abs() < 1e-12,
            "leading coefficient must be 1"
        );
        CharPolyCoeffs { basis, coeffs }
    }

    pub fn basis(&self) -> PolyBasis {
        self.basis
    }

    /// Coefficients from the leading 1 down to the constant term; length is
    /// degree + 1.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates the polynomial at `x`, honoring the basis.
    pub fn eval(&self, x: f64) -> f64 {
        let y = match self.basis {
            PolyBasis::XMinusOne => x - 1.0,
            _ => x,
        };
        self.coeffs.iter().fold(0.0, |acc, &c| acc * y + c)
    }

    /// Largest absolute coefficient difference. Errors when degrees differ.
    pub fn max_deviation(&self, other: &CharPolyCoeffs) -> Result<f64> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::LengthMismatch(self.coeffs.len(), other.coeffs.len()));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// All roots, ascending. Valid only for real-rooted polynomials (every
    /// characteristic polynomial of a Hermitian matrix qualifies). For the
    /// `(x - 1)` basis the shift is applied after solving.
    pub fn real_roots(&self) -> Vec<f64> {
        let mut roots = real_roots_monic(&self.coeffs);
        if self.basis == PolyBasis::XMinusOne {
            for r in &mut roots {
                *r += 1.0;
            }
        }
        roots
    }
}

// ---------------------------------------------------------------------------
// Faddeev-LeVerrier
// ---------------------------------------------------------------------------

/// Coefficients of `det(xI - M)` by the Faddeev-LeVerrier recurrence on
/// complex arithmetic. Hermitian input forces real coefficients; imaginary
/// residues above 1e-9 are rejected.
pub fn charpoly_oracle(m: &HermitianMatrix) -> Result<CharPolyCoeffs> {
    let coeffs = charpoly_complex(m.dim(), m.entries())?;
    Ok(CharPolyCoeffs::new(PolyBasis::X, coeffs))
}

fn charpoly_complex(n: usize, a: &[Complex64]) -> Result<Vec<f64>> {
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(1.0);
    if n == 0 {
        return Ok(coeffs);
    }

    // B_1 = A, c_k = -tr(B_k)/k, B_{k+1} = A (B_k + c_k I).
    let mut b = a.to_vec();
    for k in 1..=n {
        let trace: Complex64 = (0..n).map(|i| b[i * n + i]).sum();
        let c = -trace / k as f64;
        if c.im.abs() > 1e-9 {
            return Err(Error::NonRealCoefficient {
                k,
                imag: c.im.abs(),
            });
        }
        coeffs.push(c.re);
        if k == n {
            break;
        }
        for i in 0..n {
            b[i * n + i] += c;
        }
        b = mat_mul(n, a, &b);
    }
    Ok(coeffs)
}

fn mat_mul(n: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Basis conversion
// ---------------------------------------------------------------------------

/// Expands `sum_k c_k (x-1)^(n-k)` into powers of `x`.
pub fn basis_convert(c: &CharPolyCoeffs) -> Result<CharPolyCoeffs> {
    if c.basis() != PolyBasis::XMinusOne {
        return Err(Error::BadConfig(
            "basis_convert expects the (x-1) basis".into(),
        ));
    }
    let n = c.degree();
    let mut out = vec![0.0; n + 1];
    for (k, &ck) in c.coeffs().iter().enumerate() {
        // (x-1)^(n-k) = sum_j C(n-k, j) (-1)^j x^(n-k-j); the x^(n-k-j)
        // term lands at output index k + j.
        let m = n - k;
        let mut binom = 1.0;
        for j in 0..=m {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            out[k + j] += ck * binom * sign;
            binom = binom * (m - j) as f64 / (j + 1) as f64;
        }
    }
    Ok(CharPolyCoeffs::new(PolyBasis::X, out))
}

// ---------------------------------------------------------------------------
// Real-rooted polynomial roots
// ---------------------------------------------------------------------------

/// Roots of a monic real-rooted polynomial given by `coeffs` (leading
/// first), ascending with multiplicity. Works by recursive derivative
/// interlacing: the roots of `p'` split the line into intervals on which
/// `p` is monotone, so each interval holds at most one root, found by
/// bisection. A derivative root where `p` (nearly) vanishes is a multiple
/// root.
pub fn real_roots_monic(coeffs: &[f64]) -> Vec<f64> {
    let degree = coeffs.len() - 1;
    match degree {
        0 => Vec::new(),
        1 => vec![-coeffs[1] / coeffs[0]],
        2 => {
            let (b, c) = (coeffs[1] / coeffs[0], coeffs[2] / coeffs[0]);
            // Clamp the discriminant: real-rootedness can be blurred by
            // rounding for double roots.
            let disc = (b * b - 4.0 * c).max(0.0).sqrt();
            let mut r = vec![(-b - disc) / 2.0, (-b + disc) / 2.0];
            r.sort_by(|x, y| x.partial_cmp(y).unwrap());
            r
        }
        _ => {
            let eval = |x: f64| coeffs.iter().fold(0.0, |acc, &c| acc * x + c);
            let scale = coeffs.iter().fold(1.0_f64, |m, &c| m.max(c.abs()));
            let near_zero = 1e-11 * scale;

            let derivative: Vec<f64> = coeffs[..degree]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (degree - i) as f64)
                .collect();
            let mut crit = real_roots_monic(&normalize(&derivative));
            crit.sort_by(|a, b| a.partial_cmp(b).unwrap());
            crit.dedup_by(|a, b| (*a - *b).abs() < 1e-12);

            // Cauchy bound: all roots lie within |x| <= 1 + max |c_i|.
            let bound = 1.0 + coeffs.iter().skip(1).fold(0.0_f64, |m, &c| m.max(c.abs()));

            let mut roots = Vec::with_capacity(degree);
            // Multiple roots sit at critical points where p vanishes.
            for &r in &crit {
                if eval(r).abs() <= near_zero {
                    // Multiplicity in p = multiplicity in p' + 1.
                    let mult = multiplicity_in(&derivative, r) + 1;
                    for _ in 0..mult {
                        roots.push(r);
                    }
                }
            }

            let mut endpoints = Vec::with_capacity(crit.len() + 2);
            endpoints.push(-bound);
            endpoints.extend_from_slice(&crit);
            endpoints.push(bound);
            for w in endpoints.windows(2) {
                let (a, b) = (w[0], w[1]);
                let (fa, fb) = (eval(a), eval(b));
                if fa.abs() <= near_zero || fb.abs() <= near_zero {
                    continue;
                }
                if fa.signum() != fb.signum() {
                    roots.push(bisect(&eval, a, b));
                }
            }
            roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
            roots
        }
    }
}

fn normalize(coeffs: &[f64]) -> Vec<f64> {
    let lead = coeffs[0];
    coeffs.iter().map(|&c| c / lead).collect()
}

fn multiplicity_in(derivative: &[f64], r: f64) -> usize {
    // Count how many times r appears as a root of the derivative by
    // repeatedly differentiating until the value moves away from zero.
    let mut poly = normalize(derivative);
    let scale = poly.iter().fold(1.0_f64, |m, &c| m.max(c.abs()));
    let mut count = 0;
    loop {
        let value = poly.iter().fold(0.0, |acc, &c| acc * r + c);
        if value.abs() > 1e-9 * scale || poly.len() == 1 {
            return count.max(1);
        }
        count += 1;
        let degree = poly.len() - 1;
        if degree == 0 {
            return count;
        }
        poly = poly[..degree]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * (degree - i) as f64)
            .collect();
    }
}

fn bisect(eval: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = eval(a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        let fm = eval(mid);
        if fm == 0.0 {
            return mid;
        }
        if fa.signum() == fm.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
