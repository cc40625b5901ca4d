//! Dense complex matrices and the few linear-algebra helpers the engine needs.
//!
//! Backed by `nalgebra`; matrices here are small (dimensions up to a few
//! thousand), so dense storage and full eigendecompositions are fine.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Largest entry magnitude.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `max |(U†U - 1)|`; zero for unitary matrices.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.ncols();
    max_abs_diff(&(m.adjoint() * m), &identity(n))
}

/// `max |(M - M†)|`; zero for Hermitian matrices.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// `exp(-i * scale * H)` for Hermitian `H`, by spectral decomposition.
pub fn exp_neg_i_hermitian(h: &CMatrix, scale: f64) -> CMatrix {
    let eig = h.clone().symmetric_eigen();
    let phases = CVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues
            .iter()
            .map(|&l| Complex64::from_polar(1.0, -l * scale)),
    );
    &eig.eigenvectors * CMatrix::from_diagonal(&phases) * eig.eigenvectors.adjoint()
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    let mut evs: Vec<f64> = h
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    evs.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    evs
}

/// Unitary discrete Fourier transform with kernel `exp(-2πi jk/N) / sqrt(N)`.
pub fn dft(n: usize) -> CMatrix {
    let norm = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, n, |j, k| {
        Complex64::from_polar(
            norm,
            -2.0 * std::f64::consts::PI * (j as f64) * (k as f64) / n as f64,
        )
    })
}

/// Serializes row-major; each row is one line of `re,im` pairs joined by `;`.
pub fn to_csv(m: &CMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            if c > 0 {
                out.push(';');
            }
            let z = m[(r, c)];
            out.push_str(&format!("{},{}", z.re, z.im));
        }
        out.push('\n');
    }
    out
}

pub fn from_csv(text: &str) -> Result<CMatrix> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for cell in line.split(';') {
            let (re, im) = cell.split_once(',').ok_or_else(|| {
                Error::TraceFormat(format!("line {}: cell `{cell}` is not `re,im`", lineno + 1))
            })?;
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|e| {
                    Error::TraceFormat(format!("line {}: bad float `{s}`: {e}", lineno + 1))
                })
            };
            row.push(Complex64::new(parse(re)?, parse(im)?));
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::TraceFormat(format!(
                    "line {}: expected {} cells, found {}",
                    lineno + 1,
                    first.len(),
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::TraceFormat("empty matrix".into()));
    }
    let (nr, nc) = (rows.len(), rows[0].len());
    Ok(CMatrix::from_fn(nr, nc, |r, c| rows[r][c]))
}
