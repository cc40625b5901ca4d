//! The N-state cogwheel: a single cyclic unit evolving one notch per tick.
//!
//! Its step operator is the N-state cyclic shift (optionally with one phase
//! per hop); the generating Hamiltonian has the equally spaced spectrum
//! `2π(n-1)/(N·T)`, n = 1..N. The same Hamiltonian written in the shift
//! eigenbasis vs. the state basis is related by a discrete Fourier
//! transform, which is what [`CogwheelSpec::hamiltonian_standard_basis`]
//! returns in closed form.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};

/// Parameters of an N-state cogwheel with time step `t` (time units) and one
/// optional phase per hop.
#[derive(Debug, Clone, PartialEq)]
pub struct CogwheelSpec {
    n: usize,
    t: f64,
    phases: Vec<f64>,
}

impl CogwheelSpec {
    /// Cogwheel with all hop phases zero.
    pub fn new(n: usize, t: f64) -> Result<Self> {
        Self::with_phases(n, t, vec![0.0; n])
    }

    pub fn with_phases(n: usize, t: f64, phases: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("cogwheel needs n >= 1".into()));
        }
        if t <= 0.0 || !t.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "time step must be positive and finite, got {t}"
            )));
        }
        if phases.len() != n {
            return Err(Error::SizeMismatch {
                left: phases.len(),
                right: n,
            });
        }
        Ok(Self { n, t, phases })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    fn zero_phases(&self) -> bool {
        self.phases.iter().all(|&p| p == 0.0)
    }

    fn require_zero_phases(&self, what: &str) -> Result<()> {
        if self.zero_phases() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "{what} is defined for zero hop phases only"
            )))
        }
    }

    /// The one-step unitary: state k hops to state k+1 (mod N) picking up
    /// `exp(i phases[k])`. With zero phases this is the cyclic-shift
    /// permutation matrix.
    pub fn step_matrix(&self) -> CMatrix {
        let n = self.n;
        let mut m = CMatrix::zeros(n, n);
        for k in 0..n {
            m[((k + 1) % n, k)] = Complex64::from_polar(1.0, self.phases[k]);
        }
        m
    }

    /// Spectrum of the generating Hamiltonian, ascending: `2π(n-1)/(N·T)`.
    pub fn eigenvalues_h(&self) -> Result<Vec<f64>> {
        self.require_zero_phases("the Hamiltonian spectrum")?;
        Ok((0..self.n)
            .map(|k| 2.0 * PI * k as f64 / (self.n as f64 * self.t))
            .collect())
    }

    /// The Hamiltonian in the state basis, in closed form.
    ///
    /// Diagonal entries are `π(N-1)/(N·T)`; entry (r, c), r != c, is
    /// `π/(N·T) · (-1 + i·cot(π(c-r)/N))`. The index difference is oriented
    /// so that `exp(-i·H·T)` reproduces [`Self::step_matrix`]. Hermitian by
    /// construction.
    pub fn hamiltonian_standard_basis(&self) -> Result<CMatrix> {
        self.require_zero_phases("the standard-basis Hamiltonian")?;
        let n = self.n;
        let nf = n as f64;
        let scale = PI / (nf * self.t);
        Ok(CMatrix::from_fn(n, n, |r, c| {
            if r == c {
                Complex64::new(scale * (nf - 1.0), 0.0)
            } else {
                let angle = PI * (c as f64 - r as f64) / nf;
                Complex64::new(-scale, scale * (angle.cos() / angle.sin()))
            }
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::{
        dft, exp_neg_i_hermitian, hermitian_eigenvalues, hermiticity_defect, identity,
        max_abs_diff, unitarity_defect,
    };
    use nalgebra::DVector;

    #[test]
    fn single_state_is_trivial() {
        let spec = CogwheelSpec::new(1, 1.0).unwrap();
        assert_eq!(spec.step_matrix(), identity(1));
        assert_eq!(spec.eigenvalues_h().unwrap(), vec![0.0]);
        let h = spec.hamiltonian_standard_basis().unwrap();
        assert_eq!(h[(0, 0)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn two_state_step_is_swap() {
        let spec = CogwheelSpec::new(2, 1.0).unwrap();
        let u = spec.step_matrix();
        let want = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        );
        assert_eq!(u, want);
    }

    #[test]
    fn fourth_power_of_four_state_step() {
        let spec = CogwheelSpec::new(4, 1.0).unwrap();
        let u = spec.step_matrix();
        let u4 = &u * &u * &u * &u;
        assert!(max_abs_diff(&u4, &identity(4)) < 1e-15);
    }

    #[test]
    fn full_turn_accumulates_phase_sum() {
        let phases = vec![0.3, -0.1, 0.7];
        let spec = CogwheelSpec::with_phases(3, 1.0, phases.clone()).unwrap();
        let u = spec.step_matrix();
        let u3 = &u * &u * &u;
        let total: f64 = phases.iter().sum();
        let want = identity(3) * Complex64::from_polar(1.0, total);
        assert!(max_abs_diff(&u3, &want) < 1e-15);
    }

    #[test]
    fn eigenvalue_formula_examples() {
        let e4 = CogwheelSpec::new(4, 1.0).unwrap().eigenvalues_h().unwrap();
        let want4 = [0.0, PI / 2.0, PI, 3.0 * PI / 2.0];
        for (a, b) in e4.iter().zip(want4) {
            assert!((a - b).abs() < 1e-15);
        }
        let e3 = CogwheelSpec::new(3, 2.0).unwrap().eigenvalues_h().unwrap();
        let want3 = [0.0, PI / 3.0, 2.0 * PI / 3.0];
        for (a, b) in e3.iter().zip(want3) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn two_state_hamiltonian_entries() {
        let h = CogwheelSpec::new(2, 1.0)
            .unwrap()
            .hamiltonian_standard_basis()
            .unwrap();
        assert!((h[(0, 0)].re - PI / 2.0).abs() < 1e-15);
        assert!((h[(0, 1)].re + PI / 2.0).abs() < 1e-15);
        assert!(h[(0, 1)].im.abs() < 1e-15);
    }

    #[test]
    fn hamiltonian_is_exactly_hermitian() {
        for n in [2, 3, 5, 8] {
            let h = CogwheelSpec::new(n, 0.5)
                .unwrap()
                .hamiltonian_standard_basis()
                .unwrap();
            assert_eq!(hermiticity_defect(&h), 0.0, "n = {n}");
        }
    }

    #[test]
    fn exponential_reproduces_step_matrix() {
        for n in [1, 2, 3, 4, 7, 16] {
            let spec = CogwheelSpec::new(n, 1.0).unwrap();
            let h = spec.hamiltonian_standard_basis().unwrap();
            let u = exp_neg_i_hermitian(&h, spec.t());
            assert!(
                max_abs_diff(&u, &spec.step_matrix()) < 1e-10,
                "n = {n}: {}",
                max_abs_diff(&u, &spec.step_matrix())
            );
        }
    }

    #[test]
    fn numerical_spectrum_matches_formula() {
        let spec = CogwheelSpec::new(12, 0.75).unwrap();
        let h = spec.hamiltonian_standard_basis().unwrap();
        let got = hermitian_eigenvalues(&h);
        for (a, b) in got.iter().zip(spec.eigenvalues_h().unwrap()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn step_matrix_unitary_up_to_64() {
        for n in 1..=64 {
            let spec = CogwheelSpec::new(n, 1.0).unwrap();
            assert!(unitarity_defect(&spec.step_matrix()) < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn step_spectrum_is_roots_of_unity_on_fourier_vectors() {
        // the k-th column of the conjugate DFT is an eigenvector of the step
        // with eigenvalue exp(-i E_k T)
        for n in [3usize, 8, 17] {
            let spec = CogwheelSpec::new(n, 1.0).unwrap();
            let u = spec.step_matrix();
            let f = dft(n);
            let energies = spec.eigenvalues_h().unwrap();
            for k in 0..n {
                let v: DVector<Complex64> =
                    DVector::from_iterator(n, (0..n).map(|j| f[(j, k)].conj()));
                let uv = &u * &v;
                let lam = Complex64::from_polar(1.0, -energies[k] * spec.t());
                let dev = (uv - v * lam).iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(dev < 1e-10, "n = {n}, k = {k}: {dev}");
            }
        }
    }

    #[test]
    fn dft_conjugation_of_diagonal_hamiltonian() {
        for n in 1..=32 {
            let spec = CogwheelSpec::new(n, 1.0).unwrap();
            let f = dft(n);
            let diag = CMatrix::from_diagonal(&DVector::from_iterator(
                n,
                spec.eigenvalues_h()
                    .unwrap()
                    .into_iter()
                    .map(|e| Complex64::new(e, 0.0)),
            ));
            let conj = f.adjoint() * diag * &f;
            let h = spec.hamiltonian_standard_basis().unwrap();
            assert!(max_abs_diff(&conj, &h) < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn nonzero_phases_rejected_for_hamiltonian_ops() {
        let spec = CogwheelSpec::with_phases(3, 1.0, vec![0.1, 0.0, 0.0]).unwrap();
        assert!(spec.eigenvalues_h().is_err());
        assert!(spec.hamiltonian_standard_basis().is_err());
        // the step matrix itself is fine
        assert!(unitarity_defect(&spec.step_matrix()) < 1e-12);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(CogwheelSpec::new(0, 1.0).is_err());
        assert!(CogwheelSpec::new(3, 0.0).is_err());
        assert!(CogwheelSpec::new(3, -1.0).is_err());
        assert!(CogwheelSpec::with_phases(3, 1.0, vec![0.0; 2]).is_err());
    }
}
