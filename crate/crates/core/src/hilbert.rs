//! Lifts permutation dynamics into the complex vector space spanned by the
//! ontological basis states, and extracts the exact generating Hamiltonian
//! orbit by orbit.
//!
//! The update permutes basis states; on every length-L orbit it acts as an
//! L-state cogwheel, so the generator carries the L-state cogwheel
//! Hamiltonian block along that orbit and zero on fixed points. The dense
//! cotangent-series form of the same generator (built from powers of the
//! lifted update) agrees with the block construction away from the update's
//! invariant subspace, and is kept as an independent cross-check.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::chain::{update_permutation, ChainState};
use crate::cmatrix::{identity, max_abs, CMatrix, CVector};
use crate::cogwheel::CogwheelSpec;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest `2S` (number of sites / qubits) for full basis enumeration.
pub const MAX_ENUM_SITES: usize = 24;
/// Largest `2S` for dense operator assembly.
pub const MAX_DENSE_SITES: usize = 14;
/// Largest `2S` for the dense cotangent-series evaluation.
pub const MAX_SERIES_SITES: usize = 12;
/// Largest qubit count for explicit Pauli tensor products.
pub const MAX_PAULI_QUBITS: usize = 12;

pub(crate) fn check_sites(sites: usize, bound: usize) -> Result<()> {
    if sites > bound {
        let required = if sites >= 128 {
            u128::MAX
        } else {
            1u128 << sites
        };
        return Err(Error::EnumerationBound {
            required,
            bound: 1u128 << bound,
        });
    }
    Ok(())
}

/// Complex amplitudes over a finite basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: CVector,
}

impl StateVector {
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, size: dim });
        }
        let mut amps = CVector::zeros(dim);
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amps })
    }

    pub fn from_amps(amps: Vec<Complex64>) -> Self {
        Self {
            amps: CVector::from_vec(amps),
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        self.amps.as_slice()
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Applies a matrix to the state.
    pub fn transformed(&self, m: &CMatrix) -> Result<Self> {
        if m.ncols() != self.dim() {
            return Err(Error::SizeMismatch {
                left: m.ncols(),
                right: self.dim(),
            });
        }
        Ok(Self {
            amps: m * &self.amps,
        })
    }
}

/// How far a normalized state is from being a single basis state:
/// `1 - max |amp|²`. Zero exactly on basis states (up to phase).
pub fn superposition_measure(v: &StateVector) -> Result<f64> {
    let norm_sq = v.norm_sq();
    if (norm_sq - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized { norm_sq });
    }
    let max = v.amps.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
    Ok(1.0 - max)
}

/// Bijection between ring configurations and basis indices in `0..2^(2S)`
/// (bit k of the index is set iff the spin at 0-based site k is +1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisIndexer {
    half_sites: usize,
}

impl BasisIndexer {
    pub fn new(half_sites: usize) -> Result<Self> {
        if half_sites == 0 {
            return Err(Error::InvalidParameter("need S >= 1".into()));
        }
        check_sites(2 * half_sites, MAX_ENUM_SITES)?;
        Ok(Self { half_sites })
    }

    pub fn half_sites(&self) -> usize {
        self.half_sites
    }

    pub fn dim(&self) -> usize {
        1 << (2 * self.half_sites)
    }

    pub fn encode(&self, state: &ChainState) -> Result<usize> {
        if state.half_sites() != self.half_sites {
            return Err(Error::SizeMismatch {
                left: state.half_sites(),
                right: self.half_sites,
            });
        }
        Ok(state.bits() as usize)
    }

    pub fn decode(&self, index: usize) -> Result<ChainState> {
        if index >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index,
                size: self.dim(),
            });
        }
        Ok(ChainState::from_bits(self.half_sites, index as u128))
    }
}

/// Permutation matrix of `p`: column i carries a 1 in row `p(i)`.
/// Satisfies `lift(compose(p, q)) = lift(p) · lift(q)`.
pub fn lift(p: &Permutation) -> CMatrix {
    let n = p.size();
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        m[(p.image(i), i)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// The permutation a site relabeling induces on packed basis indices.
pub fn induced_basis_permutation(site_perm: &Permutation) -> Result<Permutation> {
    let sites = site_perm.size();
    check_sites(sites, MAX_ENUM_SITES)?;
    let dim = 1usize << sites;
    let mut map = vec![0usize; dim];
    for (idx, slot) in map.iter_mut().enumerate() {
        let mut out = 0usize;
        for k in 0..sites {
            if idx >> k & 1 == 1 {
                out |= 1 << site_perm.image(k);
            }
        }
        *slot = out;
    }
    Permutation::from_map(map)
}

/// The chain update as a permutation of all `2^(2S)` basis indices.
/// Its order divides S.
pub fn chain_update_on_basis(half_sites: usize) -> Result<Permutation> {
    if half_sites == 0 {
        return Err(Error::InvalidParameter("need S >= 1".into()));
    }
    induced_basis_permutation(&update_permutation(half_sites))
}

/// One update orbit together with its generator block.
#[derive(Debug, Clone)]
pub struct OrbitBlock {
    orbit: Vec<usize>,
    block: CMatrix,
}

impl OrbitBlock {
    /// Basis indices along the orbit, in hop order starting from the
    /// smallest member.
    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    /// The L×L Hermitian generator block (units: inverse `scale`).
    pub fn block(&self) -> &CMatrix {
        &self.block
    }
}

/// The L-state cogwheel Hamiltonian used as the generator block of every
/// length-L orbit.
pub fn cogwheel_block(len: usize, scale: f64) -> CMatrix {
    CogwheelSpec::new(len, scale)
        .expect("len >= 1 and scale > 0")
        .hamiltonian_standard_basis()
        .expect("zero phases")
}

/// Hermitian generator of a permutation, one cogwheel block per orbit:
/// `exp(-i · G · scale)` equals `lift(p)`, and fixed points carry zero.
pub fn generator_blocks(p: &Permutation, scale: f64) -> Vec<OrbitBlock> {
    p.cycle_decompose()
        .cycles()
        .iter()
        .map(|orbit| OrbitBlock {
            orbit: orbit.clone(),
            block: cogwheel_block(orbit.len(), scale),
        })
        .collect()
}

/// Scatters orbit blocks into a dense `dim × dim` operator.
pub fn assemble_dense(blocks: &[OrbitBlock], dim: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    for ob in blocks {
        for (r, &br) in ob.orbit.iter().enumerate() {
            for (c, &bc) in ob.orbit.iter().enumerate() {
                m[(br, bc)] = ob.block[(r, c)];
            }
        }
    }
    m
}

/// Orbit blocks of the chain generator for time step `t`.
pub fn chain_orbit_blocks(half_sites: usize, t: f64) -> Result<Vec<OrbitBlock>> {
    let update = chain_update_on_basis(half_sites)?;
    Ok(generator_blocks(&update, t))
}

/// The dense chain Hamiltonian: Hermitian, block-diagonal over update
/// orbits, `exp(-i·H·t) = lift(update)`, zero on invariant basis states.
pub fn extract_hamiltonian(half_sites: usize, t: f64) -> Result<CMatrix> {
    check_sites(2 * half_sites, MAX_DENSE_SITES)?;
    let blocks = chain_orbit_blocks(half_sites, t)?;
    Ok(assemble_dense(&blocks, 1 << (2 * half_sites)))
}

/// Plain-text orbit summary: one `len=<L> rep=<basis index>` line per orbit.
pub fn orbit_report(blocks: &[OrbitBlock]) -> String {
    let mut out = String::new();
    for ob in blocks {
        out.push_str(&format!("len={} rep={}\n", ob.len(), ob.orbit[0]));
    }
    out
}

/// Dense cotangent-series form of the generator of `p`, for a permutation
/// whose order divides `period`:
///
/// `(π/scale) · (1 + (i / 2·period) · Σ_{n=1}^{period-1} cot(πn/period) (U†ⁿ - Uⁿ))`
///
/// with `U = lift(p)`. The adjoint-minus-forward ordering matches the shift
/// orientation of `lift`.
pub fn cotangent_series_dense(p: &Permutation, period: usize, scale: f64) -> CMatrix {
    let dim = p.size();
    let mut m = identity(dim);
    for n in 1..period {
        let angle = PI * n as f64 / period as f64;
        let coef = Complex64::i() * (angle.cos() / angle.sin()) / (2.0 * period as f64);
        let pn = p.power(n as i64);
        for i in 0..dim {
            m[(i, pn.image(i))] += coef;
            m[(pn.image(i), i)] -= coef;
        }
    }
    m * Complex64::new(PI / scale, 0.0)
}

/// Orthogonal projector onto the complement of the invariant subspace of
/// `lift(p)` (spanned by each orbit's uniform superposition; for a fixed
/// point that is the basis state itself).
pub fn invariant_complement_projector(p: &Permutation) -> CMatrix {
    let dim = p.size();
    let mut proj = identity(dim);
    for orbit in p.cycle_decompose().cycles() {
        let w = Complex64::new(1.0 / orbit.len() as f64, 0.0);
        for &r in orbit {
            for &c in orbit {
                proj[(r, c)] -= w;
            }
        }
    }
    proj
}

/// Maximum deviation between the dense cotangent-series generator and the
/// orbit-block construction, on the complement of the update's invariant
/// subspace. The series uses the chain period S; orbits shorter than S make
/// no difference away from the invariant subspace.
pub fn cotangent_series_deviation(half_sites: usize, t: f64) -> Result<f64> {
    check_sites(2 * half_sites, MAX_SERIES_SITES)?;
    let update = chain_update_on_basis(half_sites)?;
    let dense = assemble_dense(&generator_blocks(&update, t), update.size());
    let series = cotangent_series_dense(&update, half_sites, t);
    let proj = invariant_complement_projector(&update);
    Ok(max_abs(&(&proj * (series - dense) * &proj)))
}

fn pauli_matrices() -> [CMatrix; 3] {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::i();
    [
        CMatrix::from_row_slice(2, 2, &[zero, one, one, zero]),
        CMatrix::from_row_slice(2, 2, &[zero, -i, i, zero]),
        CMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]),
    ]
}

/// Places a one-qubit operator on bit `q` of an `n`-qubit register.
fn op_on_qubit(op: &CMatrix, q: usize, n: usize) -> CMatrix {
    let left = identity(1 << (n - 1 - q));
    let right = identity(1 << q);
    left.kronecker(op).kronecker(&right)
}

/// The permutation of `2^n` basis indices that swaps bits `i` and `j`.
pub fn exchange_permutation(i: usize, j: usize, n_qubits: usize) -> Result<Permutation> {
    validate_pair(i, j, n_qubits)?;
    let dim = 1usize << n_qubits;
    let map = (0..dim)
        .map(|idx| {
            if (idx >> i & 1) != (idx >> j & 1) {
                idx ^ (1 << i) ^ (1 << j)
            } else {
                idx
            }
        })
        .collect();
    Permutation::from_map(map)
}

fn validate_pair(i: usize, j: usize, n_qubits: usize) -> Result<()> {
    check_sites(n_qubits, MAX_PAULI_QUBITS)?;
    if i == j {
        return Err(Error::DegenerateTransposition(i));
    }
    for idx in [i, j] {
        if idx >= n_qubits {
            return Err(Error::IndexOutOfRange {
                index: idx,
                size: n_qubits,
            });
        }
    }
    Ok(())
}

/// The two-site exchange operator written out of Pauli matrices,
/// `(σ_i · σ_j + 1) / 2`. Equal, entry for entry, to the lifted exchange
/// permutation; all entries land exactly on 0 or 1.
pub fn pauli_exchange(i: usize, j: usize, n_qubits: usize) -> Result<CMatrix> {
    validate_pair(i, j, n_qubits)?;
    let dim = 1usize << n_qubits;
    let mut acc = identity(dim);
    for sigma in pauli_matrices() {
        acc += op_on_qubit(&sigma, i, n_qubits) * op_on_qubit(&sigma, j, n_qubits);
    }
    Ok(acc * Complex64::new(0.5, 0.0))
}

/// `i·exp(-i (π/2)(1+ε) P̂)` for the exchange `P̂` of sites i, j — the
/// smallest deformation that turns an exchange into a superposition maker.
///
/// Because `P̂² = 1` this is exactly
/// `i·cos((π/2)(1+ε))·1 + sin((π/2)(1+ε))·P̂`,
/// which reduces to `P̂` at ε = 0 and to `P̂ - i(π/2)ε·1 + O(ε²)` for small ε.
pub fn perturbed_exchange(i: usize, j: usize, n_qubits: usize, epsilon: f64) -> Result<CMatrix> {
    let p = lift(&exchange_permutation(i, j, n_qubits)?);
    let half_eps = PI / 2.0 * epsilon;
    // cos((π/2)(1+ε)) = -sin((π/2)ε), sin((π/2)(1+ε)) = cos((π/2)ε):
    // exact at ε = 0, accurate for small ε.
    let cos_theta = -half_eps.sin();
    let sin_theta = half_eps.cos();
    let dim = 1usize << n_qubits;
    Ok(identity(dim) * (Complex64::i() * cos_theta) + p * Complex64::new(sin_theta, 0.0))
}
