//! Signal-velocity engineering on the exchange chain: sublattice
//! translations and their generators, slowed-down evolutions (reversed
//! updates or instantaneous compensating translations), defect-velocity
//! measurement, and the exact discrete transport checks behind the massless
//! continuum limit.

use num_complex::Complex64;

use crate::chain::{update_permutation, ChainState};
use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::hilbert::{
    assemble_dense, extract_hamiltonian, generator_blocks, induced_basis_permutation, OrbitBlock,
    MAX_DENSE_SITES,
};
use crate::perm::{Permutation, Transposition};
use crate::trace::SpacetimeTrace;

/// Which way a sublattice translation moves contents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// Translates the contents of the even-numbered sites (right-movers) two
/// chain sites to the left; odd sites are untouched. Built from the ordered
/// swap sequence (2,4), (4,6), ..., applied first pair first; its S-th power
/// is the identity.
pub fn translation_left(half_sites: usize) -> Result<Permutation> {
    translation(half_sites, Direction::Left)
}

/// Translates the contents of the odd-numbered sites (left-movers) two chain
/// sites to the right; even sites are untouched.
pub fn translation_right(half_sites: usize) -> Result<Permutation> {
    translation(half_sites, Direction::Right)
}

pub fn translation(half_sites: usize, direction: Direction) -> Result<Permutation> {
    let s = half_sites;
    if s < 2 {
        return Err(Error::InvalidParameter("translations need S >= 2".into()));
    }
    // S-1 adjacent swaps along one sublattice make one cyclic shift; the
    // periodic wrap is the closure of the sequence, not an extra factor.
    let seq: Vec<Transposition> = match direction {
        Direction::Left => (1..s)
            .map(|j| Transposition {
                i: 2 * j - 1,
                j: 2 * j + 1,
            })
            .collect(),
        Direction::Right => (1..s)
            .rev()
            .map(|j| Transposition {
                i: 2 * (j - 1),
                j: 2 * j,
            })
            .collect(),
    };
    Permutation::from_transpositions(2 * s, &seq)
}

/// Orbit blocks of the Hermitian generator of a sublattice translation:
/// `exp(-i·Θ·d)` equals the lifted translation, with zero on its fixed
/// basis states. Units of inverse length.
pub fn theta_blocks(half_sites: usize, d: f64, direction: Direction) -> Result<Vec<OrbitBlock>> {
    let p = induced_basis_permutation(&translation(half_sites, direction)?)?;
    Ok(generator_blocks(&p, d))
}

/// Dense form of [`theta_blocks`].
pub fn theta_dense(half_sites: usize, d: f64, direction: Direction) -> Result<CMatrix> {
    crate::hilbert::check_sites(2 * half_sites, MAX_DENSE_SITES)?;
    let blocks = theta_blocks(half_sites, d, direction)?;
    Ok(assemble_dense(&blocks, 1 << (2 * half_sites)))
}

/// The two ways of slowing the chain down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlowdownCase {
    /// Interleave `backward` reversed updates with every `forward` updates.
    Reversal,
    /// Follow `forward` updates with `backward` instantaneous two-site
    /// translations pushing both mover families back.
    Translation,
}

/// A slowdown schedule: `forward` updates and `backward` compensating steps
/// per cycle, with time step `dt` and translation distance `dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlowdownSpec {
    pub forward: usize,
    pub backward: usize,
    pub case: SlowdownCase,
    pub dt: f64,
    pub dx: f64,
}

impl SlowdownSpec {
    pub fn new(forward: usize, backward: usize, case: SlowdownCase) -> Result<Self> {
        Self::with_scales(forward, backward, case, 1.0, 1.0)
    }

    pub fn with_scales(
        forward: usize,
        backward: usize,
        case: SlowdownCase,
        dt: f64,
        dx: f64,
    ) -> Result<Self> {
        if forward == 0 {
            return Err(Error::InvalidParameter(
                "forward step count must be positive".into(),
            ));
        }
        if case == SlowdownCase::Translation && backward > forward {
            return Err(Error::InvalidParameter(format!(
                "translation slowdown requires backward <= forward, got {backward} > {forward}"
            )));
        }
        if dt <= 0.0 || dx <= 0.0 || !dt.is_finite() || !dx.is_finite() {
            return Err(Error::InvalidParameter("dt and dx must be positive".into()));
        }
        Ok(Self {
            forward,
            backward,
            case,
            dt,
            dx,
        })
    }

    /// Recorded steps per cycle.
    pub fn cycle_steps(&self) -> usize {
        self.forward + self.backward
    }

    /// Rescaled cycle duration `(forward + backward) · dt`.
    pub fn t_eff(&self) -> f64 {
        self.cycle_steps() as f64 * self.dt
    }

    /// Net sublattice displacement per cycle.
    pub fn displacement_per_cycle(&self) -> i64 {
        self.forward as i64 - self.backward as i64
    }

    /// Signal velocity in units where `dt = dx`:
    /// `(forward - backward) / (forward + backward)`.
    pub fn velocity(&self) -> f64 {
        self.displacement_per_cycle() as f64 / self.cycle_steps() as f64
    }
}

/// The net site permutation of one slowdown cycle.
pub fn cycle_site_permutation(spec: &SlowdownSpec, half_sites: usize) -> Result<Permutation> {
    let update = update_permutation(half_sites);
    match spec.case {
        SlowdownCase::Reversal => Ok(update.power(spec.forward as i64 - spec.backward as i64)),
        SlowdownCase::Translation => {
            let both = translation_left(half_sites)?.compose(&translation_right(half_sites)?)?;
            both.power(spec.backward as i64)
                .compose(&update.power(spec.forward as i64))
        }
    }
}

/// The generator of one slowdown cycle, over the lifted basis space.
///
/// Reversal: the chain Hamiltonian rescaled by
/// `(forward - backward)/(forward + backward)` (units inverse time); one
/// cycle spans [`SlowdownSpec::t_eff`]. Translation: the dimensionless
/// combination `forward·H·dt + backward·(Θ_L + Θ_R)·dx`; one cycle spans a
/// unit of the dimensionless scale. In both cases
/// `exp(-i · generator · effective_step)` equals the lifted cycle
/// permutation.
pub struct EffectiveGenerator {
    pub matrix: CMatrix,
    pub effective_step: f64,
}

pub fn effective_hamiltonian(spec: &SlowdownSpec, half_sites: usize) -> Result<EffectiveGenerator> {
    match spec.case {
        SlowdownCase::Reversal => {
            let h = extract_hamiltonian(half_sites, spec.dt)?;
            let factor = spec.displacement_per_cycle() as f64 / spec.cycle_steps() as f64;
            Ok(EffectiveGenerator {
                matrix: h * Complex64::new(factor, 0.0),
                effective_step: spec.t_eff(),
            })
        }
        SlowdownCase::Translation => {
            let h = extract_hamiltonian(half_sites, spec.dt)?;
            let theta_l = theta_dense(half_sites, spec.dx, Direction::Left)?;
            let theta_r = theta_dense(half_sites, spec.dx, Direction::Right)?;
            let k = spec.forward as f64;
            let l = spec.backward as f64;
            let matrix = h * Complex64::new(k * spec.dt, 0.0)
                + (theta_l + theta_r) * Complex64::new(l * spec.dx, 0.0);
            Ok(EffectiveGenerator {
                matrix,
                effective_step: 1.0,
            })
        }
    }
}

/// Runs whole slowdown cycles, recording one slice per applied operation
/// (reversed updates and instantaneous translations included), so a cycle
/// always spans `forward + backward` recorded steps.
pub fn evolve_slowdown(
    state: &ChainState,
    spec: &SlowdownSpec,
    cycles: usize,
) -> Result<SpacetimeTrace> {
    let pattern: Vec<bool> = std::iter::repeat_n(true, spec.forward)
        .chain(std::iter::repeat_n(false, spec.backward))
        .collect();
    evolve_slowdown_pattern(state, spec, cycles, &pattern)
}

/// Like [`evolve_slowdown`], with an explicit per-cycle schedule: `true`
/// entries are forward updates, `false` entries reversed updates
/// (or instantaneous translations for [`SlowdownCase::Translation`]).
pub fn evolve_slowdown_pattern(
    state: &ChainState,
    spec: &SlowdownSpec,
    cycles: usize,
    pattern: &[bool],
) -> Result<SpacetimeTrace> {
    let s = state.half_sites();
    if pattern.len() != spec.cycle_steps() || pattern.iter().filter(|&&f| f).count() != spec.forward
    {
        return Err(Error::InvalidParameter(format!(
            "pattern must schedule {} forward and {} backward steps",
            spec.forward, spec.backward
        )));
    }
    let update = update_permutation(s);
    let backstep = match spec.case {
        SlowdownCase::Reversal => update.inverse(),
        SlowdownCase::Translation => translation_left(s)?.compose(&translation_right(s)?)?,
    };
    let case_name = match spec.case {
        SlowdownCase::Reversal => "reversal",
        SlowdownCase::Translation => "translation",
    };
    let meta = format!(
        "slowdown {case_name} k0={} l0={} S={s}",
        spec.forward, spec.backward
    );
    let mut trace = SpacetimeTrace::new(s, None, spec.dt, &meta);
    let mut current = *state;
    trace.push(current.spins()).expect("row shape matches");
    for _ in 0..cycles {
        for &fwd in pattern {
            let op = if fwd { &update } else { &backstep };
            current = current.permute(op)?;
            trace.push(current.spins()).expect("row shape matches");
        }
    }
    Ok(trace)
}

/// Velocity of a single defect measured at cycle boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefectVelocity {
    /// Signed sublattice displacement per cycle (right positive).
    pub displacement_per_cycle: i64,
    pub steps_per_cycle: usize,
}

impl DefectVelocity {
    pub fn velocity(&self) -> f64 {
        self.displacement_per_cycle as f64 / self.steps_per_cycle as f64
    }
}

fn defect_sublattice_position(row: &[i64]) -> Result<(usize, usize)> {
    // returns (site, sublattice index); requires exactly one deviating site
    let mut counts = std::collections::BTreeMap::new();
    for &v in row {
        *counts.entry(v).or_insert(0usize) += 1;
    }
    if counts.len() != 2 {
        return Err(Error::InvalidParameter(
            "defect tracking needs a uniform background with one deviating site".into(),
        ));
    }
    let (&minority, _) = counts
        .iter()
        .min_by_key(|(_, &c)| c)
        .expect("two values present");
    let sites: Vec<usize> = row
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == minority)
        .map(|(k, _)| k)
        .collect();
    if sites.len() != 1 {
        return Err(Error::InvalidParameter(
            "defect tracking needs exactly one deviating site".into(),
        ));
    }
    Ok((sites[0], sites[0] / 2))
}

/// Tracks a single defect across whole cycles and checks the displacement is
/// the same every cycle. `steps_per_cycle` recorded steps form one cycle.
pub fn measure_defect_velocity(
    trace: &SpacetimeTrace,
    steps_per_cycle: usize,
) -> Result<DefectVelocity> {
    let steps = trace.steps();
    if steps_per_cycle == 0 || !steps.is_multiple_of(steps_per_cycle) {
        return Err(Error::NotCycleAligned {
            cycle: steps_per_cycle,
            steps,
        });
    }
    let cycles = steps / steps_per_cycle;
    if cycles == 0 {
        return Err(Error::InvalidParameter("need at least one cycle".into()));
    }
    let s = trace.half_sites() as i64;
    let (site0, mut prev) = defect_sublattice_position(trace.slice(0))?;
    let parity = site0 % 2;
    let mut displacement = None;
    for c in 1..=cycles {
        let (site, pos) = defect_sublattice_position(trace.slice(c * steps_per_cycle))?;
        if site % 2 != parity {
            return Err(Error::InvalidParameter(
                "defect changed sublattice between cycles".into(),
            ));
        }
        // signed displacement on the ring, minimal in absolute value
        let raw = (pos as i64 - prev as i64).rem_euclid(s);
        let signed = if raw > s / 2 { raw - s } else { raw };
        match displacement {
            None => displacement = Some(signed),
            Some(d) if d != signed => {
                return Err(Error::InvalidParameter(format!(
                    "inconsistent displacement: {d} then {signed}"
                )))
            }
            _ => {}
        }
        prev = pos;
    }
    Ok(DefectVelocity {
        displacement_per_cycle: displacement.expect("at least one cycle"),
        steps_per_cycle,
    })
}

/// The sum/difference combination of the two mover families on one slice:
/// `S± = S_left ± S_right`, indexed by sublattice position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylFields {
    pub splus: Vec<i64>,
    pub sminus: Vec<i64>,
}

impl WeylFields {
    pub fn from_slice(row: &[i64]) -> Self {
        let s = row.len() / 2;
        let mut splus = Vec::with_capacity(s);
        let mut sminus = Vec::with_capacity(s);
        for j in 0..s {
            let left = row[2 * j];
            let right = row[2 * j + 1];
            splus.push(left + right);
            sminus.push(left - right);
        }
        Self { splus, sminus }
    }

    /// Exact inverse: recovers (left, right) from (S+, S-).
    pub fn reconstruct(&self) -> (Vec<i64>, Vec<i64>) {
        let left = self
            .splus
            .iter()
            .zip(&self.sminus)
            .map(|(p, m)| (p + m) / 2)
            .collect();
        let right = self
            .splus
            .iter()
            .zip(&self.sminus)
            .map(|(p, m)| (p - m) / 2)
            .collect();
        (left, right)
    }
}

/// Residuals of the discrete transport rules at cycle-aligned sampling, in
/// exact integer arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeylResidual {
    pub left: i64,
    pub right: i64,
}

impl WeylResidual {
    pub fn max(&self) -> i64 {
        self.left.max(self.right)
    }
}

/// Checks that, from one cycle boundary to the next, left-mover values
/// arrive from `displacement` sublattice sites to the right and right-mover
/// values from `displacement` sites to the left. Fields are formed through
/// their sum/difference combination and reconstructed exactly. Returns the
/// maximum absolute residual per family; exact permutation evolution gives
/// zero.
pub fn check_weyl_combination(trace: &SpacetimeTrace, spec: &SlowdownSpec) -> Result<WeylResidual> {
    let cycle = spec.cycle_steps();
    let steps = trace.steps();
    if !steps.is_multiple_of(cycle) {
        return Err(Error::NotCycleAligned { cycle, steps });
    }
    let s = trace.half_sites();
    let shift = spec.displacement_per_cycle();
    let mut residual = WeylResidual { left: 0, right: 0 };
    for c in 0..steps / cycle {
        let before = WeylFields::from_slice(trace.slice(c * cycle)).reconstruct();
        let after = WeylFields::from_slice(trace.slice((c + 1) * cycle)).reconstruct();
        for j in 0..s {
            let from_right = (j as i64 + shift).rem_euclid(s as i64) as usize;
            let from_left = (j as i64 - shift).rem_euclid(s as i64) as usize;
            residual.left = residual.left.max((after.0[j] - before.0[from_right]).abs());
            residual.right = residual.right.max((after.1[j] - before.1[from_left]).abs());
        }
    }
    Ok(residual)
}

/// One-step transfer eigenvalue of the rescaled transport at ring mode
/// `mode` (wavenumber `2π·mode/S`): pure advection, so the modulus is 1 and
/// the phase is `±κ`.
pub fn transport_transfer_eigenvalue(
    half_sites: usize,
    mode: usize,
    direction: Direction,
) -> Complex64 {
    let s = half_sites;
    let kappa = 2.0 * std::f64::consts::PI * mode as f64 / s as f64;
    let v: Vec<Complex64> = (0..s)
        .map(|j| Complex64::from_polar(1.0, kappa * j as f64))
        .collect();
    let shifted = |j: usize| match direction {
        Direction::Left => v[(j + 1) % s],
        Direction::Right => v[(j + s - 1) % s],
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, vj) in v.iter().enumerate() {
        acc += shifted(j) * vj.conj();
    }
    acc / s as f64
}
