//! The exchange spin chain: 2S two-valued spins on a ring, updated by one
//! round of even-pair swaps followed by one round of odd-pair swaps.
//!
//! Site labels are 1-based in file formats and discussion (site 2S+1 wraps
//! to site 1) and 0-based internally. A spin on an odd site hops two sites
//! left per update, a spin on an even site two sites right, so contents on
//! the odd/even sublattices act as left-/right-movers. The whole update has
//! period S.

use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition};
use crate::trace::SpacetimeTrace;

/// Upper limit on `2S` for a packed state (bits of a `u128`).
pub const MAX_SITES: usize = 128;

/// One ring configuration of 2S spins, each ±1, packed one bit per site
/// (bit k set ⇔ spin at 0-based site k is +1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainState {
    half_sites: usize,
    bits: u128,
}

impl ChainState {
    pub fn from_spins(spins: &[i64]) -> Result<Self> {
        let sites = spins.len();
        if sites == 0 || !sites.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "a chain has a positive even number of sites, got {sites}"
            )));
        }
        if sites > MAX_SITES {
            return Err(Error::EnumerationBound {
                required: sites as u128,
                bound: MAX_SITES as u128,
            });
        }
        let mut bits = 0u128;
        for (k, &s) in spins.iter().enumerate() {
            match s {
                1 => bits |= 1 << k,
                -1 => {}
                other => return Err(Error::ValueOutOfRange { value: other, m: 1 }),
            }
        }
        Ok(Self {
            half_sites: sites / 2,
            bits,
        })
    }

    /// All spins equal to `spin` (+1 or -1).
    pub fn uniform(half_sites: usize, spin: i64) -> Result<Self> {
        if half_sites == 0 {
            return Err(Error::InvalidParameter("need S >= 1".into()));
        }
        Self::from_spins(&vec![spin; 2 * half_sites])
    }

    /// Uniform +1 background with a single -1 at the given 1-based site.
    pub fn with_defect(half_sites: usize, site_1based: usize) -> Result<Self> {
        let sites = 2 * half_sites;
        if site_1based == 0 || site_1based > sites {
            return Err(Error::IndexOutOfRange {
                index: site_1based,
                size: sites,
            });
        }
        let mut spins = vec![1i64; sites];
        spins[site_1based - 1] = -1;
        Self::from_spins(&spins)
    }

    pub fn half_sites(&self) -> usize {
        self.half_sites
    }

    pub fn sites(&self) -> usize {
        2 * self.half_sites
    }

    /// Spin at a 0-based site.
    pub fn spin(&self, site: usize) -> i64 {
        debug_assert!(site < self.sites());
        if self.bits >> site & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn spins(&self) -> Vec<i64> {
        (0..self.sites()).map(|k| self.spin(k)).collect()
    }

    /// Relocates site contents along a permutation of the sites.
    pub fn permute(&self, p: &Permutation) -> Result<Self> {
        if p.size() != self.sites() {
            return Err(Error::SizeMismatch {
                left: p.size(),
                right: self.sites(),
            });
        }
        let mut bits = 0u128;
        for k in 0..self.sites() {
            if self.bits >> k & 1 == 1 {
                bits |= 1 << p.image(k);
            }
        }
        Ok(Self {
            half_sites: self.half_sites,
            bits,
        })
    }

    pub(crate) fn bits(&self) -> u128 {
        self.bits
    }

    pub(crate) fn from_bits(half_sites: usize, bits: u128) -> Self {
        Self { half_sites, bits }
    }
}

/// Transpositions of one update round, in application order: all even pairs
/// (2,3), (4,5), ..., (2S,1), then all odd pairs (1,2), (3,4), ..., (2S-1,2S)
/// — 1-based labels, with the periodic wrap pair included.
pub fn update_transpositions(half_sites: usize) -> Vec<Transposition> {
    let s = half_sites;
    let sites = 2 * s;
    let mut seq = Vec::with_capacity(sites);
    // even pairs: 0-based (2k+1, 2k+2 mod 2S)
    for k in 0..s {
        seq.push(Transposition {
            i: 2 * k + 1,
            j: (2 * k + 2) % sites,
        });
    }
    // odd pairs: 0-based (2k, 2k+1)
    for k in 0..s {
        seq.push(Transposition {
            i: 2 * k,
            j: 2 * k + 1,
        });
    }
    seq
}

/// The one-update site permutation: even-pair swaps first, then odd-pair
/// swaps. Its S-th power is the identity.
pub fn update_permutation(half_sites: usize) -> Permutation {
    assert!(half_sites >= 1, "need S >= 1");
    Permutation::from_transpositions(2 * half_sites, &update_transpositions(half_sites))
        .expect("update sequence is always in range")
}

/// Applies the update `steps` times, recording every configuration.
pub fn evolve(state: &ChainState, steps: usize) -> SpacetimeTrace {
    let s = state.half_sites();
    let update = update_permutation(s);
    let mut trace = SpacetimeTrace::new(s, None, 1.0, &format!("chain update S={s}"));
    let mut current = *state;
    trace.push(current.spins()).expect("row shape matches");
    for _ in 0..steps {
        current = current.permute(&update).expect("sizes match");
        trace.push(current.spins()).expect("row shape matches");
    }
    trace
}

/// Follows one configuration's orbit under the update until it returns.
/// The orbit length always divides S.
pub fn orbit(state: &ChainState) -> Vec<ChainState> {
    let update = update_permutation(state.half_sites());
    let mut states = vec![*state];
    let mut current = state.permute(&update).expect("sizes match");
    while current != *state {
        states.push(current);
        current = current.permute(&update).expect("sizes match");
    }
    states
}

/// Splits a configuration into (left-movers, right-movers): entry j-1 of the
/// left (right) list is the spin at 1-based site 2j-1 (2j).
pub fn movers(state: &ChainState) -> (Vec<i64>, Vec<i64>) {
    let mut left = Vec::with_capacity(state.half_sites());
    let mut right = Vec::with_capacity(state.half_sites());
    for j in 0..state.half_sites() {
        left.push(state.spin(2 * j));
        right.push(state.spin(2 * j + 1));
    }
    (left, right)
}

/// Inverse of [`movers`]: interleaves the two sublattices back into a ring.
pub fn interleave(left: &[i64], right: &[i64]) -> Result<ChainState> {
    if left.len() != right.len() {
        return Err(Error::SizeMismatch {
            left: left.len(),
            right: right.len(),
        });
    }
    let mut spins = Vec::with_capacity(2 * left.len());
    for (l, r) in left.iter().zip(right) {
        spins.push(*l);
        spins.push(*r);
    }
    ChainState::from_spins(&spins)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s1_update_is_identity() {
        assert!(update_permutation(1).is_identity());
    }

    #[test]
    fn s2_update_rotates_by_two() {
        let p = update_permutation(2);
        assert_eq!(p.apply(&['a', 'b', 'c', 'd']), vec!['c', 'd', 'a', 'b']);
    }

    #[test]
    fn update_has_period_s() {
        for s in 1..=16 {
            let p = update_permutation(s);
            assert!(p.power(s as i64).is_identity(), "S = {s}");
            if s > 1 {
                assert!(!p.power(s as i64 - 1).is_identity(), "S = {s}");
            }
        }
    }

    #[test]
    fn uniform_state_is_invariant() {
        let all_up = ChainState::uniform(4, 1).unwrap();
        let trace = evolve(&all_up, 5);
        for row in trace.slices() {
            assert_eq!(row, &vec![1i64; 8]);
        }
    }

    #[test]
    fn odd_site_defect_moves_left_two_per_step() {
        // S=4, defect at site 3 (odd): expected site sequence 3,1,7,5,3
        let state = ChainState::with_defect(4, 3).unwrap();
        let trace = evolve(&state, 4);
        let expected_sites = [3usize, 1, 7, 5, 3];
        for (row, want) in trace.slices().iter().zip(expected_sites) {
            let down: Vec<usize> = row
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == -1)
                .map(|(k, _)| k + 1)
                .collect();
            assert_eq!(down, vec![want]);
        }
    }

    #[test]
    fn even_site_defect_moves_right_two_per_step() {
        let state = ChainState::with_defect(4, 2).unwrap();
        let trace = evolve(&state, 4);
        let expected_sites = [2usize, 4, 6, 8, 2];
        for (row, want) in trace.slices().iter().zip(expected_sites) {
            let down: Vec<usize> = row
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == -1)
                .map(|(k, _)| k + 1)
                .collect();
            assert_eq!(down, vec![want]);
        }
    }

    #[test]
    fn movers_definition_and_round_trip() {
        let state = ChainState::from_spins(&[1, -1, 1, -1]).unwrap();
        let (left, right) = movers(&state);
        assert_eq!(left, vec![1, 1]);
        assert_eq!(right, vec![-1, -1]);
        assert_eq!(interleave(&left, &right).unwrap(), state);

        let mixed = ChainState::from_spins(&[1, 1, -1, 1, -1, -1]).unwrap();
        let (l, r) = movers(&mixed);
        assert_eq!(interleave(&l, &r).unwrap(), mixed);
    }

    #[test]
    fn update_equals_brute_force_swap_sequence() {
        for s in 1..=6 {
            let seq = update_transpositions(s);
            let mut contents: Vec<i64> = (0..2 * s as i64).collect();
            for t in &seq {
                contents.swap(t.i, t.j);
            }
            let via_perm = update_permutation(s).apply(&(0..2 * s as i64).collect::<Vec<_>>());
            assert_eq!(contents, via_perm, "S = {s}");
        }
    }

    #[test]
    fn intra_group_transpositions_commute() {
        // the even group and the odd group each consist of disjoint swaps
        let s = 5;
        let seq = update_transpositions(s);
        let (even, odd) = seq.split_at(s);
        for group in [even, odd] {
            for a in group {
                for b in group {
                    let ab = Permutation::from_transpositions(2 * s, &[*a, *b]).unwrap();
                    let ba = Permutation::from_transpositions(2 * s, &[*b, *a]).unwrap();
                    assert_eq!(ab, ba);
                }
            }
        }
    }

    #[test]
    fn orbit_lengths_divide_s() {
        for s in [3usize, 4, 6] {
            for seed in 0..20u128 {
                let bits = seed.wrapping_mul(0x9e3779b97f4a7c15) & ((1 << (2 * s)) - 1);
                let state = ChainState::from_bits(s, bits);
                let len = orbit(&state).len();
                assert_eq!(s % len, 0, "S = {s}, orbit length {len}");
            }
        }
    }

    #[test]
    fn mover_multisets_conserved() {
        let state = ChainState::from_spins(&[1, -1, -1, 1, 1, 1, -1, -1]).unwrap();
        let (mut l0, mut r0) = movers(&state);
        l0.sort_unstable();
        r0.sort_unstable();
        let trace = evolve(&state, 7);
        for row in trace.slices() {
            let s = ChainState::from_spins(row).unwrap();
            let (mut l, mut r) = movers(&s);
            l.sort_unstable();
            r.sort_unstable();
            assert_eq!(l, l0);
            assert_eq!(r, r0);
        }
    }

    #[test]
    fn state_validation() {
        assert!(ChainState::from_spins(&[]).is_err());
        assert!(ChainState::from_spins(&[1, -1, 1]).is_err());
        assert!(ChainState::from_spins(&[1, 2]).is_err());
        assert!(ChainState::with_defect(2, 0).is_err());
        assert!(ChainState::with_defect(2, 5).is_err());
    }
}
