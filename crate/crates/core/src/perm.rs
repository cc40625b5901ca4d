//! Exact permutation algebra on finite index sets.
//!
//! A [`Permutation`] is stored in one-line form: `map[i]` is the image of
//! index `i`. Applying a permutation to a slice sends the content of slot
//! `i` to slot `map[i]`. All values are immutable; every operation returns
//! a new permutation.
//!
//! Sequences of [`Transposition`]s are composed in *application order*
//! (first element of the sequence acts first). Callers holding a product
//! of swap operators written in operator order, where the rightmost factor
//! acts first, must reverse it before calling [`Permutation::from_transpositions`].

use crate::error::{Error, Result};

/// A swap of the contents of two distinct slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transposition {
    pub i: usize,
    pub j: usize,
}

impl Transposition {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::DegenerateTransposition(i));
        }
        Ok(Self { i, j })
    }
}

/// A bijection of `0..size` in one-line form.
///
/// ```
/// use permuton::perm::Permutation;
///
/// // send content of slot 0 to slot 2, 1 to 0, 2 to 1
/// let p = Permutation::from_map(vec![2, 0, 1]).unwrap();
/// assert_eq!(p.apply(&['a', 'b', 'c']), vec!['b', 'c', 'a']);
/// assert!(p.compose(&p.inverse()).unwrap().is_identity());
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation {
            map: (0..size).collect(),
        }
    }

    /// Builds a permutation from its one-line form, checking bijectivity.
    pub fn from_map(map: Vec<usize>) -> Result<Self> {
        let size = map.len();
        let mut seen = vec![false; size];
        for &v in &map {
            if v >= size {
                return Err(Error::IndexOutOfRange { index: v, size });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotABijection { size, map });
            }
        }
        Ok(Permutation { map })
    }

    /// Composes a sequence of transpositions, applied left to right.
    ///
    /// `from_transpositions(n, [t1, t2])` swaps per `t1` first, then per `t2`.
    pub fn from_transpositions(size: usize, seq: &[Transposition]) -> Result<Self> {
        let mut map: Vec<usize> = (0..size).collect();
        // pos[v] = slot currently mapped onto v
        let mut pos: Vec<usize> = (0..size).collect();
        for t in seq {
            for idx in [t.i, t.j] {
                if idx >= size {
                    return Err(Error::IndexOutOfRange { index: idx, size });
                }
            }
            if t.i == t.j {
                return Err(Error::DegenerateTransposition(t.i));
            }
            let (a, b) = (pos[t.i], pos[t.j]);
            map.swap(a, b);
            pos.swap(t.i, t.j);
        }
        Ok(Permutation { map })
    }

    pub fn size(&self) -> usize {
        self.map.len()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Image of a single index.
    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    /// `compose(p, q)` applies `q` first, then `p`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let map = other.map.iter().map(|&v| self.map[v]).collect();
        Ok(Permutation { map })
    }

    /// `n`-fold composition with itself; negative `n` means inverse powers.
    pub fn power(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut exp = n.unsigned_abs();
        let mut result = Permutation::identity(self.size());
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                result = sq.compose(&result).expect("equal sizes");
            }
            sq = sq.compose(&sq).expect("equal sizes");
            exp >>= 1;
        }
        result
    }

    /// Applies the permutation to a slice: `out[map[i]] = slice[i]`.
    pub fn apply<T: Clone>(&self, slice: &[T]) -> Vec<T> {
        assert_eq!(slice.len(), self.size(), "slice length must match size");
        let mut out = slice.to_vec();
        for (i, &dest) in self.map.iter().enumerate() {
            out[dest] = slice[i].clone();
        }
        out
    }

    /// Decomposes into disjoint cycles; fixed points become singletons.
    pub fn cycle_decompose(&self) -> CycleDecomposition {
        let n = self.map.len();
        let mut visited = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                cycle.push(i);
                i = self.map[i];
            }
            cycles.push(cycle);
        }
        CycleDecomposition { size: n, cycles }
    }

    /// Multiplicative order: least `n > 0` with `p^n = identity`.
    pub fn order(&self) -> u128 {
        self.cycle_decompose().order()
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let decomp = self.cycle_decompose();
        let mut wrote = false;
        for cycle in decomp.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            write!(f, "(")?;
            for (k, v) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Disjoint-cycle form of a permutation.
///
/// Cycles are listed with their minimum element first and sorted by that
/// element, so the decomposition is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    size: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.len()).collect()
    }

    /// Reassembles the permutation the decomposition was taken from.
    pub fn reconstruct(&self) -> Permutation {
        let mut map: Vec<usize> = (0..self.size).collect();
        for cycle in &self.cycles {
            for (k, &v) in cycle.iter().enumerate() {
                map[v] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation { map }
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycles
            .iter()
            .fold(1u128, |acc, c| lcm(acc, c.len() as u128))
    }

    /// One transposition sequence realizing the permutation when applied
    /// left to right (see [`Permutation::from_transpositions`]).
    pub fn transpositions(&self) -> Vec<Transposition> {
        let mut out = Vec::new();
        for cycle in &self.cycles {
            for k in (0..cycle.len().saturating_sub(1)).rev() {
                out.push(Transposition {
                    i: cycle[k],
                    j: cycle[k + 1],
                });
            }
        }
        out
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: usize, j: usize) -> Transposition {
        Transposition::new(i, j).unwrap()
    }

    #[test]
    fn single_swap() {
        let p = Permutation::from_transpositions(2, &[t(0, 1)]).unwrap();
        assert_eq!(p.map(), &[1, 0]);
    }

    #[test]
    fn three_cycle_from_ordered_swaps() {
        // Swap operators written rightmost-first as (0,2)(1,2) act in
        // application order (1,2) then (0,2); contents rotate one slot left.
        let p = Permutation::from_transpositions(3, &[t(1, 2), t(0, 2)]).unwrap();
        assert_eq!(p.apply(&[1, 2, 3]), vec![2, 3, 1]);
        assert_eq!(p.map(), &[2, 0, 1]);
    }

    #[test]
    fn chain_update_sequence_by_hand() {
        // even pairs then odd pairs of a 4-site exchange ring
        let seq = [t(1, 2), t(3, 0), t(0, 1), t(2, 3)];
        let p = Permutation::from_transpositions(4, &seq).unwrap();
        assert_eq!(p.apply(&['a', 'b', 'c', 'd']), vec!['c', 'd', 'a', 'b']);
    }

    #[test]
    fn out_of_range_rejected() {
        let err = Permutation::from_transpositions(3, &[t(0, 3)]).unwrap_err();
        match err {
            Error::IndexOutOfRange { index, size } => {
                assert_eq!((index, size), (3, 3));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn compose_identity_and_involution() {
        let p = Permutation::from_transpositions(4, &[t(0, 2), t(1, 3), t(0, 1)]).unwrap();
        let id = Permutation::identity(4);
        assert_eq!(p.compose(&id).unwrap(), p);
        let swap = Permutation::from_transpositions(4, &[t(0, 1)]).unwrap();
        assert!(swap.compose(&swap).unwrap().is_identity());
    }

    #[test]
    fn compose_size_mismatch() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert!(matches!(
            p.compose(&q),
            Err(Error::SizeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn three_cycle_squared_is_inverse() {
        let c = Permutation::from_map(vec![1, 2, 0]).unwrap();
        assert_eq!(c.compose(&c).unwrap(), c.inverse());
    }

    #[test]
    fn powers() {
        let p = Permutation::from_map(vec![1, 2, 3, 0]).unwrap();
        assert_eq!(p.power(1), p);
        assert!(p.power(0).is_identity());
        assert_eq!(p.power(-1), p.inverse());
        assert!(p.power(4).is_identity());
        assert_eq!(p.power(-3), p);
    }

    #[test]
    fn cycle_decomposition_shapes() {
        let id = Permutation::identity(4);
        assert_eq!(id.cycle_decompose().cycle_lengths(), vec![1, 1, 1, 1]);

        let c = Permutation::from_map(vec![1, 2, 0]).unwrap();
        let d = c.cycle_decompose();
        assert_eq!(d.cycles(), &[vec![0, 1, 2]]);
        assert_eq!(d.order(), 3);
    }

    #[test]
    fn transposition_sequence_reproduces_permutation() {
        let p = Permutation::from_map(vec![3, 0, 4, 1, 2, 5]).unwrap();
        let seq = p.cycle_decompose().transpositions();
        let q = Permutation::from_transpositions(6, &seq).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn exhaustive_cycle_round_trip_size_5() {
        // all 120 permutations of 0..5
        let mut stack = vec![(Vec::new(), [false; 5])];
        while let Some((prefix, used)) = stack.pop() {
            if prefix.len() == 5 {
                let p = Permutation::from_map(prefix.clone()).unwrap();
                assert_eq!(p.cycle_decompose().reconstruct(), p);
                assert!(p.power(p.order() as i64).is_identity());
                continue;
            }
            for v in 0..5 {
                if !used[v] {
                    let mut pre = prefix.clone();
                    pre.push(v);
                    let mut u = used;
                    u[v] = true;
                    stack.push((pre, u));
                }
            }
        }
    }

    #[test]
    fn display_cycles() {
        let p = Permutation::from_map(vec![1, 0, 2]).unwrap();
        assert_eq!(p.to_string(), "(0 1)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }
}
