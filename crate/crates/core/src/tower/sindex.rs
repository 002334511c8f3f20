use crate::exactmath::{binom_mod_p, lucas_nonzero, Rat};
use crate::Error;

/// Index `(n, i)` in the well-ordered set
/// `S = { (n, i) : 0 <= n <= i, p does not divide C(i, n) }`,
/// ordered lexicographically. The limit elements are the `(n, n)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct IndexPair {
    pub n: u32,
    pub i: u64,
}

impl IndexPair {
    pub fn new(n: u32, i: u64) -> IndexPair {
        IndexPair { n, i }
    }

    pub fn is_limit(&self) -> bool {
        self.i == self.n as u64
    }
}

impl core::fmt::Display for IndexPair {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({},{})", self.n, self.i)
    }
}

/// Membership test for `S`.
pub fn in_s(p: u32, idx: IndexPair) -> bool {
    idx.i >= idx.n as u64 && lucas_nonzero(idx.i, idx.n as u64, p).unwrap_or(false)
}

/// The order-preserving embedding `delta(n, i) = n - 1/p^(i+1)`.
pub fn delta(p: u32, idx: IndexPair) -> Result<Rat, Error> {
    if !in_s(p, idx) {
        return Err(Error::IndexNotInS { n: idx.n, i: idx.i });
    }
    debug_assert!(idx.i < u32::MAX as u64);
    Ok(Rat::int(idx.n as i64) - Rat::inv_pow(p, idx.i as u32 + 1))
}

/// Immediate successor within the same row: `(n, i+m)` with `m` minimal
/// such that `p` does not divide `C(i+m, n)`. Always exists.
pub fn index_successor(p: u32, idx: IndexPair) -> Result<IndexPair, Error> {
    if !in_s(p, idx) {
        return Err(Error::IndexNotInS { n: idx.n, i: idx.i });
    }
    let mut i = idx.i + 1;
    loop {
        if lucas_nonzero(i, idx.n as u64, p).unwrap() {
            return Ok(IndexPair::new(idx.n, i));
        }
        i += 1;
    }
}

/// Iterator over the indices of row `n` of `S`, starting at `(n, n)`.
pub fn row_indices(p: u32, n: u32) -> impl Iterator<Item = IndexPair> {
    let mut next = Some(IndexPair::new(n, n as u64));
    core::iter::from_fn(move || {
        let cur = next?;
        next = index_successor(p, cur).ok();
        Some(cur)
    })
}

/// Support coefficient of the master series at `(n, i)`: `C(i, n) mod p`.
pub fn support_coeff(p: u32, idx: IndexPair) -> Result<u32, Error> {
    binom_mod_p(idx.i, idx.n as u64, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn delta_pinned_values() {
        assert_eq!(delta(2, IndexPair::new(0, 0)).unwrap(), Rat::frac(-1, 2));
        assert_eq!(delta(2, IndexPair::new(1, 1)).unwrap(), Rat::frac(3, 4));
        assert!(delta(2, IndexPair::new(1, 2)).is_err()); // C(2,1) = 2
    }

    #[test]
    fn delta_is_order_preserving_on_a_grid() {
        for p in [2u32, 3] {
            let mut grid: Vec<(IndexPair, Rat)> = Vec::new();
            for n in 0..4u32 {
                for i in n as u64..=12 {
                    let idx = IndexPair::new(n, i);
                    if in_s(p, idx) {
                        grid.push((idx, delta(p, idx).unwrap()));
                    }
                }
            }
            for a in 0..grid.len() {
                for b in 0..grid.len() {
                    assert_eq!(grid[a].0 < grid[b].0, grid[a].1 < grid[b].1);
                }
            }
        }
    }

    #[test]
    fn successors_skip_vanishing_binomials() {
        // C(i,0) = 1 always
        assert_eq!(
            index_successor(2, IndexPair::new(0, 3)).unwrap(),
            IndexPair::new(0, 4)
        );
        // C(2,1) = 2 is even, C(3,1) = 3 is odd
        assert_eq!(
            index_successor(2, IndexPair::new(1, 1)).unwrap(),
            IndexPair::new(1, 3)
        );
        // C(3,2) = 3 is odd
        assert_eq!(
            index_successor(2, IndexPair::new(2, 2)).unwrap(),
            IndexPair::new(2, 3)
        );
    }

    #[test]
    fn row_two_for_p2_follows_the_lucas_pattern() {
        let row: Vec<u64> = row_indices(2, 2).take(5).map(|ix| ix.i).collect();
        assert_eq!(row, [2, 3, 6, 7, 10]);
    }
}
