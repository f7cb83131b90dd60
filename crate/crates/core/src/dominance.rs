//! Dominance relation and pareto-set containers.
//!
//! Both containers keep exactly one entry per distinct cost vector: an
//! insert whose cost equals a stored cost is rejected, so the first
//! discovered witness wins.

use crate::graph::{CostVector, Path};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DominanceError {
    #[error("cost vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("sorted two-criteria skyline used with {0} criteria")]
    NotTwoCriteria(usize),
}

pub fn dominates(a: &CostVector, b: &CostVector) -> Result<bool, DominanceError> {
    check_lengths(a, b)?;
    Ok(a.dominates(b))
}

pub fn vec_max(a: &CostVector, b: &CostVector) -> Result<CostVector, DominanceError> {
    check_lengths(a, b)?;
    Ok(a.max(b))
}

fn check_lengths(a: &CostVector, b: &CostVector) -> Result<(), DominanceError> {
    if a.len() != b.len() {
        return Err(DominanceError::LengthMismatch(a.len(), b.len()));
    }
    Ok(())
}

/// Mutually nondominated set of cost vectors with an attached payload.
///
/// Entries are kept ascending by component sum in a flat strided buffer.
/// Float addition is monotone, so a vector never has a smaller sum than one
/// that weakly dominates it: dominance scans stop at the first larger sum
/// and eviction scans start at the first equal one.
#[derive(Clone, Debug)]
pub struct Skyline<T> {
    dims: usize,
    sums: Vec<f64>,
    flat: Vec<f64>,
    items: Vec<T>,
}

impl<T> Default for Skyline<T> {
    fn default() -> Self {
        Self {
            dims: 0,
            sums: Vec::new(),
            flat: Vec::new(),
            items: Vec::new(),
        }
    }
}

#[inline]
fn weakly_below(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl<T> Skyline<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Entries in ascending order of cost sum.
    pub fn iter(&self) -> impl Iterator<Item = (CostVector, &T)> + '_ {
        self.costs().zip(&self.items)
    }

    pub fn costs(&self) -> impl Iterator<Item = CostVector> + '_ {
        self.flat
            .chunks_exact(self.dims.max(1))
            .map(CostVector::from_slice)
    }

    pub fn into_entries(self) -> Vec<(CostVector, T)> {
        let costs: Vec<_> = self.costs().collect();
        costs.into_iter().zip(self.items).collect()
    }

    /// Rows whose sum is at most `sum`.
    fn rows_upto(&self, sum: f64) -> std::slice::ChunksExact<'_, f64> {
        let end = self.sums.partition_point(|&x| x <= sum);
        self.flat[..end * self.dims].chunks_exact(self.dims.max(1))
    }

    /// `true` iff some stored vector dominates `v`.
    pub fn dominates(&self, v: &CostVector) -> bool {
        if self.items.is_empty() {
            return false;
        }
        assert_eq!(self.dims, v.len(), "cost vector length mismatch");
        let slice = v.as_slice();
        self.rows_upto(v.sum())
            .any(|c| weakly_below(c, slice) && c != slice)
    }

    pub fn insert(&mut self, cost: CostVector, item: T) -> bool {
        self.insert_with(cost, item, |_| {})
    }

    /// Inserts unless `cost` is dominated by or equal to a stored vector.
    /// Entries dominated by `cost` are removed and handed to `evicted`.
    pub fn insert_with(&mut self, cost: CostVector, item: T, mut evicted: impl FnMut(T)) -> bool {
        if self.items.is_empty() {
            self.dims = cost.len();
        }
        assert_eq!(self.dims, cost.len(), "cost vector length mismatch");
        let d = self.dims;
        let v = cost.as_slice();
        let sum = cost.sum();
        if self.rows_upto(sum).any(|c| weakly_below(c, v)) {
            return false;
        }
        let first = self.sums.partition_point(|&x| x < sum);
        let mut keep = first;
        for read in first..self.items.len() {
            if weakly_below(v, &self.flat[read * d..(read + 1) * d]) {
                continue;
            }
            if keep != read {
                self.sums.swap(keep, read);
                self.items.swap(keep, read);
                self.flat.copy_within(read * d..(read + 1) * d, keep * d);
            }
            keep += 1;
        }
        self.sums.truncate(keep);
        self.flat.truncate(keep * d);
        for t in self.items.drain(keep..) {
            evicted(t);
        }
        let at = self.sums.partition_point(|&x| x <= sum);
        self.sums.insert(at, sum);
        self.items.insert(at, item);
        self.flat.splice(at * d..at * d, v.iter().copied());
        true
    }
}

impl Skyline<Path> {
    pub fn insert_path(&mut self, p: Path) -> bool {
        self.insert(p.cost(), p)
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> + '_ {
        self.items.iter()
    }
}

pub fn skyline_insert(sky: &mut Skyline<Path>, p: Path) -> bool {
    sky.insert_path(p)
}

/// Lower-bound global domination check: some member of `sky` dominates
/// `max(lb_s_n + cost_p + lb_m_t, lb_s_t)`.
pub fn is_globally_dominated<T>(
    sky: &Skyline<T>,
    lb_s_n: &CostVector,
    cost_p: &CostVector,
    lb_m_t: &CostVector,
    lb_s_t: &CostVector,
) -> bool {
    let bound = (lb_s_n + cost_p) + *lb_m_t;
    sky.dominates(&bound.max(lb_s_t))
}

/// Two-criteria skyline kept sorted ascending by the first criterion, and
/// therefore strictly descending by the second.
#[derive(Clone, Debug)]
pub struct SortedSkyline2D<T> {
    entries: Vec<(CostVector, T)>,
}

impl<T> Default for SortedSkyline2D<T> {
    fn default() -> Self {
        Self {
            entries: Vec::new(),
        }
    }
}

impl<T> SortedSkyline2D<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CostVector, &T)> + '_ {
        self.entries.iter().map(|(c, t)| (c, t))
    }

    pub fn into_entries(self) -> Vec<(CostVector, T)> {
        self.entries
    }

    /// Index of the last entry whose first criterion is `<= x`, if any.
    fn last_not_after(&self, x: f64) -> Option<usize> {
        self.entries
            .partition_point(|(c, _)| c[0] <= x)
            .checked_sub(1)
    }

    pub fn dominates(&self, v: &CostVector) -> bool {
        debug_assert_eq!(v.len(), 2);
        // Among entries with c0 <= v0, the last one has the smallest c1.
        match self.last_not_after(v[0]) {
            Some(i) => {
                let c = &self.entries[i].0;
                c[1] <= v[1] && c != v
            }
            None => false,
        }
    }

    pub fn insert(&mut self, cost: CostVector, item: T) -> Result<bool, DominanceError> {
        self.insert_with(cost, item, |_| {})
    }

    /// Same contract as [`Skyline::insert_with`]. Only the left neighbour
    /// can dominate the new vector, and the vectors it dominates form a
    /// contiguous run starting at its insertion position.
    pub fn insert_with(
        &mut self,
        cost: CostVector,
        item: T,
        mut evicted: impl FnMut(T),
    ) -> Result<bool, DominanceError> {
        if cost.len() != 2 {
            return Err(DominanceError::NotTwoCriteria(cost.len()));
        }
        if let Some(i) = self.last_not_after(cost[0]) {
            if self.entries[i].0[1] <= cost[1] {
                return Ok(false);
            }
        }
        let start = self.entries.partition_point(|(c, _)| c[0] < cost[0]);
        let end = start
            + self.entries[start..]
                .iter()
                .take_while(|(c, _)| c[1] >= cost[1])
                .count();
        for (_, t) in self
            .entries
            .splice(start..end, std::iter::once((cost, item)))
        {
            evicted(t);
        }
        Ok(true)
    }
}

pub fn merge_into_sorted_2d(
    sky: &mut SortedSkyline2D<Path>,
    p: Path,
) -> Result<bool, DominanceError> {
    sky.insert(p.cost(), p)
}
