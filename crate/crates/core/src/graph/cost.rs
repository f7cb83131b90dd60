use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index};

/// Upper limit on the number of cost criteria per graph.
pub const MAX_CRITERIA: usize = 8;

/// Fixed-capacity vector of per-criterion costs.
///
/// Edge costs are finite and nonnegative; `f64::INFINITY` components only
/// appear inside algorithms as "not reached yet" sentinels.
#[derive(Clone, Copy)]
pub struct CostVector {
    len: u8,
    values: [f64; MAX_CRITERIA],
}

impl CostVector {
    pub fn zero(d: usize) -> Self {
        Self::splat(d, 0.0)
    }

    pub fn infinite(d: usize) -> Self {
        Self::splat(d, f64::INFINITY)
    }

    pub fn splat(d: usize, value: f64) -> Self {
        assert!(
            d <= MAX_CRITERIA,
            "at most {MAX_CRITERIA} criteria supported"
        );
        let mut values = [0.0; MAX_CRITERIA];
        values[..d].fill(value);
        Self {
            len: d as u8,
            values,
        }
    }

    pub fn from_slice(values: &[f64]) -> Self {
        let mut v = Self::zero(values.len());
        v.values[..values.len()].copy_from_slice(values);
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.values[..self.len as usize]
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: f64) {
        assert!(i < self.len(), "criterion {i} out of range");
        self.values[i] = value;
    }

    pub fn sum(&self) -> f64 {
        self.as_slice().iter().sum()
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|c| c.is_finite())
    }

    /// `true` iff `self` is nowhere larger than `other` and somewhere smaller.
    ///
    /// Panics if the lengths differ.
    #[inline]
    pub fn dominates(&self, other: &CostVector) -> bool {
        assert_eq!(self.len, other.len, "cost vector length mismatch");
        let mut strictly_better = false;
        for (a, b) in self.as_slice().iter().zip(other.as_slice()) {
            if a > b {
                return false;
            }
            if a < b {
                strictly_better = true;
            }
        }
        strictly_better
    }

    /// Component-wise maximum.
    #[inline]
    pub fn max(&self, other: &CostVector) -> CostVector {
        self.zip_with(other, f64::max)
    }

    /// Component-wise minimum.
    #[inline]
    pub fn min(&self, other: &CostVector) -> CostVector {
        self.zip_with(other, f64::min)
    }

    #[inline]
    fn zip_with(&self, other: &CostVector, f: impl Fn(f64, f64) -> f64) -> CostVector {
        assert_eq!(self.len, other.len, "cost vector length mismatch");
        let mut out = *self;
        for i in 0..self.len() {
            out.values[i] = f(self.values[i], other.values[i]);
        }
        out
    }

    /// Lexicographic order using `f64::total_cmp`, for deterministic output.
    pub fn lex_cmp(&self, other: &CostVector) -> Ordering {
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or_else(|| self.len.cmp(&other.len))
    }
}

impl PartialEq for CostVector {
    fn eq(&self, other: &Self) -> bool {
        self.as_slice() == other.as_slice()
    }
}

impl Index<usize> for CostVector {
    type Output = f64;

    #[inline]
    fn index(&self, i: usize) -> &f64 {
        &self.as_slice()[i]
    }
}

impl Add for CostVector {
    type Output = CostVector;

    #[inline]
    fn add(self, rhs: CostVector) -> CostVector {
        self.zip_with(&rhs, |a, b| a + b)
    }
}

impl Add<&CostVector> for &CostVector {
    type Output = CostVector;

    #[inline]
    fn add(self, rhs: &CostVector) -> CostVector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl fmt::Debug for CostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.as_slice().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
