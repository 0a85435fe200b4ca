use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// `N` items by `M` feature dimensions, stored row-major.
///
/// Immutable once built. All values are finite, `N >= 2` and `M >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    n_items: usize,
    n_dims: usize,
    data: Vec<f64>,
}

impl FeatureMatrix {
    pub fn new(n_items: usize, n_dims: usize, data: Vec<f64>) -> Result<Self> {
        if n_items < 2 {
            return Err(Error::Shape(format!("need at least 2 items, got {n_items}")));
        }
        if n_dims < 1 {
            return Err(Error::Shape("need at least 1 feature dimension".into()));
        }
        let expected = n_items
            .checked_mul(n_dims)
            .ok_or_else(|| Error::Shape(format!("{n_items} x {n_dims} overflows")))?;
        if data.len() != expected {
            return Err(Error::Shape(format!(
                "expected {expected} values for {n_items} x {n_dims}, got {}",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: pos / n_dims, col: pos % n_dims });
        }
        Ok(Self { n_items, n_dims, data })
    }

    /// Builds a matrix from fixed-width rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n_dims = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * n_dims);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n_dims {
                return Err(Error::Shape(format!(
                    "row {i} has {} values, expected {n_dims}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::new(rows.len(), n_dims, data)
    }

    #[inline]
    pub fn n_items(&self) -> usize {
        self.n_items
    }

    #[inline]
    pub fn n_dims(&self) -> usize {
        self.n_dims
    }

    /// Row-major backing storage.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n_dims..(i + 1) * self.n_dims]
    }

    /// Euclidean distance between rows `i` and `j`, checked.
    pub fn pairwise_distance(&self, i: usize, j: usize) -> Result<f64> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.distance(i, j))
    }

    /// Euclidean distance between rows `i` and `j`.
    ///
    /// Panics if either index is out of range.
    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let a = self.row(i);
        let b = self.row(j);
        let mut acc = 0.0f64;
        for (x, y) in a.iter().zip(b) {
            let d = x - y;
            acc += d * d;
        }
        libm::sqrt(acc)
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.n_items {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, len: self.n_items })
        }
    }
}
