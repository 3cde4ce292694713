//! The m-dimensional symbol array underlying everything else.

use crate::error::{Error, Result};

/// An m-dimensional array of side N holding symbols from `1..=N`.
///
/// Entries are stored flat in row-major order with the last coordinate
/// fastest, so extracting the slice with the first coordinate fixed is a
/// contiguous block. Coordinates are 0-based; symbols are 1-based, matching
/// the usual presentation of latin squares on `[N]`.
///
/// The latin property is *not* an invariant of this container — `verify`
/// checks it — so partially wrong arrays can be built and diagnosed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinHypercube {
    dim: usize,
    order: usize,
    entries: Vec<usize>,
}

impl LatinHypercube {
    /// Wraps a flat entry vector. Checks the element count and the symbol
    /// range, nothing more.
    pub fn from_entries(dim: usize, order: usize, entries: Vec<usize>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Domain(format!("dimension {dim} < 2")));
        }
        if order == 0 {
            return Err(Error::Domain("order must be positive".into()));
        }
        let want = order.checked_pow(dim as u32).ok_or_else(|| {
            Error::Domain(format!("{order}^{dim} overflows the cell count"))
        })?;
        if entries.len() != want {
            return Err(Error::Domain(format!(
                "expected {want} entries for order {order} dim {dim}, got {}",
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&v| v < 1 || v > order) {
            return Err(Error::Domain(format!(
                "symbol {bad} outside 1..={order}"
            )));
        }
        Ok(LatinHypercube { dim, order, entries })
    }

    /// Builds from a closure over coordinates. The closure must return
    /// symbols in `1..=order`.
    pub fn from_fn(dim: usize, order: usize, mut f: impl FnMut(&[usize]) -> usize) -> Self {
        let len = order.pow(dim as u32);
        let mut entries = Vec::with_capacity(len);
        let mut coords = vec![0usize; dim];
        for idx in 0..len {
            Self::delinearize_into(dim, order, idx, &mut coords);
            entries.push(f(&coords));
        }
        LatinHypercube { dim, order, entries }
    }

    /// The cyclic hypercube: entry = (sum of coordinates mod N) + 1.
    pub fn cyclic(dim: usize, order: usize) -> Self {
        Self::from_fn(dim, order, |c| c.iter().sum::<usize>() % order + 1)
    }

    /// A square from nested rows; rows use symbols `1..=N`.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::Domain("ragged rows".into()));
            }
            entries.extend_from_slice(r);
        }
        Self::from_entries(2, n, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Flat index of a coordinate tuple (last coordinate fastest).
    pub fn linearize(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.dim);
        let mut idx = 0;
        for &c in coords {
            debug_assert!(c < self.order);
            idx = idx * self.order + c;
        }
        idx
    }

    /// Inverse of [`linearize`](Self::linearize), writing into `coords`.
    pub fn delinearize(&self, idx: usize, coords: &mut Vec<usize>) {
        coords.resize(self.dim, 0);
        Self::delinearize_into(self.dim, self.order, idx, coords);
    }

    fn delinearize_into(dim: usize, order: usize, mut idx: usize, coords: &mut [usize]) {
        for d in (0..dim).rev() {
            coords[d] = idx % order;
            idx /= order;
        }
    }

    pub fn get(&self, coords: &[usize]) -> usize {
        self.entries[self.linearize(coords)]
    }

    pub fn set(&mut self, coords: &[usize], v: usize) {
        debug_assert!((1..=self.order).contains(&v));
        let idx = self.linearize(coords);
        self.entries[idx] = v;
    }

    /// Square accessor: row r, column c.
    pub fn at(&self, r: usize, c: usize) -> usize {
        debug_assert_eq!(self.dim, 2);
        self.entries[r * self.order + c]
    }

    /// The layer with the first coordinate fixed, as a contiguous slice of
    /// N^(m-1) entries.
    pub fn layer(&self, x0: usize) -> &[usize] {
        let stride = self.order.pow(self.dim as u32 - 1);
        &self.entries[x0 * stride..(x0 + 1) * stride]
    }

    /// Applies the same permutation to every axis and to the symbols:
    /// `out(perm[x1],...,perm[xm]) = perm[self(x1,...,xm)]` (on 0-based
    /// values). This preserves latinity and maps diagonal subcubes to
    /// diagonal subcubes, so it is the tool for reordering blocks.
    pub fn conjugate(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.order);
        let mut out = self.clone();
        let len = self.entries.len();
        let mut coords = vec![0usize; self.dim];
        let mut image = vec![0usize; self.dim];
        for idx in 0..len {
            Self::delinearize_into(self.dim, self.order, idx, &mut coords);
            for d in 0..self.dim {
                image[d] = perm[coords[d]];
            }
            let v = self.entries[idx];
            out.set(&image.clone(), perm[v - 1] + 1);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip_exhaustive() {
        // every coordinate tuple survives linearize/delinearize, m <= 6, N <= 8
        for m in 2..=6usize {
            for n in 1..=8usize {
                if n.pow(m as u32) > 300_000 {
                    continue;
                }
                let h = LatinHypercube::cyclic(m, n);
                let mut coords = Vec::new();
                for idx in 0..n.pow(m as u32) {
                    h.delinearize(idx, &mut coords);
                    assert_eq!(h.linearize(&coords), idx);
                }
            }
        }
    }

    #[test]
    fn last_coordinate_fastest() {
        let h = LatinHypercube::cyclic(3, 4);
        assert_eq!(h.linearize(&[0, 0, 1]), 1);
        assert_eq!(h.linearize(&[0, 1, 0]), 4);
        assert_eq!(h.linearize(&[1, 0, 0]), 16);
    }

    #[test]
    fn layer_is_contiguous() {
        let h = LatinHypercube::cyclic(3, 3);
        let l = h.layer(1);
        assert_eq!(l.len(), 9);
        assert_eq!(l[0], h.get(&[1, 0, 0]));
        assert_eq!(l[8], h.get(&[1, 2, 2]));
    }

    #[test]
    fn from_entries_validates() {
        assert!(LatinHypercube::from_entries(2, 2, vec![1, 2, 2]).is_err());
        assert!(LatinHypercube::from_entries(2, 2, vec![1, 2, 2, 3]).is_err());
        assert!(LatinHypercube::from_entries(2, 2, vec![1, 2, 2, 0]).is_err());
        assert!(LatinHypercube::from_entries(2, 2, vec![1, 2, 2, 1]).is_ok());
    }

    #[test]
    fn conjugate_identity() {
        let h = LatinHypercube::cyclic(3, 4);
        let perm: Vec<usize> = (0..4).collect();
        assert_eq!(h.conjugate(&perm), h);
    }
}
