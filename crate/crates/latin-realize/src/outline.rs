//! Outline rectangles and boxes: amalgamated latin squares and cubes.
//!
//! An outline stores, for each cell of a coarse grid, a multiset of
//! amalgamated symbols. Multisets are dense count vectors over the symbol
//! classes, which keeps equality and iteration deterministic.

use std::fmt;

use crate::error::{Error, Result};
use crate::partition::Composition;

/// A u x v grid of symbol multisets over t classes, together with the row,
/// column and symbol groupings it is associated to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutlineRectangle {
    row_parts: Composition,
    col_parts: Composition,
    sym_parts: Composition,
    /// counts[(i * v + j) * t + l] = copies of class l in cell (i, j)
    counts: Vec<usize>,
}

impl OutlineRectangle {
    /// An all-empty outline over the given groupings. The three orders must
    /// agree; cell contents are filled in afterwards.
    pub fn empty(
        row_parts: Composition,
        col_parts: Composition,
        sym_parts: Composition,
    ) -> Result<Self> {
        let n = row_parts.order();
        for c in [&col_parts, &sym_parts] {
            if c.order() != n {
                return Err(Error::PartitionSumMismatch {
                    expected: n,
                    got: c.order(),
                });
            }
        }
        let counts = vec![0; row_parts.len() * col_parts.len() * sym_parts.len()];
        Ok(OutlineRectangle {
            row_parts,
            col_parts,
            sym_parts,
            counts,
        })
    }

    pub fn row_parts(&self) -> &Composition {
        &self.row_parts
    }

    pub fn col_parts(&self) -> &Composition {
        &self.col_parts
    }

    pub fn sym_parts(&self) -> &Composition {
        &self.sym_parts
    }

    /// N, the order of the underlying square.
    pub fn order(&self) -> usize {
        self.row_parts.order()
    }

    pub fn rows(&self) -> usize {
        self.row_parts.len()
    }

    pub fn cols(&self) -> usize {
        self.col_parts.len()
    }

    pub fn classes(&self) -> usize {
        self.sym_parts.len()
    }

    fn idx(&self, i: usize, j: usize, l: usize) -> usize {
        debug_assert!(i < self.rows() && j < self.cols() && l < self.classes());
        (i * self.cols() + j) * self.classes() + l
    }

    /// Copies of class `l` (0-based) in cell (i, j).
    pub fn count(&self, i: usize, j: usize, l: usize) -> usize {
        self.counts[self.idx(i, j, l)]
    }

    pub fn add(&mut self, i: usize, j: usize, l: usize, copies: usize) {
        let idx = self.idx(i, j, l);
        self.counts[idx] += copies;
    }

    pub fn set_count(&mut self, i: usize, j: usize, l: usize, copies: usize) {
        let idx = self.idx(i, j, l);
        self.counts[idx] = copies;
    }

    /// The count vector of cell (i, j), length t.
    pub fn cell(&self, i: usize, j: usize) -> &[usize] {
        let base = (i * self.cols() + j) * self.classes();
        &self.counts[base..base + self.classes()]
    }

    /// Total symbols in cell (i, j), repetitions included.
    pub fn cell_size(&self, i: usize, j: usize) -> usize {
        self.cell(i, j).iter().sum()
    }
}

impl fmt::Display for OutlineRectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if j > 0 {
                    write!(f, " | ")?;
                }
                let mut first = true;
                for l in 0..self.classes() {
                    let c = self.count(i, j, l);
                    if c > 0 {
                        if !first {
                            write!(f, " ")?;
                        }
                        first = false;
                        write!(f, "{}:{}", l + 1, c)?;
                    }
                }
                if first {
                    write!(f, "-")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A u x v x w array of symbol multisets over t classes: the amalgamation
/// shape of a latin cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutlineBox {
    row_parts: Composition,
    col_parts: Composition,
    file_parts: Composition,
    sym_parts: Composition,
    /// counts[((i * v + j) * w + k) * t + l]
    counts: Vec<usize>,
}

impl OutlineBox {
    pub fn empty(
        row_parts: Composition,
        col_parts: Composition,
        file_parts: Composition,
        sym_parts: Composition,
    ) -> Result<Self> {
        let n = row_parts.order();
        for c in [&col_parts, &file_parts, &sym_parts] {
            if c.order() != n {
                return Err(Error::PartitionSumMismatch {
                    expected: n,
                    got: c.order(),
                });
            }
        }
        let counts =
            vec![0; row_parts.len() * col_parts.len() * file_parts.len() * sym_parts.len()];
        Ok(OutlineBox {
            row_parts,
            col_parts,
            file_parts,
            sym_parts,
            counts,
        })
    }

    pub fn row_parts(&self) -> &Composition {
        &self.row_parts
    }

    pub fn col_parts(&self) -> &Composition {
        &self.col_parts
    }

    pub fn file_parts(&self) -> &Composition {
        &self.file_parts
    }

    pub fn sym_parts(&self) -> &Composition {
        &self.sym_parts
    }

    pub fn order(&self) -> usize {
        self.row_parts.order()
    }

    pub fn rows(&self) -> usize {
        self.row_parts.len()
    }

    pub fn cols(&self) -> usize {
        self.col_parts.len()
    }

    pub fn files(&self) -> usize {
        self.file_parts.len()
    }

    pub fn classes(&self) -> usize {
        self.sym_parts.len()
    }

    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        debug_assert!(
            i < self.rows() && j < self.cols() && k < self.files() && l < self.classes()
        );
        ((i * self.cols() + j) * self.files() + k) * self.classes() + l
    }

    pub fn count(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        self.counts[self.idx(i, j, k, l)]
    }

    pub fn add(&mut self, i: usize, j: usize, k: usize, l: usize, copies: usize) {
        let idx = self.idx(i, j, k, l);
        self.counts[idx] += copies;
    }

    pub fn cell(&self, i: usize, j: usize, k: usize) -> &[usize] {
        let base = ((i * self.cols() + j) * self.files() + k) * self.classes();
        &self.counts[base..base + self.classes()]
    }

    pub fn cell_size(&self, i: usize, j: usize, k: usize) -> usize {
        self.cell(i, j, k).iter().sum()
    }

    /// Total copies of class l in the whole box.
    pub fn total(&self, l: usize) -> usize {
        let t = self.classes();
        self.counts[l..].iter().step_by(t).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::parse_composition;

    #[test]
    fn rectangle_cell_accumulation() {
        let p = parse_composition("2 2 1").unwrap();
        let q = parse_composition("4 1").unwrap();
        let r = parse_composition("2 1 1 1").unwrap();
        let mut o = OutlineRectangle::empty(p, q, r).unwrap();
        o.add(0, 0, 0, 4);
        o.add(0, 0, 3, 2);
        assert_eq!(o.cell(0, 0), &[4, 0, 0, 2]);
        assert_eq!(o.cell_size(0, 0), 6);
        assert_eq!(o.count(0, 1, 0), 0);
    }

    #[test]
    fn sum_mismatch_rejected() {
        let p = parse_composition("2 2 1").unwrap();
        let q = parse_composition("4 2").unwrap();
        let r = parse_composition("2 1 1 1").unwrap();
        assert!(OutlineRectangle::empty(p, q, r).is_err());
    }

    #[test]
    fn box_totals() {
        let one = Composition::singletons(2);
        let mut b = OutlineBox::empty(one.clone(), one.clone(), one.clone(), one).unwrap();
        b.add(0, 0, 0, 0, 1);
        b.add(1, 1, 1, 0, 2);
        assert_eq!(b.total(0), 3);
        assert_eq!(b.total(1), 0);
    }
}
