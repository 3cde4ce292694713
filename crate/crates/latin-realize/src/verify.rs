//! Structural checks: latinity, realization structure, top-aligned block
//! structure, amalgamation (reduction), and outline validation.
//!
//! Every construction in the crate is tested against these functions; they
//! are deliberately direct transcriptions of the definitions rather than
//! anything clever.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypercube::LatinHypercube;
use crate::outline::{OutlineBox, OutlineRectangle};
use crate::partition::{block_intervals, Composition, Partition};

/// What went wrong, where.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// Two cells of one line share a symbol.
    NotLatin,
    /// A diagonal block is not a subhypercube of the expected order.
    MissingSubcube,
    /// A diagonal block contains a symbol from outside its block.
    SymbolLeak,
    /// A block fails the top-aligned structure, or a count clause fails.
    BlockMismatch,
}

/// First violation found by a check, with the offending cell(s).
///
/// Checks stop at the first violation; pass `exhaustive` to collect every
/// offending coordinate of that same kind instead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub kind: ViolationKind,
    pub coordinates: Vec<Vec<usize>>,
    pub detail: String,
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.detail)?;
        if !self.coordinates.is_empty() {
            write!(f, " at {:?}", self.coordinates[0])?;
            if self.coordinates.len() > 1 {
                write!(f, " (+{} more)", self.coordinates.len() - 1)?;
            }
        }
        Ok(())
    }
}

fn violation(kind: ViolationKind, coords: Vec<Vec<usize>>, detail: String) -> Error {
    Error::Violation(ViolationReport {
        kind,
        coordinates: coords,
        detail,
    })
}

/// Checks that every axis-aligned line of `h` contains each symbol exactly
/// once. Ok(()) iff the array is a latin hypercube.
pub fn is_latin(h: &LatinHypercube) -> Result<()> {
    check_latin(h, false)
}

/// Like [`is_latin`] but collects every offending pair of cells.
pub fn is_latin_exhaustive(h: &LatinHypercube) -> Result<()> {
    check_latin(h, true)
}

fn check_latin(h: &LatinHypercube, exhaustive: bool) -> Result<()> {
    let n = h.order();
    let m = h.dim();
    let mut bad: Vec<Vec<usize>> = Vec::new();
    let mut detail = String::new();
    let mut coords = vec![0usize; m];
    // last-seen cell per symbol, reused across lines via a stamp
    let mut seen_at = vec![usize::MAX; n + 1];
    let mut stamp = vec![0u32; n + 1];
    let mut cur = 0u32;
    for axis in 0..m {
        // enumerate lines: all coordinate tuples with coords[axis] == 0
        let outer = n.pow((m - 1) as u32);
        for line in 0..outer {
            cur += 1;
            // unfold `line` into the coordinates other than `axis`
            let mut rem = line;
            for d in (0..m).rev() {
                if d == axis {
                    continue;
                }
                coords[d] = rem % n;
                rem /= n;
            }
            for x in 0..n {
                coords[axis] = x;
                let v = h.get(&coords);
                if stamp[v] == cur {
                    let mut other = coords.clone();
                    other[axis] = seen_at[v];
                    bad.push(other);
                    bad.push(coords.clone());
                    if detail.is_empty() {
                        detail = format!("symbol {v} repeats along axis {axis}");
                    }
                    if !exhaustive {
                        return Err(violation(ViolationKind::NotLatin, bad, detail));
                    }
                } else {
                    stamp[v] = cur;
                    seen_at[v] = x;
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(violation(ViolationKind::NotLatin, bad, detail))
    }
}

/// Checks that `h` is a normal-form m-realization of `p`: it is latin and
/// the diagonal block of every part is closed over that block's symbols.
///
/// Block closure plus latinity force each diagonal block to be a latin
/// subhypercube on exactly its own symbols, which gives the pairwise
/// row/column/.../symbol disjointness of the subhypercubes.
pub fn verify_realization(h: &LatinHypercube, p: &Partition) -> Result<()> {
    if h.order() != p.order() {
        return Err(Error::OrderMismatch {
            expected: p.order(),
            got: h.order(),
        });
    }
    is_latin(h)?;
    let blocks = block_intervals(p);
    let m = h.dim();
    let mut coords = vec![0usize; m];
    for (bi, range) in blocks.intervals().iter().enumerate() {
        let h_i = range.len();
        // walk the block's m-dimensional sub-array
        let total = h_i.pow(m as u32);
        for idx in 0..total {
            let mut rem = idx;
            for d in (0..m).rev() {
                coords[d] = range.start + rem % h_i;
                rem /= h_i;
            }
            let v = h.get(&coords);
            if !range.contains(&(v - 1)) {
                return Err(violation(
                    ViolationKind::SymbolLeak,
                    vec![coords.clone()],
                    format!("block {bi} holds foreign symbol {v}"),
                ));
            }
        }
    }
    Ok(())
}

/// Checks the "top-aligned" block structure of a latin square `l` against
/// `p`: for every block interval S_i of length h_i,
///
/// 1. cells of S_i x S_i hold only symbols `1..=h_i`, and
/// 2. cells of the first h_i rows against columns S_i hold only the symbols
///    of S_i.
///
/// This is the input shape required to lift a square without a realization
/// into a cube with one.
pub fn verify_top_structure(l: &LatinHypercube, p: &Partition) -> Result<()> {
    if l.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: l.dim(),
        });
    }
    if l.order() != p.order() {
        return Err(Error::OrderMismatch {
            expected: p.order(),
            got: l.order(),
        });
    }
    is_latin(l)?;
    let blocks = block_intervals(p);
    for (bi, range) in blocks.intervals().iter().enumerate() {
        let h_i = range.len();
        for r in range.clone() {
            for c in range.clone() {
                let v = l.at(r, c);
                if v > h_i {
                    return Err(violation(
                        ViolationKind::BlockMismatch,
                        vec![vec![r, c]],
                        format!("block {bi}: symbol {v} not in 1..={h_i}"),
                    ));
                }
            }
        }
        for r in 0..h_i {
            for c in range.clone() {
                let v = l.at(r, c);
                if !range.contains(&(v - 1)) {
                    return Err(violation(
                        ViolationKind::BlockMismatch,
                        vec![vec![r, c]],
                        format!("top rows of block {bi}: symbol {v} outside the block"),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Amalgamates a latin square by the given row, column and symbol groupings.
pub fn reduce_square(
    l: &LatinHypercube,
    rows: &Composition,
    cols: &Composition,
    syms: &Composition,
) -> Result<OutlineRectangle> {
    if l.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: l.dim(),
        });
    }
    let n = l.order();
    for c in [rows, cols, syms] {
        if c.order() != n {
            return Err(Error::PartitionSumMismatch {
                expected: n,
                got: c.order(),
            });
        }
    }
    let mut o = OutlineRectangle::empty(rows.clone(), cols.clone(), syms.clone())?;
    let rb = rows.blocks();
    let cb = cols.blocks();
    let sb = syms.blocks();
    for r in 0..n {
        for c in 0..n {
            let v = l.at(r, c);
            o.add(rb.block_of_cell(r), cb.block_of_cell(c), sb.block_of_symbol(v), 1);
        }
    }
    Ok(o)
}

/// Amalgamates a latin cube by row, column, file and symbol groupings.
pub fn reduce_cube(
    c: &LatinHypercube,
    rows: &Composition,
    cols: &Composition,
    files: &Composition,
    syms: &Composition,
) -> Result<OutlineBox> {
    if c.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: c.dim(),
        });
    }
    let n = c.order();
    for comp in [rows, cols, files, syms] {
        if comp.order() != n {
            return Err(Error::PartitionSumMismatch {
                expected: n,
                got: comp.order(),
            });
        }
    }
    let mut o = OutlineBox::empty(rows.clone(), cols.clone(), files.clone(), syms.clone())?;
    let rb = rows.blocks();
    let cb = cols.blocks();
    let fb = files.blocks();
    let sb = syms.blocks();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let v = c.get(&[x, y, z]);
                o.add(
                    rb.block_of_cell(x),
                    cb.block_of_cell(y),
                    fb.block_of_cell(z),
                    sb.block_of_symbol(v),
                    1,
                );
            }
        }
    }
    Ok(o)
}

/// Checks the three defining count clauses of an outline rectangle:
/// cell sizes `p_i * q_j`, row counts `p_i * r_l`, column counts `q_j * r_l`.
pub fn validate_outline_rectangle(o: &OutlineRectangle) -> Result<()> {
    let p = o.row_parts().parts();
    let q = o.col_parts().parts();
    let r = o.sym_parts().parts();
    for i in 0..o.rows() {
        for j in 0..o.cols() {
            let size = o.cell_size(i, j);
            if size != p[i] * q[j] {
                return Err(violation(
                    ViolationKind::BlockMismatch,
                    vec![vec![i, j]],
                    format!("cell ({i},{j}) holds {size} symbols, wants {}", p[i] * q[j]),
                ));
            }
        }
    }
    for i in 0..o.rows() {
        for l in 0..o.classes() {
            let total: usize = (0..o.cols()).map(|j| o.count(i, j, l)).sum();
            if total != p[i] * r[l] {
                return Err(violation(
                    ViolationKind::BlockMismatch,
                    vec![vec![i]],
                    format!(
                        "row {i}: class {} occurs {total} times, wants {}",
                        l + 1,
                        p[i] * r[l]
                    ),
                ));
            }
        }
    }
    for j in 0..o.cols() {
        for l in 0..o.classes() {
            let total: usize = (0..o.rows()).map(|i| o.count(i, j, l)).sum();
            if total != q[j] * r[l] {
                return Err(violation(
                    ViolationKind::BlockMismatch,
                    vec![vec![j]],
                    format!(
                        "column {j}: class {} occurs {total} times, wants {}",
                        l + 1,
                        q[j] * r[l]
                    ),
                ));
            }
        }
    }
    Ok(())
}

/// Checks the five defining count clauses of an outline box: the global
/// class totals, the cell sizes, and the three per-line class counts.
pub fn validate_outline_box(o: &OutlineBox) -> Result<()> {
    let p = o.row_parts().parts();
    let q = o.col_parts().parts();
    let r = o.file_parts().parts();
    let s = o.sym_parts().parts();
    let n = o.order();
    for l in 0..o.classes() {
        let total = o.total(l);
        if total != n * n * s[l] {
            return Err(violation(
                ViolationKind::BlockMismatch,
                vec![],
                format!(
                    "class {} occurs {total} times overall, wants {}",
                    l + 1,
                    n * n * s[l]
                ),
            ));
        }
    }
    for i in 0..o.rows() {
        for j in 0..o.cols() {
            for k in 0..o.files() {
                let size = o.cell_size(i, j, k);
                if size != p[i] * q[j] * r[k] {
                    return Err(violation(
                        ViolationKind::BlockMismatch,
                        vec![vec![i, j, k]],
                        format!(
                            "cell ({i},{j},{k}) holds {size} symbols, wants {}",
                            p[i] * q[j] * r[k]
                        ),
                    ));
                }
            }
        }
    }
    for l in 0..o.classes() {
        for i in 0..o.rows() {
            for j in 0..o.cols() {
                let total: usize = (0..o.files()).map(|k| o.count(i, j, k, l)).sum();
                if total != p[i] * q[j] * s[l] {
                    return Err(violation(
                        ViolationKind::BlockMismatch,
                        vec![vec![i, j]],
                        format!("file line ({i},{j},*): class {} count {total}", l + 1),
                    ));
                }
            }
        }
        for i in 0..o.rows() {
            for k in 0..o.files() {
                let total: usize = (0..o.cols()).map(|j| o.count(i, j, k, l)).sum();
                if total != p[i] * r[k] * s[l] {
                    return Err(violation(
                        ViolationKind::BlockMismatch,
                        vec![vec![i, k]],
                        format!("column line ({i},*,{k}): class {} count {total}", l + 1),
                    ));
                }
            }
        }
        for j in 0..o.cols() {
            for k in 0..o.files() {
                let total: usize = (0..o.rows()).map(|i| o.count(i, j, k, l)).sum();
                if total != q[j] * r[k] * s[l] {
                    return Err(violation(
                        ViolationKind::BlockMismatch,
                        vec![vec![j, k]],
                        format!("row line (*,{j},{k}): class {} count {total}", l + 1),
                    ));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::parse_partition;

    #[test]
    fn cyclic_squares_are_latin() {
        for n in 1..=8 {
            is_latin(&LatinHypercube::cyclic(2, n)).unwrap();
            is_latin(&LatinHypercube::cyclic(3, n)).unwrap();
        }
    }

    #[test]
    fn repeated_row_is_not_latin() {
        let h = LatinHypercube::from_entries(2, 2, vec![1, 1, 1, 1]).unwrap();
        let err = is_latin(&h).unwrap_err();
        assert_eq!(err.violation().unwrap().kind, ViolationKind::NotLatin);
    }

    #[test]
    fn exhaustive_collects_more() {
        let h = LatinHypercube::from_entries(2, 2, vec![1, 1, 1, 1]).unwrap();
        let err = is_latin_exhaustive(&h).unwrap_err();
        assert!(err.violation().unwrap().coordinates.len() > 2);
    }

    #[test]
    fn cyclic_square_leaks_symbols() {
        let l = LatinHypercube::cyclic(2, 3);
        let p = parse_partition("2 1").unwrap();
        let err = verify_realization(&l, &p).unwrap_err();
        assert_eq!(err.violation().unwrap().kind, ViolationKind::SymbolLeak);
    }

    #[test]
    fn realization_implies_latin() {
        // a realization check never passes on a non-latin array
        let h = LatinHypercube::from_entries(2, 2, vec![1, 2, 1, 2]).unwrap();
        let p = parse_partition("1 1").unwrap();
        assert!(verify_realization(&h, &p).is_err());
    }

    #[test]
    fn order_mismatch_is_an_error_not_a_violation() {
        let l = LatinHypercube::cyclic(2, 3);
        let p = parse_partition("2 2").unwrap();
        let err = verify_realization(&l, &p).unwrap_err();
        assert!(err.violation().is_none());
    }

    #[test]
    fn order_one_square_has_top_structure() {
        let l = LatinHypercube::cyclic(2, 1);
        let p = parse_partition("1").unwrap();
        verify_top_structure(&l, &p).unwrap();
    }

    #[test]
    fn singleton_reduction_is_identity() {
        let l = LatinHypercube::cyclic(2, 4);
        let one = Composition::singletons(4);
        let o = reduce_square(&l, &one, &one, &one).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let v = l.at(r, c);
                for l_ in 0..4 {
                    assert_eq!(o.count(r, c, l_), usize::from(l_ + 1 == v));
                }
            }
        }
        validate_outline_rectangle(&o).unwrap();
    }

    #[test]
    fn reductions_of_latin_squares_validate() {
        let l = LatinHypercube::cyclic(2, 6);
        let p = crate::partition::parse_composition("3 2 1").unwrap();
        let q = crate::partition::parse_composition("1 4 1").unwrap();
        let r = crate::partition::parse_composition("2 2 2").unwrap();
        let o = reduce_square(&l, &p, &q, &r).unwrap();
        validate_outline_rectangle(&o).unwrap();
    }

    #[test]
    fn cube_reduction_validates() {
        let c = LatinHypercube::cyclic(3, 4);
        let p = crate::partition::parse_composition("2 2").unwrap();
        let q = crate::partition::parse_composition("1 3").unwrap();
        let r = crate::partition::parse_composition("2 1 1").unwrap();
        let s = crate::partition::parse_composition("1 1 2").unwrap();
        let o = reduce_cube(&c, &p, &q, &r, &s).unwrap();
        validate_outline_box(&o).unwrap();
    }
}
