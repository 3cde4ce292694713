//! Integer partitions, ordered part lists, and the diagonal block structure
//! they induce on an order-N array.

use std::fmt;
use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};

/// An integer partition: positive parts in non-increasing order.
///
/// This is the object being realized. `order()` is the sum N of the parts,
/// `len()` the number of parts n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, sorting the parts into canonical non-increasing
    /// order. Rejects empty input and zero parts.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Domain("partition needs at least one part".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// N, the sum of the parts.
    pub fn order(&self) -> usize {
        self.parts.iter().sum()
    }

    /// n, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Compressed view: (value, multiplicity) pairs, values descending.
    pub fn compressed(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// The distinct part values, descending.
    pub fn distinct(&self) -> Vec<usize> {
        self.compressed().into_iter().map(|(v, _)| v).collect()
    }

    /// When the partition has shape `a^u b^(n-u)` with a > b, returns
    /// (a, b, u). Single-valued partitions and shapes with three or more
    /// distinct values return None.
    pub fn two_part_shape(&self) -> Option<(usize, usize, usize)> {
        let c = self.compressed();
        if c.len() == 2 {
            Some((c[0].0, c[1].0, c[0].1))
        } else {
            None
        }
    }

    /// All partitions of `n`, parts non-increasing, in descending
    /// lexicographic order starting from `(n)`.
    pub fn all_of(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            let hi = rem.min(max);
            for p in (1..=hi).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    /// Exponent notation: `(2^2 1)` prints as `2^2 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, m) in self.compressed() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{m}")?;
            }
        }
        Ok(())
    }
}

/// Parses partition notation: whitespace-separated `part` or `part^mult`
/// tokens, e.g. `"2^2 1"`. The result is canonicalized (sorted
/// non-increasing); zero parts or multiplicities are domain errors.
pub fn parse_partition(text: &str) -> Result<Partition> {
    Partition::new(parse_parts(text)?)
}

/// Parses the same grammar but preserves the written order of the parts.
pub fn parse_composition(text: &str) -> Result<Composition> {
    Composition::new(parse_parts(text)?)
}

fn parse_parts(text: &str) -> Result<Vec<usize>> {
    let mut parts = Vec::new();
    for tok in text.split_whitespace() {
        let (value, mult) = match tok.split_once('^') {
            Some((v, m)) => (v, m),
            None => (tok, "1"),
        };
        let value: usize = value
            .parse()
            .map_err(|_| Error::Parse(format!("bad part `{tok}`")))?;
        let mult: usize = mult
            .parse()
            .map_err(|_| Error::Parse(format!("bad multiplicity in `{tok}`")))?;
        if value == 0 {
            return Err(Error::Domain(format!("zero part in `{tok}`")));
        }
        if mult == 0 {
            return Err(Error::Domain(format!("zero multiplicity in `{tok}`")));
        }
        parts.extend(std::iter::repeat(value).take(mult));
    }
    if parts.is_empty() {
        return Err(Error::Parse("empty partition".into()));
    }
    Ok(parts)
}

/// An ordered list of positive parts summing to N.
///
/// Outline rectangles and boxes group consecutive rows, columns and symbols
/// by such lists; unlike [`Partition`], the order of the parts is data (the
/// two-part outline templates place a short part between runs of equal
/// parts).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Domain("composition needs at least one part".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Domain("composition parts must be positive".into()));
        }
        Ok(Composition { parts })
    }

    /// N identical parts of size 1; the identity grouping.
    pub fn singletons(n: usize) -> Self {
        Composition {
            parts: vec![1; n.max(1)],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn order(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn blocks(&self) -> BlockStructure {
        BlockStructure::from_parts(&self.parts)
    }
}

impl From<&Partition> for Composition {
    fn from(p: &Partition) -> Self {
        Composition {
            parts: p.parts().to_vec(),
        }
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}

/// The consecutive diagonal intervals induced by a part list: interval i
/// starts at the sum of the earlier parts and has length `parts[i]`.
///
/// Intervals are half-open 0-based cell ranges covering `0..N` exactly.
/// Symbol s (1-based) belongs to interval i iff cell s-1 does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    intervals: Vec<Range<usize>>,
}

impl BlockStructure {
    pub fn from_parts(parts: &[usize]) -> Self {
        let mut intervals = Vec::with_capacity(parts.len());
        let mut start = 0;
        for &h in parts {
            intervals.push(start..start + h);
            start += h;
        }
        BlockStructure { intervals }
    }

    pub fn intervals(&self) -> &[Range<usize>] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn interval(&self, i: usize) -> Range<usize> {
        self.intervals[i].clone()
    }

    /// Index of the interval containing 0-based cell `x`.
    pub fn block_of_cell(&self, x: usize) -> usize {
        // intervals are consecutive, so binary search on start would do;
        // linear is fine at desk scale
        self.intervals
            .iter()
            .position(|r| r.contains(&x))
            .expect("cell out of range")
    }

    /// Index of the interval containing 1-based symbol `s`.
    pub fn block_of_symbol(&self, s: usize) -> usize {
        self.block_of_cell(s - 1)
    }

    /// Total length, i.e. N.
    pub fn order(&self) -> usize {
        self.intervals.last().map_or(0, |r| r.end)
    }
}

/// The block structure of a partition: interval i has length h_i.
pub fn block_intervals(p: &Partition) -> BlockStructure {
    BlockStructure::from_parts(p.parts())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_exponent_form() {
        let p = parse_partition("2^2 1^1").unwrap();
        assert_eq!(p.parts(), &[2, 2, 1]);
        assert_eq!(p.order(), 5);
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn parse_single_part() {
        let p = parse_partition("7").unwrap();
        assert_eq!(p.parts(), &[7]);
        assert_eq!(p.order(), 7);
    }

    #[test]
    fn parse_canonicalizes_order() {
        let p = parse_partition("1^2 2^2").unwrap();
        assert_eq!(p.parts(), &[2, 2, 1, 1]);
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(parse_partition("two"), Err(Error::Parse(_))));
        assert!(matches!(parse_partition(""), Err(Error::Parse(_))));
        assert!(matches!(parse_partition("3^x"), Err(Error::Parse(_))));
        assert!(matches!(parse_partition("0"), Err(Error::Domain(_))));
        assert!(matches!(parse_partition("2^0"), Err(Error::Domain(_))));
        assert!(matches!(parse_partition("-3"), Err(Error::Parse(_))));
    }

    #[test]
    fn display_round_trips() {
        for s in ["2^2 1", "7", "3^2 2", "4 3 2 1"] {
            let p = parse_partition(s).unwrap();
            assert_eq!(parse_partition(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn compressed_round_trips() {
        let p = parse_partition("5^3 2^2 1").unwrap();
        let mut parts = Vec::new();
        for (v, m) in p.compressed() {
            parts.extend(std::iter::repeat(v).take(m));
        }
        assert_eq!(parts, p.parts());
    }

    #[test]
    fn blocks_2_2_1() {
        let p = parse_partition("2^2 1").unwrap();
        let b = block_intervals(&p);
        assert_eq!(b.intervals(), &[0..2, 2..4, 4..5]);
    }

    #[test]
    fn blocks_single() {
        let p = parse_partition("5").unwrap();
        let b = block_intervals(&p);
        assert_eq!(b.intervals(), &[0..5]);
    }

    #[test]
    fn blocks_3_3_2() {
        let p = parse_partition("3^2 2").unwrap();
        let b = block_intervals(&p);
        assert_eq!(b.intervals(), &[0..3, 3..6, 6..8]);
        assert_eq!(b.block_of_symbol(4), 1);
        assert_eq!(b.block_of_symbol(8), 2);
    }

    #[test]
    fn blocks_cover_and_are_disjoint() {
        for n in 1..=9 {
            for p in Partition::all_of(n) {
                let b = block_intervals(&p);
                let total: usize = b.intervals().iter().map(|r| r.len()).sum();
                assert_eq!(total, n);
                for w in b.intervals().windows(2) {
                    assert_eq!(w[0].end, w[1].start);
                }
                assert_eq!(b.order(), n);
            }
        }
    }

    #[test]
    fn two_part_shape() {
        assert_eq!(
            parse_partition("4^2 2^3").unwrap().two_part_shape(),
            Some((4, 2, 2))
        );
        assert_eq!(parse_partition("3^3").unwrap().two_part_shape(), None);
        assert_eq!(parse_partition("3 2 1").unwrap().two_part_shape(), None);
    }

    #[test]
    fn all_partitions_counts() {
        // partition numbers p(1)..p(8)
        let expect = [1, 2, 3, 5, 7, 11, 15, 22];
        for (n, &e) in (1..=8).zip(expect.iter()) {
            assert_eq!(Partition::all_of(n).len(), e);
        }
    }
}
