//! Building outline rectangles and realizing them as latin squares.
//!
//! Realization splits the amalgamated object back apart one unit at a time:
//! rows first, then columns, then symbol classes. Every row and column split
//! is an exact-degree subgraph of a bipartite multigraph, found with an
//! integral feasible flow; symbol classes split into perfect matchings of a
//! regular bipartite graph. Each extraction leaves degrees divisible by the
//! remaining multiplicity, so on a valid outline no step can dead-end.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::flow::{regular_decomposition, FlowProblem};
use crate::hypercube::LatinHypercube;
use crate::outline::OutlineRectangle;
use crate::partition::{Composition, Partition};
use crate::verify::validate_outline_rectangle;

/// Parameters of the two-part outline templates: part sizes a > b, part
/// count n, and the derived split c + d = b^2 of the irregular cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutlineTemplateParams {
    pub a: usize,
    pub b: usize,
    pub n: usize,
    /// b(a - (n-2)b)
    pub c: usize,
    /// b((n-1)b - a)
    pub d: usize,
}

impl OutlineTemplateParams {
    /// Checks `(n-2)b < a < (n-1)b` and derives c and d.
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self> {
        if n < 3 || b == 0 {
            return Err(Error::Domain(format!("bad template shape a={a} b={b} n={n}")));
        }
        if !((n - 2) * b < a && a < (n - 1) * b) {
            return Err(Error::Domain(format!(
                "a={a} outside ({},{}) for b={b}, n={n}",
                (n - 2) * b,
                (n - 1) * b
            )));
        }
        let c = b * (a - (n - 2) * b);
        let d = b * ((n - 1) * b - a);
        Ok(OutlineTemplateParams { a, b, n, c, d })
    }
}

/// The 4x4 outline whose realization is a square of order a+2b carrying one
/// top-aligned block of order a and two of order b. Requires `b < a < 2b`.
pub fn build_outline_ab2(a: usize, b: usize) -> Result<OutlineRectangle> {
    two_part_outline(OutlineTemplateParams::new(a, b, 3)?)
}

/// The 2(n-1) x 2(n-1) outline generalizing [`build_outline_ab2`] to
/// `n >= 4` blocks of size b below one block of size a, for
/// `(n-2)b < a < (n-1)b`. Realizes to a square of order a + (n-1)b.
pub fn build_outline_abn(a: usize, b: usize, n: usize) -> Result<OutlineRectangle> {
    if n < 4 {
        return Err(Error::Domain(format!("n={n} < 4; use the 4x4 template")));
    }
    two_part_outline(OutlineTemplateParams::new(a, b, n)?)
}

/// Shared template body. The grid splits into four (n-1) x (n-1) quadrants;
/// cells are filled by modular rules with residues taken in `1..=n-1`.
fn two_part_outline(t: OutlineTemplateParams) -> Result<OutlineRectangle> {
    let OutlineTemplateParams { a, b, n, c, d } = t;
    let nu = n - 1;
    let mid = a - (n - 2) * b;
    let parts: Vec<usize> = std::iter::repeat(b)
        .take(n - 2)
        .chain(std::iter::once(mid))
        .chain(std::iter::repeat(b).take(n - 1))
        .collect();
    let comp = Composition::new(parts)?;
    let mut o = OutlineRectangle::empty(comp.clone(), comp.clone(), comp)?;

    // residue of x in 1..=nu
    let md = |x: i64| -> usize { ((x - 1).rem_euclid(nu as i64) + 1) as usize };

    for i in 1..=nu {
        for j in 1..=nu {
            let (gi, gj) = (i - 1, j - 1);

            // top-left quadrant: symbols 1..=nu
            if i == nu && j == nu {
                o.add(gi, gj, md((i + j) as i64) - 1, mid * mid);
            } else if i == nu || j == nu {
                o.add(gi, gj, md((i + j) as i64) - 1, c);
            } else if i + j > nu {
                o.add(gi, gj, md((i + j) as i64) - 1, b * b);
            } else {
                o.add(gi, gj, (i + j) - 1, c);
                o.add(gi, gj, (i + j - 1) - 1, d);
            }

            // top-right quadrant: symbols nu+1..=2nu
            let sym = md(j as i64 - i as i64 + 1) + nu;
            o.add(gi, nu + gj, sym - 1, if i == nu { c } else { b * b });

            // bottom-left quadrant: symbols nu+1..=2nu
            let sym = md((i + j) as i64) + nu;
            o.add(nu + gi, gj, sym - 1, if j == nu { c } else { b * b });

            // bottom-right quadrant
            if (j as i64 - i as i64).rem_euclid(nu as i64) == nu as i64 - 1 {
                o.add(nu + gi, nu + gj, nu - 1, c);
                o.add(nu + gi, nu + gj, nu + i - 1, d);
            } else {
                o.add(nu + gi, nu + gj, md(j as i64 - i as i64 + 1) - 1, b * b);
            }
        }
    }
    Ok(o)
}

/// Attempts an outline with groupings P = Q = R = p whose diagonal cell
/// (i, i) holds h_i^2 copies of class i, forcing the realized square into
/// normal form.
///
/// Off-diagonal cells are filled one symbol class at a time as capacitated
/// transportation problems, largest class first, with a balancing first
/// phase that caps each cell at its proportional share. Several class
/// orders are tried. `None` means the heuristic gave up, not that no such
/// outline exists.
pub fn build_outline_diagonal(p: &Partition) -> Option<OutlineRectangle> {
    let parts = p.parts();
    let n = parts.len();
    if n == 1 {
        let comp = Composition::from(p);
        let mut o = OutlineRectangle::empty(comp.clone(), comp.clone(), comp).ok()?;
        o.add(0, 0, 0, parts[0] * parts[0]);
        return Some(o);
    }

    for order in class_orders(n) {
        if let Some(o) = try_diagonal_fill(parts, &order) {
            debug_assert!(validate_outline_rectangle(&o).is_ok());
            return Some(o);
        }
    }
    None
}

/// Class processing orders to try: by descending size, then each class
/// hoisted to the front, then the reverse.
fn class_orders(n: usize) -> Vec<Vec<usize>> {
    let base: Vec<usize> = (0..n).collect(); // parts are already sorted desc
    let mut orders = vec![base.clone()];
    for k in 1..n {
        let mut o = base.clone();
        let v = o.remove(k);
        o.insert(0, v);
        orders.push(o);
    }
    let mut rev = base;
    rev.reverse();
    orders.push(rev);
    orders
}

fn try_diagonal_fill(parts: &[usize], order: &[usize]) -> Option<OutlineRectangle> {
    let n = parts.len();
    let comp = Composition::new(parts.to_vec()).ok()?;
    let mut o = OutlineRectangle::empty(comp.clone(), comp.clone(), comp).ok()?;
    for (i, &h) in parts.iter().enumerate() {
        o.add(i, i, i, h * h);
    }

    // remaining off-diagonal budget per cell
    let mut rem = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                rem[i][j] = parts[i] * parts[j];
            }
        }
    }
    // total size of still-unplaced classes, used for proportional caps
    let mut unplaced: Vec<bool> = vec![true; n];

    for &l in order {
        let h_l = parts[l];
        let supply: Vec<usize> = (0..n)
            .map(|i| if i == l { 0 } else { parts[i] * h_l })
            .collect();
        let demand: Vec<usize> = (0..n)
            .map(|j| if j == l { 0 } else { parts[j] * h_l })
            .collect();
        let cap = |i: usize, j: usize| -> usize {
            if i == j || i == l || j == l {
                0
            } else {
                rem[i][j]
            }
        };

        // phase one: proportional share of each cell's remaining budget
        let mut prop = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let full = cap(i, j);
                if full == 0 {
                    continue;
                }
                let pool: usize = (0..n)
                    .filter(|&l2| unplaced[l2] && l2 != i && l2 != j)
                    .map(|l2| parts[l2])
                    .sum();
                prop[i][j] = if pool == 0 {
                    full
                } else {
                    (full * h_l).div_ceil(pool).min(full)
                };
            }
        }
        let solved = FlowProblem::new(supply.clone(), demand.clone(), prop)
            .solve()
            .or_else(|| {
                let full: Vec<Vec<usize>> =
                    (0..n).map(|i| (0..n).map(|j| cap(i, j)).collect()).collect();
                FlowProblem::new(supply, demand, full).solve()
            })?;

        for i in 0..n {
            for j in 0..n {
                let x = solved[i][j];
                if x > 0 {
                    rem[i][j] -= x;
                    o.add(i, j, l, x);
                }
            }
        }
        unplaced[l] = false;
    }
    Some(o)
}

/// Realizes a valid outline rectangle as a concrete latin square whose
/// reduction by (P, Q, R) is exactly the input, cell for cell.
pub fn realize_outline_rectangle(o: &OutlineRectangle) -> Result<LatinHypercube> {
    validate_outline_rectangle(o)?;
    if let Some(sq) = realize_split(o, None) {
        return Ok(sq);
    }
    // Splits on a valid outline cannot dead-end, so reaching this point
    // means a defect; shake the tie-breaking and then fall back to search.
    for seed in 0..4u64 {
        if let Some(sq) = realize_split(o, Some(seed)) {
            return Ok(sq);
        }
    }
    if o.order() < 9 {
        if let Some(sq) = realize_by_search(o) {
            return Ok(sq);
        }
    }
    Err(Error::Internal(format!(
        "failed to realize a validated outline rectangle:\n{o}"
    )))
}

/// The three-stage splitting pipeline. `shuffle_seed` permutes the class
/// labels before solving to vary flow tie-breaking; `None` is the
/// deterministic primary path.
fn realize_split(o: &OutlineRectangle, shuffle_seed: Option<u64>) -> Option<LatinHypercube> {
    let orig_sym_blocks = o.sym_parts().blocks();
    let o_owned;
    let (o, unshuffle): (&OutlineRectangle, Option<Vec<usize>>) = match shuffle_seed {
        None => (o, None),
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = o.classes();
            let mut perm: Vec<usize> = (0..t).collect();
            perm.shuffle(&mut rng);
            // permuting classes permutes the symbol grouping as well, so we
            // realize a relabeled outline and map the symbols back at the end
            let sym_parts: Vec<usize> =
                (0..t).map(|l| o.sym_parts().parts()[perm[l]]).collect();
            let mut shuffled = OutlineRectangle::empty(
                o.row_parts().clone(),
                o.col_parts().clone(),
                Composition::new(sym_parts).ok()?,
            )
            .ok()?;
            for i in 0..o.rows() {
                for j in 0..o.cols() {
                    for l in 0..t {
                        shuffled.add(i, j, l, o.count(i, j, perm[l]));
                    }
                }
            }
            o_owned = shuffled;
            (&o_owned, Some(perm))
        }
    };

    let n = o.order();
    let v = o.cols();
    let t = o.classes();
    let q = o.col_parts().parts().to_vec();
    let r = o.sym_parts().parts().to_vec();

    // stage one: split each row block into unit rows
    let mut unit_rows: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n);
    for i in 0..o.rows() {
        let p_i = o.row_parts().parts()[i];
        let mut remaining: Vec<Vec<usize>> = (0..v).map(|j| o.cell(i, j).to_vec()).collect();
        for rep in 0..p_i {
            if rep + 1 == p_i {
                unit_rows.push(remaining);
                break;
            }
            let x = FlowProblem::new(q.clone(), r.clone(), remaining.clone()).solve()?;
            for j in 0..v {
                for l in 0..t {
                    remaining[j][l] -= x[j][l];
                }
            }
            unit_rows.push(x);
        }
    }

    // stage two: split each column block into unit columns; grid[row][col]
    // ends up holding a single symbol class per cell
    let mut grid = vec![vec![usize::MAX; n]; n];
    let mut col_base = 0;
    for j in 0..v {
        let q_j = q[j];
        let mut remaining: Vec<Vec<usize>> =
            (0..n).map(|row| unit_rows[row][j].clone()).collect();
        let ones = vec![1usize; n];
        for rep in 0..q_j {
            let x = if rep + 1 == q_j {
                remaining.clone()
            } else {
                let x = FlowProblem::new(ones.clone(), r.clone(), remaining.clone()).solve()?;
                for row in 0..n {
                    for l in 0..t {
                        remaining[row][l] -= x[row][l];
                    }
                }
                x
            };
            for (row, counts) in x.iter().enumerate() {
                let class = counts.iter().position(|&c| c == 1)?;
                grid[row][col_base + rep] = class;
            }
        }
        col_base += q_j;
    }

    // stage three: split each class into perfect matchings, one per symbol
    let sym_blocks = o.sym_parts().blocks();
    let mut entries = vec![0usize; n * n];
    for l in 0..t {
        let occ: Vec<Vec<usize>> = (0..n)
            .map(|row| {
                (0..n)
                    .map(|col| usize::from(grid[row][col] == l))
                    .collect()
            })
            .collect();
        let rounds = regular_decomposition(occ, r[l])?;
        let start = sym_blocks.interval(l).start;
        for (k, round) in rounds.iter().enumerate() {
            for (row, &col) in round.iter().enumerate() {
                entries[row * n + col] = start + k + 1;
            }
        }
    }

    let mut square = LatinHypercube::from_entries(2, n, entries).ok()?;
    if let Some(perm) = unshuffle {
        // shuffled class l is original class perm[l]; move each shuffled
        // symbol interval onto the original one, preserving interior order
        let shuf_blocks = o.sym_parts().blocks();
        let mut sym_map = vec![0usize; n + 1];
        for l in 0..t {
            let src = shuf_blocks.interval(l);
            let dst = orig_sym_blocks.interval(perm[l]);
            debug_assert_eq!(src.len(), dst.len());
            for (off, s) in src.enumerate() {
                sym_map[s + 1] = dst.start + off + 1;
            }
        }
        let entries: Vec<usize> = square.entries().iter().map(|&v| sym_map[v]).collect();
        square = LatinHypercube::from_entries(2, n, entries).ok()?;
    }
    Some(square)
}

/// Last-resort realization for tiny orders: cell-by-cell backtracking with
/// per-cell class budgets taken from the outline.
fn realize_by_search(o: &OutlineRectangle) -> Option<LatinHypercube> {
    let n = o.order();
    let rb = o.row_parts().blocks();
    let cb = o.col_parts().blocks();
    let sb = o.sym_parts().blocks();
    let class_of: Vec<usize> = (1..=n).map(|s| sb.block_of_symbol(s)).collect();

    let mut rem: Vec<Vec<Vec<usize>>> = (0..o.rows())
        .map(|i| (0..o.cols()).map(|j| o.cell(i, j).to_vec()).collect())
        .collect();
    let mut row_used = vec![0u64; n];
    let mut col_used = vec![0u64; n];
    let mut entries = vec![0usize; n * n];

    fn dfs(
        cell: usize,
        n: usize,
        rb: &crate::partition::BlockStructure,
        cb: &crate::partition::BlockStructure,
        class_of: &[usize],
        rem: &mut Vec<Vec<Vec<usize>>>,
        row_used: &mut [u64],
        col_used: &mut [u64],
        entries: &mut [usize],
    ) -> bool {
        if cell == n * n {
            return true;
        }
        let (row, col) = (cell / n, cell % n);
        let (bi, bj) = (rb.block_of_cell(row), cb.block_of_cell(col));
        for s in 1..=n {
            let bit = 1u64 << (s - 1);
            let class = class_of[s - 1];
            if row_used[row] & bit != 0 || col_used[col] & bit != 0 || rem[bi][bj][class] == 0
            {
                continue;
            }
            row_used[row] |= bit;
            col_used[col] |= bit;
            rem[bi][bj][class] -= 1;
            entries[cell] = s;
            if dfs(cell + 1, n, rb, cb, class_of, rem, row_used, col_used, entries) {
                return true;
            }
            row_used[row] &= !bit;
            col_used[col] &= !bit;
            rem[bi][bj][class] += 1;
        }
        false
    }

    if dfs(
        0,
        n,
        &rb,
        &cb,
        &class_of,
        &mut rem,
        &mut row_used,
        &mut col_used,
        &mut entries,
    ) {
        LatinHypercube::from_entries(2, n, entries).ok()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{parse_composition, parse_partition};
    use crate::verify::{reduce_square, verify_realization};

    #[test]
    fn template_params_range() {
        assert!(OutlineTemplateParams::new(3, 2, 3).is_ok());
        assert!(OutlineTemplateParams::new(4, 2, 3).is_err()); // a = 2b
        assert!(OutlineTemplateParams::new(2, 2, 3).is_err()); // a = b
        let t = OutlineTemplateParams::new(5, 2, 4).unwrap();
        assert_eq!((t.c, t.d), (2, 2));
        assert_eq!(t.c + t.d, t.b * t.b);
    }

    #[test]
    fn ab2_template_cells_for_a3_b2() {
        let o = build_outline_ab2(3, 2).unwrap();
        // cell (1,1): b(2b-a) = 2 copies of 1, b(a-b) = 2 copies of 2
        assert_eq!(o.cell(0, 0), &[2, 2, 0, 0]);
        // cell (1,3): b^2 = 4 copies of 3
        assert_eq!(o.cell(0, 2), &[0, 0, 4, 0]);
        // cell (2,2): (a-b)^2 = 1 copy of 2
        assert_eq!(o.cell(1, 1), &[0, 1, 0, 0]);
        validate_outline_rectangle(&o).unwrap();
    }

    #[test]
    fn ab2_template_corner_for_a4_b3() {
        let o = build_outline_ab2(4, 3).unwrap();
        // cell (4,4): b^2 = 9 copies of symbol 1
        assert_eq!(o.cell(3, 3), &[9, 0, 0, 0]);
        validate_outline_rectangle(&o).unwrap();
    }

    #[test]
    fn abn_template_cells_for_a5_b2_n4() {
        let o = build_outline_abn(5, 2, 4).unwrap();
        // bottom-right quadrant cell (1,3): 2 copies of symbol 3, 2 of symbol 4
        let nu = 3;
        assert_eq!(o.count(nu + 0, nu + 2, 2), 2);
        assert_eq!(o.count(nu + 0, nu + 2, 3), 2);
        // top-right quadrant cell (3,1): c = 2 copies of symbol 5
        assert_eq!(o.count(2, nu + 0, 4), 2);
        assert_eq!(o.cell(2, nu + 0).iter().sum::<usize>(), 2);
        validate_outline_rectangle(&o).unwrap();
    }

    #[test]
    fn abn_rejects_small_n() {
        assert!(build_outline_abn(3, 2, 3).is_err());
    }

    #[test]
    fn diagonal_outline_cyclic_three() {
        let p = parse_partition("1^3").unwrap();
        let o = build_outline_diagonal(&p).unwrap();
        validate_outline_rectangle(&o).unwrap();
        for i in 0..3 {
            assert_eq!(o.count(i, i, i), 1);
        }
        let sq = realize_outline_rectangle(&o).unwrap();
        verify_realization(&sq, &p).unwrap();
    }

    #[test]
    fn diagonal_outline_two_blocks_infeasible() {
        let p = parse_partition("1^2").unwrap();
        assert!(build_outline_diagonal(&p).is_none());
    }

    #[test]
    fn diagonal_outline_2_1_1_1() {
        let p = parse_partition("2 1 1 1").unwrap();
        let o = build_outline_diagonal(&p).unwrap();
        validate_outline_rectangle(&o).unwrap();
        let sq = realize_outline_rectangle(&o).unwrap();
        verify_realization(&sq, &p).unwrap();
        let comp = Composition::from(&p);
        assert_eq!(reduce_square(&sq, &comp, &comp, &comp).unwrap(), o);
    }

    #[test]
    fn realize_round_trips_singleton_outline() {
        let l = LatinHypercube::cyclic(2, 5);
        let one = Composition::singletons(5);
        let o = reduce_square(&l, &one, &one, &one).unwrap();
        let sq = realize_outline_rectangle(&o).unwrap();
        assert_eq!(sq, l);
    }

    #[test]
    fn realize_ab2_round_trip_and_order() {
        let o = build_outline_ab2(3, 2).unwrap();
        let sq = realize_outline_rectangle(&o).unwrap();
        assert_eq!(sq.order(), 7);
        let back = reduce_square(
            &sq,
            o.row_parts(),
            o.col_parts(),
            o.sym_parts(),
        )
        .unwrap();
        assert_eq!(back, o);
        let p = parse_partition("3 2 2").unwrap();
        crate::verify::verify_top_structure(&sq, &p).unwrap();
    }

    #[test]
    fn realize_rejects_invalid_outline() {
        let p = parse_composition("2 2 1").unwrap();
        let q = parse_composition("4 1").unwrap();
        let r = parse_composition("2 1 1 1").unwrap();
        let o = OutlineRectangle::empty(p, q, r).unwrap();
        assert!(realize_outline_rectangle(&o).is_err());
    }
}
