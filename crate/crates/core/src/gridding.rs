use alloc::vec;
use alloc::vec::Vec;

use crate::contain::first_embedding;
use crate::matrix::{Cell, GriddingMatrix};
use crate::{Embedding, Error, Perm};

/// A permutation with a cell for each position, realisable by grid lines.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GriddedPerm {
    matrix: GriddingMatrix,
    perm: Perm,
    cells: Vec<Cell>,
}

impl GriddedPerm {
    pub fn new(matrix: GriddingMatrix, perm: Perm, cells: Vec<Cell>) -> Result<Self, Error> {
        if cells.len() != perm.len() {
            return Err(Error::IndexOutOfRange { index: cells.len(), len: perm.len() });
        }
        let g = GriddedPerm { matrix, perm, cells };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn new_unchecked(matrix: GriddingMatrix, perm: Perm, cells: Vec<Cell>) -> Self {
        let g = GriddedPerm { matrix, perm, cells };
        debug_assert_eq!(g.validate(), Ok(()));
        g
    }

    pub fn empty(matrix: GriddingMatrix) -> Self {
        GriddedPerm { matrix, perm: Perm::empty(), cells: Vec::new() }
    }

    fn validate(&self) -> Result<(), Error> {
        let m = &self.matrix;
        for &c in &self.cells {
            if c.col >= m.cols() || c.row >= m.rows() {
                return Err(Error::IndexOutOfRange { index: c.col.max(c.row), len: m.cols().max(m.rows()) });
            }
            if m.get(c) == 0 {
                return Err(Error::ZeroCell(c));
            }
        }
        if self.cells.windows(2).any(|w| w[0].col > w[1].col) {
            return Err(Error::NotStaircase);
        }
        let inv = self.perm.inverse();
        let by_value: Vec<Cell> = inv.values().iter().map(|&p| self.cells[p]).collect();
        if by_value.windows(2).any(|w| w[0].row > w[1].row) {
            return Err(Error::NotStaircase);
        }
        let mut last: Vec<Option<usize>> = vec![None; m.cols() * m.rows()];
        for (v, &p) in inv.values().iter().enumerate() {
            let c = by_value[v];
            let slot = &mut last[c.col * m.rows() + c.row];
            if let Some(q) = *slot {
                if (m.get(c) == 1) != (p > q) {
                    return Err(Error::NotMonotone(c));
                }
            }
            *slot = Some(p);
        }
        Ok(())
    }

    pub fn matrix(&self) -> &GriddingMatrix {
        &self.matrix
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn cell_of(&self, position: usize) -> Cell {
        self.cells[position]
    }

    /// Same points and cells over another matrix with the same entries,
    /// e.g. one carrying row and column sequences.
    pub fn with_matrix(&self, matrix: GriddingMatrix) -> Result<Self, Error> {
        if !matrix.same_entries(&self.matrix) {
            return Err(Error::MatrixMismatch);
        }
        Ok(GriddedPerm { matrix, perm: self.perm.clone(), cells: self.cells.clone() })
    }

    /// Cut positions: `v[i]` points lie in columns `0..=i`, `h[j]` in rows `0..=j`.
    pub fn cuts(&self) -> (Vec<usize>, Vec<usize>) {
        let m = &self.matrix;
        let v = (0..m.cols() - 1).map(|i| self.cells.iter().filter(|c| c.col <= i).count()).collect();
        let h = (0..m.rows() - 1).map(|j| self.cells.iter().filter(|c| c.row <= j).count()).collect();
        (v, h)
    }

    /// The gridded subpermutation on the given positions, in increasing order.
    pub fn restrict(&self, positions: &[usize]) -> GriddedPerm {
        let mut positions = positions.to_vec();
        positions.sort_unstable();
        positions.dedup();
        GriddedPerm {
            matrix: self.matrix.clone(),
            perm: self.perm.pattern_at(&positions),
            cells: positions.iter().map(|&p| self.cells[p]).collect(),
        }
    }

    pub fn delete_point(&self, index: usize) -> Result<GriddedPerm, Error> {
        let perm = self.perm.delete_point(index)?;
        let mut cells = self.cells.clone();
        cells.remove(index);
        Ok(GriddedPerm { matrix: self.matrix.clone(), perm, cells })
    }

    /// Positions of the points lying in `cell`, left to right.
    pub fn points_in(&self, cell: Cell) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.cells[p] == cell).collect()
    }
}

/// Grids `perm` by cut positions: `v_cuts` has `cols - 1` weakly increasing
/// entries in `0..=len`, a cut after that many positions; likewise `h_cuts` for values.
pub fn make_gridded(perm: &Perm, m: &GriddingMatrix, v_cuts: &[usize], h_cuts: &[usize]) -> Result<GriddedPerm, Error> {
    let n = perm.len();
    let check = |cuts: &[usize], want: usize| {
        if cuts.len() != want {
            return Err(Error::BadCuts("wrong number of cuts"));
        }
        if cuts.windows(2).any(|w| w[0] > w[1]) || cuts.iter().any(|&c| c > n) {
            return Err(Error::BadCuts("cuts must be weakly increasing within the length"));
        }
        Ok(())
    };
    check(v_cuts, m.cols() - 1)?;
    check(h_cuts, m.rows() - 1)?;
    let cells = (0..n)
        .map(|p| {
            let col = v_cuts.iter().filter(|&&c| c <= p).count();
            let row = h_cuts.iter().filter(|&&c| c <= perm.values()[p]).count();
            Cell::new(col, row)
        })
        .collect();
    GriddedPerm::new(m.clone(), perm.clone(), cells)
}

/// Weakly increasing tuples over `0..=max` of length `k`, lexicographically.
fn cut_tuples(k: usize, max: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = Some(vec![0; k]);
    core::iter::from_fn(move || {
        let cur = next.take()?;
        let mut t = cur.clone();
        if let Some(i) = (0..k).rev().find(|&i| t[i] < max) {
            let v = t[i] + 1;
            for x in &mut t[i..] {
                *x = v;
            }
            next = Some(t);
        }
        Some(cur)
    })
}

struct RowSearch<'a> {
    m: &'a GriddingMatrix,
    inv: Vec<usize>,
    col_of: Vec<usize>,
    row_of: Vec<usize>,
    last_in_cell: Vec<Option<usize>>,
}

impl RowSearch<'_> {
    fn go<F: FnMut(&[usize], &[usize]) -> bool>(&mut self, v: usize, min_row: usize, visit: &mut F) -> bool {
        if v == self.inv.len() {
            return visit(&self.col_of, &self.row_of);
        }
        let p = self.inv[v];
        let col = self.col_of[p];
        for row in min_row..self.m.rows() {
            let cell = Cell::new(col, row);
            let e = self.m.get(cell);
            if e == 0 {
                continue;
            }
            let slot = col * self.m.rows() + row;
            let prev = self.last_in_cell[slot];
            if prev.is_some_and(|q| (e == 1) != (p > q)) {
                continue;
            }
            self.row_of[p] = row;
            self.last_in_cell[slot] = Some(p);
            let stop = self.go(v + 1, row, visit);
            self.last_in_cell[slot] = prev;
            if stop {
                return true;
            }
        }
        false
    }
}

/// Visits every gridding whose vertical cut tuple has index `≡ part (mod parts)`;
/// `visit` returns `true` to stop early. Returns whether it stopped.
pub fn for_each_gridding<F: FnMut(GriddedPerm) -> bool>(
    perm: &Perm,
    m: &GriddingMatrix,
    part: usize,
    parts: usize,
    mut visit: F,
) -> bool {
    let n = perm.len();
    let inv = perm.inverse().values().to_vec();
    for (t, cuts) in cut_tuples(m.cols() - 1, n).enumerate() {
        if t % parts.max(1) != part {
            continue;
        }
        let col_of: Vec<usize> = (0..n).map(|p| cuts.iter().filter(|&&c| c <= p).count()).collect();
        let mut search = RowSearch {
            m,
            inv: inv.clone(),
            col_of,
            row_of: vec![0; n],
            last_in_cell: vec![None; m.cols() * m.rows()],
        };
        let stopped = search.go(0, 0, &mut |cols: &[usize], rows: &[usize]| {
            let cells = (0..n).map(|p| Cell::new(cols[p], rows[p])).collect();
            visit(GriddedPerm::new_unchecked(m.clone(), perm.clone(), cells))
        });
        if stopped {
            return true;
        }
    }
    false
}

/// Every distinct M-gridding of `perm`.
pub fn enumerate_griddings(perm: &Perm, m: &GriddingMatrix) -> Vec<GriddedPerm> {
    enumerate_griddings_part(perm, m, 0, 1)
}

/// The share of `enumerate_griddings` belonging to one of `parts` disjoint partitions.
pub fn enumerate_griddings_part(perm: &Perm, m: &GriddingMatrix, part: usize, parts: usize) -> Vec<GriddedPerm> {
    let mut out = Vec::new();
    for_each_gridding(perm, m, part, parts, |g| {
        out.push(g);
        false
    });
    out
}

pub fn count_griddings(perm: &Perm, m: &GriddingMatrix) -> usize {
    let mut count = 0;
    for_each_gridding(perm, m, 0, 1, |_| {
        count += 1;
        false
    });
    count
}

/// Some gridding of `perm`, or `None` when `perm` is not in the grid class.
pub fn member(perm: &Perm, m: &GriddingMatrix) -> Option<GriddedPerm> {
    let mut found = None;
    for_each_gridding(perm, m, 0, 1, |g| {
        found = Some(g);
        true
    });
    found
}

/// Containment mapping every pattern point into a host point of the same cell.
pub fn gridded_contains(pattern: &GriddedPerm, host: &GriddedPerm) -> Result<Option<Embedding>, Error> {
    if !pattern.matrix.same_entries(&host.matrix) {
        return Err(Error::MatrixMismatch);
    }
    Ok(first_embedding(&pattern.perm, &host.perm, |k, h| pattern.cells[k] == host.cells[h]))
}

fn multiset_orders(counts: &[usize]) -> Vec<Vec<usize>> {
    fn go(counts: &mut [usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for s in 0..counts.len() {
            if counts[s] > 0 {
                counts[s] -= 1;
                cur.push(s);
                go(counts, left - 1, cur, out);
                cur.pop();
                counts[s] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let total = counts.iter().sum();
    go(&mut counts.to_vec(), total, &mut Vec::new(), &mut out);
    out
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every gridded permutation of length `len` over `m`, generated directly
/// from cell counts and the interleavings of cells along each line.
pub fn gridded_of_length(m: &GriddingMatrix, len: usize) -> Vec<GriddedPerm> {
    let cells = m.nonzero_cells();
    let mut out = Vec::new();
    for counts in compositions(len, cells.len()) {
        let mut lines: Vec<(Vec<usize>, Vec<Vec<usize>>)> = Vec::new();
        for col in 0..m.cols() {
            let members: Vec<usize> = (0..cells.len()).filter(|&k| cells[k].col == col).collect();
            let c: Vec<usize> = members.iter().map(|&k| counts[k]).collect();
            lines.push((members, multiset_orders(&c)));
        }
        for row in 0..m.rows() {
            let members: Vec<usize> = (0..cells.len()).filter(|&k| cells[k].row == row).collect();
            let c: Vec<usize> = members.iter().map(|&k| counts[k]).collect();
            lines.push((members, multiset_orders(&c)));
        }
        let mut choice = vec![0usize; lines.len()];
        loop {
            let mut pos_of: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
            let mut val_of: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
            let mut p = 0;
            let mut v = 0;
            for (l, (members, orders)) in lines.iter().enumerate() {
                for &s in &orders[choice[l]] {
                    let k = members[s];
                    if l < m.cols() {
                        pos_of[k].push(p);
                        p += 1;
                    } else {
                        val_of[k].push(v);
                        v += 1;
                    }
                }
            }
            let mut values = vec![0; len];
            let mut cell_of = vec![Cell::new(0, 0); len];
            for k in 0..cells.len() {
                let c = counts[k];
                for t in 0..c {
                    let u = if m.get(cells[k]) == 1 { t } else { c - 1 - t };
                    values[pos_of[k][t]] = val_of[k][u];
                    cell_of[pos_of[k][t]] = cells[k];
                }
            }
            out.push(GriddedPerm::new_unchecked(m.clone(), Perm::from_vec_unchecked(values), cell_of));
            let mut l = 0;
            while l < lines.len() {
                choice[l] += 1;
                if choice[l] < lines[l].1.len() {
                    break;
                }
                choice[l] = 0;
                l += 1;
            }
            if l == lines.len() {
                break;
            }
        }
    }
    out
}
