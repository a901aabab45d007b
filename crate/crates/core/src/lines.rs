use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::{Cell, GriddingMatrix, Line};
use crate::{Error, GriddedPerm, Perm};

/// Points kept as one orientation-ordered list per grid line.
#[derive(Clone, Debug)]
pub(crate) struct LineOrders {
    cols: Vec<Vec<usize>>,
    rows: Vec<Vec<usize>>,
    pub(crate) cell: Vec<Cell>,
}

impl LineOrders {
    pub(crate) fn new(m: &GriddingMatrix) -> Self {
        LineOrders { cols: vec![Vec::new(); m.cols()], rows: vec![Vec::new(); m.rows()], cell: Vec::new() }
    }

    /// Point ids are positions of `g`.
    pub(crate) fn from_gridded(g: &GriddedPerm) -> Result<Self, Error> {
        let m = g.matrix();
        let mut lines = Self::new(m);
        lines.cell = g.cells().to_vec();
        let inv = g.perm().inverse();
        for p in 0..g.len() {
            lines.cols[g.cell_of(p).col].push(p);
        }
        for &p in inv.values() {
            lines.rows[g.cell_of(p).row].push(p);
        }
        for i in 0..m.cols() {
            if m.orientation(Line::Col(i))? < 0 {
                lines.cols[i].reverse();
            }
        }
        for j in 0..m.rows() {
            if m.orientation(Line::Row(j))? < 0 {
                lines.rows[j].reverse();
            }
        }
        Ok(lines)
    }

    pub(crate) fn line(&self, line: Line) -> &Vec<usize> {
        match line {
            Line::Col(i) => &self.cols[i],
            Line::Row(j) => &self.rows[j],
        }
    }

    pub(crate) fn line_mut(&mut self, line: Line) -> &mut Vec<usize> {
        match line {
            Line::Col(i) => &mut self.cols[i],
            Line::Row(j) => &mut self.rows[j],
        }
    }

    /// Registers a new point in `cell` without placing it in any line.
    pub(crate) fn add_point(&mut self, cell: Cell) -> usize {
        self.cell.push(cell);
        self.cell.len() - 1
    }

    pub(crate) fn index_in(&self, line: Line, id: usize) -> usize {
        self.line(line).iter().position(|&x| x == id).expect("point on line")
    }

    /// Realises the line orders; returns the gridded permutation and each id's position.
    pub(crate) fn realise(&self, m: &GriddingMatrix) -> Result<(GriddedPerm, Vec<usize>), Error> {
        let n = self.cell.len();
        let mut pos = vec![usize::MAX; n];
        let mut val = vec![usize::MAX; n];
        let mut next = 0;
        for i in 0..m.cols() {
            let mut order = self.cols[i].clone();
            if m.orientation(Line::Col(i))? < 0 {
                order.reverse();
            }
            for id in order {
                pos[id] = next;
                next += 1;
            }
        }
        next = 0;
        for j in 0..m.rows() {
            let mut order = self.rows[j].clone();
            if m.orientation(Line::Row(j))? < 0 {
                order.reverse();
            }
            for id in order {
                val[id] = next;
                next += 1;
            }
        }
        let mut values = vec![0; n];
        let mut cells = vec![Cell::new(0, 0); n];
        for id in 0..n {
            if pos[id] == usize::MAX || val[id] == usize::MAX {
                return Err(Error::Internal("point missing from a line"));
            }
            values[pos[id]] = val[id];
            cells[pos[id]] = self.cell[id];
        }
        let g = GriddedPerm::new(m.clone(), Perm::from_zero_based(values)?, cells)?;
        Ok((g, pos))
    }
}
