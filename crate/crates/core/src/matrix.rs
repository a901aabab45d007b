use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::graph::{classify, pmm_sequences, MatrixClass};
use crate::Error;

/// A cell `(col, row)`, counted from the lower-left corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub col: usize,
    pub row: usize,
}

impl Cell {
    pub const fn new(col: usize, row: usize) -> Self {
        Cell { col, row }
    }
}

/// A column or a row of the grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Line {
    Col(usize),
    Row(usize),
}

impl Line {
    /// The line shared by two distinct cells, if they share one.
    pub fn between(a: Cell, b: Cell) -> Option<Line> {
        if a == b {
            None
        } else if a.col == b.col {
            Some(Line::Col(a.col))
        } else if a.row == b.row {
            Some(Line::Row(a.row))
        } else {
            None
        }
    }
}

/// Column and row sign sequences with `c[i] * r[j] == M(i, j)` on every nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pmm {
    pub cols: Vec<i8>,
    pub rows: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GriddingMatrix {
    cols: usize,
    rows: usize,
    entries: Vec<i8>,
    pmm: Option<Pmm>,
}

impl GriddingMatrix {
    pub fn zeros(cols: usize, rows: usize) -> Result<Self, Error> {
        if cols == 0 || rows == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(GriddingMatrix { cols, rows, entries: vec![0; cols * rows], pmm: None })
    }

    /// Rows listed bottom-to-top, each left-to-right.
    pub fn from_rows_bottom_up(rows: &[&[i8]]) -> Result<Self, Error> {
        let width = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(width, rows.len())?;
        for (j, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::RaggedMatrix);
            }
            for (i, &e) in row.iter().enumerate() {
                m.set(Cell::new(i, j), e)?;
            }
        }
        Ok(m)
    }

    /// Rows listed top-to-bottom, the way matrices are printed.
    pub fn from_rows_top_down(rows: &[&[i8]]) -> Result<Self, Error> {
        let flipped: Vec<&[i8]> = rows.iter().rev().copied().collect();
        Self::from_rows_bottom_up(&flipped)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn get(&self, cell: Cell) -> i8 {
        if cell.col >= self.cols || cell.row >= self.rows {
            return 0;
        }
        self.entries[cell.col * self.rows + cell.row]
    }

    pub fn set(&mut self, cell: Cell, entry: i8) -> Result<(), Error> {
        if !(-1..=1).contains(&entry) {
            return Err(Error::IllegalEntry(entry.to_string()));
        }
        if cell.col >= self.cols || cell.row >= self.rows {
            return Err(Error::IndexOutOfRange { index: cell.col.max(cell.row), len: self.cols.max(self.rows) });
        }
        self.entries[cell.col * self.rows + cell.row] = entry;
        self.pmm = None;
        Ok(())
    }

    /// Nonzero cells in lexicographic `(col, row)` order.
    pub fn nonzero_cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for col in 0..self.cols {
            for row in 0..self.rows {
                if self.entries[col * self.rows + row] != 0 {
                    out.push(Cell::new(col, row));
                }
            }
        }
        out
    }

    pub fn pmm(&self) -> Option<&Pmm> {
        self.pmm.as_ref()
    }

    /// Attaches sign sequences after checking that they factor every entry.
    pub fn with_pmm(mut self, pmm: Pmm) -> Result<Self, Error> {
        if pmm.cols.len() != self.cols || pmm.rows.len() != self.rows {
            return Err(Error::MissingPmm);
        }
        if pmm.cols.iter().chain(&pmm.rows).any(|s| s.abs() != 1) {
            return Err(Error::IllegalEntry("sign sequence".to_string()));
        }
        for cell in self.nonzero_cells() {
            if pmm.cols[cell.col] * pmm.rows[cell.row] != self.get(cell) {
                return Err(Error::NegativeCycle);
            }
        }
        self.pmm = Some(pmm);
        Ok(self)
    }

    pub fn without_pmm(mut self) -> Self {
        self.pmm = None;
        self
    }

    /// Orientation sign of a line: `+1` is left-to-right or bottom-to-top.
    pub fn orientation(&self, line: Line) -> Result<i8, Error> {
        let pmm = self.pmm.as_ref().ok_or(Error::MissingPmm)?;
        Ok(match line {
            Line::Col(i) => pmm.cols[i],
            Line::Row(j) => pmm.rows[j],
        })
    }

    pub fn same_entries(&self, other: &GriddingMatrix) -> bool {
        self.cols == other.cols && self.rows == other.rows && self.entries == other.entries
    }
}

fn parse_entry(token: &str) -> Result<i8, Error> {
    match token {
        "1" | "+1" => Ok(1),
        "0" => Ok(0),
        "-1" | "\u{2212}1" => Ok(-1),
        _ => Err(Error::IllegalEntry(token.to_string())),
    }
}

impl FromStr for GriddingMatrix {
    type Err = Error;

    /// Rows top-to-bottom, separated by newlines or `/`; `#` starts a comment.
    fn from_str(text: &str) -> Result<Self, Error> {
        let mut rows: Vec<Vec<i8>> = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for chunk in line.split('/') {
                let entries = chunk
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(parse_entry)
                    .collect::<Result<Vec<_>, _>>()?;
                if !entries.is_empty() {
                    rows.push(entries);
                }
            }
        }
        let refs: Vec<&[i8]> = rows.iter().map(|r| r.as_slice()).collect();
        Self::from_rows_top_down(&refs)
    }
}

impl fmt::Display for GriddingMatrix {
    /// Rows top-to-bottom with aligned columns.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in (0..self.rows).rev() {
            let line: Vec<String> =
                (0..self.cols).map(|col| alloc::format!("{:>2}", self.get(Cell::new(col, row)))).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// The doubled matrix: each `+1` becomes a 2x2 identity block and each `-1`
/// an anti-identity block, so rows and columns split in two.
pub fn double(m: &GriddingMatrix) -> GriddingMatrix {
    let mut d = GriddingMatrix::zeros(2 * m.cols, 2 * m.rows).expect("nonempty");
    for cell in m.nonzero_cells() {
        let (i, j) = (2 * cell.col, 2 * cell.row);
        let e = m.get(cell);
        if e == 1 {
            d.entries[i * d.rows + j] = 1;
            d.entries[(i + 1) * d.rows + j + 1] = 1;
        } else {
            d.entries[i * d.rows + j + 1] = -1;
            d.entries[(i + 1) * d.rows + j] = -1;
        }
    }
    d
}

/// Returns a partial multiplication matrix with the same grid class, doubling
/// when `m` has a negative cycle. The flag reports whether doubling happened.
pub fn normalize_to_pmm(m: &GriddingMatrix) -> Result<(GriddingMatrix, bool), Error> {
    let class = classify(m);
    if class == MatrixClass::Polycyclic {
        return Err(Error::UnsupportedClass(class));
    }
    match pmm_sequences(m) {
        Ok(pmm) => Ok((m.clone().with_pmm(pmm)?, false)),
        Err(_) => {
            let d = double(m);
            let pmm = pmm_sequences(&d).map_err(|_| Error::Internal("doubling left a negative cycle"))?;
            Ok((d.with_pmm(pmm)?, true))
        }
    }
}
