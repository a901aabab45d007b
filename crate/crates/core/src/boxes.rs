use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::coil::{label_at, Chirality};
use crate::digraph::{is_indivisible, last_points, orientation_digraph};
use crate::graph::{classify, cycles, pmm_sequences, CycleDescriptor, MatrixClass};
use crate::lines::LineOrders;
use crate::matrix::{Cell, GriddingMatrix, Line};
use crate::{Error, GriddedPerm};

/// Breadth-first layers `B_1..B_k` of an indivisible gridded permutation
/// from a seed point, each layer inside one cell of the cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoilDecomposition {
    pub cycle: CycleDescriptor,
    pub seed: usize,
    /// Positions in each box, in increasing order.
    pub boxes: Vec<Vec<usize>>,
    /// Cycle label of each box's cell.
    pub labels: Vec<usize>,
    pub chirality: Chirality,
    /// Position of the first point, in orientation, of each box.
    pub coil: Vec<usize>,
}

impl CoilDecomposition {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn cell(&self, t: usize) -> Cell {
        self.cycle.cells[self.labels[t]]
    }

    /// The associated coil points as a gridded subpermutation, when `k > ℓ`.
    pub fn associated_coil(&self, g: &GriddedPerm) -> Option<GriddedPerm> {
        (self.len() > self.cycle.len()).then(|| g.restrict(&self.coil))
    }
}

/// Which clause makes a decomposition good.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoodCase {
    /// The first ℓ boxes are singletons.
    SingletonPrefix,
    /// Box `ℓ + 1` has at least two points.
    WideAfterCycle,
    /// Some non-first point of a box `i ≤ ℓ` points at `v_{i+1}`.
    EdgeToNext,
}

fn cyclic_setup(g: &GriddedPerm) -> Result<CycleDescriptor, Error> {
    let m = g.matrix();
    let class = classify(m);
    if class != MatrixClass::Cyclic {
        return Err(Error::UnsupportedClass(class));
    }
    if m.pmm().is_none() {
        return Err(Error::MissingPmm);
    }
    if g.len() < 2 || !is_indivisible(g)? {
        return Err(Error::NotIndivisible);
    }
    Ok(cycles(m)?.remove(0))
}

fn first_in_cell(m: &GriddingMatrix, cell: Cell, pts: &[usize]) -> Result<usize, Error> {
    Ok(if m.orientation(Line::Col(cell.col))? > 0 { pts[0] } else { pts[pts.len() - 1] })
}

/// Layers from `seed`, which must be the last point of its cell.
pub fn coil_decomposition(g: &GriddedPerm, seed: usize) -> Result<CoilDecomposition, Error> {
    let cycle = cyclic_setup(g)?;
    decompose_from(g, &cycle, seed)
}

fn decompose_from(g: &GriddedPerm, cycle: &CycleDescriptor, seed: usize) -> Result<CoilDecomposition, Error> {
    let m = g.matrix();
    if !last_points(g)?.iter().any(|&(_, p)| p == seed) {
        return Err(Error::InvalidSeed);
    }
    let d = orientation_digraph(g)?;
    let mut dist = vec![usize::MAX; g.len()];
    dist[seed] = 0;
    let mut queue = VecDeque::from([seed]);
    while let Some(u) = queue.pop_front() {
        for &w in d.successors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if dist.contains(&usize::MAX) {
        return Err(Error::NotIndivisible);
    }
    let k = dist.iter().max().unwrap() + 1;
    let mut boxes = vec![Vec::new(); k];
    for (p, &t) in dist.iter().enumerate() {
        boxes[t].push(p);
    }
    let mut labels = Vec::with_capacity(k);
    for b in &boxes {
        let cell = g.cell_of(b[0]);
        if b.iter().any(|&p| g.cell_of(p) != cell) {
            return Err(Error::LayersOffCycle);
        }
        labels.push(cycle.label_of(cell).ok_or(Error::LayersOffCycle)?);
    }
    let l = cycle.len();
    let chirality = if labels[1] == (labels[0] + 1) % l { Chirality::A } else { Chirality::B };
    if (0..k).any(|t| labels[t] != label_at(l, labels[0], chirality, t)) {
        return Err(Error::LayersOffCycle);
    }
    let coil = (0..k).map(|t| first_in_cell(m, cycle.cells[labels[t]], &boxes[t])).collect::<Result<Vec<_>, _>>()?;
    Ok(CoilDecomposition { cycle: cycle.clone(), seed, boxes, labels, chirality, coil })
}

/// The decomposition seeded at the last point of the least nonempty cycle cell.
pub fn default_coil_decomposition(g: &GriddedPerm) -> Result<CoilDecomposition, Error> {
    let cycle = cyclic_setup(g)?;
    let (_, seed) = *last_points(g)?.first().ok_or(Error::Empty)?;
    decompose_from(g, &cycle, seed)
}

pub fn good_case(g: &GriddedPerm, dec: &CoilDecomposition) -> Result<Option<GoodCase>, Error> {
    let l = dec.cycle.len();
    let k = dec.len();
    if dec.boxes.iter().take(l).all(|b| b.len() == 1) {
        return Ok(Some(GoodCase::SingletonPrefix));
    }
    if k > l && dec.boxes[l].len() >= 2 {
        return Ok(Some(GoodCase::WideAfterCycle));
    }
    let d = orientation_digraph(g)?;
    for i in 0..l.min(k - 1) {
        if dec.boxes[i].iter().any(|&x| x != dec.coil[i] && d.has_edge(x, dec.coil[i + 1])) {
            return Ok(Some(GoodCase::EdgeToNext));
        }
    }
    Ok(None)
}

/// A coil decomposition satisfying one of the three good clauses, trying
/// every cycle cell's last point as seed in label order. A seed giving a
/// singleton prefix is preferred.
pub fn good_coil_decomposition(g: &GriddedPerm) -> Result<(CoilDecomposition, GoodCase), Error> {
    let cycle = cyclic_setup(g)?;
    let lasts = last_points(g)?;
    let mut fallback = None;
    for &cell in &cycle.cells {
        let Some(&(_, seed)) = lasts.iter().find(|(c, _)| *c == cell) else {
            continue;
        };
        let Ok(dec) = decompose_from(g, &cycle, seed) else {
            continue;
        };
        match good_case(g, &dec)? {
            Some(GoodCase::SingletonPrefix) => return Ok((dec, GoodCase::SingletonPrefix)),
            Some(case) if fallback.is_none() => fallback = Some((dec, case)),
            _ => {}
        }
    }
    fallback.ok_or(Error::Internal("no seed gives a good coil decomposition"))
}

fn other_line(cell: Cell, shared: Line) -> Line {
    match shared {
        Line::Col(_) => Line::Row(cell.row),
        Line::Row(_) => Line::Col(cell.col),
    }
}

/// Grids the union of consecutive boxes by one path-shaped matrix with a
/// nonzero entry per box. Returns the matrix, the body and each box's cell.
pub(crate) fn regrid_boxes(
    g: &GriddedPerm,
    boxes: &[(Vec<usize>, Cell)],
) -> Result<(GriddingMatrix, GriddedPerm, Vec<Cell>), Error> {
    let m = g.matrix();
    let k = boxes.len();
    let mut groups: Vec<(Line, Vec<usize>)> = Vec::new();
    for t in 0..k.saturating_sub(1) {
        let line = Line::between(boxes[t].1, boxes[t + 1].1).ok_or(Error::LayersOffCycle)?;
        groups.push((line, vec![t, t + 1]));
    }
    let ends: &[usize] = if k == 1 { &[0] } else { &[0, k - 1] };
    for &t in ends {
        let c = boxes[t].1;
        for line in [Line::Col(c.col), Line::Row(c.row)] {
            if !groups.iter().any(|(l, members)| *l == line && members.contains(&t)) {
                groups.push((line, vec![t]));
            }
        }
    }
    let mut col_group = vec![usize::MAX; k];
    let mut row_group = vec![usize::MAX; k];
    for (gi, (line, members)) in groups.iter().enumerate() {
        for &b in members {
            match line {
                Line::Col(_) => col_group[b] = gi,
                Line::Row(_) => row_group[b] = gi,
            }
        }
    }
    if col_group.contains(&usize::MAX) || row_group.contains(&usize::MAX) {
        return Err(Error::LayersOffCycle);
    }
    let coord = |line: Line, p: usize| match line {
        Line::Col(_) => p,
        Line::Row(_) => g.perm().values()[p],
    };
    let mut index_of = vec![0usize; groups.len()];
    for (is_col, count) in [(true, m.cols()), (false, m.rows())] {
        let mut next = 0;
        for x in 0..count {
            let line = if is_col { Line::Col(x) } else { Line::Row(x) };
            let ascending = m.orientation(line)? > 0;
            let mut here: Vec<(isize, isize, usize)> = Vec::new();
            for (gi, (gl, members)) in groups.iter().enumerate() {
                if *gl != line {
                    continue;
                }
                let pts: Vec<isize> =
                    members.iter().flat_map(|&b| boxes[b].0.iter().map(|&p| coord(line, p) as isize)).collect();
                let (lo, hi) = match (pts.iter().min(), pts.iter().max()) {
                    (Some(&lo), Some(&hi)) => (lo, hi),
                    _ if ascending => (-1, -1),
                    _ => (isize::MAX, isize::MAX),
                };
                here.push((lo, hi, gi));
            }
            here.sort();
            if here.windows(2).any(|w| w[0].1 >= w[1].0) {
                return Err(Error::BoxesInterleave);
            }
            for &(_, _, gi) in &here {
                index_of[gi] = next;
                next += 1;
            }
        }
    }
    let n_cols = groups.iter().filter(|(l, _)| matches!(l, Line::Col(_))).count();
    let n_rows = groups.len() - n_cols;
    let mut n = GriddingMatrix::zeros(n_cols, n_rows)?;
    let mut box_cells = Vec::with_capacity(k);
    for (t, (_, cell)) in boxes.iter().enumerate() {
        let nc = Cell::new(index_of[col_group[t]], index_of[row_group[t]]);
        n.set(nc, m.get(*cell))?;
        box_cells.push(nc);
    }
    let pmm = pmm_sequences(&n).map_err(|_| Error::Internal("path matrix with a cycle"))?;
    let n = n.with_pmm(pmm)?;
    let mut points: Vec<(usize, Cell)> =
        boxes.iter().zip(&box_cells).flat_map(|((pts, _), &nc)| pts.iter().map(move |&p| (p, nc))).collect();
    points.sort();
    let positions: Vec<usize> = points.iter().map(|&(p, _)| p).collect();
    let cells = points.iter().map(|&(_, c)| c).collect();
    let body = GriddedPerm::new(n.clone(), g.perm().pattern_at(&positions), cells)?;
    Ok((n, body, box_cells))
}

/// Regrids an indivisible gridded permutation of a cyclic matrix by the
/// boxes of a good coil decomposition: the new row-column graph is a path
/// with one nonzero entry per box.
pub fn regrid_to_acyclic(g: &GriddedPerm) -> Result<(GriddingMatrix, GriddedPerm), Error> {
    let (dec, _) = good_coil_decomposition(g)?;
    regrid_decomposition(g, &dec)
}

pub fn regrid_decomposition(g: &GriddedPerm, dec: &CoilDecomposition) -> Result<(GriddingMatrix, GriddedPerm), Error> {
    let boxes: Vec<(Vec<usize>, Cell)> = (0..dec.len()).map(|t| (dec.boxes[t].clone(), dec.cell(t))).collect();
    let (n, body, _) = regrid_boxes(g, &boxes)?;
    Ok((n, body))
}

/// An indivisible as a body over a path matrix plus leading and trailing
/// coil lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndivisibleCode {
    pub body: GriddedPerm,
    pub a: usize,
    pub b: usize,
    /// `(cell of the body matrix, cell of the original matrix)` per body box, in box order.
    pub box_cells: Vec<(Cell, Cell)>,
    pub matrix: GriddingMatrix,
}

pub fn encode_indivisible(g: &GriddedPerm) -> Result<IndivisibleCode, Error> {
    let m = g.matrix();
    if g.len() == 1 {
        let cell = g.cell_of(0);
        let mut n = GriddingMatrix::zeros(m.cols(), m.rows())?;
        n.set(cell, m.get(cell))?;
        let n = n.clone().with_pmm(pmm_sequences(&n).map_err(|_| Error::Internal("single entry"))?)?;
        let body = GriddedPerm::new(n, g.perm().clone(), g.cells().to_vec())?;
        return Ok(IndivisibleCode { body, a: 0, b: 0, box_cells: vec![(cell, cell)], matrix: m.clone() });
    }
    let (dec, _) = good_coil_decomposition(g)?;
    let k = dec.len();
    let l = dec.cycle.len();
    let wide: Vec<usize> = (0..k).filter(|&t| dec.boxes[t].len() > 1).map(|t| t + 1).collect();
    let (i, j) = match (wide.first(), wide.last()) {
        (Some(&i), Some(&j)) => (i, j),
        _ => (2, 2),
    };
    let mut boxes: Vec<(Vec<usize>, Cell)> =
        (i - 2..(j + 1).min(k)).map(|t| (dec.boxes[t].clone(), dec.cell(t))).collect();
    if j == k {
        let label = label_at(l, dec.labels[0], dec.chirality, k);
        boxes.push((Vec::new(), dec.cycle.cells[label]));
    }
    let (_, body, box_cells) = regrid_boxes(g, &boxes)?;
    let box_cells = box_cells.into_iter().zip(boxes.iter().map(|b| b.1)).collect();
    Ok(IndivisibleCode { body, a: i - 1, b: k - j, box_cells, matrix: m.clone() })
}

pub fn decode_indivisible(code: &IndivisibleCode) -> Result<GriddedPerm, Error> {
    let m = &code.matrix;
    let body = &code.body;
    let to_m = |nc: Cell| code.box_cells.iter().find(|(n, _)| *n == nc).map(|&(_, c)| c).ok_or(Error::InvalidCode);
    let cells = body.cells().iter().map(|&c| to_m(c)).collect::<Result<Vec<_>, _>>()?;
    let base = GriddedPerm::new(m.clone(), body.perm().clone(), cells)?;
    if code.box_cells.len() == 1 {
        return if code.a == 0 && code.b == 0 { Ok(base) } else { Err(Error::InvalidCode) };
    }
    let cycle = cycles(m)?.into_iter().next().ok_or(Error::InvalidCode)?;
    let l = cycle.len();
    let label = |c: Cell| cycle.label_of(c).ok_or(Error::InvalidCode);
    let (first_n, first_m) = code.box_cells[0];
    let (last_n, last_m) = code.box_cells[code.box_cells.len() - 1];
    let l0 = label(first_m)?;
    let chirality = if label(code.box_cells[1].1)? == (l0 + 1) % l { Chirality::A } else { Chirality::B };
    let mut lines = LineOrders::from_gridded(&base)?;
    let single = |nc: Cell| -> Result<Option<usize>, Error> {
        let pts = body.points_in(nc);
        match pts.len() {
            0 => Ok(None),
            1 => Ok(Some(pts[0])),
            _ => Err(Error::InvalidCode),
        }
    };
    let mut cur = single(first_n)?.ok_or(Error::InvalidCode)?;
    let mut cur_label = l0;
    for _ in 1..code.a {
        let new_label = label_at(l, cur_label, chirality, l - 1);
        let cell = cycle.cells[new_label];
        let shared = Line::between(cell, cycle.cells[cur_label]).ok_or(Error::InvalidCode)?;
        let id = lines.add_point(cell);
        lines.line_mut(other_line(cell, shared)).push(id);
        let at = lines.index_in(shared, cur);
        lines.line_mut(shared).insert(at, id);
        cur = id;
        cur_label = new_label;
    }
    if code.b >= 1 {
        let mut cur = single(last_n)?.ok_or(Error::InvalidCode)?;
        let mut cur_label = label(last_m)?;
        for _ in 1..code.b {
            let new_label = label_at(l, cur_label, chirality, 1);
            let cell = cycle.cells[new_label];
            let shared = Line::between(cycle.cells[cur_label], cell).ok_or(Error::InvalidCode)?;
            let id = lines.add_point(cell);
            let at = lines.index_in(shared, cur);
            lines.line_mut(shared).insert(at + 1, id);
            lines.line_mut(other_line(cell, shared)).insert(0, id);
            cur = id;
            cur_label = new_label;
        }
    }
    Ok(lines.realise(m)?.0)
}
