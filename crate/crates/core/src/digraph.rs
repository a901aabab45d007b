use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::coil::{coil_points, Chirality};
use crate::graph::CycleDescriptor;
use crate::lines::LineOrders;
use crate::matrix::{Cell, GriddingMatrix, Line};
use crate::{Error, GriddedPerm, Perm};

/// Points of a gridded permutation (named by position) with an edge `x -> y`
/// whenever `x` precedes `y` along a shared row or column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationDigraph {
    n: usize,
    out: Vec<Vec<usize>>,
}

impl OrientationDigraph {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn successors(&self, x: usize) -> &[usize] {
        &self.out[x]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.out[x].binary_search(&y).is_ok()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|x| self.out[x].iter().map(move |&y| (x, y))).collect()
    }

    pub fn induced(&self, vertices: &[usize]) -> OrientationDigraph {
        let index = |v: usize| vertices.iter().position(|&w| w == v);
        let out = vertices
            .iter()
            .map(|&v| {
                let mut s: Vec<usize> = self.out[v].iter().filter_map(|&w| index(w)).collect();
                s.sort_unstable();
                s
            })
            .collect();
        OrientationDigraph { n: vertices.len(), out }
    }

    /// Strongly connected components in topological order; ties between
    /// available components go to the one holding the smaller (or, with
    /// `prefer_largest`, larger) point.
    pub fn components_ordered(&self, prefer_largest: bool) -> Vec<Vec<usize>> {
        let comp = tarjan(self);
        let k = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut members = vec![Vec::new(); k];
        for v in 0..self.n {
            members[comp[v]].push(v);
        }
        let mut indeg = vec![0usize; k];
        let mut dag = vec![BTreeSet::new(); k];
        for (x, y) in self.edges() {
            if comp[x] != comp[y] && dag[comp[x]].insert(comp[y]) {
                indeg[comp[y]] += 1;
            }
        }
        let key = |c: usize| if prefer_largest { usize::MAX - members[c][members[c].len() - 1] } else { members[c][0] };
        let mut ready: BTreeSet<(usize, usize)> = (0..k).filter(|&c| indeg[c] == 0).map(|c| (key(c), c)).collect();
        let mut out = Vec::with_capacity(k);
        while let Some((_, c)) = ready.pop_first() {
            for &d in &dag[c] {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    ready.insert((key(d), d));
                }
            }
            out.push(members[c].clone());
        }
        out
    }

    /// Length of a shortest directed cycle through `start`, with its vertices.
    pub fn shortest_cycle_through(&self, start: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.n];
        let mut queue = VecDeque::from([start]);
        let mut seen = vec![false; self.n];
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &self.out[u] {
                if w == start {
                    let mut cyc = vec![u];
                    let mut x = u;
                    while x != start {
                        x = prev[x];
                        cyc.push(x);
                    }
                    cyc.reverse();
                    return Some(cyc);
                }
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

fn tarjan(g: &OrientationDigraph) -> Vec<usize> {
    let n = g.n;
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut next_index = 0;
    let mut next_comp = 0;
    for s in 0..n {
        if index[s] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(s, 0)];
        index[s] = next_index;
        low[s] = next_index;
        next_index += 1;
        stack.push(s);
        on_stack[s] = true;
        while let Some(top) = call.last_mut() {
            let v = top.0;
            if let Some(&w) = g.out[v].get(top.1) {
                top.1 += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

pub fn orientation_digraph(g: &GriddedPerm) -> Result<OrientationDigraph, Error> {
    let lines = LineOrders::from_gridded(g)?;
    let m = g.matrix();
    let mut out: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g.len()];
    let all = (0..m.cols()).map(Line::Col).chain((0..m.rows()).map(Line::Row));
    for line in all {
        let order = lines.line(line);
        for (a, &x) in order.iter().enumerate() {
            out[x].extend(order[a + 1..].iter().copied());
        }
    }
    Ok(OrientationDigraph { n: g.len(), out: out.into_iter().map(|s| s.into_iter().collect()).collect() })
}

pub fn is_indivisible(g: &GriddedPerm) -> Result<bool, Error> {
    let d = orientation_digraph(g)?;
    Ok(!d.is_empty() && d.components_ordered(false).len() == 1)
}

/// The indivisible parts in canonical topological order; folding them with
/// [`m_sum`] gives back `g`.
pub fn decompose(g: &GriddedPerm) -> Result<Vec<GriddedPerm>, Error> {
    decompose_with(g, false)
}

/// [`decompose`] with the alternative tie-break between available components.
pub fn decompose_with(g: &GriddedPerm, prefer_largest: bool) -> Result<Vec<GriddedPerm>, Error> {
    let d = orientation_digraph(g)?;
    Ok(d.components_ordered(prefer_largest).iter().map(|c| g.restrict(c)).collect())
}

/// Points of `a` before points of `b` in every line's orientation.
pub fn m_sum(a: &GriddedPerm, b: &GriddedPerm) -> Result<GriddedPerm, Error> {
    if a.matrix() != b.matrix() {
        return Err(Error::MatrixMismatch);
    }
    let m = a.matrix();
    if m.pmm().is_none() {
        return Err(Error::MissingPmm);
    }
    let mut pos_keys = Vec::with_capacity(a.len() + b.len());
    let mut val_keys = Vec::with_capacity(a.len() + b.len());
    let mut cells = Vec::with_capacity(a.len() + b.len());
    for (side, g) in [(0i64, a), (1i64, b)] {
        for p in 0..g.len() {
            let c = g.cell_of(p);
            let cs = m.orientation(Line::Col(c.col))? as i64;
            let rs = m.orientation(Line::Row(c.row))? as i64;
            pos_keys.push((c.col, side * cs, p));
            val_keys.push((c.row, side * rs, g.perm().values()[p]));
            cells.push(c);
        }
    }
    let pos = Perm::from_ranks(&pos_keys);
    let val = Perm::from_ranks(&val_keys);
    let n = cells.len();
    let mut values = vec![0; n];
    let mut out_cells = vec![Cell::new(0, 0); n];
    for k in 0..n {
        values[pos.values()[k]] = val.values()[k];
        out_cells[pos.values()[k]] = cells[k];
    }
    GriddedPerm::new(m.clone(), Perm::from_zero_based(values)?, out_cells)
}

/// Positions of the last point, in orientation, of every nonempty cell.
pub(crate) fn last_points(g: &GriddedPerm) -> Result<Vec<(Cell, usize)>, Error> {
    let m = g.matrix();
    let mut by_cell: Vec<(Cell, usize)> = Vec::new();
    for cell in m.nonzero_cells() {
        let pts = g.points_in(cell);
        if pts.is_empty() {
            continue;
        }
        let last = if m.orientation(Line::Col(cell.col))? > 0 { pts[pts.len() - 1] } else { pts[0] };
        by_cell.push((cell, last));
    }
    Ok(by_cell)
}

/// A directed cycle formed by last points of cells, one per cell of some
/// cycle of the row-column graph.
pub fn last_points_indivisible(g: &GriddedPerm) -> Result<GriddedPerm, Error> {
    if g.len() < 2 || !is_indivisible(g)? {
        return Err(Error::NotIndivisible);
    }
    let d = orientation_digraph(g)?;
    let lasts: Vec<usize> = last_points(g)?.into_iter().map(|(_, p)| p).collect();
    let sub = d.induced(&lasts);
    let best = (0..lasts.len())
        .filter_map(|s| sub.shortest_cycle_through(s))
        .min_by_key(|c| c.len())
        .ok_or(Error::Internal("no directed cycle among last points"))?;
    let points: Vec<usize> = best.iter().map(|&k| lasts[k]).collect();
    Ok(g.restrict(&points))
}

/// The two gridded permutations with one point in each cell of `cycle`,
/// one per traversal direction.
pub fn minimal_indivisibles(m: &GriddingMatrix, cycle: &CycleDescriptor) -> Result<(GriddedPerm, GriddedPerm), Error> {
    let a = coil_points(m, cycle, 0, Chirality::A, cycle.len())?;
    let b = coil_points(m, cycle, 0, Chirality::B, cycle.len())?;
    Ok((a.0, b.0))
}
