use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::{Cell, GriddingMatrix, Pmm};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Col(usize),
    Row(usize),
}

/// Bipartite graph with an edge `(col, row)` for every nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowColumnGraph {
    pub cols: usize,
    pub rows: usize,
    /// `(cell, sign)` per nonzero entry.
    pub edges: Vec<(Cell, i8)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub cols: Vec<usize>,
    pub rows: Vec<usize>,
    pub cells: Vec<Cell>,
}

impl Component {
    pub fn cyclomatic(&self) -> isize {
        self.cells.len() as isize - (self.cols.len() + self.rows.len()) as isize + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixClass {
    Acyclic,
    Cyclic,
    Unicyclic,
    Pseudoforest,
    Polycyclic,
}

/// A cycle of the row-column graph traversed from its least cell, first
/// along that cell's row. `cells[t]` carries cycle label `t + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleDescriptor {
    pub vertices: Vec<Vertex>,
    pub cells: Vec<Cell>,
    pub sign: i8,
}

impl CycleDescriptor {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn label_of(&self, cell: Cell) -> Option<usize> {
        self.cells.iter().position(|&c| c == cell)
    }

    /// Canonical traversal of a set of cells forming a simple cycle.
    pub fn from_cells(m: &GriddingMatrix, cells: &[Cell]) -> Result<Self, Error> {
        let set: BTreeSet<Cell> = cells.iter().copied().collect();
        if set.len() < 4 || set.len() % 2 == 1 || set.iter().any(|&c| m.get(c) == 0) {
            return Err(Error::InvalidCycle);
        }
        let in_row = |c: Cell| set.iter().filter(|d| d.row == c.row && **d != c).copied().collect::<Vec<_>>();
        let in_col = |c: Cell| set.iter().filter(|d| d.col == c.col && **d != c).copied().collect::<Vec<_>>();
        let first = *set.iter().next().unwrap();
        let mut order = vec![first];
        let mut cur = first;
        for step in 0..set.len() {
            let next = if step % 2 == 0 { in_row(cur) } else { in_col(cur) };
            if next.len() != 1 {
                return Err(Error::InvalidCycle);
            }
            cur = next[0];
            if step + 1 < set.len() {
                if order.contains(&cur) {
                    return Err(Error::InvalidCycle);
                }
                order.push(cur);
            }
        }
        if cur != first {
            return Err(Error::InvalidCycle);
        }
        let mut vertices = Vec::with_capacity(order.len());
        for pair in order.chunks(2) {
            vertices.push(Vertex::Col(pair[0].col));
            vertices.push(Vertex::Row(pair[0].row));
        }
        let sign = order.iter().map(|&c| m.get(c)).product();
        Ok(CycleDescriptor { vertices, cells: order, sign })
    }
}

pub fn row_column_graph(m: &GriddingMatrix) -> RowColumnGraph {
    RowColumnGraph {
        cols: m.cols(),
        rows: m.rows(),
        edges: m.nonzero_cells().into_iter().map(|c| (c, m.get(c))).collect(),
    }
}

impl RowColumnGraph {
    fn index(&self, v: Vertex) -> usize {
        match v {
            Vertex::Col(i) => i,
            Vertex::Row(j) => self.cols + j,
        }
    }

    fn vertex(&self, k: usize) -> Vertex {
        if k < self.cols {
            Vertex::Col(k)
        } else {
            Vertex::Row(k - self.cols)
        }
    }

    fn adjacency(&self) -> Vec<Vec<(usize, Cell)>> {
        let mut adj = vec![Vec::new(); self.cols + self.rows];
        for &(c, _) in &self.edges {
            let (a, b) = (self.index(Vertex::Col(c.col)), self.index(Vertex::Row(c.row)));
            adj[a].push((b, c));
            adj[b].push((a, c));
        }
        adj
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|(c, _)| match v {
                Vertex::Col(i) => c.col == i,
                Vertex::Row(j) => c.row == j,
            })
            .count()
    }

    /// Connected components, isolated vertices included, ordered by least vertex.
    pub fn components(&self) -> Vec<Component> {
        let adj = self.adjacency();
        let mut seen = vec![false; adj.len()];
        let mut out = Vec::new();
        for s in 0..adj.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            let mut comp = Component { cols: Vec::new(), rows: Vec::new(), cells: Vec::new() };
            let mut cells = BTreeSet::new();
            while let Some(u) = queue.pop_front() {
                match self.vertex(u) {
                    Vertex::Col(i) => comp.cols.push(i),
                    Vertex::Row(j) => comp.rows.push(j),
                }
                for &(w, c) in &adj[u] {
                    cells.insert(c);
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.cols.sort();
            comp.rows.sort();
            comp.cells = cells.into_iter().collect();
            out.push(comp);
        }
        out
    }
}

/// Cells left after repeatedly pruning leaves of a component.
fn core_cells(comp: &Component) -> Vec<Cell> {
    let mut cells: BTreeSet<Cell> = comp.cells.iter().copied().collect();
    loop {
        let leaf = cells.iter().copied().find(|c| {
            cells.iter().filter(|d| d.col == c.col).count() == 1 || cells.iter().filter(|d| d.row == c.row).count() == 1
        });
        match leaf {
            Some(c) => {
                cells.remove(&c);
            }
            None => return cells.into_iter().collect(),
        }
    }
}

pub fn classify(m: &GriddingMatrix) -> MatrixClass {
    let g = row_column_graph(m);
    let comps = g.components();
    if comps.iter().any(|c| c.cyclomatic() > 1) {
        return MatrixClass::Polycyclic;
    }
    let cyclic = comps.iter().filter(|c| c.cyclomatic() == 1).count();
    match cyclic {
        0 => MatrixClass::Acyclic,
        1 => {
            let all_degree_two =
                (0..g.cols).map(Vertex::Col).chain((0..g.rows).map(Vertex::Row)).all(|v| g.degree(v) == 2);
            if comps.len() == 1 && all_degree_two {
                MatrixClass::Cyclic
            } else {
                MatrixClass::Unicyclic
            }
        }
        _ => MatrixClass::Pseudoforest,
    }
}

/// One descriptor per cyclic component, in component order.
pub fn cycles(m: &GriddingMatrix) -> Result<Vec<CycleDescriptor>, Error> {
    let class = classify(m);
    if class == MatrixClass::Polycyclic {
        return Err(Error::UnsupportedClass(class));
    }
    row_column_graph(m)
        .components()
        .iter()
        .filter(|c| c.cyclomatic() == 1)
        .map(|c| CycleDescriptor::from_cells(m, &core_cells(c)))
        .collect()
}

/// Sign sequences seeded with `+1` on the least column of each component,
/// or a negative cycle found as a propagation conflict.
pub fn pmm_sequences(m: &GriddingMatrix) -> Result<Pmm, CycleDescriptor> {
    let g = row_column_graph(m);
    let adj = g.adjacency();
    let n = adj.len();
    let mut sign = vec![0i8; n];
    let mut parent: Vec<Option<(usize, Cell)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    for s in 0..n {
        if sign[s] != 0 {
            continue;
        }
        sign[s] = 1;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(w, c) in &adj[u] {
                let want = sign[u] * m.get(c);
                if sign[w] == 0 {
                    sign[w] = want;
                    parent[w] = Some((u, c));
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if sign[w] != want {
                    let mut cells = vec![c];
                    let (mut a, mut b) = (u, w);
                    while a != b {
                        if depth[a] >= depth[b] {
                            let (p, pc) = parent[a].unwrap();
                            cells.push(pc);
                            a = p;
                        } else {
                            let (p, pc) = parent[b].unwrap();
                            cells.push(pc);
                            b = p;
                        }
                    }
                    return Err(CycleDescriptor::from_cells(m, &cells).expect("conflict closes a simple cycle"));
                }
            }
        }
    }
    Ok(Pmm { cols: sign[..g.cols].to_vec(), rows: sign[g.cols..].to_vec() })
}
