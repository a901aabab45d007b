#![allow(dead_code)]

use gridclass::{pmm_sequences, Cell, GriddingMatrix, OrientationDigraph, Perm};

pub fn p(s: &str) -> Perm {
    if s.contains(' ') || s.contains(',') {
        s.parse().unwrap()
    } else {
        Perm::new(s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()).unwrap()
    }
}

pub fn with_pmm(m: GriddingMatrix) -> GriddingMatrix {
    let pmm = pmm_sequences(&m).unwrap();
    m.with_pmm(pmm).unwrap()
}

pub fn m3() -> GriddingMatrix {
    with_pmm(GriddingMatrix::from_rows_bottom_up(&[&[1, -1, 0], &[0, 1, 1], &[-1, 0, 1]]).unwrap())
}

pub fn msm() -> GriddingMatrix {
    with_pmm(GriddingMatrix::from_rows_bottom_up(&[&[1, -1], &[-1, 1]]).unwrap())
}

pub fn mprime() -> GriddingMatrix {
    with_pmm(GriddingMatrix::from_rows_bottom_up(&[&[1, 1], &[-1, -1]]).unwrap())
}

pub fn negative2() -> GriddingMatrix {
    GriddingMatrix::from_rows_bottom_up(&[&[1, 1], &[1, -1]]).unwrap()
}

pub fn a4() -> GriddingMatrix {
    GriddingMatrix::from_rows_bottom_up(&[&[-1, 1, -1, 0], &[0, -1, 1, 1]]).unwrap()
}

pub fn c(col: usize, row: usize) -> Cell {
    Cell::new(col, row)
}

/// Every strictly increasing index tuple of length k below n.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn brute_embeddings(pattern: &Perm, host: &Perm) -> Vec<Vec<usize>> {
    combinations(host.len(), pattern.len()).into_iter().filter(|idx| host.pattern_at(idx) == *pattern).collect()
}

/// Weakly increasing tuples of length k over 0..=max.
pub fn weak_tuples(k: usize, max: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in weak_tuples(k - 1, max) {
        let lo = rest.last().copied().unwrap_or(0);
        for x in lo..=max {
            let mut t = rest.clone();
            t.push(x);
            out.push(t);
        }
    }
    out
}

/// Distinct cell assignments from every pair of cut tuples, checked from scratch.
pub fn brute_griddings(perm: &Perm, m: &GriddingMatrix) -> std::collections::BTreeSet<Vec<Cell>> {
    let n = perm.len();
    let mut out = std::collections::BTreeSet::new();
    for v in weak_tuples(m.cols() - 1, n) {
        for h in weak_tuples(m.rows() - 1, n) {
            let cells: Vec<Cell> = (0..n)
                .map(|i| {
                    Cell::new(
                        v.iter().filter(|&&x| x <= i).count(),
                        h.iter().filter(|&&x| x <= perm.values()[i]).count(),
                    )
                })
                .collect();
            let ok = (0..n).all(|i| {
                let e = m.get(cells[i]);
                e != 0
                    && (0..n).all(|j| {
                        j == i || cells[j] != cells[i] || ((j > i) == (perm.values()[j] > perm.values()[i])) == (e == 1)
                    })
            });
            if ok {
                out.insert(cells);
            }
        }
    }
    out
}

/// Edges straight from the definition: shared column ordered by position
/// times the column sign, shared row by value times the row sign.
pub fn brute_edges(perm: &Perm, cells: &[Cell], m: &GriddingMatrix) -> std::collections::BTreeSet<(usize, usize)> {
    let pmm = m.pmm().unwrap();
    let mut out = std::collections::BTreeSet::new();
    for x in 0..perm.len() {
        for y in 0..perm.len() {
            if x == y {
                continue;
            }
            let (cx, cy) = (cells[x], cells[y]);
            let (vx, vy) = (perm.values()[x] as i64, perm.values()[y] as i64);
            let col = cx.col == cy.col && (y as i64 - x as i64) * pmm.cols[cx.col] as i64 > 0;
            let row = cx.row == cy.row && (vy - vx) * pmm.rows[cx.row] as i64 > 0;
            if col || row {
                out.insert((x, y));
            }
        }
    }
    out
}

/// Reachability closure by repeated squaring of the adjacency relation.
#[allow(clippy::needless_range_loop)]
pub fn strongly_connected(d: &OrientationDigraph) -> bool {
    let n = d.len();
    if n == 0 {
        return false;
    }
    let mut reach = vec![vec![false; n]; n];
    for (x, y) in d.edges() {
        reach[x][y] = true;
    }
    for i in 0..n {
        reach[i][i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach.iter().all(|r| r.iter().all(|&b| b))
}

/// Some ordering `v_1..v_n` witnessing C1-C4 for `g` over the cycle's cells
/// taken in `labels` order, by backtracking over the definition.
pub fn c1_c4_order(g: &gridclass::GriddedPerm, labels: &[Cell]) -> Option<Vec<usize>> {
    let l = labels.len();
    let n = g.len();
    if n <= l {
        return None;
    }
    let edges = brute_edges(g.perm(), g.cells(), g.matrix());
    let arrow = |x: usize, y: usize| edges.contains(&(x, y));
    fn go(
        order: &mut Vec<usize>,
        used: &mut Vec<bool>,
        g: &gridclass::GriddedPerm,
        labels: &[Cell],
        arrow: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let (l, n, i) = (labels.len(), g.len(), order.len());
        if i == n {
            return true;
        }
        for x in 0..n {
            if used[x] || g.cell_of(x) != labels[i % l] {
                continue;
            }
            if i > 0 && !arrow(order[i - 1], x) {
                continue;
            }
            if i > l && !arrow(x, order[i - l - 1]) {
                continue;
            }
            if i == l && !arrow(x, order[0]) {
                continue;
            }
            used[x] = true;
            order.push(x);
            if go(order, used, g, labels, arrow) {
                return true;
            }
            order.pop();
            used[x] = false;
        }
        false
    }
    let mut order = Vec::new();
    let mut used = vec![false; n];
    go(&mut order, &mut used, g, labels, &arrow).then_some(order)
}

/// Every cyclic relabelling of the cycle's cells, both directions.
pub fn cycle_labellings(cells: &[Cell]) -> Vec<Vec<Cell>> {
    let l = cells.len();
    let mut out = Vec::new();
    for s in 0..l {
        out.push((0..l).map(|i| cells[(s + i) % l]).collect());
        out.push((0..l).map(|i| cells[(s + l - i) % l]).collect());
    }
    out
}
