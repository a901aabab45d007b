use alloc::vec::Vec;

use crate::contain::contains;
use crate::graph::{cycles, pmm_sequences, CycleDescriptor};
use crate::lines::LineOrders;
use crate::matrix::{Cell, GriddingMatrix, Line};
use crate::{Error, GriddedPerm, Perm};

/// Direction of travel around a cycle: `A` visits labels in increasing
/// order, `B` in decreasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chirality {
    A,
    B,
}

impl Chirality {
    pub const BOTH: [Chirality; 2] = [Chirality::A, Chirality::B];
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoilCertificate {
    pub cycle: CycleDescriptor,
    /// Label (index into `cycle.cells`) of the cell holding `v_1`.
    pub start: usize,
    pub chirality: Chirality,
    pub length: usize,
    /// `order[i]` is the position of `v_{i+1}`.
    pub order: Vec<usize>,
}

/// Labels of the cells of the first, second and last coil points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoilType {
    pub first: usize,
    pub second: usize,
    pub last: usize,
}

pub(crate) fn label_at(len: usize, start: usize, chirality: Chirality, i: usize) -> usize {
    match chirality {
        Chirality::A => (start + i) % len,
        Chirality::B => (start + len - i % len) % len,
    }
}

impl CoilCertificate {
    /// Label of the cell of `v_{i+1}`.
    pub fn label_of(&self, i: usize) -> usize {
        label_at(self.cycle.len(), self.start, self.chirality, i)
    }

    pub fn cell_of(&self, i: usize) -> Cell {
        self.cycle.cells[self.label_of(i)]
    }
}

fn check_cycle(m: &GriddingMatrix, cycle: &CycleDescriptor, start: usize) -> Result<(), Error> {
    if m.pmm().is_none() {
        return Err(Error::MissingPmm);
    }
    if CycleDescriptor::from_cells(m, &cycle.cells)? != *cycle {
        return Err(Error::InvalidCycle);
    }
    if start >= cycle.len() {
        return Err(Error::InvalidStart(start));
    }
    Ok(())
}

/// Places `v_1..v_len` one at a time into the line orders; any length,
/// including the cycle length itself.
pub(crate) fn coil_points(
    m: &GriddingMatrix,
    cycle: &CycleDescriptor,
    start: usize,
    chirality: Chirality,
    len: usize,
) -> Result<(GriddedPerm, Vec<usize>), Error> {
    check_cycle(m, cycle, start)?;
    let cell = |i: usize| cycle.cells[label_at(cycle.len(), start, chirality, i)];
    let mut lines = LineOrders::new(m);
    for i in 0..len {
        let id = lines.add_point(cell(i));
        if i == 0 {
            lines.line_mut(Line::Col(cell(0).col)).push(id);
            lines.line_mut(Line::Row(cell(0).row)).push(id);
            continue;
        }
        let back = Line::between(cell(i - 1), cell(i)).ok_or(Error::InvalidCycle)?;
        let ahead = Line::between(cell(i), cell(i + 1)).ok_or(Error::InvalidCycle)?;
        lines.line_mut(back).insert(1, id);
        lines.line_mut(ahead).insert(0, id);
    }
    lines.realise(m)
}

/// The gridded coil of the given length with its certificate.
pub fn build_coil(
    m: &GriddingMatrix,
    cycle: &CycleDescriptor,
    start: usize,
    chirality: Chirality,
    length: usize,
) -> Result<(GriddedPerm, CoilCertificate), Error> {
    if length <= cycle.len() {
        return Err(Error::CoilTooShort { length, cycle: cycle.len() });
    }
    let (g, order) = coil_points(m, cycle, start, chirality, length)?;
    let cert = CoilCertificate { cycle: cycle.clone(), start, chirality, length, order };
    Ok((g, cert))
}

/// A certificate when `g` is one of the constructed coils of its length.
pub fn is_gridded_coil(g: &GriddedPerm) -> Option<CoilCertificate> {
    let m = g.matrix();
    m.pmm()?;
    for cycle in cycles(m).ok()? {
        if g.len() <= cycle.len() {
            continue;
        }
        for start in 0..cycle.len() {
            for chirality in Chirality::BOTH {
                let (built, cert) = build_coil(m, &cycle, start, chirality, g.len()).ok()?;
                if built == *g {
                    return Some(cert);
                }
            }
        }
    }
    None
}

fn check_certificate(g: &GriddedPerm, cert: &CoilCertificate) -> Result<(), Error> {
    let (built, again) =
        build_coil(g.matrix(), &cert.cycle, cert.start, cert.chirality, cert.length).map_err(|_| Error::NotACoil)?;
    if built != *g || again != *cert {
        return Err(Error::NotACoil);
    }
    Ok(())
}

/// Replaces `v_1` and `v_n` by adjacent monotone pairs, increasing in `+1`
/// cells and decreasing in `-1` cells.
pub fn end_inflate(g: &GriddedPerm, cert: &CoilCertificate) -> Result<GriddedPerm, Error> {
    check_certificate(g, cert)?;
    let m = g.matrix();
    let mut ends = [cert.order[0], cert.order[cert.length - 1]];
    ends.sort_unstable();
    let mut perm = g.perm().clone();
    let mut cells = g.cells().to_vec();
    for &p in ends.iter().rev() {
        let cell = cells[p];
        perm = perm.inflate_point(p, m.get(cell) == 1)?;
        cells.insert(p + 1, cell);
    }
    GriddedPerm::new(m.clone(), perm, cells)
}

pub fn coil_type(cert: &CoilCertificate) -> CoilType {
    CoilType { first: cert.label_of(0), second: cert.label_of(1), last: cert.label_of(cert.length - 1) }
}

/// The longest coil found inside a permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongestCoil {
    pub length: usize,
    pub cycle: CycleDescriptor,
    pub start: usize,
    pub chirality: Chirality,
}

/// The maximum length `k > ℓ` of a coil of `m` contained in `perm`, over
/// all cycles, starts and chiralities.
pub fn longest_coil_contained(perm: &Perm, m: &GriddingMatrix) -> Result<Option<LongestCoil>, Error> {
    let cyc = cycles(m)?;
    let m = match m.pmm() {
        Some(_) => m.clone(),
        None => m.clone().with_pmm(pmm_sequences(m).map_err(|_| Error::NegativeCycle)?)?,
    };
    let mut best: Option<LongestCoil> = None;
    for cycle in cyc {
        for start in 0..cycle.len() {
            for chirality in Chirality::BOTH {
                let mut k = best.as_ref().map_or(cycle.len() + 1, |b| b.length + 1).max(cycle.len() + 1);
                while k <= perm.len() {
                    let (coil, _) = build_coil(&m, &cycle, start, chirality, k)?;
                    if contains(coil.perm(), perm).is_none() {
                        break;
                    }
                    best = Some(LongestCoil { length: k, cycle: cycle.clone(), start, chirality });
                    k += 1;
                }
            }
        }
    }
    Ok(best)
}

/// All coils of one chirality and length around `cycle`, by start label.
pub fn coils_of(
    m: &GriddingMatrix,
    cycle: &CycleDescriptor,
    chirality: Chirality,
    length: usize,
) -> Result<Vec<(GriddedPerm, CoilCertificate)>, Error> {
    (0..cycle.len()).map(|s| build_coil(m, cycle, s, chirality, length)).collect()
}
