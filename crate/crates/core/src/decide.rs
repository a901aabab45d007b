use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::coil::{build_coil, end_inflate, label_at, Chirality, CoilType};
use crate::contain::{contains, labelled_contains, LabelledPerm};
use crate::graph::{classify, cycles, CycleDescriptor, MatrixClass};
use crate::gridding::{count_griddings, member};
use crate::matrix::{normalize_to_pmm, Cell, GriddingMatrix};
use crate::{Embedding, Error, GriddedPerm, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Answer {
    Lwqo,
    NotLwqo,
}

/// Why one chirality of one cyclic component does or does not block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiralityEvidence {
    /// Every coil of this chirality and length avoids every basis element.
    AllAvoid { chirality: Chirality, length: usize },
    /// The coil starting at `start` contains basis element `basis_index`.
    Contains { chirality: Chirality, start: usize, length: usize, basis_index: usize, embedding: Embedding },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentVerdict {
    pub cycle: CycleDescriptor,
    pub bound: usize,
    pub evidence: Vec<ChiralityEvidence>,
}

impl ComponentVerdict {
    pub fn blocks(&self) -> bool {
        self.evidence.iter().any(|e| matches!(e, ChiralityEvidence::AllAvoid { .. }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LwqoVerdict {
    pub answer: Answer,
    /// The partial multiplication matrix the coils live in.
    pub matrix: GriddingMatrix,
    pub doubled: bool,
    /// Basis elements kept (those inside the grid class).
    pub basis: Vec<Perm>,
    /// Basis elements outside the grid class, ignored.
    pub dropped: Vec<Perm>,
    pub components: Vec<ComponentVerdict>,
}

impl LwqoVerdict {
    /// Rebuilds every coil named in the evidence and rechecks it.
    pub fn replay(&self) -> bool {
        let blocked = self.components.iter().any(|c| c.blocks());
        if blocked != (self.answer == Answer::NotLwqo) {
            return false;
        }
        self.components.iter().all(|comp| {
            comp.evidence.iter().all(|e| match e {
                ChiralityEvidence::AllAvoid { chirality, length } => (0..comp.cycle.len()).all(|s| {
                    build_coil(&self.matrix, &comp.cycle, s, *chirality, *length)
                        .is_ok_and(|(coil, _)| self.basis.iter().all(|b| contains(b, coil.perm()).is_none()))
                }),
                ChiralityEvidence::Contains { chirality, start, length, basis_index, embedding } => {
                    let Ok((coil, _)) = build_coil(&self.matrix, &comp.cycle, *start, *chirality, *length) else {
                        return false;
                    };
                    let Some(beta) = self.basis.get(*basis_index) else {
                        return false;
                    };
                    embedding.len() == beta.len()
                        && embedding.windows(2).all(|w| w[0] < w[1])
                        && embedding.iter().all(|&i| i < coil.len())
                        && coil.perm().pattern_at(embedding) == *beta
                }
            })
        })
    }
}

/// One coil to test against the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoilTask {
    pub component: usize,
    pub chirality: Chirality,
    pub start: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TaskOutcome {
    Avoids,
    Contains { basis_index: usize, embedding: Embedding },
}

/// The independent coil-versus-basis checks of the decision procedure.
#[derive(Clone, Debug)]
pub struct DecidePlan {
    matrix: GriddingMatrix,
    doubled: bool,
    basis: Vec<Perm>,
    dropped: Vec<Perm>,
    components: Vec<(CycleDescriptor, usize)>,
    tasks: Vec<CoilTask>,
}

impl DecidePlan {
    pub fn new(m: &GriddingMatrix, basis: &[Perm]) -> Result<Self, Error> {
        let (matrix, doubled) = normalize_to_pmm(m)?;
        let (kept, dropped): (Vec<Perm>, Vec<Perm>) = basis.iter().cloned().partition(|b| member(b, m).is_some());
        let n = kept.iter().map(|b| b.len()).max().unwrap_or(0);
        let mut components = Vec::new();
        let mut tasks = Vec::new();
        for cycle in cycles(&matrix)? {
            let l = cycle.len();
            let bound = if kept.is_empty() { l + 1 } else { (n + 5) * l + n };
            if !kept.is_empty() {
                for chirality in Chirality::BOTH {
                    for start in 0..l {
                        tasks.push(CoilTask { component: components.len(), chirality, start });
                    }
                }
            }
            components.push((cycle, bound));
        }
        Ok(DecidePlan { matrix, doubled, basis: kept, dropped, components, tasks })
    }

    pub fn tasks(&self) -> &[CoilTask] {
        &self.tasks
    }

    pub fn run(&self, task: &CoilTask) -> Result<TaskOutcome, Error> {
        let (cycle, bound) = &self.components[task.component];
        let (coil, _) = build_coil(&self.matrix, cycle, task.start, task.chirality, *bound)?;
        for (basis_index, b) in self.basis.iter().enumerate() {
            if let Some(embedding) = contains(b, coil.perm()) {
                return Ok(TaskOutcome::Contains { basis_index, embedding });
            }
        }
        Ok(TaskOutcome::Avoids)
    }

    /// Combines outcomes given in task order.
    pub fn resolve(&self, outcomes: &[TaskOutcome]) -> Result<LwqoVerdict, Error> {
        if outcomes.len() != self.tasks.len() {
            return Err(Error::Internal("one outcome per task"));
        }
        let mut components = Vec::new();
        for (ci, (cycle, bound)) in self.components.iter().enumerate() {
            let mut evidence = Vec::new();
            for chirality in Chirality::BOTH {
                let found = self
                    .tasks
                    .iter()
                    .zip(outcomes)
                    .filter(|(t, _)| t.component == ci && t.chirality == chirality)
                    .find_map(|(t, o)| match o {
                        TaskOutcome::Contains { basis_index, embedding } => Some(ChiralityEvidence::Contains {
                            chirality,
                            start: t.start,
                            length: *bound,
                            basis_index: *basis_index,
                            embedding: embedding.clone(),
                        }),
                        TaskOutcome::Avoids => None,
                    });
                evidence.push(found.unwrap_or(ChiralityEvidence::AllAvoid { chirality, length: *bound }));
            }
            components.push(ComponentVerdict { cycle: cycle.clone(), bound: *bound, evidence });
        }
        let answer = if components.iter().any(|c| c.blocks()) { Answer::NotLwqo } else { Answer::Lwqo };
        Ok(LwqoVerdict {
            answer,
            matrix: self.matrix.clone(),
            doubled: self.doubled,
            basis: self.basis.clone(),
            dropped: self.dropped.clone(),
            components,
        })
    }
}

/// Whether `Grid(m) ∩ Av(basis)` is labelled well quasi-ordered.
pub fn decide_lwqo(m: &GriddingMatrix, basis: &[Perm]) -> Result<LwqoVerdict, Error> {
    let plan = DecidePlan::new(m, basis)?;
    let outcomes = plan.tasks().iter().map(|t| plan.run(t)).collect::<Result<Vec<_>, _>>()?;
    plan.resolve(&outcomes)
}

fn cyclic_pmm(m: &GriddingMatrix) -> Result<CycleDescriptor, Error> {
    let class = classify(m);
    if class != MatrixClass::Cyclic {
        return Err(Error::UnsupportedClass(class));
    }
    if m.pmm().is_none() {
        return Err(Error::MissingPmm);
    }
    Ok(cycles(m)?.remove(0))
}

/// Smallest coil length of an end-inflated family member.
pub fn family_threshold(cycle_len: usize) -> usize {
    (cycle_len + 1) * cycle_len * cycle_len + 1
}

fn chirality_of(l: usize, ty: &CoilType) -> Result<Chirality, Error> {
    if ty.first >= l || ty.second >= l || ty.last >= l {
        return Err(Error::InvalidType);
    }
    if ty.second == (ty.first + 1) % l {
        Ok(Chirality::A)
    } else if (ty.second + 1) % l == ty.first {
        Ok(Chirality::B)
    } else {
        Err(Error::InvalidType)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntichainFamily {
    pub coil_type: CoilType,
    pub members: Vec<GriddedPerm>,
}

/// End-inflated coils of one type, lengths stepping by the cycle length
/// from the first at or above the threshold.
pub fn antichain_family(m: &GriddingMatrix, ty: CoilType, count: usize) -> Result<AntichainFamily, Error> {
    let cycle = cyclic_pmm(m)?;
    let l = cycle.len();
    let chirality = chirality_of(l, &ty)?;
    let mut n = family_threshold(l);
    while label_at(l, ty.first, chirality, n - 1) != ty.last {
        n += 1;
    }
    let mut members = Vec::with_capacity(count);
    for t in 0..count {
        let (coil, cert) = build_coil(m, &cycle, ty.first, chirality, n + t * l)?;
        members.push(end_inflate(&coil, &cert)?);
    }
    Ok(AntichainFamily { coil_type: ty, members })
}

/// `Err((i, j))` for the first pair with `perms[i]` contained in `perms[j]`.
pub fn check_antichain(perms: &[Perm]) -> Result<(), (usize, usize)> {
    for i in 0..perms.len() {
        for j in i + 1..perms.len() {
            let (a, b) = if perms[i].len() <= perms[j].len() { (i, j) } else { (j, i) };
            if contains(&perms[a], &perms[b]).is_some() {
                return Err((a, b));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EndLabel {
    End,
    Interior,
}

/// Coils of the given distinct lengths, each point labelled by its cell and by
/// whether it is an end point; true when no shorter one embeds in a longer one.
pub fn check_labelled_coil_antichain(
    m: &GriddingMatrix,
    start: usize,
    chirality: Chirality,
    lengths: &[usize],
) -> Result<bool, Error> {
    let cycle = cyclic_pmm(m)?;
    let distinct: BTreeSet<usize> = lengths.iter().copied().collect();
    if distinct.len() != lengths.len() || lengths.iter().any(|&n| n <= cycle.len()) {
        return Err(Error::InvalidLengths);
    }
    let alphabet: Vec<(Cell, EndLabel)> =
        cycle.cells.iter().flat_map(|&c| [(c, EndLabel::End), (c, EndLabel::Interior)]).collect();
    let coils = distinct
        .iter()
        .map(|&n| {
            let (coil, cert) = build_coil(m, &cycle, start, chirality, n)?;
            let mut labels: Vec<(Cell, EndLabel)> = coil.cells().iter().map(|&c| (c, EndLabel::Interior)).collect();
            labels[cert.order[0]].1 = EndLabel::End;
            labels[cert.order[n - 1]].1 = EndLabel::End;
            LabelledPerm::new(coil.perm().clone(), labels, alphabet.clone())
        })
        .collect::<Result<Vec<_>, _>>()?;
    for i in 0..coils.len() {
        for j in i + 1..coils.len() {
            if labelled_contains(&coils[i], &coils[j])?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub const DEFAULT_BASIS_LIMIT: usize = 8;

/// Not in the class while every one-point deletion is.
pub fn is_basis_element(perm: &Perm, m: &GriddingMatrix) -> bool {
    member(perm, m).is_none() && (0..perm.len()).all(|i| member(&perm.delete_point(i).expect("in range"), m).is_some())
}

/// Basis elements up to `max_len`, with the default length limit.
pub fn basis_search(m: &GriddingMatrix, max_len: usize) -> Result<Vec<Perm>, Error> {
    basis_search_with_limit(m, max_len, DEFAULT_BASIS_LIMIT)
}

pub fn basis_search_with_limit(m: &GriddingMatrix, max_len: usize, limit: usize) -> Result<Vec<Perm>, Error> {
    if max_len > limit {
        return Err(Error::BudgetExceeded { requested: max_len, limit });
    }
    let mut members: BTreeSet<Perm> = BTreeSet::from([Perm::empty()]);
    let mut basis = Vec::new();
    for n in 1..=max_len {
        let mut next = BTreeSet::new();
        for p in Perm::all_of_length(n) {
            let downward = (0..n).all(|i| members.contains(&p.delete_point(i).expect("in range")));
            if !downward {
                continue;
            }
            if member(&p, m).is_some() {
                next.insert(p);
            } else {
                basis.push(p);
            }
        }
        members = next;
    }
    Ok(basis)
}

/// The permutation `π_k` of length `4k + 4`, with the polycyclic matrix it
/// avoids minimally and the matrix containing all of its deletions.
pub fn bicyclic_counterexample(k: usize) -> Result<(Perm, GriddingMatrix, GriddingMatrix), Error> {
    if k == 0 {
        return Err(Error::InvalidLengths);
    }
    let n = 4 * k + 4;
    let mut v = vec![0; n + 1];
    v[1] = 2 * k + 1;
    for t in 1..=k {
        v[2 * t] = 4 * k + 3 - 2 * t;
        v[2 * t + 1] = 2 * t - 1;
        v[2 * k + 2 + 2 * t] = 2 * k + 4 + 2 * t;
        v[2 * k + 3 + 2 * t] = 2 * k + 2 - 2 * t;
    }
    v[2 * k + 2] = 2 * k + 4;
    v[2 * k + 3] = 2 * k + 2;
    v[n] = 4 * k + 3;
    let perm = Perm::new(v[1..].to_vec())?;
    Ok((perm, bicyclic_matrix(), bicyclic_cover()))
}

/// Two identical cycles sharing a component.
pub fn bicyclic_matrix() -> GriddingMatrix {
    GriddingMatrix::from_rows_bottom_up(&[&[1, 0, 0, -1, 0], &[-1, 1, -1, 0, 0], &[0, -1, 1, 0, 0], &[-1, 0, 0, 1, 1]])
        .expect("valid rows")
}

pub fn bicyclic_cover() -> GriddingMatrix {
    GriddingMatrix::from_rows_bottom_up(&[
        &[0, 1, 0, 0, -1, 0],
        &[-1, 0, 1, -1, 0, 0],
        &[0, 0, -1, 1, 0, 0],
        &[0, -1, 0, 0, 1, 1],
    ])
    .expect("valid rows")
}

/// The unicyclic matrix gridding the coil inside `π_k`.
pub fn bicyclic_coil_matrix() -> GriddingMatrix {
    GriddingMatrix::from_rows_bottom_up(&[&[-1, 1, -1, 0], &[0, -1, 1, 1]]).expect("valid rows")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeSurvey {
    pub coil_type: CoilType,
    /// End-inflated lengths within the bound avoiding every basis element.
    pub avoiding: Vec<usize>,
    /// The longest member within the bound avoids the basis.
    pub alive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyReport {
    /// Smallest end-inflated length of a family member.
    pub threshold: usize,
    pub below_threshold: bool,
    pub types: Vec<TypeSurvey>,
}

/// A bounded look at which end-inflated coil types avoid a basis; says
/// nothing about lengths beyond the bound.
pub fn end_inflated_survey(m: &GriddingMatrix, basis: &[Perm], bound: usize) -> Result<SurveyReport, Error> {
    let cycle = cyclic_pmm(m)?;
    let l = cycle.len();
    let threshold = family_threshold(l) + 2;
    let mut types = Vec::new();
    if bound >= threshold {
        for start in 0..l {
            for chirality in Chirality::BOTH {
                let second = label_at(l, start, chirality, 1);
                for last_offset in 0..l {
                    let mut avoiding = Vec::new();
                    let mut last_len = None;
                    let mut n = threshold - 2 + last_offset;
                    while n + 2 <= bound {
                        let (coil, cert) = build_coil(m, &cycle, start, chirality, n)?;
                        let inflated = end_inflate(&coil, &cert)?;
                        let avoids = basis.iter().all(|b| contains(b, inflated.perm()).is_none());
                        if avoids {
                            avoiding.push(n + 2);
                        }
                        last_len = Some(avoids);
                        n += l;
                    }
                    if !avoiding.is_empty() {
                        let last = label_at(l, start, chirality, threshold - 3 + last_offset);
                        types.push(TypeSurvey {
                            coil_type: CoilType { first: start, second, last },
                            avoiding,
                            alive: last_len == Some(true),
                        });
                    }
                }
            }
        }
    }
    types.sort_by_key(|t| t.coil_type);
    Ok(SurveyReport { threshold, below_threshold: bound < threshold, types })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeEntry {
    pub length: usize,
    pub start: usize,
    pub chirality: Chirality,
    pub perm: Perm,
    pub griddings: usize,
}

/// Number of griddings of the underlying permutation of every coil of each length.
pub fn unique_gridding_probe(m: &GriddingMatrix, lengths: &[usize]) -> Result<Vec<ProbeEntry>, Error> {
    let cycle = cyclic_pmm(m)?;
    let mut out = Vec::new();
    for &length in lengths {
        for start in 0..cycle.len() {
            for chirality in Chirality::BOTH {
                let (coil, _) = build_coil(m, &cycle, start, chirality, length)?;
                let griddings = count_griddings(coil.perm(), m);
                out.push(ProbeEntry { length, start, chirality, perm: coil.perm().clone(), griddings });
            }
        }
    }
    Ok(out)
}
