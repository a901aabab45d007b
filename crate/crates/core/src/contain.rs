use alloc::vec::Vec;

use crate::{Error, Perm};

/// Host positions of the pattern's points, strictly increasing.
pub type Embedding = Vec<usize>;

/// A permutation whose points carry tokens from a finite antichain alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledPerm<T> {
    pub perm: Perm,
    pub labels: Vec<T>,
    pub alphabet: Vec<T>,
}

impl<T: Clone + Ord> LabelledPerm<T> {
    pub fn new(perm: Perm, labels: Vec<T>, mut alphabet: Vec<T>) -> Result<Self, Error> {
        if labels.len() != perm.len() {
            return Err(Error::IndexOutOfRange { index: labels.len(), len: perm.len() });
        }
        alphabet.sort();
        alphabet.dedup();
        if labels.iter().any(|l| alphabet.binary_search(l).is_err()) {
            return Err(Error::UnknownLabel);
        }
        Ok(LabelledPerm { perm, labels, alphabet })
    }
}

struct Matcher<'a, C> {
    pat: &'a [usize],
    host: &'a [usize],
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
    compat: C,
    chosen: Vec<usize>,
}

impl<'a, C: Fn(usize, usize) -> bool> Matcher<'a, C> {
    fn new(pat: &'a [usize], host: &'a [usize], compat: C) -> Self {
        let mut below = Vec::with_capacity(pat.len());
        let mut above = Vec::with_capacity(pat.len());
        for k in 0..pat.len() {
            let earlier = &pat[..k];
            below.push((0..k).filter(|&j| earlier[j] < pat[k]).max_by_key(|&j| earlier[j]));
            above.push((0..k).filter(|&j| earlier[j] > pat[k]).min_by_key(|&j| earlier[j]));
        }
        Matcher { pat, host, below, above, compat, chosen: Vec::with_capacity(pat.len()) }
    }

    fn run<V: FnMut(&[usize]) -> bool>(&mut self, visit: &mut V) -> bool {
        if self.pat.len() > self.host.len() {
            return false;
        }
        self.go(0, 0, visit)
    }

    fn go<V: FnMut(&[usize]) -> bool>(&mut self, k: usize, start: usize, visit: &mut V) -> bool {
        let m = self.pat.len();
        if k == m {
            return visit(&self.chosen);
        }
        let lo = self.below[k].map(|j| self.host[self.chosen[j]]);
        let hi = self.above[k].map(|j| self.host[self.chosen[j]]);
        let last = self.host.len() - (m - k);
        for h in start..=last {
            let v = self.host[h];
            if lo.is_some_and(|l| v <= l) || hi.is_some_and(|u| v >= u) {
                continue;
            }
            if !(self.compat)(k, h) {
                continue;
            }
            self.chosen.push(h);
            if self.go(k + 1, h + 1, visit) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

pub(crate) fn first_embedding<C: Fn(usize, usize) -> bool>(pat: &Perm, host: &Perm, compat: C) -> Option<Embedding> {
    let mut found = None;
    Matcher::new(pat.values(), host.values(), compat).run(&mut |e: &[usize]| {
        found = Some(e.to_vec());
        true
    });
    found
}

pub(crate) fn count_with<C: Fn(usize, usize) -> bool>(pat: &Perm, host: &Perm, compat: C) -> u64 {
    let mut count = 0u64;
    Matcher::new(pat.values(), host.values(), compat).run(&mut |_: &[usize]| {
        count += 1;
        false
    });
    count
}

/// The lexicographically least embedding of `pattern` in `host`, if any.
pub fn contains(pattern: &Perm, host: &Perm) -> Option<Embedding> {
    first_embedding(pattern, host, |_, _| true)
}

pub fn count_embeddings(pattern: &Perm, host: &Perm) -> u64 {
    count_with(pattern, host, |_, _| true)
}

/// Containment in which every pattern point must land on an equal token.
pub fn labelled_contains<T: Ord>(
    pattern: &LabelledPerm<T>,
    host: &LabelledPerm<T>,
) -> Result<Option<Embedding>, Error> {
    if pattern.alphabet != host.alphabet {
        return Err(Error::AlphabetMismatch);
    }
    Ok(first_embedding(&pattern.perm, &host.perm, |k, h| pattern.labels[k] == host.labels[h]))
}
