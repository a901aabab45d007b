use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::Error;

/// A permutation stored 0-based: `values()[i]` is the value at position `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    /// Builds a permutation from 1-based one-line notation.
    pub fn new(one_line: Vec<usize>) -> Result<Self, Error> {
        if one_line.contains(&0) {
            return Err(Error::InvalidPermutation("values start at 1"));
        }
        Self::from_zero_based(one_line.into_iter().map(|v| v - 1).collect())
    }

    pub fn from_zero_based(values: Vec<usize>) -> Result<Self, Error> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v >= n {
                return Err(Error::InvalidPermutation("value exceeds length"));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation("repeated value"));
            }
            seen[v] = true;
        }
        Ok(Perm(values))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Self::from_zero_based(values.clone()).is_ok());
        Perm(values)
    }

    /// The pattern (standardisation) of a sequence of distinct keys.
    pub fn from_ranks<T: Ord>(keys: &[T]) -> Self {
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut values = vec![0; keys.len()];
        for (rank, &i) in idx.iter().enumerate() {
            values[i] = rank;
        }
        Perm(values)
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn empty() -> Self {
        Perm(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    /// The pattern formed by the points at the given positions.
    pub fn pattern_at(&self, positions: &[usize]) -> Perm {
        let keys: Vec<usize> = positions.iter().map(|&i| self.0[i]).collect();
        Perm::from_ranks(&keys)
    }

    /// Erases the point at position `index` and standardises.
    pub fn delete_point(&self, index: usize) -> Result<Perm, Error> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange { index, len: self.len() });
        }
        let removed = self.0[index];
        Ok(Perm(
            self.0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != index)
                .map(|(_, &v)| if v > removed { v - 1 } else { v })
                .collect(),
        ))
    }

    /// Replaces the point at `index` by two adjacent points, increasing or decreasing.
    pub fn inflate_point(&self, index: usize, increasing: bool) -> Result<Perm, Error> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange { index, len: self.len() });
        }
        let v = self.0[index];
        let mut out = Vec::with_capacity(self.len() + 1);
        for (i, &w) in self.0.iter().enumerate() {
            if i == index {
                if increasing {
                    out.extend([v, v + 1]);
                } else {
                    out.extend([v + 1, v]);
                }
            } else {
                out.push(if w > v { w + 1 } else { w });
            }
        }
        Ok(Perm(out))
    }

    /// All permutations of length `n` in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Perm> {
        let mut next: Option<Vec<usize>> = Some((0..n).collect());
        core::iter::from_fn(move || {
            let cur = next.take()?;
            let mut a = cur.clone();
            if let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) {
                let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
                a.swap(i - 1, j);
                a[i..].reverse();
                next = Some(a);
            }
            Some(Perm(cur))
        })
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// Whitespace- or comma-separated one-line notation.
    fn from_str(s: &str) -> Result<Self, Error> {
        let values = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Perm::new(values)
    }
}
