//! Sumsets of integer sets and vectors.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::linalg::rank;
use crate::algebra::BaseField;
use crate::error::{Error, Result};

/// A nonempty, strictly increasing list of integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IntSet(Vec<i64>);

impl IntSet {
    /// Sorts and deduplicates; fails on an empty input.
    pub fn new(mut v: Vec<i64>) -> Result<IntSet> {
        if v.is_empty() {
            return Err(Error::invalid("integer sets must be nonempty"));
        }
        v.sort_unstable();
        v.dedup();
        Ok(IntSet(v))
    }

    pub fn elems(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> i64 {
        self.0[0]
    }

    pub fn max(&self) -> i64 {
        *self.0.last().unwrap()
    }

    pub fn is_progression(&self) -> bool {
        self.0.windows(3).all(|w| w[1] - w[0] == w[2] - w[1])
    }
}

pub fn sumset(a: &IntSet, b: &IntSet) -> IntSet {
    let s: BTreeSet<i64> =
        a.0.iter()
            .flat_map(|x| b.0.iter().map(move |y| x + y))
            .collect();
    IntSet(s.into_iter().collect())
}

/// Dimension of the affine span of a set of integer vectors.
pub fn affine_rank(a: &[Vec<i64>]) -> Result<usize> {
    let Some(first) = a.first() else {
        return Err(Error::invalid("empty vector set"));
    };
    let dim = first.len();
    if a.iter().any(|v| v.len() != dim) {
        return Err(Error::invalid("vectors of different lengths"));
    }
    let q = BaseField::Rational;
    let rows: Vec<_> = a[1..]
        .iter()
        .map(|v| {
            v.iter()
                .zip(first)
                .map(|(x, y)| q.from_i64(x - y))
                .collect()
        })
        .collect();
    Ok(rank(&rows, dim))
}

/// Checks `|A+A| ≥ (d+1)|A| - d(d+1)/2` for a set of affine dimension `d`.
pub fn freiman_lemma_holds(a: &[Vec<i64>], d: usize) -> Result<bool> {
    let r = affine_rank(a)?;
    if r != d {
        return Err(Error::Hypothesis(format!(
            "the set has affine dimension {r}, not {d}"
        )));
    }
    let set: BTreeSet<&Vec<i64>> = a.iter().collect();
    let sums: BTreeSet<Vec<i64>> = set
        .iter()
        .flat_map(|u| {
            set.iter()
                .map(move |v| u.iter().zip(v.iter()).map(|(x, y)| x + y).collect())
        })
        .collect();
    let (k, d) = (set.len() as i64, d as i64);
    Ok(sums.len() as i64 >= (d + 1) * k - d * (d + 1) / 2)
}

/// `A = a + d·{0, 2, 3, …, n}`; negative `d` means the gap sits next to the
/// largest element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HoleProgression {
    pub a: i64,
    pub d: i64,
    pub n: usize,
}

impl HoleProgression {
    pub fn to_set(&self) -> IntSet {
        let mut v = vec![self.a];
        v.extend((2..=self.n as i64).map(|k| self.a + k * self.d));
        IntSet::new(v).unwrap()
    }
}

/// The hole-progression form of a set with `|A+A| = 2|A|`, or `None` when
/// the doubling is different.
pub fn structure_2k(a: &IntSet) -> Result<Option<HoleProgression>> {
    let n = a.len();
    if n < 4 {
        return Err(Error::Hypothesis(format!("need |A| ≥ 4, got {n}")));
    }
    if sumset(a, a).len() != 2 * n {
        return Ok(None);
    }
    let g = a.0.iter().fold(0i64, |g, x| g.gcd(&(x - a.min())));
    let target: Vec<i64> = std::iter::once(0).chain(2..=n as i64).collect();
    let fwd: Vec<i64> = a.0.iter().map(|x| (x - a.min()) / g).collect();
    if fwd == target {
        return Ok(Some(HoleProgression {
            a: a.min(),
            d: g,
            n,
        }));
    }
    let mut back: Vec<i64> = a.0.iter().map(|x| (a.max() - x) / g).collect();
    back.reverse();
    if back == target {
        return Ok(Some(HoleProgression {
            a: a.max(),
            d: -g,
            n,
        }));
    }
    Err(Error::TheoremViolation(format!(
        "{:?} doubles to 2|A| but is not a progression with one hole",
        a.0
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> IntSet {
        IntSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sumsets() {
        assert_eq!(
            sumset(&set(&[0, 1, 2]), &set(&[0, 1, 2])),
            set(&[0, 1, 2, 3, 4])
        );
        assert_eq!(sumset(&set(&[0, 2, 3, 4]), &set(&[0, 2, 3, 4])).len(), 8);
        assert_eq!(sumset(&set(&[0]), &set(&[5])), set(&[5]));
        assert!(IntSet::new(vec![]).is_err());
    }

    #[test]
    fn freiman() {
        let line: Vec<Vec<i64>> = (0..6).map(|i| vec![i]).collect();
        assert!(freiman_lemma_holds(&line, 1).unwrap());
        let square = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        assert!(freiman_lemma_holds(&square, 2).unwrap());
        assert!(freiman_lemma_holds(&[vec![0], vec![2], vec![3]], 1).unwrap());
        assert!(freiman_lemma_holds(&square, 1).is_err());
    }

    #[test]
    fn hole_progressions() {
        let h = structure_2k(&set(&[0, 2, 3, 4, 5])).unwrap().unwrap();
        assert_eq!(h, HoleProgression { a: 0, d: 1, n: 5 });
        let h = structure_2k(&set(&[0, 1, 2, 4])).unwrap().unwrap();
        assert_eq!(h, HoleProgression { a: 4, d: -1, n: 4 });
        assert_eq!(h.to_set(), set(&[0, 1, 2, 4]));
        assert_eq!(structure_2k(&set(&[0, 1, 2, 3])).unwrap(), None);
        assert!(structure_2k(&set(&[0, 1, 2])).is_err());
        let h = structure_2k(&set(&[-7, -3, -1, 1])).unwrap().unwrap();
        assert_eq!(h, HoleProgression { a: -7, d: 2, n: 4 });
    }
}
