//! The geodesic metric of the cycle graph `C_n` and partial-isometry tests.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::PartialPerm;

/// Cycle distance without range checks.
#[inline]
pub fn dist(n: usize, x: usize, y: usize) -> usize {
    let d = x.abs_diff(y);
    d.min(n - d)
}

/// Distance between vertices `x` and `y` of `C_n`: `min(|x-y|, n-|x-y|)`.
pub fn distance(n: usize, x: usize, y: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::InvalidN { n, min: 3 });
    }
    for p in [x, y] {
        if p == 0 || p > n {
            return Err(Error::PointOutOfRange { point: p, n });
        }
    }
    Ok(dist(n, x, y))
}

/// `d(A)`: distances between consecutive points of `A` in ascending order,
/// followed by the distance between its extreme points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DistanceSequence(Vec<usize>);

impl DistanceSequence {
    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DistanceSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

fn sorted_points(n: usize, set: &[usize]) -> Result<Vec<usize>> {
    let mut pts = set.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if let Some(&p) = pts.iter().find(|&&p| p == 0 || p > n) {
        return Err(Error::PointOutOfRange { point: p, n });
    }
    Ok(pts)
}

/// Computes `d(A)` for `|A| >= 2`.
pub fn distance_sequence(n: usize, set: &[usize]) -> Result<DistanceSequence> {
    let pts = sorted_points(n, set)?;
    if pts.len() < 2 {
        return Err(Error::UndefinedSequence(pts.len()));
    }
    Ok(distance_sequence_sorted(n, &pts))
}

/// `d(A)` for a set already sorted ascending with at least two points.
pub(crate) fn distance_sequence_sorted(n: usize, pts: &[usize]) -> DistanceSequence {
    let mut d: Vec<usize> = pts.windows(2).map(|w| dist(n, w[0], w[1])).collect();
    d.push(dist(n, pts[0], pts[pts.len() - 1]));
    DistanceSequence(d)
}

/// `δ_{A,B}`, the order-preserving bijection from `A` onto `B`.
pub fn delta(n: usize, from: &[usize], onto: &[usize]) -> Result<PartialPerm> {
    let a = sorted_points(n, from)?;
    let b = sorted_points(n, onto)?;
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    PartialPerm::new(n, a.into_iter().zip(b))
}

/// Checks `d(xα, yα) = d(x, y)` for every pair of domain points.
pub fn is_partial_isometry(alpha: &PartialPerm) -> bool {
    let n = alpha.n();
    let pairs = alpha.pairs();
    pairs
        .iter()
        .enumerate()
        .all(|(i, &(x, xa))| pairs[i + 1..].iter().all(|&(y, ya)| dist(n, x, y) == dist(n, xa, ya)))
}

/// Isometry test for oriented maps of rank at least two that only compares
/// consecutive domain points and the two extreme points.
///
/// The orientation precondition is NOT checked; on a non-oriented map the
/// verdict is meaningless. Use [`crate::dihedral::classify`] for a checked
/// membership test.
pub fn is_partial_isometry_oriented_fast(alpha: &PartialPerm) -> bool {
    let n = alpha.n();
    let pairs = alpha.pairs();
    let (Some(first), Some(last)) = (pairs.first(), pairs.last()) else {
        return true;
    };
    dist(n, first.0, last.0) == dist(n, first.1, last.1)
        && pairs
            .windows(2)
            .all(|w| dist(n, w[0].0, w[1].0) == dist(n, w[0].1, w[1].1))
}
