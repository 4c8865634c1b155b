//! Brute-force reference computations.
//!
//! Everything here works from raw definitions (all of `I_n`, all
//! restrictions of `D_2n`, all bijections between two sets) and shares no
//! code path with the fast routines it is used to check.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::dihedral::DihedralElement;
use crate::geometry::dist;
use crate::kind::MonoidKind;
use crate::perm::{subsets, PartialPerm};

/// Every partial permutation of `{1..n}`.
pub fn all_partial_perms(n: usize) -> Vec<PartialPerm> {
    let mut out = Vec::new();
    for dom in subsets(n) {
        for img in (1..=n).permutations(dom.len()) {
            out.push(PartialPerm::from_sorted(n, dom.iter().copied().zip(img).collect()));
        }
    }
    out
}

/// Pairwise distance check written out over all unordered pairs.
pub fn preserves_all_distances(alpha: &PartialPerm) -> bool {
    let n = alpha.n();
    alpha
        .pairs()
        .iter()
        .tuple_combinations()
        .all(|(p, q)| dist(n, p.0, q.0) == dist(n, p.1, q.1))
}

/// Order predicate of a monoid kind, evaluated on the raw image sequence.
pub fn kind_predicate(kind: MonoidKind, alpha: &PartialPerm) -> bool {
    let s: Vec<usize> = alpha.image_sequence().collect();
    let t = s.len();
    let up = s.windows(2).all(|w| w[0] < w[1]);
    let down = s.windows(2).all(|w| w[0] > w[1]);
    let cyclic = (0..t).filter(|&i| s[i] > s[(i + 1) % t]).count() <= 1;
    match kind {
        MonoidKind::Di => true,
        MonoidKind::Odi => up,
        MonoidKind::Mdi => up || down,
        MonoidKind::Opdi => cyclic,
    }
}

/// All distinct restrictions of all `2n` dihedral permutations.
pub fn dihedral_restrictions(n: usize) -> BTreeSet<PartialPerm> {
    let mut out = BTreeSet::new();
    for sigma in DihedralElement::all(n).expect("n >= 3") {
        for set in subsets(n) {
            out.insert(sigma.to_partial_perm(&set));
        }
    }
    out
}

/// The monoid of `kind` as a filtered set of dihedral restrictions.
pub fn brute_force_members(kind: MonoidKind, n: usize) -> Vec<PartialPerm> {
    dihedral_restrictions(n)
        .into_iter()
        .filter(|a| kind_predicate(kind, a))
        .collect()
}

/// The monoid of `kind` by filtering all of `I_n` with the isometry
/// definition; only practical for small `n`.
pub fn members_from_definition(kind: MonoidKind, n: usize) -> Vec<PartialPerm> {
    let mut v: Vec<PartialPerm> = all_partial_perms(n)
        .into_iter()
        .filter(|a| preserves_all_distances(a) && kind_predicate(kind, a))
        .collect();
    v.sort_unstable();
    v
}

/// Does some bijection `from → onto` satisfy `accept`?
pub fn some_bijection(n: usize, from: &[usize], onto: &[usize], accept: impl Fn(&PartialPerm) -> bool) -> bool {
    if from.len() != onto.len() {
        return false;
    }
    onto.iter().copied().permutations(onto.len()).any(|img| {
        let pairs = from.iter().copied().zip(img).collect();
        accept(&PartialPerm::from_sorted(n, pairs))
    })
}

/// Number of `σ ∈ D_2n` agreeing with `alpha` on its domain, by direct
/// comparison of permutations.
pub fn count_extensions(alpha: &PartialPerm) -> usize {
    let n = alpha.n();
    DihedralElement::all(n)
        .expect("n >= 3")
        .into_iter()
        .filter(|s| {
            let full = s.to_permutation();
            alpha.pairs().iter().all(|&(a, b)| full.apply(a) == Some(b))
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_inverse_monoid_sizes() {
        // Σ C(n,k)² k!
        assert_eq!(all_partial_perms(1).len(), 2);
        assert_eq!(all_partial_perms(3).len(), 34);
        assert_eq!(all_partial_perms(4).len(), 209);
    }

    #[test]
    fn frozen_dihedral_monoid_sizes() {
        // counts from an independent enumeration
        for (n, size, b2) in [(4, 97, 8), (5, 286, 0), (6, 703, 18)] {
            let di = dihedral_restrictions(n);
            assert_eq!(di.len(), size);
            let by_def = members_from_definition(MonoidKind::Di, n);
            assert_eq!(by_def, di.iter().cloned().collect::<Vec<_>>());
            let b2_scan = di
                .iter()
                .filter(|a| a.rank() == 2 && 2 * dist(n, a.pairs()[0].0, a.pairs()[1].0) == n)
                .count();
            assert_eq!(b2_scan, b2);
        }
    }
}
