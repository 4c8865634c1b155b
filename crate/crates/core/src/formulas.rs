//! Closed-form cardinalities and ranks, in exact integer arithmetic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kind::MonoidKind;

fn require_n(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::InvalidN { n, min: 3 })
    } else {
        Ok(())
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `|M_n|` for `M` one of `ODI`, `MDI`, `OPDI`.
///
/// The `(1 ± (-1)^n)` parity corrections are evaluated as explicit even/odd
/// branches so every intermediate value is an integer.
pub fn card(kind: MonoidKind, n: usize) -> Result<u128> {
    require_n(n)?;
    let m = n as u128;
    let even = n.is_multiple_of(2);
    let pow = 1u128 << n;
    let cubic = (m + 1) * m * (m - 1);
    let value = match kind {
        // 3·2^n + (n+1)n(n-1)/6 - (1+(-1)^n)/8·n² - 2n - 2
        MonoidKind::Odi => {
            let parity = if even { m * m / 4 } else { 0 };
            3 * pow + cubic / 6 - parity - 2 * m - 2
        }
        // 3·2^(n+1) + (n+1)n(n-1)/3 - (5+(-1)^n)/4·n² - 4n - 5
        MonoidKind::Mdi => {
            let parity = if even { 3 * m * m / 2 } else { m * m };
            6 * pow + cubic / 3 - parity - 4 * m - 5
        }
        // n·2^n + n²(n-1)/2 - (1+(-1)^n)/4·n² - n + 1
        MonoidKind::Opdi => {
            let parity = if even { m * m / 2 } else { 0 };
            m * pow + m * m * (m - 1) / 2 - parity - m + 1
        }
        MonoidKind::Di => {
            return Err(Error::Unsupported {
                kind,
                what: "cardinality formula",
            })
        }
    };
    Ok(value)
}

/// Number of elements of rank at most one: `n² + 1`.
pub fn card_rank_le1(n: usize) -> Result<u128> {
    require_n(n)?;
    Ok((n * n + 1) as u128)
}

/// Per-rotation counts used when counting restrictions of `D_2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProofCounts {
    /// Order-preserving restrictions of `hg^k` of rank at least two.
    pub op_restr_hgk: u128,
    /// Order-preserving restrictions of `g^k` of rank at least two.
    pub op_restr_gk: u128,
    /// Orientation-preserving restrictions of `hg^k` of rank at least two.
    pub opdi_restr_hgk: u128,
}

pub fn proof_counts(n: usize, k: usize) -> Result<ProofCounts> {
    require_n(n)?;
    if k >= n {
        return Err(Error::PointOutOfRange { point: k, n: n - 1 });
    }
    let (m, k) = (n as u128, k as u128);
    let rank_ge2 = |size: u128| (2..=size).map(|i| binomial(size, i)).sum::<u128>();
    Ok(ProofCounts {
        op_restr_hgk: k * (m - k),
        op_restr_gk: rank_ge2(m - k) + rank_ge2(k),
        opdi_restr_hgk: k * (m - k) + binomial(k, 2) + binomial(m - k, 2),
    })
}

/// Minimum size of a generating set.
pub fn rank_formula(kind: MonoidKind, n: usize) -> Result<usize> {
    require_n(n)?;
    let half = (n - 1) / 2;
    let value = match (kind, n) {
        (MonoidKind::Odi, 3) => 3,
        (MonoidKind::Mdi, 3) => 3,
        (MonoidKind::Opdi, 3) => 2,
        (MonoidKind::Odi, _) => n + 2 * half,
        (MonoidKind::Mdi, _) => 2 + 3 * half,
        (MonoidKind::Opdi, _) => 2 + half,
        (MonoidKind::Di, _) => {
            return Err(Error::Unsupported {
                kind,
                what: "rank formula",
            })
        }
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    // brute-force values from an independent enumeration of I_n
    const BRUTE: [(usize, [u128; 3]); 6] = [
        (3, [20, 30, 31]),
        (4, [44, 71, 77]),
        (5, [104, 182, 206]),
        (6, [204, 371, 451]),
        (7, [424, 798, 1037]),
        (8, [818, 1571, 2233]),
    ];

    #[test]
    fn cardinalities_match_frozen_enumeration() {
        for (n, [odi, mdi, opdi]) in BRUTE {
            assert_eq!(card(MonoidKind::Odi, n).unwrap(), odi, "ODI_{n}");
            assert_eq!(card(MonoidKind::Mdi, n).unwrap(), mdi, "MDI_{n}");
            assert_eq!(card(MonoidKind::Opdi, n).unwrap(), opdi, "OPDI_{n}");
        }
    }

    #[test]
    fn worked_values() {
        assert_eq!(card(MonoidKind::Odi, 4).unwrap(), 44);
        assert_eq!(card(MonoidKind::Odi, 3).unwrap(), 20);
        assert_eq!(card(MonoidKind::Opdi, 5).unwrap(), 5 * 32 + 25 * 4 / 2 - 5 + 1);
        assert_eq!(card_rank_le1(4).unwrap(), 17);
        assert_eq!(card_rank_le1(3).unwrap(), 10);
        assert!(card(MonoidKind::Odi, 2).is_err());
        assert!(card(MonoidKind::Di, 5).is_err());
    }

    #[test]
    fn monotone_count_doubles_order_preserving() {
        for n in 3..=50 {
            let m = n as u128;
            assert_eq!(
                card(MonoidKind::Mdi, n).unwrap(),
                2 * card(MonoidKind::Odi, n).unwrap() - m * m - 1
            );
        }
    }

    #[test]
    fn proof_count_sums() {
        let c = proof_counts(4, 1).unwrap();
        assert_eq!(c.op_restr_hgk, 3);
        assert_eq!(proof_counts(7, 0).unwrap().op_restr_hgk, 0);
        let total: u128 = (0..4).map(|k| proof_counts(4, k).unwrap().op_restr_hgk).sum();
        assert_eq!(total, 10);
        let total: u128 = (0..4).map(|k| proof_counts(4, k).unwrap().op_restr_gk).sum();
        assert_eq!(total, 21);
        for n in 3..=30 {
            let m = n as u128;
            let rows: Vec<ProofCounts> = (0..n).map(|k| proof_counts(n, k).unwrap()).collect();
            assert_eq!(
                rows.iter().map(|r| r.op_restr_hgk).sum::<u128>(),
                (m + 1) * m * (m - 1) / 6
            );
            assert_eq!(
                rows.iter().map(|r| r.op_restr_gk).sum::<u128>(),
                3 * (1u128 << n) - m * m - 2 * m - 3
            );
            assert_eq!(rows.iter().map(|r| r.opdi_restr_hgk).sum::<u128>(), m * m * (m - 1) / 2);
        }
        assert!(proof_counts(4, 4).is_err());
    }

    #[test]
    fn proof_counts_match_restriction_scan() {
        use crate::dihedral::DihedralElement;
        use crate::oracle::kind_predicate;
        use crate::perm::subsets;

        for n in 3..=8 {
            for k in 0..n {
                let count = |reflect: bool, kind: MonoidKind| {
                    let sigma = DihedralElement::new(n, reflect, k).unwrap();
                    subsets(n)
                        .filter(|s| s.len() >= 2)
                        .filter(|s| kind_predicate(kind, &sigma.to_partial_perm(s)))
                        .count() as u128
                };
                let c = proof_counts(n, k).unwrap();
                assert_eq!(c.op_restr_hgk, count(true, MonoidKind::Odi), "n={n} k={k}");
                assert_eq!(c.op_restr_gk, count(false, MonoidKind::Odi), "n={n} k={k}");
                assert_eq!(c.opdi_restr_hgk, count(true, MonoidKind::Opdi), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn rank_values() {
        assert_eq!(rank_formula(MonoidKind::Odi, 4).unwrap(), 6);
        assert_eq!(rank_formula(MonoidKind::Opdi, 3).unwrap(), 2);
        assert_eq!(rank_formula(MonoidKind::Mdi, 5).unwrap(), 8);
        assert_eq!(rank_formula(MonoidKind::Opdi, 5).unwrap(), 4);
        assert_eq!(rank_formula(MonoidKind::Odi, 3).unwrap(), 3);
        assert!(rank_formula(MonoidKind::Odi, 2).is_err());
    }
}
