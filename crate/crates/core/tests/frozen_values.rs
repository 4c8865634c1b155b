//! Values computed once by an independent brute-force enumeration and
//! frozen here.

use dimon::engine::{d_classes_by_rank, EnumeratedMonoid};
use dimon::formulas::proof_counts;
use dimon::oracle::{brute_force_members, dihedral_restrictions, members_from_definition};
use dimon::{card, close, green_structural, standard_generators, GreenRelation, MonoidKind};

const CARDS: [(usize, [usize; 3]); 6] = [
    (3, [20, 30, 31]),
    (4, [44, 71, 77]),
    (5, [104, 182, 206]),
    (6, [204, 371, 451]),
    (7, [424, 798, 1037]),
    (8, [818, 1571, 2233]),
];

/// `(kind, n, #L, #R, #D, D-class sizes ascending)`.
type GreenRow = (MonoidKind, usize, usize, usize, usize, &'static [usize]);

const GREEN: [GreenRow; 9] = [
    (MonoidKind::Odi, 3, 8, 8, 4, &[1, 1, 9, 9]),
    (MonoidKind::Mdi, 3, 8, 8, 4, &[1, 2, 9, 18]),
    (MonoidKind::Opdi, 3, 8, 8, 4, &[1, 3, 9, 18]),
    (MonoidKind::Odi, 4, 16, 16, 8, &[1, 1, 1, 1, 4, 4, 16, 16]),
    (MonoidKind::Mdi, 4, 16, 16, 7, &[1, 2, 4, 8, 8, 16, 32]),
    (MonoidKind::Opdi, 4, 16, 16, 6, &[1, 4, 8, 16, 16, 32]),
    (
        MonoidKind::Odi,
        5,
        32,
        32,
        15,
        &[1, 1, 1, 1, 1, 1, 1, 1, 4, 4, 4, 9, 25, 25, 25],
    ),
    (
        MonoidKind::Mdi,
        5,
        32,
        32,
        12,
        &[1, 2, 2, 2, 4, 4, 8, 16, 18, 25, 50, 50],
    ),
    (MonoidKind::Opdi, 5, 32, 32, 8, &[1, 5, 25, 25, 25, 25, 50, 50]),
];

#[test]
fn cardinalities() {
    for (n, sizes) in CARDS {
        for (kind, size) in MonoidKind::SUBMONOIDS.into_iter().zip(sizes) {
            assert_eq!(brute_force_members(kind, n).len(), size, "{kind}_{n}");
            assert_eq!(card(kind, n).unwrap(), size as u128);
            let gens = standard_generators(kind, n).unwrap();
            assert_eq!(close(n, &gens.values()).unwrap().len(), size);
        }
    }
}

#[test]
fn definition_filter_agrees_with_restrictions() {
    for n in 3..=6 {
        for kind in [MonoidKind::Di, MonoidKind::Odi, MonoidKind::Mdi, MonoidKind::Opdi] {
            assert_eq!(
                members_from_definition(kind, n),
                brute_force_members(kind, n),
                "{kind}_{n}"
            );
        }
    }
}

#[test]
fn dihedral_monoid_sizes() {
    for (n, size) in [(4, 97), (5, 286), (6, 703), (7, 1730)] {
        assert_eq!(dihedral_restrictions(n).len(), size);
        let gens = standard_generators(MonoidKind::Di, n).unwrap();
        assert_eq!(close(n, &gens.values()).unwrap().len(), size);
    }
}

#[test]
fn green_class_counts() {
    for (kind, n, l, r, d, sizes) in GREEN {
        let monoid = EnumeratedMonoid::from_elements(n, brute_force_members(kind, n)).unwrap();
        let green = green_structural(&monoid).unwrap();
        assert_eq!(green.classes(GreenRelation::L).len(), l, "{kind}_{n}");
        assert_eq!(green.classes(GreenRelation::R).len(), r, "{kind}_{n}");
        assert_eq!(green.d.len(), d, "{kind}_{n}");
        let mut got: Vec<usize> = green.d.iter().map(Vec::len).collect();
        got.sort_unstable();
        assert_eq!(got, sizes, "{kind}_{n}");
        // L- and R-classes are indexed by the 2^n possible images and domains
        assert_eq!(l, 1 << n);
        let by_rank = d_classes_by_rank(&monoid, &green);
        assert_eq!(by_rank.iter().map(|r| r.1).sum::<usize>(), d);
    }
}

#[test]
fn idempotents_are_partial_identities() {
    for n in 3..=7 {
        for kind in MonoidKind::SUBMONOIDS {
            let monoid = close(n, &standard_generators(kind, n).unwrap().values()).unwrap();
            let idem = monoid.idempotents();
            assert_eq!(idem.len(), 1 << n);
            assert!(idem.iter().all(|e| e.pairs().iter().all(|&(a, b)| a == b)));
            assert!(monoid.missing_inverse().is_none());
        }
    }
}

#[test]
fn rank_profile_of_order_preserving_part() {
    // rank <= 1 elements number n² + 1 in every kind; the rest split by rotation
    for n in 3..=8 {
        let odi = brute_force_members(MonoidKind::Odi, n);
        assert_eq!(odi.iter().filter(|a| a.rank() <= 1).count(), n * n + 1);
        let per_rotation: u128 = (0..n)
            .map(|k| {
                let c = proof_counts(n, k).unwrap();
                c.op_restr_gk + c.op_restr_hgk
            })
            .sum();
        let even_overlap = if n % 2 == 0 { (n * n / 4) as u128 } else { 0 };
        // antipodal pairs are counted under both of their extensions
        assert_eq!(
            per_rotation - even_overlap + (n * n + 1) as u128,
            odi.len() as u128,
            "n={n}"
        );
    }
}
