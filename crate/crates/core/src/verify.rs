//! The end-to-end verification suite behind `dimon verify`.
//!
//! Each criterion has a fixed range of `n`, clipped to `max_n`. A criterion
//! whose clipped range is empty is reported as skipped, not passed.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::certify::certify_rank;
use crate::dihedral::{b2_count, extensions, is_in_b2, DihedralElement};
use crate::engine::{close, close_with_workers, cross_check_green, EnumeratedMonoid};
use crate::error::{Error, Result};
use crate::export::{export_bytes, ExportFormat};
use crate::formulas::{card, card_rank_le1};
use crate::generators::{factorize, standard_generators};
use crate::geometry::{delta, dist, distance_sequence, is_partial_isometry, is_partial_isometry_oriented_fast};
use crate::kind::MonoidKind;
use crate::oracle::{
    all_partial_perms, brute_force_members, dihedral_restrictions, preserves_all_distances, some_bijection,
};
use crate::perm::{subsets, PartialPerm};

/// Factorization words must have length at most this many times `n`.
pub const WORD_LENGTH_FACTOR: usize = 6;

/// Random samples per `n` for the randomized part of the fast-isometry check.
pub const RANDOM_SAMPLES: usize = 100_000;

const SEED: u64 = 0x5eed_d1ed;
const SUBMONOIDS: [MonoidKind; 3] = MonoidKind::SUBMONOIDS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    #[serde(serialize_with = "as_millis")]
    pub elapsed: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyOptions {
    pub max_n: usize,
    /// Perturbs the cardinality formula by one inside the suite, to check
    /// that a wrong value is reported as a failure.
    pub inject_fault: bool,
}

/// Outcome of one criterion body: `Ok(detail)` passes, `Err(detail)` fails.
type Check = std::result::Result<String, String>;

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub lo: usize,
    pub hi: usize,
    run: fn(&Ctx, usize, usize) -> Check,
}

struct Ctx {
    inject_fault: bool,
}

impl Ctx {
    fn card(&self, kind: MonoidKind, n: usize) -> u128 {
        card(kind, n).expect("n >= 3") + u128::from(self.inject_fault)
    }
}

pub const CRITERIA: [Criterion; 12] = [
    Criterion {
        id: 1,
        name: "cardinality formulas vs enumeration",
        lo: 3,
        hi: 10,
        run: c1_cardinality,
    },
    Criterion {
        id: 2,
        name: "closure of standard generators",
        lo: 4,
        hi: 8,
        run: c2_closure,
    },
    Criterion {
        id: 3,
        name: "dihedral extension counts",
        lo: 4,
        hi: 7,
        run: c3_extensions,
    },
    Criterion {
        id: 4,
        name: "antipodal rank-two count",
        lo: 4,
        hi: 10,
        run: c4_b2,
    },
    Criterion {
        id: 5,
        name: "fast isometry test",
        lo: 4,
        hi: 12,
        run: c5_fast_isometry,
    },
    Criterion {
        id: 6,
        name: "distance-sequence equivalences",
        lo: 4,
        hi: 7,
        run: c6_distance_sequences,
    },
    Criterion {
        id: 7,
        name: "J-classes by distance sequence",
        lo: 4,
        hi: 7,
        run: c7_green_j,
    },
    Criterion {
        id: 8,
        name: "generating-set minimality",
        lo: 4,
        hi: 7,
        run: c8_minimality,
    },
    Criterion {
        id: 9,
        name: "rank certification",
        lo: 3,
        hi: 9,
        run: c9_rank,
    },
    Criterion {
        id: 10,
        name: "factorization round trip",
        lo: 4,
        hi: 7,
        run: c10_factorize,
    },
    Criterion {
        id: 11,
        name: "monotone vs order-preserving count",
        lo: 3,
        hi: 9,
        run: c11_identity,
    },
    Criterion {
        id: 12,
        name: "closure determinism",
        lo: 7,
        hi: 7,
        run: c12_determinism,
    },
];

impl Criterion {
    fn evaluate(&self, ctx: &Ctx, max_n: usize) -> CriterionOutcome {
        let start = Instant::now();
        let hi = self.hi.min(max_n);
        let (status, detail) = if hi < self.lo {
            (Status::Skip, format!("needs max-n >= {}", self.lo))
        } else {
            match (self.run)(ctx, self.lo, hi) {
                Ok(d) => (Status::Pass, d),
                Err(d) => (Status::Fail, d),
            }
        };
        CriterionOutcome {
            id: self.id,
            name: self.name,
            status,
            detail,
            elapsed: start.elapsed(),
        }
    }
}

/// Runs one criterion by id.
pub fn run_criterion(id: usize, options: VerifyOptions) -> Result<CriterionOutcome> {
    check_max_n(options.max_n)?;
    let criterion = CRITERIA.iter().find(|c| c.id == id).ok_or(Error::Parse {
        what: "criterion id",
        input: id.to_string(),
    })?;
    Ok(criterion.evaluate(
        &Ctx {
            inject_fault: options.inject_fault,
        },
        options.max_n,
    ))
}

/// Runs every criterion in order, calling `report` after each one.
pub fn run_all(options: VerifyOptions, mut report: impl FnMut(&CriterionOutcome)) -> Result<Vec<CriterionOutcome>> {
    check_max_n(options.max_n)?;
    let ctx = Ctx {
        inject_fault: options.inject_fault,
    };
    Ok(CRITERIA
        .iter()
        .map(|c| {
            let outcome = c.evaluate(&ctx, options.max_n);
            report(&outcome);
            outcome
        })
        .collect())
}

fn check_max_n(max_n: usize) -> Result<()> {
    if max_n < 3 {
        Err(Error::InvalidN { n: max_n, min: 3 })
    } else {
        Ok(())
    }
}

fn members(kind: MonoidKind, n: usize) -> EnumeratedMonoid {
    EnumeratedMonoid::from_elements(n, brute_force_members(kind, n)).expect("oracle output is valid")
}

fn c1_cardinality(ctx: &Ctx, lo: usize, hi: usize) -> Check {
    for n in lo..=hi {
        for kind in SUBMONOIDS {
            let enumerated = brute_force_members(kind, n).len() as u128;
            let formula = ctx.card(kind, n);
            if enumerated != formula {
                return Err(format!("{kind}_{n}: formula={formula} enumerated={enumerated}"));
            }
        }
    }
    if lo <= 4 && 4 <= hi {
        let odi4 = brute_force_members(MonoidKind::Odi, 4);
        let low_rank = odi4.iter().filter(|a| a.rank() <= 1).count() as u128;
        if odi4.len() != 44 || low_rank != 17 || card_rank_le1(4) != Ok(17) {
            return Err(format!("ODI_4 has {} elements, {low_rank} of rank <= 1", odi4.len()));
        }
    }
    Ok(format!("n={lo}..{hi}, 3 kinds"))
}

fn c2_closure(_: &Ctx, lo: usize, hi: usize) -> Check {
    for n in lo..=hi {
        for kind in SUBMONOIDS {
            let gens = standard_generators(kind, n).map_err(|e| e.to_string())?;
            let closure = close(n, &gens.values()).map_err(|e| e.to_string())?;
            let expected = members(kind, n);
            if closure.elements() != expected.elements() {
                return Err(format!(
                    "{kind}_{n}: closure has {} elements, brute force {}",
                    closure.len(),
                    expected.len()
                ));
            }
        }
    }
    Ok(format!("n={lo}..{hi}, set equality"))
}

fn c3_extensions(_: &Ctx, lo: usize, hi: usize) -> Check {
    let mut checked = 0usize;
    for n in lo..=hi {
        for alpha in dihedral_restrictions(n) {
            let got = extensions(&alpha).len();
            let expected = match alpha.pairs() {
                [] => 2 * n,
                [_] => 2,
                [(a, _), (b, _)] if 2 * dist(n, *a, *b) == n => 2,
                _ => 1,
            };
            if got != expected {
                return Err(format!("{alpha}: {got} extensions, expected {expected}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} elements, n={lo}..{hi}"))
}

fn c4_b2(_: &Ctx, lo: usize, hi: usize) -> Check {
    let mut checked = Vec::new();
    for n in (lo..=hi).filter(|n| n % 2 == 0) {
        let scanned = dihedral_restrictions(n).iter().filter(|a| is_in_b2(a)).count();
        if scanned != n * n / 2 || b2_count(n) != scanned {
            return Err(format!("n={n}: scan {scanned}, expected {}", n * n / 2));
        }
        checked.push(n);
    }
    Ok(format!("n={checked:?}"))
}

fn oriented(alpha: &PartialPerm) -> bool {
    let s: Vec<usize> = alpha.image_sequence().collect();
    let t = s.len();
    let descents = (0..t).filter(|&i| s[i] > s[(i + 1) % t]).count();
    let ascents = (0..t).filter(|&i| s[i] < s[(i + 1) % t]).count();
    descents <= 1 || ascents <= 1
}

fn random_oriented(rng: &mut ChaCha8Rng, n: usize) -> PartialPerm {
    let k = rng.gen_range(2..=n);
    let mut dom = sample(rng, n, k).into_vec();
    dom.sort_unstable();
    let dom: Vec<usize> = dom.into_iter().map(|p| p + 1).collect();
    if rng.gen_bool(0.5) {
        // a genuine isometry: restriction of a random dihedral element
        let sigma = DihedralElement::new(n, rng.gen_bool(0.5), rng.gen_range(0..n)).expect("n >= 3");
        return sigma.to_partial_perm(&dom);
    }
    let mut img = sample(rng, n, k).into_vec();
    img.sort_unstable();
    img.rotate_left(rng.gen_range(0..k));
    if rng.gen_bool(0.5) {
        img.reverse();
    }
    PartialPerm::new(n, dom.into_iter().zip(img.into_iter().map(|p| p + 1))).expect("injective")
}

fn c5_fast_isometry(_: &Ctx, lo: usize, hi: usize) -> Check {
    let mut exhaustive = 0usize;
    for n in lo..=hi.min(6) {
        for alpha in all_partial_perms(n) {
            if alpha.rank() < 2 || !oriented(&alpha) {
                continue;
            }
            exhaustive += 1;
            if is_partial_isometry_oriented_fast(&alpha) != preserves_all_distances(&alpha) {
                return Err(format!("{alpha}: fast and full tests disagree"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut sampled = 0usize;
    for n in 7.max(lo)..=hi {
        for _ in 0..RANDOM_SAMPLES {
            let alpha = random_oriented(&mut rng, n);
            let full = preserves_all_distances(&alpha);
            if is_partial_isometry_oriented_fast(&alpha) != full || is_partial_isometry(&alpha) != full {
                return Err(format!("{alpha}: fast and full tests disagree"));
            }
            sampled += 1;
        }
    }
    Ok(format!("{exhaustive} exhaustive, {sampled} random"))
}

fn ascending(s: &[usize]) -> bool {
    s.windows(2).all(|w| w[0] < w[1])
}

fn descending(s: &[usize]) -> bool {
    s.windows(2).all(|w| w[0] > w[1])
}

fn cyclic(s: &[usize]) -> bool {
    let t = s.len();
    (0..t).filter(|&i| s[i] > s[(i + 1) % t]).count() <= 1
}

fn c6_distance_sequences(_: &Ctx, lo: usize, hi: usize) -> Check {
    let mut pairs = 0usize;
    for n in lo..=hi {
        let h = DihedralElement::h(n).expect("n >= 3");
        let rotations: Vec<DihedralElement> = (0..n)
            .map(|s| DihedralElement::new(n, false, s).expect("n >= 3"))
            .collect();
        let sets: Vec<Vec<usize>> = subsets(n).filter(|s| s.len() >= 2).collect();
        for (a, b) in sets.iter().cartesian_product(&sets) {
            if a.len() != b.len() {
                continue;
            }
            pairs += 1;
            let da = distance_sequence(n, a).map_err(|e| e.to_string())?;
            let seq = |set: &[usize]| distance_sequence(n, set).expect("size >= 2");
            let iso = |alpha: &PartialPerm, order: fn(&[usize]) -> bool| {
                preserves_all_distances(alpha) && order(&alpha.image_sequence().collect::<Vec<_>>())
            };

            let clause1 = da == seq(b);
            let delta_iso = is_partial_isometry(&delta(n, a, b).map_err(|e| e.to_string())?);
            let exists1 = some_bijection(n, a, b, |x| iso(x, ascending));
            if clause1 != delta_iso || clause1 != exists1 {
                return Err(format!("n={n} A={a:?} B={b:?}: order-preserving clause fails"));
            }

            let clause2 = da == seq(&h.apply_set(b));
            let exists2 = some_bijection(n, a, b, |x| iso(x, descending));
            if clause2 != exists2 {
                return Err(format!("n={n} A={a:?} B={b:?}: order-reversing clause fails"));
            }

            // B·g^{-s} over all s is B·g^r over all r
            let clause3 = rotations.iter().any(|r| da == seq(&r.apply_set(b)));
            let exists3 = some_bijection(n, a, b, |x| iso(x, cyclic));
            if clause3 != exists3 {
                return Err(format!("n={n} A={a:?} B={b:?}: orientation-preserving clause fails"));
            }
        }
    }
    Ok(format!("{pairs} set pairs, n={lo}..{hi}"))
}

fn c7_green_j(_: &Ctx, lo: usize, hi: usize) -> Check {
    let mut pairs = 0usize;
    for n in lo..=hi {
        for kind in SUBMONOIDS {
            let check = cross_check_green(&members(kind, n), kind).map_err(|e| e.to_string())?;
            pairs += check.pairs_checked;
            if let Some(bad) = check.counterexample {
                return Err(format!(
                    "{kind}_{n}: {} vs {}: j_related={} same D-class={}",
                    bad.alpha, bad.beta, bad.j_related, bad.same_d_class
                ));
            }
        }
    }
    Ok(format!("{pairs} pairs, n={lo}..{hi}"))
}

fn c8_minimality(_: &Ctx, lo: usize, hi: usize) -> Check {
    let mut deletions = 0usize;
    for n in lo..=hi {
        for kind in SUBMONOIDS {
            let gens = standard_generators(kind, n).map_err(|e| e.to_string())?;
            let full = close(n, &gens.values()).map_err(|e| e.to_string())?.len();
            for (i, name) in gens.names().enumerate() {
                let smaller = close(n, &gens.without(i).values()).map_err(|e| e.to_string())?.len();
                if smaller >= full {
                    return Err(format!("{kind}_{n}: dropping {name} keeps all {full} elements"));
                }
                deletions += 1;
            }
        }
    }
    Ok(format!("{deletions} deletions, n={lo}..{hi}"))
}

fn c9_rank(_: &Ctx, lo: usize, hi: usize) -> Check {
    let mut certified = 0usize;
    for n in lo..=hi {
        for kind in SUBMONOIDS {
            let report = certify_rank(kind, n).map_err(|e| e.to_string())?;
            if !report.certified || report.upper_bound != report.rank || report.lower_bound != report.rank {
                return Err(format!(
                    "{kind}_{n}: formula {} upper {} lower {}",
                    report.rank, report.upper_bound, report.lower_bound
                ));
            }
            certified += 1;
        }
    }
    Ok(format!("{certified} ranks certified, n={lo}..{hi}"))
}

fn c10_factorize(_: &Ctx, lo: usize, hi: usize) -> Check {
    let mut worst = (0usize, 1usize);
    let mut count = 0usize;
    for n in lo..=hi {
        for kind in SUBMONOIDS {
            for alpha in brute_force_members(kind, n) {
                let word = factorize(&alpha, kind).map_err(|e| format!("{alpha}: {e}"))?;
                let value = word.evaluate(n).map_err(|e| format!("{alpha}: {e}"))?;
                if value != alpha {
                    return Err(format!("{kind}_{n}: {alpha} factorized as {word} = {value}"));
                }
                if word.len() > WORD_LENGTH_FACTOR * n {
                    return Err(format!("{kind}_{n}: {alpha} needs {} letters", word.len()));
                }
                if word.len() * worst.1 > worst.0 * n {
                    worst = (word.len(), n);
                }
                count += 1;
            }
        }
    }
    Ok(format!(
        "{count} elements, c={WORD_LENGTH_FACTOR}, longest {} letters at n={}",
        worst.0, worst.1
    ))
}

fn c11_identity(ctx: &Ctx, lo: usize, hi: usize) -> Check {
    for n in 3..=50usize {
        let sq = (n * n) as u128;
        if ctx.card(MonoidKind::Mdi, n) + sq + 1 != 2 * ctx.card(MonoidKind::Odi, n) {
            return Err(format!("formula identity fails at n={n}"));
        }
    }
    for n in lo..=hi {
        let mdi = brute_force_members(MonoidKind::Mdi, n).len();
        let odi = brute_force_members(MonoidKind::Odi, n).len();
        if mdi + n * n + 1 != 2 * odi {
            return Err(format!("n={n}: |MDI|={mdi} |ODI|={odi}"));
        }
    }
    Ok(format!("formula n<=50, enumerated n={lo}..{hi}"))
}

fn c12_determinism(_: &Ctx, _: usize, hi: usize) -> Check {
    let n = hi;
    let gens = standard_generators(MonoidKind::Odi, n)
        .map_err(|e| e.to_string())?
        .values();
    let mut dumps = Vec::new();
    for workers in [1, 4] {
        let monoid = close_with_workers(n, &gens, workers).map_err(|e| e.to_string())?;
        for format in [ExportFormat::Txt, ExportFormat::Jsonl] {
            dumps.push(export_bytes(monoid.elements(), format, false).map_err(|e| e.to_string())?);
        }
    }
    if dumps[0] != dumps[2] || dumps[1] != dumps[3] {
        return Err(format!("ODI_{n}: exports differ between 1 and 4 workers"));
    }
    Ok(format!("ODI_{n}: {} bytes identical", dumps[0].len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_or_skips() {
        let out = run_all(
            VerifyOptions {
                max_n: 4,
                inject_fault: false,
            },
            |_| {},
        )
        .unwrap();
        assert_eq!(out.len(), 12);
        assert!(out.iter().all(|o| o.status != Status::Fail), "{out:?}");
        assert_eq!(out[11].status, Status::Skip);
    }

    #[test]
    fn injected_fault_fails() {
        let o = run_criterion(
            1,
            VerifyOptions {
                max_n: 3,
                inject_fault: true,
            },
        )
        .unwrap();
        assert_eq!(o.status, Status::Fail);
        assert!(run_all(
            VerifyOptions {
                max_n: 2,
                inject_fault: false
            },
            |_| {}
        )
        .is_err());
    }
}
