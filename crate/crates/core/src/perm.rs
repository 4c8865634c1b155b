//! Injective partial transformations of `{1..n}`.
//!
//! A [`PartialPerm`] is stored as its graph: the list of `(a, aα)` pairs sorted
//! by `a`. That list is the canonical form, so derived equality, ordering and
//! hashing are all structural. Maps act on the right and compose left to
//! right: `x(αβ) = (xα)β`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PermJson", into = "PermJson")]
pub struct PartialPerm {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

/// Flags derived from the image sequence read along the ascending domain.
///
/// Sequences of length 0 or 1 set every flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderFlags {
    pub order_preserving: bool,
    pub order_reversing: bool,
    pub orientation_preserving: bool,
    pub orientation_reversing: bool,
}

impl OrderFlags {
    pub fn monotone(&self) -> bool {
        self.order_preserving || self.order_reversing
    }

    pub fn oriented(&self) -> bool {
        self.orientation_preserving || self.orientation_reversing
    }
}

fn check_point(n: usize, point: usize) -> Result<()> {
    if point == 0 || point > n {
        Err(Error::PointOutOfRange { point, n })
    } else {
        Ok(())
    }
}

impl PartialPerm {
    /// Builds a map from `(a, aα)` pairs in any order.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidN { n, min: 1 });
        }
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        let mut seen = vec![false; n + 1];
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateDomain(w[0].0));
            }
        }
        for &(a, b) in &pairs {
            check_point(n, a)?;
            check_point(n, b)?;
            if std::mem::replace(&mut seen[b], true) {
                return Err(Error::NotInjective(b));
            }
        }
        Ok(PartialPerm { n, pairs })
    }

    /// Internal constructor; `pairs` must already be canonical.
    pub(crate) fn from_sorted(n: usize, pairs: Vec<(usize, usize)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        PartialPerm { n, pairs }
    }

    pub fn empty(n: usize) -> Self {
        PartialPerm { n, pairs: Vec::new() }
    }

    /// The identity on all of `{1..n}`.
    pub fn identity(n: usize) -> Self {
        PartialPerm {
            n,
            pairs: (1..=n).map(|i| (i, i)).collect(),
        }
    }

    /// The partial identity `id_X`.
    pub fn identity_on(n: usize, set: &[usize]) -> Result<Self> {
        PartialPerm::new(n, set.iter().map(|&x| (x, x)))
    }

    /// `e_i`, the identity with `i` removed from its domain.
    pub fn e(n: usize, i: usize) -> Result<Self> {
        check_point(n, i)?;
        Ok(PartialPerm {
            n,
            pairs: (1..=n).filter(|&p| p != i).map(|p| (p, p)).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Domain points in ascending order.
    pub fn domain(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    /// Image points in ascending order.
    pub fn image(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self.pairs.iter().map(|p| p.1).collect();
        im.sort_unstable();
        im
    }

    /// Images listed along the ascending domain.
    pub fn image_sequence(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().map(|p| p.1)
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&x, |p| p.0)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn is_full_identity(&self) -> bool {
        self.pairs.len() == self.n && self.pairs.iter().all(|&(a, b)| a == b)
    }

    pub fn is_idempotent(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| a == b)
    }

    /// `αβ`: first `self`, then `other`.
    pub fn compose(&self, other: &PartialPerm) -> Result<PartialPerm> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self.then(other))
    }

    /// Same as [`compose`](Self::compose) for maps already known to share `n`.
    ///
    /// Panics on an ambient mismatch.
    pub fn then(&self, other: &PartialPerm) -> PartialPerm {
        assert_eq!(self.n, other.n, "composing maps on different ambient sets");
        let pairs = self
            .pairs
            .iter()
            .filter_map(|&(a, b)| other.apply(b).map(|c| (a, c)))
            .collect();
        PartialPerm::from_sorted(self.n, pairs)
    }

    pub fn inverse(&self) -> PartialPerm {
        let mut pairs: Vec<(usize, usize)> = self.pairs.iter().map(|&(a, b)| (b, a)).collect();
        pairs.sort_unstable();
        PartialPerm::from_sorted(self.n, pairs)
    }

    /// `α|_A`. Points of `set` outside the domain are ignored.
    pub fn restrict(&self, set: &[usize]) -> PartialPerm {
        let pairs = self.pairs.iter().copied().filter(|(a, _)| set.contains(a)).collect();
        PartialPerm::from_sorted(self.n, pairs)
    }

    pub fn classify_order(&self) -> OrderFlags {
        let s: Vec<usize> = self.image_sequence().collect();
        let t = s.len();
        if t <= 1 {
            return OrderFlags {
                order_preserving: true,
                order_reversing: true,
                orientation_preserving: true,
                orientation_reversing: true,
            };
        }
        let ascents_linear = s.windows(2).filter(|w| w[0] < w[1]).count();
        let (mut descents, mut ascents) = (0, 0);
        for i in 0..t {
            let (cur, next) = (s[i], s[(i + 1) % t]);
            if cur > next {
                descents += 1;
            } else if cur < next {
                ascents += 1;
            }
        }
        OrderFlags {
            order_preserving: ascents_linear == t - 1,
            order_reversing: ascents_linear == 0,
            orientation_preserving: descents <= 1,
            orientation_reversing: ascents <= 1,
        }
    }
}

impl fmt::Display for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.n)?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}>{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartialPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_uint(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for PartialPerm {
    type Err = Error;

    /// Parses the canonical text form `n=<n>;a1>b1,a2>b2,...`.
    ///
    /// Only the canonical spelling is accepted: ascending domain, no
    /// whitespace, no leading zeros.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "partial permutation",
            input: s.to_string(),
        };
        let rest = s.strip_prefix("n=").ok_or_else(bad)?;
        let (n_text, body) = rest.split_once(';').ok_or_else(bad)?;
        let n = parse_uint(n_text).ok_or_else(bad)?;
        let mut pairs = Vec::new();
        if !body.is_empty() {
            for item in body.split(',') {
                let (a, b) = item.split_once('>').ok_or_else(bad)?;
                pairs.push((parse_uint(a).ok_or_else(bad)?, parse_uint(b).ok_or_else(bad)?));
            }
        }
        let perm = PartialPerm::new(n, pairs)?;
        let canonical = perm.to_string();
        if canonical != s {
            return Err(Error::NonCanonical {
                what: "partial permutation",
                input: s.to_string(),
                canonical,
            });
        }
        Ok(perm)
    }
}

/// JSON shape `{"n":5,"map":[[2,1],[4,3]]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PermJson {
    n: usize,
    map: Vec<[usize; 2]>,
}

impl From<PartialPerm> for PermJson {
    fn from(p: PartialPerm) -> Self {
        PermJson {
            n: p.n,
            map: p.pairs.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl TryFrom<PermJson> for PartialPerm {
    type Error = Error;

    fn try_from(j: PermJson) -> Result<Self> {
        PartialPerm::new(j.n, j.map.into_iter().map(|[a, b]| (a, b)))
    }
}

/// Enumerates every subset of `{1..n}` as a sorted point list.
pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    assert!(n < usize::BITS as usize);
    (0usize..1 << n).map(move |mask| (1..=n).filter(|&p| mask >> (p - 1) & 1 == 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(s: &str) -> PartialPerm {
        s.parse().unwrap()
    }

    fn shift_x(n: usize) -> PartialPerm {
        PartialPerm::new(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn shift_then_inverse_is_e_n() {
        let x = shift_x(5);
        let y = x.inverse();
        assert_eq!(y, PartialPerm::new(5, (2..=5).map(|i| (i, i - 1))).unwrap());
        assert_eq!(x.compose(&y).unwrap(), PartialPerm::e(5, 5).unwrap());
        assert_eq!(y.compose(&x).unwrap(), PartialPerm::e(5, 1).unwrap());
    }

    #[test]
    fn identity_and_empty_cases() {
        let a = pp("n=5;2>1,4>3,5>4");
        assert_eq!(a.then(&PartialPerm::identity(5)), a);
        assert_eq!(PartialPerm::identity(5).then(&a), a);
        assert_eq!(a.then(&PartialPerm::empty(5)), PartialPerm::empty(5));
        assert_eq!(a.inverse().inverse(), a);
        let id = PartialPerm::identity_on(5, &[1, 3]).unwrap();
        assert_eq!(id.inverse(), id);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let err = PartialPerm::identity(4).compose(&PartialPerm::identity(5)).unwrap_err();
        assert_eq!(err, Error::AmbientMismatch { left: 4, right: 5 });
    }

    #[test]
    fn restriction() {
        let id = PartialPerm::identity(4);
        assert_eq!(id.restrict(&[1, 3]), PartialPerm::identity_on(4, &[1, 3]).unwrap());
        let a = pp("n=5;2>1,4>3,5>4");
        assert_eq!(a.restrict(&a.domain()), a);
        // hg in n=4 sends i to 2-i for i=1 and 6-i otherwise
        let hg = pp("n=4;1>1,2>4,3>3,4>2");
        assert_eq!(hg.restrict(&[1, 3]), pp("n=4;1>1,3>3"));
        // points outside the domain are dropped
        assert_eq!(pp("n=4;1>2").restrict(&[1, 2, 3]), pp("n=4;1>2"));
    }

    #[test]
    fn partial_identity_products() {
        let n = 4;
        assert_eq!(PartialPerm::e(n, 4).unwrap(), pp("n=4;1>1,2>2,3>3"));
        for i in 1..=n {
            let ei = PartialPerm::e(n, i).unwrap();
            assert_eq!(ei.rank(), n - 1);
            assert_eq!(ei.apply(i), None);
            assert_eq!(ei.then(&ei), ei);
            for j in 1..=n {
                let ej = PartialPerm::e(n, j).unwrap();
                let both: Vec<usize> = (1..=n).filter(|&p| p != i && p != j).collect();
                assert_eq!(ei.then(&ej), PartialPerm::identity_on(n, &both).unwrap());
                assert_eq!(ei.then(&ej), ej.then(&ei));
            }
        }
        for set in subsets(n) {
            let prod = set.iter().fold(PartialPerm::identity(n), |acc, &i| {
                acc.then(&PartialPerm::e(n, i).unwrap())
            });
            let rest: Vec<usize> = (1..=n).filter(|p| !set.contains(p)).collect();
            assert_eq!(prod, PartialPerm::identity_on(n, &rest).unwrap());
        }
        assert!(PartialPerm::e(4, 0).is_err());
        assert!(PartialPerm::e(4, 5).is_err());
    }

    #[test]
    fn order_classification_examples() {
        let a2 = pp("n=5;2>5,3>3,4>2,5>1");
        let f = a2.classify_order();
        assert!(f.order_reversing && !f.order_preserving);
        let a3 = pp("n=5;1>2,3>3,4>4,5>1");
        let f = a3.classify_order();
        assert!(f.orientation_preserving && !f.order_preserving);
        // sequence (2,1,5,4,3) is anti-cyclic but not cyclic
        let a4 = pp("n=5;1>2,2>1,3>5,4>4,5>3");
        let f = a4.classify_order();
        assert!(f.orientation_reversing && !f.orientation_preserving);
        let id = PartialPerm::identity_on(5, &[1, 2, 4]).unwrap().classify_order();
        assert!(id.order_preserving && id.orientation_preserving);
        for small in [pp("n=5;"), pp("n=5;3>1")] {
            let f = small.classify_order();
            assert!(f.order_preserving && f.order_reversing);
            assert!(f.orientation_preserving && f.orientation_reversing);
        }
    }

    #[test]
    fn construction_rejects_bad_maps() {
        assert_eq!(PartialPerm::new(3, [(1, 2), (2, 2)]), Err(Error::NotInjective(2)));
        assert_eq!(PartialPerm::new(3, [(1, 2), (1, 3)]), Err(Error::DuplicateDomain(1)));
        assert!(matches!(
            PartialPerm::new(3, [(4, 1)]),
            Err(Error::PointOutOfRange { .. })
        ));
        assert!(PartialPerm::new(0, []).is_err());
    }

    #[test]
    fn text_form() {
        let s = "n=5;2>1,4>3,5>4";
        assert_eq!(pp(s).to_string(), s);
        assert_eq!(pp("n=5;").to_string(), "n=5;");
        for bad in [
            "n=5;4>3,2>1",
            "n=5; 2>1",
            "n=05;2>1",
            "n=5;2>1,",
            "n=5",
            "5;2>1",
            "n=5;2-1",
        ] {
            assert!(bad.parse::<PartialPerm>().is_err(), "{bad} accepted");
        }
        assert!(matches!(
            "n=5;4>3,2>1".parse::<PartialPerm>(),
            Err(Error::NonCanonical { .. })
        ));
    }

    #[test]
    fn json_form() {
        let a = pp("n=5;2>1,4>3,5>4");
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"n":5,"map":[[2,1],[4,3],[5,4]]}"#);
        assert_eq!(serde_json::from_str::<PartialPerm>(&text).unwrap(), a);
        assert!(serde_json::from_str::<PartialPerm>(r#"{"n":3,"map":[[1,2],[2,2]]}"#).is_err());
    }
}
