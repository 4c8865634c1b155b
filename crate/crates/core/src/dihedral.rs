//! The dihedral group `D_2n` acting on the right of `{1..n}`, and membership
//! of partial permutations in the dihedral inverse monoid and its submonoids.
//!
//! Elements are kept in the normal form `h^j g^k` with `j ∈ {0,1}` and
//! `0 <= k < n`, where `g` is the rotation `i ↦ i+1 (mod n)` and `h` the
//! reflection `i ↦ n-i+1`. Products read left to right, matching
//! [`PartialPerm::then`]: `i(στ) = (iσ)τ`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{is_partial_isometry, is_partial_isometry_oriented_fast};
use crate::kind::MonoidKind;
use crate::perm::PartialPerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    n: usize,
    reflect: bool,
    rotation: usize,
}

impl DihedralElement {
    pub fn new(n: usize, reflect: bool, rotation: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidN { n, min: 3 });
        }
        Ok(DihedralElement {
            n,
            reflect,
            rotation: rotation % n,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, false, 0)
    }

    pub fn g(n: usize) -> Result<Self> {
        Self::new(n, false, 1)
    }

    pub fn h(n: usize) -> Result<Self> {
        Self::new(n, true, 0)
    }

    /// All `2n` elements: rotations first, then reflections, each by exponent.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        if n < 3 {
            return Err(Error::InvalidN { n, min: 3 });
        }
        Ok([false, true]
            .into_iter()
            .flat_map(|reflect| (0..n).map(move |rotation| DihedralElement { n, reflect, rotation }))
            .collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_reflection(&self) -> bool {
        self.reflect
    }

    pub fn rotation(&self) -> usize {
        self.rotation
    }

    pub fn is_identity(&self) -> bool {
        !self.reflect && self.rotation == 0
    }

    /// `iσ` without a range check.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        let n = self.n;
        let start = if self.reflect { n - i } else { i - 1 };
        (start + self.rotation) % n + 1
    }

    pub fn apply(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.n {
            return Err(Error::PointOutOfRange { point: i, n: self.n });
        }
        Ok(self.image(i))
    }

    /// `Aσ`, sorted ascending.
    pub fn apply_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&i| self.image(i)).collect();
        out.sort_unstable();
        out
    }

    /// `στ` (first `self`, then `other`).
    pub fn multiply(&self, other: &DihedralElement) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        // g^k h = h g^{-k}
        let carried = if other.reflect {
            (n - self.rotation) % n
        } else {
            self.rotation
        };
        Ok(DihedralElement {
            n,
            reflect: self.reflect ^ other.reflect,
            rotation: (carried + other.rotation) % n,
        })
    }

    pub fn invert(&self) -> Self {
        if self.reflect {
            *self
        } else {
            DihedralElement {
                rotation: (self.n - self.rotation) % self.n,
                ..*self
            }
        }
    }

    pub fn power(&self, exponent: usize) -> Self {
        if self.reflect {
            if exponent.is_multiple_of(2) {
                DihedralElement {
                    reflect: false,
                    rotation: 0,
                    ..*self
                }
            } else {
                *self
            }
        } else {
            DihedralElement {
                rotation: (self.rotation * (exponent % self.n)) % self.n,
                ..*self
            }
        }
    }

    pub fn to_permutation(&self) -> PartialPerm {
        PartialPerm::from_sorted(self.n, (1..=self.n).map(|i| (i, self.image(i))).collect())
    }

    /// `σ|_A`. Points outside `1..n` are ignored.
    pub fn to_partial_perm(&self, set: &[usize]) -> PartialPerm {
        let mut pts: Vec<usize> = set.iter().copied().filter(|&p| p >= 1 && p <= self.n).collect();
        pts.sort_unstable();
        pts.dedup();
        PartialPerm::from_sorted(self.n, pts.into_iter().map(|i| (i, self.image(i))).collect())
    }

    pub fn extends(&self, alpha: &PartialPerm) -> bool {
        alpha.n() == self.n && alpha.pairs().iter().all(|&(a, b)| self.image(a) == b)
    }

    /// Parses `g^k` or `h*g^k` for a given ambient size.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let bad = || Error::Parse {
            what: "dihedral element",
            input: text.to_string(),
        };
        let (reflect, rest) = match text.strip_prefix("h*") {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let exp = rest.strip_prefix("g^").ok_or_else(bad)?;
        if exp.is_empty() || !exp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let k: usize = exp.parse().map_err(|_| bad())?;
        let elem = DihedralElement::new(n, reflect, k)?;
        if elem.to_string() != text {
            return Err(Error::NonCanonical {
                what: "dihedral element",
                input: text.to_string(),
                canonical: elem.to_string(),
            });
        }
        Ok(elem)
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reflect {
            f.write_str("h*")?;
        }
        write!(f, "g^{}", self.rotation)
    }
}

impl Serialize for DihedralElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Every `σ ∈ D_2n` with `σ|_{dom α} = α`, rotations first.
pub fn extensions(alpha: &PartialPerm) -> Vec<DihedralElement> {
    match DihedralElement::all(alpha.n()) {
        Ok(all) => all.into_iter().filter(|s| s.extends(alpha)).collect(),
        Err(_) => Vec::new(),
    }
}

/// Rank-2 isometries whose domain points are antipodal.
pub fn is_in_b2(alpha: &PartialPerm) -> bool {
    let n = alpha.n();
    match alpha.pairs() {
        [(a, _), (b, _)] => 2 * (b - a) == n && is_partial_isometry(alpha),
        _ => false,
    }
}

/// `|B_2|`: `n²/2` for even `n`, zero otherwise.
pub fn b2_count(n: usize) -> usize {
    if n.is_multiple_of(2) {
        n * n / 2
    } else {
        0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub in_di: bool,
    pub in_odi: bool,
    pub in_mdi: bool,
    pub in_opdi: bool,
    pub extensions: Vec<DihedralElement>,
}

impl MembershipReport {
    pub fn contains(&self, kind: MonoidKind) -> bool {
        match kind {
            MonoidKind::Di => self.in_di,
            MonoidKind::Odi => self.in_odi,
            MonoidKind::Mdi => self.in_mdi,
            MonoidKind::Opdi => self.in_opdi,
        }
    }
}

pub fn classify(alpha: &PartialPerm) -> MembershipReport {
    let extensions = extensions(alpha);
    let in_di = !extensions.is_empty();
    let flags = alpha.classify_order();
    MembershipReport {
        in_di,
        in_odi: in_di && flags.order_preserving,
        in_mdi: in_di && flags.monotone(),
        in_opdi: in_di && flags.orientation_preserving,
        extensions,
    }
}

/// Membership in `DI_n` through the isometry tests, taking the fast path
/// when the map is oriented.
pub fn is_in_di(alpha: &PartialPerm) -> bool {
    if alpha.n() < 3 {
        return false;
    }
    if alpha.rank() >= 2 && alpha.classify_order().oriented() {
        is_partial_isometry_oriented_fast(alpha)
    } else if alpha.rank() >= 2 {
        // every element of DI_n is oriented
        false
    } else {
        true
    }
}

/// Predicate form of membership, without computing extensions.
pub fn is_member(alpha: &PartialPerm, kind: MonoidKind) -> bool {
    if !is_in_di(alpha) {
        return false;
    }
    let flags = alpha.classify_order();
    match kind {
        MonoidKind::Di => true,
        MonoidKind::Odi => flags.order_preserving,
        MonoidKind::Mdi => flags.monotone(),
        MonoidKind::Opdi => flags.orientation_preserving,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(s: &str) -> PartialPerm {
        s.parse().unwrap()
    }

    fn hg(n: usize, k: usize) -> DihedralElement {
        DihedralElement::new(n, true, k).unwrap()
    }

    fn gk(n: usize, k: usize) -> DihedralElement {
        DihedralElement::new(n, false, k).unwrap()
    }

    #[test]
    fn point_action_matches_piecewise_formulas() {
        for n in 3..=9 {
            let g = DihedralElement::g(n).unwrap();
            let h = DihedralElement::h(n).unwrap();
            for i in 1..=n {
                assert_eq!(g.apply(i).unwrap(), if i < n { i + 1 } else { 1 });
                assert_eq!(h.apply(i).unwrap(), n - i + 1);
            }
            for k in 0..n {
                for i in 1..=n {
                    let rot = if i <= n - k { i + k } else { i + k - n };
                    assert_eq!(gk(n, k).image(i), rot);
                    let refl = if i <= k { k - i + 1 } else { n + k - i + 1 };
                    assert_eq!(hg(n, k).image(i), refl);
                }
                if k < n {
                    assert_eq!(hg(n, k).image(k + 1), n);
                }
            }
            assert!(g.apply(0).is_err() && g.apply(n + 1).is_err());
        }
    }

    #[test]
    fn presentation_relations() {
        for n in 3..=9 {
            let g = DihedralElement::g(n).unwrap();
            let h = DihedralElement::h(n).unwrap();
            let id = DihedralElement::identity(n).unwrap();
            assert_eq!(g.power(n), id);
            assert_eq!(h.power(2), id);
            assert_eq!(h.invert(), h);
            assert_eq!(h.multiply(&g).unwrap(), g.power(n - 1).multiply(&h).unwrap());
            assert_eq!(h.multiply(&g).unwrap(), hg(n, 1));
            assert_eq!(g.power(n - 1).multiply(&h).unwrap(), hg(n, 1));
        }
    }

    #[test]
    fn multiplication_is_composition_of_actions() {
        for n in 3..=8 {
            let all = DihedralElement::all(n).unwrap();
            assert_eq!(all.len(), 2 * n);
            for s in &all {
                assert_eq!(s.multiply(&s.invert()).unwrap(), DihedralElement::identity(n).unwrap());
                for t in &all {
                    let st = s.multiply(t).unwrap();
                    for i in 1..=n {
                        assert_eq!(st.image(i), t.image(s.image(i)));
                    }
                    assert_eq!(st.to_permutation(), s.to_permutation().then(&t.to_permutation()));
                }
            }
            let rotations: Vec<_> = all.iter().filter(|s| !s.is_reflection()).collect();
            assert_eq!(rotations.len(), n);
            for a in &rotations {
                for b in &rotations {
                    assert!(!a.multiply(b).unwrap().is_reflection());
                }
            }
        }
        assert!(gk(4, 1).multiply(&gk(5, 1)).is_err());
    }

    #[test]
    fn restrictions() {
        assert_eq!(hg(4, 1).to_partial_perm(&[1, 3]), pp("n=4;1>1,3>3"));
        assert_eq!(gk(4, 3).to_partial_perm(&[2, 4]), pp("n=4;2>1,4>3"));
        assert_eq!(gk(4, 2).to_partial_perm(&[]), PartialPerm::empty(4));
    }

    #[test]
    fn extension_examples() {
        assert_eq!(extensions(&pp("n=4;1>1,3>3")), vec![gk(4, 0), hg(4, 1)]);
        assert_eq!(extensions(&PartialPerm::empty(6)).len(), 12);
        assert_eq!(extensions(&pp("n=5;1>3,2>4,3>5,5>2")), vec![gk(5, 2)]);
        assert!(extensions(&pp("n=5;1>1,2>3")).is_empty());
    }

    #[test]
    fn b2_examples() {
        assert!(is_in_b2(&pp("n=4;1>2,3>4")));
        assert!(is_in_b2(&pp("n=4;1>4,3>2")));
        assert!(!is_in_b2(&pp("n=4;1>2,2>3")));
        assert!(!is_in_b2(&pp("n=5;1>2,3>4")));
        assert_eq!(b2_count(4), 8);
        assert_eq!(b2_count(5), 0);
    }

    #[test]
    fn classify_examples() {
        let a1 = classify(&pp("n=5;2>1,4>3,5>4"));
        assert!(a1.in_di && a1.in_odi && a1.in_mdi && a1.in_opdi);
        let a2 = classify(&pp("n=5;1>3,2>2,3>1"));
        assert!(a2.in_mdi && !a2.in_odi);
        let a3 = classify(&pp("n=5;1>3,2>4,3>5,5>2"));
        assert!(a3.in_opdi && !a3.in_odi && !a3.in_mdi);
        let none = classify(&pp("n=5;1>1,2>3"));
        assert!(!none.in_di && !none.in_odi && none.extensions.is_empty());
    }

    #[test]
    fn text_form() {
        for (text, elem) in [("g^0", gk(6, 0)), ("g^5", gk(6, 5)), ("h*g^2", hg(6, 2))] {
            assert_eq!(elem.to_string(), text);
            assert_eq!(DihedralElement::parse(text, 6).unwrap(), elem);
        }
        for bad in ["g", "h", "g^", "h*g^x", "g^6", "g^01", "hg^1", " g^1"] {
            assert!(DihedralElement::parse(bad, 6).is_err(), "{bad} accepted");
        }
    }
}
