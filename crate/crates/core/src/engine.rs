//! Finite inverse monoids of partial permutations: closure from generators,
//! Green's relations, and the distance-sequence description of `J`.

use std::collections::HashMap;

use serde::Serialize;

use crate::dihedral::DihedralElement;
use crate::error::{Error, Result};
use crate::geometry::{distance_sequence_sorted, DistanceSequence};
use crate::kind::MonoidKind;
use crate::perm::PartialPerm;

/// A monoid listed in canonical (sorted) order.
///
/// When produced by [`close`], `words[i]` holds generator indices whose
/// product is `elements[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedMonoid {
    n: usize,
    elements: Vec<PartialPerm>,
    words: Option<Vec<Vec<usize>>>,
}

impl EnumeratedMonoid {
    /// Wraps an arbitrary element set; sorts and deduplicates it.
    pub fn from_elements(n: usize, elements: impl IntoIterator<Item = PartialPerm>) -> Result<Self> {
        let mut elements: Vec<PartialPerm> = elements.into_iter().collect();
        if let Some(bad) = elements.iter().find(|e| e.n() != n) {
            return Err(Error::AmbientMismatch {
                left: n,
                right: bad.n(),
            });
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(EnumeratedMonoid {
            n,
            elements,
            words: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[PartialPerm] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, alpha: &PartialPerm) -> Option<usize> {
        self.elements.binary_search(alpha).ok()
    }

    pub fn contains(&self, alpha: &PartialPerm) -> bool {
        self.position(alpha).is_some()
    }

    /// Generator-index word recorded for `alpha` during closure.
    pub fn word_of(&self, alpha: &PartialPerm) -> Option<&[usize]> {
        let words = self.words.as_ref()?;
        self.position(alpha).map(|i| words[i].as_slice())
    }

    /// First element whose inverse is missing, if any.
    pub fn missing_inverse(&self) -> Option<&PartialPerm> {
        self.elements.iter().find(|e| !self.contains(&e.inverse()))
    }

    /// First pair whose product falls outside the set, if any.
    pub fn non_closed_pair(&self) -> Option<(&PartialPerm, &PartialPerm)> {
        for a in &self.elements {
            for b in &self.elements {
                if !self.contains(&a.then(b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn idempotents(&self) -> Vec<PartialPerm> {
        self.elements.iter().filter(|e| e.then(e) == **e).cloned().collect()
    }

    /// Number of elements of each rank, indexed by rank.
    pub fn rank_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n + 1];
        for e in &self.elements {
            counts[e.rank()] += 1;
        }
        counts
    }
}

/// Monoid generated by `generators` (always contains the full identity).
pub fn close(n: usize, generators: &[PartialPerm]) -> Result<EnumeratedMonoid> {
    let workers = std::thread::available_parallelism().map_or(1, |w| w.get());
    close_with_workers(n, generators, workers)
}

/// Breadth-first right-multiplication closure.
///
/// The element list and the recorded words do not depend on `workers`: each
/// layer's products are computed in parallel but merged in frontier order,
/// then generator order.
pub fn close_with_workers(n: usize, generators: &[PartialPerm], workers: usize) -> Result<EnumeratedMonoid> {
    if n == 0 {
        return Err(Error::InvalidN { n, min: 1 });
    }
    if let Some(bad) = generators.iter().find(|g| g.n() != n) {
        return Err(Error::AmbientMismatch {
            left: n,
            right: bad.n(),
        });
    }
    let workers = workers.max(1);

    let mut found: Vec<PartialPerm> = vec![PartialPerm::identity(n)];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut index: HashMap<PartialPerm, usize> = HashMap::new();
    index.insert(found[0].clone(), 0);
    let mut frontier: Vec<usize> = vec![0];

    while !frontier.is_empty() {
        let products = expand(&found, &frontier, generators, workers);
        let mut next = Vec::new();
        for (&from, row) in frontier.iter().zip(products) {
            for (gen, product) in row.into_iter().enumerate() {
                if index.contains_key(&product) {
                    continue;
                }
                let id = found.len();
                index.insert(product.clone(), id);
                found.push(product);
                parent.push(Some((from, gen)));
                next.push(id);
            }
        }
        frontier = next;
    }

    let word = |mut id: usize| {
        let mut w = Vec::new();
        while let Some((from, gen)) = parent[id] {
            w.push(gen);
            id = from;
        }
        w.reverse();
        w
    };
    let mut entries: Vec<(PartialPerm, Vec<usize>)> =
        found.into_iter().enumerate().map(|(id, e)| (e, word(id))).collect();
    entries.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    let (elements, words) = entries.into_iter().unzip();
    Ok(EnumeratedMonoid {
        n,
        elements,
        words: Some(words),
    })
}

fn expand(
    found: &[PartialPerm],
    frontier: &[usize],
    generators: &[PartialPerm],
    workers: usize,
) -> Vec<Vec<PartialPerm>> {
    let row = |&id: &usize| -> Vec<PartialPerm> { generators.iter().map(|g| found[id].then(g)).collect() };
    if workers == 1 || frontier.len() < 2 * workers {
        return frontier.iter().map(row).collect();
    }
    let chunk = frontier.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = frontier
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(row).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("closure worker panicked"))
            .collect()
    })
}

/// Green's classes as lists of indices into [`EnumeratedMonoid::elements`].
/// Classes are ordered by their smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenDecomposition {
    pub l: Vec<Vec<usize>>,
    pub r: Vec<Vec<usize>>,
    pub h: Vec<Vec<usize>>,
    pub d: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GreenRelation {
    L,
    R,
    H,
    D,
}

impl GreenDecomposition {
    pub fn classes(&self, relation: GreenRelation) -> &[Vec<usize>] {
        match relation {
            GreenRelation::L => &self.l,
            GreenRelation::R => &self.r,
            GreenRelation::H => &self.h,
            GreenRelation::D => &self.d,
        }
    }

    /// Class label of every element under `relation`.
    pub fn labels(&self, relation: GreenRelation, len: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; len];
        for (c, class) in self.classes(relation).iter().enumerate() {
            for &i in class {
                out[i] = c;
            }
        }
        out
    }
}

fn group_by_key<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> Vec<Vec<usize>> {
    let mut slot: HashMap<K, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, k) in keys.enumerate() {
        let c = *slot.entry(k).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(i);
    }
    classes
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind((0..len).collect())
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// `L` by image, `R` by domain, `H = L ∩ R`, and `D` as the join of `L` and
/// `R`. Valid for inverse submonoids of `I_n`; anything else is rejected.
pub fn green_structural(monoid: &EnumeratedMonoid) -> Result<GreenDecomposition> {
    if let Some(e) = monoid.missing_inverse() {
        return Err(Error::NotInverse(e.to_string()));
    }
    let elems = monoid.elements();
    let l = group_by_key(elems.iter().map(|e| e.image()));
    let r = group_by_key(elems.iter().map(|e| e.domain()));
    let h = group_by_key(elems.iter().map(|e| (e.domain(), e.image())));
    let mut uf = UnionFind::new(elems.len());
    for class in l.iter().chain(&r) {
        for &i in &class[1..] {
            uf.union(class[0], i);
        }
    }
    let d = group_by_key((0..elems.len()).map(|i| uf.find(i)));
    Ok(GreenDecomposition { l, r, h, d })
}

/// Precomputed data for the distance-sequence `J` test of one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JInvariant {
    rank: usize,
    own: Option<DistanceSequence>,
    /// Sequences `d(dom(β)τ)` over the transforms `τ` allowed by the kind.
    reachable: Vec<DistanceSequence>,
}

impl JInvariant {
    pub fn new(alpha: &PartialPerm, kind: MonoidKind) -> Self {
        let n = alpha.n();
        let rank = alpha.rank();
        let dom = alpha.domain();
        if rank < 2 {
            return JInvariant {
                rank,
                own: None,
                reachable: Vec::new(),
            };
        }
        let own = distance_sequence_sorted(n, &dom);
        let transforms: Vec<DihedralElement> = match kind {
            MonoidKind::Odi => Vec::new(),
            MonoidKind::Mdi => vec![dihedral(n, true, 0)],
            // dom(g^s β) = dom(β) g^{-s}; s ranges over all rotations
            MonoidKind::Opdi => (1..n).map(|s| dihedral(n, false, s)).collect(),
            MonoidKind::Di => (1..2 * n).map(|i| dihedral(n, i >= n, i % n)).collect(),
        };
        let mut reachable = vec![own.clone()];
        for t in transforms {
            let seq = distance_sequence_sorted(n, &t.apply_set(&dom));
            if !reachable.contains(&seq) {
                reachable.push(seq);
            }
        }
        JInvariant {
            rank,
            own: Some(own),
            reachable,
        }
    }

    /// Whether `α J β` where `self` belongs to `α` and `other` to `β`.
    pub fn related(&self, other: &JInvariant) -> bool {
        if self.rank != other.rank {
            return false;
        }
        match &self.own {
            None => true,
            Some(own) => other.reachable.contains(own),
        }
    }
}

fn dihedral(n: usize, reflect: bool, rotation: usize) -> DihedralElement {
    DihedralElement::new(n, reflect, rotation).expect("n >= 3 checked by caller")
}

/// The distance-sequence characterisation of `J` in the monoid of `kind`.
///
/// Both maps are assumed to be members of that monoid. For `Di` the allowed
/// transforms are all of `D_2n`.
pub fn j_related(alpha: &PartialPerm, beta: &PartialPerm, kind: MonoidKind) -> bool {
    if alpha.n() != beta.n() || alpha.n() < 3 {
        return false;
    }
    JInvariant::new(alpha, kind).related(&JInvariant::new(beta, kind))
}

/// Partition of the monoid induced by [`j_related`], comparing each element
/// with one representative per class found so far.
pub fn j_partition(monoid: &EnumeratedMonoid, kind: MonoidKind) -> Vec<Vec<usize>> {
    let inv: Vec<JInvariant> = monoid.elements().iter().map(|e| JInvariant::new(e, kind)).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, x) in inv.iter().enumerate() {
        match classes.iter_mut().find(|c| x.related(&inv[c[0]])) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenMismatch {
    pub alpha: PartialPerm,
    pub beta: PartialPerm,
    pub j_related: bool,
    pub same_d_class: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenCrossCheck {
    pub kind: MonoidKind,
    pub n: usize,
    pub elements: usize,
    pub d_classes: usize,
    pub pairs_checked: usize,
    pub counterexample: Option<GreenMismatch>,
}

impl GreenCrossCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Compares the `D` partition from [`green_structural`] with [`j_related`] on
/// every ordered pair of elements.
pub fn cross_check_green(monoid: &EnumeratedMonoid, kind: MonoidKind) -> Result<GreenCrossCheck> {
    let green = green_structural(monoid)?;
    let elems = monoid.elements();
    let labels = green.labels(GreenRelation::D, elems.len());
    let inv: Vec<JInvariant> = elems.iter().map(|e| JInvariant::new(e, kind)).collect();
    let mut counterexample = None;
    let mut pairs_checked = 0;
    'outer: for i in 0..elems.len() {
        for j in 0..elems.len() {
            pairs_checked += 1;
            let related = inv[i].related(&inv[j]);
            let same = labels[i] == labels[j];
            if related != same {
                counterexample = Some(GreenMismatch {
                    alpha: elems[i].clone(),
                    beta: elems[j].clone(),
                    j_related: related,
                    same_d_class: same,
                });
                break 'outer;
            }
        }
    }
    Ok(GreenCrossCheck {
        kind,
        n: monoid.n(),
        elements: elems.len(),
        d_classes: green.d.len(),
        pairs_checked,
        counterexample,
    })
}

/// `(rank, number of D-classes of that rank, class sizes)` for each rank.
pub fn d_classes_by_rank(monoid: &EnumeratedMonoid, green: &GreenDecomposition) -> Vec<(usize, usize, Vec<usize>)> {
    let mut out: Vec<(usize, usize, Vec<usize>)> = (0..=monoid.n()).map(|r| (r, 0, Vec::new())).collect();
    for class in &green.d {
        let rank = monoid.elements()[class[0]].rank();
        out[rank].1 += 1;
        out[rank].2.push(class.len());
    }
    for row in &mut out {
        row.2.sort_unstable();
    }
    out.retain(|row| row.1 > 0);
    out
}
