//! Named generators, words over them, and constructive factorization of
//! monoid elements into the standard generating sets.
//!
//! Generator names: `g` (rotation), `h` (reflection), `x` (shift
//! `i ↦ i+1` on `1..n-1`), `y = x⁻¹`, `e<i>` (identity off `i`),
//! `x<i> = (1 ↦ 1, 1+i ↦ n-i+1)` and `y<i> = x<i>⁻¹`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dihedral::{extensions, is_member, DihedralElement};
use crate::error::{Error, Result};
use crate::kind::MonoidKind;
use crate::perm::PartialPerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenName {
    G,
    H,
    X,
    Y,
    E(usize),
    Xi(usize),
    Yi(usize),
}

impl fmt::Display for GenName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenName::G => f.write_str("g"),
            GenName::H => f.write_str("h"),
            GenName::X => f.write_str("x"),
            GenName::Y => f.write_str("y"),
            GenName::E(i) => write!(f, "e{i}"),
            GenName::Xi(i) => write!(f, "x{i}"),
            GenName::Yi(i) => write!(f, "y{i}"),
        }
    }
}

impl Serialize for GenName {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for GenName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "generator name",
            input: s.to_string(),
        };
        let name = match s {
            "g" => GenName::G,
            "h" => GenName::H,
            "x" => GenName::X,
            "y" => GenName::Y,
            _ => {
                let mut chars = s.chars();
                let head = chars.next().ok_or_else(bad)?;
                let digits = chars.as_str();
                let canonical_index =
                    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) && !digits.starts_with('0');
                if !canonical_index {
                    return Err(bad());
                }
                let i: usize = digits.parse().map_err(|_| bad())?;
                match head {
                    'e' => GenName::E(i),
                    'x' => GenName::Xi(i),
                    'y' => GenName::Yi(i),
                    _ => return Err(bad()),
                }
            }
        };
        Ok(name)
    }
}

impl GenName {
    /// The partial permutation this name denotes in `I_n`.
    pub fn value(self, n: usize) -> Result<PartialPerm> {
        if n < 3 {
            return Err(Error::InvalidN { n, min: 3 });
        }
        let max_pair = (n - 1) / 2;
        let check_pair = |i: usize| {
            if i == 0 || i > max_pair {
                Err(Error::PointOutOfRange { point: i, n: max_pair })
            } else {
                Ok(())
            }
        };
        match self {
            GenName::G => Ok(DihedralElement::g(n)?.to_permutation()),
            GenName::H => Ok(DihedralElement::h(n)?.to_permutation()),
            GenName::X => PartialPerm::new(n, (1..n).map(|i| (i, i + 1))),
            GenName::Y => PartialPerm::new(n, (2..=n).map(|i| (i, i - 1))),
            GenName::E(i) => PartialPerm::e(n, i),
            GenName::Xi(i) => {
                check_pair(i)?;
                PartialPerm::new(n, [(1, 1), (1 + i, n - i + 1)])
            }
            GenName::Yi(i) => {
                check_pair(i)?;
                PartialPerm::new(n, [(1, 1), (n - i + 1, 1 + i)])
            }
        }
    }
}

/// A product of named generators, read left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<GenName>);

impl Word {
    pub fn new(letters: Vec<GenName>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[GenName] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Evaluates the word in `I_n` from the definitions of the names.
    pub fn evaluate(&self, n: usize) -> Result<PartialPerm> {
        self.0
            .iter()
            .try_fold(PartialPerm::identity(n), |acc, name| Ok(acc.then(&name.value(n)?)))
    }

    /// Cancels `h h` and reduces runs of `g` modulo `n`.
    fn normalized(self, n: usize) -> Word {
        let mut out: Vec<GenName> = Vec::with_capacity(self.0.len());
        for letter in self.0 {
            match letter {
                GenName::H if out.last() == Some(&GenName::H) => {
                    out.pop();
                }
                GenName::G => {
                    let run = out.iter().rev().take_while(|&&l| l == GenName::G).count();
                    if run + 1 == n {
                        out.truncate(out.len() - run);
                    } else {
                        out.push(letter);
                    }
                }
                _ => out.push(letter),
            }
        }
        Word(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "ε" {
            return Ok(Word::default());
        }
        let letters = s.split(' ').map(str::parse).collect::<Result<Vec<GenName>>>()?;
        let word = Word(letters);
        if word.is_empty() || word.to_string() != s {
            return Err(Error::Parse {
                what: "word",
                input: s.to_string(),
            });
        }
        Ok(word)
    }
}

/// Generating set of one of the monoids, with each generator's name.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    kind: MonoidKind,
    n: usize,
    gens: Vec<(GenName, PartialPerm)>,
}

impl GeneratorSet {
    pub fn from_names(kind: MonoidKind, n: usize, names: Vec<GenName>) -> Result<Self> {
        let gens = names
            .into_iter()
            .map(|name| Ok((name, name.value(n)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratorSet { kind, n, gens })
    }

    pub fn kind(&self) -> MonoidKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = GenName> + '_ {
        self.gens.iter().map(|g| g.0)
    }

    pub fn values(&self) -> Vec<PartialPerm> {
        self.gens.iter().map(|g| g.1.clone()).collect()
    }

    pub fn get(&self, name: GenName) -> Option<&PartialPerm> {
        self.gens.iter().find(|g| g.0 == name).map(|g| &g.1)
    }

    /// The set with the generator at `index` removed.
    pub fn without(&self, index: usize) -> GeneratorSet {
        let mut gens = self.gens.clone();
        gens.remove(index);
        GeneratorSet { gens, ..self.clone() }
    }

    /// Evaluates `word`, rejecting names outside this set.
    pub fn evaluate(&self, word: &Word) -> Result<PartialPerm> {
        word.letters()
            .iter()
            .try_fold(PartialPerm::identity(self.n), |acc, &name| {
                let value = self.get(name).ok_or_else(|| Error::UnknownGenerator {
                    kind: self.kind,
                    n: self.n,
                    name: name.to_string(),
                })?;
                Ok(acc.then(value))
            })
    }
}

/// The generating sets used for the rank results.
///
/// - ODI: `x, y, e_2..e_{n-1}, x_1..x_m, y_1..y_m`
/// - MDI: `h, x, e_2..e_{⌊(n+1)/2⌋}, x_1..x_m, y_1..y_m`
/// - OPDI: `g, e_n, x_1..x_m`
/// - DI: `g, h, e_n`
///
/// with `m = ⌊(n-1)/2⌋`.
pub fn standard_generators(kind: MonoidKind, n: usize) -> Result<GeneratorSet> {
    if n < 3 {
        return Err(Error::InvalidN { n, min: 3 });
    }
    let m = (n - 1) / 2;
    let xs = (1..=m).map(GenName::Xi);
    let ys = (1..=m).map(GenName::Yi);
    let names: Vec<GenName> = match kind {
        MonoidKind::Odi => [GenName::X, GenName::Y]
            .into_iter()
            .chain((2..n).map(GenName::E))
            .chain(xs)
            .chain(ys)
            .collect(),
        MonoidKind::Mdi => [GenName::H, GenName::X]
            .into_iter()
            .chain((2..=n.div_ceil(2)).map(GenName::E))
            .chain(xs)
            .chain(ys)
            .collect(),
        MonoidKind::Opdi => [GenName::G, GenName::E(n)].into_iter().chain(xs).collect(),
        MonoidKind::Di => vec![GenName::G, GenName::H, GenName::E(n)],
    };
    GeneratorSet::from_names(kind, n, names)
}

fn repeat(name: GenName, times: usize) -> impl Iterator<Item = GenName> {
    std::iter::repeat_n(name, times)
}

/// `Π e_ℓ` over `points`, largest index first.
fn e_product(points: impl Iterator<Item = usize>) -> Vec<GenName> {
    let mut pts: Vec<usize> = points.collect();
    pts.sort_unstable_by(|a, b| b.cmp(a));
    pts.into_iter().map(GenName::E).collect()
}

/// Word for `hg^k|_{{i,j}}` (`1 <= i <= k < j <= n`) over `x, y, e_ℓ, x_ℓ, y_ℓ`.
pub fn reflection_pair_word(n: usize, k: usize, i: usize, j: usize) -> Result<Word> {
    if n < 3 {
        return Err(Error::InvalidN { n, min: 3 });
    }
    if !(1 <= i && i <= k && k < j && j <= n) {
        return Err(Error::Parse {
            what: "reflection restriction (need 1 <= i <= k < j <= n)",
            input: format!("n={n} k={k} i={i} j={j}"),
        });
    }
    let gap = j - i;
    let m = (n - 1) / 2;
    let mut w = Vec::new();
    if 2 * gap == n {
        w.extend(e_product((1..=n).filter(|&l| l != i && l != j)));
        if 2 * i < k + 1 {
            w.extend(repeat(GenName::X, k + 1 - 2 * i));
        } else if 2 * i > k + 1 {
            w.extend(repeat(GenName::Y, 2 * i - k - 1));
        }
    } else {
        w.extend(repeat(GenName::Y, i - 1));
        w.push(if gap <= m {
            GenName::Xi(gap)
        } else {
            GenName::Yi(n - gap)
        });
        w.extend(repeat(GenName::X, k - i));
    }
    Ok(Word(w))
}

/// Word for an order-preserving isometry over the extended alphabet
/// `x, y, e_1..e_n, x_ℓ, y_ℓ`.
fn odi_word(alpha: &PartialPerm) -> Vec<GenName> {
    let n = alpha.n();
    let ext = extensions(alpha);
    // rotations come first, so this prefers j = 0 and then the smallest k
    let sigma = ext[0];
    let k = sigma.rotation();
    let dom = alpha.domain();
    if !sigma.is_reflection() {
        if k == 0 {
            return e_product((1..=n).filter(|l| !dom.contains(l)));
        }
        if dom.iter().all(|&a| a <= n - k) {
            let mut w = e_product((1..=n - k).filter(|l| !dom.contains(l)));
            w.extend(repeat(GenName::X, k));
            w
        } else {
            let mut w = e_product((n - k + 1..=n).filter(|l| !dom.contains(l)));
            w.extend(repeat(GenName::Y, n - k));
            w
        }
    } else {
        let (i, j) = (dom[0], dom[1]);
        reflection_pair_word(n, k, i, j)
            .expect("order-preserving reflection restrictions have i <= k < j")
            .0
    }
}

fn odi_rewrite(n: usize, letters: Vec<GenName>) -> Vec<GenName> {
    letters
        .into_iter()
        .flat_map(|l| match l {
            GenName::E(1) => vec![GenName::Y, GenName::X],
            GenName::E(i) if i == n => vec![GenName::X, GenName::Y],
            other => vec![other],
        })
        .collect()
}

fn mdi_rewrite(n: usize, letters: Vec<GenName>) -> Vec<GenName> {
    use GenName::{H, X};
    let top = n.div_ceil(2);
    odi_rewrite(n, letters)
        .into_iter()
        .flat_map(|l| match l {
            GenName::Y => vec![H, X, H],
            GenName::E(i) if i > top => vec![H, GenName::E(n - i + 1), H],
            other => vec![other],
        })
        .collect()
}

fn opdi_rewrite(n: usize, letters: Vec<GenName>) -> Vec<GenName> {
    use GenName::{E, G};
    letters
        .into_iter()
        .flat_map(|l| -> Vec<GenName> {
            match l {
                GenName::X => vec![E(n), G],
                GenName::Y => repeat(G, n - 1).chain([E(n)]).collect(),
                E(j) if j != n => repeat(G, n - j).chain([E(n)]).chain(repeat(G, j)).collect(),
                GenName::Yi(l) => repeat(G, l).chain([GenName::Xi(l)]).chain(repeat(G, l)).collect(),
                other => vec![other],
            }
        })
        .collect()
}

/// Writes `alpha` as a word over `standard_generators(kind, n)`.
///
/// - ODI: take the extension `h^j g^k` of `alpha` (a rotation when one
///   exists). Rotations give `Π e_ℓ · x^k` or `Π e_ℓ · y^{n-k}`; reflections
///   give the rank-two words of [`reflection_pair_word`].
/// - MDI: factor `alpha` (or `alpha·h` when order-reversing, then append `h`)
///   as above and substitute `y = hxh`, `e_i = h e_{n-i+1} h`.
/// - OPDI: write `alpha = g^k β` with `β` order-preserving, factor `β`, and
///   substitute `x = e_n g`, `y = g^{n-1} e_n`, `e_j = g^{n-j} e_n g^j`,
///   `y_ℓ = g^ℓ x_ℓ g^ℓ`.
///
/// The result is reduced with `g^n = h² = 1`.
pub fn factorize(alpha: &PartialPerm, kind: MonoidKind) -> Result<Word> {
    let n = alpha.n();
    if n < 3 {
        return Err(Error::InvalidN { n, min: 3 });
    }
    if !is_member(alpha, kind) {
        return Err(Error::NotMember {
            kind,
            element: alpha.to_string(),
        });
    }
    let letters = match kind {
        MonoidKind::Odi => odi_rewrite(n, odi_word(alpha)),
        MonoidKind::Mdi => {
            if alpha.classify_order().order_preserving {
                mdi_rewrite(n, odi_word(alpha))
            } else {
                let h = DihedralElement::h(n)?.to_permutation();
                let mut w = mdi_rewrite(n, odi_word(&alpha.then(&h)));
                w.push(GenName::H);
                w
            }
        }
        MonoidKind::Opdi => {
            let k = opdi_rotation(alpha);
            let shift_back = DihedralElement::new(n, false, n - k)?.to_permutation();
            let beta = shift_back.then(alpha);
            debug_assert!(is_member(&beta, MonoidKind::Odi));
            let mut w: Vec<GenName> = repeat(GenName::G, k).collect();
            w.extend(opdi_rewrite(n, odi_word(&beta)));
            w
        }
        MonoidKind::Di => {
            // h^j g^k · id_{dom α}, with e_ℓ = g^{n-ℓ} e_n g^ℓ
            let sigma = extensions(alpha)[0];
            let mut w: Vec<GenName> = Vec::new();
            if sigma.is_reflection() {
                w.push(GenName::H);
            }
            w.extend(repeat(GenName::G, sigma.rotation()));
            let im = alpha.image();
            w.extend(opdi_rewrite(n, e_product((1..=n).filter(|l| !im.contains(l)))));
            w
        }
    };
    Ok(Word(letters).normalized(n))
}

/// Rotation `k` with `g^{n-k} α` order-preserving, chosen so the factor has
/// no powers of `y`: `g^k` itself for rotation restrictions, and for rank-two
/// reflection restrictions the rotation sending one domain point to 1.
fn opdi_rotation(alpha: &PartialPerm) -> usize {
    let n = alpha.n();
    let sigma = extensions(alpha)[0];
    if !sigma.is_reflection() {
        return sigma.rotation();
    }
    let [(a, aa), (b, ba)] = alpha.pairs() else {
        unreachable!("orientation-preserving restrictions of reflections have rank <= 2")
    };
    let lead = if aa < ba { *a } else { *b };
    (n - lead + 1) % n
}
