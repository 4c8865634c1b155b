//! Exact computations in the dihedral inverse monoid `DI_n` of partial
//! isometries of the cycle graph `C_n`, and in its submonoids `ODI_n`
//! (order-preserving), `MDI_n` (monotone) and `OPDI_n`
//! (orientation-preserving).
//!
//! Maps act on the right: `x(αβ) = (xα)β`.
//!
//! ```
//! use dimon::{card, close, standard_generators, MonoidKind};
//!
//! let gens = standard_generators(MonoidKind::Odi, 4).unwrap();
//! let odi4 = close(4, &gens.values()).unwrap();
//! assert_eq!(odi4.len() as u128, card(MonoidKind::Odi, 4).unwrap());
//! ```

pub mod certify;
pub mod dihedral;
pub mod engine;
pub mod error;
pub mod export;
pub mod formulas;
pub mod generators;
pub mod geometry;
pub mod kind;
pub mod oracle;
pub mod perm;
pub mod verify;

pub use certify::{certify_rank, lower_bound_certificate, RankCertificate, RankReport};
pub use dihedral::{classify, extensions, is_in_di, is_member, DihedralElement, MembershipReport};
pub use engine::{
    close, close_with_workers, green_structural, j_related, EnumeratedMonoid, GreenDecomposition, GreenRelation,
};
pub use error::{Error, Result};
pub use export::ExportFormat;
pub use formulas::{card, rank_formula};
pub use generators::{factorize, standard_generators, GenName, GeneratorSet, Word};
pub use geometry::{distance_sequence, DistanceSequence};
pub use kind::MonoidKind;
pub use perm::{OrderFlags, PartialPerm};
