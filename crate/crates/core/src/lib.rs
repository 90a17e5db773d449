//! Permutation triples and the algebra they carry.
//!
//! A map on `n` darts is a pair of permutations `σ` (rotation at vertices)
//! and `α` (a fixed-point-free involution gluing darts into edges), with
//! faces `φ` completing the product `φ∘α∘σ = id`. From that data this crate
//! builds the medial quiver with its gentle relations, the surface order
//! descriptor, the periodic projective resolutions of the simple modules,
//! and an invariant signature that no Galois conjugation can change.
//!
//! ```
//! use mapforge::Constellation;
//!
//! let torus = Constellation::map_from_cycles(6, &[&[1, 2, 3], &[4, 5, 6]], &[&[1, 4], &[2, 5], &[3, 6]])?;
//! assert_eq!(torus.genus(), 1);
//! assert_eq!(torus.phi().to_string(), "(1,6,2,4,3,5)");
//! # Ok::<(), mapforge::Error>(())
//! ```

pub mod constellation;
pub mod error;
pub mod format;
pub mod galois;
pub mod orders;
pub mod permutation;
pub mod quiver;
pub mod random;
pub mod resolutions;

pub use constellation::{Constellation, Edge, Mode, ValidationReport};
pub use error::{Error, Result};
pub use format::{parse_constellation, parse_constellation_file, ParseError};
pub use permutation::{Partition, Permutation};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/constellations.md")]
    mod constellations {}
    #[doc = include_str!("../../../book/src/medial-quivers.md")]
    mod medial_quivers {}
    #[doc = include_str!("../../../book/src/surface-orders.md")]
    mod surface_orders {}
    #[doc = include_str!("../../../book/src/resolutions.md")]
    mod resolutions {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
}
