//! Enumeration of RB operators over `F_p`, orbit classification, and
//! verification of the catalog.

pub mod enumerate;
pub mod orbits;
pub mod packed;
pub mod verify;

pub use enumerate::{enumerate_packed, enumerate_rb, Strategy};
pub use orbits::{canonical_form, classify, match_catalog, partition_orbits, OrbitContext, OrbitReport};
pub use packed::{Fp, Mat};
