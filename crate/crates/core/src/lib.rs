//! Exact combinatorics of affine Weyl groups and of the pieces of `G^delta/U_P`
//! they parametrize.
//!
//! * [`cartan`], [`weyl`]: affine Cartan matrices and group elements in the
//!   geometric representation.
//! * [`cosets`]: finite parabolic subgroups and minimal coset representatives.
//! * [`bedard`]: sequences `(J_n, w_n)`, piece descriptors and point counts.
//! * [`bitorsor`]: bitorsors over finite groups and twisted conjugacy.
//! * [`sl2`]: a brute-force model of `SL_2` lattice pairs over `F_q`.

#![allow(clippy::needless_range_loop)]

pub mod bedard;
pub mod bitorsor;
pub mod cartan;
pub mod cosets;
pub mod error;
pub mod exec;
pub mod field;
pub mod nodeset;
pub mod poly;
pub mod sl2;
pub mod weyl;

pub use cartan::CartanSpec;
pub use error::{Error, Result};
pub use exec::Exec;
pub use nodeset::NodeSet;
pub use poly::Polynomial;
pub use weyl::{ReducedWord, WeylElement};
