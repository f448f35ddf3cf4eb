//! Exact arithmetic for Fourier inversion on finite abelian `p`-groups over
//! `Z^cycl[1/p]`, Gauss sums, the invertibility criterion for the maps
//! `Φ(α) : k[V] → k^{V^♯}`, and diagonalizability of group algebras over `Z/m`.

pub mod algebra;
pub mod alpha;
pub mod arith;
pub mod characters;
pub mod criterion;
pub mod diag;
pub mod error;
pub mod group;
pub mod report;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
