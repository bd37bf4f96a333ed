//! Exact ab-index and cd-index computations for quasi-graded posets,
//! together with the arrangement machinery that produces them: intersection
//! posets, the induced face poset `Q`, and rational subspace, spherical and
//! toric front-ends.

pub mod arrangements;
pub mod flagenum;
pub mod geometry;
pub mod io;
pub mod ncpoly;
pub mod operators;
pub mod poset;

pub use arrangements::{ArrangementError, IntersectionPoset, StratificationResult};
pub use flagenum::{EulerData, FlagError, FlagVector};
pub use geometry::{AffineSubspace, GeometryError, RationalMatrix, SubspaceArrangement};
pub use ncpoly::{Ab, AbPolynomial, AbTensor, AbWord, Cd, CdPolynomial, CdWord};
pub use poset::{PosetData, PosetError, QuasiGradedPoset, Violation};

use thiserror::Error;

/// Umbrella error for callers that mix modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Io(#[from] io::FormatError),
}
