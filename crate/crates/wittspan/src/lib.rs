//! Exact arithmetic of symmetric bilinear forms over the rationals.
//!
//! The crate computes the classifying invariants of a diagonal form (rank,
//! signature, squarefree discriminant, Hasse symbols), decides isotropy over
//! ℝ, ℚ_p and ℚ, evaluates the residue maps ∂_p into the Witt groups W(𝔽_p),
//! and minimizes rank within a ∂-fiber to obtain the Witt span, a lower bound
//! for the concordance crosscap number of a knot presented by a Seifert
//! matrix. All computation is over arbitrary-precision integers and
//! rationals; nothing is floating point and no isotropic vectors are ever
//! constructed.

pub mod arith;
pub mod error;
pub mod forms;
pub mod hilbert;
pub mod knots;
pub mod local;
pub mod span;
pub mod witt;

pub use error::Error;
pub use forms::{DiagonalForm, FormInvariants, SymmetricMatrix};
pub use knots::{BoundsReport, KnotInput, PretzelFamily, Presentation};
pub use witt::{DelImage, WfpElement, WittClassQ};

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
