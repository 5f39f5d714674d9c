//! Exact p-adic computations for hierarchical data.
//!
//! * [`params`], [`ok`], [`digits`], [`number`]: fixed-precision arithmetic in
//!   unramified extensions K/Q_p, Teichmüller digits and valuations.
//! * [`encoder`]: isometric encodings of strings (Baire metric) into O_K.
//! * [`dendrogram`]: p-adic dendrograms as subtrees of the Bruhat-Tits tree,
//!   ultrametric clustering and exporters.
//! * [`moduli`]: punctured projective lines, Möbius normalisation and the
//!   cell structure of dendrogram space.
//! * [`genus1`]: hyperbolic transformations, Tate quotients and the
//!   Legendre-form Tate criterion.

pub mod dendrogram;
pub mod digits;
pub mod encoder;
pub mod error;
mod fq;
pub mod genus1;
pub mod json;
pub mod moduli;
pub mod number;
pub mod ok;
pub mod params;

pub use digits::{teichmuller_lift, DigitKind, DigitSystem};
pub use error::{Error, Result};
pub use number::{PadicNumber, ProjectivePoint};
pub use ok::{OkElem, RingOp, Valuation};
pub use params::{FieldParams, FqElem};
