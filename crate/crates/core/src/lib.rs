//! Finite presentations of Ellis semigroup kernels.
//!
//! A substitution shift of constant length whose columns reach a common
//! rank has an Ellis semigroup whose kernel is a finite Rees matrix
//! semigroup over the fibre of a singular point. This crate computes that
//! presentation, compares presentations up to isomorphism, lifts
//! substitutions along group cocycles, and handles codings of irrational
//! rotations with exact quadratic arithmetic.
//!
//! ```
//! use ellis_core::kernel::{kernel_report, AnalysisOptions};
//! use ellis_core::rees::ReesPresentation;
//! use ellis_core::subst::Substitution;
//!
//! # fn main() -> ellis_core::error::Result<()> {
//! let s = Substitution::parse("ab", &["ab", "ba"])?;
//! let report = kernel_report(&s, &AnalysisOptions::default())?;
//! assert!(report.to_presentation()?.is_isomorphic(&ReesPresentation::m2())?);
//! # Ok(())
//! # }
//! ```
//!
//! The guide in `book/` walks through each module; its snippets run as
//! doc-tests of this crate.

pub mod covering;
pub mod error;
pub mod group;
pub mod kernel;
pub mod map;
pub mod rees;
pub mod semigroup;
pub mod sturmian;
pub mod subst;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/substitutions.md")]
    mod substitutions {}
    #[doc = include_str!("../../../book/src/semigroups.md")]
    mod semigroups {}
    #[doc = include_str!("../../../book/src/rees.md")]
    mod rees {}
    #[doc = include_str!("../../../book/src/kernels.md")]
    mod kernels {}
    #[doc = include_str!("../../../book/src/covers.md")]
    mod covers {}
    #[doc = include_str!("../../../book/src/sturmian.md")]
    mod sturmian {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
