//! Exact mod-2 characteristic-class computations for singularity-avoiding
//! maps.
//!
//! The crate is organised bottom-up:
//!
//! - [`partitions`] — integer partitions: transpose, containment,
//!   bounded enumeration, rectangle prefixing;
//! - [`symfun`] — F₂ Schur calculus: monomial/Schur conversions, binomial
//!   determinants, Steenrod squares, lowering operators;
//! - [`rings`] — truncated graded F₂ rings, manifold models (projective
//!   spaces, products, the five-dimensional Wu example), dual classes,
//!   evaluation and integration;
//! - [`obstruction`] — Thom polynomials, avoiding ideals, fold/Morin
//!   bounds, the closed-form bound classification;
//! - [`segre`] — graded Schur series: the degeneracy-locus series, its
//!   closed first-column form, duality, and twisted variants;
//! - [`locus`] — singularity-locus analysis on a manifold model: dual
//!   Segre classes, Euler-characteristic parities, slice tables;
//! - [`charseries`] — tangent characteristic series, bordism-style
//!   reduction tables, catalogued series;
//! - [`restriction`] — exact rational restriction-equation demonstrations.
//!
//! All arithmetic is exact: F₂ set semantics, big integers, or big
//! rationals. No floating point appears anywhere in the crate.

pub mod charseries;
pub mod error;
pub mod locus;
pub mod obstruction;
pub mod partitions;
pub mod restriction;
pub mod rings;
pub mod segre;
pub mod symfun;

pub use charseries::{CatalogEntry, StratumKey, TangentPoly, TauSeries};
pub use error::{Error, Result};
pub use locus::{AluffiTransform, LocusReport};
pub use obstruction::SingularityFamily;
pub use segre::GradedSchurSeries;
pub use partitions::Partition;
pub use rings::{Assignment, ManifoldModel, RingElement, RingSpec};
pub use symfun::{Mod2Poly, SchurCombo, WMonomial};
