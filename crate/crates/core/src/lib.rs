//! Exact homological algebra for finitely presented modules and for diagrams
//! of them indexed by finite categories: derived functors, long exact
//! sequences, balanced Tor, and the spectral sequence of a composite.

pub mod abelian;
pub mod error;
pub mod linalg;
pub mod module;

pub use abelian::{AbelianCategory, Biproduct, Image};
pub use error::{Error, Result};
pub use module::{Element, ModCat, ModMor, Module, Ring};
pub mod diagram;
pub mod functor;
pub mod homology;
pub mod bifunctor;
pub mod smallcat;
pub mod spectral;

pub use diagram::{DiagMor, Diagram, DiagramCat};
pub use smallcat::FinCat;
pub mod random;
pub mod suites;

pub use spectral::{grothendieck_ss, ss_componentwise, ss_pages, DoubleComplex, SSResult};
pub use suites::{Suite, SuiteReport};
