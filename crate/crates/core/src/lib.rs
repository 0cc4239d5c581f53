//! Persistent cohomology of cellular sheaves on filtered simplicial
//! complexes over prime fields.
//!
//! Two families of persistence are covered: a fixed complex with a diagram
//! of sheaves ([`type_a`]), and a fixed sheaf restricted along a filtration
//! ([`type_t`]). Each has a pointwise engine and a graded engine that
//! reduces one complex of free `F[t]`-modules.

pub mod bipersistence;
pub mod cohomology;
pub mod complex;
pub mod error;
pub mod field;
pub mod graded;
pub mod io;
pub mod labeled;
pub mod matrix;
pub mod persistence;
pub mod sheaf;
pub mod type_a;
pub mod type_t;

pub use complex::{incidence_sign, vietoris_rips, FilteredComplex, Simplex, SimplicialMap};
pub use error::{Error, Result};
pub use field::Field;
pub use matrix::{express, Matrix, Solver};
pub use persistence::{Bar, Barcode, CopersistenceModule, PersistenceModule};
pub use sheaf::{unit_map, CellularCosheaf, CellularSheaf, SheafDiagram, SheafMorphism};
