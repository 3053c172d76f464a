//! Exact computations in crossed-product algebras `C[x,y,z] #_alpha G`.
//!
//! Graded Hochschild cohomology through the Koszul complex, lifts of Koszul
//! cocycles to Hochschild cochains, universal deformation formulas over a
//! small noncocommutative bialgebra, and the center of the resulting
//! deformed algebra. All arithmetic is exact over the Gaussian rationals.

pub mod algebra;
pub mod chainmap;
pub mod cohomology;
pub mod deform;
pub mod error;
pub mod group;
pub mod hopf;
pub mod linalg;
pub mod presets;
pub mod scalars;

pub use algebra::{Basis, CrossedElement, CrossedProduct, Monomial, Polynomial, TElement};
pub use error::{Error, Result};
pub use group::{AbelianGroup, Cocycle, DiagonalAction, GroupElement};
pub use scalars::GaussScalar;
