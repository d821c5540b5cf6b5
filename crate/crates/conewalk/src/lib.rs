//! Subdivision of glued polyhedral cell complexes into ideal triangulations.
//!
//! The pipeline: build a [`complex::CellComplex`] from polyhedral cells and
//! face gluings, pick a diagonal apex for every 2-cell (either the staged
//! dodecahedral assigner in [`assign`], the trivial path for triangle-faced
//! cells, or the exhaustive [`oracle`]), then cone every cell to a vertex
//! where its diagonals meet ([`cone`]) and assemble the global tetrahedral
//! gluing table. [`geometry`] certifies the resulting tetrahedra as non-flat
//! on the regular ideal solids, and [`io`] provides the text formats, the
//! seeded random-complex generator, and the built-in examples.

pub mod assign;
pub mod complex;
pub mod cone;
pub mod cycles;
pub mod geometry;
pub mod io;
pub mod oracle;
pub mod template;

pub use complex::{CellComplex, ComplexError, FaceGluing, FaceRef};
pub use template::{PolyhedronKind, PolyhedronTemplate};
