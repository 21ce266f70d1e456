//! Exact computations on finite regular cell complexes with the intersection
//! property: Cohen-Macaulay criteria, enriched (co)homology, square-free
//! modules and the hexagon of free square-free complexes.

pub mod builtins;
pub mod cell;
pub mod cm;
pub mod error;
pub mod field;
pub mod free;
pub mod hexagon;
pub mod homology;
pub mod linalg;
pub mod par;
pub mod poset;
pub mod simplicial;
pub mod sqfree;
pub mod subset;
pub mod table;

pub use cell::{Cell, CellComplex, ComplexDescription};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use homology::{ChainComplex, GradedPieceTable, ReducedHomology};
pub use linalg::Matrix;
pub use poset::Poset;
pub use simplicial::SimplicialComplex;
pub use subset::VertexSet;
