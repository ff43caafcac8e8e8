//! Combinatorial incidence configurations and their polycyclic straight-line
//! realizations: Levi graphs, automorphism groups, semi-regular quotients,
//! voltage-labeled reduced Levi graphs with lifts, plane-geometry primitives,
//! parameterized construction programs with closure solving, and celestial
//! configurations.
//!
//! The bundled data in [`data`] ships the 3x3x3 grid configuration, its
//! reduced Levi graphs over the cyclic groups of order 3 and 9 and over
//! Z3 x Z3, and the construction programs that realize it with 3-fold
//! rotational symmetry (strongly) and 9-fold symmetry (weakly).

pub mod analyze;
pub mod celestial;
pub mod covers;
pub mod data;
pub mod error;
pub mod formats;
pub mod geom;
pub mod graph;
pub mod incidence;
pub mod perm;
pub mod realizer;
pub mod render;

pub use error::{Error, Result};
pub use geom::{Circle2, Line2, Parabola2, Point2, Similarity2, DEGENERACY_TOL, INCIDENCE_TOL};
pub use graph::{isomorphic, Graph, VertexClass};
pub use incidence::IncidenceStructure;
pub use perm::{Perm, PermGroup};
