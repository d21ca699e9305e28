//! Homological calculator for graded quotients of polynomial rings over a
//! prime field, centered on complete intersections: minimal free
//! resolutions, cohomology operators, Ext modules, and the asymptotic
//! behavior of depth and Bass-type invariants along families of modules.

pub mod cli;
pub mod error;
pub mod experiment;
pub mod ext;
pub mod fp;
pub mod freemod;
pub mod grid;
pub mod groebner;
pub mod koszul;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod report;
pub mod resolution;
pub mod ring;
pub mod runner;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use fp::{Fp, DEFAULT_PRIME};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{PolyRing, Polynomial};
