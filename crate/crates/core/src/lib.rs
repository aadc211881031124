//! Exact q-series engine for N=4 superconformal characters, their mock
//! modular decompositions, and elliptic genera of hyper-Kähler manifolds.

pub mod characters;
pub mod mock;
pub mod error;
pub mod genus;
pub mod modular;
pub mod numerics;
pub mod par;
pub mod registry;
pub mod series;

pub use error::{Error, Result};
pub use par::Exec;
pub use series::{Exp, QSeries, SpecialPoint, TailBound, YPoly};
