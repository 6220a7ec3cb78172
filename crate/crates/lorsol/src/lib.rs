//! Exact classification toolkit for left-invariant Lorentzian metrics on
//! three-dimensional Lie groups: curvature, Segre types of the Ricci
//! operator, Ricci solitons, and the associated Walker-coordinate numerics.

pub mod catalog;
pub mod cli;
pub mod curvature;
pub mod error;
pub mod exactfield;
pub mod liemodel;
pub mod linalg;
pub mod papertables;
pub mod segre;
pub mod soliton;
pub mod walker;

pub use error::LorsolError;
pub use exactfield::QuadScalar;
