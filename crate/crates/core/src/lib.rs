//! Exact linear algebra for the doubled Odd graph: its orbit (centralizer)
//! algebra with respect to a fixed vertex, the Terwilliger algebra, and the
//! covering onto the Odd graph.

pub mod cache;
pub mod centralizer;
pub mod combinatorics;
pub mod covering;
pub mod error;
pub mod export;
pub mod formulas;
pub mod linalg;
pub mod report;
pub mod terwilliger;

pub use error::{Error, Result};
