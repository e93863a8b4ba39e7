//! Exact engine for tilings of the plane by the TH-pentagon through its
//! windmill and ship heptiamond units.

pub mod catalog;
pub mod cn;
pub mod dlx;
pub mod format;
pub mod lattice;
pub mod pentagon;
pub mod render;
pub mod solver;
pub mod tiling;
