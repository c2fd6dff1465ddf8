pub mod complex;
pub mod les;
pub mod matrix;
pub mod qlinalg;
pub mod snf;

pub use complex::{ChainComplex, ChainMap, HomologyBasis, HomologyGroup, Ring};
pub use matrix::SparseIntMatrix;
