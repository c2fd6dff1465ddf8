pub mod chainlab;
pub mod cube;
pub mod error;
pub mod freegrp;
pub mod homology;
pub mod resolve;
pub mod simp;
pub mod suites;

pub use error::{Error, Result};
