//! Group homology from free simplicial resolutions, with an independent bar oracle.

pub mod bar;
pub mod barseq;
pub mod e_complex;
pub mod hopf;
pub mod pairing;

pub use bar::{bar_complex, bar_oracle};
pub use barseq::{bar_sequence_tests, BarChain, BarSeqReport};
pub use e_complex::{e_complex, ebar_complex, DegreeResult, EBarComplex, EComplex};
pub use hopf::{dbar_class, hopf_check, HopfCheck, HopfWitness};
pub use pairing::{pair_with, pairing};
