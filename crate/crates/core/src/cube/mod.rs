//! Cubes extracted from augmented simplicial chain complexes, their fibers,
//! fibration sequences and the filtration by connecting maps.

pub mod cube;
pub mod fibration;
pub mod functor;
pub mod suite;

pub use cube::{build_cube, iterated_fiber, iterated_homotopy_cofiber, iterated_homotopy_fiber, restrict_tau, Cube, IteratedFiber, Total};
pub use fibration::{
    compare_fibers, duality_holds, fibration_sequence, filtration, filtration_oracle, induced_filtration_map, resolution_hypothesis, same_subspace,
    FiberComparison, FibrationSequence, FiltrationResult, InducedFiltration,
};
pub use functor::{degeneracy_split, staircase, AugChainFunctor, DoubleComplex, NatTrans, Piece};
pub use suite::{random_functor, run_cube_suite, CubeSuiteKind, CubeSuiteReport};
