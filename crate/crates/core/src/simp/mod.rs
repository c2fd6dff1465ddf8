//! Simplicial operators, truncated simplicial groups and the Moore filtration.

pub mod dold_kan;
pub mod group;
pub mod identities;
pub mod moore;
pub mod op;

pub use group::{Augmented, FiniteSimplicialGroup, FreeLevel, FreeSimplicialGroup, SimplicialGroup};
pub use identities::{check_augmentation, check_homomorphisms, check_simplicial_identities, IdentityReport, IdentityViolation};
pub use moore::{
    a_sequence, boundary_of_retract, graded_a_sequence, check_split, homotopy_groups, lambda, moore_member, moore_square_witness,
    random_moore_cycle, retract, FiniteGroupDescription,
};
pub use op::{OpSymbol, SimplicialOp};
