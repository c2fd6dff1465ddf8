//! Free groups, finite and abelian groups, homomorphisms and group rings.

pub mod abelian;
pub mod finite;
pub mod group;
pub mod hom;
pub mod ring;
pub mod word;

pub use abelian::AbelianGroup;
pub use finite::FiniteGroup;
pub use group::{DiscreteGroup, GroupElt};
pub use hom::{abelianize_images, exponent_vector, hom_compose, GroupHom};
pub use ring::GroupRingElt;
pub use word::{FreeGroup, Word};
