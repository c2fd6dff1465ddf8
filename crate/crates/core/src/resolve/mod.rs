//! Free simplicial resolutions of discrete groups and maps into `K(Q, n-1)`.

pub mod cocycle;
pub mod em;
pub mod hom;
pub mod kan;
pub mod nerve;
pub mod presentation;

pub use cocycle::Cochain;
pub use em::EMObject;
pub use hom::{cocycle_to_hom, SimplicialHom};
pub use kan::{kan_loop_group, BarLoopGroup, LazyBarLoop};
pub use nerve::{nerve, Nerve, ReducedSimplicialSet};
pub use presentation::{truncated_resolution, Presentation, PresentationFile, PresentationResolution};

use crate::freegrp::{DiscreteGroup, FiniteGroup};
use crate::simp::FreeSimplicialGroup;

/// A free resolution with enough bookkeeping to map cocycles out of it.
#[derive(Clone, Debug)]
pub enum Resolution {
    Bar(BarLoopGroup),
    Presentation(PresentationResolution),
}

impl Resolution {
    pub fn bar(g: &FiniteGroup, top: usize) -> crate::Result<Self> {
        Ok(Resolution::Bar(BarLoopGroup::new(g, top)?))
    }

    pub fn presentation(p: &Presentation, top: usize) -> crate::Result<Self> {
        Ok(Resolution::Presentation(truncated_resolution(p, top)?))
    }

    pub fn group(&self) -> &FreeSimplicialGroup {
        match self {
            Resolution::Bar(b) => &b.group,
            Resolution::Presentation(p) => &p.group,
        }
    }

    pub fn pi(&self) -> &DiscreteGroup {
        self.group().pi.as_ref().expect("augmented")
    }
}
