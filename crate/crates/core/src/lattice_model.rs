//! A lattice acting on itself: carrier `L`, addition = join, action = meet,
//! zero = bottom.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::MnesorSpace;
use crate::lattice::{FiniteLattice, GranularId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SelfActionError {
    #[error("lattice `{0}` has no bottom element to serve as zero")]
    MissingBottom(String),
}

#[derive(Clone, Debug)]
pub struct SelfActionSpace {
    lattice: FiniteLattice,
    zero: GranularId,
}

impl SelfActionSpace {
    pub fn new(lattice: FiniteLattice) -> Result<Self, SelfActionError> {
        let zero = lattice
            .bottom()
            .ok_or_else(|| SelfActionError::MissingBottom(lattice.name().into()))?;
        Ok(SelfActionSpace { lattice, zero })
    }
}

/// Same as [`SelfActionSpace::new`].
pub fn make_self_action(lattice: FiniteLattice) -> Result<SelfActionSpace, SelfActionError> {
    SelfActionSpace::new(lattice)
}

impl MnesorSpace for SelfActionSpace {
    type Elem = GranularId;

    fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    fn zero(&self) -> GranularId {
        self.zero
    }

    fn add(&self, x: &GranularId, y: &GranularId) -> GranularId {
        self.lattice.join_id(*x, *y)
    }

    fn act(&self, x: &GranularId, g: GranularId) -> GranularId {
        self.lattice.meet_id(*x, g)
    }

    /// The whole carrier; the bound is irrelevant for this model.
    fn enumerate(&self, _bound: usize) -> Vec<GranularId> {
        self.lattice.ids().collect()
    }

    fn is_total(&self, _bound: usize) -> bool {
        true
    }

    /// Number of elements strictly below `x`.
    fn weight(&self, x: &GranularId) -> usize {
        self.lattice
            .ids()
            .filter(|&y| y != *x && self.lattice.leq_id(y, *x))
            .count()
    }

    fn render(&self, x: &GranularId) -> String {
        self.lattice.label(*x)
    }

    fn describe(&self) -> String {
        format!("self:{}", self.lattice.name())
    }
}
