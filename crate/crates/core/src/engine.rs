//! A group bundled with the structure maps, optionally sabotaged.
//!
//! Every suite evaluates Γ, Σ and sumsets through an [`Engine`]. A deliberately
//! corrupted engine lets the test suite prove that each check can actually fail.

use serde::Serialize;

use crate::group::FiniteGroup;
use crate::structure;
use crate::subset::{self, Subset};

/// A deliberate defect injected into an [`Engine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// `Γ` tests `ω − β ∈ x` instead of `ω + β ∈ x`.
    FlippedGammaSign,
    /// `x + y` is computed as `y + x`.
    SwappedSumsetOperands,
    /// One side of each lattice identity swaps `∧` and `+`.
    LatticeMeetJoinSwap,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [
        Mutation::FlippedGammaSign,
        Mutation::SwappedSumsetOperands,
        Mutation::LatticeMeetJoinSwap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::FlippedGammaSign => "flipped-gamma-sign",
            Mutation::SwappedSumsetOperands => "swapped-sumset-operands",
            Mutation::LatticeMeetJoinSwap => "lattice-meet-join-swap",
        }
    }

    pub fn from_name(name: &str) -> Option<Mutation> {
        Mutation::ALL.into_iter().find(|m| m.name() == name)
    }
}

/// Evaluates the structure maps of one group. Operands must belong to that group.
#[derive(Debug, Clone, Copy)]
pub struct Engine<'g> {
    pub group: &'g FiniteGroup,
    pub mutation: Option<Mutation>,
}

impl<'g> Engine<'g> {
    pub fn new(group: &'g FiniteGroup) -> Self {
        Engine {
            group,
            mutation: None,
        }
    }

    pub fn with_mutation(group: &'g FiniteGroup, mutation: Option<Mutation>) -> Self {
        Engine { group, mutation }
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn gamma(&self, x: &Subset, a: &Subset, y: &Subset, b: &Subset, z: &Subset) -> Subset {
        if self.mutation == Some(Mutation::FlippedGammaSign) {
            structure::gamma_flipped_sign(self.group, x, a, y, b, z)
        } else {
            structure::gamma_unchecked(self.group, x, a, y, b, z)
        }
    }

    pub fn gamma_check(&self, x: &Subset, a: &Subset, y: &Subset, b: &Subset, z: &Subset) -> Subset {
        structure::gamma_check_unchecked(self.group, x, a, y, b, z)
    }

    pub fn sigma(&self, b: &Subset, x: &Subset, y: &Subset, z: &Subset) -> Subset {
        structure::sigma_unchecked(self.group, b, x, y, z)
    }

    pub fn sigma_check(&self, b: &Subset, x: &Subset, y: &Subset, z: &Subset) -> Subset {
        structure::sigma_check_unchecked(self.group, b, x, y, z)
    }

    pub fn sumset(&self, x: &Subset, y: &Subset) -> Subset {
        if self.mutation == Some(Mutation::SwappedSumsetOperands) {
            subset::sumset_unchecked(self.group, y, x)
        } else {
            subset::sumset_unchecked(self.group, x, y)
        }
    }

    pub fn swaps_lattice_ops(&self) -> bool {
        self.mutation == Some(Mutation::LatticeMeetJoinSwap)
    }
}
