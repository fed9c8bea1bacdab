//! Representations as integer weight data and the fixed/moving split of a
//! fiber under an isotropy subgroup.

use std::fmt;

use thiserror::Error;

use crate::group_lattice::{AmbientGroup, GroupError, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{subgroup} is not a subgroup of the acting group {group}")]
    NotASubgroup {
        group: AmbientGroup,
        subgroup: Subgroup,
    },
    #[error("representations of different groups ({0} vs {1}) cannot be combined")]
    GroupMismatch(AmbientGroup, AmbientGroup),
}

/// Finite-dimensional real representation: complex lines with integer weights
/// (weight `w` means `λ` acts by `λ^w`) plus trivial real summands.
///
/// The weights form a multiset and are kept sorted. Over `Z_n` they are stored
/// reduced into `[0, n)`; over the circle they keep their sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    group: AmbientGroup,
    weights: Vec<i64>,
    trivial_real_dim: usize,
}

impl Representation {
    pub fn new(
        group: AmbientGroup,
        weights: impl IntoIterator<Item = i64>,
        trivial_real_dim: usize,
    ) -> Result<Self, RepresentationError> {
        if group == AmbientGroup::Cyclic(0) {
            return Err(GroupError::ZeroOrder.into());
        }
        let m = group.modulus() as i64;
        let mut weights: Vec<i64> = weights
            .into_iter()
            .map(|w| if m == 0 { w } else { w.rem_euclid(m) })
            .collect();
        weights.sort_unstable();
        Ok(Representation {
            group,
            weights,
            trivial_real_dim,
        })
    }

    /// Circle representation; infallible since every integer is a weight.
    pub fn circle(weights: impl IntoIterator<Item = i64>, trivial_real_dim: usize) -> Self {
        Self::new(AmbientGroup::Circle, weights, trivial_real_dim).expect("circle weights")
    }

    pub fn zero(group: AmbientGroup) -> Self {
        Representation {
            group,
            weights: Vec::new(),
            trivial_real_dim: 0,
        }
    }

    pub fn group(&self) -> AmbientGroup {
        self.group
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn trivial_real_dim(&self) -> usize {
        self.trivial_real_dim
    }

    pub fn real_rank(&self) -> usize {
        2 * self.weights.len() + self.trivial_real_dim
    }

    pub fn is_zero(&self) -> bool {
        self.real_rank() == 0
    }

    /// Whether `h` is a subgroup of the group this representation is of.
    fn admits(&self, h: &Subgroup) -> bool {
        match self.group {
            AmbientGroup::Circle => h.ambient() == AmbientGroup::Circle,
            AmbientGroup::Cyclic(n) => {
                let ambient_ok = match h.ambient() {
                    AmbientGroup::Circle => true,
                    AmbientGroup::Cyclic(big) => big % n == 0,
                };
                ambient_ok && h.order() != 0 && n % h.order() == 0
            }
        }
    }

    /// Restriction to the subgroup `h`: weights reduce mod `|h|`, nothing
    /// changes for the full circle, everything becomes weight 0 for `e`.
    pub fn restrict(&self, h: &Subgroup) -> Result<Representation, RepresentationError> {
        if !self.admits(h) {
            return Err(RepresentationError::NotASubgroup {
                group: self.group,
                subgroup: *h,
            });
        }
        Representation::new(
            h.as_group(),
            self.weights.iter().copied(),
            self.trivial_real_dim,
        )
    }

    /// The `h`-fixed subspace of the restriction.
    pub fn fixed_part(&self, h: &Subgroup) -> Result<Representation, RepresentationError> {
        let r = self.restrict(h)?;
        Ok(Representation {
            group: r.group,
            weights: r.weights.iter().copied().filter(|&w| w == 0).collect(),
            trivial_real_dim: r.trivial_real_dim,
        })
    }

    /// The complement of [`fixed_part`](Self::fixed_part): all summands `h`
    /// acts on nontrivially.
    pub fn moving_part(&self, h: &Subgroup) -> Result<Representation, RepresentationError> {
        let r = self.restrict(h)?;
        Ok(Representation {
            group: r.group,
            weights: r.weights.into_iter().filter(|&w| w != 0).collect(),
            trivial_real_dim: 0,
        })
    }

    /// Normal form as a real representation: weights up to sign (and mod the
    /// group order), with weight-0 lines folded into the trivial part.
    pub fn real_form(&self) -> (Vec<u64>, usize) {
        let m = self.group.modulus();
        let mut classes = Vec::new();
        let mut trivial = self.trivial_real_dim;
        for &w in &self.weights {
            let a = w.unsigned_abs();
            let c = if m == 0 { a } else { (a % m).min(m - a % m) };
            if c == 0 {
                trivial += 2;
            } else {
                classes.push(c);
            }
        }
        classes.sort_unstable();
        (classes, trivial)
    }

    /// Isomorphism of underlying real representations of the same group.
    pub fn is_isomorphic(&self, other: &Representation) -> bool {
        self.group == other.group && self.real_form() == other.real_form()
    }

    pub fn direct_sum(
        &self,
        other: &Representation,
    ) -> Result<Representation, RepresentationError> {
        if self.group != other.group {
            return Err(RepresentationError::GroupMismatch(self.group, other.group));
        }
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        weights.sort_unstable();
        Ok(Representation {
            group: self.group,
            weights,
            trivial_real_dim: self.trivial_real_dim + other.trivial_real_dim,
        })
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.group)?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")?;
        if self.trivial_real_dim > 0 {
            write!(f, "+R^{}", self.trivial_real_dim)?;
        }
        Ok(())
    }
}
