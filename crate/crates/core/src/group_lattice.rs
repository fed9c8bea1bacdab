//! Closed subgroups of the circle and of finite cyclic groups.
//!
//! The groups are abelian, so conjugacy classes of isotropy subgroups are just
//! subgroups and the isotropy lattice is the divisibility lattice on orders,
//! with the full circle adjoined as a top element in the circle case.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("subgroups live in different ambient groups ({0} vs {1})")]
    AmbientMismatch(AmbientGroup, AmbientGroup),
    #[error("cyclic group order must be positive")]
    ZeroOrder,
    #[error("Z{0} is not a subgroup of Z{1}")]
    NotDivisor(u64, u64),
    #[error("the full circle is not a subgroup of Z{0}")]
    FullCircleInCyclic(u64),
    #[error("arithmetic overflow computing lcm({0}, {1})")]
    Overflow(u64, u64),
    #[error("cannot parse group `{0}` (expected `S1`, `e` or `Z<n>`)")]
    Parse(String),
}

/// The acting group: the circle `S1` or the cyclic group `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AmbientGroup {
    Circle,
    Cyclic(u64),
}

impl AmbientGroup {
    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        Ok(AmbientGroup::Cyclic(n))
    }

    /// Weight modulus: `n` for `Z_n`, `0` for the circle (weights compared exactly).
    pub fn modulus(self) -> u64 {
        match self {
            AmbientGroup::Circle => 0,
            AmbientGroup::Cyclic(n) => n,
        }
    }

    pub fn is_trivial(self) -> bool {
        self == AmbientGroup::Cyclic(1)
    }

    /// Every subgroup, in increasing order. `None` for the circle, which has
    /// infinitely many.
    pub fn subgroups(self) -> Option<Vec<Subgroup>> {
        match self {
            AmbientGroup::Circle => None,
            AmbientGroup::Cyclic(n) => Some(
                (1..=n)
                    .filter(|d| n % d == 0)
                    .map(|d| Subgroup::from_order(self, d).expect("divisor of n"))
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for AmbientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbientGroup::Circle => write!(f, "S1"),
            AmbientGroup::Cyclic(n) => write!(f, "Z{n}"),
        }
    }
}

impl FromStr for AmbientGroup {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "S1" || t == "U1" || t == "circle" {
            return Ok(AmbientGroup::Circle);
        }
        if t == "e" {
            return Ok(AmbientGroup::Cyclic(1));
        }
        t.strip_prefix('Z')
            .and_then(|n| n.parse::<u64>().ok())
            .ok_or_else(|| GroupError::Parse(s.to_string()))
            .and_then(AmbientGroup::cyclic)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubgroupKind {
    Trivial,
    /// Cyclic of order `m ≥ 2`; order 1 is always stored as `Trivial`.
    Cyclic(u64),
    FullCircle,
}

/// A closed subgroup of an [`AmbientGroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subgroup {
    kind: SubgroupKind,
    ambient: AmbientGroup,
}

impl Subgroup {
    pub fn trivial(ambient: AmbientGroup) -> Self {
        Subgroup {
            kind: SubgroupKind::Trivial,
            ambient,
        }
    }

    pub fn full_circle() -> Self {
        Subgroup {
            kind: SubgroupKind::FullCircle,
            ambient: AmbientGroup::Circle,
        }
    }

    /// The whole ambient group as a subgroup of itself.
    pub fn whole(ambient: AmbientGroup) -> Self {
        match ambient {
            AmbientGroup::Circle => Self::full_circle(),
            AmbientGroup::Cyclic(n) => Self::cyclic(ambient, n).expect("n divides n"),
        }
    }

    /// The cyclic subgroup of order `m`.
    pub fn cyclic(ambient: AmbientGroup, m: u64) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::ZeroOrder);
        }
        if let AmbientGroup::Cyclic(n) = ambient {
            if n == 0 {
                return Err(GroupError::ZeroOrder);
            }
            if n % m != 0 {
                return Err(GroupError::NotDivisor(m, n));
            }
        }
        let kind = if m == 1 {
            SubgroupKind::Trivial
        } else {
            SubgroupKind::Cyclic(m)
        };
        Ok(Subgroup { kind, ambient })
    }

    /// Subgroup from an order, where order `0` stands for the full circle.
    pub fn from_order(ambient: AmbientGroup, order: u64) -> Result<Self, GroupError> {
        match (order, ambient) {
            (0, AmbientGroup::Circle) => Ok(Self::full_circle()),
            (0, AmbientGroup::Cyclic(n)) => Err(GroupError::FullCircleInCyclic(n)),
            (m, _) => Self::cyclic(ambient, m),
        }
    }

    /// Common stabilizer of the weight characters `weights`: the subgroup of
    /// elements `λ` with `λ^w = 1` for every listed weight. An empty list (or
    /// all-zero weights) gives the whole group.
    pub fn stabilizer(ambient: AmbientGroup, weights: &[i64]) -> Self {
        let order = weights
            .iter()
            .fold(ambient.modulus(), |g, w| g.gcd(&w.unsigned_abs()));
        Self::from_order(ambient, order).expect("gcd with the ambient modulus divides it")
    }

    pub fn kind(&self) -> SubgroupKind {
        self.kind
    }

    pub fn ambient(&self) -> AmbientGroup {
        self.ambient
    }

    /// Order of the subgroup, `0` for the full circle.
    pub fn order(&self) -> u64 {
        match self.kind {
            SubgroupKind::Trivial => 1,
            SubgroupKind::Cyclic(m) => m,
            SubgroupKind::FullCircle => 0,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.kind == SubgroupKind::Trivial
    }

    /// This subgroup regarded as a group in its own right.
    pub fn as_group(&self) -> AmbientGroup {
        match self.kind {
            SubgroupKind::FullCircle => AmbientGroup::Circle,
            _ => AmbientGroup::Cyclic(self.order()),
        }
    }

    fn check_ambient(&self, other: &Subgroup) -> Result<(), GroupError> {
        if self.ambient != other.ambient {
            return Err(GroupError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Containment `self ⊆ other`.
    pub fn leq(&self, other: &Subgroup) -> Result<bool, GroupError> {
        self.check_ambient(other)?;
        Ok(divides_order(self.order(), other.order()))
    }

    /// Smallest subgroup containing both.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup, GroupError> {
        self.check_ambient(other)?;
        let (a, b) = (self.order(), other.order());
        if a == 0 || b == 0 {
            return Ok(Self::full_circle());
        }
        let l = (a / a.gcd(&b))
            .checked_mul(b)
            .ok_or(GroupError::Overflow(a, b))?;
        Subgroup::cyclic(self.ambient, l)
    }

    /// Intersection of the two subgroups.
    pub fn meet(&self, other: &Subgroup) -> Result<Subgroup, GroupError> {
        self.check_ambient(other)?;
        Subgroup::from_order(self.ambient, self.order().gcd(&other.order()))
    }

    pub fn parse(ambient: AmbientGroup, s: &str) -> Result<Self, GroupError> {
        let t = s.trim();
        match t {
            "e" | "1" | "trivial" => Ok(Self::trivial(ambient)),
            "S1" | "U1" => Self::from_order(ambient, 0),
            _ => {
                let m = t
                    .strip_prefix('Z')
                    .and_then(|m| m.parse::<u64>().ok())
                    .ok_or_else(|| GroupError::Parse(s.to_string()))?;
                Self::cyclic(ambient, m)
            }
        }
    }
}

/// `a | b` in the order lattice where `0` (the circle) is the top element.
fn divides_order(a: u64, b: u64) -> bool {
    match (a, b) {
        (_, 0) => true,
        (0, _) => false,
        (a, b) => b % a == 0,
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.ambient != other.ambient {
            return None;
        }
        match (
            divides_order(self.order(), other.order()),
            divides_order(other.order(), self.order()),
        ) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SubgroupKind::Trivial => write!(f, "e"),
            SubgroupKind::Cyclic(m) => write!(f, "Z{m}"),
            SubgroupKind::FullCircle => write!(f, "S1"),
        }
    }
}
