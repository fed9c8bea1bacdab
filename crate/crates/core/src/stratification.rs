//! Combinatorial orbit-type stratifications.
//!
//! A [`StratifiedSpace`] records strata with their isotropy and dimension and
//! the closure order between them. Representation spheres `S(V)` (and finite
//! products of them under the diagonal action) are built directly; anything
//! else comes in as an explicit table and is validated.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group_lattice::{AmbientGroup, GroupError, Subgroup};
use crate::representations::{Representation, RepresentationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StratificationError {
    #[error("the unit sphere of a zero representation is empty")]
    EmptySphere,
    #[error("a stratified space needs at least one stratum")]
    EmptySpace,
    #[error("duplicate stratum id `{0}`")]
    DuplicateId(String),
    #[error("unknown stratum `{0}`")]
    UnknownStratum(String),
    #[error("stratum `{0}` cannot lie in its own closure")]
    SelfClosure(String),
    #[error("closure pair ({lower}, {upper}) does not drop dimension")]
    DimensionOrder { lower: String, upper: String },
    #[error(
        "closure pair ({lower}, {upper}) has isotropy of {upper} not contained in that of {lower}"
    )]
    IsotropyOrder { lower: String, upper: String },
    #[error("maximal stratum `{id}` has dimension {dim}, expected the top dimension {top}")]
    MaximalDimension { id: String, dim: usize, top: usize },
    #[error("negative dimension {dim} assigned to `{id}`")]
    NegativeDimension { id: String, dim: i64 },
    #[error("strata live in different ambient groups")]
    AmbientMismatch,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub id: String,
    pub isotropy: Subgroup,
    pub dim: usize,
    /// Distinguishes connected pieces of one orbit type.
    pub component_index: usize,
}

/// Validated stratified space. `closure` is stored transitively closed:
/// `(i, j)` means stratum `i` lies in the closure of stratum `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedSpace {
    ambient: AmbientGroup,
    strata: Vec<Stratum>,
    closure: BTreeSet<(usize, usize)>,
    total_dim: usize,
    oriented: bool,
    compact: bool,
}

/// One row of the stratification table as emitted in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub stratum_id: String,
    pub isotropy: String,
    pub dim: usize,
    pub codim: usize,
    pub closure_parents: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub pass: bool,
    pub top_dim: Option<i64>,
    pub offending: Vec<String>,
}

impl StratifiedSpace {
    /// Validates and builds a space from strata and closure pairs given by index.
    pub fn new(
        strata: Vec<Stratum>,
        closure_pairs: impl IntoIterator<Item = (usize, usize)>,
        oriented: bool,
        compact: bool,
    ) -> Result<Self, StratificationError> {
        let first = strata.first().ok_or(StratificationError::EmptySpace)?;
        let ambient = first.isotropy.ambient();
        let mut seen = BTreeSet::new();
        for s in &strata {
            if s.isotropy.ambient() != ambient {
                return Err(StratificationError::AmbientMismatch);
            }
            if !seen.insert(s.id.as_str()) {
                return Err(StratificationError::DuplicateId(s.id.clone()));
            }
        }

        let n = strata.len();
        let mut closure = BTreeSet::new();
        for (i, j) in closure_pairs {
            if i >= n || j >= n {
                return Err(StratificationError::UnknownStratum(format!(
                    "#{}",
                    i.max(j)
                )));
            }
            if i == j {
                return Err(StratificationError::SelfClosure(strata[i].id.clone()));
            }
            closure.insert((i, j));
        }
        // transitive closure; pairs strictly raise dimension so this terminates
        loop {
            let extra: Vec<_> = closure
                .iter()
                .flat_map(|&(i, j)| closure.range((j, 0)..(j + 1, 0)).map(move |&(_, k)| (i, k)))
                .filter(|p| !closure.contains(p))
                .collect();
            if extra.is_empty() {
                break;
            }
            for &(i, k) in &extra {
                if i == k {
                    return Err(StratificationError::SelfClosure(strata[i].id.clone()));
                }
            }
            closure.extend(extra);
        }

        for &(i, j) in &closure {
            let (lo, hi) = (&strata[i], &strata[j]);
            if lo.dim >= hi.dim {
                return Err(StratificationError::DimensionOrder {
                    lower: lo.id.clone(),
                    upper: hi.id.clone(),
                });
            }
            if !hi.isotropy.leq(&lo.isotropy)? {
                return Err(StratificationError::IsotropyOrder {
                    lower: lo.id.clone(),
                    upper: hi.id.clone(),
                });
            }
        }

        let total_dim = strata.iter().map(|s| s.dim).max().unwrap_or(0);
        for (i, s) in strata.iter().enumerate() {
            let maximal = !closure.iter().any(|&(a, _)| a == i);
            if maximal && s.dim != total_dim {
                return Err(StratificationError::MaximalDimension {
                    id: s.id.clone(),
                    dim: s.dim,
                    top: total_dim,
                });
            }
        }

        Ok(StratifiedSpace {
            ambient,
            strata,
            closure,
            total_dim,
            oriented,
            compact,
        })
    }

    /// Builds a space from closure relations given by stratum id:
    /// `(lower, upper)` means `lower ⊂ closure(upper)`.
    pub fn from_id_pairs<'a>(
        strata: Vec<Stratum>,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
        oriented: bool,
        compact: bool,
    ) -> Result<Self, StratificationError> {
        let index: BTreeMap<&str, usize> = strata
            .iter()
            .enumerate()
            .map(|(i, s)| (s.id.as_str(), i))
            .collect();
        let lookup = |id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| StratificationError::UnknownStratum(id.to_string()))
        };
        let idx_pairs = pairs
            .into_iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, StratificationError>>()?;
        Self::new(strata, idx_pairs, oriented, compact)
    }

    pub fn ambient(&self) -> AmbientGroup {
        self.ambient
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn oriented(&self) -> bool {
        self.oriented
    }

    pub fn compact(&self) -> bool {
        self.compact
    }

    pub fn closure_pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.closure
    }

    pub fn index_of(&self, id: &str) -> Result<usize, StratificationError> {
        self.strata
            .iter()
            .position(|s| s.id == id)
            .ok_or_else(|| StratificationError::UnknownStratum(id.to_string()))
    }

    pub fn stratum(&self, id: &str) -> Result<&Stratum, StratificationError> {
        Ok(&self.strata[self.index_of(id)?])
    }

    /// `true` when stratum `i` lies in the closure of stratum `j`, `i ≠ j`.
    pub fn is_below(&self, i: usize, j: usize) -> bool {
        self.closure.contains(&(i, j))
    }

    pub fn codim(&self, i: usize) -> usize {
        self.total_dim - self.strata[i].dim
    }

    /// Indices of all strata whose closure contains stratum `i`.
    pub fn parents(&self, i: usize) -> Vec<usize> {
        self.closure
            .range((i, 0)..(i + 1, 0))
            .map(|&(_, j)| j)
            .collect()
    }

    /// Longest chain of strata strictly below each stratum.
    fn heights(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.strata[i].dim);
        let mut height = vec![0usize; self.len()];
        for &j in &order {
            height[j] = self
                .closure
                .iter()
                .filter(|&&(_, t)| t == j)
                .map(|&(i, _)| height[i] + 1)
                .max()
                .unwrap_or(0);
        }
        height
    }

    /// Longest chain of strata strictly above each stratum.
    fn lengths(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.strata[i].dim));
        let mut length = vec![0usize; self.len()];
        for &i in &order {
            length[i] = self
                .parents(i)
                .into_iter()
                .map(|j| length[j] + 1)
                .max()
                .unwrap_or(0);
        }
        length
    }

    /// Length of a stratum: the longest chain `s = S_0 < S_1 < … < S_n`.
    pub fn stratum_length(&self, id: &str) -> Result<usize, StratificationError> {
        let i = self.index_of(id)?;
        Ok(self.lengths()[i])
    }

    /// Length of the space: the maximum stratum length.
    pub fn length(&self) -> usize {
        self.lengths().into_iter().max().unwrap_or(0)
    }

    /// Depth `m` of the skeleton filtration.
    pub fn depth(&self) -> usize {
        self.heights().into_iter().max().unwrap_or(0)
    }

    /// Skeleta `X_0 ⊆ X_1 ⊆ … ⊆ X_m`, where `X_i` collects the strata whose
    /// longest chain of strata below has length at most `i`.
    pub fn skeleton_filtration(&self) -> Vec<BTreeSet<String>> {
        let heights = self.heights();
        let depth = heights.iter().copied().max().unwrap_or(0);
        (0..=depth)
            .map(|level| {
                self.strata
                    .iter()
                    .zip(&heights)
                    .filter(|(_, &h)| h <= level)
                    .map(|(s, _)| s.id.clone())
                    .collect()
            })
            .collect()
    }

    /// Cycle condition for a candidate zero locus whose piece inside each
    /// listed stratum has the given dimension: it holds when no piece sits in
    /// codimension one below the top piece.
    pub fn check_cycle_condition(
        &self,
        dim_table: &BTreeMap<String, i64>,
    ) -> Result<CycleReport, StratificationError> {
        for (id, &d) in dim_table {
            self.index_of(id)?;
            if d < 0 {
                return Err(StratificationError::NegativeDimension {
                    id: id.clone(),
                    dim: d,
                });
            }
        }
        let top = dim_table.values().copied().max();
        let offending: Vec<String> = match top {
            Some(top) => dim_table
                .iter()
                .filter(|(_, &d)| d == top - 1)
                .map(|(id, _)| id.clone())
                .collect(),
            None => Vec::new(),
        };
        Ok(CycleReport {
            pass: offending.is_empty(),
            top_dim: top,
            offending,
        })
    }

    /// Table rows, ordered as the strata are stored.
    pub fn records(&self) -> Vec<StratumRecord> {
        self.strata
            .iter()
            .enumerate()
            .map(|(i, s)| StratumRecord {
                stratum_id: s.id.clone(),
                isotropy: s.isotropy.to_string(),
                dim: s.dim,
                codim: self.codim(i),
                closure_parents: self
                    .parents(i)
                    .into_iter()
                    .map(|j| self.strata[j].id.clone())
                    .collect(),
            })
            .collect()
    }

    /// Product stratification of `self × other` under the diagonal action.
    /// Isotropy of a pair is the intersection of isotropies.
    pub fn product(&self, other: &StratifiedSpace) -> Result<StratifiedSpace, StratificationError> {
        if self.ambient != other.ambient {
            return Err(StratificationError::AmbientMismatch);
        }
        let m = other.len();
        let mut strata = Vec::with_capacity(self.len() * m);
        for a in &self.strata {
            for b in &other.strata {
                strata.push(Stratum {
                    id: format!("{}x{}", a.id, b.id),
                    isotropy: a.isotropy.meet(&b.isotropy)?,
                    dim: a.dim + b.dim,
                    component_index: a.component_index * m + b.component_index,
                });
            }
        }
        let leq = |x: &StratifiedSpace, i: usize, j: usize| i == j || x.is_below(i, j);
        let mut pairs = Vec::new();
        for i in 0..self.len() {
            for j in 0..m {
                for k in 0..self.len() {
                    for l in 0..m {
                        if (i, j) != (k, l) && leq(self, i, k) && leq(other, j, l) {
                            pairs.push((i * m + j, k * m + l));
                        }
                    }
                }
            }
        }
        StratifiedSpace::new(
            strata,
            pairs,
            self.oriented && other.oriented,
            self.compact && other.compact,
        )
    }
}

fn stratum_label(h: &Subgroup) -> String {
    format!("B_{h}")
}

/// Orbit-type stratification of the unit sphere `S(V)`.
///
/// A point supported on the complex summands `I` (and possibly the trivial
/// part) has isotropy equal to the common stabilizer of the weights in `I`.
/// For every realized isotropy `h` the stratum is open and dense in the fixed
/// sphere `S(V^h)`, so its dimension is `rank V^h − 1`. A zero-dimensional
/// fixed sphere is split into its two points.
pub fn sphere_stratification(v: &Representation) -> Result<StratifiedSpace, StratificationError> {
    if v.real_rank() == 0 {
        return Err(StratificationError::EmptySphere);
    }
    let ambient = v.group();
    let modulus = ambient.modulus();

    // realized isotropy orders: gcd-closure of the weight set
    let mut orders: BTreeSet<u64> = BTreeSet::new();
    if v.trivial_real_dim() > 0 {
        orders.insert(modulus);
    }
    let distinct: BTreeSet<u64> = v.weights().iter().map(|w| w.unsigned_abs()).collect();
    for &w in &distinct {
        let mut next: BTreeSet<u64> = orders.iter().map(|&o| num_integer::gcd(o, w)).collect();
        next.insert(num_integer::gcd(modulus, w));
        orders.extend(next);
    }

    let mut realized: Vec<(Subgroup, usize)> = Vec::new();
    for order in orders {
        let h = Subgroup::from_order(ambient, order)?;
        let rank = v.fixed_part(&h)?.real_rank();
        realized.push((h, rank - 1));
    }
    // dim descending, then by isotropy order (circle last)
    realized.sort_by_key(|(h, d)| {
        (
            std::cmp::Reverse(*d),
            if h.order() == 0 { u64::MAX } else { h.order() },
        )
    });

    let mut strata = Vec::new();
    let mut owner = Vec::new();
    for (k, (h, dim)) in realized.iter().enumerate() {
        if *dim == 0 {
            for c in 0..2 {
                strata.push(Stratum {
                    id: format!("{}.{c}", stratum_label(h)),
                    isotropy: *h,
                    dim: 0,
                    component_index: c,
                });
                owner.push(k);
            }
        } else {
            strata.push(Stratum {
                id: stratum_label(h),
                isotropy: *h,
                dim: *dim,
                component_index: 0,
            });
            owner.push(k);
        }
    }

    let mut pairs = Vec::new();
    for (i, si) in strata.iter().enumerate() {
        for (j, sj) in strata.iter().enumerate() {
            if owner[i] != owner[j] && sj.isotropy < si.isotropy {
                pairs.push((i, j));
            }
        }
    }
    StratifiedSpace::new(strata, pairs, true, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s5() -> StratifiedSpace {
        sphere_stratification(&Representation::circle([2, 3, 5], 0)).unwrap()
    }

    fn s2() -> StratifiedSpace {
        sphere_stratification(&Representation::circle([1], 1)).unwrap()
    }

    fn set(ids: &[&str]) -> BTreeSet<String> {
        ids.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn s5_example() {
        let x = s5();
        assert_eq!(x.len(), 4);
        assert_eq!(x.total_dim(), 5);
        let free = x.stratum("B_e").unwrap();
        assert_eq!(free.dim, 5);
        for (id, m) in [("B_Z2", 2), ("B_Z3", 3), ("B_Z5", 5)] {
            let s = x.stratum(id).unwrap();
            assert_eq!(s.dim, 1);
            assert_eq!(s.isotropy.order(), m);
            let i = x.index_of(id).unwrap();
            assert_eq!(x.codim(i), 4);
            assert_eq!(x.parents(i), vec![x.index_of("B_e").unwrap()]);
        }
    }

    #[test]
    fn free_circle() {
        let x = sphere_stratification(&Representation::circle([1], 0)).unwrap();
        assert_eq!(x.len(), 1);
        assert!(x.strata()[0].isotropy.is_trivial());
        assert_eq!(x.strata()[0].dim, 1);
    }

    #[test]
    fn two_sphere_poles_are_split() {
        let x = s2();
        assert_eq!(x.len(), 3);
        let poles: Vec<_> = x.strata().iter().filter(|s| s.dim == 0).collect();
        assert_eq!(poles.len(), 2);
        assert!(poles.iter().all(|s| s.isotropy == Subgroup::full_circle()));
        assert_eq!(x.stratum("B_e").unwrap().dim, 2);
    }

    #[test]
    fn empty_sphere_errors() {
        assert_eq!(
            sphere_stratification(&Representation::circle([], 0)),
            Err(StratificationError::EmptySphere)
        );
    }

    #[test]
    fn skeleta() {
        assert_eq!(
            s5().skeleton_filtration(),
            vec![
                set(&["B_Z2", "B_Z3", "B_Z5"]),
                set(&["B_Z2", "B_Z3", "B_Z5", "B_e"])
            ]
        );
        let single = sphere_stratification(&Representation::circle([1], 0)).unwrap();
        assert_eq!(single.skeleton_filtration(), vec![set(&["B_e"])]);
        assert_eq!(
            s2().skeleton_filtration(),
            vec![
                set(&["B_S1.0", "B_S1.1"]),
                set(&["B_S1.0", "B_S1.1", "B_e"])
            ]
        );
        assert_eq!(s5().depth(), 1);
    }

    #[test]
    fn lengths() {
        let x = s5();
        assert_eq!(x.stratum_length("B_Z2").unwrap(), 1);
        assert_eq!(x.stratum_length("B_e").unwrap(), 0);
        assert_eq!(s2().stratum_length("B_S1.0").unwrap(), 1);
        assert!(matches!(
            x.stratum_length("nope"),
            Err(StratificationError::UnknownStratum(_))
        ));
    }

    #[test]
    fn nested_isotropy_chain() {
        // gcd(2, 4) = 2, so no point of S(V) is free
        let x = sphere_stratification(&Representation::circle([2, 4], 0)).unwrap();
        let ids: Vec<_> = x.strata().iter().map(|s| s.id.as_str()).collect();
        assert_eq!(ids, vec!["B_Z2", "B_Z4"]);
        let x = sphere_stratification(&Representation::circle([1, 2, 4], 1)).unwrap();
        assert_eq!(x.stratum_length("B_S1.0").unwrap(), 3);
        assert_eq!(x.depth(), 3);
        assert_eq!(x.length(), 3);
    }

    #[test]
    fn cycle_condition_examples() {
        let x = s5();
        let table: BTreeMap<String, i64> = [("B_e", 3), ("B_Z2", 1), ("B_Z3", 1), ("B_Z5", 1)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        assert!(x.check_cycle_condition(&table).unwrap().pass);

        let table: BTreeMap<String, i64> = [("B_e".to_string(), 3), ("B_Z2".to_string(), 2)]
            .into_iter()
            .collect();
        let r = x.check_cycle_condition(&table).unwrap();
        assert!(!r.pass);
        assert_eq!(r.offending, vec!["B_Z2".to_string()]);

        let table: BTreeMap<String, i64> = [("B_Z3".to_string(), 0)].into_iter().collect();
        assert!(x.check_cycle_condition(&table).unwrap().pass);

        let table: BTreeMap<String, i64> = [("B_Z3".to_string(), -1)].into_iter().collect();
        assert!(matches!(
            x.check_cycle_condition(&table),
            Err(StratificationError::NegativeDimension { .. })
        ));
    }

    fn stratum(id: &str, iso: Subgroup, dim: usize) -> Stratum {
        Stratum {
            id: id.into(),
            isotropy: iso,
            dim,
            component_index: 0,
        }
    }

    #[test]
    fn explicit_tables_are_validated() {
        let e = Subgroup::trivial(AmbientGroup::Circle);
        let z2 = Subgroup::cyclic(AmbientGroup::Circle, 2).unwrap();
        let ok = StratifiedSpace::from_id_pairs(
            vec![stratum("top", e, 4), stratum("sing", z2, 2)],
            [("sing", "top")],
            true,
            true,
        );
        assert!(ok.is_ok());
        let bad_dim = StratifiedSpace::from_id_pairs(
            vec![stratum("top", e, 4), stratum("sing", z2, 4)],
            [("sing", "top")],
            true,
            true,
        );
        assert!(matches!(
            bad_dim,
            Err(StratificationError::DimensionOrder { .. })
        ));
        let bad_iso = StratifiedSpace::from_id_pairs(
            vec![stratum("top", z2, 4), stratum("sing", e, 2)],
            [("sing", "top")],
            true,
            true,
        );
        assert!(matches!(
            bad_iso,
            Err(StratificationError::IsotropyOrder { .. })
        ));
        let bad_max = StratifiedSpace::from_id_pairs(
            vec![stratum("top", e, 4), stratum("lonely", z2, 2)],
            [],
            true,
            true,
        );
        assert!(matches!(
            bad_max,
            Err(StratificationError::MaximalDimension { .. })
        ));
        let dup =
            StratifiedSpace::new(vec![stratum("a", e, 1), stratum("a", e, 1)], [], true, true);
        assert!(matches!(dup, Err(StratificationError::DuplicateId(_))));
        assert!(matches!(
            StratifiedSpace::from_id_pairs(vec![stratum("a", e, 1)], [("a", "b")], true, true),
            Err(StratificationError::UnknownStratum(_))
        ));
    }

    #[test]
    fn closure_is_transitive() {
        let s1 = AmbientGroup::Circle;
        let x = StratifiedSpace::from_id_pairs(
            vec![
                stratum("a", Subgroup::full_circle(), 0),
                stratum("b", Subgroup::cyclic(s1, 2).unwrap(), 2),
                stratum("c", Subgroup::trivial(s1), 4),
            ],
            [("a", "b"), ("b", "c")],
            true,
            true,
        )
        .unwrap();
        assert!(x.is_below(0, 2));
        assert_eq!(x.stratum_length("a").unwrap(), 2);
    }

    #[test]
    fn product_of_circles_and_spheres() {
        let s1 = sphere_stratification(&Representation::circle([2], 0)).unwrap();
        let p = s2().product(&s1).unwrap();
        assert_eq!(p.total_dim(), 3);
        assert_eq!(p.len(), 3);
        // poles × circle have isotropy S1 ∩ Z2 = Z2
        let pole = p.stratum("B_S1.0xB_Z2").unwrap();
        assert_eq!(pole.isotropy.order(), 2);
        assert_eq!(pole.dim, 1);
        assert_eq!(p.stratum("B_exB_Z2").unwrap().isotropy.order(), 1);
    }

    /// Independent route: enumerate every support pattern of weights and
    /// trivial part, take its stabilizer and the dimension of the points with
    /// exactly that support.
    fn brute_force_dims(v: &Representation) -> BTreeMap<u64, usize> {
        let k = v.weights().len();
        let mut out: BTreeMap<u64, usize> = BTreeMap::new();
        let use_trivial: &[bool] = if v.trivial_real_dim() > 0 {
            &[false, true]
        } else {
            &[false]
        };
        for mask in 0u32..(1 << k) {
            for &t in use_trivial {
                if mask == 0 && !t {
                    continue;
                }
                let sel: Vec<i64> = (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| v.weights()[i])
                    .collect();
                let h = Subgroup::stabilizer(v.group(), &sel);
                let real = 2 * sel.len() + if t { v.trivial_real_dim() } else { 0 };
                let e = out.entry(h.order()).or_insert(0);
                *e = (*e).max(real - 1);
            }
        }
        out
    }

    #[test]
    fn dimensions_match_support_enumeration() {
        for a in 0..=12i64 {
            for b in a..=12 {
                for c in [1i64, 6, 9, 12] {
                    for t in 0..2 {
                        let v = Representation::circle([a, b, c], t);
                        let x = sphere_stratification(&v).unwrap();
                        let got: BTreeMap<u64, usize> = x
                            .strata()
                            .iter()
                            .map(|s| (s.isotropy.order(), s.dim))
                            .collect();
                        assert_eq!(got, brute_force_dims(&v), "{v}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn sphere_strata_match_oracle(ws in prop::collection::vec(-12i64..=12, 1..=4), t in 0usize..3) {
            let v = Representation::circle(ws, t);
            let x = sphere_stratification(&v).unwrap();
            let oracle = brute_force_dims(&v);
            for s in x.strata() {
                prop_assert_eq!(oracle.get(&s.isotropy.order()), Some(&s.dim));
                let expect = v.fixed_part(&s.isotropy).unwrap().real_rank() - 1;
                prop_assert_eq!(s.dim, expect);
                if s.isotropy.is_trivial() {
                    prop_assert!(s.dim >= 1);
                }
            }
            let kinds: BTreeSet<u64> = x.strata().iter().map(|s| s.isotropy.order()).collect();
            prop_assert_eq!(kinds.len(), oracle.len());
        }

        #[test]
        fn cyclic_sphere_strata_match_oracle(n in 1u64..=12, ws in prop::collection::vec(0i64..12, 1..=4), t in 0usize..2) {
            let v = Representation::new(AmbientGroup::Cyclic(n), ws, t).unwrap();
            let x = sphere_stratification(&v).unwrap();
            let oracle = brute_force_dims(&v);
            let got: BTreeMap<u64, usize> =
                x.strata().iter().map(|s| (s.isotropy.order(), s.dim)).collect();
            prop_assert_eq!(got, oracle);
        }
    }
}
