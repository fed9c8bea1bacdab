//! Equivariant bundles over a stratified base, their partition into fixed
//! subbundles and obstruction bundles, the coindex, and the feasibility report
//! for invariant Euler cycles.
//!
//! Sections are not modeled; everything here is rank and dimension data. The
//! expected dimension of the zero locus inside the stratum `B_H`, assuming
//! stratumwise transversality, is `r_H = dim B_H − rank 𝓔_H`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group_lattice::{AmbientGroup, Subgroup};
use crate::representations::{Representation, RepresentationError};
use crate::stratification::{CycleReport, StratificationError, StratifiedSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("no fiber given over stratum `{0}`")]
    MissingFiber(String),
    #[error("fiber over `{id}` is a representation of {got}, expected {expected}")]
    FiberGroup {
        id: String,
        expected: AmbientGroup,
        got: AmbientGroup,
    },
    #[error("fiber over `{id}` has rank {rank}, bundle rank is {expected}")]
    RankMismatch {
        id: String,
        rank: usize,
        expected: usize,
    },
    #[error("fibers over `{lower}` and `{upper}` disagree after restriction to the isotropy of `{upper}`")]
    Inconsistent { lower: String, upper: String },
    #[error("orientation sign over `{0}` must be +1 or -1")]
    BadSign(String),
    #[error("the base must be compact")]
    NotCompact,
    #[error(transparent)]
    Representation(#[from] RepresentationError),
    #[error(transparent)]
    Stratification(#[from] StratificationError),
}

/// A `G`-vector bundle over a stratified base, given fiberwise: over each
/// stratum the fiber is a representation of that stratum's isotropy group.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivariantBundle {
    base: StratifiedSpace,
    fiber: Vec<Representation>,
    real_rank: usize,
    oriented: bool,
    orientation_sign: Vec<i8>,
}

impl EquivariantBundle {
    /// The product bundle `B × W` for a representation `W` of the ambient group.
    pub fn from_global(
        base: StratifiedSpace,
        w: &Representation,
        oriented: bool,
    ) -> Result<Self, PartitionError> {
        let fiber = base
            .strata()
            .iter()
            .map(|s| w.restrict(&s.isotropy))
            .collect::<Result<Vec<_>, _>>()?;
        let n = base.len();
        Ok(EquivariantBundle {
            base,
            fiber,
            real_rank: w.real_rank(),
            oriented,
            orientation_sign: vec![1; n],
        })
    }

    /// Bundle from explicit per-stratum fibers. Ranks and groups are checked
    /// here; closure consistency is checked by [`validate`](Self::validate).
    pub fn new(
        base: StratifiedSpace,
        fibers: &BTreeMap<String, Representation>,
        oriented: bool,
        orientation_sign: Option<&BTreeMap<String, i8>>,
    ) -> Result<Self, PartitionError> {
        let mut fiber = Vec::with_capacity(base.len());
        let mut signs = Vec::with_capacity(base.len());
        for s in base.strata() {
            let f = fibers
                .get(&s.id)
                .ok_or_else(|| PartitionError::MissingFiber(s.id.clone()))?;
            let expected = s.isotropy.as_group();
            if f.group() != expected {
                return Err(PartitionError::FiberGroup {
                    id: s.id.clone(),
                    expected,
                    got: f.group(),
                });
            }
            fiber.push(f.clone());
            let sign = orientation_sign
                .and_then(|m| m.get(&s.id).copied())
                .unwrap_or(1);
            if sign != 1 && sign != -1 {
                return Err(PartitionError::BadSign(s.id.clone()));
            }
            signs.push(sign);
        }
        let real_rank = fiber.first().map_or(0, |f| f.real_rank());
        for (s, f) in base.strata().iter().zip(&fiber) {
            if f.real_rank() != real_rank {
                return Err(PartitionError::RankMismatch {
                    id: s.id.clone(),
                    rank: f.real_rank(),
                    expected: real_rank,
                });
            }
        }
        Ok(EquivariantBundle {
            base,
            fiber,
            real_rank,
            oriented,
            orientation_sign: signs,
        })
    }

    pub fn base(&self) -> &StratifiedSpace {
        &self.base
    }

    pub fn real_rank(&self) -> usize {
        self.real_rank
    }

    pub fn oriented(&self) -> bool {
        self.oriented
    }

    pub fn fiber(&self, id: &str) -> Result<&Representation, PartitionError> {
        Ok(&self.fiber[self.base.index_of(id)?])
    }

    pub fn orientation_sign(&self, id: &str) -> Result<i8, PartitionError> {
        Ok(self.orientation_sign[self.base.index_of(id)?])
    }

    /// Replaces the fiber over one stratum (rank must be preserved).
    pub fn with_fiber(mut self, id: &str, rep: Representation) -> Result<Self, PartitionError> {
        let i = self.base.index_of(id)?;
        if rep.real_rank() != self.real_rank {
            return Err(PartitionError::RankMismatch {
                id: id.to_string(),
                rank: rep.real_rank(),
                expected: self.real_rank,
            });
        }
        self.fiber[i] = rep;
        Ok(self)
    }

    /// Fibers along every closure pair must agree: if `S_i ⊂ closure(S_j)`,
    /// the fiber over `S_i` restricted to the isotropy of `S_j` is isomorphic
    /// to the fiber over `S_j` as a real representation.
    pub fn validate(&self) -> Result<(), PartitionError> {
        for &(i, j) in self.base.closure_pairs() {
            let upper = &self.base.strata()[j];
            let restricted = self.fiber[i].restrict(&upper.isotropy)?;
            if !restricted.is_isomorphic(&self.fiber[j]) {
                return Err(PartitionError::Inconsistent {
                    lower: self.base.strata()[i].id.clone(),
                    upper: upper.id.clone(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionRow {
    pub stratum_id: String,
    pub isotropy: Subgroup,
    pub base_dim: usize,
    pub codim: usize,
    /// Rank of the fixed subbundle `𝓔_H`.
    pub fixed_rank: usize,
    /// Rank of the obstruction bundle `𝓞_H`.
    pub obstruction_rank: usize,
    pub r_h: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub rows: Vec<PartitionRow>,
}

pub fn partition(bundle: &EquivariantBundle) -> Result<PartitionReport, PartitionError> {
    bundle.validate()?;
    let base = bundle.base();
    let rows = base
        .strata()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let fiber = &bundle.fiber[i];
            let fixed_rank = fiber.fixed_part(&s.isotropy)?.real_rank();
            let obstruction_rank = fiber.moving_part(&s.isotropy)?.real_rank();
            Ok(PartitionRow {
                stratum_id: s.id.clone(),
                isotropy: s.isotropy,
                base_dim: s.dim,
                codim: base.codim(i),
                fixed_rank,
                obstruction_rank,
                r_h: s.dim as i64 - fixed_rank as i64,
            })
        })
        .collect::<Result<Vec<_>, PartitionError>>()?;
    Ok(PartitionReport { rows })
}

/// The coindex; `Infinite` when no stratum has nontrivial isotropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Coindex {
    Finite(i64),
    Infinite,
}

impl Coindex {
    pub fn exceeds(self, bound: i64) -> bool {
        match self {
            Coindex::Finite(c) => c > bound,
            Coindex::Infinite => true,
        }
    }
}

impl fmt::Display for Coindex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coindex::Finite(c) => write!(f, "{c}"),
            Coindex::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Coindex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Coindex::Finite(c) => s.serialize_i64(*c),
            Coindex::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Coindex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(c) => Ok(Coindex::Finite(c)),
            Raw::Text(t) if t == "inf" => Ok(Coindex::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad coindex `{t}`"))),
        }
    }
}

/// Coindex from a partition table: over the strata with nontrivial isotropy,
/// the least margin `codim B_H − rank 𝓞_H`. Every singular stratum must clear
/// the margin for the zero locus to avoid codimension-one singular pieces, so
/// the minimum is the binding value.
pub fn coindex_of(report: &PartitionReport) -> Coindex {
    report
        .rows
        .iter()
        .filter(|r| !r.isotropy.is_trivial())
        .map(|r| r.codim as i64 - r.obstruction_rank as i64)
        .min()
        .map_or(Coindex::Infinite, Coindex::Finite)
}

pub fn coindex(bundle: &EquivariantBundle) -> Result<Coindex, PartitionError> {
    Ok(coindex_of(&partition(bundle)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "invariant-Euler-cycle feasible")]
    Feasible,
    #[serde(rename = "infeasible")]
    Infeasible,
    #[serde(rename = "vacuous")]
    Vacuous,
    #[serde(rename = "classically transversal regime")]
    ClassicallyTransversal,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Feasible => "invariant-Euler-cycle feasible",
            Verdict::Infeasible => "infeasible",
            Verdict::Vacuous => "vacuous",
            Verdict::ClassicallyTransversal => "classically transversal regime",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    /// `dim B`.
    pub n: usize,
    /// Rank of `E`.
    pub k: usize,
    pub coindex: Coindex,
    pub partition: PartitionReport,
    /// Strata whose zero-locus piece is expected to be nonempty, with `r_H`.
    pub r_table: BTreeMap<String, i64>,
    /// `r_H ≤ n − k − 2` for every nontrivial-isotropy stratum.
    pub dims_ok: bool,
    pub cycle: CycleReport,
    pub oriented: bool,
    pub verdict: Verdict,
}

impl FeasibilityReport {
    pub fn cycle_ok(&self) -> bool {
        self.cycle.pass
    }

    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            strata: self
                .partition
                .rows
                .iter()
                .map(|r| RowJson {
                    id: r.stratum_id.clone(),
                    isotropy: r.isotropy.to_string(),
                    dim: r.base_dim,
                    codim: r.codim,
                    fixed_rank: r.fixed_rank,
                    obstruction_rank: r.obstruction_rank,
                    r_h: r.r_h,
                })
                .collect(),
            coindex: self.coindex,
            cycle_ok: self.cycle.pass,
            verdict: self.verdict,
        }
    }
}

pub fn feasibility_report(bundle: &EquivariantBundle) -> Result<FeasibilityReport, PartitionError> {
    let base = bundle.base();
    if !base.compact() {
        return Err(PartitionError::NotCompact);
    }
    let partition = partition(bundle)?;
    let coindex = coindex_of(&partition);
    let n = base.total_dim();
    let k = bundle.real_rank();
    let bound = n as i64 - k as i64 - 2;

    let dims_ok = partition
        .rows
        .iter()
        .filter(|r| !r.isotropy.is_trivial())
        .all(|r| r.r_h <= bound);
    // negative r_H means the piece is generically empty
    let r_table: BTreeMap<String, i64> = partition
        .rows
        .iter()
        .filter(|r| r.r_h >= 0)
        .map(|r| (r.stratum_id.clone(), r.r_h))
        .collect();
    let cycle = base.check_cycle_condition(&r_table)?;

    let verdict = if n < k {
        Verdict::Vacuous
    } else if !bundle.oriented() {
        Verdict::Infeasible
    } else if coindex == Coindex::Infinite {
        Verdict::ClassicallyTransversal
    } else if coindex.exceeds(1) && dims_ok && cycle.pass {
        Verdict::Feasible
    } else {
        Verdict::Infeasible
    };

    Ok(FeasibilityReport {
        n,
        k,
        coindex,
        partition,
        r_table,
        dims_ok,
        cycle,
        oriented: bundle.oriented(),
        verdict,
    })
}

/// Per-stratum row of the JSON report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    pub id: String,
    pub isotropy: String,
    pub dim: usize,
    pub codim: usize,
    pub fixed_rank: usize,
    pub obstruction_rank: usize,
    #[serde(rename = "r_H")]
    pub r_h: i64,
}

/// Machine-readable feasibility report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub strata: Vec<RowJson>,
    pub coindex: Coindex,
    pub cycle_ok: bool,
    pub verdict: Verdict,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stratification::{sphere_stratification, Stratum};
    use proptest::prelude::*;

    fn s5() -> StratifiedSpace {
        sphere_stratification(&Representation::circle([2, 3, 5], 0)).unwrap()
    }

    fn bundle(weights: &[i64], oriented: bool) -> EquivariantBundle {
        EquivariantBundle::from_global(s5(), &Representation::circle(weights.to_vec(), 0), oriented)
            .unwrap()
    }

    fn row<'a>(r: &'a PartitionReport, id: &str) -> &'a PartitionRow {
        r.rows.iter().find(|r| r.stratum_id == id).unwrap()
    }

    #[test]
    fn partition_weight_one_line() {
        let p = partition(&bundle(&[1], true)).unwrap();
        for id in ["B_Z2", "B_Z3", "B_Z5"] {
            assert_eq!(
                (row(&p, id).fixed_rank, row(&p, id).obstruction_rank),
                (0, 2)
            );
        }
        assert_eq!(
            (row(&p, "B_e").fixed_rank, row(&p, "B_e").obstruction_rank),
            (2, 0)
        );
    }

    #[test]
    fn partition_weight_two_line() {
        let p = partition(&bundle(&[2], true)).unwrap();
        assert_eq!(
            (row(&p, "B_Z2").fixed_rank, row(&p, "B_Z2").obstruction_rank),
            (2, 0)
        );
        for id in ["B_Z3", "B_Z5"] {
            assert_eq!(
                (row(&p, id).fixed_rank, row(&p, id).obstruction_rank),
                (0, 2)
            );
        }
    }

    #[test]
    fn free_base_fixes_everything() {
        let base = sphere_stratification(&Representation::circle([1, 1], 0)).unwrap();
        let b = EquivariantBundle::from_global(base, &Representation::circle([3, -2], 1), true)
            .unwrap();
        let p = partition(&b).unwrap();
        assert!(p
            .rows
            .iter()
            .all(|r| r.fixed_rank == 5 && r.obstruction_rank == 0));
        assert_eq!(coindex(&b).unwrap(), Coindex::Infinite);
    }

    #[test]
    fn coindex_examples() {
        assert_eq!(coindex(&bundle(&[1], true)).unwrap(), Coindex::Finite(2));
        // margins are 4, 2, 2 on Z2, Z3, Z5
        assert_eq!(coindex(&bundle(&[2], true)).unwrap(), Coindex::Finite(2));
        assert_eq!(coindex(&bundle(&[1, 1], true)).unwrap(), Coindex::Finite(0));
    }

    #[test]
    fn feasibility_examples() {
        let r = feasibility_report(&bundle(&[1], true)).unwrap();
        assert_eq!(r.coindex, Coindex::Finite(2));
        assert_eq!(r.r_table["B_e"], 3);
        for id in ["B_Z2", "B_Z3", "B_Z5"] {
            assert_eq!(r.r_table[id], 1);
        }
        assert!(r.cycle_ok());
        assert_eq!(r.verdict, Verdict::Feasible);

        let r = feasibility_report(&bundle(&[1, 1], true)).unwrap();
        assert_eq!(r.coindex, Coindex::Finite(0));
        assert_eq!(r.verdict, Verdict::Infeasible);

        let r = feasibility_report(&bundle(&[1], false)).unwrap();
        assert_eq!(r.verdict, Verdict::Infeasible);
    }

    #[test]
    fn vacuous_when_rank_exceeds_dimension() {
        let r = feasibility_report(&bundle(&[1, 1, 1], true)).unwrap();
        assert_eq!(r.r_table.get("B_e"), None);
        assert_eq!(r.verdict, Verdict::Vacuous);
    }

    #[test]
    fn free_action_is_classically_transversal() {
        let base = sphere_stratification(&Representation::circle([1, 1], 0)).unwrap();
        let b =
            EquivariantBundle::from_global(base, &Representation::circle([1], 0), true).unwrap();
        let r = feasibility_report(&b).unwrap();
        assert_eq!(r.verdict, Verdict::ClassicallyTransversal);
        assert_eq!(r.to_json().coindex, Coindex::Infinite);
    }

    #[test]
    fn closure_chain_disagreement_is_caught() {
        // S(C_2 ⊕ C_4): B_Z4 lies in the closure of B_Z2
        let base = sphere_stratification(&Representation::circle([2, 4], 0)).unwrap();
        let w = Representation::circle([2], 0);
        let good = EquivariantBundle::from_global(base.clone(), &w, true).unwrap();
        assert!(good.validate().is_ok());
        // over Z4 weight 2 is nontrivial; over Z2 it must then restrict to 0.
        // Claim weight 1 over Z2 instead.
        let bad = good
            .with_fiber(
                "B_Z2",
                Representation::new(AmbientGroup::Cyclic(2), [1], 0).unwrap(),
            )
            .unwrap();
        assert_eq!(
            bad.validate(),
            Err(PartitionError::Inconsistent {
                lower: "B_Z4".into(),
                upper: "B_Z2".into()
            })
        );
        assert!(matches!(
            partition(&bad),
            Err(PartitionError::Inconsistent { .. })
        ));
    }

    #[test]
    fn explicit_fibers_are_checked() {
        let base = s5();
        let mut fibers: BTreeMap<String, Representation> = base
            .strata()
            .iter()
            .map(|s| {
                (
                    s.id.clone(),
                    Representation::circle([1], 0)
                        .restrict(&s.isotropy)
                        .unwrap(),
                )
            })
            .collect();
        assert!(EquivariantBundle::new(base.clone(), &fibers, true, None).is_ok());
        fibers.insert(
            "B_Z5".into(),
            Representation::new(AmbientGroup::Cyclic(5), [1, 1], 0).unwrap(),
        );
        assert!(matches!(
            EquivariantBundle::new(base.clone(), &fibers, true, None),
            Err(PartitionError::RankMismatch { .. })
        ));
        fibers.insert("B_Z5".into(), Representation::circle([1], 0));
        assert!(matches!(
            EquivariantBundle::new(base.clone(), &fibers, true, None),
            Err(PartitionError::FiberGroup { .. })
        ));
        fibers.remove("B_Z5");
        assert!(matches!(
            EquivariantBundle::new(base, &fibers, true, None),
            Err(PartitionError::MissingFiber(_))
        ));
    }

    #[test]
    fn non_compact_base_is_refused() {
        let e = Subgroup::trivial(AmbientGroup::Circle);
        let base = StratifiedSpace::new(
            vec![Stratum {
                id: "R2".into(),
                isotropy: e,
                dim: 2,
                component_index: 0,
            }],
            [],
            true,
            false,
        )
        .unwrap();
        let b =
            EquivariantBundle::from_global(base, &Representation::circle([1], 0), true).unwrap();
        assert_eq!(feasibility_report(&b), Err(PartitionError::NotCompact));
    }

    #[test]
    fn json_report_round_trips() {
        let r = feasibility_report(&bundle(&[1], true)).unwrap().to_json();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"r_H\":1"));
        assert!(text.contains("\"verdict\":\"invariant-Euler-cycle feasible\""));
        let back: ReportJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    fn sphere_bundle() -> impl Strategy<Value = (Representation, Representation)> {
        (
            prop::collection::vec(1i64..=12, 1..=4),
            0usize..2,
            prop::collection::vec(-12i64..=12, 0..=3),
            0usize..2,
        )
            .prop_map(|(v, t, w, s)| (Representation::circle(v, t), Representation::circle(w, s)))
    }

    proptest! {
        #[test]
        fn rank_additivity((v, w) in sphere_bundle()) {
            let base = sphere_stratification(&v).unwrap();
            let b = EquivariantBundle::from_global(base, &w, true).unwrap();
            prop_assert!(b.validate().is_ok());
            for r in partition(&b).unwrap().rows {
                prop_assert_eq!(r.fixed_rank + r.obstruction_rank, w.real_rank());
                prop_assert_eq!(r.r_h, r.base_dim as i64 - r.fixed_rank as i64);
            }
        }

        #[test]
        fn coindex_is_antitone_in_obstruction_rank((v, w) in sphere_bundle(), extra in 1i64..=12) {
            let base = sphere_stratification(&v).unwrap();
            let b = EquivariantBundle::from_global(base.clone(), &w, true).unwrap();
            let before = coindex(&b).unwrap();
            for s in base.strata().iter().filter(|s| !s.isotropy.is_trivial()) {
                // swap a trivial real pair for a moving line, if there is one
                let f = b.fiber(&s.id).unwrap();
                if f.trivial_real_dim() < 2 || s.isotropy.order() == 1 {
                    continue;
                }
                let m = s.isotropy.order();
                let wt = if m == 0 { extra } else { 1 + extra % (m as i64 - 1).max(1) };
                let moved = Representation::new(
                    f.group(),
                    f.weights().iter().copied().chain([wt]),
                    f.trivial_real_dim() - 2,
                ).unwrap();
                let b2 = b.clone().with_fiber(&s.id, moved).unwrap();
                let p = partition_unchecked(&b2);
                prop_assert!(coindex_of(&p) <= before);
            }
        }
    }

    /// Partition table without the closure-consistency gate, for probing
    /// hand-edited fibers.
    fn partition_unchecked(b: &EquivariantBundle) -> PartitionReport {
        let base = b.base();
        PartitionReport {
            rows: base
                .strata()
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let f = &b.fiber[i];
                    let fixed_rank = f.fixed_part(&s.isotropy).unwrap().real_rank();
                    PartitionRow {
                        stratum_id: s.id.clone(),
                        isotropy: s.isotropy,
                        base_dim: s.dim,
                        codim: base.codim(i),
                        fixed_rank,
                        obstruction_rank: f.real_rank() - fixed_rank,
                        r_h: s.dim as i64 - fixed_rank as i64,
                    }
                })
                .collect(),
        }
    }
}
