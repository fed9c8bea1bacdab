//! Invariant and equivariant monomials for cyclic and circle actions on `Cⁿ`.
//!
//! `Z_m` (or `S¹` when `m = 0`) acts on `z_i` with weight `v_i` and on `z̄_i`
//! with weight `-v_i`. A monomial `z^α z̄^β` has weight `Σ(α_i - β_i) v_i`; it is
//! invariant when that weight vanishes mod `m`, and a covariant into a line of
//! weight `w` when it is `≡ w`. Covariants form a module over the invariants;
//! generators are found by degree-bounded enumeration.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialMap {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    /// Index of the target summand; `None` for invariant functions.
    pub target: Option<usize>,
}

impl MonomialMap {
    pub fn constant(nvars: usize, target: Option<usize>) -> Self {
        MonomialMap {
            alpha: vec![0; nvars],
            beta: vec![0; nvars],
            target,
        }
    }

    pub fn degree(&self) -> u32 {
        self.alpha.iter().chain(&self.beta).sum()
    }

    pub fn weight(&self, v: &[i64]) -> i64 {
        self.alpha
            .iter()
            .zip(&self.beta)
            .zip(v)
            .map(|((&a, &b), &w)| (a as i64 - b as i64) * w)
            .sum()
    }

    /// Componentwise divisibility of the exponents; targets are ignored.
    pub fn divides(&self, other: &MonomialMap) -> bool {
        self.alpha.iter().zip(&other.alpha).all(|(a, b)| a <= b)
            && self.beta.iter().zip(&other.beta).all(|(a, b)| a <= b)
    }

    fn exponents(&self) -> impl Iterator<Item = &u32> {
        self.alpha.iter().chain(&self.beta)
    }
}

/// Degree first, then exponent vectors `(α, β)` in descending lexicographic
/// order, so `z` precedes `z̄`.
pub fn canonical_order(a: &MonomialMap, b: &MonomialMap) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| b.exponents().cmp(a.exponents()))
        .then_with(|| a.target.cmp(&b.target))
}

impl fmt::Display for MonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.alpha.len();
        let mut factors = Vec::new();
        for (prefix, exps) in [("z", &self.alpha), ("zb", &self.beta)] {
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let var = if n == 1 {
                    prefix.to_string()
                } else {
                    format!("{prefix}{}", i + 1)
                };
                factors.push(if e == 1 { var } else { format!("{var}^{e}") });
            }
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// `a ≡ b` modulo `m`, with `m = 0` meaning equality.
pub fn congruent(a: i64, b: i64, m: u64) -> bool {
    if m == 0 {
        a == b
    } else {
        (a as i128 - b as i128).rem_euclid(m as i128) == 0
    }
}

/// Every exponent vector of length `len` with entries summing to `total`.
fn compositions(len: usize, total: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(len - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All monomials in `n` variables and their conjugates of exact degree `d`.
fn degree_shell(n: usize, d: u32) -> Vec<MonomialMap> {
    compositions(2 * n, d)
        .into_iter()
        .map(|mut e| {
            let beta = e.split_off(n);
            MonomialMap {
                alpha: e,
                beta,
                target: None,
            }
        })
        .collect()
}

/// Minimal nonconstant invariant monomials of degree at most `bound`.
pub fn invariant_generators(m: u64, weights: &[i64], bound: u32) -> Vec<MonomialMap> {
    let mut gens: Vec<MonomialMap> = Vec::new();
    for d in 1..=bound {
        let mut shell: Vec<MonomialMap> = degree_shell(weights.len(), d)
            .into_iter()
            .filter(|mono| congruent(mono.weight(weights), 0, m))
            .filter(|mono| !gens.iter().any(|g| g.divides(mono)))
            .collect();
        shell.sort_by(canonical_order);
        gens.extend(shell);
    }
    gens
}

fn covariants_into(
    m: u64,
    v: &[i64],
    w: i64,
    bound: u32,
    invariants: &[MonomialMap],
    target: usize,
) -> Vec<MonomialMap> {
    let mut out: Vec<MonomialMap> = (0..=bound)
        .flat_map(|d| degree_shell(v.len(), d))
        .filter(|mono| congruent(mono.weight(v), w, m))
        .filter(|mono| !invariants.iter().any(|h| h.divides(mono)))
        .map(|mono| MonomialMap {
            target: Some(target),
            ..mono
        })
        .collect();
    out.sort_by(canonical_order);
    out
}

/// Module generators for equivariant monomial maps `Cⁿ → C_w` of degree at
/// most `bound`: covariant monomials not divisible by any invariant one.
pub fn covariant_generators(m: u64, v: &[i64], w: i64, bound: u32) -> Vec<MonomialMap> {
    let invariants = invariant_generators(m, v, bound);
    covariants_into(m, v, w, bound, &invariants, 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalVarietyInfo {
    pub generator_count: usize,
    pub ambient_dim: usize,
    pub defining_equation_rank: usize,
    /// No generator appears in the top `max_degree` degrees below the bound.
    pub saturated: bool,
    pub generators: Vec<MonomialMap>,
}

/// Dimension data of `{(x, t) : Σ t_j F_j(x) = 0} ⊂ V × R^k` for the
/// generators `F_j` over all target summands.
pub fn universal_variety_info(m: u64, v: &[i64], w: &[i64], bound: u32) -> UniversalVarietyInfo {
    let invariants = invariant_generators(m, v, bound);
    let generators: Vec<MonomialMap> = w
        .iter()
        .enumerate()
        .flat_map(|(j, &wj)| covariants_into(m, v, wj, bound, &invariants, j))
        .collect();
    let max_found = generators
        .iter()
        .map(MonomialMap::degree)
        .max()
        .unwrap_or(0);
    let saturated = generators
        .iter()
        .all(|g| g.degree() <= bound.saturating_sub(max_found));
    UniversalVarietyInfo {
        generator_count: generators.len(),
        ambient_dim: 2 * v.len() + generators.len(),
        defining_equation_rank: 2 * w.len(),
        saturated,
        generators,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn names(ms: &[MonomialMap]) -> Vec<String> {
        ms.iter().map(ToString::to_string).collect()
    }

    fn set(ms: &[MonomialMap]) -> BTreeSet<String> {
        ms.iter().map(ToString::to_string).collect()
    }

    fn expect(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(
            set(&invariant_generators(2, &[1], 4)),
            expect(&["z*zb", "z^2", "zb^2"])
        );
        assert_eq!(names(&invariant_generators(1, &[1], 2)), ["z", "zb"]);
        assert_eq!(
            set(&invariant_generators(3, &[1], 4)),
            expect(&["z*zb", "z^3", "zb^3"])
        );
        assert_eq!(names(&invariant_generators(0, &[1], 4)), ["z*zb"]);
    }

    #[test]
    fn covariant_examples() {
        assert_eq!(names(&covariant_generators(2, &[1], 1, 3)), ["z", "zb"]);
        assert_eq!(names(&covariant_generators(3, &[1], 2, 4)), ["zb", "z^2"]);
        assert_eq!(names(&covariant_generators(1, &[1], 0, 1)), ["1"]);
        assert_eq!(names(&covariant_generators(0, &[2], 4, 5)), ["z^2"]);
    }

    #[test]
    fn universal_variety_examples() {
        let info = universal_variety_info(2, &[1], &[1], 4);
        assert_eq!(
            (
                info.generator_count,
                info.ambient_dim,
                info.defining_equation_rank
            ),
            (2, 4, 2)
        );
        assert!(info.saturated);
        let info = universal_variety_info(1, &[1], &[0], 2);
        assert_eq!(
            (
                info.generator_count,
                info.ambient_dim,
                info.defining_equation_rank
            ),
            (1, 3, 2)
        );
        let info = universal_variety_info(3, &[1], &[2], 5);
        assert_eq!((info.generator_count, info.ambient_dim), (2, 4));
        assert!(info.saturated);
    }

    #[test]
    fn truncation_is_flagged() {
        // z1^3 is a generator at the bound itself
        let info = universal_variety_info(7, &[1, 2], &[3], 3);
        assert!(!info.saturated);
    }

    #[test]
    fn display_with_several_variables() {
        let m = MonomialMap {
            alpha: vec![2, 0],
            beta: vec![0, 1],
            target: Some(0),
        };
        assert_eq!(m.to_string(), "z1^2*zb2");
        assert_eq!(MonomialMap::constant(2, None).to_string(), "1");
    }

    #[test]
    fn order_is_degree_then_descending_lex() {
        let gens = invariant_generators(2, &[1, 1], 2);
        assert_eq!(
            names(&gens),
            [
                "z1^2", "z1*z2", "z1*zb1", "z1*zb2", "z2^2", "z2*zb1", "z2*zb2", "zb1^2",
                "zb1*zb2", "zb2^2"
            ]
        );
    }

    proptest! {
        #[test]
        fn generators_are_sound_and_minimal(
            m in 0u64..7,
            v in proptest::collection::vec(-4i64..=4, 1..=2),
            w in -3i64..=3,
            bound in 1u32..=5,
        ) {
            let invariants = invariant_generators(m, &v, bound);
            let covs = covariant_generators(m, &v, w, bound);
            for h in &invariants {
                prop_assert!(congruent(h.weight(&v), 0, m));
                prop_assert!(h.degree() >= 1 && h.degree() <= bound);
            }
            for c in &covs {
                prop_assert!(congruent(c.weight(&v), w, m));
                for h in &invariants {
                    for c2 in &covs {
                        let prod: Vec<u32> = h.exponents().zip(c2.exponents()).map(|(a, b)| a + b).collect();
                        let mine: Vec<u32> = c.exponents().copied().collect();
                        prop_assert_ne!(prod, mine);
                    }
                }
            }
        }
    }
}
