//! Standard circle actions with known fixed-point data.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{BundleData, FixedComponent, LocalizationProblem};
use crate::equivariant_classes::{FiniteBasisRing, LineSummand};
use crate::scalar::Scalar;

/// Name under which every fixture registers its tangent bundle.
pub const TANGENT: &str = "TB";

fn point_component<T: Scalar>(
    ring: &Arc<FiniteBasisRing<T>>,
    normal: &[i64],
    bundles: BTreeMap<String, BundleData<T>>,
) -> FixedComponent<T> {
    let normal: Vec<_> = normal.iter().map(|&w| LineSummand::pure(ring, w)).collect();
    FixedComponent {
        ring: Arc::clone(ring),
        dim: 0,
        normal,
        bundles,
    }
}

fn pure_lines<T: Scalar>(ring: &FiniteBasisRing<T>, weights: &[i64]) -> BundleData<T> {
    BundleData::lines(
        weights
            .iter()
            .map(|&w| LineSummand::pure(ring, w))
            .collect(),
    )
}

/// S² rotated with speed `k`, fixed poles N and S. Each line `(name, m_N, m_S)`
/// has weight `m_N` at N and `m_S` at S; for `k = 1` its degree is
/// `m_N - m_S`.
pub fn s2_rotation<T: Scalar>(k: i64, lines: &[(&str, i64, i64)]) -> LocalizationProblem<T> {
    let pt = Arc::new(FiniteBasisRing::point());
    let components = [(k, 0usize), (-k, 1)]
        .iter()
        .map(|&(w, pole)| {
            let mut bundles = BTreeMap::new();
            bundles.insert(TANGENT.to_string(), pure_lines(&pt, &[w]));
            for &(name, mn, ms) in lines {
                let m = if pole == 0 { mn } else { ms };
                bundles.insert(name.to_string(), pure_lines(&pt, &[m]));
            }
            point_component(&pt, &[w], bundles)
        })
        .collect();
    LocalizationProblem::new(2, components).expect("S2 fixture is consistent")
}

/// CP² with the torus weights `λ` restricted to a circle; the fixed points are
/// the coordinate lines `p_i`. A line `(name, a, s)` has weight `a·λ_i + s` at
/// `p_i`, i.e. it is `O(a)` twisted by the character `s`.
pub fn cp2<T: Scalar>(lambda: [i64; 3], lines: &[(&str, i64, i64)]) -> LocalizationProblem<T> {
    let pt = Arc::new(FiniteBasisRing::point());
    let components = (0..3)
        .map(|i| {
            let tangent: Vec<i64> = (0..3)
                .filter(|&j| j != i)
                .map(|j| lambda[j] - lambda[i])
                .collect();
            let mut bundles = BTreeMap::new();
            bundles.insert(TANGENT.to_string(), pure_lines(&pt, &tangent));
            for &(name, a, s) in lines {
                bundles.insert(name.to_string(), pure_lines(&pt, &[a * lambda[i] + s]));
            }
            point_component(&pt, &tangent, bundles)
        })
        .collect();
    LocalizationProblem::new(4, components).expect("CP2 fixture is consistent")
}

/// S² × S² with speeds `a` and `b` on the factors: four fixed points with
/// tangent weights `(±a, ±b)`.
pub fn s2xs2<T: Scalar>(a: i64, b: i64) -> LocalizationProblem<T> {
    let pt = Arc::new(FiniteBasisRing::point());
    let components = [(a, b), (a, -b), (-a, b), (-a, -b)]
        .iter()
        .map(|&(x, y)| {
            let mut bundles = BTreeMap::new();
            bundles.insert(TANGENT.to_string(), pure_lines(&pt, &[x, y]));
            point_component(&pt, &[x, y], bundles)
        })
        .collect();
    LocalizationProblem::new(4, components).expect("S2xS2 fixture is consistent")
}

/// S⁴ = S(R³ ⊕ C) with the circle rotating the C factor: the fixed set is a
/// single S² with trivial normal line of weight 1. Each bundle is a list of
/// lines `(w, c)` restricting to weight `w` and first Chern class `c·x`. The
/// tangent bundle restricts to `TS² ⊕ N`.
pub fn s4_semi_free<T: Scalar>(bundles: &[(&str, Vec<(i64, i64)>)]) -> LocalizationProblem<T> {
    let s2 = Arc::new(FiniteBasisRing::sphere2());
    let x = |c: i64| s2.basis_element(1).scale(&T::from_int(c));
    let line = |w: i64, c: i64| LineSummand::new(w, x(c));
    let mut data = BTreeMap::new();
    data.insert(
        TANGENT.to_string(),
        BundleData::lines(vec![line(0, 2), line(1, 0)]),
    );
    for (name, lines) in bundles {
        let lines = lines.iter().map(|&(w, c)| line(w, c)).collect();
        data.insert(name.to_string(), BundleData::lines(lines));
    }
    let comp = FixedComponent {
        ring: Arc::clone(&s2),
        dim: 2,
        normal: vec![line(1, 0)],
        bundles: data,
    };
    LocalizationProblem::new(4, vec![comp]).expect("S4 fixture is consistent")
}
