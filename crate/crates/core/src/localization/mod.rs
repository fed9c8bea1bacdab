//! Fixed-point localization for circle actions.
//!
//! The integral of an equivariant class over `B` is the sum over fixed
//! components `F` of `∫_F j*α / e_G(N_F)`. Everything is computed exactly; the
//! Euler class of each normal bundle is inverted as a Laurent polynomial in `u`.
//!
//! On top of the integral sit the intersection number
//! `Ψ(E_α, E_β) = ∫_B e(E_α ⊕ E_β)` and the fixed-locus pipeline that splits
//! `E|_F = 𝓔_G ⊕ 𝓞_1` into weight-0 and moving parts, substitutes the Poincaré
//! dual of the zero locus for `e_G(𝓔_G)` and integrates `e_G(𝓞_1)/e_G(N)`.

pub mod fixtures;
pub mod json;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::equivariant_classes::{
    euler_class, integrate_over_component, invert_euler, ClassError, EquivariantClass,
    FiniteBasisRing, LaurentPoly, LineSummand, RingElement,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("invalid localization problem: {0}")]
    Validation(String),
    #[error("unknown bundle `{0}`")]
    UnknownBundle(String),
    #[error("normal summand {index} of component {component} has weight 0, so its Euler class is not invertible")]
    ZeroNormalWeight { component: usize, index: usize },
    #[error("ranks of `{alpha}` and `{beta}` sum to {sum}, but dim B = {total}")]
    RankMismatch {
        alpha: String,
        beta: String,
        sum: usize,
        total: usize,
    },
    #[error("poles do not cancel: nonzero coefficients on u^{powers:?} ({integral})")]
    PoleCancellation { powers: Vec<i32>, integral: String },
    #[error("invalid split of `{bundle}` on component {component}: {reason}")]
    SplitValidation {
        bundle: String,
        component: usize,
        reason: String,
    },
}

/// Restriction of a bundle to one fixed component: complex lines with their
/// weights, plus optionally a weight-0 real part given by its Euler class.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleData<T> {
    pub lines: Vec<LineSummand<T>>,
    /// Ordinary Euler class and real rank of a weight-0 real summand.
    pub extra: Option<(RingElement<T>, usize)>,
}

impl<T: Scalar> BundleData<T> {
    pub fn lines(lines: Vec<LineSummand<T>>) -> Self {
        BundleData { lines, extra: None }
    }

    pub fn real_rank(&self) -> usize {
        2 * self.lines.len() + self.extra.as_ref().map_or(0, |(_, r)| *r)
    }
}

#[derive(Debug, Clone)]
pub struct FixedComponent<T> {
    pub ring: Arc<FiniteBasisRing<T>>,
    pub dim: usize,
    /// Normal bundle of the component, as lines with nonzero weights.
    pub normal: Vec<LineSummand<T>>,
    pub bundles: BTreeMap<String, BundleData<T>>,
}

/// What to integrate: the unit class, or the Euler class of a direct sum of
/// named bundles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassSpec {
    Unit,
    Euler(Vec<String>),
}

impl ClassSpec {
    pub fn euler(name: &str) -> Self {
        ClassSpec::Euler(vec![name.to_string()])
    }
}

impl FromStr for ClassSpec {
    type Err = LocalizationError;

    /// `1` or bundle names joined by `+`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "1" {
            return Ok(ClassSpec::Unit);
        }
        let names: Vec<String> = t.split('+').map(|n| n.trim().to_string()).collect();
        if names.iter().any(|n| n.is_empty()) {
            return Err(LocalizationError::Validation(format!(
                "bad class expression `{s}`"
            )));
        }
        Ok(ClassSpec::Euler(names))
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::Unit => write!(f, "1"),
            ClassSpec::Euler(names) => write!(f, "e({})", names.join("+")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LocalizationProblem<T> {
    total_dim: usize,
    components: Vec<FixedComponent<T>>,
    ranks: BTreeMap<String, usize>,
}

impl<T: Scalar> LocalizationProblem<T> {
    pub fn new(
        total_dim: usize,
        components: Vec<FixedComponent<T>>,
    ) -> Result<Self, LocalizationError> {
        let invalid = |m: String| Err(LocalizationError::Validation(m));
        let Some(first) = components.first() else {
            return invalid("no fixed components".into());
        };
        let ranks: BTreeMap<String, usize> = first
            .bundles
            .iter()
            .map(|(n, b)| (n.clone(), b.real_rank()))
            .collect();
        for (i, c) in components.iter().enumerate() {
            if c.ring.top_degree() as usize != c.dim {
                return invalid(format!(
                    "component {i}: ring {} has top degree {}, component dimension is {}",
                    c.ring.name(),
                    c.ring.top_degree(),
                    c.dim
                ));
            }
            if c.dim > total_dim || 2 * c.normal.len() != total_dim - c.dim {
                return invalid(format!(
                    "component {i}: normal rank {} does not match codimension {}",
                    2 * c.normal.len(),
                    total_dim as i64 - c.dim as i64
                ));
            }
            let names: Vec<&String> = c.bundles.keys().collect();
            if names != ranks.keys().collect::<Vec<_>>() {
                return invalid(format!(
                    "component {i}: bundle names differ from component 0"
                ));
            }
            for (name, b) in &c.bundles {
                if b.real_rank() != ranks[name] {
                    return invalid(format!(
                        "component {i}: bundle `{name}` has rank {}, expected {}",
                        b.real_rank(),
                        ranks[name]
                    ));
                }
                let owned = b.lines.iter().all(|l| c.ring.owns(&l.chern))
                    && b.extra.as_ref().is_none_or(|(e, _)| c.ring.owns(e));
                if !owned {
                    return invalid(format!(
                        "component {i}: bundle `{name}` uses a foreign ring"
                    ));
                }
            }
            if !c.normal.iter().all(|l| c.ring.owns(&l.chern)) {
                return invalid(format!("component {i}: normal bundle uses a foreign ring"));
            }
        }
        Ok(LocalizationProblem {
            total_dim,
            components,
            ranks,
        })
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn components(&self) -> &[FixedComponent<T>] {
        &self.components
    }

    pub fn bundle_rank(&self, name: &str) -> Result<usize, LocalizationError> {
        self.ranks
            .get(name)
            .copied()
            .ok_or_else(|| LocalizationError::UnknownBundle(name.to_string()))
    }

    pub fn bundle_names(&self) -> impl Iterator<Item = &String> {
        self.ranks.keys()
    }

    /// Real degree of the Euler class described by `spec`.
    pub fn class_degree(&self, spec: &ClassSpec) -> Result<usize, LocalizationError> {
        match spec {
            ClassSpec::Unit => Ok(0),
            ClassSpec::Euler(names) => names.iter().map(|n| self.bundle_rank(n)).sum(),
        }
    }

    fn normal_inverse(&self, idx: usize) -> Result<EquivariantClass<T>, LocalizationError> {
        let c = &self.components[idx];
        if let Some(index) = c.normal.iter().position(|l| l.weight == 0) {
            return Err(LocalizationError::ZeroNormalWeight {
                component: idx,
                index,
            });
        }
        Ok(invert_euler(&euler_class(&c.ring, &c.normal, None)?)?)
    }
}

fn bundle_on<'a, T>(
    c: &'a FixedComponent<T>,
    name: &str,
) -> Result<&'a BundleData<T>, LocalizationError> {
    c.bundles
        .get(name)
        .ok_or_else(|| LocalizationError::UnknownBundle(name.to_string()))
}

/// Euler class of the direct sum of `lines` plus the product of `extras`.
fn euler_of<T: Scalar>(
    ring: &Arc<FiniteBasisRing<T>>,
    lines: &[LineSummand<T>],
    extras: &[&RingElement<T>],
) -> Result<EquivariantClass<T>, ClassError> {
    let extra = extras.iter().fold(None::<RingElement<T>>, |acc, e| {
        Some(match acc {
            None => (*e).clone(),
            Some(a) => ring.mul(&a, e),
        })
    });
    euler_class(ring, lines, extra.as_ref())
}

/// Restriction of `e_G(⊕ names)` to component `c`.
fn restricted_euler<T: Scalar>(
    c: &FixedComponent<T>,
    names: &[String],
) -> Result<EquivariantClass<T>, LocalizationError> {
    let mut lines = Vec::new();
    let mut extras = Vec::new();
    for n in names {
        let b = bundle_on(c, n)?;
        lines.extend(b.lines.iter().cloned());
        if let Some((e, _)) = &b.extra {
            extras.push(e);
        }
    }
    Ok(euler_of(&c.ring, &lines, &extras)?)
}

/// `∫_B α = Σ_F ∫_F j*α / e_G(N_F)` as an exact Laurent polynomial in `u`.
pub fn abbv_integral<T: Scalar>(
    p: &LocalizationProblem<T>,
    spec: &ClassSpec,
) -> Result<LaurentPoly<T>, LocalizationError> {
    let mut total = LaurentPoly::zero();
    for (idx, c) in p.components.iter().enumerate() {
        let numerator = match spec {
            ClassSpec::Unit => EquivariantClass::one(&c.ring),
            ClassSpec::Euler(names) => restricted_euler(c, names)?,
        };
        let integrand = numerator.mul(&p.normal_inverse(idx)?)?;
        total = total.add(&integrate_over_component(&integrand));
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionResult<T> {
    pub value: T,
    pub integral: LaurentPoly<T>,
}

fn check_complementary<T: Scalar>(
    p: &LocalizationProblem<T>,
    alpha: &str,
    beta: &str,
) -> Result<(), LocalizationError> {
    let sum = p.bundle_rank(alpha)? + p.bundle_rank(beta)?;
    if sum != p.total_dim {
        return Err(LocalizationError::RankMismatch {
            alpha: alpha.to_string(),
            beta: beta.to_string(),
            sum,
            total: p.total_dim,
        });
    }
    Ok(())
}

fn constant_or_error<T: Scalar>(integral: &LaurentPoly<T>) -> Result<T, LocalizationError> {
    let powers = integral.residue_upowers();
    if !powers.is_empty() {
        return Err(LocalizationError::PoleCancellation {
            powers,
            integral: integral.to_string(),
        });
    }
    Ok(integral.constant_term())
}

/// `Ψ(E_α, E_β) = ∫_B e(E_α ⊕ E_β)`. The ranks must add up to `dim B`; the
/// equivariant integral must then be a pure number, equal to the
/// nonequivariant one.
pub fn intersection_number<T: Scalar>(
    p: &LocalizationProblem<T>,
    alpha: &str,
    beta: &str,
) -> Result<IntersectionResult<T>, LocalizationError> {
    check_complementary(p, alpha, beta)?;
    let integral = abbv_integral(
        p,
        &ClassSpec::Euler(vec![alpha.to_string(), beta.to_string()]),
    )?;
    Ok(IntersectionResult {
        value: constant_or_error(&integral)?,
        integral,
    })
}

/// A bundle's lines on one fixed component, divided into the weight-0 part
/// (fixed subbundle) and the moving part (obstruction bundle).
#[derive(Debug, Clone, PartialEq)]
pub struct BundleSplit<T> {
    pub fixed: Vec<LineSummand<T>>,
    pub moving: Vec<LineSummand<T>>,
}

/// Per-bundle, per-component fixed/moving designation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Split<T> {
    parts: BTreeMap<String, Vec<BundleSplit<T>>>,
}

impl<T: Scalar> Split<T> {
    pub fn new() -> Self {
        Split {
            parts: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, bundle: &str, per_component: Vec<BundleSplit<T>>) {
        self.parts.insert(bundle.to_string(), per_component);
    }

    pub fn get(&self, bundle: &str) -> Option<&[BundleSplit<T>]> {
        self.parts.get(bundle).map(Vec::as_slice)
    }

    /// The split read off from the weights: weight-0 lines are fixed.
    pub fn by_weight<'a>(
        p: &LocalizationProblem<T>,
        bundles: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self, LocalizationError> {
        let mut split = Split::new();
        for name in bundles {
            let per = p
                .components
                .iter()
                .map(|c| {
                    let b = bundle_on(c, name)?;
                    let (fixed, moving) = b.lines.iter().cloned().partition(|l| l.weight == 0);
                    Ok(BundleSplit { fixed, moving })
                })
                .collect::<Result<Vec<_>, LocalizationError>>()?;
            split.insert(name, per);
        }
        Ok(split)
    }

    fn parts_for(
        &self,
        p: &LocalizationProblem<T>,
        bundle: &str,
    ) -> Result<&[BundleSplit<T>], LocalizationError> {
        let parts = self
            .get(bundle)
            .ok_or_else(|| LocalizationError::SplitValidation {
                bundle: bundle.to_string(),
                component: 0,
                reason: "bundle missing from split".into(),
            })?;
        if parts.len() != p.components.len() {
            return Err(LocalizationError::SplitValidation {
                bundle: bundle.to_string(),
                component: parts.len().min(p.components.len()),
                reason: format!(
                    "{} component entries for {} components",
                    parts.len(),
                    p.components.len()
                ),
            });
        }
        Ok(parts)
    }
}

/// Multiset equality of line lists (coefficients are only `PartialEq`).
fn same_lines<T: Scalar>(a: &[LineSummand<T>], b: &[LineSummand<T>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter()
        .all(|x| match (0..b.len()).find(|&j| !used[j] && b[j] == *x) {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        })
}

fn validate_split<T: Scalar>(
    p: &LocalizationProblem<T>,
    split: &Split<T>,
    bundle: &str,
) -> Result<(), LocalizationError> {
    let parts = split.parts_for(p, bundle)?;
    for (idx, (c, part)) in p.components.iter().zip(parts).enumerate() {
        let fail = |reason: String| LocalizationError::SplitValidation {
            bundle: bundle.to_string(),
            component: idx,
            reason,
        };
        if let Some(l) = part.fixed.iter().find(|l| l.weight != 0) {
            return Err(fail(format!(
                "weight-{} line classified as fixed",
                l.weight
            )));
        }
        if part.moving.iter().any(|l| l.weight == 0) {
            return Err(fail("weight-0 line classified as moving".into()));
        }
        let mut all = part.fixed.clone();
        all.extend(part.moving.iter().cloned());
        if !same_lines(&all, &bundle_on(c, bundle)?.lines) {
            return Err(fail(
                "fixed and moving parts do not recombine to the bundle".into(),
            ));
        }
    }
    Ok(())
}

/// Fixed-locus side of the intersection formula:
/// `Σ_F ∫_F PD_G(Z) · e_G(𝓞_1) / e_G(N_F)` where the Poincaré dual of the zero
/// locus `Z` enters as `e_G(𝓔_G)`, the Euler class of the fixed parts of
/// `E_α ⊕ E_β`, and `𝓞_1` collects the moving parts.
pub fn main_thm2_rhs<T: Scalar>(
    p: &LocalizationProblem<T>,
    alpha: &str,
    beta: &str,
    split: &Split<T>,
) -> Result<T, LocalizationError> {
    check_complementary(p, alpha, beta)?;
    validate_split(p, split, alpha)?;
    validate_split(p, split, beta)?;
    let (sa, sb) = (split.parts_for(p, alpha)?, split.parts_for(p, beta)?);
    let mut total = LaurentPoly::zero();
    for (idx, c) in p.components.iter().enumerate() {
        let mut fixed = sa[idx].fixed.clone();
        fixed.extend(sb[idx].fixed.iter().cloned());
        let mut moving = sa[idx].moving.clone();
        moving.extend(sb[idx].moving.iter().cloned());
        let extras: Vec<&RingElement<T>> = [alpha, beta]
            .iter()
            .filter_map(|n| c.bundles[*n].extra.as_ref().map(|(e, _)| e))
            .collect();

        let poincare_dual = euler_of(&c.ring, &fixed, &extras)?;
        let obstruction_over_normal =
            euler_of(&c.ring, &moving, &[])?.mul(&p.normal_inverse(idx)?)?;
        let integrand = poincare_dual.mul(&obstruction_over_normal)?;
        total = total.add(&integrate_over_component(&integrand));
    }
    constant_or_error(&total)
}

/// Whitney product check on every component:
/// `e_G(E|_F) = e_G(fixed part) · e_G(moving part)`.
pub fn product_formula_check<T: Scalar>(
    p: &LocalizationProblem<T>,
    bundle: &str,
    split: &Split<T>,
) -> Result<bool, LocalizationError> {
    let parts = split.parts_for(p, bundle)?;
    for (c, part) in p.components.iter().zip(parts) {
        let b = bundle_on(c, bundle)?;
        let extras: Vec<&RingElement<T>> = b.extra.iter().map(|(e, _)| e).collect();
        let whole = euler_of(&c.ring, &b.lines, &extras)?;
        let fixed = euler_of(&c.ring, &part.fixed, &extras)?;
        let moving = euler_of(&c.ring, &part.moving, &[])?;
        if whole != fixed.mul(&moving)? {
            return Ok(false);
        }
    }
    Ok(true)
}
