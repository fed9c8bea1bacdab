//! Equivariant cohomology classes on fixed components.
//!
//! A class is a Laurent polynomial in the degree-2 equivariant parameter `u`
//! with coefficients in a [`FiniteBasisRing`] standing in for `H*(F)`. Positive
//! degree ring elements are nilpotent, which is what makes Euler classes with
//! nonzero weights exactly invertible.

mod laurent;
mod ring;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

pub use laurent::LaurentPoly;
pub use ring::{FiniteBasisRing, ProductEntry, RingElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("unknown ring `{0}`")]
    UnknownRing(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("classes over different rings")]
    RingMismatch,
    #[error("ring element does not belong to ring `{0}`")]
    ForeignElement(String),
    #[error("first Chern class must be homogeneous of degree 2")]
    ChernDegree,
    #[error("class is not invertible: {0}")]
    NonInvertible(String),
    #[error("cannot parse coefficient `{0}`")]
    Coefficient(String),
}

/// A complex line with weight `weight` whose nonequivariant first Chern class
/// is `chern`. Its equivariant Euler class is `weight·u + chern`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSummand<T> {
    pub weight: i64,
    pub chern: RingElement<T>,
}

impl<T: Scalar> LineSummand<T> {
    pub fn new(weight: i64, chern: RingElement<T>) -> Self {
        LineSummand { weight, chern }
    }

    /// A line with no nonequivariant twist.
    pub fn pure(ring: &FiniteBasisRing<T>, weight: i64) -> Self {
        LineSummand {
            weight,
            chern: ring.zero(),
        }
    }
}

/// `Σ_k u^k · r_k` with finitely many nonzero `r_k ∈ H*(F)`.
#[derive(Debug, Clone)]
pub struct EquivariantClass<T> {
    ring: Arc<FiniteBasisRing<T>>,
    terms: BTreeMap<i32, RingElement<T>>,
}

impl<T: Scalar> PartialEq for EquivariantClass<T> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

fn same_ring<T: Scalar>(a: &Arc<FiniteBasisRing<T>>, b: &Arc<FiniteBasisRing<T>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<T: Scalar> EquivariantClass<T> {
    pub fn zero(ring: &Arc<FiniteBasisRing<T>>) -> Self {
        EquivariantClass {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<FiniteBasisRing<T>>) -> Self {
        Self::monomial(ring, 0, ring.one())
    }

    /// `u^power · r`.
    pub fn monomial(ring: &Arc<FiniteBasisRing<T>>, power: i32, r: RingElement<T>) -> Self {
        let mut c = Self::zero(ring);
        c.add_term(power, r);
        c
    }

    /// `s · u^power` for a scalar `s`.
    pub fn scalar_u(ring: &Arc<FiniteBasisRing<T>>, power: i32, s: T) -> Self {
        Self::monomial(ring, power, ring.scalar(s))
    }

    pub fn from_terms(
        ring: &Arc<FiniteBasisRing<T>>,
        terms: impl IntoIterator<Item = (i32, RingElement<T>)>,
    ) -> Result<Self, ClassError> {
        let mut c = Self::zero(ring);
        for (k, r) in terms {
            if !ring.owns(&r) {
                return Err(ClassError::ForeignElement(ring.name().to_string()));
            }
            c.add_term(k, r);
        }
        Ok(c)
    }

    fn add_term(&mut self, power: i32, r: RingElement<T>) {
        let sum = match self.terms.remove(&power) {
            Some(prev) => prev.add(&r),
            None => r,
        };
        if !sum.is_zero() {
            self.terms.insert(power, sum);
        }
    }

    pub fn ring(&self) -> &Arc<FiniteBasisRing<T>> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<i32, RingElement<T>> {
        &self.terms
    }

    pub fn coefficient(&self, power: i32) -> RingElement<T> {
        self.terms
            .get(&power)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_ring(&self, other: &Self) -> Result<(), ClassError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(ClassError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ClassError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (&k, r) in &other.terms {
            out.add_term(k, r.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        EquivariantClass {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(&k, r)| (k, r.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ClassError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(&self.ring);
        for (&k, r) in &self.terms {
            out.add_term(k, r.scale(s));
        }
        out
    }

    /// Product of Laurent polynomials with ring multiplication on coefficients.
    pub fn mul(&self, other: &Self) -> Result<Self, ClassError> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (&i, a) in &self.terms {
            for (&j, b) in &other.terms {
                out.add_term(i + j, self.ring.mul(a, b));
            }
        }
        Ok(out)
    }

    /// Total degree `2·power + deg(ring part)` when every term agrees on it.
    /// `None` for the zero class or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut degree = None;
        for (&k, r) in &self.terms {
            let d = 2 * k + self.ring.degree_of(r)? as i32;
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        degree
    }

    pub fn is_homogeneous_of(&self, d: i32) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(d)
    }

    /// Serialized form `{"terms": [{"upow": k, "coeffs": {label: "p/q"}}]}`.
    pub fn to_json(&self) -> ClassJson {
        ClassJson {
            terms: self
                .terms
                .iter()
                .map(|(&upow, r)| TermJson {
                    upow,
                    coeffs: r
                        .coeffs()
                        .iter()
                        .zip(self.ring.labels())
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, l)| (l.clone(), c.to_string()))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(ring: &Arc<FiniteBasisRing<T>>, json: &ClassJson) -> Result<Self, ClassError>
    where
        T: FromStr,
    {
        let mut c = Self::zero(ring);
        for term in &json.terms {
            let mut r = ring.zero();
            for (label, text) in &term.coeffs {
                let v: T = text
                    .parse()
                    .map_err(|_| ClassError::Coefficient(text.clone()))?;
                r = r.add(&ring.basis(label)?.scale(&v));
            }
            c.add_term(term.upow, r);
        }
        Ok(c)
    }
}

impl<T: Scalar> fmt::Display for EquivariantClass<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&k, r)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let coeff = self.ring.format(r);
            match k {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "({coeff})*u")?,
                k => write!(f, "({coeff})*u^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub upow: i32,
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub terms: Vec<TermJson>,
}

/// Equivariant Euler class `∏ (w_i·u + c_i)`, times `extra` when present
/// (the ordinary Euler class of a weight-0 real summand).
pub fn euler_class<T: Scalar>(
    ring: &Arc<FiniteBasisRing<T>>,
    summands: &[LineSummand<T>],
    extra: Option<&RingElement<T>>,
) -> Result<EquivariantClass<T>, ClassError> {
    let mut e = EquivariantClass::one(ring);
    for s in summands {
        if !ring.owns(&s.chern) {
            return Err(ClassError::ForeignElement(ring.name().to_string()));
        }
        if !s.chern.is_zero() && ring.degree_of(&s.chern) != Some(2) {
            return Err(ClassError::ChernDegree);
        }
        let factor = EquivariantClass::from_terms(
            ring,
            [
                (1, ring.scalar(T::from_int(s.weight))),
                (0, s.chern.clone()),
            ],
        )?;
        e = e.mul(&factor)?;
    }
    if let Some(x) = extra {
        if !ring.owns(x) {
            return Err(ClassError::ForeignElement(ring.name().to_string()));
        }
        e = e.mul(&EquivariantClass::monomial(ring, 0, x.clone()))?;
    }
    Ok(e)
}

/// Exact inverse of a class whose leading `u`-coefficient is a nonzero scalar
/// and whose lower coefficients are nilpotent, e.g. `∏ (w_i·u + c_i)` with all
/// `w_i ≠ 0`. Writing `e = a·u^p·(1 + N)`, the inverse is
/// `a⁻¹·u^{-p}·Σ_k (−N)^k`, which terminates because `N` is nilpotent.
pub fn invert_euler<T: Scalar>(e: &EquivariantClass<T>) -> Result<EquivariantClass<T>, ClassError> {
    let ring = e.ring();
    let (&p, lead) = e
        .terms()
        .last_key_value()
        .ok_or_else(|| ClassError::NonInvertible("zero class".into()))?;
    let a = ring.unit_coefficient(lead);
    if a.is_zero()
        || lead
            .sub(&ring.scalar(a.clone()))
            .coeffs()
            .iter()
            .any(|c| !c.is_zero())
    {
        return Err(ClassError::NonInvertible(
            "leading u-coefficient is not a nonzero scalar (weight-0 factor?)".into(),
        ));
    }
    let a_inv = T::one() / a;

    let mut nil = EquivariantClass::zero(ring);
    for (&k, r) in e.terms().range(..p) {
        if !ring.unit_coefficient(r).is_zero() {
            return Err(ClassError::NonInvertible(
                "lower-order term has a degree-0 part; the inverse is not a finite Laurent polynomial"
                    .into(),
            ));
        }
        nil.add_term(k - p, r.scale(&a_inv));
    }

    let minus_nil = nil.neg();
    let mut sum = EquivariantClass::one(ring);
    let mut power = EquivariantClass::one(ring);
    for _ in 0..=ring.top_degree() / 2 {
        power = power.mul(&minus_nil)?;
        if power.is_zero() {
            break;
        }
        sum = sum.add(&power)?;
    }
    sum.mul(&EquivariantClass::scalar_u(ring, -p, a_inv))
}

/// Pushforward to a point: the integral of each `u`-coefficient.
pub fn integrate_over_component<T: Scalar>(c: &EquivariantClass<T>) -> LaurentPoly<T> {
    LaurentPoly::from_terms(c.terms().iter().map(|(&k, r)| (k, c.ring().integral(r))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use proptest::prelude::*;

    type R = FiniteBasisRing<Rational>;
    type C = EquivariantClass<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn s2() -> Arc<R> {
        Arc::new(R::sphere2())
    }

    fn u_plus(ring: &Arc<R>, w: i64, x: &[(&str, i64)]) -> C {
        let terms: Vec<(&str, Rational)> = x.iter().map(|&(l, c)| (l, q(c))).collect();
        C::from_terms(
            ring,
            [(1, ring.scalar(q(w))), (0, ring.element(&terms).unwrap())],
        )
        .unwrap()
    }

    #[test]
    fn ring_mul_examples() {
        let r = s2();
        let a = u_plus(&r, 1, &[("x", 1)]);
        let b = u_plus(&r, 1, &[("x", -1)]);
        assert_eq!(a.mul(&b).unwrap(), C::scalar_u(&r, 2, q(1)));

        let c = u_plus(&r, 3, &[("x", 2)]);
        assert_eq!(C::one(&r).mul(&c).unwrap(), c);

        let p = Arc::new(R::point());
        let prod = C::scalar_u(&p, 1, q(2))
            .mul(&C::scalar_u(&p, -1, q(3)))
            .unwrap();
        assert_eq!(prod, C::scalar_u(&p, 0, q(6)));
    }

    #[test]
    fn ring_mismatch() {
        let a = C::one(&s2());
        let b = C::one(&Arc::new(R::point()));
        assert_eq!(a.mul(&b), Err(ClassError::RingMismatch));
        // structurally equal rings behind different pointers are the same ring
        assert!(a.mul(&C::one(&s2())).is_ok());
    }

    #[test]
    fn euler_class_examples() {
        let p = Arc::new(R::point());
        let e = euler_class(&p, &[LineSummand::pure(&p, 1)], None).unwrap();
        assert_eq!(e, C::scalar_u(&p, 1, q(1)));

        let r = s2();
        let line = LineSummand::new(1, r.element(&[("x", q(5))]).unwrap());
        assert_eq!(
            euler_class(&r, &[line], None).unwrap(),
            u_plus(&r, 1, &[("x", 5)])
        );

        let e = euler_class(
            &p,
            &[LineSummand::pure(&p, 1), LineSummand::pure(&p, -1)],
            None,
        )
        .unwrap();
        assert_eq!(e, C::scalar_u(&p, 2, q(-1)));
        assert_eq!(e.homogeneous_degree(), Some(4));
    }

    #[test]
    fn euler_class_with_extra_factor() {
        let r = s2();
        let x = r.basis("x").unwrap();
        let e = euler_class(&r, &[LineSummand::pure(&r, 2)], Some(&x)).unwrap();
        assert_eq!(e, C::monomial(&r, 1, x.scale(&q(2))));
        assert_eq!(e.homogeneous_degree(), Some(4));
    }

    #[test]
    fn euler_class_rejects_bad_chern() {
        let r = s2();
        let bad = LineSummand::new(1, r.one());
        assert_eq!(euler_class(&r, &[bad], None), Err(ClassError::ChernDegree));
    }

    #[test]
    fn invert_examples() {
        let p = Arc::new(R::point());
        assert_eq!(
            invert_euler(&C::scalar_u(&p, 1, q(1))).unwrap(),
            C::scalar_u(&p, -1, q(1))
        );
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(
            invert_euler(&C::scalar_u(&p, 1, q(2))).unwrap(),
            C::scalar_u(&p, -1, half)
        );

        let r = s2();
        let inv = invert_euler(&u_plus(&r, 1, &[("x", 1)])).unwrap();
        let expect = C::from_terms(
            &r,
            [(-1, r.one()), (-2, r.element(&[("x", q(-1))]).unwrap())],
        )
        .unwrap();
        assert_eq!(inv, expect);
    }

    #[test]
    fn weight_zero_factor_is_not_invertible() {
        let r = s2();
        let e = euler_class(
            &r,
            &[
                LineSummand::pure(&r, 1),
                LineSummand::new(0, r.basis("x").unwrap()),
            ],
            None,
        )
        .unwrap();
        assert!(matches!(
            invert_euler(&e),
            Err(ClassError::NonInvertible(_))
        ));
        assert!(matches!(
            invert_euler(&C::zero(&r)),
            Err(ClassError::NonInvertible(_))
        ));
        // u + 1 has an infinite inverse series
        let p = Arc::new(R::point());
        let e = C::from_terms(&p, [(1, p.one()), (0, p.one())]).unwrap();
        assert!(matches!(
            invert_euler(&e),
            Err(ClassError::NonInvertible(_))
        ));
    }

    #[test]
    fn integration_examples() {
        let r = s2();
        let x = C::monomial(&r, 0, r.basis("x").unwrap());
        assert_eq!(integrate_over_component(&x), LaurentPoly::constant(q(1)));
        assert_eq!(
            integrate_over_component(&u_plus(&r, 1, &[("x", 1)])),
            LaurentPoly::constant(q(1))
        );
        let xu = C::monomial(&r, -1, r.basis("x").unwrap());
        assert_eq!(
            integrate_over_component(&xu),
            LaurentPoly::from_terms([(-1, q(1))])
        );
    }

    #[test]
    fn json_round_trip() {
        let r = Arc::new(R::builtin("S2xS2").unwrap());
        let c = C::from_terms(
            &r,
            [
                (2, r.one()),
                (
                    -1,
                    r.element(&[("x*1", Rational::new(3.into(), 7.into()))])
                        .unwrap(),
                ),
            ],
        )
        .unwrap();
        let json = c.to_json();
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.contains("\"3/7\""));
        let back: ClassJson = serde_json::from_str(&text).unwrap();
        assert_eq!(C::from_json(&r, &back).unwrap(), c);
    }

    #[test]
    fn generic_over_floats() {
        let r = Arc::new(FiniteBasisRing::<f64>::sphere2());
        let e = euler_class(
            &r,
            &[LineSummand::new(2, r.element(&[("x", 1.0)]).unwrap())],
            None,
        )
        .unwrap();
        let inv = invert_euler(&e).unwrap();
        assert_eq!(e.mul(&inv).unwrap(), EquivariantClass::one(&r));
        assert_eq!(inv.coefficient(-2).coeffs(), &[0.0, -0.25]);
    }

    fn ring_by_index(i: usize) -> Arc<R> {
        Arc::new(R::builtin(["point", "S2", "S2xS2", "CP2"][i]).unwrap())
    }

    /// Random degree-2 element of `ring`.
    fn chern(ring: &R, coeffs: &[i64]) -> RingElement<Rational> {
        let mut e = ring.zero();
        for (k, (&d, c)) in ring.degrees().iter().zip(coeffs.iter().cycle()).enumerate() {
            if d == 2 {
                e = e.add(&ring.basis_element(k).scale(&q(*c)));
            }
        }
        e
    }

    fn admissible() -> impl Strategy<Value = (usize, Vec<(i64, Vec<i64>)>)> {
        (
            0usize..4,
            prop::collection::vec(
                (
                    prop_oneof![-5i64..=-1, 1i64..=5],
                    prop::collection::vec(-4i64..=4, 2),
                ),
                0..=4,
            ),
        )
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided((ri, data) in admissible()) {
            let ring = ring_by_index(ri);
            let summands: Vec<_> = data
                .iter()
                .map(|(w, c)| LineSummand::new(*w, chern(&ring, c)))
                .collect();
            let e = euler_class(&ring, &summands, None).unwrap();
            let inv = invert_euler(&e).unwrap();
            prop_assert_eq!(e.mul(&inv).unwrap(), C::one(&ring));
            prop_assert_eq!(inv.mul(&e).unwrap(), C::one(&ring));
            prop_assert_eq!(e.homogeneous_degree(), Some(2 * summands.len() as i32));
            prop_assert!(inv.is_homogeneous_of(-2 * summands.len() as i32));
        }

        #[test]
        fn multiplication_laws((ri, data) in admissible(), shift in -3i32..=3) {
            let ring = ring_by_index(ri);
            let factors: Vec<C> = data
                .iter()
                .map(|(w, c)| euler_class(&ring, &[LineSummand::new(*w, chern(&ring, c))], None).unwrap())
                .collect();
            if factors.len() >= 3 {
                let (a, b, c) = (&factors[0], &factors[1], &factors[2].mul(&C::scalar_u(&ring, shift, q(1))).unwrap());
                prop_assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
                prop_assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                let da = a.homogeneous_degree().unwrap();
                let dc = c.homogeneous_degree().unwrap();
                prop_assert_eq!(a.mul(c).unwrap().homogeneous_degree(), Some(da + dc));
            }
        }
    }
}
