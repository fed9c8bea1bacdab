//! Finite-basis graded commutative rings with a top-class integral.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

use super::ClassError;

/// Dense coefficient vector over the basis of some [`FiniteBasisRing`].
#[derive(Debug, Clone, PartialEq)]
pub struct RingElement<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> RingElement<T> {
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        RingElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RingElement {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        RingElement {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }
}

/// Cohomology-like ring with a finite homogeneous basis, even degrees only.
///
/// Exactly one basis element has degree 0, the unit `"1"`; every element of
/// positive degree is therefore nilpotent. The integral picks out the
/// coefficient of the top basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteBasisRing<T> {
    name: String,
    labels: Vec<String>,
    degrees: Vec<u32>,
    /// `table[i][j]` holds the coefficients of `e_i · e_j`.
    table: Vec<Vec<Vec<T>>>,
    unit: usize,
    top: usize,
}

pub type ProductEntry<T> = ((String, String), Vec<(String, T)>);

impl<T: Scalar> FiniteBasisRing<T> {
    /// Builds a ring from its basis, the nonzero products, and the top label.
    /// Products with `"1"` and mirrored pairs are filled in; unlisted products
    /// are zero. Associativity, commutativity, the unit law and the grading are
    /// checked over the whole basis.
    pub fn new(
        name: impl Into<String>,
        basis: Vec<(String, u32)>,
        products: impl IntoIterator<Item = ProductEntry<T>>,
        top_label: &str,
    ) -> Result<Self, ClassError> {
        let name = name.into();
        let invalid = |msg: String| ClassError::InvalidRing(format!("{name}: {msg}"));
        let n = basis.len();
        let mut index = BTreeMap::new();
        for (i, (label, deg)) in basis.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(invalid(format!("duplicate basis label `{label}`")));
            }
            if deg % 2 != 0 {
                return Err(invalid(format!("`{label}` has odd degree {deg}")));
            }
        }
        let unit = *index
            .get("1")
            .ok_or_else(|| invalid("basis must contain the unit `1`".into()))?;
        if basis[unit].1 != 0 {
            return Err(invalid("the unit `1` must have degree 0".into()));
        }
        if basis.iter().filter(|(_, d)| *d == 0).count() != 1 {
            return Err(invalid(
                "exactly one basis element may have degree 0".into(),
            ));
        }
        let top = *index
            .get(top_label)
            .ok_or_else(|| ClassError::UnknownLabel(top_label.to_string()))?;
        let max_deg = basis.iter().map(|(_, d)| *d).max().unwrap_or(0);
        if basis[top].1 != max_deg {
            return Err(invalid(format!(
                "top label `{top_label}` is not of maximal degree"
            )));
        }

        let zero_vec = || vec![T::zero(); n];
        let unit_vec = |k: usize| {
            let mut v = zero_vec();
            v[k] = T::one();
            v
        };
        let mut table: Vec<Vec<Option<Vec<T>>>> = vec![vec![None; n]; n];
        for ((a, b), combo) in products {
            let i = *index.get(&a).ok_or(ClassError::UnknownLabel(a.clone()))?;
            let j = *index.get(&b).ok_or(ClassError::UnknownLabel(b.clone()))?;
            let mut v = zero_vec();
            for (label, c) in combo {
                let k = *index
                    .get(&label)
                    .ok_or(ClassError::UnknownLabel(label.clone()))?;
                v[k] = v[k].clone() + c;
            }
            if let Some(prev) = &table[i][j] {
                if *prev != v {
                    return Err(invalid(format!("conflicting products for ({a}, {b})")));
                }
            }
            table[i][j] = Some(v.clone());
            if table[j][i].is_none() {
                table[j][i] = Some(v);
            }
        }
        for k in 0..n {
            for (i, j) in [(unit, k), (k, unit)] {
                if table[i][j].is_none() {
                    table[i][j] = Some(unit_vec(k));
                }
            }
        }
        let table: Vec<Vec<Vec<T>>> = table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| c.unwrap_or_else(zero_vec))
                    .collect()
            })
            .collect();

        let ring = FiniteBasisRing {
            labels: basis.iter().map(|(l, _)| l.clone()).collect(),
            degrees: basis.iter().map(|(_, d)| *d).collect(),
            name,
            table,
            unit,
            top,
        };
        ring.check_axioms()?;
        Ok(ring)
    }

    fn check_axioms(&self) -> Result<(), ClassError> {
        let n = self.dim();
        let invalid = |msg: String| ClassError::InvalidRing(format!("{}: {msg}", self.name));
        for i in 0..n {
            if self.table[self.unit][i] != self.basis_vec(i) {
                return Err(invalid(format!(
                    "1 · {} ≠ {}",
                    self.labels[i], self.labels[i]
                )));
            }
            for j in 0..n {
                if self.table[i][j] != self.table[j][i] {
                    return Err(invalid(format!(
                        "product of {} and {} is not commutative",
                        self.labels[i], self.labels[j]
                    )));
                }
                let deg = self.degrees[i] + self.degrees[j];
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() && self.degrees[k] != deg {
                        return Err(invalid(format!(
                            "{} · {} has a component on {} of the wrong degree",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.element_from(self.table[i][j].clone());
                for k in 0..n {
                    let jk = self.element_from(self.table[j][k].clone());
                    let left = self.mul(&ij, &self.basis_element(k));
                    let right = self.mul(&self.basis_element(i), &jk);
                    if left != right {
                        return Err(invalid(format!(
                            "({} · {}) · {} ≠ {} · ({} · {})",
                            self.labels[i],
                            self.labels[j],
                            self.labels[k],
                            self.labels[i],
                            self.labels[j],
                            self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Cohomology of a point.
    pub fn point() -> Self {
        Self::new("point", vec![("1".into(), 0)], [], "1").expect("point ring")
    }

    /// `H*(S²) = span{1, x}`, `x² = 0`, `∫x = 1`.
    pub fn sphere2() -> Self {
        let mut r = Self::cpn(1);
        r.name = "S2".into();
        r
    }

    /// `H*(CP^n) = span{1, x, …, x^n}` with `∫x^n = 1`.
    pub fn cpn(n: u32) -> Self {
        let label = |k: u32| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            k => format!("x^{k}"),
        };
        let basis = (0..=n).map(|k| (label(k), 2 * k)).collect();
        let mut products = Vec::new();
        for a in 1..=n {
            for b in a..=n {
                if a + b <= n {
                    products.push(((label(a), label(b)), vec![(label(a + b), T::one())]));
                }
            }
        }
        Self::new(format!("CP{n}"), basis, products, &label(n)).expect("CP^n ring")
    }

    /// Tensor product ring; basis labels are `a*b`, with `1*1` written `1`.
    pub fn product(a: &Self, b: &Self) -> Self {
        let label = |i: usize, j: usize| {
            if i == a.unit && j == b.unit {
                "1".to_string()
            } else {
                format!("{}*{}", a.labels[i], b.labels[j])
            }
        };
        let (na, nb) = (a.dim(), b.dim());
        let mut basis = Vec::with_capacity(na * nb);
        for i in 0..na {
            for j in 0..nb {
                basis.push((label(i, j), a.degrees[i] + b.degrees[j]));
            }
        }
        let mut products = Vec::new();
        for i in 0..na {
            for j in 0..nb {
                for k in 0..na {
                    for l in 0..nb {
                        let mut combo = Vec::new();
                        for (p, cp) in a.table[i][k].iter().enumerate() {
                            if cp.is_zero() {
                                continue;
                            }
                            for (q, cq) in b.table[j][l].iter().enumerate() {
                                if !cq.is_zero() {
                                    combo.push((label(p, q), cp.clone() * cq.clone()));
                                }
                            }
                        }
                        if !combo.is_empty() {
                            products.push(((label(i, j), label(k, l)), combo));
                        }
                    }
                }
            }
        }
        Self::new(
            format!("{}x{}", a.name, b.name),
            basis,
            products,
            &label(a.top, b.top),
        )
        .expect("tensor product of valid rings is valid")
    }

    /// Built-in ring by name: `point`, `S2`, `CP<n>`, or `A x B` products such
    /// as `S2xS2`.
    pub fn builtin(name: &str) -> Result<Self, ClassError> {
        let name = name.trim();
        if let Some((a, b)) = name.split_once('x') {
            if !a.is_empty() && !b.is_empty() {
                return Ok(Self::product(&Self::builtin(a)?, &Self::builtin(b)?));
            }
        }
        match name {
            "point" | "pt" => Ok(Self::point()),
            "S2" => Ok(Self::sphere2()),
            _ => name
                .strip_prefix("CP")
                .and_then(|n| n.parse::<u32>().ok())
                .map(Self::cpn)
                .ok_or_else(|| ClassError::UnknownRing(name.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn top_label(&self) -> &str {
        &self.labels[self.top]
    }

    /// Degree of the top class, i.e. the dimension of the underlying space.
    pub fn top_degree(&self) -> u32 {
        self.degrees[self.top]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, ClassError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| ClassError::UnknownLabel(label.to_string()))
    }

    fn basis_vec(&self, k: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.dim()];
        v[k] = T::one();
        v
    }

    fn element_from(&self, coeffs: Vec<T>) -> RingElement<T> {
        RingElement { coeffs }
    }

    pub fn zero(&self) -> RingElement<T> {
        self.element_from(vec![T::zero(); self.dim()])
    }

    pub fn one(&self) -> RingElement<T> {
        self.basis_element(self.unit)
    }

    pub fn scalar(&self, s: T) -> RingElement<T> {
        self.one().scale(&s)
    }

    pub fn basis_element(&self, k: usize) -> RingElement<T> {
        self.element_from(self.basis_vec(k))
    }

    pub fn basis(&self, label: &str) -> Result<RingElement<T>, ClassError> {
        Ok(self.basis_element(self.index_of(label)?))
    }

    /// Linear combination of labeled basis elements.
    pub fn element(&self, terms: &[(&str, T)]) -> Result<RingElement<T>, ClassError> {
        let mut v = vec![T::zero(); self.dim()];
        for (label, c) in terms {
            let k = self.index_of(label)?;
            v[k] = v[k].clone() + c.clone();
        }
        Ok(self.element_from(v))
    }

    /// Checks that `e` has the right length for this ring.
    pub fn owns(&self, e: &RingElement<T>) -> bool {
        e.coeffs.len() == self.dim()
    }

    pub fn mul(&self, a: &RingElement<T>, b: &RingElement<T>) -> RingElement<T> {
        let n = self.dim();
        let mut out = vec![T::zero(); n];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = ai.clone() * bj.clone();
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = out[k].clone() + s.clone() * c.clone();
                    }
                }
            }
        }
        self.element_from(out)
    }

    /// Coefficient of the top class.
    pub fn integral(&self, e: &RingElement<T>) -> T {
        e.coeffs[self.top].clone()
    }

    /// Coefficient of the unit.
    pub fn unit_coefficient(&self, e: &RingElement<T>) -> T {
        e.coeffs[self.unit].clone()
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree_of(&self, e: &RingElement<T>) -> Option<u32> {
        let mut degs = e
            .coeffs
            .iter()
            .zip(&self.degrees)
            .filter(|(c, _)| !c.is_zero())
            .map(|(_, d)| *d);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Formats an element as a sum of labeled terms.
    pub fn format(&self, e: &RingElement<T>) -> String {
        let parts: Vec<String> = e
            .coeffs
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| {
                if l == "1" {
                    format!("{c}")
                } else if c.is_one() {
                    l.clone()
                } else {
                    format!("{c}*{l}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl<T: Scalar> fmt::Display for FiniteBasisRing<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.name)?;
        for (i, (l, d)) in self.labels.iter().zip(&self.degrees).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}:{d}")?;
        }
        write!(f, "]")
    }
}
