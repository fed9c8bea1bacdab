use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Laurent polynomial in `u` with scalar coefficients; only nonzero terms are
/// stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LaurentPoly<T> {
    terms: BTreeMap<i32, T>,
}

impl<T: Scalar> LaurentPoly<T> {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::from_terms([(0, c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, T)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: i32, c: T) {
        let sum = match self.terms.remove(&k) {
            Some(prev) => prev + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(k, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<i32, T> {
        &self.terms
    }

    pub fn coefficient(&self, k: i32) -> T {
        self.terms.get(&k).cloned().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coefficient(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    /// Powers of `u` other than `u⁰` that carry a nonzero coefficient.
    pub fn residue_upowers(&self) -> Vec<i32> {
        self.terms.keys().copied().filter(|&k| k != 0).collect()
    }

    /// Powers `u^k`, `k < 0`, with a nonzero coefficient.
    pub fn pole_upowers(&self) -> Vec<i32> {
        self.terms.keys().copied().filter(|&k| k < 0).collect()
    }
}

impl<T: Scalar> fmt::Display for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&k, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*u")?,
                k => write!(f, "{c}*u^{k}")?,
            }
        }
        Ok(())
    }
}
