//! JSON description of fixed-point data.
//!
//! Coefficients are exact rationals written as numbers or strings (`"3/2"`).
//! A ring is either a builtin name (`"pt"`, `"S2"`, `"CP2"`, `"S2xS2"`) or an
//! explicit multiplication table.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{BundleData, FixedComponent, LocalizationError, LocalizationProblem};
use crate::equivariant_classes::{FiniteBasisRing, LineSummand, ProductEntry, RingElement};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Text(String),
}

impl ScalarJson {
    pub fn to_rational(&self) -> Result<Rational, LocalizationError> {
        match self {
            ScalarJson::Int(v) => Ok(Rational::from_integer((*v).into())),
            ScalarJson::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| LocalizationError::Validation(format!("bad rational `{s}`"))),
        }
    }
}

impl From<&Rational> for ScalarJson {
    fn from(q: &Rational) -> Self {
        ScalarJson::Text(q.to_string())
    }
}

pub type ElementJson = BTreeMap<String, ScalarJson>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisJson {
    pub label: String,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductJson {
    pub a: String,
    pub b: String,
    pub result: ElementJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingJson {
    Builtin(String),
    Table {
        name: String,
        basis: Vec<BasisJson>,
        #[serde(default)]
        products: Vec<ProductJson>,
        top: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineJson {
    pub w: i64,
    /// First Chern class; omitted means zero.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub c: ElementJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtraJson {
    pub euler: ElementJson,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BundleJson {
    Lines(Vec<LineJson>),
    Full {
        lines: Vec<LineJson>,
        extra: Option<ExtraJson>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentJson {
    pub ring: RingJson,
    /// Defaults to the top degree of the ring.
    #[serde(default)]
    pub dim: Option<usize>,
    pub normal: Vec<LineJson>,
    #[serde(default)]
    pub bundles: BTreeMap<String, BundleJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemJson {
    pub total_dim: usize,
    pub components: Vec<ComponentJson>,
}

fn element(
    ring: &FiniteBasisRing<Rational>,
    json: &ElementJson,
) -> Result<RingElement<Rational>, LocalizationError> {
    let terms = json
        .iter()
        .map(|(l, v)| Ok((l.as_str(), v.to_rational()?)))
        .collect::<Result<Vec<_>, LocalizationError>>()?;
    Ok(ring.element(&terms)?)
}

fn build_ring(json: &RingJson) -> Result<FiniteBasisRing<Rational>, LocalizationError> {
    match json {
        RingJson::Builtin(name) => Ok(FiniteBasisRing::builtin(name)?),
        RingJson::Table {
            name,
            basis,
            products,
            top,
        } => {
            let basis = basis.iter().map(|b| (b.label.clone(), b.degree)).collect();
            let products = products
                .iter()
                .map(|p| {
                    let result = p
                        .result
                        .iter()
                        .map(|(l, v)| Ok((l.clone(), v.to_rational()?)))
                        .collect::<Result<Vec<_>, LocalizationError>>()?;
                    Ok(((p.a.clone(), p.b.clone()), result))
                })
                .collect::<Result<Vec<ProductEntry<Rational>>, LocalizationError>>()?;
            Ok(FiniteBasisRing::new(name, basis, products, top)?)
        }
    }
}

fn lines(
    ring: &FiniteBasisRing<Rational>,
    json: &[LineJson],
) -> Result<Vec<LineSummand<Rational>>, LocalizationError> {
    json.iter()
        .map(|l| Ok(LineSummand::new(l.w, element(ring, &l.c)?)))
        .collect()
}

impl ProblemJson {
    pub fn build(&self) -> Result<LocalizationProblem<Rational>, LocalizationError> {
        let mut rings: BTreeMap<String, Arc<FiniteBasisRing<Rational>>> = BTreeMap::new();
        let mut components = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let ring = match &c.ring {
                RingJson::Builtin(name) => match rings.get(name) {
                    Some(r) => Arc::clone(r),
                    None => {
                        let r = Arc::new(build_ring(&c.ring)?);
                        rings.insert(name.clone(), Arc::clone(&r));
                        r
                    }
                },
                table => Arc::new(build_ring(table)?),
            };
            let mut bundles = BTreeMap::new();
            for (name, b) in &c.bundles {
                let data = match b {
                    BundleJson::Lines(ls) => BundleData::lines(lines(&ring, ls)?),
                    BundleJson::Full { lines: ls, extra } => BundleData {
                        lines: lines(&ring, ls)?,
                        extra: match extra {
                            Some(e) => Some((element(&ring, &e.euler)?, e.rank)),
                            None => None,
                        },
                    },
                };
                bundles.insert(name.clone(), data);
            }
            components.push(FixedComponent {
                dim: c.dim.unwrap_or(ring.top_degree() as usize),
                normal: lines(&ring, &c.normal)?,
                ring,
                bundles,
            });
        }
        LocalizationProblem::new(self.total_dim, components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localization::{abbv_integral, fixtures::TANGENT, intersection_number, ClassSpec};

    #[test]
    fn s4_from_json() {
        let text = r#"{
            "total_dim": 4,
            "components": [{
                "ring": "S2",
                "normal": [{"w": 1}],
                "bundles": {
                    "A": [{"w": 0, "c": {"x": 2}}],
                    "B": [{"w": 3, "c": {"x": "5"}}],
                    "TB": {"lines": [{"w": 0, "c": {"x": 2}}, {"w": 1}], "extra": null}
                }
            }]
        }"#;
        let p: ProblemJson = serde_json::from_str(text).unwrap();
        let p = p.build().unwrap();
        assert_eq!(
            intersection_number(&p, "A", "B").unwrap().value,
            Rational::from_integer(6.into())
        );
        let chi = abbv_integral(&p, &ClassSpec::euler(TANGENT)).unwrap();
        assert_eq!(chi.constant_term(), Rational::from_integer(2.into()));
    }

    #[test]
    fn explicit_table_ring() {
        let text = r#"{
            "total_dim": 2,
            "components": [{
                "ring": {"name": "S2", "basis": [{"label": "1", "degree": 0}, {"label": "x", "degree": 2}],
                         "products": [{"a": "x", "b": "x", "result": {}}], "top": "x"},
                "normal": [],
                "bundles": {"L": [{"w": 0, "c": {"x": "-3/1"}}]}
            }]
        }"#;
        let p: ProblemJson = serde_json::from_str(text).unwrap();
        let p = p.build().unwrap();
        let v = abbv_integral(&p, &ClassSpec::euler("L")).unwrap();
        assert_eq!(v.constant_term(), Rational::from_integer((-3).into()));
    }

    #[test]
    fn bad_inputs() {
        let bad_label = r#"{"total_dim": 2, "components": [{"ring": "S2", "normal": [],
            "bundles": {"L": [{"w": 0, "c": {"y": 1}}]}}]}"#;
        let p: ProblemJson = serde_json::from_str(bad_label).unwrap();
        assert!(p.build().is_err());
        let bad_q = r#"{"total_dim": 0, "components": [{"ring": "pt", "normal": [],
            "bundles": {"L": [{"w": 0, "c": {"1": "1/0"}}]}}]}"#;
        let p: ProblemJson = serde_json::from_str(bad_q).unwrap();
        assert!(p.build().is_err());
        let unknown = r#"{"total_dim": 0, "components": [], "extra": 1}"#;
        assert!(serde_json::from_str::<ProblemJson>(unknown).is_err());
    }
}
