//! Problem files: a JSON document naming the acting group, one base space,
//! an optional bundle and the requested integrals.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use strat_euler::group_lattice::{AmbientGroup, Subgroup};
use strat_euler::localization::json::ProblemJson;
use strat_euler::moduli_partition::EquivariantBundle;
use strat_euler::stratification::sphere_stratification;
use strat_euler::{LocalizationProblem, Representation, StratifiedSpace, Stratum};

use crate::CliError;

/// Schema tag accepted in problem files and written into every JSON report.
pub const SCHEMA: &str = "strat-euler/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: String,
    #[serde(default)]
    pub group: Option<String>,
    pub base: BaseSpec,
    #[serde(default)]
    pub bundle: Option<BundleSpec>,
    /// Classes to integrate: `"1"` or bundle names joined by `+`.
    #[serde(default)]
    pub integrals: Vec<String>,
    /// Pairs `(α, β)` for the intersection number.
    #[serde(default)]
    pub intersect: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseSpec {
    /// Unit sphere of a representation of the problem group.
    Sphere(RepSpec),
    /// Product of bases under the diagonal action.
    Product(Vec<BaseSpec>),
    Explicit(ExplicitBase),
    /// Fixed-point data for localization.
    Localization(ProblemJson),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSpec {
    pub weights: Vec<i64>,
    /// Real dimension of the trivial summand.
    #[serde(default)]
    pub trivial: usize,
    /// Overrides the group the representation lives over.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumSpec {
    pub id: String,
    pub isotropy: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitBase {
    pub strata: Vec<StratumSpec>,
    /// `[lower, upper]`: `lower` lies in the closure of `upper`.
    #[serde(default)]
    pub closure: Vec<(String, String)>,
    #[serde(default = "yes")]
    pub oriented: bool,
    #[serde(default = "yes")]
    pub compact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSpec {
    /// A representation of the whole group, restricted to every stratum.
    #[serde(default)]
    pub fiber: Option<RepSpec>,
    /// Per-stratum fibers, as representations of the stratum's isotropy.
    #[serde(default)]
    pub strata: BTreeMap<String, RepSpec>,
    #[serde(default = "yes")]
    pub oriented: bool,
    #[serde(default)]
    pub signs: BTreeMap<String, i8>,
}

fn yes() -> bool {
    true
}

/// Parses a problem file; syntax and shape errors carry line and column.
pub fn parse(text: &str) -> Result<ProblemFile, CliError> {
    let p: ProblemFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if p.schema != SCHEMA {
        return Err(CliError::Validation(format!(
            "unsupported schema `{}` (expected `{SCHEMA}`)",
            p.schema
        )));
    }
    Ok(p)
}

fn parse_group(s: &str) -> Result<AmbientGroup, CliError> {
    s.parse().map_err(|e| CliError::Validation(format!("{e}")))
}

impl ProblemFile {
    pub fn group(&self) -> Result<AmbientGroup, CliError> {
        let g = self
            .group
            .as_deref()
            .ok_or_else(|| CliError::Validation("problem needs a `group`".into()))?;
        parse_group(g)
    }

    fn representation(
        &self,
        spec: &RepSpec,
        default: AmbientGroup,
    ) -> Result<Representation, CliError> {
        let group = match &spec.group {
            Some(g) => parse_group(g)?,
            None => default,
        };
        Ok(Representation::new(
            group,
            spec.weights.iter().copied(),
            spec.trivial,
        )?)
    }

    fn build_base(&self, spec: &BaseSpec) -> Result<StratifiedSpace, CliError> {
        match spec {
            BaseSpec::Sphere(rep) => {
                let v = self.representation(rep, self.group()?)?;
                Ok(sphere_stratification(&v)?)
            }
            BaseSpec::Product(parts) => {
                let mut iter = parts.iter();
                let first = iter
                    .next()
                    .ok_or_else(|| CliError::Validation("empty product base".into()))?;
                let mut acc = self.build_base(first)?;
                for p in iter {
                    acc = acc.product(&self.build_base(p)?)?;
                }
                Ok(acc)
            }
            BaseSpec::Explicit(e) => {
                let group = self.group()?;
                let mut counts: BTreeMap<String, usize> = BTreeMap::new();
                let strata = e
                    .strata
                    .iter()
                    .map(|s| {
                        let isotropy = Subgroup::parse(group, &s.isotropy)?;
                        let c = counts.entry(isotropy.to_string()).or_default();
                        *c += 1;
                        Ok(Stratum {
                            id: s.id.clone(),
                            isotropy,
                            dim: s.dim,
                            component_index: *c - 1,
                        })
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                let pairs = e.closure.iter().map(|(a, b)| (a.as_str(), b.as_str()));
                Ok(StratifiedSpace::from_id_pairs(
                    strata, pairs, e.oriented, e.compact,
                )?)
            }
            BaseSpec::Localization(_) => Err(CliError::Validation(
                "a localization base has no stratification; use `localize` or `intersect`".into(),
            )),
        }
    }

    pub fn stratified_base(&self) -> Result<StratifiedSpace, CliError> {
        self.build_base(&self.base)
    }

    pub fn bundle(&self) -> Result<EquivariantBundle, CliError> {
        let spec = self
            .bundle
            .as_ref()
            .ok_or_else(|| CliError::Validation("problem has no `bundle`".into()))?;
        let base = self.stratified_base()?;
        let signs = (!spec.signs.is_empty()).then_some(&spec.signs);
        let bundle = match &spec.fiber {
            Some(w) => {
                let w = self.representation(w, base.ambient())?;
                let mut b = EquivariantBundle::from_global(base.clone(), &w, spec.oriented)?;
                if let Some(signs) = signs {
                    // rebuild with explicit signs, keeping restricted fibers
                    let fibers = base
                        .strata()
                        .iter()
                        .map(|s| Ok((s.id.clone(), b.fiber(&s.id)?.clone())))
                        .collect::<Result<BTreeMap<_, _>, CliError>>()?;
                    b = EquivariantBundle::new(base.clone(), &fibers, spec.oriented, Some(signs))?;
                }
                for (id, rep) in &spec.strata {
                    let group = base.stratum(id)?.isotropy.as_group();
                    b = b.with_fiber(id, self.representation(rep, group)?)?;
                }
                b
            }
            None => {
                let fibers = spec
                    .strata
                    .iter()
                    .map(|(id, rep)| {
                        let group = base.stratum(id)?.isotropy.as_group();
                        Ok((id.clone(), self.representation(rep, group)?))
                    })
                    .collect::<Result<BTreeMap<_, _>, CliError>>()?;
                EquivariantBundle::new(base, &fibers, spec.oriented, signs)?
            }
        };
        Ok(bundle)
    }

    pub fn localization(&self) -> Result<LocalizationProblem, CliError> {
        match &self.base {
            BaseSpec::Localization(p) => Ok(p.build()?),
            _ => Err(CliError::Validation(
                "problem has no `localization` base".into(),
            )),
        }
    }
}
