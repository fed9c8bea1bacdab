use std::collections::BTreeMap;
use std::fmt::Write as _;

use strat_euler::covariants::{covariant_generators, invariant_generators, universal_variety_info};
use strat_euler::group_lattice::AmbientGroup;
use strat_euler::localization::{
    abbv_integral, intersection_number, main_thm2_rhs, product_formula_check, ClassSpec, Split,
};
use strat_euler::moduli_partition::{
    feasibility_report, partition as partition_of, FeasibilityReport, RowJson,
};
use strat_euler::{Laurent, LocalizationProblem};

use crate::problem::{BaseSpec, ProblemFile, SCHEMA};
use crate::report::*;
use crate::{CliError, Output};

const TRANSVERSALITY: &str =
    "sections are assumed transverse to every stratum; this is not verified";

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.iter().map(|h| h.to_string()).collect());
    for r in rows {
        line(r.clone());
    }
    out
}

pub fn stratify(p: &ProblemFile) -> Result<Output, CliError> {
    let base = p.stratified_base()?;
    let mut records = base.records();
    records.sort_by_key(|r| std::cmp::Reverse(r.dim));
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            let parents = if r.closure_parents.is_empty() {
                "-".to_string()
            } else {
                r.closure_parents.join(",")
            };
            vec![
                r.stratum_id.clone(),
                r.isotropy.clone(),
                r.dim.to_string(),
                r.codim.to_string(),
                parents,
            ]
        })
        .collect();
    let mut text = table(
        &["stratum", "isotropy", "dim", "codim", "closure_parents"],
        &rows,
    );
    let _ = writeln!(
        text,
        "{} strata, dim={}, length={}",
        base.len(),
        base.total_dim(),
        base.length()
    );
    let json = to_json(&StratifyReport {
        schema: SCHEMA.into(),
        ambient: base.ambient().to_string(),
        total_dim: base.total_dim(),
        strata: records,
    });
    Ok(Output { text, json })
}

fn partition_rows(rows: &[RowJson]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.id.clone(),
                r.isotropy.clone(),
                r.dim.to_string(),
                r.codim.to_string(),
                r.fixed_rank.to_string(),
                r.obstruction_rank.to_string(),
                r.r_h.to_string(),
            ]
        })
        .collect();
    table(
        &[
            "stratum",
            "isotropy",
            "dim",
            "codim",
            "fixed",
            "obstruction",
            "r_H",
        ],
        &cells,
    )
}

pub fn partition(p: &ProblemFile) -> Result<Output, CliError> {
    let bundle = p.bundle()?;
    let report = partition_of(&bundle)?;
    let rows: Vec<RowJson> = report
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
        .collect();
    let (n, k) = (bundle.base().total_dim(), bundle.real_rank());
    let mut text = partition_rows(&rows);
    let _ = writeln!(text, "n={n} k={k}");
    let json = to_json(&PartitionJson {
        schema: SCHEMA.into(),
        n,
        k,
        rows,
    });
    Ok(Output { text, json })
}

fn verdict_line(r: &FeasibilityReport) -> String {
    format!(
        "coindex={} n={} k={} cycle_ok={} verdict={}",
        r.coindex,
        r.n,
        r.k,
        r.cycle_ok(),
        r.verdict
    )
}

pub fn coindex(p: &ProblemFile) -> Result<Output, CliError> {
    let r = feasibility_report(&p.bundle()?)?;
    let report = r.to_json();
    let mut text = partition_rows(&report.strata);
    let _ = writeln!(text, "{}", verdict_line(&r));
    let json = to_json(&CoindexReport {
        schema: SCHEMA.into(),
        n: r.n,
        k: r.k,
        report,
    });
    Ok(Output { text, json })
}

pub fn feasibility(p: &ProblemFile) -> Result<Output, CliError> {
    let r = feasibility_report(&p.bundle()?)?;
    let report = r.to_json();
    let mut text = partition_rows(&report.strata);
    let bound = r.n as i64 - r.k as i64 - 2;
    let _ = writeln!(text, "oriented={}", r.oriented);
    let _ = writeln!(
        text,
        "dims_ok={} (r_H <= n-k-2 = {bound} on nontrivial isotropy)",
        r.dims_ok
    );
    let table: Vec<String> = r
        .r_table
        .iter()
        .map(|(id, d)| format!("{id}:{d}"))
        .collect();
    let _ = writeln!(text, "zero-locus dimensions: {}", table.join(" "));
    if !r.cycle.offending.is_empty() {
        let _ = writeln!(
            text,
            "codimension-one pieces: {}",
            r.cycle.offending.join(",")
        );
    }
    let _ = writeln!(text, "assumption: {TRANSVERSALITY}");
    let _ = writeln!(text, "{}", verdict_line(&r));
    let json = to_json(&FeasibilityJson {
        schema: SCHEMA.into(),
        n: r.n,
        k: r.k,
        oriented: r.oriented,
        dims_ok: r.dims_ok,
        r_table: r.r_table.clone(),
        cycle_offending: r.cycle.offending.clone(),
        report,
        assumptions: vec![TRANSVERSALITY.into()],
    });
    Ok(Output { text, json })
}

fn residue_table(spec: &ClassSpec, l: &Laurent) -> String {
    let mut s = format!("poles do not cancel for {spec}:");
    for (k, c) in l.terms() {
        if *k != 0 {
            let _ = write!(s, "\n  u^{k}: {c}");
        }
    }
    s
}

/// Integrates `spec`; a pole, or any residue when the class has degree
/// `dim B`, means the fixed-point data is inconsistent.
fn checked_integral(
    lp: &LocalizationProblem,
    spec: &ClassSpec,
) -> Result<(usize, Laurent), CliError> {
    let degree = lp.class_degree(spec)?;
    let l = abbv_integral(lp, spec)?;
    let bad = if degree == lp.total_dim() {
        !l.residue_upowers().is_empty()
    } else {
        !l.pole_upowers().is_empty() || (degree < lp.total_dim() && !l.terms().is_empty())
    };
    if bad {
        return Err(CliError::Inconsistent(residue_table(spec, &l)));
    }
    Ok((degree, l))
}

fn integral_specs(p: &ProblemFile, lp: &LocalizationProblem) -> Result<Vec<ClassSpec>, CliError> {
    if p.integrals.is_empty() {
        return Ok(lp.bundle_names().map(|n| ClassSpec::euler(n)).collect());
    }
    p.integrals
        .iter()
        .map(|s| s.parse::<ClassSpec>().map_err(CliError::from))
        .collect()
}

fn intersect_pairs(
    lp: &LocalizationProblem,
    pairs: &[(String, String)],
) -> Result<(Vec<String>, Vec<IntersectionJson>), CliError> {
    let mut lines = Vec::new();
    let mut out = Vec::new();
    for (a, b) in pairs {
        let psi = intersection_number(lp, a, b).map_err(|e| match e {
            strat_euler::localization::LocalizationError::PoleCancellation {
                ref integral, ..
            } => CliError::Inconsistent(format!("{e}\n  integral: {integral}")),
            e => e.into(),
        })?;
        let split = Split::by_weight(lp, [a.as_str(), b.as_str()])?;
        let rhs = main_thm2_rhs(lp, a, b, &split)?;
        let mut product_formula = BTreeMap::new();
        for name in [a, b] {
            product_formula.insert(name.clone(), product_formula_check(lp, name, &split)?);
        }
        let matches = psi.value == rhs;
        if !matches {
            return Err(CliError::Inconsistent(format!(
                "Psi({a}, {b}) = {} but the fixed-locus formula gives {rhs}",
                psi.value
            )));
        }
        lines.push(format!(
            "Psi = {} (thm2_rhs = {rhs}, match) [{a}, {b}]",
            psi.value
        ));
        let pf: Vec<String> = product_formula
            .iter()
            .map(|(n, ok)| format!("{n} {}", if *ok { "ok" } else { "FAILED" }))
            .collect();
        lines.push(format!("product formula: {}", pf.join(", ")));
        out.push(IntersectionJson {
            alpha: a.clone(),
            beta: b.clone(),
            psi: psi.value.to_string(),
            thm2_rhs: rhs.to_string(),
            matches,
            product_formula,
        });
    }
    Ok((lines, out))
}

pub fn localize(p: &ProblemFile) -> Result<Output, CliError> {
    let lp = p.localization()?;
    let mut text = String::new();
    let mut integrals = Vec::new();
    for spec in integral_specs(p, &lp)? {
        let (degree, l) = checked_integral(&lp, &spec)?;
        let shown = match &spec {
            ClassSpec::Unit => "1".to_string(),
            s => s.to_string(),
        };
        let _ = writeln!(text, "int_B {shown} = {l}");
        integrals.push(IntegralJson {
            class: spec.to_string(),
            degree,
            terms: l.terms().iter().map(|(k, c)| (*k, c.to_string())).collect(),
        });
    }
    let (lines, _) = intersect_pairs(&lp, &p.intersect)?;
    for l in lines {
        let _ = writeln!(text, "{l}");
    }
    let json = to_json(&LocalizeReport {
        schema: SCHEMA.into(),
        total_dim: lp.total_dim(),
        components: lp.components().len(),
        integrals,
    });
    Ok(Output { text, json })
}

pub fn intersect(p: &ProblemFile, pair: Option<(String, String)>) -> Result<Output, CliError> {
    let lp = p.localization()?;
    let pairs = match pair {
        Some(pair) => vec![pair],
        None if p.intersect.is_empty() => {
            return Err(CliError::Validation(
                "no pairs to intersect (`intersect` or --alpha/--beta)".into(),
            ))
        }
        None => p.intersect.clone(),
    };
    let (lines, pairs) = intersect_pairs(&lp, &pairs)?;
    let mut text = String::new();
    for l in lines {
        let _ = writeln!(text, "{l}");
    }
    let json = to_json(&IntersectReport {
        schema: SCHEMA.into(),
        pairs,
    });
    Ok(Output { text, json })
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".into()
    } else {
        items.join(", ")
    }
}

pub fn covariants(
    group: &str,
    weights: &[i64],
    targets: &[i64],
    bound: u32,
) -> Result<Output, CliError> {
    let g: AmbientGroup = group.parse()?;
    if weights.is_empty() {
        return Err(CliError::Validation(
            "--weights must list at least one weight".into(),
        ));
    }
    if targets.is_empty() {
        return Err(CliError::Validation(
            "--target must list at least one weight".into(),
        ));
    }
    let m = g.modulus();
    let invariants: Vec<String> = invariant_generators(m, weights, bound)
        .iter()
        .map(ToString::to_string)
        .collect();
    let info = universal_variety_info(m, weights, targets, bound);
    let per_target: Vec<TargetGenerators> = targets
        .iter()
        .map(|&w| TargetGenerators {
            weight: w,
            generators: covariant_generators(m, weights, w, bound)
                .iter()
                .map(ToString::to_string)
                .collect(),
        })
        .collect();

    let mut text = String::new();
    for t in &per_target {
        if per_target.len() == 1 {
            let _ = writeln!(text, "{}", list(&t.generators));
        } else {
            let _ = writeln!(text, "w={}: {}", t.weight, list(&t.generators));
        }
    }
    let _ = writeln!(text, "invariants: {}", list(&invariants));
    let _ = writeln!(
        text,
        "k={} ambient_dim={} eq_rank={} saturated={}",
        info.generator_count, info.ambient_dim, info.defining_equation_rank, info.saturated
    );
    let json = to_json(&CovariantsReport {
        schema: SCHEMA.into(),
        group: g.to_string(),
        weights: weights.to_vec(),
        bound,
        invariants,
        targets: per_target,
        generator_count: info.generator_count,
        ambient_dim: info.ambient_dim,
        defining_equation_rank: info.defining_equation_rank,
        saturated: info.saturated,
    });
    Ok(Output { text, json })
}

pub fn check(p: &ProblemFile) -> Result<Output, CliError> {
    let mut checks = BTreeMap::new();
    match &p.base {
        BaseSpec::Localization(_) => {
            let lp = p.localization()?;
            checks.insert(
                "localization".to_string(),
                format!("{} fixed components", lp.components().len()),
            );
            for spec in integral_specs(p, &lp)? {
                let (_, l) = checked_integral(&lp, &spec)?;
                checks.insert(format!("integral {spec}"), l.to_string());
            }
            let (_, pairs) = intersect_pairs(&lp, &p.intersect)?;
            for pair in pairs {
                checks.insert(format!("Psi({}, {})", pair.alpha, pair.beta), pair.psi);
            }
        }
        _ => {
            let base = p.stratified_base()?;
            checks.insert(
                "stratification".to_string(),
                format!("{} strata", base.len()),
            );
            if p.bundle.is_some() {
                let bundle = p.bundle()?;
                bundle.validate()?;
                checks.insert("bundle".to_string(), format!("rank {}", bundle.real_rank()));
                if base.compact() {
                    let r = feasibility_report(&bundle)?;
                    checks.insert("verdict".to_string(), r.verdict.to_string());
                }
            }
        }
    }
    let mut text = String::new();
    for (k, v) in &checks {
        let _ = writeln!(text, "{k}: {v}");
    }
    let _ = writeln!(text, "ok");
    let json = to_json(&CheckReport {
        schema: SCHEMA.into(),
        checks,
    });
    Ok(Output { text, json })
}
