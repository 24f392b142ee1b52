use clap::Parser;
use serde_json::{json, Value};

use tworep::group::FiniteGroup;
use tworep::laws;
use tworep::rep_theory::{
    classify_indecomposables, classify_irretractables, classify_transitive_intertwiners, compose_intertwiners,
    hom_2intertwiners, intertwiner_reduction_status, is_indecomposable_rep, Intertwiner, Representation,
};
use tworep::schema::{
    self, complex_json, intertwiner_spec, matrix_json, parse_problem, representation_json,
    resolve_problem, Problem, ProblemSpec, Report, SchemaError,
};
use tworep::two_group::{skeletize, SkeletalTwoGroup};

use crate::{Cli, Criterion, Level, Verb};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Schema(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

fn failure(e: impl std::fmt::Display) -> CliError {
    CliError::Failure(e.to_string())
}

fn command_echo(verb: &Verb) -> Value {
    match verb {
        Verb::Validate => json!({"verb": "validate"}),
        Verb::Classify { level, criterion } => json!({
            "verb": "classify",
            "level": format!("{level:?}").to_lowercase(),
            "criterion": format!("{criterion:?}").to_lowercase(),
        }),
        Verb::Compose { chain } => json!({"verb": "compose", "chain": chain}),
        Verb::HomDim { source, target } => json!({"verb": "hom-dim", "source": source, "target": target}),
        Verb::CheckLaws { seed, cases } => json!({"verb": "check-laws", "seed": seed, "cases": cases}),
        Verb::Skeletize => json!({"verb": "skeletize"}),
        Verb::Run => json!({"verb": "run"}),
    }
}

/// Parses and resolves, turning any invalid item into a failure.
fn load(text: &str) -> Result<(ProblemSpec, Problem), CliError> {
    let spec = parse_problem(text)?;
    let (problem, checks) = resolve_problem(&spec)?;
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| !c.ok)
        .map(|c| format!("{} {}: {}", c.kind, c.name, c.error.as_deref().unwrap_or("invalid")))
        .collect();
    match problem {
        Some(p) if bad.is_empty() => Ok((spec, p)),
        _ => Err(CliError::Failure(format!("invalid problem: {}", bad.join("; ")))),
    }
}

pub fn execute(verb: &Verb, input: Option<&str>) -> Result<Report, CliError> {
    let text = || input.ok_or_else(|| CliError::Usage("no problem description given".into()));
    let echo = command_echo(verb);
    match verb {
        Verb::Validate => validate(echo, text()?),
        Verb::Classify { level, criterion } => {
            let (_, problem) = load(text()?)?;
            let (results, floats): (Value, &[&str]) = match level {
                Level::Reps => (classify_reps(&problem.two_group, *criterion), &[]),
                Level::Intertwiners => (classify_intertwiners(&problem, *criterion)?, &["rows"]),
            };
            Ok(Report::new(echo, true, results).with_float_fields(floats))
        }
        Verb::Compose { chain } => compose(echo, text()?, chain),
        Verb::HomDim { source, target } => hom_dim(echo, text()?, source, target),
        Verb::CheckLaws { seed, cases } => check_laws(echo, input, *seed, *cases),
        Verb::Skeletize => {
            let spec = parse_problem(text()?)?;
            let module = schema::build_crossed_module(&spec.two_group)?
                .map_err(|v| CliError::Failure(format!("invalid crossed module: {}", violations(&v))))?;
            let s = skeletize(&module);
            let results = json!({
                "already_skeletal": module.is_skeletal(),
                "two_group": two_group_json(&s.two_group),
                "g_projection": s.g_projection,
                "h_projection": s.h_projection,
            });
            Ok(Report::new(echo, true, results).with_float_fields(&[]))
        }
        Verb::Run => run_commands(echo, text()?),
    }
}

fn violations(report: &tworep::two_group::ViolationReport) -> String {
    report
        .violations
        .iter()
        .map(|v| format!("{} at ({})", v.axiom, v.witness.join(", ")))
        .collect::<Vec<_>>()
        .join("; ")
}

fn validate(echo: Value, text: &str) -> Result<Report, CliError> {
    let spec = parse_problem(text)?;
    let (problem, checks) = resolve_problem(&spec)?;
    let ok = problem.is_some() && checks.iter().all(|c| c.ok);
    let mut results = json!({ "rows": checks });
    if let Some(p) = &problem {
        results["two_group"] = two_group_json(&p.two_group);
        results["skeletal_input"] = json!(p.skeletal_input);
    }
    Ok(Report::new(echo, ok, results).with_float_fields(&[]))
}

fn names(g: &FiniteGroup, elements: &[usize]) -> Vec<String> {
    elements.iter().map(|&e| g.name(e).to_string()).collect()
}

fn character_label(tg: &SkeletalTwoGroup, c: usize) -> String {
    tg.dual()[c].label()
}

pub fn two_group_json(tg: &SkeletalTwoGroup) -> Value {
    json!({
        "g_order": tg.g().order(),
        "g_elements": tg.g().names(),
        "g_table": tg.g().table(),
        "h_factors": tg.h().factors(),
        "action": tg.action_table(),
    })
}

fn classify_reps(tg: &SkeletalTwoGroup, criterion: Criterion) -> Value {
    let rows: Vec<Value> = match criterion {
        // Irreducible and irretractable representations coincide.
        Criterion::Irreducible | Criterion::Irretractable => classify_irretractables(tg)
            .iter()
            .enumerate()
            .map(|(i, rho)| {
                json!({
                    "class": i,
                    "orbit": rho.chi().iter().map(|&c| character_label(tg, c)).collect::<Vec<_>>(),
                    "points": rho.space().len(),
                    "representation": representation_json(&format!("irretractable_{i}"), rho),
                })
            })
            .collect(),
        Criterion::Indecomposable => classify_indecomposables(tg)
            .iter()
            .enumerate()
            .map(|(i, class)| {
                json!({
                    "class": i,
                    "character": character_label(tg, class.character),
                    "subgroup": names(tg.g(), &class.subgroup),
                    "points": class.representation.space().len(),
                    "representation": representation_json(&format!("indecomposable_{i}"), &class.representation),
                })
            })
            .collect(),
    };
    json!({ "count": rows.len(), "rows": rows })
}

/// Transitive classes between every ordered pair of indecomposable
/// representations over a common orbit. The problem's own indecomposable
/// representations are used when it declares any; otherwise the classified ones.
fn classify_intertwiners(problem: &Problem, criterion: Criterion) -> Result<Value, CliError> {
    let tg = &problem.two_group;
    let reps: Vec<(String, Representation)> = if problem.representations.is_empty() {
        classify_indecomposables(tg)
            .into_iter()
            .enumerate()
            .map(|(i, c)| (format!("indecomposable_{i}"), c.representation))
            .collect()
    } else {
        problem
            .representations
            .iter()
            .filter(|(_, r)| is_indecomposable_rep(r))
            .map(|(n, r)| (n.clone(), r.clone()))
            .collect()
    };
    let dual = tg.character_action();
    let mut rows = Vec::new();
    for (n1, r1) in &reps {
        for (n2, r2) in &reps {
            if !dual.orbit_of(r1.chi()[0]).contains(&r2.chi()[0]) {
                continue;
            }
            // Every transitive intertwiner splits into irreducible ones over C.
            let irreducible_only = criterion != Criterion::Indecomposable;
            for (i, class) in classify_transitive_intertwiners(r1, r2, irreducible_only)
                .map_err(failure)?
                .into_iter()
                .enumerate()
            {
                let nx = r1.space().len();
                let orbit: Vec<[&str; 2]> = class
                    .orbit
                    .iter()
                    .map(|&p| [r2.space().label(p / nx), r1.space().label(p % nx)])
                    .collect();
                let status = intertwiner_reduction_status(&class.intertwiner).map_err(failure)?;
                rows.push(json!({
                    "source": n1,
                    "target": n2,
                    "class": i,
                    "orbit": orbit,
                    "stabilizer": names(tg.g(), &class.stabilizer),
                    "dim": class.rep.dim(),
                    "character": class.rep.character().into_iter().map(complex_json).collect::<Vec<_>>(),
                    "status": status,
                    "intertwiner": intertwiner_spec(&format!("{n1}_to_{n2}_{i}"), n1, n2, &class.intertwiner),
                }));
            }
        }
    }
    Ok(json!({ "count": rows.len(), "rows": rows }))
}

fn named<'a>(problem: &'a Problem, name: &str) -> Result<&'a Intertwiner, CliError> {
    problem
        .intertwiners
        .get(name)
        .ok_or_else(|| CliError::Schema(SchemaError::Dangling {
            kind: "intertwiner",
            name: name.to_string(),
        }))
}

fn rep_name(spec: &ProblemSpec, name: &str, source: bool) -> String {
    let i = spec.intertwiners.iter().find(|i| i.name == name).expect("resolved");
    if source { i.source.clone() } else { i.target.clone() }
}

fn compose(echo: Value, text: &str, chain: &[String]) -> Result<Report, CliError> {
    let (spec, problem) = load(text)?;
    let mut composite = named(&problem, chain.last().expect("clap requires one"))?.clone();
    for name in chain.iter().rev().skip(1) {
        composite = compose_intertwiners(named(&problem, name)?, &composite).map_err(failure)?;
    }
    let source = rep_name(&spec, chain.last().unwrap(), true);
    let target = rep_name(&spec, &chain[0], false);
    let is_identity = composite.source() == composite.target() && composite == Intertwiner::identity(composite.source());
    let status = intertwiner_reduction_status(&composite).map_err(failure)?;
    let results = json!({
        "source": source,
        "target": target,
        "is_identity": is_identity,
        "is_null": composite.is_null(),
        "status": status,
        "intertwiner": intertwiner_spec(&chain.join("_"), &source, &target, &composite),
    });
    Ok(Report::new(echo, true, results).with_float_fields(&["intertwiner"]))
}

fn hom_dim(echo: Value, text: &str, source: &str, target: &str) -> Result<Report, CliError> {
    let (_, problem) = load(text)?;
    let (phi, psi) = (named(&problem, source)?, named(&problem, target)?);
    let hom = hom_2intertwiners(phi, psi).map_err(failure)?;
    let (ys, xs) = (phi.target().space(), phi.source().space());
    let basis: Vec<Value> = hom
        .basis
        .iter()
        .map(|m| {
            let cells: Vec<Value> = m
                .cells()
                .support()
                .into_iter()
                .filter_map(|(y, x)| {
                    let cell = m.cells().cell(y, x)?;
                    (tworep::linalg::max_abs(cell) > 0.0).then(|| {
                        json!({"y": ys.label(y), "x": xs.label(x), "matrix": matrix_json(cell)})
                    })
                })
                .collect();
            json!({ "cells": cells })
        })
        .collect();
    let results = json!({ "dim": hom.dim(), "orbits": hom.orbits.len(), "basis": basis });
    Ok(Report::new(echo, true, results).with_float_fields(&["basis"]))
}

fn check_laws(echo: Value, input: Option<&str>, seed: u64, cases: usize) -> Result<Report, CliError> {
    let mut rows: Vec<Value> = Vec::new();
    let mut ok = true;
    if let Some(text) = input {
        let spec = parse_problem(text)?;
        let (_, checks) = resolve_problem(&spec)?;
        for c in checks {
            ok &= c.ok;
            rows.push(json!({
                "law": format!("input.{}", c.kind),
                "name": c.name,
                "ok": c.ok,
                "witness": c.error,
            }));
        }
    }
    for outcome in laws::check_laws(seed, cases) {
        ok &= outcome.ok;
        rows.push(serde_json::to_value(outcome).expect("serializable"));
    }
    Ok(Report::new(echo, ok, json!({ "seed": seed, "cases": cases, "rows": rows })).with_float_fields(&[]))
}

fn run_commands(echo: Value, text: &str) -> Result<Report, CliError> {
    let spec = parse_problem(text)?;
    let mut ok = true;
    let mut reports = Vec::new();
    for cmd in &spec.commands {
        let argv = std::iter::once("two-rep".to_string())
            .chain(std::iter::once(cmd.verb.clone()))
            .chain(cmd.args.iter().cloned());
        let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(format!("command {:?}: {e}", cmd.verb)))?;
        if matches!(cli.verb, Verb::Run) {
            return Err(CliError::Usage("run cannot be nested".into()));
        }
        let report = match execute(&cli.verb, Some(text)) {
            Ok(r) => r,
            Err(CliError::Failure(message)) => {
                Report::new(command_echo(&cli.verb), false, json!({ "error": message }))
            }
            Err(e) => return Err(e),
        };
        ok &= report.ok;
        reports.push(serde_json::to_value(report).expect("serializable"));
    }
    Ok(Report::new(echo, ok, json!({ "rows": reports })))
}
