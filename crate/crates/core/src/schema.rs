//! The `two-rep/1` JSON format: problem descriptions, name resolution and
//! report payloads.
//!
//! Rationals travel as `"p/q"` strings and complex numbers as `[re, im]`
//! pairs. The intertwiner payload emitted in reports uses the same shape as the
//! explicit intertwiner input, so results can be fed back in.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::action::GAction;
use crate::group::FiniteGroup;
use crate::grouprep::{self, CharacterTable, GroupRep};
use crate::linalg::CMatrix;
use crate::meas2cat::{HilbertField, MatrixFunctor, MatrixNatTrans};
use crate::measure::{FiniteSpace, MeasureFamily};
use crate::rep_theory::{
    canonical_transitive_intertwiner, classify_irretractables, coset_representation, make_intertwiner,
    make_representation, Intertwiner, Representation,
};
use crate::scalar::{format_rational, parse_rational};
use crate::two_group::{
    skeletize, validate_crossed_module, CrossedModule, FiniteAbelian, SkeletalTwoGroup, ViolationReport,
};

pub const SCHEMA_TAG: &str = "two-rep/1";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SchemaError {
    #[error("JSON parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unsupported schema tag {0:?} (expected \"two-rep/1\")")]
    Tag(String),
    #[error("{0}")]
    Invalid(String),
    #[error("unknown {kind} {name:?}")]
    Dangling { kind: &'static str, name: String },
}

impl SchemaError {
    fn invalid(message: impl Into<String>) -> Self {
        Self::Invalid(message.into())
    }
}

/// A group: `{"cyclic": [n, ...]}`, `{"table": [[...]]}`,
/// `{"permutations": {"degree": d, "generators": [[...]]}}` or `{"named": "S3"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic(Vec<usize>),
    Table(Vec<Vec<usize>>),
    Permutations { degree: usize, generators: Vec<Vec<usize>> },
    Named(String),
}

/// Action of `G` on `H`: `"trivial"`, `{"inversion": [g, ...]}` listing the
/// elements that invert, or `{"table": [[...]]}` with rows indexed by `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ActionSpec {
    #[default]
    Trivial,
    Inversion(Vec<ElementRef>),
    Table(Vec<Vec<usize>>),
}

/// A group element by index or by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Name(String),
}

/// A character by index in the dual group or by exponent tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CharRef {
    Index(usize),
    Exponents(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoGroupSpec {
    pub g: GroupSpec,
    pub h: GroupSpec,
    #[serde(default)]
    pub action: ActionSpec,
    /// Boundary map `H → G` by element index; absent means trivial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partial: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CosetSpec {
    pub subgroup: Vec<ElementRef>,
    pub character: CharRef,
}

/// Exactly one of the definitions must be present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<String>>,
    /// `table[x][g]`, point indices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<CharRef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cosets: Option<CosetSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_orbit: Option<CharRef>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub null: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CocycleEntry {
    pub y: String,
    pub x: String,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

/// `"unit"` (every cell the identity) or one entry list per group element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CocycleSpec {
    Unit,
    Table(Vec<Vec<CocycleEntry>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitiveSpec {
    pub y: String,
    pub x: String,
    /// Row of the stabilizer's character table.
    pub irrep: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntertwinerSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub identity: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub null: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transitive: Option<TransitiveSpec>,
    /// Rows indexed by target points, rationals as strings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measures: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandSpec {
    pub verb: String,
    #[serde(default)]
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub schema: String,
    pub two_group: TwoGroupSpec,
    #[serde(default)]
    pub representations: Vec<RepSpec>,
    #[serde(default)]
    pub intertwiners: Vec<IntertwinerSpec>,
    #[serde(default)]
    pub commands: Vec<CommandSpec>,
}

pub fn parse_problem(text: &str) -> Result<ProblemSpec, SchemaError> {
    let spec: ProblemSpec = serde_json::from_str(text).map_err(|e| SchemaError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if spec.schema != SCHEMA_TAG {
        return Err(SchemaError::Tag(spec.schema));
    }
    check_references(&spec)?;
    Ok(spec)
}

fn check_references(spec: &ProblemSpec) -> Result<(), SchemaError> {
    let reps: Vec<&str> = spec.representations.iter().map(|r| r.name.as_str()).collect();
    for i in &spec.intertwiners {
        for name in [&i.source, &i.target] {
            if !reps.contains(&name.as_str()) {
                return Err(SchemaError::Dangling {
                    kind: "representation",
                    name: name.clone(),
                });
            }
        }
    }
    let ints: Vec<&str> = spec.intertwiners.iter().map(|i| i.name.as_str()).collect();
    for cmd in &spec.commands {
        let mut flag_value = false;
        for arg in &cmd.args {
            if std::mem::take(&mut flag_value) {
                continue;
            }
            if let Some(flag) = arg.strip_prefix("--") {
                flag_value = !flag.contains('=');
                continue;
            }
            if !ints.contains(&arg.as_str()) && !reps.contains(&arg.as_str()) {
                return Err(SchemaError::Dangling {
                    kind: "command argument",
                    name: arg.clone(),
                });
            }
        }
    }
    Ok(())
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, SchemaError> {
    let err = |e: crate::group::GroupError| SchemaError::invalid(e.to_string());
    match spec {
        GroupSpec::Cyclic(factors) => {
            FiniteAbelian::new(factors.clone()).map_err(err)?;
            Ok(FiniteGroup::abelian(factors))
        }
        GroupSpec::Table(table) => FiniteGroup::from_table(table.clone(), None).map_err(err),
        GroupSpec::Permutations { degree, generators } => FiniteGroup::from_permutations(*degree, generators).map_err(err),
        GroupSpec::Named(name) => named_group(name),
    }
}

fn named_group(name: &str) -> Result<FiniteGroup, SchemaError> {
    let number = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    match name {
        "Q8" => Ok(FiniteGroup::quaternion()),
        "1" | "trivial" => Ok(FiniteGroup::trivial()),
        _ => {
            if let Some(n) = number("S").filter(|&n| (1..=5).contains(&n)) {
                Ok(FiniteGroup::symmetric(n))
            } else if let Some(n) = number("D").filter(|&n| (2..=64).contains(&n)) {
                Ok(FiniteGroup::dihedral(n))
            } else if let Some(n) = number("Z").filter(|&n| (1..=512).contains(&n)) {
                Ok(FiniteGroup::cyclic(n))
            } else {
                Err(SchemaError::invalid(format!("unknown named group {name:?}")))
            }
        }
    }
}

fn resolve_element(g: &FiniteGroup, r: &ElementRef) -> Result<usize, SchemaError> {
    match r {
        ElementRef::Index(i) if *i < g.order() => Ok(*i),
        ElementRef::Index(i) => Err(SchemaError::invalid(format!("element index {i} out of range"))),
        ElementRef::Name(n) => g.element_by_name(n).ok_or_else(|| SchemaError::Dangling {
            kind: "group element",
            name: n.clone(),
        }),
    }
}

fn resolve_character(tg: &SkeletalTwoGroup, r: &CharRef) -> Result<usize, SchemaError> {
    match r {
        CharRef::Index(i) if *i < tg.h().order() => Ok(*i),
        CharRef::Index(i) => Err(SchemaError::invalid(format!("character index {i} out of range"))),
        CharRef::Exponents(e) if e.len() == tg.h().factors().len() => Ok(tg.h().index(e)),
        CharRef::Exponents(e) => Err(SchemaError::invalid(format!("character exponents {e:?} have the wrong length"))),
    }
}

/// The crossed module described by the spec, or its violations.
pub fn build_crossed_module(spec: &TwoGroupSpec) -> Result<Result<CrossedModule, ViolationReport>, SchemaError> {
    let g = build_group(&spec.g)?;
    let h = build_group(&spec.h)?;
    let action = match &spec.action {
        ActionSpec::Trivial => vec![(0..h.order()).collect(); g.order()],
        ActionSpec::Table(t) => t.clone(),
        ActionSpec::Inversion(elements) => {
            let inverting: Vec<usize> = elements.iter().map(|e| resolve_element(&g, e)).collect::<Result<_, _>>()?;
            g.elements()
                .map(|x| {
                    h.elements()
                        .map(|y| if inverting.contains(&x) { h.inv(y) } else { y })
                        .collect()
                })
                .collect()
        }
    };
    let partial = spec.partial.clone().unwrap_or_else(|| vec![0; h.order()]);
    Ok(validate_crossed_module(g, h, partial, action))
}

/// A validated problem with every name resolved.
#[derive(Debug, Clone)]
pub struct Problem {
    pub module: CrossedModule,
    pub two_group: SkeletalTwoGroup,
    /// Whether the input was already skeletal with `H` in factor form.
    pub skeletal_input: bool,
    pub representations: BTreeMap<String, Representation>,
    pub intertwiners: BTreeMap<String, Intertwiner>,
}

/// Per-item validation outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemCheck {
    pub kind: String,
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Resolves everything, collecting each failure instead of stopping at the first.
pub fn resolve_problem(spec: &ProblemSpec) -> Result<(Option<Problem>, Vec<ItemCheck>), SchemaError> {
    let mut checks = Vec::new();
    let module = match build_crossed_module(&spec.two_group)? {
        Ok(m) => m,
        Err(report) => {
            for v in &report.violations {
                checks.push(ItemCheck {
                    kind: "crossed_module".into(),
                    name: v.axiom.to_string(),
                    ok: false,
                    error: Some(format!("witness {}", v.witness.join(", "))),
                });
            }
            return Ok((None, checks));
        }
    };
    checks.push(ItemCheck {
        kind: "crossed_module".into(),
        name: "all axioms".into(),
        ok: true,
        error: None,
    });
    let skeletal_input = module.is_skeletal() && matches!(spec.two_group.h, GroupSpec::Cyclic(_));
    let two_group = if skeletal_input {
        let factors = match &spec.two_group.h {
            GroupSpec::Cyclic(f) => f.clone(),
            _ => unreachable!(),
        };
        let h = FiniteAbelian::new(factors).map_err(|e| SchemaError::invalid(e.to_string()))?;
        SkeletalTwoGroup::new(module.g().clone(), h, module.action_table().to_vec())
            .map_err(|e| SchemaError::invalid(e.to_string()))?
    } else {
        skeletize(&module).two_group
    };
    let mut representations = BTreeMap::new();
    for r in &spec.representations {
        let built = build_representation(&two_group, r);
        checks.push(check("representation", &r.name, &built));
        if let Ok(rep) = built {
            representations.insert(r.name.clone(), rep);
        }
    }
    let mut intertwiners = BTreeMap::new();
    for i in &spec.intertwiners {
        let (Some(source), Some(target)) = (representations.get(&i.source), representations.get(&i.target)) else {
            checks.push(ItemCheck {
                kind: "intertwiner".into(),
                name: i.name.clone(),
                ok: false,
                error: Some("endpoint representation failed validation".into()),
            });
            continue;
        };
        let built = build_intertwiner(source, target, i);
        checks.push(check("intertwiner", &i.name, &built));
        if let Ok(phi) = built {
            intertwiners.insert(i.name.clone(), phi);
        }
    }
    let problem = Problem {
        module,
        two_group,
        skeletal_input,
        representations,
        intertwiners,
    };
    Ok((Some(problem), checks))
}

fn check<T, E: std::fmt::Display>(kind: &str, name: &str, r: &Result<T, E>) -> ItemCheck {
    ItemCheck {
        kind: kind.into(),
        name: name.into(),
        ok: r.is_ok(),
        error: r.as_ref().err().map(|e| e.to_string()),
    }
}

pub fn build_representation(tg: &SkeletalTwoGroup, spec: &RepSpec) -> Result<Representation, SchemaError> {
    let defined = [
        spec.action.is_some(),
        spec.cosets.is_some(),
        spec.dual_orbit.is_some(),
        spec.null,
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if defined != 1 {
        return Err(SchemaError::invalid(format!(
            "representation {:?} needs exactly one of action, cosets, dual_orbit, null",
            spec.name
        )));
    }
    if spec.null {
        return Ok(Representation::null(tg.clone()));
    }
    if let Some(c) = &spec.cosets {
        let subgroup: Vec<usize> = c.subgroup.iter().map(|e| resolve_element(tg.g(), e)).collect::<Result<_, _>>()?;
        let subgroup = tg.g().generated(&subgroup);
        let character = resolve_character(tg, &c.character)?;
        if !subgroup.iter().all(|&s| tg.character_action().act(character, s) == character) {
            return Err(SchemaError::invalid("coset subgroup does not fix the character"));
        }
        return Ok(coset_representation(tg, character, &subgroup));
    }
    if let Some(c) = &spec.dual_orbit {
        let character = resolve_character(tg, c)?;
        return Ok(classify_irretractables(tg)
            .into_iter()
            .find(|r| r.chi().contains(&character))
            .expect("every character lies in an orbit"));
    }
    let table = spec.action.clone().expect("counted above");
    let points = spec
        .points
        .clone()
        .ok_or_else(|| SchemaError::invalid("explicit representation needs points"))?;
    let space = FiniteSpace::new(points).map_err(|e| SchemaError::invalid(e.to_string()))?;
    let action = GAction::new(tg.g().clone(), space, table).map_err(|e| SchemaError::invalid(e.to_string()))?;
    let chi: Vec<usize> = spec
        .chi
        .as_ref()
        .ok_or_else(|| SchemaError::invalid("explicit representation needs chi"))?
        .iter()
        .map(|c| resolve_character(tg, c))
        .collect::<Result<_, _>>()?;
    make_representation(tg.clone(), action, chi).map_err(|e| SchemaError::invalid(e.to_string()))
}

fn parse_matrix(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix, SchemaError> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(SchemaError::invalid("ragged matrix"));
    }
    Ok(CMatrix::from_fn(r, c, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])))
}

pub fn build_intertwiner(
    source: &Representation,
    target: &Representation,
    spec: &IntertwinerSpec,
) -> Result<Intertwiner, SchemaError> {
    let invalid = |e: &dyn std::fmt::Display| SchemaError::invalid(e.to_string());
    if spec.identity {
        if source != target {
            return Err(SchemaError::invalid("identity intertwiner needs equal endpoints"));
        }
        return Ok(Intertwiner::identity(source));
    }
    if spec.null {
        return Ok(Intertwiner::null(source, target));
    }
    if let Some(t) = &spec.transitive {
        let y = target.space().index_of(&t.y).map_err(|e| invalid(&e))?;
        let x = source.space().index_of(&t.x).map_err(|e| invalid(&e))?;
        let nx = source.space().len();
        let diagonal = target.action().product(source.action());
        let orbit = diagonal.orbit_of(y * nx + x);
        let stabilizer = diagonal.stabilizer(orbit[0]);
        let (sub, _) = source.group().subgroup_as_group(&stabilizer).map_err(|e| invalid(&e))?;
        let (_, irreps) = grouprep::irreducible_representations(&sub).map_err(|e| invalid(&e))?;
        let rep = irreps
            .get(t.irrep)
            .ok_or_else(|| SchemaError::invalid(format!("stabilizer has {} irreducibles", irreps.len())))?;
        return canonical_transitive_intertwiner(source, target, &orbit, rep).map_err(|e| invalid(&e));
    }
    let (ys, xs) = (target.space(), source.space());
    let rows = spec
        .measures
        .as_ref()
        .ok_or_else(|| SchemaError::invalid("explicit intertwiner needs measures"))?;
    let rows = rows
        .iter()
        .map(|row| row.iter().map(|w| parse_rational(w)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| invalid(&e))?;
    let measures = MeasureFamily::from_rows(ys.clone(), xs.clone(), rows).map_err(|e| invalid(&e))?;
    let dims = spec
        .dims
        .as_ref()
        .ok_or_else(|| SchemaError::invalid("explicit intertwiner needs dims"))?;
    let field = HilbertField::from_rows(ys.clone(), xs.clone(), dims).map_err(|e| invalid(&e))?;
    let functor = MatrixFunctor::new(field, measures).map_err(|e| invalid(&e))?;
    let nx = xs.len();
    let order = source.group().order();
    let mut cocycle = vec![vec![None; ys.len() * nx]; order];
    match spec.cocycle.as_ref().unwrap_or(&CocycleSpec::Unit) {
        CocycleSpec::Unit => {
            for row in cocycle.iter_mut() {
                for (y, x) in functor.measures().support_pairs() {
                    row[y * nx + x] = Some(crate::linalg::identity(functor.dim(y, x)));
                }
            }
        }
        CocycleSpec::Table(per_element) => {
            if per_element.len() != order {
                return Err(SchemaError::invalid(format!("cocycle needs {order} element tables")));
            }
            for (g, entries) in per_element.iter().enumerate() {
                for e in entries {
                    let y = ys.index_of(&e.y).map_err(|err| invalid(&err))?;
                    let x = xs.index_of(&e.x).map_err(|err| invalid(&err))?;
                    cocycle[g][y * nx + x] = Some(parse_matrix(&e.matrix)?);
                }
            }
        }
    }
    make_intertwiner(source, target, functor, cocycle).map_err(|e| invalid(&e))
}

/// Rounds away last-bit noise so equal values print identically.
fn snap(v: f64) -> f64 {
    let r = (v * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn complex_json(z: Complex64) -> Value {
    json!([snap(z.re), snap(z.im)])
}

pub fn matrix_json(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex_json(m[(i, j)])).collect()))
            .collect(),
    )
}

fn matrix_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [snap(m[(i, j)].re), snap(m[(i, j)].im)]).collect())
        .collect()
}

pub fn functor_json(t: &MatrixFunctor) -> Value {
    let (ys, xs) = (t.target_space(), t.source_space());
    json!({
        "index": ys.labels(),
        "base": xs.labels(),
        "dims": (0..ys.len()).map(|y| (0..xs.len()).map(|x| t.dim(y, x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "measures": (0..ys.len()).map(|y| (0..xs.len()).map(|x| format_rational(t.weight(y, x))).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn nattrans_json(a: &MatrixNatTrans) -> Value {
    let (ys, xs) = (a.source().target_space(), a.source().source_space());
    let cells: Vec<Vec<Value>> = (0..ys.len())
        .map(|y| {
            (0..xs.len())
                .map(|x| a.cell(y, x).map_or(Value::Null, matrix_json))
                .collect()
        })
        .collect();
    json!({ "source": functor_json(a.source()), "target": functor_json(a.target()), "cells": cells })
}

pub fn representation_json(name: &str, rho: &Representation) -> Value {
    let dual = rho.two_group().dual();
    json!({
        "name": name,
        "points": rho.space().labels(),
        "action": rho.action().table(),
        "chi": rho.chi().iter().map(|&c| dual[c].exponents.clone()).collect::<Vec<_>>(),
    })
}

/// Same shape as an explicit [`IntertwinerSpec`].
pub fn intertwiner_spec(name: &str, source: &str, target: &str, phi: &Intertwiner) -> IntertwinerSpec {
    let t = phi.functor();
    let (ys, xs) = (t.target_space(), t.source_space());
    let table = phi
        .cocycle()
        .iter()
        .map(|row| {
            t.measures()
                .support_pairs()
                .into_iter()
                .map(|(y, x)| CocycleEntry {
                    y: ys.label(y).to_string(),
                    x: xs.label(x).to_string(),
                    matrix: matrix_rows(row[y * xs.len() + x].as_ref().expect("support")),
                })
                .collect()
        })
        .collect();
    IntertwinerSpec {
        name: name.to_string(),
        source: source.to_string(),
        target: target.to_string(),
        identity: false,
        null: false,
        transitive: None,
        measures: Some(
            (0..ys.len())
                .map(|y| (0..xs.len()).map(|x| format_rational(t.weight(y, x))).collect())
                .collect(),
        ),
        dims: Some((0..ys.len()).map(|y| (0..xs.len()).map(|x| t.dim(y, x)).collect()).collect()),
        cocycle: Some(CocycleSpec::Table(table)),
    }
}

pub fn grouprep_json(elements: &[usize], g: &FiniteGroup, rep: &GroupRep) -> Value {
    json!({
        "elements": elements.iter().map(|&e| g.name(e)).collect::<Vec<_>>(),
        "dim": rep.dim(),
        "character": rep.character().into_iter().map(complex_json).collect::<Vec<_>>(),
    })
}

pub fn character_table_json(group: &FiniteGroup, table: &CharacterTable) -> Value {
    json!({
        "classes": table.classes.iter().map(|c| c.iter().map(|&e| group.name(e)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "degrees": table.degrees,
        "values": table.values.iter().map(|row| row.iter().map(|&z| complex_json(z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// A command's outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: Value,
    pub ok: bool,
    pub results: Value,
    /// `"exact"` or `"float"` for each top-level result field.
    #[serde(default)]
    pub provenance: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: Value, ok: bool, results: Value) -> Self {
        Self {
            schema: SCHEMA_TAG.to_string(),
            command,
            ok,
            results,
            provenance: BTreeMap::new(),
            timing_ms: None,
        }
    }

    /// Marks the named result fields as floating point; every other
    /// top-level field is exact.
    pub fn with_float_fields(mut self, floats: &[&str]) -> Self {
        if let Value::Object(map) = &self.results {
            for key in map.keys() {
                let kind = if floats.contains(&key.as_str()) { "float" } else { "exact" };
                self.provenance.insert(key.clone(), kind.to_string());
            }
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INVERSION: &str = r#"{
        "schema": "two-rep/1",
        "two_group": {"g": {"cyclic": [2]}, "h": {"cyclic": [3]}, "action": {"inversion": [1]}},
        "representations": [
            {"name": "free", "dual_orbit": 1},
            {"name": "fixed", "cosets": {"subgroup": [1], "character": 0}}
        ],
        "intertwiners": [
            {"name": "id", "source": "free", "target": "free", "identity": true},
            {"name": "t", "source": "free", "target": "free", "transitive": {"y": "chi(1)", "x": "chi(1)", "irrep": 0}}
        ]
    }"#;

    #[test]
    fn inversion_problem_resolves() {
        let spec = parse_problem(INVERSION).unwrap();
        let (problem, checks) = resolve_problem(&spec).unwrap();
        assert!(checks.iter().all(|c| c.ok), "{checks:?}");
        let problem = problem.unwrap();
        assert_eq!(problem.representations["free"].space().len(), 2);
        assert_eq!(problem.representations["fixed"].space().len(), 1);
    }

    #[test]
    fn intertwiner_payload_reads_back() {
        let spec = parse_problem(INVERSION).unwrap();
        let (problem, _) = resolve_problem(&spec).unwrap();
        let problem = problem.unwrap();
        let phi = &problem.intertwiners["t"];
        let out = intertwiner_spec("t2", "free", "free", phi);
        let text = serde_json::to_string(&out).unwrap();
        let back: IntertwinerSpec = serde_json::from_str(&text).unwrap();
        let rho = &problem.representations["free"];
        let rebuilt = build_intertwiner(rho, rho, &back).unwrap();
        assert_eq!(rebuilt.functor(), phi.functor());
    }

    #[test]
    fn dangling_reference_is_reported() {
        let text = INVERSION.replace(r#""source": "free", "target": "free", "identity""#, r#""source": "nowhere", "target": "free", "identity""#);
        assert!(matches!(parse_problem(&text), Err(SchemaError::Dangling { .. })));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_problem("{\n  \"schema\": ") {
            Err(SchemaError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
