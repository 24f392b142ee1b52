//! Exact measure calculus on finite labelled spaces.
//!
//! Every subset of a finite space is measurable, so a measure is just a
//! table of nonnegative rational weights and almost-everywhere reasoning
//! reduces to exact support bookkeeping.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::action::GAction;
use crate::scalar::{Rational, SqrtRational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MeasureError {
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown point label {0:?}")]
    UnknownLabel(String),
    #[error("measures live on different spaces")]
    SpaceMismatch,
    #[error("expected {expected} weights, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("negative weight at point {0:?}")]
    NegativeWeight(String),
    #[error("density queried at {0:?}, outside its support")]
    OffSupport(String),
    #[error("cannot disintegrate: the base measure vanishes at {0:?} but the joint measure does not")]
    DisintegrationImpossible(String),
    #[error("action does not act on this space")]
    ActionMismatch,
    #[error("group element {0} is out of range")]
    BadElement(usize),
    #[error("family is not equivariant at index point {index:?} and element {element}")]
    NotEquivariant { index: String, element: usize },
}

#[derive(Debug)]
struct SpaceData {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered set of distinct point labels. Cloning is cheap.
#[derive(Debug, Clone)]
pub struct FiniteSpace {
    data: Arc<SpaceData>,
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.labels == other.data.labels
    }
}

impl Eq for FiniteSpace {}

impl FiniteSpace {
    pub fn new<I, S>(labels: I) -> Result<Self, MeasureError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(MeasureError::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self {
            data: Arc::new(SpaceData { labels, index }),
        })
    }

    pub fn empty() -> Self {
        Self::new(Vec::<String>::new()).expect("empty space")
    }

    /// Points labelled `prefix0`, `prefix1`, ...
    pub fn numbered(prefix: &str, n: usize) -> Self {
        Self::new((0..n).map(|i| format!("{prefix}{i}"))).expect("distinct numbered labels")
    }

    /// `Y×X` with the pair `(y, x)` at index `y·|X| + x`, labelled `"(y,x)"`.
    pub fn product(left: &FiniteSpace, right: &FiniteSpace) -> Self {
        let labels = left
            .labels()
            .iter()
            .flat_map(|a| right.labels().iter().map(move |b| format!("({a},{b})")));
        Self::new(labels).unwrap_or_else(|_| {
            let nr = right.len();
            Self::new((0..left.len() * nr).map(|p| format!("(#{},#{})", p / nr, p % nr)))
                .expect("index labels are distinct")
        })
    }

    /// Disjoint union with mandatory `"L:"` / `"R:"` prefixes.
    pub fn disjoint_union(left: &FiniteSpace, right: &FiniteSpace) -> Self {
        Self::new(
            left.labels()
                .iter()
                .map(|l| format!("L:{l}"))
                .chain(right.labels().iter().map(|r| format!("R:{r}"))),
        )
        .expect("prefixed labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.data.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.data.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, MeasureError> {
        self.data
            .index
            .get(label)
            .copied()
            .ok_or_else(|| MeasureError::UnknownLabel(label.to_string()))
    }
}

/// Nonnegative rational weights on a finite space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMeasure {
    space: FiniteSpace,
    weights: Vec<Rational>,
}

impl FiniteMeasure {
    pub fn new(space: FiniteSpace, weights: Vec<Rational>) -> Result<Self, MeasureError> {
        if weights.len() != space.len() {
            return Err(MeasureError::LengthMismatch {
                expected: space.len(),
                got: weights.len(),
            });
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(MeasureError::NegativeWeight(space.label(i).to_string()));
        }
        Ok(Self { space, weights })
    }

    pub fn from_integers(space: FiniteSpace, weights: &[i64]) -> Result<Self, MeasureError> {
        Self::new(space, weights.iter().map(|&w| crate::scalar::int(w)).collect())
    }

    pub fn zero(space: FiniteSpace) -> Self {
        let weights = vec![Rational::zero(); space.len()];
        Self { space, weights }
    }

    /// Unit point mass at `point`.
    pub fn dirac(space: FiniteSpace, point: usize) -> Self {
        let mut m = Self::zero(space);
        m.weights[point] = Rational::one();
        m
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, point: usize) -> &Rational {
        &self.weights[point]
    }

    pub fn charges(&self, point: usize) -> bool {
        !self.weights[point].is_zero()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| self.charges(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(Zero::is_zero)
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn mass_of(&self, subset: &[usize]) -> Rational {
        subset.iter().map(|&i| &self.weights[i]).sum()
    }

    pub fn add(&self, other: &FiniteMeasure) -> Result<FiniteMeasure, MeasureError> {
        same_space(self, other)?;
        Ok(Self {
            space: self.space.clone(),
            weights: self.weights.iter().zip(&other.weights).map(|(a, b)| a + b).collect(),
        })
    }

    /// The measure `density · self`, i.e. weights multiplied pointwise.
    ///
    /// Points where `self` vanishes stay zero; elsewhere the density must be defined.
    pub fn with_density(&self, density: &Density) -> Result<FiniteMeasure, MeasureError> {
        if density.domain != self.space {
            return Err(MeasureError::SpaceMismatch);
        }
        let mut weights = Vec::with_capacity(self.weights.len());
        for (i, w) in self.weights.iter().enumerate() {
            weights.push(if w.is_zero() {
                Rational::zero()
            } else {
                w * density.value(i)?
            });
        }
        Ok(Self {
            space: self.space.clone(),
            weights,
        })
    }

    /// Lossless embedding into square-root weights.
    pub fn to_sqrt_measure(&self) -> SqrtMeasure {
        SqrtMeasure {
            space: self.space.clone(),
            weights: self
                .weights
                .iter()
                .map(|w| SqrtRational::from_rational(w).expect("nonnegative weight"))
                .collect(),
        }
    }

    /// Product measure on `self.space × other.space`.
    pub fn product(&self, other: &FiniteMeasure) -> FiniteMeasure {
        let space = FiniteSpace::product(&self.space, &other.space);
        let weights = self
            .weights
            .iter()
            .flat_map(|a| other.weights.iter().map(move |b| a * b))
            .collect();
        FiniteMeasure { space, weights }
    }
}

fn same_space(t: &FiniteMeasure, u: &FiniteMeasure) -> Result<(), MeasureError> {
    if t.space == u.space {
        Ok(())
    } else {
        Err(MeasureError::SpaceMismatch)
    }
}

/// A rational function defined exactly on a declared support set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Density {
    domain: FiniteSpace,
    values: Vec<Option<Rational>>,
}

impl Density {
    pub fn domain(&self) -> &FiniteSpace {
        &self.domain
    }

    /// Value at `point`; an error when `point` lies outside the support.
    pub fn value(&self, point: usize) -> Result<&Rational, MeasureError> {
        self.values[point]
            .as_ref()
            .ok_or_else(|| MeasureError::OffSupport(self.domain.label(point).to_string()))
    }

    pub fn is_defined_at(&self, point: usize) -> bool {
        self.values[point].is_some()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i].is_some()).collect()
    }
}

/// Weights of the form `√q`, as produced by geometric means and rescalings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtMeasure {
    space: FiniteSpace,
    weights: Vec<SqrtRational>,
}

impl SqrtMeasure {
    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn weights(&self) -> &[SqrtRational] {
        &self.weights
    }

    pub fn weight(&self, point: usize) -> &SqrtRational {
        &self.weights[point]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| !self.weights[i].is_zero()).collect()
    }

    /// The rational measure with the same weights, when every weight is rational.
    pub fn to_measure(&self) -> Option<FiniteMeasure> {
        let weights = self
            .weights
            .iter()
            .map(SqrtRational::to_rational)
            .collect::<Option<Vec<_>>>()?;
        Some(FiniteMeasure {
            space: self.space.clone(),
            weights,
        })
    }

    /// The measure `√density · self`. Points already of weight zero stay zero
    /// without consulting the density; elsewhere it must be defined.
    pub fn with_sqrt_density(&self, density: &Density) -> Result<SqrtMeasure, MeasureError> {
        if density.domain != self.space {
            return Err(MeasureError::SpaceMismatch);
        }
        let mut weights = Vec::with_capacity(self.weights.len());
        for (i, w) in self.weights.iter().enumerate() {
            weights.push(if w.is_zero() {
                SqrtRational::zero()
            } else {
                w * &SqrtRational::new(density.value(i)?.clone()).expect("densities are nonnegative")
            });
        }
        Ok(SqrtMeasure {
            space: self.space.clone(),
            weights,
        })
    }
}

/// Lebesgue decomposition of `t` with respect to `u`: `(t_ac, t_sing)`.
pub fn lebesgue_decompose(t: &FiniteMeasure, u: &FiniteMeasure) -> Result<(FiniteMeasure, FiniteMeasure), MeasureError> {
    same_space(t, u)?;
    let mut ac = FiniteMeasure::zero(t.space.clone());
    let mut sing = FiniteMeasure::zero(t.space.clone());
    for i in 0..t.weights.len() {
        let target = if u.charges(i) { &mut ac } else { &mut sing };
        target.weights[i] = t.weights[i].clone();
    }
    Ok((ac, sing))
}

/// `dt/du`, the derivative of the part of `t` absolutely continuous w.r.t. `u`,
/// defined exactly on the support of `u`.
pub fn rn_derivative(t: &FiniteMeasure, u: &FiniteMeasure) -> Result<Density, MeasureError> {
    same_space(t, u)?;
    let values = t
        .weights
        .iter()
        .zip(&u.weights)
        .map(|(a, b)| (!b.is_zero()).then(|| a / b))
        .collect();
    Ok(Density {
        domain: t.space.clone(),
        values,
    })
}

/// `√(tu)`, with exact square-root weights.
pub fn geometric_mean(t: &FiniteMeasure, u: &FiniteMeasure) -> Result<SqrtMeasure, MeasureError> {
    same_space(t, u)?;
    let weights = t
        .weights
        .iter()
        .zip(&u.weights)
        .map(|(a, b)| SqrtRational::new(a * b).expect("product of nonnegative weights"))
        .collect();
    Ok(SqrtMeasure {
        space: t.space.clone(),
        weights,
    })
}

/// Support-level relations between two measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureRelation {
    /// `t ≪ u`
    pub left_continuous: bool,
    /// `u ≪ t`
    pub right_continuous: bool,
    pub equivalent: bool,
    pub singular: bool,
}

pub fn compare_measures(t: &FiniteMeasure, u: &FiniteMeasure) -> Result<MeasureRelation, MeasureError> {
    same_space(t, u)?;
    let n = t.weights.len();
    let left_continuous = (0..n).all(|i| !t.charges(i) || u.charges(i));
    let right_continuous = (0..n).all(|i| !u.charges(i) || t.charges(i));
    let singular = (0..n).all(|i| !(t.charges(i) && u.charges(i)));
    Ok(MeasureRelation {
        left_continuous,
        right_continuous,
        equivalent: left_continuous && right_continuous,
        singular,
    })
}

/// Exact support equality, i.e. `t ∼ u`.
pub fn equivalent(t: &FiniteMeasure, u: &FiniteMeasure) -> bool {
    t.space == u.space && (0..t.weights.len()).all(|i| t.charges(i) == u.charges(i))
}

/// The transported measure `μ^g` with `μ^g(x·g) = μ(x)`.
pub fn transform_measure(mu: &FiniteMeasure, g: usize, action: &GAction) -> Result<FiniteMeasure, MeasureError> {
    if action.space() != &mu.space {
        return Err(MeasureError::ActionMismatch);
    }
    if g >= action.group().order() {
        return Err(MeasureError::BadElement(g));
    }
    let mut out = FiniteMeasure::zero(mu.space.clone());
    for (x, w) in mu.weights.iter().enumerate() {
        out.weights[action.act(x, g)] = w.clone();
    }
    Ok(out)
}

/// A `Y`-indexed family of measures on `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureFamily {
    index: FiniteSpace,
    base: FiniteSpace,
    members: Vec<FiniteMeasure>,
}

impl MeasureFamily {
    pub fn new(index: FiniteSpace, base: FiniteSpace, members: Vec<FiniteMeasure>) -> Result<Self, MeasureError> {
        if members.len() != index.len() {
            return Err(MeasureError::LengthMismatch {
                expected: index.len(),
                got: members.len(),
            });
        }
        if members.iter().any(|m| m.space != base) {
            return Err(MeasureError::SpaceMismatch);
        }
        Ok(Self { index, base, members })
    }

    /// Rows of weights, one per index point.
    pub fn from_rows(index: FiniteSpace, base: FiniteSpace, rows: Vec<Vec<Rational>>) -> Result<Self, MeasureError> {
        let members = rows
            .into_iter()
            .map(|row| FiniteMeasure::new(base.clone(), row))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(index, base, members)
    }

    pub fn from_integer_rows(index: FiniteSpace, base: FiniteSpace, rows: &[Vec<i64>]) -> Result<Self, MeasureError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&w| crate::scalar::int(w)).collect())
            .collect();
        Self::from_rows(index, base, rows)
    }

    pub fn zero(index: FiniteSpace, base: FiniteSpace) -> Self {
        let members = vec![FiniteMeasure::zero(base.clone()); index.len()];
        Self { index, base, members }
    }

    /// `y ↦ δ_y` on `space`: the unit for family composition.
    pub fn dirac(space: FiniteSpace) -> Self {
        let identity: Vec<usize> = (0..space.len()).collect();
        Self::pushforward_dirac(space.clone(), space, &identity).expect("identity map is in range")
    }

    /// `y ↦ δ_{f(y)}`.
    pub fn pushforward_dirac(index: FiniteSpace, base: FiniteSpace, f: &[usize]) -> Result<Self, MeasureError> {
        if f.len() != index.len() {
            return Err(MeasureError::LengthMismatch {
                expected: index.len(),
                got: f.len(),
            });
        }
        let members = f
            .iter()
            .map(|&target| {
                if target >= base.len() {
                    return Err(MeasureError::LengthMismatch {
                        expected: base.len(),
                        got: target + 1,
                    });
                }
                Ok(FiniteMeasure::dirac(base.clone(), target))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { index, base, members })
    }

    pub fn index(&self) -> &FiniteSpace {
        &self.index
    }

    pub fn base(&self) -> &FiniteSpace {
        &self.base
    }

    pub fn members(&self) -> &[FiniteMeasure] {
        &self.members
    }

    pub fn member(&self, y: usize) -> &FiniteMeasure {
        &self.members[y]
    }

    pub fn weight(&self, y: usize, x: usize) -> &Rational {
        &self.members[y].weights[x]
    }

    pub fn charges(&self, y: usize, x: usize) -> bool {
        self.members[y].charges(x)
    }

    pub fn is_zero(&self) -> bool {
        self.members.iter().all(FiniteMeasure::is_zero)
    }

    /// Pairs `(y, x)` with positive weight, in lexicographic order.
    pub fn support_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.index.len())
            .flat_map(|y| self.members[y].support().into_iter().map(move |x| (y, x)))
            .collect()
    }

    pub fn add(&self, other: &MeasureFamily) -> Result<MeasureFamily, MeasureError> {
        if self.index != other.index || self.base != other.base {
            return Err(MeasureError::SpaceMismatch);
        }
        let members = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            index: self.index.clone(),
            base: self.base.clone(),
            members,
        })
    }

    /// Reindex along `f: new index → old index`: member `y` becomes `μ_{f(y)}`.
    pub fn reindex(&self, new_index: FiniteSpace, f: &[usize]) -> MeasureFamily {
        let members = f.iter().map(|&y| self.members[y].clone()).collect();
        Self {
            index: new_index,
            base: self.base.clone(),
            members,
        }
    }
}

/// Splits a measure on `Y×X` over its `Y`-marginal-type measure `nu`.
///
/// `mu_y(x) = λ(y,x)/ν(y)` on the support of `nu` and zero elsewhere.
pub fn disintegrate(lambda: &FiniteMeasure, nu: &FiniteMeasure, base: &FiniteSpace) -> Result<MeasureFamily, MeasureError> {
    let index = nu.space.clone();
    let nx = base.len();
    if lambda.space != FiniteSpace::product(&index, base) {
        return Err(MeasureError::SpaceMismatch);
    }
    let mut members = Vec::with_capacity(index.len());
    for y in 0..index.len() {
        let row = &lambda.weights[y * nx..(y + 1) * nx];
        if nu.charges(y) {
            let weights = row.iter().map(|w| w / &nu.weights[y]).collect();
            members.push(FiniteMeasure {
                space: base.clone(),
                weights,
            });
        } else if row.iter().all(Zero::is_zero) {
            members.push(FiniteMeasure::zero(base.clone()));
        } else {
            return Err(MeasureError::DisintegrationImpossible(index.label(y).to_string()));
        }
    }
    Ok(MeasureFamily {
        index,
        base: base.clone(),
        members,
    })
}

/// `λ = Σ_y ν(y)·(δ_y ⊗ μ_y)`, the inverse of [`disintegrate`].
pub fn reassemble(nu: &FiniteMeasure, family: &MeasureFamily) -> Result<FiniteMeasure, MeasureError> {
    if nu.space != family.index {
        return Err(MeasureError::SpaceMismatch);
    }
    let space = FiniteSpace::product(&family.index, &family.base);
    let weights = family
        .members
        .iter()
        .enumerate()
        .flat_map(|(y, m)| m.weights.iter().map(move |w| &nu.weights[y] * w))
        .collect();
    Ok(FiniteMeasure { space, weights })
}

/// Result of composing two families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposedFamilies {
    /// `(ut)_z = Σ_y u_z(y)·t_y`.
    pub composite: MeasureFamily,
    /// `k_{z,x}` on the middle space, indexed by `Z×X` with `(z,x)` at `z·|X|+x`.
    pub kernel: MeasureFamily,
}

impl ComposedFamilies {
    pub fn kernel_at(&self, z: usize, x: usize) -> &FiniteMeasure {
        self.kernel.member(z * self.composite.base.len() + x)
    }
}

/// Composes a `Z`-indexed family on `Y` after a `Y`-indexed family on `X`.
pub fn compose_families(u: &MeasureFamily, t: &MeasureFamily) -> Result<ComposedFamilies, MeasureError> {
    if u.base != t.index {
        return Err(MeasureError::SpaceMismatch);
    }
    let (nz, ny, nx) = (u.index.len(), t.index.len(), t.base.len());
    let mut composite = Vec::with_capacity(nz);
    let mut kernel = Vec::with_capacity(nz * nx);
    for z in 0..nz {
        let uz = &u.members[z];
        let mut total = vec![Rational::zero(); nx];
        for y in uz.support() {
            for x in t.members[y].support() {
                total[x] += &uz.weights[y] * &t.members[y].weights[x];
            }
        }
        for (x, tot) in total.iter().enumerate() {
            let mut k = vec![Rational::zero(); ny];
            if !tot.is_zero() {
                for (y, ky) in k.iter_mut().enumerate() {
                    let w = &uz.weights[y] * &t.members[y].weights[x];
                    if !w.is_zero() {
                        *ky = w / tot;
                    }
                }
            }
            kernel.push(FiniteMeasure {
                space: t.index.clone(),
                weights: k,
            });
        }
        composite.push(FiniteMeasure {
            space: t.base.clone(),
            weights: total,
        });
    }
    Ok(ComposedFamilies {
        composite: MeasureFamily {
            index: u.index.clone(),
            base: t.base.clone(),
            members: composite,
        },
        kernel: MeasureFamily {
            index: FiniteSpace::product(&u.index, &t.base),
            base: t.index.clone(),
            members: kernel,
        },
    })
}

fn check_family_action(mu: &MeasureFamily, act_y: &GAction, act_x: &GAction) -> Result<(), MeasureError> {
    if act_y.space() != &mu.index || act_x.space() != &mu.base || act_y.group() != act_x.group() {
        return Err(MeasureError::ActionMismatch);
    }
    Ok(())
}

/// Whether `supp μ_{y·g} = (supp μ_y)·g` for every `y` and `g`.
pub fn is_equivariant_family(mu: &MeasureFamily, act_y: &GAction, act_x: &GAction) -> Result<bool, MeasureError> {
    Ok(equivariance_witness(mu, act_y, act_x)?.is_none())
}

/// The first `(y, g)` at which equivariance fails, if any.
pub fn equivariance_witness(
    mu: &MeasureFamily,
    act_y: &GAction,
    act_x: &GAction,
) -> Result<Option<(usize, usize)>, MeasureError> {
    check_family_action(mu, act_y, act_x)?;
    for y in 0..mu.index.len() {
        for g in act_y.group().elements() {
            let moved: BTreeSet<usize> = mu.members[y].support().iter().map(|&x| act_x.act(x, g)).collect();
            let target: BTreeSet<usize> = mu.members[act_y.act(y, g)].support().into_iter().collect();
            if moved != target {
                return Ok(Some((y, g)));
            }
        }
    }
    Ok(None)
}

/// Minimality at finite scale: nonzero, vanishing off a single orbit of `Y`,
/// and each `μ_y` charging a single orbit of the stabilizer of `y`.
pub fn is_minimal_family(mu: &MeasureFamily, act_y: &GAction, act_x: &GAction) -> Result<bool, MeasureError> {
    if let Some((y, g)) = equivariance_witness(mu, act_y, act_x)? {
        return Err(MeasureError::NotEquivariant {
            index: mu.index.label(y).to_string(),
            element: g,
        });
    }
    if mu.is_zero() {
        return Ok(false);
    }
    let charged: Vec<usize> = (0..mu.index.len()).filter(|&y| !mu.members[y].is_zero()).collect();
    let orbit: BTreeSet<usize> = act_y.orbit_of(charged[0]).into_iter().collect();
    if charged.iter().any(|y| !orbit.contains(y)) {
        return Ok(false);
    }
    for &y in &charged {
        let stab = act_y.stabilizer(y);
        let support = mu.members[y].support();
        let x0 = support[0];
        let stab_orbit: BTreeSet<usize> = stab.iter().map(|&s| act_x.act(x0, s)).collect();
        if support.iter().any(|x| !stab_orbit.contains(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::scalar::{int, rat};

    fn abc() -> FiniteSpace {
        FiniteSpace::new(["a", "b", "c"]).unwrap()
    }

    fn m(space: &FiniteSpace, w: &[i64]) -> FiniteMeasure {
        FiniteMeasure::from_integers(space.clone(), w).unwrap()
    }

    fn all_subsets(n: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
            .collect()
    }

    #[test]
    fn lebesgue_decomposition_example() {
        let s = abc();
        let (ac, sing) = lebesgue_decompose(&m(&s, &[1, 2, 0]), &m(&s, &[2, 0, 5])).unwrap();
        assert_eq!(ac, m(&s, &[1, 0, 0]));
        assert_eq!(sing, m(&s, &[0, 2, 0]));
        let u = m(&s, &[2, 0, 5]);
        // Absolute continuity and singularity by exhaustive subset checks.
        for a in all_subsets(3) {
            if u.mass_of(&a).is_zero() {
                assert!(ac.mass_of(&a).is_zero());
            }
        }
        assert!(all_subsets(3).iter().any(|a| {
            let comp: Vec<usize> = (0..3).filter(|i| !a.contains(i)).collect();
            sing.mass_of(&comp).is_zero() && u.mass_of(a).is_zero()
        }));
    }

    #[test]
    fn rn_derivative_integral_identity() {
        let s = abc();
        let (t, u) = (m(&s, &[1, 2, 0]), m(&s, &[2, 1, 0]));
        let d = rn_derivative(&t, &u).unwrap();
        assert_eq!(d.value(0).unwrap(), &rat(1, 2));
        assert_eq!(d.value(1).unwrap(), &int(2));
        assert!(matches!(d.value(2), Err(MeasureError::OffSupport(_))));
        let (ac, _) = lebesgue_decompose(&t, &u).unwrap();
        for a in all_subsets(3) {
            let integral: Rational = a
                .iter()
                .filter(|&&x| d.is_defined_at(x))
                .map(|&x| d.value(x).unwrap() * u.weight(x))
                .sum();
            assert_eq!(integral, ac.mass_of(&a));
        }
    }

    #[test]
    fn geometric_mean_example_matches_both_formulas() {
        let s = FiniteSpace::numbered("p", 4);
        let (t, u) = (m(&s, &[1, 2, 0, 4]), m(&s, &[4, 0, 9, 1]));
        let gm = geometric_mean(&t, &u).unwrap();
        assert_eq!(gm.to_measure().unwrap(), m(&s, &[2, 0, 0, 2]));
        let via_u = u.to_sqrt_measure().with_sqrt_density(&rn_derivative(&t, &u).unwrap()).unwrap();
        let via_t = t.to_sqrt_measure().with_sqrt_density(&rn_derivative(&u, &t).unwrap()).unwrap();
        assert_eq!(via_u, gm);
        assert_eq!(via_t, gm);
        assert_eq!(geometric_mean(&t, &t).unwrap().to_measure().unwrap(), t);
    }

    #[test]
    fn compare_examples() {
        let s = FiniteSpace::numbered("p", 2);
        assert!(compare_measures(&m(&s, &[1, 0]), &m(&s, &[3, 0])).unwrap().equivalent);
        assert!(compare_measures(&m(&s, &[1, 0]), &m(&s, &[0, 1])).unwrap().singular);
        let r = compare_measures(&m(&s, &[1, 1]), &m(&s, &[1, 0])).unwrap();
        assert!(r.right_continuous && !r.left_continuous);
    }

    #[test]
    fn transform_by_swap() {
        let z2 = FiniteGroup::cyclic(2);
        let s = FiniteSpace::new(["a", "b"]).unwrap();
        let act = GAction::new(z2, s.clone(), vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(transform_measure(&m(&s, &[1, 2]), 1, &act).unwrap(), m(&s, &[2, 1]));
        assert_eq!(transform_measure(&m(&s, &[1, 2]), 0, &act).unwrap(), m(&s, &[1, 2]));
    }

    #[test]
    fn disintegration_example_and_error() {
        let y = FiniteSpace::new(["y1", "y2"]).unwrap();
        let x = FiniteSpace::new(["a", "b"]).unwrap();
        let xy = FiniteSpace::product(&y, &x);
        let lambda = m(&xy, &[1, 1, 0, 2]);
        let nu = m(&y, &[2, 2]);
        let fam = disintegrate(&lambda, &nu, &x).unwrap();
        assert_eq!(fam.member(0).weights(), &[rat(1, 2), rat(1, 2)]);
        assert_eq!(fam.member(1).weights(), &[int(0), int(1)]);
        assert_eq!(reassemble(&nu, &fam).unwrap(), lambda);
        let err = disintegrate(&m(&xy, &[1, 0, 0, 0]), &m(&y, &[0, 1]), &x).unwrap_err();
        assert_eq!(err, MeasureError::DisintegrationImpossible("y1".into()));
    }

    #[test]
    fn compose_families_example() {
        let z = FiniteSpace::new(["z"]).unwrap();
        let y = FiniteSpace::new(["y1", "y2"]).unwrap();
        let x = FiniteSpace::new(["a", "b"]).unwrap();
        let u = MeasureFamily::from_integer_rows(z, y.clone(), &[vec![1, 2]]).unwrap();
        let t = MeasureFamily::from_integer_rows(y.clone(), x.clone(), &[vec![3, 0], vec![0, 1]]).unwrap();
        let c = compose_families(&u, &t).unwrap();
        assert_eq!(c.composite.member(0), &m(&x, &[3, 2]));
        assert_eq!(c.kernel_at(0, 0), &m(&y, &[1, 0]));
        assert_eq!(c.kernel_at(0, 1), &m(&y, &[0, 1]));
        let unit = compose_families(&t, &MeasureFamily::dirac(x.clone())).unwrap();
        assert_eq!(unit.composite, t);
    }

    #[test]
    fn equivariance_and_minimality() {
        let z2 = FiniteGroup::cyclic(2);
        let s = FiniteSpace::new(["p", "q"]).unwrap();
        let swap = GAction::new(z2, s.clone(), vec![vec![0, 1], vec![1, 0]]).unwrap();
        let bad = MeasureFamily::from_integer_rows(s.clone(), s.clone(), &[vec![1, 0], vec![1, 0]]).unwrap();
        assert!(!is_equivariant_family(&bad, &swap, &swap).unwrap());
        let diag = MeasureFamily::dirac(s.clone());
        assert!(is_equivariant_family(&diag, &swap, &swap).unwrap());
        assert!(is_minimal_family(&diag, &swap, &swap).unwrap());
        let zero = MeasureFamily::zero(s.clone(), s.clone());
        assert!(!is_minimal_family(&zero, &swap, &swap).unwrap());
        let full = MeasureFamily::from_integer_rows(s.clone(), s.clone(), &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(is_equivariant_family(&full, &swap, &swap).unwrap());
        assert!(!is_minimal_family(&full, &swap, &swap).unwrap());
    }
}
