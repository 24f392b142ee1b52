//! Representations of a finite skeletal 2-group on measurable categories over
//! finite spaces, their intertwiners and 2-intertwiners.
//!
//! A representation is a right `G`-space `X` with an equivariant map
//! `χ: X → H*`. An intertwiner `ρ1 → ρ2` is a matrix functor `X → Y` whose
//! measure family is equivariant and fiberwise, together with a cocycle
//! `Φ^g_{(y,x)}: φ_{(y,x)} → φ_{(y,x)·g⁻¹}`. Because the support of the
//! family is a union of diagonal orbits, the cocycle is stored on exactly that
//! support and is required to be strict there.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{ActionError, GAction};
use crate::group::FiniteGroup;
use crate::grouprep::{self, GroupRep, RepError, CHAR_TOL};
use crate::linalg::{self, CMatrix, EQ_TOL};
use crate::meas2cat::{
    self, composition_associator, compose_functors, pullback_functor, scalar_2auto, vertical_compose, whisker,
    HilbertField, MatrixFunctor, MatrixNatTrans, MeasError, Pullback, Side,
};
use crate::measure::{self, FiniteSpace, MeasureFamily};
use crate::two_group::{Character, SkeletalTwoGroup};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RepTheoryError {
    #[error(transparent)]
    Meas(#[from] MeasError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    GroupRep(#[from] RepError),
    #[error("the action is by a different group than the 2-group's G")]
    WrongGroup,
    #[error("expected {expected} character assignments, got {got}")]
    ChiLength { expected: usize, got: usize },
    #[error("character index {0} is out of range")]
    UnknownCharacter(usize),
    #[error("χ({point}·{element}) differs from χ({point}) acted on by {element}")]
    NotEquivariantChi { point: String, element: String },
    #[error("representations belong to different 2-groups")]
    DifferentTwoGroups,
    #[error("functor spaces do not match the representations")]
    SpaceMismatch,
    #[error("measure family is not equivariant at y={y}, g={element}")]
    NotEquivariant { y: String, element: String },
    #[error("μ_{y} charges {x} but χ1({x}) ≠ χ2({y})")]
    NotFiberwise { y: String, x: String },
    #[error("cocycle for g={element} is missing at ({y}, {x})")]
    MissingCocycle { element: String, y: String, x: String },
    #[error("cocycle for g={element} at ({y}, {x}) has shape {got:?}, expected {expected:?}")]
    CocycleShape {
        element: String,
        y: String,
        x: String,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("cocycle for g={element} at ({y}, {x}) is not invertible")]
    NotInvertible { element: String, y: String, x: String },
    #[error("cocycle of the identity at ({y}, {x}) is not the identity")]
    IdentityNotTrivial { y: String, x: String },
    #[error("cocycle law fails for g'={first}, g={second} at ({y}, {x})")]
    CocycleLaw {
        first: String,
        second: String,
        y: String,
        x: String,
    },
    #[error("intertwiners are not parallel")]
    NotParallel,
    #[error("intertwiners are not composable")]
    NotComposable,
    #[error("2-intertwiner rule fails for g={element} at ({y}, {x})")]
    TwoIntertwinerRule { element: String, y: String, x: String },
    #[error("point ({y}, {x}) is not in the support of the family")]
    OffSupport { y: String, x: String },
    #[error("representation is not indecomposable")]
    NotTransitive,
    #[error("representations live over different orbits in H*")]
    DifferentOrbits,
}

type Result<T, E = RepTheoryError> = std::result::Result<T, E>;

/// `(X, ◁, χ)` with `χ` given by indices into the dual group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    two_group: SkeletalTwoGroup,
    action: GAction,
    chi: Vec<usize>,
}

pub fn make_representation(two_group: SkeletalTwoGroup, action: GAction, chi: Vec<usize>) -> Result<Representation> {
    if action.group() != two_group.g() {
        return Err(RepTheoryError::WrongGroup);
    }
    if chi.len() != action.space().len() {
        return Err(RepTheoryError::ChiLength {
            expected: action.space().len(),
            got: chi.len(),
        });
    }
    if let Some(&bad) = chi.iter().find(|&&c| c >= two_group.h().order()) {
        return Err(RepTheoryError::UnknownCharacter(bad));
    }
    let dual = two_group.character_action();
    for x in 0..chi.len() {
        for g in two_group.g().elements() {
            if chi[action.act(x, g)] != dual.act(chi[x], g) {
                return Err(RepTheoryError::NotEquivariantChi {
                    point: action.space().label(x).to_string(),
                    element: two_group.g().name(g).to_string(),
                });
            }
        }
    }
    Ok(Representation { two_group, action, chi })
}

impl Representation {
    /// The representation on the empty space.
    pub fn null(two_group: SkeletalTwoGroup) -> Self {
        let action = GAction::trivial(two_group.g().clone(), FiniteSpace::empty());
        Self {
            two_group,
            action,
            chi: Vec::new(),
        }
    }

    pub fn two_group(&self) -> &SkeletalTwoGroup {
        &self.two_group
    }

    pub fn group(&self) -> &FiniteGroup {
        self.two_group.g()
    }

    pub fn action(&self) -> &GAction {
        &self.action
    }

    pub fn space(&self) -> &FiniteSpace {
        self.action.space()
    }

    pub fn chi(&self) -> &[usize] {
        &self.chi
    }

    pub fn character_at(&self, x: usize) -> Character {
        self.two_group.dual()[self.chi[x]].clone()
    }

    /// `ρ(g)`: the pullback along `x ↦ x·g`.
    pub fn morphism(&self, g: usize) -> MatrixFunctor {
        pullback_functor(&self.translation(g))
    }

    pub fn translation(&self, g: usize) -> Pullback {
        let map = (0..self.space().len()).map(|x| self.action.act(x, g)).collect();
        Pullback::new(self.space().clone(), self.space().clone(), map).expect("group elements act bijectively")
    }

    /// `ρ(g, h)`: the scalar 2-automorphism `x ↦ χ(x)[h]` on `ρ(g)`.
    pub fn two_morphism(&self, g: usize, h: usize) -> MatrixNatTrans {
        let dual = self.two_group.dual();
        let scalars: Vec<Complex64> = self.chi.iter().map(|&c| dual[c].value(self.two_group.h(), h)).collect();
        scalar_2auto(&self.translation(g), &scalars).expect("characters never vanish")
    }
}

/// An equivariant, fiber-preserving bijection `f: Y → X` from `ρ2` on `Y` to `ρ1` on `X`.
pub fn rep_equivalent(rho1: &Representation, rho2: &Representation) -> Option<Vec<usize>> {
    if rho1.two_group != rho2.two_group || rho1.space().len() != rho2.space().len() {
        return None;
    }
    let orbits_x = rho1.action.orbits();
    let orbits_y = rho2.action.orbits();
    if orbits_x.len() != orbits_y.len() {
        return None;
    }
    let mut f = vec![usize::MAX; rho2.space().len()];
    let mut used = vec![false; orbits_x.len()];
    match_orbits(rho1, rho2, &orbits_x, &orbits_y, 0, &mut used, &mut f).then_some(f)
}

fn match_orbits(
    rho1: &Representation,
    rho2: &Representation,
    orbits_x: &[Vec<usize>],
    orbits_y: &[Vec<usize>],
    i: usize,
    used: &mut [bool],
    f: &mut [usize],
) -> bool {
    if i == orbits_y.len() {
        return true;
    }
    let y0 = orbits_y[i][0];
    let stab_y = rho2.action.stabilizer(y0);
    for (j, orbit) in orbits_x.iter().enumerate() {
        if used[j] || orbit.len() != orbits_y[i].len() {
            continue;
        }
        for &x in orbit {
            if rho1.chi[x] != rho2.chi[y0] || rho1.action.stabilizer(x) != stab_y {
                continue;
            }
            for g in rho2.group().elements() {
                f[rho2.action.act(y0, g)] = rho1.action.act(x, g);
            }
            used[j] = true;
            if match_orbits(rho1, rho2, orbits_x, orbits_y, i + 1, used, f) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}

/// Nonempty and transitive.
pub fn is_indecomposable_rep(rho: &Representation) -> bool {
    rho.action.is_transitive()
}

/// `χ` is a bijection onto a single `G`-orbit in `H*`.
pub fn is_irretractable_rep(rho: &Representation) -> bool {
    if rho.space().is_empty() {
        return false;
    }
    let image: BTreeSet<usize> = rho.chi.iter().copied().collect();
    if image.len() != rho.chi.len() {
        return false;
    }
    let orbit: BTreeSet<usize> = rho.two_group.character_action().orbit_of(rho.chi[0]).into_iter().collect();
    image == orbit
}

/// Restriction to a `G`-invariant subset, with points in increasing order.
pub fn restrict_rep(rho: &Representation, subset: &[usize]) -> Representation {
    let mut points = subset.to_vec();
    points.sort_unstable();
    let mut position = vec![usize::MAX; rho.space().len()];
    for (i, &x) in points.iter().enumerate() {
        position[x] = i;
    }
    let labels: Vec<String> = points.iter().map(|&x| rho.space().label(x).to_string()).collect();
    let space = FiniteSpace::new(labels).expect("subset of distinct labels");
    let table = points
        .iter()
        .map(|&x| rho.group().elements().map(|g| position[rho.action.act(x, g)]).collect())
        .collect();
    let action = GAction::new(rho.group().clone(), space, table).expect("subset is invariant");
    Representation {
        two_group: rho.two_group.clone(),
        action,
        chi: points.iter().map(|&x| rho.chi[x]).collect(),
    }
}

/// `ρ ⊞ ρ'` on `X ⊔ X'`.
pub fn two_sum_reps(rho: &Representation, rho2: &Representation) -> Result<Representation> {
    if rho.two_group != rho2.two_group {
        return Err(RepTheoryError::DifferentTwoGroups);
    }
    let n = rho.space().len();
    let space = FiniteSpace::disjoint_union(rho.space(), rho2.space());
    let mut table: Vec<Vec<usize>> = rho.action.table().to_vec();
    table.extend(rho2.action.table().iter().map(|row| row.iter().map(|&x| n + x).collect()));
    let action = GAction::new(rho.group().clone(), space, table)?;
    let chi = rho.chi.iter().chain(&rho2.chi).copied().collect();
    Ok(Representation {
        two_group: rho.two_group.clone(),
        action,
        chi,
    })
}

/// One class of indecomposable representations: the orbit through a
/// character and a subgroup of its stabilizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndecomposableClass {
    pub character: usize,
    pub subgroup: Vec<usize>,
    pub representation: Representation,
}

/// `G/S` with `χ(S g) = χ_o · g`.
pub fn coset_representation(two_group: &SkeletalTwoGroup, character: usize, subgroup: &[usize]) -> Representation {
    let g = two_group.g();
    let (action, cosets) = GAction::on_cosets(g.clone(), subgroup, "S");
    let dual = two_group.character_action();
    let chi = cosets.iter().map(|c| dual.act(character, c[0])).collect();
    make_representation(two_group.clone(), action, chi).expect("subgroup fixes the character")
}

/// One representative per `G`-orbit in `H*` and per conjugacy class of
/// subgroups of the orbit's stabilizer.
pub fn classify_indecomposables(two_group: &SkeletalTwoGroup) -> Vec<IndecomposableClass> {
    let dual = two_group.character_action();
    let mut out = Vec::new();
    for orbit in dual.orbits() {
        let character = orbit[0];
        let stabilizer = dual.stabilizer(character);
        for subgroup in two_group.g().subgroup_classes_within(&stabilizer) {
            let representation = coset_representation(two_group, character, &subgroup);
            out.push(IndecomposableClass {
                character,
                subgroup,
                representation,
            });
        }
    }
    out
}

/// One representation per `G`-orbit in `H*`: the orbit itself with `χ` the inclusion.
pub fn classify_irretractables(two_group: &SkeletalTwoGroup) -> Vec<Representation> {
    let dual = two_group.character_action();
    let everything = Representation {
        two_group: two_group.clone(),
        chi: (0..dual.space().len()).collect(),
        action: dual.clone(),
    };
    dual.orbits().iter().map(|orbit| restrict_rep(&everything, orbit)).collect()
}

/// Cocycle table `[g][y·|X| + x]`, present exactly on the support.
pub type Cocycle = Vec<Vec<Option<CMatrix>>>;

/// `(μ, φ, Φ)`: a matrix functor `X → Y` with its cocycle.
#[derive(Debug, Clone, PartialEq)]
pub struct Intertwiner {
    source: Representation,
    target: Representation,
    functor: MatrixFunctor,
    cocycle: Cocycle,
}

struct Labels<'a> {
    g: &'a FiniteGroup,
    ys: &'a FiniteSpace,
    xs: &'a FiniteSpace,
    nx: usize,
}

impl Labels<'_> {
    fn element(&self, g: usize) -> String {
        self.g.name(g).to_string()
    }

    fn y(&self, p: usize) -> String {
        self.ys.label(p / self.nx).to_string()
    }

    fn x(&self, p: usize) -> String {
        self.xs.label(p % self.nx).to_string()
    }
}

/// Validates every condition; entries of `cocycle` off the support are ignored.
pub fn make_intertwiner(
    source: &Representation,
    target: &Representation,
    functor: MatrixFunctor,
    cocycle: Cocycle,
) -> Result<Intertwiner> {
    if source.two_group != target.two_group {
        return Err(RepTheoryError::DifferentTwoGroups);
    }
    if functor.source_space() != source.space() || functor.target_space() != target.space() {
        return Err(RepTheoryError::SpaceMismatch);
    }
    let g = source.group();
    let nx = source.space().len();
    let labels = Labels {
        g,
        ys: target.space(),
        xs: source.space(),
        nx,
    };
    if let Some((y, el)) = measure::equivariance_witness(functor.measures(), target.action(), source.action())
        .map_err(MeasError::from)?
    {
        return Err(RepTheoryError::NotEquivariant {
            y: target.space().label(y).to_string(),
            element: g.name(el).to_string(),
        });
    }
    let support = functor.measures().support_pairs();
    for &(y, x) in &support {
        if source.chi[x] != target.chi[y] {
            return Err(RepTheoryError::NotFiberwise {
                y: target.space().label(y).to_string(),
                x: source.space().label(x).to_string(),
            });
        }
    }
    if cocycle.len() != g.order() || cocycle.iter().any(|row| row.len() != target.space().len() * nx) {
        return Err(RepTheoryError::SpaceMismatch);
    }
    let diagonal = target.action().product(source.action());
    let mut canonical: Cocycle = vec![vec![None; target.space().len() * nx]; g.order()];
    for el in g.elements() {
        let back = g.inv(el);
        for &(y, x) in &support {
            let p = y * nx + x;
            let q = diagonal.act(p, back);
            let m = cocycle[el][p].as_ref().ok_or_else(|| RepTheoryError::MissingCocycle {
                element: labels.element(el),
                y: labels.y(p),
                x: labels.x(p),
            })?;
            let expected = (functor.dim(q / nx, q % nx), functor.dim(y, x));
            if m.shape() != expected {
                return Err(RepTheoryError::CocycleShape {
                    element: labels.element(el),
                    y: labels.y(p),
                    x: labels.x(p),
                    expected,
                    got: m.shape(),
                });
            }
            if !linalg::is_invertible(m) {
                return Err(RepTheoryError::NotInvertible {
                    element: labels.element(el),
                    y: labels.y(p),
                    x: labels.x(p),
                });
            }
            canonical[el][p] = Some(m.clone());
        }
    }
    let phi = Intertwiner {
        source: source.clone(),
        target: target.clone(),
        functor,
        cocycle: canonical,
    };
    phi.check_cocycle_law(&diagonal, &labels)?;
    Ok(phi)
}

impl Intertwiner {
    fn check_cocycle_law(&self, diagonal: &GAction, labels: &Labels) -> Result<()> {
        let g = self.source.group();
        for p in self.support_indices() {
            let id = linalg::identity(self.functor.dim(p / labels.nx, p % labels.nx));
            if !linalg::approx_eq(self.cell(0, p), &id, EQ_TOL) {
                return Err(RepTheoryError::IdentityNotTrivial {
                    y: labels.y(p),
                    x: labels.x(p),
                });
            }
            for second in g.elements() {
                let q = diagonal.act(p, g.inv(second));
                for first in g.elements() {
                    let lhs = self.cell(g.mul(first, second), p);
                    let rhs = self.cell(first, q) * self.cell(second, p);
                    if !linalg::approx_eq(lhs, &rhs, EQ_TOL * (1.0 + linalg::max_abs(&rhs))) {
                        return Err(RepTheoryError::CocycleLaw {
                            first: labels.element(first),
                            second: labels.element(second),
                            y: labels.y(p),
                            x: labels.x(p),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The identity intertwiner of `ρ`.
    pub fn identity(rho: &Representation) -> Self {
        let functor = MatrixFunctor::identity(rho.space().clone());
        Self::with_unit_cocycle(rho, rho, functor)
    }

    /// The null intertwiner `ρ1 → ρ2`.
    pub fn null(source: &Representation, target: &Representation) -> Self {
        let functor = MatrixFunctor::zero(target.space().clone(), source.space().clone());
        Self::with_unit_cocycle(source, target, functor)
    }

    /// The invertible intertwiner given by an equivalence `f: Y → X` of representations.
    pub fn from_equivalence(source: &Representation, target: &Representation, f: &[usize]) -> Result<Self> {
        let bijection = Pullback::new(target.space().clone(), source.space().clone(), f.to_vec())?;
        let functor = pullback_functor(&bijection);
        let phi = Self::with_unit_cocycle(source, target, functor);
        let cocycle = phi.cocycle.clone();
        make_intertwiner(source, target, phi.functor, cocycle)
    }

    fn with_unit_cocycle(source: &Representation, target: &Representation, functor: MatrixFunctor) -> Self {
        let nx = source.space().len();
        let mut row = vec![None; target.space().len() * nx];
        for (y, x) in functor.measures().support_pairs() {
            row[y * nx + x] = Some(linalg::identity(functor.dim(y, x)));
        }
        Self {
            source: source.clone(),
            target: target.clone(),
            functor,
            cocycle: vec![row; source.group().order()],
        }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn functor(&self) -> &MatrixFunctor {
        &self.functor
    }

    pub fn measures(&self) -> &MeasureFamily {
        self.functor.measures()
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn is_null(&self) -> bool {
        self.functor.is_zero()
    }

    fn nx(&self) -> usize {
        self.source.space().len()
    }

    fn support_indices(&self) -> Vec<usize> {
        let nx = self.nx();
        self.functor
            .measures()
            .support_pairs()
            .into_iter()
            .map(|(y, x)| y * nx + x)
            .collect()
    }

    fn cell(&self, g: usize, p: usize) -> &CMatrix {
        self.cocycle[g][p].as_ref().expect("cocycle present on the support")
    }

    /// `Φ^g_{(y,x)}`, or `None` off the support.
    pub fn cocycle_at(&self, g: usize, y: usize, x: usize) -> Option<&CMatrix> {
        self.cocycle[g][y * self.nx() + x].as_ref()
    }

    /// `(Φ^{g⁻¹}_{(y,x)·g⁻¹})` read from the table, which equals `(Φ^g_{(y,x)})⁻¹`.
    pub fn inverse_cocycle_at(&self, g: usize, y: usize, x: usize) -> Option<&CMatrix> {
        let grp = self.source.group();
        let q = self.diagonal().act(y * self.nx() + x, grp.inv(g));
        self.cocycle[grp.inv(g)][q].as_ref()
    }

    /// The diagonal action on `Y × X`.
    pub fn diagonal(&self) -> GAction {
        self.target.action().product(self.source.action())
    }

    /// `φ(g): ρ2(g)∘φ ⇒ φ∘ρ1(g)`, with cell `Φ^g_{(y·g, x)}` at `(y, x)`.
    pub fn component(&self, g: usize) -> Result<MatrixNatTrans> {
        let src = compose_functors(&self.target.morphism(g), &self.functor)?;
        let tgt = compose_functors(&self.functor, &self.source.morphism(g))?;
        let nx = self.nx();
        Ok(MatrixNatTrans::from_fn(src, tgt, |y, x| {
            self.cell(g, self.target.action().act(y, g) * nx + x).clone()
        })?)
    }

    /// Orbits of the support under the diagonal action, each sorted.
    pub fn support_orbits(&self) -> Vec<Vec<usize>> {
        let diagonal = self.diagonal();
        let support: BTreeSet<usize> = self.support_indices().into_iter().collect();
        diagonal
            .orbits()
            .into_iter()
            .filter(|o| support.contains(&o[0]))
            .collect()
    }
}

/// Cocycle from the components `ξ(g)`: `Ξ^g_{(z,x)} = ξ(g)_{(z·g⁻¹, x)}`.
fn cocycle_from_components(
    target: &Representation,
    functor: &MatrixFunctor,
    components: &[MatrixNatTrans],
) -> Cocycle {
    let g = target.group();
    let nx = functor.source_space().len();
    let mut cocycle = vec![vec![None; functor.target_space().len() * nx]; g.order()];
    for (el, xi) in components.iter().enumerate() {
        for (z, x) in functor.measures().support_pairs() {
            let zb = target.action().act(z, g.inv(el));
            cocycle[el][z * nx + x] = Some(xi.cell_or_zero(zb, x));
        }
    }
    cocycle
}

/// `ψ φ` for `φ: ρ1 → ρ2` and `ψ: ρ2 → ρ3`.
///
/// The component at `g` is the pasting of `ψ(g)` and `φ(g)` along the
/// associators of the three-fold composites.
pub fn compose_intertwiners(psi: &Intertwiner, phi: &Intertwiner) -> Result<Intertwiner> {
    if psi.source != phi.target {
        return Err(RepTheoryError::NotComposable);
    }
    let (rho1, rho2, rho3) = (&phi.source, &phi.target, &psi.target);
    let composite = compose_functors(&psi.functor, &phi.functor)?;
    let mut components = Vec::with_capacity(rho1.group().order());
    for g in rho1.group().elements() {
        let (r1, r2, r3) = (rho1.morphism(g), rho2.morphism(g), rho3.morphism(g));
        let a1 = composition_associator(&r3, &psi.functor, &phi.functor)?.adjoint();
        let left = whisker(&psi.component(g)?, &phi.functor, Side::Right)?;
        let a2 = composition_associator(&psi.functor, &r2, &phi.functor)?;
        let right = whisker(&phi.component(g)?, &psi.functor, Side::Left)?;
        let a3 = composition_associator(&psi.functor, &phi.functor, &r1)?.adjoint();
        let xi = [left, a2, right, a3]
            .iter()
            .try_fold(a1, |acc, step| vertical_compose(step, &acc))?;
        components.push(xi);
    }
    let cocycle = cocycle_from_components(rho3, &composite, &components);
    make_intertwiner(rho1, rho3, composite, cocycle)
}

/// `φ ⊕ φ'` for parallel intertwiners.
pub fn direct_sum_intertwiners(phi: &Intertwiner, phi2: &Intertwiner) -> Result<Intertwiner> {
    if phi.source != phi2.source || phi.target != phi2.target {
        return Err(RepTheoryError::NotParallel);
    }
    let functor = meas2cat::direct_sum_functors(&phi.functor, &phi2.functor)?;
    let nx = phi.nx();
    let diagonal = phi.diagonal();
    let grp = phi.source.group();
    let mut cocycle = vec![vec![None; functor.target_space().len() * nx]; grp.order()];
    for (y, x) in functor.measures().support_pairs() {
        let p = y * nx + x;
        for g in grp.elements() {
            let q = diagonal.act(p, grp.inv(g));
            let blocks: Vec<CMatrix> = [phi, phi2]
                .iter()
                .filter_map(|f| f.cocycle[g][p].clone())
                .collect();
            debug_assert_eq!(linalg::block_diag(&blocks).nrows(), functor.dim(q / nx, q % nx));
            cocycle[g][p] = Some(linalg::block_diag(&blocks));
        }
    }
    make_intertwiner(&phi.source, &phi.target, functor, cocycle)
}

/// `φ ⊞ φ'`: `ρ1 ⊞ ρ1' → ρ2 ⊞ ρ2'`, block diagonal.
pub fn two_sum_intertwiners(phi: &Intertwiner, phi2: &Intertwiner) -> Result<Intertwiner> {
    let source = two_sum_reps(&phi.source, &phi2.source)?;
    let target = two_sum_reps(&phi.target, &phi2.target)?;
    let functor = meas2cat::two_sum_functors(&phi.functor, &phi2.functor);
    let (ny, nx, nx2) = (phi.target.space().len(), phi.nx(), phi2.nx());
    let n = nx + nx2;
    let grp = source.group();
    let mut cocycle = vec![vec![None; functor.target_space().len() * n]; grp.order()];
    for g in grp.elements() {
        for (y, x) in functor.measures().support_pairs() {
            cocycle[g][y * n + x] = if y < ny {
                phi.cocycle[g][y * nx + x].clone()
            } else {
                phi2.cocycle[g][(y - ny) * nx2 + (x - nx)].clone()
            };
        }
    }
    make_intertwiner(&source, &target, functor, cocycle)
}

/// The supporting diagonal orbit when the support is a single orbit.
pub fn is_transitive_intertwiner(phi: &Intertwiner) -> Option<Vec<usize>> {
    let orbits = phi.support_orbits();
    (orbits.len() == 1).then(|| orbits.into_iter().next().expect("one orbit"))
}

/// `s ↦ Φ^s_{(y,x)}` on the diagonal stabilizer.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerRep {
    /// Stabilizer elements in `G`, sorted; position `i` is element `i` of `rep`'s group.
    pub elements: Vec<usize>,
    pub rep: GroupRep,
}

pub fn stabilizer_representation(phi: &Intertwiner, y: usize, x: usize) -> Result<StabilizerRep> {
    let p = y * phi.nx() + x;
    if phi.cocycle[0][p].is_none() {
        return Err(RepTheoryError::OffSupport {
            y: phi.target.space().label(y).to_string(),
            x: phi.source.space().label(x).to_string(),
        });
    }
    let elements = phi.diagonal().stabilizer(p);
    let (group, _) = phi.source.group().subgroup_as_group(&elements).expect("stabilizer is a subgroup");
    let matrices = elements.iter().map(|&s| phi.cell(s, p).clone()).collect();
    let rep = GroupRep::new(group, phi.functor.dim(y, x), matrices)?;
    Ok(StabilizerRep { elements, rep })
}

/// A field `m_{(y,x)}: φ_{(y,x)} → ψ_{(y,x)}` with `Ψ^g m = m_{·g⁻¹} Φ^g`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoIntertwiner {
    source: Intertwiner,
    target: Intertwiner,
    cells: MatrixNatTrans,
}

impl TwoIntertwiner {
    pub fn new(source: &Intertwiner, target: &Intertwiner, cells: MatrixNatTrans) -> Result<Self> {
        if source.source != target.source || source.target != target.target {
            return Err(RepTheoryError::NotParallel);
        }
        if cells.source() != &source.functor || cells.target() != &target.functor {
            return Err(RepTheoryError::SpaceMismatch);
        }
        let m = Self {
            source: source.clone(),
            target: target.clone(),
            cells,
        };
        m.check_rule()?;
        Ok(m)
    }

    fn check_rule(&self) -> Result<()> {
        let (phi, psi) = (&self.source, &self.target);
        let grp = phi.source.group();
        let nx = phi.nx();
        let diagonal = phi.diagonal();
        for (y, x) in self.cells.support() {
            let p = y * nx + x;
            for g in grp.elements() {
                let q = diagonal.act(p, grp.inv(g));
                let m_p = self.cells.cell(y, x).expect("support");
                let m_q = self.cells.cell(q / nx, q % nx).expect("support is invariant");
                let lhs = psi.cell(g, p) * m_p;
                let rhs = m_q * phi.cell(g, p);
                let scale = 1.0 + linalg::max_abs(&lhs).max(linalg::max_abs(&rhs));
                if !linalg::approx_eq(&lhs, &rhs, 1e-8 * scale) {
                    return Err(RepTheoryError::TwoIntertwinerRule {
                        element: grp.name(g).to_string(),
                        y: phi.target.space().label(y).to_string(),
                        x: phi.source.space().label(x).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn identity(phi: &Intertwiner) -> Self {
        Self {
            source: phi.clone(),
            target: phi.clone(),
            cells: MatrixNatTrans::identity(&phi.functor),
        }
    }

    pub fn source(&self) -> &Intertwiner {
        &self.source
    }

    pub fn target(&self) -> &Intertwiner {
        &self.target
    }

    pub fn cells(&self) -> &MatrixNatTrans {
        &self.cells
    }

    pub fn is_invertible(&self) -> bool {
        meas2cat::is_invertible_2mor(&self.cells).is_some()
    }

    pub fn inverse(&self) -> Option<Self> {
        let cells = meas2cat::is_invertible_2mor(&self.cells)?;
        Some(Self {
            source: self.target.clone(),
            target: self.source.clone(),
            cells,
        })
    }
}

/// `n · m`.
pub fn vcompose_2int(n: &TwoIntertwiner, m: &TwoIntertwiner) -> Result<TwoIntertwiner> {
    if m.target != n.source {
        return Err(RepTheoryError::NotComposable);
    }
    let cells = vertical_compose(&n.cells, &m.cells)?;
    TwoIntertwiner::new(&m.source, &n.target, cells)
}

/// `n ∘ m` for `m: φ ⇒ φ'` over `ρ1 → ρ2` and `n: ψ ⇒ ψ'` over `ρ2 → ρ3`.
pub fn hcompose_2int(n: &TwoIntertwiner, m: &TwoIntertwiner) -> Result<TwoIntertwiner> {
    if n.source.source != m.source.target {
        return Err(RepTheoryError::NotComposable);
    }
    let source = compose_intertwiners(&n.source, &m.source)?;
    let target = compose_intertwiners(&n.target, &m.target)?;
    let cells = meas2cat::horizontal_compose(&n.cells, &m.cells)?;
    TwoIntertwiner::new(&source, &target, cells)
}

/// A basis of the space of 2-intertwiners `φ ⇒ ψ`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomSpace {
    pub basis: Vec<TwoIntertwiner>,
    /// For each basis element, the supporting orbit index into `orbits`.
    pub orbit_of: Vec<usize>,
    /// Diagonal orbits of the common support, each sorted.
    pub orbits: Vec<Vec<usize>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solutions `m_o` of the stabilizer equations at the basepoint of each orbit.
fn orbit_solutions(phi: &Intertwiner, psi: &Intertwiner, p: usize) -> Vec<CMatrix> {
    let nx = phi.nx();
    let (a, b) = (phi.functor.dim(p / nx, p % nx), psi.functor.dim(p / nx, p % nx));
    let stabilizer = phi.diagonal().stabilizer(p);
    let (ida, idb) = (linalg::identity(a), linalg::identity(b));
    let n = a * b;
    let mut system = linalg::zeros(stabilizer.len() * n, n);
    for (i, &s) in stabilizer.iter().enumerate() {
        // vec(Ψ m − m Φ) = (I ⊗ Ψ − Φᵀ ⊗ I) vec(m)
        let block = linalg::kron(&ida, psi.cell(s, p)) - linalg::kron(&phi.cell(s, p).transpose(), &idb);
        system.view_mut((i * n, 0), (n, n)).copy_from(&block);
    }
    let basis = linalg::nullspace(&system);
    (0..basis.ncols())
        .map(|j| linalg::unvectorize(basis.column(j).as_slice(), b, a))
        .collect()
}

/// Extends a basepoint solution along its orbit by the cocycles.
fn transport(phi: &Intertwiner, psi: &Intertwiner, orbit: &[usize], m0: &CMatrix) -> Vec<(usize, CMatrix)> {
    let diagonal = phi.diagonal();
    let p = orbit[0];
    orbit
        .iter()
        .map(|&q| {
            // q·k = p, so q = p·k⁻¹ and m_q = Ψ^k_p m_p (Φ^k_p)⁻¹.
            let k = diagonal.transporter(q, p).expect("same orbit");
            let inv = linalg::inverse(phi.cell(k, p)).expect("cocycle is invertible");
            (q, psi.cell(k, p) * m0 * inv)
        })
        .collect()
}

fn common_orbits(phi: &Intertwiner, psi: &Intertwiner) -> Vec<Vec<usize>> {
    let other: BTreeSet<usize> = psi.support_indices().into_iter().collect();
    phi.support_orbits()
        .into_iter()
        .filter(|o| other.contains(&o[0]))
        .collect()
}

fn assemble(phi: &Intertwiner, psi: &Intertwiner, entries: Vec<(usize, CMatrix)>) -> Result<MatrixNatTrans> {
    let nx = phi.nx();
    let mut table: Vec<Option<CMatrix>> = vec![None; phi.target.space().len() * nx];
    for (q, m) in entries {
        table[q] = Some(m);
    }
    Ok(MatrixNatTrans::from_fn(phi.functor.clone(), psi.functor.clone(), |y, x| {
        table[y * nx + x].clone().unwrap_or_else(|| linalg::zeros(psi.functor.dim(y, x), phi.functor.dim(y, x)))
    })?)
}

pub fn hom_2intertwiners(phi: &Intertwiner, psi: &Intertwiner) -> Result<HomSpace> {
    if phi.source != psi.source || phi.target != psi.target {
        return Err(RepTheoryError::NotParallel);
    }
    let orbits = common_orbits(phi, psi);
    let mut basis = Vec::new();
    let mut orbit_of = Vec::new();
    for (i, orbit) in orbits.iter().enumerate() {
        for m0 in orbit_solutions(phi, psi, orbit[0]) {
            let cells = assemble(phi, psi, transport(phi, psi, orbit, &m0))?;
            basis.push(TwoIntertwiner::new(phi, psi, cells)?);
            orbit_of.push(i);
        }
    }
    Ok(HomSpace {
        basis,
        orbit_of,
        orbits,
    })
}

/// An invertible 2-intertwiner `φ ⇒ ψ` when one exists.
///
/// Stabilizer characters are compared first; the linear system is then solved
/// orbit by orbit and a generic combination of each orbit's solutions is tested
/// for invertibility.
pub fn intertwiner_equivalent(phi: &Intertwiner, psi: &Intertwiner) -> Result<Option<TwoIntertwiner>> {
    if phi.source != psi.source || phi.target != psi.target {
        return Err(RepTheoryError::NotParallel);
    }
    for y in 0..phi.target.space().len() {
        if !measure::equivalent(phi.measures().member(y), psi.measures().member(y)) {
            return Ok(None);
        }
    }
    let orbits = phi.support_orbits();
    let nx = phi.nx();
    for orbit in &orbits {
        let p = orbit[0];
        let (y, x) = (p / nx, p % nx);
        let r1 = stabilizer_representation(phi, y, x)?;
        let r2 = stabilizer_representation(psi, y, x)?;
        if !grouprep::characters_agree(&r1.rep, &r2.rep) {
            return Ok(None);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xe9_u64);
    let mut entries = Vec::new();
    for orbit in &orbits {
        let solutions = orbit_solutions(phi, psi, orbit[0]);
        let mut chosen = None;
        for _attempt in 0..6 {
            let mut m = linalg::zeros(solutions.first().map_or(0, |s| s.nrows()), solutions.first().map_or(0, |s| s.ncols()));
            for s in &solutions {
                m += s * linalg::c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            if !solutions.is_empty() && linalg::is_invertible(&m) {
                chosen = Some(m);
                break;
            }
        }
        let Some(m0) = chosen else {
            return Ok(None);
        };
        entries.extend(transport(phi, psi, orbit, &m0));
    }
    let cells = assemble(phi, psi, entries)?;
    let m = TwoIntertwiner::new(phi, psi, cells)?;
    Ok(m.is_invertible().then_some(m))
}

/// Reduction flags, each decided by its own criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ReductionStatus {
    pub indecomposable: bool,
    pub irretractable: bool,
    pub irreducible: bool,
}

/// Null or non-minimal families fail all three. For a transitive intertwiner
/// the stabilizer representation at the basepoint decides: indecomposable when
/// its commutant is one-dimensional, irretractable when its character is a
/// single row of the character table, irreducible when `⟨χ, χ⟩ = 1`.
pub fn intertwiner_reduction_status(phi: &Intertwiner) -> Result<ReductionStatus> {
    let none = ReductionStatus {
        indecomposable: false,
        irretractable: false,
        irreducible: false,
    };
    if phi.is_null() {
        return Ok(none);
    }
    let minimal = measure::is_minimal_family(phi.measures(), phi.target.action(), phi.source.action())
        .map_err(MeasError::from)?;
    if !minimal {
        return Ok(none);
    }
    let orbit = is_transitive_intertwiner(phi).expect("minimal families are transitive");
    let nx = phi.nx();
    let stab = stabilizer_representation(phi, orbit[0] / nx, orbit[0] % nx)?;
    let indecomposable = stab.rep.commutant().len() == 1;
    let table = grouprep::irreducible_characters(stab.rep.group())?;
    let chi = stab.rep.character();
    let order = stab.rep.group().order();
    let multiplicities: Vec<f64> = (0..table.degrees.len())
        .map(|i| grouprep::character_inner(stab.rep.group(), &chi, &table.elementwise(i, order)).re)
        .collect();
    let irretractable = multiplicities.iter().filter(|m| m.abs() > CHAR_TOL).count() == 1
        && multiplicities.iter().any(|m| (m - 1.0).abs() < CHAR_TOL);
    let irreducible = grouprep::is_irreducible_grouprep(&stab.rep);
    Ok(ReductionStatus {
        indecomposable,
        irretractable,
        irreducible,
    })
}

/// The transitive intertwiner on one diagonal orbit with unit weights, fiber
/// `dim R`, and `Φ^g_u = R(σ(u·g⁻¹) g σ(u)⁻¹)`, where `σ(u)` is the smallest
/// element carrying the basepoint to `u`.
pub fn canonical_transitive_intertwiner(
    source: &Representation,
    target: &Representation,
    orbit: &[usize],
    rep: &GroupRep,
) -> Result<Intertwiner> {
    let nx = source.space().len();
    let ny = target.space().len();
    let grp = source.group();
    let diagonal = target.action().product(source.action());
    let base = orbit[0];
    let stabilizer = diagonal.stabilizer(base);
    let mut position = vec![usize::MAX; grp.order()];
    for (i, &s) in stabilizer.iter().enumerate() {
        position[s] = i;
    }
    let section: Vec<usize> = (0..ny * nx)
        .map(|u| diagonal.transporter(base, u).unwrap_or(usize::MAX))
        .collect();
    let d = rep.dim();
    let in_orbit: BTreeSet<usize> = orbit.iter().copied().collect();
    let mut rows = vec![vec![0i64; nx]; ny];
    let mut dims = vec![0; ny * nx];
    for &u in orbit {
        rows[u / nx][u % nx] = 1;
        dims[u] = d;
    }
    let measures = MeasureFamily::from_integer_rows(target.space().clone(), source.space().clone(), &rows)
        .map_err(MeasError::from)?;
    let field = HilbertField::new(target.space().clone(), source.space().clone(), dims)?;
    let functor = MatrixFunctor::new(field, measures)?;
    let mut cocycle = vec![vec![None; ny * nx]; grp.order()];
    for g in grp.elements() {
        for &u in &in_orbit {
            let v = diagonal.act(u, grp.inv(g));
            let s = grp.mul(grp.mul(section[v], g), grp.inv(section[u]));
            cocycle[g][u] = Some(rep.matrix(position[s]).clone());
        }
    }
    make_intertwiner(source, target, functor, cocycle)
}

/// One class of irreducible transitive intertwiners.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitiveClass {
    /// Supporting diagonal orbit in `Y × X`, sorted pair indices.
    pub orbit: Vec<usize>,
    /// Diagonal stabilizer of the basepoint `orbit[0]`.
    pub stabilizer: Vec<usize>,
    pub rep: GroupRep,
    pub intertwiner: Intertwiner,
}

/// Fiberwise diagonal orbits in `Y × X`, each sorted.
pub fn fiberwise_orbits(source: &Representation, target: &Representation) -> Vec<Vec<usize>> {
    let nx = source.space().len();
    target
        .action()
        .product(source.action())
        .orbits()
        .into_iter()
        .filter(|o| source.chi[o[0] % nx] == target.chi[o[0] / nx])
        .collect()
}

/// Irreducible transitive intertwiners `ρ1 → ρ2` between indecomposable
/// representations over one orbit of `H*`: a fiberwise diagonal orbit together
/// with an irreducible representation of its stabilizer.
///
/// Over the complex numbers every transitive intertwiner splits into these, so
/// `irreducible_only = false` yields the same list.
pub fn classify_transitive_intertwiners(
    rho1: &Representation,
    rho2: &Representation,
    irreducible_only: bool,
) -> Result<Vec<TransitiveClass>> {
    let _ = irreducible_only;
    if rho1.two_group != rho2.two_group {
        return Err(RepTheoryError::DifferentTwoGroups);
    }
    if !is_indecomposable_rep(rho1) || !is_indecomposable_rep(rho2) {
        return Err(RepTheoryError::NotTransitive);
    }
    let dual = rho1.two_group.character_action();
    if !dual.orbit_of(rho1.chi[0]).contains(&rho2.chi[0]) {
        return Err(RepTheoryError::DifferentOrbits);
    }
    let mut out = Vec::new();
    for orbit in fiberwise_orbits(rho1, rho2) {
        let diagonal = rho2.action().product(rho1.action());
        let stabilizer = diagonal.stabilizer(orbit[0]);
        let (sub, _) = rho1.group().subgroup_as_group(&stabilizer).expect("stabilizer is a subgroup");
        let (_, irreps) = grouprep::irreducible_representations(&sub)?;
        for rep in irreps {
            let intertwiner = canonical_transitive_intertwiner(rho1, rho2, &orbit, &rep)?;
            out.push(TransitiveClass {
                orbit: orbit.clone(),
                stabilizer: stabilizer.clone(),
                rep,
                intertwiner,
            });
        }
    }
    Ok(out)
}

/// An equivalent intertwiner whose cocycle is written in the basepoint fiber of
/// each orbit, with the invertible 2-intertwiner `m_u = Φ^{σ(u)}_u` into it.
pub fn trivialize(phi: &Intertwiner) -> Result<(Intertwiner, TwoIntertwiner)> {
    let grp = phi.source.group();
    let diagonal = phi.diagonal();
    let nx = phi.nx();
    let mut alpha: Vec<Option<CMatrix>> = vec![None; phi.target.space().len() * nx];
    let mut cocycle = vec![vec![None; alpha.len()]; grp.order()];
    for orbit in phi.support_orbits() {
        let base = orbit[0];
        for &u in &orbit {
            let sigma = diagonal.transporter(base, u).expect("same orbit");
            alpha[u] = Some(phi.cell(sigma, u).clone());
        }
        for g in grp.elements() {
            for &u in &orbit {
                let v = diagonal.act(u, grp.inv(g));
                let a_v = alpha[v].as_ref().expect("orbit");
                let a_u_inv = linalg::inverse(alpha[u].as_ref().expect("orbit")).expect("cocycle is invertible");
                cocycle[g][u] = Some(a_v * phi.cell(g, u) * a_u_inv);
            }
        }
    }
    let trivial = make_intertwiner(&phi.source, &phi.target, phi.functor.clone(), cocycle)?;
    let cells = MatrixNatTrans::from_fn(phi.functor.clone(), phi.functor.clone(), |y, x| {
        alpha[y * nx + x].clone().expect("support")
    })?;
    let m = TwoIntertwiner::new(phi, &trivial, cells)?;
    Ok((trivial, m))
}
