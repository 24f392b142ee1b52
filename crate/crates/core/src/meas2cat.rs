//! Matrix functors between categories of measurable fields over finite spaces,
//! and matrix natural transformations between them.
//!
//! A functor `X → Y` is a field of dimensions on `Y×X` together with a
//! `Y`-indexed family of measures on `X`. A natural transformation is a field
//! of complex matrices defined on the support of the geometric mean of the two
//! families; it is stored as the canonical representative, i.e. cells exist
//! exactly on that support.
//!
//! Composition rules are applied to the original (unrescaled) cells. Every
//! Radon–Nikodym prefactor is a product of exact square roots of rationals and
//! is only converted to `f64` at the moment it multiplies a matrix.

use num_complex::Complex64;
use num_traits::Zero;

use crate::linalg::{self, CMatrix};
use crate::measure::{self, compose_families, ComposedFamilies, FiniteMeasure, FiniteSpace, MeasureError, MeasureFamily};
use crate::scalar::{rational_sqrt, Rational, SqrtRational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MeasError {
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("spaces do not match")]
    SpaceMismatch,
    #[error("expected {expected} dimensions, got {got}")]
    DimCount { expected: usize, got: usize },
    #[error("measure charges ({y:?}, {x:?}) where the field has dimension zero")]
    NotConcentrated { y: String, x: String },
    #[error("cell at ({y:?}, {x:?}) has shape {got:?}, expected {expected:?}")]
    CellShape {
        y: String,
        x: String,
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("missing cell at ({y:?}, {x:?}) on the geometric-mean support")]
    MissingCell { y: String, x: String },
    #[error("natural transformations do not compose: functor mismatch")]
    NotComposable,
    #[error("map is not a bijection")]
    NotBijection,
    #[error("scalar at {0:?} is zero")]
    ZeroScalar(String),
    #[error("geometric-mean weight at ({y:?}, {x:?}) is irrational")]
    IrrationalWeight { y: String, x: String },
}

/// Dimensions `dim(y, x)` stored row-major at `y·|X| + x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertField {
    index: FiniteSpace,
    base: FiniteSpace,
    dims: Vec<usize>,
}

impl HilbertField {
    pub fn new(index: FiniteSpace, base: FiniteSpace, dims: Vec<usize>) -> Result<Self, MeasError> {
        let expected = index.len() * base.len();
        if dims.len() != expected {
            return Err(MeasError::DimCount {
                expected,
                got: dims.len(),
            });
        }
        Ok(Self { index, base, dims })
    }

    pub fn from_rows(index: FiniteSpace, base: FiniteSpace, rows: &[Vec<usize>]) -> Result<Self, MeasError> {
        if rows.len() != index.len() || rows.iter().any(|r| r.len() != base.len()) {
            return Err(MeasError::DimCount {
                expected: index.len() * base.len(),
                got: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(index, base, rows.concat())
    }

    pub fn index(&self) -> &FiniteSpace {
        &self.index
    }

    pub fn base(&self) -> &FiniteSpace {
        &self.base
    }

    pub fn dim(&self, y: usize, x: usize) -> usize {
        self.dims[y * self.base.len() + x]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
}

/// A matrix functor `X → Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFunctor {
    field: HilbertField,
    measures: MeasureFamily,
}

impl MatrixFunctor {
    /// Validates concentration and zeroes dimensions off the support, so that
    /// equal classes have equal representatives.
    pub fn new(field: HilbertField, measures: MeasureFamily) -> Result<Self, MeasError> {
        if field.index != *measures.index() || field.base != *measures.base() {
            return Err(MeasError::SpaceMismatch);
        }
        let nx = field.base.len();
        let mut field = field;
        for y in 0..field.index.len() {
            for x in 0..nx {
                let charged = measures.charges(y, x);
                if charged && field.dims[y * nx + x] == 0 {
                    return Err(MeasError::NotConcentrated {
                        y: field.index.label(y).to_string(),
                        x: field.base.label(x).to_string(),
                    });
                }
                if !charged {
                    field.dims[y * nx + x] = 0;
                }
            }
        }
        Ok(Self { field, measures })
    }

    /// Identity functor on `H^X`: dimension one on the diagonal with Dirac measures.
    pub fn identity(space: FiniteSpace) -> Self {
        let n = space.len();
        let dims = (0..n * n).map(|p| usize::from(p / n == p % n)).collect();
        Self {
            field: HilbertField {
                index: space.clone(),
                base: space.clone(),
                dims,
            },
            measures: MeasureFamily::dirac(space),
        }
    }

    pub fn zero(target: FiniteSpace, source: FiniteSpace) -> Self {
        let dims = vec![0; target.len() * source.len()];
        Self {
            field: HilbertField {
                index: target.clone(),
                base: source.clone(),
                dims,
            },
            measures: MeasureFamily::zero(target, source),
        }
    }

    pub fn field(&self) -> &HilbertField {
        &self.field
    }

    pub fn measures(&self) -> &MeasureFamily {
        &self.measures
    }

    /// The space `X` of the domain `H^X`.
    pub fn source_space(&self) -> &FiniteSpace {
        &self.field.base
    }

    /// The space `Y` of the codomain `H^Y`.
    pub fn target_space(&self) -> &FiniteSpace {
        &self.field.index
    }

    pub fn dim(&self, y: usize, x: usize) -> usize {
        self.field.dim(y, x)
    }

    pub fn weight(&self, y: usize, x: usize) -> &Rational {
        self.measures.weight(y, x)
    }

    pub fn charges(&self, y: usize, x: usize) -> bool {
        self.measures.charges(y, x)
    }

    pub fn is_zero(&self) -> bool {
        self.measures.is_zero()
    }
}

/// Image of an object of `H^X`, given by its dimension map, under `T`.
pub fn apply_to_object(functor: &MatrixFunctor, object: &[usize]) -> Result<Vec<usize>, MeasError> {
    if object.len() != functor.source_space().len() {
        return Err(MeasError::SpaceMismatch);
    }
    Ok((0..functor.target_space().len())
        .map(|y| {
            functor
                .measures
                .member(y)
                .support()
                .into_iter()
                .map(|x| functor.dim(y, x) * object[x])
                .sum()
        })
        .collect())
}

/// One block `U_{z,y} ⊗ T_{y,x}` inside a composite fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub middle: usize,
    pub offset: usize,
    pub size: usize,
}

/// Block decomposition of `(UT)_{z,x}` over the support of `k_{z,x}`, in middle-point order.
pub fn block_layout(u: &MatrixFunctor, t: &MatrixFunctor, kernel: &FiniteMeasure, z: usize, x: usize) -> Vec<Block> {
    let mut offset = 0;
    kernel
        .support()
        .into_iter()
        .map(|y| {
            let size = u.dim(z, y) * t.dim(y, x);
            let block = Block { middle: y, offset, size };
            offset += size;
            block
        })
        .collect()
}

/// `U ∘ T` together with the composed families (for block layouts).
pub fn compose_functors_with_kernel(u: &MatrixFunctor, t: &MatrixFunctor) -> Result<(MatrixFunctor, ComposedFamilies), MeasError> {
    if u.source_space() != t.target_space() {
        return Err(MeasError::SpaceMismatch);
    }
    let composed = compose_families(&u.measures, &t.measures)?;
    let (nz, nx) = (u.target_space().len(), t.source_space().len());
    let mut dims = vec![0; nz * nx];
    for z in 0..nz {
        for x in 0..nx {
            dims[z * nx + x] = composed
                .kernel_at(z, x)
                .support()
                .into_iter()
                .map(|y| u.dim(z, y) * t.dim(y, x))
                .sum();
        }
    }
    let functor = MatrixFunctor {
        field: HilbertField {
            index: u.target_space().clone(),
            base: t.source_space().clone(),
            dims,
        },
        measures: composed.composite.clone(),
    };
    Ok((functor, composed))
}

/// `U ∘ T` for `T: X → Y` and `U: Y → Z`.
pub fn compose_functors(u: &MatrixFunctor, t: &MatrixFunctor) -> Result<MatrixFunctor, MeasError> {
    Ok(compose_functors_with_kernel(u, t)?.0)
}

/// `√(a/b)` for positive rationals.
fn sqrt_ratio(a: &Rational, b: &Rational) -> SqrtRational {
    SqrtRational::new(a / b).expect("ratio of positive weights")
}

/// A matrix natural transformation `source ⇒ target`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixNatTrans {
    source: MatrixFunctor,
    target: MatrixFunctor,
    /// Present exactly where both families charge `(y, x)`.
    cells: Vec<Option<CMatrix>>,
}

impl MatrixNatTrans {
    /// Builds the canonical representative; `cell(y, x)` is only called on the
    /// geometric-mean support.
    pub fn from_fn<F>(source: MatrixFunctor, target: MatrixFunctor, mut cell: F) -> Result<Self, MeasError>
    where
        F: FnMut(usize, usize) -> CMatrix,
    {
        if source.source_space() != target.source_space() || source.target_space() != target.target_space() {
            return Err(MeasError::SpaceMismatch);
        }
        let (ny, nx) = (source.target_space().len(), source.source_space().len());
        let mut cells = Vec::with_capacity(ny * nx);
        for y in 0..ny {
            for x in 0..nx {
                if source.charges(y, x) && target.charges(y, x) {
                    let m = cell(y, x);
                    let expected = (target.dim(y, x), source.dim(y, x));
                    if m.shape() != expected {
                        return Err(MeasError::CellShape {
                            y: source.target_space().label(y).to_string(),
                            x: source.source_space().label(x).to_string(),
                            expected,
                            got: m.shape(),
                        });
                    }
                    cells.push(Some(m));
                } else {
                    cells.push(None);
                }
            }
        }
        Ok(Self { source, target, cells })
    }

    /// Builds from a full row-major table; entries off the support are ignored.
    pub fn new(source: MatrixFunctor, target: MatrixFunctor, cells: Vec<Option<CMatrix>>) -> Result<Self, MeasError> {
        let nx = source.source_space().len();
        let ys = source.target_space().clone();
        let xs = source.source_space().clone();
        if cells.len() != ys.len() * nx {
            return Err(MeasError::DimCount {
                expected: ys.len() * nx,
                got: cells.len(),
            });
        }
        let mut missing = None;
        let built = Self::from_fn(source, target, |y, x| match &cells[y * nx + x] {
            Some(m) => m.clone(),
            None => {
                missing.get_or_insert((y, x));
                linalg::zeros(0, 0)
            }
        });
        if let Some((y, x)) = missing {
            return Err(MeasError::MissingCell {
                y: ys.label(y).to_string(),
                x: xs.label(x).to_string(),
            });
        }
        built
    }

    pub fn identity(functor: &MatrixFunctor) -> Self {
        Self::from_fn(functor.clone(), functor.clone(), |y, x| linalg::identity(functor.dim(y, x)))
            .expect("identity cells have matching shapes")
    }

    pub fn source(&self) -> &MatrixFunctor {
        &self.source
    }

    pub fn target(&self) -> &MatrixFunctor {
        &self.target
    }

    pub fn cell(&self, y: usize, x: usize) -> Option<&CMatrix> {
        self.cells[y * self.source.source_space().len() + x].as_ref()
    }

    /// The stored cell, or a zero matrix of the right shape off the support.
    pub fn cell_or_zero(&self, y: usize, x: usize) -> CMatrix {
        self.cell(y, x)
            .cloned()
            .unwrap_or_else(|| linalg::zeros(self.target.dim(y, x), self.source.dim(y, x)))
    }

    /// Support points `(y, x)` in row-major order.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let nx = self.source.source_space().len();
        (0..self.cells.len())
            .filter(|&p| self.cells[p].is_some())
            .map(|p| (p / nx, p % nx))
            .collect()
    }

    /// Same functors and cells equal within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.cells.iter().zip(&other.cells).all(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => linalg::approx_eq(a, b, tol),
                (None, None) => true,
                _ => false,
            })
    }

    /// Largest deviation from `other` over all cells; infinite if the functors differ.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.source != other.source || self.target != other.target {
            return f64::INFINITY;
        }
        self.cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) if a.shape() == b.shape() => linalg::max_abs(&(a - b)),
                (None, None) => 0.0,
                _ => f64::INFINITY,
            })
            .fold(0.0, f64::max)
    }

    /// Cellwise conjugate transpose, a transformation `target ⇒ source`.
    pub fn adjoint(&self) -> Self {
        Self {
            source: self.target.clone(),
            target: self.source.clone(),
            cells: self.cells.iter().map(|c| c.as_ref().map(|m| m.adjoint())).collect(),
        }
    }

    /// Largest operator norm over the support.
    pub fn norm(&self) -> f64 {
        self.cells
            .iter()
            .flatten()
            .map(linalg::operator_norm)
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            source: self.source.clone(),
            target: self.target.clone(),
            cells: self.cells.iter().map(|c| c.as_ref().map(|m| m * factor)).collect(),
        }
    }

    /// Cellwise sum of two parallel transformations.
    pub fn add(&self, other: &Self) -> Result<Self, MeasError> {
        if self.source != other.source || self.target != other.target {
            return Err(MeasError::NotComposable);
        }
        Ok(Self {
            source: self.source.clone(),
            target: self.target.clone(),
            cells: self
                .cells
                .iter()
                .zip(&other.cells)
                .map(|(a, b)| match (a, b) {
                    (Some(a), Some(b)) => Some(a + b),
                    _ => None,
                })
                .collect(),
        })
    }
}

/// `β · α` for `α: T ⇒ T'` and `β: T' ⇒ T''`.
pub fn vertical_compose(beta: &MatrixNatTrans, alpha: &MatrixNatTrans) -> Result<MatrixNatTrans, MeasError> {
    if alpha.target != beta.source {
        return Err(MeasError::NotComposable);
    }
    let (t, mid, end) = (&alpha.source, &alpha.target, &beta.target);
    MatrixNatTrans::from_fn(t.clone(), end.clone(), |y, x| {
        if !mid.charges(y, x) {
            return linalg::zeros(end.dim(y, x), t.dim(y, x));
        }
        let (a, b, c) = (t.weight(y, x), mid.weight(y, x), end.weight(y, x));
        let prefactor = &(&sqrt_ratio(c, a) * &sqrt_ratio(b, c)) * &sqrt_ratio(a, b);
        let product = beta.cell(y, x).expect("middle charged") * alpha.cell(y, x).expect("middle charged");
        product * Complex64::new(prefactor.to_f64(), 0.0)
    })
}

/// `β ∘ α` for `α: T ⇒ T'` over `X → Y` and `β: U ⇒ U'` over `Y → Z`.
///
/// The composite fiber at `(z, x)` is the direct sum over the kernel support,
/// and each surviving block carries `β_{z,y} ⊗ α_{y,x}` scaled by the exact
/// square-root prefactors.
pub fn horizontal_compose(beta: &MatrixNatTrans, alpha: &MatrixNatTrans) -> Result<MatrixNatTrans, MeasError> {
    let (u, u2) = (&beta.source, &beta.target);
    let (t, t2) = (&alpha.source, &alpha.target);
    if u.source_space() != t.target_space() {
        return Err(MeasError::NotComposable);
    }
    let (src, src_k) = compose_functors_with_kernel(u, t)?;
    let (tgt, tgt_k) = compose_functors_with_kernel(u2, t2)?;
    MatrixNatTrans::from_fn(src.clone(), tgt.clone(), |z, x| {
        let mut out = linalg::zeros(tgt.dim(z, x), src.dim(z, x));
        let outer = sqrt_ratio(tgt.weight(z, x), src.weight(z, x));
        let src_blocks = block_layout(u, t, src_k.kernel_at(z, x), z, x);
        let tgt_blocks = block_layout(u2, t2, tgt_k.kernel_at(z, x), z, x);
        let mut j = 0;
        for tb in &tgt_blocks {
            while j < src_blocks.len() && src_blocks[j].middle < tb.middle {
                j += 1;
            }
            let Some(sb) = src_blocks.get(j).filter(|sb| sb.middle == tb.middle) else {
                continue;
            };
            let y = tb.middle;
            let factor = &(&outer * &sqrt_ratio(u.weight(z, y), u2.weight(z, y))) * &sqrt_ratio(t.weight(y, x), t2.weight(y, x));
            let block = linalg::kron(
                beta.cell(z, y).expect("kernel support lies in both supports"),
                alpha.cell(y, x).expect("kernel support lies in both supports"),
            ) * Complex64::new(factor.to_f64(), 0.0);
            out.view_mut((tb.offset, sb.offset), (tb.size, sb.size)).copy_from(&block);
        }
        out
    })
}

/// Returns the inverse when `α` is invertible: equivalent families and
/// invertible cells on the support.
pub fn is_invertible_2mor(alpha: &MatrixNatTrans) -> Option<MatrixNatTrans> {
    let (s, t) = (&alpha.source, &alpha.target);
    for y in 0..s.target_space().len() {
        if !measure::equivalent(s.measures.member(y), t.measures.member(y)) {
            return None;
        }
    }
    let mut inverses = Vec::with_capacity(alpha.cells.len());
    for cell in &alpha.cells {
        inverses.push(match cell {
            Some(m) => Some(linalg::inverse(m)?),
            None => None,
        });
    }
    Some(MatrixNatTrans {
        source: t.clone(),
        target: s.clone(),
        cells: inverses,
    })
}

/// A bijection `f: Y → X`, the data of a pullback functor `H^X → H^Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pullback {
    domain: FiniteSpace,
    codomain: FiniteSpace,
    map: Vec<usize>,
}

impl Pullback {
    pub fn new(domain: FiniteSpace, codomain: FiniteSpace, map: Vec<usize>) -> Result<Self, MeasError> {
        if map.len() != domain.len() || domain.len() != codomain.len() {
            return Err(MeasError::NotBijection);
        }
        let mut hit = vec![false; codomain.len()];
        for &m in &map {
            if m >= hit.len() || hit[m] {
                return Err(MeasError::NotBijection);
            }
            hit[m] = true;
        }
        Ok(Self { domain, codomain, map })
    }

    pub fn identity(space: FiniteSpace) -> Self {
        let map = (0..space.len()).collect();
        Self {
            domain: space.clone(),
            codomain: space,
            map,
        }
    }

    pub fn domain(&self) -> &FiniteSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteSpace {
        &self.codomain
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, y: usize) -> usize {
        self.map[y]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Pullback) -> Result<Pullback, MeasError> {
        if first.codomain != self.domain {
            return Err(MeasError::SpaceMismatch);
        }
        Ok(Pullback {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            map: first.map.iter().map(|&y| self.map[y]).collect(),
        })
    }
}

/// `(dim 1 at (y, f(y)), δ_{f(y)})`.
pub fn pullback_functor(f: &Pullback) -> MatrixFunctor {
    let (ny, nx) = (f.domain.len(), f.codomain.len());
    let mut dims = vec![0; ny * nx];
    for (y, &x) in f.map.iter().enumerate() {
        dims[y * nx + x] = 1;
    }
    MatrixFunctor {
        field: HilbertField {
            index: f.domain.clone(),
            base: f.codomain.clone(),
            dims,
        },
        measures: MeasureFamily::pushforward_dirac(f.domain.clone(), f.codomain.clone(), &f.map)
            .expect("bijection stays in range"),
    }
}

/// The bijection `f` when `T` is an equivalence: every `t_y` is a point mass at
/// `f(y)` with `dim(y, f(y)) = 1`, and `f` is bijective.
pub fn is_equivalence(functor: &MatrixFunctor) -> Option<Pullback> {
    let ny = functor.target_space().len();
    let mut map = Vec::with_capacity(ny);
    for y in 0..ny {
        let support = functor.measures.member(y).support();
        if support.len() != 1 || functor.dim(y, support[0]) != 1 {
            return None;
        }
        map.push(support[0]);
    }
    Pullback::new(functor.target_space().clone(), functor.source_space().clone(), map).ok()
}

/// The bijection when `T` is exactly a pullback functor (unit point masses).
pub fn as_unit_pullback(functor: &MatrixFunctor) -> Option<Pullback> {
    let f = is_equivalence(functor)?;
    f.map
        .iter()
        .enumerate()
        .all(|(y, &x)| functor.weight(y, x) == &Rational::from_integer(1.into()))
        .then_some(f)
}

/// The scalar 2-automorphism of the pullback functor with cell `[c(y)]` at `(y, f(y))`.
pub fn scalar_2auto(f: &Pullback, scalars: &[Complex64]) -> Result<MatrixNatTrans, MeasError> {
    if scalars.len() != f.domain.len() {
        return Err(MeasError::DimCount {
            expected: f.domain.len(),
            got: scalars.len(),
        });
    }
    if let Some(y) = scalars.iter().position(|c| c.is_zero()) {
        return Err(MeasError::ZeroScalar(f.domain.label(y).to_string()));
    }
    let functor = pullback_functor(f);
    MatrixNatTrans::from_fn(functor.clone(), functor, |y, _| linalg::scalar(scalars[y]))
}

/// Which side the extra functor sits on in a whiskering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `by ∘ α`: post-compose with `by`.
    Left,
    /// `α ∘ by`: pre-compose with `by`.
    Right,
}

/// Horizontal composite with the identity on `by`.
///
/// Whiskering by a pullback functor with unit point masses only reindexes the
/// cells; every other case goes through [`horizontal_compose`].
pub fn whisker(alpha: &MatrixNatTrans, by: &MatrixFunctor, side: Side) -> Result<MatrixNatTrans, MeasError> {
    let Some(f) = as_unit_pullback(by) else {
        let id = MatrixNatTrans::identity(by);
        return match side {
            Side::Left => horizontal_compose(&id, alpha),
            Side::Right => horizontal_compose(alpha, &id),
        };
    };
    match side {
        Side::Left => {
            let src = compose_functors(by, &alpha.source)?;
            let tgt = compose_functors(by, &alpha.target)?;
            MatrixNatTrans::from_fn(src, tgt, |z, x| alpha.cell_or_zero(f.apply(z), x))
        }
        Side::Right => {
            let src = compose_functors(&alpha.source, by)?;
            let tgt = compose_functors(&alpha.target, by)?;
            let mut inverse = vec![0; f.map.len()];
            for (x, &w) in f.map.iter().enumerate() {
                inverse[w] = x;
            }
            MatrixNatTrans::from_fn(src, tgt, |y, w| alpha.cell_or_zero(y, inverse[w]))
        }
    }
}

/// The block permutation `(W∘V)∘U ⇒ W∘(V∘U)` for `U: X → Y`, `V: Y → Z`, `W: Z → Q`.
///
/// Both sides carry the blocks `W_{q,z} ⊗ V_{z,y} ⊗ U_{y,x}`; the left
/// orders them by `(y, z)`, the right by `(z, y)`.
pub fn composition_associator(w: &MatrixFunctor, v: &MatrixFunctor, u: &MatrixFunctor) -> Result<MatrixNatTrans, MeasError> {
    let (wv, wv_k) = compose_functors_with_kernel(w, v)?;
    let (left, left_k) = compose_functors_with_kernel(&wv, u)?;
    let (vu, vu_k) = compose_functors_with_kernel(v, u)?;
    let (right, right_k) = compose_functors_with_kernel(w, &vu)?;
    MatrixNatTrans::from_fn(left.clone(), right.clone(), |q, x| {
        // Offsets on the left, keyed by (z, y).
        let mut left_offsets = std::collections::BTreeMap::new();
        for outer in block_layout(&wv, u, left_k.kernel_at(q, x), q, x) {
            let y = outer.middle;
            let inner_size = u.dim(y, x);
            for inner in block_layout(w, v, wv_k.kernel_at(q, y), q, y) {
                left_offsets.insert((inner.middle, y), (outer.offset + inner.offset * inner_size, inner.size * inner_size));
            }
        }
        let mut p = linalg::zeros(right.dim(q, x), left.dim(q, x));
        for outer in block_layout(w, &vu, right_k.kernel_at(q, x), q, x) {
            let z = outer.middle;
            let w_dim = w.dim(q, z);
            for inner in block_layout(v, u, vu_k.kernel_at(z, x), z, x) {
                let (src_offset, size) = left_offsets[&(z, inner.middle)];
                // W ⊗ (V⊗U): the inner block repeats once per W basis vector.
                let inner_size = inner.size;
                for a in 0..w_dim {
                    for b in 0..inner_size {
                        let row = outer.offset + a * outer.size / w_dim.max(1) + inner.offset + b;
                        let col = src_offset + a * inner_size + b;
                        debug_assert!(a * inner_size + b < size);
                        p[(row, col)] = Complex64::new(1.0, 0.0);
                    }
                }
            }
        }
        p
    })
}

/// `T ⊕ T'` on the same spaces.
pub fn direct_sum_functors(t: &MatrixFunctor, t2: &MatrixFunctor) -> Result<MatrixFunctor, MeasError> {
    if t.source_space() != t2.source_space() || t.target_space() != t2.target_space() {
        return Err(MeasError::SpaceMismatch);
    }
    let measures = t.measures.add(&t2.measures)?;
    let (ny, nx) = (t.target_space().len(), t.source_space().len());
    let mut dims = vec![0; ny * nx];
    for y in 0..ny {
        for x in 0..nx {
            dims[y * nx + x] = t.dim(y, x) + t2.dim(y, x);
        }
    }
    MatrixFunctor::new(
        HilbertField {
            index: t.target_space().clone(),
            base: t.source_space().clone(),
            dims,
        },
        measures,
    )
}

/// `α ⊕ α'` by the four-region support rule.
pub fn direct_sum_nattrans(alpha: &MatrixNatTrans, alpha2: &MatrixNatTrans) -> Result<MatrixNatTrans, MeasError> {
    let src = direct_sum_functors(&alpha.source, &alpha2.source)?;
    let tgt = direct_sum_functors(&alpha.target, &alpha2.target)?;
    MatrixNatTrans::from_fn(src.clone(), tgt.clone(), |y, x| {
        let mut out = linalg::zeros(tgt.dim(y, x), src.dim(y, x));
        if let Some(a) = alpha.cell(y, x) {
            out.view_mut((0, 0), a.shape()).copy_from(a);
        }
        if let Some(a) = alpha2.cell(y, x) {
            let (r, c) = (alpha.target.dim(y, x), alpha.source.dim(y, x));
            out.view_mut((r, c), a.shape()).copy_from(a);
        }
        out
    })
}

/// The block swap `T ⊕ T' ⇒ T' ⊕ T`.
pub fn direct_sum_braiding(t: &MatrixFunctor, t2: &MatrixFunctor) -> Result<MatrixNatTrans, MeasError> {
    let src = direct_sum_functors(t, t2)?;
    let tgt = direct_sum_functors(t2, t)?;
    MatrixNatTrans::from_fn(src.clone(), tgt, |y, x| {
        let (a, b) = (t.dim(y, x), t2.dim(y, x));
        let perm: Vec<usize> = (0..a).map(|i| b + i).chain(0..b).collect();
        linalg::permutation_matrix(&perm)
    })
}

fn two_sum_field(t: &MatrixFunctor, t2: &MatrixFunctor) -> (FiniteSpace, FiniteSpace, Vec<usize>, Vec<Vec<Rational>>) {
    let index = FiniteSpace::disjoint_union(t.target_space(), t2.target_space());
    let base = FiniteSpace::disjoint_union(t.source_space(), t2.source_space());
    let (ny, nx) = (t.target_space().len(), t.source_space().len());
    let (ny2, nx2) = (t2.target_space().len(), t2.source_space().len());
    let n = nx + nx2;
    let mut dims = vec![0; (ny + ny2) * n];
    let mut rows = vec![vec![Rational::zero(); n]; ny + ny2];
    for y in 0..ny {
        for x in 0..nx {
            dims[y * n + x] = t.dim(y, x);
            rows[y][x] = t.weight(y, x).clone();
        }
    }
    for y in 0..ny2 {
        for x in 0..nx2 {
            dims[(ny + y) * n + nx + x] = t2.dim(y, x);
            rows[ny + y][nx + x] = t2.weight(y, x).clone();
        }
    }
    (index, base, dims, rows)
}

/// `T ⊞ T'`: `X ⊔ X' → Y ⊔ Y'`, block diagonal.
pub fn two_sum_functors(t: &MatrixFunctor, t2: &MatrixFunctor) -> MatrixFunctor {
    let (index, base, dims, rows) = two_sum_field(t, t2);
    let measures = MeasureFamily::from_rows(index.clone(), base.clone(), rows).expect("nonnegative weights");
    MatrixFunctor::new(HilbertField { index, base, dims }, measures).expect("blocks are concentrated")
}

/// `α ⊞ α'`, block diagonal over the disjoint unions.
pub fn two_sum_nattrans(alpha: &MatrixNatTrans, alpha2: &MatrixNatTrans) -> MatrixNatTrans {
    let src = two_sum_functors(&alpha.source, &alpha2.source);
    let tgt = two_sum_functors(&alpha.target, &alpha2.target);
    let (ny, nx) = (alpha.source.target_space().len(), alpha.source.source_space().len());
    MatrixNatTrans::from_fn(src, tgt, |y, x| {
        if y < ny {
            alpha.cell(y, x).expect("charged block").clone()
        } else {
            alpha2.cell(y - ny, x - nx).expect("charged block").clone()
        }
    })
    .expect("block shapes match")
}

/// `T ⊗ T'` on the same spaces: measures `√(t_y t'_y)`, dimensions multiply.
///
/// Fails when a geometric-mean weight is irrational, since measure families
/// carry rational weights.
pub fn tensor_functors(t: &MatrixFunctor, t2: &MatrixFunctor) -> Result<MatrixFunctor, MeasError> {
    if t.source_space() != t2.source_space() || t.target_space() != t2.target_space() {
        return Err(MeasError::SpaceMismatch);
    }
    let (ny, nx) = (t.target_space().len(), t.source_space().len());
    let mut rows = Vec::with_capacity(ny);
    let mut dims = vec![0; ny * nx];
    for y in 0..ny {
        let mut row = Vec::with_capacity(nx);
        for x in 0..nx {
            let w = rational_sqrt(&(t.weight(y, x) * t2.weight(y, x))).ok_or_else(|| MeasError::IrrationalWeight {
                y: t.target_space().label(y).to_string(),
                x: t.source_space().label(x).to_string(),
            })?;
            dims[y * nx + x] = t.dim(y, x) * t2.dim(y, x);
            row.push(w);
        }
        rows.push(row);
    }
    let measures = MeasureFamily::from_rows(t.target_space().clone(), t.source_space().clone(), rows)?;
    MatrixFunctor::new(
        HilbertField {
            index: t.target_space().clone(),
            base: t.source_space().clone(),
            dims,
        },
        measures,
    )
}

/// `α ⊗ α'` cellwise on the common support.
pub fn tensor_nattrans(alpha: &MatrixNatTrans, alpha2: &MatrixNatTrans) -> Result<MatrixNatTrans, MeasError> {
    let src = tensor_functors(&alpha.source, &alpha2.source)?;
    let tgt = tensor_functors(&alpha.target, &alpha2.target)?;
    MatrixNatTrans::from_fn(src, tgt, |y, x| {
        linalg::kron(
            alpha.cell(y, x).expect("common support"),
            alpha2.cell(y, x).expect("common support"),
        )
    })
}

/// `T ⊠ T'`: `X×X' → Y×Y'` with product measures and multiplied dimensions.
pub fn tensor_two_functors(t: &MatrixFunctor, t2: &MatrixFunctor) -> MatrixFunctor {
    let index = FiniteSpace::product(t.target_space(), t2.target_space());
    let base = FiniteSpace::product(t.source_space(), t2.source_space());
    let (ny2, nx2) = (t2.target_space().len(), t2.source_space().len());
    let n = base.len();
    let mut dims = vec![0; index.len() * n];
    let mut members = Vec::with_capacity(index.len());
    for yy in 0..index.len() {
        let (y, y2) = (yy / ny2, yy % ny2);
        for xx in 0..n {
            let (x, x2) = (xx / nx2, xx % nx2);
            dims[yy * n + xx] = t.dim(y, x) * t2.dim(y2, x2);
        }
        let product = t.measures.member(y).product(t2.measures.member(y2));
        members.push(FiniteMeasure::new(base.clone(), product.weights().to_vec()).expect("nonnegative"));
    }
    let measures = MeasureFamily::new(index.clone(), base.clone(), members).expect("matching spaces");
    MatrixFunctor::new(HilbertField { index, base, dims }, measures).expect("product of concentrated functors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::scalar::int;

    fn space(n: usize, p: &str) -> FiniteSpace {
        FiniteSpace::numbered(p, n)
    }

    fn functor(y: &FiniteSpace, x: &FiniteSpace, dims: &[Vec<usize>], w: &[Vec<i64>]) -> MatrixFunctor {
        MatrixFunctor::new(
            HilbertField::from_rows(y.clone(), x.clone(), dims).unwrap(),
            MeasureFamily::from_integer_rows(y.clone(), x.clone(), w).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn identity_acts_trivially_on_objects() {
        let x = space(3, "x");
        assert_eq!(apply_to_object(&MatrixFunctor::identity(x), &[1, 2, 3]).unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn uniform_functor_sums_the_object() {
        let (x, y) = (space(3, "x"), space(2, "y"));
        let t = functor(&y, &x, &[vec![1; 3], vec![1; 3]], &[vec![1; 3], vec![1; 3]]);
        assert_eq!(apply_to_object(&t, &[1, 2, 3]).unwrap(), vec![6, 6]);
        let z = MatrixFunctor::zero(y, x);
        assert_eq!(apply_to_object(&z, &[1, 2, 3]).unwrap(), vec![0, 0]);
    }

    #[test]
    fn identity_is_a_strict_unit_for_composition() {
        let (x, y) = (space(3, "x"), space(2, "y"));
        let t = functor(&y, &x, &[vec![2, 1, 0], vec![1, 3, 1]], &[vec![1, 2, 0], vec![0, 5, 1]]);
        assert_eq!(compose_functors(&t, &MatrixFunctor::identity(x)).unwrap(), t);
        assert_eq!(compose_functors(&MatrixFunctor::identity(y), &t).unwrap(), t);
    }

    #[test]
    fn concentration_is_enforced() {
        let (x, y) = (space(1, "x"), space(1, "y"));
        let err = MatrixFunctor::new(
            HilbertField::from_rows(y.clone(), x.clone(), &[vec![0]]).unwrap(),
            MeasureFamily::from_integer_rows(y, x, &[vec![1]]).unwrap(),
        );
        assert!(matches!(err, Err(MeasError::NotConcentrated { .. })));
    }

    #[test]
    fn vertical_prefactor_cancels_on_single_point() {
        let p = space(1, "p");
        let mk = |w| functor(&p, &p, &[vec![1]], &[vec![w]]);
        let (t, t1, t2) = (mk(1), mk(4), mk(1));
        let alpha = MatrixNatTrans::from_fn(t.clone(), t1.clone(), |_, _| linalg::scalar(c(2.0, 0.0))).unwrap();
        let beta = MatrixNatTrans::from_fn(t1, t2, |_, _| linalg::scalar(c(0.0, 3.0))).unwrap();
        let ba = vertical_compose(&beta, &alpha).unwrap();
        assert!(linalg::approx_eq(ba.cell(0, 0).unwrap(), &linalg::scalar(c(0.0, 6.0)), 1e-12));
    }

    #[test]
    fn pullbacks_compose_to_pullback_of_composite() {
        let x = space(3, "x");
        let cycle = Pullback::new(x.clone(), x.clone(), vec![1, 2, 0]).unwrap();
        let f = pullback_functor(&cycle);
        let ff = compose_functors(&f, &f).unwrap();
        let fff = compose_functors(&f, &ff).unwrap();
        assert_eq!(fff, MatrixFunctor::identity(x.clone()));
        assert_eq!(ff, pullback_functor(&cycle.after(&cycle).unwrap()));
        assert_eq!(is_equivalence(&f), Some(cycle));
    }

    #[test]
    fn scalar_autos_compose_horizontally_by_reindexing() {
        let x = space(2, "x");
        let swap = Pullback::new(x.clone(), x.clone(), vec![1, 0]).unwrap();
        let alpha = scalar_2auto(&swap, &[c(2.0, 0.0), c(0.0, 1.0)]).unwrap();
        let beta = scalar_2auto(&swap, &[c(3.0, 0.0), c(5.0, 0.0)]).unwrap();
        let h = horizontal_compose(&beta, &alpha).unwrap();
        // (β∘α)(z) = β(z)·α(g(z))
        assert!(linalg::approx_eq(h.cell(0, 0).unwrap(), &linalg::scalar(c(0.0, 3.0)), 1e-12));
        assert!(linalg::approx_eq(h.cell(1, 1).unwrap(), &linalg::scalar(c(10.0, 0.0)), 1e-12));
        assert!(scalar_2auto(&swap, &[c(0.0, 0.0), c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn invertibility_requires_equivalent_measures() {
        let (x, y) = (space(2, "x"), space(1, "y"));
        let t = functor(&y, &x, &[vec![1, 1]], &[vec![1, 0]]);
        let t2 = functor(&y, &x, &[vec![1, 1]], &[vec![1, 1]]);
        let alpha = MatrixNatTrans::from_fn(t, t2, |_, _| linalg::identity(1)).unwrap();
        assert!(is_invertible_2mor(&alpha).is_none());
    }

    #[test]
    fn direct_sum_with_zero_is_strict() {
        let (x, y) = (space(2, "x"), space(2, "y"));
        let t = functor(&y, &x, &[vec![2, 1], vec![0, 3]], &[vec![1, 1], vec![0, 2]]);
        assert_eq!(direct_sum_functors(&t, &MatrixFunctor::zero(y.clone(), x.clone())).unwrap(), t);
        let tt = direct_sum_functors(&t, &t).unwrap();
        assert_eq!(tt.dim(1, 1), 6);
        assert_eq!(tt.weight(1, 1), &int(4));
    }

    #[test]
    fn tensor_with_matching_unit_returns_t() {
        let (x, y) = (space(2, "x"), space(1, "y"));
        let t = functor(&y, &x, &[vec![2, 3]], &[vec![4, 9]]);
        let unit = functor(&y, &x, &[vec![1, 1]], &[vec![4, 9]]);
        assert_eq!(tensor_functors(&t, &unit).unwrap(), t);
        let irrational = functor(&y, &x, &[vec![1, 1]], &[vec![2, 9]]);
        assert!(matches!(
            tensor_functors(&t, &irrational),
            Err(MeasError::IrrationalWeight { .. })
        ));
    }
}
