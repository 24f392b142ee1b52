//! Linear representations of finite groups, character tables and explicit irreducibles.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::FiniteGroup;
use crate::linalg::{self, c, CMatrix, EQ_TOL};

/// Tolerance for character arithmetic.
pub const CHAR_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RepError {
    #[error("expected {expected} matrices, got {got}")]
    Count { expected: usize, got: usize },
    #[error("matrix for element {0} is not square of the declared dimension")]
    Shape(usize),
    #[error("R({first})R({second}) differs from R({first}·{second})")]
    NotMultiplicative { first: usize, second: usize },
    #[error("eigenstructure is ambiguous at the working tolerance; increase precision")]
    IncreasePrecision,
}

/// `g ↦ R(g)` with `R(g')R(g) = R(g'g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupRep {
    group: FiniteGroup,
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl GroupRep {
    pub fn new(group: FiniteGroup, dim: usize, matrices: Vec<CMatrix>) -> Result<Self, RepError> {
        if matrices.len() != group.order() {
            return Err(RepError::Count {
                expected: group.order(),
                got: matrices.len(),
            });
        }
        if let Some(g) = matrices.iter().position(|m| m.shape() != (dim, dim)) {
            return Err(RepError::Shape(g));
        }
        for a in group.elements() {
            for b in group.elements() {
                let product = &matrices[a] * &matrices[b];
                if !linalg::approx_eq(&product, &matrices[group.mul(a, b)], EQ_TOL) {
                    return Err(RepError::NotMultiplicative { first: a, second: b });
                }
            }
        }
        Ok(Self { group, dim, matrices })
    }

    pub fn trivial(group: FiniteGroup) -> Self {
        let matrices = vec![linalg::identity(1); group.order()];
        Self { group, dim: 1, matrices }
    }

    /// Left-regular permutation representation on `C[G]`.
    pub fn regular(group: FiniteGroup) -> Self {
        let n = group.order();
        let matrices = group
            .elements()
            .map(|g| {
                let perm: Vec<usize> = group.elements().map(|x| group.mul(g, x)).collect();
                linalg::permutation_matrix(&perm)
            })
            .collect();
        Self {
            group,
            dim: n,
            matrices,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    /// Trace of every element, indexed by element.
    pub fn character(&self) -> Vec<Complex64> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    /// Character values on the conjugacy classes, in [`FiniteGroup::conjugacy_classes`] order.
    pub fn class_character(&self) -> Vec<Complex64> {
        self.group
            .conjugacy_classes()
            .iter()
            .map(|class| self.matrices[class[0]].trace())
            .collect()
    }

    /// Orthonormal basis of the commuting matrices, as a list of matrices.
    pub fn commutant(&self) -> Vec<CMatrix> {
        let d = self.dim;
        if d == 0 {
            return Vec::new();
        }
        // vec(R X − X R) = (I ⊗ R − Rᵀ ⊗ I) vec(X) for column-major vec.
        let id = linalg::identity(d);
        let blocks: Vec<CMatrix> = self
            .matrices
            .iter()
            .map(|r| linalg::kron(&id, r) - linalg::kron(&r.transpose(), &id))
            .collect();
        let mut system = linalg::zeros(blocks.len() * d * d, d * d);
        for (i, b) in blocks.iter().enumerate() {
            system.view_mut((i * d * d, 0), (d * d, d * d)).copy_from(b);
        }
        let basis = linalg::nullspace(&system);
        (0..basis.ncols())
            .map(|j| linalg::unvectorize(basis.column(j).as_slice(), d, d))
            .collect()
    }
}

/// `(1/|G|) Σ χ(g) conj(χ'(g))`.
pub fn char_inner_product(r: &GroupRep, r2: &GroupRep) -> Complex64 {
    character_inner(r.group(), &r.character(), &r2.character())
}

/// Inner product of two elementwise class functions.
pub fn character_inner(group: &FiniteGroup, a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let sum: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
    sum / group.order() as f64
}

pub fn is_irreducible_grouprep(r: &GroupRep) -> bool {
    (char_inner_product(r, r) - c(1.0, 0.0)).norm() < CHAR_TOL
}

/// Equal characters within [`CHAR_TOL`], which decides equivalence.
pub fn characters_agree(r: &GroupRep, r2: &GroupRep) -> bool {
    r.group() == r2.group()
        && r.dim() == r2.dim()
        && r.character()
            .iter()
            .zip(r2.character())
            .all(|(a, b)| (a - b).norm() < CHAR_TOL)
}

/// Irreducible characters on conjugacy classes.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    pub classes: Vec<Vec<usize>>,
    /// `values[i][j]`: character `i` on class `j`.
    pub values: Vec<Vec<Complex64>>,
    pub degrees: Vec<usize>,
}

impl CharacterTable {
    /// Character `i` as an elementwise function.
    pub fn elementwise(&self, i: usize, order: usize) -> Vec<Complex64> {
        let mut out = vec![c(0.0, 0.0); order];
        for (j, class) in self.classes.iter().enumerate() {
            for &g in class {
                out[g] = self.values[i][j];
            }
        }
        out
    }
}

/// Class-algebra structure constants: `a[j][k][l]` counts pairs
/// `(x, y) ∈ C_j × C_k` with `x y` equal to the first element of `C_l`.
fn class_constants(group: &FiniteGroup, classes: &[Vec<usize>]) -> Vec<Vec<Vec<f64>>> {
    let r = classes.len();
    let mut class_of = vec![0; group.order()];
    for (i, class) in classes.iter().enumerate() {
        for &g in class {
            class_of[g] = i;
        }
    }
    let mut a = vec![vec![vec![0.0; r]; r]; r];
    for (j, cj) in classes.iter().enumerate() {
        for &x in cj {
            for (k, ck) in classes.iter().enumerate() {
                for &y in ck {
                    let p = group.mul(x, y);
                    let l = class_of[p];
                    if classes[l][0] == p {
                        a[j][k][l] += 1.0;
                    }
                }
            }
        }
    }
    a
}

/// The character table, from the simultaneous eigenvectors of the class matrices.
///
/// A random combination of class matrices is diagonalized; when two
/// eigenvalues come closer than the tolerance for several independent draws
/// the computation gives up instead of guessing.
pub fn irreducible_characters(group: &FiniteGroup) -> Result<CharacterTable, RepError> {
    let classes = group.conjugacy_classes();
    let r = classes.len();
    let a = class_constants(group, &classes);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c1a5);
    for _attempt in 0..8 {
        let weights: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let combo = DMatrix::<f64>::from_fn(r, r, |k, l| (0..r).map(|j| weights[j] * a[j][k][l]).sum());
        let eigenvalues: Vec<Complex64> = combo.complex_eigenvalues().iter().copied().collect();
        let separated = eigenvalues
            .iter()
            .enumerate()
            .all(|(i, x)| eigenvalues[..i].iter().all(|y| (x - y).norm() > 1e-4));
        if !separated {
            continue;
        }
        let combo_c = combo.map(|v| c(v, 0.0));
        let mut table = Vec::with_capacity(r);
        let mut ok = true;
        for lambda in &eigenvalues {
            let shifted = &combo_c - CMatrix::identity(r, r) * *lambda;
            let ns = linalg::nullspace(&shifted);
            if ns.ncols() != 1 {
                ok = false;
                break;
            }
            let v = ns.column(0).clone_owned();
            let omega: Vec<Complex64> = v.iter().map(|z| z / v[0]).collect();
            let norm: f64 = omega
                .iter()
                .zip(&classes)
                .map(|(w, class)| w.norm_sqr() / class.len() as f64)
                .sum();
            let degree = (group.order() as f64 / norm).sqrt();
            let rounded = degree.round();
            if (degree - rounded).abs() > CHAR_TOL || rounded < 1.0 {
                ok = false;
                break;
            }
            let values: Vec<Complex64> = omega
                .iter()
                .zip(&classes)
                .map(|(w, class)| w * rounded / class.len() as f64)
                .collect();
            table.push((rounded as usize, values));
        }
        if !ok {
            continue;
        }
        table.sort_by(|(da, va), (db, vb)| {
            let key = |d: &usize, v: &Vec<Complex64>| {
                let trivial = v.iter().all(|z| (z - c(1.0, 0.0)).norm() < CHAR_TOL);
                (!trivial, *d, v.iter().map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64)).collect::<Vec<_>>())
            };
            key(da, va).cmp(&key(db, vb))
        });
        let degree_sum: usize = table.iter().map(|(d, _)| d * d).sum();
        if degree_sum != group.order() {
            continue;
        }
        let (degrees, values) = table.into_iter().unzip();
        return Ok(CharacterTable {
            classes,
            values,
            degrees,
        });
    }
    Err(RepError::IncreasePrecision)
}

/// One explicit unitary irreducible representation per row of the character table.
pub fn irreducible_representations(group: &FiniteGroup) -> Result<(CharacterTable, Vec<GroupRep>), RepError> {
    let table = irreducible_characters(group)?;
    let regular = GroupRep::regular(group.clone());
    let n = group.order();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1dea_1bed);
    let mut reps = Vec::with_capacity(table.degrees.len());
    for (i, &d) in table.degrees.iter().enumerate() {
        let chi = table.elementwise(i, n);
        if d == 1 {
            let matrices = chi.iter().map(|&z| linalg::scalar(z)).collect();
            reps.push(GroupRep::new(group.clone(), 1, matrices)?);
            continue;
        }
        // Isotypic projector onto the d² copies of this irreducible.
        let mut projector = linalg::zeros(n, n);
        for g in group.elements() {
            projector += regular.matrix(g) * (chi[g].conj() * (d as f64 / n as f64));
        }
        let svd = projector.svd(true, false);
        let u = svd.u.expect("requested U");
        let cols: Vec<usize> = (0..svd.singular_values.len())
            .filter(|&k| svd.singular_values[k] > 0.5)
            .collect();
        if cols.len() != d * d {
            return Err(RepError::IncreasePrecision);
        }
        let q = CMatrix::from_fn(n, cols.len(), |r, k| u[(r, cols[k])]);
        let restricted: Vec<CMatrix> = group
            .elements()
            .map(|g| q.adjoint() * regular.matrix(g) * &q)
            .collect();
        let mut found = None;
        for _attempt in 0..8 {
            let m = d * d;
            let raw = CMatrix::from_fn(m, m, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let hermitian = &raw + raw.adjoint();
            let mut averaged = linalg::zeros(m, m);
            for r in &restricted {
                averaged += r * &hermitian * r.adjoint();
            }
            let eig = averaged.symmetric_eigen();
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
            let lowest = eig.eigenvalues[order[0]];
            let block: Vec<usize> = order
                .iter()
                .copied()
                .filter(|&k| (eig.eigenvalues[k] - lowest).abs() < 1e-6 * (1.0 + lowest.abs()))
                .collect();
            if block.len() != d {
                continue;
            }
            let w = CMatrix::from_fn(m, d, |r, k| eig.eigenvectors[(r, block[k])]);
            let matrices: Vec<CMatrix> = restricted.iter().map(|r| w.adjoint() * r * &w).collect();
            if let Ok(rep) = GroupRep::new(group.clone(), d, matrices) {
                found = Some(rep);
                break;
            }
        }
        reps.push(found.ok_or(RepError::IncreasePrecision)?);
    }
    Ok((table, reps))
}

/// Restriction to a subgroup, given as sorted elements; the result lives on
/// the subgroup as a standalone group with the embedding of [`FiniteGroup::subgroup_as_group`].
pub fn restrict(rep: &GroupRep, subgroup: &[usize]) -> GroupRep {
    let (sub, embedding) = rep.group.subgroup_as_group(subgroup).expect("valid subgroup");
    let matrices = embedding.iter().map(|&g| rep.matrices[g].clone()).collect();
    GroupRep {
        group: sub,
        dim: rep.dim,
        matrices,
    }
}
