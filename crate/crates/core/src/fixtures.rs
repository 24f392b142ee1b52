//! Named example 2-groups and seeded random generators for property checks.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::group::FiniteGroup;
use crate::grouprep::{self, GroupRep};
use crate::linalg::{self, c, CMatrix};
use crate::meas2cat::{HilbertField, MatrixFunctor, MatrixNatTrans};
use crate::measure::{FiniteMeasure, FiniteSpace, MeasureFamily};
use crate::rep_theory::{
    classify_indecomposables, fiberwise_orbits, make_intertwiner, two_sum_reps, Intertwiner, Representation,
};
use crate::scalar::{rat, Rational};
use crate::two_group::{validate_crossed_module, CrossedModule, FiniteAbelian, SkeletalTwoGroup};

/// `G` acting on `H` by inversion through a sign homomorphism.
fn inversion(g: FiniteGroup, factors: Vec<usize>, sign: impl Fn(&FiniteGroup, usize) -> bool) -> SkeletalTwoGroup {
    let signs: Vec<bool> = g.elements().map(|x| sign(&g, x)).collect();
    SkeletalTwoGroup::inversion_action(g, FiniteAbelian::new(factors).expect("small"), &signs).expect("valid action")
}

/// Elements outside the commutator subgroup; for `S3` these are the transpositions.
fn outside_commutator(g: &FiniteGroup, x: usize) -> bool {
    !g.commutator_subgroup().contains(&x)
}

/// The skeletal 2-groups used throughout the property suites.
pub fn skeletal_fixtures() -> Vec<(String, SkeletalTwoGroup)> {
    let z2 = FiniteGroup::cyclic(2);
    let mut out = vec![
        (
            "Z2 acting on Z3 by inversion".to_string(),
            inversion(z2.clone(), vec![3], |_, x| x == 1),
        ),
        (
            "trivial 2-group".to_string(),
            SkeletalTwoGroup::trivial_action(FiniteGroup::trivial(), FiniteAbelian::new(vec![]).expect("trivial")),
        ),
        (
            "S3 acting trivially on Z2".to_string(),
            SkeletalTwoGroup::trivial_action(FiniteGroup::symmetric(3), FiniteAbelian::new(vec![2]).expect("small")),
        ),
        (
            "S3 acting on Z3 through the sign".to_string(),
            inversion(FiniteGroup::symmetric(3), vec![3], outside_commutator),
        ),
        (
            "Z4 acting on Z5 by inversion".to_string(),
            inversion(FiniteGroup::cyclic(4), vec![5], |_, x| x % 2 == 1),
        ),
    ];
    // Z2 swapping the factors of Z2×Z2.
    let h = FiniteAbelian::new(vec![2, 2]).expect("small");
    let swap: Vec<usize> = (0..4)
        .map(|i| {
            let t = h.element(i);
            h.index(&[t[1], t[0]])
        })
        .collect();
    out.push((
        "Z2 swapping the factors of Z2xZ2".to_string(),
        SkeletalTwoGroup::new(z2, h, vec![(0..4).collect(), swap]).expect("valid action"),
    ));
    out
}

/// Crossed modules for the exchange-law suite, skeletal and not.
pub fn crossed_module_fixtures() -> Vec<(String, CrossedModule)> {
    let mut out: Vec<(String, CrossedModule)> = skeletal_fixtures()
        .into_iter()
        .map(|(name, tg)| (name, tg.to_crossed_module()))
        .collect();
    let identity_module = |name: &str, g: FiniteGroup| {
        let n = g.order();
        let action = g
            .elements()
            .map(|a| g.elements().map(|h| g.mul(g.mul(a, h), g.inv(a))).collect())
            .collect();
        let module = validate_crossed_module(g.clone(), g, (0..n).collect(), action).expect("conjugation module");
        (name.to_string(), module)
    };
    out.push(identity_module("Z4 with identity boundary", FiniteGroup::cyclic(4)));
    out.push(identity_module("S3 acting on itself by conjugation", FiniteGroup::symmetric(3)));
    out.push(identity_module("Q8 acting on itself by conjugation", FiniteGroup::quaternion()));
    out
}

/// Every group of order at most 8, up to isomorphism.
pub fn small_groups() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = vec![("1".to_string(), FiniteGroup::trivial())];
    for n in 2..=8 {
        out.push((format!("Z{n}"), FiniteGroup::cyclic(n)));
    }
    out.push(("Z2xZ2".to_string(), FiniteGroup::abelian(&[2, 2])));
    out.push(("Z2xZ4".to_string(), FiniteGroup::abelian(&[2, 4])));
    out.push(("Z2xZ2xZ2".to_string(), FiniteGroup::abelian(&[2, 2, 2])));
    out.push(("S3".to_string(), FiniteGroup::symmetric(3)));
    out.push(("D4".to_string(), FiniteGroup::dihedral(4)));
    out.push(("Q8".to_string(), FiniteGroup::quaternion()));
    out
}

/// Every abelian group of order at most 8 in cyclic-factor form.
pub fn small_abelian_groups() -> Vec<FiniteAbelian> {
    [
        vec![],
        vec![2],
        vec![3],
        vec![4],
        vec![2, 2],
        vec![5],
        vec![6],
        vec![7],
        vec![8],
        vec![2, 4],
        vec![2, 2, 2],
    ]
    .into_iter()
    .map(|f| FiniteAbelian::new(f).expect("small"))
    .collect()
}

/// Automorphisms of `H` as permutations of its element indices.
pub fn automorphisms(h: &FiniteAbelian) -> Vec<Vec<usize>> {
    let n = h.order();
    let k = h.factors().len();
    let element_order = |a: usize| {
        let mut x = a;
        let mut ord = 1;
        while x != 0 {
            x = h.add(x, a);
            ord += 1;
        }
        ord
    };
    let candidates: Vec<Vec<usize>> = h
        .factors()
        .iter()
        .map(|&f| (0..n).filter(|&a| f % element_order(a) == 0).collect())
        .collect();
    let mut out = Vec::new();
    let mut images = vec![0; k];
    fn extend(
        h: &FiniteAbelian,
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        i: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == candidates.len() {
            let map: Vec<usize> = (0..h.order())
                .map(|a| {
                    h.element(a).iter().zip(images.iter()).fold(0, |acc, (&e, &img)| {
                        (0..e).fold(acc, |acc2, _| h.add(acc2, img))
                    })
                })
                .collect();
            let distinct: BTreeSet<usize> = map.iter().copied().collect();
            if distinct.len() == h.order() {
                out.push(map);
            }
            return;
        }
        for &cand in &candidates[i] {
            images[i] = cand;
            extend(h, candidates, images, i + 1, out);
        }
    }
    extend(h, &candidates, &mut images, 0, &mut out);
    out
}

fn greedy_generators(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![0];
    for x in g.elements() {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.generated(&gens);
        }
    }
    gens
}

fn compose_perm(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

/// Homomorphisms `G → Aut(H)` as action tables `[g][h]`.
fn actions(g: &FiniteGroup, autos: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let gens = greedy_generators(g);
    let perm_order = |p: &Vec<usize>| {
        let id: Vec<usize> = (0..p.len()).collect();
        let mut q = p.clone();
        let mut ord = 1;
        while q != id {
            q = compose_perm(p, &q);
            ord += 1;
        }
        ord
    };
    let orders: Vec<usize> = autos.iter().map(perm_order).collect();
    let options: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            (0..autos.len()).filter(|&a| o % orders[a] == 0).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0; gens.len()];
    let total: usize = options.iter().map(Vec::len).product();
    // Mixed-radix counter over the generator images.
    for mut code in 0..total {
        for (i, opts) in options.iter().enumerate() {
            choice[i] = opts[code % opts.len()];
            code /= opts.len();
        }
        if let Some(table) = extend_to_hom(g, &gens, &choice, autos) {
            out.push(table);
        }
    }
    out
}

fn extend_to_hom(g: &FiniteGroup, gens: &[usize], choice: &[usize], autos: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = autos.first().map_or(1, Vec::len);
    let mut image: Vec<Option<Vec<usize>>> = vec![None; g.order()];
    image[0] = Some((0..n).collect());
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        let ia = image[a].clone().expect("visited");
        for (i, &s) in gens.iter().enumerate() {
            let b = g.mul(a, s);
            let candidate = compose_perm(&ia, &autos[choice[i]]);
            match &image[b] {
                Some(existing) if *existing != candidate => return None,
                Some(_) => {}
                None => {
                    image[b] = Some(candidate);
                    queue.push_back(b);
                }
            }
        }
    }
    image.into_iter().collect()
}

/// All skeletal 2-groups with `|G|, |H| ≤ 8`, one per action up to
/// conjugation by automorphisms of `H`.
pub fn small_skeletal_two_groups() -> Vec<(String, SkeletalTwoGroup)> {
    let mut out = Vec::new();
    for h in small_abelian_groups() {
        let autos = automorphisms(&h);
        let inverse: Vec<Vec<usize>> = autos
            .iter()
            .map(|a| {
                let mut inv = vec![0; a.len()];
                for (i, &j) in a.iter().enumerate() {
                    inv[j] = i;
                }
                inv
            })
            .collect();
        for (gname, g) in small_groups() {
            let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
            for table in actions(&g, &autos) {
                let canonical = autos
                    .iter()
                    .zip(&inverse)
                    .map(|(a, ai)| {
                        table
                            .iter()
                            .map(|row| compose_perm(a, &compose_perm(row, ai)))
                            .collect::<Vec<_>>()
                    })
                    .min()
                    .expect("identity automorphism");
                if !seen.insert(canonical) {
                    continue;
                }
                let index = seen.len();
                let name = format!("{gname} on Z{:?} #{index}", h.factors());
                let tg = SkeletalTwoGroup::new(g.clone(), h.clone(), table).expect("homomorphism into Aut(H)");
                out.push((name, tg));
            }
        }
    }
    out
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(1..=6), rng.gen_range(1..=4))
}

/// Weights with the given probability of being zero.
pub fn random_measure<R: Rng>(rng: &mut R, space: &FiniteSpace, zero_prob: f64) -> FiniteMeasure {
    let weights = (0..space.len())
        .map(|_| {
            if rng.gen_bool(zero_prob) {
                Rational::from_integer(0.into())
            } else {
                random_rational(rng)
            }
        })
        .collect();
    FiniteMeasure::new(space.clone(), weights).expect("nonnegative")
}

pub fn random_family<R: Rng>(rng: &mut R, index: &FiniteSpace, base: &FiniteSpace, zero_prob: f64) -> MeasureFamily {
    let members = (0..index.len()).map(|_| random_measure(rng, base, zero_prob)).collect();
    MeasureFamily::new(index.clone(), base.clone(), members).expect("matching spaces")
}

/// A random functor `X → Y` with dimensions up to `max_dim` on the support.
pub fn random_functor<R: Rng>(rng: &mut R, target: &FiniteSpace, source: &FiniteSpace, max_dim: usize) -> MatrixFunctor {
    let measures = random_family(rng, target, source, 0.35);
    let dims = (0..target.len() * source.len())
        .map(|p| {
            if measures.charges(p / source.len(), p % source.len()) {
                rng.gen_range(1..=max_dim)
            } else {
                0
            }
        })
        .collect();
    let field = HilbertField::new(target.clone(), source.clone(), dims).expect("shape");
    MatrixFunctor::new(field, measures).expect("concentrated")
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Well-conditioned: a random matrix shifted by a multiple of the identity.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> CMatrix {
    random_matrix(rng, n, n) * c(0.3, 0.0) + linalg::identity(n)
}

pub fn random_nattrans<R: Rng>(rng: &mut R, source: &MatrixFunctor, target: &MatrixFunctor) -> MatrixNatTrans {
    MatrixNatTrans::from_fn(source.clone(), target.clone(), |y, x| {
        random_matrix(rng, target.dim(y, x), source.dim(y, x))
    })
    .expect("shapes follow the functors")
}

/// A random functor with the same support pattern and dimensions as `t` but fresh weights.
pub fn reweighted<R: Rng>(rng: &mut R, t: &MatrixFunctor) -> MatrixFunctor {
    let (ny, nx) = (t.target_space().len(), t.source_space().len());
    let rows = (0..ny)
        .map(|y| {
            (0..nx)
                .map(|x| {
                    if t.charges(y, x) {
                        random_rational(rng)
                    } else {
                        Rational::from_integer(0.into())
                    }
                })
                .collect()
        })
        .collect();
    let measures = MeasureFamily::from_rows(t.target_space().clone(), t.source_space().clone(), rows).expect("weights");
    MatrixFunctor::new(t.field().clone(), measures).expect("same support")
}

/// A representation that is a 2-sum of one or two random indecomposables.
pub fn random_representation<R: Rng>(rng: &mut R, tg: &SkeletalTwoGroup) -> Representation {
    let classes = classify_indecomposables(tg);
    let first = classes.choose(rng).expect("at least one class").representation.clone();
    if rng.gen_bool(0.4) {
        let second = classes.choose(rng).expect("at least one class").representation.clone();
        two_sum_reps(&first, &second).expect("same 2-group")
    } else {
        first
    }
}

/// A random stabilizer representation: a direct sum of one or two irreducibles,
/// conjugated by a random invertible matrix.
pub fn random_group_rep<R: Rng>(rng: &mut R, group: &FiniteGroup, max_dim: usize) -> GroupRep {
    let (_, irreps) = grouprep::irreducible_representations(group).expect("small group");
    let small: Vec<&GroupRep> = irreps.iter().filter(|r| r.dim() <= max_dim).collect();
    let mut parts = vec![*small.choose(rng).expect("trivial rep")];
    if rng.gen_bool(0.3) {
        let extra = *small.choose(rng).expect("trivial rep");
        if parts[0].dim() + extra.dim() <= max_dim {
            parts.push(extra);
        }
    }
    let d: usize = parts.iter().map(|r| r.dim()).sum();
    let a = random_invertible(rng, d);
    let a_inv = linalg::inverse(&a).expect("well-conditioned");
    let matrices = group
        .elements()
        .map(|g| {
            let blocks: Vec<CMatrix> = parts.iter().map(|r| r.matrix(g).clone()).collect();
            &a * linalg::block_diag(&blocks) * &a_inv
        })
        .collect();
    GroupRep::new(group.clone(), d, matrices).expect("conjugate of a representation")
}

/// A random intertwiner `ρ1 → ρ2`: random fiberwise orbits, random weights on
/// them, and a random gauge applied to a section-built cocycle.
pub fn random_intertwiner<R: Rng>(
    rng: &mut R,
    source: &Representation,
    target: &Representation,
    max_dim: usize,
) -> Intertwiner {
    let grp = source.group();
    let nx = source.space().len();
    let ny = target.space().len();
    let diagonal = target.action().product(source.action());
    let mut rows = vec![vec![Rational::from_integer(0.into()); nx]; ny];
    let mut dims = vec![0; ny * nx];
    let mut cocycle = vec![vec![None; ny * nx]; grp.order()];
    for orbit in fiberwise_orbits(source, target) {
        if !rng.gen_bool(0.6) {
            continue;
        }
        let base = orbit[0];
        let stabilizer = diagonal.stabilizer(base);
        let (sub, _) = grp.subgroup_as_group(&stabilizer).expect("stabilizer");
        let rep = random_group_rep(rng, &sub, max_dim);
        let position: HashMap<usize, usize> = stabilizer.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let gauge: HashMap<usize, CMatrix> = orbit.iter().map(|&u| (u, random_invertible(rng, rep.dim()))).collect();
        let gauge_inv: HashMap<usize, CMatrix> = gauge
            .iter()
            .map(|(&u, a)| (u, linalg::inverse(a).expect("well-conditioned")))
            .collect();
        for &u in &orbit {
            rows[u / nx][u % nx] = random_rational(rng);
            dims[u] = rep.dim();
        }
        for g in grp.elements() {
            for &u in &orbit {
                let v = diagonal.act(u, grp.inv(g));
                let sv = diagonal.transporter(base, v).expect("orbit");
                let su = diagonal.transporter(base, u).expect("orbit");
                let s = grp.mul(grp.mul(sv, g), grp.inv(su));
                cocycle[g][u] = Some(&gauge[&v] * rep.matrix(position[&s]) * &gauge_inv[&u]);
            }
        }
    }
    let measures = MeasureFamily::from_rows(target.space().clone(), source.space().clone(), rows).expect("weights");
    let field = HilbertField::new(target.space().clone(), source.space().clone(), dims).expect("shape");
    let functor = MatrixFunctor::new(field, measures).expect("concentrated");
    make_intertwiner(source, target, functor, cocycle).expect("section-built cocycles are valid")
}
