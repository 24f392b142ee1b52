//! Randomized invariant suites behind `check-laws`.
//!
//! Each law draws its instances from its own ChaCha stream seeded by
//! `seed + law index`, so a failing law reproduces in isolation from the
//! printed seed.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::fixtures::{
    crossed_module_fixtures, random_family, random_functor, random_intertwiner, random_invertible, random_measure,
    random_nattrans, random_rational, random_representation, reweighted, skeletal_fixtures,
};
use crate::linalg::{self, EQ_TOL};
use crate::meas2cat::{
    direct_sum_functors, direct_sum_nattrans, horizontal_compose, is_equivalence, is_invertible_2mor, vertical_compose,
    HilbertField, MatrixFunctor, MatrixNatTrans,
};
use crate::measure::{
    compose_families, disintegrate, geometric_mean, reassemble, rn_derivative, FiniteMeasure, FiniteSpace, MeasureFamily,
};
use crate::rep_theory::{
    classify_indecomposables, classify_irretractables, intertwiner_reduction_status, is_indecomposable_rep,
    is_irretractable_rep, make_intertwiner, trivialize, Intertwiner, Representation,
};
use crate::scalar::{Rational, SqrtRational};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawOutcome {
    pub law: String,
    pub seed: u64,
    pub cases: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

type Law = fn(&mut ChaCha8Rng, usize) -> Result<(), String>;

const LAWS: &[(&str, Law)] = &[
    ("measure.chain_rule", chain_rule),
    ("measure.null_sets", null_sets),
    ("measure.chain_lemma", chain_lemma),
    ("measure.family_associativity", family_associativity),
    ("measure.family_units", family_units),
    ("measure.disintegration_round_trip", disintegration_round_trip),
    ("two_group.exchange", exchange),
    ("meas2cat.interchange", interchange),
    ("meas2cat.invertibility", invertibility),
    ("meas2cat.equivalence", equivalence),
    ("meas2cat.adjoint_norm", adjoint_norm),
    ("meas2cat.direct_sum_functoriality", direct_sum_functoriality),
    ("rep_theory.rep_criteria", rep_criteria),
    ("rep_theory.cocycles", cocycles),
    ("rep_theory.implications", implications),
    ("rep_theory.trivialization", trivialization),
];

pub fn law_names() -> Vec<&'static str> {
    LAWS.iter().map(|(name, _)| *name).collect()
}

/// Runs every law on `cases` random instances. `cases = 0` passes vacuously.
pub fn check_laws(seed: u64, cases: usize) -> Vec<LawOutcome> {
    LAWS.iter()
        .enumerate()
        .map(|(i, (name, law))| {
            let law_seed = seed.wrapping_add(i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(law_seed);
            let result = if cases == 0 { Ok(()) } else { law(&mut rng, cases) };
            LawOutcome {
                law: name.to_string(),
                seed: law_seed,
                cases,
                ok: result.is_ok(),
                witness: result.err(),
            }
        })
        .collect()
}

fn space(rng: &mut ChaCha8Rng, prefix: &str, max: usize) -> FiniteSpace {
    FiniteSpace::numbered(prefix, rng.gen_range(1..=max))
}

fn show(m: &FiniteMeasure) -> String {
    let w: Vec<String> = m.weights().iter().map(|w| w.to_string()).collect();
    format!("[{}]", w.join(", "))
}

fn sqrt_rn(num: &FiniteMeasure, den: &FiniteMeasure, point: usize) -> SqrtRational {
    let d = rn_derivative(num, den).expect("same space");
    SqrtRational::new(d.value(point).expect("charged").clone()).expect("nonnegative")
}

fn chain_rule(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for _ in 0..cases {
        let x = space(rng, "x", 6);
        let (t, u) = (random_measure(rng, &x, 0.3), random_measure(rng, &x, 0.3));
        let gm = geometric_mean(&t, &u).map_err(|e| e.to_string())?;
        let (tu, ut) = (rn_derivative(&t, &u).unwrap(), rn_derivative(&u, &t).unwrap());
        for p in gm.support() {
            let product = tu.value(p).map_err(|e| e.to_string())? * ut.value(p).map_err(|e| e.to_string())?;
            if !product.is_one() {
                return Err(format!("t={} u={} point {p}: product {product}", show(&t), show(&u)));
            }
        }
    }
    Ok(())
}

fn null_sets(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for _ in 0..cases {
        let x = space(rng, "x", 6);
        let (t, u) = (random_measure(rng, &x, 0.4), random_measure(rng, &x, 0.4));
        let gm = geometric_mean(&t, &u).unwrap();
        for mask in 0u32..(1 << x.len()) {
            let set: Vec<usize> = (0..x.len()).filter(|i| mask >> i & 1 == 1).collect();
            let gm_null = set.iter().all(|&p| gm.weight(p).is_zero());
            // Brute force over splittings of the set into a t-null and a u-null part.
            let split = (0u32..(1 << set.len())).any(|sub| {
                set.iter()
                    .enumerate()
                    .all(|(i, &p)| if sub >> i & 1 == 1 { !t.charges(p) } else { !u.charges(p) })
            });
            if gm_null != split {
                return Err(format!("t={} u={} set {set:?}", show(&t), show(&u)));
            }
        }
    }
    Ok(())
}

fn chain_lemma(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for _ in 0..cases {
        let x = space(rng, "x", 6);
        let (t, u, v) = (
            random_measure(rng, &x, 0.25),
            random_measure(rng, &x, 0.25),
            random_measure(rng, &x, 0.25),
        );
        let left = geometric_mean(&t, &u).unwrap().with_sqrt_density(&rn_derivative(&v, &u).unwrap());
        let left = left.map_err(|e| e.to_string())?;
        let tv = geometric_mean(&t, &v).unwrap();
        for p in (0..x.len()).filter(|&p| t.charges(p) && u.charges(p) && v.charges(p)) {
            let right = &(&(tv.weight(p) * &sqrt_rn(&v, &t, p)) * &sqrt_rn(&u, &v, p)) * &sqrt_rn(&t, &u, p);
            if left.weight(p) != &right {
                return Err(format!("t={} u={} v={} point {p}", show(&t), show(&u), show(&v)));
            }
        }
    }
    Ok(())
}

fn family_associativity(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for _ in 0..cases {
        let (w, x, y, z) = (space(rng, "w", 4), space(rng, "x", 4), space(rng, "y", 4), space(rng, "z", 4));
        let t = random_family(rng, &y, &x, 0.3);
        let u = random_family(rng, &z, &y, 0.3);
        let v = random_family(rng, &w, &z, 0.3);
        let left = compose_families(&compose_families(&v, &u).unwrap().composite, &t).unwrap().composite;
        let right = compose_families(&v, &compose_families(&u, &t).unwrap().composite).unwrap().composite;
        if left != right {
            return Err(format!("|W|={} |Z|={} |Y|={} |X|={}", w.len(), z.len(), y.len(), x.len()));
        }
    }
    Ok(())
}

fn family_units(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for _ in 0..cases {
        let (x, y) = (space(rng, "x", 5), space(rng, "y", 5));
        let t = random_family(rng, &y, &x, 0.3);
        let left = compose_families(&MeasureFamily::dirac(y.clone()), &t).unwrap().composite;
        let right = compose_families(&t, &MeasureFamily::dirac(x.clone())).unwrap().composite;
        if left != t || right != t {
            return Err(format!("|Y|={} |X|={}", y.len(), x.len()));
        }
    }
    Ok(())
}

fn disintegration_round_trip(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for _ in 0..cases {
        let (x, y) = (space(rng, "x", 4), space(rng, "y", 4));
        let nu = random_measure(rng, &y, 0.3);
        let family = random_family(rng, &y, &x, 0.3);
        let lambda = reassemble(&nu, &family).map_err(|e| e.to_string())?;
        let back = disintegrate(&lambda, &nu, &x).map_err(|e| e.to_string())?;
        let again = reassemble(&nu, &back).map_err(|e| e.to_string())?;
        // The family is recovered exactly where ν charges; elsewhere it is zero.
        let recovered = (0..y.len()).all(|j| {
            if nu.charges(j) {
                back.member(j) == family.member(j)
            } else {
                back.member(j).is_zero()
            }
        });
        if again != lambda || !recovered {
            return Err(format!("nu={}", show(&nu)));
        }
    }
    Ok(())
}

fn exchange(_: &mut ChaCha8Rng, _: usize) -> Result<(), String> {
    let modules = skeletal_fixtures()
        .into_iter()
        .map(|(name, tg)| (name, tg.to_crossed_module()))
        .chain(crossed_module_fixtures());
    for (name, module) in modules {
        if module.g().order() * module.h().order() > 64 {
            continue;
        }
        if let Some(w) = module.exchange_law_violation() {
            return Err(format!("{name}: {w:?}"));
        }
    }
    Ok(())
}

/// A functor with the support of `t`, fresh weights, and fresh dimensions.
fn resized(rng: &mut ChaCha8Rng, t: &MatrixFunctor, max_dim: usize) -> MatrixFunctor {
    let w = reweighted(rng, t);
    let (ny, nx) = (t.target_space().len(), t.source_space().len());
    let dims = (0..ny * nx)
        .map(|p| if t.charges(p / nx, p % nx) { rng.gen_range(1..=max_dim) } else { 0 })
        .collect();
    let field = HilbertField::new(t.target_space().clone(), t.source_space().clone(), dims).unwrap();
    MatrixFunctor::new(field, w.measures().clone()).unwrap()
}

/// A functor related to `t`: same support half the time, independent otherwise.
fn sibling(rng: &mut ChaCha8Rng, t: &MatrixFunctor, max_dim: usize) -> MatrixFunctor {
    if rng.gen_bool(0.6) {
        resized(rng, t, max_dim)
    } else {
        random_functor(rng, t.target_space(), t.source_space(), max_dim)
    }
}

fn interchange(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let (x, y, z) = (space(rng, "x", 4), space(rng, "y", 4), space(rng, "z", 4));
        let t = random_functor(rng, &y, &x, 3);
        let (t1, t2) = (sibling(rng, &t, 3), sibling(rng, &t, 3));
        let u = random_functor(rng, &z, &y, 3);
        let (u1, u2) = (sibling(rng, &u, 3), sibling(rng, &u, 3));
        let (a, a1) = (random_nattrans(rng, &t, &t1), random_nattrans(rng, &t1, &t2));
        let (b, b1) = (random_nattrans(rng, &u, &u1), random_nattrans(rng, &u1, &u2));
        let e = |r: Result<MatrixNatTrans, _>| r.map_err(|e: crate::meas2cat::MeasError| e.to_string());
        let left = e(horizontal_compose(&e(vertical_compose(&b1, &b))?, &e(vertical_compose(&a1, &a))?))?;
        let right = e(vertical_compose(
            &e(horizontal_compose(&b1, &a1))?,
            &e(horizontal_compose(&b, &a))?,
        ))?;
        if !left.approx_eq(&right, EQ_TOL) {
            return Err(format!("case {case}: distance {:e}", left.distance(&right)));
        }
    }
    Ok(())
}

/// Explicit inverse: cellwise inverses checked against both vertical composites.
fn explicit_inverse(alpha: &MatrixNatTrans) -> Option<MatrixNatTrans> {
    let (s, t) = (alpha.source(), alpha.target());
    let cells: Option<Vec<Option<_>>> = (0..s.target_space().len())
        .flat_map(|y| (0..s.source_space().len()).map(move |x| (y, x)))
        .map(|(y, x)| {
            if s.charges(y, x) && t.charges(y, x) {
                linalg::inverse(alpha.cell(y, x)?).map(Some)
            } else {
                Some(None)
            }
        })
        .collect();
    let beta = MatrixNatTrans::new(t.clone(), s.clone(), cells?).ok()?;
    let there = vertical_compose(&beta, alpha).ok()?;
    let back = vertical_compose(alpha, &beta).ok()?;
    let ok = there.approx_eq(&MatrixNatTrans::identity(s), 1e-8) && back.approx_eq(&MatrixNatTrans::identity(t), 1e-8);
    ok.then_some(beta)
}

fn invertibility(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let (x, y) = (space(rng, "x", 4), space(rng, "y", 4));
        let t = random_functor(rng, &y, &x, 3);
        let alpha = match rng.gen_range(0..3) {
            0 => {
                let t1 = reweighted(rng, &t);
                MatrixNatTrans::from_fn(t.clone(), t1.clone(), |y, x| random_invertible(rng, t.dim(y, x))).unwrap()
            }
            1 => {
                let t1 = sibling(rng, &t, 3);
                random_nattrans(rng, &t, &t1)
            }
            _ => {
                let t1 = reweighted(rng, &t);
                let bad = t.measures().support_pairs().choose(rng).copied();
                MatrixNatTrans::from_fn(t.clone(), t1.clone(), |y, x| {
                    let m = random_invertible(rng, t.dim(y, x));
                    if Some((y, x)) == bad {
                        m * Complex64::zero()
                    } else {
                        m
                    }
                })
                .unwrap()
            }
        };
        let claimed = is_invertible_2mor(&alpha);
        let oracle = explicit_inverse(&alpha);
        if claimed.is_some() != oracle.is_some() {
            return Err(format!("case {case}: claimed {} oracle {}", claimed.is_some(), oracle.is_some()));
        }
        if let (Some(c), Some(o)) = (claimed, oracle) {
            if !c.approx_eq(&o, 1e-8) {
                return Err(format!("case {case}: inverses differ"));
            }
        }
    }
    Ok(())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// A functor close to a pullback: a bijection's graph with random weights and
/// occasional defects.
fn near_pullback(rng: &mut ChaCha8Rng) -> MatrixFunctor {
    let n = rng.gen_range(1..=4);
    let ny = if rng.gen_bool(0.85) { n } else { n + 1 };
    let (x, y) = (FiniteSpace::numbered("x", n), FiniteSpace::numbered("y", ny));
    let mut f: Vec<usize> = (0..n).collect();
    f.shuffle(rng);
    let mut rows = vec![vec![Rational::zero(); n]; ny];
    let mut dims = vec![0; ny * n];
    for j in 0..ny {
        let i = f[j % n];
        rows[j][i] = random_rational(rng);
        dims[j * n + i] = if rng.gen_bool(0.9) { 1 } else { 2 };
        if rng.gen_bool(0.08) {
            let k = rng.gen_range(0..n);
            rows[j][k] = random_rational(rng);
            dims[j * n + k] = 1;
        }
    }
    let measures = MeasureFamily::from_rows(y.clone(), x.clone(), rows).unwrap();
    MatrixFunctor::new(HilbertField::new(y, x, dims).unwrap(), measures).unwrap()
}

fn equivalence(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let t = if rng.gen_bool(0.7) {
            near_pullback(rng)
        } else {
            let (x, y) = (space(rng, "x", 3), space(rng, "y", 3));
            random_functor(rng, &y, &x, 2)
        };
        let (ny, nx) = (t.target_space().len(), t.source_space().len());
        let oracle = (ny == nx)
            .then(|| {
                permutations(nx).into_iter().find(|f| {
                    (0..ny).all(|y| (0..nx).all(|x| t.charges(y, x) == (x == f[y]) && (x != f[y] || t.dim(y, x) == 1)))
                })
            })
            .flatten();
        let claimed = is_equivalence(&t).map(|p| p.map().to_vec());
        if claimed != oracle {
            return Err(format!("case {case}: claimed {claimed:?} oracle {oracle:?}"));
        }
    }
    Ok(())
}

fn adjoint_norm(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let (x, y) = (space(rng, "x", 4), space(rng, "y", 4));
        let t = random_functor(rng, &y, &x, 3);
        let t1 = sibling(rng, &t, 3);
        let a = random_nattrans(rng, &t, &t1);
        let aa = vertical_compose(&a.adjoint(), &a).map_err(|e| e.to_string())?;
        let expected = a.norm().powi(2);
        if (aa.norm() - expected).abs() > 1e-8 * expected.max(1.0) {
            return Err(format!("case {case}: ‖α*α‖={} ‖α‖²={expected}", aa.norm()));
        }
    }
    Ok(())
}

fn direct_sum_functoriality(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let (x, y) = (space(rng, "x", 3), space(rng, "y", 3));
        let t = random_functor(rng, &y, &x, 2);
        let s = random_functor(rng, &y, &x, 2);
        let (t1, t2) = (sibling(rng, &t, 2), sibling(rng, &t, 2));
        let (s1, s2) = (sibling(rng, &s, 2), sibling(rng, &s, 2));
        let (a, a1) = (random_nattrans(rng, &t, &t1), random_nattrans(rng, &t1, &t2));
        let (b, b1) = (random_nattrans(rng, &s, &s1), random_nattrans(rng, &s1, &s2));
        let e = |r: Result<MatrixNatTrans, crate::meas2cat::MeasError>| r.map_err(|e| e.to_string());
        let left = e(vertical_compose(&e(direct_sum_nattrans(&a1, &b1))?, &e(direct_sum_nattrans(&a, &b))?))?;
        let right = e(direct_sum_nattrans(&e(vertical_compose(&a1, &a))?, &e(vertical_compose(&b1, &b))?))?;
        let id = e(direct_sum_nattrans(&MatrixNatTrans::identity(&t), &MatrixNatTrans::identity(&s)))?;
        let sum = direct_sum_functors(&t, &s).map_err(|e| e.to_string())?;
        if !left.approx_eq(&right, EQ_TOL) || !id.approx_eq(&MatrixNatTrans::identity(&sum), EQ_TOL) {
            return Err(format!("case {case}: distance {:e}", left.distance(&right)));
        }
    }
    Ok(())
}

fn fixture_rep(rng: &mut ChaCha8Rng) -> Representation {
    let fixtures = skeletal_fixtures();
    let (_, tg) = fixtures.choose(rng).expect("fixtures");
    random_representation(rng, tg)
}

/// Whether some nonempty proper subset of points is invariant.
fn splits(rho: &Representation) -> bool {
    let n = rho.space().len();
    (1u32..(1 << n).max(1) - 1).any(|mask| {
        (0..n)
            .filter(|x| mask >> x & 1 == 1)
            .all(|x| rho.group().elements().all(|g| mask >> rho.action().act(x, g) & 1 == 1))
    })
}

fn rep_criteria(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let rho = fixture_rep(rng);
        let n = rho.space().len();
        let indecomposable = is_indecomposable_rep(&rho);
        let irretractable = is_irretractable_rep(&rho);
        if n <= 6 && indecomposable != (n > 0 && !splits(&rho)) {
            return Err(format!("case {case}: splitting search disagrees"));
        }
        let dual = rho.two_group().character_action();
        let mut image = rho.chi().to_vec();
        image.sort_unstable();
        let injective = image.windows(2).all(|w| w[0] != w[1]);
        let bijective = n > 0 && injective && image == {
            let mut o = dual.orbit_of(image[0]);
            o.sort_unstable();
            o
        };
        if irretractable != bijective {
            return Err(format!("case {case}: orbit-bijection criterion disagrees"));
        }
        if irretractable && !indecomposable {
            return Err(format!("case {case}: irretractable but decomposable"));
        }
    }
    Ok(())
}

fn fixture_intertwiner(rng: &mut ChaCha8Rng) -> Intertwiner {
    let fixtures = skeletal_fixtures();
    let (_, tg) = fixtures.choose(rng).expect("fixtures");
    let rho1 = random_representation(rng, tg);
    let rho2 = random_representation(rng, tg);
    random_intertwiner(rng, &rho1, &rho2, 3)
}

fn cocycles(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let phi = fixture_intertwiner(rng);
        let grp = phi.source().group().clone();
        let diagonal = phi.diagonal();
        for orbit in phi.support_orbits() {
            for &p in &orbit {
                for g in grp.elements() {
                    for h in grp.elements() {
                        let q = diagonal.act(p, grp.inv(h));
                        let (y, x) = (p / phi.source().space().len(), p % phi.source().space().len());
                        let (qy, qx) = (q / phi.source().space().len(), q % phi.source().space().len());
                        let lhs = phi.cocycle_at(grp.mul(g, h), y, x).ok_or("missing cell")?;
                        let rhs = phi.cocycle_at(g, qy, qx).ok_or("missing cell")? * phi.cocycle_at(h, y, x).unwrap();
                        if !linalg::approx_eq(lhs, &rhs, 1e-8) {
                            return Err(format!("case {case}: cocycle law fails at ({g}, {h}) point {p}"));
                        }
                    }
                }
            }
        }
        // Breaking one cell must be caught by validation.
        if let Some(&(y, x)) = phi.measures().support_pairs().first() {
            let n = phi.source().space().len();
            let mut broken = phi.cocycle().clone();
            let g = grp.order() - 1;
            if g != grp.identity() {
                let cell = broken[g][y * n + x].as_mut().unwrap();
                *cell *= Complex64::new(2.0, 0.0);
                if make_intertwiner(phi.source(), phi.target(), phi.functor().clone(), broken).is_ok() {
                    return Err(format!("case {case}: corrupted cocycle accepted"));
                }
            }
        }
    }
    Ok(())
}

fn implications(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let phi = fixture_intertwiner(rng);
        let status = intertwiner_reduction_status(&phi).map_err(|e| e.to_string())?;
        if (status.irreducible && !status.irretractable) || (status.irretractable && !status.indecomposable) {
            return Err(format!("case {case}: {status:?}"));
        }
    }
    for (name, tg) in skeletal_fixtures() {
        for class in classify_indecomposables(&tg) {
            if !is_indecomposable_rep(&class.representation) {
                return Err(format!("{name}: classified indecomposable fails the test"));
            }
        }
        for rho in classify_irretractables(&tg) {
            if !is_irretractable_rep(&rho) || !is_indecomposable_rep(&rho) {
                return Err(format!("{name}: classified irretractable fails the chain"));
            }
        }
    }
    Ok(())
}

fn trivialization(rng: &mut ChaCha8Rng, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        let phi = fixture_intertwiner(rng);
        let (trivial, m) = trivialize(&phi).map_err(|e| e.to_string())?;
        if !m.is_invertible() {
            return Err(format!("case {case}: trivializing 2-intertwiner is singular"));
        }
        let nx = phi.source().space().len();
        for orbit in trivial.support_orbits() {
            let d = trivial.functor().dim(orbit[0] / nx, orbit[0] % nx);
            if orbit.iter().any(|&p| trivial.functor().dim(p / nx, p % nx) != d) {
                return Err(format!("case {case}: fiber dimension varies along an orbit"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_laws_hold_on_a_few_cases() {
        for outcome in check_laws(1, 5) {
            assert!(outcome.ok, "{outcome:?}");
        }
    }

    #[test]
    fn zero_cases_is_vacuous() {
        let outcomes = check_laws(0, 0);
        assert_eq!(outcomes.len(), law_names().len());
        assert!(outcomes.iter().all(|o| o.ok && o.witness.is_none()));
    }
}
