//! Property tests for the module invariants. Instances come from the fixture
//! generators, driven by a proptest-chosen seed so failures shrink to a seed.

use std::collections::BTreeMap;

use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tworep::action::GAction;
use tworep::fixtures::{
    crossed_module_fixtures, random_family, random_functor, random_intertwiner, random_invertible, random_measure,
    random_nattrans, random_representation, reweighted, skeletal_fixtures,
};
use tworep::linalg;
use tworep::meas2cat::{
    compose_functors, direct_sum_functors, is_invertible_2mor, tensor_functors, vertical_compose, MatrixFunctor,
    MatrixNatTrans,
};
use tworep::measure::{
    compose_families, disintegrate, equivalent, geometric_mean, lebesgue_decompose, reassemble, rn_derivative,
    FiniteSpace, MeasureFamily,
};
use tworep::rep_theory::{
    is_indecomposable_rep, make_representation, rep_equivalent, restrict_rep, two_sum_reps, Representation,
};
use tworep::two_group::{dual_group, multiply_characters, skeletize, Character, FiniteAbelian, TwoMorphism};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn space(r: &mut ChaCha8Rng, prefix: &str, max: usize) -> FiniteSpace {
    FiniteSpace::numbered(prefix, r.gen_range(0..=max))
}

fn concentrated(t: &MatrixFunctor) -> bool {
    let (ny, nx) = (t.target_space().len(), t.source_space().len());
    (0..ny).all(|y| (0..nx).all(|x| t.charges(y, x) == (t.dim(y, x) > 0)))
}

/// Same representation on a shuffled copy of its space.
fn relabeled(rho: &Representation, r: &mut ChaCha8Rng) -> Representation {
    use rand::seq::SliceRandom;
    let n = rho.space().len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let table = (0..n)
        .map(|i| rho.group().elements().map(|g| inv[rho.action().act(perm[i], g)]).collect())
        .collect();
    let action = GAction::new(rho.group().clone(), FiniteSpace::numbered("p", n), table).unwrap();
    let chi = perm.iter().map(|&p| rho.chi()[p]).collect();
    make_representation(rho.two_group().clone(), action, chi).unwrap()
}

fn character_order(h: &FiniteAbelian, c: &Character) -> usize {
    let unit = Character { exponents: vec![0; h.factors().len()] };
    let mut power = c.clone();
    let mut k = 1;
    while power != unit {
        power = multiply_characters(h, &power, c);
        k += 1;
    }
    k
}

fn order_profile(orders: impl Iterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for o in orders {
        *m.entry(o).or_insert(0) += 1;
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // ------------------------------------------------------------ measure

    #[test]
    fn chain_rule_on_geometric_support(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = space(&mut r, "x", 6);
        let (t, u) = (random_measure(&mut r, &x, 0.3), random_measure(&mut r, &x, 0.3));
        let (tu, ut) = (rn_derivative(&t, &u).unwrap(), rn_derivative(&u, &t).unwrap());
        for p in geometric_mean(&t, &u).unwrap().support() {
            prop_assert!((tu.value(p).unwrap() * ut.value(p).unwrap()).is_one());
        }
    }

    #[test]
    fn geometric_null_points_are_null_for_one_factor(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = space(&mut r, "x", 6);
        let (t, u) = (random_measure(&mut r, &x, 0.4), random_measure(&mut r, &x, 0.4));
        let gm = geometric_mean(&t, &u).unwrap();
        for p in 0..x.len() {
            prop_assert_eq!(gm.weight(p).is_zero(), !t.charges(p) || !u.charges(p));
        }
    }

    #[test]
    fn lebesgue_parts_match_up(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = space(&mut r, "x", 6);
        let (t, u) = (random_measure(&mut r, &x, 0.4), random_measure(&mut r, &x, 0.4));
        let (t_ac, t_sing) = lebesgue_decompose(&t, &u).unwrap();
        let (u_ac, u_sing) = lebesgue_decompose(&u, &t).unwrap();
        prop_assert!(equivalent(&t_ac, &u_ac));
        prop_assert!((0..x.len()).all(|p| !(t_sing.charges(p) && u_sing.charges(p))));
        prop_assert_eq!(t_ac.add(&t_sing).unwrap(), t);
    }

    #[test]
    fn family_composition_is_associative_and_unital(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (w, z, y, x) = (space(&mut r, "w", 4), space(&mut r, "z", 4), space(&mut r, "y", 4), space(&mut r, "x", 4));
        let t = random_family(&mut r, &y, &x, 0.3);
        let u = random_family(&mut r, &z, &y, 0.3);
        let v = random_family(&mut r, &w, &z, 0.3);
        let vu = compose_families(&v, &u).unwrap().composite;
        let ut = compose_families(&u, &t).unwrap().composite;
        prop_assert_eq!(compose_families(&vu, &t).unwrap().composite, compose_families(&v, &ut).unwrap().composite);
        prop_assert_eq!(&compose_families(&MeasureFamily::dirac(y), &t).unwrap().composite, &t);
        prop_assert_eq!(&compose_families(&t, &MeasureFamily::dirac(x)).unwrap().composite, &t);
    }

    #[test]
    fn disintegration_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (y, x) = (space(&mut r, "y", 5), space(&mut r, "x", 5));
        let nu = random_measure(&mut r, &y, 0.3);
        let lambda = reassemble(&nu, &random_family(&mut r, &y, &x, 0.3)).unwrap();
        let family = disintegrate(&lambda, &nu, &x).unwrap();
        prop_assert_eq!(reassemble(&nu, &family).unwrap(), lambda);
        prop_assert!((0..y.len()).all(|j| nu.charges(j) || family.member(j).is_zero()));
    }

    // ------------------------------------------------------------ meas2cat

    #[test]
    fn identity_functors_are_units(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (y, x) = (space(&mut r, "y", 4), space(&mut r, "x", 4));
        let t = random_functor(&mut r, &y, &x, 3);
        let left = compose_functors(&MatrixFunctor::identity(y), &t).unwrap();
        let right = compose_functors(&t, &MatrixFunctor::identity(x)).unwrap();
        prop_assert_eq!(left.field(), t.field());
        prop_assert_eq!(left.measures(), t.measures());
        prop_assert_eq!(right.field(), t.field());
        prop_assert_eq!(right.measures(), t.measures());
    }

    #[test]
    fn constructors_keep_dimensions_on_the_support(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (z, y, x) = (space(&mut r, "z", 3), space(&mut r, "y", 3), space(&mut r, "x", 3));
        let t = random_functor(&mut r, &y, &x, 2);
        let t2 = random_functor(&mut r, &y, &x, 2);
        let u = random_functor(&mut r, &z, &y, 2);
        prop_assert!(concentrated(&compose_functors(&u, &t).unwrap()));
        prop_assert!(concentrated(&direct_sum_functors(&t, &t2).unwrap()));
        if let Ok(product) = tensor_functors(&t, &u) {
            prop_assert!(concentrated(&product));
        }
    }

    #[test]
    fn invertible_two_morphisms_compose_to_identities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (y, x) = (space(&mut r, "y", 4), space(&mut r, "x", 4));
        let t = random_functor(&mut r, &y, &x, 3);
        let t1 = reweighted(&mut r, &t);
        let alpha = MatrixNatTrans::from_fn(t.clone(), t1.clone(), |y, x| random_invertible(&mut r, t.dim(y, x))).unwrap();
        let inverse = is_invertible_2mor(&alpha).expect("cellwise invertible on a common support");
        prop_assert!(vertical_compose(&inverse, &alpha).unwrap().approx_eq(&MatrixNatTrans::identity(&t), 1e-9));
        prop_assert!(vertical_compose(&alpha, &inverse).unwrap().approx_eq(&MatrixNatTrans::identity(&t1), 1e-9));
    }

    #[test]
    fn adjoint_reverses_and_satisfies_the_norm_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (y, x) = (space(&mut r, "y", 4), space(&mut r, "x", 4));
        let t = random_functor(&mut r, &y, &x, 3);
        let (t1, t2) = (reweighted(&mut r, &t), reweighted(&mut r, &t));
        let (a, b) = (random_nattrans(&mut r, &t, &t1), random_nattrans(&mut r, &t1, &t2));
        let lhs = vertical_compose(&b, &a).unwrap().adjoint();
        let rhs = vertical_compose(&a.adjoint(), &b.adjoint()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, 1e-9));
        let n = a.norm();
        prop_assert!((vertical_compose(&a.adjoint(), &a).unwrap().norm() - n * n).abs() <= 1e-9 * (1.0 + n * n));
    }

    // ------------------------------------------------------------ two_group

    #[test]
    fn horizontal_product_is_a_group(fixture in 0usize..9, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let fixtures = crossed_module_fixtures();
        let (_, m) = &fixtures[fixture % fixtures.len()];
        let all: Vec<TwoMorphism> = m.two_morphisms().collect();
        let pick = |k: u32| all[k as usize % all.len()];
        let (u, v, w) = (pick(a), pick(b), pick(c));
        let unit = TwoMorphism { g: m.g().identity(), h: m.h().identity() };
        prop_assert_eq!(m.hmul(m.hmul(u, v), w), m.hmul(u, m.hmul(v, w)));
        prop_assert_eq!(m.hmul(u, unit), u);
        prop_assert_eq!(m.hmul(unit, u), u);
        prop_assert_eq!(m.hmul(m.hinv(u), u), unit);
        prop_assert_eq!(m.hmul(u, m.hinv(u)), unit);
    }

    #[test]
    fn dual_group_matches_h(factors in proptest::collection::vec(1usize..7, 0..3)) {
        let h = FiniteAbelian::new(factors).unwrap();
        let dual = dual_group(&h);
        prop_assert_eq!(dual.len(), h.order());
        for a in &dual {
            for b in &dual {
                prop_assert!(dual.contains(&multiply_characters(&h, a, b)));
            }
        }
        let group = h.to_group();
        prop_assert_eq!(
            order_profile(dual.iter().map(|c| character_order(&h, c))),
            order_profile(group.elements().map(|e| group.element_order(e)))
        );
    }

    #[test]
    fn characters_carry_a_right_action_by_automorphisms(fixture in 0usize..16, seed in any::<u64>()) {
        let fixtures = skeletal_fixtures();
        let (_, tg) = &fixtures[fixture % fixtures.len()];
        let mut r = rng(seed);
        let dual = tg.dual();
        let (a, b) = (&dual[r.gen_range(0..dual.len())], &dual[r.gen_range(0..dual.len())]);
        let (g, k) = (r.gen_range(0..tg.g().order()), r.gen_range(0..tg.g().order()));
        prop_assert_eq!(tg.act_on_character(&tg.act_on_character(a, g), k), tg.act_on_character(a, tg.g().mul(g, k)));
        prop_assert_eq!(
            tg.act_on_character(&multiply_characters(tg.h(), a, b), g),
            multiply_characters(tg.h(), &tg.act_on_character(a, g), &tg.act_on_character(b, g))
        );
    }

    #[test]
    fn skeletize_is_idempotent(fixture in 0usize..9) {
        let fixtures = crossed_module_fixtures();
        let (_, m) = &fixtures[fixture % fixtures.len()];
        let once = skeletize(m).two_group;
        let twice = skeletize(&once.to_crossed_module()).two_group;
        prop_assert_eq!(once, twice);
    }

    // ------------------------------------------------------------ rep_theory

    #[test]
    fn rep_equivalence_is_an_equivalence_relation(fixture in 0usize..16, seed in any::<u64>()) {
        let fixtures = skeletal_fixtures();
        let (_, tg) = &fixtures[fixture % fixtures.len()];
        let mut r = rng(seed);
        let a = random_representation(&mut r, tg);
        let b = relabeled(&a, &mut r);
        let c = relabeled(&b, &mut r);
        let other = random_representation(&mut r, tg);
        prop_assert!(rep_equivalent(&a, &a).is_some());
        prop_assert!(rep_equivalent(&a, &b).is_some() && rep_equivalent(&b, &a).is_some());
        prop_assert!(rep_equivalent(&a, &c).is_some());
        prop_assert_eq!(rep_equivalent(&a, &other).is_some(), rep_equivalent(&other, &a).is_some());
        if rep_equivalent(&a, &other).is_some() {
            prop_assert!(rep_equivalent(&c, &other).is_some());
        }
    }

    #[test]
    fn indecomposable_iff_no_invariant_splitting(fixture in 0usize..16, seed in any::<u64>()) {
        let fixtures = skeletal_fixtures();
        let (_, tg) = &fixtures[fixture % fixtures.len()];
        let mut r = rng(seed);
        let a = random_representation(&mut r, tg);
        let rho = if a.space().len() <= 3 && r.gen_bool(0.5) {
            two_sum_reps(&a, &random_representation(&mut r, tg)).unwrap()
        } else {
            a
        };
        let n = rho.space().len();
        prop_assume!(n <= 6);
        // Nonempty and not the 2-sum of two nonempty invariant pieces.
        let splits = (1u32..(1 << n) - 1).any(|mask| {
            let inside = |x: usize| mask >> x & 1 == 1;
            (0..n).all(|x| rho.group().elements().all(|g| inside(rho.action().act(x, g)) == inside(x)))
        });
        prop_assert_eq!(is_indecomposable_rep(&rho), n > 0 && !splits);
        if n > 0 {
            let orbit = rho.action().orbit_of(0);
            prop_assert!(is_indecomposable_rep(&restrict_rep(&rho, &orbit)));
        }
    }

    #[test]
    fn cocycle_law_holds_on_supporting_orbits(fixture in 0usize..16, seed in any::<u64>()) {
        let fixtures = skeletal_fixtures();
        let (_, tg) = &fixtures[fixture % fixtures.len()];
        let mut r = rng(seed);
        let rho1 = random_representation(&mut r, tg);
        let rho2 = if r.gen_bool(0.5) { rho1.clone() } else { random_representation(&mut r, tg) };
        let phi = random_intertwiner(&mut r, &rho1, &rho2, 2);
        let grp = rho1.group();
        let nx = rho1.space().len();
        let diagonal = phi.diagonal();
        for orbit in phi.support_orbits() {
            for &p in &orbit {
                for g in grp.elements() {
                    for h in grp.elements() {
                        let q = diagonal.act(p, grp.inv(h));
                        let lhs = phi.cocycle_at(grp.mul(g, h), p / nx, p % nx).unwrap();
                        let rhs = phi.cocycle_at(g, q / nx, q % nx).unwrap() * phi.cocycle_at(h, p / nx, p % nx).unwrap();
                        prop_assert!(linalg::approx_eq(lhs, &rhs, 1e-8));
                    }
                }
            }
        }
    }
}
