//! Crossed modules, skeletal 2-groups, and the character dual of the abelian part.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::action::GAction;
use crate::group::{FiniteGroup, GroupError, MAX_ORDER};
use crate::measure::FiniteSpace;
use crate::scalar::{rat, Rational};

/// A product of cyclic groups `Z/n_1 × … × Z/n_k`.
///
/// Elements are exponent tuples, indexed in lexicographic order
/// (last coordinate fastest).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelian {
    factors: Vec<usize>,
}

impl FiniteAbelian {
    pub fn new(factors: Vec<usize>) -> Result<Self, GroupError> {
        let mut order: usize = 1;
        for &n in &factors {
            if n == 0 {
                return Err(GroupError::BadOrder(0));
            }
            order = order.saturating_mul(n);
        }
        if order > MAX_ORDER {
            return Err(GroupError::BadOrder(order));
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn element(&self, index: usize) -> Vec<usize> {
        let mut rest = index;
        let mut out = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            out[i] = rest % self.factors[i];
            rest /= self.factors[i];
        }
        out
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&a, &n)| acc * n + a % n)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.element(a), self.element(b));
        let sum: Vec<usize> = ta.iter().zip(&tb).zip(&self.factors).map(|((x, y), n)| (x + y) % n).collect();
        self.index(&sum)
    }

    /// Index of the `i`-th unit vector.
    pub fn generator(&self, i: usize) -> usize {
        let mut t = vec![0; self.factors.len()];
        t[i] = 1 % self.factors[i];
        self.index(&t)
    }

    pub fn element_name(&self, index: usize) -> String {
        let t = self.element(index);
        match t.len() {
            0 => "0".to_string(),
            1 => t[0].to_string(),
            _ => {
                let parts: Vec<String> = t.iter().map(|a| a.to_string()).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub fn to_group(&self) -> FiniteGroup {
        let n = self.order();
        let table = (0..n).map(|a| (0..n).map(|b| self.add(a, b)).collect()).collect();
        let names = (0..n).map(|a| self.element_name(a)).collect();
        FiniteGroup::from_table(table, Some(names)).expect("product of cyclic groups")
    }
}

/// Finds a cyclic-factor form of an abelian group by exhaustive search.
///
/// Returns the factor form (prime-power factors, primes ascending, exponents
/// descending) and the isomorphism as a map from group elements to tuple
/// indices of the factor form.
pub fn decompose_abelian(group: &FiniteGroup) -> Option<(FiniteAbelian, Vec<usize>)> {
    if !group.is_abelian() {
        return None;
    }
    let n = group.order();
    let orders: Vec<usize> = group.elements().map(|g| group.element_order(g)).collect();
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if rest % p == 0 {
            let mut pk = 1;
            while rest % p == 0 {
                rest /= p;
                pk *= p;
            }
            // s_k = log_p #{x : x^{p^k} = 1} = Σ_i min(λ_i, k)
            let mut s = vec![0usize];
            let mut q = 1;
            while q < pk {
                q *= p;
                let count = orders.iter().filter(|&&o| q % o == 0 && (pk % o == 0)).count();
                s.push(count.ilog(p) as usize);
            }
            let kmax = s.len() - 1;
            let mut parts = Vec::new();
            for k in (1..=kmax).rev() {
                let at_least_k = s[k] - s[k - 1];
                let at_least_next = if k < kmax { s[k + 1] - s[k] } else { 0 };
                for _ in 0..(at_least_k - at_least_next) {
                    parts.push(p.pow(k as u32));
                }
            }
            factors.extend(parts);
        }
        p += 1;
    }
    let form = FiniteAbelian::new(factors.clone()).ok()?;
    let gens = search_generators(group, &orders, &factors, &mut Vec::new(), &BTreeSet::from([0]))?;
    let mut iso = vec![0; n];
    for idx in 0..form.order() {
        let tuple = form.element(idx);
        let mut g = 0;
        for (&a, &e) in tuple.iter().zip(&gens) {
            for _ in 0..a {
                g = group.mul(g, e);
            }
        }
        iso[g] = idx;
    }
    Some((form, iso))
}

fn search_generators(
    group: &FiniteGroup,
    orders: &[usize],
    factors: &[usize],
    chosen: &mut Vec<usize>,
    span: &BTreeSet<usize>,
) -> Option<Vec<usize>> {
    let j = chosen.len();
    if j == factors.len() {
        return Some(chosen.clone());
    }
    for cand in group.elements() {
        if orders[cand] != factors[j] || span.contains(&cand) {
            continue;
        }
        let mut bigger = span.clone();
        let mut power = 0;
        for _ in 0..factors[j] {
            for &s in span {
                bigger.insert(group.mul(s, power));
            }
            power = group.mul(power, cand);
        }
        if bigger.len() == span.len() * factors[j] {
            chosen.push(cand);
            if let Some(found) = search_generators(group, orders, factors, chosen, &bigger) {
                return Some(found);
            }
            chosen.pop();
        }
    }
    None
}

/// A character of a finite abelian group, given by exponents `e_i mod n_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub exponents: Vec<usize>,
}

impl Character {
    /// Phase `Σ a_i e_i / n_i` reduced into `[0, 1)`.
    pub fn phase(&self, h: &FiniteAbelian, element: usize) -> Rational {
        let a = h.element(element);
        let mut phase = Rational::zero();
        for ((ai, ei), &ni) in a.iter().zip(&self.exponents).zip(h.factors()) {
            phase += rat((ai * ei % ni) as i64, ni as i64);
        }
        phase.clone() - phase.floor()
    }

    pub fn value(&self, h: &FiniteAbelian, element: usize) -> Complex64 {
        let phase = self.phase(h, element).to_f64().expect("small rational");
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase)
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        format!("chi({})", parts.join(","))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// All characters, in lexicographic exponent order (same indexing as the group).
pub fn dual_group(h: &FiniteAbelian) -> Vec<Character> {
    (0..h.order())
        .map(|i| Character {
            exponents: h.element(i),
        })
        .collect()
}

/// Pointwise product of characters.
pub fn multiply_characters(h: &FiniteAbelian, a: &Character, b: &Character) -> Character {
    Character {
        exponents: a
            .exponents
            .iter()
            .zip(&b.exponents)
            .zip(h.factors())
            .map(|((x, y), n)| (x + y) % n)
            .collect(),
    }
}

/// Which crossed-module law a violation breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    TableShape,
    BoundaryHomomorphism,
    ActionAutomorphism,
    ActionLaw,
    BoundaryEquivariance,
    PeifferIdentity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::TableShape => "table-shape",
            Axiom::BoundaryHomomorphism => "boundary-homomorphism",
            Axiom::ActionAutomorphism => "action-by-automorphisms",
            Axiom::ActionLaw => "left-action-law",
            Axiom::BoundaryEquivariance => "boundary-equivariance: ∂(g▷h) = g∂(h)g⁻¹",
            Axiom::PeifferIdentity => "peiffer-identity: ∂(h)▷h' = hh'h⁻¹",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    /// Named group elements witnessing the failure.
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{} crossed-module law violation(s); first: {} at {:?}", .violations.len(), .violations[0].axiom, .violations[0].witness)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

/// `(G, H, ▷, ∂)` with both compatibility laws verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    g: FiniteGroup,
    h: FiniteGroup,
    partial: Vec<usize>,
    /// `action[g][h] = g▷h`
    action: Vec<Vec<usize>>,
    h_factors: Option<FiniteAbelian>,
}

/// A 2-morphism `(g, h)` from `g` to `∂(h)g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoMorphism {
    pub g: usize,
    pub h: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("2-morphisms are not vertically composable: target of the first is {first_target}, source of the second is {second_source}")]
pub struct NotComposable {
    pub first_target: usize,
    pub second_source: usize,
}

/// Exhaustively checks every crossed-module law.
pub fn validate_crossed_module(
    g: FiniteGroup,
    h: FiniteGroup,
    partial: Vec<usize>,
    action: Vec<Vec<usize>>,
) -> Result<CrossedModule, ViolationReport> {
    let mut violations = Vec::new();
    let (ng, nh) = (g.order(), h.order());
    let mut push = |axiom, witness: Vec<String>| {
        if violations.iter().filter(|v: &&Violation| v.axiom == axiom).count() < 3 {
            violations.push(Violation { axiom, witness });
        }
    };
    if partial.len() != nh
        || partial.iter().any(|&x| x >= ng)
        || action.len() != ng
        || action.iter().any(|row| row.len() != nh || row.iter().any(|&x| x >= nh))
    {
        push(Axiom::TableShape, vec![]);
        return Err(ViolationReport { violations });
    }
    let gn = |x: usize| g.name(x).to_string();
    let hn = |x: usize| h.name(x).to_string();
    for a in h.elements() {
        for b in h.elements() {
            if partial[h.mul(a, b)] != g.mul(partial[a], partial[b]) {
                push(Axiom::BoundaryHomomorphism, vec![hn(a), hn(b)]);
            }
        }
    }
    for x in g.elements() {
        let row = &action[x];
        let image: BTreeSet<usize> = row.iter().copied().collect();
        if image.len() != nh {
            push(Axiom::ActionAutomorphism, vec![gn(x)]);
        }
        for a in h.elements() {
            for b in h.elements() {
                if row[h.mul(a, b)] != h.mul(row[a], row[b]) {
                    push(Axiom::ActionAutomorphism, vec![gn(x), hn(a), hn(b)]);
                }
            }
        }
    }
    for a in h.elements() {
        if action[0][a] != a {
            push(Axiom::ActionLaw, vec![gn(0), hn(a)]);
        }
    }
    for x in g.elements() {
        for y in g.elements() {
            for a in h.elements() {
                if action[x][action[y][a]] != action[g.mul(x, y)][a] {
                    push(Axiom::ActionLaw, vec![gn(x), gn(y), hn(a)]);
                }
            }
        }
    }
    for x in g.elements() {
        for a in h.elements() {
            let lhs = partial[action[x][a]];
            let rhs = g.mul(g.mul(x, partial[a]), g.inv(x));
            if lhs != rhs {
                push(Axiom::BoundaryEquivariance, vec![gn(x), hn(a)]);
            }
        }
    }
    for a in h.elements() {
        for b in h.elements() {
            let lhs = action[partial[a]][b];
            let rhs = h.mul(h.mul(a, b), h.inv(a));
            if lhs != rhs {
                push(Axiom::PeifferIdentity, vec![hn(a), hn(b)]);
            }
        }
    }
    if !violations.is_empty() {
        return Err(ViolationReport { violations });
    }
    Ok(CrossedModule {
        g,
        h,
        partial,
        action,
        h_factors: None,
    })
}

impl CrossedModule {
    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn h(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn partial(&self, h: usize) -> usize {
        self.partial[h]
    }

    pub fn partial_map(&self) -> &[usize] {
        &self.partial
    }

    pub fn act(&self, g: usize, h: usize) -> usize {
        self.action[g][h]
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn is_skeletal(&self) -> bool {
        self.partial.iter().all(|&x| x == 0)
    }

    pub fn source(&self, u: TwoMorphism) -> usize {
        u.g
    }

    pub fn target(&self, u: TwoMorphism) -> usize {
        self.g.mul(self.partial[u.h], u.g)
    }

    /// Vertical composite `upper · lower`, defined when `upper` starts where `lower` ends.
    pub fn vmul(&self, upper: TwoMorphism, lower: TwoMorphism) -> Result<TwoMorphism, NotComposable> {
        if upper.g != self.target(lower) {
            return Err(NotComposable {
                first_target: self.target(lower),
                second_source: upper.g,
            });
        }
        Ok(TwoMorphism {
            g: lower.g,
            h: self.h.mul(upper.h, lower.h),
        })
    }

    /// Horizontal composite `(g₂g₁, h₂(g₂▷h₁))`.
    pub fn hmul(&self, left: TwoMorphism, right: TwoMorphism) -> TwoMorphism {
        TwoMorphism {
            g: self.g.mul(left.g, right.g),
            h: self.h.mul(left.h, self.action[left.g][right.h]),
        }
    }

    pub fn two_morphisms(&self) -> impl Iterator<Item = TwoMorphism> + '_ {
        self.g
            .elements()
            .flat_map(move |g| self.h.elements().map(move |h| TwoMorphism { g, h }))
    }

    /// First composable quadruple `(u₁, u₁', u₂, u₂')` breaking the exchange law.
    pub fn exchange_law_violation(&self) -> Option<[TwoMorphism; 4]> {
        for u1 in self.two_morphisms() {
            for h1 in self.h.elements() {
                let u1p = TwoMorphism { g: self.target(u1), h: h1 };
                let lower_v1 = self.vmul(u1p, u1).expect("composable by construction");
                for u2 in self.two_morphisms() {
                    let horiz_lower = self.hmul(u2, u1);
                    for h2 in self.h.elements() {
                        let u2p = TwoMorphism { g: self.target(u2), h: h2 };
                        let lhs = self.hmul(self.vmul(u2p, u2).expect("composable"), lower_v1);
                        let rhs = self
                            .vmul(self.hmul(u2p, u1p), horiz_lower)
                            .expect("horizontal composites are composable");
                        if lhs != rhs {
                            return Some([u1, u1p, u2, u2p]);
                        }
                    }
                }
            }
        }
        None
    }

    /// Inverse for the horizontal product.
    pub fn hinv(&self, u: TwoMorphism) -> TwoMorphism {
        let gi = self.g.inv(u.g);
        TwoMorphism {
            g: gi,
            h: self.action[gi][self.h.inv(u.h)],
        }
    }
}

/// A crossed module with trivial boundary and abelian `H` in factor form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletalTwoGroup {
    g: FiniteGroup,
    h: FiniteAbelian,
    action: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SkeletalError {
    #[error(transparent)]
    Laws(#[from] ViolationReport),
}

impl SkeletalTwoGroup {
    /// `action[g][h] = g▷h` on tuple indices of `h`.
    pub fn new(g: FiniteGroup, h: FiniteAbelian, action: Vec<Vec<usize>>) -> Result<Self, SkeletalError> {
        let h_group = h.to_group();
        let partial = vec![0; h.order()];
        validate_crossed_module(g.clone(), h_group, partial, action.clone())?;
        Ok(Self { g, h, action })
    }

    pub fn trivial_action(g: FiniteGroup, h: FiniteAbelian) -> Self {
        let action = vec![(0..h.order()).collect(); g.order()];
        Self { g, h, action }
    }

    /// `G` acting on `H` through a homomorphism `sign: G → Z/2`, the nontrivial
    /// element acting by inversion.
    pub fn inversion_action(g: FiniteGroup, h: FiniteAbelian, sign: &[bool]) -> Result<Self, SkeletalError> {
        let negate = |i: usize| {
            let t: Vec<usize> = h.element(i).iter().zip(h.factors()).map(|(a, n)| (n - a) % n).collect();
            h.index(&t)
        };
        let action = g
            .elements()
            .map(|x| (0..h.order()).map(|i| if sign[x] { negate(i) } else { i }).collect())
            .collect();
        Self::new(g, h, action)
    }

    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn h(&self) -> &FiniteAbelian {
        &self.h
    }

    pub fn act(&self, g: usize, h: usize) -> usize {
        self.action[g][h]
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn to_crossed_module(&self) -> CrossedModule {
        CrossedModule {
            g: self.g.clone(),
            h: self.h.to_group(),
            partial: vec![0; self.h.order()],
            action: self.action.clone(),
            h_factors: Some(self.h.clone()),
        }
    }

    pub fn dual(&self) -> Vec<Character> {
        dual_group(&self.h)
    }

    /// `χ_g`, with `χ_g[h] = χ[g▷h]`.
    pub fn act_on_character(&self, chi: &Character, g: usize) -> Character {
        let exponents = (0..self.h.factors().len())
            .map(|j| {
                let image = self.action[g][self.h.generator(j)];
                let phase = chi.phase(&self.h, image) * rat(self.h.factors()[j] as i64, 1);
                debug_assert!(phase.is_integer());
                phase.to_integer().to_usize().expect("small exponent") % self.h.factors()[j]
            })
            .collect();
        Character { exponents }
    }

    pub fn character_index(&self, chi: &Character) -> usize {
        self.h.index(&chi.exponents)
    }

    pub fn character_space(&self) -> FiniteSpace {
        FiniteSpace::new(self.dual().iter().map(Character::label)).expect("distinct character labels")
    }

    /// The right action of `G` on `H*`.
    pub fn character_action(&self) -> GAction {
        let chars = self.dual();
        let table = chars
            .iter()
            .map(|chi| {
                self.g
                    .elements()
                    .map(|g| self.character_index(&self.act_on_character(chi, g)))
                    .collect()
            })
            .collect();
        GAction::new(self.g.clone(), self.character_space(), table).expect("dual action is a right action")
    }
}

/// Output of [`skeletize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeletization {
    pub two_group: SkeletalTwoGroup,
    /// `G → G/∂(H)`
    pub g_projection: Vec<usize>,
    /// `H → H/[H,H]`, landing on tuple indices of the factor form.
    pub h_projection: Vec<usize>,
}

pub fn skeletize(module: &CrossedModule) -> Skeletization {
    let image: Vec<usize> = module
        .partial
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let (g_bar, g_projection) = module.g.quotient(&image).expect("∂(H) is normal");
    let commutators = module.h.commutator_subgroup();
    let (h_bar, h_quot) = module.h.quotient(&commutators).expect("[H,H] is normal");
    let (form, iso) = match (&module.h_factors, commutators.len()) {
        (Some(f), 1) => (f.clone(), (0..f.order()).collect()),
        _ => decompose_abelian(&h_bar).expect("abelianization is abelian"),
    };
    let h_projection: Vec<usize> = h_quot.iter().map(|&q| iso[q]).collect();
    let g_reps: Vec<usize> = (0..g_bar.order())
        .map(|c| g_projection.iter().position(|&p| p == c).expect("nonempty coset"))
        .collect();
    let h_reps: Vec<usize> = (0..form.order())
        .map(|c| h_projection.iter().position(|&p| p == c).expect("surjective projection"))
        .collect();
    let action = g_reps
        .iter()
        .map(|&g| h_reps.iter().map(|&h| h_projection[module.action[g][h]]).collect())
        .collect();
    let two_group = SkeletalTwoGroup::new(g_bar, form, action).expect("induced action satisfies the laws");
    Skeletization {
        two_group,
        g_projection,
        h_projection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_on_z3() -> SkeletalTwoGroup {
        SkeletalTwoGroup::inversion_action(
            FiniteGroup::cyclic(2),
            FiniteAbelian::new(vec![3]).unwrap(),
            &[false, true],
        )
        .unwrap()
    }

    #[test]
    fn semidirect_horizontal_product_example() {
        let cm = z2_on_z3().to_crossed_module();
        let u = cm.hmul(TwoMorphism { g: 1, h: 0 }, TwoMorphism { g: 0, h: 1 });
        assert_eq!(u, TwoMorphism { g: 1, h: 2 });
        assert!(cm.exchange_law_violation().is_none());
    }

    #[test]
    fn nonabelian_h_with_trivial_boundary_breaks_peiffer() {
        let s3 = FiniteGroup::symmetric(3);
        let action = vec![(0..6).collect()];
        let err = validate_crossed_module(FiniteGroup::trivial(), s3, vec![0; 6], action).unwrap_err();
        assert!(err.violations.iter().all(|v| v.axiom == Axiom::PeifferIdentity));
    }

    #[test]
    fn conjugation_crossed_module_is_valid() {
        let s3 = FiniteGroup::symmetric(3);
        let action = s3
            .elements()
            .map(|g| s3.elements().map(|h| s3.mul(s3.mul(g, h), s3.inv(g))).collect())
            .collect();
        let cm = validate_crossed_module(s3.clone(), s3.clone(), (0..6).collect(), action).unwrap();
        assert!(cm.exchange_law_violation().is_none());
        let sk = skeletize(&cm);
        assert_eq!(sk.two_group.g().order(), 1);
        assert_eq!(sk.two_group.h().order(), 2);
    }

    #[test]
    fn dual_action_swaps_nontrivial_characters_under_inversion() {
        let tg = z2_on_z3();
        let chars = tg.dual();
        assert_eq!(chars.len(), 3);
        assert_eq!(tg.act_on_character(&chars[1], 1), chars[2]);
        assert_eq!(tg.act_on_character(&chars[0], 1), chars[0]);
        assert_eq!(tg.character_action().orbits().len(), 2);
    }

    #[test]
    fn abelian_decomposition_recovers_factor_form() {
        for factors in [vec![4, 2], vec![6], vec![2, 2, 2], vec![12]] {
            let a = FiniteAbelian::new(factors.clone()).unwrap();
            let (form, iso) = decompose_abelian(&a.to_group()).unwrap();
            assert_eq!(form.order(), a.order());
            let grp = a.to_group();
            let fg = form.to_group();
            assert!(grp.is_homomorphism(&fg, &iso));
        }
        let (form, _) = decompose_abelian(&FiniteGroup::cyclic(12)).unwrap();
        assert_eq!(form.factors(), &[4, 3]);
    }

    #[test]
    fn skeletize_boundary_identity_on_z2() {
        let z2 = FiniteGroup::cyclic(2);
        let cm = validate_crossed_module(z2.clone(), z2, vec![0, 1], vec![vec![0, 1], vec![0, 1]]).unwrap();
        let sk = skeletize(&cm);
        assert_eq!(sk.two_group.g().order(), 1);
        assert_eq!(sk.two_group.h().factors(), &[2]);
    }

    #[test]
    fn skeletal_input_is_fixed() {
        let tg = z2_on_z3();
        let sk = skeletize(&tg.to_crossed_module());
        assert_eq!(sk.two_group, tg);
        assert_eq!(skeletize(&sk.two_group.to_crossed_module()).two_group, tg);
    }
}
