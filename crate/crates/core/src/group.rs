//! Finite groups given by Cayley tables, with the subgroup, coset and conjugacy
//! machinery the classification code relies on.
//!
//! Elements are indices `0..order`, index 0 is the identity, and
//! `mul(a, b)` is the product `ab`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

/// Largest order accepted by exhaustive validation.
pub const MAX_ORDER: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group order {0} is outside 1..={MAX_ORDER}")]
    BadOrder(usize),
    #[error("Cayley table is not square or has an out-of-range entry at row {row}")]
    MalformedTable { row: usize },
    #[error("element 0 is not a two-sided identity (fails at {0})")]
    IdentityNotFirst(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("expected {expected} element names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("permutation generators must all act on {0} points and be bijections")]
    BadPermutation(usize),
    #[error("{0:?} is not a subgroup")]
    NotSubgroup(Vec<usize>),
    #[error("{0:?} is not a normal subgroup")]
    NotNormal(Vec<usize>),
}

#[derive(Debug, PartialEq, Eq)]
struct GroupData {
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    names: Vec<String>,
}

/// A validated finite group. Cloning is cheap.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.table == other.data.table && self.data.names == other.data.names)
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a Cayley table. `names` defaults to `"0"`, `"1"`, ...
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || n > MAX_ORDER {
            return Err(GroupError::BadOrder(n));
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n || entries.iter().any(|&e| e >= n) {
                return Err(GroupError::MalformedTable { row });
            }
        }
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return Err(GroupError::IdentityNotFirst(i));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == 0 && table[b][a] == 0)
                .ok_or(GroupError::NoInverse(a))?;
            inverses.push(inv);
        }
        let names = match names {
            Some(names) => {
                if names.len() != n {
                    return Err(GroupError::NameCount {
                        expected: n,
                        got: names.len(),
                    });
                }
                let mut seen = BTreeSet::new();
                for name in &names {
                    if !seen.insert(name.clone()) {
                        return Err(GroupError::DuplicateName(name.clone()));
                    }
                }
                names
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(Self {
            data: Arc::new(GroupData {
                table,
                inverses,
                names,
            }),
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Z/n with element `k` named `"k"`.
    pub fn cyclic(n: usize) -> Self {
        Self::abelian(&[n])
    }

    /// Product of cyclic groups, elements in lexicographic exponent order.
    pub fn abelian(factors: &[usize]) -> Self {
        crate::two_group::FiniteAbelian::new(factors.to_vec())
            .expect("valid cyclic factors")
            .to_group()
    }

    /// Closure of permutation generators acting on `degree` points.
    ///
    /// Elements are listed in breadth-first order from the identity and are
    /// named by their image lists.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self, GroupError> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(GroupError::BadPermutation(degree));
            }
            for &p in g {
                if p >= degree || seen[p] {
                    return Err(GroupError::BadPermutation(degree));
                }
                seen[p] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        // Composition convention: (p q)(i) = q(p(i)), i.e. apply p first.
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { p.iter().map(|&i| q[i]).collect() };
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next = compose(&elements[i], g);
                if !index.contains_key(&next) {
                    if elements.len() >= MAX_ORDER {
                        return Err(GroupError::BadOrder(MAX_ORDER + 1));
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let table = elements
            .iter()
            .map(|p| elements.iter().map(|q| index[&compose(p, q)]).collect())
            .collect();
        let names = elements
            .iter()
            .map(|p| {
                let parts: Vec<String> = p.iter().map(|i| i.to_string()).collect();
                format!("[{}]", parts.join(" "))
            })
            .collect();
        Self::from_table(table, Some(names))
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        Self::from_permutations(n.max(1), &gens).expect("symmetric group")
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[rotation, reflection]).expect("dihedral group")
    }

    /// The quaternion group of order 8.
    pub fn quaternion() -> Self {
        // Elements ±1, ±i, ±j, ±k encoded as (sign, unit) with unit in {1,i,j,k}.
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            // returns (negate, unit)
            match (a, b) {
                (0, u) | (u, 0) => (false, u),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let encode = |neg: bool, unit: usize| unit * 2 + usize::from(neg);
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (na, ua) = (a % 2 == 1, a / 2);
                        let (nb, ub) = (b % 2 == 1, b / 2);
                        let (n, u) = unit_mul(ua, ub);
                        encode(na ^ nb ^ n, u)
                    })
                    .collect()
            })
            .collect();
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_table(table, Some(names)).expect("quaternion group")
    }

    pub fn product(a: &Self, b: &Self) -> Self {
        let (na, nb) = (a.order(), b.order());
        let table = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        let names = (0..na * nb)
            .map(|x| format!("({},{})", a.name(x / nb), b.name(x % nb)))
            .collect();
        Self::from_table(table, Some(names)).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.data.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.data.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.data.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.data.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.data.table
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.data.names.iter().position(|n| n == name)
    }

    /// `g⁻¹ a g`.
    pub fn conjugate(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted subgroup generated by `generators`.
    pub fn generated(&self, generators: &[usize]) -> Vec<usize> {
        let mut members = BTreeSet::from([0usize]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = self.mul(x, g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        members.into_iter().collect()
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        set.contains(&0)
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    /// Every subgroup, each as a sorted element list, ordered by (size, elements).
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::from([vec![0]]);
        let mut frontier = vec![vec![0usize]];
        while let Some(sub) = frontier.pop() {
            for g in self.elements() {
                if sub.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = sub.clone();
                gens.push(g);
                let bigger = self.generated(&gens);
                if found.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        let mut all: Vec<Vec<usize>> = found.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    /// Subgroups of `within` (itself a subgroup), one per conjugacy class under
    /// conjugation by elements of `within`. Each representative is the
    /// lexicographically smallest member of its class.
    pub fn subgroup_classes_within(&self, within: &[usize]) -> Vec<Vec<usize>> {
        let within_set: BTreeSet<usize> = within.iter().copied().collect();
        let subs: Vec<Vec<usize>> = self
            .all_subgroups()
            .into_iter()
            .filter(|s| s.iter().all(|e| within_set.contains(e)))
            .collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut reps = Vec::new();
        for s in &subs {
            if seen.contains(s) {
                continue;
            }
            let class: BTreeSet<Vec<usize>> = within
                .iter()
                .map(|&k| self.conjugate_subgroup(s, k))
                .collect();
            reps.push(class.iter().next().expect("nonempty class").clone());
            seen.extend(class);
        }
        reps
    }

    /// `k⁻¹ S k` as a sorted list.
    pub fn conjugate_subgroup(&self, subgroup: &[usize], k: usize) -> Vec<usize> {
        let mut out: Vec<usize> = subgroup.iter().map(|&s| self.conjugate(s, k)).collect();
        out.sort_unstable();
        out
    }

    /// Conjugacy classes, each sorted, ordered by smallest element (identity first).
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order()];
        let mut classes = Vec::new();
        for a in self.elements() {
            if assigned[a] {
                continue;
            }
            let class: BTreeSet<usize> = self.elements().map(|g| self.conjugate(a, g)).collect();
            for &c in &class {
                assigned[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// Right cosets `S g`, each sorted, ordered by smallest element.
    pub fn right_cosets(&self, subgroup: &[usize]) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order()];
        let mut cosets = Vec::new();
        for g in self.elements() {
            if assigned[g] {
                continue;
            }
            let mut coset: Vec<usize> = subgroup.iter().map(|&s| self.mul(s, g)).collect();
            coset.sort_unstable();
            for &c in &coset {
                assigned[c] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        let set: BTreeSet<usize> = subgroup.iter().copied().collect();
        self.elements()
            .all(|g| subgroup.iter().all(|&s| set.contains(&self.conjugate(s, g))))
    }

    /// The subgroup as a group in its own right, with its embedding.
    ///
    /// The subgroup's elements keep their sorted order, so index 0 is the identity.
    pub fn subgroup_as_group(&self, subgroup: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        let mut elements = subgroup.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if !self.is_subgroup(&elements) {
            return Err(GroupError::NotSubgroup(elements));
        }
        let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let table = elements
            .iter()
            .map(|&a| elements.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        let names = elements.iter().map(|&e| self.name(e).to_string()).collect();
        Ok((FiniteGroup::from_table(table, Some(names))?, elements))
    }

    /// Quotient by a normal subgroup with the projection map.
    ///
    /// Cosets are ordered by smallest element; each is named after that element.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_subgroup(normal) {
            return Err(GroupError::NotSubgroup(normal.to_vec()));
        }
        if !self.is_normal(normal) {
            return Err(GroupError::NotNormal(normal.to_vec()));
        }
        let cosets = self.right_cosets(normal);
        let mut projection = vec![0; self.order()];
        for (i, coset) in cosets.iter().enumerate() {
            for &g in coset {
                projection[g] = i;
            }
        }
        let table = cosets
            .iter()
            .map(|a| cosets.iter().map(|b| projection[self.mul(a[0], b[0])]).collect())
            .collect();
        let names = cosets.iter().map(|c| self.name(c[0]).to_string()).collect();
        Ok((FiniteGroup::from_table(table, Some(names))?, projection))
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let commutators: Vec<usize> = self
            .elements()
            .flat_map(|a| {
                self.elements()
                    .map(move |b| (a, b))
            })
            .map(|(a, b)| self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        self.generated(&commutators)
    }

    /// Whether `map` (indexed by elements of `self`) is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order()
            && map.iter().all(|&m| m < target.order())
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b]))
            })
    }
}
