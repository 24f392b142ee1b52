//! Right actions of finite groups on finite spaces.

use std::collections::BTreeSet;

use crate::group::FiniteGroup;
use crate::measure::FiniteSpace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("action table has wrong shape: expected {points} rows of {order} entries")]
    Shape { points: usize, order: usize },
    #[error("action maps point {point} by element {element} outside the space")]
    OutOfRange { point: usize, element: usize },
    #[error("identity moves point {0}")]
    IdentityMoves(usize),
    #[error("(x·g')·g ≠ x·(g'g) at x={point}, g'={first}, g={second}")]
    NotRightAction {
        point: usize,
        first: usize,
        second: usize,
    },
}

/// A validated right action `x·g`, stored as `table[x][g]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GAction {
    group: FiniteGroup,
    space: FiniteSpace,
    table: Vec<Vec<usize>>,
}

impl GAction {
    pub fn new(group: FiniteGroup, space: FiniteSpace, table: Vec<Vec<usize>>) -> Result<Self, ActionError> {
        let (n, order) = (space.len(), group.order());
        if table.len() != n || table.iter().any(|row| row.len() != order) {
            return Err(ActionError::Shape { points: n, order });
        }
        for (x, row) in table.iter().enumerate() {
            if let Some(g) = row.iter().position(|&y| y >= n) {
                return Err(ActionError::OutOfRange { point: x, element: g });
            }
            if row[0] != x {
                return Err(ActionError::IdentityMoves(x));
            }
        }
        for x in 0..n {
            for g1 in group.elements() {
                for g in group.elements() {
                    if table[table[x][g1]][g] != table[x][group.mul(g1, g)] {
                        return Err(ActionError::NotRightAction {
                            point: x,
                            first: g1,
                            second: g,
                        });
                    }
                }
            }
        }
        Ok(Self { group, space, table })
    }

    pub fn trivial(group: FiniteGroup, space: FiniteSpace) -> Self {
        let table = (0..space.len()).map(|x| vec![x; group.order()]).collect();
        Self { group, space, table }
    }

    /// Right translation of the group on itself, points named after elements.
    pub fn regular(group: FiniteGroup) -> Self {
        let space = FiniteSpace::new(group.names().to_vec()).expect("group names are distinct");
        let table = group
            .elements()
            .map(|x| group.elements().map(|g| group.mul(x, g)).collect())
            .collect();
        Self { group, space, table }
    }

    /// Right action on the right cosets `S g`, ordered as in
    /// [`FiniteGroup::right_cosets`]; returns the action and the cosets.
    pub fn on_cosets(group: FiniteGroup, subgroup: &[usize], label_prefix: &str) -> (Self, Vec<Vec<usize>>) {
        let cosets = group.right_cosets(subgroup);
        let mut which = vec![0; group.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &g in c {
                which[g] = i;
            }
        }
        let labels: Vec<String> = cosets
            .iter()
            .map(|c| format!("{label_prefix}{}", group.name(c[0])))
            .collect();
        let space = FiniteSpace::new(labels).expect("coset representatives are distinct");
        let table = cosets
            .iter()
            .map(|c| group.elements().map(|g| which[group.mul(c[0], g)]).collect())
            .collect();
        (Self { group, space, table }, cosets)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// `x·g`.
    pub fn act(&self, x: usize, g: usize) -> usize {
        self.table[x][g]
    }

    /// Orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.space.len()];
        let mut orbits = Vec::new();
        for x in 0..self.space.len() {
            if seen[x] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.table[x].iter().copied().collect();
            for &y in &orbit {
                seen[y] = true;
            }
            orbits.push(orbit.into_iter().collect());
        }
        orbits
    }

    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        let orbit: BTreeSet<usize> = self.table[x].iter().copied().collect();
        orbit.into_iter().collect()
    }

    /// Sorted stabilizer subgroup of `x`.
    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        self.group.elements().filter(|&g| self.table[x][g] == x).collect()
    }

    pub fn is_transitive(&self) -> bool {
        !self.space.is_empty() && self.orbits().len() == 1
    }

    /// Smallest-index element `g` with `from·g = to`.
    pub fn transporter(&self, from: usize, to: usize) -> Option<usize> {
        self.group.elements().find(|&g| self.table[from][g] == to)
    }

    /// Diagonal action on the product `Y×X` of `self` (on Y) and `other` (on X);
    /// the pair `(y, x)` has index `y·|X| + x`.
    pub fn product(&self, other: &GAction) -> GAction {
        assert_eq!(self.group, other.group, "product of actions of different groups");
        let nx = other.space.len();
        let space = FiniteSpace::product(&self.space, &other.space);
        let table = (0..space.len())
            .map(|p| {
                let (y, x) = (p / nx, p % nx);
                self.group
                    .elements()
                    .map(|g| self.act(y, g) * nx + other.act(x, g))
                    .collect()
            })
            .collect();
        GAction {
            group: self.group.clone(),
            space,
            table,
        }
    }
}
