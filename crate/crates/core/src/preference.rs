//! Arbitrary binary preference relations over a finite outcome set.
//!
//! A relation is stored exactly as given; no closure is ever taken. `x ≺ y`
//! reads "the player strictly prefers `y` to `x`".

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_rational::Rational64;

use crate::game::OutcomeId;

/// Strongest structural class a relation belongs to, weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PreferenceClass {
    Arbitrary,
    Acyclic,
    StrictWeakOrder,
    StrictLinear,
}

impl PreferenceClass {
    pub fn is_acyclic(self) -> bool {
        self >= PreferenceClass::Acyclic
    }

    pub fn name(self) -> &'static str {
        match self {
            PreferenceClass::Arbitrary => "arbitrary",
            PreferenceClass::Acyclic => "acyclic",
            PreferenceClass::StrictWeakOrder => "strict-weak-order",
            PreferenceClass::StrictLinear => "strict-linear",
        }
    }
}

impl fmt::Display for PreferenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Returned when an operation needs an acyclic relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicRelation;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Preference {
    n: usize,
    less: Vec<bool>,
}

impl fmt::Debug for Preference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.pairs().map(|(x, y)| (x.0, y.0)))
            .finish()
    }
}

impl Preference {
    pub fn empty(n_outcomes: usize) -> Self {
        Preference {
            n: n_outcomes,
            less: vec![false; n_outcomes * n_outcomes],
        }
    }

    pub fn from_pairs(n_outcomes: usize, pairs: impl IntoIterator<Item = (OutcomeId, OutcomeId)>) -> Self {
        let mut p = Self::empty(n_outcomes);
        for (x, y) in pairs {
            p.insert(x, y);
        }
        p
    }

    /// The transitive chain `order[0] ≺ order[1] ≺ …`.
    pub fn chain(n_outcomes: usize, order: &[OutcomeId]) -> Self {
        let mut p = Self::empty(n_outcomes);
        for (i, &x) in order.iter().enumerate() {
            for &y in &order[i + 1..] {
                p.insert(x, y);
            }
        }
        p
    }

    /// Every member of an earlier group is below every member of a later one.
    pub fn layered(n_outcomes: usize, groups: &[Vec<OutcomeId>]) -> Self {
        let mut p = Self::empty(n_outcomes);
        for (i, lower) in groups.iter().enumerate() {
            for upper in &groups[i + 1..] {
                for &x in lower {
                    for &y in upper {
                        p.insert(x, y);
                    }
                }
            }
        }
        p
    }

    /// `x ≺ y` iff component `player` of `x`'s payoff is smaller.
    pub fn from_payoffs(payoffs: &[Vec<Rational64>], player: usize) -> Self {
        let n = payoffs.len();
        let mut p = Self::empty(n);
        for x in 0..n {
            for y in 0..n {
                if payoffs[x][player] < payoffs[y][player] {
                    p.insert(OutcomeId::new(x), OutcomeId::new(y));
                }
            }
        }
        p
    }

    pub fn n_outcomes(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, x: OutcomeId, y: OutcomeId) {
        self.less[x.index() * self.n + y.index()] = true;
    }

    /// `x ≺ y`: the player strictly prefers `y`.
    #[inline]
    pub fn prefers(&self, x: OutcomeId, y: OutcomeId) -> bool {
        self.less[x.index() * self.n + y.index()]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (OutcomeId, OutcomeId)> + '_ {
        (0..self.n).flat_map(move |x| {
            (0..self.n)
                .filter(move |&y| self.less[x * self.n + y])
                .map(move |y| (OutcomeId::new(x), OutcomeId::new(y)))
        })
    }

    pub fn len(&self) -> usize {
        self.less.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Pairwise inclusion of relations over the same outcome set.
    pub fn is_subrelation_of(&self, other: &Preference) -> bool {
        self.n == other.n && self.less.iter().zip(&other.less).all(|(&a, &b)| !a || b)
    }

    pub fn inverse(&self) -> Preference {
        Preference::from_pairs(self.n, self.pairs().map(|(x, y)| (y, x)))
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn classify(&self) -> PreferenceClass {
        if !self.is_acyclic() {
            return PreferenceClass::Arbitrary;
        }
        let n = self.n;
        let r = |x: usize, y: usize| self.less[x * n + y];
        // irreflexivity is implied by acyclicity
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if r(x, y) && r(y, z) && !r(x, z) {
                        return PreferenceClass::Acyclic;
                    }
                    if !r(x, y) && !r(y, z) && r(x, z) {
                        return PreferenceClass::Acyclic;
                    }
                }
            }
        }
        let total = (0..n).all(|x| (0..n).all(|y| x == y || r(x, y) || r(y, x)));
        if total {
            PreferenceClass::StrictLinear
        } else {
            PreferenceClass::StrictWeakOrder
        }
    }

    /// Kahn's algorithm, smallest outcome id first among ready vertices.
    pub fn topological_order(&self) -> Option<Vec<OutcomeId>> {
        let n = self.n;
        let mut indegree = vec![0usize; n];
        for (_, y) in self.pairs() {
            indegree[y.index()] += 1;
        }
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&x| indegree[x] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(x)) = ready.pop() {
            order.push(OutcomeId::new(x));
            for (y, deg) in indegree.iter_mut().enumerate() {
                if self.less[x * n + y] {
                    *deg -= 1;
                    if *deg == 0 {
                        ready.push(Reverse(y));
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// A strict linear order containing the relation.
    pub fn linear_extension(&self) -> Result<Preference, CyclicRelation> {
        let order = self.topological_order().ok_or(CyclicRelation)?;
        Ok(Preference::chain(self.n, &order))
    }

    /// `h(o)`: node count of the longest `≺`-chain whose maximum is `o`.
    pub fn chain_heights(&self) -> Result<Vec<usize>, CyclicRelation> {
        let order = self.topological_order().ok_or(CyclicRelation)?;
        let mut height = vec![1usize; self.n];
        for x in order {
            for y in 0..self.n {
                if self.less[x.index() * self.n + y] {
                    height[y] = height[y].max(height[x.index()] + 1);
                }
            }
        }
        Ok(height)
    }

    pub fn chain_height(&self, o: OutcomeId) -> Result<usize, CyclicRelation> {
        Ok(self.chain_heights()?[o.index()])
    }

    /// Largest chain cardinality; 1 for an empty relation over a non-empty set.
    pub fn max_chain_height(&self) -> Result<usize, CyclicRelation> {
        Ok(self.chain_heights()?.into_iter().max().unwrap_or(0))
    }

    /// Indices of the `≺`-maximal entries: nothing listed is strictly preferred.
    pub fn maximal_indices(&self, candidates: &[OutcomeId]) -> Vec<usize> {
        (0..candidates.len())
            .filter(|&j| !candidates.iter().any(|&k| self.prefers(candidates[j], k)))
            .collect()
    }

    /// If the relation is the closure of a sequence of groups (a strict weak
    /// order, possibly with unmentioned outcomes), returns the groups.
    pub(crate) fn as_layers(&self) -> Option<Vec<Vec<OutcomeId>>> {
        if self.is_empty() {
            return None;
        }
        let involved: Vec<usize> = (0..self.n)
            .filter(|&x| (0..self.n).any(|y| self.less[x * self.n + y] || self.less[y * self.n + x]))
            .collect();
        let heights = self.chain_heights().ok()?;
        let top = involved.iter().map(|&x| heights[x]).max()?;
        let groups: Vec<Vec<OutcomeId>> = (1..=top)
            .map(|h| {
                involved
                    .iter()
                    .filter(|&&x| heights[x] == h)
                    .map(|&x| OutcomeId::new(x))
                    .collect()
            })
            .collect();
        if groups.iter().any(|g| g.is_empty()) {
            return None;
        }
        (Preference::layered(self.n, &groups) == *self).then_some(groups)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(i: usize) -> OutcomeId {
        OutcomeId::new(i)
    }

    #[test]
    fn classify_examples() {
        // x=0 y=1 z=2
        let total = Preference::from_pairs(3, [(o(0), o(1)), (o(1), o(2)), (o(0), o(2))]);
        assert_eq!(total.classify(), PreferenceClass::StrictLinear);

        let two_cycle = Preference::from_pairs(3, [(o(0), o(1)), (o(1), o(0))]);
        assert_eq!(two_cycle.classify(), PreferenceClass::Arbitrary);

        let intransitive = Preference::from_pairs(3, [(o(0), o(1)), (o(1), o(2))]);
        assert_eq!(intransitive.classify(), PreferenceClass::Acyclic);

        let reflexive = Preference::from_pairs(1, [(o(0), o(0))]);
        assert_eq!(reflexive.classify(), PreferenceClass::Arbitrary);

        let weak = Preference::layered(3, &[vec![o(0), o(1)], vec![o(2)]]);
        assert_eq!(weak.classify(), PreferenceClass::StrictWeakOrder);

        // ¬(x≺y) ∧ ¬(y≺z) ∧ x≺z breaks transitivity of the complement
        let only_xz = Preference::from_pairs(3, [(o(0), o(2))]);
        assert_eq!(only_xz.classify(), PreferenceClass::Acyclic);
    }

    #[test]
    fn linear_extension_uses_id_tie_break() {
        let only_xz = Preference::from_pairs(3, [(o(0), o(2))]);
        let ext = only_xz.linear_extension().unwrap();
        assert_eq!(ext, Preference::chain(3, &[o(0), o(1), o(2)]));

        let already = Preference::chain(3, &[o(2), o(0), o(1)]);
        assert_eq!(already.linear_extension().unwrap(), already);

        assert_eq!(
            Preference::empty(2).linear_extension().unwrap(),
            Preference::from_pairs(2, [(o(0), o(1))])
        );

        let cyclic = Preference::from_pairs(2, [(o(0), o(1)), (o(1), o(0))]);
        assert_eq!(cyclic.linear_extension(), Err(CyclicRelation));
    }

    #[test]
    fn chain_heights_examples() {
        // y ≺ x ≺ t with y=0, x=1, t=2
        let chain = Preference::chain(3, &[o(0), o(1), o(2)]);
        assert_eq!(chain.chain_heights().unwrap(), vec![1, 2, 3]);
        assert_eq!(chain.max_chain_height().unwrap(), 3);
        assert_eq!(Preference::empty(4).chain_heights().unwrap(), vec![1; 4]);
        let cyclic = Preference::from_pairs(1, [(o(0), o(0))]);
        assert!(cyclic.chain_heights().is_err());
    }

    #[test]
    fn layers_detects_weak_orders() {
        let weak = Preference::layered(4, &[vec![o(3)], vec![o(0), o(1)]]);
        assert_eq!(weak.as_layers().unwrap(), vec![vec![o(3)], vec![o(0), o(1)]]);
        let intransitive = Preference::from_pairs(3, [(o(0), o(1)), (o(1), o(2))]);
        assert!(intransitive.as_layers().is_none());
    }
}
