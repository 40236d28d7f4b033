//! The finite semigroup generated by column maps, its minimal-rank Green
//! structure, and the set of consecutive column pairs.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::map::FiniteMap;

/// A semigroup of self-maps closed under composition, elements kept in
/// breadth-first discovery order.
#[derive(Debug, Clone)]
pub struct TransformationSemigroup {
    generators: Vec<FiniteMap>,
    elements: Vec<FiniteMap>,
    index: HashMap<FiniteMap, usize>,
}

impl TransformationSemigroup {
    pub fn close(generators: &[FiniteMap]) -> Self {
        assert!(!generators.is_empty(), "no generators");
        let mut elements: Vec<FiniteMap> = Vec::new();
        let mut index = HashMap::new();
        for g in generators {
            if !index.contains_key(g) {
                index.insert(g.clone(), elements.len());
                elements.push(g.clone());
            }
        }
        let mut i = 0;
        while i < elements.len() {
            for g in generators {
                let f = g * &elements[i];
                if !index.contains_key(&f) {
                    index.insert(f.clone(), elements.len());
                    elements.push(f);
                }
            }
            i += 1;
        }
        TransformationSemigroup {
            generators: generators.to_vec(),
            elements,
            index,
        }
    }

    pub fn generators(&self) -> &[FiniteMap] {
        &self.generators
    }

    pub fn elements(&self) -> &[FiniteMap] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, f: &FiniteMap) -> bool {
        self.index.contains_key(f)
    }

    pub fn index_of(&self, f: &FiniteMap) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// Index of `elements[x] ∘ elements[y]`.
    pub fn product_index(&self, x: usize, y: usize) -> usize {
        self.index[&(&self.elements[x] * &self.elements[y])]
    }

    pub fn min_rank(&self) -> usize {
        self.elements.iter().map(FiniteMap::rank).min().unwrap()
    }

    pub fn idempotents(&self) -> Vec<FiniteMap> {
        self.elements
            .iter()
            .filter(|f| f.is_idempotent())
            .cloned()
            .collect()
    }

    /// Elements of minimal rank: the kernel of the semigroup.
    pub fn minimal_ideal(&self) -> Vec<FiniteMap> {
        let c = self.min_rank();
        self.elements
            .iter()
            .filter(|f| f.rank() == c)
            .cloned()
            .collect()
    }

    fn require_minimal(&self, e: &FiniteMap) -> Result<()> {
        let min_rank = self.min_rank();
        if e.rank() != min_rank {
            return Err(Error::NotMinimalRank {
                rank: e.rank(),
                min_rank,
            });
        }
        Ok(())
    }

    /// The maximal subgroup with identity `e`: elements sharing image and
    /// kernel with `e`.
    pub fn h_class_group(&self, e: &FiniteMap) -> Result<HClassGroup> {
        if !e.is_idempotent() || !self.contains(e) {
            return Err(Error::NoSuchIdempotent);
        }
        self.require_minimal(e)?;
        let image = e.image();
        let kernel = e.kernel();
        let members: Vec<FiniteMap> = self
            .elements
            .iter()
            .filter(|f| f.image() == image && f.kernel() == kernel)
            .cloned()
            .collect();
        HClassGroup::new(e.clone(), members)
    }

    /// The idempotent with the image of `e_from` and the kernel of `e_to`.
    pub fn corner_idempotent(&self, e_from: &FiniteMap, e_to: &FiniteMap) -> Result<FiniteMap> {
        self.require_minimal(e_from)?;
        self.require_minimal(e_to)?;
        let image = e_from.image();
        let kernel = e_to.kernel();
        self.elements
            .iter()
            .find(|f| f.is_idempotent() && f.image() == image && f.kernel() == kernel)
            .cloned()
            .ok_or(Error::NoSuchIdempotent)
    }
}

/// A maximal subgroup `ℋ_e` of the minimal ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HClassGroup {
    identity: FiniteMap,
    members: Vec<FiniteMap>,
    inverse: Vec<usize>,
}

impl HClassGroup {
    fn new(identity: FiniteMap, members: Vec<FiniteMap>) -> Result<Self> {
        let inverse = members
            .iter()
            .map(|f| {
                members
                    .iter()
                    .position(|g| f * g == identity && g * f == identity)
                    .ok_or_else(|| Error::InvalidGroup("H-class member has no inverse".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HClassGroup {
            identity,
            members,
            inverse,
        })
    }

    pub fn identity(&self) -> &FiniteMap {
        &self.identity
    }

    pub fn members(&self) -> &[FiniteMap] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// Membership by image and kernel, for maps that need not lie in the
    /// semigroup.
    pub fn contains(&self, f: &FiniteMap) -> bool {
        f.image() == self.identity.image() && f.kernel() == self.identity.kernel()
    }

    pub fn index_of(&self, f: &FiniteMap) -> Option<usize> {
        self.members.iter().position(|g| g == f)
    }

    pub fn inverse(&self, f: &FiniteMap) -> Option<&FiniteMap> {
        self.index_of(f).map(|i| &self.members[self.inverse[i]])
    }

    /// The members as an abstract group, named by rendering over `alphabet`.
    pub fn as_group(&self, alphabet: &[String]) -> FiniteGroup {
        let names = self.members.iter().map(|f| f.render(alphabet)).collect();
        FiniteGroup::from_maps(&self.members, names).expect("H-class is a group")
    }

    /// Normal closure of `subset` inside the class.
    pub fn normal_closure(&self, subset: &[FiniteMap]) -> Vec<FiniteMap> {
        let names = (0..self.order()).map(|i| i.to_string()).collect();
        let group = FiniteGroup::from_maps(&self.members, names).expect("H-class is a group");
        let gens: Vec<usize> = subset
            .iter()
            .map(|f| self.index_of(f).expect("subset of the class"))
            .collect();
        group
            .normal_closure(&gens)
            .into_iter()
            .map(|i| self.members[i].clone())
            .collect()
    }
}

/// A pair of adjacent column maps `((θⁿ)_{i-1}, (θⁿ)_i)`.
pub type ColumnPair = (FiniteMap, FiniteMap);

/// All pairs of adjacent columns of all powers, in discovery order.
#[derive(Debug, Clone)]
pub struct ConsecutivePairSet {
    pairs: Vec<ColumnPair>,
    lookup: HashSet<ColumnPair>,
}

impl ConsecutivePairSet {
    /// Least set containing the adjacent columns of `θ` and closed under
    /// the two ways adjacent columns of `θ^{n+1} = θ ∘ θⁿ` arise: inside a
    /// block, `(θ_{j-1} ∘ c, θ_j ∘ c)` for a column `c` of `θⁿ`; across a
    /// block boundary, `(θ_{ℓ-1} ∘ L, θ_0 ∘ R)` for adjacent `(L, R)` of `θⁿ`.
    pub fn generate(columns: &[FiniteMap]) -> Self {
        assert!(columns.len() >= 2, "need at least two columns");
        let semigroup = TransformationSemigroup::close(columns);
        let mut set = ConsecutivePairSet {
            pairs: Vec::new(),
            lookup: HashSet::new(),
        };
        for w in columns.windows(2) {
            set.insert((w[0].clone(), w[1].clone()));
        }
        for c in semigroup.elements() {
            for w in columns.windows(2) {
                set.insert((&w[0] * c, &w[1] * c));
            }
        }
        let first = &columns[0];
        let last = &columns[columns.len() - 1];
        let mut i = 0;
        while i < set.pairs.len() {
            let (l, r) = set.pairs[i].clone();
            set.insert((last * &l, first * &r));
            i += 1;
        }
        set
    }

    /// Adjacent columns of `θⁿ` for `n = 1..=max_power`, read directly off
    /// the expanded powers.
    pub fn from_powers(columns: &[FiniteMap], max_power: usize) -> Self {
        let mut set = ConsecutivePairSet {
            pairs: Vec::new(),
            lookup: HashSet::new(),
        };
        let mut current = columns.to_vec();
        for n in 1..=max_power {
            for w in current.windows(2) {
                set.insert((w[0].clone(), w[1].clone()));
            }
            if n < max_power {
                current = crate::subst::compose_expansion(columns, &current);
            }
        }
        set
    }

    fn insert(&mut self, pair: ColumnPair) -> bool {
        if self.lookup.insert(pair.clone()) {
            self.pairs.push(pair);
            true
        } else {
            false
        }
    }

    pub fn pairs(&self) -> &[ColumnPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: &ColumnPair) -> bool {
        self.lookup.contains(pair)
    }

    /// Pairs whose left entry lies in `left` and right entry in `right`.
    pub fn restricted(&self, left: &HClassGroup, right: &HClassGroup) -> Vec<ColumnPair> {
        self.pairs
            .iter()
            .filter(|(l, r)| left.contains(l) && right.contains(r))
            .cloned()
            .collect()
    }
}
