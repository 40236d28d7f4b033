//! Finite groups given by multiplication tables.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::FiniteMap;

/// Default cap on the number of candidate assignments tried by searches.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// A finite group on `{0, .., n-1}` with named elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

/// JSON form: `{"elements": [...], "table": [[...]], "identity": "..."}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
    pub identity: String,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGroup("no elements".into()));
        }
        if names.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(Error::InvalidGroup("duplicate element names".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("product outside the group".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let inverse = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table[x][y] == identity && table[y][x] == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("{} has no inverse", names[x])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup {
            names,
            table,
            identity,
            inverse,
        })
    }

    pub fn from_doc(doc: &GroupDoc) -> Result<Self> {
        let index: HashMap<&str, usize> = doc
            .elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::InvalidGroup(format!("unknown element {s:?}")))
        };
        let table = doc
            .table
            .iter()
            .map(|row| row.iter().map(|s| lookup(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let group = FiniteGroup::new(doc.elements.clone(), table)?;
        if lookup(&doc.identity)? != group.identity {
            return Err(Error::InvalidGroup(format!(
                "{:?} is not the identity",
                doc.identity
            )));
        }
        Ok(group)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GroupDoc = serde_json::from_str(text)?;
        FiniteGroup::from_doc(&doc)
    }

    pub fn to_doc(&self) -> GroupDoc {
        GroupDoc {
            elements: self.names.clone(),
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|&x| self.names[x].clone()).collect())
                .collect(),
            identity: self.names[self.identity].clone(),
        }
    }

    /// The group formed by `members` under composition; `members` must be
    /// closed and contain an identity map.
    pub fn from_maps(members: &[FiniteMap], names: Vec<String>) -> Result<Self> {
        let index: HashMap<&FiniteMap, usize> =
            members.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let table = members
            .iter()
            .map(|f| {
                members
                    .iter()
                    .map(|g| {
                        index
                            .get(&(f * g))
                            .copied()
                            .ok_or_else(|| Error::InvalidGroup("maps are not closed".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::new(names, table)
    }

    /// ℤ/nℤ with elements named `0, .., n-1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::new(names, table).expect("cyclic table is a group")
    }

    /// The symmetric group on `{1, .., n}`, elements named in cycle notation
    /// (`e`, `(1 2)`, `(1 2 3)`, ...), product `στ` = apply `τ` first.
    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 1);
        let perms = permutations(n);
        let names = perms.iter().map(|p| cycle_name(p)).collect();
        let maps: Vec<FiniteMap> = perms.into_iter().map(FiniteMap::new).collect();
        FiniteGroup::from_maps(&maps, names).expect("permutations form a group")
    }

    /// `G × H` with elements named `(g,h)`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let m = other.order();
        let names = (0..self.order() * m)
            .map(|x| format!("({},{})", self.names[x / m], other.names[x % m]))
            .collect();
        let table = (0..self.order() * m)
            .map(|x| {
                (0..self.order() * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        FiniteGroup::new(names, table).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn product(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items
            .into_iter()
            .fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut members = vec![self.identity];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    /// The smallest normal subgroup containing `gens`, sorted.
    pub fn normal_closure(&self, gens: &[usize]) -> Vec<usize> {
        let conjugates: Vec<usize> = (0..self.order())
            .flat_map(|g| {
                gens.iter()
                    .map(move |&h| self.mul(self.mul(g, h), self.inv(g)))
            })
            .collect();
        self.subgroup_generated(&conjugates)
    }

    /// A small generating set, chosen greedily by decreasing element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.order()).collect();
        by_order.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for x in by_order {
            if span.len() == self.order() {
                break;
            }
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    /// All isomorphisms `self → other` as image tables.
    pub fn isomorphisms(&self, other: &FiniteGroup, budget: u128) -> Result<Vec<Vec<usize>>> {
        let mut found = Vec::new();
        self.search_isomorphisms(other, budget, &mut |iso| {
            found.push(iso.to_vec());
            true
        })?;
        Ok(found)
    }

    pub fn find_isomorphism(&self, other: &FiniteGroup, budget: u128) -> Result<Option<Vec<usize>>> {
        let mut found = None;
        self.search_isomorphisms(other, budget, &mut |iso| {
            found = Some(iso.to_vec());
            false
        })?;
        Ok(found)
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> Result<bool> {
        Ok(self.find_isomorphism(other, DEFAULT_BUDGET)?.is_some())
    }

    /// Runs `visit` on each isomorphism until it returns `false`. Generator
    /// images range over elements of the same order.
    pub(crate) fn search_isomorphisms(
        &self,
        other: &FiniteGroup,
        budget: u128,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<()> {
        if self.order() != other.order() || self.order_profile() != other.order_profile() {
            return Ok(());
        }
        let gens = self.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let k = self.element_order(g);
                (0..other.order())
                    .filter(|&y| other.element_order(y) == k)
                    .collect()
            })
            .collect();
        let needed = candidates
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
        if needed > budget {
            return Err(Error::TooLarge { needed, budget });
        }
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice
                .iter()
                .zip(&candidates)
                .map(|(&c, cands)| cands[c])
                .collect();
            if let Some(iso) = self.extend_homomorphism(other, &gens, &images) {
                if !visit(&iso) {
                    return Ok(());
                }
            }
            // odometer step over candidate indices
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    return Ok(());
                }
                choice[pos] += 1;
                if choice[pos] < candidates[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    /// The bijective homomorphism sending `gens[i]` to `images[i]`, if any.
    fn extend_homomorphism(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order()];
        map[self.identity] = other.identity;
        let mut queue = vec![self.identity];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let target = other.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = target;
                    queue.push(y);
                } else if map[y] != target {
                    return None;
                }
            }
            i += 1;
        }
        let mut hit = vec![false; other.order()];
        for &y in &map {
            if y == usize::MAX || hit[y] {
                return None;
            }
            hit[y] = true;
        }
        Some(map)
    }

    fn order_profile(&self) -> Vec<usize> {
        let mut orders: Vec<usize> = (0..self.order()).map(|x| self.element_order(x)).collect();
        orders.sort_unstable();
        orders
    }

    /// True iff the subgroup `members` is the whole group.
    pub fn is_whole(&self, members: &[usize]) -> bool {
        members.len() == self.order()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Cycle notation on `{1, .., n}`, `e` for the identity.
fn cycle_name(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = perm[x];
        }
        cycles.push(format!("({})", cycle.join(" ")));
    }
    if cycles.is_empty() {
        "e".into()
    } else {
        cycles.concat()
    }
}
