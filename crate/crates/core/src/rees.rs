//! Rees matrix semigroups `M[G; I, Λ; A]` and their isomorphism problem.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupDoc, DEFAULT_BUDGET};

/// `I × G × Λ` with `(i, g, λ)(j, h, μ) = (i, g·a_{λj}·h, μ)`.
///
/// The sandwich matrix is stored row by row: `sandwich[λ][i] = a_{λi}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesPresentation {
    group: FiniteGroup,
    columns: Vec<String>,
    rows: Vec<String>,
    sandwich: Vec<Vec<usize>>,
}

/// An element `(i, g, λ)`, by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReesElement {
    pub col: usize,
    pub group: usize,
    pub row: usize,
}

/// JSON form of a presentation; sandwich entries are element names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesDoc {
    pub group: GroupDoc,
    #[serde(rename = "I")]
    pub columns: Vec<String>,
    #[serde(rename = "Lambda")]
    pub rows: Vec<String>,
    pub sandwich: Vec<Vec<String>>,
}

/// An isomorphism `P → Q` of Rees matrix semigroups: a group isomorphism,
/// index bijections and scaling families with
/// `b_{χ(λ), ψ(i)} = v_λ · θ(a_{λi}) · u_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesIsomorphism {
    /// Image in `G_Q` of each element of `G_P`.
    pub group_map: Vec<usize>,
    /// `ψ`: column of `P` to column of `Q`.
    pub col_map: Vec<usize>,
    /// `χ`: row of `P` to row of `Q`.
    pub row_map: Vec<usize>,
    /// `u_i ∈ G_Q`, indexed by columns of `P`.
    pub col_scale: Vec<usize>,
    /// `v_λ ∈ G_Q`, indexed by rows of `P`.
    pub row_scale: Vec<usize>,
}

impl ReesPresentation {
    pub fn new(
        group: FiniteGroup,
        columns: Vec<String>,
        rows: Vec<String>,
        sandwich: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if columns.is_empty() || rows.is_empty() {
            return Err(Error::InvalidInput("empty index set".into()));
        }
        if sandwich.len() != rows.len() || sandwich.iter().any(|r| r.len() != columns.len()) {
            return Err(Error::InvalidInput("sandwich matrix has the wrong shape".into()));
        }
        if sandwich.iter().flatten().any(|&x| x >= group.order()) {
            return Err(Error::InvalidInput("sandwich entry outside the group".into()));
        }
        Ok(ReesPresentation {
            group,
            columns,
            rows,
            sandwich,
        })
    }

    /// The smallest non-orthodox example: `S₂`, two rows and two columns,
    /// sandwich `((e, e), (e, τ))`.
    pub fn m2() -> Self {
        let group = FiniteGroup::symmetric(2);
        let e = group.identity();
        let tau = 1 - e;
        let labels = || vec!["1".to_string(), "2".to_string()];
        ReesPresentation::new(group, labels(), labels(), vec![vec![e, e], vec![e, tau]])
            .expect("well-formed")
    }

    pub fn from_doc(doc: &ReesDoc) -> Result<Self> {
        let group = FiniteGroup::from_doc(&doc.group)?;
        let sandwich = doc
            .sandwich
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        group
                            .element(s)
                            .ok_or_else(|| Error::Parse(format!("unknown sandwich entry {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ReesPresentation::new(group, doc.columns.clone(), doc.rows.clone(), sandwich)
    }

    pub fn to_doc(&self) -> ReesDoc {
        ReesDoc {
            group: self.group.to_doc(),
            columns: self.columns.clone(),
            rows: self.rows.clone(),
            sandwich: self
                .sandwich
                .iter()
                .map(|r| r.iter().map(|&x| self.group.name(x).to_string()).collect())
                .collect(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn column_labels(&self) -> &[String] {
        &self.columns
    }

    pub fn row_labels(&self) -> &[String] {
        &self.rows
    }

    pub fn sandwich(&self) -> &[Vec<usize>] {
        &self.sandwich
    }

    /// `a_{λi}`.
    pub fn entry(&self, row: usize, col: usize) -> usize {
        self.sandwich[row][col]
    }

    pub fn order(&self) -> usize {
        self.columns.len() * self.group.order() * self.rows.len()
    }

    pub fn elements(&self) -> Vec<ReesElement> {
        let mut out = Vec::with_capacity(self.order());
        for col in 0..self.columns.len() {
            for group in 0..self.group.order() {
                for row in 0..self.rows.len() {
                    out.push(ReesElement { col, group, row });
                }
            }
        }
        out
    }

    pub fn multiply(&self, x: ReesElement, y: ReesElement) -> ReesElement {
        let middle = self.group.mul(x.group, self.entry(x.row, y.col));
        ReesElement {
            col: x.col,
            group: self.group.mul(middle, y.group),
            row: y.row,
        }
    }

    /// `(i, a_{λi}⁻¹, λ)` for every `i` and `λ`.
    pub fn idempotents(&self) -> Vec<ReesElement> {
        let mut out = Vec::new();
        for col in 0..self.columns.len() {
            for row in 0..self.rows.len() {
                out.push(ReesElement {
                    col,
                    group: self.group.inv(self.entry(row, col)),
                    row,
                });
            }
        }
        out.sort();
        out
    }

    /// True iff the idempotents form a subsemigroup.
    pub fn is_orthodox(&self) -> bool {
        let idem = self.idempotents();
        idem.iter().all(|&x| {
            idem.iter().all(|&y| {
                let z = self.multiply(x, y);
                self.multiply(z, z) == z
            })
        })
    }

    /// The subgroup generated by the sandwich entries, sorted.
    pub fn little_structure_group(&self) -> Vec<usize> {
        let entries: Vec<usize> = self.sandwich.iter().flatten().copied().collect();
        self.group.subgroup_generated(&entries)
    }

    pub fn is_isomorphic(&self, other: &ReesPresentation) -> Result<bool> {
        Ok(self.find_isomorphism(other, DEFAULT_BUDGET)?.is_some())
    }

    /// Searches for an isomorphism `self → other`. Both matrices are brought
    /// to normal form (pivot row and pivot column equal to the identity);
    /// two normal forms of isomorphic presentations then differ by a group
    /// isomorphism and a permutation of rows and columns.
    pub fn find_isomorphism(
        &self,
        other: &ReesPresentation,
        budget: u128,
    ) -> Result<Option<ReesIsomorphism>> {
        let (ni, nl) = (self.columns.len(), self.rows.len());
        if ni != other.columns.len()
            || nl != other.rows.len()
            || self.group.order() != other.group.order()
        {
            return Ok(None);
        }
        let group_isos = self.group.isomorphisms(&other.group, budget)?;
        if group_isos.is_empty() {
            return Ok(None);
        }
        let row_perms = (1..nl as u128).product::<u128>();
        let needed = (ni as u128 * nl as u128)
            .saturating_mul(group_isos.len() as u128)
            .saturating_mul(row_perms);
        if needed > budget {
            return Err(Error::TooLarge { needed, budget });
        }
        let (target, q_cols, q_rows) = other.normalized(0, 0);
        for pivot_row in 0..nl {
            for pivot_col in 0..ni {
                let (normal, p_cols, p_rows) = self.normalized(pivot_row, pivot_col);
                for iso in &group_isos {
                    let others: Vec<usize> = (0..nl).filter(|&r| r != pivot_row).collect();
                    let mut found = None;
                    for_each_permutation(others.len(), &mut |perm| {
                        let mut row_map = vec![0; nl];
                        row_map[pivot_row] = 0;
                        for (k, &r) in others.iter().enumerate() {
                            row_map[r] = perm[k] + 1;
                        }
                        if let Some(col_map) = match_columns(&normal, &target, iso, &row_map) {
                            found = Some((row_map, col_map));
                            return false;
                        }
                        true
                    });
                    if let Some((row_map, col_map)) = found {
                        let g = &other.group;
                        let row_scale = (0..nl)
                            .map(|r| g.mul(g.inv(q_rows[row_map[r]]), iso[p_rows[r]]))
                            .collect();
                        let col_scale = (0..ni)
                            .map(|c| g.mul(iso[p_cols[c]], g.inv(q_cols[col_map[c]])))
                            .collect();
                        let witness = ReesIsomorphism {
                            group_map: iso.clone(),
                            col_map,
                            row_map,
                            col_scale,
                            row_scale,
                        };
                        debug_assert!(self.verify_isomorphism(other, &witness));
                        return Ok(Some(witness));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Normal form at the pivot `(row, col)`: returns the scaled matrix
    /// `v_λ a_{λi} u_i` with identity pivot row and column, with `u` and `v`.
    fn normalized(&self, row: usize, col: usize) -> (Vec<Vec<usize>>, Vec<usize>, Vec<usize>) {
        let g = &self.group;
        let u: Vec<usize> = (0..self.columns.len())
            .map(|i| g.inv(self.entry(row, i)))
            .collect();
        let v: Vec<usize> = (0..self.rows.len())
            .map(|l| g.inv(g.mul(self.entry(l, col), u[col])))
            .collect();
        let matrix = (0..self.rows.len())
            .map(|l| {
                (0..self.columns.len())
                    .map(|i| g.product([v[l], self.entry(l, i), u[i]]))
                    .collect()
            })
            .collect();
        (matrix, u, v)
    }

    /// Checks `b_{χ(λ), ψ(i)} = v_λ · θ(a_{λi}) · u_i` entrywise, plus
    /// bijectivity of all maps, and that the induced map on elements
    /// preserves products.
    pub fn verify_isomorphism(&self, other: &ReesPresentation, w: &ReesIsomorphism) -> bool {
        let g = &other.group;
        let bijective = |m: &[usize], n: usize| {
            m.len() == n && {
                let mut hit = vec![false; n];
                m.iter().all(|&x| x < n && !std::mem::replace(&mut hit[x], true))
            }
        };
        if !bijective(&w.group_map, g.order())
            || !bijective(&w.col_map, other.columns.len())
            || !bijective(&w.row_map, other.rows.len())
        {
            return false;
        }
        let entries_match = (0..self.rows.len()).all(|l| {
            (0..self.columns.len()).all(|i| {
                other.entry(w.row_map[l], w.col_map[i])
                    == g.product([w.row_scale[l], w.group_map[self.entry(l, i)], w.col_scale[i]])
            })
        });
        let homomorphic = (0..self.group.order()).all(|x| {
            (0..self.group.order()).all(|y| {
                w.group_map[self.group.mul(x, y)] == g.mul(w.group_map[x], w.group_map[y])
            })
        });
        entries_match && homomorphic && self.element_map_is_morphism(other, w)
    }

    /// `(i, g, λ) ↦ (ψi, u_i⁻¹ θ(g) v_λ⁻¹, χλ)`.
    pub fn map_element(&self, other: &ReesPresentation, w: &ReesIsomorphism, x: ReesElement) -> ReesElement {
        let g = &other.group;
        ReesElement {
            col: w.col_map[x.col],
            group: g.product([
                g.inv(w.col_scale[x.col]),
                w.group_map[x.group],
                g.inv(w.row_scale[x.row]),
            ]),
            row: w.row_map[x.row],
        }
    }

    fn element_map_is_morphism(&self, other: &ReesPresentation, w: &ReesIsomorphism) -> bool {
        let elements = self.elements();
        elements.iter().all(|&x| {
            elements.iter().all(|&y| {
                self.map_element(other, w, self.multiply(x, y))
                    == other.multiply(self.map_element(other, w, x), self.map_element(other, w, y))
            })
        })
    }
}

/// Visits all permutations of `0..n` until `visit` returns `false`.
fn for_each_permutation(n: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(perm: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k == perm.len() {
            return visit(perm);
        }
        for j in k..perm.len() {
            perm.swap(k, j);
            if !go(perm, k + 1, visit) {
                perm.swap(k, j);
                return false;
            }
            perm.swap(k, j);
        }
        true
    }
    let mut perm: Vec<usize> = (0..n).collect();
    go(&mut perm, 0, visit);
}

/// A column bijection `ψ` with `target[row_map[λ]][ψ(i)] = iso(source[λ][i])`.
fn match_columns(
    source: &[Vec<usize>],
    target: &[Vec<usize>],
    iso: &[usize],
    row_map: &[usize],
) -> Option<Vec<usize>> {
    let n_cols = source[0].len();
    let n_rows = source.len();
    let mut pool: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for c in (0..n_cols).rev() {
        let v: Vec<usize> = (0..n_rows).map(|r| target[r][c]).collect();
        pool.entry(v).or_default().push(c);
    }
    (0..n_cols)
        .map(|c| {
            let mut v = vec![0; n_rows];
            for r in 0..n_rows {
                v[row_map[r]] = iso[source[r][c]];
            }
            pool.get_mut(&v).and_then(Vec::pop)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_identity() -> ReesPresentation {
        let group = FiniteGroup::symmetric(2);
        let e = group.identity();
        let labels = vec!["1".to_string(), "2".to_string()];
        ReesPresentation::new(group, labels.clone(), labels, vec![vec![e, e], vec![e, e]]).unwrap()
    }

    fn squares(p: &ReesPresentation) -> Vec<ReesElement> {
        let mut out: Vec<_> = p
            .elements()
            .into_iter()
            .filter(|&x| p.multiply(x, x) == x)
            .collect();
        out.sort();
        out
    }

    #[test]
    fn m2_counts() {
        let m2 = ReesPresentation::m2();
        assert_eq!(m2.order(), 8);
        assert_eq!(m2.idempotents().len(), 4);
        assert_eq!(squares(&m2), m2.idempotents());
        assert!(!m2.is_orthodox());
        assert_eq!(m2.little_structure_group().len(), 2);
    }

    #[test]
    fn trivial_presentation() {
        let p = ReesPresentation::new(
            FiniteGroup::cyclic(1),
            vec!["1".into()],
            vec!["1".into()],
            vec![vec![0]],
        )
        .unwrap();
        assert_eq!(p.order(), 1);
        assert_eq!(p.idempotents(), p.elements());
    }

    #[test]
    fn all_identity_is_orthodox() {
        let p = all_identity();
        assert_eq!(p.order(), 8);
        assert!(p.is_orthodox());
        assert_eq!(p.little_structure_group().len(), 1);
        assert!(!ReesPresentation::m2().is_isomorphic(&p).unwrap());
    }

    #[test]
    fn s3_single_column() {
        let group = FiniteGroup::symmetric(3);
        let c = group.element("(1 2 3)").unwrap();
        let t = group.element("(1 2)").unwrap();
        let p = ReesPresentation::new(
            group,
            vec!["1".into()],
            vec!["1".into(), "2".into(), "3".into()],
            vec![vec![c], vec![t], vec![0]],
        )
        .unwrap();
        assert_eq!(p.order(), 18);
        assert_eq!(p.idempotents().len(), 3);
        assert_eq!(squares(&p), p.idempotents());
    }

    #[test]
    fn little_group_of_a_rotation() {
        let group = FiniteGroup::symmetric(3);
        let c = group.element("(1 2 3)").unwrap();
        let p = ReesPresentation::new(group, vec!["1".into()], vec!["1".into()], vec![vec![c]]).unwrap();
        assert_eq!(p.little_structure_group().len(), 3);
    }

    #[test]
    fn row_swap_is_isomorphic() {
        let m2 = ReesPresentation::m2();
        let mut swapped = m2.clone();
        swapped.sandwich.swap(0, 1);
        let w = m2.find_isomorphism(&swapped, DEFAULT_BUDGET).unwrap().unwrap();
        assert!(m2.verify_isomorphism(&swapped, &w));
        let w = swapped.find_isomorphism(&m2, DEFAULT_BUDGET).unwrap().unwrap();
        assert!(swapped.verify_isomorphism(&m2, &w));
    }

    #[test]
    fn associativity() {
        let m2 = ReesPresentation::m2();
        let el = m2.elements();
        for &x in &el {
            for &y in &el {
                for &z in &el {
                    assert_eq!(
                        m2.multiply(m2.multiply(x, y), z),
                        m2.multiply(x, m2.multiply(y, z))
                    );
                }
            }
        }
    }

    #[test]
    fn document_round_trip() {
        let m2 = ReesPresentation::m2();
        let json = serde_json::to_string(&m2.to_doc()).unwrap();
        assert!(json.contains("\"Lambda\""));
        let doc: ReesDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(ReesPresentation::from_doc(&doc).unwrap(), m2);
    }

    #[test]
    fn budget() {
        let m2 = ReesPresentation::m2();
        assert!(matches!(
            m2.find_isomorphism(&m2, 2),
            Err(Error::TooLarge { .. })
        ));
    }
}
