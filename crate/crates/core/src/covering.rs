//! Group extensions of substitutions: cocycles `q` with `q(θ(a)) = q(a)`,
//! the lifted substitution on `𝒜 × G`, asymptotic pairs, and the invariants
//! derived from them.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::kernel::SubstitutionView;
use crate::subst::{Letter, Substitution, Word};

/// A letter labelling `q: 𝒜 → G`, extended multiplicatively to words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cocycle {
    values: Vec<usize>,
}

/// JSON form: `{"q": {"a": "<element>", ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleDoc {
    pub q: BTreeMap<String, String>,
}

impl Cocycle {
    pub fn new(values: Vec<usize>) -> Self {
        Cocycle { values }
    }

    pub fn trivial(s: &Substitution, group: &FiniteGroup) -> Self {
        Cocycle::new(vec![group.identity(); s.size()])
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, a: Letter) -> usize {
        self.values[a]
    }

    /// `q(a₁)q(a₂)⋯q(aₙ)`.
    pub fn of_word(&self, group: &FiniteGroup, w: &[Letter]) -> usize {
        group.product(w.iter().map(|&a| self.values[a]))
    }

    /// Fails with the first letter violating `q(θ(a)) = q(a)`.
    pub fn validate(&self, s: &Substitution, group: &FiniteGroup) -> Result<()> {
        if self.values.len() != s.size() || self.values.iter().any(|&g| g >= group.order()) {
            return Err(Error::InvalidInput("cocycle does not match alphabet and group".into()));
        }
        match (0..s.size()).find(|&a| self.of_word(group, s.rule(a)) != self.values[a]) {
            Some(a) => Err(Error::InvalidCocycle(s.alphabet()[a].clone())),
            None => Ok(()),
        }
    }

    pub fn from_doc(doc: &CocycleDoc, s: &Substitution, group: &FiniteGroup) -> Result<Self> {
        for key in doc.q.keys() {
            if s.letter(key).is_none() {
                return Err(Error::Parse(format!("cocycle names unknown letter {key:?}")));
            }
        }
        let values = s
            .alphabet()
            .iter()
            .map(|a| {
                let name = doc
                    .q
                    .get(a)
                    .ok_or_else(|| Error::Parse(format!("no cocycle value for {a:?}")))?;
                group
                    .element(name)
                    .ok_or_else(|| Error::Parse(format!("unknown group element {name:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Cocycle::new(values))
    }

    pub fn to_doc(&self, s: &Substitution, group: &FiniteGroup) -> CocycleDoc {
        CocycleDoc {
            q: (0..s.size())
                .map(|a| (s.alphabet()[a].clone(), group.name(self.values[a]).to_string()))
                .collect(),
        }
    }
}

/// All cocycles for `s` with values in `group`, in lexicographic order.
/// Letters are assigned in order; a constraint is tested as soon as every
/// letter of `θ(a)` and `a` itself is assigned.
pub fn solve_cocycles(s: &Substitution, group: &FiniteGroup) -> Vec<Cocycle> {
    let n = s.size();
    // constraint a becomes checkable once letters 0..=ready[a] are set
    let ready: Vec<usize> = (0..n)
        .map(|a| *s.rule(a).iter().max().unwrap().max(&a))
        .collect();
    let mut by_level: Vec<Vec<Letter>> = vec![Vec::new(); n];
    for a in 0..n {
        by_level[ready[a]].push(a);
    }
    let mut out = Vec::new();
    let mut values = vec![0usize; n];
    fn go(
        level: usize,
        s: &Substitution,
        group: &FiniteGroup,
        by_level: &[Vec<Letter>],
        values: &mut Vec<usize>,
        out: &mut Vec<Cocycle>,
    ) {
        if level == values.len() {
            out.push(Cocycle::new(values.clone()));
            return;
        }
        for g in 0..group.order() {
            values[level] = g;
            let ok = by_level[level].iter().all(|&a| {
                group.product(s.rule(a).iter().map(|&b| values[b])) == values[a]
            });
            if ok {
                go(level + 1, s, group, by_level, values, out);
            }
        }
    }
    go(0, s, group, &by_level, &mut values, &mut out);
    out
}

/// The lift `θ̃(a, g) = (a₁, g₁)⋯(aₙ, gₙ)` with `g₁ = g` and
/// `g_{k+1} = g_k q(a_k)`, without checking the cocycle condition. Letter
/// `(a, g)` has index `a·|G| + g` and name `(a,g)`.
pub fn lift(s: &Substitution, group: &FiniteGroup, q: &Cocycle) -> Substitution {
    let m = group.order();
    let mut names = Vec::with_capacity(s.size() * m);
    let mut rules = Vec::with_capacity(s.size() * m);
    for a in 0..s.size() {
        for g in 0..m {
            names.push(format!("({},{})", s.alphabet()[a], group.name(g)));
            let mut current = g;
            let image = s
                .rule(a)
                .iter()
                .map(|&b| {
                    let letter = b * m + current;
                    current = group.mul(current, q.value(b));
                    letter
                })
                .collect();
            rules.push(image);
        }
    }
    Substitution::new(names, rules).expect("lift of a valid substitution")
}

/// A lifted substitution and the invariants attached to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    pub lifted: Substitution,
    /// The lift is primitive.
    pub nontrivial: bool,
    /// `ω = q(w⁺)q(w⁻)⁻¹` for each asymptotic pair.
    pub omegas: Vec<usize>,
    /// Order of the subgroup generated by the `ω`.
    pub omega_group_order: Option<usize>,
    /// `|G|/k`.
    pub created_height: Option<usize>,
    /// `cr_base · k`.
    pub cr_lifted: Option<usize>,
}

/// Lifts `s` along a validated cocycle.
pub fn build_cover(s: &Substitution, group: &FiniteGroup, q: &Cocycle) -> Result<CoverResult> {
    q.validate(s, group)?;
    let lifted = lift(s, group, q);
    let nontrivial = lifted.is_primitive();
    Ok(CoverResult {
        lifted,
        nontrivial,
        omegas: Vec::new(),
        omega_group_order: None,
        created_height: None,
        cr_lifted: None,
    })
}

/// First coordinates of the lifted rules.
pub fn project(lifted: &Substitution, group: &FiniteGroup) -> Vec<Word> {
    let m = group.order();
    (0..lifted.size())
        .step_by(m)
        .map(|x| lifted.rule(x).iter().map(|&y| y / m).collect())
        .collect()
}

/// The lift read through its group coordinate `(a, g) ↦ g`, as a
/// substitution on the group elements.
///
/// This is a conjugacy when `q` is injective on letters, since then
/// `a = q⁻¹(g_n⁻¹ g_{n+1})`, and when the labels along `θ̃(a, g)` do not
/// depend on `a`. Returns `None` otherwise.
pub fn group_recoding(s: &Substitution, group: &FiniteGroup, q: &Cocycle) -> Option<Substitution> {
    let distinct: HashSet<usize> = q.values().iter().copied().collect();
    if distinct.len() != s.size() {
        return None;
    }
    // labels along θ̃(a, e), relative to the starting element
    let offsets = |w: &[Letter]| -> Vec<usize> {
        let mut g = group.identity();
        w.iter()
            .map(|&b| {
                let here = g;
                g = group.mul(g, q.value(b));
                here
            })
            .collect()
    };
    let pattern = offsets(s.rule(0));
    if (1..s.size()).any(|a| offsets(s.rule(a)) != pattern) {
        return None;
    }
    let rules = (0..group.order())
        .map(|g| pattern.iter().map(|&h| group.mul(g, h)).collect())
        .collect();
    Some(Substitution::new(group.names().to_vec(), rules).expect("recoding of a valid lift"))
}

/// Fills in `ω`, `k`, the created height and the lifted coincidence rank.
/// `cr_lifted = cr_base · k`; these stay empty for trivial covers or when no
/// asymptotic pair is known.
pub fn cover_invariants(
    mut cover: CoverResult,
    group: &FiniteGroup,
    pairs: &[(Word, Word)],
    q: &Cocycle,
    cr_base: usize,
) -> CoverResult {
    cover.omegas = pairs
        .iter()
        .map(|(plus, minus)| group.mul(q.of_word(group, plus), group.inv(q.of_word(group, minus))))
        .collect();
    if cover.nontrivial && !pairs.is_empty() {
        let k = group.subgroup_generated(&cover.omegas).len();
        cover.omega_group_order = Some(k);
        cover.created_height = Some(group.order() / k);
        cover.cr_lifted = Some(cr_base * k);
    }
    cover
}

/// Default search window `ℓ²·|𝒜|`, with `ℓ` the longest image length.
pub fn default_window(s: &Substitution) -> usize {
    let l = s.rules().iter().map(Vec::len).max().unwrap();
    l * l * s.size()
}

/// Words on which the two points of a bi-asymptotic pair disagree.
///
/// A candidate is an unordered pair of allowed words of the same length with
/// different first and different last letters, sharing a left and a right
/// extension letter. Its successor applies `θ` to both words and strips the
/// longest common prefix and suffix. Candidates on a cycle of this map whose
/// common left and right contexts can grow forever are reported, each pair
/// ordered lexicographically.
pub fn asymptotic_pair_words(s: &Substitution, window: usize) -> Result<Vec<(Word, Word)>> {
    let mut languages: Vec<HashSet<Word>> = vec![HashSet::new()];
    for m in 1..=window + 2 {
        languages.push(s.language(m).into_iter().collect());
    }
    let allowed = |w: &[Letter]| w.len() <= window + 2 && languages[w.len()].contains(w);
    let extendable = |u: &[Letter], v: &[Letter]| {
        let left = (0..s.size()).any(|z| {
            allowed(&[&[z][..], u].concat()) && allowed(&[&[z][..], v].concat())
        });
        let right = (0..s.size()).any(|z| {
            allowed(&[u, &[z][..]].concat()) && allowed(&[v, &[z][..]].concat())
        });
        left && right
    };

    // successor together with the stripped prefix and suffix lengths
    let successor = |u: &Word, v: &Word| -> Option<(Word, Word, usize, usize)> {
        let (tu, tv) = (s.apply(u), s.apply(v));
        if tu.len() != tv.len() || tu == tv {
            return None;
        }
        let pre = tu.iter().zip(&tv).take_while(|(x, y)| x == y).count();
        let suf = tu[pre..]
            .iter()
            .rev()
            .zip(tv[pre..].iter().rev())
            .take_while(|(x, y)| x == y)
            .count();
        let end = tu.len() - suf;
        Some((tu[pre..end].to_vec(), tv[pre..end].to_vec(), pre, suf))
    };

    let mut starts: Vec<(Word, Word)> = Vec::new();
    for m in 1..=window {
        let words: Vec<&Word> = {
            let mut w: Vec<&Word> = languages[m].iter().collect();
            w.sort();
            w
        };
        for (x, u) in words.iter().enumerate() {
            for v in &words[x + 1..] {
                if u[0] != v[0] && u[m - 1] != v[m - 1] && extendable(u, v) {
                    starts.push(((*u).clone(), (*v).clone()));
                }
            }
        }
    }

    let mut explored: HashSet<(Word, Word)> = HashSet::new();
    let mut cycles: BTreeSet<(Word, Word)> = BTreeSet::new();
    let mut left_window_after_coincidence = false;
    for start in starts {
        if explored.contains(&start) {
            continue;
        }
        let mut path: Vec<(Word, Word)> = Vec::new();
        let mut strips: Vec<(usize, usize)> = Vec::new();
        let mut position: HashMap<(Word, Word), usize> = HashMap::new();
        let mut node = start;
        let mut coincided = false;
        loop {
            if let Some(&at) = position.get(&node) {
                let cycle = &path[at..];
                let cycle_strips = &strips[at..];
                if grows_both_ways(s, cycle, cycle_strips) {
                    cycles.extend(cycle.iter().cloned());
                }
                break;
            }
            if explored.contains(&node) {
                break;
            }
            position.insert(node.clone(), path.len());
            explored.insert(node.clone());
            path.push(node.clone());
            let Some((u, v, pre, suf)) = successor(&node.0, &node.1) else {
                break;
            };
            if u.len() > window {
                if coincided || pre + suf > 0 {
                    left_window_after_coincidence = true;
                }
                break;
            }
            coincided |= pre + suf > 0;
            strips.push((pre, suf));
            node = if u <= v { (u, v) } else { (v, u) };
        }
    }
    if cycles.is_empty() && left_window_after_coincidence {
        return Err(Error::WindowExceeded(window));
    }
    Ok(cycles.into_iter().collect())
}

/// On a cycle of candidates, the common context grows on the left if some
/// step strips a nonempty prefix, or if a letter `z` with `θ^p(z)` ending in
/// `z` (`p` the cycle length) extends both words on the left; likewise on
/// the right.
fn grows_both_ways(s: &Substitution, cycle: &[(Word, Word)], strips: &[(usize, usize)]) -> bool {
    let p = cycle.len();
    let power = s.power(p);
    let (u, v) = &cycle[0];
    let allowed = |w: Word| s.language(w.len()).contains(&w);
    let left = strips.iter().any(|&(pre, _)| pre > 0)
        || (0..s.size()).any(|z| {
            power.rule(z).last() == Some(&z)
                && allowed([&[z][..], u].concat())
                && allowed([&[z][..], v].concat())
        });
    let right = strips.iter().any(|&(_, suf)| suf > 0)
        || (0..s.size()).any(|z| {
            power.rule(z).first() == Some(&z)
                && allowed([u, &[z][..]].concat())
                && allowed([v, &[z][..]].concat())
        });
    left && right
}

/// The complete output of a covering computation, as emitted in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub group_order: usize,
    pub cocycle: CocycleDoc,
    pub lifted: SubstitutionView,
    pub nontrivial: bool,
    /// The lift on group letters, when [`group_recoding`] applies.
    pub group_recoding: Option<SubstitutionView>,
    pub pairs: Vec<(String, String)>,
    pub omegas: Vec<String>,
    pub omega_group_order: Option<usize>,
    pub created_height: Option<usize>,
    pub cr_base: usize,
    pub cr_lifted: Option<usize>,
    /// How `cr_lifted` was obtained.
    pub convention: String,
}

impl CoverReport {
    pub fn new(
        s: &Substitution,
        group: &FiniteGroup,
        q: &Cocycle,
        pairs: &[(Word, Word)],
        cover: &CoverResult,
        cr_base: usize,
    ) -> Self {
        CoverReport {
            group_order: group.order(),
            cocycle: q.to_doc(s, group),
            lifted: SubstitutionView::of(&cover.lifted),
            nontrivial: cover.nontrivial,
            group_recoding: group_recoding(s, group, q).map(|r| SubstitutionView::of(&r)),
            pairs: pairs
                .iter()
                .map(|(a, b)| (s.render_word(a), s.render_word(b)))
                .collect(),
            omegas: cover.omegas.iter().map(|&g| group.name(g).to_string()).collect(),
            omega_group_order: cover.omega_group_order,
            created_height: cover.created_height,
            cr_base,
            cr_lifted: cover.cr_lifted,
            convention: "cr_lifted = cr_base * k (k-equality convention)".into(),
        }
    }
}

/// Coincidence rank used for the base system: the column rank when `s` has
/// constant length and height 1, otherwise `fallback`.
pub fn base_coincidence_rank(s: &Substitution, fallback: usize) -> usize {
    if s.constant_length().is_some() && s.height() == Ok(1) {
        s.column_rank().unwrap_or(fallback)
    } else {
        fallback
    }
}
