//! The fibre part of the minimal ideal of the Ellis semigroup of a simplified
//! quasi-bijective substitution, as a Rees matrix semigroup over the maximal
//! subgroup `ℋ₊`, together with its action on the fixed points, the
//! no-extra-spectrum check, and comparison of two kernels.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::DEFAULT_BUDGET;
use crate::map::FiniteMap;
use crate::rees::{ReesDoc, ReesElement, ReesPresentation};
use crate::semigroup::{ConsecutivePairSet, HClassGroup, TransformationSemigroup};
use crate::subst::{FixedPointSeed, MefDescriptor, Substitution, DEFAULT_MAX_POWER};

/// Row label of the `e₊` row.
pub const PLUS: &str = "+";
/// Row label of the `e₋` row.
pub const MINUS: &str = "-";
/// Row index of [`PLUS`] in the sandwich matrix.
pub const PLUS_ROW: usize = 0;
/// Row index of [`MINUS`] in the sandwich matrix.
pub const MINUS_ROW: usize = 1;
/// Orbit descriptor used when no automorphism data is supplied.
pub const DEFAULT_AUT_EQ_ORBIT: &str = "T-orbit of 0";

/// Everything derived from a simplified substitution on the way to its
/// kernel presentation.
#[derive(Debug, Clone)]
pub struct KernelData {
    pub substitution: Substitution,
    pub semigroup: TransformationSemigroup,
    pub pairs: ConsecutivePairSet,
    /// `θ₀`.
    pub e_plus: FiniteMap,
    /// `θ_{ℓ-1}`.
    pub e_minus: FiniteMap,
    /// Idempotent with the image of `e₊` and the kernel of `e₋`.
    pub e_pm: FiniteMap,
    /// Idempotent with the image of `e₋` and the kernel of `e₊`.
    pub e_mp: FiniteMap,
    /// `e₊ ∘ e₋`.
    pub phi: FiniteMap,
    pub h_plus: HClassGroup,
    pub h_minus: HClassGroup,
    pub h_pm: HClassGroup,
    pub h_mp: HClassGroup,
    /// `{L ∘ R⁻¹}` over consecutive pairs in `ℋ₋₊ × ℋ₊`, in semigroup order.
    pub index_set: Vec<FiniteMap>,
    /// Rows `+`, `-`; columns the index set; group `ℋ₊`.
    pub presentation: ReesPresentation,
}

impl KernelData {
    /// Group element of the presentation corresponding to `g ∈ ℋ₊`.
    pub fn group_index(&self, g: &FiniteMap) -> Option<usize> {
        self.h_plus.index_of(g)
    }

    pub fn group_member(&self, g: usize) -> &FiniteMap {
        &self.h_plus.members()[g]
    }

    /// Consecutive pairs in `ℋ₋₊ × ℋ₊`.
    pub fn plus_pairs(&self) -> Vec<(FiniteMap, FiniteMap)> {
        self.pairs.restricted(&self.h_mp, &self.h_plus)
    }

    /// Consecutive pairs in `ℋ₋ × ℋ₊₋`.
    pub fn minus_pairs(&self) -> Vec<(FiniteMap, FiniteMap)> {
        self.pairs.restricted(&self.h_minus, &self.h_pm)
    }

    /// Every `(L ∘ s, R ∘ s)` with `(L, R)` in [`plus_pairs`](Self::plus_pairs)
    /// and `s ∈ ℋ₋₊ ∪ ℋ₊` is again such a pair.
    pub fn plus_pairs_translation_invariant(&self) -> bool {
        let plus: HashSet<_> = self.plus_pairs().into_iter().collect();
        let translators = self.h_mp.members().iter().chain(self.h_plus.members());
        translators
            .flat_map(|s| plus.iter().map(move |(l, r)| (l * s, r * s)))
            .all(|p| plus.contains(&p))
    }

    /// `(L, R) ↦ (L ∘ φ, R ∘ φ)` is a bijection from the `ℋ₋₊ × ℋ₊` pairs
    /// onto the `ℋ₋ × ℋ₊₋` pairs.
    pub fn phi_translation_bijective(&self) -> bool {
        let plus = self.plus_pairs();
        let image: HashSet<_> = plus
            .iter()
            .map(|(l, r)| (l * &self.phi, r * &self.phi))
            .collect();
        let minus: HashSet<_> = self.minus_pairs().into_iter().collect();
        image.len() == plus.len() && image == minus
    }
}

/// Builds the kernel presentation of a simplified quasi-bijective
/// substitution.
pub fn build_kernel(s: &Substitution) -> Result<KernelData> {
    let columns = s.columns()?;
    if s.quasi_bijective_exponent()?.is_none() {
        return Err(Error::NotQuasiBijective);
    }
    if let Some(reason) = s.simplification_defect()? {
        return Err(Error::NotSimplified(reason));
    }
    let semigroup = TransformationSemigroup::close(&columns);
    let pairs = ConsecutivePairSet::generate(&columns);
    let e_plus = columns[0].clone();
    let e_minus = columns[columns.len() - 1].clone();
    let e_pm = semigroup.corner_idempotent(&e_plus, &e_minus)?;
    let e_mp = semigroup.corner_idempotent(&e_minus, &e_plus)?;
    let phi = &e_plus * &e_minus;
    let h_plus = semigroup.h_class_group(&e_plus)?;
    let h_minus = semigroup.h_class_group(&e_minus)?;
    let h_pm = semigroup.h_class_group(&e_pm)?;
    let h_mp = semigroup.h_class_group(&e_mp)?;

    let mut index_set: Vec<FiniteMap> = pairs
        .restricted(&h_mp, &h_plus)
        .iter()
        .map(|(l, r)| l * h_plus.inverse(r).expect("R lies in the class"))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    index_set.sort_by_key(|f| semigroup.index_of(f));

    let alphabet = s.alphabet();
    let group = h_plus.as_group(alphabet);
    let plus_row = vec![group_index_of(&h_plus, &e_plus); index_set.len()];
    let minus_row = index_set
        .iter()
        .map(|i| group_index_of(&h_plus, &(&phi * i)))
        .collect();
    let presentation = ReesPresentation::new(
        group,
        index_set.iter().map(|f| f.render(alphabet)).collect(),
        vec![PLUS.to_string(), MINUS.to_string()],
        vec![plus_row, minus_row],
    )?;
    Ok(KernelData {
        substitution: s.clone(),
        semigroup,
        pairs,
        e_plus,
        e_minus,
        e_pm,
        e_mp,
        phi,
        h_plus,
        h_minus,
        h_pm,
        h_mp,
        index_set,
        presentation,
    })
}

fn group_index_of(h: &HClassGroup, f: &FiniteMap) -> usize {
    h.index_of(f).expect("sandwich entry lies in the class")
}

/// The action of the presentation on the fixed points `a·b`: each element
/// becomes a self-map of the seed list.
#[derive(Debug, Clone)]
pub struct FibreAction {
    pub seeds: Vec<FixedPointSeed>,
    elements: Vec<ReesElement>,
    maps: Vec<FiniteMap>,
}

impl FibreAction {
    pub fn elements(&self) -> &[ReesElement] {
        &self.elements
    }

    /// Seed map of the element at position `k` of [`elements`](Self::elements).
    pub fn map(&self, k: usize) -> &FiniteMap {
        &self.maps[k]
    }

    pub fn map_of(&self, x: ReesElement) -> Option<&FiniteMap> {
        self.elements.iter().position(|&y| y == x).map(|k| &self.maps[k])
    }

    /// The set of seed maps realised by the presentation.
    pub fn image(&self) -> BTreeSet<FiniteMap> {
        self.maps.iter().cloned().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.maps.len()
    }

    /// `Φ(x) ∘ Φ(y) = Φ(xy)` for all pairs.
    pub fn is_multiplicative(&self, presentation: &ReesPresentation) -> bool {
        let position = |x: ReesElement| self.elements.iter().position(|&y| y == x).unwrap();
        self.elements.iter().enumerate().all(|(a, &x)| {
            self.elements.iter().enumerate().all(|(b, &y)| {
                &self.maps[a] * &self.maps[b] == self.maps[position(presentation.multiply(x, y))]
            })
        })
    }
}

/// Realises every element `(i, g, ±)` as a map on `seeds`:
/// `(i, g, +)` sends `a·b` to `(i∘g)(b)·g(b)` and `(i, g, -)` sends `a·b`
/// to `(i∘g∘φ)(a)·(g∘φ)(a)`.
pub fn fibre_action(k: &KernelData, seeds: &[FixedPointSeed]) -> Result<FibreAction> {
    let alphabet = k.substitution.alphabet();
    let position = |seed: FixedPointSeed| {
        seeds
            .iter()
            .position(|&t| t == seed)
            .ok_or_else(|| Error::SeedNotClosed(seed.render(alphabet)))
    };
    let elements = k.presentation.elements();
    let maps = elements
        .iter()
        .map(|x| {
            let i = &k.index_set[x.col];
            let g = k.group_member(x.group);
            let table = seeds
                .iter()
                .map(|seed| {
                    let image = if x.row == PLUS_ROW {
                        let right = g.apply(seed.right);
                        FixedPointSeed {
                            left: i.apply(right),
                            right,
                        }
                    } else {
                        let right = g.apply(k.phi.apply(seed.left));
                        FixedPointSeed {
                            left: i.apply(right),
                            right,
                        }
                    };
                    position(image)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FiniteMap::new(table))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FibreAction {
        seeds: seeds.to_vec(),
        elements,
        maps,
    })
}

/// Independent oracle for the fibre action, computed from the substitution
/// alone. For `n <= depth` and `0 < i < ℓⁿ`, the limit of shifting the
/// fixed point `a·b` by `iℓᵏ` (`k → ∞`) is the seed centred on the letters
/// at positions `i-1, i` of `θⁿ(b)`; shifting by `-iℓᵏ` reads the same
/// positions of `θⁿ(a)`. Letters are pushed to seeds by the last and first
/// column maps.
pub fn window_oracle(s: &Substitution, depth: usize) -> Result<BTreeSet<FiniteMap>> {
    let seeds = s.fixed_point_seeds()?;
    let last = s.last_letter_map();
    let first = s.first_letter_map();
    let mut found = BTreeSet::new();
    for n in 1..=depth {
        let power = s.power(n);
        let len = power.rule(0).len();
        for i in 1..len {
            for backward in [false, true] {
                let table = seeds
                    .iter()
                    .map(|seed| {
                        let source = if backward { seed.left } else { seed.right };
                        let word = power.rule(source);
                        let target = FixedPointSeed {
                            left: last.apply(word[i - 1]),
                            right: first.apply(word[i]),
                        };
                        seeds
                            .iter()
                            .position(|&t| t == target)
                            .ok_or_else(|| Error::SeedNotClosed(target.render(s.alphabet())))
                    })
                    .collect::<Result<Vec<_>>>()?;
                found.insert(FiniteMap::new(table));
            }
        }
    }
    Ok(found)
}

/// Results of the finite no-extra-spectrum check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NesFlags {
    /// The normal closure of the little structure group is the whole group.
    pub nes_finite: bool,
    /// The normal closure is the full symmetric group on `im(e₊)`.
    pub full_symmetric: bool,
}

/// No-extra-spectrum flags of a presentation whose group acts faithfully
/// on a set of `degree` points.
pub fn nes_flags(presentation: &ReesPresentation, degree: usize) -> NesFlags {
    let group = presentation.group();
    let closure = group.normal_closure(&presentation.little_structure_group());
    let factorial: usize = (1..=degree).product();
    NesFlags {
        nes_finite: group.is_whole(&closure),
        full_symmetric: closure.len() == factorial,
    }
}

pub fn nes_check(k: &KernelData) -> NesFlags {
    nes_flags(&k.presentation, k.e_plus.rank())
}

/// Options for [`kernel_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub max_power: usize,
    /// Length bound of the aperiodicity test; `None` uses the default.
    pub complexity_bound: Option<usize>,
    pub aut_eq_orbit: String,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            max_power: DEFAULT_MAX_POWER,
            complexity_bound: None,
            aut_eq_orbit: DEFAULT_AUT_EQ_ORBIT.to_string(),
        }
    }
}

/// Letters and rules of a substitution; letters may be longer than one
/// character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionView {
    pub alphabet: Vec<String>,
    pub rules: Vec<Vec<String>>,
}

impl SubstitutionView {
    pub fn of(s: &Substitution) -> Self {
        SubstitutionView {
            alphabet: s.alphabet().to_vec(),
            rules: s
                .rules()
                .iter()
                .map(|w| w.iter().map(|&a| s.alphabet()[a].clone()).collect())
                .collect(),
        }
    }

    pub fn to_substitution(&self) -> Result<Substitution> {
        let rules = self
            .rules
            .iter()
            .map(|w| {
                w.iter()
                    .map(|x| {
                        self.alphabet
                            .iter()
                            .position(|a| a == x)
                            .ok_or_else(|| Error::Parse(format!("unknown letter {x:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(self.alphabet.clone(), rules)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreSummary {
    /// Number of fixed points `a·b`.
    pub size: usize,
    pub seeds: Vec<String>,
    /// Size of `im(e₊)`, the set on which the structure group acts.
    pub acting_set_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFlags {
    pub nes_finite: bool,
    pub full_symmetric: bool,
    /// Where fullness is tested.
    pub fullness_set: String,
    /// How closures are taken.
    pub closure: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// `φ = e₊e₋`, rendered.
    pub phi: String,
    pub e_plus: String,
    pub e_minus: String,
    pub simplify_exponent: usize,
    pub aperiodicity_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationCounts {
    pub elements: usize,
    pub idempotents: usize,
    pub orthodox: bool,
}

/// The comparison unit: MEF, presentation, and no-extra-spectrum data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub substitution: SubstitutionView,
    pub simplified: SubstitutionView,
    pub mef: MefDescriptor,
    pub column_rank: usize,
    pub presentation: ReesDoc,
    pub counts: PresentationCounts,
    /// Names of the little structure group.
    pub gamma: Vec<String>,
    pub flags: ReportFlags,
    pub fibre: FibreSummary,
    pub aut_eq_orbit: String,
    /// Symbolic description of the full kernel.
    pub full_kernel: String,
    pub provenance: Provenance,
}

impl KernelReport {
    pub fn to_presentation(&self) -> Result<ReesPresentation> {
        ReesPresentation::from_doc(&self.presentation)
    }
}

/// Runs the whole pipeline on a primitive aperiodic constant-length
/// substitution.
pub fn kernel_report(s: &Substitution, options: &AnalysisOptions) -> Result<KernelReport> {
    s.columns()?;
    if !s.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let bound = options
        .complexity_bound
        .unwrap_or_else(|| s.default_complexity_bound());
    let aperiodicity = s.aperiodicity(bound);
    if let Some((n, count)) = aperiodicity.witness {
        return Err(Error::Periodic { n, count });
    }
    let simplified = s.simplify_with(options.max_power)?;
    let t = &simplified.substitution;
    let k = build_kernel(t)?;
    let flags = nes_check(&k);
    let seeds = t.fixed_point_seeds()?;
    let l = s.constant_length().expect("checked above") as u64;
    let mef = MefDescriptor {
        primes: crate::subst::prime_factors(l),
        height: s.height_with(options.max_power)?,
    };
    let p = &k.presentation;
    let gamma = p
        .little_structure_group()
        .into_iter()
        .map(|g| p.group().name(g).to_string())
        .collect();
    let alphabet = t.alphabet();
    Ok(KernelReport {
        substitution: SubstitutionView::of(s),
        simplified: SubstitutionView::of(t),
        mef,
        column_rank: k.e_plus.rank(),
        presentation: p.to_doc(),
        counts: PresentationCounts {
            elements: p.order(),
            idempotents: p.idempotents().len(),
            orthodox: p.is_orthodox(),
        },
        gamma,
        flags: ReportFlags {
            nes_finite: flags.nes_finite,
            full_symmetric: flags.full_symmetric,
            fullness_set: "im(e+)".into(),
            closure: "finite groups: normal closure".into(),
        },
        fibre: FibreSummary {
            size: seeds.len(),
            seeds: seeds.iter().map(|x| x.render(alphabet)).collect(),
            acting_set_size: k.e_plus.rank(),
        },
        aut_eq_orbit: options.aut_eq_orbit.clone(),
        full_kernel: format!(
            "M(I, G, {{+,-}}; A~) with |I| = {}, A~ = A_phi on the {} and e elsewhere",
            k.index_set.len(),
            options.aut_eq_orbit
        ),
        provenance: Provenance {
            phi: k.phi.render(alphabet),
            e_plus: k.e_plus.render(alphabet),
            e_minus: k.e_minus.render(alphabet),
            simplify_exponent: simplified.exponent,
            aperiodicity_bound: bound,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    AlgebraicallyIsomorphicKernels,
    NotIsomorphic,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub verdict: Verdict,
    pub reasons: Vec<String>,
    pub aut_eq_orbit: (String, String),
}

/// Kernels agree algebraically when MEFs, orbit descriptors and fibre
/// presentations agree; this is decided only when both little structure
/// groups have full normal closure.
pub fn compare_kernels(a: &KernelReport, b: &KernelReport, budget: u128) -> Result<Comparison> {
    let mut reasons = Vec::new();
    let orbits = (a.aut_eq_orbit.clone(), b.aut_eq_orbit.clone());
    if !(a.flags.full_symmetric && b.flags.full_symmetric) {
        reasons.push("normal closure of the little structure group is not full".into());
        return Ok(Comparison {
            verdict: Verdict::Inconclusive,
            reasons,
            aut_eq_orbit: orbits,
        });
    }
    if a.mef != b.mef {
        reasons.push(format!(
            "maximal equicontinuous factors differ: primes {:?} height {} vs primes {:?} height {}",
            a.mef.primes, a.mef.height, b.mef.primes, b.mef.height
        ));
    }
    if a.aut_eq_orbit != b.aut_eq_orbit {
        reasons.push("orbit descriptors differ".into());
    }
    if reasons.is_empty() {
        let p = a.to_presentation()?;
        let q = b.to_presentation()?;
        if p.find_isomorphism(&q, budget)?.is_none() {
            reasons.push("fibre presentations are not isomorphic".into());
        }
    }
    let verdict = if reasons.is_empty() {
        Verdict::AlgebraicallyIsomorphicKernels
    } else {
        Verdict::NotIsomorphic
    };
    Ok(Comparison {
        verdict,
        reasons,
        aut_eq_orbit: orbits,
    })
}

/// [`compare_kernels`] with the default search budget.
pub fn compare(a: &KernelReport, b: &KernelReport) -> Result<Comparison> {
    compare_kernels(a, b, DEFAULT_BUDGET)
}
