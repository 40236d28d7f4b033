//! Substitutions, their language, and the invariants of constant-length
//! substitutions: column maps, height, column rank, quasi-bijectivity and
//! the simplified power.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::FiniteMap;
use crate::semigroup::TransformationSemigroup;

/// A letter is its position in the declared alphabet.
pub type Letter = usize;
/// A finite word over an alphabet.
pub type Word = Vec<Letter>;

/// A substitution: every letter is sent to a nonempty word.
///
/// Letters are ordered by declaration order; every table and canonical form
/// in the crate uses that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Vec<String>,
    rules: Vec<Word>,
}

/// JSON form: `{"alphabet": ["a", ...], "rules": {"a": "ab", ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstitutionDoc {
    pub alphabet: Vec<String>,
    pub rules: BTreeMap<String, String>,
}

/// A two-sided fixed point `left·right`, named by its central two-letter word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FixedPointSeed {
    pub left: Letter,
    pub right: Letter,
}

impl FixedPointSeed {
    pub fn render(&self, alphabet: &[String]) -> String {
        format!("{}.{}", alphabet[self.left], alphabet[self.right])
    }
}

/// Descriptor of the maximal equicontinuous factor of a constant-length
/// substitution shift: the odometer over the primes of the length, times a
/// cyclic group of order `height`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MefDescriptor {
    pub primes: Vec<u64>,
    pub height: u64,
}

/// Result of the factor-complexity test for aperiodicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aperiodicity {
    pub aperiodic: bool,
    /// Largest word length inspected.
    pub bound: usize,
    /// `(n, p(n))` with `p(n) <= n`, when periodicity was detected.
    pub witness: Option<(usize, usize)>,
}

/// A simplified power of a quasi-bijective substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplified {
    pub substitution: Substitution,
    pub exponent: usize,
}

/// Upper bound on substitution powers tried by searches over powers.
pub const DEFAULT_MAX_POWER: usize = 64;

impl Substitution {
    pub fn new(alphabet: Vec<String>, rules: Vec<Word>) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::InvalidInput("empty alphabet".into()));
        }
        if alphabet.len() != rules.len() {
            return Err(Error::InvalidInput(format!(
                "{} letters but {} rules",
                alphabet.len(),
                rules.len()
            )));
        }
        let mut names = HashSet::new();
        for name in &alphabet {
            if !names.insert(name) {
                return Err(Error::InvalidInput(format!("duplicate letter {name:?}")));
            }
        }
        for (a, w) in rules.iter().enumerate() {
            if w.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "image of {:?} is empty",
                    alphabet[a]
                )));
            }
            if w.iter().any(|&b| b >= alphabet.len()) {
                return Err(Error::InvalidInput(format!(
                    "image of {:?} leaves the alphabet",
                    alphabet[a]
                )));
            }
        }
        Ok(Substitution { alphabet, rules })
    }

    /// Single-character alphabet and rules, e.g. `parse("ab", &["ab", "ba"])`.
    pub fn parse(alphabet: &str, rules: &[&str]) -> Result<Self> {
        let names: Vec<String> = alphabet.chars().map(String::from).collect();
        let rules = rules
            .iter()
            .map(|r| parse_word(&names, r))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(names, rules)
    }

    pub fn from_doc(doc: &SubstitutionDoc) -> Result<Self> {
        for name in &doc.alphabet {
            if name.chars().count() != 1 {
                return Err(Error::Parse(format!(
                    "letter {name:?} is not a single character"
                )));
            }
        }
        for key in doc.rules.keys() {
            if !doc.alphabet.contains(key) {
                return Err(Error::Parse(format!("rule for undeclared letter {key:?}")));
            }
        }
        let rules = doc
            .alphabet
            .iter()
            .map(|a| {
                let image = doc
                    .rules
                    .get(a)
                    .ok_or_else(|| Error::Parse(format!("no rule for letter {a:?}")))?;
                parse_word(&doc.alphabet, image)
            })
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(doc.alphabet.clone(), rules)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SubstitutionDoc = serde_json::from_str(text)?;
        Substitution::from_doc(&doc)
    }

    /// JSON document; fails if some letter name is longer than one character.
    pub fn to_doc(&self) -> Result<SubstitutionDoc> {
        if self.alphabet.iter().any(|a| a.chars().count() != 1) {
            return Err(Error::InvalidInput(
                "multi-character letters have no substitution document".into(),
            ));
        }
        let rules = (0..self.size())
            .map(|a| (self.alphabet[a].clone(), self.render_word(&self.rules[a])))
            .collect();
        Ok(SubstitutionDoc {
            alphabet: self.alphabet.clone(),
            rules,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn rule(&self, a: Letter) -> &[Letter] {
        &self.rules[a]
    }

    pub fn rules(&self) -> &[Word] {
        &self.rules
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.alphabet.iter().position(|a| a == name)
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        parse_word(&self.alphabet, text)
    }

    pub fn render_word(&self, w: &[Letter]) -> String {
        w.iter().map(|&a| self.alphabet[a].as_str()).collect()
    }

    /// The common image length, if all images have the same length.
    pub fn constant_length(&self) -> Option<usize> {
        let l = self.rules[0].len();
        self.rules.iter().all(|w| w.len() == l).then_some(l)
    }

    fn require_length(&self) -> Result<usize> {
        self.constant_length().ok_or(Error::NotConstantLength)
    }

    pub fn apply(&self, w: &[Letter]) -> Word {
        w.iter().flat_map(|&a| self.rules[a].iter().copied()).collect()
    }

    /// `self ∘ other`: the substitution `a ↦ self(other(a))`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        assert_eq!(self.size(), other.size(), "alphabets differ");
        Substitution {
            alphabet: self.alphabet.clone(),
            rules: other.rules.iter().map(|w| self.apply(w)).collect(),
        }
    }

    /// `self^n` for `n >= 1`.
    pub fn power(&self, n: usize) -> Substitution {
        assert!(n >= 1, "power must be positive");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc);
        }
        acc
    }

    /// The column maps `θ_0 | .. | θ_{ℓ-1}` of a constant-length substitution.
    pub fn columns(&self) -> Result<Vec<FiniteMap>> {
        let l = self.require_length()?;
        Ok((0..l)
            .map(|i| FiniteMap::new(self.rules.iter().map(|w| w[i]).collect()))
            .collect())
    }

    /// Reassembles a substitution from its column maps.
    pub fn from_columns(alphabet: Vec<String>, columns: &[FiniteMap]) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::InvalidInput("no columns".into()));
        }
        let n = alphabet.len();
        if columns.iter().any(|c| c.degree() != n) {
            return Err(Error::InvalidInput("column degree differs from alphabet".into()));
        }
        let rules = (0..n)
            .map(|a| columns.iter().map(|c| c.apply(a)).collect())
            .collect();
        Substitution::new(alphabet, rules)
    }

    /// Map sending each letter to the first letter of its image.
    pub fn first_letter_map(&self) -> FiniteMap {
        FiniteMap::new(self.rules.iter().map(|w| w[0]).collect())
    }

    /// Map sending each letter to the last letter of its image.
    pub fn last_letter_map(&self) -> FiniteMap {
        FiniteMap::new(self.rules.iter().map(|w| *w.last().unwrap()).collect())
    }

    /// True iff some power of the incidence matrix is entrywise positive.
    pub fn is_primitive(&self) -> bool {
        let n = self.size();
        let mut base = vec![vec![false; n]; n];
        for (a, w) in self.rules.iter().enumerate() {
            for &b in w {
                base[a][b] = true;
            }
        }
        let mut cur = base.clone();
        for _ in 0..(n * n).max(1) {
            if cur.iter().all(|row| row.iter().all(|&x| x)) {
                return true;
            }
            let mut next = vec![vec![false; n]; n];
            for a in 0..n {
                for m in 0..n {
                    if cur[a][m] {
                        for b in 0..n {
                            next[a][b] |= base[m][b];
                        }
                    }
                }
            }
            cur = next;
        }
        cur.iter().all(|row| row.iter().all(|&x| x))
    }

    /// Allowed words of length `n`: words occurring in some `θ^k(a)`.
    pub fn language(&self, n: usize) -> BTreeSet<Word> {
        assert!(n >= 1, "word length must be positive");
        if n > 2 && self.is_primitive() {
            if let Some(words) = self.language_from_pairs(n) {
                return words;
            }
        }
        self.language_by_closure(n)
    }

    /// Closure computation valid for any substitution: seed with the length-`n`
    /// factors of the first iterate `θ^k(a)` long enough to contain any, then
    /// add the length-`n` factors of `θ(w)` for every collected `w` until no
    /// new word appears.
    pub fn language_by_closure(&self, n: usize) -> BTreeSet<Word> {
        let mut found: HashSet<Word> = HashSet::new();
        let mut queue: Vec<Word> = Vec::new();
        for a in 0..self.size() {
            let mut w = vec![a];
            let mut seen = HashSet::new();
            while w.len() < n {
                if !seen.insert(w.clone()) {
                    break;
                }
                w = self.apply(&w);
            }
            if w.len() >= n {
                for f in w.windows(n) {
                    if found.insert(f.to_vec()) {
                        queue.push(f.to_vec());
                    }
                }
            }
        }
        while let Some(w) = queue.pop() {
            let image = self.apply(&w);
            for f in image.windows(n) {
                if !found.contains(f) {
                    found.insert(f.to_vec());
                    queue.push(f.to_vec());
                }
            }
        }
        found.into_iter().collect()
    }

    /// For primitive substitutions: every allowed word of length `n` sits
    /// inside `θ^k(xy)` for an allowed pair `xy` once every `θ^k(a)` has
    /// length at least `n - 1`.
    fn language_from_pairs(&self, n: usize) -> Option<BTreeSet<Word>> {
        let mut images: Vec<Word> = (0..self.size()).map(|a| vec![a]).collect();
        let mut rounds = 0;
        while images.iter().map(Vec::len).min().unwrap() + 1 < n {
            let before = images.iter().map(Vec::len).min().unwrap();
            images = images.iter().map(|w| self.apply(w)).collect();
            rounds += 1;
            if rounds > self.size() + 2 && images.iter().map(Vec::len).min().unwrap() == before {
                return None;
            }
        }
        let mut found: HashSet<&[Letter]> = HashSet::new();
        let pairs = self.language_by_closure(2);
        let blocks: Vec<Word> = pairs
            .iter()
            .map(|p| [images[p[0]].as_slice(), images[p[1]].as_slice()].concat())
            .collect();
        for b in &blocks {
            for f in b.windows(n) {
                found.insert(f);
            }
        }
        Some(found.into_iter().map(<[Letter]>::to_vec).collect())
    }

    /// `p(m)` for `m = 1..=upto`, read off from the allowed words of length
    /// `upto` (every allowed word of a primitive substitution extends to the
    /// right, so length-`m` words are exactly the length-`m` prefixes).
    pub fn factor_complexity(&self, upto: usize) -> Vec<usize> {
        let words: Vec<Word> = self.language(upto).into_iter().collect();
        let mut counts = vec![1usize; upto];
        for pair in words.windows(2) {
            let lcp = pair[0]
                .iter()
                .zip(&pair[1])
                .take_while(|(x, y)| x == y)
                .count();
            for c in counts.iter_mut().skip(lcp) {
                *c += 1;
            }
        }
        counts
    }

    /// Default length bound for the complexity test: `ℓ²·|A|²`, with `ℓ` the
    /// longest image length.
    pub fn default_complexity_bound(&self) -> usize {
        let l = self.rules.iter().map(Vec::len).max().unwrap();
        (l * l * self.size() * self.size()).max(2)
    }

    /// Morse–Hedlund test: periodic iff `p(n) <= n` for some `n`. A negative
    /// answer is exact; a positive answer holds up to `bound`.
    pub fn aperiodicity(&self, bound: usize) -> Aperiodicity {
        let counts = self.factor_complexity(bound);
        let witness = counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i + 1, c))
            .find(|&(n, c)| c <= n);
        Aperiodicity {
            aperiodic: witness.is_none(),
            bound,
            witness,
        }
    }

    pub fn is_aperiodic(&self, bound: usize) -> bool {
        self.aperiodicity(bound).aperiodic
    }

    /// Dekking's height, read from return times to the first letter of a
    /// one-sided fixed point.
    pub fn height(&self) -> Result<u64> {
        self.height_with(DEFAULT_MAX_POWER)
    }

    pub fn height_with(&self, max_power: usize) -> Result<u64> {
        let l = self.require_length()? as u64;
        let first = self.first_letter_map();
        // least p with θ_0^p fixing some letter b
        let (p, b) = (1..=max_power)
            .find_map(|p| {
                let m = first.pow(p);
                (0..self.size()).find(|&b| m.apply(b) == b).map(|b| (p, b))
            })
            .ok_or(Error::NoFixedLetter(max_power))?;
        let step = self.power(p);
        let mut prefix = vec![b];
        let mut g = 0u64;
        let mut unchanged = 0;
        const MAX_PREFIX: usize = 1 << 22;
        while prefix.len() < MAX_PREFIX {
            prefix = step.apply(&prefix);
            let next = prefix
                .iter()
                .enumerate()
                .skip(1)
                .filter(|&(_, &x)| x == b)
                .fold(0u64, |acc, (i, _)| acc.gcd(&(i as u64)));
            if next == g && g > 0 {
                unchanged += 1;
                if unchanged >= 2 {
                    break;
                }
            } else {
                unchanged = 0;
            }
            g = next;
        }
        if g == 0 {
            return Err(Error::NotPrimitive);
        }
        Ok(coprime_part(g, l))
    }

    pub fn mef(&self) -> Result<MefDescriptor> {
        let l = self.require_length()? as u64;
        Ok(MefDescriptor {
            primes: prime_factors(l),
            height: self.height()?,
        })
    }

    /// The semigroup generated by the column maps.
    pub fn column_semigroup(&self) -> Result<TransformationSemigroup> {
        Ok(TransformationSemigroup::close(&self.columns()?))
    }

    /// Least image size over all column maps of all powers.
    pub fn column_rank(&self) -> Result<usize> {
        Ok(self.column_semigroup()?.min_rank())
    }

    /// Least `n` such that every column of `θ^n` has rank equal to the column
    /// rank, or `None` if no such power exists.
    pub fn quasi_bijective_exponent(&self) -> Result<Option<usize>> {
        let columns = self.columns()?;
        let c = self.column_rank()?;
        if c == 1 {
            return Err(Error::RankOne);
        }
        // P_m: the set of m-fold products; P_{m+1} = columns ∘ P_m
        let mut level: BTreeSet<FiniteMap> = columns.iter().cloned().collect();
        let mut seen: HashMap<BTreeSet<FiniteMap>, usize> = HashMap::new();
        let mut m = 1;
        loop {
            if level.iter().all(|f| f.rank() == c) {
                return Ok(Some(m));
            }
            if seen.insert(level.clone(), m).is_some() {
                return Ok(None);
            }
            level = columns
                .iter()
                .flat_map(|g| level.iter().map(move |f| g * f))
                .collect();
            m += 1;
        }
    }

    pub fn is_quasi_bijective(&self) -> Result<bool> {
        Ok(self.quasi_bijective_exponent()?.is_some())
    }

    /// The map `(a, b) ↦ (θ_{ℓ-1}(a), θ_0(b))` on allowed two-letter words,
    /// returned as the word list and the index of each image.
    pub fn seed_map(&self) -> (Vec<Word>, Vec<usize>) {
        let pairs: Vec<Word> = self.language(2).into_iter().collect();
        let last = self.last_letter_map();
        let first = self.first_letter_map();
        let index: HashMap<&Word, usize> = pairs.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let image = pairs
            .iter()
            .map(|w| index[&vec![last.apply(w[0]), first.apply(w[1])]])
            .collect();
        (pairs, image)
    }

    /// Why `self` is not simplified, or `None` if it is.
    pub fn simplification_defect(&self) -> Result<Option<String>> {
        let columns = self.columns()?;
        let c = self.column_rank()?;
        if c == 1 {
            return Err(Error::RankOne);
        }
        if let Some(i) = columns.iter().position(|f| f.rank() != c) {
            return Ok(Some(format!("column {i} has rank {} != {c}", columns[i].rank())));
        }
        if !columns[0].is_idempotent() {
            return Ok(Some("first column is not idempotent".into()));
        }
        if !columns[columns.len() - 1].is_idempotent() {
            return Ok(Some("last column is not idempotent".into()));
        }
        let (_, image) = self.seed_map();
        let cycles = cycle_lengths(&image);
        if cycles.iter().any(|&len| len != 1) {
            return Ok(Some("some periodic point is not fixed".into()));
        }
        Ok(None)
    }

    pub fn is_simplified(&self) -> Result<bool> {
        Ok(self.simplification_defect()?.is_none())
    }

    /// The least power that is simplified, with its exponent.
    pub fn simplify(&self) -> Result<Simplified> {
        self.simplify_with(DEFAULT_MAX_POWER)
    }

    pub fn simplify_with(&self, max_power: usize) -> Result<Simplified> {
        let columns = self.columns()?;
        let rank_exponent = self
            .quasi_bijective_exponent()?
            .ok_or(Error::NotQuasiBijective)?;
        let (first_tail, first_period) = columns[0].index_period();
        let (last_tail, last_period) = columns[columns.len() - 1].index_period();
        let (_, image) = self.seed_map();
        let period = cycle_lengths(&image)
            .into_iter()
            .fold(first_period.lcm(&last_period), |acc, c| acc.lcm(&c));
        let lower = rank_exponent.max(first_tail).max(last_tail);
        let mut n = lower.div_ceil(period) * period;
        while n <= max_power.max(period) {
            let candidate = self.power(n);
            if candidate.simplification_defect()?.is_none() {
                return Ok(Simplified {
                    substitution: candidate,
                    exponent: n,
                });
            }
            n += period;
        }
        Err(Error::TooLarge {
            needed: n as u128,
            budget: max_power as u128,
        })
    }

    /// Allowed words `ab` with `a` in the image of the last column and `b` in
    /// the image of the first column: the centres of the two-sided fixed points.
    pub fn fixed_point_seeds(&self) -> Result<Vec<FixedPointSeed>> {
        self.require_length()?;
        let left = self.last_letter_map().image();
        let right = self.first_letter_map().image();
        Ok(self
            .language(2)
            .into_iter()
            .filter(|w| left.contains(&w[0]) && right.contains(&w[1]))
            .map(|w| FixedPointSeed {
                left: w[0],
                right: w[1],
            })
            .collect())
    }
}

/// Column maps of the composite of a substitution with columns `f` (length
/// `ℓ`) and one with columns `g` (length `ℓ'`): entry `iℓ + j` is `f_j ∘ g_i`.
pub fn compose_expansion(f: &[FiniteMap], g: &[FiniteMap]) -> Vec<FiniteMap> {
    g.iter()
        .flat_map(|gi| f.iter().map(move |fj| fj * gi))
        .collect()
}

pub(crate) fn parse_word(alphabet: &[String], text: &str) -> Result<Word> {
    text.chars()
        .map(|ch| {
            let mut buf = [0u8; 4];
            let s: &str = ch.encode_utf8(&mut buf);
            alphabet
                .iter()
                .position(|a| a == s)
                .ok_or_else(|| Error::Parse(format!("letter {s:?} is not in the alphabet")))
        })
        .collect()
}

/// Lengths of the cycles of a self-map given by its image table.
pub(crate) fn cycle_lengths(image: &[usize]) -> Vec<usize> {
    let n = image.len();
    let mut on_cycle = vec![false; n];
    let mut lengths = Vec::new();
    for start in 0..n {
        // walking n steps lands on a cycle
        let mut x = start;
        for _ in 0..n {
            x = image[x];
        }
        if on_cycle[x] {
            continue;
        }
        let mut len = 0;
        let mut y = x;
        loop {
            on_cycle[y] = true;
            y = image[y];
            len += 1;
            if y == x {
                break;
            }
        }
        lengths.push(len);
    }
    lengths
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// Largest divisor of `g` coprime to `l`.
fn coprime_part(mut g: u64, l: u64) -> u64 {
    for p in prime_factors(l) {
        while g.is_multiple_of(p) {
            g /= p;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs_simplified() -> Substitution {
        Substitution::parse("abcd", &["acab", "dbab", "acdc", "dbdc"]).unwrap()
    }

    fn tm() -> Substitution {
        Substitution::parse("ab", &["ab", "ba"]).unwrap()
    }

    fn map(s: &Substitution, images: &str) -> FiniteMap {
        FiniteMap::new(s.word(images).unwrap())
    }

    #[test]
    fn rudin_shapiro_columns() {
        let s = rs_simplified();
        let cols = s.columns().unwrap();
        let expected = ["adad", "cbcb", "aadd", "bbcc"];
        for (c, e) in cols.iter().zip(expected) {
            assert_eq!(c, &map(&s, e));
        }
    }

    #[test]
    fn one_letter_columns_are_identities() {
        let s = Substitution::parse("a", &["aa"]).unwrap();
        assert_eq!(s.columns().unwrap(), vec![FiniteMap::identity(1); 2]);
    }

    #[test]
    fn non_constant_length_has_no_columns() {
        let fib = Substitution::parse("ab", &["ab", "a"]).unwrap();
        assert_eq!(fib.columns(), Err(Error::NotConstantLength));
        assert_eq!(fib.height(), Err(Error::NotConstantLength));
    }

    #[test]
    fn thue_morse_square_columns() {
        let s = tm();
        let cols = s.columns().unwrap();
        let sq = compose_expansion(&cols, &cols);
        let tau = FiniteMap::new(vec![1, 0]);
        let id = FiniteMap::identity(2);
        assert_eq!(sq, vec![id.clone(), tau.clone(), tau, id]);
        assert_eq!(sq, s.power(2).columns().unwrap());
    }

    #[test]
    fn expansion_with_identity() {
        let s = rs_simplified();
        let cols = s.columns().unwrap();
        let unit = vec![FiniteMap::identity(4)];
        assert_eq!(compose_expansion(&cols, &unit), cols);
        assert_eq!(compose_expansion(&unit, &cols), cols);
    }

    #[test]
    fn rudin_shapiro_square_column_three() {
        let s = rs_simplified();
        let cols = s.columns().unwrap();
        let sq = compose_expansion(&cols, &cols);
        assert_eq!(sq[3], map(&s, "bcbc"));
    }

    #[test]
    fn thue_morse_two_letter_words() {
        let words: Vec<String> = tm().language(2).iter().map(|w| tm().render_word(w)).collect();
        assert_eq!(words, ["aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn rudin_shapiro_restricted_pairs() {
        let s = rs_simplified();
        let b_c = [1, 2];
        let a_d = [0, 3];
        let words: BTreeSet<String> = s
            .language(2)
            .iter()
            .filter(|w| b_c.contains(&w[0]) && a_d.contains(&w[1]))
            .map(|w| s.render_word(w))
            .collect();
        let expected: BTreeSet<String> =
            ["ba", "ca", "cd", "bd"].iter().map(|x| x.to_string()).collect();
        assert_eq!(words, expected);
    }

    #[test]
    fn fast_language_agrees_with_closure() {
        for s in [rs_simplified(), tm(), Substitution::parse("ab", &["ab", "a"]).unwrap()] {
            for n in 1..12 {
                assert_eq!(s.language(n), s.language_by_closure(n), "n = {n}");
            }
        }
    }

    #[test]
    fn primitivity() {
        assert!(rs_simplified().is_primitive());
        assert!(Substitution::parse("ab", &["ab", "a"]).unwrap().is_primitive());
        assert!(!Substitution::parse("ab", &["ab", "b"]).unwrap().is_primitive());
    }

    #[test]
    fn aperiodicity() {
        assert!(tm().is_aperiodic(16));
        assert!(rs_simplified().is_aperiodic(16));
        let periodic = Substitution::parse("ab", &["ab", "ab"]).unwrap().aperiodicity(4);
        assert!(!periodic.aperiodic);
        assert_eq!(periodic.witness, Some((2, 2)));
    }

    #[test]
    fn heights() {
        assert_eq!(tm().power(2).height(), Ok(1));
        assert_eq!(rs_simplified().height(), Ok(1));
        // 0 -> 010, 1 -> 201, 2 -> 102: the first letter returns at even times only
        let dekking = Substitution::parse("012", &["010", "201", "102"]).unwrap();
        assert_eq!(dekking.height(), Ok(2));
    }

    #[test]
    fn column_ranks() {
        assert_eq!(rs_simplified().column_rank(), Ok(2));
        assert_eq!(tm().power(2).column_rank(), Ok(2));
        assert_eq!(Substitution::parse("ab", &["ab", "aa"]).unwrap().column_rank(), Ok(1));
    }

    #[test]
    fn quasi_bijectivity() {
        assert_eq!(rs_simplified().is_quasi_bijective(), Ok(true));
        assert_eq!(tm().power(2).is_quasi_bijective(), Ok(true));
        let pd2 = Substitution::parse("ab", &["abaa", "abab"]).unwrap();
        assert_eq!(pd2.is_quasi_bijective(), Err(Error::RankOne));
        assert_eq!(pd2.simplify(), Err(Error::RankOne));
    }

    #[test]
    fn simplify_examples() {
        let s = tm().simplify().unwrap();
        assert_eq!(s.exponent, 2);
        assert_eq!(s.substitution, Substitution::parse("ab", &["abba", "baab"]).unwrap());

        let rs = Substitution::parse("abcd", &["ac", "dc", "ab", "db"]).unwrap();
        let s = rs.simplify().unwrap();
        assert_eq!(s.exponent, 2);
        assert_eq!(s.substitution, rs_simplified());

        let again = rs_simplified().simplify().unwrap();
        assert_eq!(again.exponent, 1);
        assert_eq!(again.substitution, rs_simplified());
    }

    #[test]
    fn seeds() {
        let five = Substitution::parse("abc", &["abcca", "babab", "ccabc"]).unwrap();
        let got: Vec<String> = five
            .fixed_point_seeds()
            .unwrap()
            .iter()
            .map(|s| s.render(five.alphabet()))
            .collect();
        assert_eq!(got, ["a.b", "b.a", "b.c", "c.a", "c.c"]);

        let rs = rs_simplified();
        let got: Vec<String> = rs
            .fixed_point_seeds()
            .unwrap()
            .iter()
            .map(|s| s.render(rs.alphabet()))
            .collect();
        assert_eq!(got, ["b.a", "b.d", "c.a", "c.d"]);

        let t = tm().power(2);
        assert_eq!(t.fixed_point_seeds().unwrap().len(), 4);
    }

    #[test]
    fn documents_reject_multi_character_letters() {
        let doc = SubstitutionDoc {
            alphabet: vec!["ab".into()],
            rules: [("ab".to_string(), "abab".to_string())].into_iter().collect(),
        };
        assert!(matches!(Substitution::from_doc(&doc), Err(Error::Parse(_))));
        let json = r#"{"alphabet": ["a", "b"], "rules": {"a": "ab", "b": "ba"}}"#;
        assert_eq!(Substitution::from_json(json).unwrap(), tm());
        assert!(Substitution::from_json(r#"{"alphabet": ["a"], "rules": {"a": "ax"}}"#).is_err());
    }

    #[test]
    fn cycle_lengths_of_a_functional_graph() {
        let mut got = cycle_lengths(&[1, 0, 3, 2, 2, 5]);
        got.sort();
        assert_eq!(got, vec![1, 2, 2]);
    }
}
