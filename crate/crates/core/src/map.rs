//! Total self-maps of a finite alphabet.
//!
//! Products follow one convention throughout the crate: `f * g` is the
//! composite "apply `g` first, then `f`", so `(f * g)(x) = f(g(x))`. This is
//! the order in which column maps of composed substitutions appear.

use std::fmt;
use std::ops::Mul;

/// A total map `{0, .., n-1} -> {0, .., n-1}` stored as its table of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteMap {
    table: Vec<usize>,
}

impl FiniteMap {
    /// Builds a map from its image table. Panics if an image is out of range.
    pub fn new(table: Vec<usize>) -> Self {
        let n = table.len();
        assert!(table.iter().all(|&x| x < n), "image out of range");
        FiniteMap { table }
    }

    pub fn identity(n: usize) -> Self {
        FiniteMap {
            table: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, value: usize) -> Self {
        FiniteMap::new(vec![value; n])
    }

    /// Size of the underlying alphabet.
    pub fn degree(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FiniteMap) -> FiniteMap {
        debug_assert_eq!(self.degree(), other.degree());
        FiniteMap {
            table: other.table.iter().map(|&x| self.table[x]).collect(),
        }
    }

    /// Sorted list of the letters hit by the map.
    pub fn image(&self) -> Vec<usize> {
        let mut hit = vec![false; self.degree()];
        for &y in &self.table {
            hit[y] = true;
        }
        (0..self.degree()).filter(|&y| hit[y]).collect()
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    /// Canonical label of the kernel partition: entry `x` is the smallest
    /// letter with the same image as `x`. Two maps have the same kernel iff
    /// their labels agree.
    pub fn kernel(&self) -> Vec<usize> {
        let mut first = vec![usize::MAX; self.degree()];
        self.table
            .iter()
            .enumerate()
            .map(|(x, &y)| {
                if first[y] == usize::MAX {
                    first[y] = x;
                }
                first[y]
            })
            .collect()
    }

    /// Kernel as a list of blocks, each sorted, blocks ordered by least element.
    pub fn kernel_blocks(&self) -> Vec<Vec<usize>> {
        let label = self.kernel();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.degree() {
            if label[x] == x {
                blocks.push((x..self.degree()).filter(|&y| label[y] == x).collect());
            }
        }
        blocks
    }

    pub fn is_idempotent(&self) -> bool {
        self.table.iter().all(|&y| self.table[y] == y)
    }

    pub fn is_bijective(&self) -> bool {
        self.rank() == self.degree()
    }

    /// `self^k` for `k >= 1`; `k = 0` gives the identity.
    pub fn pow(&self, k: usize) -> FiniteMap {
        let mut acc = FiniteMap::identity(self.degree());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Index and period of the power sequence: the least `tail >= 1` and
    /// `period >= 1` with `f^(tail + period) = f^tail`.
    pub fn index_period(&self) -> (usize, usize) {
        let mut seen = std::collections::HashMap::new();
        let mut cur = self.clone();
        let mut k = 1;
        loop {
            if let Some(&j) = seen.get(&cur) {
                return (j, k - j);
            }
            seen.insert(cur.clone(), k);
            cur = self.compose(&cur);
            k += 1;
        }
    }

    /// The unique idempotent among the powers of `self`.
    pub fn omega_power(&self) -> FiniteMap {
        let (tail, period) = self.index_period();
        // the idempotent power is f^m for the multiple m of period with m >= tail
        let m = tail.div_ceil(period) * period;
        self.pow(m)
    }

    /// Letters of `alphabet` listed in table order, e.g. `"adad"`.
    pub fn render(&self, alphabet: &[String]) -> String {
        let single = alphabet.iter().all(|s| s.chars().count() == 1);
        let parts: Vec<&str> = self.table.iter().map(|&y| alphabet[y].as_str()).collect();
        if single {
            parts.concat()
        } else {
            format!("[{}]", parts.join(","))
        }
    }
}

impl Mul for &FiniteMap {
    type Output = FiniteMap;

    fn mul(self, rhs: &FiniteMap) -> FiniteMap {
        self.compose(rhs)
    }
}

impl fmt::Display for FiniteMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, y) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{y}")?;
        }
        write!(f, ")")
    }
}
