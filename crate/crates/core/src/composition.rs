//! Compositions: finite sequences of positive integers.
//!
//! A composition `I = (i_1, ..., i_l)` indexes both the monomial `S^I` of the
//! free algebra and its dual basis element `S_I`. The empty composition is the
//! unit. The derived `Ord` is the right lexicographic order: longer sequences
//! are greater, and sequences of equal length are compared from the rightmost
//! differing entry.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on enumeration degrees. The number of compositions of `n`
/// is `2^(n-1)`.
pub const DEFAULT_DEGREE_CAP: u32 = 16;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition(Vec<u32>);

/// Builds a [`Composition`] from literal entries, panicking on a zero entry.
#[macro_export]
macro_rules! comp {
    () => { $crate::composition::Composition::empty() };
    ($($x:expr),+ $(,)?) => {
        $crate::composition::Composition::new(vec![$($x),+]).expect("composition entries must be positive")
    };
}

impl Composition {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::ZeroEntry(entries));
        }
        Ok(Composition(entries))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// Callers guarantee every entry is positive.
    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(entries.iter().all(|&e| e > 0));
        Composition(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `j_k >= 2 j_{k+1}` for every adjacent pair.
    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= 2 * w[1])
    }

    /// Index of the leftmost adjacent pair violating admissibility.
    pub fn first_inadmissible_pair(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[0] < 2 * w[1])
    }

    /// The excess vector `(j_1 - 2j_2, ..., j_{n-1} - 2j_n, j_n)`.
    pub fn gamma(&self) -> Result<ExponentVector> {
        if !self.is_admissible() {
            return Err(Error::NotAdmissible(self.clone()));
        }
        let n = self.0.len();
        let entries = (0..n)
            .map(|k| {
                if k + 1 < n {
                    self.0[k] - 2 * self.0[k + 1]
                } else {
                    self.0[k]
                }
            })
            .collect();
        Ok(ExponentVector::new(entries))
    }

    pub fn reverse(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Composition(v)
    }

    pub fn prefix(&self, k: usize) -> Composition {
        Composition(self.0[..k.min(self.len())].to_vec())
    }

    /// Entries from index `k` (0-based) to the end; empty when `k >= len`.
    pub fn suffix(&self, k: usize) -> Composition {
        Composition(self.0[k.min(self.len())..].to_vec())
    }

    /// Every entry multiplied by `factor`.
    pub fn scale(&self, factor: u32) -> Result<Composition> {
        self.0
            .iter()
            .map(|&e| e.checked_mul(factor).ok_or(Error::Overflow("scale")))
            .collect::<Result<Vec<_>>>()
            .map(Composition)
    }

    /// Proper partial sums `i_1, i_1+i_2, ..., i_1+...+i_{l-1}`.
    pub fn partial_sums(&self) -> Vec<u32> {
        let mut acc = 0;
        let mut out = Vec::with_capacity(self.len().saturating_sub(1));
        for &e in self.0.iter().take(self.len().saturating_sub(1)) {
            acc += e;
            out.push(acc);
        }
        out
    }

    fn from_cut_points(degree: u32, cuts: impl IntoIterator<Item = u32>) -> Composition {
        let mut prev = 0;
        let mut v = Vec::new();
        for c in cuts.into_iter().chain(std::iter::once(degree)) {
            v.push(c - prev);
            prev = c;
        }
        Composition(v)
    }

    /// `self` is obtained from `finer` by summing runs of adjacent entries.
    pub fn is_coarsening_of(&self, finer: &Composition) -> bool {
        if self.degree() != finer.degree() {
            return false;
        }
        let fine: BTreeSet<u32> = finer.partial_sums().into_iter().collect();
        self.partial_sums().iter().all(|s| fine.contains(s))
    }

    /// All `2^(l-1)` coarsenings. The coarsenings of the empty composition are
    /// `{()}`.
    pub fn coarsenings(&self) -> BTreeSet<Composition> {
        if self.is_empty() {
            return BTreeSet::from([Composition::empty()]);
        }
        let gaps = self.len() - 1;
        let sums = self.partial_sums();
        let degree = self.degree();
        (0u64..1 << gaps)
            .map(|mask| {
                let cuts = (0..gaps).filter(|&g| mask >> g & 1 == 1).map(|g| sums[g]);
                Composition::from_cut_points(degree, cuts)
            })
            .collect()
    }

    /// All compositions having `self` as a coarsening.
    pub fn refinements(&self) -> Vec<Composition> {
        let mut out = vec![Composition::empty()];
        for &e in &self.0 {
            let parts = compositions_of_int(e);
            out = out
                .iter()
                .flat_map(|head| parts.iter().map(move |p| head.concat(p)))
                .collect();
        }
        out
    }

    /// Ordered splittings into contiguous nonempty blocks.
    pub fn block_partitions(&self) -> Result<Vec<BlockPartition>> {
        if self.is_empty() {
            return Err(Error::EmptyComposition);
        }
        let gaps = self.len() - 1;
        Ok((0u64..1 << gaps)
            .map(|mask| {
                let mut blocks = Vec::new();
                let mut start = 0;
                for g in 0..gaps {
                    if mask >> g & 1 == 1 {
                        blocks.push(Composition(self.0[start..=g].to_vec()));
                        start = g + 1;
                    }
                }
                blocks.push(Composition(self.0[start..].to_vec()));
                BlockPartition { blocks }
            })
            .collect())
    }

    /// Write `i_1 + ... + i_l` as a word of ones joined by `+` inside entries
    /// and `,` between them; the dual composition swaps the two separators.
    pub fn dual(&self) -> Composition {
        let n = self.degree();
        if n == 0 {
            return Composition::empty();
        }
        let cuts: BTreeSet<u32> = self.partial_sums().into_iter().collect();
        Composition::from_cut_points(n, (1..n).filter(|c| !cuts.contains(c)))
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_rlex(&self.0, &other.0)
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn compare_rlex(a: &[u32], b: &[u32]) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Composition::new(v)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracketed(f, &self.0)
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracketed(f, &self.0)
    }
}

fn write_bracketed(f: &mut fmt::Formatter<'_>, v: &[u32]) -> fmt::Result {
    write!(f, "[")?;
    for (k, e) in v.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{e}")?;
    }
    write!(f, "]")
}

/// Exponent vector `L = (l_1, ..., l_n)` of a Milnor monomial
/// `xi_1^{l_1} ... xi_n^{l_n}`. Trailing zeros are stripped on construction.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        ExponentVector(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sum l_i (2^i - 1)`.
    pub fn degree(&self) -> Result<u32> {
        let mut total: u128 = 0;
        for (k, &l) in self.0.iter().enumerate() {
            if l == 0 {
                continue;
            }
            if k >= 32 {
                return Err(Error::Overflow("exponent vector degree"));
            }
            total += l as u128 * ((1u128 << (k + 1)) - 1);
        }
        u32::try_from(total).map_err(|_| Error::Overflow("exponent vector degree"))
    }

    /// Inverse of [`Composition::gamma`]: entry `k` is
    /// `l_k + 2 l_{k+1} + ... + 2^{n-k} l_n`.
    pub fn gamma_inverse(&self) -> Composition {
        let mut out = vec![0u32; self.0.len()];
        let mut acc = 0u32;
        for k in (0..self.0.len()).rev() {
            acc = 2 * acc + self.0[k];
            out[k] = acc;
        }
        Composition::from_vec_unchecked(out)
    }

    /// Componentwise sum, the exponent vector of a product of monomials.
    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        let n = self.len().max(other.len());
        let get = |v: &[u32], k: usize| v.get(k).copied().unwrap_or(0);
        ExponentVector::new((0..n).map(|k| get(&self.0, k) + get(&other.0, k)).collect())
    }

    /// All exponent vectors of the given degree.
    pub fn all_of_degree(degree: u32) -> Vec<ExponentVector> {
        fn go(remaining: u32, slot: u32, acc: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            let weight = (1u32 << slot) - 1;
            if weight > remaining {
                if remaining == 0 {
                    out.push(ExponentVector::new(acc.clone()));
                }
                return;
            }
            for l in 0..=remaining / weight {
                acc.push(l);
                go(remaining - l * weight, slot + 1, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(degree, 1, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_rlex(&self.0, &other.0)
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector::new(v)
    }
}

impl From<ExponentVector> for Vec<u32> {
    fn from(v: ExponentVector) -> Self {
        v.0
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracketed(f, &self.0)
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bracketed(f, &self.0)
    }
}

/// A splitting of a composition into contiguous nonempty blocks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BlockPartition {
    blocks: Vec<Composition>,
}

impl BlockPartition {
    pub fn blocks(&self) -> &[Composition] {
        &self.blocks
    }

    /// Number of blocks, `l(beta)`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn flatten(&self) -> Composition {
        self.blocks
            .iter()
            .fold(Composition::empty(), |acc, b| acc.concat(b))
    }
}

impl fmt::Display for BlockPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// `binomial(a, b) mod 2`, by Lucas: odd iff the bits of `b` are a subset of
/// the bits of `a`.
pub fn binom_mod2(a: u32, b: u32) -> bool {
    b <= a && a & b == b
}

/// `(2^{n-1}, ..., 2, 1)`, the sequence indexing the image of `xi_n`.
pub fn xi_sequence(n: u32) -> Result<Composition> {
    if n == 0 {
        return Err(Error::XiIndexZero);
    }
    if n > 32 {
        return Err(Error::Overflow("xi sequence"));
    }
    Ok(Composition((0..n).rev().map(|k| 1u32 << k).collect()))
}

/// All `2^(n-1)` compositions of `n` in increasing right-lex order, or `{()}`
/// when `n = 0`.
pub fn compositions_of_degree(n: u32, cap: u32) -> Result<Vec<Composition>> {
    if n > cap {
        return Err(Error::DegreeCap { degree: n, cap });
    }
    let mut out = compositions_of_int(n);
    out.sort();
    Ok(out)
}

/// All ordered compositions of `n`, unsorted and unchecked.
pub fn compositions_of_int(n: u32) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    let gaps = n - 1;
    (0u64..1 << gaps)
        .map(|mask| Composition::from_cut_points(n, (1..n).filter(|&c| mask >> (c - 1) & 1 == 1)))
        .collect()
}

/// Admissible compositions of degree `n` in increasing right-lex order.
pub fn admissibles_of_degree(n: u32, cap: u32) -> Result<Vec<Composition>> {
    if n > cap {
        return Err(Error::DegreeCap { degree: n, cap });
    }
    fn go(remaining: u32, last: u32, acc: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if remaining == 0 {
            out.push(Composition(acc.iter().rev().copied().collect()));
            return;
        }
        // building from the right: the next entry (to the left) is at least 2*last
        let lo = (2 * last).max(1);
        for e in lo..=remaining {
            acc.push(e);
            go(remaining - e, e, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}
