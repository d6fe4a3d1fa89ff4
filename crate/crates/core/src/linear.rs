//! GF(2)-linear combinations of basis elements, tensor sums, the dual pairing,
//! and bit-packed Gaussian elimination.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::composition::{compositions_of_degree, Composition};
use crate::error::{Error, Result};

/// Which basis the terms of a sum refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `S^I` in the free algebra.
    Free,
    /// `S_I` in the dual algebra.
    Dual,
    /// Admissible `Sq^J` in the Steenrod algebra.
    Admissible,
    /// Dual admissible `Sq_J` in the dual Steenrod algebra.
    DualAdmissible,
    /// Milnor monomials `xi^L`.
    Milnor,
}

impl Basis {
    pub fn prefix(self) -> &'static str {
        match self {
            Basis::Free => "S^",
            Basis::Dual => "S_",
            Basis::Admissible => "Sq^",
            Basis::DualAdmissible => "Sq_",
            Basis::Milnor => "xi_",
        }
    }

    /// The basis this one pairs against.
    pub fn pairs_with(self) -> Option<Basis> {
        match self {
            Basis::Free => Some(Basis::Dual),
            Basis::Dual => Some(Basis::Free),
            Basis::Admissible => Some(Basis::DualAdmissible),
            Basis::DualAdmissible => Some(Basis::Admissible),
            Basis::Milnor => None,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.prefix())
    }
}

/// A GF(2)-linear combination: a set of terms in one basis. Addition is
/// symmetric difference. Terms iterate in right-lex order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct F2Sum<T: Ord = Composition> {
    basis: Basis,
    terms: BTreeSet<T>,
}

impl<T: Ord + Clone> F2Sum<T> {
    pub fn zero(basis: Basis) -> Self {
        F2Sum {
            basis,
            terms: BTreeSet::new(),
        }
    }

    pub fn monomial(basis: Basis, term: T) -> Self {
        F2Sum {
            basis,
            terms: BTreeSet::from([term]),
        }
    }

    /// Collapses repeated terms mod 2.
    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = T>) -> Self {
        let mut sum = F2Sum::zero(basis);
        for t in terms {
            sum.toggle(t);
        }
        sum
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeSet<T> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeSet<T> {
        self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, term: &T) -> bool {
        self.terms.contains(term)
    }

    pub fn toggle(&mut self, term: T) {
        if !self.terms.remove(&term) {
            self.terms.insert(term);
        }
    }

    pub fn add(&self, other: &F2Sum<T>) -> Result<F2Sum<T>> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &F2Sum<T>) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                left: self.basis,
                right: other.basis,
            });
        }
        for t in &other.terms {
            self.toggle(t.clone());
        }
        Ok(())
    }

    /// The same terms read in another basis.
    pub fn relabel(self, basis: Basis) -> F2Sum<T> {
        F2Sum {
            basis,
            terms: self.terms,
        }
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<U: Ord + Clone>(
        &self,
        basis: Basis,
        mut f: impl FnMut(&T) -> F2Sum<U>,
    ) -> F2Sum<U> {
        let mut out = F2Sum::zero(basis);
        for t in &self.terms {
            for u in f(t).terms {
                out.toggle(u);
            }
        }
        out
    }
}

impl F2Sum<Composition> {
    pub fn one(basis: Basis) -> Self {
        F2Sum::monomial(basis, Composition::empty())
    }

    /// Splits into homogeneous components, keyed by degree.
    pub fn by_degree(&self) -> Vec<(u32, F2Sum<Composition>)> {
        let mut parts: std::collections::BTreeMap<u32, F2Sum<Composition>> = Default::default();
        for t in &self.terms {
            parts
                .entry(t.degree())
                .or_insert_with(|| F2Sum::zero(self.basis))
                .terms
                .insert(t.clone());
        }
        parts.into_iter().collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.iter().map(Composition::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }
}

impl<T: Ord + fmt::Display> fmt::Display for F2Sum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}{}", self.basis.prefix(), t)?;
        }
        Ok(())
    }
}

/// `<x, y>`: parity of the common support of two sums in paired bases.
pub fn pairing(x: &F2Sum, y: &F2Sum) -> Result<bool> {
    if x.basis.pairs_with() != Some(y.basis) {
        return Err(Error::BasisMismatch {
            left: x.basis,
            right: y.basis,
        });
    }
    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    Ok(small.iter().filter(|t| large.coefficient(t)).count() % 2 == 1)
}

/// A GF(2)-linear combination of pure tensors `S_I (x) S_J`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TensorSum {
    left: Basis,
    right: Basis,
    terms: BTreeSet<(Composition, Composition)>,
}

impl TensorSum {
    pub fn zero(left: Basis, right: Basis) -> Self {
        TensorSum {
            left,
            right,
            terms: BTreeSet::new(),
        }
    }

    pub fn from_terms(
        left: Basis,
        right: Basis,
        terms: impl IntoIterator<Item = (Composition, Composition)>,
    ) -> Self {
        let mut out = TensorSum::zero(left, right);
        for t in terms {
            out.toggle(t);
        }
        out
    }

    pub fn bases(&self) -> (Basis, Basis) {
        (self.left, self.right)
    }

    pub fn terms(&self) -> &BTreeSet<(Composition, Composition)> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, left: &Composition, right: &Composition) -> bool {
        // BTreeSet<(A, B)> can't be probed by reference pair without cloning
        self.terms.contains(&(left.clone(), right.clone()))
    }

    pub fn toggle(&mut self, term: (Composition, Composition)) {
        if !self.terms.remove(&term) {
            self.terms.insert(term);
        }
    }

    pub fn add_assign(&mut self, other: &TensorSum) -> Result<()> {
        if self.bases() != other.bases() {
            let (left, right) = if self.left != other.left {
                (self.left, other.left)
            } else {
                (self.right, other.right)
            };
            return Err(Error::BasisMismatch { left, right });
        }
        for t in &other.terms {
            self.toggle(t.clone());
        }
        Ok(())
    }

    /// `<x (x) y, x' (x) y'> = <x, x'><y, y'>`, extended bilinearly.
    pub fn pairing(&self, other: &TensorSum) -> Result<bool> {
        for (a, b) in [(self.left, other.left), (self.right, other.right)] {
            if a.pairs_with() != Some(b) {
                return Err(Error::BasisMismatch { left: a, right: b });
            }
        }
        Ok(self.terms.intersection(&other.terms).count() % 2 == 1)
    }
}

impl fmt::Display for TensorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (a, b)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(
                f,
                "{}{} (x) {}{}",
                self.left.prefix(),
                a,
                self.right.prefix(),
                b
            )?;
        }
        Ok(())
    }
}

/// Bit vector over GF(2), packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, k: usize) -> bool {
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn set(&mut self, k: usize, value: bool) {
        let mask = 1u64 << (k % 64);
        if value {
            self.words[k / 64] |= mask;
        } else {
            self.words[k / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, k: usize) {
        self.words[k / 64] ^= 1u64 << (k % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn dot(&self, other: &BitVector) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&k| self.get(k))
    }
}

/// Dense GF(2) matrix, one bit vector per row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GF2Matrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GF2Matrix {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GF2Matrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, true);
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c)
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.rows[r]
    }

    pub fn transpose(&self) -> GF2Matrix {
        let mut t = GF2Matrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let mut out = BitVector::zeros(self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            if row.dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    pub fn add(&self, other: &GF2Matrix) -> GF2Matrix {
        assert_eq!((self.n_rows(), self.cols), (other.n_rows(), other.cols));
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.xor_assign(b);
        }
        out
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// column of each nonzero row.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            let Some(p) = (next..self.rows.len()).find(|&r| self.rows[r].get(c)) else {
                continue;
            };
            self.rows.swap(next, p);
            let pivot_row = self.rows[next].clone();
            for (r, row) in self.rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
            if next == self.rows.len() {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let is_pivot: Vec<bool> = {
            let mut flags = vec![false; self.cols];
            for &p in &pivots {
                flags[p] = true;
            }
            flags
        };
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::zeros(self.cols);
                v.set(free, true);
                for (r, &p) in pivots.iter().enumerate() {
                    if m.rows[r].get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `M x = b`, if one exists.
    pub fn solve(&self, b: &BitVector) -> Option<BitVector> {
        assert_eq!(b.len(), self.rows.len(), "dimension mismatch");
        let mut aug = GF2Matrix::zeros(self.rows.len(), self.cols + 1);
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                aug.set(r, c, true);
            }
            aug.set(r, self.cols, b.get(r));
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVector::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x.set(p, aug.rows[r].get(self.cols));
        }
        Some(x)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> GF2Matrix {
        let mut m = GF2Matrix::zeros(rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            for r in v.ones() {
                m.set(r, c, true);
            }
        }
        m
    }
}

/// A linear endomorphism of one graded piece, with rows and columns indexed by
/// the compositions of that degree in right-lex order. Column `c` holds the
/// image of the `c`-th basis element.
#[derive(Clone, Debug)]
pub struct GradedMatrix {
    degree: u32,
    basis: Basis,
    index: Vec<Composition>,
    position: HashMap<Composition, usize>,
    matrix: GF2Matrix,
}

impl GradedMatrix {
    pub fn build(
        basis: Basis,
        degree: u32,
        cap: u32,
        mut image: impl FnMut(&Composition) -> F2Sum,
    ) -> Result<GradedMatrix> {
        let index = compositions_of_degree(degree, cap)?;
        let position: HashMap<_, _> = index
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, c)| (c, k))
            .collect();
        let mut matrix = GF2Matrix::zeros(index.len(), index.len());
        for (c, comp) in index.iter().enumerate() {
            let img = image(comp);
            if img.basis() != basis {
                return Err(Error::BasisMismatch {
                    left: basis,
                    right: img.basis(),
                });
            }
            for t in img.iter() {
                let r = *position.get(t).ok_or_else(|| Error::DegreeCap {
                    degree: t.degree(),
                    cap,
                })?;
                matrix.flip(r, c);
            }
        }
        Ok(GradedMatrix {
            degree,
            basis,
            index,
            position,
            matrix,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn index(&self) -> &[Composition] {
        &self.index
    }

    pub fn matrix(&self) -> &GF2Matrix {
        &self.matrix
    }

    /// The same index with a different matrix.
    pub fn with_matrix(&self, basis: Basis, matrix: GF2Matrix) -> GradedMatrix {
        GradedMatrix {
            degree: self.degree,
            basis,
            index: self.index.clone(),
            position: self.position.clone(),
            matrix,
        }
    }

    /// `None` if some term lies outside this degree.
    pub fn to_vector(&self, x: &F2Sum) -> Option<BitVector> {
        let mut v = BitVector::zeros(self.index.len());
        for t in x.iter() {
            v.flip(*self.position.get(t)?);
        }
        Some(v)
    }

    pub fn to_sum(&self, v: &BitVector) -> F2Sum {
        F2Sum::from_terms(self.basis, v.ones().map(|k| self.index[k].clone()))
    }

    pub fn kernel_basis(&self) -> Vec<F2Sum> {
        self.matrix
            .kernel_basis()
            .iter()
            .map(|v| self.to_sum(v))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;

    fn dual(terms: &[Composition]) -> F2Sum {
        F2Sum::from_terms(Basis::Dual, terms.iter().cloned())
    }

    fn free(terms: &[Composition]) -> F2Sum {
        F2Sum::from_terms(Basis::Free, terms.iter().cloned())
    }

    #[test]
    fn addition_is_symmetric_difference() {
        let s6 = dual(&[comp![6]]);
        assert!(s6.add(&s6).unwrap().is_zero());
        assert_eq!(
            s6.add(&dual(&[comp![2, 4]])).unwrap(),
            dual(&[comp![6], comp![2, 4]])
        );
        assert_eq!(
            F2Sum::zero(Basis::Dual).add(&dual(&[comp![4, 2]])).unwrap(),
            dual(&[comp![4, 2]])
        );
    }

    #[test]
    fn addition_rejects_mixed_bases() {
        let err = dual(&[comp![1]]).add(&free(&[comp![1]])).unwrap_err();
        assert_eq!(
            err,
            Error::BasisMismatch {
                left: Basis::Dual,
                right: Basis::Free
            }
        );
    }

    #[test]
    fn pairing_examples() {
        assert!(pairing(&free(&[comp![2, 1]]), &dual(&[comp![2, 1]])).unwrap());
        assert!(!pairing(&free(&[comp![2, 1]]), &dual(&[comp![1, 2]])).unwrap());
        assert!(pairing(&free(&[comp![6], comp![2, 4]]), &dual(&[comp![2, 4]])).unwrap());
        assert!(pairing(&free(&[comp![1]]), &free(&[comp![1]])).is_err());
    }

    #[test]
    fn coefficient_reads_membership() {
        let x = dual(&[comp![6], comp![2, 4]]);
        assert!(x.coefficient(&comp![2, 4]));
        assert!(!dual(&[comp![4, 2]]).coefficient(&comp![2, 4]));
        assert!(!F2Sum::zero(Basis::Dual).coefficient(&comp![1]));
    }

    #[test]
    fn rendering_is_right_lex() {
        assert_eq!(
            dual(&[comp![2, 4], comp![6]]).to_string(),
            "S_[6] + S_[2,4]"
        );
        assert_eq!(F2Sum::<Composition>::zero(Basis::Free).to_string(), "0");
        assert_eq!(F2Sum::one(Basis::Dual).to_string(), "S_[]");
    }

    #[test]
    fn json_form() {
        let x = dual(&[comp![2, 4], comp![6]]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"basis":"dual","terms":[[6],[2,4]]}"#);
        let back: F2Sum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<F2Sum>(r#"{"basis":"dual","terms":[[0]]}"#).is_err());
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(GF2Matrix::identity(7).kernel_basis().is_empty());
        let z = GF2Matrix::zeros(5, 5);
        let k = z.kernel_basis();
        assert_eq!(k.len(), 5);
        assert_eq!(GF2Matrix::from_columns(5, &k).rank(), 5);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let mut m = GF2Matrix::zeros(3, 70);
        for c in 0..70 {
            m.set(c % 3, c, true);
            if c % 5 == 0 {
                m.set((c + 1) % 3, c, true);
            }
        }
        let k = m.kernel_basis();
        assert_eq!(k.len(), 70 - m.rank());
        for v in &k {
            assert!(m.mul_vec(v).is_zero());
        }
        assert_eq!(GF2Matrix::from_columns(70, &k).rank(), k.len());
    }

    #[test]
    fn solve_finds_preimages() {
        let mut m = GF2Matrix::zeros(3, 3);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 1, true);
        let mut b = BitVector::zeros(3);
        b.set(0, true);
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        b.set(2, true);
        assert!(m.solve(&b).is_none());
    }

    #[test]
    fn gram_matrix_is_identity() {
        for n in 0..=6 {
            let comps = compositions_of_degree(n, 16).unwrap();
            for a in &comps {
                for b in &comps {
                    let p = pairing(
                        &free(std::slice::from_ref(a)),
                        &dual(std::slice::from_ref(b)),
                    )
                    .unwrap();
                    assert_eq!(p, a == b);
                }
            }
        }
    }
}
