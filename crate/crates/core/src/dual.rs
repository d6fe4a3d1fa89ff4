//! The dual side `F*`: overlapping shuffle product, deconcatenation
//! coproduct, and the antipode.
//!
//! For `A = (a_1..a_n)` and `B = (b_1..b_m)` with both nonempty,
//!
//! ```text
//! A.B = sum_{0<=i<=n} (a_1..a_i, b_1, A_{i+1}.B_2)
//!     + sum_{1<=i<=n} (a_1..a_{i-1}, a_i + b_1, A_{i+1}.B_2)
//! ```
//!
//! where `A_k` is the tail starting at `a_k`, and `A.() = A`, `().B = B`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

use crate::composition::Composition;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::linear::{Basis, F2Sum, TensorSum};

fn toggle(set: &mut HashSet<Composition>, c: Composition) {
    if !set.remove(&c) {
        set.insert(c);
    }
}

/// The overlapping shuffle with integer multiplicities, straight from the
/// recursive definition and without memoization.
pub fn overlapping_shuffle_counts(a: &Composition, b: &Composition) -> BTreeMap<Composition, u64> {
    fn go(a: &[u32], b: &[u32], prefix: &mut Vec<u32>, out: &mut HashMap<Vec<u32>, u64>) {
        if b.is_empty() || a.is_empty() {
            let rest = if b.is_empty() { a } else { b };
            let mut word = prefix.clone();
            word.extend_from_slice(rest);
            *out.entry(word).or_default() += 1;
            return;
        }
        let base = prefix.len();
        for i in 0..=a.len() {
            prefix.extend_from_slice(&a[..i]);
            prefix.push(b[0]);
            go(&a[i..], &b[1..], prefix, out);
            prefix.truncate(base);
        }
        for i in 1..=a.len() {
            prefix.extend_from_slice(&a[..i - 1]);
            prefix.push(a[i - 1] + b[0]);
            go(&a[i..], &b[1..], prefix, out);
            prefix.truncate(base);
        }
    }
    let mut out = HashMap::new();
    go(a.entries(), b.entries(), &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|(w, c)| (Composition::from_vec_unchecked(w), c))
        .collect()
}

impl Context {
    /// `A.B` reduced mod 2, memoized on the unordered pair.
    pub(crate) fn shuffle_terms(&self, a: &Composition, b: &Composition) -> Rc<[Composition]> {
        if b.is_empty() {
            return Rc::from(vec![a.clone()]);
        }
        if a.is_empty() {
            return Rc::from(vec![b.clone()]);
        }
        let key = if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        if let Some(hit) = self.shuffle_memo.borrow().get(&key) {
            return hit.clone();
        }
        let (a, b) = (&key.0, &key.1);
        let ae = a.entries();
        let b0 = b.entries()[0];
        let b_tail = b.suffix(1);
        let mut acc = HashSet::new();
        for i in 0..=ae.len() {
            let sub = self.shuffle_terms(&a.suffix(i), &b_tail);
            let mut head = ae[..i].to_vec();
            head.push(b0);
            let head = Composition::from_vec_unchecked(head);
            for t in sub.iter() {
                toggle(&mut acc, head.concat(t));
            }
            if i >= 1 {
                let mut head = ae[..i].to_vec();
                head[i - 1] += b0;
                let head = Composition::from_vec_unchecked(head);
                for t in sub.iter() {
                    toggle(&mut acc, head.concat(t));
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().collect();
        terms.sort();
        let terms: Rc<[Composition]> = terms.into();
        self.shuffle_memo.borrow_mut().insert(key, terms.clone());
        terms
    }

    /// `S_A S_B` in the dual algebra.
    pub fn overlapping_shuffle(&self, a: &Composition, b: &Composition) -> F2Sum {
        F2Sum::from_terms(Basis::Dual, self.shuffle_terms(a, b).iter().cloned())
    }

    /// Bilinear extension of the overlapping shuffle.
    pub fn shuffle_product(&self, x: &F2Sum, y: &F2Sum) -> Result<F2Sum> {
        expect_dual(x)?;
        expect_dual(y)?;
        let mut acc = HashSet::new();
        for a in x.iter() {
            for b in y.iter() {
                for t in self.shuffle_terms(a, b).iter() {
                    toggle(&mut acc, t.clone());
                }
            }
        }
        Ok(F2Sum::from_terms(Basis::Dual, acc))
    }

    /// Product of a sequence of sums; the empty product is the unit.
    pub fn shuffle_product_all<'a>(
        &self,
        factors: impl IntoIterator<Item = &'a F2Sum>,
    ) -> Result<F2Sum> {
        let mut acc = F2Sum::one(Basis::Dual);
        for f in factors {
            acc = self.shuffle_product(&acc, f)?;
        }
        Ok(acc)
    }

    /// `chi(S_I) = sum over ordered block partitions beta of I of
    /// S_{beta(1)} S_{beta(2)} ... S_{beta(l)}`.
    ///
    /// Partitions sharing a prefix share its product: with `P(k)` the sum over
    /// block partitions of the first `k` entries, `P(k) = sum_{j<k} P(j) S_{I[j..k]}`.
    pub fn chi_dual_partitions(&self, composition: &Composition) -> F2Sum {
        let entries = composition.entries();
        let mut prefix: Vec<HashSet<Composition>> = vec![HashSet::from([Composition::empty()])];
        for k in 1..=entries.len() {
            let mut acc = HashSet::new();
            for (j, p) in prefix.iter().enumerate() {
                let block = Composition::from_vec_unchecked(entries[j..k].to_vec());
                for a in p {
                    for t in self.shuffle_terms(a, &block).iter() {
                        toggle(&mut acc, t.clone());
                    }
                }
            }
            prefix.push(acc);
        }
        F2Sum::from_terms(Basis::Dual, prefix.pop().expect("nonempty"))
    }
}

fn expect_dual(x: &F2Sum) -> Result<()> {
    if x.basis() != Basis::Dual {
        return Err(Error::BasisMismatch {
            left: Basis::Dual,
            right: x.basis(),
        });
    }
    Ok(())
}

/// `A^{2^m} = 2^m A` entrywise.
pub fn shuffle_power_2m(a: &Composition, m: u32) -> Result<Composition> {
    let factor = 1u32
        .checked_shl(m)
        .filter(|_| m < 32)
        .ok_or(Error::Overflow("shuffle power"))?;
    a.scale(factor)
}

/// Deconcatenation: all `n + 1` splits into a prefix and a suffix.
pub fn coproduct_dual(composition: &Composition) -> TensorSum {
    TensorSum::from_terms(
        Basis::Dual,
        Basis::Dual,
        (0..=composition.len()).map(|k| (composition.prefix(k), composition.suffix(k))),
    )
}

pub fn coproduct_dual_sum(x: &F2Sum) -> Result<TensorSum> {
    expect_dual(x)?;
    let mut out = TensorSum::zero(Basis::Dual, Basis::Dual);
    for c in x.iter() {
        out.add_assign(&coproduct_dual(c))?;
    }
    Ok(out)
}

/// `chi(S_I)` as the sum over coarsenings of the reversed composition.
pub fn chi_dual_coarsening(composition: &Composition) -> F2Sum {
    F2Sum::from_terms(Basis::Dual, composition.reverse().coarsenings())
}

pub fn chi_dual(x: &F2Sum) -> Result<F2Sum> {
    expect_dual(x)?;
    Ok(x.map_linear(Basis::Dual, chi_dual_coarsening))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;

    fn dual(terms: &[Composition]) -> F2Sum {
        F2Sum::from_terms(Basis::Dual, terms.iter().cloned())
    }

    #[test]
    fn square_of_xi2() {
        let ctx = Context::default();
        assert_eq!(
            ctx.overlapping_shuffle(&comp![2, 1], &comp![2, 1]),
            dual(&[comp![4, 2]])
        );
    }

    #[test]
    fn generic_two_by_two_shuffle() {
        let expect = [
            comp![5, 10],
            comp![5, 2, 8],
            comp![1, 4, 10],
            comp![1, 6, 8],
            comp![1, 2, 4, 8],
            comp![1, 4, 2, 8],
            comp![1, 4, 8, 2],
            comp![5, 8, 2],
            comp![4, 1, 10],
            comp![4, 9, 2],
            comp![4, 8, 1, 2],
            comp![4, 1, 8, 2],
            comp![4, 1, 2, 8],
        ];
        let counts = overlapping_shuffle_counts(&comp![1, 2], &comp![4, 8]);
        assert_eq!(counts.len(), 13);
        assert!(counts.values().all(|&c| c == 1));
        let ctx = Context::default();
        assert_eq!(
            ctx.overlapping_shuffle(&comp![1, 2], &comp![4, 8]),
            dual(&expect)
        );
    }

    #[test]
    fn unit_cases() {
        let ctx = Context::default();
        assert_eq!(
            ctx.overlapping_shuffle(&comp![1], &comp![]),
            dual(&[comp![1]])
        );
        assert_eq!(
            ctx.overlapping_shuffle(&comp![], &comp![3]),
            dual(&[comp![3]])
        );
    }

    #[test]
    fn pi_star_of_xi1_cubed_xi2() {
        let ctx = Context::default();
        let x = dual(&[comp![3], comp![1, 2], comp![2, 1]]);
        let expect = dual(&[
            comp![5, 1],
            comp![4, 2],
            comp![3, 3],
            comp![2, 4],
            comp![2, 3, 1],
            comp![1, 4, 1],
            comp![3, 1, 2],
            comp![2, 2, 2],
            comp![1, 2, 3],
            comp![2, 1, 2, 1],
            comp![1, 2, 1, 2],
        ]);
        assert_eq!(
            ctx.shuffle_product(&x, &dual(&[comp![2, 1]])).unwrap(),
            expect
        );
        assert!(ctx
            .shuffle_product(&x, &F2Sum::zero(Basis::Dual))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn s1_squared() {
        let counts = overlapping_shuffle_counts(&comp![1], &comp![1]);
        assert_eq!(counts, BTreeMap::from([(comp![1, 1], 2), (comp![2], 1)]));
        let ctx = Context::default();
        assert_eq!(
            ctx.overlapping_shuffle(&comp![1], &comp![1]),
            dual(&[comp![2]])
        );
    }

    #[test]
    fn dyadic_powers() {
        assert_eq!(shuffle_power_2m(&comp![2, 1], 1).unwrap(), comp![4, 2]);
        assert_eq!(shuffle_power_2m(&comp![2, 1], 0).unwrap(), comp![2, 1]);
        assert_eq!(shuffle_power_2m(&comp![1], 3).unwrap(), comp![8]);
        let ctx = Context::default();
        let mut p = dual(&[comp![3, 1, 2]]);
        for m in 1..=3 {
            p = ctx.shuffle_product(&p, &p).unwrap();
            assert_eq!(p, dual(&[shuffle_power_2m(&comp![3, 1, 2], m).unwrap()]));
        }
    }

    #[test]
    fn deconcatenation() {
        let d = coproduct_dual(&comp![7]);
        assert_eq!(d.terms().len(), 2);
        assert!(d.contains(&comp![], &comp![7]) && d.contains(&comp![7], &comp![]));
        let d = coproduct_dual(&comp![1, 2, 3]);
        let expect = [
            (comp![], comp![1, 2, 3]),
            (comp![1], comp![2, 3]),
            (comp![1, 2], comp![3]),
            (comp![1, 2, 3], comp![]),
        ];
        assert_eq!(d.terms(), &expect.into_iter().collect());
        assert_eq!(
            coproduct_dual(&comp![]).terms(),
            &[(comp![], comp![])].into_iter().collect()
        );
    }

    #[test]
    fn antipode_of_123_both_formulas() {
        let expect = dual(&[comp![3, 2, 1], comp![5, 1], comp![3, 3], comp![6]]);
        assert_eq!(chi_dual_coarsening(&comp![1, 2, 3]), expect);
        let ctx = Context::default();
        assert_eq!(ctx.chi_dual_partitions(&comp![1, 2, 3]), expect);
        assert_eq!(chi_dual_coarsening(&comp![]), F2Sum::one(Basis::Dual));
        assert_eq!(chi_dual_coarsening(&comp![4]), dual(&[comp![4]]));
        assert_eq!(ctx.chi_dual_partitions(&comp![4]), dual(&[comp![4]]));
    }

    #[test]
    fn two_part_partition_formula() {
        let ctx = Context::default();
        for (a, b) in [(1, 1), (2, 3), (4, 1)] {
            let ab = Composition::new(vec![a, b]).unwrap();
            let mut expect = dual(std::slice::from_ref(&ab));
            expect
                .add_assign(&ctx.overlapping_shuffle(&comp![a], &comp![b]))
                .unwrap();
            assert_eq!(ctx.chi_dual_partitions(&ab), expect);
            assert_eq!(chi_dual_coarsening(&ab), expect);
        }
    }

    #[test]
    fn chi_linear_examples() {
        let x = dual(&[comp![1, 2, 3], comp![6]]);
        assert_eq!(
            chi_dual(&x).unwrap(),
            dual(&[comp![3, 2, 1], comp![5, 1], comp![3, 3]])
        );
        assert!(chi_dual(&F2Sum::zero(Basis::Dual)).unwrap().is_zero());
        let once = chi_dual(&dual(&[comp![1, 2, 3]])).unwrap();
        assert_eq!(chi_dual(&once).unwrap(), dual(&[comp![1, 2, 3]]));
    }
}

#[cfg(test)]
mod partition_oracle {
    use super::*;
    use crate::composition::compositions_of_degree;

    fn literal(ctx: &Context, c: &Composition) -> F2Sum {
        let mut acc = F2Sum::zero(Basis::Dual);
        for beta in c.block_partitions().unwrap() {
            let factors: Vec<F2Sum> = beta
                .blocks()
                .iter()
                .map(|b| F2Sum::monomial(Basis::Dual, b.clone()))
                .collect();
            acc.add_assign(&ctx.shuffle_product_all(&factors).unwrap())
                .unwrap();
        }
        acc
    }

    #[test]
    fn prefix_recursion_matches_enumeration() {
        let ctx = Context::default();
        for n in 1..=8 {
            for c in compositions_of_degree(n, 16).unwrap() {
                assert_eq!(ctx.chi_dual_partitions(&c), literal(&ctx, &c), "I={c}");
            }
        }
    }
}
