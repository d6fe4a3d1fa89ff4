//! The free side: `F = F_2<S^1, S^2, ...>` with concatenation product,
//! coproduct `Delta(S^n) = sum S^i (x) S^{n-i}`, reduction to the admissible
//! basis of the Steenrod algebra, and the antipode.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use crate::composition::{binom_mod2, Composition};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::linear::{Basis, F2Sum, TensorSum};

fn expect_basis<T: Ord + Clone>(x: &F2Sum<T>, basis: Basis) -> Result<()> {
    if x.basis() != basis {
        return Err(Error::BasisMismatch {
            left: basis,
            right: x.basis(),
        });
    }
    Ok(())
}

pub fn concat_product(x: &F2Sum, y: &F2Sum) -> Result<F2Sum> {
    expect_basis(x, Basis::Free)?;
    expect_basis(y, Basis::Free)?;
    Ok(F2Sum::from_terms(
        Basis::Free,
        x.iter().flat_map(|a| y.iter().map(move |b| a.concat(b))),
    ))
}

/// Coproduct of a monomial `S^{i_1} ... S^{i_l}`: the product of the
/// generator coproducts. Multiplicities are counted in full and reduced mod 2
/// at the end.
pub fn coproduct_free_monomial(monomial: &Composition) -> TensorSum {
    let mut counts: HashMap<(Vec<u32>, Vec<u32>), u64> = HashMap::from([((vec![], vec![]), 1)]);
    for &e in monomial.entries() {
        let mut next: HashMap<(Vec<u32>, Vec<u32>), u64> = HashMap::new();
        for ((left, right), count) in &counts {
            for i in 0..=e {
                let mut l = left.clone();
                let mut r = right.clone();
                if i > 0 {
                    l.push(i);
                }
                if e - i > 0 {
                    r.push(e - i);
                }
                *next.entry((l, r)).or_default() += count;
            }
        }
        counts = next;
    }
    TensorSum::from_terms(
        Basis::Free,
        Basis::Free,
        counts
            .into_iter()
            .filter(|(_, c)| c % 2 == 1)
            .map(|((l, r), _)| {
                (
                    Composition::from_vec_unchecked(l),
                    Composition::from_vec_unchecked(r),
                )
            }),
    )
}

pub fn coproduct_free(x: &F2Sum) -> Result<TensorSum> {
    expect_basis(x, Basis::Free)?;
    let mut out = TensorSum::zero(Basis::Free, Basis::Free);
    for m in x.iter() {
        out.add_assign(&coproduct_free_monomial(m))?;
    }
    Ok(out)
}

/// Right side of the Adem relation for `Sq^i Sq^j`, `0 < i < 2j`:
/// `sum_{k=0}^{floor(i/2)} binom(j-k-1, i-2k) Sq^{i+j-k} Sq^k`.
pub fn adem_rewrite_pair(i: u32, j: u32) -> Result<F2Sum> {
    if i == 0 || j == 0 || i >= 2 * j {
        return Err(Error::AdmissiblePair(i, j));
    }
    let terms = (0..=i / 2)
        .filter(|&k| binom_mod2(j - k - 1, i - 2 * k))
        .map(|k| {
            if k == 0 {
                Composition::from_vec_unchecked(vec![i + j])
            } else {
                Composition::from_vec_unchecked(vec![i + j - k, k])
            }
        });
    Ok(F2Sum::from_terms(Basis::Free, terms))
}

impl Context {
    /// Reduces a monomial to admissible form by rewriting the leftmost
    /// inadmissible pair until none remain.
    pub(crate) fn adem_reduce_monomial(&self, monomial: &Composition) -> Rc<[Composition]> {
        if let Some(hit) = self.adem_memo.borrow().get(monomial) {
            return hit.clone();
        }
        let result: Rc<[Composition]> = match monomial.first_inadmissible_pair() {
            None => Rc::from(vec![monomial.clone()]),
            Some(k) => {
                let e = monomial.entries();
                let relation = adem_rewrite_pair(e[k], e[k + 1])
                    .expect("first_inadmissible_pair returned an admissible pair");
                let head = monomial.prefix(k);
                let tail = monomial.suffix(k + 2);
                let mut acc = BTreeSet::new();
                for middle in relation.iter() {
                    let word = head.concat(middle).concat(&tail);
                    for t in self.adem_reduce_monomial(&word).iter() {
                        if !acc.remove(t) {
                            acc.insert(t.clone());
                        }
                    }
                }
                acc.into_iter().collect::<Vec<_>>().into()
            }
        };
        self.adem_memo
            .borrow_mut()
            .insert(monomial.clone(), result.clone());
        result
    }

    /// The image under `F -> A` in the admissible basis `Sq^J`.
    pub fn adem_reduce(&self, x: &F2Sum) -> Result<F2Sum> {
        expect_basis(x, Basis::Free)?;
        Ok(x.map_linear(Basis::Admissible, |m| {
            F2Sum::from_terms(
                Basis::Admissible,
                self.adem_reduce_monomial(m).iter().cloned(),
            )
        }))
    }
}

/// `chi(S^I)` is the sum of `S^{I'}` over all refinements `I'` of the reversed
/// composition.
pub fn chi_free_monomial(monomial: &Composition) -> F2Sum {
    F2Sum::from_terms(Basis::Free, monomial.reverse().refinements())
}

pub fn chi_free(x: &F2Sum) -> Result<F2Sum> {
    expect_basis(x, Basis::Free)?;
    Ok(x.map_linear(Basis::Free, chi_free_monomial))
}

/// The counit: picks out the coefficient of the unit.
pub fn counit<T: Ord + Clone + Default>(x: &F2Sum<T>) -> bool {
    x.coefficient(&T::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use crate::composition::compositions_of_degree;

    fn free(terms: &[Composition]) -> F2Sum {
        F2Sum::from_terms(Basis::Free, terms.iter().cloned())
    }

    fn sq(terms: &[Composition]) -> F2Sum {
        F2Sum::from_terms(Basis::Admissible, terms.iter().cloned())
    }

    #[test]
    fn concatenation() {
        assert_eq!(
            concat_product(&free(&[comp![1]]), &free(&[comp![2]])).unwrap(),
            free(&[comp![1, 2]])
        );
        assert_eq!(
            concat_product(&free(&[comp![3, 1]]), &F2Sum::one(Basis::Free)).unwrap(),
            free(&[comp![3, 1]])
        );
        assert_eq!(
            concat_product(&free(&[comp![1], comp![2]]), &free(&[comp![1]])).unwrap(),
            free(&[comp![1, 1], comp![2, 1]])
        );
    }

    #[test]
    fn generator_coproducts() {
        let d1 = coproduct_free_monomial(&comp![1]);
        assert_eq!(
            d1.terms(),
            &BTreeSet::from([(comp![], comp![1]), (comp![1], comp![])])
        );
        let d2 = coproduct_free_monomial(&comp![2]);
        assert_eq!(
            d2.terms(),
            &BTreeSet::from([
                (comp![], comp![2]),
                (comp![1], comp![1]),
                (comp![2], comp![])
            ])
        );
    }

    #[test]
    fn coproduct_of_square_matches_brute_force() {
        // Delta(S^1) * Delta(S^1), componentwise concatenation with full counts
        let d1 = [(vec![], vec![1u32]), (vec![1u32], vec![])];
        let mut counts: HashMap<(Vec<u32>, Vec<u32>), u32> = HashMap::new();
        for (a, b) in &d1 {
            for (c, d) in &d1 {
                let l = [a.clone(), c.clone()].concat();
                let r = [b.clone(), d.clone()].concat();
                *counts.entry((l, r)).or_default() += 1;
            }
        }
        assert_eq!(counts[&(vec![1], vec![1])], 2);
        let expect: BTreeSet<_> = counts
            .into_iter()
            .filter(|(_, c)| c % 2 == 1)
            .map(|((l, r), _)| (Composition::new(l).unwrap(), Composition::new(r).unwrap()))
            .collect();
        assert_eq!(coproduct_free_monomial(&comp![1, 1]).terms(), &expect);
        assert_eq!(expect.len(), 2);
    }

    #[test]
    fn adem_pairs() {
        assert!(adem_rewrite_pair(1, 1).unwrap().is_zero());
        assert_eq!(adem_rewrite_pair(1, 2).unwrap(), free(&[comp![3]]));
        assert_eq!(adem_rewrite_pair(2, 2).unwrap(), free(&[comp![3, 1]]));
        assert_eq!(adem_rewrite_pair(4, 2), Err(Error::AdmissiblePair(4, 2)));
    }

    #[test]
    fn adem_reduction_examples() {
        let ctx = Context::default();
        assert_eq!(
            ctx.adem_reduce(&free(&[comp![1, 2]])).unwrap(),
            sq(&[comp![3]])
        );
        assert_eq!(
            ctx.adem_reduce(&free(&[comp![4, 2]])).unwrap(),
            sq(&[comp![4, 2]])
        );
        assert!(ctx
            .adem_reduce(&free(&[comp![2, 4]]))
            .unwrap()
            .coefficient(&comp![6]));
        assert!(ctx.adem_reduce(&free(&[comp![1, 1]])).unwrap().is_zero());
    }

    #[test]
    fn adem_output_is_admissible() {
        let ctx = Context::default();
        for n in 0..=10 {
            for c in compositions_of_degree(n, 16).unwrap() {
                let r = ctx.adem_reduce(&free(std::slice::from_ref(&c))).unwrap();
                assert!(r.iter().all(Composition::is_admissible), "{c}");
                if c.is_admissible() {
                    assert_eq!(r, sq(&[c]));
                }
            }
        }
    }

    #[test]
    fn no_top_square_from_complementary_pairs() {
        let ctx = Context::default();
        for n in 1..=6u32 {
            let top = comp![1 << n];
            for k in 1..(1u32 << n) {
                let pair = Composition::new(vec![(1 << n) - k, k]).unwrap();
                if pair.is_admissible() {
                    continue;
                }
                let r = ctx.adem_reduce(&free(std::slice::from_ref(&pair))).unwrap();
                assert!(!r.coefficient(&top), "{pair}");
            }
        }
    }

    #[test]
    fn chi_examples() {
        let f = free(&[comp![1, 1, 2], comp![2, 1, 1], comp![1, 1, 1, 1]]);
        assert_eq!(chi_free(&f).unwrap(), f);
        assert_eq!(
            chi_free(&F2Sum::one(Basis::Free)).unwrap(),
            F2Sum::one(Basis::Free)
        );
        assert_eq!(
            chi_free(&free(&[comp![2]])).unwrap(),
            free(&[comp![2], comp![1, 1]])
        );
    }

    #[test]
    fn antipode_axiom_low_degrees() {
        for n in 1..=6 {
            for c in compositions_of_degree(n, 16).unwrap() {
                let mut total = F2Sum::zero(Basis::Free);
                for (a, b) in coproduct_free_monomial(&c).terms() {
                    let term =
                        concat_product(&free(std::slice::from_ref(a)), &chi_free_monomial(b))
                            .unwrap();
                    total.add_assign(&term).unwrap();
                }
                assert!(total.is_zero(), "{c}");
            }
        }
    }

    #[test]
    fn counit_reads_unit() {
        assert!(counit(&F2Sum::one(Basis::Free)));
        assert!(!counit(&free(&[comp![1]])));
    }
}
