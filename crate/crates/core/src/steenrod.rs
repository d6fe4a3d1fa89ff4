//! The dual Steenrod algebra inside `F*`.
//!
//! `xi_n` maps to `S_{2^{n-1},...,2,1}`, so the image of a Milnor monomial
//! `xi^L` is a shuffle product of such sequences. Keeping only the admissible
//! terms (the left inverse `r`) expands `xi^L` in the dual admissible basis.
//! Because `xi^{gamma(J)} = Sq_J + (higher terms)` in right-lex order, a single
//! backward sweep over the admissibles of a degree recovers every
//! `pi*(Sq_J)`, whose support is exactly the set of `I` with `Sq^J` occurring
//! in the Adem expansion of `Sq^I`.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use serde::Serialize;

use crate::composition::{admissibles_of_degree, xi_sequence, Composition, ExponentVector};
use crate::context::Context;
use crate::dual::shuffle_power_2m;
use crate::error::{Error, Result};
use crate::linear::{Basis, F2Sum};

pub use crate::composition::compositions_of_int;

/// `pi*(xi_n)`.
pub fn xi_image(n: u32) -> Result<Composition> {
    xi_sequence(n)
}

/// `pi*(xi_n^{2^m}) = S_{2^{n+m-1}, ..., 2^m}`.
pub fn xi_power_image(n: u32, m: u32) -> Result<Composition> {
    shuffle_power_2m(&xi_sequence(n)?, m)
}

/// Keeps admissible terms and reads them in the `Sq_J` basis.
pub fn r_map(x: &F2Sum) -> Result<F2Sum> {
    if x.basis() != Basis::Dual {
        return Err(Error::BasisMismatch {
            left: Basis::Dual,
            right: x.basis(),
        });
    }
    Ok(F2Sum::from_terms(
        Basis::DualAdmissible,
        x.iter().filter(|c| c.is_admissible()).cloned(),
    ))
}

/// Coefficient tables for one degree.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeTable {
    degree: u32,
    admissibles: Vec<Composition>,
    xi_images: BTreeMap<ExponentVector, F2Sum>,
    xi_expansions: BTreeMap<ExponentVector, F2Sum>,
    pi_star_sq: BTreeMap<Composition, F2Sum>,
    #[serde(skip)]
    adem_index: HashMap<Composition, Vec<Composition>>,
}

impl DegreeTable {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Admissible sequences of this degree, increasing in right-lex order.
    pub fn admissibles(&self) -> &[Composition] {
        &self.admissibles
    }

    /// `pi*(xi^L)` for every `L` of this degree.
    pub fn xi_images(&self) -> &BTreeMap<ExponentVector, F2Sum> {
        &self.xi_images
    }

    /// `xi^L` in the `Sq_J` basis (the coefficients `B^L_J`).
    pub fn xi_expansions(&self) -> &BTreeMap<ExponentVector, F2Sum> {
        &self.xi_expansions
    }

    /// `pi*(Sq_J)` in the `S_I` basis (the coefficients `C^I_J`).
    pub fn pi_star_sq(&self) -> &BTreeMap<Composition, F2Sum> {
        &self.pi_star_sq
    }

    /// All admissible `J` with `C^I_J = 1`.
    pub fn adem_coefficients(&self, i: &Composition) -> F2Sum {
        F2Sum::from_terms(
            Basis::Admissible,
            self.adem_index.get(i).into_iter().flatten().cloned(),
        )
    }
}

fn check_leading(degree: u32, row: &Composition, sum: &F2Sum, what: &str) -> Result<()> {
    if !sum.coefficient(row) {
        return Err(Error::Triangularity {
            degree,
            row: row.clone(),
            detail: format!("{what} lacks its diagonal term"),
        });
    }
    if let Some(low) = sum.iter().find(|t| *t < row) {
        return Err(Error::Triangularity {
            degree,
            row: row.clone(),
            detail: format!("{what} has term {low} below the diagonal"),
        });
    }
    Ok(())
}

impl Context {
    /// `pi*(xi^L)`: the shuffle product of `S_{xi_power_image(n, m)}` over the
    /// set bits `m` of each exponent `l_n`.
    pub fn pi_star_xi_monomial(&self, exponents: &ExponentVector) -> Result<F2Sum> {
        let mut factors = Vec::new();
        for (k, &l) in exponents.entries().iter().enumerate() {
            let n = k as u32 + 1;
            for m in (0..32).filter(|m| l >> m & 1 == 1) {
                factors.push(F2Sum::monomial(Basis::Dual, xi_power_image(n, m)?));
            }
        }
        self.shuffle_product_all(&factors)
    }

    /// `xi^L` in the dual admissible basis, `r(pi*(xi^L))`.
    pub fn milnor_to_admissible(&self, exponents: &ExponentVector) -> Result<F2Sum> {
        r_map(&self.pi_star_xi_monomial(exponents)?)
    }

    /// Builds (or returns the cached) table for one degree.
    pub fn degree_table(&self, degree: u32) -> Result<Rc<DegreeTable>> {
        if let Some(t) = self.tables.borrow().get(&degree) {
            return Ok(t.clone());
        }
        let table = Rc::new(self.build_degree_table(degree)?);
        self.tables.borrow_mut().insert(degree, table.clone());
        Ok(table)
    }

    /// Computes `pi*(xi^{gamma(J)})` for every admissible `J`, reads off the
    /// Milnor rows with `r`, then back-substitutes from the largest `J`
    /// downward:
    /// `pi*(Sq_J) = pi*(xi^{gamma(J)}) + sum_{J' > J, B^{gamma(J)}_{J'} = 1} pi*(Sq_{J'})`.
    pub fn build_degree_table(&self, degree: u32) -> Result<DegreeTable> {
        self.check_degree(degree)?;
        let admissibles = admissibles_of_degree(degree, self.cap())?;
        let mut xi_images = BTreeMap::new();
        let mut xi_expansions = BTreeMap::new();
        for j in &admissibles {
            let l = j.gamma()?;
            let image = self.pi_star_xi_monomial(&l)?;
            let row = r_map(&image)?;
            check_leading(degree, j, &row, "xi row")?;
            xi_images.insert(l.clone(), image);
            xi_expansions.insert(l, row);
        }
        let mut pi_star_sq: BTreeMap<Composition, F2Sum> = BTreeMap::new();
        for j in admissibles.iter().rev() {
            let l = j.gamma()?;
            let mut value = xi_images[&l].clone();
            for higher in xi_expansions[&l].iter().filter(|t| *t != j) {
                let known = pi_star_sq.get(higher).ok_or_else(|| Error::Triangularity {
                    degree,
                    row: j.clone(),
                    detail: format!("{higher} needed before it was computed"),
                })?;
                value.add_assign(known)?;
            }
            check_leading(degree, j, &value, "pi*(Sq_J)")?;
            pi_star_sq.insert(j.clone(), value);
        }
        let mut adem_index: HashMap<Composition, Vec<Composition>> = HashMap::new();
        for (j, image) in &pi_star_sq {
            for i in image.iter() {
                adem_index.entry(i.clone()).or_default().push(j.clone());
            }
        }
        Ok(DegreeTable {
            degree,
            admissibles,
            xi_images,
            xi_expansions,
            pi_star_sq,
            adem_index,
        })
    }

    /// `pi*(Sq_J)` for admissible `J`.
    pub fn pi_star_sq(&self, j: &Composition) -> Result<F2Sum> {
        if !j.is_admissible() {
            return Err(Error::NotAdmissible(j.clone()));
        }
        let table = self.degree_table(j.degree())?;
        Ok(table.pi_star_sq[j].clone())
    }

    /// The admissible expansion of `Sq^I`, read from the table of
    /// `pi*(Sq_J)`.
    pub fn adem_coefficients(&self, i: &Composition) -> Result<F2Sum> {
        Ok(self.degree_table(i.degree())?.adem_coefficients(i))
    }

    /// `pi*` of `sum_alpha prod_k xi_{alpha(k)}^{2^{sigma(k)}}`, the sum running
    /// over compositions `alpha` of `n` with `sigma(k) = alpha(1) + ... +
    /// alpha(k-1)`.
    pub fn milnor_conjugation_rhs(&self, n: u32) -> Result<F2Sum> {
        if n == 0 {
            return Err(Error::XiIndexZero);
        }
        let mut total = F2Sum::zero(Basis::Dual);
        for alpha in compositions_of_int(n) {
            let mut sigma = 0;
            let mut factors = Vec::with_capacity(alpha.len());
            for &part in alpha.entries() {
                factors.push(F2Sum::monomial(Basis::Dual, xi_power_image(part, sigma)?));
                sigma += part;
            }
            total.add_assign(&self.shuffle_product_all(&factors)?)?;
        }
        Ok(total)
    }
}
