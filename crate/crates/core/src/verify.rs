//! Exhaustive verification suites. Each suite walks every basis element in its
//! stated range and records a witness for each failure.

use std::collections::HashSet;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::composition::{compositions_of_degree, Composition};
use crate::context::Context;
use crate::dual::{chi_dual, chi_dual_coarsening, coproduct_dual, overlapping_shuffle_counts};
use crate::error::Result;
use crate::leibniz::{chi_free, chi_free_monomial, coproduct_free_monomial};
use crate::linear::{Basis, F2Sum, GF2Matrix, GradedMatrix};
use crate::steenrod::xi_image;

const MAX_WITNESSES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Free,
    Dual,
}

impl Side {
    pub fn basis(self) -> Basis {
        match self {
            Side::Free => Basis::Free,
            Side::Dual => Basis::Dual,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Free => "free",
            Side::Dual => "dual",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub side: Option<Side>,
    pub degree: u32,
    pub status: Status,
    pub checked: usize,
    pub witnesses: Vec<String>,
}

impl Report {
    fn new(suite: &str, side: Option<Side>, degree: u32) -> Self {
        Report {
            suite: suite.to_string(),
            side,
            degree,
            status: Status::Pass,
            checked: 0,
            witnesses: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.status = Status::Fail;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.suite)?;
        if let Some(side) = self.side {
            write!(f, " [{side}]")?;
        }
        write!(f, " degree<={} checked={}", self.degree, self.checked)?;
        for w in &self.witnesses {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}

fn basis_elements(ctx: &Context, min: u32, max: u32) -> Result<Vec<Composition>> {
    let mut out = Vec::new();
    for n in min..=max {
        out.extend(compositions_of_degree(n, ctx.cap())?);
    }
    Ok(out)
}

fn toggle<T: std::hash::Hash + Eq>(set: &mut HashSet<T>, t: T) {
    if !set.remove(&t) {
        set.insert(t);
    }
}

/// `sum x' chi(x'') = 0` and `chi(chi(x)) = x` on every basis element of
/// positive degree up to `max_degree`, plus `chi(1) = 1`.
pub fn check_antipode_axiom(ctx: &Context, side: Side, max_degree: u32) -> Result<Report> {
    let mut report = Report::new("antipode", Some(side), max_degree);
    let unit = F2Sum::one(side.basis());
    let chi_unit = match side {
        Side::Free => chi_free(&unit)?,
        Side::Dual => chi_dual(&unit)?,
    };
    report.check(chi_unit == unit, || "chi(1) != 1".into());
    for c in basis_elements(ctx, 1, max_degree)? {
        let x = F2Sum::monomial(side.basis(), c.clone());
        let (convolution, twice) = match side {
            Side::Free => {
                let mut acc = HashSet::new();
                for (a, b) in coproduct_free_monomial(&c).terms() {
                    for t in chi_free_monomial(b).iter() {
                        toggle(&mut acc, a.concat(t));
                    }
                }
                (acc, chi_free(&chi_free(&x)?)?)
            }
            Side::Dual => {
                let mut acc = HashSet::new();
                for (a, b) in coproduct_dual(&c).terms() {
                    for t in chi_dual_coarsening(b).iter() {
                        for u in ctx.shuffle_terms(a, t).iter() {
                            toggle(&mut acc, u.clone());
                        }
                    }
                }
                (acc, chi_dual(&chi_dual(&x)?)?)
            }
        };
        report.check(convolution.is_empty(), || {
            format!("sum x'chi(x'') != 0 for {}{c}", side.basis())
        });
        report.check(twice == x, || format!("chi^2 != id on {}{c}", side.basis()));
    }
    Ok(report)
}

/// `chi(xy) = chi(y) chi(x)` on random pairs of basis elements.
pub fn check_antihomomorphism(
    ctx: &Context,
    side: Side,
    max_degree: u32,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let mut report = Report::new("antihomomorphism", Some(side), max_degree);
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let total = rng.gen_range(0..=max_degree);
        let dx = rng.gen_range(0..=total);
        let x = random_composition(&mut rng, dx);
        let y = random_composition(&mut rng, total - dx);
        let (lhs, rhs) = match side {
            Side::Free => {
                let xy = F2Sum::monomial(Basis::Free, x.concat(&y));
                let cx = chi_free_monomial(&x);
                let cy = chi_free_monomial(&y);
                (chi_free(&xy)?, crate::leibniz::concat_product(&cy, &cx)?)
            }
            Side::Dual => {
                let xy = ctx.overlapping_shuffle(&x, &y);
                let cx = chi_dual_coarsening(&x);
                let cy = chi_dual_coarsening(&y);
                (chi_dual(&xy)?, ctx.shuffle_product(&cy, &cx)?)
            }
        };
        report.check(lhs == rhs, || format!("x={x} y={y}"));
    }
    Ok(report)
}

/// Uniform random composition of `n`.
pub fn random_composition(rng: &mut impl Rng, n: u32) -> Composition {
    if n == 0 {
        return Composition::empty();
    }
    let mut parts = Vec::new();
    let mut run = 1;
    for _ in 1..n {
        if rng.gen_bool(0.5) {
            parts.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    parts.push(run);
    Composition::new(parts).expect("positive parts")
}

/// Applies `D` termwise, swapping the free and dual bases.
pub fn dualize(x: &F2Sum) -> Option<F2Sum> {
    let target = match x.basis() {
        Basis::Free => Basis::Dual,
        Basis::Dual => Basis::Free,
        _ => return None,
    };
    Some(F2Sum::from_terms(target, x.iter().map(Composition::dual)))
}

/// `D(chi_free(S^I)) = chi_dual(D(S^I))` for every `I` up to `max_degree`.
pub fn check_duality_theorem(ctx: &Context, max_degree: u32) -> Result<Report> {
    let mut report = Report::new("duality", None, max_degree);
    for c in basis_elements(ctx, 0, max_degree)? {
        let lhs = dualize(&chi_free_monomial(&c)).expect("free basis");
        let rhs = chi_dual_coarsening(&c.dual());
        report.check(lhs == rhs, || {
            format!("I={c}: D(chi S^I)={lhs}, chi(D S^I)={rhs}")
        });
    }
    Ok(report)
}

/// Matrix of `chi - 1` on one graded piece.
pub fn chi_minus_one(ctx: &Context, side: Side, degree: u32) -> Result<GradedMatrix> {
    let chi = GradedMatrix::build(side.basis(), degree, ctx.cap(), |c| match side {
        Side::Free => chi_free_monomial(c),
        Side::Dual => chi_dual_coarsening(c),
    })?;
    let shifted = chi.matrix().add(&GF2Matrix::identity(chi.index().len()));
    Ok(chi.with_matrix(side.basis(), shifted))
}

/// A basis of `ker(chi - 1)` in one degree.
pub fn invariants_basis(ctx: &Context, side: Side, degree: u32) -> Result<Vec<F2Sum>> {
    Ok(chi_minus_one(ctx, side, degree)?.kernel_basis())
}

/// The invariant subspaces on both sides have equal dimension and `D` carries
/// free invariants to dual invariants.
pub fn check_invariant_duality(ctx: &Context, degree: u32) -> Result<Report> {
    let mut report = Report::new("invariants", None, degree);
    let free_m = chi_minus_one(ctx, Side::Free, degree)?;
    let dual_m = chi_minus_one(ctx, Side::Dual, degree)?;
    let free_inv = free_m.kernel_basis();
    let dual_inv = dual_m.kernel_basis();
    report.check(free_inv.len() == dual_inv.len(), || {
        format!(
            "degree {degree}: dim free invariants {} != dim dual invariants {}",
            free_inv.len(),
            dual_inv.len()
        )
    });
    let columns: Vec<_> = dual_inv
        .iter()
        .map(|v| dual_m.to_vector(v).expect("same degree"))
        .collect();
    let span = GF2Matrix::from_columns(dual_m.index().len(), &columns);
    for f in &free_inv {
        let image = dualize(f).expect("free basis");
        let v = dual_m.to_vector(&image).expect("D preserves degree");
        report.check(span.solve(&v).is_some(), || {
            format!("D({f}) = {image} is not a dual invariant")
        });
    }
    Ok(report)
}

/// The matrix of `chi_dual - 1` is the transpose of that of `chi_free - 1`.
pub fn check_transpose(ctx: &Context, degree: u32) -> Result<Report> {
    let mut report = Report::new("transpose", None, degree);
    let free_m = chi_minus_one(ctx, Side::Free, degree)?;
    let dual_m = chi_minus_one(ctx, Side::Dual, degree)?;
    report.check(free_m.matrix().transpose() == *dual_m.matrix(), || {
        format!("degree {degree}: chi_dual - 1 is not the transpose of chi_free - 1")
    });
    Ok(report)
}

type Triple = (Composition, Composition, Composition);

/// Coassociativity, counit laws and `Delta(xy) = Delta(x) Delta(y)`.
pub fn check_bialgebra(ctx: &Context, side: Side, max_degree: u32) -> Result<Report> {
    let mut report = Report::new("bialgebra", Some(side), max_degree);
    let coproduct = |c: &Composition| match side {
        Side::Free => coproduct_free_monomial(c),
        Side::Dual => coproduct_dual(c),
    };
    let product = |a: &Composition, b: &Composition| -> Vec<Composition> {
        match side {
            Side::Free => vec![a.concat(b)],
            Side::Dual => ctx.shuffle_terms(a, b).to_vec(),
        }
    };
    let elements = basis_elements(ctx, 0, max_degree)?;
    for c in &elements {
        let delta = coproduct(c);
        let mut left: HashSet<Triple> = HashSet::new();
        let mut right: HashSet<Triple> = HashSet::new();
        for (a, b) in delta.terms() {
            for (a1, a2) in coproduct(a).terms() {
                toggle(&mut left, (a1.clone(), a2.clone(), b.clone()));
            }
            for (b1, b2) in coproduct(b).terms() {
                toggle(&mut right, (a.clone(), b1.clone(), b2.clone()));
            }
        }
        report.check(left == right, || format!("coassociativity fails at {c}"));
        let counit_left: Vec<_> = delta.terms().iter().filter(|(a, _)| a.is_empty()).collect();
        let counit_right: Vec<_> = delta.terms().iter().filter(|(_, b)| b.is_empty()).collect();
        report.check(
            counit_left.len() == 1
                && counit_left[0].1 == *c
                && counit_right.len() == 1
                && counit_right[0].0 == *c,
            || format!("counit law fails at {c}"),
        );
    }
    for x in &elements {
        for y in elements
            .iter()
            .filter(|y| x.degree() + y.degree() <= max_degree)
        {
            let mut lhs: HashSet<(Composition, Composition)> = HashSet::new();
            for z in product(x, y) {
                for t in coproduct(&z).terms() {
                    toggle(&mut lhs, t.clone());
                }
            }
            let mut rhs: HashSet<(Composition, Composition)> = HashSet::new();
            let dy = coproduct(y);
            for (x1, x2) in coproduct(x).terms() {
                for (y1, y2) in dy.terms() {
                    for l in product(x1, y1) {
                        for r in product(x2, y2) {
                            toggle(&mut rhs, (l.clone(), r));
                        }
                    }
                }
            }
            report.check(lhs == rhs, || {
                format!("Delta(xy) != Delta(x)Delta(y) for x={x} y={y}")
            });
        }
    }
    Ok(report)
}

/// Commutativity of the overlapping shuffle, evaluated without the memo (which
/// is keyed on unordered pairs), for all pairs of total degree up to
/// `max_degree`.
pub fn check_shuffle_commutativity(ctx: &Context, max_degree: u32) -> Result<Report> {
    let mut report = Report::new("shuffle-commutativity", None, max_degree);
    let elements = basis_elements(ctx, 0, max_degree)?;
    let odd = |m: std::collections::BTreeMap<Composition, u64>| -> Vec<Composition> {
        m.into_iter()
            .filter(|(_, c)| c % 2 == 1)
            .map(|(k, _)| k)
            .collect()
    };
    for a in &elements {
        for b in elements
            .iter()
            .filter(|b| a.degree() + b.degree() <= max_degree && *b > a)
        {
            let ab = odd(overlapping_shuffle_counts(a, b));
            let ba = odd(overlapping_shuffle_counts(b, a));
            report.check(ab == ba, || format!("{a}.{b} != {b}.{a}"));
        }
    }
    Ok(report)
}

/// Route equivalence: the Adem expansion of `Sq^I` from direct rewriting
/// equals the one read off the dual tables.
pub fn check_adem_routes(ctx: &Context, max_degree: u32) -> Result<Report> {
    let mut report = Report::new("adem-routes", None, max_degree);
    for c in basis_elements(ctx, 0, max_degree)? {
        let direct = ctx.adem_reduce(&F2Sum::monomial(Basis::Free, c.clone()))?;
        let via_dual = ctx.adem_coefficients(&c)?;
        report.check(direct == via_dual, || {
            format!("Sq^{c}: rewriting gives {direct}, dual tables give {via_dual}")
        });
    }
    Ok(report)
}

/// Unitriangularity of both tables in every degree up to `max_degree`.
pub fn check_triangularity(ctx: &Context, max_degree: u32) -> Result<Report> {
    let mut report = Report::new("triangularity", None, max_degree);
    for n in 0..=max_degree {
        let table = ctx.degree_table(n)?;
        for j in table.admissibles() {
            let row = &table.xi_expansions()[&j.gamma()?];
            report.check(row.iter().next() == Some(j), || {
                format!("xi row of {j}: {row}")
            });
            let image = &table.pi_star_sq()[j];
            report.check(image.iter().next() == Some(j), || {
                format!("pi*(Sq_{j}) = {image}")
            });
        }
    }
    Ok(report)
}

/// `chi(xi_n)` computed in `F*` agrees with the composition-sum formula.
pub fn check_milnor_conjugation(ctx: &Context, max_n: u32) -> Result<Report> {
    let mut report = Report::new("milnor-conjugation", None, (1u32 << max_n) - 1);
    for n in 1..=max_n {
        let lhs = chi_dual_coarsening(&xi_image(n)?);
        let rhs = ctx.milnor_conjugation_rhs(n)?;
        report.check(lhs == rhs, || format!("n={n}: {lhs} vs {rhs}"));
    }
    Ok(report)
}

/// Coarsening and block-partition formulas for the dual antipode agree.
pub fn check_chi_formulas(ctx: &Context, max_degree: u32) -> Result<Report> {
    let mut report = Report::new("chi-formulas", None, max_degree);
    for c in basis_elements(ctx, 0, max_degree)? {
        let a = chi_dual_coarsening(&c);
        let b = ctx.chi_dual_partitions(&c);
        report.check(a == b, || format!("I={c}: {a} vs {b}"));
    }
    Ok(report)
}
