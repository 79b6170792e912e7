//! Ore's theorem at a prime: per-factor polygon reports, the index lower
//! bound, and the splitting shape of `p Z_K` when `f` is p-regular.

use std::fmt;

use crate::arith::Prime;
use crate::error::{Error, Result};
use crate::fp::{
    factor, lift, reduce_mod_p, Factorization, FiniteField, ResidueField, DEFAULT_SEED,
};
use crate::newton::{
    lower_convex_hull, phi_index, principal_part, residual_polynomial, valued_points,
    NewtonPolygon, ResidualPolynomial, Side, ValuedPoint,
};
use crate::zpoly::{phi_expansion, PhiExpansion, ZPoly};

/// One side of a principal polygon with its residual polynomial.
#[derive(Debug, Clone)]
pub struct SideReport {
    pub side: Side,
    pub residual: ResidualPolynomial,
    /// Factorization of the monic residual polynomial over `F_phi`.
    pub factors: Factorization<ResidueField>,
}

impl SideReport {
    pub fn is_regular(&self) -> bool {
        self.factors.iter().all(|(_, k)| *k == 1)
    }
}

/// The polygon pipeline for one irreducible factor `phi` of `f mod p`.
#[derive(Debug, Clone)]
pub struct PhiReport {
    pub phi: ZPoly,
    /// Multiplicity `l` of `phi` in `f mod p`.
    pub multiplicity: u32,
    /// Valued points of the phi-expansion; empty when `l = 1`.
    pub points: Vec<ValuedPoint>,
    pub principal: NewtonPolygon,
    pub sides: Vec<SideReport>,
    pub index: u64,
    pub regular: bool,
}

impl PhiReport {
    pub fn deg_phi(&self) -> u64 {
        self.phi.degree().unwrap_or(0) as u64
    }
}

/// Runs expansion, polygon and residual polynomials for a chosen lift `phi`
/// of an irreducible factor of multiplicity `multiplicity` in `f mod p`.
///
/// A factor with multiplicity 1 is unramified of residue degree `deg phi`
/// and gets an empty polygon.
pub fn analyze_factor(
    f: &ZPoly,
    p: Prime,
    phi: &ZPoly,
    multiplicity: u32,
    seed: u64,
) -> Result<PhiReport> {
    if multiplicity <= 1 {
        check_lift(phi, p)?;
        return Ok(unramified_report(phi, multiplicity));
    }
    analyze_expansion(&phi_expansion(f, phi)?, p, multiplicity, seed)
}

fn check_lift(phi: &ZPoly, p: Prime) -> Result<ResidueField> {
    let phi_bar = reduce_mod_p(phi, p);
    if !phi_bar.is_monic() || phi_bar.degree() != phi.degree() {
        return Err(Error::NotMonic(phi.to_string()));
    }
    Ok(ResidueField::new(phi_bar))
}

fn unramified_report(phi: &ZPoly, multiplicity: u32) -> PhiReport {
    PhiReport {
        phi: phi.clone(),
        multiplicity,
        points: Vec::new(),
        principal: NewtonPolygon::default(),
        sides: Vec::new(),
        index: 0,
        regular: true,
    }
}

/// [`analyze_factor`] for an expansion computed by the caller.
pub fn analyze_expansion(
    exp: &PhiExpansion,
    p: Prime,
    multiplicity: u32,
    seed: u64,
) -> Result<PhiReport> {
    let phi = exp.phi();
    let field = check_lift(phi, p)?;
    if multiplicity <= 1 {
        return Ok(unramified_report(phi, multiplicity));
    }
    let points = valued_points(exp, p);
    let principal = principal_part(&lower_convex_hull(&points)?);
    if principal.length() != multiplicity as u64 {
        return Err(Error::Invariant(format!(
            "principal {phi}-polygon has length {} but {phi} has multiplicity {multiplicity} mod {p}",
            principal.length()
        )));
    }
    let mut sides = Vec::new();
    for side in principal.sides() {
        let residual = residual_polynomial(exp, p, &field, &side)?;
        let factors = factor(&residual.poly().monic(), seed)?;
        sides.push(SideReport {
            side,
            residual,
            factors,
        });
    }
    let deg_phi = phi.degree().unwrap_or(0) as u64;
    let index = phi_index(&principal, deg_phi);
    let regular = sides.iter().all(SideReport::is_regular);
    Ok(PhiReport {
        phi: phi.clone(),
        multiplicity,
        points,
        principal,
        sides,
        index,
        regular,
    })
}

/// One report per irreducible factor of `f mod p`, lifted with coefficients
/// in `0..p-1`, in the canonical factor order.
pub fn analyze_prime(f: &ZPoly, p: Prime) -> Result<Vec<PhiReport>> {
    analyze_prime_seeded(f, p, DEFAULT_SEED)
}

pub fn analyze_prime_seeded(f: &ZPoly, p: Prime, seed: u64) -> Result<Vec<PhiReport>> {
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let f_bar = reduce_mod_p(f, p);
    let mut reports = Vec::new();
    let mut total = 0u64;
    for (g, l) in factor(&f_bar, seed)? {
        total += l as u64 * g.degree().unwrap_or(0) as u64;
        reports.push(analyze_factor(f, p, &lift(&g), l, seed)?);
    }
    if total != f.degree().unwrap_or(0) as u64 {
        return Err(Error::Invariant(format!(
            "factorization of {f} mod {p} accounts for degree {total}"
        )));
    }
    Ok(reports)
}

/// Sum of the phi-indices; exact when every report is regular.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexBound {
    pub value: u64,
    pub exact: bool,
}

pub fn index_lower_bound(reports: &[PhiReport]) -> IndexBound {
    IndexBound {
        value: reports.iter().map(|r| r.index).sum(),
        exact: reports.iter().all(|r| r.regular),
    }
}

/// A prime ideal above `p` by ramification index and residue degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeShape {
    pub e: u64,
    pub f: u64,
}

/// Multiset of `(e, f)`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SplittingShape {
    primes: Vec<PrimeShape>,
}

impl SplittingShape {
    pub fn new(mut primes: Vec<PrimeShape>) -> Self {
        primes.sort();
        SplittingShape { primes }
    }

    pub fn primes(&self) -> &[PrimeShape] {
        &self.primes
    }

    /// `sum e*f`.
    pub fn degree(&self) -> u64 {
        self.primes.iter().map(|s| s.e * s.f).sum()
    }

    pub fn max_residue_degree(&self) -> u64 {
        self.primes.iter().map(|s| s.f).max().unwrap_or(0)
    }
}

impl fmt::Display for SplittingShape {
    /// `e:f` pairs separated by commas, e.g. `1:1,2:1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(|s| format!("{}:{}", s.e, s.f)).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Splitting {
    Regular(SplittingShape),
    NotRegular,
}

/// Primes read off the regular parts of the reports, plus the number of
/// residual factors whose multiplicity exceeds 1 (each hides at least one
/// more prime of unknown shape).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialSplitting {
    pub known: SplittingShape,
    pub unresolved: usize,
}

impl PartialSplitting {
    pub fn is_complete(&self) -> bool {
        self.unresolved == 0
    }
}

pub fn partial_splitting(reports: &[PhiReport]) -> PartialSplitting {
    let mut primes = Vec::new();
    let mut unresolved = 0;
    for report in reports {
        let deg_phi = report.deg_phi();
        if report.multiplicity <= 1 {
            primes.push(PrimeShape { e: 1, f: deg_phi });
            continue;
        }
        for side in &report.sides {
            let e = side.side.e();
            for (psi, k) in &side.factors {
                if *k == 1 {
                    let deg_psi = psi.degree().unwrap_or(0) as u64;
                    primes.push(PrimeShape { e, f: deg_phi * deg_psi });
                } else {
                    unresolved += 1;
                }
            }
        }
    }
    PartialSplitting {
        known: SplittingShape::new(primes),
        unresolved,
    }
}

/// The splitting of `p Z_K` when every residual polynomial is squarefree.
/// Checks `sum e*f = sum l_i deg phi_i`.
pub fn splitting_shape(reports: &[PhiReport]) -> Result<Splitting> {
    let partial = partial_splitting(reports);
    if !partial.is_complete() {
        return Ok(Splitting::NotRegular);
    }
    let expected: u64 = reports
        .iter()
        .map(|r| r.multiplicity as u64 * r.deg_phi())
        .sum();
    let shape = partial.known;
    if shape.degree() != expected {
        return Err(Error::Invariant(format!(
            "splitting {shape} has sum e*f = {} but degree is {expected}",
            shape.degree()
        )));
    }
    Ok(Splitting::Regular(shape))
}

/// Number of primes in the shape with residue degree `f`.
pub fn count_primes_with_residue_degree(shape: &SplittingShape, f: u64) -> u64 {
    shape.primes().iter().filter(|s| s.f == f).count() as u64
}

/// Human-readable residual factorization, e.g. `(y + 1)^2*(y^2 + y + 1)`.
pub fn format_factorization<F: FiniteField>(factors: &Factorization<F>) -> String {
    factors
        .iter()
        .map(|(g, k)| {
            let s = format!("({})", g.format_with("y"));
            if *k == 1 {
                s
            } else {
                format!("{s}^{k}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}
