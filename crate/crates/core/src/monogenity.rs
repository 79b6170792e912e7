//! Monogenity of pure fields `Q(alpha)`, `alpha^(p^r) = m`.
//!
//! [`classify`] walks a fixed decision tree: the valuation `v_p(m^p - m)`
//! and a few congruence conditions settle most fields outright. Everything
//! else falls back on the splitting of `p` read off the Newton polygon
//! engine: more primes of residue degree `f` above `p` than there are monic
//! irreducibles of degree `f` over `F_p` makes `p` a common index divisor.
//! Each verdict comes with a certificate that can be recomputed from
//! `(p, r, m)` alone.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, count_monic_irreducibles, valuation, Prime};
use crate::error::{Error, Result};
use crate::fp::{factor, lift, reduce_mod_p, DEFAULT_SEED};
use crate::ore::{
    analyze_expansion, analyze_prime_seeded, index_lower_bound, partial_splitting, IndexBound,
    PartialSplitting, PhiReport, Splitting, SplittingShape,
};
use crate::zpoly::{
    candidate_index_primes, discriminant_valuation, pow_minus_self, pure_expansion,
    pure_polynomial, PureFieldParams, ZPoly,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    /// `Z[alpha]` is the full ring of integers.
    MonogenicZAlpha,
    NotMonogenic,
    Undetermined,
}

impl Status {
    pub fn code(self) -> &'static str {
        match self {
            Status::MonogenicZAlpha => "MONOGENIC_ZALPHA",
            Status::NotMonogenic => "NOT_MONOGENIC",
            Status::Undetermined => "UNDETERMINED",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        [Status::MonogenicZAlpha, Status::NotMonogenic, Status::Undetermined]
            .into_iter()
            .find(|v| v.code() == s)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Which rule produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// `v_p(m^p - m) = 1`, so `Z[alpha]` is maximal.
    UnitValuation,
    /// Odd `p`, `p` not dividing `m`, `v_p(m^(p-1) - 1) > p` and `r >= p`.
    OddPrimeSplitting,
    /// `p = 2` with `m = 1 mod 16` (`r = 2`) or `m = 1 mod 32` (`r >= 3`).
    TwoAdicCongruence,
    /// The odd-prime rule specialized to `p = 3`: `m = +-1 mod 81`, `r >= 3`.
    ThreeAdicCongruence,
    /// Regular splitting shape with more degree-`f` primes than degree-`f` irreducibles.
    CommonIndexDivisor,
    None,
}

impl Provenance {
    pub fn code(self) -> &'static str {
        match self {
            Provenance::UnitValuation => "THEOREM_PIB",
            Provenance::OddPrimeSplitting => "THEOREM_NPIBODD",
            Provenance::TwoAdicCongruence => "THEOREM_MONO2",
            Provenance::ThreeAdicCongruence => "COROLLARY_MONO3",
            Provenance::CommonIndexDivisor => "ENGINE_COMINDEX",
            Provenance::None => "NONE",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        [
            Provenance::UnitValuation,
            Provenance::OddPrimeSplitting,
            Provenance::TwoAdicCongruence,
            Provenance::ThreeAdicCongruence,
            Provenance::CommonIndexDivisor,
            Provenance::None,
        ]
        .into_iter()
        .find(|v| v.code() == s)
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Engine output at one candidate index prime.
#[derive(Debug, Clone)]
pub struct PrimeDigest {
    pub prime: Prime,
    pub reports: Vec<PhiReport>,
    pub index: IndexBound,
    pub splitting: PartialSplitting,
    pub discriminant_valuation: u64,
}

impl PrimeDigest {
    pub fn is_regular(&self) -> bool {
        self.splitting.is_complete()
    }

    /// The full shape, or `None` when some residual polynomial is not squarefree.
    pub fn shape(&self) -> Option<&SplittingShape> {
        self.is_regular().then_some(&self.splitting.known)
    }
}

/// `P_f` (primes above `p` of residue degree `f`) against `N_f`.
///
/// When the splitting is not regular `primes` only counts the primes that
/// could be resolved, which is a lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueDegreeCount {
    pub f: u64,
    pub primes: u64,
    pub exact: bool,
    pub irreducibles: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub prime: Prime,
    pub f: u64,
    pub primes: u64,
    pub irreducibles: BigInt,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    /// `v_p(m^p - m)`.
    pub nu: u64,
    /// `v_p(m^(p-1) - 1)` when `p` does not divide `m`.
    pub nu_unit: Option<u64>,
    pub m_negative: bool,
    /// One digest per candidate index prime, ascending.
    pub primes: Vec<PrimeDigest>,
    /// Counts at `p` for `f = 1..=max f` seen.
    pub residue_degree_counts: Vec<ResidueDegreeCount>,
    pub witness: Option<Witness>,
}

impl Certificate {
    pub fn digest(&self, q: Prime) -> Option<&PrimeDigest> {
        self.primes.iter().find(|d| d.prime == q)
    }
}

#[derive(Debug, Clone)]
pub struct MonogenityVerdict {
    pub params: PureFieldParams,
    pub status: Status,
    pub provenance: Provenance,
    pub certificate: Certificate,
}

fn finite(v: arith::Valuation, what: &str) -> Result<u64> {
    v.finite()
        .ok_or_else(|| Error::Invariant(format!("{what} vanished")))
}

/// Reports for `x^(p^r) - m` at `q`, using the expansion bases of the
/// classical argument: `x` when `q | m`, `x - m` when `q = p`.
pub fn pure_reports(params: &PureFieldParams, q: Prime, seed: u64) -> Result<Vec<PhiReport>> {
    let n = params.degree() as u32;
    let m = params.m();
    if m.is_multiple_of(&q.to_bigint()) {
        // f = x^n mod q
        return Ok(vec![analyze_expansion(
            &pure_expansion(params, &BigInt::zero()),
            q,
            n,
            seed,
        )?]);
    }
    if q == params.p() {
        // f = (x - m)^(p^r) mod p
        return Ok(vec![analyze_expansion(&pure_expansion(params, m), q, n, seed)?]);
    }
    let f = pure_polynomial(params);
    analyze_prime_seeded(&f, q, seed)
}

fn digest(params: &PureFieldParams, q: Prime, seed: u64) -> Result<PrimeDigest> {
    let reports = pure_reports(params, q, seed)?;
    let index = index_lower_bound(&reports);
    let splitting = partial_splitting(&reports);
    if splitting.is_complete() {
        crate::ore::splitting_shape(&reports)?;
    }
    Ok(PrimeDigest {
        prime: q,
        index,
        splitting,
        discriminant_valuation: discriminant_valuation(params, q),
        reports,
    })
}

fn residue_degree_counts(p: Prime, splitting: &PartialSplitting) -> Result<Vec<ResidueDegreeCount>> {
    let max_f = splitting.known.max_residue_degree().max(1);
    (1..=max_f)
        .map(|f| {
            let primes = splitting.known.primes().iter().filter(|s| s.f == f).count() as u64;
            Ok(ResidueDegreeCount {
                f,
                primes,
                exact: splitting.is_complete(),
                irreducibles: count_monic_irreducibles(p, f as u32)?,
            })
        })
        .collect()
}

fn first_witness(p: Prime, counts: &[ResidueDegreeCount]) -> Option<Witness> {
    counts
        .iter()
        .find(|c| BigInt::from(c.primes) > c.irreducibles)
        .map(|c| Witness {
            prime: p,
            f: c.f,
            primes: c.primes,
            irreducibles: c.irreducibles.clone(),
        })
}

/// Decides monogenity of `Q(alpha)`, `alpha^(p^r) = m`.
pub fn classify(params: &PureFieldParams) -> Result<MonogenityVerdict> {
    classify_seeded(params, DEFAULT_SEED)
}

pub fn classify_seeded(params: &PureFieldParams, seed: u64) -> Result<MonogenityVerdict> {
    let p = params.p();
    let r = params.r();
    let m = params.m();
    let pb = p.to_bigint();

    let nu = finite(valuation(p, &pow_minus_self(m, p.get())), "m^p - m")?;
    let p_divides_m = m.is_multiple_of(&pb);
    let nu_unit = if p_divides_m {
        None
    } else {
        let unit = num_traits::pow(m.clone(), (p.get() - 1) as usize) - BigInt::one();
        Some(finite(valuation(p, &unit), "m^(p-1) - 1")?)
    };

    let primes = candidate_index_primes(params)?
        .into_iter()
        .map(|q| digest(params, q, seed))
        .collect::<Result<Vec<_>>>()?;
    let at_p = primes
        .iter()
        .find(|d| d.prime == p)
        .ok_or_else(|| Error::Invariant("p missing from candidate primes".into()))?;
    let counts = residue_degree_counts(p, &at_p.splitting)?;
    let witness = first_witness(p, &counts);
    let regular_at_p = at_p.is_regular();

    let two_adic = if p.get() == 2 && !p_divides_m {
        Some(finite(valuation(p, &(m - BigInt::one())), "m - 1")?)
    } else {
        None
    };

    let (status, provenance) = if nu == 1 {
        if let Some(bad) = primes.iter().find(|d| d.index.value != 0 || !d.index.exact) {
            return Err(Error::Invariant(format!(
                "v_p(m^p - m) = 1 but the index bound at {} is {} (exact: {})",
                bad.prime, bad.index.value, bad.index.exact
            )));
        }
        (Status::MonogenicZAlpha, Provenance::UnitValuation)
    } else if p.get() != 2 && nu_unit.is_some_and(|v| v > p.get()) && r as u64 >= p.get() {
        let prov = if p.get() == 3 {
            Provenance::ThreeAdicCongruence
        } else {
            Provenance::OddPrimeSplitting
        };
        (Status::NotMonogenic, prov)
    } else if (r == 2 && two_adic.is_some_and(|v| v >= 4)) || (r >= 3 && two_adic.is_some_and(|v| v >= 5)) {
        (Status::NotMonogenic, Provenance::TwoAdicCongruence)
    } else if regular_at_p && witness.is_some() {
        (Status::NotMonogenic, Provenance::CommonIndexDivisor)
    } else {
        (Status::Undetermined, Provenance::None)
    };

    if status == Status::NotMonogenic && witness.is_none() {
        return Err(Error::Invariant(format!(
            "{provenance} applies to {params} but the engine found no P_f > N_f at {p}"
        )));
    }

    Ok(MonogenityVerdict {
        params: params.clone(),
        status,
        provenance,
        certificate: Certificate {
            nu,
            nu_unit,
            m_negative: m.is_negative(),
            primes,
            residue_degree_counts: counts,
            witness: if status == Status::NotMonogenic { witness } else { None },
        },
    })
}

/// Dedekind's criterion: whether `q` divides the index of `Z[alpha]`,
/// `alpha` a root of the monic `f`.
pub fn dedekind_divides_index(f: &ZPoly, q: Prime) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::NotMonic(f.to_string()));
    }
    let f_bar = reduce_mod_p(f, q);
    let factors = factor(&f_bar, DEFAULT_SEED)?;
    let one = ZPoly::constant(BigInt::one());
    let mut g = one.clone();
    let mut h = one;
    for (t, e) in &factors {
        let t = lift(t);
        g = g.mul(&t);
        h = h.mul(&t.pow(e - 1));
    }
    let diff = g.mul(&h).sub(f);
    let qb = q.to_bigint();
    let mut t_coeffs = Vec::with_capacity(diff.coeffs().len());
    for c in diff.coeffs() {
        let (quo, rem) = c.div_rem(&qb);
        if !rem.is_zero() {
            return Err(Error::Invariant(format!("g*h - f not divisible by {q}")));
        }
        t_coeffs.push(quo);
    }
    let t_bar = reduce_mod_p(&ZPoly::new(t_coeffs), q);
    let gcd = t_bar
        .gcd(&reduce_mod_p(&g, q))
        .gcd(&reduce_mod_p(&h, q));
    Ok(!gcd.is_constant())
}

/// Outcome of the common-index-divisor test at one prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommonIndexDivisor {
    Yes,
    /// Regular shape without `P_f > N_f`. Does not certify monogenity.
    NoEvidence,
    UnknownIrregular,
}

pub fn is_common_index_divisor(params: &PureFieldParams, q: Prime) -> Result<CommonIndexDivisor> {
    let reports = pure_reports(params, q, DEFAULT_SEED)?;
    let shape = match crate::ore::splitting_shape(&reports)? {
        Splitting::NotRegular => return Ok(CommonIndexDivisor::UnknownIrregular),
        Splitting::Regular(s) => s,
    };
    for f in 1..=shape.max_residue_degree() {
        let pf = crate::ore::count_primes_with_residue_degree(&shape, f);
        if BigInt::from(pf) > count_monic_irreducibles(q, f as u32)? {
            return Ok(CommonIndexDivisor::Yes);
        }
    }
    Ok(CommonIndexDivisor::NoEvidence)
}
