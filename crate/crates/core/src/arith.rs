//! Exact integer arithmetic: primes, p-adic valuations, squarefreeness and
//! the count of monic irreducible polynomials over a prime field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Witness bases that make Miller-Rabin deterministic for every 64-bit input.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// A rational prime known to fit in a machine word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(BigInt::from(p)))
        }
    }

    pub fn from_bigint(p: &BigInt) -> Result<Self> {
        match p.to_u64() {
            Some(v) => Prime::new(v),
            None if p.sign() == Sign::Minus => Err(Error::NotPrime(p.clone())),
            None => Err(Error::PrimeTooLarge(p.clone())),
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// `p^k` as an exact integer.
    pub fn pow(self, k: u64) -> BigInt {
        BigInt::from(self.0).pow(k)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A p-adic valuation: a natural number, or infinity for the valuation of 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Largest `k` with `p^k | n`; infinite for `n = 0`. The sign of `n` is ignored.
pub fn valuation(p: Prime, n: &BigInt) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let mag = n.magnitude();
    if p.0 == 2 {
        return Valuation::Finite(mag.trailing_zeros().unwrap_or(0));
    }
    let mut k = 0;
    let mut rest = mag.clone();
    loop {
        let (q, r) = rest.div_rem(&BigUint::from(p.0));
        if !r.is_zero() {
            return Valuation::Finite(k);
        }
        rest = q;
        k += 1;
    }
}

/// Valuation of a machine integer; `n` must be nonzero.
pub fn valuation_u64(p: Prime, mut n: u64) -> u64 {
    debug_assert!(n != 0);
    let mut k = 0;
    while n.is_multiple_of(p.0) {
        n /= p.0;
        k += 1;
    }
    k
}

/// `p^r` when it fits in a `u64`.
pub fn checked_prime_power(p: Prime, r: u32) -> Option<u64> {
    p.0.checked_pow(r)
}

/// Valuation of `binomial(p^r, j)` for `1 <= j <= p^r - 1`, which is `r - v_p(j)`.
pub fn binomial_valuation(p: Prime, r: u32, j: u64) -> Result<u64> {
    let in_range = match checked_prime_power(p, r) {
        Some(n) => j >= 1 && j < n,
        None => j >= 1,
    };
    if r == 0 || !in_range {
        return Err(Error::OutOfRange {
            what: "j",
            detail: format!("need 1 <= j <= {p}^{r} - 1, got {j}"),
        });
    }
    Ok(r as u64 - valuation_u64(p, j))
}

/// Prime factorization of `|m|` by trial division, primes ascending.
pub fn factor_abs(m: &BigInt) -> Result<Vec<(Prime, u32)>> {
    if m.is_zero() {
        return Err(Error::Invalid("cannot factor 0".into()));
    }
    let mut n = m.magnitude().clone();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    loop {
        let dd = BigUint::from(d) * d;
        if dd > n {
            break;
        }
        let mut k = 0;
        loop {
            let (q, r) = n.div_rem(&BigUint::from(d));
            if !r.is_zero() {
                break;
            }
            n = q;
            k += 1;
        }
        if k > 0 {
            out.push((Prime(d), k));
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if !n.is_one() {
        let last = n
            .to_u64()
            .ok_or_else(|| Error::PrimeTooLarge(BigInt::from(n.clone())))?;
        out.push((Prime(last), 1));
    }
    Ok(out)
}

pub fn prime_divisors(m: &BigInt) -> Result<Vec<Prime>> {
    Ok(factor_abs(m)?.into_iter().map(|(p, _)| p).collect())
}

/// True iff no prime square divides `|m|`.
pub fn is_squarefree(m: &BigInt) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::Invalid("squarefreeness of 0 is undefined".into()));
    }
    Ok(factor_abs(m)?.iter().all(|&(_, k)| k == 1))
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducible polynomials of degree `f` over `F_p`
/// (necklace count `(1/f) * sum_{d | f} mu(d) p^(f/d)`).
pub fn count_monic_irreducibles(p: Prime, f: u32) -> Result<BigInt> {
    if f == 0 {
        return Err(Error::OutOfRange {
            what: "residue degree",
            detail: "f must be at least 1".into(),
        });
    }
    let base = p.to_bigint();
    let mut total = BigInt::zero();
    for d in (1..=f).filter(|d| f.is_multiple_of(*d)) {
        let mu = mobius(d as u64);
        if mu != 0 {
            total += BigInt::from(mu) * Pow::pow(&base, f / d);
        }
    }
    Ok(total / f)
}
