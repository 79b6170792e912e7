//! Integer polynomials, phi-adic expansions and the pure polynomial `x^(p^r) - m`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, Prime, Valuation};
use crate::error::{Error, Result};

/// Largest supported degree `p^r` for pure fields.
pub const MAX_PURE_DEGREE: u64 = 1 << 16;

/// Polynomial with integer coefficients, low to high, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        ZPoly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly::default()
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::new(vec![c])
    }

    /// `x - c`
    pub fn x_minus(c: &BigInt) -> Self {
        ZPoly::new(vec![-c, BigInt::one()])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut cs = vec![BigInt::zero(); k];
        cs.push(c);
        ZPoly::new(cs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> ZPoly {
        (0..k).fold(ZPoly::constant(BigInt::one()), |acc, _| acc.mul(self))
    }

    /// Division by a monic polynomial; exact over the integers.
    pub fn divrem_monic(&self, divisor: &ZPoly) -> Result<(ZPoly, ZPoly)> {
        if !divisor.is_monic() {
            return Err(Error::NotMonic(divisor.to_string()));
        }
        let dl = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dl {
            return Ok((ZPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dl];
        for k in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[k + dl]);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs[..dl].iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dl);
        Ok((ZPoly::new(quot), ZPoly::new(rem)))
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Gauss valuation: the minimum valuation over the coefficients.
    pub fn valuation(&self, p: Prime) -> Valuation {
        self.coeffs
            .iter()
            .map(|c| arith::valuation(p, c))
            .min()
            .unwrap_or(Valuation::Infinite)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one() && i > 0;
            if !unit {
                write!(f, "{mag}")?;
                if i > 0 {
                    f.write_str("*")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The triple `(p, r, m)` of a pure field `Q(alpha)`, `alpha^(p^r) = m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PureFieldParams {
    p: Prime,
    r: u32,
    m: BigInt,
    degree: u64,
}

impl PureFieldParams {
    /// Validates `p` prime, `r >= 1`, `m` squarefree with `|m| >= 2`.
    pub fn new(p: &BigInt, r: u32, m: BigInt) -> Result<Self> {
        let p = Prime::from_bigint(p)?;
        Self::with_prime(p, r, m)
    }

    pub fn with_prime(p: Prime, r: u32, m: BigInt) -> Result<Self> {
        if r == 0 {
            return Err(Error::ZeroExponent);
        }
        let degree = match arith::checked_prime_power(p, r) {
            Some(n) if n <= MAX_PURE_DEGREE => n,
            _ => {
                return Err(Error::DegreeTooLarge(format!("{p}^{r}"), MAX_PURE_DEGREE));
            }
        };
        if m.abs() < BigInt::from(2) {
            return Err(Error::MTooSmall(m));
        }
        if !arith::is_squarefree(&m)? {
            return Err(Error::NotSquarefree(m));
        }
        Ok(PureFieldParams { p, r, m, degree })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    /// `p^r`, the degree of the field.
    pub fn degree(&self) -> u64 {
        self.degree
    }
}

impl fmt::Display for PureFieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^({}^{}) - ({})", self.p, self.r, self.m)
    }
}

/// `x^(p^r) - m`.
pub fn pure_polynomial(params: &PureFieldParams) -> ZPoly {
    let n = params.degree() as usize;
    let mut cs = vec![BigInt::zero(); n + 1];
    cs[0] = -params.m().clone();
    cs[n] = BigInt::one();
    ZPoly::new(cs)
}

/// `f = sum_i a_i(x) phi(x)^i` with `deg a_i < deg phi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiExpansion {
    phi: ZPoly,
    coeffs: Vec<ZPoly>,
}

impl PhiExpansion {
    pub fn phi(&self) -> &ZPoly {
        &self.phi
    }

    /// `a_0, ..., a_l`; individual entries may be zero.
    pub fn coeffs(&self) -> &[ZPoly] {
        &self.coeffs
    }

    /// Sum of `a_i * phi^i`, evaluated by Horner in `phi`.
    pub fn reconstruct(&self) -> ZPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(ZPoly::zero(), |acc, a| acc.mul(&self.phi).add(a))
    }
}

fn check_base(phi: &ZPoly) -> Result<()> {
    if !phi.is_monic() {
        return Err(Error::NotMonic(phi.to_string()));
    }
    if phi.degree() == Some(0) {
        return Err(Error::Invalid("expansion base must have degree >= 1".into()));
    }
    Ok(())
}

/// Expansion by the remainder tower: divide by `phi` repeatedly and collect
/// the remainders.
pub fn phi_expansion_by_division(f: &ZPoly, phi: &ZPoly) -> Result<PhiExpansion> {
    check_base(phi)?;
    let mut coeffs = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.divrem_monic(phi)?;
        coeffs.push(r);
        rest = q;
    }
    Ok(PhiExpansion { phi: phi.clone(), coeffs })
}

/// Taylor shift at `c`: coefficients of `f` in powers of `x - c`.
fn taylor_shift(f: &ZPoly, c: &BigInt) -> Vec<ZPoly> {
    let mut work: Vec<BigInt> = f.coeffs().to_vec();
    let n = work.len();
    let mut out = Vec::with_capacity(n);
    // synthetic division by (x - c), n times; the final remainder of each pass
    // lands in the lowest slot of what is left
    for start in 0..n {
        for k in (start..n - 1).rev() {
            let carry = &work[k + 1] * c;
            work[k] += carry;
        }
        out.push(ZPoly::constant(work[start].clone()));
    }
    out
}

/// The phi-adic expansion of `f`. Linear bases use a Taylor shift; the result
/// is identical to [`phi_expansion_by_division`].
pub fn phi_expansion(f: &ZPoly, phi: &ZPoly) -> Result<PhiExpansion> {
    check_base(phi)?;
    if phi.degree() == Some(1) {
        let c = -phi.coeff(0);
        return Ok(PhiExpansion {
            phi: phi.clone(),
            coeffs: taylor_shift(f, &c),
        });
    }
    phi_expansion_by_division(f, phi)
}

/// Expansion of `x^n - m` in powers of `x - c`, read off the binomial
/// theorem: `a_0 = c^n - m`, `a_j = binomial(n, j) c^(n-j)`.
pub fn pure_expansion(params: &PureFieldParams, c: &BigInt) -> PhiExpansion {
    let n = params.degree() as usize;
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(BigInt::one());
    for k in 1..=n {
        let next = &powers[k - 1] * c;
        powers.push(next);
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(ZPoly::constant(&powers[n] - params.m()));
    let mut binom = BigInt::one();
    for j in 1..=n {
        binom = binom * BigInt::from(n - j + 1) / BigInt::from(j);
        coeffs.push(ZPoly::constant(&binom * &powers[n - j]));
    }
    PhiExpansion {
        phi: ZPoly::x_minus(c),
        coeffs,
    }
}

/// `v_q(disc(x^(p^r) - m))`; the discriminant is `+-p^(r p^r) m^(p^r - 1)`.
pub fn discriminant_valuation(params: &PureFieldParams, q: Prime) -> u64 {
    let n = params.degree();
    let from_p = if q == params.p() { params.r() as u64 * n } else { 0 };
    let vm = arith::valuation(q, params.m())
        .finite()
        .expect("m is nonzero");
    from_p + (n - 1) * vm
}

/// Primes that can divide the index of `Z[alpha]`: `p` and the primes of `m`.
pub fn candidate_index_primes(params: &PureFieldParams) -> Result<Vec<Prime>> {
    let mut out = arith::prime_divisors(params.m())?;
    out.push(params.p());
    out.sort();
    out.dedup();
    Ok(out)
}

/// `m^e - m`.
pub fn pow_minus_self(m: &BigInt, e: u64) -> BigInt {
    num_traits::pow(m.clone(), e as usize) - m
}
