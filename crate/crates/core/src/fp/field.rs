use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use super::poly::{FpPoly, Poly};

/// A finite field of order `q = p^k` together with its element arithmetic.
///
/// Elements are plain values; the field value carries whatever context
/// (modulus, defining polynomial) the arithmetic needs.
pub trait FiniteField: Clone + fmt::Debug + PartialEq + Eq {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Ord;

    fn characteristic(&self) -> u64;
    /// `k` with `|F| = p^k`.
    fn extension_degree(&self) -> u32;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn elem_u64(&self, n: u64) -> Self::Elem;

    /// The element with index `i` in a fixed enumeration of the field, `i < q`.
    fn nth_elem(&self, i: u64) -> Self::Elem;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.characteristic()), self.extension_degree() as usize)
    }

    /// `q` as a machine integer when it fits.
    fn order_u64(&self) -> Option<u64> {
        self.characteristic().checked_pow(self.extension_degree())
    }

    fn pow(&self, a: &Self::Elem, exp: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The unique `b` with `b^p = a`, namely `a^(q/p)`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let exp = self.order() / BigUint::from(self.characteristic());
        if exp.is_one() {
            return a.clone();
        }
        self.pow(a, &exp)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// `Z/pZ` with canonical representatives `0..p-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be prime; callers obtain it from a validated `Prime`.
    pub fn new(p: u64) -> Self {
        debug_assert!(p >= 2);
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i128(&self, a: i128) -> u64 {
        a.rem_euclid(self.p as i128) as u64
    }
}

impl FiniteField for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn extension_degree(&self) -> u32 {
        1
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.reduce_i128(t0))
    }
    fn elem_u64(&self, n: u64) -> u64 {
        n % self.p
    }
    fn nth_elem(&self, i: u64) -> u64 {
        i % self.p
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// The residue field `F_p[x]/(phi)` for a monic irreducible `phi`.
///
/// Elements are represented by polynomials of degree below `deg phi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueField {
    modulus: Arc<FpPoly>,
}

impl ResidueField {
    /// `phi` must be monic and irreducible over its prime field; irreducibility
    /// is the caller's responsibility (factors returned by `factor` qualify).
    pub fn new(phi: FpPoly) -> Self {
        debug_assert!(phi.is_monic() && phi.degree().unwrap_or(0) >= 1);
        ResidueField { modulus: Arc::new(phi) }
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn base(&self) -> PrimeField {
        *self.modulus.field()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn reduce(&self, a: &FpPoly) -> FpPoly {
        a.rem(&self.modulus)
    }
}

impl FiniteField for ResidueField {
    type Elem = FpPoly;

    fn characteristic(&self) -> u64 {
        self.base().modulus()
    }
    fn extension_degree(&self) -> u32 {
        self.degree() as u32
    }
    fn zero(&self) -> FpPoly {
        Poly::zero(self.base())
    }
    fn one(&self) -> FpPoly {
        Poly::constant(self.base(), 1)
    }
    fn is_zero(&self, a: &FpPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.add(b)
    }
    fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.sub(b)
    }
    fn neg(&self, a: &FpPoly) -> FpPoly {
        a.neg()
    }
    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        a.mul(b).rem(&self.modulus)
    }
    fn inv(&self, a: &FpPoly) -> Option<FpPoly> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.ext_gcd(&self.modulus);
        // g is a nonzero constant because the modulus is irreducible
        if g.degree() != Some(0) {
            return None;
        }
        let c = self.base().inv(&g.coeffs()[0])?;
        Some(s.scale(&c).rem(&self.modulus))
    }
    fn elem_u64(&self, n: u64) -> FpPoly {
        Poly::constant(self.base(), n)
    }
    fn nth_elem(&self, mut i: u64) -> FpPoly {
        let p = self.characteristic();
        let mut digits = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            digits.push(i % p);
            i /= p;
        }
        Poly::new(self.base(), digits)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FpPoly {
        let base = self.base();
        let coeffs = (0..self.degree()).map(|_| base.random(rng)).collect();
        Poly::new(base, coeffs)
    }
    fn format_elem(&self, a: &FpPoly) -> String {
        if a.degree().is_none_or(|d| d == 0) {
            a.format_with("b")
        } else {
            format!("({})", a.format_with("b"))
        }
    }
}
