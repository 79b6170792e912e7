//! Arithmetic over `F_p` and over residue fields `F_phi = F_p[x]/(phi)`.

mod factor;
mod field;
mod poly;

pub use factor::{
    expand, factor, factor_mod_p, is_squarefree_poly, squarefree_decomposition, Factorization,
    DEFAULT_SEED,
};
pub use field::{FiniteField, PrimeField, ResidueField};
pub use poly::{FPhiPoly, FpPoly, Poly};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::Prime;
use crate::error::{Error, Result};
use crate::zpoly::ZPoly;

/// Coefficientwise reduction of an integer polynomial.
pub fn reduce_mod_p(f: &ZPoly, p: Prime) -> FpPoly {
    let field = PrimeField::new(p.get());
    let modulus = p.to_bigint();
    let cs = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&modulus).to_u64().expect("reduced below p"))
        .collect();
    Poly::new(field, cs)
}

/// Lift with coefficients in `0..p-1`.
pub fn lift(g: &FpPoly) -> ZPoly {
    ZPoly::new(g.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

/// An element of `F_phi` together with its field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPhiElement {
    pub field: ResidueField,
    pub value: FpPoly,
}

impl FPhiElement {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn inverse(&self) -> Option<FPhiElement> {
        self.field.inv(&self.value).map(|value| FPhiElement {
            field: self.field.clone(),
            value,
        })
    }
}

impl fmt::Display for FPhiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(&self.value))
    }
}

/// The class of `a(beta) / p^u` in `F_phi`: divide every coefficient of `a`
/// by `p^u` and reduce modulo `(p, phi)`.
pub fn residue_class(a: &ZPoly, field: &ResidueField, p: Prime, u: u64) -> Result<FPhiElement> {
    let pu = p.pow(u);
    let mut cs = Vec::with_capacity(a.coeffs().len());
    for c in a.coeffs() {
        let (q, r) = c.div_rem(&pu);
        if !r.is_zero() {
            return Err(Error::NotDivisible(p.get(), u));
        }
        cs.push(q);
    }
    let reduced = reduce_mod_p(&ZPoly::new(cs), p);
    Ok(FPhiElement {
        field: field.clone(),
        value: field.reduce(&reduced),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn phi_field(phi: &ZPoly, q: Prime) -> ResidueField {
        ResidueField::new(reduce_mod_p(phi, q))
    }

    #[test]
    fn reductions() {
        let f = ZPoly::from_i64s(&[-17, 0, 0, 0, 1]);
        assert_eq!(reduce_mod_p(&f, p(2)).to_string(), "x^4 + 1");
        let mut nine = vec![0i64; 10];
        nine[0] = -5;
        nine[9] = 1;
        assert_eq!(reduce_mod_p(&ZPoly::from_i64s(&nine), p(3)).to_string(), "x^9 + 1");
        assert_eq!(reduce_mod_p(&ZPoly::from_i64s(&[-4, 0, 1]), p(2)).to_string(), "x^2");
    }

    #[test]
    fn residue_classes() {
        let field = phi_field(&ZPoly::from_i64s(&[-3, 1]), p(2));
        let c = residue_class(&ZPoly::from_i64s(&[12]), &field, p(2), 2).unwrap();
        assert_eq!(c.value, Poly::constant(PrimeField::new(2), 1));

        let field = phi_field(&ZPoly::from_i64s(&[-161, 1]), p(3));
        let c = residue_class(&ZPoly::from_i64s(&[84]), &field, p(3), 1).unwrap();
        assert_eq!(c.value, Poly::constant(PrimeField::new(3), 1));

        let field = phi_field(&ZPoly::from_i64s(&[1, 1, 1]), p(2));
        let c = residue_class(&ZPoly::from_i64s(&[0, 1]), &field, p(2), 0).unwrap();
        assert_eq!(c.value, Poly::x(PrimeField::new(2)));
        assert_eq!(c.to_string(), "(b)");
        let inv = c.inverse().unwrap();
        assert!(field.is_one(&field.mul(&c.value, &inv.value)));

        assert!(matches!(
            residue_class(&ZPoly::from_i64s(&[6]), &field, p(2), 2),
            Err(Error::NotDivisible(2, 2))
        ));
    }
}
