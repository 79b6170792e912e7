//! Factorization over finite fields: squarefree decomposition, then either
//! exhaustive trial division (small cases, fully deterministic) or
//! distinct-degree plus Cantor-Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::FiniteField;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Seed used when callers do not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Largest `q^deg` handled by exhaustive divisor search.
const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// Irreducible factors with multiplicities.
pub type Factorization<F> = Vec<(Poly<F>, u32)>;

/// True iff `gcd(g, g')` is a nonzero constant.
pub fn is_squarefree_poly<F: FiniteField>(g: &Poly<F>) -> Result<bool> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(g.gcd(&g.derivative()).is_constant())
}

/// Writes a monic `g` as a product of `s_i^i` with each `s_i` squarefree and
/// pairwise coprime. Only the nonconstant parts are returned.
pub fn squarefree_decomposition<F: FiniteField>(g: &Poly<F>) -> Vec<(Poly<F>, u32)> {
    let mut out = Vec::new();
    if g.is_constant() {
        return out;
    }
    let field = g.field().clone();
    let p = field.characteristic() as u32;
    let mut c = g.gcd(&g.derivative());
    let mut w = g.divrem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.divrem(&y).0;
        if !fac.is_constant() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.divrem(&w).0;
        i += 1;
    }
    if !c.is_constant() {
        // every exponent of c is a multiple of p
        let root_coeffs = c
            .coeffs()
            .iter()
            .step_by(p as usize)
            .map(|a| field.pth_root(a))
            .collect();
        let root = Poly::new(field.clone(), root_coeffs);
        for (fac, k) in squarefree_decomposition(&root.monic()) {
            out.push((fac, k * p));
        }
    }
    out
}

/// Monic polynomial of degree `d` whose lower coefficients are the base-`q`
/// digits of `index`.
fn enumerate_monic<F: FiniteField>(field: &F, q: u64, d: usize, mut index: u64) -> Poly<F> {
    let mut coeffs = Vec::with_capacity(d + 1);
    for _ in 0..d {
        coeffs.push(field.nth_elem(index % q));
        index /= q;
    }
    coeffs.push(field.one());
    Poly::new(field.clone(), coeffs)
}

/// Splits a squarefree monic `h` by trying every monic divisor in order of
/// increasing degree; whatever remains after degree `deg/2` is irreducible.
fn exhaustive_split<F: FiniteField>(h: &Poly<F>, q: u64) -> Vec<Poly<F>> {
    let field = h.field().clone();
    let mut rest = h.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while 2 * d <= rest.degree().unwrap_or(0) {
        let count = q.pow(d as u32);
        for idx in 0..count {
            let cand = enumerate_monic(&field, q, d, idx);
            let (quot, rem) = rest.divrem(&cand);
            if rem.is_zero() {
                out.push(cand);
                rest = quot;
                if 2 * d > rest.degree().unwrap_or(0) {
                    break;
                }
            }
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) >= 1 {
        out.push(rest);
    }
    out
}

/// Groups the irreducible factors of a squarefree monic `h` by degree.
fn distinct_degree<F: FiniteField>(h: &Poly<F>) -> Vec<(usize, Poly<F>)> {
    let field = h.field().clone();
    let q = field.order();
    let x = Poly::x(field);
    let mut rest = h.clone();
    let mut xq = x.clone();
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        xq = xq.pow_mod(&q, &rest);
        let g = rest.gcd(&xq.sub(&x));
        if !g.is_one() {
            rest = rest.divrem(&g).0;
            xq = xq.rem(&rest);
            out.push((i, g));
        }
        i += 1;
    }
    if let Some(d) = rest.degree().filter(|&d| d >= 1) {
        out.push((d, rest));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct degree-`d` irreducibles.
fn equal_degree<F: FiniteField>(h: &Poly<F>, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly<F>> {
    let n = h.degree().unwrap_or(0);
    if n <= d {
        return vec![h.clone()];
    }
    let field = h.field().clone();
    let p = field.characteristic();
    let q = field.order();
    let qd = num_traits::pow(q, d);
    loop {
        let coeffs = (0..n).map(|_| field.random(rng)).collect();
        let a = Poly::new(field.clone(), coeffs);
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // absolute trace to F_2: a + a^2 + ... + a^(2^(kd-1))
            let rounds = field.extension_degree() as usize * d;
            let mut t = a.rem(h);
            let mut acc = t.clone();
            for _ in 1..rounds {
                t = t.mul(&t).rem(h);
                acc = acc.add(&t);
            }
            acc
        } else {
            let exp = (&qd - BigUint::one()) / BigUint::from(2u32);
            a.pow_mod(&exp, h).sub(&Poly::from_elem(field.clone(), field.one()))
        };
        let g = h.gcd(&b);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h.divrem(&g).0, d, rng));
            return out;
        }
    }
}

fn split_squarefree<F: FiniteField>(h: &Poly<F>, rng: &mut ChaCha8Rng) -> Vec<Poly<F>> {
    let deg = h.degree().unwrap_or(0) as u32;
    let small = h
        .field()
        .order_u64()
        .and_then(|q| q.checked_pow(deg).map(|qd| (q, qd)));
    if let Some((q, qd)) = small {
        if qd <= EXHAUSTIVE_LIMIT {
            return exhaustive_split(h, q);
        }
    }
    distinct_degree(h)
        .into_iter()
        .flat_map(|(d, g)| equal_degree(&g, d, rng))
        .collect()
}

/// Complete factorization of a monic polynomial into monic irreducibles,
/// sorted by degree and then coefficients from the top down.
pub fn factor<F: FiniteField>(g: &Poly<F>, seed: u64) -> Result<Factorization<F>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !g.is_monic() {
        return Err(Error::NotMonic(g.to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Factorization<F> = Vec::new();
    for (part, mult) in squarefree_decomposition(g) {
        for fac in split_squarefree(&part, &mut rng) {
            out.push((fac.monic(), mult));
        }
    }
    out.sort();
    Ok(out)
}

/// [`factor`] with the default seed.
pub fn factor_mod_p<F: FiniteField>(g: &Poly<F>) -> Result<Factorization<F>> {
    factor(g, DEFAULT_SEED)
}

/// Multiplies a factorization back out.
pub fn expand<F: FiniteField>(field: &F, factors: &[(Poly<F>, u32)]) -> Poly<F> {
    factors
        .iter()
        .fold(Poly::from_elem(field.clone(), field.one()), |acc, (f, k)| {
            acc.mul(&f.pow(*k))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::{FpPoly, PrimeField, ResidueField};
    use proptest::prelude::*;

    fn fp(p: u64, cs: &[i64]) -> FpPoly {
        FpPoly::from_i64s(PrimeField::new(p), cs)
    }

    /// Independent irreducibility check: no monic divisor of degree <= deg/2.
    fn brute_irreducible(g: &FpPoly) -> bool {
        let p = g.field().modulus();
        let n = g.degree().unwrap();
        (1..=n / 2).all(|d| {
            (0..p.pow(d as u32)).all(|idx| {
                let cand = enumerate_monic(g.field(), p, d, idx);
                !cand.divides(g)
            })
        })
    }

    #[test]
    fn frobenius_powers() {
        let f = factor_mod_p(&fp(2, &[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(f, vec![(fp(2, &[1, 1]), 4)]);
        let mut nine = vec![0i64; 10];
        nine[0] = 1;
        nine[9] = 1;
        let f = factor_mod_p(&fp(3, &nine)).unwrap();
        assert_eq!(f, vec![(fp(3, &[1, 1]), 9)]);
        let f = factor_mod_p(&fp(2, &[1, 1, 1])).unwrap();
        assert_eq!(f, vec![(fp(2, &[1, 1, 1]), 1)]);
    }

    #[test]
    fn non_monic_and_zero_rejected() {
        assert!(matches!(factor_mod_p(&fp(5, &[1, 2])), Err(Error::NotMonic(_))));
        assert!(matches!(factor_mod_p(&fp(5, &[])), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree_poly(&fp(2, &[0, 1, 1])).unwrap());
        assert!(!is_squarefree_poly(&fp(7, &[0, 0, 1])).unwrap());
        assert!(!is_squarefree_poly(&fp(2, &[1, 0, 1])).unwrap());
        assert!(is_squarefree_poly(&fp(2, &[])).is_err());
    }

    #[test]
    fn large_case_uses_cantor_zassenhaus() {
        // x^40 - 1 over F_7 has q^deg far above the exhaustive limit
        let mut cs = vec![0i64; 41];
        cs[0] = -1;
        cs[40] = 1;
        let g = fp(7, &cs);
        let facs = factor(&g, 3).unwrap();
        assert_eq!(expand(g.field(), &facs), g);
        assert!(facs.iter().all(|(f, k)| *k == 1 && brute_irreducible(f)));
        assert_eq!(facs, factor(&g, 99).unwrap());
    }

    #[test]
    fn characteristic_two_extension_trace_split() {
        let phi = fp(2, &[1, 1, 0, 1]);
        let field = ResidueField::new(phi);
        let b = field.nth_elem(2);
        // (y - b)(y - b^2)(y - 1)... built from linear factors over F_8, raised high enough
        // that the exhaustive path is skipped
        let mut g = Poly::from_elem(field.clone(), field.one());
        let mut seen = Vec::new();
        for i in 0..8u64 {
            let c = field.nth_elem(i);
            seen.push(c.clone());
            g = g.mul(&Poly::new(field.clone(), vec![field.neg(&c), field.one()]));
        }
        let irr = Poly::new(field.clone(), vec![b.clone(), field.one(), field.zero(), field.one()]);
        let g2 = g.mul(&irr);
        let facs = factor(&g2, 11).unwrap();
        assert_eq!(expand(&field, &facs), g2);
        let linear: u32 = facs
            .iter()
            .filter(|(f, _)| f.degree() == Some(1))
            .map(|(_, k)| *k)
            .sum();
        assert!(linear >= 8);
        assert_eq!(seen.len(), 8);
    }

    fn small_poly() -> impl Strategy<Value = (u64, Vec<i64>)> {
        (prop::sample::select(vec![2u64, 3, 5, 7]), prop::collection::vec(-6i64..6, 1..12))
    }

    proptest! {
        #[test]
        fn factorization_reproduces_input((p, mut cs) in small_poly(), seed in 0u64..1000) {
            cs.push(1);
            let g = fp(p, &cs);
            let facs = factor(&g, seed).unwrap();
            prop_assert_eq!(expand(g.field(), &facs), g.clone());
            for w in facs.windows(2) {
                prop_assert!(w[0].0 < w[1].0);
            }
            for (f, _) in &facs {
                prop_assert!(f.is_monic());
                prop_assert!(brute_irreducible(f));
            }
            prop_assert_eq!(
                is_squarefree_poly(&g).unwrap(),
                facs.iter().all(|(_, k)| *k == 1)
            );
        }

        #[test]
        fn residue_field_inverses(idx in 1u64..343) {
            let field = ResidueField::new(fp(7, &[3, 0, 1, 1]).monic());
            // x^3 + x^2 + 3 is irreducible over F_7 (no roots, cubic)
            let z = field.nth_elem(idx);
            let zi = field.inv(&z).unwrap();
            prop_assert!(field.is_one(&field.mul(&z, &zi)));
        }
    }
}
