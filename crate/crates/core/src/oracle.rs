//! Deliberately naive reference computations.
//!
//! None of these share code with the engine paths they check; they only
//! use the plain data types (`ValuedPoint`, `NewtonPolygon`, `ZPoly`) and
//! big-integer arithmetic. [`cross_check`] runs all of them against a
//! classification.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::monogenity::{dedekind_divides_index, MonogenityVerdict};
use crate::newton::{lower_convex_hull, phi_index, NewtonPolygon, ValuedPoint};
use crate::zpoly::{discriminant_valuation, pure_polynomial, ZPoly};

/// Degree guard for the resultant oracle.
pub const RESULTANT_MAX_DEGREE: usize = 64;
/// Size guard for exhaustive irreducible enumeration.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;
/// Largest `p^r` whose binomial row is checked by [`cross_check`].
pub const BINOMIAL_ROW_LIMIT: u64 = 1 << 13;
/// Largest degree for which [`cross_check`] runs Dedekind's criterion.
pub const DEDEKIND_MAX_DEGREE: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub quantity: String,
    pub engine: String,
    pub oracle: String,
    pub agree: bool,
}

impl OracleReport {
    pub fn new(quantity: impl Into<String>, engine: impl fmt::Display, oracle: impl fmt::Display) -> Self {
        let (engine, oracle) = (engine.to_string(), oracle.to_string());
        OracleReport {
            quantity: quantity.into(),
            agree: engine == oracle,
            engine,
            oracle,
        }
    }
}

/// Lower envelope by the slope recurrence: from the current vertex, jump to
/// the point of smallest slope, taking the farthest one on ties.
pub fn brute_hull(points: &[ValuedPoint]) -> NewtonPolygon {
    let mut pts: Vec<ValuedPoint> = Vec::new();
    for &pt in points {
        match pts.iter_mut().find(|q| q.x == pt.x) {
            Some(q) => q.y = q.y.min(pt.y),
            None => pts.push(pt),
        }
    }
    let Some(mut cur) = pts.iter().copied().min_by_key(|q| q.x) else {
        return NewtonPolygon::default();
    };
    let mut vertices = vec![cur];
    loop {
        let mut best: Option<ValuedPoint> = None;
        for &cand in pts.iter().filter(|q| q.x > cur.x) {
            best = Some(match best {
                None => cand,
                Some(b) => {
                    // compare (cand.y - cur.y)/(cand.x - cur.x) with (b.y - cur.y)/(b.x - cur.x)
                    let lhs = (cand.y as i128 - cur.y as i128) * (b.x - cur.x) as i128;
                    let rhs = (b.y as i128 - cur.y as i128) * (cand.x - cur.x) as i128;
                    if lhs < rhs || (lhs == rhs && cand.x > b.x) {
                        cand
                    } else {
                        b
                    }
                }
            });
        }
        match best {
            Some(next) => {
                vertices.push(next);
                cur = next;
            }
            None => break,
        }
    }
    NewtonPolygon::from_vertices(vertices)
}

/// Vertices of the negative-slope prefix of a vertex chain.
pub fn brute_principal(vertices: &[ValuedPoint]) -> Vec<ValuedPoint> {
    let mut out = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        if i == 0 || v.y < vertices[i - 1].y {
            out.push(*v);
        } else {
            break;
        }
    }
    if out.len() < 2 {
        out.clear();
    }
    out
}

/// Counts lattice points `x >= 1, y >= 1` on or under the chain, column by
/// column and row by row, times `deg_phi`.
pub fn brute_phi_index(polygon: &NewtonPolygon, deg_phi: u64) -> u64 {
    let v = polygon.vertices();
    if v.len() < 2 {
        return 0;
    }
    let top = v.iter().map(|q| q.y).max().unwrap_or(0);
    let mut count = 0;
    for x in v[0].x.max(1)..=v[v.len() - 1].x {
        let seg = v
            .windows(2)
            .find(|w| w[0].x <= x && x <= w[1].x)
            .expect("x within span");
        let (a, b) = (seg[0], seg[1]);
        for y in 1..=top {
            // (x, y) on or below the segment through a and b
            let lhs = (y as i128 - a.y as i128) * (b.x - a.x) as i128;
            let rhs = (b.y as i128 - a.y as i128) * (x - a.x) as i128;
            if lhs <= rhs {
                count += 1;
            }
        }
    }
    count * deg_phi
}

fn valuation_by_division(p: u64, n: &BigInt) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return Some(k);
        }
        n = q;
        k += 1;
    }
}

/// `v_p(binomial(n, k))` from the exact binomial coefficient.
pub fn brute_binomial_valuation(p: u64, n: u64, k: u64) -> u64 {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    valuation_by_division(p, &c).expect("binomial coefficient is nonzero")
}

/// `v_p(binomial(n, k))` for every `k = 0..=n`, from the exact row.
pub fn brute_binomial_row_valuations(p: u64, n: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    for k in 0..=n {
        if k > 0 {
            c = c * BigInt::from(n - k + 1) / BigInt::from(k);
        }
        out.push(valuation_by_division(p, &c).expect("nonzero"));
    }
    out
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn deg(v: &[BigInt]) -> i64 {
    v.len() as i64 - 1
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut e = a.len() as i64 - b.len() as i64 + 1;
    while r.len() > db && !r.is_empty() {
        let lr = r[r.len() - 1].clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        r = trim(r);
        e -= 1;
    }
    let scale = num_traits::pow(lb.clone(), e.max(0) as usize);
    trim(r.into_iter().map(|c| c * &scale).collect())
}

/// Resultant by the subresultant remainder sequence.
pub fn resultant(a: &ZPoly, b: &ZPoly) -> BigInt {
    let (mut a, mut b) = (a.coeffs().to_vec(), b.coeffs().to_vec());
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut s = BigInt::one();
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
    }
    let (ca, cb) = (content(&a), content(&b));
    let t = num_traits::pow(ca.clone(), deg(&b) as usize) * num_traits::pow(cb.clone(), deg(&a) as usize);
    a = a.into_iter().map(|c| c / &ca).collect();
    b = b.into_iter().map(|c| c / &cb).collect();
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    while deg(&b) > 0 {
        let delta = (deg(&a) - deg(&b)) as usize;
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        a = b;
        let denom = &g * num_traits::pow(h.clone(), delta);
        b = r.into_iter().map(|c| c / &denom).collect();
        g = a[a.len() - 1].clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
    }
    if b.is_empty() {
        return BigInt::zero();
    }
    let da = deg(&a) as usize;
    let lb = b[0].clone();
    let h = if da == 0 {
        h
    } else {
        num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
    };
    s * t * h
}

/// `v_q(disc f)` with `disc f = +-Res(f, f') / lc(f)`.
pub fn resultant_discriminant_valuation(f: &ZPoly, q: u64) -> Result<u64> {
    let n = f.degree().unwrap_or(0);
    if n > RESULTANT_MAX_DEGREE {
        return Err(Error::OutOfRange {
            what: "degree",
            detail: format!("resultant oracle limited to degree {RESULTANT_MAX_DEGREE}, got {n}"),
        });
    }
    let disc = resultant(f, &f.derivative()) / f.coeff(n);
    valuation_by_division(q, &disc)
        .ok_or_else(|| Error::Invalid(format!("{f} has zero discriminant")))
}

fn poly_mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn monic_from_index(p: u64, d: u32, mut idx: u64) -> Vec<u64> {
    let mut v = Vec::with_capacity(d as usize + 1);
    for _ in 0..d {
        v.push(idx % p);
        idx /= p;
    }
    v.push(1);
    v
}

fn index_of_monic(p: u64, v: &[u64]) -> u64 {
    v[..v.len() - 1].iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Number of monic irreducible polynomials of degree `f` over `F_p`, by
/// striking out every product of lower-degree monic polynomials.
pub fn enumerate_monic_irreducibles(p: u64, f: u32) -> Result<u64> {
    let total = p
        .checked_pow(f)
        .filter(|&t| t <= ENUMERATION_LIMIT)
        .ok_or_else(|| Error::OutOfRange {
            what: "p^f",
            detail: format!("enumeration limited to {ENUMERATION_LIMIT}"),
        })?;
    if f == 0 {
        return Err(Error::OutOfRange {
            what: "f",
            detail: "f must be at least 1".into(),
        });
    }
    let mut reducible = vec![false; total as usize];
    for k in 1..=f / 2 {
        for i in 0..p.pow(k) {
            let a = monic_from_index(p, k, i);
            for j in 0..p.pow(f - k) {
                let b = monic_from_index(p, f - k, j);
                reducible[index_of_monic(p, &poly_mul_mod(&a, &b, p)) as usize] = true;
            }
        }
    }
    Ok(reducible.iter().filter(|r| !**r).count() as u64)
}

/// Recomputes every checkable quantity of a verdict with the naive oracles.
pub fn cross_check(verdict: &MonogenityVerdict) -> Result<Vec<OracleReport>> {
    let params = &verdict.params;
    let p = params.p();
    let n = params.degree();
    let cert = &verdict.certificate;
    let mut out = Vec::new();

    for digest in &cert.primes {
        let q = digest.prime;
        for report in &digest.reports {
            if report.points.is_empty() {
                continue;
            }
            let tag = format!("at {q}, phi = {}", report.phi);
            let engine_hull = lower_convex_hull(&report.points)?;
            let oracle_hull = brute_hull(&report.points);
            out.push(OracleReport::new(
                format!("hull {tag}"),
                fmt_vertices(engine_hull.vertices()),
                fmt_vertices(oracle_hull.vertices()),
            ));
            let principal = NewtonPolygon::from_vertices(brute_principal(oracle_hull.vertices()));
            out.push(OracleReport::new(
                format!("principal part {tag}"),
                fmt_vertices(report.principal.vertices()),
                fmt_vertices(principal.vertices()),
            ));
            out.push(OracleReport::new(
                format!("phi-index {tag}"),
                phi_index(&report.principal, report.deg_phi()),
                brute_phi_index(&principal, report.deg_phi()),
            ));
        }
        if n as usize <= RESULTANT_MAX_DEGREE {
            out.push(OracleReport::new(
                format!("discriminant valuation at {q}"),
                discriminant_valuation(params, q),
                resultant_discriminant_valuation(&pure_polynomial(params), q.get())?,
            ));
        }
    }

    for count in &cert.residue_degree_counts {
        if p.get().checked_pow(count.f as u32).is_some_and(|t| t <= ENUMERATION_LIMIT) {
            out.push(OracleReport::new(
                format!("N_{} over F_{p}", count.f),
                &count.irreducibles,
                enumerate_monic_irreducibles(p.get(), count.f as u32)?,
            ));
        }
    }

    if n <= BINOMIAL_ROW_LIMIT {
        let row = brute_binomial_row_valuations(p.get(), n);
        let mismatches = (1..n)
            .filter(|&j| arith::binomial_valuation(p, params.r(), j).ok() != Some(row[j as usize]))
            .count();
        out.push(OracleReport::new(
            format!("binomial valuations of row {n}"),
            format!("{} mismatches", 0),
            format!("{mismatches} mismatches"),
        ));
    }

    if n <= DEDEKIND_MAX_DEGREE {
        let f = pure_polynomial(params);
        out.push(OracleReport::new(
            format!("{p} divides index"),
            cert.nu >= 2,
            dedekind_divides_index(&f, p)?,
        ));
        for digest in cert.primes.iter().filter(|d| d.prime != p) {
            out.push(OracleReport::new(
                format!("{} divides index", digest.prime),
                false,
                dedekind_divides_index(&f, digest.prime)?,
            ));
        }
    }
    Ok(out)
}

fn fmt_vertices(v: &[ValuedPoint]) -> String {
    v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" ")
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::monogenity::classify;
    use crate::zpoly::PureFieldParams;

    fn pts(v: &[(u64, u64)]) -> Vec<ValuedPoint> {
        v.iter().map(|&(x, y)| ValuedPoint { x, y }).collect()
    }

    #[test]
    fn hull_of_collinear_points_is_one_side() {
        let h = brute_hull(&pts(&[(0, 4), (1, 2), (2, 0)]));
        assert_eq!(h.vertices(), &pts(&[(0, 4), (2, 0)])[..]);
    }

    #[test]
    fn hull_matches_engine_on_fixture() {
        let p = pts(&[(0, 8), (1, 7), (2, 4), (3, 5), (4, 2), (5, 2), (6, 1), (7, 0)]);
        let oracle = brute_hull(&p);
        let engine = lower_convex_hull(&p).unwrap();
        assert_eq!(oracle, engine);
    }

    #[test]
    fn phi_index_of_simple_triangle() {
        // (0,3)-(3,0): points (1,1),(1,2),(2,1)
        let poly = NewtonPolygon::from_vertices(pts(&[(0, 3), (3, 0)]));
        assert_eq!(brute_phi_index(&poly, 1), 3);
        assert_eq!(brute_phi_index(&poly, 2), 6);
    }

    #[test]
    fn binomial_valuations() {
        assert_eq!(brute_binomial_valuation(2, 8, 4), 1);
        assert_eq!(brute_binomial_valuation(3, 9, 3), 1);
        let row = brute_binomial_row_valuations(2, 8);
        assert_eq!(row, vec![0, 3, 2, 3, 1, 3, 2, 3, 0]);
    }

    #[test]
    fn discriminant_by_resultant() {
        let f = ZPoly::from_i64s(&[-3, 0, 0, 0, 1]);
        assert_eq!(resultant_discriminant_valuation(&f, 2).unwrap(), 8);
        assert_eq!(resultant_discriminant_valuation(&f, 3).unwrap(), 3);
        let g = ZPoly::from_i64s(&[-2, 0, 1]);
        assert_eq!(resultant_discriminant_valuation(&g, 2).unwrap(), 3);
        // x^3 + x + 1 has discriminant -31
        let h = ZPoly::from_i64s(&[1, 1, 0, 1]);
        assert_eq!(resultant(&h, &h.derivative()), BigInt::from(31));
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(enumerate_monic_irreducibles(2, 2).unwrap(), 1);
        assert_eq!(enumerate_monic_irreducibles(3, 2).unwrap(), 3);
        assert_eq!(enumerate_monic_irreducibles(2, 3).unwrap(), 2);
        assert_eq!(enumerate_monic_irreducibles(5, 1).unwrap(), 5);
        assert!(enumerate_monic_irreducibles(2, 21).is_err());
    }

    #[test]
    fn cross_check_agrees_on_small_fields() {
        for (p, r, m) in [(2, 2, 17), (3, 3, 161), (5, 1, 7), (2, 3, 3), (7, 1, -5)] {
            let params = PureFieldParams::new(&BigInt::from(p), r, BigInt::from(m)).unwrap();
            let verdict = classify(&params).unwrap();
            let reports = cross_check(&verdict).unwrap();
            assert!(!reports.is_empty());
            for rep in reports {
                assert!(rep.agree, "{p} {r} {m}: {rep:?}");
            }
        }
    }
}
