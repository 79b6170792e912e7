//! Newton polygons: valued points, the lower convex envelope, exact side
//! data, the principal part, the phi-index and residual polynomials.

use std::fmt;

use num_integer::Integer;

use crate::arith::{Prime, Valuation};
use crate::error::{Error, Result};
use crate::fp::{residue_class, FPhiElement, FPhiPoly, FiniteField, FpPoly, Poly, ResidueField};
use crate::zpoly::PhiExpansion;

/// A point `(i, v)`: abscissa in the expansion, finite valuation of `a_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValuedPoint {
    pub x: u64,
    pub y: u64,
}

impl ValuedPoint {
    pub fn new(x: u64, y: u64) -> Self {
        ValuedPoint { x, y }
    }
}

impl fmt::Display for ValuedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A reduced fraction `num/den`, `den >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    pub num: i64,
    pub den: u64,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A segment of a polygon between two lattice points, `start.x < end.x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Side {
    pub start: ValuedPoint,
    pub end: ValuedPoint,
}

impl Side {
    pub fn length(&self) -> u64 {
        self.end.x - self.start.x
    }

    /// Ordinate drop `start.y - end.y`; negative for rising sides.
    pub fn height(&self) -> i64 {
        self.start.y as i64 - self.end.y as i64
    }

    pub fn slope(&self) -> Slope {
        let rise = -self.height();
        let run = self.length() as i64;
        let g = rise.gcd(&run);
        Slope {
            num: rise / g,
            den: (run / g) as u64,
        }
    }

    /// Ramification index: the denominator of the slope.
    pub fn e(&self) -> u64 {
        self.slope().den
    }

    /// `h` in slope `-h/e`.
    pub fn h(&self) -> i64 {
        -self.slope().num
    }

    /// `length / e`; the number of lattice steps along the side.
    pub fn degree(&self) -> u64 {
        self.length() / self.e()
    }

    /// Lattice points on the side, from start to end.
    pub fn lattice_points(&self) -> Vec<ValuedPoint> {
        let (e, h) = (self.e(), self.h());
        (0..=self.degree())
            .map(|i| ValuedPoint::new(self.start.x + i * e, (self.start.y as i64 - i as i64 * h) as u64))
            .collect()
    }

    /// `floor` of the side's ordinate at abscissa `x` (within the side's span).
    pub fn floor_at(&self, x: u64) -> i64 {
        let dx = (x - self.start.x) as i128;
        let drop = Integer::div_ceil(&(self.height() as i128 * dx), &(self.length() as i128));
        (self.start.y as i128 - drop) as i64
    }

    /// Position of `pt` relative to the side's line: negative below, zero on, positive above.
    pub fn compare(&self, pt: ValuedPoint) -> std::cmp::Ordering {
        let lhs = (pt.y as i128 - self.start.y as i128) * self.length() as i128;
        let rhs = -(self.height() as i128) * (pt.x as i128 - self.start.x as i128);
        lhs.cmp(&rhs)
    }
}

/// A chain of sides with strictly increasing slopes, stored by its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NewtonPolygon {
    vertices: Vec<ValuedPoint>,
}

impl NewtonPolygon {
    /// Builds a polygon from its vertex chain; no convexity check.
    pub fn from_vertices(vertices: Vec<ValuedPoint>) -> Self {
        NewtonPolygon { vertices }
    }

    pub fn vertices(&self) -> &[ValuedPoint] {
        &self.vertices
    }

    pub fn sides(&self) -> Vec<Side> {
        self.vertices
            .windows(2)
            .map(|w| Side { start: w[0], end: w[1] })
            .collect()
    }

    /// True when the polygon has no sides.
    pub fn is_empty(&self) -> bool {
        self.vertices.len() < 2
    }

    /// Total abscissa span.
    pub fn length(&self) -> u64 {
        match (self.vertices.first(), self.vertices.last()) {
            (Some(a), Some(b)) => b.x - a.x,
            _ => 0,
        }
    }
}

/// Points `(i, v_p(a_i))` for the nonzero coefficients of an expansion.
pub fn valued_points(exp: &PhiExpansion, p: Prime) -> Vec<ValuedPoint> {
    exp.coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| match a.valuation(p) {
            Valuation::Finite(v) => Some(ValuedPoint::new(i as u64, v)),
            Valuation::Infinite => None,
        })
        .collect()
}

fn cross(o: ValuedPoint, a: ValuedPoint, b: ValuedPoint) -> i128 {
    let (ox, oy) = (o.x as i128, o.y as i128);
    (a.x as i128 - ox) * (b.y as i128 - oy) - (a.y as i128 - oy) * (b.x as i128 - ox)
}

/// Lower convex envelope. Collinear points are merged so every side is
/// maximal; for repeated abscissas the lowest point is kept.
pub fn lower_convex_hull(points: &[ValuedPoint]) -> Result<NewtonPolygon> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup_by_key(|pt| pt.x);
    let mut hull: Vec<ValuedPoint> = Vec::with_capacity(pts.len());
    for pt in pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    Ok(NewtonPolygon { vertices: hull })
}

/// The sub-chain of sides with strictly negative slope.
pub fn principal_part(poly: &NewtonPolygon) -> NewtonPolygon {
    let negative = poly.sides().iter().take_while(|s| s.height() > 0).count();
    if negative == 0 {
        return NewtonPolygon::default();
    }
    NewtonPolygon {
        vertices: poly.vertices[..=negative].to_vec(),
    }
}

/// `deg_phi` times the number of lattice points `(x, y)` with `x >= 1`,
/// `y >= 1` lying on or under the principal polygon.
pub fn phi_index(principal: &NewtonPolygon, deg_phi: u64) -> u64 {
    let Some(first) = principal.vertices().first() else {
        return 0;
    };
    let mut count = if first.x >= 1 { first.y } else { 0 };
    for side in principal.sides() {
        for x in side.start.x + 1..=side.end.x {
            count += side.floor_at(x).max(0) as u64;
        }
    }
    deg_phi * count
}

/// The residual polynomial `t_0 y^d + ... + t_d` of a side, `t_i` the
/// residue of the coefficient at abscissa `s + i e` (zero when that point
/// lies strictly above the side).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualPolynomial {
    side: Side,
    field: ResidueField,
    coeffs: Vec<FpPoly>,
}

impl ResidualPolynomial {
    pub fn side(&self) -> &Side {
        &self.side
    }

    pub fn field(&self) -> &ResidueField {
        &self.field
    }

    pub fn degree(&self) -> u64 {
        self.coeffs.len() as u64 - 1
    }

    /// `t_0, ..., t_d`.
    pub fn coefficients(&self) -> Vec<FPhiElement> {
        self.coeffs
            .iter()
            .map(|c| FPhiElement {
                field: self.field.clone(),
                value: c.clone(),
            })
            .collect()
    }

    /// As a polynomial in `y` over `F_phi`.
    pub fn poly(&self) -> FPhiPoly {
        Poly::new(self.field.clone(), self.coeffs.iter().rev().cloned().collect())
    }
}

impl fmt::Display for ResidualPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly().format_with("y"))
    }
}

/// Residual polynomial of `side`, which must be a side of the polygon of `exp`.
pub fn residual_polynomial(
    exp: &PhiExpansion,
    p: Prime,
    field: &ResidueField,
    side: &Side,
) -> Result<ResidualPolynomial> {
    let mut coeffs = Vec::new();
    for pt in side.lattice_points() {
        let a = exp.coeffs().get(pt.x as usize).ok_or_else(|| {
            Error::Invalid(format!("side point {pt} beyond expansion length"))
        })?;
        let c = match a.valuation(p) {
            Valuation::Infinite => field.zero(),
            Valuation::Finite(v) if v > pt.y => field.zero(),
            Valuation::Finite(v) if v == pt.y => residue_class(a, field, p, v)?.value,
            Valuation::Finite(v) => {
                return Err(Error::Invalid(format!(
                    "point ({},{v}) lies below the side {}-{}",
                    pt.x, side.start, side.end
                )))
            }
        };
        coeffs.push(c);
    }
    if coeffs.first().is_none_or(|c| c.is_zero()) || coeffs.last().is_none_or(|c| c.is_zero()) {
        return Err(Error::Invalid(format!(
            "side {}-{} does not belong to this expansion",
            side.start, side.end
        )));
    }
    Ok(ResidualPolynomial {
        side: *side,
        field: field.clone(),
        coeffs,
    })
}
