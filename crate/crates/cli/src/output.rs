//! Serializable views of a verdict. Every number is exact: big integers
//! travel as decimal strings and slopes as `"-h/e"`.

use std::fmt::Write as _;

use puremono::newton::{lower_convex_hull, NewtonPolygon, ValuedPoint};
use puremono::oracle::OracleReport;
use puremono::ore::{format_factorization, PhiReport, SplittingShape};
use puremono::zpoly::pure_polynomial;
use puremono::MonogenityVerdict;
use serde::{Deserialize, Serialize};

use crate::error::CliResult;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeOutput {
    pub version: String,
    pub input: Input,
    pub polynomial: String,
    pub degree: u64,
    pub status: String,
    pub provenance: String,
    pub certificate: CertificateOut,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<OracleCheck>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Input {
    pub p: String,
    pub r: u32,
    pub m: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateOut {
    pub nu: u64,
    pub nu_unit: Option<u64>,
    pub m_negative: bool,
    pub primes: Vec<PrimeOut>,
    pub residue_degree_counts: Vec<CountOut>,
    pub witness: Option<WitnessOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeOut {
    pub prime: String,
    pub discriminant_valuation: u64,
    pub index_bound: u64,
    pub index_exact: bool,
    pub regular: bool,
    /// Full shape, absent when some residual polynomial is not squarefree.
    pub shape: Option<Vec<ShapeOut>>,
    /// Primes resolved so far; equals `shape` in the regular case.
    pub resolved: Vec<ShapeOut>,
    pub unresolved: u64,
    pub factors: Vec<FactorOut>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeOut {
    pub e: u64,
    pub f: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorOut {
    pub phi: String,
    pub multiplicity: u32,
    pub vertices: Vec<[u64; 2]>,
    pub principal: Vec<[u64; 2]>,
    pub index: u64,
    pub regular: bool,
    pub sides: Vec<SideOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SideOut {
    pub start: [u64; 2],
    pub end: [u64; 2],
    pub slope: String,
    pub length: u64,
    pub height: u64,
    pub e: u64,
    pub degree: u64,
    pub residual: String,
    pub factorization: String,
    pub regular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountOut {
    pub f: u64,
    pub primes: u64,
    pub exact: bool,
    pub irreducibles: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessOut {
    pub prime: String,
    pub f: u64,
    pub primes: u64,
    pub irreducibles: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleCheck {
    pub quantity: String,
    pub engine: String,
    pub oracle: String,
    pub agree: bool,
}

impl From<&OracleReport> for OracleCheck {
    fn from(r: &OracleReport) -> Self {
        OracleCheck {
            quantity: r.quantity.clone(),
            engine: r.engine.clone(),
            oracle: r.oracle.clone(),
            agree: r.agree,
        }
    }
}

fn pt(v: &ValuedPoint) -> [u64; 2] {
    [v.x, v.y]
}

fn shape_out(shape: &SplittingShape) -> Vec<ShapeOut> {
    shape.primes().iter().map(|s| ShapeOut { e: s.e, f: s.f }).collect()
}

fn factor_out(report: &PhiReport) -> CliResult<FactorOut> {
    let hull = if report.points.is_empty() {
        NewtonPolygon::default()
    } else {
        lower_convex_hull(&report.points)?
    };
    Ok(FactorOut {
        phi: report.phi.to_string(),
        multiplicity: report.multiplicity,
        vertices: hull.vertices().iter().map(pt).collect(),
        principal: report.principal.vertices().iter().map(pt).collect(),
        index: report.index,
        regular: report.regular,
        sides: report
            .sides
            .iter()
            .map(|s| SideOut {
                start: pt(&s.side.start),
                end: pt(&s.side.end),
                slope: s.side.slope().to_string(),
                length: s.side.length(),
                height: s.side.height().unsigned_abs(),
                e: s.side.e(),
                degree: s.side.degree(),
                residual: s.residual.to_string(),
                factorization: format_factorization(&s.factors),
                regular: s.is_regular(),
            })
            .collect(),
    })
}

impl AnalyzeOutput {
    pub fn new(verdict: &MonogenityVerdict, oracle: Option<&[OracleReport]>) -> CliResult<Self> {
        let params = &verdict.params;
        let cert = &verdict.certificate;
        let primes = cert
            .primes
            .iter()
            .map(|d| {
                Ok(PrimeOut {
                    prime: d.prime.to_string(),
                    discriminant_valuation: d.discriminant_valuation,
                    index_bound: d.index.value,
                    index_exact: d.index.exact,
                    regular: d.is_regular(),
                    shape: d.shape().map(shape_out),
                    resolved: shape_out(&d.splitting.known),
                    unresolved: d.splitting.unresolved as u64,
                    factors: d.reports.iter().map(factor_out).collect::<CliResult<_>>()?,
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(AnalyzeOutput {
            version: VERSION.to_string(),
            input: Input {
                p: params.p().to_string(),
                r: params.r(),
                m: params.m().to_string(),
            },
            polynomial: pure_polynomial(params).to_string(),
            degree: params.degree(),
            status: verdict.status.code().to_string(),
            provenance: verdict.provenance.code().to_string(),
            certificate: CertificateOut {
                nu: cert.nu,
                nu_unit: cert.nu_unit,
                m_negative: cert.m_negative,
                primes,
                residue_degree_counts: cert
                    .residue_degree_counts
                    .iter()
                    .map(|c| CountOut {
                        f: c.f,
                        primes: c.primes,
                        exact: c.exact,
                        irreducibles: c.irreducibles.to_string(),
                    })
                    .collect(),
                witness: cert.witness.as_ref().map(|w| WitnessOut {
                    prime: w.prime.to_string(),
                    f: w.f,
                    primes: w.primes,
                    irreducibles: w.irreducibles.to_string(),
                }),
            },
            oracle: oracle.map(|rs| rs.iter().map(OracleCheck::from).collect()),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_human(&self) -> String {
        let mut s = String::new();
        let c = &self.certificate;
        let _ = writeln!(s, "{}  (p = {}, r = {}, m = {})", self.polynomial, self.input.p, self.input.r, self.input.m);
        let _ = writeln!(s, "status      {}", self.status);
        let _ = writeln!(s, "provenance  {}", self.provenance);
        let _ = write!(s, "nu          {}", c.nu);
        if let Some(u) = c.nu_unit {
            let _ = write!(s, "  (v_p(m^(p-1) - 1) = {u})");
        }
        s.push('\n');
        if c.m_negative {
            s.push_str("note        m < 0\n");
        }
        for q in &c.primes {
            let exact = if q.index_exact { "exact" } else { "lower bound" };
            let _ = writeln!(
                s,
                "\nprime {}: v(disc) = {}, v(index) >= {} ({exact})",
                q.prime, q.discriminant_valuation, q.index_bound
            );
            for f in &q.factors {
                let _ = writeln!(s, "  phi = {}, multiplicity {}, phi-index {}", f.phi, f.multiplicity, f.index);
                if !f.vertices.is_empty() {
                    let v: Vec<String> = f.vertices.iter().map(|[x, y]| format!("({x},{y})")).collect();
                    let _ = writeln!(s, "    polygon {}", v.join(" "));
                }
                for side in &f.sides {
                    let _ = writeln!(
                        s,
                        "    side ({},{})-({},{}) slope {} e={} d={} residual {} = {}{}",
                        side.start[0],
                        side.start[1],
                        side.end[0],
                        side.end[1],
                        side.slope,
                        side.e,
                        side.degree,
                        side.residual,
                        side.factorization,
                        if side.regular { "" } else { "  NOT REGULAR" }
                    );
                }
            }
            match &q.shape {
                Some(shape) => {
                    let _ = writeln!(s, "  shape {}", fmt_shape(shape));
                }
                None => {
                    let _ = writeln!(
                        s,
                        "  shape NOT_REGULAR (resolved {}, {} unresolved)",
                        fmt_shape(&q.resolved),
                        q.unresolved
                    );
                }
            }
        }
        s.push('\n');
        for count in &c.residue_degree_counts {
            let bound = if count.exact { "" } else { " (lower bound)" };
            let _ = writeln!(s, "P_{} = {}{bound}, N_{} = {}", count.f, count.primes, count.f, count.irreducibles);
        }
        if let Some(w) = &c.witness {
            let _ = writeln!(
                s,
                "witness: P_{f} = {} > N_{f} = {}, so {} is a common index divisor",
                w.primes,
                w.irreducibles,
                w.prime,
                f = w.f
            );
        }
        if let Some(checks) = &self.oracle {
            let bad = checks.iter().filter(|c| !c.agree).count();
            let _ = writeln!(s, "\noracle checks: {} run, {bad} disagree", checks.len());
            for check in checks.iter().filter(|c| !c.agree) {
                let _ = writeln!(s, "  MISMATCH {}: engine {} oracle {}", check.quantity, check.engine, check.oracle);
            }
        }
        s
    }
}

pub fn fmt_shape(shape: &[ShapeOut]) -> String {
    shape.iter().map(|s| format!("{}:{}", s.e, s.f)).collect::<Vec<_>>().join(",")
}
