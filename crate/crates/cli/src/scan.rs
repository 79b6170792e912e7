//! Batch classification over a range of m.

use std::io::Write;

use num_bigint::BigInt;
use puremono::arith::Prime;
use puremono::{classify, Error, PureFieldParams, Status};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cli::{ScanFormat, ScanRequest};
use crate::error::{CliError, CliResult};

/// Largest number of m values a single scan may cover.
pub const MAX_SCAN_LEN: u64 = 10_000_000;

pub const CSV_COLUMNS: [&str; 12] = [
    "m", "p", "r", "status", "provenance", "nu", "index_bound", "index_exact", "P1", "N1", "shape",
    "skipped_reason",
];

/// One line of scan output. Verdict columns are empty for skipped m.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub m: i64,
    pub p: u64,
    pub r: u32,
    pub status: Option<String>,
    pub provenance: Option<String>,
    pub nu: Option<u64>,
    pub index_bound: Option<u64>,
    pub index_exact: Option<bool>,
    #[serde(rename = "P1")]
    pub p1: Option<u64>,
    #[serde(rename = "N1")]
    pub n1: Option<String>,
    /// `e:f` pairs, or `NOT_REGULAR`.
    pub shape: Option<String>,
    pub skipped_reason: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub monogenic: u64,
    pub not_monogenic: u64,
    pub undetermined: u64,
    pub skipped: u64,
}

impl ScanSummary {
    pub fn total(&self) -> u64 {
        self.monogenic + self.not_monogenic + self.undetermined + self.skipped
    }
}

impl std::fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{} {}", Status::MonogenicZAlpha.code(), self.monogenic)?;
        writeln!(f, "{} {}", Status::NotMonogenic.code(), self.not_monogenic)?;
        writeln!(f, "{} {}", Status::Undetermined.code(), self.undetermined)?;
        write!(f, "SKIPPED {}", self.skipped)
    }
}

fn skipped(m: i64, p: Prime, r: u32, reason: &str) -> ScanRow {
    ScanRow {
        m,
        p: p.get(),
        r,
        status: None,
        provenance: None,
        nu: None,
        index_bound: None,
        index_exact: None,
        p1: None,
        n1: None,
        shape: None,
        skipped_reason: Some(reason.to_string()),
    }
}

/// Classifies one m; invalid m become skipped rows, engine faults propagate.
pub fn scan_row(p: Prime, r: u32, m: i64) -> CliResult<ScanRow> {
    let params = match PureFieldParams::with_prime(p, r, BigInt::from(m)) {
        Ok(params) => params,
        Err(Error::NotSquarefree(_)) => return Ok(skipped(m, p, r, "not squarefree")),
        Err(Error::MTooSmall(_)) => return Ok(skipped(m, p, r, "|m| < 2")),
        Err(e) => return Err(e.into()),
    };
    let verdict = classify(&params)?;
    let cert = &verdict.certificate;
    let digest = cert
        .digest(p)
        .ok_or_else(|| Error::Invariant(format!("no digest at {p}")))?;
    let shape = match digest.shape() {
        Some(s) => s.to_string(),
        None => "NOT_REGULAR".to_string(),
    };
    let first = cert.residue_degree_counts.iter().find(|c| c.f == 1);
    Ok(ScanRow {
        m,
        p: p.get(),
        r,
        status: Some(verdict.status.code().to_string()),
        provenance: Some(verdict.provenance.code().to_string()),
        nu: Some(cert.nu),
        index_bound: Some(digest.index.value),
        index_exact: Some(digest.index.exact),
        p1: Some(first.map_or(0, |c| c.primes)),
        n1: Some(first.map_or_else(|| p.get().to_string(), |c| c.irreducibles.to_string())),
        shape: Some(shape),
        skipped_reason: None,
    })
}

pub fn selected_ms(req: &ScanRequest) -> CliResult<Vec<i64>> {
    if req.m_from > req.m_to {
        return Err(CliError::Usage(format!("empty range: {} > {}", req.m_from, req.m_to)));
    }
    let len = (req.m_to as i128 - req.m_from as i128 + 1) as u128;
    if len > MAX_SCAN_LEN as u128 {
        return Err(CliError::Usage(format!("range of {len} values exceeds {MAX_SCAN_LEN}")));
    }
    match req.filter {
        None => Ok((req.m_from..=req.m_to).collect()),
        Some((_, 0)) => Err(CliError::Usage("--modulus must be positive".into())),
        Some((res, modulus)) => {
            let modulus = modulus as i128;
            let res = (res as i128).rem_euclid(modulus);
            Ok((req.m_from..=req.m_to)
                .filter(|&m| (m as i128).rem_euclid(modulus) == res)
                .collect())
        }
    }
}

/// Classifies every selected m on a pool of `jobs` workers; rows come back
/// in m order regardless of scheduling.
pub fn run_rows(p: Prime, r: u32, ms: &[i64], jobs: Option<usize>) -> CliResult<Vec<ScanRow>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(jobs);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| ms.par_iter().map(|&m| scan_row(p, r, m)).collect())
}

pub fn summarize(rows: &[ScanRow]) -> ScanSummary {
    let mut s = ScanSummary::default();
    for row in rows {
        match row.status.as_deref().and_then(Status::from_code) {
            Some(Status::MonogenicZAlpha) => s.monogenic += 1,
            Some(Status::NotMonogenic) => s.not_monogenic += 1,
            Some(Status::Undetermined) => s.undetermined += 1,
            None => s.skipped += 1,
        }
    }
    s
}

pub fn write_rows<W: Write>(rows: &[ScanRow], format: ScanFormat, out: W) -> std::io::Result<()> {
    match format {
        ScanFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row)?;
            }
            if rows.is_empty() {
                w.write_record(CSV_COLUMNS)?;
            }
            w.flush()
        }
        ScanFormat::Jsonl => {
            let mut out = std::io::BufWriter::new(out);
            for row in rows {
                serde_json::to_writer(&mut out, row)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
    }
}

pub fn read_csv(text: &str) -> csv::Result<Vec<ScanRow>> {
    csv::Reader::from_reader(text.as_bytes()).deserialize().collect()
}

pub fn cmd_scan(req: &ScanRequest) -> CliResult<ScanSummary> {
    let p = Prime::from_bigint(&req.p)?;
    // validates r and the degree before any work starts
    PureFieldParams::with_prime(p, req.r, BigInt::from(2))?;
    let ms = selected_ms(req)?;
    let file = std::fs::File::create(&req.out).map_err(|e| CliError::io(req.out.display(), e))?;
    let rows = run_rows(p, req.r, &ms, req.jobs)?;
    write_rows(&rows, req.format, file).map_err(|e| CliError::io(req.out.display(), e))?;
    Ok(summarize(&rows))
}
