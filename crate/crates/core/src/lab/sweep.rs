//! Batch checks over enumerated graphs with JSONL output.
//!
//! Records are written per graph, claims in request order, graphs in
//! enumeration order. A run can resume from an earlier output: complete
//! per-graph groups are kept and enumeration restarts after the last one.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::gen::{Enumerator, DEFAULT_MAX_N};

use super::{check, CheckOptions, CheckRecord, ClaimId, LabError, Status};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub n_min: usize,
    pub n_max: usize,
    pub r_plus_1: usize,
    pub claims: Vec<ClaimId>,
    pub check: CheckOptions,
    pub regular_only: bool,
    /// Enumeration guard on `n`.
    pub limit: usize,
}

impl SweepOptions {
    pub fn new(n_min: usize, n_max: usize, r_plus_1: usize, claims: Vec<ClaimId>) -> Self {
        Self {
            n_min,
            n_max,
            r_plus_1,
            claims,
            check: CheckOptions::default(),
            regular_only: false,
            limit: DEFAULT_MAX_N,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub records: usize,
    pub graphs: usize,
    pub satisfied: usize,
    pub equality: usize,
    pub violated: usize,
    pub not_applicable: usize,
    /// Violations of proven statements (as opposed to conjectures).
    pub proven_violations: usize,
    /// Records carried over from a resumed run.
    pub resumed: usize,
    /// claim id -> graph6 strings attaining the bound.
    pub equality_witnesses: BTreeMap<String, Vec<String>>,
    /// claim id -> graph6 strings exceeding the bound.
    pub violations: BTreeMap<String, Vec<String>>,
}

impl Summary {
    /// Counts for a finished list of records; `graphs` counts distinct
    /// graph6 strings.
    pub fn tally(records: &[CheckRecord]) -> Self {
        let mut s = Summary::default();
        for rec in records {
            s.add(rec);
        }
        s.graphs = records
            .iter()
            .map(|r| (r.n, r.g6.as_str()))
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        s
    }

    fn add(&mut self, rec: &CheckRecord) {
        self.records += 1;
        let claim = rec.claim.to_string();
        match rec.status {
            Status::Satisfied => self.satisfied += 1,
            Status::Equality => {
                self.equality += 1;
                self.equality_witnesses
                    .entry(claim)
                    .or_default()
                    .push(rec.g6.clone());
            }
            Status::Violated => {
                self.violated += 1;
                if rec.claim.is_proven() {
                    self.proven_violations += 1;
                }
                self.violations
                    .entry(claim)
                    .or_default()
                    .push(rec.g6.clone());
            }
            Status::NotApplicable => self.not_applicable += 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "summary": self }).to_string()
    }
}

/// Reads records written by an earlier sweep. Summary lines are ignored, a
/// truncated final line is dropped, and a trailing group with fewer than
/// `claims_per_graph` records is discarded so that graph is checked again.
pub fn parse_records(text: &str, claims_per_graph: usize) -> Result<Vec<CheckRecord>, LabError> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let mut out = Vec::new();
    for (i, line) in lines.iter().enumerate() {
        if line.starts_with("{\"summary\"") {
            continue;
        }
        match CheckRecord::from_json(line) {
            Ok(r) => out.push(r),
            Err(_) if i + 1 == lines.len() => {}
            Err(e) => return Err(e),
        }
    }
    if let Some(last) = out.last().cloned() {
        let tail = out
            .iter()
            .rev()
            .take_while(|r| r.n == last.n && r.g6 == last.g6)
            .count();
        if tail < claims_per_graph {
            out.truncate(out.len() - tail);
        }
    }
    Ok(out)
}

/// Checks every claim on every `K_{r+1}`-free graph with `n_min <= n <=
/// n_max`, appending JSONL records to `out` after those in `prior`. The
/// summary covers `prior` and the new records; it is returned, not written.
pub fn sweep(
    opts: &SweepOptions,
    prior: &[CheckRecord],
    out: &mut dyn Write,
) -> Result<Summary, LabError> {
    let mut summary = Summary::tally(prior);
    summary.resumed = prior.len();
    if opts.claims.is_empty() || opts.n_min > opts.n_max {
        return Ok(summary);
    }
    let levels = Enumerator::new(opts.r_plus_1)?
        .with_limit(opts.limit)
        .regular_only(opts.regular_only)
        .levels(opts.n_max)?;
    let mut cursor = prior.last().map(|r| (r.n, r.g6.clone()));
    for n in opts.n_min.max(1)..=opts.n_max {
        let level = &levels[n - 1];
        let start = match &cursor {
            Some((cn, _)) if *cn > n => continue,
            Some((cn, g6)) if *cn == n => {
                let at = level
                    .iter()
                    .position(|g| &g.to_graph6() == g6)
                    .ok_or_else(|| {
                        LabError::BadRecord(format!("resume cursor {g6} not found at n = {n}"))
                    })?;
                cursor = None;
                at + 1
            }
            Some(_) => {
                return Err(LabError::BadRecord(
                    "resume cursor lies outside the requested range".into(),
                ))
            }
            None => 0,
        };
        for chunk in level[start..].chunks(256) {
            let batch: Vec<Vec<CheckRecord>> = chunk
                .par_iter()
                .map(|g| {
                    opts.claims
                        .iter()
                        .map(|&c| check(g, c, &opts.check))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()?;
            for recs in batch {
                summary.graphs += 1;
                for rec in recs {
                    writeln!(out, "{}", rec.to_json())?;
                    summary.add(&rec);
                }
            }
            out.flush()?;
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_claim_list_gives_empty_stream() {
        let mut buf = Vec::new();
        let s = sweep(&SweepOptions::new(4, 6, 3, vec![]), &[], &mut buf).unwrap();
        assert!(buf.is_empty());
        assert_eq!(s.records, 0);
    }

    #[test]
    fn resume_continues_where_it_stopped() {
        let opts = SweepOptions::new(3, 6, 3, vec![ClaimId::T1, ClaimId::Raz]);
        let mut full = Vec::new();
        let whole = sweep(&opts, &[], &mut full).unwrap();
        let text = String::from_utf8(full).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        // cut inside a graph's group and inside a line
        let cut = format!("{}\n{}", lines[..23].join("\n"), &lines[23][..10]);
        let prior = parse_records(&cut, 2).unwrap();
        assert_eq!(prior.len(), 22);
        let mut rest = Vec::new();
        let resumed = sweep(&opts, &prior, &mut rest).unwrap();
        let mut joined: Vec<String> = prior.iter().map(CheckRecord::to_json).collect();
        joined.extend(String::from_utf8(rest).unwrap().lines().map(String::from));
        assert_eq!(joined, lines);
        assert_eq!(resumed.resumed, 22);
        assert_eq!(
            (
                resumed.records,
                resumed.graphs,
                resumed.equality_witnesses.clone()
            ),
            (
                whole.records,
                whole.graphs,
                whole.equality_witnesses.clone()
            )
        );
    }
}
