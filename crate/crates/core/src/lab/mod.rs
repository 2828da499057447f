//! Exact checks of theorem and conjecture bounds on individual graphs,
//! batch sweeps over enumerated graphs, extremal search and the clique
//! packing ingredients of the `K_{r+1}`-free unbalanced cut bound.

mod claims;
mod extremal;
mod ks;
mod sweep;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gen::GenError;
use crate::graph::GraphError;
use crate::solver::SolverError;
use crate::Rational;

pub use claims::{check, CheckOptions};
pub use extremal::{extremal, Extremal};
pub use ks::{
    disjoint_cliques_exact, disjoint_cliques_greedy, independence_lower_bound, ks_ingredients,
    xyz_bound, KsRecord, XyzDecomposition, XyzParams, EXACT_COVER_MAX_N,
};
pub use sweep::{parse_records, sweep, Summary, SweepOptions};

#[derive(Debug, Error)]
pub enum LabError {
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("claim {claim} needs parameter `{param}`")]
    MissingParameter { claim: ClaimId, param: &'static str },
    #[error("n = {n} exceeds the guard of {limit}")]
    GuardExceeded { n: usize, limit: usize },
    #[error("invalid argument: {0}")]
    BadArgument(String),
    #[error("malformed record: {0}")]
    BadRecord(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl LabError {
    /// Whether the error is a size guard refusing the input.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            LabError::GuardExceeded { .. }
                | LabError::Solver(SolverError::GuardExceeded { .. })
                | LabError::Gen(GenError::GuardExceeded { .. })
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    /// `D_2^b <= n^2/16`, triangle-free, even `n`.
    T1,
    /// `D_3^b <= n^2/36`, triangle-free, `3 | n`.
    T5,
    /// `D_{2,inf}^b <= n^2/18`, triangle-free, even `n`.
    T6,
    /// `D_{3,inf}^b <= n^2/48 + slack`, triangle-free, `3 | n`.
    T7,
    /// Sparse half: `min_{|A| = floor(n/2)} e(A) <= 27 n^2 / 1024`.
    Raz,
    /// `D_3 <= n^2/121`, triangle-free.
    CD3,
    /// Sparse `floor(alpha n)`-subset threshold for triangle-free graphs.
    CUnb2,
    /// Unbalanced two-sided cut threshold for triangle-free graphs.
    CUnb,
    /// Balanced bipartition with `e(A) + e(B) <= n^2/9`, `K_4`-free, even `n`.
    K4A,
    /// `D_{2,inf}^b <= n^2/16`, `K_4`-free, even `n`.
    K4B,
    /// `D_3^b <= 4 n^2 / 81`, `K_4`-free, `3 | n`.
    K4C,
    /// `D_alpha <= (r-1)/(2r) (2 alpha - 1) n^2`, `K_{r+1}`-free.
    Ks,
}

impl ClaimId {
    pub const ALL: [ClaimId; 12] = [
        ClaimId::T1,
        ClaimId::T5,
        ClaimId::T6,
        ClaimId::T7,
        ClaimId::Raz,
        ClaimId::CD3,
        ClaimId::CUnb2,
        ClaimId::CUnb,
        ClaimId::K4A,
        ClaimId::K4B,
        ClaimId::K4C,
        ClaimId::Ks,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClaimId::T1 => "T1",
            ClaimId::T5 => "T5",
            ClaimId::T6 => "T6",
            ClaimId::T7 => "T7",
            ClaimId::Raz => "RAZ",
            ClaimId::CD3 => "C_D3",
            ClaimId::CUnb2 => "C_UNB2",
            ClaimId::CUnb => "C_UNB",
            ClaimId::K4A => "K4_A",
            ClaimId::K4B => "K4_B",
            ClaimId::K4C => "K4_C",
            ClaimId::Ks => "KS",
        }
    }

    /// Proven statements, as opposed to conjectures. A violation of one of
    /// these on a small graph is reported separately.
    pub fn is_proven(&self) -> bool {
        matches!(
            self,
            ClaimId::T1 | ClaimId::T5 | ClaimId::T6 | ClaimId::T7 | ClaimId::Raz | ClaimId::Ks
        )
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| LabError::UnknownClaim(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Satisfied,
    Equality,
    Violated,
    NotApplicable,
}

impl Status {
    pub fn compare(value: Rational, bound: Rational) -> Self {
        match value.cmp(&bound) {
            std::cmp::Ordering::Less => Status::Satisfied,
            std::cmp::Ordering::Equal => Status::Equality,
            std::cmp::Ordering::Greater => Status::Violated,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Class index per vertex.
    Partition(Vec<usize>),
    /// Sorted vertex list.
    Set(Vec<usize>),
}

/// Outcome of one claim on one graph. `g6` is canonical up to 16 vertices
/// and the witness refers to that labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub claim: ClaimId,
    pub g6: String,
    pub n: usize,
    pub value: Option<Rational>,
    pub bound: Option<Rational>,
    pub status: Status,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct Row {
    claim_id: String,
    g6: String,
    n: usize,
    value_num: Option<i64>,
    value_den: Option<i64>,
    bound_num: Option<i64>,
    bound_den: Option<i64>,
    status: Status,
    witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn split(r: Option<Rational>) -> (Option<i64>, Option<i64>) {
    match r {
        Some(r) => (Some(*r.numer() as i64), Some(*r.denom() as i64)),
        None => (None, None),
    }
}

fn join(num: Option<i64>, den: Option<i64>) -> Result<Option<Rational>, LabError> {
    match (num, den) {
        (Some(a), Some(b)) if b != 0 => Ok(Some(Rational::new(a as i128, b as i128))),
        (None, None) => Ok(None),
        _ => Err(LabError::BadRecord("bad rational".into())),
    }
}

impl CheckRecord {
    pub fn to_json(&self) -> String {
        let (value_num, value_den) = split(self.value);
        let (bound_num, bound_den) = split(self.bound);
        serde_json::to_string(&Row {
            claim_id: self.claim.to_string(),
            g6: self.g6.clone(),
            n: self.n,
            value_num,
            value_den,
            bound_num,
            bound_den,
            status: self.status,
            witness: self.witness.clone(),
            note: self.note.clone(),
        })
        .expect("records serialize")
    }

    pub fn from_json(line: &str) -> Result<Self, LabError> {
        let row: Row =
            serde_json::from_str(line).map_err(|e| LabError::BadRecord(e.to_string()))?;
        Ok(Self {
            claim: row.claim_id.parse()?,
            g6: row.g6,
            n: row.n,
            value: join(row.value_num, row.value_den)?,
            bound: join(row.bound_num, row.bound_den)?,
            status: row.status,
            witness: row.witness,
            note: row.note,
        })
    }
}
