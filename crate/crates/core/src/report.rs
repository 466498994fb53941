//! The record type shared by every verifier: one checked identity,
//! with both sides and the outcome.

use std::collections::BTreeMap;

/// Outcome of one checked (item, modulus, parameters) triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The check did not apply (precondition unmet); carries the reason.
    Skip(String),
}

/// One verified identity: item id, modulus, parameters, both sides.
///
/// `lhs` is always the oracle (brute-force) side, `rhs` the closed
/// form or the paper's stated value. For sign identities both sides
/// are +-1; for congruences both are residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationRecord {
    pub item: String,
    pub p: u64,
    pub params: BTreeMap<String, i64>,
    pub lhs: i64,
    pub rhs: i64,
    pub status: Status,
    pub elapsed_us: u64,
}

impl VerificationRecord {
    pub fn check(
        item: impl Into<String>,
        p: u64,
        params: BTreeMap<String, i64>,
        lhs: i64,
        rhs: i64,
    ) -> Self {
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        VerificationRecord {
            item: item.into(),
            p,
            params,
            lhs,
            rhs,
            status,
            elapsed_us: 0,
        }
    }

    pub fn skip(
        item: impl Into<String>,
        p: u64,
        params: BTreeMap<String, i64>,
        reason: impl Into<String>,
    ) -> Self {
        VerificationRecord {
            item: item.into(),
            p,
            params,
            lhs: 0,
            rhs: 0,
            status: Status::Skip(reason.into()),
            elapsed_us: 0,
        }
    }

    pub fn ok(&self) -> bool {
        !matches!(self.status, Status::Fail)
    }

    pub fn is_skip(&self) -> bool {
        matches!(self.status, Status::Skip(_))
    }
}

/// Convenience for building parameter maps: `params!{"A" => 1, "n" => 5}`.
#[macro_export]
macro_rules! params {
    () => { std::collections::BTreeMap::new() };
    ($($k:expr => $v:expr),+ $(,)?) => {{
        let mut m = std::collections::BTreeMap::new();
        $( m.insert($k.to_string(), $v as i64); )+
        m
    }};
}
