//! Record serialization with a fixed field order, so that equal record
//! streams produce byte-identical reports.

use std::io::Write;

use crate::error::{Error, Result};
use crate::report::VerificationRecord;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    JsonLines,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json-lines" | "jsonl" => Ok(ReportFormat::JsonLines),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::Domain(format!("unknown report format `{s}`"))),
        }
    }
}

/// Parameters with skip status folded in as a `skipped` marker, so the
/// schema stays the same for every record.
fn effective_params(r: &VerificationRecord) -> std::collections::BTreeMap<String, i64> {
    let mut params = r.params.clone();
    if r.is_skip() {
        params.insert("skipped".into(), 1);
    }
    params
}

pub fn emit_report<W: Write>(
    records: &[VerificationRecord],
    format: ReportFormat,
    w: &mut W,
) -> Result<()> {
    match format {
        ReportFormat::JsonLines => {
            for r in records {
                let params = effective_params(r);
                let body: Vec<String> =
                    params.iter().map(|(k, v)| format!("\"{k}\":{v}")).collect();
                writeln!(
                    w,
                    "{{\"item\":\"{}\",\"p\":{},\"params\":{{{}}},\"lhs\":{},\"rhs\":{},\"ok\":{},\"elapsed_us\":{}}}",
                    r.item,
                    r.p,
                    body.join(","),
                    r.lhs,
                    r.rhs,
                    r.ok(),
                    r.elapsed_us
                )?;
            }
        }
        ReportFormat::Csv => {
            writeln!(w, "item,p,params,lhs,rhs,ok,elapsed_us")?;
            for r in records {
                let params = effective_params(r);
                let body: Vec<String> =
                    params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(
                    w,
                    "{},{},{},{},{},{},{}",
                    r.item,
                    r.p,
                    body.join(";"),
                    r.lhs,
                    r.rhs,
                    r.ok(),
                    r.elapsed_us
                )?;
            }
        }
    }
    Ok(())
}
