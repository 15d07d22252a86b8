//! Plain-text chain format: a header line `dt <d>` or `ct <d>` followed by
//! `d` rows of `d` whitespace-separated reals holding the transient block.

use super::{AbsorbingChainCT, AbsorbingChainDT, AnyChain, ChainKind};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use std::fmt::Write as _;

pub fn parse_chain(text: &str) -> Result<AnyChain> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty chain file".into()))?;
    let mut head = header.split_whitespace();
    let kind = match head.next() {
        Some("dt") => ChainKind::Dt,
        Some("ct") => ChainKind::Ct,
        other => {
            return Err(Error::Parse(format!(
                "expected `dt` or `ct` header, found {other:?}"
            )))
        }
    };
    let d: usize = head
        .next()
        .and_then(|s| s.parse().ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::Parse(format!("bad dimension in header `{header}`")))?;
    if head.next().is_some() {
        return Err(Error::Parse(format!(
            "trailing tokens in header `{header}`"
        )));
    }
    let mut entries = Vec::with_capacity(d * d);
    for row in 0..d {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing row {row}")))?;
        let values = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad number `{tok}` in row {row}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != d {
            return Err(Error::Parse(format!(
                "row {row} has {} entries, expected {d}",
                values.len()
            )));
        }
        entries.extend(values);
    }
    if lines.next().is_some() {
        return Err(Error::Parse(format!("more than {d} rows")));
    }
    let q = DMatrix::from_row_slice(d, d, &entries);
    Ok(match kind {
        ChainKind::Dt => AnyChain::Dt(AbsorbingChainDT::new(q)?),
        ChainKind::Ct => AnyChain::Ct(AbsorbingChainCT::new(q)?),
    })
}

/// Writes the chain with round-trip exact float formatting.
pub fn write_chain(chain: &AnyChain) -> String {
    let q = chain.q();
    let d = q.nrows();
    let mut out = format!("{} {d}\n", chain.kind());
    for i in 0..d {
        let row: Vec<String> = (0..d).map(|j| format!("{:?}", q[(i, j)])).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
