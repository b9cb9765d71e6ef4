//! Coefficient cache files:
//!
//! ```text
//! poincare m=1 k=4 N=9 kind=weak
//! policy c_max=1350 bits=128
//! 2 1.99999995... +- 3.6e-6
//! ```

use std::collections::BTreeMap;

use super::{CoefficientKind, PoincareError, PoincareParams};
use crate::numerics::BallReal;

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    pub params: PoincareParams,
    pub kind: CoefficientKind,
    pub c_max: u64,
    pub bits: u32,
    pub entries: BTreeMap<i64, BallReal>,
}

impl CoefficientTable {
    pub fn new(params: PoincareParams, kind: CoefficientKind, c_max: u64, bits: u32) -> CoefficientTable {
        CoefficientTable { params, kind, c_max, bits, entries: BTreeMap::new() }
    }

    pub fn file_name(&self) -> String {
        format!("poincare-{}-m{}-k{}-N{}.txt", self.kind.as_str(), self.params.m, self.params.k, self.params.level)
    }

    pub fn serialize(&self) -> String {
        let p = &self.params;
        let mut s = format!("poincare m={} k={} N={} kind={}\n", p.m, p.k, p.level, self.kind.as_str());
        s.push_str(&format!("policy c_max={} bits={}\n", self.c_max, self.bits));
        for (n, b) in &self.entries {
            s.push_str(&format!("{n} {b}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<CoefficientTable, PoincareError> {
        let err = |line: usize, msg: String| PoincareError::Parse { line, msg };
        let mut lines = text.lines().enumerate();
        let header = lines.next().map(|(_, l)| l).unwrap_or("");
        let fields = key_values(header, "poincare").ok_or_else(|| err(1, format!("bad header `{header}`")))?;
        let get = |k: &str| fields.iter().find(|(a, _)| a == k).map(|(_, v)| v.as_str());
        let num = |k: &str| get(k).and_then(|v| v.parse::<u64>().ok()).ok_or_else(|| err(1, format!("missing {k}")));
        let (m, k, level) = (num("m")?, num("k")?, num("N")?);
        let kind = get("kind").and_then(CoefficientKind::parse).ok_or_else(|| err(1, "bad kind".into()))?;
        let params = PoincareParams::new(m, k as u32, level).map_err(|e| err(1, e.to_string()))?;
        let policy_line = lines.next().map(|(_, l)| l).unwrap_or("");
        let policy = key_values(policy_line, "policy").ok_or_else(|| err(2, format!("bad policy line `{policy_line}`")))?;
        let pget = |k: &str| policy.iter().find(|(a, _)| a == k).and_then(|(_, v)| v.parse::<u64>().ok());
        let c_max = pget("c_max").ok_or_else(|| err(2, "missing c_max".into()))?;
        let bits = pget("bits").ok_or_else(|| err(2, "missing bits".into()))? as u32;
        let mut table = CoefficientTable::new(params, kind, c_max, bits);
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let (n, ball) = line.trim().split_once(' ').ok_or_else(|| err(i + 1, format!("bad entry `{line}`")))?;
            let n: i64 = n.parse().map_err(|_| err(i + 1, format!("bad index `{n}`")))?;
            let ball: BallReal = ball.parse().map_err(|e| err(i + 1, format!("{e}")))?;
            table.entries.insert(n, ball);
        }
        Ok(table)
    }
}

fn key_values(line: &str, tag: &str) -> Option<Vec<(String, String)>> {
    let mut parts = line.split_whitespace();
    if parts.next()? != tag {
        return None;
    }
    parts.map(|p| p.split_once('=').map(|(a, b)| (a.to_string(), b.to_string()))).collect()
}
