//! DIMACS export of "some coloring of K^k_N avoids a red C_n and a blue C_m".
//!
//! Variable `r + 1` is true iff the edge of colex rank `r` is red.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use bitvec::prelude::*;
use serde::Serialize;

use crate::core::{binomial, ColoringSource, KUniformColoring};
use crate::detect::{arrows, enumerate_copies};
use crate::error::{Error, Result};

pub const DEFAULT_CLAUSE_BUDGET: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CnfInstance {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub var_count: u64,
    pub clauses: Vec<Vec<i64>>,
    /// Copies of `C^k_n` and of `C^k_m`.
    pub copy_counts: (usize, usize),
}

/// Rough count of unordered copies of `C^k_n` on `big_n` vertices.
fn estimate_copies(big_n: usize, k: usize, n: usize) -> f64 {
    let span = n * (k - 1);
    if span > big_n {
        return 0.0;
    }
    let ordered: f64 = (0..span).map(|i| (big_n - i) as f64).product();
    let interior: f64 = (1..k.saturating_sub(1)).map(|i| i as f64).product::<f64>().powi(n as i32);
    ordered / (2.0 * n as f64 * interior)
}

pub fn build_cnf(k: usize, n: usize, m: usize, big_n: usize, budget: u64) -> Result<CnfInstance> {
    if k < 2 || n < 2 || m < 2 || big_n < k {
        return Err(Error::InvalidParameters(format!("k={k}, n={n}, m={m}, N={big_n}")));
    }
    let est = estimate_copies(big_n, k, n) + estimate_copies(big_n, k, m);
    if est > budget as f64 {
        return Err(Error::BudgetExceeded(format!("about {est:.0} clauses, budget {budget}")));
    }
    let var_count = binomial(big_n as u64, k as u64).expect("small after the budget check");
    let red = enumerate_copies(big_n, k, n, true)?;
    let blue = enumerate_copies(big_n, k, m, true)?;
    let lit = |r: u64| r as i64 + 1;
    let clauses: BTreeSet<Vec<i64>> = red
        .iter()
        .map(|c| c.iter().map(|&r| -lit(r)).rev().collect())
        .chain(blue.iter().map(|c| c.iter().map(|&r| lit(r)).collect()))
        .collect();
    Ok(CnfInstance { k, n, m, big_n, var_count, clauses: clauses.into_iter().collect(), copy_counts: (red.len(), blue.len()) })
}

impl CnfInstance {
    pub fn to_dimacs(&self) -> String {
        let (k, n, m) = (self.k, self.n, self.m);
        let mut s = String::new();
        let _ = writeln!(s, "c loose-ramsey k={k} n={n} m={m} N={}", self.big_n);
        let _ = writeln!(s, "c variable r+1 is true iff the edge of colex rank r is red");
        let _ = writeln!(s, "c {} red C^{k}_{n} copies, {} blue C^{k}_{m} copies", self.copy_counts.0, self.copy_counts.1);
        let _ = writeln!(s, "p cnf {} {}", self.var_count, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(s, "{l} ");
            }
            s.push_str("0\n");
        }
        s
    }
}

/// Writes the DIMACS file and returns the instance.
pub fn export_cnf(k: usize, n: usize, m: usize, big_n: usize, path: impl AsRef<Path>) -> Result<CnfInstance> {
    let inst = build_cnf(k, n, m, big_n, DEFAULT_CLAUSE_BUDGET)?;
    std::fs::write(path, inst.to_dimacs())?;
    Ok(inst)
}

fn header_field(line: &str, key: &str) -> Option<usize> {
    line.split_whitespace().find_map(|t| t.strip_prefix(key)?.strip_prefix('=')?.parse().ok())
}

/// Reads a file written by [`export_cnf`].
pub fn parse_cnf(text: &str) -> Result<CnfInstance> {
    let bad = |s: &str| Error::Format(format!("cnf: {s}"));
    let head = text.lines().find(|l| l.starts_with("c loose-ramsey")).ok_or_else(|| bad("missing loose-ramsey header"))?;
    let field = |key| header_field(head, key).ok_or_else(|| bad(&format!("header lacks {key}")));
    let (k, n, m, big_n) = (field("k")?, field("n")?, field("m")?, field("N")?);
    let mut declared = None;
    let mut clauses = Vec::new();
    let mut cur = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('c')) {
        if let Some(rest) = line.strip_prefix("p cnf") {
            let v: Vec<u64> = rest.split_whitespace().map(|t| t.parse().map_err(|_| bad(line))).collect::<Result<_>>()?;
            declared = Some((*v.first().ok_or_else(|| bad(line))?, *v.get(1).ok_or_else(|| bad(line))?));
            continue;
        }
        for t in line.split_whitespace() {
            let l: i64 = t.parse().map_err(|_| bad(&format!("bad literal {t}")))?;
            if l == 0 {
                clauses.push(std::mem::take(&mut cur));
            } else {
                cur.push(l);
            }
        }
    }
    let (var_count, n_clauses) = declared.ok_or_else(|| bad("missing p line"))?;
    if !cur.is_empty() || clauses.len() as u64 != n_clauses {
        return Err(bad("clause count does not match the p line"));
    }
    if binomial(big_n as u64, k as u64) != Some(var_count) {
        return Err(bad("variable count does not match C(N,k)"));
    }
    let neg = clauses.iter().filter(|c| c.first().is_some_and(|&l| l < 0)).count();
    Ok(CnfInstance { k, n, m, big_n, var_count, copy_counts: (neg, clauses.len() - neg), clauses })
}

/// Literals from solver output. Accepts plain literal lists and the
/// `s`/`v` line format; `UNSAT` answers are an error.
pub fn parse_model(text: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim) {
        let upper = line.to_ascii_uppercase();
        if upper.contains("UNSAT") {
            return Err(Error::InvalidModel("solver reported UNSAT".into()));
        }
        if line.is_empty() || line.starts_with('c') || line.starts_with('s') || upper.starts_with("SAT") {
            continue;
        }
        let body = line.strip_prefix('v').unwrap_or(line);
        for t in body.split_whitespace() {
            let l: i64 = t.parse().map_err(|_| Error::InvalidModel(format!("bad literal {t}")))?;
            if l != 0 {
                out.push(l);
            }
        }
    }
    Ok(out)
}

/// The coloring a model describes, checked against every clause and against
/// the arrowing detector.
pub fn decode_model(inst: &CnfInstance, model: &[i64]) -> Result<KUniformColoring> {
    let nv = inst.var_count as usize;
    let mut val: Vec<Option<bool>> = vec![None; nv];
    for &l in model {
        let v = l.unsigned_abs() as usize;
        if v == 0 || v > nv {
            return Err(Error::InvalidModel(format!("literal {l} out of range 1..={nv}")));
        }
        if val[v - 1].is_some_and(|b| b != (l > 0)) {
            return Err(Error::InvalidModel(format!("variable {v} assigned both ways")));
        }
        val[v - 1] = Some(l > 0);
    }
    let val: Vec<bool> = val
        .iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::InvalidModel(format!("variable {} unassigned", i + 1))))
        .collect::<Result<_>>()?;
    let holds = |l: i64| val[l.unsigned_abs() as usize - 1] == (l > 0);
    if let Some(c) = inst.clauses.iter().find(|c| !c.iter().any(|&l| holds(l))) {
        return Err(Error::InvalidModel(format!("clause {c:?} is violated")));
    }
    let bits: BitVec<u64, Lsb0> = val.iter().copied().collect();
    let c = KUniformColoring::new(inst.big_n, inst.k, ColoringSource::Bitmap(bits))?;
    if arrows(&c, inst.n, inst.m).holds {
        return Err(Error::InvalidModel("decoded coloring contains a target structure".into()));
    }
    Ok(c)
}

/// One literal per edge: positive for red.
pub fn encode_model(c: &KUniformColoring) -> Result<Vec<i64>> {
    let bits = c.to_bits()?;
    Ok(bits.iter().by_vals().enumerate().map(|(r, red)| if red { r as i64 + 1 } else { -(r as i64 + 1) }).collect())
}
