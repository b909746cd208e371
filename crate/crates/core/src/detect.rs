//! Brute-force detection of monochromatic loose paths and cycles, and the
//! exhaustive / randomized Ramsey drivers built on it.
//!
//! Everything here works on edge bitmasks over at most 64 vertices and is
//! meant for desk-scale instances.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::core::{
    binomial, random_coloring, splitmix64, Color, ColoringSource, Edge, KSubsets, KUniformColoring, LooseCycle,
    LoosePath, Rule, Structure,
};
use crate::error::{Error, Result};

/// Default exhaustive budget: at most 2^24 colorings.
pub const DEFAULT_BUDGET_BITS: u32 = 24;

fn mask_edge(m: u64) -> Edge {
    crate::core::colex::mask_to_edge(u128::from(m))
}

/// Edges of one color, in colex order, with a per-vertex incidence list.
struct EdgeIndex {
    masks: Vec<u64>,
    by_vertex: Vec<Vec<u32>>,
}

impl EdgeIndex {
    fn build(c: &KUniformColoring, col: Color) -> EdgeIndex {
        let (n, k) = (c.n(), c.k());
        assert!(n <= 64, "detection is limited to 64 vertices");
        let by_rank = matches!(c.source(), ColoringSource::Bitmap(_) | ColoringSource::Rule(Rule::Hash { .. }));
        let mut masks = Vec::new();
        for (r, m) in KSubsets::new(n, k).expect("n <= 64").enumerate() {
            let got = if by_rank { c.color_rank(r as u64).expect("in range") } else { c.color(&mask_edge(m)) };
            if got == col {
                masks.push(m);
            }
        }
        EdgeIndex::from_masks(n, masks)
    }

    fn from_masks(n: usize, masks: Vec<u64>) -> EdgeIndex {
        let mut by_vertex = vec![Vec::new(); n];
        for (i, &m) in masks.iter().enumerate() {
            let mut x = m;
            while x != 0 {
                by_vertex[x.trailing_zeros() as usize].push(i as u32);
                x &= x - 1;
            }
        }
        EdgeIndex { masks, by_vertex }
    }

    fn complete(n: usize, k: usize) -> EdgeIndex {
        EdgeIndex::from_masks(n, KSubsets::new(n, k).expect("n <= 64").collect())
    }
}

fn bits(m: u64) -> impl Iterator<Item = usize> {
    let mut x = m;
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            b
        })
    })
}

/// Depth-first search over loose cycles (`cycle = true`) or paths. Each
/// completed copy is passed to `found` as edge indices in traversal order;
/// returning `true` stops the search.
struct Search<'a, F: FnMut(&[u32]) -> bool> {
    idx: &'a EdgeIndex,
    n_edges: usize,
    k: usize,
    cycle: bool,
    close: u64,
    stack: Vec<u32>,
    found: F,
}

impl<'a, F: FnMut(&[u32]) -> bool> Search<'a, F> {
    fn run(&mut self, n_vertices: usize) -> bool {
        let needed = if self.cycle { self.n_edges * (self.k - 1) } else { self.n_edges * (self.k - 1) + 1 };
        if n_vertices < needed || self.n_edges == 0 {
            return false;
        }
        if self.cycle && self.n_edges == 2 {
            return self.run_two();
        }
        for e1 in 0..self.idx.masks.len() as u32 {
            let m1 = self.idx.masks[e1 as usize];
            self.stack.push(e1);
            if !self.cycle {
                if self.n_edges == 1 {
                    if (self.found)(&self.stack) {
                        return true;
                    }
                } else if self.extend(m1, m1, 0, e1) {
                    return true;
                }
            } else {
                // `a` is where the cycle closes; e1 has the smallest rank
                for a in bits(m1) {
                    self.close = 1u64 << a;
                    if self.extend(m1, m1, self.close, e1) {
                        return true;
                    }
                }
            }
            self.stack.pop();
        }
        false
    }

    fn run_two(&mut self) -> bool {
        let masks = &self.idx.masks;
        for e in 0..masks.len() {
            for x in bits(masks[e]) {
                for &f in &self.idx.by_vertex[x] {
                    let f = f as usize;
                    let shared = masks[e] & masks[f];
                    // report each pair once: f later, x the smaller shared vertex
                    if f > e && shared.count_ones() == 2 && shared.trailing_zeros() as usize == x {
                        self.stack.clear();
                        self.stack.extend([e as u32, f as u32]);
                        if (self.found)(&self.stack) {
                            return true;
                        }
                    }
                }
            }
        }
        self.stack.clear();
        false
    }

    /// `front` is the last edge placed, `entry` its link to the previous one
    /// (or the closing vertex for the first edge of a cycle).
    fn extend(&mut self, used: u64, front: u64, entry: u64, e1: u32) -> bool {
        let depth = self.stack.len();
        let last = depth + 1 == self.n_edges;
        for x in bits(front & !entry) {
            for i in 0..self.idx.by_vertex[x].len() {
                let g = self.idx.by_vertex[x][i];
                if self.cycle && g <= e1 {
                    continue;
                }
                let gm = self.idx.masks[g as usize];
                let meet = gm & used;
                let ok = if self.cycle && last {
                    meet == (1u64 << x) | self.close && self.close != 1u64 << x
                } else {
                    meet == 1u64 << x
                };
                if !ok {
                    continue;
                }
                self.stack.push(g);
                let done = if last { (self.found)(&self.stack) } else { self.extend(used | gm, gm, 1u64 << x, e1) };
                if done {
                    return true;
                }
                self.stack.pop();
            }
        }
        false
    }
}

fn search<F: FnMut(&[u32]) -> bool>(idx: &EdgeIndex, n_vertices: usize, k: usize, n_edges: usize, cycle: bool, found: F) {
    let mut s = Search { idx, n_edges, k, cycle, close: 0, stack: Vec::new(), found };
    s.run(n_vertices);
}

fn first_copy(c: &KUniformColoring, col: Color, n: usize, cycle: bool) -> Option<Vec<Edge>> {
    let needed = if cycle { n * (c.k() - 1) } else { n * (c.k() - 1) + 1 };
    if n == 0 || (cycle && n < 2) || c.n() < needed {
        return None;
    }
    let idx = EdgeIndex::build(c, col);
    let mut out = None;
    search(&idx, c.n(), c.k(), n, cycle, |s| {
        out = Some(s.iter().map(|&i| mask_edge(idx.masks[i as usize])).collect());
        true
    });
    out
}

/// A loose cycle of `n` edges all colored `col`, if one exists.
///
/// Panics if the coloring has more than 64 vertices.
pub fn find_mono_cycle(c: &KUniformColoring, col: Color, n: usize) -> Option<LooseCycle> {
    let edges = first_copy(c, col, n, true)?;
    let cyc = LooseCycle::from_edges(edges).expect("search yields loose cycles").normalized();
    debug_assert!(cyc.is_monochromatic(c, col));
    Some(cyc)
}

pub fn find_mono_path(c: &KUniformColoring, col: Color, n: usize) -> Option<LoosePath> {
    let edges = first_copy(c, col, n, false)?;
    let p = LoosePath::from_edges(edges).expect("search yields loose paths").normalized();
    debug_assert!(p.is_monochromatic(c, col));
    Some(p)
}

/// Every copy of `C^k_n` (or `P^k_n`) in the complete k-graph on `n_vertices`
/// vertices, as sorted colex ranks, deduplicated and sorted.
pub fn enumerate_copies(n_vertices: usize, k: usize, n: usize, cycle: bool) -> Result<Vec<Vec<u64>>> {
    if n_vertices > 64 {
        return Err(Error::BudgetExceeded(format!("copy enumeration needs N <= 64, got {n_vertices}")));
    }
    if k == 0 || n_vertices < k || n == 0 || (cycle && n < 2) {
        return Ok(Vec::new());
    }
    let idx = EdgeIndex::complete(n_vertices, k);
    let mut set = BTreeSet::new();
    search(&idx, n_vertices, k, n, cycle, |s| {
        let mut r: Vec<u64> = s.iter().map(|&i| u64::from(i)).collect();
        r.sort_unstable();
        set.insert(r);
        false
    });
    Ok(set.into_iter().collect())
}

#[derive(Clone, Debug)]
pub struct ArrowVerdict {
    pub holds: bool,
    pub witness: Option<(Color, Structure)>,
    pub counterexample: Option<KUniformColoring>,
}

/// Whether `c` contains a red `C^k_n` or a blue `C^k_m`.
pub fn arrows(c: &KUniformColoring, n: usize, m: usize) -> ArrowVerdict {
    let witness = find_mono_cycle(c, Color::Red, n)
        .map(|w| (Color::Red, Structure::Cycle(w)))
        .or_else(|| find_mono_cycle(c, Color::Blue, m).map(|w| (Color::Blue, Structure::Cycle(w))));
    let holds = witness.is_some();
    ArrowVerdict { holds, witness, counterexample: (!holds).then(|| c.clone()) }
}

/// Arrowing test on colorings given as red-edge bitmasks, for `C(N,k) <= 64`.
#[derive(Clone, Debug)]
pub struct MaskTester {
    red: Vec<u64>,
    blue: Vec<u64>,
}

impl MaskTester {
    pub fn new(k: usize, n: usize, m: usize, n_vertices: usize) -> Result<MaskTester> {
        let total = binomial(n_vertices as u64, k as u64).unwrap_or(u64::MAX);
        if total > 64 {
            return Err(Error::BudgetExceeded(format!("mask tester needs C(N,k) <= 64, got {total}")));
        }
        let pack = |copies: Vec<Vec<u64>>| -> Vec<u64> {
            copies.iter().map(|c| c.iter().fold(0u64, |acc, &r| acc | 1 << r)).collect()
        };
        Ok(MaskTester {
            red: pack(enumerate_copies(n_vertices, k, n, true)?),
            blue: pack(enumerate_copies(n_vertices, k, m, true)?),
        })
    }

    pub fn arrows(&self, red_edges: u64) -> bool {
        self.red.iter().any(|&c| c & red_edges == c) || self.blue.iter().any(|&c| c & red_edges == 0)
    }

    fn arrows_coloring(&self, c: &KUniformColoring) -> bool {
        let bits = c.to_bits().expect("small coloring");
        self.arrows(bits.iter().by_vals().enumerate().fold(0u64, |acc, (i, b)| acc | (u64::from(b) << i)))
    }
}

fn coloring_from_mask(n_vertices: usize, k: usize, mask: u64) -> KUniformColoring {
    let total = binomial(n_vertices as u64, k as u64).expect("small") as usize;
    let bits = (0..total).map(|i| mask >> i & 1 == 1).collect();
    KUniformColoring::new(n_vertices, k, ColoringSource::Bitmap(bits)).expect("sized")
}

#[derive(Clone, Debug)]
pub enum Exhaustive {
    AllArrow,
    /// The counterexample with the smallest red-edge mask.
    Counterexample(KUniformColoring),
}

/// Tests all `2^C(N,k)` colorings; `C(N,k)` may not exceed `budget_bits`.
pub fn ramsey_exhaustive(k: usize, n: usize, m: usize, n_vertices: usize, budget_bits: u32) -> Result<Exhaustive> {
    if k < 2 || n < 2 || m < 2 || n_vertices < k {
        return Err(Error::InvalidParameters(format!("k={k}, n={n}, m={m}, N={n_vertices}")));
    }
    let total = binomial(n_vertices as u64, k as u64).unwrap_or(u64::MAX);
    if total > u64::from(budget_bits.min(40)) {
        return Err(Error::BudgetExceeded(format!("C({n_vertices},{k}) = {total} edges exceeds the {budget_bits}-bit budget")));
    }
    let tester = MaskTester::new(k, n, m, n_vertices)?;
    let bad = (0..1u64 << total).into_par_iter().find_first(|&x| !tester.arrows(x));
    Ok(match bad {
        None => Exhaustive::AllArrow,
        Some(x) => Exhaustive::Counterexample(coloring_from_mask(n_vertices, k, x)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Randomized,
}

/// JSON evidence report. Colorings are listed as bitmap hex strings.
#[derive(Clone, Debug, Serialize)]
pub struct EvidenceReport {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub mode: Mode,
    pub verdict: String,
    pub witness: Option<String>,
    pub failures: Vec<String>,
    pub seed: Option<u64>,
    pub trials: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub fn exhaustive_report(k: usize, n: usize, m: usize, n_vertices: usize, budget_bits: u32) -> Result<EvidenceReport> {
    let res = ramsey_exhaustive(k, n, m, n_vertices, budget_bits)?;
    let (verdict, witness) = match res {
        Exhaustive::AllArrow => ("all_arrow".to_string(), None),
        Exhaustive::Counterexample(c) => ("counterexample".to_string(), Some(c.to_hex()?)),
    };
    let total = binomial(n_vertices as u64, k as u64).expect("within budget");
    Ok(EvidenceReport {
        k,
        n,
        m,
        big_n: n_vertices,
        mode: Mode::Exhaustive,
        verdict,
        witness,
        failures: Vec::new(),
        seed: None,
        trials: 1 << total,
        notes: Vec::new(),
    })
}

/// Seed of trial `t`.
pub fn trial_seed(seed: u64, t: u64) -> u64 {
    splitmix64(seed.wrapping_add(t))
}

/// Samples `trials` seeded colorings (plus any `injected` ones) and records
/// those that do not arrow `(C_n, C_m)`. Failures are listed injected first,
/// then by trial index.
pub fn ramsey_randomized(
    k: usize,
    n: usize,
    m: usize,
    n_vertices: usize,
    trials: u64,
    seed: u64,
    p_red: f64,
    injected: &[KUniformColoring],
) -> Result<EvidenceReport> {
    if trials == 0 {
        return Err(Error::InvalidParameters("trials must be at least 1".into()));
    }
    if n < 2 || m < 2 || n_vertices < k {
        return Err(Error::InvalidParameters(format!("k={k}, n={n}, m={m}, N={n_vertices}")));
    }
    for c in injected {
        if c.n() != n_vertices || c.k() != k {
            return Err(Error::InvalidParameters("injected coloring has the wrong shape".into()));
        }
    }
    let tester = MaskTester::new(k, n, m, n_vertices).ok();
    let fails = |c: &KUniformColoring| match &tester {
        Some(t) => !t.arrows_coloring(c),
        None => !arrows(c, n, m).holds,
    };
    let mut failures: Vec<KUniformColoring> = injected.iter().filter(|c| fails(c)).cloned().collect();
    let sampled: Vec<Option<KUniformColoring>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let c = random_coloring(n_vertices, k, trial_seed(seed, t), p_red)?;
            Ok(fails(&c).then_some(c))
        })
        .collect::<Result<_>>()?;
    failures.extend(sampled.into_iter().flatten());
    let verdict = if failures.is_empty() { "no_failures" } else { "failures" };
    Ok(EvidenceReport {
        k,
        n,
        m,
        big_n: n_vertices,
        mode: Mode::Randomized,
        verdict: verdict.into(),
        witness: None,
        failures: failures.iter().map(|c| c.to_hex()).collect::<Result<_>>()?,
        seed: Some(seed),
        trials: trials + injected.len() as u64,
        notes: Vec::new(),
    })
}
