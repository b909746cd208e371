//! Constructive lemmas as total procedures.
//!
//! Every operation either returns the red structure the lemma promises or an
//! explicit blue cycle, together with the ordered list of edges it probed.
//! Nothing is assumed about the coloring; the "no blue cycle" hypothesis of
//! each lemma becomes the second branch of the result.

use std::collections::HashMap;

use serde::Serialize;

use crate::core::{Color, Edge, KUniformColoring, LooseCycle};

mod branch;
mod c2;
pub mod checks;
mod frame;
mod halfcycle;
mod ladder;
mod pair;
mod stepdown;
mod trace;
mod walk;

pub use branch::{branch_paths, BranchPair};
pub use c2::find_mono_c2;
pub use halfcycle::{half_cycle_even, half_cycle_odd};
pub use ladder::{ladder_extend, ladder_pair, ladder_start, Extended, LadderState, Stage};
pub use pair::{red_pair_path, red_pair_path_strong, FreeSide, PairParams};
pub use stepdown::{step_down_1, step_down_2};
pub use trace::{outcome_json, probes_json, trace_json, Witness};

/// One probed edge and its color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Probe {
    pub edge: Edge,
    pub color: Color,
}

/// The lemma's red structure, or a blue cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dichotomy<R> {
    Red(R),
    Blue(LooseCycle),
}

impl<R> Dichotomy<R> {
    pub fn is_red(&self) -> bool {
        matches!(self, Dichotomy::Red(_))
    }

    pub fn blue(&self) -> Option<&LooseCycle> {
        match self {
            Dichotomy::Blue(c) => Some(c),
            Dichotomy::Red(_) => None,
        }
    }

    pub fn red(&self) -> Option<&R> {
        match self {
            Dichotomy::Red(r) => Some(r),
            Dichotomy::Blue(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome<R> {
    pub result: Dichotomy<R>,
    pub trace: Vec<Probe>,
}

/// Reads colors and records the first probe of every edge.
pub(crate) struct Prober<'a> {
    c: &'a KUniformColoring,
    seen: HashMap<Edge, Color>,
    trace: Vec<Probe>,
}

impl<'a> Prober<'a> {
    pub(crate) fn new(c: &'a KUniformColoring) -> Prober<'a> {
        Prober { c, seen: HashMap::new(), trace: Vec::new() }
    }

    pub(crate) fn probe(&mut self, e: &Edge) -> Color {
        if let Some(&c) = self.seen.get(e) {
            return c;
        }
        let c = self.c.color(e);
        self.seen.insert(e.clone(), c);
        self.trace.push(Probe { edge: e.clone(), color: c });
        c
    }

    /// Record the probes of a sub-lemma.
    pub(crate) fn absorb(&mut self, trace: &[Probe]) {
        for p in trace {
            if !self.seen.contains_key(&p.edge) {
                self.seen.insert(p.edge.clone(), p.color);
                self.trace.push(p.clone());
            }
        }
    }

    pub(crate) fn is_red(&mut self, e: &Edge) -> bool {
        self.probe(e) == Color::Red
    }

    pub(crate) fn finish<R>(self, result: Dichotomy<R>) -> Outcome<R> {
        Outcome { result, trace: self.trace }
    }

    pub(crate) fn trace(&self) -> &[Probe] {
        &self.trace
    }
}

pub(crate) fn construction_error(op: &'static str, detail: impl Into<String>, candidate: Option<Edge>, p: &Prober) -> crate::Error {
    crate::Error::Construction { op, detail: detail.into(), candidate, trace: p.trace().to_vec() }
}

/// Establish each target in turn, then assemble the final structure.
pub(crate) fn run_claims<L: walk::Claims>(
    l: &L,
    prober: &mut Prober,
    targets: &[u64],
    fin: impl FnOnce() -> Option<L::Out>,
) -> std::result::Result<Dichotomy<L::Out>, (String, Option<Edge>)> {
    let mut w = walk::Walker::new(prober);
    for &t in targets {
        match w.claim(l, t) {
            walk::Claim::Holds => {}
            walk::Claim::Red(o) => return Ok(Dichotomy::Red(o)),
            walk::Claim::Blue(c) => return Ok(Dichotomy::Blue(c)),
            walk::Claim::Stuck => return Err(("claim walk found no usable move".into(), Some(l.frame().edge(t)))),
        }
    }
    fin().map(Dichotomy::Red).ok_or_else(|| ("red targets do not satisfy the lemma".into(), None))
}

pub(crate) fn wrap<R>(
    op: &'static str,
    res: std::result::Result<Dichotomy<R>, (String, Option<Edge>)>,
    prober: Prober,
) -> crate::Result<Outcome<R>> {
    match res {
        Ok(d) => Ok(prober.finish(d)),
        Err((detail, cand)) => Err(construction_error(op, detail, cand, &prober)),
    }
}
