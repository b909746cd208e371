use serde_json::{json, Value};

use crate::core::{Edge, LooseCycle, LoosePath};

use super::{BranchPair, Dichotomy, Extended, Outcome, Probe};

/// A red structure as `(variant, edge lists)`.
pub trait Witness {
    fn parts(&self) -> (&'static str, Vec<Vec<Edge>>);
}

impl Witness for LoosePath {
    fn parts(&self) -> (&'static str, Vec<Vec<Edge>>) {
        ("RedPath", vec![self.edges().to_vec()])
    }
}

impl Witness for LooseCycle {
    fn parts(&self) -> (&'static str, Vec<Vec<Edge>>) {
        ("RedCycle", vec![self.edges().to_vec()])
    }
}

impl Witness for BranchPair {
    fn parts(&self) -> (&'static str, Vec<Vec<Edge>>) {
        ("RedPaths", vec![self.e1.edges().to_vec(), self.f1.edges().to_vec()])
    }
}

impl Witness for Extended {
    fn parts(&self) -> (&'static str, Vec<Vec<Edge>>) {
        match self {
            Extended::State(s) => ("RedPaths", vec![s.epath_edges(), s.fpath_edges()]),
            Extended::Path(p) => p.parts(),
        }
    }
}

fn edges_json(es: &[Edge]) -> Value {
    Value::Array(es.iter().map(|e| json!(e.vertices())).collect())
}

pub fn probes_json(trace: &[Probe]) -> Value {
    serde_json::to_value(trace).expect("probes serialize")
}

/// The outcome part of a trace. Single structures list their edges; pairs
/// of paths list one edge array per path.
pub fn outcome_json<R: Witness>(d: &Dichotomy<R>) -> Value {
    let (variant, mut parts) = match d {
        Dichotomy::Red(r) => r.parts(),
        Dichotomy::Blue(c) => ("BlueCycle", vec![c.edges().to_vec()]),
    };
    let structure = if parts.len() == 1 {
        edges_json(&parts.remove(0))
    } else {
        Value::Array(parts.iter().map(|p| edges_json(p)).collect())
    };
    json!({ "variant": variant, "structure": structure })
}

/// `{"op", "params", "probes", "outcome"}` for a finished lemma call.
pub fn trace_json<R: Witness>(op: &str, params: Value, o: &Outcome<R>) -> Value {
    json!({ "op": op, "params": params, "probes": probes_json(&o.trace), "outcome": outcome_json(&o.result) })
}
