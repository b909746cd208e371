//! Two disjoint blue loose cycles, the connector edges between them, and the
//! splice that turns two disjoint blue connectors into one blue cycle.
//!
//! Edge indices are 0-based; `e(i)` is edge `i` of `C1`, `f(j)` edge `j` of
//! `C2`, both taken cyclically.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::core::{splitmix64, Color, Edge, KUniformColoring, LooseCycle, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CycleConfiguration {
    coloring: KUniformColoring,
    c1: LooseCycle,
    c2: LooseCycle,
    w: Vec<Vertex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConnectorType {
    A,
    B,
    C,
    D,
}

impl ConnectorType {
    pub fn complement(self) -> ConnectorType {
        match self {
            ConnectorType::A => ConnectorType::B,
            ConnectorType::B => ConnectorType::A,
            ConnectorType::C => ConnectorType::D,
            ConnectorType::D => ConnectorType::C,
        }
    }

    /// Whether `v'` comes from `e_{i-1}` (else from `e_{i+1}`).
    fn v_prev(self) -> bool {
        matches!(self, ConnectorType::A | ConnectorType::C)
    }

    /// Whether `u'` comes from `f_{j+1}` (else from `f_{j-1}`).
    fn u_next(self) -> bool {
        matches!(self, ConnectorType::A | ConnectorType::D)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectorEdge {
    pub g: Edge,
    pub i: usize,
    pub j: usize,
    /// `E' + {v'}`.
    pub e_part: Vec<Vertex>,
    pub f_part: Vec<Vertex>,
    pub w_part: Vec<Vertex>,
    pub vprime: Vertex,
    pub uprime: Vertex,
    pub typ: ConnectorType,
    /// Every type the pair `(v', u')` qualifies for; several when a cycle
    /// has two edges.
    pub types: Vec<ConnectorType>,
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl CycleConfiguration {
    pub fn new(coloring: KUniformColoring, c1: LooseCycle, c2: LooseCycle) -> Result<CycleConfiguration> {
        let k = coloring.k();
        if c1.k() != k || c2.k() != k {
            return Err(Error::InvalidInput("cycle uniformity differs from the coloring".into()));
        }
        if c1.len() < 2 || c2.len() < c1.len() {
            return Err(Error::InvalidInput(format!("need l2 >= l1 >= 2, got l1={}, l2={}", c1.len(), c2.len())));
        }
        let v1 = c1.vertices();
        if c2.vertex_order().iter().any(|v| v1.contains(v)) {
            return Err(Error::InvalidInput("cycles are not vertex-disjoint".into()));
        }
        let all = c1.vertex_order().iter().chain(c2.vertex_order());
        if all.clone().any(|&v| v as usize >= coloring.n()) {
            return Err(Error::InvalidInput("cycle vertex outside the host".into()));
        }
        for e in c1.edges().iter().chain(c2.edges()) {
            if coloring.color(e) != Color::Blue {
                return Err(Error::InvalidInput(format!("cycle edge {e:?} is not blue")));
            }
        }
        let covered: BTreeSet<Vertex> = all.copied().collect();
        let w: Vec<Vertex> = (0..coloring.n() as Vertex).filter(|v| !covered.contains(v)).collect();
        if w.len() < 2 {
            return Err(Error::InvalidInput(format!("need at least 2 uncovered vertices, have {}", w.len())));
        }
        Ok(CycleConfiguration { coloring, c1, c2, w })
    }

    pub fn coloring(&self) -> &KUniformColoring {
        &self.coloring
    }

    pub fn c1(&self) -> &LooseCycle {
        &self.c1
    }

    pub fn c2(&self) -> &LooseCycle {
        &self.c2
    }

    pub fn w(&self) -> &[Vertex] {
        &self.w
    }

    pub fn k(&self) -> usize {
        self.coloring.k()
    }

    pub fn l1(&self) -> usize {
        self.c1.len()
    }

    pub fn l2(&self) -> usize {
        self.c2.len()
    }

    fn prev(len: usize, i: usize) -> usize {
        (i + len - 1) % len
    }

    /// Candidates for `v'` of the given side: `e_{i-1} - first` or
    /// `e_{i+1} - last`.
    pub fn v_candidates(&self, i: usize, prev: bool) -> Vec<Vertex> {
        side_candidates(&self.c1, i, prev)
    }

    /// Candidates for `u'`: `f_{j+1} - last` when `next`, else `f_{j-1} - first`.
    pub fn u_candidates(&self, j: usize, next: bool) -> Vec<Vertex> {
        side_candidates(&self.c2, j, !next)
    }

    pub fn with_coloring(&self, coloring: KUniformColoring) -> Result<CycleConfiguration> {
        CycleConfiguration::new(coloring, self.c1.clone(), self.c2.clone())
    }
}

fn side_candidates(c: &LooseCycle, i: usize, prev: bool) -> Vec<Vertex> {
    let len = c.len();
    if prev {
        let t = CycleConfiguration::prev(len, i);
        c.edge_in_order(t)[1..].to_vec()
    } else {
        let t = (i + 1) % len;
        let o = c.edge_in_order(t);
        o[..o.len() - 1].to_vec()
    }
}

/// Cycles `C1` on `0..(k-1)l1` and `C2` on the next `(k-1)l2` vertices, both
/// canonical.
pub fn canonical_pair(k: usize, l1: usize, l2: usize) -> Result<(LooseCycle, LooseCycle)> {
    let c1 = crate::core::canonical_loose_cycle(l1, k)?;
    let off = ((k - 1) * l1) as Vertex;
    let c2 = LooseCycle::from_order(k, (off..off + ((k - 1) * l2) as Vertex).collect())?;
    Ok((c1, c2))
}

/// Decomposes `g` as a connector at `(i, j)`, or `None` if it is not one.
pub fn classify(g: &Edge, cfg: &CycleConfiguration, i: usize, j: usize) -> Option<ConnectorEdge> {
    if g.len() != cfg.k() || i >= cfg.l1() || j >= cfg.l2() {
        return None;
    }
    let ie = cfg.c1.interior(i);
    let jf = cfg.c2.interior(j);
    let (mut e_part, mut f_part, mut w_part, mut rest) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for &v in g.vertices() {
        if ie.contains(&v) {
            e_part.push(v);
        } else if jf.contains(&v) {
            f_part.push(v);
        } else if cfg.w.binary_search(&v).is_ok() {
            w_part.push(v);
        } else {
            rest.push(v);
        }
    }
    let (vprev, vnext) = (cfg.v_candidates(i, true), cfg.v_candidates(i, false));
    let (unext, uprev) = (cfg.u_candidates(j, true), cfg.u_candidates(j, false));
    let on_c1 = |v: &Vertex| vprev.contains(v) || vnext.contains(v);
    let on_c2 = |v: &Vertex| unext.contains(v) || uprev.contains(v);
    let (vprime, uprime) = match rest[..] {
        [a, b] if on_c1(&a) && on_c2(&b) => (a, b),
        [a, b] if on_c1(&b) && on_c2(&a) => (b, a),
        _ => return None,
    };
    let types: Vec<ConnectorType> = [ConnectorType::A, ConnectorType::B, ConnectorType::C, ConnectorType::D]
        .into_iter()
        .filter(|t| {
            let v_ok = if t.v_prev() { vprev.contains(&vprime) } else { vnext.contains(&vprime) };
            let u_ok = if t.u_next() { unext.contains(&uprime) } else { uprev.contains(&uprime) };
            v_ok && u_ok
        })
        .collect();
    e_part.push(vprime);
    e_part.sort_unstable();
    f_part.push(uprime);
    f_part.sort_unstable();
    let (p, q, r) = (e_part.len(), w_part.len(), f_part.len());
    Some(ConnectorEdge {
        g: g.clone(),
        i,
        j,
        e_part,
        f_part,
        w_part,
        vprime,
        uprime,
        typ: types[0],
        types,
        p,
        q,
        r,
    })
}

/// Classifies `g` and insists on type `typ`.
pub fn classify_as(g: &Edge, cfg: &CycleConfiguration, i: usize, j: usize, typ: ConnectorType) -> Option<ConnectorEdge> {
    let mut c = classify(g, cfg, i, j)?;
    c.types.contains(&typ).then(|| {
        c.typ = typ;
        c
    })
}

/// An edge of the complementary type, disjoint from `g`, containing `v2` and
/// `u2`. Other slots are filled from the interior of `e_i`, then of `f_j`,
/// then from `W`, smallest ids first.
pub fn complement(g: &ConnectorEdge, cfg: &CycleConfiguration, v2: Vertex, u2: Vertex) -> Result<ConnectorEdge> {
    let target = g.typ.complement();
    let fail = |s: String| Error::CannotComplement(s);
    if g.g.contains(v2) || g.g.contains(u2) {
        return Err(fail(format!("{v2} or {u2} already lies in {:?}", g.g)));
    }
    if !cfg.v_candidates(g.i, target.v_prev()).contains(&v2) {
        return Err(fail(format!("{v2} cannot serve as v' for type {target:?}")));
    }
    if !cfg.u_candidates(g.j, target.u_next()).contains(&u2) {
        return Err(fail(format!("{u2} cannot serve as u' for type {target:?}")));
    }
    let k = cfg.k();
    let mut verts = vec![v2, u2];
    let pool = cfg.c1.interior(g.i).into_iter().chain(cfg.c2.interior(g.j)).chain(cfg.w.iter().copied());
    let mut sorted_pool: Vec<Vec<Vertex>> = vec![Vec::new(); 3];
    for (slot, v) in pool.enumerate() {
        let bucket = if slot < k - 2 { 0 } else if slot < 2 * (k - 2) { 1 } else { 2 };
        sorted_pool[bucket].push(v);
    }
    for bucket in &mut sorted_pool {
        bucket.sort_unstable();
        for &v in bucket.iter() {
            if verts.len() == k {
                break;
            }
            if !g.g.contains(v) && !verts.contains(&v) {
                verts.push(v);
            }
        }
    }
    if verts.len() < k {
        return Err(fail("not enough free vertices".into()));
    }
    let e = Edge::new(verts)?;
    classify_as(&e, cfg, g.i, g.j, target).ok_or_else(|| fail(format!("{e:?} does not classify as {target:?}")))
}

/// Splices `C1`, `C2` and two disjoint connectors of complementary types at
/// the same `(i, j)` into a cycle of length `l1 + l2`.
///
/// The cycle is `g`, then `C1` from `e_{i+1}` round to `e_{i-1}`, then `g2`,
/// then `C2` from `f_{j+1}` round to `f_{j-1}`; each cycle part is tried
/// forward and reversed, in the order ff, fr, rf, rr.
pub fn merge_cycles(cfg: &CycleConfiguration, g: &ConnectorEdge, g2: &ConnectorEdge) -> Result<LooseCycle> {
    if !g.g.is_disjoint(&g2.g) {
        return Err(Error::NotDisjoint);
    }
    if (g.i, g.j) != (g2.i, g2.j) {
        return Err(Error::InvalidInput("connectors sit at different edge pairs".into()));
    }
    if g.typ.complement() != g2.typ {
        return Err(Error::InvalidInput(format!("types {:?} and {:?} are not complementary", g.typ, g2.typ)));
    }
    merge_edges(cfg, g.i, g.j, &g.g, &g2.g).ok_or_else(|| {
        Error::MergeBug(format!("no orientation splices {:?} and {:?} at ({}, {})", g.g, g2.g, g.i, g.j))
    })
}

/// The splice on raw edges; `None` if no orientation gives a loose cycle.
pub fn merge_edges(cfg: &CycleConfiguration, i: usize, j: usize, g: &Edge, g2: &Edge) -> Option<LooseCycle> {
    let seg = |c: &LooseCycle, s: usize| -> Vec<Edge> { (1..c.len()).map(|t| c.edge(s + t).clone()).collect() };
    let s1 = seg(&cfg.c1, i);
    let s2 = seg(&cfg.c2, j);
    let rev = |v: &Vec<Edge>| v.iter().rev().cloned().collect::<Vec<_>>();
    for (r1, r2) in [(false, false), (false, true), (true, false), (true, true)] {
        let a = if r1 { rev(&s1) } else { s1.clone() };
        let b = if r2 { rev(&s2) } else { s2.clone() };
        let mut edges = vec![g.clone()];
        edges.extend(a);
        edges.push(g2.clone());
        edges.extend(b);
        if let Ok(c) = LooseCycle::from_edges(edges) {
            return Some(c.normalized());
        }
    }
    None
}

/// A seeded connector of type `typ` at `(i, j)` with `q` vertices from `W`
/// and the rest split between the two interiors. `None` when the sizes do
/// not fit.
pub fn random_connector(
    cfg: &CycleConfiguration,
    i: usize,
    j: usize,
    typ: ConnectorType,
    q: usize,
    seed: u64,
) -> Option<ConnectorEdge> {
    let k = cfg.k();
    let mut state = seed;
    let mut next = |bound: usize| {
        state = splitmix64(state);
        (state % bound as u64) as usize
    };
    let pick = |pool: &[Vertex], next: &mut dyn FnMut(usize) -> usize| pool[next(pool.len())];
    let vp = pick(&cfg.v_candidates(i, typ.v_prev()), &mut next);
    let up = pick(&cfg.u_candidates(j, typ.u_next()), &mut next);
    let inner = k.checked_sub(2 + q)?;
    let ie = cfg.c1.interior(i);
    let jf = cfg.c2.interior(j);
    let lo = inner.saturating_sub(jf.len());
    let hi = inner.min(ie.len());
    if lo > hi || q > cfg.w.len() {
        return None;
    }
    let from_e = lo + next(hi - lo + 1);
    let mut take = |pool: &[Vertex], count: usize| -> Vec<Vertex> {
        let mut pool = pool.to_vec();
        let mut out = Vec::new();
        for _ in 0..count {
            out.push(pool.swap_remove(next(pool.len())));
        }
        out
    };
    let mut verts = vec![vp, up];
    verts.extend(take(&ie, from_e));
    verts.extend(take(&jf, inner - from_e));
    verts.extend(take(&cfg.w, q));
    classify_as(&Edge::new(verts).ok()?, cfg, i, j, typ)
}
