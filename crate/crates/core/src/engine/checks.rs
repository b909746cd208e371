//! Literal lemma conditions, written independently of the constructions.
//!
//! Each checker returns `Err` naming the first violated condition. They do
//! not check colors; callers test monochromaticity separately.

use std::collections::BTreeSet;


use crate::connector::CycleConfiguration;
use crate::core::{Edge, LoosePath, Vertex};

use super::{BranchPair, FreeSide, LadderState, PairParams};

type Check = Result<(), String>;
type Set = BTreeSet<Vertex>;

fn set(vs: impl IntoIterator<Item = Vertex>) -> Set {
    vs.into_iter().collect()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Edge `t` of a cycle and its first/last vertices, indices cyclic.
struct Side<'a> {
    c: &'a crate::core::LooseCycle,
}

impl Side<'_> {
    fn idx(&self, t: isize) -> usize {
        t.rem_euclid(self.c.len() as isize) as usize
    }
    fn all(&self, t: isize) -> Set {
        set(self.c.edge_in_order(self.idx(t)))
    }
    fn first(&self, t: isize) -> Vertex {
        self.c.first(self.idx(t))
    }
    fn last(&self, t: isize) -> Vertex {
        self.c.last(self.idx(t))
    }
    fn interior(&self, t: isize) -> Set {
        set(self.c.interior(self.idx(t)))
    }
    /// `e_t - {first}`.
    fn tail(&self, t: isize) -> Set {
        let mut s = self.all(t);
        s.remove(&self.first(t));
        s
    }
}

fn sides(cfg: &CycleConfiguration) -> (Side<'_>, Side<'_>) {
    (Side { c: cfg.c1() }, Side { c: cfg.c2() })
}

fn path_vertices(p: &LoosePath) -> Set {
    p.edges().iter().flat_map(|e| e.vertices().iter().copied()).collect()
}

fn ov(e: &Edge, s: &Set) -> usize {
    e.vertices().iter().filter(|v| s.contains(v)).count()
}

fn minus(a: &Edge, b: &Edge) -> Edge {
    Edge::new(a.vertices().iter().copied().filter(|&v| !b.contains(v)).collect()).unwrap_or_else(|_| a.clone())
}

fn two(p: &LoosePath, name: &str) -> Result<(Edge, Edge), String> {
    ensure(p.len() == 2, || format!("{name} has {} edges, expected 2", p.len()))?;
    Ok((p.edges()[0].clone(), p.edges()[1].clone()))
}

/// Conditions (i)-(iii) of the red pair lemma, plus the free vertex of `e`.
pub fn check_red_pair(cfg: &CycleConfiguration, i: usize, j: usize, prm: &PairParams, p: &LoosePath) -> Check {
    let (s1, s2) = sides(cfg);
    let (i, j) = (i as isize, j as isize);
    let (g1, g2) = two(p, "P")?;
    let vp = path_vertices(p);
    let c: Set = prm.c.into_iter().collect();
    let b = set(prm.b);
    let (ie, jf) = (s1.interior(i), s2.interior(j));
    let mut allowed: Set = ie.difference(&c).copied().collect();
    allowed.extend(&jf);
    allowed.extend([prm.v1, prm.v2, prm.u1, prm.u2]);
    let bprime: Set = vp.intersection(&b).copied().collect();
    let stray: Vec<Vertex> = vp.iter().filter(|v| !allowed.contains(v) && !b.contains(v)).copied().collect();
    ensure(stray.is_empty(), || format!("(i): vertices {stray:?} outside the allowed universe"))?;
    ensure(bprime.len() <= c.len() + 1, || format!("(i): |B'| = {} exceeds |C| + 1", bprime.len()))?;
    for (m, g) in [(1, &g1), (2, &g2)] {
        ensure(ov(g, &ie) >= 2, || format!("(ii): g{m} meets interior(e_i) in {} vertices", ov(g, &ie)))?;
        ensure(ov(g, &jf) >= 2, || format!("(ii): g{m} meets interior(f_j) in {} vertices", ov(g, &jf)))?;
    }
    if c.len() == 1 {
        let [w1, w2] = prm.b;
        let split = g1.contains(w1) && !g2.contains(w1) && g2.contains(w2) && !g1.contains(w2);
        let single = ov(&g1, &b) == 1 && ov(&g2, &b) == 0;
        ensure(split || single, || "(iii): B is distributed neither way".into())?;
    }
    let (side, t) = match prm.free {
        FreeSide::E => (&s1, i),
        FreeSide::F => (&s2, j),
    };
    let free = side.tail(t).into_iter().any(|w| !c.contains(&w) && !vp.contains(&w));
    ensure(free, || "free vertex: every vertex of e - first is used".into())
}

/// The strong pair lemma: containment without W and overlaps of at least 3.
pub fn check_red_pair_strong(cfg: &CycleConfiguration, i: usize, j: usize, ends: [Vertex; 4], p: &LoosePath) -> Check {
    let (s1, s2) = sides(cfg);
    let (i, j) = (i as isize, j as isize);
    let (g1, g2) = two(p, "P")?;
    let (ie, jf) = (s1.interior(i), s2.interior(j));
    let stray: Vec<Vertex> =
        path_vertices(p).into_iter().filter(|v| !ie.contains(v) && !jf.contains(v) && !ends.contains(v)).collect();
    ensure(stray.is_empty(), || format!("containment: vertices {stray:?} outside the allowed universe"))?;
    for (m, g) in [(1, &g1), (2, &g2)] {
        ensure(ov(g, &ie) >= 3, || format!("overlap: g{m} meets interior(e_i) in {} vertices", ov(g, &ie)))?;
        ensure(ov(g, &jf) >= 3, || format!("overlap: g{m} meets interior(f_j) in {} vertices", ov(g, &jf)))?;
    }
    Ok(())
}

/// The seven bullets of the branching lemma, with the witnesses carried by
/// the pair.
pub fn check_branch(cfg: &CycleConfiguration, i: usize, j: usize, b: &[Vertex; 3], bp: &BranchPair) -> Check {
    let (s1, s2) = sides(cfg);
    let (i, j) = (i as isize, j as isize);
    let (g1, g1p) = two(&bp.e1, "E1")?;
    let (g1b, g1bp) = two(&bp.f1, "F1")?;
    ensure(g1 == g1b, || "E1 and F1 do not share their first edge".into())?;
    let bset = set(*b);
    let bprime = set(bp.b_prime);
    ensure(bprime.len() == 2 && bprime.is_subset(&bset), || format!("B' = {:?} is not two vertices of B", bp.b_prime))?;
    ensure(s1.all(i).contains(&bp.v_bar), || "v-bar is not in e_i".into())?;
    ensure(s2.all(j).contains(&bp.u_bar), || "u-bar is not in f_j".into())?;
    let mut universe: Set = s1.all(i).union(&s2.all(j)).copied().collect();
    universe.extend(&bprime);
    universe.remove(&bp.v_bar);
    universe.remove(&bp.u_bar);
    let (ve, vf) = (path_vertices(&bp.e1), path_vertices(&bp.f1));
    ensure(ve.is_subset(&universe) && vf.is_subset(&universe), || "bullet 1: containment fails".into())?;
    let left_e = s1.all(i).into_iter().any(|v| ![s1.first(i), s1.last(i), bp.v_bar].contains(&v) && !ve.contains(&v));
    let left_f = s2.all(j).into_iter().any(|v| ![s2.first(j), s2.last(j), bp.u_bar].contains(&v) && !vf.contains(&v));
    ensure(left_e && left_f, || "bullet 2: no leftover vertex".into())?;
    let (ie, jf) = (s1.interior(i), s2.interior(j));
    for (n, d) in [(3, minus(&g1p, &g1)), (4, minus(&g1, &g1p)), (5, minus(&g1bp, &g1)), (6, minus(&g1, &g1bp))] {
        ensure(ov(&d, &ie) >= 1 && ov(&d, &jf) >= 1, || format!("bullet {n}: difference misses an interior"))?;
    }
    for d in [minus(&g1, &g1p), minus(&g1p, &g1), minus(&g1, &g1bp), minus(&g1bp, &g1)] {
        ensure(ov(&d, &bprime) == 1, || "bullet 7: B' distribution".into())?;
    }
    Ok(())
}

/// `e_t` of the ladder is cycle edge `i0 + t - 1`.
fn et(st: &LadderState, t: usize) -> (isize, isize) {
    ((st.i0 + t) as isize - 1, (st.j0 + t) as isize - 1)
}

/// Property P1 for every piece of the state.
pub fn check_p1(cfg: &CycleConfiguration, st: &LadderState) -> Check {
    let (s1, s2) = sides(cfg);
    let mut seen_b: Set = Set::new();
    for t in 1..=st.t {
        let (ei, fj) = et(st, t);
        let pieces: Vec<&[Edge; 2]> =
            if t < st.t { vec![&st.pieces[t - 1]] } else { vec![&st.e_piece, &st.f_piece] };
        let mut vs = Set::new();
        for p in pieces {
            vs.extend(p.iter().flat_map(|e| e.vertices().iter().copied()));
        }
        let home: Set = s1.tail(ei).union(&s2.tail(fj)).copied().collect();
        let (vprev, uprev) = (s1.tail(ei - 1), s2.tail(fj - 1));
        let extra: Vec<Vertex> = vs.iter().filter(|v| !home.contains(v)).copied().collect();
        let bt: Set = extra.iter().filter(|v| cfg.w().binary_search(v).is_ok()).copied().collect();
        let hv: Vec<Vertex> = extra.iter().filter(|v| vprev.contains(v)).copied().collect();
        let hu: Vec<Vertex> = extra.iter().filter(|v| uprev.contains(v)).copied().collect();
        ensure(hv.len() <= 1 && hu.len() <= 1, || format!("P1 at t={t}: more than one link vertex per side"))?;
        ensure(bt.len() + hv.len() + hu.len() == extra.len(), || format!("P1 at t={t}: stray vertices {extra:?}"))?;
        let fresh = bt.difference(&seen_b).count();
        let cap = if t == 1 { 2 } else { 1 };
        ensure(fresh <= cap, || format!("P1 at t={t}: {fresh} new W vertices"))?;
        seen_b.extend(bt);
    }
    Ok(())
}

/// Property P2 at the frontier.
pub fn check_p2(cfg: &CycleConfiguration, st: &LadderState) -> Check {
    let (s1, s2) = sides(cfg);
    let (ei, fj) = et(st, st.t);
    let [g, gp] = &st.e_piece;
    let [gb, gbp] = &st.f_piece;
    let ve: Set = g.vertices().iter().chain(gp.vertices()).copied().collect();
    let vf: Set = gb.vertices().iter().chain(gbp.vertices()).copied().collect();
    let left_e = s1.tail(ei).iter().any(|v| !ve.contains(v));
    let left_f = s2.tail(fj).iter().any(|v| !vf.contains(v));
    ensure(left_e && left_f, || "P2: no leftover vertex".into())?;
    let (ie, jf) = (s1.interior(ei), s2.interior(fj));
    for (name, d) in [("g'-g", minus(gp, g)), ("gbar'-gbar", minus(gbp, gb))] {
        ensure(ov(&d, &ie) >= 1 && ov(&d, &jf) >= 1, || format!("P2: {name} misses an interior"))?;
    }
    Ok(())
}

fn is_path(edges: Vec<Edge>) -> bool {
    LoosePath::from_edges(edges).is_ok()
}

/// Both full paths of the state are loose paths of length `2t`.
pub fn check_paths(st: &LadderState) -> Check {
    ensure(st.pieces.len() + 1 == st.t, || "state has the wrong number of pieces".into())?;
    let e = st.epath_edges();
    let f = st.fpath_edges();
    ensure(e.len() == 2 * st.t && is_path(e), || "E-path is not a loose path".into())?;
    ensure(f.len() == 2 * st.t && is_path(f), || "F-path is not a loose path".into())
}

/// The bullets of the initial ladder stage.
pub fn check_initial(cfg: &CycleConfiguration, before: &LadderState, after: &LadderState) -> Check {
    let (s1, s2) = sides(cfg);
    ensure(before.t == 1 && after.t == 2, || "initial stage goes from t=1 to t=2".into())?;
    let (ei, fj) = et(after, 2);
    let [g1, g1p] = &before.e_piece;
    let e1 = set(g1.vertices().iter().chain(g1p.vertices()).copied());
    let bp = set(before.b_prime.iter().copied());
    let wset: Set = g1p.vertices().iter().filter(|v| !g1.contains(**v) && bp.contains(v)).copied().collect();
    ensure(wset.len() == 1, || "input: (g1' - g1) meets B' in other than one vertex".into())?;
    let w = *wset.iter().next().expect("one vertex");
    let mut home: Set = s1.all(ei).union(&s2.all(fj)).copied().collect();
    home.remove(&s1.first(ei));
    home.remove(&s2.first(fj));
    home.insert(w);
    let mut vhat = s1.tail(ei - 1).intersection(&e1).copied().collect::<Set>();
    vhat.extend(before.v_bar.filter(|v| s1.tail(ei - 1).contains(v)));
    let mut uhat = s2.tail(fj - 1).intersection(&e1).copied().collect::<Set>();
    uhat.extend(before.u_bar.filter(|u| s2.tail(fj - 1).contains(u)));
    let [g2, g2p] = &after.e_piece;
    let [gb2, gb2p] = &after.f_piece;
    let all: Set = [g2, g2p, gb2, gb2p].iter().flat_map(|e| e.vertices().iter().copied()).collect();
    let extra: Vec<Vertex> = all.iter().filter(|v| !home.contains(v)).copied().collect();
    let ev: Vec<&Vertex> = extra.iter().filter(|v| vhat.contains(v)).collect();
    let eu: Vec<&Vertex> = extra.iter().filter(|v| uhat.contains(v)).collect();
    ensure(ev.len() <= 1 && eu.len() <= 1 && ev.len() + eu.len() == extra.len(), || {
        format!("bullet 1: vertices {extra:?} are not covered by one v-hat and one u-hat")
    })?;
    let ve: Set = g2.vertices().iter().chain(g2p.vertices()).copied().collect();
    let vf: Set = gb2.vertices().iter().chain(gb2p.vertices()).copied().collect();
    ensure(s1.tail(ei).iter().any(|v| !ve.contains(v)), || "bullet 2: e_i is used up".into())?;
    ensure(s2.tail(fj).iter().any(|v| !vf.contains(v)), || "bullet 2: f_j is used up".into())?;
    ensure(ov(&minus(g2p, g2), &s1.interior(ei)) >= 1, || "bullet 3: g2' - g2 misses interior(e_i)".into())?;
    ensure(ov(&minus(gb2p, gb2), &s2.interior(fj)) >= 1, || "bullet 3: gbar2' - gbar2 misses interior(f_j)".into())?;
    let mut e = vec![g1.clone(), g1p.clone()];
    ensure(is_path([e.clone(), vec![g2.clone(), g2p.clone()]].concat()), || "bullet 4: E1 E2 is not a path".into())?;
    e.extend([gb2.clone(), gb2p.clone()]);
    ensure(is_path(e), || "bullet 4: E1 F2 is not a path".into())
}

/// A step: P1 and P2 at the new frontier, and both paths extend a common
/// previous path.
pub fn check_step(cfg: &CycleConfiguration, before: &LadderState, after: &LadderState) -> Check {
    ensure(after.t == before.t + 1, || "step must advance t by one".into())?;
    let prefix = after.prefix_edges();
    ensure(prefix == before.epath_edges() || prefix == before.fpath_edges(), || {
        "new paths do not extend the E-path or the F-path".into()
    })?;
    check_paths(after)?;
    check_p1(cfg, after)?;
    check_p2(cfg, after)
}

/// The final stage: containment, overlaps of at least 2 and a red-path
/// extension of one of the two current paths.
pub fn check_final(cfg: &CycleConfiguration, st: &LadderState, v: Vertex, u: Vertex, path: &LoosePath) -> Check {
    let (s1, s2) = sides(cfg);
    let i = st.t + 1;
    let (ei, fj) = et(st, i);
    let n = path.len();
    ensure(n == 2 * i, || format!("final path has {n} edges, expected {}", 2 * i))?;
    let head = &path.edges()[..n - 2];
    ensure(head == st.epath_edges().as_slice() || head == st.fpath_edges().as_slice(), || {
        "final path does not extend the E-path or the F-path".into()
    })?;
    let (g, gp) = (&path.edges()[n - 2], &path.edges()[n - 1]);
    let (ie, jf) = (s1.interior(ei), s2.interior(fj));
    let (vprev, uprev) = (s1.tail(ei - 1), s2.tail(fj - 1));
    let vs: Set = g.vertices().iter().chain(gp.vertices()).copied().collect();
    let extra: Vec<Vertex> = vs.iter().filter(|x| !ie.contains(x) && !jf.contains(x) && **x != u && **x != v).copied().collect();
    let ev = extra.iter().filter(|x| vprev.contains(x)).count();
    let eu = extra.iter().filter(|x| uprev.contains(x)).count();
    ensure(ev <= 1 && eu <= 1 && ev + eu == extra.len(), || format!("containment: stray vertices {extra:?}"))?;
    let d = minus(gp, g);
    ensure(ov(&d, &ie) >= 2 && ov(&d, &jf) >= 2, || "overlap: g' - g meets an interior in fewer than 2".into())
}
