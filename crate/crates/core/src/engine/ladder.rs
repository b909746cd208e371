use serde::Serialize;

use crate::connector::CycleConfiguration;
use crate::core::{Edge, LoosePath, Vertex};
use crate::error::{Error, Result};

use super::checks::{check_final, check_initial, check_p1, check_p2, check_paths, check_step};
use super::frame::Frame;
use super::pair::{standard_groups, STANDARD_DOUBLES};
use super::walk::{Claims, Group};
use super::{run_claims, wrap, BranchPair, Outcome, Prober};

/// Two red paths `𝓔_t`, `𝓕_t` built along `e_1 f_1, e_2 f_2, ...`, where
/// `e_t` is cycle edge `i0 + t - 1` of `C1` and `f_t` edge `j0 + t - 1` of
/// `C2`. They share every piece but the last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadderState {
    pub i0: usize,
    pub j0: usize,
    pub t: usize,
    /// Shared pieces for steps `1..t`.
    pub pieces: Vec<[Edge; 2]>,
    /// `E_t = g_t g'_t`.
    pub e_piece: [Edge; 2],
    /// `F_t = ḡ_t ḡ'_t`.
    pub f_piece: [Edge; 2],
    /// `B_1, ..., B_t`.
    pub bsets: Vec<Vec<Vertex>>,
    pub hat_v: Vec<Option<Vertex>>,
    pub hat_u: Vec<Option<Vertex>>,
    /// Witnesses of the branching lemma, used by the initial stage.
    pub v_bar: Option<Vertex>,
    pub u_bar: Option<Vertex>,
    pub b_prime: Vec<Vertex>,
}

impl LadderState {
    pub fn prefix_edges(&self) -> Vec<Edge> {
        self.pieces.iter().flat_map(|p| p.iter().cloned()).collect()
    }

    pub fn epath_edges(&self) -> Vec<Edge> {
        let mut v = self.prefix_edges();
        v.extend(self.e_piece.iter().cloned());
        v
    }

    pub fn fpath_edges(&self) -> Vec<Edge> {
        let mut v = self.prefix_edges();
        v.extend(self.f_piece.iter().cloned());
        v
    }

    pub fn epath(&self) -> LoosePath {
        LoosePath::from_edges(self.epath_edges()).expect("ladder paths are loose paths")
    }

    pub fn fpath(&self) -> LoosePath {
        LoosePath::from_edges(self.fpath_edges()).expect("ladder paths are loose paths")
    }

    /// Cycle indices of `e_t` and `f_t`.
    pub fn edge_index(&self, cfg: &CycleConfiguration, t: usize) -> (usize, usize) {
        ((self.i0 + t - 1) % cfg.l1(), (self.j0 + t - 1) % cfg.l2())
    }

    fn used(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self
            .epath_edges()
            .iter()
            .chain(self.f_piece.iter())
            .flat_map(|e| e.vertices().iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// The ladder at `t = 1` from a branching pair on `e_1 = C1[i0]`,
/// `f_1 = C2[j0]`.
pub fn ladder_start(i0: usize, j0: usize, bp: &BranchPair) -> LadderState {
    let two = |p: &LoosePath| [p.edges()[0].clone(), p.edges()[1].clone()];
    LadderState {
        i0,
        j0,
        t: 1,
        pieces: Vec::new(),
        e_piece: two(&bp.e1),
        f_piece: two(&bp.f1),
        bsets: vec![bp.b_prime.to_vec()],
        hat_v: vec![None],
        hat_u: vec![None],
        v_bar: Some(bp.v_bar),
        u_bar: Some(bp.u_bar),
        b_prime: bp.b_prime.to_vec(),
    }
}

/// The ladder at `t = 1` from two red 2-paths on `e_1 = C1[i0]`,
/// `f_1 = C2[j0]` that need not share an edge.
pub fn ladder_pair(cfg: &CycleConfiguration, i0: usize, j0: usize, e1: &LoosePath, f1: &LoosePath) -> LadderState {
    let two = |p: &LoosePath| [p.edges()[0].clone(), p.edges()[1].clone()];
    let mut st = LadderState {
        i0,
        j0,
        t: 1,
        pieces: Vec::new(),
        e_piece: two(e1),
        f_piece: two(f1),
        bsets: Vec::new(),
        hat_v: Vec::new(),
        hat_u: Vec::new(),
        v_bar: None,
        u_bar: None,
        b_prime: Vec::new(),
    };
    let pieces = [&st.e_piece, &st.f_piece];
    let b: Vec<Vertex> = cfg.w().iter().copied().filter(|&w| pieces.iter().any(|p| p.iter().any(|e| e.contains(w)))).collect();
    let (hv, hu) = hats(cfg, &st, 1, &pieces);
    st.bsets.push(b);
    st.hat_v.push(hv);
    st.hat_u.push(hu);
    st
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stage {
    Initial,
    Step,
    Final { v: Vertex, u: Vertex },
}

/// A longer ladder, or the final red path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Extended {
    State(LadderState),
    Path(LoosePath),
}

type Build<'a> = Box<dyn Fn([Edge; 2], [Edge; 2]) -> Option<Extended> + 'a>;

struct Rung<'a> {
    frame: Frame<'a>,
    groups: Vec<Group>,
    build: Build<'a>,
}

impl Claims for Rung<'_> {
    type Out = Extended;

    fn frame(&self) -> &Frame<'_> {
        &self.frame
    }

    fn pool(&self) -> u64 {
        self.frame.all()
    }

    fn groups(&self) -> &[Group] {
        &self.groups
    }

    fn doubles(&self) -> &[(usize, usize)] {
        &STANDARD_DOUBLES
    }

    fn assemble(&self, new: u64, partners: &[u64]) -> Option<Extended> {
        let (a, b) = (self.frame.edge(new), self.frame.edge(partners[0]));
        [[b.clone(), a.clone()], [a, b]].into_iter().find_map(|es| (self.build)(es.clone(), es))
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn first_where(vs: &[Vertex], pred: impl Fn(Vertex) -> bool) -> Option<Vertex> {
    vs.iter().copied().filter(|&v| pred(v)).min()
}

/// Link vertex of `e_t` (`- first`) in `second - first` of a piece.
fn link(side: &[Vertex], piece: &[Edge; 2]) -> Option<Vertex> {
    first_where(&side[1..], |v| piece[1].contains(v) && !piece[0].contains(v))
}

fn hats(cfg: &CycleConfiguration, st: &LadderState, t: usize, es: &[&[Edge; 2]]) -> (Option<Vertex>, Option<Vertex>) {
    let (ei, fj) = st.edge_index(cfg, t);
    let vprev = cfg.v_candidates(ei, true);
    let uprev = cfg.u_candidates(fj, false);
    let has = |v: &Vertex| es.iter().any(|p| p.iter().any(|e| e.contains(*v)));
    (vprev.iter().copied().find(|v| has(v)), uprev.iter().copied().find(|v| has(v)))
}

fn new_bset(w: Vertex, es: &[&[Edge; 2]]) -> Vec<Vertex> {
    if es.iter().any(|p| p.iter().any(|e| e.contains(w))) {
        vec![w]
    } else {
        Vec::new()
    }
}

/// Shared targets of the initial stage and the steps: `h`, `g'`, `ḡ'` on
/// `e = C1[i]` and `f = C2[j]` with link vertices `lv` and `lu`.
fn rung_targets(frame: &Frame, e: &[Vertex], f: &[Vertex], lv: Vertex, lu: Vertex) -> [u64; 3] {
    let k = e.len();
    let ev = |p: usize| frame.bit(e[p - 1]);
    let fu = |p: usize| frame.bit(f[p - 1]);
    let range = |g: &dyn Fn(usize) -> u64, a: usize, b: usize| (a..=b).fold(0u64, |m, p| m | g(p));
    let (a, c) = (k / 2, k.div_ceil(2));
    let (bv, bu) = (frame.bit(lv), frame.bit(lu));
    [
        bv | range(&ev, 2, a) | range(&fu, k - c + 1, k),
        ev(a) | range(&ev, a + 2, k) | bu | range(&fu, 2, a),
        range(&ev, a + 1, k) | bu | range(&fu, 2, a - 1) | fu(a + 1),
    ]
}

fn run_rung(op: &'static str, cfg: &CycleConfiguration, rung: Rung, targets: &[u64]) -> Result<Outcome<Extended>> {
    let mut prober = Prober::new(cfg.coloring());
    let fin = || {
        let f = &rung.frame;
        let g = f.edge(targets[0]);
        let e = [g.clone(), f.edge(targets[1])];
        let fb = [g, f.edge(targets[targets.len() - 1])];
        (rung.build)(e, fb)
    };
    let res = run_claims(&rung, &mut prober, targets, fin);
    wrap(op, res, prober)
}

fn check_state(cfg: &CycleConfiguration, st: &LadderState) -> Result<()> {
    check_paths(st).and_then(|_| check_p1(cfg, st)).and_then(|_| check_p2(cfg, st)).map_err(bad)
}

/// `w`, `x`, `v̄`, `ū` for the initial stage, with `v̄` and `ū` moved off
/// the first vertices when needed.
fn initial_links(st: &LadderState, pe: &[Vertex], pf: &[Vertex]) -> Result<(LadderState, Vertex, Vertex, Vertex, Vertex)> {
    let [g1, g1p] = &st.e_piece;
    let in_e1 = |v: Vertex| g1.contains(v) || g1p.contains(v);
    let w = first_where(&st.b_prime, |v| g1p.contains(v) && !g1.contains(v))
        .ok_or_else(|| bad("no vertex of B' in g1' - g1"))?;
    let x = link(pe, &st.e_piece).ok_or_else(|| bad("g1' - g1 misses e_1 - first"))?;
    let pick = |side: &[Vertex], given: Option<Vertex>| {
        given.filter(|v| side[1..].contains(v) && !in_e1(*v)).or_else(|| first_where(&side[1..], |v| !in_e1(v)))
    };
    let v_bar = pick(pe, st.v_bar).ok_or_else(|| bad("e_1 - first is covered by E1"))?;
    let u_bar = pick(pf, st.u_bar).ok_or_else(|| bad("f_1 - first is covered by E1"))?;
    let mut before = st.clone();
    before.v_bar = Some(v_bar);
    before.u_bar = Some(u_bar);
    Ok((before, w, x, v_bar, u_bar))
}

fn initial(cfg: &CycleConfiguration, st: &LadderState) -> Result<Outcome<Extended>> {
    if st.t != 1 {
        return Err(bad(format!("initial stage needs t = 1, got {}", st.t)));
    }
    if cfg.l1() < 3 {
        return Err(bad("initial stage needs l1 >= 3"));
    }
    let (pi, pj) = st.edge_index(cfg, 1);
    let (i, j) = ((pi + 1) % cfg.l1(), (pj + 1) % cfg.l2());
    let pe = cfg.c1().edge_in_order(pi);
    let pf = cfg.c2().edge_in_order(pj);
    let mut swapped = st.clone();
    std::mem::swap(&mut swapped.e_piece, &mut swapped.f_piece);
    // the lemma is symmetric in E1 and F1; use F1 when E1 leaves no room
    let (before, w, x, v_bar, u_bar) = [st.clone(), swapped]
        .into_iter()
        .map(|before| initial_links(&before, &pe, &pf))
        .reduce(|a, b| a.or(b))
        .expect("two candidates")?;
    let e = cfg.c1().edge_in_order(i);
    let f = cfg.c2().edge_in_order(j);
    let mut verts: Vec<Vertex> = e[1..].to_vec();
    verts.extend(&f[1..]);
    verts.extend([w, x, v_bar, u_bar]);
    let frame = Frame::new(cfg, i, j, verts)?;
    let targets = rung_targets(&frame, &e, &f, x, u_bar);
    let build: Build = Box::new(move |ep: [Edge; 2], fp: [Edge; 2]| {
        let mut after = before.clone();
        after.t = 2;
        after.pieces = vec![before.e_piece.clone()];
        after.e_piece = ep;
        after.f_piece = fp;
        let (hv, hu) = hats(cfg, &after, 2, &[&after.e_piece, &after.f_piece]);
        after.bsets.push(new_bset(w, &[&after.e_piece, &after.f_piece]));
        after.hat_v.push(hv);
        after.hat_u.push(hu);
        check_initial(cfg, &before, &after).ok()?;
        check_state(cfg, &after).ok()?;
        Some(Extended::State(after))
    });
    let groups = standard_groups(&frame);
    run_rung("ladder_extend", cfg, Rung { frame, groups, build }, &targets)
}

fn step(cfg: &CycleConfiguration, st: &LadderState) -> Result<Outcome<Extended>> {
    check_state(cfg, st)?;
    let used_b: Vec<Vertex> = st.bsets.iter().flatten().copied().collect();
    let w = first_where(cfg.w(), |v| !used_b.contains(&v)).ok_or_else(|| bad("W is used up by B_1..B_t"))?;
    let t = st.t + 1;
    let (pi, pj) = st.edge_index(cfg, st.t);
    let (i, j) = st.edge_index(cfg, t);
    let pe = cfg.c1().edge_in_order(pi);
    let pf = cfg.c2().edge_in_order(pj);
    let fp = &st.f_piece;
    let in_f = |v: Vertex| fp.iter().any(|e| e.contains(v));
    let v = link(&pe, fp).ok_or_else(|| bad("gbar' - gbar misses e_t - first"))?;
    let u = link(&pf, fp).ok_or_else(|| bad("gbar' - gbar misses f_t - first"))?;
    let u1 = first_where(&pf[1..], |x| !in_f(x)).ok_or_else(|| bad("f_t - first is covered by F_t"))?;
    let e = cfg.c1().edge_in_order(i);
    let f = cfg.c2().edge_in_order(j);
    let mut verts: Vec<Vertex> = e[1..].to_vec();
    verts.extend(&f[1..]);
    verts.extend([w, v, u1, u]);
    let frame = Frame::new(cfg, i, j, verts)?;
    let targets = rung_targets(&frame, &e, &f, v, u1);
    let before = st.clone();
    let build: Build = Box::new(move |ep: [Edge; 2], fpc: [Edge; 2]| {
        for shared in [&before.f_piece, &before.e_piece] {
            let mut after = before.clone();
            after.t = t;
            after.pieces.push(shared.clone());
            after.e_piece = ep.clone();
            after.f_piece = fpc.clone();
            let (hv, hu) = hats(cfg, &after, t, &[&after.e_piece, &after.f_piece]);
            after.bsets.push(new_bset(w, &[&after.e_piece, &after.f_piece]));
            after.hat_v.push(hv);
            after.hat_u.push(hu);
            if check_step(cfg, &before, &after).is_ok() {
                return Some(Extended::State(after));
            }
        }
        None
    });
    let groups = standard_groups(&frame);
    run_rung("ladder_extend", cfg, Rung { frame, groups, build }, &targets)
}

fn last_stage(cfg: &CycleConfiguration, st: &LadderState, v: Vertex, u: Vertex) -> Result<Outcome<Extended>> {
    if st.t < 2 {
        return Err(bad("the final stage needs t >= 2"));
    }
    check_state(cfg, st)?;
    let k = cfg.k();
    let t = st.t + 1;
    let (pi, pj) = st.edge_index(cfg, st.t);
    let (i, j) = st.edge_index(cfg, t);
    let used = st.used();
    if v == u || used.contains(&v) || used.contains(&u) {
        return Err(bad("v and u must be distinct and off both paths"));
    }
    if !cfg.v_candidates(i, false).contains(&v) || !cfg.u_candidates(j, true).contains(&u) {
        return Err(bad("v must lie in e_{i+1} - last and u in f_{i+1} - last"));
    }
    let pe = cfg.c1().edge_in_order(pi);
    let pf = cfg.c2().edge_in_order(pj);
    let fp = &st.f_piece;
    let hv = link(&pe, fp).ok_or_else(|| bad("gbar' - gbar misses e_t - first"))?;
    let u1 = first_where(&pf[1..], |x| !fp.iter().any(|e| e.contains(x)))
        .ok_or_else(|| bad("f_t - first is covered by F_t"))?;
    let (ie, jf) = (cfg.c1().interior(i), cfg.c2().interior(j));
    let mut verts = ie.clone();
    verts.extend(&jf);
    verts.extend([hv, u, v, u1]);
    let frame = Frame::new(cfg, i, j, verts)?;
    let ev = |p: usize| frame.bit(ie[p - 2]);
    let fu = |p: usize| frame.bit(jf[p - 2]);
    let range = |g: &dyn Fn(usize) -> u64, a: usize, b: usize| (a..=b).fold(0u64, |m, p| m | g(p));
    let (a, b) = ((k - 2) / 2, (k - 1) / 2);
    let targets = [
        frame.bit(hv) | range(&ev, 2, a + 1) | range(&fu, k - b, k - 1) | frame.bit(u),
        frame.bit(v) | ev(a + 1) | range(&ev, a + 3, k - 1) | range(&fu, 2, k - 1 - b) | frame.bit(u1),
    ];
    let st = st.clone();
    let build: Build = Box::new(move |ep: [Edge; 2], _| {
        for head in [st.fpath_edges(), st.epath_edges()] {
            let mut es = head;
            es.extend(ep.iter().cloned());
            if let Ok(p) = LoosePath::from_edges(es) {
                if check_final(cfg, &st, v, u, &p).is_ok() {
                    return Some(Extended::Path(p));
                }
            }
        }
        None
    });
    let groups = standard_groups(&frame);
    run_rung("ladder_extend", cfg, Rung { frame, groups, build }, &targets)
}

/// One stage of the ladder: two new red pieces extending the current paths,
/// or the final red path, or a blue `C_{l1+l2}`.
pub fn ladder_extend(cfg: &CycleConfiguration, st: &LadderState, stage: Stage) -> Result<Outcome<Extended>> {
    if cfg.k() < 8 {
        return Err(bad(format!("lemma needs k >= 8, got {}", cfg.k())));
    }
    match stage {
        Stage::Initial => initial(cfg, st),
        Stage::Step => step(cfg, st),
        Stage::Final { v, u } => last_stage(cfg, st, v, u),
    }
}
