//! Red half-length cycles from two disjoint blue cycles.
//!
//! A red path is grown along the rungs `e_r f_r` of the two blue cycles and
//! closed back to its first edge. At every rung the two candidate edges are
//! chosen so that if both are blue, they complete a blue `C_n` together with
//! the cycle edges; that cycle is recovered by a search over the blue edges
//! in hand.

use crate::connector::CycleConfiguration;
use crate::core::{Color, Edge, KUniformColoring, LooseCycle, LoosePath, Vertex};
use crate::error::{Error, Result};

use super::frame::Frame;
use super::ladder::{ladder_extend, ladder_pair, Extended, Stage};
use super::pair::{red_pair_path, standard_groups, FreeSide, PairParams, STANDARD_DOUBLES};
use super::walk::{Claims, Group};
use super::{construction_error, run_claims, Dichotomy, Outcome, Prober};

type Flow = Result<Dichotomy<LooseCycle>>;

struct Ctx<'a> {
    op: &'static str,
    cfg: &'a CycleConfiguration,
    n: usize,
    prober: Prober<'a>,
    blues: Vec<Edge>,
}

/// A loose cycle of length `n` using only `edges`.
fn find_cycle(edges: &[Edge], n: usize) -> Option<LooseCycle> {
    fn grow(edges: &[Edge], n: usize, path: &mut Vec<usize>) -> Option<LooseCycle> {
        let last = *path.last().expect("non-empty");
        if path.len() == n {
            if edges[last].overlap(&edges[path[0]]) != 1 {
                return None;
            }
            return LooseCycle::from_edges(path.iter().map(|&t| edges[t].clone()).collect()).ok();
        }
        for t in path[0] + 1..edges.len() {
            if path.contains(&t) || edges[last].overlap(&edges[t]) != 1 {
                continue;
            }
            let closing = path.len() + 1 == n;
            let clash = path[..path.len() - 1].iter().enumerate().any(|(s, &q)| {
                let o = edges[q].overlap(&edges[t]);
                if s == 0 && closing {
                    o != 1
                } else {
                    o != 0
                }
            });
            if clash {
                continue;
            }
            path.push(t);
            if let Some(c) = grow(edges, n, path) {
                return Some(c);
            }
            path.pop();
        }
        None
    }
    (0..edges.len()).find_map(|s| grow(edges, n, &mut vec![s]))
}

fn pos_in(side: &[Vertex], pred: impl Fn(Vertex) -> bool, last: bool) -> Option<Vertex> {
    let mut it = side.iter().copied().filter(|&v| pred(v));
    if last {
        it.last()
    } else {
        it.next()
    }
}

fn without(side: &[Vertex], drop: &[usize]) -> Vec<Vertex> {
    side.iter().enumerate().filter(|(p, _)| !drop.contains(p)).map(|(_, &v)| v).collect()
}

impl<'a> Ctx<'a> {
    /// Rung `r` (1-based, cyclic) of the first cycle, in traversal order.
    fn e(&self, r: usize) -> Vec<Vertex> {
        self.cfg.c1().edge_in_order(r - 1)
    }

    fn f(&self, r: usize) -> Vec<Vertex> {
        self.cfg.c2().edge_in_order(r - 1)
    }

    fn fail(&self, detail: impl Into<String>, cand: Option<Edge>) -> Error {
        construction_error(self.op, detail, cand, &self.prober)
    }

    fn edge(&self, vs: Vec<Vertex>) -> Result<Edge> {
        let len = vs.len();
        match Edge::new(vs) {
            Ok(e) if len == self.cfg.k() && e.len() == len => Ok(e),
            _ => Err(self.fail("candidate edge has repeated or missing vertices", None)),
        }
    }

    fn red(&mut self, e: &Edge) -> bool {
        let c = self.prober.probe(e);
        if c == Color::Blue && !self.blues.contains(e) {
            self.blues.push(e.clone());
        }
        c == Color::Red
    }

    fn sub<R>(&mut self, r: Result<Outcome<R>>) -> Result<Dichotomy<R>> {
        match r {
            Ok(o) => {
                self.prober.absorb(&o.trace);
                Ok(o.result)
            }
            Err(e @ Error::Construction { .. }) => Err(e),
            Err(e) => Err(self.fail(format!("sub-lemma rejected its input: {e}"), None)),
        }
    }

    /// The blue `C_n` formed by the cycle edges and the blue probes.
    fn blue(&self) -> Flow {
        let mut edges: Vec<Edge> = self.cfg.c1().edges().to_vec();
        edges.extend(self.cfg.c2().edges().iter().cloned());
        edges.extend(self.blues.iter().cloned());
        find_cycle(&edges, self.n)
            .map(Dichotomy::Blue)
            .ok_or_else(|| self.fail(format!("both candidates are blue but no blue C_{} is formed", self.n), None))
    }

    fn close(&self, edges: Vec<Edge>) -> Flow {
        LooseCycle::from_edges(edges)
            .map(Dichotomy::Red)
            .map_err(|e| self.fail(format!("red closing edges do not form a cycle: {e}"), None))
    }

    fn path_ok(&self, path: &[Edge]) -> Result<()> {
        LoosePath::from_edges(path.to_vec())
            .map(|_| ())
            .map_err(|e| self.fail(format!("extended path is not loose: {e}"), path.last().cloned()))
    }

    /// Vertex of `side - first` in the last edge of `path` but not the one
    /// before, latest in traversal order.
    fn link(&self, path: &[Edge], side: &[Vertex]) -> Result<Vertex> {
        let (last, prev) = (&path[path.len() - 1], &path[path.len() - 2]);
        pos_in(&side[1..], |v| last.contains(v) && !prev.contains(v), true)
            .ok_or_else(|| self.fail("path end has no link vertex", Some(last.clone())))
    }

    /// Extend the path by one edge at rung `r`.
    fn rung(&mut self, path: &mut Vec<Edge>, r: usize) -> Result<Option<LooseCycle>> {
        let k = self.cfg.k();
        let x = self.link(path, &self.e(r - 1))?;
        let y = self.link(path, &self.f(r - 1))?;
        let (e, f) = (self.e(r), self.f(r));
        let mut h = e[1..k - 2].to_vec();
        h.extend([x, f[k - 2], f[k - 1]]);
        let mut h2 = f[1..k - 2].to_vec();
        h2.extend([y, e[k - 2], e[k - 1]]);
        for g in [h, h2] {
            let g = self.edge(g)?;
            if self.red(&g) {
                path.push(g);
                self.path_ok(path)?;
                return Ok(None);
            }
        }
        match self.blue()? {
            Dichotomy::Blue(c) => Ok(Some(c)),
            Dichotomy::Red(_) => unreachable!(),
        }
    }

    fn pair(&mut self, c: Option<Vertex>, free: FreeSide) -> Result<Dichotomy<LoosePath>> {
        let k = self.cfg.k();
        let (e1, f1) = (self.e(1), self.f(1));
        let w = self.cfg.w();
        let prm = PairParams { c, b: [w[0], w[1]], v1: e1[0], v2: e1[k - 1], u1: f1[0], u2: f1[k - 1], free };
        let r = red_pair_path(self.cfg, 0, 0, &prm);
        self.sub(r)
    }
}

fn setup(c: &KUniformColoring, c1: &LooseCycle, c2: &LooseCycle, odd: bool) -> Result<(CycleConfiguration, usize)> {
    let (l1, l2) = (c1.len(), c2.len());
    let n = l1 + l2;
    let k = c.k();
    if k < 8 {
        return Err(Error::InvalidInput(format!("lemma needs k >= 8, got {k}")));
    }
    let shape = if odd { n >= 5 && l2 == l1 + 1 } else { n >= 6 && l2 == l1 + 2 };
    if !shape {
        return Err(Error::InvalidInput(format!("cycle lengths {l1} and {l2} do not fit the lemma")));
    }
    let want = (k - 1) * n + (n - 1) / 2;
    if c.n() != want {
        return Err(Error::InvalidInput(format!("coloring has {} vertices, lemma needs {want}", c.n())));
    }
    for e in c1.edges().iter().chain(c2.edges()) {
        if c.color(e) != Color::Blue {
            return Err(Error::InvalidInput(format!("cycle edge {e:?} is not blue")));
        }
    }
    let cfg = CycleConfiguration::new(c.clone(), c1.clone(), c2.clone())?;
    Ok((cfg, n))
}

fn finish(ctx: Ctx, flow: Flow) -> Result<Outcome<LooseCycle>> {
    Ok(ctx.prober.finish(flow?))
}

fn odd_flow(ctx: &mut Ctx) -> Flow {
    let k = ctx.cfg.k();
    let l1 = ctx.cfg.l1();
    let e1 = ctx.e(1);
    let f1 = ctx.f(1);
    if ctx.n == 5 {
        let p = match ctx.pair(Some(e1[k - 2]), FreeSide::F)? {
            Dichotomy::Red(p) => p,
            Dichotomy::Blue(c) => return Ok(Dichotomy::Blue(c)),
        };
        let (g1, g2) = (p.edges()[0].clone(), p.edges()[1].clone());
        let only = |a: &Edge, b: &Edge| {
            let (a, b) = (a.clone(), b.clone());
            move |v: Vertex| a.contains(v) && !b.contains(v)
        };
        let w1 = pos_in(ctx.cfg.w(), only(&g1, &g2), false).ok_or_else(|| ctx.fail("g1 uses no vertex of W", None))?;
        let miss = || ctx.fail("the 2-path misses a link vertex", None);
        let x1 = pos_in(&e1[1..], only(&g1, &g2), false).ok_or_else(miss)?;
        let y1 = pos_in(&f1[..k - 1], only(&g2, &g1), false).ok_or_else(miss)?;
        let x2 = pos_in(&e1[..k - 1], only(&g2, &g1), false).ok_or_else(miss)?;
        let (e2, f3) = (ctx.e(2), ctx.f(3));
        let mut h = e2[1..k - 2].to_vec();
        h.extend([x1, f3[k - 2], y1]);
        let mut h2 = without(&f3, &[k - 3, k - 2, k - 1]);
        h2.extend([w1, e2[k - 2], x2]);
        for g in [h, h2] {
            let g = ctx.edge(g)?;
            if ctx.red(&g) {
                return ctx.close(vec![g1, g2, g]);
            }
        }
        return ctx.blue();
    }
    let p = match ctx.pair(None, FreeSide::F)? {
        Dichotomy::Red(p) => p,
        Dichotomy::Blue(c) => return Ok(Dichotomy::Blue(c)),
    };
    let mut path = p.edges().to_vec();
    for r in 2..=l1 - 2 {
        if let Some(c) = ctx.rung(&mut path, r)? {
            return Ok(Dichotomy::Blue(c));
        }
    }
    let (g1, g2) = (path[0].clone(), path[1].clone());
    let in_g1 = |v: Vertex| g1.contains(v) && !g2.contains(v);
    let xc = pos_in(&e1[..k - 1], in_g1, false).ok_or_else(|| ctx.fail("g1 - g2 misses e_1", None))?;
    let yc = ctx.link(&path, &ctx.f(l1 - 2))?;
    let (el, fm) = (ctx.e(l1), ctx.f(l1 - 1));
    let mut hc = el[2..k - 1].to_vec();
    hc.extend([xc, fm[k - 2], fm[k - 1]]);
    let hc = ctx.edge(hc)?;
    let mut hc2 = fm[1..k - 2].to_vec();
    hc2.extend([yc, el[0], el[1]]);
    let hc2 = ctx.edge(hc2)?;
    if ctx.red(&hc) {
        let xr = ctx.link(&path, &ctx.e(l1 - 2))?;
        let em = ctx.e(l1 - 1);
        let mut hr = em[1..k - 2].to_vec();
        hr.extend([xr, fm[k - 3], fm[k - 1]]);
        let mut hr2 = without(&fm, &[0, k - 3, k - 1]);
        hr2.extend([yc, em[k - 2], em[k - 1]]);
        for g in [hr, hr2] {
            let g = ctx.edge(g)?;
            if ctx.red(&g) {
                let mut cyc = path.clone();
                cyc.extend([g, hc]);
                return ctx.close(cyc);
            }
        }
        return ctx.blue();
    }
    if !ctx.red(&hc2) {
        return ctx.blue();
    }
    let yf = pos_in(&f1[..k - 1], in_g1, false).ok_or_else(|| ctx.fail("g1 - g2 misses f_1", None))?;
    let fl = ctx.f(ctx.cfg.l2());
    let mut hf = without(&el, &[1, k - 1]);
    hf.extend([fl[k - 2], yf]);
    let mut hf2 = without(&fl, &[k - 2, k - 1]);
    hf2.extend([el[1], xc]);
    for g in [hf, hf2] {
        let g = ctx.edge(g)?;
        if ctx.red(&g) {
            let mut cyc = path.clone();
            cyc.extend([hc2, g]);
            return ctx.close(cyc);
        }
    }
    ctx.blue()
}

/// The closing walk for `n = 6`: exits close a red `C_4` with the 2-path.
struct Close<'a> {
    frame: Frame<'a>,
    groups: Vec<Group>,
    head: [Edge; 2],
}

impl Claims for Close<'_> {
    type Out = LooseCycle;

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

    fn assemble(&self, new: u64, partners: &[u64]) -> Option<LooseCycle> {
        let (a, b) = (self.frame.edge(new), self.frame.edge(partners[0]));
        [[a.clone(), b.clone()], [b, a]].into_iter().find_map(|[x, y]| {
            let [g1, g2] = self.head.clone();
            LooseCycle::from_edges(vec![g1, g2, x, y]).ok()
        })
    }
}

fn six_flow(ctx: &mut Ctx) -> Flow {
    let k = ctx.cfg.k();
    let (e1, f1) = (ctx.e(1), ctx.f(1));
    let p = match ctx.pair(Some(e1[k - 2]), FreeSide::F)? {
        Dichotomy::Red(p) => p,
        Dichotomy::Blue(c) => return Ok(Dichotomy::Blue(c)),
    };
    let (g1, g2) = (p.edges()[0].clone(), p.edges()[1].clone());
    let only = |a: &Edge, b: &Edge| {
        let (a, b) = (a.clone(), b.clone());
        move |v: Vertex| a.contains(v) && !b.contains(v)
    };
    let miss = || ctx.fail("the 2-path misses a link vertex", None);
    let w1 = pos_in(ctx.cfg.w(), only(&g1, &g2), false).ok_or_else(miss)?;
    let x = pos_in(&e1[1..], only(&g2, &g1), false).ok_or_else(miss)?;
    let x1 = pos_in(&e1[..k - 1], only(&g1, &g2), false).ok_or_else(miss)?;
    let y = pos_in(&f1[1..], |v| !g1.contains(v) && !g2.contains(v), false).ok_or_else(miss)?;
    let y1 = pos_in(&f1[1..], only(&g2, &g1), false).ok_or_else(miss)?;
    let (e2, f2) = (ctx.e(2), ctx.f(2));
    let mut verts = e2[1..k - 1].to_vec();
    verts.extend(&f2[1..]);
    verts.extend([x, x1, y, y1, e1[k - 2], w1]);
    let frame = Frame::new(ctx.cfg, 1, 1, verts).map_err(|e| ctx.fail(format!("closing universe: {e}"), None))?;
    let ev = |p: usize| frame.bit(e2[p - 1]);
    let fu = |p: usize| frame.bit(f2[p - 1]);
    let range = |g: &dyn Fn(usize) -> u64, a: usize, b: usize| (a..=b).fold(0u64, |m, p| m | g(p));
    let (a, c) = (k / 2, k.div_ceil(2));
    let targets = [
        frame.bit(x) | range(&ev, 2, a) | range(&fu, k - c + 1, k),
        ev(a) | range(&ev, a + 2, k - 1) | frame.bit(x1) | frame.bit(y) | range(&fu, 2, a),
    ];
    let groups = standard_groups(&frame);
    let close = Close { frame, groups, head: [g1, g2] };
    let fin = || close.assemble(targets[0], &[targets[1]]);
    let res = run_claims(&close, &mut ctx.prober, &targets, fin);
    res.map_err(|(detail, cand)| ctx.fail(detail, cand))
}

fn even_flow(ctx: &mut Ctx) -> Flow {
    if ctx.n == 6 {
        return six_flow(ctx);
    }
    let k = ctx.cfg.k();
    let l1 = ctx.cfg.l1();
    let e1 = ctx.e(1);
    let mut halves = Vec::new();
    for free in [FreeSide::E, FreeSide::F] {
        match ctx.pair(Some(e1[k - 2]), free)? {
            Dichotomy::Red(p) => halves.push(p),
            Dichotomy::Blue(c) => return Ok(Dichotomy::Blue(c)),
        }
    }
    let st = ladder_pair(ctx.cfg, 0, 0, &halves[0], &halves[1]);
    let r = ladder_extend(ctx.cfg, &st, Stage::Step);
    let mut path = match ctx.sub(r)? {
        Dichotomy::Red(Extended::State(s)) => s.epath_edges(),
        Dichotomy::Red(Extended::Path(_)) => return Err(ctx.fail("a step returned a final path", None)),
        Dichotomy::Blue(c) => return Ok(Dichotomy::Blue(c)),
    };
    for r in 3..l1 {
        if let Some(c) = ctx.rung(&mut path, r)? {
            return Ok(Dichotomy::Blue(c));
        }
    }
    let (g1, g2) = (path[0].clone(), path[1].clone());
    let in_g1 = |v: Vertex| g1.contains(v) && !g2.contains(v);
    let w1 = pos_in(ctx.cfg.w(), in_g1, false).ok_or_else(|| ctx.fail("g1 uses no vertex of W", None))?;
    let x1 = pos_in(&e1[..k - 1], in_g1, false).ok_or_else(|| ctx.fail("g1 - g2 misses e_1", None))?;
    let x = ctx.link(&path, &ctx.e(l1 - 1))?;
    let y = ctx.link(&path, &ctx.f(l1 - 1))?;
    let (el, fl) = (ctx.e(l1), ctx.f(l1));
    let mut hc = el[1..k - 2].to_vec();
    hc.extend([x, w1, fl[k - 1]]);
    let mut hc2 = fl[1..k - 2].to_vec();
    hc2.extend([y, el[k - 2], x1]);
    for g in [hc, hc2] {
        let g = ctx.edge(g)?;
        if ctx.red(&g) {
            let mut cyc = path.clone();
            cyc.push(g);
            return ctx.close(cyc);
        }
    }
    ctx.blue()
}

/// A red `C_{(n+1)/2}` or a blue `C_n`, given blue cycles of lengths
/// `(n-1)/2` and `(n+1)/2` on `(k-1)n + (n-1)/2` vertices.
pub fn half_cycle_odd(c: &KUniformColoring, c1: &LooseCycle, c2: &LooseCycle) -> Result<Outcome<LooseCycle>> {
    let (cfg, n) = setup(c, c1, c2, true)?;
    let mut ctx = Ctx { op: "half_cycle_odd", cfg: &cfg, n, prober: Prober::new(cfg.coloring()), blues: Vec::new() };
    let flow = odd_flow(&mut ctx);
    finish(ctx, flow)
}

/// A red `C_{n/2+1}` or a blue `C_n`, given blue cycles of lengths `n/2-1`
/// and `n/2+1` on `(k-1)n + (n-1)/2` vertices.
pub fn half_cycle_even(c: &KUniformColoring, c1: &LooseCycle, c2: &LooseCycle) -> Result<Outcome<LooseCycle>> {
    let (cfg, n) = setup(c, c1, c2, false)?;
    let mut ctx = Ctx { op: "half_cycle_even", cfg: &cfg, n, prober: Prober::new(cfg.coloring()), blues: Vec::new() };
    let flow = even_flow(&mut ctx);
    finish(ctx, flow)
}
