use serde::Serialize;

use crate::connector::CycleConfiguration;
use crate::core::{LoosePath, Vertex};
use crate::error::{Error, Result};

use super::checks::{check_red_pair, check_red_pair_strong};
use super::frame::Frame;
use super::walk::{Claims, Group};
use super::{run_claims, Outcome, Prober};

/// Which edge must keep a vertex outside the path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FreeSide {
    E,
    F,
}

/// Hypotheses of the red pair lemma at `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairParams {
    /// At most one interior vertex of `e_i` the path must avoid.
    pub c: Option<Vertex>,
    pub b: [Vertex; 2],
    /// `v' ∈ e_{i-1} - first`.
    pub v1: Vertex,
    /// `v'' ∈ e_{i+1} - last`.
    pub v2: Vertex,
    /// `u' ∈ f_{j-1} - first`.
    pub u1: Vertex,
    /// `u'' ∈ f_{j+1} - last`.
    pub u2: Vertex,
    pub free: FreeSide,
}

pub(crate) fn check_ends(cfg: &CycleConfiguration, i: usize, j: usize, ends: [Vertex; 4]) -> Result<()> {
    if cfg.k() < 8 {
        return Err(Error::InvalidInput(format!("lemma needs k >= 8, got {}", cfg.k())));
    }
    if i >= cfg.l1() || j >= cfg.l2() {
        return Err(Error::InvalidInput(format!("({i}, {j}) is not an edge pair")));
    }
    let [v1, v2, u1, u2] = ends;
    let ok = cfg.v_candidates(i, true).contains(&v1)
        && cfg.v_candidates(i, false).contains(&v2)
        && cfg.u_candidates(j, false).contains(&u1)
        && cfg.u_candidates(j, true).contains(&u2);
    let mut s = ends.to_vec();
    s.sort_unstable();
    s.dedup();
    if !ok || s.len() != 4 {
        return Err(Error::InvalidInput(format!("boundary vertices {ends:?} violate the lemma hypotheses")));
    }
    Ok(())
}

pub(crate) fn check_w(cfg: &CycleConfiguration, b: &[Vertex]) -> Result<()> {
    let mut s = b.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != b.len() || b.iter().any(|v| cfg.w().binary_search(v).is_err()) {
        return Err(Error::InvalidInput(format!("{b:?} are not distinct vertices of W")));
    }
    Ok(())
}

/// Standard move groups for a frame whose vertices are listed as
/// e-interior, f-interior, W, boundary.
pub(crate) fn standard_groups(f: &Frame) -> Vec<Group> {
    let (e, fi, w, vb, ub) = (f.ie, f.jf, f.w, f.vb(), f.ub());
    vec![
        Group::new(e, e, false, true),
        Group::new(fi, fi, true, false),
        Group::new(vb, vb, false, false),
        Group::new(ub, ub, false, false),
        Group::new(w, e, false, true),
        Group::new(w, fi, false, false),
        Group::new(e, w, false, false),
        Group::new(fi, w, true, false),
        Group::new(e, fi, false, false),
        Group::new(fi, e, true, true),
        Group::new(w, w, false, false),
    ]
}

pub(crate) const STANDARD_DOUBLES: [(usize, usize); 3] = [(2, 3), (2, 10), (3, 10)];

struct Pair<'a> {
    frame: Frame<'a>,
    groups: Vec<Group>,
    check: Box<dyn Fn(&LoosePath) -> bool + 'a>,
}

impl Claims for Pair<'_> {
    type Out = LoosePath;

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

    fn assemble(&self, new: u64, partners: &[u64]) -> Option<LoosePath> {
        let (a, b) = (self.frame.edge(new), self.frame.edge(partners[0]));
        [[a.clone(), b.clone()], [b, a]]
            .into_iter()
            .filter_map(|es| LoosePath::from_edges(es.to_vec()).ok())
            .find(|p| (self.check)(p))
    }
}

fn run_pair(op: &'static str, cfg: &CycleConfiguration, pair: Pair, targets: [u64; 2]) -> Result<Outcome<LoosePath>> {
    let mut prober = Prober::new(cfg.coloring());
    let fin = || pair.assemble(targets[0], &[targets[1]]);
    let res = run_claims(&pair, &mut prober, &targets, fin);
    super::wrap(op, res, prober)
}

/// A red 2-path with conditions (i)-(iii), or a blue `C_{l1+l2}`.
pub fn red_pair_path(cfg: &CycleConfiguration, i: usize, j: usize, prm: &PairParams) -> Result<Outcome<LoosePath>> {
    check_ends(cfg, i, j, [prm.v1, prm.v2, prm.u1, prm.u2])?;
    check_w(cfg, &prm.b)?;
    let k = cfg.k();
    let mut ie = cfg.c1().interior(i);
    if let Some(c) = prm.c {
        if !ie.contains(&c) {
            return Err(Error::InvalidInput(format!("{c} is not an interior vertex of e_{i}")));
        }
        ie.retain(|&v| v != c);
    }
    let jf = cfg.c2().interior(j);
    let l = usize::from(prm.c.is_some());
    let mut verts = ie.clone();
    verts.extend(&jf);
    verts.extend(prm.b);
    verts.extend([prm.v1, prm.v2, prm.u1, prm.u2]);
    let frame = Frame::new(cfg, i, j, verts)?;
    // paper positions: v_p is ie[p-2], u_p is jf[p-2]
    let v = |p: usize| frame.bit(ie[p - 2]);
    let u = |p: usize| frame.bit(jf[p - 2]);
    let range = |g: &dyn Fn(usize) -> u64, a: usize, b: usize| (a..=b).fold(0u64, |m, p| m | g(p));
    let (bv1, bv2, bu1, bu2) = (frame.bit(prm.v1), frame.bit(prm.v2), frame.bit(prm.u1), frame.bit(prm.u2));
    let (w1, w2) = (frame.bit(prm.b[0]), frame.bit(prm.b[1]));
    let targets = if l == 1 {
        let a = (k - 1) / 2;
        [
            bv1 | range(&v, 2, a) | w1 | range(&u, a + 2, k - 1) | bu2,
            range(&v, a + 2, k - 2) | bv2 | w2 | bu1 | range(&u, 2, a) | u(a + 2),
        ]
    } else {
        let a = k / 2;
        let g1 = bv1 | range(&v, 2, a) | range(&u, a + 1, k - 1) | bu2;
        let g2 = match prm.free {
            FreeSide::E => v(a) | range(&v, a + 2, k - 1) | bv2 | bu1 | range(&u, 2, a),
            FreeSide::F => range(&v, a + 1, k - 1) | bv2 | bu1 | range(&u, 2, a - 1) | u(a + 1),
        };
        [g1, g2]
    };
    let groups = super::pair::standard_groups(&frame);
    let check = Box::new(move |p: &LoosePath| check_red_pair(cfg, i, j, prm, p).is_ok());
    run_pair("red_pair_path", cfg, Pair { frame, groups, check }, targets)
}

/// A red 2-path inside the two interiors and the four boundary vertices,
/// meeting each interior in at least three vertices.
pub fn red_pair_path_strong(
    cfg: &CycleConfiguration,
    i: usize,
    j: usize,
    v1: Vertex,
    v2: Vertex,
    u1: Vertex,
    u2: Vertex,
) -> Result<Outcome<LoosePath>> {
    let ends = [v1, v2, u1, u2];
    check_ends(cfg, i, j, ends)?;
    let k = cfg.k();
    let (ie, jf) = (cfg.c1().interior(i), cfg.c2().interior(j));
    let mut verts = ie.clone();
    verts.extend(&jf);
    verts.extend(ends);
    let frame = Frame::new(cfg, i, j, verts)?;
    let v = |p: usize| frame.bit(ie[p - 2]);
    let u = |p: usize| frame.bit(jf[p - 2]);
    let range = |g: &dyn Fn(usize) -> u64, a: usize, b: usize| (a..=b).fold(0u64, |m, p| m | g(p));
    let (a, b) = ((k - 2) / 2, (k - 1) / 2);
    let targets = [
        frame.bit(v1) | range(&v, 2, a + 1) | range(&u, k - b, k - 1) | frame.bit(u2),
        frame.bit(v2) | v(a + 1) | range(&v, a + 3, k - 1) | range(&u, 2, k - 1 - b) | frame.bit(u1),
    ];
    let groups = standard_groups(&frame);
    let check = Box::new(move |p: &LoosePath| check_red_pair_strong(cfg, i, j, ends, p).is_ok());
    run_pair("red_pair_path_strong", cfg, Pair { frame, groups, check }, targets)
}
