use serde::Serialize;

use crate::core::{LoosePath, Vertex};

/// Two red 2-paths `E1 = g1 g1'` and `F1 = g1 ḡ1'` sharing their first edge,
/// with the witnesses `B'`, `v̄`, `ū` of the branching lemma.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchPair {
    pub e1: LoosePath,
    pub f1: LoosePath,
    pub b_prime: [Vertex; 2],
    pub v_bar: Vertex,
    pub u_bar: Vertex,
}

use crate::connector::CycleConfiguration;
use crate::error::{Error, Result};

use super::checks::check_branch;
use super::frame::{count, Frame};
use super::pair::{check_w, standard_groups, STANDARD_DOUBLES};
use super::walk::{subsets, Claims, Group};
use super::{run_claims, wrap, Outcome, Prober};

struct Branch<'a> {
    frame: Frame<'a>,
    groups: Vec<Group>,
    b: [Vertex; 3],
    e: Vec<Vertex>,
    f: Vec<Vertex>,
}

impl Branch<'_> {
    /// Vertex of `side` usable as `v̄` or `ū`: outside both paths, leaving
    /// a non-end vertex of `side` outside `own`. Non-first vertices are
    /// preferred.
    fn bar(&self, side: &[Vertex], used: u64, own: u64) -> Option<Vertex> {
        let f = &self.frame;
        let sm = f.mask(side);
        let ends = f.bit(side[0]) | f.bit(side[side.len() - 1]);
        let mut cands: Vec<Vertex> = f.global(sm & !used);
        cands.sort_by_key(|&x| (x == side[0], x));
        cands.into_iter().find(|&x| sm & !own & !ends & !f.bit(x) != 0)
    }

    fn diff_ok(&self, a: u64, b: u64) -> bool {
        let d = a & !b;
        d & self.frame.ie != 0 && d & self.frame.jf != 0
    }
}

impl Claims for Branch<'_> {
    type Out = BranchPair;

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

    fn partners(&self) -> usize {
        2
    }

    fn partner_ok(&self, new: u64, p: u64) -> bool {
        count(new & p) == 1 && self.diff_ok(new, p) && self.diff_ok(p, new)
    }

    fn assemble(&self, new: u64, partners: &[u64]) -> Option<BranchPair> {
        let f = &self.frame;
        let (p, q) = (partners[0], partners[1]);
        let used = new | p | q;
        let bm = f.mask(&self.b);
        let spread = [new & !p, p & !new, new & !q, q & !new];
        let bp = subsets(bm, 2).find(|&m| used & bm & !m == 0 && spread.iter().all(|d| count(d & m) == 1))?;
        let v_bar = self.bar(&self.e, used, new | p)?;
        let u_bar = self.bar(&self.f, used, new | q)?;
        let path = |a: u64, b: u64| LoosePath::from_edges(vec![f.edge(a), f.edge(b)]).ok();
        let g = f.global(bp);
        let cand = BranchPair { e1: path(new, p)?, f1: path(new, q)?, b_prime: [g[0], g[1]], v_bar, u_bar };
        check_branch(f.cfg, f.i, f.j, &self.b, &cand).ok().map(|_| cand)
    }
}

/// Two red 2-paths sharing their first edge with the seven bullets of the
/// branching lemma, or a blue `C_{l1+l2}`.
pub fn branch_paths(cfg: &CycleConfiguration, i: usize, j: usize, b: [Vertex; 3]) -> Result<Outcome<BranchPair>> {
    if cfg.k() < 8 {
        return Err(Error::InvalidInput(format!("lemma needs k >= 8, got {}", cfg.k())));
    }
    if i >= cfg.l1() || j >= cfg.l2() {
        return Err(Error::InvalidInput(format!("({i}, {j}) is not an edge pair")));
    }
    check_w(cfg, &b)?;
    let k = cfg.k();
    let e = cfg.c1().edge_in_order(i);
    let f = cfg.c2().edge_in_order(j);
    let mut verts = e.clone();
    verts.extend(&f);
    verts.extend(b);
    let frame = Frame::new(cfg, i, j, verts)?;
    let v = |p: usize| frame.bit(e[p - 1]);
    let u = |p: usize| frame.bit(f[p - 1]);
    let range = |g: &dyn Fn(usize) -> u64, a: usize, b: usize| (a..=b).fold(0u64, |m, p| m | g(p));
    let (w1, w2) = (frame.bit(b[0]), frame.bit(b[1]));
    let (a, c) = ((k - 1) / 2, k / 2);
    let targets = [
        range(&v, 1, a) | w1 | range(&u, k - c + 1, k),
        v(a) | range(&v, a + 3, k) | w2 | range(&u, 1, a),
        range(&v, a + 2, k) | w2 | range(&u, 1, a - 1) | u(k - c + 1),
    ];
    let groups = standard_groups(&frame);
    let lemma = Branch { frame, groups, b, e, f };
    let mut prober = Prober::new(cfg.coloring());
    let fin = || lemma.assemble(targets[0], &targets[1..]);
    let res = run_claims(&lemma, &mut prober, &targets, fin);
    wrap("branch_paths", res, prober)
}
