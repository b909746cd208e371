//! A lemma's vertex universe with local bit indices.
//!
//! Local index order is the order the caller lists vertices in, so "ascending
//! local index" means the paper's position order within each role.

use crate::connector::{merge_edges, CycleConfiguration};
use crate::core::{Edge, LooseCycle, Vertex};
use crate::error::{Error, Result};

pub(crate) const TA: u8 = 1;
pub(crate) const TB: u8 = 2;
pub(crate) const TC: u8 = 4;
pub(crate) const TD: u8 = 8;

pub(crate) fn bits(m: u64) -> impl Iterator<Item = usize> {
    let mut m = m;
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

pub(crate) fn count(m: u64) -> usize {
    m.count_ones() as usize
}

pub(crate) struct Frame<'a> {
    pub cfg: &'a CycleConfiguration,
    pub i: usize,
    pub j: usize,
    pub verts: Vec<Vertex>,
    pub ie: u64,
    pub jf: u64,
    pub w: u64,
    pub vprev: u64,
    pub vnext: u64,
    pub uprev: u64,
    pub unext: u64,
}

impl<'a> Frame<'a> {
    pub(crate) fn new(cfg: &'a CycleConfiguration, i: usize, j: usize, verts: Vec<Vertex>) -> Result<Frame<'a>> {
        if verts.len() > 64 {
            return Err(Error::InvalidInput(format!("lemma universe has {} vertices, at most 64 supported", verts.len())));
        }
        let mut f = Frame { cfg, i, j, verts: Vec::new(), ie: 0, jf: 0, w: 0, vprev: 0, vnext: 0, uprev: 0, unext: 0 };
        let ie = cfg.c1().interior(i);
        let jf = cfg.c2().interior(j);
        let (vp, vn) = (cfg.v_candidates(i, true), cfg.v_candidates(i, false));
        let (up, un) = (cfg.u_candidates(j, false), cfg.u_candidates(j, true));
        for (t, &v) in verts.iter().enumerate() {
            if f.verts.contains(&v) {
                return Err(Error::InvalidInput(format!("vertex {v} listed twice in lemma universe")));
            }
            let b = 1u64 << t;
            if ie.contains(&v) {
                f.ie |= b;
            } else if jf.contains(&v) {
                f.jf |= b;
            } else if cfg.w().binary_search(&v).is_ok() {
                f.w |= b;
            } else {
                let mut any = false;
                for (set, mask) in [(&vp, &mut f.vprev), (&vn, &mut f.vnext), (&up, &mut f.uprev), (&un, &mut f.unext)] {
                    if set.contains(&v) {
                        *mask |= b;
                        any = true;
                    }
                }
                if !any {
                    return Err(Error::InvalidInput(format!("vertex {v} cannot appear in a connector at ({i}, {j})")));
                }
            }
            f.verts.push(v);
        }
        Ok(f)
    }

    pub(crate) fn all(&self) -> u64 {
        if self.verts.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.verts.len()) - 1
        }
    }

    pub(crate) fn vb(&self) -> u64 {
        self.vprev | self.vnext
    }

    pub(crate) fn ub(&self) -> u64 {
        self.uprev | self.unext
    }

    pub(crate) fn bit(&self, v: Vertex) -> u64 {
        self.local(v).map_or(0, |t| 1u64 << t)
    }

    pub(crate) fn local(&self, v: Vertex) -> Option<usize> {
        self.verts.iter().position(|&x| x == v)
    }

    pub(crate) fn mask(&self, vs: &[Vertex]) -> u64 {
        vs.iter().fold(0, |m, &v| m | self.bit(v))
    }

    pub(crate) fn global(&self, m: u64) -> Vec<Vertex> {
        bits(m).map(|t| self.verts[t]).collect()
    }

    pub(crate) fn edge(&self, m: u64) -> Edge {
        Edge::new(self.global(m)).expect("frame edges have distinct vertices")
    }

    /// Connector types of `h` as a bit set; 0 if `h` is not a connector.
    pub(crate) fn types(&self, h: u64) -> u8 {
        if count(h) != self.cfg.k() {
            return 0;
        }
        let rest = h & !(self.ie | self.jf | self.w);
        let (v, u) = (rest & self.vb(), rest & self.ub());
        if count(rest) != 2 || count(v) != 1 || count(u) != 1 {
            return 0;
        }
        let (vp, vn) = (v & self.vprev != 0, v & self.vnext != 0);
        let (up, un) = (u & self.uprev != 0, u & self.unext != 0);
        (if vp && un { TA } else { 0 })
            | (if vn && up { TB } else { 0 })
            | (if vp && up { TC } else { 0 })
            | (if vn && un { TD } else { 0 })
    }

    /// Whether two disjoint connectors have complementary types.
    pub(crate) fn merge_ok(&self, a: u64, b: u64) -> bool {
        if a & b != 0 {
            return false;
        }
        let (ta, tb) = (self.types(a), self.types(b));
        (ta & TA != 0 && tb & TB != 0)
            || (ta & TB != 0 && tb & TA != 0)
            || (ta & TC != 0 && tb & TD != 0)
            || (ta & TD != 0 && tb & TC != 0)
    }

    pub(crate) fn merge(&self, a: u64, b: u64) -> Option<LooseCycle> {
        merge_edges(self.cfg, self.i, self.j, &self.edge(a), &self.edge(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connector::canonical_pair;
    use crate::core::{splitmix64, Color, KUniformColoring};

    #[test]
    fn merge_ok_agrees_with_splice() {
        for (k, l1, l2) in [(6, 2, 2), (6, 2, 3), (8, 3, 3), (8, 2, 3), (8, 2, 2)] {
            let (c1, c2) = canonical_pair(k, l1, l2).unwrap();
            let n = (k - 1) * (l1 + l2) + 3;
            let cfg = CycleConfiguration::new(KUniformColoring::uniform(n, k, Color::Blue).unwrap(), c1, c2).unwrap();
            let (i, j) = (1, 0);
            let mut verts: Vec<Vertex> = cfg.c1().edge_in_order((i + l1 - 1) % l1)[1..].to_vec();
            verts.extend(&cfg.c1().edge_in_order(i));
            verts.extend(&cfg.c1().edge_in_order((i + 1) % l1));
            verts.extend(&cfg.c2().edge_in_order((j + l2 - 1) % l2));
            verts.extend(&cfg.c2().edge_in_order(j));
            verts.extend(&cfg.c2().edge_in_order((j + 1) % l2));
            verts.extend(cfg.w());
            verts.sort_unstable();
            verts.dedup();
            verts.retain(|&v| v != cfg.c1().first(i) || l1 == 2);
            let f = Frame::new(&cfg, i, j, verts.clone());
            let Ok(f) = f else { continue };
            let mut s = 7u64;
            let core = f.ie | f.jf | f.w;
            let mut rnd = |m: u64| {
                let mut out = 0u64;
                for (pool, want) in [(m & f.vb(), 1), (m & f.ub(), 1), (m & core, k - 2)] {
                    let pool: Vec<usize> = bits(pool).collect();
                    let mut got = 0;
                    while got < want && !pool.is_empty() {
                        s = splitmix64(s);
                        let b = 1u64 << pool[(s % pool.len() as u64) as usize];
                        if out & b == 0 {
                            out |= b;
                            got += 1;
                        }
                    }
                }
                out
            };
            let mut agree = 0;
            for _ in 0..4000 {
                let a = rnd(f.all());
                let b = rnd(f.all() & !a);
                let fast = f.merge_ok(a, b);
                let slow = f.types(a) != 0 && f.types(b) != 0 && f.merge(a, b).is_some();
                assert_eq!(fast, slow, "k={k} l1={l1} l2={l2} {:?} {:?}", f.edge(a), f.edge(b));
                agree += usize::from(fast);
            }
            assert!(agree > 0);
        }
    }
}
