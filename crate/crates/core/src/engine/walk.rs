//! The claim walk shared by the connector lemmas.
//!
//! To show a target edge `h_1` is red, the proofs walk a sequence of
//! connectors `h_1, h_2, ...`, each obtained from the last by trading one or
//! two vertices of `h_1` for vertices outside it. A red `h_{t+1}` together
//! with red partner edges disjoint from `h_t` gives the lemma's red
//! structure; a blue partner merges with the blue `h_t`; a blue connector
//! disjoint from an earlier blue one of complementary type merges too.
//!
//! Here a move is only probed if some choice of partners would turn a red
//! answer into a valid output, so every red probe is usable. Moves are tried
//! in the lemma's preference order with backtracking.

use std::collections::HashSet;

use crate::core::{Color, LooseCycle};

use super::frame::{bits, Frame};
use super::Prober;

/// Trade a vertex of `out` for one of `inn`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Group {
    pub out: u64,
    pub inn: u64,
    pub out_desc: bool,
    pub in_desc: bool,
}

impl Group {
    pub(crate) fn new(out: u64, inn: u64, out_desc: bool, in_desc: bool) -> Group {
        Group { out, inn, out_desc, in_desc }
    }
}

pub(crate) trait Claims {
    type Out;
    fn frame(&self) -> &Frame<'_>;
    /// The lemma's vertex universe.
    fn pool(&self) -> u64;
    fn groups(&self) -> &[Group];
    /// Pairs of groups whose moves may be taken together.
    fn doubles(&self) -> &[(usize, usize)] {
        &[]
    }
    fn partners(&self) -> usize {
        1
    }
    /// Cheap necessary condition on a single partner.
    fn partner_ok(&self, _new: u64, _p: u64) -> bool {
        true
    }
    /// The red structure made of `new` and the partners, if it satisfies the
    /// lemma's conditions.
    fn assemble(&self, new: u64, partners: &[u64]) -> Option<Self::Out>;
}

pub(crate) enum Claim<O> {
    Holds,
    Red(O),
    Blue(LooseCycle),
    Stuck,
}

const NODE_BUDGET: usize = 20_000;
/// Nodes explored before blue partners of blue states are probed.
const FALLBACK_AFTER: usize = 256;

/// Probing context shared by all walks of one lemma call.
pub(crate) struct Walker<'p, 'c> {
    pub prober: &'p mut Prober<'c>,
    /// Blue connectors seen so far, as local masks.
    pub blues: Vec<u64>,
}

fn ordered(m: u64, desc: bool) -> Vec<u64> {
    let mut v: Vec<u64> = bits(m).map(|b| 1u64 << b).collect();
    if desc {
        v.reverse();
    }
    v
}

/// All `k`-subsets of `pool`, lowest positions first.
pub(crate) fn subsets(pool: u64, k: usize) -> impl Iterator<Item = u64> {
    let pos: Vec<usize> = bits(pool).collect();
    let n = pos.len();
    let mut cur: Option<u64> = (k <= n && n < 64).then(|| if k == 0 { 0 } else { (1u64 << k) - 1 });
    std::iter::from_fn(move || {
        let c = cur?;
        let out = bits(c).fold(0u64, |m, t| m | 1u64 << pos[t]);
        cur = if c == 0 {
            None
        } else {
            let u = c & c.wrapping_neg();
            let v = c + u;
            let next = v + (((v ^ c) / u) >> 2);
            (next < (1u64 << n)).then_some(next)
        };
        Some(out)
    })
}

impl<'p, 'c> Walker<'p, 'c> {
    pub(crate) fn new(prober: &'p mut Prober<'c>) -> Walker<'p, 'c> {
        Walker { prober, blues: Vec::new() }
    }

    pub(crate) fn color<L: Claims>(&mut self, l: &L, h: u64) -> Color {
        let c = self.prober.probe(&l.frame().edge(h));
        if c == Color::Blue && l.frame().types(h) != 0 && !self.blues.contains(&h) {
            self.blues.push(h);
        }
        c
    }

    /// A merge of `h` with an earlier blue connector.
    fn goal<L: Claims>(&self, l: &L, h: u64) -> Option<LooseCycle> {
        let f = l.frame();
        self.blues.iter().find(|&&b| f.merge_ok(b, h)).and_then(|&b| f.merge(b, h))
    }

    /// Partners making a red `new` usable from the blue state `h`.
    pub(crate) fn exit<L: Claims>(&self, l: &L, h: u64, new: u64) -> Option<(Vec<u64>, L::Out)> {
        let f = l.frame();
        let k = f.cfg.k();
        let cands = subsets(l.pool() & !h, k).filter(|&p| f.merge_ok(h, p) && l.partner_ok(new, p));
        if l.partners() == 1 {
            for p in cands {
                if let Some(o) = l.assemble(new, &[p]) {
                    return Some((vec![p], o));
                }
            }
            return None;
        }
        let list: Vec<u64> = cands.collect();
        for (a, &p) in list.iter().enumerate() {
            for (b, &q) in list.iter().enumerate() {
                if a != b {
                    if let Some(o) = l.assemble(new, &[p, q]) {
                        return Some((vec![p, q], o));
                    }
                }
            }
        }
        None
    }

    fn moves<L: Claims>(&self, l: &L, h: u64, h1: u64) -> Vec<u64> {
        let free = l.pool() & !h & !h1;
        let single = |g: &Group| -> Vec<(u64, u64)> {
            let mut v = Vec::new();
            for o in ordered(h & h1 & g.out, g.out_desc) {
                for i in ordered(free & g.inn, g.in_desc) {
                    v.push((o, i));
                }
            }
            v
        };
        let groups = l.groups();
        let mut out: Vec<u64> = Vec::new();
        for g in groups {
            out.extend(single(g).into_iter().map(|(o, i)| (h & !o) | i));
        }
        for &(a, b) in l.doubles() {
            for (o1, i1) in single(&groups[a]) {
                for (o2, i2) in single(&groups[b]) {
                    if o1 != o2 && i1 != i2 {
                        out.push((h & !o1 & !o2) | i1 | i2);
                    }
                }
            }
        }
        let f = l.frame();
        let mut seen = HashSet::new();
        out.retain(|&m| f.types(m) != 0 && seen.insert(m));
        out
    }

    /// Establish that `target` is red, or finish the lemma early.
    pub(crate) fn claim<L: Claims>(&mut self, l: &L, target: u64) -> Claim<L::Out> {
        if self.color(l, target) == Color::Red {
            return Claim::Holds;
        }
        if let Some(c) = self.goal(l, target) {
            return Claim::Blue(c);
        }
        let mut visited = HashSet::from([target]);
        let mut nodes = 0usize;
        // partners of blue states whose move came back blue
        let mut unprobed: Vec<(u64, Vec<u64>)> = Vec::new();
        // explicit stack of (state, remaining moves)
        let mut stack: Vec<(u64, std::vec::IntoIter<u64>)> = vec![(target, self.moves(l, target, target).into_iter())];
        while let Some((h, it)) = stack.last_mut() {
            let h = *h;
            let Some(new) = it.next() else {
                stack.pop();
                continue;
            };
            if visited.contains(&new) {
                continue;
            }
            nodes += 1;
            if nodes > NODE_BUDGET {
                return self.fallback(l, &unprobed);
            }
            if nodes == FALLBACK_AFTER {
                if let c @ Claim::Blue(_) = self.fallback(l, &unprobed) {
                    return c;
                }
            }
            // usability depends on `h`, so `new` stays open until probed
            let Some((partners, out)) = self.exit(l, h, new) else { continue };
            visited.insert(new);
            if self.color(l, new) == Color::Red {
                for &p in &partners {
                    if self.color(l, p) == Color::Blue {
                        return match l.frame().merge(h, p) {
                            Some(c) => Claim::Blue(c),
                            None => Claim::Stuck,
                        };
                    }
                }
                return Claim::Red(out);
            }
            if let Some(c) = self.goal(l, new) {
                return Claim::Blue(c);
            }
            unprobed.push((h, partners));
            let next = self.moves(l, new, target).into_iter();
            stack.push((new, next));
        }
        self.fallback(l, &unprobed)
    }

    /// A blue partner of a blue state merges with it.
    fn fallback<L: Claims>(&mut self, l: &L, unprobed: &[(u64, Vec<u64>)]) -> Claim<L::Out> {
        for (h, partners) in unprobed {
            for &p in partners {
                if self.color(l, p) == Color::Blue {
                    if let Some(c) = l.frame().merge(*h, p) {
                        return Claim::Blue(c);
                    }
                }
            }
        }
        Claim::Stuck
    }
}

#[cfg(test)]
mod tests {
    use super::super::frame::count;
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let pool = 0b1011_0110u64;
        let all: Vec<u64> = subsets(pool, 3).collect();
        assert_eq!(all.len(), 10);
        assert!(all.iter().all(|&m| m & !pool == 0 && count(m) == 3));
        let set: HashSet<u64> = all.iter().copied().collect();
        assert_eq!(set.len(), 10);
        assert_eq!(subsets(pool, 0).count(), 1);
        assert_eq!(subsets(pool, 6).count(), 0);
    }
}
