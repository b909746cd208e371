use crate::core::{Edge, KUniformColoring, LooseCycle, Vertex};
use crate::error::{Error, Result};

use super::{construction_error, Dichotomy, Outcome, Prober};

/// 1-based view of a cycle: `v(p)` and `e(i)` with indices taken cyclically.
struct Labels<'a> {
    order: &'a [Vertex],
    k: usize,
    n: usize,
}

impl Labels<'_> {
    fn v(&self, p: i64) -> Vertex {
        let l = self.order.len() as i64;
        self.order[(p - 1).rem_euclid(l) as usize]
    }

    fn idx(&self, i: i64) -> i64 {
        (i - 1).rem_euclid(self.n as i64) + 1
    }

    /// Vertices of `e_i` in cycle order.
    fn e(&self, i: i64) -> Vec<Vertex> {
        let s = (self.k as i64 - 1) * (self.idx(i) - 1) + 1;
        (0..self.k as i64).map(|t| self.v(s + t)).collect()
    }

    fn edge(&self, i: i64) -> Edge {
        Edge::new(self.e(i)).expect("cycle edge")
    }
}

fn minus(a: Vec<Vertex>, drop: &[Vertex]) -> Vec<Vertex> {
    a.into_iter().filter(|v| !drop.contains(v)).collect()
}

fn check_input(c: &KUniformColoring, cyc: &LooseCycle, min_n: usize) -> Result<()> {
    let (k, n) = (cyc.k(), cyc.len());
    if k != c.k() {
        return Err(Error::InvalidInput(format!("cycle is {k}-uniform, coloring is {}-uniform", c.k())));
    }
    if k < 6 {
        return Err(Error::InvalidInput(format!("k must be at least 6, got {k}")));
    }
    if n < min_n {
        return Err(Error::InvalidInput(format!("cycle length must be at least {min_n}, got {n}")));
    }
    if c.n() < (k - 1) * n {
        return Err(Error::TooFewVertices { needed: (k - 1) * n, have: c.n() });
    }
    if cyc.vertex_order().iter().any(|&v| v as usize >= c.n()) {
        return Err(Error::InvalidInput("cycle uses a vertex outside the coloring".into()));
    }
    if !cyc.is_monochromatic(c, crate::core::Color::Red) {
        return Err(Error::InvalidInput("cycle is not red".into()));
    }
    Ok(())
}

/// Probe the candidates in order. A red candidate closes a shorter red cycle
/// with a window of `n - drop` consecutive cycle edges; if all are blue they
/// form the blue cycle.
fn run(op: &'static str, c: &KUniformColoring, cyc: &LooseCycle, fs: Vec<Edge>, drop: usize) -> Result<Outcome<LooseCycle>> {
    let mut p = Prober::new(c);
    let n = cyc.len();
    let lab = Labels { order: cyc.vertex_order(), k: cyc.k(), n };
    for f in &fs {
        if p.is_red(f) {
            for a in 1..=n as i64 {
                let mut edges = vec![f.clone()];
                edges.extend((0..(n - drop) as i64).map(|t| lab.edge(a + t)));
                if let Ok(r) = LooseCycle::from_edges(edges) {
                    return Ok(p.finish(Dichotomy::Red(r)));
                }
            }
            return Err(construction_error(op, "red candidate closes no shorter cycle", Some(f.clone()), &p));
        }
    }
    match LooseCycle::from_edges(fs) {
        Ok(b) => Ok(p.finish(Dichotomy::Blue(b))),
        Err(e) => Err(construction_error(op, format!("blue candidates do not form a cycle: {e}"), None, &p)),
    }
}

/// No red `C_{n-1}` forces a blue `C_n`.
pub fn step_down_1(c: &KUniformColoring, cyc: &LooseCycle) -> Result<Outcome<LooseCycle>> {
    check_input(c, cyc, 3)?;
    let (k, n) = (cyc.k() as i64, cyc.len() as i64);
    let lab = Labels { order: cyc.vertex_order(), k: cyc.k(), n: cyc.len() };
    let mut fs = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let f = if n % 2 == 1 {
            // e_a minus its last vertex plus the last vertex of e_{a+1}
            let a = if i <= (n + 1) / 2 { 2 * i - 1 } else { 2 * i - n - 1 };
            let ea = lab.e(a);
            let mut f = ea[..ea.len() - 1].to_vec();
            f.push(*lab.e(a + 1).last().expect("k > 0"));
            f
        } else {
            let patch = |base: i64, a: i64| {
                let mut f = minus(lab.e(base), &[lab.v(base * (k - 1)), lab.v(base * (k - 1) + 1)]);
                f.extend([lab.v(a * (k - 1)), lab.v(a * (k - 1) + 1)]);
                f
            };
            if i < n / 2 {
                patch(2 * i - 1, 2 * i)
            } else if i == n / 2 {
                let mut f = minus(lab.e(n - 1), &[lab.v((n - 1) * (k - 1)), lab.v((n - 1) * (k - 1) + 1)]);
                f.extend([lab.v(n * (k - 1)), lab.v(k - 1)]);
                f
            } else if i < n {
                let a = (3 - 2 * i).rem_euclid(n);
                let a = if a == 0 { n } else { a };
                patch(a - 1, a)
            } else {
                let mut f = minus(lab.e(2), &[lab.v(k), lab.v(2 * (k - 1)), lab.v(2 * (k - 1) + 1)]);
                f.extend([lab.v(k - 2), lab.v(3 * (k - 1)), lab.v(3 * (k - 1) + 1)]);
                f
            }
        };
        fs.push(Edge::new(f)?);
    }
    run("step_down_1", c, cyc, fs, 2)
}

/// No red `C_{n-2}` forces a blue `C_n`.
pub fn step_down_2(c: &KUniformColoring, cyc: &LooseCycle) -> Result<Outcome<LooseCycle>> {
    check_input(c, cyc, 4)?;
    let (k, n) = (cyc.k(), cyc.len() as i64);
    let lab = Labels { order: cyc.vertex_order(), k, n: cyc.len() };
    let mut fs = Vec::with_capacity(n as usize);
    if n % 3 != 0 {
        for i in 1..=n {
            let ea = lab.e(3 * i - 2);
            let mut f = ea[..k - 1].to_vec();
            f.push(*lab.e(3 * i).last().expect("k > 0"));
            fs.push(Edge::new(f)?);
        }
    } else {
        let (sa, sc) = (k.div_ceil(3), k / 3);
        let sb = k - sa - sc;
        let part = |i: i64, which: usize| -> Vec<Vertex> {
            let e = lab.e(i);
            match which {
                0 => e[..sa].to_vec(),
                1 => e[sa..sa + sb].to_vec(),
                _ => e[sa + sb..].to_vec(),
            }
        };
        let (a, b, cc) = (|i| part(i, 0), |i| part(i, 1), |i| part(i, 2));
        let v1 = lab.v(1);
        let vk = lab.v(k as i64);
        let v2k1 = lab.v(2 * (k as i64 - 1) + 1);
        let v = *cc(1).iter().filter(|&&x| x != vk).min().expect("|C_1| >= 2");
        let v_p = *b(1).iter().min().expect("B nonempty");
        let v_pp = *b(2).iter().min().expect("B nonempty");
        let cat = |parts: [Vec<Vertex>; 3]| parts.concat();
        for i in 1..=n {
            let f = if i < n / 3 {
                cat([a(3 * (i - 1) + 1), b(3 * (i - 1) + 2), cc(3 * (i - 1) + 3)])
            } else if i == n / 3 {
                let mut f = cat([a(n - 2), b(n - 1), minus(cc(n), &[v1])]);
                f.push(v);
                f
            } else if i < 2 * n / 3 {
                cat([cc(2 * n + 4 - 3 * i), b(2 * n + 3 - 3 * i), a(2 * n + 2 - 3 * i)])
            } else if i == 2 * n / 3 {
                let mut f = cat([cc(4), b(3), minus(a(2), &[vk])]);
                f.push(v_p);
                f
            } else if i < n {
                cat([cc(3 * n + 5 - 3 * i), b(3 * n + 4 - 3 * i), a(3 * n + 3 - 3 * i)])
            } else {
                let mut f = cat([cc(5), b(4), minus(a(3), &[v2k1])]);
                f.push(v_pp);
                f
            };
            fs.push(Edge::new(f)?);
        }
    }
    run("step_down_2", c, cyc, fs, 3)
}
