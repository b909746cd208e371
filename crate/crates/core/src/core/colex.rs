use crate::core::edge::{Edge, Vertex};
use crate::error::{Error, Result};

/// `C(n, k)`, or `None` on u64 overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

fn total_edges(n: usize, k: usize) -> Result<u64> {
    binomial(n as u64, k as u64).ok_or_else(|| Error::InvalidParameters(format!("C({n},{k}) overflows u64")))
}

/// Colex rank: `sum_i C(v_i, i+1)` over the sorted vertices.
pub fn colex_rank(e: &Edge, n: usize, k: usize) -> Result<u64> {
    if e.len() != k {
        return Err(Error::InvalidEdge(format!("{e:?} has size {}, expected {k}", e.len())));
    }
    if e.max_vertex() as usize >= n {
        return Err(Error::InvalidEdge(format!("{e:?} has a vertex outside 0..{n}")));
    }
    total_edges(n, k)?;
    Ok(e
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| binomial(u64::from(v), i as u64 + 1).expect("bounded by C(n,k)"))
        .sum())
}

pub fn colex_unrank(rank: u64, n: usize, k: usize) -> Result<Edge> {
    let total = total_edges(n, k)?;
    if k == 0 || rank >= total {
        return Err(Error::RankOutOfRange { rank, n, k });
    }
    let mut r = rank;
    let mut out = vec![0 as Vertex; k];
    let mut hi = n as u64;
    for i in (1..=k as u64).rev() {
        // largest c < hi with C(c, i) <= r
        let mut c = hi - 1;
        loop {
            let b = binomial(c, i).expect("bounded");
            if b <= r {
                r -= b;
                break;
            }
            c -= 1;
        }
        out[i as usize - 1] = c as Vertex;
        hi = c;
    }
    Edge::new(out)
}

/// All k-subsets of `0..n` in colex order, as bitmasks. Requires `n <= 64`.
///
/// Increasing numeric order of the masks is exactly colex order, so the
/// i-th mask yielded has colex rank i.
pub struct KSubsets {
    next: Option<u64>,
    limit: u64,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Result<KSubsets> {
        if n > 64 {
            return Err(Error::InvalidParameters(format!("bitmask enumeration needs n <= 64, got {n}")));
        }
        if k == 0 || k > n {
            return Ok(KSubsets { next: None, limit: 0 });
        }
        let first = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(KSubsets { next: Some(first), limit })
    }
}

impl Iterator for KSubsets {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        // Gosper's hack
        let c = cur & cur.wrapping_neg();
        let r = cur.wrapping_add(c);
        self.next = if r == 0 || c == 0 {
            None
        } else {
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt <= self.limit && nxt > cur).then_some(nxt)
        };
        Some(cur)
    }
}

pub(crate) fn mask_to_edge(mask: u128) -> Edge {
    let mut v = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        v.push(m.trailing_zeros() as Vertex);
        m &= m - 1;
    }
    Edge::new(v).expect("non-empty mask")
}
