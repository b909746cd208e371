use crate::core::{canonical_loose_cycle, Color, Edge, KSubsets, KUniformColoring, LooseCycle, Vertex};
use crate::error::{Error, Result};

/// A monochromatic `C^k_2` on the vertices `0..2k-2`.
///
/// If the coloring is not constant there, walk from the red edge
/// `{0..k-1}` (or blue) towards an edge of the other color one vertex at a
/// time; some step gives a red `e` and blue `f` with `|e ∩ f| = k-1`. With
/// `e = {v_1..v_k}`, `f = {v_2..v_{k+1}}` and `W` the other `k-3` vertices,
/// `g = {v_1, v_2, v_{k+1}} ∪ W` closes `eg` if red and `fg` otherwise.
pub fn find_mono_c2(c: &KUniformColoring) -> Result<(Color, LooseCycle)> {
    let k = c.k();
    if k < 3 {
        return Err(Error::InvalidParameters(format!("k must be at least 3, got {k}")));
    }
    let nv = 2 * k - 2;
    if c.n() < nv {
        return Err(Error::TooFewVertices { needed: nv, have: c.n() });
    }
    let start: Vec<Vertex> = (0..k as Vertex).collect();
    let start_col = c.color(&Edge::new(start.clone())?);
    let other = KSubsets::new(nv, k)?
        .map(|m| crate::core::colex::mask_to_edge(u128::from(m)))
        .find(|e| c.color(e) != start_col);
    let Some(target) = other else {
        return Ok((start_col, canonical_loose_cycle(2, k)?));
    };
    // flip one vertex at a time towards the target
    let mut cur = start;
    let (red, blue) = loop {
        let out = *cur.iter().find(|v| !target.contains(**v)).expect("cur differs from target");
        let inn = *target.vertices().iter().find(|v| !cur.contains(v)).expect("same size");
        let mut next: Vec<Vertex> = cur.iter().copied().filter(|&v| v != out).collect();
        next.push(inn);
        let (a, b) = (Edge::new(cur.clone())?, Edge::new(next.clone())?);
        let (ca, cb) = (c.color(&a), c.color(&b));
        if ca != cb {
            break if ca == Color::Red { (a, b) } else { (b, a) };
        }
        cur = next;
    };
    let shared = red.intersection(&blue);
    let v1 = *red.vertices().iter().find(|v| !blue.contains(**v)).expect("differ by one");
    let vk1 = *blue.vertices().iter().find(|v| !red.contains(**v)).expect("differ by one");
    let v2 = shared[0];
    let mut g: Vec<Vertex> = (0..nv as Vertex).filter(|v| !red.contains(*v) && !blue.contains(*v)).collect();
    g.extend([v1, v2, vk1]);
    let g = Edge::new(g)?;
    let (col, e) = if c.color(&g) == Color::Red { (Color::Red, red) } else { (Color::Blue, blue) };
    let cyc = LooseCycle::from_edges(vec![e, g])
        .map_err(|err| Error::MergeBug(format!("two-edge cycle failed to validate: {err}")))?
        .normalized();
    Ok((col, cyc))
}
