//! Split colorings: vertices `0..|A|` form A, the rest B, and an edge is red
//! exactly when it lies inside A. A pigeonhole certificate shows they avoid
//! both targets without enumeration.

use serde::{Deserialize, Serialize};

use crate::core::{Color, ColoringSource, KSubsets, KUniformColoring, Rule, StructureKind, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCertificate {
    pub k: usize,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub n: usize,
    pub m: usize,
    pub kind: StructureKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum CertificateCheck {
    Valid,
    Violation(String),
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        *self == CertificateCheck::Valid
    }
}

fn split(k: usize, a: usize, b: usize, n: usize, m: usize, kind: StructureKind) -> Result<(KUniformColoring, SplitCertificate)> {
    let total = a + b;
    let cert = SplitCertificate {
        k,
        a: (0..a as Vertex).collect(),
        b: (a as Vertex..total as Vertex).collect(),
        n,
        m,
        kind,
    };
    // fewer than k vertices: there are no edges to color, use the k-vertex host
    let c = KUniformColoring::new(total.max(k), k, ColoringSource::Rule(Rule::Split { a, b: total.max(k) - a }))?;
    Ok((c, cert))
}

/// Split coloring on `(k-1)n + floor((m-1)/2) - 1` vertices with
/// `|A| = (k-1)n - 1`.
pub fn split_coloring_cycles(k: usize, n: usize, m: usize) -> Result<(KUniformColoring, SplitCertificate)> {
    if k < 3 || m < 2 || n < m {
        return Err(Error::InvalidParameters(format!("need n >= m >= 2 and k >= 3, got k={k}, n={n}, m={m}")));
    }
    split(k, (k - 1) * n - 1, (m - 1) / 2, n, m, StructureKind::Cycle)
}

/// Split coloring on `(k-1)n + floor((m+1)/2) - 1` vertices with
/// `|A| = (k-1)n`.
pub fn split_coloring_paths(k: usize, n: usize, m: usize) -> Result<(KUniformColoring, SplitCertificate)> {
    if k < 3 || m < 1 || n < m {
        return Err(Error::InvalidParameters(format!("need n >= m >= 1 and k >= 3, got k={k}, n={n}, m={m}")));
    }
    split(k, (k - 1) * n, (m + 1) / 2 - 1, n, m, StructureKind::Path)
}

/// Number of vertices the split coloring lives on.
pub fn certificate_vertices(cert: &SplitCertificate) -> usize {
    cert.a.len() + cert.b.len()
}

/// Checks that every red edge lies in A, every blue edge meets B, and the
/// sizes are too small for a red target inside A or a blue target whose
/// edges each need a B vertex (a B vertex lies in at most two edges).
pub fn check_certificate(c: &KUniformColoring, cert: &SplitCertificate) -> CertificateCheck {
    let violation = |s: String| CertificateCheck::Violation(s);
    let n_vertices = c.n();
    let mut in_a = vec![false; n_vertices];
    let mut seen = vec![false; n_vertices];
    for (&v, side) in cert.a.iter().map(|v| (v, true)).chain(cert.b.iter().map(|v| (v, false))) {
        let v = v as usize;
        if v >= n_vertices || seen[v] {
            return violation(format!("vertex {v} is repeated or outside 0..{n_vertices}"));
        }
        seen[v] = true;
        in_a[v] = side;
    }
    // a host padded to k vertices has no edges inside A or B worth checking
    if certificate_vertices(cert) != n_vertices && certificate_vertices(cert) >= c.k() {
        return violation(format!("A and B cover {} of {n_vertices} vertices", certificate_vertices(cert)));
    }
    let k = cert.k;
    let (a_max, b_bound) = match cert.kind {
        StructureKind::Cycle => ((k - 1) * cert.n - 1, cert.m),
        StructureKind::Path => ((k - 1) * cert.n, cert.m + 1),
    };
    if cert.a.len() > a_max || 2 * cert.b.len() >= b_bound {
        return violation(format!(
            "(c) |A| = {} (max {a_max}), 2|B| = {} (must be < {b_bound})",
            cert.a.len(),
            2 * cert.b.len()
        ));
    }
    if let Some(bad) = edge_conditions(c, &in_a) {
        return violation(bad);
    }
    CertificateCheck::Valid
}

fn describe(e: &[Vertex], red: bool) -> String {
    if red {
        format!("(a) red edge {e:?} leaves A")
    } else {
        format!("(b) blue edge {e:?} misses B")
    }
}

/// Conditions (a) and (b); symbolic for split rules and overlays on them.
fn edge_conditions(c: &KUniformColoring, in_a: &[bool]) -> Option<String> {
    let inside = |e: &[Vertex]| e.iter().all(|&v| in_a.get(v as usize).copied().unwrap_or(false));
    let check = |e: &[Vertex], col: Color| -> Option<String> {
        let red = col == Color::Red;
        (red != inside(e)).then(|| describe(e, red))
    };
    let split_ok = |a: usize| in_a.iter().enumerate().all(|(v, &x)| x == (v < a));
    match c.source() {
        ColoringSource::Rule(Rule::Split { a, .. }) if split_ok(*a) => None,
        ColoringSource::Rule(Rule::Overlay { base, overrides })
            if matches!(**base, Rule::Split { a, .. } if split_ok(a)) =>
        {
            overrides.iter().find_map(|(e, &col)| check(e.vertices(), col))
        }
        _ => {
            let ks = match KSubsets::new(c.n(), c.k()) {
                Ok(ks) => ks,
                Err(e) => return Some(format!("cannot enumerate edges: {e}")),
            };
            for (r, mask) in ks.enumerate() {
                let e: Vec<Vertex> = (0..64).filter(|i| mask >> i & 1 == 1).collect();
                let col = c.color_rank(r as u64).expect("in range");
                if let Some(s) = check(&e, col) {
                    return Some(s);
                }
            }
            None
        }
    }
}
