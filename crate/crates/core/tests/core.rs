use loose_ramsey::core::lrc::{parse_lrc, to_lrc};
use loose_ramsey::core::KSubsets;
use loose_ramsey::*;
use proptest::prelude::*;

fn edge(v: &[Vertex]) -> Edge {
    Edge::new(v.to_vec()).unwrap()
}

fn mask_edge(m: u64) -> Edge {
    Edge::new((0..64).filter(|&v| m >> v & 1 == 1).collect()).unwrap()
}

fn subsets(n: usize, k: usize) -> Vec<Edge> {
    KSubsets::new(n, k).unwrap().map(mask_edge).collect()
}

fn edge_sets(es: &[Edge]) -> Vec<Vec<Vertex>> {
    es.iter().map(|e| e.vertices().to_vec()).collect()
}

#[test]
fn colex_examples() {
    assert_eq!(colex_rank(&edge(&[0, 1, 2]), 6, 3).unwrap(), 0);
    assert_eq!(colex_rank(&edge(&[1, 2, 3]), 6, 3).unwrap(), 3);
    assert_eq!(colex_unrank(0, 6, 3).unwrap(), edge(&[0, 1, 2]));
    assert_eq!(colex_unrank(19, 6, 3).unwrap(), edge(&[3, 4, 5]));
    assert_eq!(colex_unrank(3, 6, 3).unwrap(), edge(&[1, 2, 3]));
    assert!(colex_unrank(20, 6, 3).is_err());
    assert!(colex_rank(&edge(&[0, 1, 6]), 6, 3).is_err());
}

/// Colex order by brute force: sort all k-subsets by their reversed vertex lists.
fn colex_oracle(n: usize, k: usize) -> Vec<Vec<Vertex>> {
    let mut all: Vec<Vec<Vertex>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n as Vertex).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    all.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    all
}

#[test]
fn colex_matches_oracle_exhaustively() {
    for n in 1..=10 {
        for k in 1..=5.min(n) {
            let oracle = colex_oracle(n, k);
            assert_eq!(oracle.len() as u64, binomial(n as u64, k as u64).unwrap());
            for (r, vs) in oracle.iter().enumerate() {
                let e = edge(vs);
                assert_eq!(colex_rank(&e, n, k).unwrap(), r as u64);
                assert_eq!(colex_unrank(r as u64, n, k).unwrap(), e);
            }
            let iter: Vec<Vec<Vertex>> = subsets(n, k).iter().map(|e| e.vertices().to_vec()).collect();
            assert_eq!(iter, oracle);
        }
    }
}

#[test]
fn canonical_examples() {
    let c = canonical_loose_cycle(2, 3).unwrap();
    assert_eq!(edge_sets(c.edges()), vec![vec![0, 1, 2], vec![0, 2, 3]]);
    let c = canonical_loose_cycle(3, 3).unwrap();
    assert_eq!(edge_sets(c.edges()), vec![vec![0, 1, 2], vec![2, 3, 4], vec![0, 4, 5]]);
    let c = canonical_loose_cycle(2, 4).unwrap();
    assert_eq!(edge_sets(c.edges()), vec![vec![0, 1, 2, 3], vec![0, 3, 4, 5]]);
    assert!(canonical_loose_cycle(1, 3).is_err());
    assert!(canonical_loose_cycle(3, 2).is_err());

    let p = canonical_loose_path(1, 3).unwrap();
    assert_eq!(edge_sets(p.edges()), vec![vec![0, 1, 2]]);
    let p = canonical_loose_path(2, 3).unwrap();
    assert_eq!(edge_sets(p.edges()), vec![vec![0, 1, 2], vec![2, 3, 4]]);
    let p = canonical_loose_path(3, 4).unwrap();
    assert_eq!(edge_sets(p.edges()), vec![vec![0, 1, 2, 3], vec![3, 4, 5, 6], vec![6, 7, 8, 9]]);
}

#[test]
fn endpoint_examples() {
    let c = canonical_loose_cycle(3, 3).unwrap();
    assert_eq!(c.endpoints(0).unwrap(), (0, 2));
    assert_eq!(c.endpoints(2).unwrap(), (4, 0));
    assert!(c.endpoints(3).is_err());
    let p = canonical_loose_path(2, 3).unwrap();
    assert_eq!(p.endpoints(1).unwrap(), (2, 4));
}

#[test]
fn validate_examples() {
    let c = canonical_loose_cycle(3, 3).unwrap();
    assert!(validate(c.edges(), StructureKind::Cycle).is_ok());
    assert!(validate(&[edge(&[0, 1, 2]), edge(&[1, 2, 3])], StructureKind::Cycle).is_ok());
    let open = [edge(&[0, 1, 2]), edge(&[2, 3, 4]), edge(&[4, 5, 6])];
    assert!(validate(&open, StructureKind::Cycle).is_err());
    assert!(validate(&open, StructureKind::Path).is_ok());
    assert!(validate(&[], StructureKind::Path).is_err());
}

/// Every C^3_2 on {0,1,2,3}: two 3-sets sharing exactly 2 vertices.
#[test]
fn c3_2_copies_match_isomorph_enumeration() {
    let all = subsets(4, 3);
    let mut ok = 0;
    for a in 0..all.len() {
        for b in a + 1..all.len() {
            let shares = all[a].overlap(&all[b]) == 2;
            let v = validate(&[all[a].clone(), all[b].clone()], StructureKind::Cycle).is_ok();
            assert_eq!(v, shares);
            ok += usize::from(v);
        }
    }
    // 4 choose 2 pairs of triples, all of which share two vertices
    assert_eq!(ok, 6);
}

#[test]
fn coloring_examples() {
    let c = KUniformColoring::uniform(4, 3, Color::Red).unwrap();
    assert!(subsets(4, 3).iter().all(|e| c.color(e) == Color::Red));
    let a = random_coloring(6, 3, 1, 0.5).unwrap().to_bits().unwrap();
    let b = random_coloring(6, 3, 1, 0.5).unwrap().to_bits().unwrap();
    assert_eq!(a, b);
    let s = KUniformColoring::split(6, 3, 5).unwrap();
    assert_eq!(s.color(&edge(&[0, 1, 2])), Color::Red);
    assert_eq!(s.color(&edge(&[0, 1, 5])), Color::Blue);
    assert!(KUniformColoring::uniform(2, 3, Color::Red).is_err());
    assert_eq!(Color::Red.complement().complement(), Color::Red);
    assert_ne!(Color::Red.complement(), Color::Red);
}

#[test]
fn lrc_roundtrip_is_stable() {
    for c in [
        random_coloring(7, 3, 9, 0.3).unwrap(),
        KUniformColoring::split(21, 8, 20).unwrap(),
        KUniformColoring::uniform(6, 4, Color::Blue).unwrap(),
    ] {
        let text = to_lrc(&c).unwrap();
        let back = parse_lrc(&text).unwrap();
        assert_eq!(to_lrc(&back).unwrap(), text);
        for r in 0..c.edge_count().min(2000) {
            assert_eq!(c.color_rank(r).unwrap(), back.color_rank(r).unwrap());
        }
    }
}

fn rotate_reflect(edges: &[Edge], shift: usize, flip: bool) -> Vec<Edge> {
    let n = edges.len();
    let mut out: Vec<Edge> = (0..n).map(|i| edges[(i + shift) % n].clone()).collect();
    if flip {
        out.reverse();
    }
    out
}

proptest! {
    #[test]
    fn canonical_cycle_shape(n in 2usize..9, k in 3usize..9) {
        let c = canonical_loose_cycle(n, k).unwrap();
        prop_assert!(validate(c.edges(), StructureKind::Cycle).is_ok());
        prop_assert_eq!(c.vertices().len(), n * (k - 1));
        for a in 0..n {
            for b in a + 1..n {
                let adjacent = b == a + 1 || (a == 0 && b == n - 1);
                let want = if n == 2 { 2 } else if adjacent { 1 } else { 0 };
                prop_assert_eq!(c.edge(a).overlap(c.edge(b)), want);
            }
        }
    }

    #[test]
    fn canonical_path_shape(n in 1usize..9, k in 2usize..9) {
        let p = canonical_loose_path(n, k).unwrap();
        prop_assert_eq!(p.vertices().len(), n * (k - 1) + 1);
        prop_assert!(validate(p.edges(), StructureKind::Path).is_ok());
    }

    #[test]
    fn validate_ignores_rotation_and_reflection(
        n in 2usize..8, k in 3usize..7, shift in 0usize..8, flip: bool, seed: u64,
    ) {
        // relabel the canonical cycle by a seeded permutation
        let total = n * (k - 1) + 3;
        let mut perm: Vec<Vertex> = (0..total as Vertex).collect();
        let mut s = seed;
        for i in (1..total).rev() {
            s = loose_ramsey::core::splitmix64(s);
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let c = canonical_loose_cycle(n, k).unwrap();
        let edges: Vec<Edge> = c.edges().iter()
            .map(|e| Edge::new(e.vertices().iter().map(|&v| perm[v as usize]).collect()).unwrap())
            .collect();
        let base = validate(&edges, StructureKind::Cycle).unwrap();
        let moved = validate(&rotate_reflect(&edges, shift % n, flip), StructureKind::Cycle).unwrap();
        prop_assert_eq!(&base, &moved);
        let again = validate(base.edges(), StructureKind::Cycle).unwrap();
        prop_assert_eq!(base, again);
    }

    #[test]
    fn random_coloring_is_reproducible(n in 3usize..9, k in 2usize..4, seed: u64, p in 0.0f64..=1.0) {
        prop_assume!(n >= k);
        let a = random_coloring(n, k, seed, p).unwrap();
        let b = random_coloring(n, k, seed, p).unwrap();
        prop_assert_eq!(a.to_bits().unwrap(), b.to_bits().unwrap());
        prop_assert_eq!(a.to_hex().unwrap(), b.to_hex().unwrap());
    }
}
