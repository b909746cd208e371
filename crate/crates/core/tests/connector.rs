use std::collections::BTreeSet;

use loose_ramsey::connector::*;
use loose_ramsey::core::splitmix64;
use loose_ramsey::detect::find_mono_cycle;
use loose_ramsey::*;

use ConnectorType::*;

fn config(k: usize, l1: usize, l2: usize, extra: usize) -> CycleConfiguration {
    let (c1, c2) = canonical_pair(k, l1, l2).unwrap();
    let n = (k - 1) * (l1 + l2) + extra;
    let c = KUniformColoring::uniform(n, k, Color::Blue).unwrap();
    CycleConfiguration::new(c, c1, c2).unwrap()
}

fn v_prev(t: ConnectorType) -> bool {
    matches!(t, A | C)
}

fn u_next(t: ConnectorType) -> bool {
    matches!(t, A | D)
}

fn check_decomposition(cfg: &CycleConfiguration, g: &ConnectorEdge) {
    let k = cfg.k();
    let parts: BTreeSet<Vertex> = g.e_part.iter().chain(&g.f_part).chain(&g.w_part).copied().collect();
    assert_eq!(parts.len(), k);
    assert_eq!(parts.into_iter().collect::<Vec<_>>(), g.g.vertices());
    assert_eq!((g.e_part.len(), g.w_part.len(), g.f_part.len()), (g.p, g.q, g.r));
    assert!(g.p >= 1 && g.r >= 1 && g.p + g.q + g.r == k);
    let ie = cfg.c1().interior(g.i);
    let jf = cfg.c2().interior(g.j);
    assert!(g.e_part.iter().all(|v| *v == g.vprime || ie.contains(v)));
    assert!(g.f_part.iter().all(|v| *v == g.uprime || jf.contains(v)));
    assert!(g.w_part.iter().all(|v| cfg.w().contains(v)));
    assert!(cfg.v_candidates(g.i, v_prev(g.typ)).contains(&g.vprime));
    assert!(cfg.u_candidates(g.j, u_next(g.typ)).contains(&g.uprime));
    assert!(g.types.contains(&g.typ));
}

#[test]
fn classify_examples() {
    let cfg = config(8, 2, 2, 2);
    let (c1, c2) = (cfg.c1().clone(), cfg.c2().clone());
    // v' from e_2 minus its last vertex, u' from f_2 minus its first
    let vp = c1.edge_in_order(1)[1];
    let up = c2.edge_in_order(1)[1];
    let mut verts = vec![vp, up];
    verts.extend(&c1.interior(0)[..3]);
    verts.extend(&c2.interior(0)[..3]);
    let g = classify(&Edge::new(verts.clone()).unwrap(), &cfg, 0, 0).unwrap();
    check_decomposition(&cfg, &g);
    assert!(g.types.contains(&B));
    assert!(classify_as(&g.g, &cfg, 0, 0, B).is_some());

    // the first vertex of e_1 is not allowed
    verts[2] = c1.first(0);
    assert!(classify(&Edge::new(verts).unwrap(), &cfg, 0, 0).is_none());

    // p = r = 1: everything else from W
    let cfg = config(4, 2, 3, 2);
    let vp = cfg.v_candidates(0, true)[0];
    let up = cfg.u_candidates(0, true)[0];
    let w = cfg.w().to_vec();
    let g = classify(&Edge::new(vec![vp, up, w[0], w[1]]).unwrap(), &cfg, 0, 0).unwrap();
    check_decomposition(&cfg, &g);
    assert_eq!((g.p, g.q, g.r), (1, 2, 1));
    assert!(g.types.contains(&A));
}

#[test]
fn enumerated_connectors_partition() {
    for k in [6, 8] {
        let cfg = config(k, 2, 2, 3);
        let mut seen = 0;
        for seed in 0..400u64 {
            for typ in [A, B, C, D] {
                let q = (splitmix64(seed) % 4) as usize;
                let (i, j) = ((seed % 2) as usize, (seed / 2 % 2) as usize);
                if let Some(g) = random_connector(&cfg, i, j, typ, q, seed) {
                    check_decomposition(&cfg, &g);
                    assert_eq!(g.typ, typ);
                    assert_eq!(classify_as(&g.g, &cfg, i, j, typ).as_ref(), Some(&g));
                    seen += 1;
                }
            }
        }
        assert!(seen > 1000);
    }
}

/// A complement partner for `g`, or `None` if every candidate pair meets `g`.
fn partner(cfg: &CycleConfiguration, g: &ConnectorEdge, seed: u64) -> Option<ConnectorEdge> {
    let t = g.typ.complement();
    let vs: Vec<Vertex> = cfg.v_candidates(g.i, v_prev(t)).into_iter().filter(|v| !g.g.contains(*v)).collect();
    let us: Vec<Vertex> = cfg.u_candidates(g.j, u_next(t)).into_iter().filter(|v| !g.g.contains(*v)).collect();
    if vs.is_empty() || us.is_empty() {
        return None;
    }
    let s = splitmix64(seed ^ 0xabcd);
    let v2 = vs[(s % vs.len() as u64) as usize];
    let u2 = us[(splitmix64(s) % us.len() as u64) as usize];
    Some(complement(g, cfg, v2, u2).unwrap())
}

#[test]
fn complement_is_disjoint_and_complementary() {
    let mut done = 0;
    let mut seed = 0u64;
    while done < 1000 {
        seed += 1;
        let k = if seed % 2 == 0 { 6 } else { 8 };
        let (l1, l2) = [(2, 2), (2, 3), (3, 3)][(seed % 3) as usize];
        let cfg = config(k, l1, l2, 2 + (seed % 3) as usize);
        let typ = [A, B, C, D][(seed / 3 % 4) as usize];
        let i = (seed % l1 as u64) as usize;
        let j = (seed / 7 % l2 as u64) as usize;
        let q = (splitmix64(seed) % 3) as usize;
        let Some(g) = random_connector(&cfg, i, j, typ, q, seed) else { continue };
        let Some(g2) = partner(&cfg, &g, seed) else { continue };
        assert!(g.g.is_disjoint(&g2.g));
        assert_eq!(g2.typ, typ.complement());
        assert_eq!((g2.i, g2.j), (g.i, g.j));
        check_decomposition(&cfg, &g2);
        assert!(classify_as(&g2.g, &cfg, i, j, typ.complement()).is_some());
        if let Some(g3) = partner(&cfg, &g2, seed + 1) {
            assert_eq!(g3.typ, typ);
            assert!(g3.g.is_disjoint(&g2.g));
        }
        done += 1;
    }
}

#[test]
fn complement_rejects_bad_vertices() {
    let cfg = config(8, 2, 2, 2);
    let g = random_connector(&cfg, 0, 0, A, 1, 5).unwrap();
    let inside = g.g.vertices()[0];
    let u2 = cfg.u_candidates(0, false).into_iter().find(|v| !g.g.contains(*v)).unwrap();
    assert!(matches!(complement(&g, &cfg, inside, u2), Err(Error::CannotComplement(_))));
    let far = cfg.w()[0];
    assert!(complement(&g, &cfg, far, u2).is_err());
}

fn merged_uses_cycles(cfg: &CycleConfiguration, g: &ConnectorEdge, g2: &ConnectorEdge, out: &LooseCycle) {
    let mut want: Vec<Edge> = vec![g.g.clone(), g2.g.clone()];
    want.extend((0..cfg.l1()).filter(|&t| t != g.i).map(|t| cfg.c1().edge(t).clone()));
    want.extend((0..cfg.l2()).filter(|&t| t != g.j).map(|t| cfg.c2().edge(t).clone()));
    let mut got = out.edges().to_vec();
    want.sort();
    got.sort();
    assert_eq!(got, want);
}

#[test]
fn merge_examples() {
    for (l1, l2, pair) in [(2, 2, (A, B)), (2, 3, (A, B)), (2, 2, (C, D)), (3, 3, (D, C))] {
        let cfg = config(8, l1, l2, 2);
        let mut merged = 0;
        for seed in 0..50 {
            let Some(g) = random_connector(&cfg, 0, 1 % l2, pair.0, 0, seed) else { continue };
            let Some(g2) = partner(&cfg, &g, seed) else { continue };
            assert_eq!(g2.typ, pair.1);
            let out = merge_cycles(&cfg, &g, &g2).unwrap();
            assert_eq!(out.len(), l1 + l2);
            assert!(validate(out.edges(), StructureKind::Cycle).is_ok());
            assert!(out.is_monochromatic(cfg.coloring(), Color::Blue));
            merged_uses_cycles(&cfg, &g, &g2, &out);
            merged += 1;
        }
        assert!(merged > 0);
    }
    let cfg = config(8, 2, 2, 2);
    let out = {
        let g = random_connector(&cfg, 0, 0, A, 0, 1).unwrap();
        let g2 = partner(&cfg, &g, 1).unwrap();
        merge_cycles(&cfg, &g, &g2).unwrap()
    };
    assert_eq!(out.vertices().len(), 28);
}

#[test]
fn merge_rejects_bad_pairs() {
    let cfg = config(8, 2, 2, 2);
    let g = random_connector(&cfg, 0, 0, A, 0, 3).unwrap();
    assert!(matches!(merge_cycles(&cfg, &g, &g), Err(Error::NotDisjoint)));
    let g2 = partner(&cfg, &g, 3).unwrap();
    let mut same = g2.clone();
    same.typ = A;
    assert!(merge_cycles(&cfg, &g, &same).is_err());
}

/// With only C1, C2, g and g2 blue, the detector must find the merged cycle.
#[test]
fn merge_agrees_with_detector() {
    let mut checked = 0;
    for seed in 0..60u64 {
        let (c1, c2) = canonical_pair(4, 2, 2).unwrap();
        let host = KUniformColoring::uniform(14, 4, Color::Blue).unwrap();
        let cfg = CycleConfiguration::new(host, c1.clone(), c2.clone()).unwrap();
        let typ = [A, B, C, D][(seed % 4) as usize];
        let Some(g) = random_connector(&cfg, (seed % 2) as usize, 0, typ, (seed % 2) as usize, seed) else { continue };
        let Some(g2) = partner(&cfg, &g, seed) else { continue };
        let blue: BTreeSet<Edge> =
            c1.edges().iter().chain(c2.edges()).cloned().chain([g.g.clone(), g2.g.clone()]).collect();
        let sparse = KUniformColoring::from_fn(14, 4, |e| if blue.contains(e) { Color::Blue } else { Color::Red }).unwrap();
        let cfg = cfg.with_coloring(sparse.clone()).unwrap();
        let out = merge_cycles(&cfg, &g, &g2).unwrap();
        assert!(out.is_monochromatic(&sparse, Color::Blue));
        assert!(find_mono_cycle(&sparse, Color::Blue, 4).is_some());
        checked += 1;
    }
    assert!(checked >= 20);
}

#[test]
fn configuration_invariants() {
    let (c1, c2) = canonical_pair(6, 3, 2).unwrap();
    let host = KUniformColoring::uniform(27, 6, Color::Blue).unwrap();
    assert!(CycleConfiguration::new(host.clone(), c1.clone(), c2.clone()).is_err());
    let (c1, c2) = canonical_pair(6, 2, 3).unwrap();
    assert!(CycleConfiguration::new(KUniformColoring::uniform(26, 6, Color::Blue).unwrap(), c1.clone(), c2.clone()).is_err());
    assert!(CycleConfiguration::new(KUniformColoring::uniform(27, 6, Color::Red).unwrap(), c1.clone(), c2.clone()).is_err());
    let cfg = CycleConfiguration::new(host, c1, c2).unwrap();
    assert_eq!(cfg.w(), &[25, 26]);
}
