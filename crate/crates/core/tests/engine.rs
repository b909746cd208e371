use std::collections::BTreeSet;

use loose_ramsey::connector::{canonical_pair, CycleConfiguration};
use loose_ramsey::engine::checks::{check_red_pair, check_red_pair_strong};
use loose_ramsey::engine::*;
use loose_ramsey::harness::{run_lemma_trials, Forcing, Lemma, LemmaParams};
use loose_ramsey::*;

fn edge(v: &[Vertex]) -> Edge {
    Edge::new(v.to_vec()).unwrap()
}

/// Red (or blue) exactly on `edges`, the other color elsewhere.
fn planted(n: usize, k: usize, edges: &[Edge], col: Color) -> KUniformColoring {
    let base = KUniformColoring::uniform(n, k, col.complement()).unwrap();
    base.with_overrides(edges.iter().map(|e| (e.clone(), col)).collect()).unwrap()
}

fn blue_ok(c: &KUniformColoring, cy: &LooseCycle, len: usize) {
    assert_eq!(cy.len(), len);
    assert!(validate(cy.edges(), StructureKind::Cycle).is_ok());
    assert!(cy.is_monochromatic(c, Color::Blue));
}

#[test]
fn mono_c2_examples() {
    let red = KUniformColoring::uniform(4, 3, Color::Red).unwrap();
    let (col, cy) = find_mono_c2(&red).unwrap();
    assert_eq!((col, cy.len()), (Color::Red, 2));

    let one = planted(4, 3, &[edge(&[0, 1, 2])], Color::Red);
    let (col, cy) = find_mono_c2(&one).unwrap();
    assert_eq!(col, Color::Blue);
    assert!(cy.is_monochromatic(&one, Color::Blue));
    assert_eq!(cy.edge(0).overlap(cy.edge(1)), 2);

    for mask in 0u64..16 {
        let c = KUniformColoring::from_fn(4, 3, |e| Color::from_bit(mask >> colex_rank(e, 4, 3).unwrap() & 1 == 1)).unwrap();
        let (col, cy) = find_mono_c2(&c).unwrap();
        assert!(validate(cy.edges(), StructureKind::Cycle).is_ok() && cy.is_monochromatic(&c, col));
    }
    assert!(matches!(find_mono_c2(&KUniformColoring::uniform(5, 4, Color::Red).unwrap()), Err(Error::TooFewVertices { needed: 6, have: 5 })));
}

#[test]
fn mono_c2_large_k() {
    for seed in 0..200 {
        let c = random_coloring(14, 8, seed, 0.5).unwrap();
        let (col, cy) = find_mono_c2(&c).unwrap();
        assert!(validate(cy.edges(), StructureKind::Cycle).is_ok() && cy.is_monochromatic(&c, col));
    }
}

#[test]
fn step_down_examples() {
    let cyc = canonical_loose_cycle(3, 6).unwrap();
    let red = KUniformColoring::uniform(15, 6, Color::Red).unwrap();
    let o = step_down_1(&red, &cyc).unwrap();
    let r = o.result.red().expect("all red gives the red branch");
    assert_eq!(r.len(), 2);
    assert!(r.is_monochromatic(&red, Color::Red));
    assert_eq!(o.trace.len(), 1);

    let only = planted(15, 6, cyc.edges(), Color::Red);
    let o = step_down_1(&only, &cyc).unwrap();
    blue_ok(&only, o.result.blue().expect("planted cycle gives the blue branch"), 3);

    let cyc = canonical_loose_cycle(5, 6).unwrap();
    let red = KUniformColoring::uniform(25, 6, Color::Red).unwrap();
    let r = step_down_2(&red, &cyc).unwrap();
    let r = r.result.red().unwrap();
    assert_eq!(r.len(), 3);
    assert!(r.is_monochromatic(&red, Color::Red));

    let cyc = canonical_loose_cycle(6, 6).unwrap();
    let only = planted(30, 6, cyc.edges(), Color::Red);
    let o = step_down_2(&only, &cyc).unwrap();
    blue_ok(&only, o.result.blue().unwrap(), 6);
}

#[test]
fn step_down_rejects_bad_input() {
    let cyc = canonical_loose_cycle(3, 6).unwrap();
    let blue = KUniformColoring::uniform(15, 6, Color::Blue).unwrap();
    assert!(matches!(step_down_1(&blue, &cyc), Err(Error::InvalidInput(_))));
    let small = canonical_loose_cycle(3, 5).unwrap();
    let red = KUniformColoring::uniform(12, 5, Color::Red).unwrap();
    assert!(step_down_1(&red, &small).is_err());
}

fn pair_config(col: Color) -> (CycleConfiguration, PairParams) {
    let (c1, c2) = canonical_pair(8, 2, 3).unwrap();
    let cycle: Vec<Edge> = c1.edges().iter().chain(c2.edges()).cloned().collect();
    let c = planted(38, 8, &cycle, Color::Blue);
    let c = if col == Color::Blue { KUniformColoring::uniform(38, 8, Color::Blue).unwrap() } else { c };
    let cfg = CycleConfiguration::new(c, c1, c2).unwrap();
    let prm = PairParams {
        c: None,
        b: [cfg.w()[0], cfg.w()[1]],
        v1: cfg.v_candidates(0, true)[1],
        v2: cfg.v_candidates(0, false)[4],
        u1: cfg.u_candidates(0, false)[1],
        u2: cfg.u_candidates(0, true)[2],
        free: FreeSide::E,
    };
    (cfg, prm)
}

#[test]
fn red_pair_forced_branches() {
    let (cfg, prm) = pair_config(Color::Red);
    let o = red_pair_path(&cfg, 0, 0, &prm).unwrap();
    let p = o.result.red().expect("only the cycles are blue");
    assert!(p.is_monochromatic(cfg.coloring(), Color::Red));
    check_red_pair(&cfg, 0, 0, &prm, p).unwrap();

    let o = red_pair_path_strong(&cfg, 0, 0, prm.v1, prm.v2, prm.u1, prm.u2).unwrap();
    let p = o.result.red().unwrap();
    check_red_pair_strong(&cfg, 0, 0, [prm.v1, prm.v2, prm.u1, prm.u2], p).unwrap();

    let (cfg, prm) = pair_config(Color::Blue);
    let o = red_pair_path(&cfg, 0, 0, &prm).unwrap();
    blue_ok(cfg.coloring(), o.result.blue().expect("all blue"), 5);
    let o = red_pair_path_strong(&cfg, 0, 0, prm.v1, prm.v2, prm.u1, prm.u2).unwrap();
    blue_ok(cfg.coloring(), o.result.blue().unwrap(), 5);
}

#[test]
fn red_pair_rejects_bad_hypotheses() {
    let (cfg, mut prm) = pair_config(Color::Red);
    prm.v2 = prm.v1;
    assert!(matches!(red_pair_path(&cfg, 0, 0, &prm), Err(Error::InvalidInput(_))));
    let (cfg, mut prm) = pair_config(Color::Red);
    prm.b = [cfg.w()[0], cfg.w()[0]];
    assert!(red_pair_path(&cfg, 0, 0, &prm).is_err());
}

#[test]
fn engine_is_deterministic_and_traced() {
    let (c1, c2) = canonical_pair(8, 2, 3).unwrap();
    let cycle: Vec<Edge> = c1.edges().iter().chain(c2.edges()).cloned().collect();
    for seed in 0..20 {
        let base = random_coloring(38, 8, seed, 0.5).unwrap();
        let c = base.with_overrides(cycle.iter().map(|e| (e.clone(), Color::Blue)).collect()).unwrap();
        let cfg = CycleConfiguration::new(c, c1.clone(), c2.clone()).unwrap();
        let (_, prm) = pair_config(Color::Red);
        let a = red_pair_path(&cfg, 0, 0, &prm).unwrap();
        let b = red_pair_path(&cfg, 0, 0, &prm).unwrap();
        assert_eq!(a, b);
        // every probe is recorded once, with the color the coloring gives it
        let edges: BTreeSet<&Edge> = a.trace.iter().map(|p| &p.edge).collect();
        assert_eq!(edges.len(), a.trace.len());
        assert!(a.trace.iter().all(|p| cfg.coloring().color(&p.edge) == p.color));

        let t = trace_json("red_pair_path", serde_json::json!({ "seed": seed }), &a);
        assert_eq!(t["op"], "red_pair_path");
        assert_eq!(t["probes"].as_array().unwrap().len(), a.trace.len());
        for p in t["probes"].as_array().unwrap() {
            assert!(p["color"] == "R" || p["color"] == "B");
            assert_eq!(p["edge"].as_array().unwrap().len(), 8);
        }
        let v = t["outcome"]["variant"].as_str().unwrap();
        assert_eq!(v, if a.result.is_red() { "RedPath" } else { "BlueCycle" });
        let s = t["outcome"]["structure"].as_array().unwrap();
        assert_eq!(s.len(), if a.result.is_red() { 2 } else { 5 });
    }
}

#[test]
fn branch_forced_branches() {
    let (c1, c2) = canonical_pair(8, 3, 3).unwrap();
    let cycle: Vec<Edge> = c1.edges().iter().chain(c2.edges()).cloned().collect();
    let c = planted(45, 8, &cycle, Color::Blue);
    let cfg = CycleConfiguration::new(c, c1.clone(), c2.clone()).unwrap();
    let b = [cfg.w()[0], cfg.w()[1], cfg.w()[2]];
    let o = branch_paths(&cfg, 1, 2, b).unwrap();
    let bp = o.result.red().expect("only the cycles are blue");
    loose_ramsey::engine::checks::check_branch(&cfg, 1, 2, &b, bp).unwrap();
    assert!(bp.e1.is_monochromatic(cfg.coloring(), Color::Red));
    assert!(bp.f1.is_monochromatic(cfg.coloring(), Color::Red));
    assert_eq!(bp.e1.edges()[0], bp.f1.edges()[0]);

    let blue = KUniformColoring::uniform(45, 8, Color::Blue).unwrap();
    let cfg = CycleConfiguration::new(blue, c1, c2).unwrap();
    let o = branch_paths(&cfg, 1, 2, b).unwrap();
    blue_ok(cfg.coloring(), o.result.blue().unwrap(), 6);
}

#[test]
fn half_cycle_examples() {
    let run = |n: usize, col: Color| {
        let (l1, l2) = if n % 2 == 1 { ((n - 1) / 2, (n + 1) / 2) } else { (n / 2 - 1, n / 2 + 1) };
        let (c1, c2) = canonical_pair(8, l1, l2).unwrap();
        let big_n = 7 * n + (n - 1) / 2;
        let cycle: Vec<Edge> = c1.edges().iter().chain(c2.edges()).cloned().collect();
        let c = if col == Color::Red {
            planted(big_n, 8, &cycle, Color::Blue)
        } else {
            KUniformColoring::uniform(big_n, 8, Color::Blue).unwrap()
        };
        let o = if n % 2 == 1 { half_cycle_odd(&c, &c1, &c2) } else { half_cycle_even(&c, &c1, &c2) }.unwrap();
        (c, o)
    };
    let (c, o) = run(5, Color::Red);
    assert_eq!(c.n(), 37);
    let r = o.result.red().expect("n=5 red");
    assert_eq!(r.len(), 3);
    assert!(validate(r.edges(), StructureKind::Cycle).is_ok() && r.is_monochromatic(&c, Color::Red));
    let (c, o) = run(5, Color::Blue);
    blue_ok(&c, o.result.blue().unwrap(), 5);

    let (c, o) = run(8, Color::Red);
    let r = o.result.red().expect("n=8 red");
    assert_eq!(r.len(), 5);
    assert!(r.is_monochromatic(&c, Color::Red));
    let (c, o) = run(8, Color::Blue);
    blue_ok(&c, o.result.blue().unwrap(), 8);
}

#[test]
fn half_cycle_rejects_bad_lengths() {
    let (c1, c2) = canonical_pair(8, 2, 2).unwrap();
    let c = KUniformColoring::uniform(30, 8, Color::Blue).unwrap();
    assert!(half_cycle_odd(&c, &c1, &c2).is_err());
}

fn suite(lemma: Lemma, forcing: Forcing, trials: u64, tweak: impl Fn(&mut LemmaParams)) {
    let mut p = LemmaParams::new(lemma, 8);
    p.trials = trials;
    p.seed = 2024;
    p.forcing = forcing;
    tweak(&mut p);
    let r = run_lemma_trials(&p).unwrap();
    assert!(r.passed(), "{} {forcing:?}: {:?}", r.op, r.failures.first());
    assert_eq!(r.construction_errors, 0);
    assert_eq!(r.red + r.blue, trials);
    match forcing {
        Forcing::AllBlue => assert_eq!(r.blue, trials),
        Forcing::NonCycleRed => assert_eq!(r.red, trials),
        Forcing::Random => {}
    }
}

#[test]
fn seeded_suites() {
    for lemma in Lemma::ALL {
        let trials = if lemma == Lemma::LadderExtend { 40 } else { 100 };
        suite(lemma, Forcing::Random, trials, |_| {});
    }
}

#[test]
fn forced_laws() {
    for lemma in Lemma::ALL {
        suite(lemma, Forcing::AllBlue, 3, |_| {});
        if lemma != Lemma::FindMonoC2 {
            suite(lemma, Forcing::NonCycleRed, 5, |_| {});
        }
    }
}

#[test]
fn ladder_chain_l4() {
    // l1 = l2 = 4: branch, Initial, then Final
    suite(Lemma::LadderExtend, Forcing::NonCycleRed, 3, |p| {
        p.l1 = Some(4);
        p.l2 = Some(4);
    });
    suite(Lemma::LadderExtend, Forcing::Random, 30, |p| {
        p.l1 = Some(4);
        p.l2 = Some(5);
        p.p_red = Some(0.3);
    });
    suite(Lemma::LadderExtend, Forcing::Random, 30, |p| {
        p.l1 = Some(5);
        p.l2 = Some(5);
        p.p_red = Some(0.7);
    });
}

#[test]
fn other_sizes() {
    for (lemma, n) in [(Lemma::HalfCycleOdd, 9), (Lemma::HalfCycleEven, 10), (Lemma::StepDown1, 6), (Lemma::StepDown2, 9)] {
        suite(lemma, Forcing::Random, 40, |p| p.n = Some(n));
    }
    for k in [9, 10] {
        let mut p = LemmaParams::new(Lemma::RedPairPath, k);
        p.trials = 40;
        let r = run_lemma_trials(&p).unwrap();
        assert!(r.passed());
    }
}
