use loose_ramsey::detect::{arrows, trial_seed};
use loose_ramsey::extremal::split_coloring_cycles;
use loose_ramsey::harness::*;
use loose_ramsey::*;

fn satisfies(inst: &CnfInstance, model: &[i64]) -> bool {
    let holds = |l: i64| model[l.unsigned_abs() as usize - 1] == l;
    inst.clauses.iter().all(|c| c.iter().any(|&l| holds(l)))
}

/// Unordered C^k_n copies on `n_vertices`, from all vertex orderings.
fn copies_by_permutation(n_vertices: usize, k: usize, n: usize) -> usize {
    let span = n * (k - 1);
    let mut out = std::collections::BTreeSet::new();
    let mut order = Vec::new();
    fn rec(nv: usize, k: usize, span: usize, order: &mut Vec<Vertex>, out: &mut std::collections::BTreeSet<Vec<u64>>) {
        if order.len() == span {
            let c = LooseCycle::from_order(k, order.clone()).unwrap();
            let mut r: Vec<u64> = c.edges().iter().map(|e| colex_rank(e, nv, k).unwrap()).collect();
            r.sort_unstable();
            out.insert(r);
            return;
        }
        for v in 0..nv as Vertex {
            if !order.contains(&v) {
                order.push(v);
                rec(nv, k, span, order, out);
                order.pop();
            }
        }
    }
    rec(n_vertices, k, span, &mut order, &mut out);
    out.len()
}

#[test]
fn formula_examples() {
    assert_eq!(conjectured_ramsey(3, 3, 3, Shape::PP).unwrap(), 8);
    assert_eq!(conjectured_ramsey(4, 4, 4, Shape::PP).unwrap(), 14);
    assert_eq!(conjectured_ramsey(8, 5, 5, Shape::CC).unwrap(), 37);
    assert_eq!(conjectured_ramsey(3, 3, 3, Shape::CC).unwrap(), 7);
    assert!(conjectured_ramsey(3, 2, 3, Shape::CC).is_err());
    for k in 2..60 {
        assert_eq!(conjectured_ramsey(k, 2, 2, Shape::CC).unwrap(), 2 * k - 2);
    }
}

#[test]
fn c2_values_match_detector() {
    // the measured value is 2k-2: 2k-3 vertices admit a counterexample
    for k in [3, 4] {
        let r = conjectured_ramsey(k, 2, 2, Shape::CC).unwrap();
        assert_eq!(exhaustive(k, 2, 2, r, 24).unwrap().verdict, "all_arrow");
        assert_eq!(exhaustive(k, 2, 2, r - 1, 24).unwrap().verdict, "counterexample");
    }
}

#[test]
fn reports_flag_the_c2_conflict() {
    let r = exhaustive(3, 2, 2, 4, 24).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    for key in ["k", "n", "m", "N", "mode", "verdict", "witness", "failures", "seed", "trials"] {
        assert!(v.get(key).is_some(), "report lacks {key}");
    }
    assert_eq!(v["mode"], "exhaustive");
    assert_eq!(v["trials"], 16);
    assert!(r.notes.iter().any(|s| s.contains("2k-3")));
    let r = randomized(4, 2, 2, 6, 50, 3, 0.5).unwrap();
    assert!(r.notes.iter().any(|s| s.contains("2k-3")));
    assert!(r.failures.is_empty());
}

#[test]
fn cnf_examples() {
    let i = build_cnf(3, 2, 2, 4, DEFAULT_CLAUSE_BUDGET).unwrap();
    assert_eq!((i.var_count, i.clauses.len()), (4, 12));
    assert_eq!(i.copy_counts.0, copies_by_permutation(4, 3, 2));
    let i = build_cnf(3, 2, 2, 3, DEFAULT_CLAUSE_BUDGET).unwrap();
    assert_eq!((i.var_count, i.clauses.len()), (1, 0));
    let i = build_cnf(3, 3, 3, 6, DEFAULT_CLAUSE_BUDGET).unwrap();
    assert_eq!(i.var_count, 20);
    assert_eq!(i.copy_counts.0, copies_by_permutation(6, 3, 3));
    // no duplicates, sorted, sign pattern by color
    assert!(i.clauses.windows(2).all(|w| w[0] < w[1]));
    assert!(i.clauses.iter().all(|c| c.iter().all(|&l| l < 0) || c.iter().all(|&l| l > 0)));
    let i = build_cnf(3, 3, 2, 6, DEFAULT_CLAUSE_BUDGET).unwrap();
    assert_eq!(i.copy_counts.1, copies_by_permutation(6, 3, 2));
}

#[test]
fn clause_semantics_match_detector() {
    for (k, n, m, big_n) in [(3, 3, 3, 6), (3, 2, 2, 4)] {
        let inst = build_cnf(k, n, m, big_n, DEFAULT_CLAUSE_BUDGET).unwrap();
        for t in 0..1000 {
            let p = [0.1, 0.3, 0.5, 0.7, 0.9][t as usize % 5];
            let c = random_coloring(big_n, k, trial_seed(17, t), p).unwrap();
            let model = encode_model(&c).unwrap();
            assert_eq!(satisfies(&inst, &model), !arrows(&c, n, m).holds, "trial {t}");
        }
    }
}

#[test]
fn every_k3_4_coloring_violates_the_cnf() {
    let inst = build_cnf(3, 2, 2, 4, DEFAULT_CLAUSE_BUDGET).unwrap();
    for mask in 0i64..16 {
        let model: Vec<i64> = (0..4).map(|r| if mask >> r & 1 == 1 { r + 1 } else { -(r + 1) }).collect();
        assert!(!satisfies(&inst, &model));
    }
}

#[test]
fn decode_examples() {
    let inst = build_cnf(3, 3, 3, 6, DEFAULT_CLAUSE_BUDGET).unwrap();
    let (split, _) = split_coloring_cycles(3, 3, 3).unwrap();
    let model = encode_model(&split).unwrap();
    let c = decode_model(&inst, &model).unwrap();
    assert!(!arrows(&c, 3, 3).holds);
    assert_eq!(encode_model(&c).unwrap(), model);
    assert_eq!(c.to_bits().unwrap(), split.to_bits().unwrap());

    let small = build_cnf(3, 2, 2, 4, DEFAULT_CLAUSE_BUDGET).unwrap();
    assert!(matches!(decode_model(&small, &[1, 2, 3, 4]), Err(Error::InvalidModel(_))));
    assert!(matches!(decode_model(&inst, &model[1..]), Err(Error::InvalidModel(_))));
    let mut clash = model.clone();
    clash.push(-model[0]);
    assert!(decode_model(&inst, &clash).is_err());
}

#[test]
fn dimacs_is_stable() {
    let dir = std::env::temp_dir().join(format!("loose-ramsey-harness-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.cnf"), dir.join("b.cnf"));
    export_cnf(3, 3, 3, 7, &a).unwrap();
    export_cnf(3, 3, 3, 7, &b).unwrap();
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert!(text.lines().any(|l| l == "p cnf 35 1680"));
    assert_eq!(parse_cnf(&text).unwrap(), build_cnf(3, 3, 3, 7, DEFAULT_CLAUSE_BUDGET).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn models_parse_in_both_formats() {
    assert_eq!(parse_model("1 -2 3 0\n").unwrap(), vec![1, -2, 3]);
    assert_eq!(parse_model("c x\ns SATISFIABLE\nv 1 -2\nv 3 0\n").unwrap(), vec![1, -2, 3]);
    assert!(parse_model("s UNSATISFIABLE\n").is_err());
}

#[test]
fn lemma_names_roundtrip() {
    for l in Lemma::ALL {
        assert_eq!(l.name().parse::<Lemma>().unwrap(), l);
    }
    assert!("nope".parse::<Lemma>().is_err());
}

#[test]
fn lemma_reports_are_deterministic() {
    let mut p = LemmaParams::new(Lemma::BranchPaths, 8);
    p.trials = 30;
    p.seed = 4;
    let a = serde_json::to_string(&run_lemma_trials(&p).unwrap()).unwrap();
    let b = serde_json::to_string(&run_lemma_trials(&p).unwrap()).unwrap();
    assert_eq!(a, b);
}
