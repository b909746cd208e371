//! Seeded trial drivers for the engine lemmas.
//!
//! Each trial builds a lazily colored input (a hash rule with the structure
//! edges overridden), runs the lemma, and checks the outcome with the
//! validators and the literal condition checkers.

use std::collections::BTreeMap;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::connector::{canonical_pair, CycleConfiguration};
use crate::core::{
    canonical_loose_cycle, splitmix64, validate, Color, ColoringSource, Edge, KUniformColoring, LooseCycle, LoosePath,
    Ratio, Rule, StructureKind, Vertex,
};
use crate::detect::trial_seed;
use crate::engine::checks::{
    check_branch, check_final, check_initial, check_p1, check_p2, check_paths, check_red_pair, check_red_pair_strong,
    check_step,
};
use crate::engine::{
    branch_paths, find_mono_c2, half_cycle_even, half_cycle_odd, ladder_extend, ladder_start, probes_json,
    red_pair_path, red_pair_path_strong, step_down_1, step_down_2, trace_json, Dichotomy, Extended, FreeSide,
    LadderState, Outcome, PairParams, Stage, Witness,
};
use crate::error::{Error, Result};

const P_CYCLE: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const KEPT_FAILURES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    FindMonoC2,
    StepDown1,
    StepDown2,
    RedPairPath,
    RedPairPathStrong,
    BranchPaths,
    LadderExtend,
    HalfCycleOdd,
    HalfCycleEven,
}

impl Lemma {
    pub const ALL: [Lemma; 9] = [
        Lemma::FindMonoC2,
        Lemma::StepDown1,
        Lemma::StepDown2,
        Lemma::RedPairPath,
        Lemma::RedPairPathStrong,
        Lemma::BranchPaths,
        Lemma::LadderExtend,
        Lemma::HalfCycleOdd,
        Lemma::HalfCycleEven,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::FindMonoC2 => "find_mono_c2",
            Lemma::StepDown1 => "step_down_1",
            Lemma::StepDown2 => "step_down_2",
            Lemma::RedPairPath => "red_pair_path",
            Lemma::RedPairPathStrong => "red_pair_path_strong",
            Lemma::BranchPaths => "branch_paths",
            Lemma::LadderExtend => "ladder_extend",
            Lemma::HalfCycleOdd => "half_cycle_odd",
            Lemma::HalfCycleEven => "half_cycle_even",
        }
    }

    fn uses_cycle_length(self) -> bool {
        matches!(self, Lemma::StepDown1 | Lemma::StepDown2 | Lemma::HalfCycleOdd | Lemma::HalfCycleEven)
    }

    fn uses_config(self) -> bool {
        matches!(self, Lemma::RedPairPath | Lemma::RedPairPathStrong | Lemma::BranchPaths | Lemma::LadderExtend)
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Lemma> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown lemma {s}")))
    }
}

/// How the non-structure edges are colored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Forcing {
    /// Seeded hash rule.
    Random,
    /// Every edge blue except a planted red input cycle.
    AllBlue,
    /// Every edge red except the given blue cycles.
    NonCycleRed,
}

impl Forcing {
    fn expected(self) -> Option<bool> {
        match self {
            Forcing::Random => None,
            Forcing::AllBlue => Some(false),
            Forcing::NonCycleRed => Some(true),
        }
    }
}

/// Trial parameters; `None` fields take the lemma's defaults.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaParams {
    pub lemma: Lemma,
    pub k: usize,
    pub n: Option<usize>,
    pub l1: Option<usize>,
    pub l2: Option<usize>,
    pub trials: u64,
    pub seed: u64,
    /// Fixed red probability; without one trials cycle through 0.1..0.9.
    pub p_red: Option<f64>,
    pub forcing: Forcing,
}

impl LemmaParams {
    pub fn new(lemma: Lemma, k: usize) -> LemmaParams {
        LemmaParams { lemma, k, n: None, l1: None, l2: None, trials: 1, seed: 0, p_red: None, forcing: Forcing::Random }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialFailure {
    pub trial: u64,
    pub seed: u64,
    /// `construction_error`, `violation` or `error`.
    pub kind: String,
    pub detail: String,
    pub trace: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub op: String,
    pub k: usize,
    pub n: Option<usize>,
    pub l1: Option<usize>,
    pub l2: Option<usize>,
    #[serde(rename = "W")]
    pub w: Option<usize>,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub forcing: Forcing,
    pub seed: u64,
    pub trials: u64,
    pub red: u64,
    pub blue: u64,
    pub construction_errors: u64,
    pub violations: u64,
    /// The first few failures with their traces.
    pub failures: Vec<TrialFailure>,
    /// Traces of trial 0.
    pub sample: Vec<Value>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.construction_errors == 0 && self.violations == 0
    }
}

/// Sizes resolved from the defaults.
#[derive(Clone, Copy, Debug)]
struct Shape {
    n: Option<usize>,
    l1: usize,
    l2: usize,
    w: usize,
    big_n: usize,
}

fn resolve(p: &LemmaParams) -> Result<Shape> {
    let k = p.k;
    let bad = |s: String| Err(Error::InvalidParameters(s));
    if k < 3 {
        return bad(format!("k must be at least 3, got {k}"));
    }
    let shape = match p.lemma {
        Lemma::FindMonoC2 => Shape { n: None, l1: 0, l2: 0, w: 0, big_n: 2 * k - 2 },
        Lemma::StepDown1 | Lemma::StepDown2 => {
            let n = p.n.unwrap_or(if p.lemma == Lemma::StepDown1 { 5 } else { 6 });
            Shape { n: Some(n), l1: 0, l2: 0, w: 0, big_n: (k - 1) * n }
        }
        Lemma::HalfCycleOdd | Lemma::HalfCycleEven => {
            let odd = p.lemma == Lemma::HalfCycleOdd;
            let n = p.n.unwrap_or(if odd { 7 } else { 6 });
            if n < 5 || (n % 2 == 1) != odd {
                return bad(format!("{} needs an {} n, got {n}", p.lemma.name(), if odd { "odd" } else { "even" }));
            }
            let (l1, l2) = if odd { ((n - 1) / 2, (n + 1) / 2) } else { (n / 2 - 1, n / 2 + 1) };
            let w = (n - 1) / 2;
            Shape { n: Some(n), l1, l2, w, big_n: (k - 1) * n + w }
        }
        Lemma::RedPairPath | Lemma::RedPairPathStrong | Lemma::BranchPaths | Lemma::LadderExtend => {
            let ladder = p.lemma == Lemma::LadderExtend;
            let d = if ladder { 6 } else if p.lemma == Lemma::BranchPaths { 3 } else { 2 };
            let l1 = p.l1.unwrap_or(d);
            let l2 = p.l2.unwrap_or(if ladder || p.lemma == Lemma::BranchPaths { l1.max(d) } else { 3.max(l1) });
            if l1 < 2 || l2 < l1 || (ladder && l1 < 3) {
                return bad(format!("need 2 <= l1 <= l2 (l1 >= 3 for the ladder), got l1={l1}, l2={l2}"));
            }
            let w = if ladder { l1 + 2 } else { 3 };
            Shape { n: None, l1, l2, w, big_n: (k - 1) * (l1 + l2) + w }
        }
    };
    Ok(shape)
}

/// Deterministic choices within one trial.
struct Rng(u64);

impl Rng {
    fn below(&mut self, n: usize) -> usize {
        self.0 = splitmix64(self.0);
        (self.0 % n as u64) as usize
    }

    fn pick<T: Copy>(&mut self, xs: &[T]) -> T {
        xs[self.below(xs.len())]
    }

    /// `r` distinct elements.
    fn choose<T: Copy>(&mut self, xs: &[T], r: usize) -> Vec<T> {
        let mut pool = xs.to_vec();
        (0..r).map(|_| pool.remove(self.below(pool.len()))).collect()
    }
}

enum Verdict {
    Red,
    Blue,
}

enum Fail {
    Construction(String, Value),
    Violation(String, Value),
    Other(String),
}

type TrialResult = std::result::Result<(Verdict, Vec<Value>), Fail>;

struct Trial<'a> {
    p: &'a LemmaParams,
    shape: Shape,
    seed: u64,
    prob: f64,
    rng: Rng,
}

fn construction_json(e: &Error) -> Option<(String, Value)> {
    match e {
        Error::Construction { op, detail, candidate, trace } => Some((
            e.to_string(),
            json!({ "op": op, "detail": detail, "candidate": candidate, "probes": probes_json(trace) }),
        )),
        _ => None,
    }
}

fn fail_from(e: Error) -> Fail {
    match construction_json(&e) {
        Some((d, t)) => Fail::Construction(d, t),
        None => Fail::Other(e.to_string()),
    }
}

fn ensure(ok: bool, what: impl FnOnce() -> String, trace: &Value) -> std::result::Result<(), Fail> {
    if ok {
        Ok(())
    } else {
        Err(Fail::Violation(what(), trace.clone()))
    }
}

fn checked(r: std::result::Result<(), String>, trace: &Value) -> std::result::Result<(), Fail> {
    r.map_err(|s| Fail::Violation(s, trace.clone()))
}

/// The state the initial stage actually worked from: it may swap `E1` and
/// `F1` and re-pick `v̄`, `ū`, and records both in its output.
fn initial_input(st: &LadderState, next: &LadderState) -> LadderState {
    let mut before = st.clone();
    if next.pieces.first() == Some(&st.f_piece) {
        std::mem::swap(&mut before.e_piece, &mut before.f_piece);
    }
    before.v_bar = next.v_bar;
    before.u_bar = next.u_bar;
    before
}

fn path_ok(p: &LoosePath, c: &KUniformColoring, col: Color) -> bool {
    validate(p.edges(), StructureKind::Path).is_ok() && p.is_monochromatic(c, col)
}

fn cycle_ok(cy: &LooseCycle, c: &KUniformColoring, col: Color) -> bool {
    validate(cy.edges(), StructureKind::Cycle).is_ok() && cy.is_monochromatic(c, col)
}

impl Trial<'_> {
    fn base(&self) -> Result<Rule> {
        Ok(match self.p.forcing {
            Forcing::Random => Rule::Hash { seed: self.seed, p: Ratio::from_f64(self.prob)? },
            Forcing::AllBlue => Rule::Uniform(Color::Blue),
            Forcing::NonCycleRed => Rule::Uniform(Color::Red),
        })
    }

    fn coloring(&self, fixed: &[&Edge], col: Color) -> Result<KUniformColoring> {
        let base = self.base()?;
        let rule = if fixed.is_empty() {
            base
        } else {
            let overrides: BTreeMap<Edge, Color> = fixed.iter().map(|&e| (e.clone(), col)).collect();
            Rule::Overlay { base: Box::new(base), overrides }
        };
        KUniformColoring::new(self.shape.big_n, self.p.k, ColoringSource::Rule(rule))
    }

    fn config(&self) -> Result<CycleConfiguration> {
        let (c1, c2) = canonical_pair(self.p.k, self.shape.l1, self.shape.l2)?;
        let fixed: Vec<&Edge> = c1.edges().iter().chain(c2.edges()).collect();
        let c = self.coloring(&fixed, Color::Blue)?;
        CycleConfiguration::new(c, c1, c2)
    }

    fn params(&self, extra: Value) -> Value {
        let mut v = json!({
            "k": self.p.k,
            "N": self.shape.big_n,
            "seed": self.seed,
            "forcing": self.p.forcing,
        });
        if self.p.forcing == Forcing::Random {
            v["p_red"] = json!(self.prob);
        }
        if let Some(n) = self.shape.n {
            v["n"] = json!(n);
        }
        if self.p.lemma.uses_config() || self.p.lemma.uses_cycle_length() && self.shape.l1 > 0 {
            v["l1"] = json!(self.shape.l1);
            v["l2"] = json!(self.shape.l2);
        }
        if let (Value::Object(m), Value::Object(x)) = (&mut v, extra) {
            m.extend(x);
        }
        v
    }

    /// Runs a lemma and checks the blue branch; the red branch is returned
    /// for lemma-specific checks.
    fn outcome<R: Witness>(
        &self,
        op: &str,
        params: Value,
        c: &KUniformColoring,
        blue_len: usize,
        r: Result<Outcome<R>>,
    ) -> std::result::Result<(Option<R>, Value), Fail> {
        let o = r.map_err(fail_from)?;
        let t = trace_json(op, params, &o);
        match o.result {
            Dichotomy::Blue(cy) => {
                ensure(cy.len() == blue_len, || format!("blue cycle has {} edges, expected {blue_len}", cy.len()), &t)?;
                ensure(cycle_ok(&cy, c, Color::Blue), || "blue witness is not a blue loose cycle".into(), &t)?;
                Ok((None, t))
            }
            Dichotomy::Red(r) => Ok((Some(r), t)),
        }
    }

    fn run(&mut self) -> TrialResult {
        let res = match self.p.lemma {
            Lemma::FindMonoC2 => self.mono_c2(),
            Lemma::StepDown1 | Lemma::StepDown2 => self.step_down(),
            Lemma::RedPairPath | Lemma::RedPairPathStrong => self.pair(),
            Lemma::BranchPaths => self.branch(),
            Lemma::LadderExtend => self.ladder(),
            Lemma::HalfCycleOdd | Lemma::HalfCycleEven => self.half(),
        }?;
        if let Some(want) = self.p.forcing.expected() {
            let got = matches!(res.0, Verdict::Red);
            let t = res.1.last().cloned().unwrap_or(Value::Null);
            ensure(got == want, || format!("forced coloring gave the {} variant", if got { "red" } else { "blue" }), &t)?;
        }
        Ok(res)
    }

    fn mono_c2(&mut self) -> TrialResult {
        let c = self.coloring(&[], Color::Red).map_err(fail_from)?;
        let (col, cy) = find_mono_c2(&c).map_err(fail_from)?;
        let t = json!({
            "op": "find_mono_c2",
            "params": self.params(json!({})),
            "probes": [],
            "outcome": {
                "variant": if col == Color::Red { "RedCycle" } else { "BlueCycle" },
                "structure": cy.edges().iter().map(|e| e.vertices().to_vec()).collect::<Vec<_>>(),
            },
        });
        ensure(cy.len() == 2 && cycle_ok(&cy, &c, col), || "output is not a monochromatic C_2".into(), &t)?;
        let v = if col == Color::Red { Verdict::Red } else { Verdict::Blue };
        Ok((v, vec![t]))
    }

    fn step_down(&mut self) -> TrialResult {
        let n = self.shape.n.expect("resolved");
        let cyc = canonical_loose_cycle(n, self.p.k).map_err(fail_from)?;
        let fixed: Vec<&Edge> = cyc.edges().iter().collect();
        let c = self.coloring(&fixed, Color::Red).map_err(fail_from)?;
        let (op, drop, r) = if self.p.lemma == Lemma::StepDown1 {
            ("step_down_1", 1, step_down_1(&c, &cyc))
        } else {
            ("step_down_2", 2, step_down_2(&c, &cyc))
        };
        let (red, t) = self.outcome(op, self.params(json!({})), &c, n, r)?;
        match red {
            None => Ok((Verdict::Blue, vec![t])),
            Some(cy) => {
                ensure(cy.len() == n - drop, || format!("red cycle has {} edges, expected {}", cy.len(), n - drop), &t)?;
                ensure(cycle_ok(&cy, &c, Color::Red), || "red cycle is not a red loose cycle".into(), &t)?;
                Ok((Verdict::Red, vec![t]))
            }
        }
    }

    /// Boundary vertices `v', v'', u', u''` around `(i, j)`, all distinct.
    fn ends(&mut self, cfg: &CycleConfiguration, i: usize, j: usize) -> Option<[Vertex; 4]> {
        let (vp, vn) = (cfg.v_candidates(i, true), cfg.v_candidates(i, false));
        let (up, un) = (cfg.u_candidates(j, false), cfg.u_candidates(j, true));
        (0..100).find_map(|_| {
            let e = [self.rng.pick(&vp), self.rng.pick(&vn), self.rng.pick(&up), self.rng.pick(&un)];
            let mut s = e.to_vec();
            s.sort_unstable();
            s.dedup();
            (s.len() == 4).then_some(e)
        })
    }

    fn pair(&mut self) -> TrialResult {
        let cfg = self.config().map_err(fail_from)?;
        let c = cfg.coloring();
        let k = self.p.k;
        let (i, j) = (self.rng.below(cfg.l1()), self.rng.below(cfg.l2()));
        let ends = self.ends(&cfg, i, j).ok_or_else(|| Fail::Other("no distinct boundary vertices".into()))?;
        let [v1, v2, u1, u2] = ends;
        let blue_len = cfg.l1() + cfg.l2();
        if self.p.lemma == Lemma::RedPairPathStrong {
            let params = self.params(json!({ "i": i, "j": j, "ends": ends }));
            let r = red_pair_path_strong(&cfg, i, j, v1, v2, u1, u2);
            let (red, t) = self.outcome("red_pair_path_strong", params, c, blue_len, r)?;
            return match red {
                None => Ok((Verdict::Blue, vec![t])),
                Some(p) => {
                    ensure(p.len() == 2 && path_ok(&p, c, Color::Red), || "output is not a red 2-path".into(), &t)?;
                    checked(check_red_pair_strong(&cfg, i, j, ends, &p), &t)?;
                    Ok((Verdict::Red, vec![t]))
                }
            };
        }
        let interior = cfg.c1().interior(i);
        let cv = (self.rng.below(2) == 1).then(|| interior[self.rng.below(k - 2)]);
        let b = self.rng.choose(cfg.w(), 2);
        let free = if self.rng.below(2) == 0 { FreeSide::E } else { FreeSide::F };
        let prm = PairParams { c: cv, b: [b[0], b[1]], v1, v2, u1, u2, free };
        let params = self.params(json!({ "i": i, "j": j, "pair": prm }));
        let r = red_pair_path(&cfg, i, j, &prm);
        let (red, t) = self.outcome("red_pair_path", params, c, blue_len, r)?;
        match red {
            None => Ok((Verdict::Blue, vec![t])),
            Some(p) => {
                ensure(p.len() == 2 && path_ok(&p, c, Color::Red), || "output is not a red 2-path".into(), &t)?;
                checked(check_red_pair(&cfg, i, j, &prm, &p), &t)?;
                Ok((Verdict::Red, vec![t]))
            }
        }
    }

    fn branch(&mut self) -> TrialResult {
        let cfg = self.config().map_err(fail_from)?;
        let (i, j) = (self.rng.below(cfg.l1()), self.rng.below(cfg.l2()));
        let b = self.rng.choose(cfg.w(), 3);
        let b = [b[0], b[1], b[2]];
        let params = self.params(json!({ "i": i, "j": j, "B": b }));
        let r = branch_paths(&cfg, i, j, b);
        let c = cfg.coloring();
        let (red, t) = self.outcome("branch_paths", params, c, cfg.l1() + cfg.l2(), r)?;
        match red {
            None => Ok((Verdict::Blue, vec![t])),
            Some(bp) => {
                let ok = path_ok(&bp.e1, c, Color::Red) && path_ok(&bp.f1, c, Color::Red);
                ensure(ok, || "branch paths are not red loose paths".into(), &t)?;
                checked(check_branch(&cfg, i, j, &b, &bp), &t)?;
                Ok((Verdict::Red, vec![t]))
            }
        }
    }

    fn state_ok(&self, cfg: &CycleConfiguration, st: &LadderState, t: &Value) -> std::result::Result<(), Fail> {
        let c = cfg.coloring();
        ensure(path_ok(&st.epath(), c, Color::Red) && path_ok(&st.fpath(), c, Color::Red), || "ladder paths are not red".into(), t)?;
        checked(check_paths(st), t)?;
        checked(check_p1(cfg, st), t)?;
        checked(check_p2(cfg, st), t)
    }

    /// Branch paths, the initial stage, `l1 - 4` steps and the final stage.
    /// Under [`Forcing::AllBlue`] the states come from the all-red coloring
    /// and every stage is also run on the all-blue one, which must answer
    /// blue.
    fn ladder(&mut self) -> TrialResult {
        let cfg = if self.p.forcing == Forcing::AllBlue {
            let p = LemmaParams { forcing: Forcing::NonCycleRed, ..self.p.clone() };
            Trial { p: &p, shape: self.shape, seed: self.seed, prob: self.prob, rng: Rng(0) }.config()
        } else {
            self.config()
        }
        .map_err(fail_from)?;
        let blue_cfg = if self.p.forcing == Forcing::AllBlue { Some(self.config().map_err(fail_from)?) } else { None };
        let c = cfg.coloring().clone();
        let (l1, l2) = (cfg.l1(), cfg.l2());
        let k = self.p.k;
        let (i0, j0) = (self.rng.below(l1), self.rng.below(l2));
        let b = self.rng.choose(cfg.w(), 3);
        let b = [b[0], b[1], b[2]];
        let mut traces = Vec::new();
        let r = branch_paths(&cfg, i0, j0, b);
        let (red, t) = self.outcome("branch_paths", self.params(json!({ "i": i0, "j": j0, "B": b })), &c, l1 + l2, r)?;
        traces.push(t);
        let Some(bp) = red else { return Ok((Verdict::Blue, traces)) };
        let mut st = ladder_start(i0, j0, &bp);
        let mut stages = vec![Stage::Initial];
        stages.extend(std::iter::repeat(Stage::Step).take(l1.saturating_sub(4)));
        let mut blue_stages = 0;
        let n_stages = stages.len() + usize::from(l1 >= 4);
        for (s, stage) in stages.into_iter().enumerate().chain(std::iter::once((usize::MAX, Stage::Step))) {
            let stage = if s == usize::MAX {
                if l1 < 4 {
                    break;
                }
                let (i, j) = st.edge_index(&cfg, st.t + 2);
                let used: Vec<Vertex> = st.epath_edges().iter().chain(st.f_piece.iter()).flat_map(|e| e.vertices().to_vec()).collect();
                let (e, f) = (cfg.c1().edge_in_order(i), cfg.c2().edge_in_order(j));
                let v = e[..k - 1].iter().copied().find(|x| !used.contains(x));
                let u = f[..k - 1].iter().copied().find(|x| !used.contains(x));
                let (Some(v), Some(u)) = (v, u) else {
                    return Err(Fail::Other("no free link vertices for the final stage".into()));
                };
                Stage::Final { v, u }
            } else {
                stage
            };
            let params = self.params(json!({ "i": i0, "j": j0, "t": st.t, "stage": stage }));
            if let Some(bc) = &blue_cfg {
                let r = ladder_extend(bc, &st, stage);
                let (red, t) = self.outcome("ladder_extend", params.clone(), bc.coloring(), l1 + l2, r)?;
                ensure(red.is_none(), || "all-blue stage gave a red variant".into(), &t)?;
                traces.push(t);
                blue_stages += 1;
            }
            let r = ladder_extend(&cfg, &st, stage);
            let (red, t) = self.outcome("ladder_extend", params, &c, l1 + l2, r)?;
            let Some(ext) = red else {
                traces.push(t);
                return Ok((Verdict::Blue, traces));
            };
            match (stage, ext) {
                (Stage::Final { v, u }, Extended::Path(p)) => {
                    ensure(path_ok(&p, &c, Color::Red), || "final path is not red".into(), &t)?;
                    checked(check_final(&cfg, &st, v, u, &p), &t)?;
                }
                (Stage::Initial, Extended::State(next)) => {
                    self.state_ok(&cfg, &next, &t)?;
                    checked(check_initial(&cfg, &initial_input(&st, &next), &next), &t)?;
                    st = next;
                }
                (Stage::Step, Extended::State(next)) => {
                    self.state_ok(&cfg, &next, &t)?;
                    checked(check_step(&cfg, &st, &next), &t)?;
                    st = next;
                }
                _ => return Err(Fail::Violation("stage returned the wrong kind of structure".into(), t)),
            }
            traces.push(t);
        }
        if blue_cfg.is_some() {
            let ok = blue_stages == n_stages;
            return if ok { Ok((Verdict::Blue, traces)) } else { Err(Fail::Other("not every stage ran".into())) };
        }
        Ok((Verdict::Red, traces))
    }

    fn half(&mut self) -> TrialResult {
        let n = self.shape.n.expect("resolved");
        let cfg = self.config().map_err(fail_from)?;
        let c = cfg.coloring();
        let odd = self.p.lemma == Lemma::HalfCycleOdd;
        let (op, want, r) = if odd {
            ("half_cycle_odd", n.div_ceil(2), half_cycle_odd(c, cfg.c1(), cfg.c2()))
        } else {
            ("half_cycle_even", n / 2 + 1, half_cycle_even(c, cfg.c1(), cfg.c2()))
        };
        let (red, t) = self.outcome(op, self.params(json!({})), c, n, r)?;
        match red {
            None => Ok((Verdict::Blue, vec![t])),
            Some(cy) => {
                ensure(cy.len() == want, || format!("red cycle has {} edges, expected {want}", cy.len()), &t)?;
                ensure(cycle_ok(&cy, c, Color::Red), || "red cycle is not a red loose cycle".into(), &t)?;
                Ok((Verdict::Red, vec![t]))
            }
        }
    }
}

/// One seeded trial; `t` is the trial index.
pub fn run_lemma(p: &LemmaParams, t: u64) -> Result<std::result::Result<(bool, Vec<Value>), TrialFailure>> {
    let shape = resolve(p)?;
    let seed = trial_seed(p.seed, t);
    let prob = p.p_red.unwrap_or(P_CYCLE[(t % P_CYCLE.len() as u64) as usize]);
    if !(0.0..=1.0).contains(&prob) {
        return Err(Error::InvalidParameters(format!("p_red {prob} is not in [0,1]")));
    }
    let mut trial = Trial { p, shape, seed, prob, rng: Rng(seed ^ 0x5DEE_CE66) };
    Ok(match trial.run() {
        Ok((v, traces)) => Ok((matches!(v, Verdict::Red), traces)),
        Err(f) => {
            let (kind, detail, trace) = match f {
                Fail::Construction(d, t) => ("construction_error", d, t),
                Fail::Violation(d, t) => ("violation", d, t),
                Fail::Other(d) => ("error", d, Value::Null),
            };
            Err(TrialFailure { trial: t, seed, kind: kind.into(), detail, trace })
        }
    })
}

/// Runs `p.trials` seeded trials in parallel; results are in trial order.
pub fn run_lemma_trials(p: &LemmaParams) -> Result<LemmaReport> {
    if p.trials == 0 {
        return Err(Error::InvalidParameters("trials must be at least 1".into()));
    }
    let shape = resolve(p)?;
    let results: Vec<_> = (0..p.trials).into_par_iter().map(|t| run_lemma(p, t)).collect::<Result<_>>()?;
    let mut rep = LemmaReport {
        op: p.lemma.name().into(),
        k: p.k,
        n: shape.n,
        l1: (p.lemma.uses_config() || shape.l1 > 0).then_some(shape.l1),
        l2: (p.lemma.uses_config() || shape.l2 > 0).then_some(shape.l2),
        w: (shape.w > 0).then_some(shape.w),
        big_n: shape.big_n,
        forcing: p.forcing,
        seed: p.seed,
        trials: p.trials,
        red: 0,
        blue: 0,
        construction_errors: 0,
        violations: 0,
        failures: Vec::new(),
        sample: Vec::new(),
    };
    for (t, r) in results.into_iter().enumerate() {
        match r {
            Ok((red, traces)) => {
                if red {
                    rep.red += 1;
                } else {
                    rep.blue += 1;
                }
                if t == 0 {
                    rep.sample = traces;
                }
            }
            Err(f) => {
                if f.kind == "construction_error" {
                    rep.construction_errors += 1;
                } else {
                    rep.violations += 1;
                }
                if rep.failures.len() < KEPT_FAILURES {
                    rep.failures.push(f);
                }
            }
        }
    }
    Ok(rep)
}
