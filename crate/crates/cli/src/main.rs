use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use loose_ramsey::core::lrc::{read_lrc, to_lrc};
use loose_ramsey::core::binomial;
use loose_ramsey::detect::{arrows, find_mono_path};
use loose_ramsey::extremal::{check_certificate, split_coloring_cycles, split_coloring_paths};
use loose_ramsey::harness::{self, decode_model, export_cnf, parse_cnf, parse_model, Forcing, Lemma, LemmaParams};
use loose_ramsey::{canonical_loose_cycle, canonical_loose_path, Color, Error, Structure};

/// Largest edge count for which `extremal` also runs the detector.
const DETECT_EDGES: u64 = 20_000;

#[derive(Parser)]
#[command(name = "loose-ramsey", version, about = "Ramsey numbers of loose paths and cycles in uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ForcingArg {
    Random,
    AllBlue,
    NonCycleRed,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the canonical loose cycle (or path) C^k_n.
    Cycle {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        path: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test whether a coloring has a red C_n or a blue C_m.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "red-cycle")]
        red_cycle: usize,
        #[arg(long = "blue-cycle")]
        blue_cycle: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test every coloring of K^k_N.
    Exhaustive {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long = "N")]
        big_n: usize,
        /// Largest number of edges C(N,k) to enumerate over.
        #[arg(long, default_value_t = 24)]
        budget: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test seeded random colorings of K^k_N.
    Randomized {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long = "p-red", default_value_t = 0.5)]
        p_red: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the split coloring on R-1 vertices and print its certificate.
    Extremal {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        paths: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run seeded trials of an engine lemma.
    Lemma {
        #[arg(long)]
        name: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        l1: Option<usize>,
        #[arg(long)]
        l2: Option<usize>,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Without it trials cycle through 0.1, 0.3, 0.5, 0.7, 0.9.
        #[arg(long = "p-red")]
        p_red: Option<f64>,
        #[arg(long, value_enum, default_value = "random")]
        forcing: ForcingArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the DIMACS instance "K^k_N avoids a red C_n and a blue C_m".
    Cnf {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Turn a SAT solver model into a coloring and check it.
    Decode {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        emit: PathBuf,
    },
}

enum Fail {
    Usage(String),
    Construction(String),
    Verdict(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::Construction { .. } => Fail::Construction(e.to_string()),
            Error::InvalidModel(_) => Fail::Verdict(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}

/// JSON output and whether the verdict holds.
type Run = Result<(Value, bool), Fail>;

fn emit(v: &Value, out: Option<&Path>) -> Result<(), Fail> {
    let text = serde_json::to_string_pretty(v).expect("json") + "\n";
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Fail::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn structure(k: usize, n: usize, path: bool) -> Run {
    let s = if path {
        Structure::Path(canonical_loose_path(n, k)?)
    } else {
        Structure::Cycle(canonical_loose_cycle(n, k)?)
    };
    Ok((serde_json::to_value(s).expect("json"), true))
}

fn check(input: &Path, n: usize, m: usize) -> Run {
    let c = read_lrc(input)?;
    if c.n() > 64 {
        return Err(Fail::Usage(format!("the detector handles at most 64 vertices, file has {}", c.n())));
    }
    let v = arrows(&c, n, m);
    let witness = v.witness.map(|(col, s)| json!({ "color": col, "structure": s }));
    Ok((json!({ "k": c.k(), "N": c.n(), "n": n, "m": m, "arrows": v.holds, "witness": witness }), v.holds))
}

fn extremal(k: usize, n: usize, m: usize, paths: bool, out: &Path) -> Run {
    let (c, cert) = if paths { split_coloring_paths(k, n, m)? } else { split_coloring_cycles(k, n, m)? };
    let text = to_lrc(&c)?;
    std::fs::write(out, &text).map_err(|e| Fail::Usage(format!("{}: {e}", out.display())))?;
    let status = check_certificate(&c, &cert);
    let edges = binomial(c.n() as u64, k as u64).unwrap_or(u64::MAX);
    let detected = (edges <= DETECT_EDGES).then(|| {
        if paths {
            find_mono_path(&c, Color::Red, n).is_some() || find_mono_path(&c, Color::Blue, m).is_some()
        } else {
            arrows(&c, n, m).holds
        }
    });
    let ok = status.is_valid() && detected != Some(true);
    let v = json!({
        "k": k, "n": n, "m": m, "N": c.n(),
        "kind": if paths { "paths" } else { "cycles" },
        "lrc": out.display().to_string(),
        "certificate": cert,
        "check": status,
        "arrows": detected,
    });
    Ok((v, ok))
}

fn lemma(p: &LemmaParams) -> Run {
    let r = harness::run_lemma_trials(p)?;
    let v = serde_json::to_value(&r).expect("json");
    if r.construction_errors > 0 {
        emit(&v, None)?;
        return Err(Fail::Construction(format!("{} construction errors", r.construction_errors)));
    }
    Ok((v, r.violations == 0))
}

fn cnf(k: usize, n: usize, m: usize, big_n: usize, out: &Path) -> Run {
    let inst = export_cnf(k, n, m, big_n, out)?;
    let v = json!({
        "k": k, "n": n, "m": m, "N": big_n,
        "cnf": out.display().to_string(),
        "variables": inst.var_count,
        "clauses": inst.clauses.len(),
        "copy_counts": inst.copy_counts,
    });
    Ok((v, true))
}

fn decode(cnf_path: &Path, model: &Path, out: &Path) -> Run {
    let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| Fail::Usage(format!("{}: {e}", p.display())));
    let inst = parse_cnf(&read(cnf_path)?)?;
    let lits = parse_model(&read(model)?)?;
    let c = decode_model(&inst, &lits)?;
    std::fs::write(out, to_lrc(&c)?).map_err(|e| Fail::Usage(format!("{}: {e}", out.display())))?;
    let red = lits.iter().filter(|&&l| l > 0).count();
    Ok((json!({ "k": inst.k, "n": inst.n, "m": inst.m, "N": inst.big_n, "red_edges": red, "lrc": out.display().to_string(), "arrows": false }), true))
}

fn run(cmd: Cmd) -> Result<bool, Fail> {
    let (res, out) = match cmd {
        Cmd::Cycle { k, n, path, out } => (structure(k, n, path), out),
        Cmd::Check { input, red_cycle, blue_cycle, out } => (check(&input, red_cycle, blue_cycle), out),
        Cmd::Exhaustive { k, n, m, big_n, budget, out } => {
            let r = harness::exhaustive(k, n, m, big_n, budget).map_err(Fail::from).map(|r| {
                let ok = r.verdict == "all_arrow";
                (serde_json::to_value(r).expect("json"), ok)
            });
            (r, out)
        }
        Cmd::Randomized { k, n, m, big_n, trials, seed, p_red, out } => {
            let r = harness::randomized(k, n, m, big_n, trials, seed, p_red).map_err(Fail::from).map(|r| {
                let ok = r.failures.is_empty();
                (serde_json::to_value(r).expect("json"), ok)
            });
            (r, out)
        }
        Cmd::Extremal { k, n, m, paths, out } => (extremal(k, n, m, paths, &out), None),
        Cmd::Lemma { name, k, n, l1, l2, trials, seed, p_red, forcing, out } => {
            let lemma_kind: Lemma = name.parse()?;
            let forcing = match forcing {
                ForcingArg::Random => Forcing::Random,
                ForcingArg::AllBlue => Forcing::AllBlue,
                ForcingArg::NonCycleRed => Forcing::NonCycleRed,
            };
            let p = LemmaParams { n, l1, l2, trials, seed, p_red, forcing, ..LemmaParams::new(lemma_kind, k) };
            (lemma(&p), out)
        }
        Cmd::Cnf { k, n, m, big_n, out } => (cnf(k, n, m, big_n, &out), None),
        Cmd::Decode { cnf, model, emit: lrc } => (decode(&cnf, &model, &lrc), None),
    };
    let (v, ok) = res?;
    emit(&v, out.as_deref())?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let (code, msg) = match f {
                Fail::Usage(m) => (2, m),
                Fail::Construction(m) => (3, m),
                Fail::Verdict(m) => (1, m),
            };
            eprintln!("loose-ramsey: {msg}");
            ExitCode::from(code)
        }
    }
}
