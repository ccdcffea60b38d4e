//! Command-line interface.

use std::collections::BTreeMap;
use std::io::Write;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fuzzystable_core::equilibrium::{enumerate_equilibrium, is_equilibrium, EquilibriumVerdict};
use fuzzystable_core::fasp::{parse_fasp_program, program_to_formula};
use fuzzystable_core::semantics::{evaluate, fuzzy_reduct, ReductMode};
use fuzzystable_core::stable::{
    check_stable_using, check_stable_via_star, enumerate_stable_over, MinimizedSet, SearchConfig,
    StabilityVerdict, Status, Strategy, WitnessSearch, DEFAULT_MAX_CANDIDATES,
};
use fuzzystable_core::transforms::{boolean_embed_with, choice, nneg, OperatorSelection};
use fuzzystable_core::{
    parse_formula, Formula, Interpretation, Lattice, OperatorKind, Signature, Truth,
};
use serde_json::{json, Value};

use crate::io::{parse_interp_arg, parse_valuation_arg, read_source};
use crate::parallel::Parallel;
use crate::props::{registry, run_suite};

/// Samples drawn when `--strategy auto` falls back to sampling.
pub const AUTO_SAMPLES: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(
    name = "fuzzystable",
    version,
    about = "Stable models of fuzzy propositional formulas"
)]
pub struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and pretty-print a formula or FASP program.
    Parse(Input),
    /// Value of a formula under an interpretation.
    Eval {
        #[command(flatten)]
        input: Input,
        /// `p=0.3,q=7/10`, or `@FILE` with that text or JSON.
        #[arg(long)]
        interp: String,
    },
    /// The fuzzy reduct of a formula relative to an interpretation.
    Reduct {
        #[command(flatten)]
        input: Input,
        /// `p=0.3,q=7/10`, or `@FILE` with that text or JSON.
        #[arg(long)]
        interp: String,
        /// Keep every `&m` wrapper.
        #[arg(long)]
        full: bool,
    },
    /// Whether an interpretation is a (y-)stable model.
    Check {
        #[command(flatten)]
        input: Input,
        /// `p=0.3,q=7/10`, or `@FILE` with that text or JSON.
        #[arg(long)]
        interp: String,
        #[command(flatten)]
        search: SearchArgs,
        /// Decide through the star transform instead of the reduct.
        #[arg(long)]
        via_star: bool,
        /// Exit 1 unless the verdict is `stable`.
        #[arg(long)]
        fail_on_unstable: bool,
    },
    /// All lattice-valued stable models.
    Enumerate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Syntactic transforms.
    #[command(subcommand)]
    Translate(Translate),
    /// Fuzzy equilibrium models.
    #[command(subcommand)]
    Equilibrium(Equilibrium),
    /// Property suites.
    #[command(subcommand)]
    Props(Props),
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Formula file, or `-` for stdin.
    #[arg(
        long,
        short = 'f',
        conflicts_with = "expr",
        required_unless_present = "expr"
    )]
    pub formula: Option<String>,
    /// Formula given inline.
    #[arg(long, short = 'e')]
    pub expr: Option<String>,
    /// Read a normal FASP program (`head <- body.` rules) instead.
    #[arg(long, requires = "conj")]
    pub fasp: bool,
    /// Conjunction used in FASP rule bodies and between rules.
    #[arg(long, value_parser = parse_op)]
    pub conj: Option<OperatorKind>,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Atoms to minimize, comma separated; all atoms by default.
    #[arg(long, value_delimiter = ',')]
    pub minimize: Option<Vec<String>>,
    /// Satisfaction threshold y.
    #[arg(long, default_value = "1", value_parser = parse_truth)]
    pub threshold: Truth,
    /// Search lattice {0, 1/D, ..., 1}.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
    pub denominator: u32,
    /// exhaustive, sampled:N, or auto (exhaustive within the candidate cap,
    /// sampled otherwise).
    #[arg(long, default_value = "auto", value_parser = parse_strategy)]
    pub strategy: StrategyArg,
    /// Seed for sampled searches.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for exhaustive scans.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Largest exhaustive search or enumeration allowed.
    #[arg(long, default_value_t = DEFAULT_MAX_CANDIDATES)]
    pub max_candidates: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyArg {
    Auto,
    Exhaustive,
    Sampled(u64),
}

#[derive(Subcommand, Debug)]
pub enum Translate {
    /// Replace strong negation by complement atoms.
    Nneg(Input),
    /// Read a classical formula with the chosen fuzzy operators.
    Embed {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "not_s", value_parser = parse_op)]
        neg: OperatorKind,
        #[arg(long = "and", default_value = "&m", value_parser = parse_op)]
        and: OperatorKind,
        #[arg(long = "or", default_value = "|m", value_parser = parse_op)]
        or: OperatorKind,
        #[arg(long, default_value = "->s", value_parser = parse_op)]
        imp: OperatorKind,
    },
    /// The choice formula of some atoms.
    Choice {
        /// Atoms, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        atoms: Vec<String>,
        #[arg(long = "and", default_value = "&m", value_parser = parse_op)]
        and: OperatorKind,
    },
}

#[derive(Subcommand, Debug)]
pub enum Equilibrium {
    /// Whether a valuation is an equilibrium model.
    Check {
        #[command(flatten)]
        input: Input,
        /// `h:p=[0.2,0.7]; t:p=[0.2,0.7]`, or `@FILE` with that text or JSON.
        #[arg(long)]
        valuation: String,
        /// Endpoints on {0, 1/D, ..., 1}.
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        denominator: u32,
        /// Largest search allowed.
        #[arg(long, default_value_t = DEFAULT_MAX_CANDIDATES)]
        max_candidates: u64,
        /// Exit 1 unless the valuation is an equilibrium model.
        #[arg(long)]
        fail_on_unstable: bool,
    },
    /// All total equilibrium models with lattice endpoints.
    Enumerate {
        #[command(flatten)]
        input: Input,
        /// Endpoints on {0, 1/D, ..., 1}.
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        denominator: u32,
        /// Largest search allowed.
        #[arg(long, default_value_t = DEFAULT_MAX_CANDIDATES)]
        max_candidates: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Props {
    /// Run one suite, or every suite with `--suite all`.
    Run {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 500)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        denominator: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List the registered suites.
    List,
}

fn parse_op(s: &str) -> Result<OperatorKind, String> {
    OperatorKind::from_token(s).ok_or_else(|| {
        let known: Vec<&str> = OperatorKind::ALL.iter().map(|o| o.token()).collect();
        format!(
            "unknown operator `{s}`; expected one of {}",
            known.join(" ")
        )
    })
}

fn parse_truth(s: &str) -> Result<Truth, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_strategy(s: &str) -> Result<StrategyArg, String> {
    match s {
        "auto" => Ok(StrategyArg::Auto),
        "exhaustive" => Ok(StrategyArg::Exhaustive),
        _ => {
            let n = s
                .strip_prefix("sampled:")
                .ok_or_else(|| format!("expected exhaustive, sampled:N or auto, found `{s}`"))?;
            n.parse()
                .map(StrategyArg::Sampled)
                .map_err(|_| format!("bad sample count `{n}`"))
        }
    }
}

/// The formula read from `--formula`/`--expr`; FASP programs are translated.
pub fn load_formula(input: &Input) -> Result<Formula> {
    let text = match (&input.formula, &input.expr) {
        (Some(path), _) => read_source(path)?,
        (None, Some(e)) => e.clone(),
        (None, None) => bail!("give --formula or --expr"),
    };
    if input.fasp {
        let conj = input.conj.expect("clap enforces --conj");
        let rules = parse_fasp_program(&text, conj)?;
        return Ok(program_to_formula(&rules, conj)?);
    }
    Ok(parse_formula(&text)?)
}

/// Outcome of a command: exit code 0 or 1.
pub struct Finished {
    pub code: i32,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Finished> {
    let json = cli.json;
    let mut code = 0;
    match cli.command {
        Command::Parse(input) => {
            let f = load_formula(&input)?;
            let atoms: Vec<String> = f.signature().iter().map(|a| a.to_string()).collect();
            if json {
                emit(
                    out,
                    &json!({
                        "formula": f.to_string(),
                        "atoms": atoms,
                        "size": f.size(),
                        "depth": f.depth(),
                        "strong_negation": f.contains_strong_negation(),
                    }),
                )?;
            } else {
                writeln!(out, "{f}")?;
                writeln!(out, "atoms: {}", atoms.join(", "))?;
            }
        }
        Command::Eval { input, interp } => {
            let f = load_formula(&input)?;
            let i = parse_interp_arg(&interp)?;
            let v = evaluate(&f, &i)?;
            if json {
                emit(out, &json!({ "value": v, "decimal": v.to_decimal() }))?;
            } else {
                writeln!(out, "{}", v.to_display_string())?;
            }
        }
        Command::Reduct {
            input,
            interp,
            full,
        } => {
            let f = load_formula(&input)?;
            let i = parse_interp_arg(&interp)?;
            let mode = if full {
                ReductMode::Full
            } else {
                ReductMode::Simplified
            };
            let r = fuzzy_reduct(&f, &i, mode)?;
            if json {
                emit(out, &json!({ "reduct": r.to_string(), "mode": mode }))?;
            } else {
                writeln!(out, "{r}")?;
            }
        }
        Command::Check {
            input,
            interp,
            search,
            via_star,
            fail_on_unstable,
        } => {
            let f = load_formula(&input)?;
            let i = parse_interp_arg(&interp)?;
            let i = cover(&f, i)?;
            let p = minimized(&search, i.signature())?;
            let lattice = Lattice::new(search.denominator)?;
            let verdict = if via_star {
                if search.threshold != Truth::ONE {
                    bail!("--via-star decides threshold 1 only");
                }
                check_stable_via_star(&f, &i, &p, lattice, search.max_candidates)?
            } else {
                let cfg = config(&search, &f, &i, &p, lattice)?;
                check_stable_using(
                    &f,
                    &i,
                    &p,
                    search.threshold,
                    &cfg,
                    &Parallel::new(search.jobs),
                )?
            };
            if json {
                emit(out, &serde_json::to_value(&verdict)?)?;
            } else {
                write_verdict(out, &verdict)?;
            }
            if fail_on_unstable && verdict.status != Status::Stable {
                code = 1;
            }
        }
        Command::Enumerate { input, search } => {
            let f = load_formula(&input)?;
            let sig = f.signature();
            let p = minimized(&search, &sig)?;
            let lattice = Lattice::new(search.denominator)?;
            if let StrategyArg::Sampled(_) = search.strategy {
                bail!("enumerate is always exhaustive");
            }
            let cfg = SearchConfig {
                max_candidates: search.max_candidates,
                ..SearchConfig::exhaustive(lattice)
            };
            let models = enumerate_stable_over(
                &f,
                &sig,
                &p,
                search.threshold,
                &cfg,
                &Parallel::new(search.jobs),
            )?;
            if json {
                emit(
                    out,
                    &json!({
                        "denominator": lattice.denominator(),
                        "threshold": search.threshold,
                        "count": models.len(),
                        "models": models,
                    }),
                )?;
            } else {
                writeln!(
                    out,
                    "{} stable model(s), D-valued with D={}, threshold {}",
                    models.len(),
                    lattice.denominator(),
                    search.threshold.to_display_string()
                )?;
                for m in &models {
                    writeln!(out, "{m}")?;
                }
            }
        }
        Command::Translate(t) => translate(t, json, out)?,
        Command::Equilibrium(e) => code = equilibrium(e, json, out)?,
        Command::Props(p) => code = props(p, json, out)?,
    }
    Ok(Finished { code })
}

/// Atoms of the formula missing from the interpretation are an error.
fn cover(f: &Formula, i: Interpretation) -> Result<Interpretation> {
    let missing: Vec<String> = f
        .signature()
        .iter()
        .filter(|a| !i.signature().contains(a.as_str()))
        .map(|a| a.to_string())
        .collect();
    if !missing.is_empty() {
        bail!(
            "the interpretation gives no value to {}",
            missing.join(", ")
        );
    }
    Ok(i)
}

fn minimized(search: &SearchArgs, sig: &Signature) -> Result<MinimizedSet> {
    let p = match &search.minimize {
        None => MinimizedSet::all(sig),
        Some(names) => {
            MinimizedSet::from_names(names.iter().map(|s| s.trim()).filter(|s| !s.is_empty()))
        }
    };
    p.check_within(sig)?;
    Ok(p)
}

fn config(
    search: &SearchArgs,
    f: &Formula,
    i: &Interpretation,
    p: &MinimizedSet,
    lattice: Lattice,
) -> Result<SearchConfig> {
    let strategy = match search.strategy {
        StrategyArg::Exhaustive => Strategy::Exhaustive,
        StrategyArg::Sampled(n) => Strategy::Sampled {
            samples: n,
            seed: search.seed,
        },
        StrategyArg::Auto => {
            let count =
                WitnessSearch::new(f, i, p, search.threshold, lattice)?.candidate_count_exact();
            if count <= search.max_candidates as u128 && i.check_on_lattice(lattice).is_ok() {
                Strategy::Exhaustive
            } else {
                eprintln!(
                    "note: {count} candidates exceed the cap of {} or I is off the lattice; \
                     sampling {AUTO_SAMPLES} candidates (seed {})",
                    search.max_candidates, search.seed
                );
                Strategy::Sampled {
                    samples: AUTO_SAMPLES,
                    seed: search.seed,
                }
            }
        }
    };
    Ok(SearchConfig {
        lattice,
        strategy,
        max_candidates: search.max_candidates,
    })
}

fn write_verdict(out: &mut dyn Write, v: &StabilityVerdict) -> Result<()> {
    let label = match v.status {
        Status::Stable if !v.complete => "stable (no witness found; search incomplete)",
        Status::Stable => "stable",
        Status::Unstable => "unstable",
        Status::NotAModel => "not a model",
    };
    writeln!(out, "{label}")?;
    writeln!(
        out,
        "  D-valued check: D={}, threshold {}, {}, {} candidates examined",
        v.denominator,
        v.threshold.to_display_string(),
        v.strategy,
        v.examined
    )?;
    if let Some(w) = &v.witness {
        writeln!(out, "  witness {w}")?;
    }
    Ok(())
}

fn translate(t: Translate, json: bool, out: &mut dyn Write) -> Result<()> {
    match t {
        Translate::Nneg(input) => {
            let n = nneg(&load_formula(&input)?);
            if json {
                let complements: BTreeMap<String, String> = n
                    .complements
                    .iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect();
                emit(
                    out,
                    &json!({
                        "formula": n.formula.to_string(),
                        "atoms": n.signature.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                        "complements": complements,
                    }),
                )?;
            } else {
                writeln!(out, "{}", n.formula)?;
            }
        }
        Translate::Embed {
            input,
            neg,
            and,
            or,
            imp,
        } => {
            let sel = OperatorSelection {
                neg,
                conj: and,
                disj: or,
                imp,
            };
            let g = boolean_embed_with(&load_formula(&input)?, &sel)?;
            if json {
                emit(out, &json!({ "formula": g.to_string() }))?;
            } else {
                writeln!(out, "{g}")?;
            }
        }
        Translate::Choice { atoms, and } => {
            let p = MinimizedSet::from_names(atoms.iter().map(|s| s.trim()));
            let g = choice(&p, and)?;
            if json {
                emit(out, &json!({ "formula": g.to_string() }))?;
            } else {
                writeln!(out, "{g}")?;
            }
        }
    }
    Ok(())
}

fn equilibrium(e: Equilibrium, json: bool, out: &mut dyn Write) -> Result<i32> {
    match e {
        Equilibrium::Check {
            input,
            valuation,
            denominator,
            max_candidates,
            fail_on_unstable,
        } => {
            let f = load_formula(&input)?;
            let v = parse_valuation_arg(&valuation)?;
            let lattice = Lattice::new(denominator)?;
            let verdict = is_equilibrium(&v, &f, lattice, max_candidates)?;
            if json {
                emit(out, &serde_json::to_value(&verdict)?)?;
            } else {
                write_eq_verdict(out, &verdict)?;
            }
            Ok(i32::from(fail_on_unstable && !verdict.is_equilibrium()))
        }
        Equilibrium::Enumerate {
            input,
            denominator,
            max_candidates,
        } => {
            let f = load_formula(&input)?;
            let lattice = Lattice::new(denominator)?;
            let models = enumerate_equilibrium(&f, &f.signature(), lattice, max_candidates)?;
            if json {
                emit(
                    out,
                    &json!({
                        "denominator": denominator,
                        "count": models.len(),
                        "models": models,
                    }),
                )?;
            } else {
                writeln!(
                    out,
                    "{} equilibrium model(s), endpoints D-valued with D={denominator}",
                    models.len()
                )?;
                for m in &models {
                    writeln!(out, "{m}")?;
                }
            }
            Ok(0)
        }
    }
}

fn write_eq_verdict(out: &mut dyn Write, v: &EquilibriumVerdict) -> Result<()> {
    writeln!(out, "{}", v.status.to_string().replace('_', " "))?;
    writeln!(out, "  D-valued endpoints: D={}", v.denominator)?;
    if let Some(c) = &v.counterexample {
        writeln!(out, "  smaller model {c}")?;
    }
    Ok(())
}

fn props(p: Props, json: bool, out: &mut dyn Write) -> Result<i32> {
    match p {
        Props::List => {
            let suites = registry();
            if json {
                let list: Vec<Value> = suites
                    .iter()
                    .map(|s| json!({ "name": s.name, "about": s.about, "expect_failure": s.expect_failure }))
                    .collect();
                emit(out, &Value::Array(list))?;
            } else {
                for s in suites {
                    let mark = if s.expect_failure {
                        " (expected to fail)"
                    } else {
                        ""
                    };
                    writeln!(out, "{:<40} {}{mark}", s.name, s.about)?;
                }
            }
            Ok(0)
        }
        Props::Run {
            suite,
            trials,
            seed,
            denominator,
            jobs,
        } => {
            let lattice = Lattice::new(denominator)?;
            let names: Vec<&str> = if suite == "all" {
                registry().iter().map(|s| s.name).collect()
            } else {
                vec![registry()
                    .iter()
                    .map(|s| s.name)
                    .find(|n| *n == suite)
                    .ok_or_else(|| {
                        anyhow!("unknown suite `{suite}`; `props list` shows the registered suites")
                    })?]
            };
            let mut reports = Vec::new();
            for name in names {
                let r = run_suite(name, trials, seed, lattice, jobs)
                    .with_context(|| format!("suite {name}"))?;
                if !json {
                    writeln!(out, "{r}")?;
                }
                reports.push(r);
            }
            let ok = reports.iter().all(|r| r.outcome.is_ok());
            if json {
                emit(out, &serde_json::to_value(&reports)?)?;
            } else {
                let bad = reports.iter().filter(|r| !r.outcome.is_ok()).count();
                writeln!(out, "{} suite(s), {bad} failing", reports.len())?;
            }
            Ok(i32::from(!ok))
        }
    }
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}
