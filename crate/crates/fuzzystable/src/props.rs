//! Random generators and the registry of invariant suites.
//!
//! A suite draws a [`Case`] per trial from a seeded generator and checks
//! it. Failing cases are shrunk by replacing subformulas with their
//! children or with the constants 0 and 1 while the check keeps failing.

use std::fmt;

use anyhow::{bail, Result};
use fuzzystable_core::equilibrium::{
    interpretation_of, is_equilibrium, is_n5_model, n5_evaluate, nneg_preimage, nneg_valuation,
    valuation_between, valuation_of, Interval, Valuation, World,
};
use fuzzystable_core::fasp::{
    enumerate_answer_sets, program_to_formula, rule_to_formula, Rule, RuleTerm,
};
use fuzzystable_core::semantics::{
    evaluate, fuzzy_reduct, fuzzy_reduct_with_wrapper, satisfies, ReductMode,
};
use fuzzystable_core::stable::{
    boolean_stable_check, check_stable, check_stable_via_star, enumerate_stable_over,
    fresh_star_atoms, star_transform, y_to_one, MinimizedSet, SearchConfig, Sequential, Status,
    DEFAULT_MAX_CANDIDATES,
};
use fuzzystable_core::transforms::{
    boolean_embed, boolean_embed_with, choice, crisp_interp, nneg, OperatorSelection,
};
use fuzzystable_core::{
    parse_formula, Atom, BoolInterpretation, Formula, Interpretation, Lattice, OperatorKind,
    Signature, Truth,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A formula of depth at most `max_depth` over `sig`, deterministic in
/// `seed`. Constants come from the lattice; `~` appears on atoms only, and
/// only when `allow_strongneg` is set.
pub fn gen_formula(
    seed: u64,
    sig: &Signature,
    max_depth: usize,
    ops: &[OperatorKind],
    allow_strongneg: bool,
    lattice: Lattice,
) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_formula(&mut rng, sig, max_depth, ops, allow_strongneg, lattice)
}

/// A lattice-valued interpretation of `sig`, deterministic in `seed`.
pub fn gen_interpretation(seed: u64, sig: &Signature, lattice: Lattice) -> Interpretation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_interp(&mut rng, sig, lattice)
}

fn random_formula(
    rng: &mut ChaCha8Rng,
    sig: &Signature,
    depth: usize,
    ops: &[OperatorKind],
    strong: bool,
    lattice: Lattice,
) -> Formula {
    assert!(depth >= 1, "max_depth must be at least 1");
    if depth == 1 || ops.is_empty() || rng.gen_bool(0.2) {
        return random_leaf(rng, sig, strong, lattice);
    }
    let op = *ops.choose(rng).expect("non-empty");
    if op.arity() == 1 {
        Formula::neg(
            op,
            random_formula(rng, sig, depth - 1, ops, strong, lattice),
        )
    } else {
        let l = random_formula(rng, sig, depth - 1, ops, strong, lattice);
        let r = random_formula(rng, sig, depth - 1, ops, strong, lattice);
        Formula::bin(op, l, r)
    }
}

fn random_leaf(rng: &mut ChaCha8Rng, sig: &Signature, strong: bool, lattice: Lattice) -> Formula {
    if sig.is_empty() || rng.gen_bool(0.25) {
        return Formula::Const(random_point(rng, lattice));
    }
    let a = sig.atoms().choose(rng).expect("non-empty").clone();
    if strong && rng.gen_bool(0.3) {
        Formula::StrongNeg(a)
    } else {
        Formula::Atom(a)
    }
}

fn random_point(rng: &mut ChaCha8Rng, lattice: Lattice) -> Truth {
    lattice.point(rng.gen_range(0..=lattice.denominator()))
}

fn random_interp(rng: &mut ChaCha8Rng, sig: &Signature, lattice: Lattice) -> Interpretation {
    let values = sig.iter().map(|_| random_point(rng, lattice)).collect();
    Interpretation::new(sig.clone(), values)
}

/// `J ≤^p I`: atoms of `p` lowered to a random point at most `I(a)`.
fn random_below(
    rng: &mut ChaCha8Rng,
    i: &Interpretation,
    p: &MinimizedSet,
    lattice: Lattice,
) -> Interpretation {
    let values = i
        .iter()
        .map(|(a, v)| {
            if p.contains(a.as_str()) {
                let top = lattice.index_of(v).expect("on lattice");
                lattice.point(rng.gen_range(0..=top))
            } else {
                v
            }
        })
        .collect();
    Interpretation::new(i.signature().clone(), values)
}

fn random_subset(rng: &mut ChaCha8Rng, sig: &Signature) -> MinimizedSet {
    MinimizedSet::new(sig.iter().filter(|_| rng.gen_bool(0.5)).cloned())
}

fn random_valuation(rng: &mut ChaCha8Rng, sig: &Signature, lattice: Lattice) -> Valuation {
    let ivs = sig
        .iter()
        .map(|_| {
            let a = random_point(rng, lattice);
            let b = random_point(rng, lattice);
            Interval::new(a.min(b), a.max(b)).expect("ordered")
        })
        .collect();
    Valuation::total(sig.clone(), ivs)
}

/// Like [`biased_interp`], for total valuations and N5 models.
fn biased_valuation(rng: &mut ChaCha8Rng, f: &Formula, sig: &Signature, l: Lattice) -> Valuation {
    if rng.gen_bool(0.6) {
        let mut models = Vec::new();
        for _ in 0..200 {
            let v = random_valuation(rng, sig, l);
            if is_n5_model(&v, f).unwrap_or(false) {
                models.push(v);
            }
        }
        if let Some(v) = models.choose(rng) {
            return v.clone();
        }
    }
    random_valuation(rng, sig, l)
}

fn random_program(rng: &mut ChaCha8Rng, sig: &Signature, lattice: Lattice) -> Vec<Rule> {
    let conj = *OperatorKind::CONJUNCTIONS.choose(rng).expect("non-empty");
    let term = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.8) {
            RuleTerm::Atom(sig.atoms().choose(rng).expect("non-empty").clone())
        } else {
            RuleTerm::Const(random_point(rng, lattice))
        }
    };
    (0..rng.gen_range(1..=4))
        .map(|_| Rule {
            head: term(rng),
            positive: (0..rng.gen_range(0..=2)).map(|_| term(rng)).collect(),
            negative: (0..rng.gen_range(0..=2)).map(|_| term(rng)).collect(),
            conj,
        })
        .collect()
}

/// Everything a trial might need; suites use the fields they care about.
#[derive(Clone, Debug)]
pub struct Case {
    pub formula: Formula,
    pub other: Option<Formula>,
    pub program: Vec<Rule>,
    pub interp: Interpretation,
    pub below: Option<Interpretation>,
    pub valuation: Option<Valuation>,
    pub minimize: MinimizedSet,
    pub extra: MinimizedSet,
    pub threshold: Truth,
    pub op: OperatorKind,
    pub selection: OperatorSelection,
    /// Seed for draws made inside the check.
    pub salt: u64,
}

impl Case {
    fn new(formula: Formula, interp: Interpretation) -> Case {
        Case {
            formula,
            other: None,
            program: Vec::new(),
            interp,
            below: None,
            valuation: None,
            minimize: MinimizedSet::empty(),
            extra: MinimizedSet::empty(),
            threshold: Truth::ONE,
            op: OperatorKind::MinAnd,
            selection: OperatorSelection::default(),
            salt: 0,
        }
    }
}

/// What the check expected and what it saw.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub expected: String,
    pub actual: String,
}

/// Result of one trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trial {
    /// The property's premise did not hold; nothing was tested.
    Vacuous,
    Held,
    Failed(Mismatch),
}

impl From<Option<Mismatch>> for Trial {
    fn from(m: Option<Mismatch>) -> Trial {
        m.map_or(Trial::Held, Trial::Failed)
    }
}

fn differ(expected: impl fmt::Display, actual: impl fmt::Display) -> Trial {
    Trial::Failed(Mismatch {
        expected: expected.to_string(),
        actual: actual.to_string(),
    })
}

/// Both sides true is a positive instance; both false tests nothing of
/// interest.
fn expect_iff(expected: bool, actual: bool) -> Trial {
    match (expected, actual) {
        (true, true) => Trial::Held,
        (false, false) => Trial::Vacuous,
        _ => differ(expected, actual),
    }
}

/// Agreement on `not_a_model` tests nothing of interest.
fn expect_status(expected: Status, actual: Status) -> Trial {
    if expected == Status::NotAModel && actual == Status::NotAModel {
        Trial::Vacuous
    } else {
        expect_eq(expected, actual)
    }
}

fn expect_eq<T: PartialEq + fmt::Display>(expected: T, actual: T) -> Trial {
    if expected == actual {
        Trial::Held
    } else {
        differ(expected, actual)
    }
}

type GenFn = fn(&mut ChaCha8Rng, Lattice) -> Case;
type CheckFn = fn(&Case, Lattice) -> Result<Trial>;

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    /// The property is known to fail; the suite passes when a trial fails.
    pub expect_failure: bool,
    /// Overrides the first trial with a pinned case.
    pinned: Option<fn() -> Case>,
    generate: GenFn,
    check: CheckFn,
}

fn sig2() -> Signature {
    Signature::from_names(["p", "q"])
}

fn sig3() -> Signature {
    Signature::from_names(["p", "q", "r"])
}

const DEPTH: usize = 4;

/// Operators whose N5 clauses follow the node: every conjunction and
/// disjunction, `¬_s` and `→_r`.
const N5_OPS: [OperatorKind; 8] = [
    OperatorKind::LukasiewiczAnd,
    OperatorKind::MinAnd,
    OperatorKind::ProductAnd,
    OperatorKind::LukasiewiczOr,
    OperatorKind::MaxOr,
    OperatorKind::ProductOr,
    OperatorKind::StandardNeg,
    OperatorKind::ResidualImp,
];

const CLASSICAL_OPS: [OperatorKind; 4] = [
    OperatorKind::StandardNeg,
    OperatorKind::MinAnd,
    OperatorKind::MaxOr,
    OperatorKind::ResidualImp,
];

fn plain(rng: &mut ChaCha8Rng, sig: &Signature, l: Lattice) -> Formula {
    random_formula(rng, sig, DEPTH, &OperatorKind::ALL, false, l)
}

fn exhaustive(l: Lattice) -> SearchConfig {
    SearchConfig::exhaustive(l)
}

/// A random y-model of `f` when one exists and a coin says so, otherwise
/// a random interpretation. Random interpretations are rarely models, and
/// most stability properties say nothing about non-models.
fn biased_interp(
    rng: &mut ChaCha8Rng,
    f: &Formula,
    sig: &Signature,
    y: Truth,
    l: Lattice,
) -> Interpretation {
    if rng.gen_bool(0.6) {
        let models: Vec<Interpretation> = Interpretation::enumerate(sig, l)
            .filter(|i| satisfies(f, i, y).unwrap_or(false))
            .collect();
        if let Some(i) = models.choose(rng) {
            return i.clone();
        }
    }
    random_interp(rng, sig, l)
}

fn gen_plain(rng: &mut ChaCha8Rng, l: Lattice) -> Case {
    let f = plain(rng, &sig3(), l);
    let threshold = random_point(rng, l);
    let i = biased_interp(rng, &f, &sig3(), threshold, l);
    let mut c = Case::new(f, i);
    c.threshold = threshold;
    c.minimize = random_subset(rng, &sig3());
    c.below = Some(random_below(rng, &c.interp, &c.minimize, l));
    c.op = *OperatorKind::CONJUNCTIONS.choose(rng).expect("non-empty");
    c
}

fn gen_plain_all_below(rng: &mut ChaCha8Rng, l: Lattice) -> Case {
    let mut c = gen_plain(rng, l);
    c.below = Some(random_below(rng, &c.interp, &MinimizedSet::all(&sig3()), l));
    c
}

fn gen_two(rng: &mut ChaCha8Rng, l: Lattice) -> Case {
    let mut c = gen_plain(rng, l);
    let g = plain(rng, &sig3(), l);
    let joined = Formula::bin(c.op, c.formula.clone(), Formula::not_s(g.clone()));
    c.interp = biased_interp(rng, &joined, &sig3(), Truth::ONE, l);
    c.other = Some(g);
    c
}

fn gen_disjoint(rng: &mut ChaCha8Rng, l: Lattice) -> Case {
    let mut c = gen_plain(rng, l);
    let (mut p, mut q) = (Vec::new(), Vec::new());
    for a in sig3().iter() {
        match rng.gen_range(0..3) {
            0 => p.push(a.clone()),
            1 => q.push(a.clone()),
            _ => {}
        }
    }
    c.minimize = MinimizedSet::new(p);
    c.extra = MinimizedSet::new(q);
    c
}

fn gen_operands(rng: &mut ChaCha8Rng, l: Lattice) -> Case {
    let sig = Signature::from_names(["x", "y"]);
    let mut c = Case::new(Formula::Const(Truth::ZERO), random_interp(rng, &sig, l));
    c.op = *OperatorKind::ALL.choose(rng).expect("non-empty");
    c
}

fn gen_conj_operands(rng: &mut ChaCha8Rng, l: Lattice) -> Case {
    let mut c = gen_operands(rng, l);
    c.op = *OperatorKind::CONJUNCTIONS.choose(rng).expect("non-empty");
    c
}

fn gen_strongneg(rng: &mut ChaCha8Rng, l: Lattice) -> Case {
    let f = random_formula(rng, &sig3(), DEPTH, &OperatorKind::ALL, true, l);
    Case::new(f, random_interp(rng, &sig3(), l))
}

fn gen_program(rng: &mut ChaCha8Rng, l: Lattice) -> Case {
    let mut c = Case::new(Formula::Const(Truth::ONE), random_interp(rng, &sig3(), l));
    c.program = random_program(rng, &sig3(), l);
    c
}

fn gen_classical(rng: &mut ChaCha8Rng, l: Lattice) -> Case {
    let f = random_formula(rng, &sig3(), DEPTH, &CLASSICAL_OPS, false, Lattice::BOOLEAN);
    let i = biased_interp(rng, &f, &sig3(), Truth::ONE, Lattice::BOOLEAN);
    let mut c = Case::new(f, i);
    c.minimize = random_subset(rng, &sig3());
    c.selection = OperatorSelection {
        neg: OperatorKind::StandardNeg,
        conj: *OperatorKind::CONJUNCTIONS.choose(rng).expect("non-empty"),
        disj: *OperatorKind::DISJUNCTIONS.choose(rng).expect("non-empty"),
        imp: *OperatorKind::IMPLICATIONS.choose(rng).expect("non-empty"),
    };
    let _ = l;
    c
}

fn gen_n5(rng: &mut ChaCha8Rng, l: Lattice, strong: bool) -> Case {
    let f = random_formula(rng, &sig2(), DEPTH, &N5_OPS, strong, l);
    let i = if strong {
        random_interp(rng, &sig2(), l)
    } else {
        biased_interp(rng, &f, &sig2(), Truth::ONE, l)
    };
    let mut c = Case::new(f, i);
    c.below = Some(random_below(rng, &c.interp, &MinimizedSet::all(&sig2()), l));
    c.valuation = Some(biased_valuation(rng, &c.formula, &sig2(), l));
    c.salt = rng.gen();
    c
}

fn gen_n5_plain(rng: &mut ChaCha8Rng, l: Lattice) -> Case {
    gen_n5(rng, l, false)
}

fn gen_n5_strong(rng: &mut ChaCha8Rng, l: Lattice) -> Case {
    gen_n5(rng, l, true)
}

fn status(f: &Formula, c: &Case, p: &MinimizedSet, y: Truth, l: Lattice) -> Result<Status> {
    Ok(check_stable(f, &c.interp, p, y, &exhaustive(l))?.status)
}

fn check_tnorm_bounds(c: &Case, _: Lattice) -> Result<Trial> {
    let (x, y) = (c.interp.values()[0], c.interp.values()[1]);
    let v = c.op.apply2(x, y)?;
    Ok((v > x || v > y)
        .then(|| Mismatch {
            expected: format!("{}(x, y) <= min(x, y)", c.op.token()),
            actual: v.to_string(),
        })
        .into())
}

fn check_tnorm_one(c: &Case, _: Lattice) -> Result<Trial> {
    let (x, y) = (c.interp.values()[0], c.interp.values()[1]);
    let v = c.op.apply2(x, y)?;
    Ok(expect_eq(x.is_one() && y.is_one(), v.is_one()))
}

fn check_closure(c: &Case, l: Lattice) -> Result<Trial> {
    if !c.op.preserves_lattices() {
        return Ok(Trial::Vacuous);
    }
    let args: Vec<Truth> = c.interp.values()[..c.op.arity()].to_vec();
    let v = c.op.apply(&args)?;
    Ok((!l.contains(v))
        .then(|| Mismatch {
            expected: format!("{} value on the lattice", c.op.token()),
            actual: v.to_string(),
        })
        .into())
}

fn check_round_trip(c: &Case, _: Lattice) -> Result<Trial> {
    let printed = c.formula.to_string();
    Ok(match parse_formula(&printed) {
        Ok(g) if g == c.formula => Trial::Held,
        Ok(g) => differ(&printed, g),
        Err(e) => differ(&printed, e),
    })
}

fn check_rule_shape(c: &Case, _: Lattice) -> Result<Trial> {
    for r in &c.program {
        let f = rule_to_formula(r);
        let mut bad = f.contains_strong_negation();
        let mut negs = 0;
        f.visit(&mut |g| {
            if let Formula::Neg(op, b) = g {
                negs += 1;
                bad |= *op != OperatorKind::StandardNeg
                    || !matches!(**b, Formula::Atom(_) | Formula::Const(_));
            }
        });
        if bad || negs != r.negative.len() {
            return Ok(differ(format!("translation of `{r}`"), f));
        }
    }
    Ok(Trial::Held)
}

fn check_reduct_value(c: &Case, _: Lattice) -> Result<Trial> {
    let v = evaluate(&c.formula, &c.interp)?;
    for mode in [ReductMode::Simplified, ReductMode::Full] {
        let r = evaluate(&fuzzy_reduct(&c.formula, &c.interp, mode)?, &c.interp)?;
        if r != v {
            return Ok(differ(v, format!("{r} ({mode:?} reduct)")));
        }
    }
    Ok(Trial::Held)
}

fn check_monotone(c: &Case, _: Lattice) -> Result<Trial> {
    let j = c.below.as_ref().expect("generated");
    let v = evaluate(&c.formula, &c.interp)?;
    let r = evaluate(&fuzzy_reduct(&c.formula, &c.interp, ReductMode::Full)?, j)?;
    Ok((r > v)
        .then(|| Mismatch {
            expected: format!("value under J at most {v}"),
            actual: r.to_string(),
        })
        .into())
}

fn check_reduct_satisfaction(c: &Case, _: Lattice) -> Result<Trial> {
    let r = fuzzy_reduct(&c.formula, &c.interp, ReductMode::Simplified)?;
    Ok(expect_eq(
        satisfies(&c.formula, &c.interp, Truth::ONE)?,
        satisfies(&r, &c.interp, Truth::ONE)?,
    ))
}

fn check_simplified_full(c: &Case, _: Lattice) -> Result<Trial> {
    let j = c.below.as_ref().expect("generated");
    let full = evaluate(&fuzzy_reduct(&c.formula, &c.interp, ReductMode::Full)?, j)?;
    let simple = evaluate(
        &fuzzy_reduct(&c.formula, &c.interp, ReductMode::Simplified)?,
        j,
    )?;
    Ok(expect_eq(full, simple))
}

fn pinned_wrapper() -> Case {
    Case::new(
        parse_formula("0.6 ->r (1 ->r p)").expect("valid"),
        "p=0.6".parse().expect("valid"),
    )
}

/// Models of `F` satisfy the reduct built with a `⊗_l` wrapper (false).
fn check_lukasiewicz_wrapper(c: &Case, _: Lattice) -> Result<Trial> {
    if !satisfies(&c.formula, &c.interp, Truth::ONE)? {
        return Ok(Trial::Vacuous);
    }
    let r = fuzzy_reduct_with_wrapper(
        &c.formula,
        &c.interp,
        ReductMode::Full,
        OperatorKind::LukasiewiczAnd,
    )?;
    Ok(expect_eq(Truth::ONE, evaluate(&r, &c.interp)?))
}

fn check_empty_p(c: &Case, l: Lattice) -> Result<Trial> {
    let stable = status(&c.formula, c, &MinimizedSet::empty(), c.threshold, l)? == Status::Stable;
    Ok(expect_iff(
        satisfies(&c.formula, &c.interp, c.threshold)?,
        stable,
    ))
}

fn check_y_to_one(c: &Case, l: Lattice) -> Result<Trial> {
    let lifted = y_to_one(&c.formula, c.threshold, OperatorKind::ResidualImp)?;
    Ok(expect_status(
        status(&c.formula, c, &c.minimize, c.threshold, l)?,
        status(&lifted, c, &c.minimize, Truth::ONE, l)?,
    ))
}

fn check_star_agreement(c: &Case, l: Lattice) -> Result<Trial> {
    let via_star = check_stable_via_star(
        &c.formula,
        &c.interp,
        &c.minimize,
        l,
        DEFAULT_MAX_CANDIDATES,
    )?;
    Ok(expect_status(
        status(&c.formula, c, &c.minimize, Truth::ONE, l)?,
        via_star.status,
    ))
}

fn check_star_value(c: &Case, _: Lattice) -> Result<Trial> {
    let j = c.below.as_ref().expect("generated");
    let fresh = fresh_star_atoms(c.interp.signature(), &c.minimize);
    let starred = star_transform(&c.formula, &c.minimize, &fresh)?;
    let ext = c
        .interp
        .signature()
        .union(&Signature::new(fresh.values().cloned()));
    let mut joined = c.interp.extend(&ext, Truth::ZERO);
    for (a, q) in &fresh {
        joined.set(q.as_str(), j.value_of(a.as_str())?)?;
    }
    let reduct = fuzzy_reduct(&c.formula, &c.interp, ReductMode::Full)?;
    Ok(expect_eq(
        evaluate(&reduct, j)?,
        evaluate(&starred, &joined)?,
    ))
}

fn crisp(c: &Case) -> BoolInterpretation {
    BoolInterpretation::new(
        c.interp.signature().clone(),
        c.interp.values().iter().map(|v| v.is_one()).collect(),
    )
}

fn check_boolean_correspondence(c: &Case, l: Lattice) -> Result<Trial> {
    let embedded = boolean_embed(&c.formula)?;
    let mut any_stable = false;
    for x in BoolInterpretation::enumerate(c.interp.signature()) {
        let classical = boolean_stable_check(&c.formula, &x, &c.minimize)?.status;
        let fuzzy = check_stable(
            &embedded,
            &crisp_interp(&x),
            &c.minimize,
            Truth::ONE,
            &exhaustive(l),
        )?
        .status;
        if classical != fuzzy {
            return Ok(differ(
                format!("{classical} (Boolean, X={x})"),
                format!("{fuzzy} (fuzzy)"),
            ));
        }
        any_stable |= classical == Status::Stable;
    }
    Ok(if any_stable {
        Trial::Held
    } else {
        Trial::Vacuous
    })
}

fn check_crisp_implies_boolean(c: &Case, l: Lattice) -> Result<Trial> {
    let embedded = boolean_embed_with(&c.formula, &c.selection)?;
    let x = crisp(c);
    let fuzzy = check_stable(
        &embedded,
        &crisp_interp(&x),
        &c.minimize,
        Truth::ONE,
        &exhaustive(l),
    )?;
    if !fuzzy.is_stable() {
        return Ok(Trial::Vacuous);
    }
    let classical = boolean_stable_check(&c.formula, &x, &c.minimize)?.status;
    Ok(expect_eq(Status::Stable, classical))
}

fn check_fasp_answer_sets(c: &Case, l: Lattice) -> Result<Trial> {
    let sig = c.interp.signature();
    let f = program_to_formula(&c.program, c.program[0].conj)?;
    let answer_sets = enumerate_answer_sets(&c.program, sig, l)?;
    let stable = enumerate_stable_over(
        &f,
        sig,
        &MinimizedSet::all(sig),
        Truth::ONE,
        &exhaustive(l),
        &Sequential,
    )?;
    Ok(if answer_sets != stable {
        differ(render_set(&answer_sets), render_set(&stable))
    } else if stable.is_empty() {
        Trial::Vacuous
    } else {
        Trial::Held
    })
}

fn render_set<T: fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn check_constraint_conjunction(c: &Case, l: Lattice) -> Result<Trial> {
    let g = c.other.as_ref().expect("generated");
    let constraint = Formula::not_s(g.clone());
    let joined = Formula::bin(c.op, c.formula.clone(), constraint.clone());
    let lhs = status(&joined, c, &c.minimize, Truth::ONE, l)? == Status::Stable;
    let rhs = status(&c.formula, c, &c.minimize, Truth::ONE, l)? == Status::Stable
        && satisfies(&constraint, &c.interp, Truth::ONE)?;
    Ok(expect_iff(rhs, lhs))
}

fn check_choice_shrinks(c: &Case, l: Lattice) -> Result<Trial> {
    let both = c.minimize.union(&c.extra);
    if status(&c.formula, c, &both, c.threshold, l)? != Status::Stable {
        return Ok(Trial::Vacuous);
    }
    Ok(expect_eq(
        Status::Stable,
        status(&c.formula, c, &c.minimize, c.threshold, l)?,
    ))
}

fn with_choice(f: &Formula, q: &MinimizedSet, conj: OperatorKind) -> Result<Formula> {
    Ok(if q.is_empty() {
        f.clone()
    } else {
        Formula::bin(conj, f.clone(), choice(q, conj)?)
    })
}

fn pinned_choice_b() -> Case {
    let mut c = Case::new(
        parse_formula("not_s not_s q").expect("valid"),
        "q=0.5".parse().expect("valid"),
    );
    c.extra = MinimizedSet::from_names(["q"]);
    c.threshold = "0.5".parse().expect("valid");
    c
}

fn check_choice_exempts(c: &Case, l: Lattice) -> Result<Trial> {
    let lhs = status(&c.formula, c, &c.minimize, c.threshold, l)?;
    let extended = with_choice(&c.formula, &c.extra, c.op)?;
    let rhs_verdict = check_stable(
        &extended,
        &c.interp,
        &c.minimize.union(&c.extra),
        c.threshold,
        &exhaustive(l),
    )?;
    if c.threshold.is_one() {
        return Ok(expect_status(lhs, rhs_verdict.status));
    }
    // Below threshold 1 the equivalence breaks; the pinned case must show it.
    let broken = lhs == Status::Stable && rhs_verdict.status == Status::Unstable;
    Ok((!broken)
        .then(|| Mismatch {
            expected: "stable relative to p, unstable with the choice formula".into(),
            actual: format!("{lhs} / {}", rhs_verdict.status),
        })
        .into())
}

fn gen_choice_b(rng: &mut ChaCha8Rng, l: Lattice) -> Case {
    let mut c = gen_disjoint(rng, l);
    c.threshold = Truth::ONE;
    c
}

fn check_choice_corollary(c: &Case, l: Lattice) -> Result<Trial> {
    let sigma = MinimizedSet::all(c.interp.signature());
    let extended = with_choice(&c.formula, &sigma, c.op)?;
    Ok(expect_iff(
        satisfies(&c.formula, &c.interp, Truth::ONE)?,
        status(&extended, c, &sigma, Truth::ONE, l)? == Status::Stable,
    ))
}

fn check_choice_tautology(c: &Case, _: Lattice) -> Result<Trial> {
    if c.minimize.is_empty() {
        return Ok(Trial::Vacuous);
    }
    Ok(expect_eq(
        Truth::ONE,
        evaluate(&choice(&c.minimize, c.op)?, &c.interp)?,
    ))
}

fn check_nneg_shape(c: &Case, _: Lattice) -> Result<Trial> {
    let out = nneg(&c.formula);
    if out.formula.contains_strong_negation() {
        return Ok(differ("no strong negation", &out.formula));
    }
    Ok(expect_eq(
        2 * c.formula.signature().len(),
        out.signature.len(),
    ))
}

/// The case valuation and interpretation cut down to the formula's atoms.
fn restricted(c: &Case) -> Result<(Signature, Valuation, Interpretation, Interpretation)> {
    let sig = c.formula.signature();
    let v = c.valuation.as_ref().expect("generated");
    let ivs = sig
        .iter()
        .map(|a| {
            v.get(World::T, a.as_str())
                .expect("atom of the suite signature")
        })
        .collect();
    let i = c.interp.restrict(&sig)?;
    let j = c.below.as_ref().expect("generated").restrict(&sig)?;
    Ok((sig.clone(), Valuation::total(sig, ivs), i, j))
}

fn eq_status(v: &Valuation, f: &Formula, l: Lattice) -> Result<bool> {
    Ok(is_equilibrium(v, f, l, DEFAULT_MAX_CANDIDATES)?.is_equilibrium())
}

fn stable_all(f: &Formula, i: &Interpretation, l: Lattice) -> Result<bool> {
    let p = MinimizedSet::all(i.signature());
    Ok(check_stable(f, i, &p, Truth::ONE, &exhaustive(l))?.is_stable())
}

fn check_eq_correspondence(c: &Case, l: Lattice) -> Result<Trial> {
    let (_, v, i, _) = restricted(c)?;
    let upper_one = v.intervals(World::T).iter().all(|iv| iv.upper().is_one());
    let expected = upper_one && stable_all(&c.formula, &interpretation_of(&v), l)?;
    let first = expect_iff(expected, eq_status(&v, &c.formula, l)?);
    if let Trial::Failed(_) = first {
        return Ok(first);
    }
    let second = expect_iff(
        stable_all(&c.formula, &i, l)?,
        eq_status(&valuation_of(&i), &c.formula, l)?,
    );
    Ok(if first == Trial::Held { first } else { second })
}

fn check_eq_strongneg(c: &Case, l: Lattice) -> Result<Trial> {
    let (_, v, _, _) = restricted(c)?;
    let out = nneg(&c.formula);
    let projected = interpretation_of(&nneg_valuation(&v, &out.complements)?);
    let first = expect_iff(
        eq_status(&v, &c.formula, l)?,
        stable_all(&out.formula, &projected, l)?,
    );
    if first != Trial::Vacuous {
        return Ok(first);
    }
    // The other direction, from a random interpretation of the extended
    // signature: a stable model must come from an equilibrium model.
    let mut rng = ChaCha8Rng::seed_from_u64(c.salt);
    let i = random_interp(&mut rng, &out.signature, l);
    if !stable_all(&out.formula, &i, l)? {
        return Ok(Trial::Vacuous);
    }
    match nneg_preimage(&i, &out.complements) {
        Ok(pre) if eq_status(&pre, &c.formula, l)? => Ok(Trial::Held),
        Ok(pre) => Ok(differ(
            format!("{pre} in equilibrium"),
            "not in equilibrium",
        )),
        Err(e) => Ok(differ(format!("a valuation projecting to {i}"), e)),
    }
}

fn check_nneg_valuation(c: &Case, l: Lattice) -> Result<Trial> {
    let (_, v, _, _) = restricted(c)?;
    let out = nneg(&c.formula);
    let image = nneg_valuation(&v, &out.complements)?;
    Ok(expect_iff(
        eq_status(&v, &c.formula, l)?,
        eq_status(&image, &out.formula, l)?,
    ))
}

fn check_vji(c: &Case, _: Lattice) -> Result<Trial> {
    let (_, _, i, j) = restricted(c)?;
    let v = valuation_between(&j, &i)?;
    let t = n5_evaluate(&v, World::T, &c.formula)?.lower();
    let first = expect_eq(evaluate(&c.formula, &i)?, t);
    if first != Trial::Held {
        return Ok(first);
    }
    let h = n5_evaluate(&v, World::H, &c.formula)?.lower();
    let reduct = fuzzy_reduct(&c.formula, &i, ReductMode::Full)?;
    Ok(expect_eq(evaluate(&reduct, &j)?, h))
}

fn check_upper_bounds(c: &Case, l: Lattice) -> Result<Trial> {
    let (_, v, _, _) = restricted(c)?;
    if !eq_status(&v, &c.formula, l)? {
        return Ok(Trial::Vacuous);
    }
    let bad = v
        .intervals(World::H)
        .iter()
        .chain(v.intervals(World::T))
        .any(|iv| !iv.upper().is_one());
    Ok(bad
        .then(|| Mismatch {
            expected: "upper bounds 1".into(),
            actual: v.to_string(),
        })
        .into())
}

/// Every registered suite.
pub fn registry() -> Vec<Suite> {
    fn s(name: &'static str, about: &'static str, generate: GenFn, check: CheckFn) -> Suite {
        Suite {
            name,
            about,
            expect_failure: false,
            pinned: None,
            generate,
            check,
        }
    }
    vec![
        s(
            "tnorm-bounds",
            "t-norm value at most either argument",
            gen_conj_operands,
            check_tnorm_bounds,
        ),
        s(
            "tnorm-one",
            "t-norm is 1 exactly when both arguments are",
            gen_conj_operands,
            check_tnorm_one,
        ),
        s(
            "operator-closure",
            "lattice-preserving operators stay on the lattice",
            gen_operands,
            check_closure,
        ),
        s(
            "print-parse-roundtrip",
            "parse(print(f)) = f",
            gen_strongneg,
            check_round_trip,
        ),
        s(
            "rule-translation-shape",
            "rule formulas carry one not_s per negative literal",
            gen_program,
            check_rule_shape,
        ),
        s(
            "reduct-value-equality",
            "I gives F and its reduct the same value",
            gen_plain,
            check_reduct_value,
        ),
        s(
            "reduct-monotonicity",
            "value of the reduct under J <=^p I is at most the value of F",
            gen_plain,
            check_monotone,
        ),
        s(
            "reduct-satisfaction",
            "I satisfies F iff I satisfies the reduct",
            gen_plain,
            check_reduct_satisfaction,
        ),
        s(
            "reduct-simplified-equals-full",
            "both reduct forms agree on every J <= I",
            gen_plain_all_below,
            check_simplified_full,
        ),
        Suite {
            expect_failure: true,
            pinned: Some(pinned_wrapper),
            ..s(
                "reduct-wrapper-lukasiewicz",
                "a reduct wrapped with &l loses models of F",
                gen_plain,
                check_lukasiewicz_wrapper,
            )
        },
        s(
            "empty-p-is-satisfaction",
            "stable relative to no atoms iff y-model",
            gen_plain,
            check_empty_p,
        ),
        s(
            "y-to-one",
            "y-stable iff 1-stable model of y ->r F",
            gen_plain,
            check_y_to_one,
        ),
        s(
            "star-agreement",
            "reduct search and star transform agree",
            gen_plain,
            check_star_agreement,
        ),
        s(
            "star-value-agreement",
            "star transform under I and J matches the reduct under J",
            gen_plain,
            check_star_value,
        ),
        s(
            "boolean-correspondence",
            "classical and fuzzy stable models of embedded formulas agree",
            gen_classical,
            check_boolean_correspondence,
        ),
        s(
            "crisp-stable-implies-boolean",
            "crisp fuzzy-stable models are classically stable",
            gen_classical,
            check_crisp_implies_boolean,
        ),
        s(
            "fasp-answer-sets",
            "answer sets equal stable models of the translation",
            gen_program,
            check_fasp_answer_sets,
        ),
        s(
            "constraint-conjunction",
            "stable of F with not_s G iff stable of F and model of not_s G",
            gen_two,
            check_constraint_conjunction,
        ),
        s(
            "choice-shrinks-minimized",
            "stable relative to p and q implies stable relative to p",
            gen_disjoint,
            check_choice_shrinks,
        ),
        Suite {
            pinned: Some(pinned_choice_b),
            ..s(
                "choice-exempts-atoms",
                "choice formulas exempt atoms from minimization at threshold 1",
                gen_choice_b,
                check_choice_exempts,
            )
        },
        s(
            "choice-corollary",
            "models of F are the stable models of F with the full choice",
            gen_plain,
            check_choice_corollary,
        ),
        s(
            "choice-tautology",
            "every interpretation satisfies a choice formula",
            gen_plain,
            check_choice_tautology,
        ),
        s(
            "nneg-no-strongneg",
            "strong negation elimination removes ~ and doubles the atoms",
            gen_strongneg,
            check_nneg_shape,
        ),
        s(
            "equilibrium-correspondence",
            "equilibrium models are the stable models",
            gen_n5_plain,
            check_eq_correspondence,
        ),
        s(
            "equilibrium-strongneg-correspondence",
            "equilibrium models of F match stable models of nneg(F)",
            gen_n5_strong,
            check_eq_strongneg,
        ),
        s(
            "nneg-valuation-equilibrium",
            "V in equilibrium for F iff nneg(V) for nneg(F)",
            gen_n5_strong,
            check_nneg_valuation,
        ),
        s(
            "vji-identities",
            "values of F under I and the reduct under J from one valuation",
            gen_n5_plain,
            check_vji,
        ),
        s(
            "equilibrium-upper-bounds-one",
            "equilibrium models of ~-free formulas have upper bounds 1",
            gen_n5_plain,
            check_upper_bounds,
        ),
    ]
}

pub fn find_suite(name: &str) -> Option<Suite> {
    registry().into_iter().find(|s| s.name == name)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// A known-false property failed, as it should.
    ExpectedFail,
    /// A known-false property held on every trial.
    UnexpectedPass,
}

impl Outcome {
    pub fn is_ok(self) -> bool {
        matches!(self, Outcome::Pass | Outcome::ExpectedFail)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::ExpectedFail => "expected-fail",
            Outcome::UnexpectedPass => "UNEXPECTED-PASS",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: u64,
    pub formula: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub program: Option<String>,
    pub interpretation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<String>,
    pub minimize: String,
    pub threshold: String,
    pub expected: String,
    pub actual: String,
    /// Shrink steps applied to the formula.
    pub shrink_steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: u64,
    pub seed: u64,
    pub denominator: u32,
    /// Trials whose premise held and which passed.
    pub held: u64,
    /// Trials whose premise did not hold.
    pub vacuous: u64,
    pub failures: u64,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<10} {} ({} trials: {} held, {} vacuous, {} failing; D={}, seed {})",
            self.outcome.to_string(),
            self.suite,
            self.trials,
            self.held,
            self.vacuous,
            self.failures,
            self.denominator,
            self.seed
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  trial {}: formula {}", c.trial, c.formula)?;
            if let Some(o) = &c.other {
                write!(f, "\n  other {o}")?;
            }
            if let Some(p) = &c.program {
                write!(f, "\n  program {p}")?;
            }
            write!(f, "\n  interpretation {}", c.interpretation)?;
            if let Some(v) = &c.valuation {
                write!(f, "\n  valuation {v}")?;
            }
            write!(
                f,
                "\n  minimize {}, threshold {}\n  expected {}\n  actual   {}",
                c.minimize, c.threshold, c.expected, c.actual
            )?;
            if c.shrink_steps > 0 {
                write!(f, "\n  (shrunk in {} steps)", c.shrink_steps)?;
            }
        }
        Ok(())
    }
}

fn trial_case(suite: &Suite, seed: u64, trial: u64, lattice: Lattice) -> Case {
    if trial == 0 {
        if let Some(pinned) = suite.pinned {
            return pinned();
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    (suite.generate)(&mut rng, lattice)
}

fn run_check(suite: &Suite, case: &Case, lattice: Lattice) -> Trial {
    match (suite.check)(case, lattice) {
        Ok(t) => t,
        Err(e) => differ("no error", format!("error: {e:#}")),
    }
}

/// Runs `trials` trials on up to `jobs` threads. Trial `k` depends only on
/// `(seed, k)`; the reported counterexample is the lowest failing trial.
pub fn run_suite(
    name: &str,
    trials: u64,
    seed: u64,
    lattice: Lattice,
    jobs: usize,
) -> Result<SuiteReport> {
    let Some(suite) = find_suite(name) else {
        bail!("unknown suite `{name}`; `props list` shows the registered suites");
    };
    let jobs = jobs.clamp(1, trials.max(1) as usize);
    let results: Vec<Vec<(u64, Trial)>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs as u64)
            .map(|w| {
                let suite = &suite;
                s.spawn(move || {
                    (w..trials)
                        .step_by(jobs)
                        .map(|k| {
                            let case = trial_case(suite, seed, k, lattice);
                            (k, run_check(suite, &case, lattice))
                        })
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("trial thread"))
            .collect()
    });
    let mut all: Vec<(u64, Trial)> = results.into_iter().flatten().collect();
    all.sort_by_key(|(k, _)| *k);
    let held = all.iter().filter(|(_, t)| *t == Trial::Held).count() as u64;
    let vacuous = all.iter().filter(|(_, t)| *t == Trial::Vacuous).count() as u64;
    let failing: Vec<(u64, Mismatch)> = all
        .into_iter()
        .filter_map(|(k, t)| match t {
            Trial::Failed(m) => Some((k, m)),
            _ => None,
        })
        .collect();
    let failures = failing.len() as u64;
    let counterexample = failing.into_iter().next().map(|(k, m)| {
        let case = trial_case(&suite, seed, k, lattice);
        let (case, m, steps) = shrink(&suite, case, m, lattice);
        render(k, &case, m, steps)
    });
    let outcome = match (suite.expect_failure, failures > 0) {
        (false, false) => Outcome::Pass,
        (false, true) => Outcome::Fail,
        (true, true) => Outcome::ExpectedFail,
        (true, false) => Outcome::UnexpectedPass,
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        trials,
        seed,
        denominator: lattice.denominator(),
        held,
        vacuous,
        failures,
        outcome,
        counterexample,
    })
}

fn render(trial: u64, c: &Case, m: Mismatch, shrink_steps: usize) -> Counterexample {
    let program = (!c.program.is_empty()).then(|| {
        c.program
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    });
    let minimize: Vec<&str> = c.minimize.iter().map(Atom::as_str).collect();
    Counterexample {
        trial,
        formula: c.formula.to_string(),
        other: c.other.as_ref().map(|f| f.to_string()),
        program,
        interpretation: c.interp.to_string(),
        valuation: c.valuation.as_ref().map(|v| v.to_string()),
        minimize: format!("{{{}}}", minimize.join(",")),
        threshold: c.threshold.to_display_string(),
        expected: m.expected,
        actual: m.actual,
        shrink_steps,
    }
}

const MAX_SHRINK_STEPS: usize = 200;

/// Depth-first subterm replacement on the case formula: the first smaller
/// variant that still fails is kept, until none does.
fn shrink(
    suite: &Suite,
    mut case: Case,
    mut m: Mismatch,
    lattice: Lattice,
) -> (Case, Mismatch, usize) {
    let mut steps = 0;
    'outer: while steps < MAX_SHRINK_STEPS {
        for smaller in shrink_candidates(&case.formula) {
            let mut next = case.clone();
            next.formula = smaller;
            if let Ok(Trial::Failed(found)) = (suite.check)(&next, lattice) {
                case = next;
                m = found;
                steps += 1;
                continue 'outer;
            }
        }
        break;
    }
    (case, m, steps)
}

fn shrink_candidates(f: &Formula) -> Vec<Formula> {
    let consts = |f: &Formula| -> Vec<Formula> {
        [Truth::ZERO, Truth::ONE]
            .into_iter()
            .map(Formula::Const)
            .filter(|c| c != f)
            .collect()
    };
    match f {
        Formula::Const(_) => Vec::new(),
        Formula::Atom(_) => consts(f),
        Formula::StrongNeg(a) => {
            let mut out = vec![Formula::Atom(a.clone())];
            out.extend(consts(f));
            out
        }
        Formula::Neg(op, b) => {
            let mut out = vec![(**b).clone()];
            out.extend(consts(f));
            out.extend(
                shrink_candidates(b)
                    .into_iter()
                    .map(|s| Formula::neg(*op, s)),
            );
            out
        }
        Formula::Bin(op, l, r) => {
            let mut out = vec![(**l).clone(), (**r).clone()];
            out.extend(consts(f));
            out.extend(
                shrink_candidates(l)
                    .into_iter()
                    .map(|s| Formula::bin(*op, s, (**r).clone())),
            );
            out.extend(
                shrink_candidates(r)
                    .into_iter()
                    .map(|s| Formula::bin(*op, (**l).clone(), s)),
            );
            out
        }
    }
}
