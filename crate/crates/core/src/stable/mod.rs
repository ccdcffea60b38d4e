//! Stable and y-stable models over a finite truth lattice.
//!
//! Interpretations and witnesses both range over the points of a
//! [`Lattice`]; verdicts are exact for that D-valued semantics. Candidate
//! witnesses are scanned in a fixed order: atoms in signature order with
//! the first atom most significant, values ascending.

mod boolean;
mod star;

pub use boolean::{boolean_stable_check, BoolVerdict};
pub use star::{check_stable_via_star, fresh_star_atoms, star_transform};

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Signature};
use crate::interp::Interpretation;
use crate::operator::OperatorKind;
use crate::semantics::{evaluate, fuzzy_reduct, ReductMode, SatisfactionTest};
use crate::truth::{Lattice, Truth};

/// The set **p** of atoms subject to minimization.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MinimizedSet(Signature);

impl MinimizedSet {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> MinimizedSet {
        MinimizedSet(Signature::new(atoms))
    }

    pub fn from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> MinimizedSet {
        MinimizedSet(Signature::from_names(names))
    }

    /// Minimize every atom of `sig`.
    pub fn all(sig: &Signature) -> MinimizedSet {
        MinimizedSet(sig.clone())
    }

    pub fn empty() -> MinimizedSet {
        MinimizedSet::default()
    }

    pub fn as_signature(&self) -> &Signature {
        &self.0
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.0.contains(atom)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.0.iter()
    }

    pub fn union(&self, other: &MinimizedSet) -> MinimizedSet {
        MinimizedSet(self.0.union(&other.0))
    }

    /// Errors unless every atom is in `sig`.
    pub fn check_within(&self, sig: &Signature) -> Result<()> {
        match self.iter().find(|a| !sig.contains(a.as_str())) {
            Some(a) => Err(Error::UnknownAtom(a.to_string())),
            None => Ok(()),
        }
    }
}

impl fmt::Debug for MinimizedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for MinimizedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// `J ≤^p I`
pub fn leq_p(j: &Interpretation, i: &Interpretation, p: &MinimizedSet) -> Result<bool> {
    if j.signature() != i.signature() {
        return Err(Error::SignatureMismatch);
    }
    Ok(j.iter().zip(i.values()).all(|((a, jv), &iv)| {
        if p.contains(a.as_str()) {
            jv <= iv
        } else {
            jv == iv
        }
    }))
}

/// `J <^p I`
pub fn lt_p(j: &Interpretation, i: &Interpretation, p: &MinimizedSet) -> Result<bool> {
    Ok(leq_p(j, i, p)? && j != i)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Strategy {
    /// Every lattice candidate below `I`.
    Exhaustive,
    /// Random candidates; sound but incomplete.
    Sampled { samples: u64, seed: u64 },
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Exhaustive => f.write_str("exhaustive"),
            Strategy::Sampled { samples, seed } => write!(f, "sampled:{samples} (seed {seed})"),
        }
    }
}

pub const DEFAULT_MAX_CANDIDATES: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub lattice: Lattice,
    pub strategy: Strategy,
    /// Upper bound on the number of candidates an exhaustive scan or an
    /// enumeration may visit.
    pub max_candidates: u64,
}

impl SearchConfig {
    pub fn exhaustive(lattice: Lattice) -> SearchConfig {
        SearchConfig {
            lattice,
            strategy: Strategy::Exhaustive,
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }

    pub fn sampled(lattice: Lattice, samples: u64, seed: u64) -> SearchConfig {
        SearchConfig {
            lattice,
            strategy: Strategy::Sampled { samples, seed },
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Status {
    NotAModel,
    Stable,
    Unstable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::NotAModel => "not_a_model",
            Status::Stable => "stable",
            Status::Unstable => "unstable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StabilityVerdict {
    pub status: Status,
    #[cfg_attr(
        feature = "serde",
        serde(default, skip_serializing_if = "Option::is_none")
    )]
    pub witness: Option<Interpretation>,
    pub threshold: Truth,
    pub denominator: u32,
    pub strategy: Strategy,
    /// False when the search could not rule out a witness: a `stable`
    /// status from a sampled search means "no witness found in n samples".
    pub complete: bool,
    /// Candidates evaluated.
    pub examined: u64,
}

impl StabilityVerdict {
    pub fn is_stable(&self) -> bool {
        self.status == Status::Stable
    }
}

/// Finds the first candidate index in a range. The sequential scan is the
/// reference; other implementations must return the same index.
pub trait Scanner {
    fn first_witness(&self, search: &WitnessSearch) -> Result<Option<u64>>;
}

/// Scans candidates in order on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Scanner for Sequential {
    fn first_witness(&self, search: &WitnessSearch) -> Result<Option<u64>> {
        search.scan(0..search.candidate_count())
    }
}

/// The witness test for one `(F, I, p, y)`: a compiled reduct plus the
/// candidate space `{J : J <^p I}` restricted to a lattice.
#[derive(Clone, Debug)]
pub struct WitnessSearch {
    signature: Signature,
    base: Vec<Truth>,
    /// Signature positions of the minimized atoms.
    positions: Vec<usize>,
    /// Lattice points available to each minimized atom, ascending and
    /// strictly below `I(a)` except for the last one, which is `I(a)`.
    choices: Vec<Vec<Truth>>,
    count: u128,
    test: SatisfactionTest,
}

impl WitnessSearch {
    /// Errors when the formula has strong negation or unknown atoms.
    /// Minimized atoms whose `I`-value lies off the lattice may still be
    /// lowered to the lattice points below it.
    pub fn new(
        f: &Formula,
        i: &Interpretation,
        p: &MinimizedSet,
        y: Truth,
        lattice: Lattice,
    ) -> Result<WitnessSearch> {
        let signature = i.signature().clone();
        p.check_within(&signature)?;
        let reduct = fuzzy_reduct(f, i, ReductMode::Simplified)?;
        let test = SatisfactionTest::new(&reduct, &signature, y)?;
        let mut positions = Vec::new();
        let mut choices = Vec::new();
        let mut count: u128 = 1;
        for (k, (a, v)) in i.iter().enumerate() {
            if !p.contains(a.as_str()) {
                continue;
            }
            let mut c: Vec<Truth> = lattice.points().take_while(|&x| x < v).collect();
            c.push(v);
            count = count.saturating_mul(c.len() as u128);
            positions.push(k);
            choices.push(c);
        }
        Ok(WitnessSearch {
            signature,
            base: i.values().to_vec(),
            positions,
            choices,
            count: count - 1,
            test,
        })
    }

    /// Number of candidates `J <^p I`. The candidate `J = I` is excluded
    /// by construction: it would have the largest index.
    pub fn candidate_count(&self) -> u64 {
        self.count.min(u64::MAX as u128) as u64
    }

    pub fn candidate_count_exact(&self) -> u128 {
        self.count
    }

    fn fill(&self, mut idx: u64, values: &mut [Truth]) {
        for (pos, c) in self.positions.iter().zip(&self.choices).rev() {
            let r = c.len() as u64;
            values[*pos] = c[(idx % r) as usize];
            idx /= r;
        }
    }

    /// The candidate at `idx`.
    pub fn candidate(&self, idx: u64) -> Interpretation {
        let mut values = self.base.clone();
        self.fill(idx, &mut values);
        Interpretation::new(self.signature.clone(), values)
    }

    /// Whether `values` satisfy the reduct to the required degree.
    pub fn is_witness_values(&self, values: &[Truth], stack: &mut Vec<Truth>) -> Result<bool> {
        self.test.holds(values, stack)
    }

    /// The first witness index in `range`, if any.
    pub fn scan(&self, range: core::ops::Range<u64>) -> Result<Option<u64>> {
        let mut values = self.base.clone();
        let mut stack = Vec::new();
        for idx in range {
            self.fill(idx, &mut values);
            if self.test.holds(&values, &mut stack)? {
                return Ok(Some(idx));
            }
        }
        Ok(None)
    }

    /// Random lowering: picks some minimized atoms with a value above 0
    /// and lowers each to a random lattice point below its `I`-value. Half
    /// of the draws lower at most three atoms.
    fn sample(&self, rng: &mut ChaCha8Rng, lowerable: &[usize], values: &mut [Truth]) {
        values.copy_from_slice(&self.base);
        let m = lowerable.len();
        let k = if rng.gen_bool(0.5) {
            rng.gen_range(1..=m.min(3))
        } else {
            rng.gen_range(1..=m)
        };
        for slot in sample(rng, m, k).iter() {
            let which = lowerable[slot];
            let c = &self.choices[which];
            values[self.positions[which]] = c[rng.gen_range(0..c.len() - 1)];
        }
    }

    /// Sampled search; returns the first witness drawn and the number of
    /// draws evaluated.
    pub fn sampled(&self, samples: u64, seed: u64) -> Result<(Option<Interpretation>, u64)> {
        let lowerable: Vec<usize> = (0..self.choices.len())
            .filter(|&k| self.choices[k].len() > 1)
            .collect();
        if lowerable.is_empty() {
            return Ok((None, 0));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values = self.base.clone();
        let mut stack = Vec::new();
        for n in 0..samples {
            self.sample(&mut rng, &lowerable, &mut values);
            if self.test.holds(&values, &mut stack)? {
                let j = Interpretation::new(self.signature.clone(), values);
                return Ok((Some(j), n + 1));
            }
        }
        Ok((None, samples))
    }
}

/// A witness disputing the stability of `I`, if the strategy finds one.
pub fn find_witness(
    f: &Formula,
    i: &Interpretation,
    p: &MinimizedSet,
    y: Truth,
    config: &SearchConfig,
) -> Result<Option<Interpretation>> {
    Ok(witness_search(f, i, p, y, config, &Sequential)?.0)
}

fn witness_search(
    f: &Formula,
    i: &Interpretation,
    p: &MinimizedSet,
    y: Truth,
    config: &SearchConfig,
    scanner: &dyn Scanner,
) -> Result<(Option<Interpretation>, u64)> {
    let search = WitnessSearch::new(f, i, p, y, config.lattice)?;
    match config.strategy {
        Strategy::Exhaustive => {
            i.check_on_lattice(config.lattice)?;
            let count = search.candidate_count_exact();
            if count > config.max_candidates as u128 {
                return Err(Error::ResourceLimit {
                    candidates: count,
                    cap: config.max_candidates,
                });
            }
            let found = scanner.first_witness(&search)?;
            let examined = found.map_or(count as u64, |k| k + 1);
            Ok((found.map(|k| search.candidate(k)), examined))
        }
        Strategy::Sampled { samples, seed } => search.sampled(samples, seed),
    }
}

/// Whether `I` is a y-stable model of `F` relative to **p**.
pub fn check_stable(
    f: &Formula,
    i: &Interpretation,
    p: &MinimizedSet,
    y: Truth,
    config: &SearchConfig,
) -> Result<StabilityVerdict> {
    check_stable_using(f, i, p, y, config, &Sequential)
}

/// [`check_stable`] with a caller-supplied scanner for the exhaustive case.
pub fn check_stable_using(
    f: &Formula,
    i: &Interpretation,
    p: &MinimizedSet,
    y: Truth,
    config: &SearchConfig,
    scanner: &dyn Scanner,
) -> Result<StabilityVerdict> {
    let mut verdict = StabilityVerdict {
        status: Status::NotAModel,
        witness: None,
        threshold: y,
        denominator: config.lattice.denominator(),
        strategy: config.strategy,
        complete: true,
        examined: 0,
    };
    if config.strategy == Strategy::Exhaustive {
        i.check_on_lattice(config.lattice)?;
    }
    if evaluate(f, i)? < y {
        return Ok(verdict);
    }
    let (witness, examined) = witness_search(f, i, p, y, config, scanner)?;
    verdict.examined = examined;
    match witness {
        Some(j) => {
            verdict.status = Status::Unstable;
            verdict.witness = Some(j);
        }
        None => {
            verdict.status = Status::Stable;
            verdict.complete = config.strategy == Strategy::Exhaustive;
        }
    }
    Ok(verdict)
}

/// All lattice interpretations of the formula's signature that are
/// y-stable relative to **p**, in scan order.
pub fn enumerate_stable(
    f: &Formula,
    p: &MinimizedSet,
    y: Truth,
    config: &SearchConfig,
) -> Result<Vec<Interpretation>> {
    enumerate_stable_over(f, &f.signature(), p, y, config, &Sequential)
}

/// [`enumerate_stable`] over an explicit signature (a superset of the
/// formula's atoms). Always exhaustive.
pub fn enumerate_stable_over(
    f: &Formula,
    sig: &Signature,
    p: &MinimizedSet,
    y: Truth,
    config: &SearchConfig,
    scanner: &dyn Scanner,
) -> Result<Vec<Interpretation>> {
    p.check_within(sig)?;
    let total = (config.lattice.len() as u128)
        .checked_pow(sig.len() as u32)
        .unwrap_or(u128::MAX);
    if total > config.max_candidates as u128 {
        return Err(Error::ResourceLimit {
            candidates: total,
            cap: config.max_candidates,
        });
    }
    let exhaustive = SearchConfig {
        strategy: Strategy::Exhaustive,
        ..*config
    };
    let model_test = SatisfactionTest::new(f, sig, y)?;
    let mut stack = Vec::new();
    let mut out = Vec::new();
    for i in Interpretation::enumerate(sig, config.lattice) {
        if !model_test.holds(i.values(), &mut stack)? {
            continue;
        }
        if check_stable_using(f, &i, p, y, &exhaustive, scanner)?.is_stable() {
            out.push(i);
        }
    }
    Ok(out)
}

/// `y → F`, whose 1-stable models are the y-stable models of `F` when
/// `→` is residual.
pub fn y_to_one(f: &Formula, y: Truth, imp: OperatorKind) -> Result<Formula> {
    if imp.family() != crate::operator::Family::Implication {
        return Err(Error::Usage(alloc::format!("{imp} is not an implication")));
    }
    if !imp.is_residual() {
        return Err(Error::Usage(alloc::format!(
            "{imp} does not satisfy →(x,y) = 1 iff y ≥ x, so y-stable models of F \
             need not be the stable models of y {imp} F"
        )));
    }
    Ok(Formula::bin(imp, Formula::Const(y), f.clone()))
}
