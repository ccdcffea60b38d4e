//! Fuzzy N5 valuations and equilibrium models.
//!
//! This module is self-contained on purpose: it does not use the reduct or
//! the stable-model search, so agreement between the two is evidence.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::formula::{is_valid_atom_name, Atom, Formula, Signature};
use crate::interp::Interpretation;
use crate::operator::{Family, OperatorKind};
use crate::truth::{Lattice, Truth};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum World {
    H,
    T,
}

impl fmt::Display for World {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            World::H => "h",
            World::T => "t",
        })
    }
}

/// A closed subinterval `[lower, upper]` of `[0, 1]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    lower: Truth,
    upper: Truth,
}

impl Interval {
    pub fn new(lower: Truth, upper: Truth) -> Result<Interval> {
        if lower > upper {
            return Err(Error::InvalidInterval {
                lower: lower.to_string(),
                upper: upper.to_string(),
            });
        }
        Ok(Interval { lower, upper })
    }

    pub fn point(c: Truth) -> Interval {
        Interval { lower: c, upper: c }
    }

    pub fn lower(&self) -> Truth {
        self.lower
    }

    pub fn upper(&self) -> Truth {
        self.upper
    }

    /// `self ⊆ other`
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lower <= self.lower && self.upper <= other.upper
    }

    /// All lattice intervals, ordered by lower then upper bound.
    pub fn all(lattice: Lattice) -> impl Iterator<Item = Interval> {
        let pts: Vec<Truth> = lattice.points().collect();
        let n = pts.len();
        (0..n).flat_map(move |l| {
            let pts = pts.clone();
            (l..n).map(move |u| Interval {
                lower: pts[l],
                upper: pts[u],
            })
        })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}]",
            self.lower.to_display_string(),
            self.upper.to_display_string()
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `[l,u]`
impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Interval> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Usage(format!("expected `[lower,upper]`, found `{s}`")))?;
        let (l, u) = inner
            .split_once(',')
            .ok_or_else(|| Error::Usage(format!("expected `[lower,upper]`, found `{s}`")))?;
        Interval::new(l.parse()?, u.parse()?)
    }
}

/// A fuzzy N5 valuation: an interval per world and atom, with the `t`
/// interval inside the `h` interval.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Valuation {
    signature: Signature,
    h: Vec<Interval>,
    t: Vec<Interval>,
}

impl Valuation {
    pub fn new(signature: Signature, h: Vec<Interval>, t: Vec<Interval>) -> Result<Valuation> {
        assert!(h.len() == signature.len() && t.len() == signature.len());
        for (k, a) in signature.iter().enumerate() {
            if !t[k].is_subset_of(&h[k]) {
                return Err(Error::InvalidValuation(format!(
                    "V(t,{a}) = {} is not inside V(h,{a}) = {}",
                    t[k], h[k]
                )));
            }
        }
        Ok(Valuation { signature, h, t })
    }

    /// The same intervals at both worlds.
    pub fn total(signature: Signature, intervals: Vec<Interval>) -> Valuation {
        Valuation {
            signature,
            h: intervals.clone(),
            t: intervals,
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn intervals(&self, w: World) -> &[Interval] {
        match w {
            World::H => &self.h,
            World::T => &self.t,
        }
    }

    pub fn get(&self, w: World, atom: &str) -> Option<Interval> {
        self.signature.index_of(atom).map(|k| self.intervals(w)[k])
    }

    fn value_of(&self, w: World, atom: &Atom) -> Result<Interval> {
        self.get(w, atom.as_str())
            .ok_or_else(|| Error::UnknownAtom(atom.to_string()))
    }

    /// `V(h, a) = V(t, a)` for every atom.
    pub fn is_total(&self) -> bool {
        self.h == self.t
    }

    pub fn check_on_lattice(&self, lattice: Lattice) -> Result<()> {
        for (w, ivs) in [(World::H, &self.h), (World::T, &self.t)] {
            for (a, iv) in self.signature.iter().zip(ivs) {
                for v in [iv.lower, iv.upper] {
                    if !lattice.contains(v) {
                        return Err(Error::OffLattice {
                            atom: format!("{w}:{a}"),
                            value: v.to_string(),
                            denominator: lattice.denominator(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (w, ivs) in [(World::H, &self.h), (World::T, &self.t)] {
            for (a, iv) in self.signature.iter().zip(ivs) {
                if !first {
                    f.write_str("; ")?;
                }
                first = false;
                write!(f, "{w}:{a}={iv}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `h:p=[0.2,0.7]; t:p=[0.2,0.7]`. An entry without a world prefix sets
/// both worlds. Every atom needs an interval at both worlds.
impl FromStr for Valuation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Valuation> {
        let mut h: BTreeMap<Atom, Interval> = BTreeMap::new();
        let mut t: BTreeMap<Atom, Interval> = BTreeMap::new();
        for entry in s.split(';') {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let (lhs, rhs) = entry
                .rsplit_once('=')
                .ok_or_else(|| Error::Usage(format!("expected `w:atom=[l,u]`, found `{entry}`")))?;
            let lhs = lhs.trim();
            let (worlds, name): (&[World], &str) = match lhs.split_once(':') {
                Some(("h", n)) => (&[World::H], n.trim()),
                Some(("t", n)) => (&[World::T], n.trim()),
                Some((w, _)) => return Err(Error::Usage(format!("unknown world `{w}`"))),
                None => (&[World::H, World::T], lhs),
            };
            if !is_valid_atom_name(name) {
                return Err(Error::Usage(format!("invalid atom name `{name}`")));
            }
            let iv: Interval = rhs.parse()?;
            for w in worlds {
                let map = if *w == World::H { &mut h } else { &mut t };
                if map.insert(Atom::new(name), iv).is_some() {
                    return Err(Error::Usage(format!("V({w},{name}) given twice")));
                }
            }
        }
        from_world_maps(h, t)
    }
}

fn from_world_maps(h: BTreeMap<Atom, Interval>, t: BTreeMap<Atom, Interval>) -> Result<Valuation> {
    let sig = Signature::new(h.keys().chain(t.keys()).cloned());
    let pick = |m: &BTreeMap<Atom, Interval>, w: World| {
        sig.iter()
            .map(|a| {
                m.get(a).copied().ok_or_else(|| {
                    Error::InvalidValuation(format!("no interval for {a} at world {w}"))
                })
            })
            .collect::<Result<Vec<_>>>()
    };
    let hv = pick(&h, World::H)?;
    let tv = pick(&t, World::T)?;
    Valuation::new(sig, hv, tv)
}

/// The interval value of `f` at world `w`. Connectives use the operator of
/// their node; negation must be `¬_s`.
pub fn n5_evaluate(v: &Valuation, w: World, f: &Formula) -> Result<Interval> {
    match f {
        Formula::Atom(a) => v.value_of(w, a),
        Formula::Const(c) => Ok(Interval::point(*c)),
        Formula::StrongNeg(a) => {
            let iv = v.value_of(w, a)?;
            Interval::new(iv.upper.complement(), iv.lower.complement())
        }
        Formula::Neg(op, b) => {
            if *op != OperatorKind::StandardNeg {
                return Err(Error::UnsupportedNegator(op.symbol()));
            }
            let at_t = n5_evaluate(v, World::T, b)?.lower;
            match w {
                World::H => {
                    let at_h = n5_evaluate(v, World::H, b)?.lower;
                    Interval::new(at_t.complement(), at_h.complement())
                }
                World::T => Ok(Interval::point(at_t.complement())),
            }
        }
        Formula::Bin(op, l, r) => match op.family() {
            Family::Conjunction | Family::Disjunction => {
                let (x, y) = (n5_evaluate(v, w, l)?, n5_evaluate(v, w, r)?);
                Interval::new(op.apply2(x.lower, y.lower)?, op.apply2(x.upper, y.upper)?)
            }
            Family::Implication => {
                let (x, y) = (n5_evaluate(v, w, l)?, n5_evaluate(v, w, r)?);
                match w {
                    World::H => {
                        let (xt, yt) = (n5_evaluate(v, World::T, l)?, n5_evaluate(v, World::T, r)?);
                        let lower = op
                            .apply2(x.lower, y.lower)?
                            .min(op.apply2(xt.lower, yt.lower)?);
                        Interval::new(lower, op.apply2(x.lower, y.upper)?)
                    }
                    World::T => {
                        Interval::new(op.apply2(x.lower, y.lower)?, op.apply2(x.lower, y.upper)?)
                    }
                }
            }
            Family::Negation => unreachable!("negator in binary node"),
        },
    }
}

/// `V⁻(h, F) = 1`
pub fn is_n5_model(v: &Valuation, f: &Formula) -> Result<bool> {
    Ok(n5_evaluate(v, World::H, f)?.lower.is_one())
}

/// `V′ ⪯ V`: same `t` intervals, and `V(h, a) ⊆ V′(h, a)` for every atom.
pub fn preceq(v2: &Valuation, v1: &Valuation) -> Result<bool> {
    if v2.signature != v1.signature {
        return Err(Error::SignatureMismatch);
    }
    Ok(v2.t == v1.t && v1.h.iter().zip(&v2.h).all(|(a, b)| a.is_subset_of(b)))
}

/// `V′ ≺ V`
pub fn prec(v2: &Valuation, v1: &Valuation) -> Result<bool> {
    Ok(preceq(v2, v1)? && v2 != v1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EquilibriumStatus {
    NotAModel,
    /// A smaller model exists.
    NotHMinimal,
    /// h-minimal, but `h` and `t` intervals differ somewhere.
    NotTotal,
    Equilibrium,
}

impl fmt::Display for EquilibriumStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquilibriumStatus::NotAModel => "not_a_model",
            EquilibriumStatus::NotHMinimal => "not_h_minimal",
            EquilibriumStatus::NotTotal => "not_total",
            EquilibriumStatus::Equilibrium => "equilibrium",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumVerdict {
    pub status: EquilibriumStatus,
    /// A model `V′ ≺ V` when h-minimality fails.
    pub counterexample: Option<Valuation>,
    pub denominator: u32,
}

impl EquilibriumVerdict {
    pub fn is_equilibrium(&self) -> bool {
        self.status == EquilibriumStatus::Equilibrium
    }
}

/// The first model `V′ ≺ V` with lattice endpoints. Candidates widen each
/// `h` interval; atoms in signature order, the first most significant,
/// and per atom the lower bound ascending, then the upper bound ascending.
pub fn find_smaller_model(
    v: &Valuation,
    f: &Formula,
    lattice: Lattice,
    max_candidates: u64,
) -> Result<Option<Valuation>> {
    v.check_on_lattice(lattice)?;
    let options: Vec<Vec<Interval>> =
        v.h.iter()
            .map(|iv| {
                let mut out = Vec::new();
                for l in lattice.points().take_while(|&x| x <= iv.lower) {
                    for u in lattice.points().filter(|&x| x >= iv.upper) {
                        out.push(Interval { lower: l, upper: u });
                    }
                }
                out
            })
            .collect();
    let total: u128 = options
        .iter()
        .map(|o| o.len() as u128)
        .fold(1u128, |a, b| a.saturating_mul(b));
    if total - 1 > max_candidates as u128 {
        return Err(Error::ResourceLimit {
            candidates: total - 1,
            cap: max_candidates,
        });
    }
    let mut digits = alloc::vec![0usize; options.len()];
    let mut candidate = v.clone();
    loop {
        for (k, d) in digits.iter().enumerate() {
            candidate.h[k] = options[k][*d];
        }
        if candidate.h != v.h && is_n5_model(&candidate, f)? {
            return Ok(Some(candidate));
        }
        let mut k = digits.len();
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            if digits[k] + 1 < options[k].len() {
                digits[k] += 1;
                break;
            }
            digits[k] = 0;
        }
    }
}

/// Checks model, h-minimality (over lattice endpoints), then totality.
pub fn is_equilibrium(
    v: &Valuation,
    f: &Formula,
    lattice: Lattice,
    max_candidates: u64,
) -> Result<EquilibriumVerdict> {
    v.check_on_lattice(lattice)?;
    let mut verdict = EquilibriumVerdict {
        status: EquilibriumStatus::NotAModel,
        counterexample: None,
        denominator: lattice.denominator(),
    };
    if !is_n5_model(v, f)? {
        return Ok(verdict);
    }
    if let Some(smaller) = find_smaller_model(v, f, lattice, max_candidates)? {
        verdict.status = EquilibriumStatus::NotHMinimal;
        verdict.counterexample = Some(smaller);
        return Ok(verdict);
    }
    verdict.status = if v.is_total() {
        EquilibriumStatus::Equilibrium
    } else {
        EquilibriumStatus::NotTotal
    };
    Ok(verdict)
}

/// All equilibrium models over `sig` with lattice endpoints. Only total
/// valuations are candidates.
pub fn enumerate_equilibrium(
    f: &Formula,
    sig: &Signature,
    lattice: Lattice,
    max_candidates: u64,
) -> Result<Vec<Valuation>> {
    let per_atom: Vec<Interval> = Interval::all(lattice).collect();
    let total = (per_atom.len() as u128)
        .checked_pow(sig.len() as u32)
        .unwrap_or(u128::MAX);
    if total > max_candidates as u128 {
        return Err(Error::ResourceLimit {
            candidates: total,
            cap: max_candidates,
        });
    }
    let n = sig.len();
    let mut out = Vec::new();
    for mut idx in 0..total as u64 {
        let mut ivs = alloc::vec![per_atom[0]; n];
        for slot in ivs.iter_mut().rev() {
            *slot = per_atom[(idx % per_atom.len() as u64) as usize];
            idx /= per_atom.len() as u64;
        }
        let v = Valuation::total(sig.clone(), ivs);
        if !is_n5_model(&v, f)? {
            continue;
        }
        if find_smaller_model(&v, f, lattice, max_candidates)?.is_none() {
            out.push(v);
        }
    }
    Ok(out)
}

/// `V(w, p) = [I(p), 1]` at both worlds.
pub fn valuation_of(i: &Interpretation) -> Valuation {
    let ivs = i
        .values()
        .iter()
        .map(|&x| Interval {
            lower: x,
            upper: Truth::ONE,
        })
        .collect();
    Valuation::total(i.signature().clone(), ivs)
}

/// `V(h, p) = [J(p), 1]`, `V(t, p) = [I(p), 1]`; needs `J ≤ I`.
pub fn valuation_between(j: &Interpretation, i: &Interpretation) -> Result<Valuation> {
    if j.signature() != i.signature() {
        return Err(Error::SignatureMismatch);
    }
    let up = |x: &Truth| Interval {
        lower: *x,
        upper: Truth::ONE,
    };
    Valuation::new(
        i.signature().clone(),
        j.values().iter().map(up).collect(),
        i.values().iter().map(up).collect(),
    )
}

/// `I_V(p) = V⁻(h, p)`
pub fn interpretation_of(v: &Valuation) -> Interpretation {
    Interpretation::new(v.signature.clone(), v.h.iter().map(|iv| iv.lower).collect())
}

/// `nneg(V)(w, p) = [V⁻(w, p), 1]`, `nneg(V)(w, np) = [1 − V⁺(w, p), 1]`,
/// with `np` taken from `complements`.
pub fn nneg_valuation(v: &Valuation, complements: &BTreeMap<Atom, Atom>) -> Result<Valuation> {
    let mut h = BTreeMap::new();
    let mut t = BTreeMap::new();
    for (k, a) in v.signature.iter().enumerate() {
        let np = complements
            .get(a)
            .ok_or_else(|| Error::UnknownAtom(a.to_string()))?;
        for (map, iv) in [(&mut h, v.h[k]), (&mut t, v.t[k])] {
            map.insert(
                a.clone(),
                Interval {
                    lower: iv.lower,
                    upper: Truth::ONE,
                },
            );
            map.insert(
                np.clone(),
                Interval {
                    lower: iv.upper.complement(),
                    upper: Truth::ONE,
                },
            );
        }
    }
    from_world_maps(h, t)
}

/// The total valuation `V(w, p) = [I(p), 1 − I(np)]` whose [`nneg_valuation`]
/// projects to `I`. Fails when some interval would be empty.
pub fn nneg_preimage(i: &Interpretation, complements: &BTreeMap<Atom, Atom>) -> Result<Valuation> {
    let sig = Signature::new(complements.keys().cloned());
    let ivs = sig
        .iter()
        .map(|a| {
            let lower = i.value_of(a.as_str())?;
            let upper = i.value_of(complements[a].as_str())?.complement();
            Interval::new(lower, upper)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Valuation::total(sig, ivs))
}

#[cfg(feature = "serde")]
mod serde_impl {
    use super::*;
    use alloc::string::String;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    impl Serialize for Interval {
        fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
            (self.lower, self.upper).serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for Interval {
        fn deserialize<D: Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
            let (l, u) = <(Truth, Truth)>::deserialize(d)?;
            Interval::new(l, u).map_err(serde::de::Error::custom)
        }
    }

    #[derive(Serialize, Deserialize)]
    struct Worlds {
        h: BTreeMap<String, Interval>,
        t: BTreeMap<String, Interval>,
    }

    /// `{"h": {"p": ["1/5", "7/10"]}, "t": {...}}`
    impl Serialize for Valuation {
        fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
            let names = || self.signature.iter().map(|a| a.to_string());
            Worlds {
                h: names().zip(self.h.iter().copied()).collect(),
                t: names().zip(self.t.iter().copied()).collect(),
            }
            .serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for Valuation {
        fn deserialize<D: Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
            let w = Worlds::deserialize(d)?;
            let conv = |m: BTreeMap<String, Interval>| {
                m.into_iter().map(|(k, v)| (Atom::new(&k), v)).collect()
            };
            from_world_maps(conv(w.h), conv(w.t)).map_err(serde::de::Error::custom)
        }
    }

    impl Serialize for EquilibriumVerdict {
        fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
            use serde::ser::SerializeStruct;
            let n = 2 + usize::from(self.counterexample.is_some());
            let mut st = s.serialize_struct("EquilibriumVerdict", n)?;
            st.serialize_field("status", &self.status)?;
            if let Some(c) = &self.counterexample {
                st.serialize_field("counterexample", c)?;
            }
            st.serialize_field("denominator", &self.denominator)?;
            st.end()
        }
    }

    impl<'de> Deserialize<'de> for EquilibriumVerdict {
        fn deserialize<D: Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
            #[derive(Deserialize)]
            struct Raw {
                status: EquilibriumStatus,
                #[serde(default)]
                counterexample: Option<Valuation>,
                denominator: u32,
            }
            let r = Raw::deserialize(d)?;
            Ok(EquilibriumVerdict {
                status: r.status,
                counterexample: r.counterexample,
                denominator: r.denominator,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::transforms::nneg;

    fn t(s: &str) -> Truth {
        s.parse().unwrap()
    }

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn v(s: &str) -> Valuation {
        s.parse().unwrap()
    }

    const CAP: u64 = 10_000_000;

    #[test]
    fn parse_and_print() {
        let val = v("h:p=[0.2,0.7]; t:p=[0.2,0.7]");
        assert_eq!(val, v("p=[0.2,0.7]"));
        assert_eq!(val.to_string(), "h:p=[0.2,0.7]; t:p=[0.2,0.7]");
        assert!("h:p=[0.2,0.7]".parse::<Valuation>().is_err());
        assert!("h:p=[0.3,0.7]; t:p=[0.2,0.7]".parse::<Valuation>().is_err());
        assert!("p=[0.8,0.7]".parse::<Valuation>().is_err());
        assert!("x:p=[0,1]".parse::<Valuation>().is_err());
    }

    #[test]
    fn clause_examples() {
        let val = v("p=[0.2,0.7]");
        for w in [World::H, World::T] {
            let iv = n5_evaluate(&val, w, &f("~p")).unwrap();
            assert_eq!((iv.lower(), iv.upper()), (t("0.3"), t("0.8")));
            assert_eq!(
                n5_evaluate(&val, w, &f("0.4")).unwrap(),
                Interval::point(t("0.4"))
            );
        }
        // h-implication takes the smaller of the two worlds' lower values.
        let val = v("h:p=[0.2,1]; t:p=[0.6,1]; q=[0.4,1]");
        let iv = n5_evaluate(&val, World::H, &f("p ->r q")).unwrap();
        assert_eq!(iv.lower(), t("0.4"));
        assert_eq!(iv.upper(), Truth::ONE);
        let iv = n5_evaluate(&val, World::H, &f("not_s p")).unwrap();
        assert_eq!((iv.lower(), iv.upper()), (t("0.4"), t("0.8")));
        let iv = n5_evaluate(&val, World::T, &f("not_s p")).unwrap();
        assert_eq!((iv.lower(), iv.upper()), (t("0.4"), t("0.4")));
    }

    #[test]
    fn models() {
        let g = f("(0.2 ->r p) &m (0.3 ->r ~p)");
        assert!(is_n5_model(&v("p=[0.2,0.7]"), &g).unwrap());
        assert!(is_n5_model(&v("p=[0,1]"), &f("1")).unwrap());
        assert!(!is_n5_model(&v("p=[0,1]"), &f("p")).unwrap());
    }

    #[test]
    fn ordering() {
        let a = v("p=[0.2,0.7]");
        let b = v("h:p=[0.1,0.8]; t:p=[0.2,0.7]");
        assert!(preceq(&b, &a).unwrap());
        assert!(prec(&b, &a).unwrap());
        assert!(preceq(&a, &a).unwrap() && !prec(&a, &a).unwrap());
        assert!(!preceq(&v("p=[0.1,0.8]"), &a).unwrap());
    }

    #[test]
    fn strong_negation_example() {
        let g = f("(0.2 ->r p) &m (0.3 ->r ~p)");
        let lattice = Lattice::new(10).unwrap();
        let verdict = is_equilibrium(&v("p=[0.2,0.7]"), &g, lattice, CAP).unwrap();
        assert!(verdict.is_equilibrium());
        let all = enumerate_equilibrium(&g, &g.signature(), lattice, CAP).unwrap();
        assert_eq!(all, [v("p=[0.2,0.7]")]);
        let wide = is_equilibrium(&v("p=[0.3,0.7]"), &g, lattice, CAP).unwrap();
        assert_eq!(wide.status, EquilibriumStatus::NotHMinimal);
        assert!(prec(wide.counterexample.as_ref().unwrap(), &v("p=[0.3,0.7]")).unwrap());
    }

    #[test]
    fn upper_bounds_are_one_without_strong_negation() {
        let lattice = Lattice::new(4).unwrap();
        for text in ["p |l not_s p", "not_s q ->r p", "(p ->r q) &m (q ->l p)"] {
            let g = f(text);
            for m in enumerate_equilibrium(&g, &g.signature(), lattice, CAP).unwrap() {
                assert!(m.intervals(World::H).iter().all(|iv| iv.upper().is_one()));
            }
        }
        let g = f("p |l not_s p");
        let verdict = is_equilibrium(&v("p=[0.3,1]"), &g, Lattice::new(10).unwrap(), CAP).unwrap();
        assert!(verdict.is_equilibrium());
    }

    #[test]
    fn non_total_verdict() {
        let g = f("1");
        let val = v("h:p=[0,1]; t:p=[1,1]");
        assert_eq!(
            is_equilibrium(&val, &g, Lattice::new(2).unwrap(), CAP)
                .unwrap()
                .status,
            EquilibriumStatus::NotTotal
        );
    }

    #[test]
    fn projections() {
        let i: Interpretation = "p=0.3, q=1".parse().unwrap();
        let val = valuation_of(&i);
        assert_eq!(val.get(World::T, "p").unwrap().to_string(), "[0.3,1]");
        assert_eq!(interpretation_of(&val), i);
        assert_eq!(
            interpretation_of(&v("h:p=[0.1,1]; t:p=[0.4,1]")).to_string(),
            "{p=0.1}"
        );
        let j: Interpretation = "p=0.1, q=0".parse().unwrap();
        assert!(valuation_between(&j, &i).is_ok());
        assert!(valuation_between(&i, &j).is_err());
    }

    #[test]
    fn nneg_valuations() {
        let g = f("(0.2 ->r p) &m (0.3 ->r ~p)");
        let out = nneg(&g);
        let nv = nneg_valuation(&v("p=[0.2,0.7]"), &out.complements).unwrap();
        assert_eq!(nv, v("p=[0.2,1]; np=[0.3,1]"));
        let crisp = nneg_valuation(&v("p=[1,1]"), &out.complements).unwrap();
        assert_eq!(crisp, v("p=[1,1]; np=[0,1]"));
        let bad: Interpretation = "p=0.6, np=0.8".parse().unwrap();
        assert!(matches!(
            nneg_preimage(&bad, &out.complements),
            Err(Error::InvalidInterval { .. })
        ));
        let good: Interpretation = "p=0.2, np=0.3".parse().unwrap();
        assert_eq!(
            nneg_preimage(&good, &out.complements).unwrap(),
            v("p=[0.2,0.7]")
        );
    }
}
