//! The star transform `F*(q)`, which moves the witness condition into a
//! single formula over `σ ∪ q`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{MinimizedSet, StabilityVerdict, Status, Strategy};
use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Signature};
use crate::interp::Interpretation;
use crate::operator::{Family, OperatorKind};
use crate::semantics::{evaluate, SatisfactionTest};
use crate::truth::{Lattice, Truth};

/// Fresh names `q_<atom>` for the atoms of `p`, suffixed `_1`, `_2`, …
/// when taken.
pub fn fresh_star_atoms(sig: &Signature, p: &MinimizedSet) -> BTreeMap<Atom, Atom> {
    let mut taken: Vec<Atom> = sig.iter().cloned().collect();
    let mut out = BTreeMap::new();
    for a in p.iter() {
        let base = format!("q_{a}");
        let mut name = base.clone();
        let mut k = 1;
        while taken.iter().any(|t| t.as_str() == name) {
            name = format!("{base}_{k}");
            k += 1;
        }
        let atom = Atom::new(&name);
        taken.push(atom.clone());
        out.insert(a.clone(), atom);
    }
    out
}

/// `F*(q)`. Every atom of `p` needs an entry in `fresh`, and no fresh atom
/// may occur in `f`.
pub fn star_transform(
    f: &Formula,
    p: &MinimizedSet,
    fresh: &BTreeMap<Atom, Atom>,
) -> Result<Formula> {
    let sig = f.signature();
    for q in fresh.values() {
        if sig.contains(q.as_str()) {
            return Err(Error::NameCollision(q.to_string()));
        }
    }
    if let Some(a) = p.iter().find(|a| !fresh.contains_key(*a)) {
        return Err(Error::Usage(format!("no fresh atom given for `{a}`")));
    }
    star_rec(f, p, fresh)
}

fn star_rec(f: &Formula, p: &MinimizedSet, fresh: &BTreeMap<Atom, Atom>) -> Result<Formula> {
    Ok(match f {
        Formula::Atom(a) if p.contains(a.as_str()) => Formula::Atom(fresh[a].clone()),
        Formula::Atom(_) | Formula::Const(_) | Formula::Neg(..) => f.clone(),
        Formula::StrongNeg(_) => return Err(Error::StrongNegUnsupported),
        Formula::Bin(op, l, r) => {
            let inner = Formula::bin(*op, star_rec(l, p, fresh)?, star_rec(r, p, fresh)?);
            if op.family() == Family::Implication {
                Formula::bin(OperatorKind::MinAnd, inner, f.clone())
            } else {
                inner
            }
        }
    })
}

/// Stability (at threshold 1) decided through `F*(q)`: `I` is stable iff
/// no lattice `J <^p I` makes `I ∪ J^p_q` satisfy `F*(q)`. Kept separate
/// from the reduct-based search so the two can be compared.
pub fn check_stable_via_star(
    f: &Formula,
    i: &Interpretation,
    p: &MinimizedSet,
    lattice: Lattice,
    max_candidates: u64,
) -> Result<StabilityVerdict> {
    i.check_on_lattice(lattice)?;
    let sig = i.signature();
    p.check_within(sig)?;
    let mut verdict = StabilityVerdict {
        status: Status::NotAModel,
        witness: None,
        threshold: Truth::ONE,
        denominator: lattice.denominator(),
        strategy: Strategy::Exhaustive,
        complete: true,
        examined: 0,
    };
    if !evaluate(f, i)?.is_one() {
        return Ok(verdict);
    }
    let fresh = fresh_star_atoms(sig, p);
    let starred = star_transform(f, p, &fresh)?;
    let ext = sig.union(&Signature::new(fresh.values().cloned()));
    let test = SatisfactionTest::new(&starred, &ext, Truth::ONE)?;

    let mut values = i.extend(&ext, Truth::ZERO).values().to_vec();
    let minimized: Vec<(usize, usize, u32)> = p
        .iter()
        .map(|a| {
            let top = lattice
                .index_of(i.value_of(a.as_str())?)
                .expect("checked on lattice");
            let src = ext.index_of(a.as_str()).expect("in signature");
            let dst = ext.index_of(fresh[a].as_str()).expect("fresh atom");
            Ok((src, dst, top))
        })
        .collect::<Result<_>>()?;
    let total: u128 = minimized.iter().map(|m| m.2 as u128 + 1).product();
    if total - 1 > max_candidates as u128 {
        return Err(Error::ResourceLimit {
            candidates: total - 1,
            cap: max_candidates,
        });
    }

    // Odometer over J(p_k) ∈ {0, …, I(p_k)}, last atom fastest.
    let mut digits: Vec<u32> = alloc::vec![0; minimized.len()];
    let mut stack = Vec::new();
    loop {
        if digits.iter().zip(&minimized).all(|(d, m)| *d == m.2) {
            break;
        }
        for (d, &(_, dst, _)) in digits.iter().zip(&minimized) {
            values[dst] = lattice.point(*d);
        }
        verdict.examined += 1;
        if test.holds(&values, &mut stack)? {
            let mut j = i.clone();
            for (d, &(src, _, _)) in digits.iter().zip(&minimized) {
                j.set(ext.atoms()[src].as_str(), lattice.point(*d))?;
            }
            verdict.status = Status::Unstable;
            verdict.witness = Some(j);
            return Ok(verdict);
        }
        let mut k = digits.len();
        while k > 0 {
            k -= 1;
            if digits[k] < minimized[k].2 {
                digits[k] += 1;
                break;
            }
            digits[k] = 0;
        }
    }
    verdict.status = Status::Stable;
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::semantics::{fuzzy_reduct, ReductMode};
    use crate::stable::{check_stable, SearchConfig};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn clauses() {
        let p = MinimizedSet::from_names(["p"]);
        let sig = Signature::from_names(["p", "q"]);
        let fresh = fresh_star_atoms(&sig, &p);
        assert_eq!(fresh[&Atom::new("p")].as_str(), "q_p");
        assert_eq!(star_transform(&f("p"), &p, &fresh).unwrap(), f("q_p"));
        assert_eq!(star_transform(&f("q"), &p, &fresh).unwrap(), f("q"));
        assert_eq!(
            star_transform(&f("not_s p"), &p, &fresh).unwrap(),
            f("not_s p")
        );
        assert_eq!(
            star_transform(&f("p &l q"), &p, &fresh).unwrap(),
            f("q_p &l q")
        );
        assert_eq!(
            star_transform(&f("q ->r p"), &p, &fresh).unwrap(),
            f("(q ->r q_p) &m (q ->r p)")
        );
    }

    #[test]
    fn collisions() {
        let p = MinimizedSet::from_names(["p"]);
        let sig = Signature::from_names(["p", "q_p"]);
        let fresh = fresh_star_atoms(&sig, &p);
        assert_eq!(fresh[&Atom::new("p")].as_str(), "q_p_1");
        let mut bad = BTreeMap::new();
        bad.insert(Atom::new("p"), Atom::new("q_p"));
        assert_eq!(
            star_transform(&f("p &m q_p"), &p, &bad),
            Err(Error::NameCollision("q_p".into()))
        );
    }

    #[test]
    fn value_spot_checks() {
        let g = f("(not_s q ->r p) &m (p ->l q |l 0.2)");
        let sig = g.signature();
        let p = MinimizedSet::all(&sig);
        let fresh = fresh_star_atoms(&sig, &p);
        let starred = star_transform(&g, &p, &fresh).unwrap();
        let lattice = Lattice::new(4).unwrap();
        for i in Interpretation::enumerate(&sig, lattice) {
            let reduct = fuzzy_reduct(&g, &i, ReductMode::Full).unwrap();
            for j in Interpretation::enumerate(&sig, lattice) {
                if !super::super::leq_p(&j, &i, &p).unwrap() {
                    continue;
                }
                let mut pairs: Vec<(&str, Truth)> =
                    i.iter().map(|(a, v)| (a.as_str(), v)).collect();
                for (a, q) in &fresh {
                    pairs.push((q.as_str(), j.value_of(a.as_str()).unwrap()));
                }
                let union = Interpretation::from_pairs(pairs);
                assert_eq!(
                    evaluate(&starred, &union).unwrap(),
                    evaluate(&reduct, &j).unwrap()
                );
            }
        }
    }

    #[test]
    fn agrees_with_reduct_search() {
        let lattice = Lattice::new(4).unwrap();
        for text in [
            "not_s q ->r p",
            "p ->r p",
            "not_s not_s p ->r p",
            "not_s p |l p",
        ] {
            let g = f(text);
            let sig = g.signature();
            let p = MinimizedSet::all(&sig);
            for i in Interpretation::enumerate(&sig, lattice) {
                let a = check_stable(&g, &i, &p, Truth::ONE, &SearchConfig::exhaustive(lattice))
                    .unwrap();
                let b = check_stable_via_star(&g, &i, &p, lattice, u64::MAX).unwrap();
                assert_eq!(a.status, b.status, "{text} at {i}");
                assert_eq!(a.witness, b.witness, "{text} at {i}");
            }
        }
    }
}
