//! Syntactic transforms: strong-negation elimination, the Boolean
//! embedding and choice formulas.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Signature};
use crate::interp::{BoolInterpretation, Interpretation};
use crate::operator::{Family, OperatorKind};
use crate::semantics::check_boolean_shape;
use crate::stable::MinimizedSet;
use crate::truth::Truth;

/// Output of [`nneg`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nneg {
    pub formula: Formula,
    /// The original signature plus one complement atom per atom.
    pub signature: Signature,
    /// Original atom to its complement atom.
    pub complements: BTreeMap<Atom, Atom>,
}

/// Complement names `n<atom>`, suffixed `_1`, `_2`, … on collision.
pub fn complement_names(sig: &Signature) -> BTreeMap<Atom, Atom> {
    let mut taken: Vec<Atom> = sig.iter().cloned().collect();
    let mut out = BTreeMap::new();
    for a in sig.iter() {
        let base = format!("n{a}");
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

/// Replaces every `~p` by a fresh atom `np` and conjoins (with `⊗_m`)
/// `¬_s(p ⊗_l np)` for every atom `p` of the formula.
pub fn nneg(f: &Formula) -> Nneg {
    let sig = f.signature();
    let complements = complement_names(&sig);
    let body = f.map_atoms(&mut |a, strong| {
        if strong {
            Formula::Atom(complements[a].clone())
        } else {
            Formula::Atom(a.clone())
        }
    });
    let constraints = sig.iter().map(|a| {
        Formula::not_s(Formula::bin(
            OperatorKind::LukasiewiczAnd,
            Formula::Atom(a.clone()),
            Formula::Atom(complements[a].clone()),
        ))
    });
    let formula = Formula::fold(
        OperatorKind::MinAnd,
        core::iter::once(body).chain(constraints),
    )
    .expect("non-empty");
    let signature = sig.union(&Signature::new(complements.values().cloned()));
    Nneg {
        formula,
        signature,
        complements,
    }
}

/// The operators substituted for `¬`, `∧`, `∨` and `→`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OperatorSelection {
    pub neg: OperatorKind,
    pub conj: OperatorKind,
    pub disj: OperatorKind,
    pub imp: OperatorKind,
}

impl Default for OperatorSelection {
    /// `¬_s`, `⊗_m`, `⊕_m`, `→_s`
    fn default() -> Self {
        OperatorSelection {
            neg: OperatorKind::StandardNeg,
            conj: OperatorKind::MinAnd,
            disj: OperatorKind::MaxOr,
            imp: OperatorKind::StandardImp,
        }
    }
}

impl OperatorSelection {
    /// Errors when an operator sits in the wrong slot.
    pub fn validate(&self) -> Result<()> {
        let slots = [
            (self.neg, Family::Negation),
            (self.conj, Family::Conjunction),
            (self.disj, Family::Disjunction),
            (self.imp, Family::Implication),
        ];
        for (op, fam) in slots {
            if op.family() != fam {
                return Err(Error::Usage(format!("{op} cannot stand for a {fam:?}")));
            }
        }
        Ok(())
    }

    fn for_family(&self, fam: Family) -> OperatorKind {
        match fam {
            Family::Negation => self.neg,
            Family::Conjunction => self.conj,
            Family::Disjunction => self.disj,
            Family::Implication => self.imp,
        }
    }
}

/// The fuzzy reading of a Boolean-shaped formula under the default
/// selection.
pub fn boolean_embed(f: &Formula) -> Result<Formula> {
    boolean_embed_with(f, &OperatorSelection::default())
}

pub fn boolean_embed_with(f: &Formula, sel: &OperatorSelection) -> Result<Formula> {
    check_boolean_shape(f)?;
    sel.validate()?;
    Ok(embed_rec(f, sel))
}

fn embed_rec(f: &Formula, sel: &OperatorSelection) -> Formula {
    match f {
        Formula::Neg(op, b) => Formula::neg(sel.for_family(op.family()), embed_rec(b, sel)),
        Formula::Bin(op, l, r) => Formula::bin(
            sel.for_family(op.family()),
            embed_rec(l, sel),
            embed_rec(r, sel),
        ),
        _ => f.clone(),
    }
}

/// 1 on the true atoms, 0 elsewhere.
pub fn crisp_interp(x: &BoolInterpretation) -> Interpretation {
    let values = x
        .bits()
        .iter()
        .map(|&b| if b { Truth::ONE } else { Truth::ZERO })
        .collect();
    Interpretation::new(x.signature().clone(), values)
}

/// The atoms with value 1.
pub fn defuzz(i: &Interpretation) -> BoolInterpretation {
    let bits = i.values().iter().map(|v| v.is_one()).collect();
    BoolInterpretation::new(i.signature().clone(), bits)
}

/// `(p₁ ⊕_l ¬_s p₁) ⊗ … ⊗ (pₙ ⊕_l ¬_s pₙ)`
pub fn choice(p: &MinimizedSet, conj: OperatorKind) -> Result<Formula> {
    choice_with(p, conj, OperatorKind::LukasiewiczOr)
}

/// [`choice`] with another disjunction; anything but `⊕_l` loses the
/// property that every interpretation satisfies the formula.
#[doc(hidden)]
pub fn choice_with(p: &MinimizedSet, conj: OperatorKind, disj: OperatorKind) -> Result<Formula> {
    if conj.family() != Family::Conjunction {
        return Err(Error::Usage(format!("{conj} is not a conjunction")));
    }
    if disj.family() != Family::Disjunction {
        return Err(Error::Usage(format!("{disj} is not a disjunction")));
    }
    let parts = p.iter().map(|a| {
        let atom = Formula::Atom(a.clone());
        Formula::bin(disj, atom.clone(), Formula::not_s(atom))
    });
    Formula::fold(conj, parts)
        .ok_or_else(|| Error::Usage("choice over an empty set of atoms".into()))
}
