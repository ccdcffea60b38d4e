//! Exact evaluation, y-satisfaction and reducts.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::formula::{Formula, Signature};
use crate::interp::{BoolInterpretation, Interpretation};
use crate::operator::{Family, OperatorKind};
use crate::truth::Truth;

#[derive(Clone, Debug)]
enum Instr {
    Load(usize),
    Const(Truth),
    Un(OperatorKind),
    Bin(OperatorKind),
}

/// A formula compiled to postfix code over the atom indices of a fixed
/// signature. Evaluating it is much cheaper than walking the AST with name
/// lookups, which matters inside witness searches.
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    code: Vec<Instr>,
    depth: usize,
}

impl CompiledFormula {
    pub fn new(f: &Formula, sig: &Signature) -> Result<CompiledFormula> {
        let mut code = Vec::with_capacity(f.size());
        compile(f, sig, &mut code)?;
        Ok(CompiledFormula {
            code,
            depth: f.depth(),
        })
    }

    /// `values` is indexed like the signature passed to [`new`](Self::new).
    pub fn eval(&self, values: &[Truth], stack: &mut Vec<Truth>) -> Result<Truth> {
        stack.clear();
        stack.reserve(self.depth + 1);
        for ins in &self.code {
            match *ins {
                Instr::Load(i) => stack.push(values[i]),
                Instr::Const(c) => stack.push(c),
                Instr::Un(op) => {
                    let x = stack.pop().expect("well-formed code");
                    stack.push(op.apply1(x)?);
                }
                Instr::Bin(op) => {
                    let y = stack.pop().expect("well-formed code");
                    let x = stack.pop().expect("well-formed code");
                    stack.push(op.apply2(x, y)?);
                }
            }
        }
        Ok(stack.pop().expect("well-formed code"))
    }
}

fn compile(f: &Formula, sig: &Signature, code: &mut Vec<Instr>) -> Result<()> {
    match f {
        Formula::Atom(a) => {
            let i = sig
                .index_of(a.as_str())
                .ok_or_else(|| Error::UnknownAtom(a.to_string()))?;
            code.push(Instr::Load(i));
        }
        Formula::Const(c) => code.push(Instr::Const(*c)),
        Formula::StrongNeg(_) => return Err(Error::StrongNegUnsupported),
        Formula::Neg(op, b) => {
            compile(b, sig, code)?;
            code.push(Instr::Un(*op));
        }
        Formula::Bin(op, l, r) => {
            compile(l, sig, code)?;
            compile(r, sig, code)?;
            code.push(Instr::Bin(*op));
        }
    }
    Ok(())
}

/// A compiled y-satisfaction test. The top-level conjunction is split so a
/// failing conjunct ends the evaluation early: `min(a, b) ≥ y` iff both
/// are, and for `y = 1` the same holds for every t-norm.
#[derive(Clone, Debug)]
pub struct SatisfactionTest {
    conjuncts: Vec<CompiledFormula>,
    threshold: Truth,
}

impl SatisfactionTest {
    pub fn new(f: &Formula, sig: &Signature, y: Truth) -> Result<SatisfactionTest> {
        let mut parts = Vec::new();
        split_conjuncts(f, y.is_one(), &mut parts);
        let conjuncts = parts
            .into_iter()
            .map(|p| CompiledFormula::new(p, sig))
            .collect::<Result<Vec<_>>>()?;
        Ok(SatisfactionTest {
            conjuncts,
            threshold: y,
        })
    }

    pub fn holds(&self, values: &[Truth], stack: &mut Vec<Truth>) -> Result<bool> {
        for c in &self.conjuncts {
            if c.eval(values, stack)? < self.threshold {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn split_conjuncts<'a>(f: &'a Formula, any_tnorm: bool, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::Bin(op, l, r)
            if *op == OperatorKind::MinAnd || (any_tnorm && op.family() == Family::Conjunction) =>
        {
            split_conjuncts(l, any_tnorm, out);
            split_conjuncts(r, any_tnorm, out);
        }
        _ => out.push(f),
    }
}

/// The truth value of `f` under `i`.
pub fn evaluate(f: &Formula, i: &Interpretation) -> Result<Truth> {
    match f {
        Formula::Atom(a) => i.value_of(a.as_str()),
        Formula::Const(c) => Ok(*c),
        Formula::StrongNeg(_) => Err(Error::StrongNegUnsupported),
        Formula::Neg(op, b) => op.apply1(evaluate(b, i)?),
        Formula::Bin(op, l, r) => op.apply2(evaluate(l, i)?, evaluate(r, i)?),
    }
}

/// `υ_I(F) ≥ y`; `y = 1` is plain satisfaction.
pub fn satisfies(f: &Formula, i: &Interpretation, y: Truth) -> Result<bool> {
    Ok(evaluate(f, i)? >= y)
}

/// How reduct wrappers are emitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ReductMode {
    /// Conjunctions and disjunctions carry no wrapper, and a wrapper whose
    /// constant is 1 is dropped.
    #[default]
    Simplified,
    /// Every binary node is wrapped with `⊗_m υ_I(node)`.
    Full,
}

/// The fuzzy reduct `F^I`.
pub fn fuzzy_reduct(f: &Formula, i: &Interpretation, mode: ReductMode) -> Result<Formula> {
    Ok(reduct_rec(f, i, mode, OperatorKind::MinAnd)?.0)
}

/// Reduct with a different wrapper conjunction. Only `⊗_m` is sound; this
/// exists to pin down what goes wrong otherwise.
#[doc(hidden)]
pub fn fuzzy_reduct_with_wrapper(
    f: &Formula,
    i: &Interpretation,
    mode: ReductMode,
    wrapper: OperatorKind,
) -> Result<Formula> {
    assert_eq!(wrapper.family(), Family::Conjunction);
    Ok(reduct_rec(f, i, mode, wrapper)?.0)
}

fn reduct_rec(
    f: &Formula,
    i: &Interpretation,
    mode: ReductMode,
    wrapper: OperatorKind,
) -> Result<(Formula, Truth)> {
    match f {
        Formula::Atom(a) => Ok((f.clone(), i.value_of(a.as_str())?)),
        Formula::Const(c) => Ok((f.clone(), *c)),
        Formula::StrongNeg(_) => Err(Error::StrongNegUnsupported),
        Formula::Neg(op, b) => {
            let v = op.apply1(evaluate(b, i)?)?;
            Ok((Formula::Const(v), v))
        }
        Formula::Bin(op, l, r) => {
            let (lr, lv) = reduct_rec(l, i, mode, wrapper)?;
            let (rr, rv) = reduct_rec(r, i, mode, wrapper)?;
            let v = op.apply2(lv, rv)?;
            let inner = Formula::Bin(*op, Box::new(lr), Box::new(rr));
            let bare = mode == ReductMode::Simplified
                && (op.family() != Family::Implication || v.is_one());
            if bare {
                Ok((inner, v))
            } else {
                Ok((Formula::bin(wrapper, inner, Formula::Const(v)), v))
            }
        }
    }
}

/// Checks that `f` reads as a classical formula: no strong negation,
/// constants 0 or 1, and at most one operator per family.
pub fn check_boolean_shape(f: &Formula) -> Result<()> {
    let mut chosen: [Option<OperatorKind>; 4] = [None; 4];
    let mut problem = None;
    f.visit(&mut |g| {
        if problem.is_some() {
            return;
        }
        let op = match g {
            Formula::StrongNeg(a) => {
                problem = Some(format!("strong negation `~{a}`"));
                return;
            }
            Formula::Const(c) if !c.is_zero() && !c.is_one() => {
                problem = Some(format!("constant {c} is neither 0 nor 1"));
                return;
            }
            Formula::Neg(op, _) | Formula::Bin(op, _, _) => *op,
            _ => return,
        };
        let slot = &mut chosen[op.family() as usize];
        match slot {
            Some(prev) if *prev != op => {
                problem = Some(format!("mixes {prev} and {op}"));
            }
            _ => *slot = Some(op),
        }
    });
    match problem {
        Some(p) => Err(Error::NotBooleanShaped(p)),
        None => Ok(()),
    }
}

/// Classical satisfaction, reading each operator by its family.
pub fn bool_satisfies(f: &Formula, x: &BoolInterpretation) -> Result<bool> {
    Ok(match f {
        Formula::Atom(a) => x
            .contains(a.as_str())
            .ok_or_else(|| Error::UnknownAtom(a.to_string()))?,
        Formula::Const(c) => c.is_one(),
        Formula::StrongNeg(_) => return Err(Error::StrongNegUnsupported),
        Formula::Neg(_, b) => !bool_satisfies(b, x)?,
        Formula::Bin(op, l, r) => {
            let (a, b) = (bool_satisfies(l, x)?, bool_satisfies(r, x)?);
            match op.family() {
                Family::Conjunction => a && b,
                Family::Disjunction => a || b,
                Family::Implication => !a || b,
                Family::Negation => unreachable!("negator in binary node"),
            }
        }
    })
}

/// The classical reduct `F^X`, with `0` and `1` standing for `⊥` and `⊤`.
pub fn classical_reduct(f: &Formula, x: &BoolInterpretation) -> Result<Formula> {
    check_boolean_shape(f)?;
    classical_reduct_rec(f, x)
}

fn classical_reduct_rec(f: &Formula, x: &BoolInterpretation) -> Result<Formula> {
    let bottom = Formula::Const(Truth::ZERO);
    Ok(match f {
        Formula::Atom(_) | Formula::Const(_) => {
            if bool_satisfies(f, x)? {
                f.clone()
            } else {
                bottom
            }
        }
        Formula::StrongNeg(_) => return Err(Error::StrongNegUnsupported),
        Formula::Neg(_, b) => {
            if bool_satisfies(b, x)? {
                bottom
            } else {
                Formula::Const(Truth::ONE)
            }
        }
        Formula::Bin(op, l, r) => {
            if bool_satisfies(f, x)? {
                Formula::bin(
                    *op,
                    classical_reduct_rec(l, x)?,
                    classical_reduct_rec(r, x)?,
                )
            } else {
                bottom
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::truth::Lattice;

    fn t(s: &str) -> Truth {
        s.parse().unwrap()
    }

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn i(s: &str) -> Interpretation {
        s.parse().unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let d10 = Lattice::new(10).unwrap();
        for x in d10.points() {
            let interp = Interpretation::from_pairs([("p", x), ("q", x.complement())]);
            assert_eq!(evaluate(&f("not_s q ->r p"), &interp).unwrap(), Truth::ONE);
        }
        assert_eq!(
            evaluate(&f("0.6 ->r (1 ->r p)"), &i("p=0.6")).unwrap(),
            Truth::ONE
        );
        assert_eq!(evaluate(&f("0.25"), &i("p=0.6")).unwrap(), t("1/4"));
        assert_eq!(
            evaluate(&f("p |l not_s p"), &i("p=0.3")).unwrap(),
            Truth::ONE
        );
        assert_eq!(
            evaluate(&f("p &p q"), &i("p=0.8,q=0.7")).unwrap(),
            t("0.56")
        );
    }

    #[test]
    fn evaluation_errors() {
        assert_eq!(
            evaluate(&f("~p"), &i("p=1")),
            Err(Error::StrongNegUnsupported)
        );
        assert_eq!(
            evaluate(&f("r"), &i("p=1")),
            Err(Error::UnknownAtom("r".into()))
        );
    }

    #[test]
    fn satisfaction_examples() {
        assert!(satisfies(&f("not_s p ->r q"), &i("p=0, q=0.6"), t("0.6")).unwrap());
        assert!(satisfies(&f("p &l q"), &i("p=0, q=0"), Truth::ZERO).unwrap());
        assert!(!satisfies(&f("p"), &i("p=0.5"), Truth::ONE).unwrap());
    }

    #[test]
    fn compiled_agrees_with_tree_walk() {
        let g = f("(p &l q) |p not_s (r ->l p) &m (q ->s 0.3)");
        let sig = g.signature();
        let c = CompiledFormula::new(&g, &sig).unwrap();
        let mut stack = Vec::new();
        for interp in Interpretation::enumerate(&sig, Lattice::new(3).unwrap()) {
            assert_eq!(
                c.eval(interp.values(), &mut stack).unwrap(),
                evaluate(&g, &interp).unwrap()
            );
        }
    }

    #[test]
    fn split_satisfaction_agrees() {
        let g = f("(p &l q) &m (r ->r p) &p (q |m r)");
        let sig = g.signature();
        let mut stack = Vec::new();
        for y in Lattice::new(4).unwrap().points() {
            let test = SatisfactionTest::new(&g, &sig, y).unwrap();
            for interp in Interpretation::enumerate(&sig, Lattice::new(4).unwrap()) {
                assert_eq!(
                    test.holds(interp.values(), &mut stack).unwrap(),
                    satisfies(&g, &interp, y).unwrap()
                );
            }
        }
    }

    #[test]
    fn reduct_example_one() {
        let g = f("not_s q ->r p");
        let r = fuzzy_reduct(&g, &i("p=0.3, q=0.7"), ReductMode::Simplified).unwrap();
        assert_eq!(r, f("0.3 ->r p"));
        let full = fuzzy_reduct(&g, &i("p=0.3, q=0.7"), ReductMode::Full).unwrap();
        assert_eq!(full, f("(0.3 ->r p) &m 1"));
    }

    #[test]
    fn reduct_nested_implication() {
        let g = f("0.6 ->r (1 ->r p)");
        let interp = i("p=0.6");
        let r = fuzzy_reduct(&g, &interp, ReductMode::Simplified).unwrap();
        assert_eq!(r.to_string(), "0.6 ->r ((1 ->r p) &m 0.6)");
        assert_eq!(evaluate(&r, &interp).unwrap(), Truth::ONE);

        let bad =
            fuzzy_reduct_with_wrapper(&g, &interp, ReductMode::Full, OperatorKind::LukasiewiczAnd)
                .unwrap();
        assert_eq!(evaluate(&bad, &interp).unwrap(), t("0.2"));
    }

    #[test]
    fn reduct_atom_and_conjunction() {
        assert_eq!(
            fuzzy_reduct(&f("p"), &i("p=0.1"), ReductMode::Full).unwrap(),
            f("p")
        );
        let r = fuzzy_reduct(
            &f("p &l not_s q"),
            &i("p=0.5,q=0.2"),
            ReductMode::Simplified,
        )
        .unwrap();
        assert_eq!(r, f("p &l 0.8"));
        let r = fuzzy_reduct(&f("p &l not_s q"), &i("p=0.5,q=0.2"), ReductMode::Full).unwrap();
        assert_eq!(r, f("(p &l 0.8) &m 0.3"));
    }

    #[test]
    fn boolean_shape() {
        assert!(check_boolean_shape(&f("not_s q ->s p")).is_ok());
        assert!(check_boolean_shape(&f("1 &m p")).is_ok());
        assert!(matches!(
            check_boolean_shape(&f("0.5 ->s p")),
            Err(Error::NotBooleanShaped(_))
        ));
        assert!(matches!(
            check_boolean_shape(&f("p &m q &l r")),
            Err(Error::NotBooleanShaped(_))
        ));
        assert!(matches!(
            check_boolean_shape(&f("~p")),
            Err(Error::NotBooleanShaped(_))
        ));
    }

    #[test]
    fn classical_reduct_examples() {
        let sig = Signature::from_names(["p", "q"]);
        let x = BoolInterpretation::from_true_atoms(&sig, ["p"]).unwrap();
        assert_eq!(
            classical_reduct(&f("not_s q ->s p"), &x).unwrap(),
            f("1 ->s p")
        );
        let empty = BoolInterpretation::from_true_atoms(&sig, []).unwrap();
        assert_eq!(classical_reduct(&f("p"), &empty).unwrap(), f("0"));
        let both = BoolInterpretation::from_true_atoms(&sig, ["p", "q"]).unwrap();
        assert_eq!(classical_reduct(&f("p &m q"), &both).unwrap(), f("p &m q"));
        assert!(classical_reduct(&f("0.5 &m q"), &both).is_err());
    }
}
