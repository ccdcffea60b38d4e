//! Normal fuzzy answer set programs: parsing, translation to formulas, and
//! a direct answer-set checker that works on rules rather than formulas.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::formula::parse::{Parser, Tok};
use crate::formula::{Atom, Formula, Signature};
use crate::interp::Interpretation;
use crate::operator::{Family, OperatorKind};
use crate::truth::{Lattice, Truth};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RuleTerm {
    Atom(Atom),
    Const(Truth),
}

impl RuleTerm {
    fn to_formula(&self) -> Formula {
        match self {
            RuleTerm::Atom(a) => Formula::Atom(a.clone()),
            RuleTerm::Const(c) => Formula::Const(*c),
        }
    }

    fn value(&self, i: &Interpretation) -> Result<Truth> {
        match self {
            RuleTerm::Atom(a) => i.value_of(a.as_str()),
            RuleTerm::Const(c) => Ok(*c),
        }
    }
}

impl fmt::Display for RuleTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleTerm::Atom(a) => write!(f, "{a}"),
            RuleTerm::Const(c) => f.write_str(&c.to_display_string()),
        }
    }
}

/// `head ← b₁ ⊗ … ⊗ bₘ ⊗ ¬bₘ₊₁ ⊗ … ⊗ ¬bₙ`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: RuleTerm,
    pub positive: Vec<RuleTerm>,
    pub negative: Vec<RuleTerm>,
    pub conj: OperatorKind,
}

impl Rule {
    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        core::iter::once(&self.head)
            .chain(&self.positive)
            .chain(&self.negative)
            .filter_map(|t| match t {
                RuleTerm::Atom(a) => Some(a),
                RuleTerm::Const(_) => None,
            })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        let lits: Vec<_> = self
            .positive
            .iter()
            .map(|t| t.to_string())
            .chain(self.negative.iter().map(|t| format!("not {t}")))
            .collect();
        if !lits.is_empty() {
            write!(f, " <- {}", lits.join(&format!(" {} ", self.conj.token())))?;
        }
        f.write_str(".")
    }
}

/// Parses `head <- lit, …, lit.` rules. Literals are separated by `,` or by
/// the conjunction token of `conj`; `not` or `not_s` marks a negative
/// literal. Anything outside the normal fragment is rejected.
pub fn parse_fasp_program(text: &str, conj: OperatorKind) -> Result<Vec<Rule>> {
    if conj.family() != Family::Conjunction {
        return Err(Error::Usage(format!("{conj} is not a conjunction")));
    }
    let mut p = Parser::new(text)?;
    let mut rules = Vec::new();
    while p.peek().tok != Tok::Eof {
        rules.push(parse_rule(&mut p, conj)?);
    }
    Ok(rules)
}

fn parse_term(p: &mut Parser) -> Result<Option<RuleTerm>> {
    if let Some(v) = p.number()? {
        return Ok(Some(RuleTerm::Const(v)));
    }
    Ok(p.atom_name()?.map(|n| RuleTerm::Atom(Atom::new(&n))))
}

fn parse_rule(p: &mut Parser, conj: OperatorKind) -> Result<Rule> {
    let head = parse_term(p)?.ok_or_else(|| p.unexpected("a rule head (atom or constant)"))?;
    match p.peek().tok {
        Tok::Bar
        | Tok::Op(OperatorKind::LukasiewiczOr | OperatorKind::MaxOr | OperatorKind::ProductOr) => {
            return Err(p.error_here("disjunctive heads are outside the normal fragment"));
        }
        _ => {}
    }
    let mut rule = Rule {
        head,
        positive: Vec::new(),
        negative: Vec::new(),
        conj,
    };
    if p.peek().tok == Tok::Arrow {
        p.bump();
        loop {
            let negated = matches!(p.peek().tok, Tok::Not | Tok::Op(OperatorKind::StandardNeg));
            if negated {
                p.bump();
            }
            let Some(term) = parse_term(p)? else {
                return Err(match p.peek().tok {
                    Tok::LParen | Tok::Not | Tok::Op(_) | Tok::Tilde => {
                        p.error_here("nested connectives are outside the normal fragment")
                    }
                    _ => p.unexpected("a body literal"),
                });
            };
            if negated {
                rule.negative.push(term);
            } else {
                rule.positive.push(term);
            }
            match p.peek().tok {
                Tok::Comma => {
                    p.bump();
                }
                Tok::Op(k) if k == conj => {
                    p.bump();
                }
                Tok::Op(k) if k.family() == Family::Conjunction => {
                    return Err(p.error_here(format!(
                        "body uses {} but the program conjunction is {}",
                        k.token(),
                        conj.token()
                    )));
                }
                Tok::Dot => break,
                Tok::Op(_) | Tok::Tilde | Tok::LParen => {
                    return Err(p.error_here("nested connectives are outside the normal fragment"));
                }
                _ => return Err(p.unexpected("`,`, a conjunction or `.`")),
            }
        }
    }
    p.expect(Tok::Dot, "`.` ending the rule")?;
    Ok(rule)
}

/// `b₁ ⊗ … ⊗ ¬_s bₙ →_r head`; an empty body gives `1 →_r head`.
pub fn rule_to_formula(r: &Rule) -> Formula {
    let lits = r
        .positive
        .iter()
        .map(RuleTerm::to_formula)
        .chain(r.negative.iter().map(|t| Formula::not_s(t.to_formula())));
    let body = Formula::fold(r.conj, lits).unwrap_or(Formula::Const(Truth::ONE));
    Formula::bin(OperatorKind::ResidualImp, body, r.head.to_formula())
}

/// The rules' formulas joined left to right with `conj`.
pub fn program_to_formula(rules: &[Rule], conj: OperatorKind) -> Result<Formula> {
    if conj.family() != Family::Conjunction {
        return Err(Error::Usage(format!("{conj} is not a conjunction")));
    }
    Formula::fold(conj, rules.iter().map(rule_to_formula))
        .ok_or_else(|| Error::Usage("empty program".into()))
}

/// Atoms occurring in the program.
pub fn program_signature(rules: &[Rule]) -> Signature {
    Signature::new(rules.iter().flat_map(|r| r.atoms().cloned()))
}

/// The body value with negative literals already fixed to `1 − I(b)`.
fn body_value(r: &Rule, j: &Interpretation, negatives: &[Truth]) -> Result<Truth> {
    let mut acc = Truth::ONE;
    for t in &r.positive {
        acc = r.conj.apply2(acc, t.value(j)?)?;
    }
    for &n in negatives {
        acc = r.conj.apply2(acc, n)?;
    }
    Ok(acc)
}

/// `J` satisfies every rule, negative literals read as the given constants.
fn satisfies_rules(rules: &[Rule], j: &Interpretation, negs: &[Vec<Truth>]) -> Result<bool> {
    for (r, n) in rules.iter().zip(negs) {
        if body_value(r, j, n)? > r.head.value(j)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `I` is a fuzzy answer set: `I` satisfies every rule, and no
/// lattice `J < I` satisfies the program with each `not b` replaced by the
/// constant `1 − I(b)`.
pub fn is_answer_set(rules: &[Rule], i: &Interpretation, lattice: Lattice) -> Result<bool> {
    i.check_on_lattice(lattice)?;
    let negs: Vec<Vec<Truth>> = rules
        .iter()
        .map(|r| {
            r.negative
                .iter()
                .map(|t| Ok(t.value(i)?.complement()))
                .collect()
        })
        .collect::<Result<_>>()?;
    if !satisfies_rules(rules, i, &negs)? {
        return Ok(false);
    }
    let sig = i.signature().clone();
    let tops: Vec<u32> = i
        .values()
        .iter()
        .map(|v| lattice.index_of(*v).expect("checked on lattice"))
        .collect();
    let mut digits = alloc::vec![0u32; tops.len()];
    loop {
        if digits == tops {
            return Ok(true);
        }
        let values = digits.iter().map(|&d| lattice.point(d)).collect();
        let j = Interpretation::new(sig.clone(), values);
        if satisfies_rules(rules, &j, &negs)? {
            return Ok(false);
        }
        let mut k = digits.len();
        while k > 0 {
            k -= 1;
            if digits[k] < tops[k] {
                digits[k] += 1;
                break;
            }
            digits[k] = 0;
        }
    }
}

/// All lattice answer sets over `sig` (which must cover the program).
pub fn enumerate_answer_sets(
    rules: &[Rule],
    sig: &Signature,
    lattice: Lattice,
) -> Result<Vec<Interpretation>> {
    let mut out = Vec::new();
    for i in Interpretation::enumerate(sig, lattice) {
        if is_answer_set(rules, &i, lattice)? {
            out.push(i);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;
    use crate::semantics::evaluate;
    use crate::stable::{enumerate_stable_over, MinimizedSet, SearchConfig, Sequential};

    const M: OperatorKind = OperatorKind::MinAnd;

    #[test]
    fn parse_programs() {
        let rules = parse_fasp_program("p <- not q. q <- not p.", M).unwrap();
        assert_eq!(rules.len(), 2);
        assert_eq!(rules[0].negative, [RuleTerm::Atom(Atom::new("q"))]);
        let r = parse_fasp_program("a <- 0.3.", M).unwrap();
        assert_eq!(r[0].positive, [RuleTerm::Const("0.3".parse().unwrap())]);
        let r = parse_fasp_program("a.\n# fact\nb <- a &m not_s c, d.", M).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r[0].positive.is_empty() && r[0].negative.is_empty());
        assert_eq!(r[1].to_string(), "b <- a &m d &m not c.");
    }

    #[test]
    fn rejects_non_normal() {
        for bad in [
            "a | b <- c.",
            "a |l b.",
            "a <- (b &m c).",
            "a <- b &l c.",
            "a <- b |m c.",
            "a <- ~b.",
            "a <- b",
        ] {
            assert!(
                matches!(parse_fasp_program(bad, M), Err(Error::Syntax { .. })),
                "{bad}"
            );
        }
        assert!(parse_fasp_program("a.", OperatorKind::MaxOr).is_err());
    }

    #[test]
    fn translation() {
        let rules = parse_fasp_program("p <- not q. q <- not p.", M).unwrap();
        assert_eq!(
            rule_to_formula(&rules[0]),
            parse_formula("not_s q ->r p").unwrap()
        );
        assert_eq!(
            program_to_formula(&rules, M).unwrap(),
            parse_formula("(not_s q ->r p) &m (not_s p ->r q)").unwrap()
        );
        let r = parse_fasp_program("a.", M).unwrap();
        assert_eq!(rule_to_formula(&r[0]), parse_formula("1 ->r a").unwrap());
        assert_eq!(
            program_to_formula(&r, M).unwrap(),
            parse_formula("1 ->r a").unwrap()
        );
        let r = parse_fasp_program("a <- b, c.", M).unwrap();
        assert_eq!(rule_to_formula(&r[0]).to_string(), "(b &m c) ->r a");
        assert!(program_to_formula(&[], M).is_err());
    }

    #[test]
    fn rule_order_does_not_change_truth_function() {
        let rules = parse_fasp_program("p <- not q. q <- not p.", M).unwrap();
        let swapped = [rules[1].clone(), rules[0].clone()];
        let a = program_to_formula(&rules, M).unwrap();
        let b = program_to_formula(&swapped, M).unwrap();
        assert_ne!(a, b);
        for i in Interpretation::enumerate(&a.signature(), Lattice::new(4).unwrap()) {
            assert_eq!(evaluate(&a, &i).unwrap(), evaluate(&b, &i).unwrap());
        }
    }

    #[test]
    fn answer_sets_match_stable_models() {
        let lattice = Lattice::new(4).unwrap();
        for (text, conj) in [
            ("p <- not q. q <- not p.", M),
            (
                "a <- 0.5. b <- a, not c. c <- not b.",
                OperatorKind::LukasiewiczAnd,
            ),
            ("p <- p. q <- 0.75 &p not p.", OperatorKind::ProductAnd),
        ] {
            let rules = parse_fasp_program(text, conj).unwrap();
            let sig = program_signature(&rules);
            let f = program_to_formula(&rules, conj).unwrap();
            let stable = enumerate_stable_over(
                &f,
                &sig,
                &MinimizedSet::all(&sig),
                Truth::ONE,
                &SearchConfig::exhaustive(lattice),
                &Sequential,
            )
            .unwrap();
            assert_eq!(
                enumerate_answer_sets(&rules, &sig, lattice).unwrap(),
                stable,
                "{text}"
            );
        }
    }
}
