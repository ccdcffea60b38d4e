use core::fmt;

use super::Formula;
use crate::operator::Family;

/// Whether `child`, printed as an operand of the binary operator in
/// `parent`, needs parentheses. Same-operator chains on the left of a
/// conjunction or disjunction print flat; every other binary operand is
/// parenthesized.
fn needs_parens(parent: &Formula, child: &Formula, is_left: bool) -> bool {
    let (Formula::Bin(pop, ..), Formula::Bin(cop, ..)) = (parent, child) else {
        return false;
    };
    let flat = is_left && pop == cop && pop.family() != Family::Implication;
    !flat
}

fn write_operand(
    f: &mut fmt::Formatter<'_>,
    parent: &Formula,
    child: &Formula,
    is_left: bool,
) -> fmt::Result {
    if needs_parens(parent, child, is_left) {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

/// The text form accepted by [`super::parse_formula`]; printing then
/// parsing yields a structurally equal formula.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Const(c) => f.write_str(&c.to_display_string()),
            Formula::StrongNeg(a) => write!(f, "~{a}"),
            Formula::Neg(op, body) => match **body {
                Formula::Bin(..) => write!(f, "{} ({body})", op.token()),
                _ => write!(f, "{} {body}", op.token()),
            },
            Formula::Bin(op, l, r) => {
                write_operand(f, self, l, true)?;
                write!(f, " {} ", op.token())?;
                write_operand(f, self, r, false)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use alloc::string::ToString;

    use super::super::{parse_formula, Atom, Formula};
    use crate::operator::OperatorKind::*;
    use crate::truth::Truth;

    #[test]
    fn canonical_rendering() {
        let f = Formula::bin(
            ResidualImp,
            Formula::not_s(Formula::atom("q")),
            Formula::atom("p"),
        );
        assert_eq!(f.to_string(), "not_s q ->r p");
        assert_eq!(Formula::Const(Truth::new(1, 2).unwrap()).to_string(), "0.5");
        assert_eq!(Formula::Const(Truth::new(1, 3).unwrap()).to_string(), "1/3");
        assert_eq!(Formula::StrongNeg(Atom::new("p")).to_string(), "~p");
    }

    #[test]
    fn parenthesization() {
        for (src, printed) in [
            ("(b &m c) ->r a", "(b &m c) ->r a"),
            ("b &m c ->r a", "(b &m c) ->r a"),
            (
                "(not_s q ->r p) &m (not_s p ->r q)",
                "(not_s q ->r p) &m (not_s p ->r q)",
            ),
            ("a &m b &m c", "a &m b &m c"),
            ("a &m (b &m c)", "a &m (b &m c)"),
            ("a &m b &l c", "(a &m b) &l c"),
            ("0.6 ->r (1 ->r p)", "0.6 ->r (1 ->r p)"),
            ("not_s not_s p ->r p", "not_s not_s p ->r p"),
            ("not_s (p &l np)", "not_s (p &l np)"),
        ] {
            let f = parse_formula(src).unwrap();
            assert_eq!(f.to_string(), printed, "{src}");
            assert_eq!(parse_formula(printed).unwrap(), f);
        }
    }
}
