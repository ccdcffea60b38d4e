use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Atom, Formula};
use crate::error::{Error, Result};
use crate::operator::{Family, OperatorKind};
use crate::truth::Truth;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Number(String),
    Op(OperatorKind),
    /// `not` (FASP negative literal)
    Not,
    Tilde,
    LParen,
    RParen,
    Comma,
    Dot,
    /// `<-`
    Arrow,
    /// a bare `|`
    Bar,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Op(k) => format!("operator `{}`", k.token()),
            Tok::Not => "`not`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Arrow => "`<-`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub(crate) fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, column, message: String| Error::Syntax {
        line,
        column,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let mut push = |tok: Tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned {
                tok,
                line: start_line,
                column: start_col,
            });
            *i += width;
            *col += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            '~' => push(Tok::Tilde, 1, &mut i, &mut col),
            '&' | '|' => {
                let next = chars.get(i + 1).copied();
                let tok: String = [c].into_iter().chain(next).collect();
                match OperatorKind::from_token(&tok) {
                    Some(k) => push(Tok::Op(k), 2, &mut i, &mut col),
                    None if c == '|' => push(Tok::Bar, 1, &mut i, &mut col),
                    None => return Err(err(line, col, "`&` must be followed by l, m or p".into())),
                }
            }
            '-' => {
                let tok: String = chars[i..chars.len().min(i + 3)].iter().collect();
                match OperatorKind::from_token(&tok) {
                    Some(k) => push(Tok::Op(k), 3, &mut i, &mut col),
                    None => {
                        return Err(err(
                            line,
                            col,
                            "expected an implication `->r`, `->s` or `->l`".into(),
                        ))
                    }
                }
            }
            '<' if chars.get(i + 1) == Some(&'-') => push(Tok::Arrow, 2, &mut i, &mut col),
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j + 1 < chars.len() && chars[j] == '.' && chars[j + 1].is_ascii_digit() {
                    j += 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                if j + 1 < chars.len() && chars[j] == '/' && chars[j + 1].is_ascii_digit() {
                    j += 1;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                let s: String = chars[i..j].iter().collect();
                push(Tok::Number(s), j - i, &mut i, &mut col);
            }
            c if is_ident_start(c) => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                let tok = match s.as_str() {
                    "not_s" => Tok::Op(OperatorKind::StandardNeg),
                    "not" => Tok::Not,
                    _ => Tok::Ident(s),
                };
                push(tok, j - i, &mut i, &mut col);
            }
            other => return Err(err(line, col, format!("unexpected character `{other}`"))),
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// Whether `name` prints as a single atom token that parses back to itself.
pub fn is_valid_atom_name(name: &str) -> bool {
    let Ok(toks) = lex(name) else { return false };
    let mut p = Parser { toks, pos: 0 };
    matches!(p.atom_name(), Ok(Some(n)) if n == name) && p.peek().tok == Tok::Eof
}

pub(crate) struct Parser {
    pub toks: Vec<Spanned>,
    pub pos: usize,
}

impl Parser {
    pub fn new(text: &str) -> Result<Parser> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
        })
    }

    pub fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    pub fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    pub fn error_here(&self, message: impl Into<String>) -> Error {
        let t = self.peek();
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    pub fn unexpected(&self, expected: &str) -> Error {
        let found = self.peek().tok.describe();
        self.error_here(format!("expected {expected}, found {found}"))
    }

    pub fn expect(&mut self, tok: Tok, expected: &str) -> Result<()> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    /// `name` or `name(arg, ..., arg)` with identifier or integer arguments.
    pub fn atom_name(&mut self) -> Result<Option<String>> {
        let Tok::Ident(name) = &self.peek().tok else {
            return Ok(None);
        };
        let mut name = name.clone();
        self.bump();
        if self.peek().tok == Tok::LParen {
            self.bump();
            name.push('(');
            loop {
                match self.peek().tok.clone() {
                    Tok::Ident(a) => name.push_str(&a),
                    Tok::Number(n) if n.bytes().all(|b| b.is_ascii_digit()) => name.push_str(&n),
                    _ => return Err(self.unexpected("an identifier or integer argument")),
                }
                self.bump();
                match self.peek().tok {
                    Tok::Comma => {
                        self.bump();
                        name.push(',');
                    }
                    Tok::RParen => {
                        self.bump();
                        name.push(')');
                        break;
                    }
                    _ => return Err(self.unexpected("`,` or `)`")),
                }
            }
        }
        Ok(Some(name))
    }

    pub fn number(&mut self) -> Result<Option<Truth>> {
        let Tok::Number(n) = &self.peek().tok else {
            return Ok(None);
        };
        let value = n
            .parse::<Truth>()
            .map_err(|_| self.error_here(format!("numeric constant `{n}` is not in [0,1]")))?;
        self.bump();
        Ok(Some(value))
    }

    pub fn formula(&mut self) -> Result<Formula> {
        self.implication()
    }

    fn binary_op(&self, family: Family) -> Option<OperatorKind> {
        match self.peek().tok {
            Tok::Op(k) if k.family() == family => Some(k),
            _ => None,
        }
    }

    fn implication(&mut self) -> Result<Formula> {
        let left = self.disjunction()?;
        if let Some(op) = self.binary_op(Family::Implication) {
            self.bump();
            let right = self.implication()?;
            return Ok(Formula::Bin(op, Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut left = self.conjunction()?;
        while let Some(op) = self.binary_op(Family::Disjunction) {
            self.bump();
            let right = self.conjunction()?;
            left = Formula::Bin(op, Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while let Some(op) = self.binary_op(Family::Conjunction) {
            self.bump();
            let right = self.unary()?;
            left = Formula::Bin(op, Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().tok {
            Tok::Op(k) if k.family() == Family::Negation => {
                self.bump();
                let body = self.unary()?;
                Ok(Formula::Neg(k, Box::new(body)))
            }
            Tok::Tilde => {
                let tilde = self.bump();
                match self.atom_name()? {
                    Some(name) => Ok(Formula::StrongNeg(Atom::new(&name))),
                    None => Err(Error::StrongNegOnNonAtom {
                        line: tilde.line,
                        column: tilde.column,
                    }),
                }
            }
            Tok::Not => Err(self.error_here("`not` is only used in programs; write `not_s`")),
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        if let Some(v) = self.number()? {
            return Ok(Formula::Const(v));
        }
        if let Some(name) = self.atom_name()? {
            return Ok(Formula::Atom(Atom::new(&name)));
        }
        if self.peek().tok == Tok::LParen {
            self.bump();
            let inner = self.formula()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(inner);
        }
        Err(self.unexpected("an atom, a constant, `not_s`, `~` or `(`"))
    }
}

/// Parses one formula. Precedence from tightest: `not_s` and `~`, then
/// conjunctions (left-assoc), disjunctions (left-assoc), implications
/// (right-assoc).
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(f)
}

impl core::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        parse_formula(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::OperatorKind::*;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    fn c(s: &str) -> Formula {
        Formula::Const(s.parse().unwrap())
    }

    #[test]
    fn negated_antecedent() {
        let f = parse_formula("not_s q ->r p").unwrap();
        assert_eq!(f, Formula::bin(ResidualImp, Formula::not_s(a("q")), a("p")));
    }

    #[test]
    fn nested_implication() {
        let f = parse_formula("0.6 ->r (1 ->r p)").unwrap();
        assert_eq!(
            f,
            Formula::bin(
                ResidualImp,
                c("0.6"),
                Formula::bin(ResidualImp, c("1"), a("p"))
            )
        );
        // right-associative without parentheses as well
        assert_eq!(parse_formula("0.6 ->r 1 ->r p").unwrap(), f);
    }

    #[test]
    fn precedence_table() {
        let f = parse_formula("a &m b |l c ->s d").unwrap();
        let expected = Formula::bin(
            StandardImp,
            Formula::bin(LukasiewiczOr, Formula::bin(MinAnd, a("a"), a("b")), a("c")),
            a("d"),
        );
        assert_eq!(f, expected);
        let g = parse_formula("a &l b &p c").unwrap();
        assert_eq!(
            g,
            Formula::bin(
                ProductAnd,
                Formula::bin(LukasiewiczAnd, a("a"), a("b")),
                a("c")
            )
        );
        let h = parse_formula("not_s a &m b").unwrap();
        assert_eq!(h, Formula::bin(MinAnd, Formula::not_s(a("a")), a("b")));
    }

    #[test]
    fn comments_and_multiline() {
        let f = parse_formula("# header\n(p &m q) # trailing\n ->r\n r\n").unwrap();
        assert_eq!(
            f,
            Formula::bin(ResidualImp, Formula::bin(MinAnd, a("p"), a("q")), a("r"))
        );
    }

    #[test]
    fn fractions_and_ground_atoms() {
        let f = parse_formula("14/25 ->r trust(alice, carol, 0)").unwrap();
        assert_eq!(
            f,
            Formula::bin(ResidualImp, c("0.56"), a("trust(alice,carol,0)"))
        );
        assert!(is_valid_atom_name("trust(alice,carol,0)"));
        assert!(!is_valid_atom_name("not_s"));
        assert!(!is_valid_atom_name("a b"));
    }

    #[test]
    fn unbalanced_parenthesis() {
        let err = parse_formula("(p").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Syntax {
                    line: 1,
                    column: 3,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn strong_negation_needs_atom() {
        assert!(matches!(
            parse_formula("p &m ~(q &m r)").unwrap_err(),
            Error::StrongNegOnNonAtom { line: 1, column: 6 }
        ));
        assert!(matches!(
            parse_formula("~not_s p").unwrap_err(),
            Error::StrongNegOnNonAtom { .. }
        ));
        assert_eq!(
            parse_formula("~p").unwrap(),
            Formula::StrongNeg(Atom::new("p"))
        );
    }

    #[test]
    fn error_positions() {
        match parse_formula("p &m\n  q ->x r").unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (2, 5)),
            e => panic!("{e:?}"),
        }
        assert!(parse_formula("p q").is_err());
        assert!(parse_formula("1.5 ->r p").is_err());
        assert!(parse_formula("p & q").is_err());
        assert!(parse_formula("").is_err());
    }
}
