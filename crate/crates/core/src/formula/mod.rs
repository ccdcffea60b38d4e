//! Fuzzy propositional formulas: the AST, signatures, the text grammar and
//! the printer.

pub(crate) mod parse;
mod print;

pub use parse::{is_valid_atom_name, parse_formula};

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;

use crate::operator::{Family, OperatorKind};
use crate::truth::Truth;

/// An atom name. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Atom {
        Atom(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Atom {
    fn from(s: &str) -> Atom {
        Atom::new(s)
    }
}

impl Borrow<str> for Atom {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Atom),
    Const(Truth),
    /// Strong negation `~a`; atoms only.
    StrongNeg(Atom),
    /// A negator applied to a subformula.
    Neg(OperatorKind, Box<Formula>),
    /// A conjunction, disjunction or implication.
    Bin(OperatorKind, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name))
    }

    pub fn constant(value: Truth) -> Formula {
        Formula::Const(value)
    }

    /// Panics if `op` is not a negator.
    pub fn neg(op: OperatorKind, body: Formula) -> Formula {
        assert_eq!(op.family(), Family::Negation, "{op} is not a negator");
        Formula::Neg(op, Box::new(body))
    }

    /// `¬_s body`
    pub fn not_s(body: Formula) -> Formula {
        Formula::neg(OperatorKind::StandardNeg, body)
    }

    /// Panics if `op` is a negator.
    pub fn bin(op: OperatorKind, left: Formula, right: Formula) -> Formula {
        assert_ne!(op.family(), Family::Negation, "{op} is not binary");
        Formula::Bin(op, Box::new(left), Box::new(right))
    }

    /// Left-associated fold of `parts` with `op`; `None` when empty.
    pub fn fold(op: OperatorKind, parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts
            .into_iter()
            .reduce(|acc, next| Formula::bin(op, acc, next))
    }

    /// Atoms in order of first occurrence (left to right), without
    /// duplicates. Strongly negated atoms count.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Atom(a) | Formula::StrongNeg(a) = f {
                if seen.insert(a.clone()) {
                    out.push(a.clone());
                }
            }
        });
        out
    }

    /// The sorted signature of all atoms occurring in the formula.
    pub fn signature(&self) -> Signature {
        Signature::new(self.atoms())
    }

    pub fn contains_strong_negation(&self) -> bool {
        let mut found = false;
        self.visit(&mut |f| found |= matches!(f, Formula::StrongNeg(_)));
        found
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Const(_) | Formula::StrongNeg(_) => 1,
            Formula::Neg(_, b) => 1 + b.depth(),
            Formula::Bin(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Neg(_, b) => b.visit(f),
            Formula::Bin(_, l, r) => {
                l.visit(f);
                r.visit(f);
            }
            _ => {}
        }
    }

    /// Rebuilds the formula bottom-up, replacing atoms via `on_atom`.
    pub fn map_atoms(&self, on_atom: &mut impl FnMut(&Atom, bool) -> Formula) -> Formula {
        match self {
            Formula::Atom(a) => on_atom(a, false),
            Formula::StrongNeg(a) => on_atom(a, true),
            Formula::Const(c) => Formula::Const(*c),
            Formula::Neg(op, b) => Formula::Neg(*op, Box::new(b.map_atoms(on_atom))),
            Formula::Bin(op, l, r) => Formula::Bin(
                *op,
                Box::new(l.map_atoms(on_atom)),
                Box::new(r.map_atoms(on_atom)),
            ),
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({self})")
    }
}

/// An ordered set of atoms. Ordering is lexicographic by name; it fixes the
/// scan order of every search.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    atoms: Arc<[Atom]>,
}

impl Signature {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Signature {
        let set: BTreeSet<Atom> = atoms.into_iter().collect();
        Signature {
            atoms: set.into_iter().collect(),
        }
    }

    pub fn from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Signature {
        Signature::new(names.into_iter().map(Atom::new))
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.atoms.binary_search_by(|a| a.as_str().cmp(name)).ok()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub fn union(&self, other: &Signature) -> Signature {
        Signature::new(self.atoms.iter().chain(other.atoms.iter()).cloned())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.atoms.iter()
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.atoms.iter()).finish()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_in_first_occurrence_order() {
        let f = parse_formula("q &m ~p ->r (q |l r)").unwrap();
        let names: Vec<_> = f.atoms().iter().map(|a| a.to_string()).collect();
        assert_eq!(names, ["q", "p", "r"]);
        let sig = f.signature();
        assert_eq!(
            sig.atoms().iter().map(Atom::as_str).collect::<Vec<_>>(),
            ["p", "q", "r"]
        );
        assert_eq!(sig.index_of("q"), Some(1));
        assert!(f.contains_strong_negation());
        assert_eq!(f.size(), 7);
        assert_eq!(f.depth(), 3);
    }

    #[test]
    #[should_panic]
    fn bin_rejects_negator() {
        Formula::bin(
            OperatorKind::StandardNeg,
            Formula::atom("p"),
            Formula::atom("q"),
        );
    }
}
