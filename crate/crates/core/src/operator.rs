//! The registry of fuzzy connectives and exhaustive axiom checks over a
//! lattice.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::truth::{Lattice, Truth};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Family {
    Conjunction,
    Disjunction,
    Negation,
    Implication,
}

/// One of the ten built-in operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum OperatorKind {
    /// `max(x + y - 1, 0)`
    LukasiewiczAnd,
    /// `min(x + y, 1)`
    LukasiewiczOr,
    /// `min(x, y)`
    MinAnd,
    /// `max(x, y)`
    MaxOr,
    /// `x * y`
    ProductAnd,
    /// `x + y - x * y`
    ProductOr,
    /// `1 - x`
    StandardNeg,
    /// `1` if `x <= y`, else `y`
    ResidualImp,
    /// `max(1 - x, y)`
    StandardImp,
    /// `min(1 - x + y, 1)`
    LukasiewiczImp,
}

use OperatorKind::*;

impl OperatorKind {
    pub const ALL: [OperatorKind; 10] = [
        LukasiewiczAnd,
        LukasiewiczOr,
        MinAnd,
        MaxOr,
        ProductAnd,
        ProductOr,
        StandardNeg,
        ResidualImp,
        StandardImp,
        LukasiewiczImp,
    ];

    pub const CONJUNCTIONS: [OperatorKind; 3] = [LukasiewiczAnd, MinAnd, ProductAnd];
    pub const DISJUNCTIONS: [OperatorKind; 3] = [LukasiewiczOr, MaxOr, ProductOr];
    pub const IMPLICATIONS: [OperatorKind; 3] = [ResidualImp, StandardImp, LukasiewiczImp];

    pub fn family(self) -> Family {
        match self {
            LukasiewiczAnd | MinAnd | ProductAnd => Family::Conjunction,
            LukasiewiczOr | MaxOr | ProductOr => Family::Disjunction,
            StandardNeg => Family::Negation,
            ResidualImp | StandardImp | LukasiewiczImp => Family::Implication,
        }
    }

    pub fn arity(self) -> usize {
        if self.family() == Family::Negation {
            1
        } else {
            2
        }
    }

    /// Concrete syntax used by the parser and printer.
    pub fn token(self) -> &'static str {
        match self {
            LukasiewiczAnd => "&l",
            LukasiewiczOr => "|l",
            MinAnd => "&m",
            MaxOr => "|m",
            ProductAnd => "&p",
            ProductOr => "|p",
            StandardNeg => "not_s",
            ResidualImp => "->r",
            StandardImp => "->s",
            LukasiewiczImp => "->l",
        }
    }

    pub fn from_token(token: &str) -> Option<OperatorKind> {
        Self::ALL.into_iter().find(|k| k.token() == token)
    }

    /// Mathematical symbol, e.g. `⊗_l`.
    pub fn symbol(self) -> &'static str {
        match self {
            LukasiewiczAnd => "⊗_l",
            LukasiewiczOr => "⊕_l",
            MinAnd => "⊗_m",
            MaxOr => "⊕_m",
            ProductAnd => "⊗_p",
            ProductOr => "⊕_p",
            StandardNeg => "¬_s",
            ResidualImp => "→_r",
            StandardImp => "→_s",
            LukasiewiczImp => "→_l",
        }
    }

    /// Whether `→(x, y) = 1 ⇔ y ≥ x` holds on all of `[0, 1]`. Known
    /// analytically for the closed operator set; [`residual_condition`]
    /// verifies it on a lattice.
    pub fn is_residual(self) -> bool {
        matches!(self, ResidualImp | LukasiewiczImp)
    }

    /// Whether the operator maps every lattice into itself. The product
    /// operators do not (`0.5 * 0.5` is not on the `D = 2` lattice).
    pub fn preserves_lattices(self) -> bool {
        !matches!(self, ProductAnd | ProductOr)
    }

    pub fn apply1(self, x: Truth) -> Result<Truth> {
        match self {
            StandardNeg => Ok(x.complement()),
            _ => Err(self.arity_error(1)),
        }
    }

    pub fn apply2(self, x: Truth, y: Truth) -> Result<Truth> {
        match self {
            LukasiewiczAnd => x.lukasiewicz_and(y),
            LukasiewiczOr => x.lukasiewicz_or(y),
            MinAnd => Ok(x.min(y)),
            MaxOr => Ok(x.max(y)),
            ProductAnd => x.checked_mul(y),
            ProductOr => x.probabilistic_sum(y),
            ResidualImp => Ok(if x <= y { Truth::ONE } else { y }),
            StandardImp => Ok(x.complement().max(y)),
            LukasiewiczImp => x.lukasiewicz_implication(y),
            StandardNeg => Err(self.arity_error(2)),
        }
    }

    /// Applies the operator to an argument list whose length must match
    /// the arity.
    pub fn apply(self, args: &[Truth]) -> Result<Truth> {
        match *args {
            [x] if self.arity() == 1 => self.apply1(x),
            [x, y] if self.arity() == 2 => self.apply2(x, y),
            _ => Err(self.arity_error(args.len())),
        }
    }

    fn arity_error(self, got: usize) -> Error {
        Error::Arity {
            operator: self.symbol(),
            expected: self.arity(),
            got,
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `op_apply`: free-function form of [`OperatorKind::apply`].
pub fn op_apply(kind: OperatorKind, args: &[Truth]) -> Result<Truth> {
    kind.apply(args)
}

/// One failed instance of an operator axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub property: &'static str,
    pub args: Vec<Truth>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub family: Family,
    pub denominator: u32,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively checks the family axioms of `kind` over all lattice points.
pub fn check_axioms(kind: OperatorKind, lattice: Lattice) -> AxiomReport {
    check_family_axioms(kind.family(), lattice, |args| kind.apply(args))
}

/// Axiom check for an arbitrary function claimed to belong to `family`.
///
/// Negation: decreasing, `¬0 = 1`, `¬1 = 0`. Conjunction: increasing,
/// commutative, associative, `⊗(1,x) = x`. Disjunction: same with
/// `⊕(0,x) = x`. Implication: decreasing in the first argument, increasing
/// in the second, `→(1,x) = x`, `→(0,0) = 1`.
pub fn check_family_axioms<F>(family: Family, lattice: Lattice, op: F) -> AxiomReport
where
    F: Fn(&[Truth]) -> Result<Truth>,
{
    let pts: Vec<Truth> = lattice.points().collect();
    let mut violations = Vec::new();
    let mut fail = |property: &'static str, args: &[Truth]| {
        violations.push(Violation {
            property,
            args: args.to_vec(),
        })
    };
    // Evaluation errors (overflow) count as violations of totality.
    let f1 = |x: Truth| op(&[x]).ok();
    let f2 = |x: Truth, y: Truth| op(&[x, y]).ok();

    match family {
        Family::Negation => {
            if f1(Truth::ZERO) != Some(Truth::ONE) {
                fail("neg(0) = 1", &[Truth::ZERO]);
            }
            if f1(Truth::ONE) != Some(Truth::ZERO) {
                fail("neg(1) = 0", &[Truth::ONE]);
            }
            for &x in &pts {
                for &x2 in pts.iter().filter(|&&x2| x2 >= x) {
                    match (f1(x), f1(x2)) {
                        (Some(a), Some(b)) if a >= b => {}
                        _ => fail("decreasing", &[x, x2]),
                    }
                }
            }
        }
        Family::Conjunction | Family::Disjunction => {
            let (unit, unit_name) = if family == Family::Conjunction {
                (Truth::ONE, "op(1, x) = x")
            } else {
                (Truth::ZERO, "op(0, x) = x")
            };
            for &x in &pts {
                if f2(unit, x) != Some(x) {
                    fail(unit_name, &[x]);
                }
                for &y in &pts {
                    if f2(x, y) != f2(y, x) {
                        fail("commutative", &[x, y]);
                    }
                    for &y2 in pts.iter().filter(|&&y2| y2 >= y) {
                        match (f2(x, y), f2(x, y2)) {
                            (Some(a), Some(b)) if a <= b => {}
                            _ => fail("increasing", &[x, y, y2]),
                        }
                    }
                    for &z in &pts {
                        let left = f2(x, y).and_then(|xy| f2(xy, z));
                        let right = f2(y, z).and_then(|yz| f2(x, yz));
                        if left.is_none() || left != right {
                            fail("associative", &[x, y, z]);
                        }
                    }
                }
            }
        }
        Family::Implication => {
            if f2(Truth::ZERO, Truth::ZERO) != Some(Truth::ONE) {
                fail("imp(0, 0) = 1", &[Truth::ZERO, Truth::ZERO]);
            }
            for &x in &pts {
                if f2(Truth::ONE, x) != Some(x) {
                    fail("imp(1, x) = x", &[x]);
                }
                for &y in &pts {
                    for &x2 in pts.iter().filter(|&&x2| x2 >= x) {
                        match (f2(x, y), f2(x2, y)) {
                            (Some(a), Some(b)) if a >= b => {}
                            _ => fail("decreasing in first argument", &[x, x2, y]),
                        }
                    }
                    for &y2 in pts.iter().filter(|&&y2| y2 >= y) {
                        match (f2(x, y), f2(x, y2)) {
                            (Some(a), Some(b)) if a <= b => {}
                            _ => fail("increasing in second argument", &[x, y, y2]),
                        }
                    }
                }
            }
        }
    }
    AxiomReport {
        family,
        denominator: lattice.denominator(),
        violations,
    }
}

/// Whether `→(x, y) = 1 ⇔ y ≥ x` for all lattice points. This is the side
/// condition for replacing `y`-stability by `1`-stability of `y → F`.
pub fn residual_condition(kind: OperatorKind, lattice: Lattice) -> Result<bool> {
    if kind.family() != Family::Implication {
        return Err(Error::Usage(alloc::format!(
            "residual condition is defined for implications only, not {kind}"
        )));
    }
    for x in lattice.points() {
        for y in lattice.points() {
            if kind.apply2(x, y)?.is_one() != (y >= x) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `kind` maps lattice points to lattice points.
pub fn is_closed(kind: OperatorKind, lattice: Lattice) -> Result<bool> {
    let pts: Vec<Truth> = lattice.points().collect();
    let argsets: Vec<Vec<Truth>> = if kind.arity() == 1 {
        pts.iter().map(|&x| vec![x]).collect()
    } else {
        pts.iter()
            .flat_map(|&x| pts.iter().map(move |&y| vec![x, y]))
            .collect()
    };
    for args in argsets {
        if !lattice.contains(kind.apply(&args)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Truth {
        s.parse().unwrap()
    }

    fn lat(d: u32) -> Lattice {
        Lattice::new(d).unwrap()
    }

    #[test]
    fn figure_values() {
        assert_eq!(
            op_apply(LukasiewiczAnd, &[t("0.8"), t("0.7")]).unwrap(),
            t("0.5")
        );
        assert_eq!(
            op_apply(ProductAnd, &[t("0.8"), t("0.7")]).unwrap(),
            t("0.56")
        );
        assert_eq!(op_apply(StandardNeg, &[Truth::ZERO]).unwrap(), Truth::ONE);
        for x in lat(10).points() {
            assert_eq!(op_apply(ResidualImp, &[x, x]).unwrap(), Truth::ONE);
        }
        assert_eq!(
            op_apply(LukasiewiczOr, &[t("0.8"), t("0.7")]).unwrap(),
            Truth::ONE
        );
        assert_eq!(
            op_apply(ProductOr, &[t("0.5"), t("0.5")]).unwrap(),
            t("0.75")
        );
        assert_eq!(
            op_apply(StandardImp, &[t("0.3"), t("0.2")]).unwrap(),
            t("0.7")
        );
        assert_eq!(
            op_apply(LukasiewiczImp, &[t("0.6"), t("0.2")]).unwrap(),
            t("0.6")
        );
        assert_eq!(
            op_apply(ResidualImp, &[t("0.6"), t("0.2")]).unwrap(),
            t("0.2")
        );
    }

    #[test]
    fn arity_mismatch_is_usage_error() {
        assert!(matches!(
            op_apply(StandardNeg, &[Truth::ONE, Truth::ONE]),
            Err(Error::Arity {
                expected: 1,
                got: 2,
                ..
            })
        ));
        assert!(matches!(
            op_apply(MinAnd, &[Truth::ONE]),
            Err(Error::Arity { .. })
        ));
        assert!(op_apply(MinAnd, &[]).is_err());
    }

    #[test]
    fn tokens_round_trip() {
        for k in OperatorKind::ALL {
            assert_eq!(OperatorKind::from_token(k.token()), Some(k));
        }
    }

    #[test]
    fn builtin_operators_satisfy_axioms() {
        for k in OperatorKind::ALL {
            let report = check_axioms(k, lat(10));
            assert!(report.holds(), "{k}: {:?}", report.violations);
        }
    }

    #[test]
    fn broken_operator_is_reported() {
        // x - y clamped: not commutative, no unit.
        let report = check_family_axioms(Family::Conjunction, lat(4), |a| {
            Ok(if a[0] > a[1] {
                Truth::new(
                    a[0].numer() * a[1].denom() - a[1].numer() * a[0].denom(),
                    a[0].denom() * a[1].denom(),
                )?
            } else {
                Truth::ZERO
            })
        });
        assert!(!report.holds());
        assert!(report
            .violations
            .iter()
            .any(|v| v.property == "commutative"));
        assert!(report
            .violations
            .iter()
            .any(|v| v.property == "op(1, x) = x"));
    }

    /// Integer model of the implicators on the lattice `k/D`, independent of
    /// the rational arithmetic.
    fn imp_num(kind: OperatorKind, d: i64, x: i64, y: i64) -> i64 {
        match kind {
            ResidualImp => {
                if x <= y {
                    d
                } else {
                    y
                }
            }
            StandardImp => (d - x).max(y),
            LukasiewiczImp => (d - x + y).min(d),
            _ => unreachable!(),
        }
    }

    #[test]
    fn standard_implication_axioms_by_integer_oracle() {
        let d = 10;
        for x in 0..=d {
            assert_eq!(imp_num(StandardImp, d, d, x), x);
            for y in 0..=d {
                for x2 in x..=d {
                    assert!(imp_num(StandardImp, d, x, y) >= imp_num(StandardImp, d, x2, y));
                }
                for y2 in y..=d {
                    assert!(imp_num(StandardImp, d, x, y) <= imp_num(StandardImp, d, x, y2));
                }
                // and the rational implementation agrees pointwise
                let got = StandardImp
                    .apply2(lat(10).point(x as u32), lat(10).point(y as u32))
                    .unwrap();
                assert_eq!(
                    got,
                    Truth::new(imp_num(StandardImp, d, x, y) as i128, d as i128).unwrap()
                );
            }
        }
        assert_eq!(imp_num(StandardImp, d, 0, 0), d);
        assert!(check_axioms(StandardImp, lat(10)).holds());
    }

    #[test]
    fn residual_condition_matches_oracle() {
        for kind in OperatorKind::IMPLICATIONS {
            for d in 1..=12i64 {
                let oracle =
                    (0..=d).all(|x| (0..=d).all(|y| (imp_num(kind, d, x, y) == d) == (y >= x)));
                assert_eq!(
                    residual_condition(kind, lat(d as u32)).unwrap(),
                    oracle,
                    "{kind} D={d}"
                );
                if d >= 2 {
                    assert_eq!(kind.is_residual(), oracle, "{kind} D={d}");
                }
            }
        }
        assert!(residual_condition(ResidualImp, lat(4)).unwrap());
        assert!(!residual_condition(StandardImp, lat(10)).unwrap());
        assert!(residual_condition(LukasiewiczImp, lat(10)).unwrap());
        assert!(residual_condition(MinAnd, lat(4)).is_err());
    }

    #[test]
    fn tnorm_bounds_and_unit() {
        for k in OperatorKind::CONJUNCTIONS {
            for x in lat(10).points() {
                for y in lat(10).points() {
                    let v = k.apply2(x, y).unwrap();
                    assert!(v <= x && v <= y);
                    assert_eq!(v.is_one(), x.is_one() && y.is_one());
                }
            }
        }
    }

    #[test]
    fn closure_exactly_where_claimed() {
        for k in OperatorKind::ALL {
            for d in [1, 2, 4, 10] {
                let closed = is_closed(k, lat(d)).unwrap();
                if k.preserves_lattices() {
                    assert!(closed, "{k} D={d}");
                }
            }
        }
        assert!(!is_closed(ProductAnd, lat(2)).unwrap());
        assert!(!is_closed(ProductOr, lat(2)).unwrap());
        assert!(is_closed(ProductAnd, lat(1)).unwrap());
    }
}
