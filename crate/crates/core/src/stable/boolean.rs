//! Classical stable models via the classical reduct, used as an oracle for
//! the fuzzy engine on Boolean-shaped formulas.

use alloc::vec::Vec;

use super::{MinimizedSet, Status, DEFAULT_MAX_CANDIDATES};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::interp::BoolInterpretation;
use crate::semantics::{bool_satisfies, check_boolean_shape, classical_reduct};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolVerdict {
    pub status: Status,
    /// A proper subset of `X` (changed only inside **p**) satisfying `F^X`.
    pub witness: Option<BoolInterpretation>,
}

/// Whether `X` is a minimal set satisfying `F^X` among the sets that agree
/// with `X` outside **p**.
pub fn boolean_stable_check(
    f: &Formula,
    x: &BoolInterpretation,
    p: &MinimizedSet,
) -> Result<BoolVerdict> {
    check_boolean_shape(f)?;
    p.check_within(x.signature())?;
    if !bool_satisfies(f, x)? {
        return Ok(BoolVerdict {
            status: Status::NotAModel,
            witness: None,
        });
    }
    let reduct = classical_reduct(f, x)?;
    let lowerable: Vec<usize> = x
        .signature()
        .iter()
        .enumerate()
        .filter(|(k, a)| x.bits()[*k] && p.contains(a.as_str()))
        .map(|(k, _)| k)
        .collect();
    let n = lowerable.len();
    if n >= 64 || (1u64 << n) > DEFAULT_MAX_CANDIDATES {
        return Err(Error::ResourceLimit {
            candidates: 1u128 << n.min(127),
            cap: DEFAULT_MAX_CANDIDATES,
        });
    }
    // Subsets in counting order, first lowerable atom most significant;
    // the full mask is X itself.
    for mask in 0..(1u64 << n) - 1 {
        let mut bits = x.bits().to_vec();
        for (b, &k) in lowerable.iter().enumerate() {
            bits[k] = mask >> (n - 1 - b) & 1 == 1;
        }
        let y = BoolInterpretation::new(x.signature().clone(), bits);
        if bool_satisfies(&reduct, &y)? {
            return Ok(BoolVerdict {
                status: Status::Unstable,
                witness: Some(y),
            });
        }
    }
    Ok(BoolVerdict {
        status: Status::Stable,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula, Signature};

    fn check(text: &str, atoms: &[&str], true_atoms: &[&str]) -> BoolVerdict {
        let f = parse_formula(text).unwrap();
        let sig = Signature::from_names(atoms.iter().copied());
        let x = BoolInterpretation::from_true_atoms(&sig, true_atoms.iter().copied()).unwrap();
        boolean_stable_check(&f, &x, &MinimizedSet::all(&sig)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            check("not_s q ->s p", &["p", "q"], &["p"]).status,
            Status::Stable
        );
        assert_eq!(
            check("not_s q ->s p", &["p", "q"], &["q"]).status,
            Status::Unstable
        );
        assert_eq!(
            check("not_s q ->s p", &["p", "q"], &["p", "q"]).status,
            Status::Unstable
        );
        assert_eq!(check("p |m p", &["p"], &["p"]).status, Status::Stable);
        assert_eq!(check("p", &["p"], &[]).status, Status::NotAModel);
        let v = check("p ->s p", &["p"], &["p"]);
        assert_eq!(v.status, Status::Unstable);
        assert_eq!(v.witness.unwrap().to_string(), "{}");
    }
}
