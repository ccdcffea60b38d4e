use fuzzystable_core::operator::{check_axioms, is_closed};
use fuzzystable_core::semantics::{evaluate, fuzzy_reduct, satisfies, ReductMode};
use fuzzystable_core::stable::{check_stable, leq_p, MinimizedSet, SearchConfig, Status};
use fuzzystable_core::transforms::{choice, nneg};
use fuzzystable_core::{
    parse_formula, Formula, Interpretation, Lattice, OperatorKind, Signature, Truth,
};
use proptest::prelude::*;

const D: u32 = 4;

fn lattice() -> Lattice {
    Lattice::new(D).unwrap()
}

fn sig() -> Signature {
    Signature::from_names(["p", "q", "r"])
}

fn leaf(strong: bool) -> BoxedStrategy<Formula> {
    let atom = prop::sample::select(vec!["p", "q", "r"]).prop_map(Formula::atom);
    let constant = (0..=D).prop_map(|k| Formula::Const(lattice().point(k)));
    if strong {
        let sn =
            prop::sample::select(vec!["p", "q", "r"]).prop_map(|a| Formula::StrongNeg(a.into()));
        prop_oneof![3 => atom, 1 => constant, 1 => sn].boxed()
    } else {
        prop_oneof![3 => atom, 1 => constant].boxed()
    }
}

fn formula_with(strong: bool, ops: Vec<OperatorKind>) -> impl Strategy<Value = Formula> {
    leaf(strong).prop_recursive(4, 24, 2, move |inner| {
        let binary: Vec<OperatorKind> = ops.iter().copied().filter(|o| o.arity() == 2).collect();
        prop_oneof![
            1 => inner.clone().prop_map(Formula::not_s),
            4 => (prop::sample::select(binary), inner.clone(), inner)
                .prop_map(|(op, l, r)| Formula::bin(op, l, r)),
        ]
    })
}

/// Lattice-preserving operators only, so reducts stay on the lattice.
fn formula() -> impl Strategy<Value = Formula> {
    let ops = OperatorKind::ALL
        .into_iter()
        .filter(|o| o.preserves_lattices())
        .collect();
    formula_with(false, ops)
}

fn any_formula() -> impl Strategy<Value = Formula> {
    formula_with(true, OperatorKind::ALL.to_vec())
}

fn interp() -> impl Strategy<Value = Interpretation> {
    prop::collection::vec(0..=D, 3).prop_map(|ks| {
        Interpretation::new(sig(), ks.into_iter().map(|k| lattice().point(k)).collect())
    })
}

/// An interpretation below `i` on every atom.
fn below(i: &Interpretation, ks: &[u32]) -> Interpretation {
    let values = i
        .values()
        .iter()
        .zip(ks)
        .map(|(v, k)| {
            let top = lattice().index_of(*v).unwrap();
            lattice().point(k % (top + 1))
        })
        .collect();
    Interpretation::new(i.signature().clone(), values)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn print_parse_round_trip(f in any_formula()) {
        let printed = f.to_string();
        prop_assert_eq!(parse_formula(&printed).unwrap(), f);
    }

    #[test]
    fn reduct_keeps_value(f in formula(), i in interp()) {
        let v = evaluate(&f, &i).unwrap();
        for mode in [ReductMode::Simplified, ReductMode::Full] {
            prop_assert_eq!(evaluate(&fuzzy_reduct(&f, &i, mode).unwrap(), &i).unwrap(), v);
        }
    }

    #[test]
    fn reduct_is_monotone_below(f in formula(), i in interp(), ks in prop::collection::vec(0u32..=D, 3)) {
        let j = below(&i, &ks);
        prop_assert!(leq_p(&j, &i, &MinimizedSet::all(&sig())).unwrap());
        let full = fuzzy_reduct(&f, &i, ReductMode::Full).unwrap();
        let simple = fuzzy_reduct(&f, &i, ReductMode::Simplified).unwrap();
        let vj = evaluate(&full, &j).unwrap();
        prop_assert!(vj <= evaluate(&f, &i).unwrap());
        prop_assert_eq!(vj, evaluate(&simple, &j).unwrap());
    }

    #[test]
    fn model_iff_model_of_reduct(f in formula(), i in interp()) {
        let r = fuzzy_reduct(&f, &i, ReductMode::Simplified).unwrap();
        prop_assert_eq!(
            satisfies(&f, &i, Truth::ONE).unwrap(),
            satisfies(&r, &i, Truth::ONE).unwrap()
        );
    }

    #[test]
    fn empty_minimized_set_means_model(f in formula(), i in interp(), yk in 0..=D) {
        let y = lattice().point(yk);
        let v = check_stable(&f, &i, &MinimizedSet::empty(), y, &SearchConfig::exhaustive(lattice())).unwrap();
        prop_assert_eq!(v.status == Status::Stable, satisfies(&f, &i, y).unwrap());
    }

    #[test]
    fn choice_is_a_tautology(i in interp(), conj in prop::sample::select(OperatorKind::CONJUNCTIONS.to_vec())) {
        let c = choice(&MinimizedSet::all(&sig()), conj).unwrap();
        prop_assert_eq!(evaluate(&c, &i).unwrap(), Truth::ONE);
    }

    #[test]
    fn nneg_removes_strong_negation(f in any_formula()) {
        let out = nneg(&f);
        prop_assert!(!out.formula.contains_strong_negation());
        prop_assert!(out.formula.signature().atoms().iter().all(|a| out.signature.contains(a.as_str())));
        prop_assert_eq!(out.signature.len(), 2 * f.signature().len());
    }
}

#[test]
fn operator_axioms_and_bounds() {
    for d in [1, 2, 4, 10] {
        let l = Lattice::new(d).unwrap();
        for op in OperatorKind::ALL {
            assert!(check_axioms(op, l).holds(), "{op} at D={d}");
            assert_eq!(
                is_closed(op, l).unwrap(),
                op.preserves_lattices() || d == 1,
                "{op} at D={d}"
            );
        }
        for op in OperatorKind::CONJUNCTIONS {
            for x in l.points() {
                for y in l.points() {
                    let v = op.apply2(x, y).unwrap();
                    assert!(v <= x && v <= y);
                    assert_eq!(v.is_one(), x.is_one() && y.is_one());
                }
            }
        }
    }
}
