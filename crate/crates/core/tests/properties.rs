use std::cmp::Ordering;
use std::sync::OnceLock;

use ncres_core::module::{module_complete, FreeModule, ModuleVector, Signature};
use ncres_core::steenrod::steenrod_context;
use ncres_core::syzygy::{check_minimal, lift_syzygies, minimalize, SyzygyProblem};
use ncres_core::{FieldElement, FreeAlgebra, Letter, Monomial, MonomialOrder, Polynomial, TruncatedContext};
use proptest::prelude::*;

const K: u32 = 14;

fn ctx() -> &'static TruncatedContext {
    static CTX: OnceLock<TruncatedContext> = OnceLock::new();
    CTX.get_or_init(|| steenrod_context(K))
}

fn alg() -> &'static FreeAlgebra {
    ctx().algebra()
}

/// Letters `Sq1..Sq6`, at most five of them.
fn word() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..6 as Letter, 0..5).prop_map(|ls| alg().word(&ls))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(word(), 0..6).prop_map(|ws| alg().polynomial(ws.into_iter().map(|w| (w, FieldElement::ONE))))
}

/// Homogeneous of degree `d`, as a sum of compositions of `d` into parts <= 6.
fn homogeneous(d: u32) -> impl Strategy<Value = Polynomial> {
    let comp = prop::collection::vec(1..=6u32, 0..=d as usize).prop_map(move |parts| {
        let mut out = Vec::new();
        let mut left = d;
        for p in parts {
            if left == 0 {
                break;
            }
            let p = p.min(left);
            out.push((p - 1) as Letter);
            left -= p;
        }
        if left > 0 {
            out.push((left - 1) as Letter);
        }
        alg().word(&out)
    });
    prop::collection::vec(comp, 0..5).prop_map(|ws| alg().polynomial(ws.into_iter().map(|w| (w, FieldElement::ONE))))
}

fn orders() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![Just(MonomialOrder::LeftLengthLex), Just(MonomialOrder::RightLengthLex)]
}

proptest! {
    #[test]
    fn order_is_total_and_compatible(o in orders(), a in word(), b in word(), c in word(), u in word(), v in word()) {
        prop_assert_eq!(o.compare(&a, &b) == Ordering::Equal, a == b);
        prop_assert_eq!(o.compare(&a, &b), o.compare(&b, &a).reverse());
        if o.compare(&a, &b) == Ordering::Less && o.compare(&b, &c) == Ordering::Less {
            prop_assert_eq!(o.compare(&a, &c), Ordering::Less);
        }
        prop_assert_eq!(o.compare(&a.sandwich(&u, &v), &b.sandwich(&u, &v)), o.compare(&a, &b));
        if !u.is_one() {
            prop_assert_eq!(o.compare(&a, &a.mul(&u)), Ordering::Less);
        }
    }

    #[test]
    fn polynomials_are_canonical(ws in prop::collection::vec(word(), 0..8)) {
        let fwd = alg().polynomial(ws.iter().cloned().map(|w| (w, FieldElement::ONE)));
        let rev = alg().polynomial(ws.iter().rev().cloned().map(|w| (w, FieldElement::ONE)));
        prop_assert_eq!(&fwd, &rev);
        let ts = fwd.terms();
        for pair in ts.windows(2) {
            prop_assert_eq!(alg().order().compare(&pair[0].monomial, &pair[1].monomial), Ordering::Greater);
        }
        prop_assert!(ts.iter().all(|t| !t.coeff.is_zero()));
        prop_assert!(fwd.add(&fwd).unwrap().is_zero());
    }

    #[test]
    fn normal_form_is_reduced_and_idempotent(f in poly()) {
        let om = ctx().omega();
        let n = om.normal_form(&f);
        prop_assert!(om.is_reduced(&n));
        prop_assert_eq!(om.normal_form(&n), n);
    }

    #[test]
    fn normal_form_is_linear(f in poly(), g in poly()) {
        let om = ctx().omega();
        let lhs = om.normal_form(&f.add(&g).unwrap());
        let rhs = om.normal_form(&f).add(&om.normal_form(&g)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ideal_elements_vanish(
        i in 0usize..64,
        u in prop::collection::vec(0..2 as Letter, 0..=2),
        v in prop::collection::vec(0..2 as Letter, 0..=2),
    ) {
        // degree <= 6 + 4 + 4 stays within K, where Omega is complete
        let om = ctx().omega();
        let small: Vec<_> = om.reducers().iter().filter(|w| w.degree().unwrap() <= 6).collect();
        let w = small[i % small.len()];
        prop_assert!(om.normal_form(&w.sandwich(&alg().word(&u), &alg().word(&v))).is_zero());
    }

    #[test]
    fn traced_reduction_accounts_for_the_difference(f in poly()) {
        let om = ctx().omega();
        let (n, trace) = om.normal_form_traced(&f);
        let mut acc = n.clone();
        for s in &trace {
            let step = om.reducers()[s.reducer].sandwich(&s.left, &s.right).scale(s.coeff);
            acc = acc.add(&step).unwrap();
        }
        prop_assert_eq!(acc, f);
    }

    #[test]
    fn reduction_preserves_degree(f in (1u32..=12).prop_flat_map(homogeneous)) {
        let om = ctx().omega();
        let n = om.normal_form(&f);
        prop_assert!(n.is_homogeneous());
        if let (Some(a), Some(b)) = (n.degree(), f.degree()) {
            prop_assert_eq!(a, b);
        }
    }
}

fn module() -> FreeModule {
    FreeModule::new(ctx().clone(), Signature::new([0, 1]))
}

/// Nonzero homogeneous rows over `e0 (deg 0), e1 (deg 1)`.
fn rows() -> impl Strategy<Value = Vec<ModuleVector>> {
    let row = (2u32..=8).prop_flat_map(|d| (homogeneous(d), homogeneous(d - 1)));
    prop::collection::vec(row, 1..4).prop_map(|rs| {
        let m = module();
        rs.into_iter()
            .map(|(a, b)| m.normalize(&ModuleVector::from_components(vec![a, b])))
            .filter(|v| !v.is_zero())
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lifted_rows_are_syzygies(rs in rows()) {
        prop_assume!(!rs.is_empty());
        let p = SyzygyProblem::new(module(), rs).unwrap();
        for r in &lift_syzygies(&p).unwrap().rows {
            prop_assert!(p.is_syzygy(r));
            prop_assert!(r.is_homogeneous(p.source().signature()));
        }
    }

    #[test]
    fn minimalize_keeps_the_submodule(rs in rows()) {
        prop_assume!(!rs.is_empty());
        let m = module();
        let min = minimalize(&m, &rs).unwrap();
        prop_assert!(min.len() <= rs.len());
        prop_assert!(check_minimal(&m, &min).unwrap().is_minimal());
        if !min.is_empty() {
            let gb = module_complete(&m, &min).unwrap();
            for r in &rs {
                prop_assert!(gb.contains(r));
            }
        }
        let gb = module_complete(&m, &rs).unwrap();
        for r in &min {
            prop_assert!(gb.contains(r));
        }
        let again = minimalize(&m, &min).unwrap();
        prop_assert_eq!(again.len(), min.len());
    }
}
