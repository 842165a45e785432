use ncres_core::module::{FreeModule, Signature};
use ncres_core::oracle::{verify_resolution, ViolationKind};
use ncres_core::resolution::{resolve, ModulePresentation, Resolution};
use ncres_core::steenrod::steenrod_context;

fn differentials(res: &Resolution) -> Vec<Vec<ncres_core::module::ModuleVector>> {
    res.stages()[1..].iter().map(|s| s.differential().to_vec()).collect()
}

#[test]
fn honest_resolution_verifies() {
    let res = resolve(steenrod_context(12), ModulePresentation::TrivialModule, 3).unwrap();
    assert!(verify_resolution(&res).is_ok());
}

#[test]
fn dropping_a_generator_breaks_exactness() {
    let ctx = steenrod_context(12);
    let res = resolve(ctx.clone(), ModulePresentation::TrivialModule, 3).unwrap();
    let mut ds = differentials(&res);
    // drop h2 from stage 1; stage 2 rows that mention it must go too, so
    // truncate the resolution there
    let h2 = ds[0].iter().position(|r| r.degree(&Signature::new([0])) == Some(4)).unwrap();
    ds[0].remove(h2);
    ds.truncate(1);
    let broken = Resolution::from_differentials(ctx, ModulePresentation::TrivialModule, ds).unwrap();
    let report = verify_resolution(&broken);
    assert!(report
        .violations
        .iter()
        .any(|v| v.stage == 0 && v.degree == 4 && matches!(v.kind, ViolationKind::Exactness { .. })));
}

#[test]
fn cokernel_presentation_verifies() {
    // F2 as a cokernel; Sq3 = Sq1 Sq2 is redundant
    let ctx = steenrod_context(10);
    let p0 = FreeModule::new(ctx.clone(), Signature::new([0]));
    let rels = ["[Sq1]", "[Sq2]", "[Sq3]", "[Sq4]", "[Sq8]"].map(|r| p0.parse(r).unwrap()).to_vec();
    let pres = ModulePresentation::Cokernel {
        signature: Signature::new([0]),
        relations: rels,
    };
    let res = resolve(ctx.clone(), pres, 3).unwrap();
    assert!(verify_resolution(&res).is_ok());
    let trivial = resolve(ctx, ModulePresentation::TrivialModule, 3).unwrap();
    assert_eq!(res.chart(), trivial.chart());
}

#[test]
fn h0_tower_through_six() {
    let res = resolve(steenrod_context(8), ModulePresentation::TrivialModule, 6).unwrap();
    let chart = res.chart();
    for s in 0..=6 {
        assert_eq!(chart.get(s, s as u32), 1, "s = {s}");
    }
    assert!(verify_resolution(&res).is_ok());
}

#[test]
fn generators_killed_by_omega_leave_nothing_to_resolve() {
    use ncres_core::{FreeAlgebra, GeneratorTable, MonomialOrder, PrimeField, ReducerSet, TruncatedContext};
    // Gamma = F2: every generator is itself a relation
    let gens = GeneratorTable::new([("x", 1), ("y", 2)]).unwrap();
    let alg = FreeAlgebra::new(PrimeField::F2, gens, MonomialOrder::LeftLengthLex);
    let omega = ReducerSet::from_polynomials(alg.clone(), [alg.parse("x").unwrap(), alg.parse("y").unwrap()]).unwrap();
    let ctx = TruncatedContext::new(omega, 6);
    let res = resolve(ctx, ModulePresentation::TrivialModule, 2).unwrap();
    assert_eq!(res.chart().iter().collect::<Vec<_>>(), [(0, 0, 1)]);
    assert!(verify_resolution(&res).is_ok());
}
