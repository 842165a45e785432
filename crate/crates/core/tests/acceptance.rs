//! End-to-end acceptance checks. Runs as a plain binary so every criterion
//! prints its own PASS/FAIL line.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use ncres_core::groebner::{complete, is_groebner, GroebnerReport};
use ncres_core::module::{FreeModule, ModuleVector, Signature};
use ncres_core::oracle::{matrix_of, quotient_dimensions, span_dimension, verify_resolution, ReducedWords};
use ncres_core::resolution::{resolve, ExtChart, ModulePresentation, Resolution};
use ncres_core::steenrod::{adem_relations, admissible_count, steenrod_algebra, steenrod_context};
use ncres_core::syzygy::{lift_syzygies, minimalize, SyzygyProblem};
use ncres_core::{FieldElement, FreeAlgebra, GeneratorTable, Monomial, MonomialOrder, Polynomial, PrimeField, ReducerSet, TruncatedContext};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn adem_groebner_k24() -> Outcome {
    let ctx = steenrod_context(24);
    match is_groebner(ctx.omega(), 24) {
        GroebnerReport::Ok => Ok(format!("{} Adem relations, all S-polynomials reduce to 0", ctx.omega().len())),
        GroebnerReport::Failure(w) => Err(format!("witness in degree {}", w.degree)),
    }
}

fn admissible_basis_counts() -> Outcome {
    let ctx = steenrod_context(24);
    let words = ReducedWords::new(ctx.omega(), 24);
    for t in 0..=24 {
        if words.count(t) != admissible_count(t) {
            return Err(format!("t={t}: {} reduced words vs {} admissibles", words.count(t), admissible_count(t)));
        }
    }
    let spot = [1, 1, 1, 2, 2, 2, 3, 4, 4, 5, 6];
    for (t, &want) in spot.iter().enumerate() {
        if words.count(t as u32) != want {
            return Err(format!("t={t}: {} != {want}", words.count(t as u32)));
        }
    }
    // independent of reduction altogether: span of u*w*v
    let dims = quotient_dimensions(ctx.algebra(), ctx.omega().reducers(), 12);
    for t in 0..=12u32 {
        if dims[t as usize] != words.count(t) {
            return Err(format!("t={t}: relation span gives {}", dims[t as usize]));
        }
    }
    Ok("t <= 24 match; linear-algebra cross-check through t = 12".into())
}

fn random_word(rng: &mut StdRng, alg: &FreeAlgebra, max_degree: u32) -> Monomial {
    let n = alg.generators().len() as u32;
    let budget = rng.gen_range(0..=max_degree);
    let mut letters = Vec::new();
    let mut used = 0;
    while used < budget {
        let d = rng.gen_range(1..=(budget - used).min(n));
        letters.push((d - 1) as u16);
        used += d;
    }
    alg.word(&letters)
}

fn reduction_order_independence() -> Outcome {
    let alg = steenrod_algebra(16);
    let rels: Vec<Polynomial> = adem_relations(&alg, 16).into_iter().map(|r| r.polynomial).collect();
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let orders: Vec<ReducerSet> = (0..5)
        .map(|_| {
            let mut r = rels.clone();
            r.shuffle(&mut rng);
            ReducerSet::from_polynomials(alg.clone(), r).unwrap()
        })
        .collect();
    for i in 0..1000 {
        let nterms = rng.gen_range(1..=6);
        let f = alg.polynomial((0..nterms).map(|_| (random_word(&mut rng, &alg, 16), FieldElement::ONE)));
        let base = orders[0].normal_form(&f);
        if !orders[0].is_reduced(&base) {
            return Err(format!("polynomial {i}: result not reduced"));
        }
        for o in &orders[1..] {
            if o.normal_form(&f) != base {
                return Err(format!("polynomial {i}: normal forms differ"));
            }
        }
    }
    Ok("1000 polynomials x 5 reducer orders".into())
}

fn toy_contexts() -> Vec<TruncatedContext> {
    let mut out = Vec::new();
    let gens = GeneratorTable::new([("x", 1), ("y", 1)]).unwrap();
    let alg = FreeAlgebra::new(PrimeField::F2, gens, MonomialOrder::LeftLengthLex);
    let seeds = [alg.parse("y*x + x*y").unwrap(), alg.parse("x*x*x").unwrap()];
    out.push(TruncatedContext::new(complete(&alg, &seeds, 10).unwrap().into_basis(), 10));

    let f3 = PrimeField::new(3).unwrap();
    let gens = GeneratorTable::new([("a", 1), ("b", 2)]).unwrap();
    let alg = FreeAlgebra::new(f3, gens, MonomialOrder::RightLengthLex);
    let (a, b) = (0u16, 1u16);
    let seeds = [
        alg.polynomial([(alg.word(&[b, a]), FieldElement::ONE), (alg.word(&[a, b]), f3.element(-1))]),
        alg.polynomial([(alg.word(&[a, a, a]), FieldElement::ONE), (alg.word(&[b, a]), f3.element(1))]),
    ];
    out.push(TruncatedContext::new(complete(&alg, &seeds, 10).unwrap().into_basis(), 10));
    out
}

fn random_rows(rng: &mut StdRng, module: &FreeModule, words: &ReducedWords) -> Vec<ModuleVector> {
    let alg = module.algebra();
    let field = alg.field();
    let sig = module.signature();
    let k = module.k();
    let n = rng.gen_range(1..=4);
    let mut rows = Vec::new();
    let mut attempts = 0;
    while rows.len() < n && attempts < 200 {
        attempts += 1;
        let d = rng.gen_range(1..=k);
        let comps: Vec<Polynomial> = (0..sig.len())
            .map(|c| {
                let Some(rem) = d.checked_sub(sig.degree(c)) else {
                    return alg.zero();
                };
                let pool = words.of_degree(rem);
                if pool.is_empty() {
                    return alg.zero();
                }
                let m = rng.gen_range(0..=3usize);
                alg.polynomial((0..m).map(|_| {
                    let w = pool.choose(rng).unwrap().clone();
                    (w, field.element(rng.gen_range(1..field.characteristic() as i64)))
                }))
            })
            .collect();
        let v = module.normalize(&ModuleVector::from_components(comps));
        if !v.is_zero() {
            rows.push(v);
        }
    }
    rows
}

fn lifted_syzygies_span_kernel() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let toys = toy_contexts();
    let mut checked = 0;
    let mut total = 0;
    let mut problems = 0;
    while problems < 50 {
        let k = rng.gen_range(4..=10);
        let ctx = match problems % 3 {
            0 => steenrod_context(k),
            i => toys[i - 1].with_k(k),
        };
        let rank = rng.gen_range(1..=3);
        let sig = Signature::new((0..rank).map(|_| rng.gen_range(0..=2)));
        let module = FreeModule::new(ctx.clone(), sig.clone());
        let words = ReducedWords::new(ctx.omega(), k);
        let rows = random_rows(&mut rng, &module, &words);
        if rows.is_empty() {
            continue;
        }
        problems += 1;
        let problem = SyzygyProblem::new(module, rows.clone()).map_err(|e| e.to_string())?;
        let syz = lift_syzygies(&problem).map_err(|e| e.to_string())?;
        let source = problem.source().signature().clone();
        for r in &syz.rows {
            if !problem.is_syzygy(r) {
                return Err(format!("problem {problems}: row is not a syzygy"));
            }
        }
        for t in 0..=k {
            let d = matrix_of(&ctx, &words, &rows, &source, &sig, t);
            let kernel = d.cols() - d.rank();
            let span = span_dimension(&ctx, &words, &syz.rows, &source, t);
            if kernel != span {
                return Err(format!("problem {problems}, t={t}: kernel {kernel}, lifted span {span}"));
            }
            checked += 1;
            total += kernel;
        }
    }
    Ok(format!("50 problems, {checked} (problem, t) pairs, total kernel dimension {total}"))
}

fn steenrod_resolution(k: u32, s_max: usize) -> Resolution {
    resolve(steenrod_context(k), ModulePresentation::TrivialModule, s_max).expect("resolution")
}

fn resolution_exact(res: &Resolution) -> Outcome {
    let report = verify_resolution(res);
    if report.is_ok() {
        Ok("d d = 0, exact at P_0..P_3 for t <= 20, no unit terms".into())
    } else {
        Err(format!("{:?}", &report.violations[..report.violations.len().min(3)]))
    }
}

fn chart_landmarks(chart: &ExtChart) -> Outcome {
    let expected: &[(usize, &[u32])] = &[
        (0, &[0]),
        (1, &[1, 2, 4, 8, 16]),
        (2, &[2, 4, 5, 8, 9, 10, 16, 17, 18, 20]),
        (3, &[3, 6, 10, 11, 12, 17, 18, 20]),
        (4, &[4, 11, 13, 18, 19]),
    ];
    let mut want = BTreeMap::new();
    for &(s, ts) in expected {
        for &t in ts {
            want.insert((s, t), 1usize);
        }
    }
    let got: BTreeMap<(usize, u32), usize> = chart.iter().map(|(s, t, d)| ((s, t), d)).collect();
    if got == want {
        Ok(format!("{} nonzero entries: h0 tower, h1..h4, c0 at (3,11), d0 at (4,18)", got.len()))
    } else {
        let missing: Vec<_> = want.keys().filter(|k| !got.contains_key(k)).collect();
        let extra: Vec<_> = got.keys().filter(|k| !want.contains_key(k)).collect();
        Err(format!("missing {missing:?}, unexpected {extra:?}"))
    }
}

fn degree_multiset(module: &FreeModule, rows: &[ModuleVector]) -> Vec<u32> {
    let mut d: Vec<u32> = rows.iter().map(|r| r.degree(module.signature()).unwrap()).collect();
    d.sort_unstable();
    d
}

fn permutation_invariance() -> Outcome {
    let k = 14;
    let base = steenrod_resolution(k, 3);
    let base_chart = base.chart();
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);

    let alg = steenrod_algebra(k);
    let rels: Vec<Polynomial> = adem_relations(&alg, k).into_iter().map(|r| r.polynomial).collect();
    for i in 0..20 {
        let mut r = rels.clone();
        r.shuffle(&mut rng);
        let ctx = TruncatedContext::new(ReducerSet::from_polynomials(alg.clone(), r).unwrap(), k);
        let chart = resolve(ctx, ModulePresentation::TrivialModule, 3).map_err(|e| e.to_string())?.chart();
        if chart != base_chart {
            return Err(format!("relation order {i}: chart changed"));
        }
    }

    let stages = base.stages();
    for s in 1..stages.len() {
        let problem = SyzygyProblem::new(stages[s - 1].module().clone(), stages[s].differential().to_vec())
            .map_err(|e| e.to_string())?;
        let rows = lift_syzygies(&problem).map_err(|e| e.to_string())?.rows;
        let src = problem.source();
        let reference = degree_multiset(src, &minimalize(src, &rows).map_err(|e| e.to_string())?);
        for i in 0..20 {
            let mut shuffled = rows.clone();
            shuffled.shuffle(&mut rng);
            let got = degree_multiset(src, &minimalize(src, &shuffled).map_err(|e| e.to_string())?);
            if got != reference {
                return Err(format!("stage {s}, permutation {i}: {got:?} vs {reference:?}"));
            }
        }
    }
    Ok("20 relation orders x full chart; 20 row orders x each stage".into())
}

fn truncation_stability(k18: &ExtChart, k20: &ExtChart) -> Outcome {
    if k20.truncated(18) == *k18 {
        Ok(format!("{} entries with t <= 18 agree", k18.len()))
    } else {
        Err("charts differ below t = 18".into())
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let res20 = steenrod_resolution(20, 4);
    let chart20 = res20.chart();
    let chart18 = steenrod_resolution(18, 4).chart();

    let checks: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("Adem relations form a Groebner basis through degree 24", Box::new(adem_groebner_k24)),
        ("reduced words count the admissible basis", Box::new(admissible_basis_counts)),
        ("normal forms ignore reducer order", Box::new(reduction_order_independence)),
        ("lifted syzygies span the kernel", Box::new(lifted_syzygies_span_kernel)),
        ("resolution of F2 through s = 4, k = 20 is exact", Box::new(|| resolution_exact(&res20))),
        ("Ext chart landmarks", Box::new(|| chart_landmarks(&chart20))),
        ("minimal degrees are permutation invariant", Box::new(permutation_invariance)),
        ("chart is stable under raising k", Box::new(|| truncation_stability(&chart18, &chart20))),
    ];

    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{ms} ms]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail} [{ms} ms]", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed in {} ms", checks.len() - failed, checks.len(), started.elapsed().as_millis());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
