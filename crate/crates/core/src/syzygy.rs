//! Syzygies of rows in a truncated free module, and minimal generating
//! sets.
//!
//! For rows `f_1, ..., f_s` of total degrees `d_j` the syzygies live in the
//! source module with generators `e'_j` of degree `d_j`; a row `r` there is
//! a syzygy when `N(sum r_j f_j) = 0`.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::AlgebraError;
use crate::field::FieldElement;
use crate::groebner::word_overlaps;
use crate::module::{
    left_divide, lcm, module_complete, module_s_vector, relation_overlap_set, relation_s_vector, FreeModule,
    ModuleCompletion, ModuleGroebnerBasis, ModuleMonomial, ModuleReducer, ModuleVector, Signature,
};
use crate::monomial::Monomial;

/// How a syzygy row was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Difference of the two leading monomials' cofactors, corrected by
    /// the reduction of their S-vector.
    Pair { first: usize, second: usize },
    /// `z e'_element`, corrected by the reduction of the relation S-vector.
    Relation { element: usize, relation: usize, z: Monomial },
    /// A basis syzygy pulled back to the input rows through `T`.
    Lifted(alloc::boxed::Box<Provenance>),
    /// Row `j` of `I - S T`.
    Residual(usize),
}

/// Syzygy rows over `module` together with where each came from.
#[derive(Clone, Debug)]
pub struct SyzygyGenerators {
    pub module: FreeModule,
    pub rows: Vec<ModuleVector>,
    pub provenance: Vec<Provenance>,
}

impl SyzygyGenerators {
    fn new(module: FreeModule) -> Self {
        SyzygyGenerators {
            module,
            rows: Vec::new(),
            provenance: Vec::new(),
        }
    }

    fn push(&mut self, row: ModuleVector, origin: Provenance) {
        if !row.is_zero() {
            self.rows.push(row);
            self.provenance.push(origin);
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Rows `f_1..f_s` of a free module whose syzygies are wanted.
#[derive(Clone, Debug)]
pub struct SyzygyProblem {
    target: FreeModule,
    rows: Vec<ModuleVector>,
    source: FreeModule,
}

impl SyzygyProblem {
    /// Rows must be nonzero, homogeneous and already normalised.
    pub fn new(target: FreeModule, rows: Vec<ModuleVector>) -> Result<Self, AlgebraError> {
        let sig = target.signature();
        let mut degrees = Vec::with_capacity(rows.len());
        for f in &rows {
            if !target.owns(f) {
                return Err(AlgebraError::Mismatch);
            }
            if !f.is_homogeneous(sig) {
                return Err(AlgebraError::NotHomogeneous);
            }
            if !target.is_normalized(f) {
                return Err(AlgebraError::Contract("row is not normalised".to_string()));
            }
            degrees.push(f.degree(sig).ok_or_else(|| AlgebraError::Contract("zero row".to_string()))?);
        }
        let source = FreeModule::new(target.ctx().clone(), Signature::new(degrees));
        Ok(SyzygyProblem { target, rows, source })
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn rows(&self) -> &[ModuleVector] {
        &self.rows
    }

    /// Whether `r` (over the source) maps to zero.
    pub fn is_syzygy(&self, r: &ModuleVector) -> bool {
        self.target.combine(r, &self.rows).is_zero()
    }
}

/// Syzygies of module monomials modulo the leading words of the relations:
/// cofactor differences of left-comparable pairs, and `z e'_i` for every
/// overlap of `X_i` with a relation's leading word.
pub fn monomial_syzygies(module: &FreeModule, xs: &[ModuleMonomial]) -> SyzygyGenerators {
    let sig = module.signature();
    let k = module.k();
    let alg = module.algebra();
    let source = FreeModule::new(module.ctx().clone(), Signature::new(xs.iter().map(|x| x.degree(sig))));
    let rank = xs.len();
    let field = alg.field();
    let mut out = SyzygyGenerators::new(source);
    for i in 0..rank {
        for j in i + 1..rank {
            let Some(l) = lcm(&xs[i], &xs[j]) else { continue };
            if l.degree(sig) > k {
                continue;
            }
            let zi = left_divide(&xs[i], &l).expect("lcm is a multiple");
            let zj = left_divide(&xs[j], &l).expect("lcm is a multiple");
            let mut row = ModuleVector::from_term(alg, rank, i, FieldElement::ONE, zi);
            row.add_scaled_left(
                field.neg(FieldElement::ONE),
                &Monomial::one(),
                &ModuleVector::from_term(alg, rank, j, FieldElement::ONE, zj),
            );
            out.push(row, Provenance::Pair { first: i, second: j });
        }
    }
    for (i, x) in xs.iter().enumerate() {
        for (ri, w) in module.ctx().omega().reducers().iter().enumerate() {
            let Some(wm) = w.lm() else { continue };
            for t in word_overlaps(&x.word, wm, alg.generators()) {
                if x.degree(sig) + t.z.degree() > k {
                    continue;
                }
                let row = ModuleVector::from_term(alg, rank, i, FieldElement::ONE, t.z.clone());
                out.push(
                    row,
                    Provenance::Relation {
                        element: i,
                        relation: ri,
                        z: t.z,
                    },
                );
            }
        }
    }
    out
}

/// Syzygies of a module Groebner basis, over its basis module: one per
/// comparable pair and one per relation overlap (degree `<= k`), each
/// corrected by the recorded reduction of its S-vector to zero.
pub fn groebner_syzygies(gb: &ModuleGroebnerBasis) -> Result<SyzygyGenerators, AlgebraError> {
    let module = gb.module();
    let sig = module.signature();
    let k = module.k();
    let basis = gb.basis_module();
    let elems = gb.elements();
    let field = module.algebra().field();
    let minus = field.neg(FieldElement::ONE);

    let mut divider = ModuleReducer::new(module.clone(), Some(basis.clone()));
    for (l, g) in elems.iter().enumerate() {
        divider.insert(g.clone(), Some(basis.unit(l)))?;
    }
    let zero_tag = basis.zero();
    let finish = |head: ModuleVector, s: &ModuleVector| -> Result<ModuleVector, AlgebraError> {
        let (r, tag) = divider.reduce(s, Some(&zero_tag));
        if !r.is_zero() {
            return Err(AlgebraError::Contract("S-vector does not reduce to zero".to_string()));
        }
        let row = basis.normalize(&head.add(&tag.expect("tagged"))?);
        if !module.combine(&row, elems).is_zero() {
            return Err(AlgebraError::Contract("syzygy does not annihilate the basis".to_string()));
        }
        Ok(row)
    };

    let mut out = SyzygyGenerators::new(basis.clone());
    let rank = elems.len();
    let alg = module.algebra();
    for i in 0..rank {
        let li = elems[i].lm().expect("nonzero");
        for j in i + 1..rank {
            let lj = elems[j].lm().expect("nonzero");
            let Some(l) = lcm(&li, &lj) else { continue };
            if l.degree(sig) > k {
                continue;
            }
            let s = module_s_vector(module, &elems[i], &elems[j]).expect("comparable");
            let zi = left_divide(&li, &l).expect("lcm is a multiple");
            let zj = left_divide(&lj, &l).expect("lcm is a multiple");
            let mut head = ModuleVector::from_term(alg, rank, i, FieldElement::ONE, zi);
            head.add_scaled_left(minus, &Monomial::one(), &ModuleVector::from_term(alg, rank, j, FieldElement::ONE, zj));
            out.push(finish(head, &s)?, Provenance::Pair { first: i, second: j });
        }
        let deg = li.degree(sig);
        for (ri, w) in module.ctx().omega().reducers().iter().enumerate() {
            for t in relation_overlap_set(&elems[i], w, alg) {
                if deg + t.z.degree() > k {
                    continue;
                }
                let s = relation_s_vector(module, &elems[i], w, &t)?;
                let head = ModuleVector::from_term(alg, rank, i, FieldElement::ONE, t.z.clone());
                out.push(
                    finish(head, &s)?,
                    Provenance::Relation {
                        element: i,
                        relation: ri,
                        z: t.z,
                    },
                );
            }
        }
    }
    Ok(out)
}

/// Generators of the syzygies of arbitrary rows: the basis syzygies pulled
/// back through `T`, plus the rows of `I - S T`. Zero and repeated rows
/// are dropped.
pub fn lift_syzygies(problem: &SyzygyProblem) -> Result<SyzygyGenerators, AlgebraError> {
    let gb = module_complete(problem.target(), problem.rows())?;
    let source = gb.source().clone();
    let gs = groebner_syzygies(&gb)?;
    let mut out = SyzygyGenerators::new(source.clone());
    let mut seen = alloc::collections::BTreeSet::new();
    let mut push = |out: &mut SyzygyGenerators, row: ModuleVector, p: Provenance| {
        if !row.is_zero() && seen.insert(row.display(source.algebra())) {
            out.push(row, p);
        }
    };
    for (s, p) in gs.rows.iter().zip(gs.provenance) {
        let row = source.combine(s, gb.t_matrix());
        push(&mut out, row, Provenance::Lifted(alloc::boxed::Box::new(p)));
    }
    for (j, srow) in gb.s_matrix().iter().enumerate() {
        let st = source.combine(srow, gb.t_matrix());
        let row = source.unit(j).sub(&st)?;
        push(&mut out, row, Provenance::Residual(j));
    }
    Ok(out)
}

fn processing_order(module: &FreeModule, rows: &[ModuleVector]) -> Vec<usize> {
    let sig = module.signature();
    let order = module.algebra().order();
    let mut idx: Vec<usize> = (0..rows.len()).collect();
    idx.sort_by(|&a, &b| {
        let (da, db) = (rows[a].degree(sig), rows[b].degree(sig));
        da.cmp(&db).then_with(|| match (rows[a].lm(), rows[b].lm()) {
            (Some(x), Some(y)) => crate::module::pot_compare(order, &x, &y),
            _ => core::cmp::Ordering::Equal,
        })
    });
    idx
}

fn prepare(module: &FreeModule, rows: &[ModuleVector]) -> Result<Vec<ModuleVector>, AlgebraError> {
    let sig = module.signature();
    let mut out = Vec::with_capacity(rows.len());
    for h in rows {
        if !module.owns(h) {
            return Err(AlgebraError::Mismatch);
        }
        if !h.is_homogeneous(sig) {
            return Err(AlgebraError::NotHomogeneous);
        }
        let h = module.normalize(h);
        if !h.is_zero() {
            out.push(h);
        }
    }
    Ok(out)
}

/// Fully reduced row echelon form over the field; rows share one degree.
struct Echelon {
    rows: Vec<ModuleVector>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn reduce(&self, v: &mut ModuleVector) {
        let field = match v.components().first() {
            Some(p) => p.field(),
            None => return,
        };
        for r in &self.rows {
            let lead = r.leading().expect("echelon rows are nonzero");
            let c = v.component(lead.component).coefficient(lead.word);
            if !c.is_zero() {
                v.add_scaled_left(field.neg(c), &Monomial::one(), r);
            }
        }
    }

    fn insert(&mut self, v: &ModuleVector) {
        let mut v = v.clone();
        self.reduce(&mut v);
        if v.is_zero() {
            return;
        }
        let v = v.monic();
        let lead = v.leading().expect("nonzero");
        let field = v.component(lead.component).field();
        for r in &mut self.rows {
            let c = r.component(lead.component).coefficient(lead.word);
            if !c.is_zero() {
                r.add_scaled_left(field.neg(c), &Monomial::one(), &v);
            }
        }
        self.rows.push(v);
    }
}

/// A minimal generating set of the submodule generated by `rows`.
///
/// Rows are visited in ascending (degree, leading monomial); each is
/// replaced by its normal form modulo a Groebner basis of all the other
/// current rows and dropped when that vanishes. Only rows of degree at
/// most that of the visited row can contribute, so the basis of lower
/// survivors is grown incrementally and the rows of equal degree are
/// handled by elimination; the normal form is the same unique one.
pub fn minimalize(module: &FreeModule, rows: &[ModuleVector]) -> Result<Vec<ModuleVector>, AlgebraError> {
    let rows = prepare(module, rows)?;
    let order = processing_order(module, &rows);
    let sig = module.signature();
    let mut lower = ModuleCompletion::new(module.clone(), None);
    let mut out = Vec::new();
    let mut at = 0;
    while at < order.len() {
        let d = rows[order[at]].degree(sig).expect("nonzero");
        let end = at + order[at..].iter().take_while(|&&i| rows[i].degree(sig) == Some(d)).count();
        lower.run_through(d);
        let mut current: Vec<ModuleVector> = order[at..end]
            .iter()
            .map(|&i| lower.reducer().normal_form(&rows[i]))
            .collect();
        for i in 0..current.len() {
            let mut ech = Echelon::new();
            for (j, u) in current.iter().enumerate() {
                if j != i && !u.is_zero() {
                    ech.insert(u);
                }
            }
            let mut v = current[i].clone();
            ech.reduce(&mut v);
            current[i] = v;
        }
        for v in current.into_iter().filter(|v| !v.is_zero()) {
            lower.add_seed(&v, None)?;
            out.push(v);
        }
        at = end;
    }
    Ok(out)
}

/// The algorithm as stated: a fresh Groebner basis of the other rows for
/// every row. Quadratically many completions; kept as a reference.
pub fn minimalize_by_recompletion(module: &FreeModule, rows: &[ModuleVector]) -> Result<Vec<ModuleVector>, AlgebraError> {
    let rows = prepare(module, rows)?;
    let order = processing_order(module, &rows);
    let mut current: Vec<ModuleVector> = order.iter().map(|&i| rows[i].clone()).collect();
    for i in 0..current.len() {
        let others: Vec<ModuleVector> = current
            .iter()
            .enumerate()
            .filter(|&(j, v)| j != i && !v.is_zero())
            .map(|(_, v)| v.clone())
            .collect();
        let gb = module_complete(module, &others)?;
        current[i] = gb.normal_form(&current[i]);
    }
    current.retain(|v| !v.is_zero());
    Ok(current)
}

/// Outcome of a minimality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinimalityReport {
    Minimal,
    /// A syzygy with a unit-word coefficient at `component`: that row is
    /// redundant.
    Redundant { component: usize, syzygy: ModuleVector },
}

impl MinimalityReport {
    pub fn is_minimal(&self) -> bool {
        matches!(self, MinimalityReport::Minimal)
    }
}

/// Checks that no syzygy of `rows` has a unit-word coefficient, i.e. that
/// they generate minimally.
pub fn check_minimal(module: &FreeModule, rows: &[ModuleVector]) -> Result<MinimalityReport, AlgebraError> {
    let rows = prepare(module, rows)?;
    let problem = SyzygyProblem::new(module.clone(), rows)?;
    let syz = lift_syzygies(&problem)?;
    for r in syz.rows {
        if let Some(component) = r.unit_term() {
            return Ok(MinimalityReport::Redundant { component, syzygy: r });
        }
    }
    Ok(MinimalityReport::Minimal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FreeAlgebra;
    use crate::field::PrimeField;
    use crate::monomial::{GeneratorTable, MonomialOrder};
    use crate::reduction::{ReducerSet, TruncatedContext};
    use crate::steenrod::steenrod_context;
    use alloc::string::String;

    fn steenrod_module(k: u32) -> FreeModule {
        FreeModule::new(steenrod_context(k), Signature::new([0]))
    }

    fn sq_rows(m: &FreeModule, exps: &[u32]) -> Vec<ModuleVector> {
        exps.iter().map(|i| m.parse(&alloc::format!("[Sq{i}]")).unwrap()).collect()
    }

    fn shown(m: &FreeModule, rows: &[ModuleVector]) -> Vec<String> {
        rows.iter().map(|r| r.display(m.algebra())).collect()
    }

    #[test]
    fn monomial_syzygy_examples() {
        let gens = GeneratorTable::new([("x", 1), ("y", 2)]).unwrap();
        let alg = FreeAlgebra::new(PrimeField::F2, gens, MonomialOrder::LeftLengthLex);
        let sq = alg.parse("x*x").unwrap();
        let m = FreeModule::new(
            TruncatedContext::new(ReducerSet::from_polynomials(alg.clone(), [sq]).unwrap(), 6),
            Signature::new([0, 0]),
        );
        let x = ModuleMonomial::new(0, alg.word(&[0]));
        let s = monomial_syzygies(&m, &[x.clone(), x.clone()]);
        assert!(shown(&s.module, &s.rows).contains(&"[1, 1]".into()));
        let s = monomial_syzygies(&m, core::slice::from_ref(&x));
        assert_eq!(shown(&s.module, &s.rows), ["[x]"]);

        let free = FreeModule::new(TruncatedContext::new(ReducerSet::new(alg.clone()), 6), Signature::new([0, 0]));
        let y = ModuleMonomial::new(1, alg.word(&[1]));
        assert!(monomial_syzygies(&free, &[x, y]).is_empty());
    }

    #[test]
    fn basis_syzygies_annihilate() {
        let m = steenrod_module(10);
        let gb = module_complete(&m, &sq_rows(&m, &[1, 2, 3])).unwrap();
        let gs = groebner_syzygies(&gb).unwrap();
        assert!(!gs.is_empty());
        for r in &gs.rows {
            assert!(m.combine(r, gb.elements()).is_zero());
        }
        // Sq1 applied to the Sq2 element lands on Sq3
        let sq3 = gb.elements().iter().position(|g| g.display(m.algebra()) == "[Sq3]").unwrap();
        let sq2 = gb.elements().iter().position(|g| g.display(m.algebra()) == "[Sq2]").unwrap();
        assert!(gs.rows.iter().any(|r| {
            r.component(sq2).coefficient(&m.algebra().word(&[0])).value() == 1
                && r.component(sq3).coefficient(&Monomial::one()).value() == 1
        }));
    }

    #[test]
    fn lifted_syzygies_of_sq1_sq2() {
        let m = steenrod_module(10);
        let p = SyzygyProblem::new(m.clone(), sq_rows(&m, &[1, 2])).unwrap();
        let syz = lift_syzygies(&p).unwrap();
        let sig = p.source().signature();
        for r in &syz.rows {
            assert!(p.is_syzygy(r));
        }
        let degrees: Vec<u32> = syz.rows.iter().map(|r| r.degree(sig).unwrap()).collect();
        // Sq1 Sq1 = 0 in degree 2, and Sq1 Sq2 + Sq2 Sq1 ... in degree 3
        assert!(degrees.contains(&2));
        assert!(degrees.iter().all(|&d| d <= 10));
    }

    #[test]
    fn duplicate_rows_give_the_difference() {
        let m = steenrod_module(6);
        let rows = sq_rows(&m, &[2, 2]);
        let p = SyzygyProblem::new(m.clone(), rows.clone()).unwrap();
        let syz = lift_syzygies(&p).unwrap();
        assert!(shown(p.source(), &syz.rows).contains(&"[1, 1]".into()));
        match check_minimal(&m, &rows).unwrap() {
            MinimalityReport::Redundant { syzygy, .. } => assert_eq!(syzygy.display(m.algebra()), "[1, 1]"),
            MinimalityReport::Minimal => panic!("duplicated rows are not minimal"),
        }
    }

    #[test]
    fn minimal_generators_of_the_augmentation_ideal() {
        let m = steenrod_module(20);
        let rows = sq_rows(&m, &(1..=20).collect::<Vec<_>>());
        let min = minimalize(&m, &rows).unwrap();
        assert_eq!(shown(&m, &min), ["[Sq1]", "[Sq2]", "[Sq4]", "[Sq8]", "[Sq16]"]);
        assert!(check_minimal(&m, &min).unwrap().is_minimal());

        let m = steenrod_module(8);
        let small = minimalize(&m, &sq_rows(&m, &[1, 2, 3])).unwrap();
        assert_eq!(shown(&m, &small), ["[Sq1]", "[Sq2]"]);
        assert_eq!(minimalize(&m, &sq_rows(&m, &[5])).unwrap(), sq_rows(&m, &[5]));
    }

    #[test]
    fn stratified_matches_recompletion() {
        let m = FreeModule::new(steenrod_context(9), Signature::new([0, 1]));
        let rows: Vec<ModuleVector> = ["[Sq2, Sq1]", "[Sq3, 0]", "[Sq1*Sq2, Sq2]", "[Sq4, Sq3]", "[Sq2, Sq1]", "[0, Sq2]", "[Sq3*Sq1, Sq3]"]
            .iter()
            .map(|s| m.parse(s).unwrap())
            .collect();
        let a = minimalize(&m, &rows).unwrap();
        let b = minimalize_by_recompletion(&m, &rows).unwrap();
        assert_eq!(a, b);
        assert!(check_minimal(&m, &a).unwrap().is_minimal());
    }
}
