//! Free left modules `⊕ R e_i` over the quotient `R / <Omega>`, truncated at
//! total degree `k`.
//!
//! Vectors are kept `(Omega, k)`-normalised: every component is in normal
//! form modulo `Omega` and nothing of total degree above `k` survives.
//! Module terms are ordered position over term: a lower component index
//! is greater, ties broken by the ring order.
//!
//! Division is one-sided. `X e_i` divides `Y e_i` only when `Y = Z X` for
//! some word `Z`; ring elements act on the left and nothing acts on the
//! right.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::algebra::FreeAlgebra;
use crate::error::AlgebraError;
use crate::field::FieldElement;
use crate::groebner::{word_overlaps, OverlapTriple};
use crate::monomial::{Monomial, MonomialOrder};
use crate::polynomial::{Polynomial, Term};
use crate::reduction::TruncatedContext;
use crate::text::components_to_string;
use crate::trie::WordTrie;

/// Degrees `|e_1|, ..., |e_m|` of the basis of a free module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    degrees: Arc<[u32]>,
}

impl Signature {
    pub fn new(degrees: impl IntoIterator<Item = u32>) -> Self {
        Signature {
            degrees: degrees.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    #[inline]
    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Largest word degree component `i` may carry under truncation `k`.
    #[inline]
    pub fn budget(&self, i: usize, k: u32) -> Option<u32> {
        k.checked_sub(self.degrees[i])
    }
}

/// A word placed in one component: `word * e_component`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleMonomial {
    pub component: usize,
    pub word: Monomial,
}

impl ModuleMonomial {
    pub fn new(component: usize, word: Monomial) -> Self {
        ModuleMonomial { component, word }
    }

    pub fn degree(&self, sig: &Signature) -> u32 {
        self.word.degree() + sig.degree(self.component)
    }
}

/// Position over term.
pub fn pot_compare(order: MonomialOrder, a: &ModuleMonomial, b: &ModuleMonomial) -> Ordering {
    b.component
        .cmp(&a.component)
        .then_with(|| order.compare(&a.word, &b.word))
}

/// `Z` with `y = Z x`, if `x` left-divides `y`.
pub fn left_divide(x: &ModuleMonomial, y: &ModuleMonomial) -> Option<Monomial> {
    if x.component != y.component {
        return None;
    }
    y.word.left_quotient(&x.word)
}

/// The larger of `x`, `y` when one is a left multiple of the other.
pub fn lcm(x: &ModuleMonomial, y: &ModuleMonomial) -> Option<ModuleMonomial> {
    if left_divide(x, y).is_some() {
        Some(y.clone())
    } else if left_divide(y, x).is_some() {
        Some(x.clone())
    } else {
        None
    }
}

/// Leading data of a nonzero vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeadingTerm<'a> {
    pub component: usize,
    pub word: &'a Monomial,
    pub coeff: FieldElement,
}

impl LeadingTerm<'_> {
    pub fn monomial(&self) -> ModuleMonomial {
        ModuleMonomial::new(self.component, self.word.clone())
    }
}

/// An element of `⊕ R e_i`, one polynomial per component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleVector {
    comps: Vec<Polynomial>,
}

impl ModuleVector {
    pub fn zero(algebra: &FreeAlgebra, rank: usize) -> Self {
        ModuleVector {
            comps: (0..rank).map(|_| algebra.zero()).collect(),
        }
    }

    /// The basis vector `e_i`.
    pub fn unit(algebra: &FreeAlgebra, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(algebra, rank);
        v.comps[i] = algebra.one();
        v
    }

    pub fn from_components(comps: Vec<Polynomial>) -> Self {
        ModuleVector { comps }
    }

    /// `word * e_i` with coefficient `c`.
    pub fn from_term(algebra: &FreeAlgebra, rank: usize, i: usize, c: FieldElement, word: Monomial) -> Self {
        let mut v = Self::zero(algebra, rank);
        v.comps[i] = algebra.term(c, word);
        v
    }

    #[inline]
    pub fn components(&self) -> &[Polynomial] {
        &self.comps
    }

    #[inline]
    pub fn component(&self, i: usize) -> &Polynomial {
        &self.comps[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.comps
    }

    /// Number of components.
    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    pub fn term_count(&self) -> usize {
        self.comps.iter().map(Polynomial::len).sum()
    }

    /// Terms in descending POT order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Term)> + '_ {
        self.comps
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().iter().map(move |t| (i, t)))
    }

    pub fn leading(&self) -> Option<LeadingTerm<'_>> {
        self.comps.iter().enumerate().find_map(|(i, p)| {
            p.terms().first().map(|t| LeadingTerm {
                component: i,
                word: &t.monomial,
                coeff: t.coeff,
            })
        })
    }

    pub fn lm(&self) -> Option<ModuleMonomial> {
        self.leading().map(|l| l.monomial())
    }

    pub fn lc(&self) -> FieldElement {
        self.leading().map_or(FieldElement::ZERO, |l| l.coeff)
    }

    /// Total degree of the leading term.
    pub fn degree(&self, sig: &Signature) -> Option<u32> {
        self.leading().map(|l| l.word.degree() + sig.degree(l.component))
    }

    pub fn is_homogeneous(&self, sig: &Signature) -> bool {
        let mut degs = self.terms().map(|(i, t)| t.monomial.degree() + sig.degree(i));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// First component holding a term whose word is empty.
    pub fn unit_term(&self) -> Option<usize> {
        self.comps
            .iter()
            .position(|p| p.terms().iter().any(|t| t.monomial.is_one()))
    }

    fn check(&self, other: &ModuleVector) -> Result<(), AlgebraError> {
        if self.rank() == other.rank() && self.comps.iter().zip(&other.comps).all(|(a, b)| a.compatible(b)) {
            Ok(())
        } else {
            Err(AlgebraError::Mismatch)
        }
    }

    pub fn add(&self, other: &ModuleVector) -> Result<ModuleVector, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled_left(FieldElement::ONE, &Monomial::one(), other);
        Ok(out)
    }

    pub fn sub(&self, other: &ModuleVector) -> Result<ModuleVector, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled_left(self.field_neg_one(), &Monomial::one(), other);
        Ok(out)
    }

    fn field_neg_one(&self) -> FieldElement {
        match self.comps.first() {
            Some(p) => p.field().neg(FieldElement::ONE),
            None => FieldElement::ONE,
        }
    }

    pub fn scale(&self, c: FieldElement) -> ModuleVector {
        ModuleVector {
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn monic(&self) -> ModuleVector {
        let lc = self.lc();
        match self.comps.first().and_then(|p| p.field().inv(lc)) {
            Some(inv) if !lc.is_zero() => self.scale(inv),
            _ => self.clone(),
        }
    }

    /// `z * self`, not normalised.
    pub fn mul_left(&self, z: &Monomial) -> ModuleVector {
        ModuleVector {
            comps: self.comps.iter().map(|p| p.mul_left(z)).collect(),
        }
    }

    /// `self += c * z * other`.
    pub(crate) fn add_scaled_left(&mut self, c: FieldElement, z: &Monomial, other: &ModuleVector) {
        let one = Monomial::one();
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            a.add_scaled_sandwich(c, z, b, &one);
        }
    }

    pub fn display(&self, algebra: &FreeAlgebra) -> String {
        components_to_string(&self.comps, algebra.generators())
    }
}

/// A free module together with the quotient algebra and truncation it
/// lives under. Cheap to clone.
#[derive(Clone, Debug)]
pub struct FreeModule {
    ctx: TruncatedContext,
    sig: Signature,
}

impl FreeModule {
    pub fn new(ctx: TruncatedContext, sig: Signature) -> Self {
        FreeModule { ctx, sig }
    }

    #[inline]
    pub fn ctx(&self) -> &TruncatedContext {
        &self.ctx
    }

    #[inline]
    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    #[inline]
    pub fn algebra(&self) -> &FreeAlgebra {
        self.ctx.algebra()
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.ctx.k()
    }

    pub fn rank(&self) -> usize {
        self.sig.len()
    }

    pub fn zero(&self) -> ModuleVector {
        ModuleVector::zero(self.algebra(), self.rank())
    }

    pub fn unit(&self, i: usize) -> ModuleVector {
        self.normalize(&ModuleVector::unit(self.algebra(), self.rank(), i))
    }

    pub fn owns(&self, v: &ModuleVector) -> bool {
        v.rank() == self.rank() && v.components().iter().all(|p| self.algebra().owns(p))
    }

    /// `N_{Omega,k}`: componentwise normal form, component `i` cut at
    /// `k - |e_i|`.
    pub fn normalize(&self, v: &ModuleVector) -> ModuleVector {
        let k = self.k();
        ModuleVector {
            comps: v
                .comps
                .iter()
                .enumerate()
                .map(|(i, p)| match self.sig.budget(i, k) {
                    Some(b) => self.ctx.truncated_normal_form(p, b),
                    None => self.algebra().zero(),
                })
                .collect(),
        }
    }

    pub fn is_normalized(&self, v: &ModuleVector) -> bool {
        self.normalize(v) == *v
    }

    /// `N(z * v)`.
    pub fn mul_left(&self, z: &Monomial, v: &ModuleVector) -> ModuleVector {
        let k = self.k();
        ModuleVector {
            comps: v
                .comps
                .iter()
                .enumerate()
                .map(|(i, p)| match self.sig.budget(i, k) {
                    Some(b) if !p.is_zero() => self.ctx.mul_left(z, p, b),
                    _ => self.algebra().zero(),
                })
                .collect(),
        }
    }

    /// `N(sum_l coeffs_l * rows_l)`: the image of `coeffs` under the map
    /// sending the `l`-th basis vector to `rows[l]`.
    pub fn combine(&self, coeffs: &ModuleVector, rows: &[ModuleVector]) -> ModuleVector {
        debug_assert_eq!(coeffs.rank(), rows.len());
        let mut acc = self.zero();
        for (l, t) in coeffs.terms() {
            let zr = self.mul_left(&t.monomial, &rows[l]);
            acc.add_scaled_left(t.coeff, &Monomial::one(), &zr);
        }
        acc
    }

    pub fn parse(&self, src: &str) -> Result<ModuleVector, crate::text::ParseError> {
        let comps = crate::text::parse_components(self.algebra(), src)?;
        if comps.len() != self.rank() {
            return Err(crate::text::ParseError {
                line: 1,
                column: 1,
                message: alloc::format!("expected {} components, found {}", self.rank(), comps.len()),
            });
        }
        Ok(ModuleVector::from_components(comps))
    }
}

/// The S-vector of two monic-able vectors whose leading monomials are
/// left-comparable; `None` when they are not.
pub fn module_s_vector(module: &FreeModule, f: &ModuleVector, g: &ModuleVector) -> Option<ModuleVector> {
    let (lf, lg) = (f.leading()?, g.leading()?);
    let (xf, xg) = (lf.monomial(), lg.monomial());
    let field = module.algebra().field();
    let (zf, zg) = if let Some(z) = left_divide(&xf, &xg) {
        (z, Monomial::one())
    } else {
        let z = left_divide(&xg, &xf)?;
        (Monomial::one(), z)
    };
    let mut s = f.mul_left(&zf).scale(field.inv(lf.coeff)?);
    s.add_scaled_left(field.neg(field.inv(lg.coeff)?), &zg, g);
    Some(module.normalize(&s))
}

/// Triples `(z, p, q)` pairing `lm(f)` with the relation `w`:
/// containments `word(lm f) = p lm(w) q`, and left overlaps
/// `z word(lm f) = lm(w) q` with `z` a nonempty proper prefix of `lm(w)`.
pub fn relation_overlap_set(f: &ModuleVector, w: &Polynomial, algebra: &FreeAlgebra) -> Vec<OverlapTriple> {
    match (f.leading(), w.lm()) {
        (Some(l), Some(wm)) => word_overlaps(l.word, wm, algebra.generators()),
        _ => Vec::new(),
    }
}

/// `N(z f - p w q e_mu)`, `mu` the leading component of `f`.
pub fn relation_s_vector(
    module: &FreeModule,
    f: &ModuleVector,
    w: &Polynomial,
    t: &OverlapTriple,
) -> Result<ModuleVector, AlgebraError> {
    let lead = f.leading().ok_or(AlgebraError::ZeroReducer)?;
    let wm = w.lm().ok_or(AlgebraError::ZeroReducer)?;
    if t.z.mul(lead.word) != wm.sandwich(&t.p, &t.q) {
        return Err(AlgebraError::Contract(
            "triple does not describe an overlap with the relation".to_string(),
        ));
    }
    let field = module.algebra().field();
    let mut s = f.mul_left(&t.z).scale(field.inv(lead.coeff).ok_or(AlgebraError::ZeroReducer)?);
    let mut pwq = module.zero();
    pwq.comps[lead.component] = w.monic().sandwich(&t.p, &t.q);
    s.add_scaled_left(field.neg(FieldElement::ONE), &Monomial::one(), &pwq);
    Ok(module.normalize(&s))
}

/// Monic reducers over a free module, optionally carrying a tag vector in
/// a second module that is transformed alongside every reduction step.
#[derive(Clone, Debug)]
pub struct ModuleReducer {
    module: FreeModule,
    tag_module: Option<FreeModule>,
    elems: Vec<ModuleVector>,
    tags: Vec<ModuleVector>,
    // per component, the reversed leading words
    index: Vec<WordTrie>,
}

impl ModuleReducer {
    pub fn new(module: FreeModule, tag_module: Option<FreeModule>) -> Self {
        let index = (0..module.rank()).map(|_| WordTrie::default()).collect();
        ModuleReducer {
            module,
            tag_module,
            elems: Vec::new(),
            tags: Vec::new(),
            index,
        }
    }

    pub fn from_vectors<I>(module: FreeModule, vs: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = ModuleVector>,
    {
        let mut r = ModuleReducer::new(module, None);
        for v in vs {
            r.insert(v, None)?;
        }
        Ok(r)
    }

    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn tag_module(&self) -> Option<&FreeModule> {
        self.tag_module.as_ref()
    }

    pub fn elements(&self) -> &[ModuleVector] {
        &self.elems
    }

    pub fn tags(&self) -> &[ModuleVector] {
        &self.tags
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Adds `v` (normalised, then made monic along with its tag).
    pub fn insert(&mut self, v: ModuleVector, tag: Option<ModuleVector>) -> Result<usize, AlgebraError> {
        if !self.module.owns(&v) {
            return Err(AlgebraError::Mismatch);
        }
        let v = self.module.normalize(&v);
        let lead = v.leading().ok_or(AlgebraError::ZeroReducer)?;
        let field = self.module.algebra().field();
        let inv = field.inv(lead.coeff).ok_or(AlgebraError::ZeroReducer)?;
        let id = self.elems.len();
        self.index[lead.component].insert(lead.word.letters().iter().rev().copied(), id as u32);
        if let Some(tm) = &self.tag_module {
            let tag = tag.unwrap_or_else(|| tm.zero());
            if !tm.owns(&tag) {
                return Err(AlgebraError::Mismatch);
            }
            self.tags.push(tm.normalize(&tag).scale(inv));
        }
        self.elems.push(v.scale(inv));
        Ok(id)
    }

    /// The element of smallest index whose leading monomial left-divides
    /// `word e_component`, with the quotient.
    pub fn find_divisor(&self, component: usize, word: &Monomial) -> Option<(usize, Monomial)> {
        let mut best: Option<(u32, usize)> = None;
        self.index[component].prefixes_of(word.letters().iter().rev().copied(), |depth, id| {
            if best.is_none_or(|(b, _)| id < b) {
                best = Some((id, depth));
            }
        });
        best.map(|(id, depth)| {
            let gens = self.module.algebra().generators();
            (id as usize, word.slice(0..word.len() - depth, gens))
        })
    }

    /// Full reduction of a vector and its tag. The value is normalised on
    /// entry and stays normalised: each step subtracts `c N(Z g)` for the
    /// greatest left-divisible term `c Z lm(g)`.
    pub fn reduce(&self, v: &ModuleVector, tag: Option<&ModuleVector>) -> (ModuleVector, Option<ModuleVector>) {
        let mut v = self.module.normalize(v);
        let mut tag = match (&self.tag_module, tag) {
            (Some(tm), Some(t)) => Some(tm.normalize(t)),
            _ => None,
        };
        let field = self.module.algebra().field();
        for i in 0..v.rank() {
            let mut j = 0;
            while j < v.comps[i].len() {
                let t = &v.comps[i].terms()[j];
                let Some((id, z)) = self.find_divisor(i, &t.monomial) else {
                    j += 1;
                    continue;
                };
                let c = field.neg(t.coeff);
                let zg = self.module.mul_left(&z, &self.elems[id]);
                debug_assert_eq!(zg.comps[i].terms().first().map(|t| &t.monomial), Some(&v.comps[i].terms()[j].monomial));
                v.add_scaled_left(c, &Monomial::one(), &zg);
                if let (Some(tag), Some(tm)) = (tag.as_mut(), &self.tag_module) {
                    let zt = tm.mul_left(&z, &self.tags[id]);
                    tag.add_scaled_left(c, &Monomial::one(), &zt);
                }
            }
        }
        (v, tag)
    }

    pub fn normal_form(&self, v: &ModuleVector) -> ModuleVector {
        self.reduce(v, None).0
    }

    /// Whether `v` is normalised and no term is left-divisible.
    pub fn is_reduced(&self, v: &ModuleVector) -> bool {
        self.module.is_normalized(v) && v.terms().all(|(i, t)| self.find_divisor(i, &t.monomial).is_none())
    }
}

/// `(Omega, k)`-reduction of `f` modulo `g`.
pub fn module_reduce(module: &FreeModule, f: &ModuleVector, g: &[ModuleVector]) -> Result<ModuleVector, AlgebraError> {
    let r = ModuleReducer::from_vectors(module.clone(), g.iter().cloned())?;
    Ok(r.normal_form(f))
}

/// Where a completion candidate came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CandidateOrigin {
    Seed(usize),
    Pair { first: usize, second: usize },
    Relation { element: usize, relation: usize, triple: OverlapTriple },
}

/// A candidate whose value reduced to zero; its tag is then a syzygy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroReduction {
    pub origin: CandidateOrigin,
    pub degree: u32,
    pub tag: Option<ModuleVector>,
}

#[derive(Clone, Debug)]
struct Candidate {
    value: ModuleVector,
    tag: Option<ModuleVector>,
    origin: CandidateOrigin,
}

/// Degree-by-degree Buchberger completion of a submodule.
///
/// Candidates are processed in ascending total degree; seeds may be added
/// between calls to [`run_through`](Self::run_through), which makes the
/// completion usable incrementally.
#[derive(Clone, Debug)]
pub struct ModuleCompletion {
    reducer: ModuleReducer,
    buckets: BTreeMap<u32, VecDeque<Candidate>>,
    zeros: Vec<ZeroReduction>,
    seeds: usize,
}

impl ModuleCompletion {
    pub fn new(module: FreeModule, tag_module: Option<FreeModule>) -> Self {
        ModuleCompletion {
            reducer: ModuleReducer::new(module, tag_module),
            buckets: BTreeMap::new(),
            zeros: Vec::new(),
            seeds: 0,
        }
    }

    pub fn module(&self) -> &FreeModule {
        self.reducer.module()
    }

    pub fn reducer(&self) -> &ModuleReducer {
        &self.reducer
    }

    pub fn into_reducer(self) -> ModuleReducer {
        self.reducer
    }

    pub fn zero_reductions(&self) -> &[ZeroReduction] {
        &self.zeros
    }

    /// Queues a homogeneous generator. Returns its seed index.
    pub fn add_seed(&mut self, value: &ModuleVector, tag: Option<ModuleVector>) -> Result<usize, AlgebraError> {
        let module = self.reducer.module();
        if !module.owns(value) {
            return Err(AlgebraError::Mismatch);
        }
        if !value.is_homogeneous(module.signature()) {
            return Err(AlgebraError::NotHomogeneous);
        }
        let id = self.seeds;
        self.seeds += 1;
        let v = module.normalize(value);
        if let Some(d) = v.degree(module.signature()) {
            self.buckets.entry(d).or_default().push_back(Candidate {
                value: v,
                tag,
                origin: CandidateOrigin::Seed(id),
            });
        } else if let Some(d) = value.degree(module.signature()) {
            // vanishes in the quotient already
            if d <= module.k() {
                self.zeros.push(ZeroReduction {
                    origin: CandidateOrigin::Seed(id),
                    degree: d,
                    tag,
                });
            }
        }
        Ok(id)
    }

    /// Processes every pending candidate of total degree `<= d`.
    pub fn run_through(&mut self, d: u32) {
        while let Some(mut entry) = self.buckets.first_entry() {
            if *entry.key() > d {
                break;
            }
            let degree = *entry.key();
            let Some(cand) = entry.get_mut().pop_front() else {
                entry.remove();
                continue;
            };
            self.process(degree, cand);
        }
    }

    pub fn run(&mut self) {
        let k = self.module().k();
        self.run_through(k);
    }

    fn process(&mut self, degree: u32, cand: Candidate) {
        let (r, tag) = self.reducer.reduce(&cand.value, cand.tag.as_ref());
        if r.is_zero() {
            self.zeros.push(ZeroReduction {
                origin: cand.origin,
                degree,
                tag,
            });
            return;
        }
        let new = self.reducer.insert(r, tag).expect("nonzero normalised vector");
        self.spawn(new);
    }

    fn spawn(&mut self, new: usize) {
        let module = self.reducer.module().clone();
        let k = module.k();
        let sig = module.signature().clone();
        let field = module.algebra().field();
        let minus = field.neg(FieldElement::ONE);
        let g = self.reducer.elems[new].clone();
        let g_tag = self.reducer.tags.get(new).cloned();
        let lead = g.leading().expect("nonzero").monomial();
        let deg = lead.degree(&sig);

        for (old, h) in self.reducer.elems.iter().enumerate().take(new) {
            let hl = h.leading().expect("nonzero").monomial();
            // S = zf f - zg g with both monic
            let (first, second, z_first, z_second) = if let Some(z) = left_divide(&hl, &lead) {
                (old, new, z, Monomial::one())
            } else if let Some(z) = left_divide(&lead, &hl) {
                (new, old, z, Monomial::one())
            } else {
                continue;
            };
            let (a, b) = (&self.reducer.elems[first], &self.reducer.elems[second]);
            let mut s = a.mul_left(&z_first);
            s.add_scaled_left(minus, &z_second, b);
            let s = module.normalize(&s);
            let tag = self.reducer.tag_module.as_ref().map(|tm| {
                let mut t = self.reducer.tags[first].mul_left(&z_first);
                t.add_scaled_left(minus, &z_second, &self.reducer.tags[second]);
                tm.normalize(&t)
            });
            let d = deg.max(hl.degree(&sig));
            self.buckets.entry(d).or_default().push_back(Candidate {
                value: s,
                tag,
                origin: CandidateOrigin::Pair { first, second },
            });
        }

        let ctx = module.ctx().clone();
        for (ri, w) in ctx.omega().reducers().iter().enumerate() {
            for t in relation_overlap_set(&g, w, module.algebra()) {
                let d = deg + t.z.degree();
                if d > k {
                    continue;
                }
                let s = relation_s_vector(&module, &g, w, &t).expect("valid triple");
                let tag = match (&self.reducer.tag_module, &g_tag) {
                    (Some(tm), Some(gt)) => Some(tm.mul_left(&t.z, gt)),
                    _ => None,
                };
                self.buckets.entry(d).or_default().push_back(Candidate {
                    value: s,
                    tag,
                    origin: CandidateOrigin::Relation {
                        element: new,
                        relation: ri,
                        triple: t,
                    },
                });
            }
        }
    }
}

/// A module Groebner basis through degree `k` of the submodule generated
/// by `rows`, with transformation matrices: row `j` of `S` expresses input
/// row `j` over the basis, row `l` of `T` expresses basis element `l` over
/// the input rows.
#[derive(Clone, Debug)]
pub struct ModuleGroebnerBasis {
    module: FreeModule,
    source: FreeModule,
    rows: Vec<ModuleVector>,
    reducer: ModuleReducer,
    t: Vec<ModuleVector>,
    s: Vec<ModuleVector>,
    zeros: Vec<ZeroReduction>,
}

impl ModuleGroebnerBasis {
    /// Target module of the rows and basis elements.
    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    /// Free module with one generator per input row, `|e'_j| = |f_j|`.
    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    /// Free module with one generator per basis element.
    pub fn basis_module(&self) -> FreeModule {
        let sig = Signature::new(self.elements().iter().map(|g| g.degree(self.module.signature()).unwrap_or(0)));
        FreeModule::new(self.module.ctx().clone(), sig)
    }

    pub fn rows(&self) -> &[ModuleVector] {
        &self.rows
    }

    pub fn elements(&self) -> &[ModuleVector] {
        self.reducer.elements()
    }

    pub fn t_matrix(&self) -> &[ModuleVector] {
        &self.t
    }

    pub fn s_matrix(&self) -> &[ModuleVector] {
        &self.s
    }

    /// Reductions to zero met during completion, tagged over the rows.
    pub fn zero_reductions(&self) -> &[ZeroReduction] {
        &self.zeros
    }

    pub fn normal_form(&self, v: &ModuleVector) -> ModuleVector {
        self.reducer.normal_form(v)
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.normal_form(v).is_zero()
    }

    /// A reducer over the basis without tags.
    pub fn reducer(&self) -> ModuleReducer {
        let mut r = ModuleReducer::new(self.module.clone(), None);
        for g in self.elements() {
            r.insert(g.clone(), None).expect("basis elements are nonzero");
        }
        r
    }

    /// Re-checks `F = N(S G)` and `G = N(T F)`.
    pub fn verify_transformations(&self) -> Result<(), AlgebraError> {
        for (f, srow) in self.rows.iter().zip(&self.s) {
            if self.module.combine(srow, self.elements()) != *f {
                return Err(AlgebraError::Contract("input row is not N(S G)".to_string()));
            }
        }
        for (g, trow) in self.elements().iter().zip(&self.t) {
            if self.module.combine(trow, &self.rows) != *g {
                return Err(AlgebraError::Contract("basis element is not N(T F)".to_string()));
            }
        }
        Ok(())
    }

    /// Module Buchberger criterion: every pair and relation S-vector of
    /// degree `<= k` reduces to zero.
    pub fn satisfies_criterion(&self) -> bool {
        let r = self.reducer();
        let k = self.module.k();
        let sig = self.module.signature();
        let elems = self.elements();
        for (i, f) in elems.iter().enumerate() {
            for g in &elems[i + 1..] {
                if let Some(s) = module_s_vector(&self.module, f, g) {
                    if !r.normal_form(&s).is_zero() {
                        return false;
                    }
                }
            }
            let deg = f.degree(sig).unwrap_or(0);
            for w in self.module.ctx().omega().reducers() {
                for t in relation_overlap_set(f, w, self.module.algebra()) {
                    if deg + t.z.degree() > k {
                        continue;
                    }
                    let s = relation_s_vector(&self.module, f, w, &t).expect("valid triple");
                    if !r.normal_form(&s).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Completes `rows` (nonzero, homogeneous) to a module Groebner basis
/// through degree `k`, recording both transformation matrices.
pub fn module_complete(module: &FreeModule, rows: &[ModuleVector]) -> Result<ModuleGroebnerBasis, AlgebraError> {
    let sig = module.signature();
    let mut degrees = Vec::with_capacity(rows.len());
    let mut normalized = Vec::with_capacity(rows.len());
    for f in rows {
        if !module.owns(f) {
            return Err(AlgebraError::Mismatch);
        }
        if !f.is_homogeneous(sig) {
            return Err(AlgebraError::NotHomogeneous);
        }
        degrees.push(f.degree(sig).ok_or_else(|| AlgebraError::Contract("zero row".to_string()))?);
        normalized.push(module.normalize(f));
    }
    let source = FreeModule::new(module.ctx().clone(), Signature::new(degrees));
    let mut comp = ModuleCompletion::new(module.clone(), Some(source.clone()));
    for (j, f) in normalized.iter().enumerate() {
        comp.add_seed(f, Some(source.unit(j)))?;
    }
    comp.run();
    let zeros = comp.zeros.clone();
    let reducer = comp.into_reducer();
    let t = reducer.tags().to_vec();

    // S by division of each row against the finished basis, tagging basis
    // element l with its own unit vector.
    let basis_sig = Signature::new(reducer.elements().iter().map(|g| g.degree(sig).unwrap_or(0)));
    let basis_module = FreeModule::new(module.ctx().clone(), basis_sig);
    let mut divider = ModuleReducer::new(module.clone(), Some(basis_module.clone()));
    for (l, g) in reducer.elements().iter().enumerate() {
        divider.insert(g.clone(), Some(basis_module.unit(l)))?;
    }
    let mut s = Vec::with_capacity(normalized.len());
    for f in &normalized {
        let (r, tag) = divider.reduce(f, Some(&basis_module.zero()));
        if !r.is_zero() {
            return Err(AlgebraError::Contract("input row does not reduce to zero".to_string()));
        }
        let field = module.algebra().field();
        s.push(tag.expect("tagged").scale(field.neg(FieldElement::ONE)));
    }

    let gb = ModuleGroebnerBasis {
        module: module.clone(),
        source,
        rows: normalized,
        reducer,
        t,
        s,
        zeros,
    };
    gb.verify_transformations()?;
    Ok(gb)
}
