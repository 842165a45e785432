//! Brute-force linear algebra used to audit the symbolic pipeline.
//!
//! Everything here works one internal degree at a time: reduced words give
//! an explicit basis of `Γ_t` (and of free modules in degree `t`), maps
//! become dense matrices over `F_p`, and exactness is a rank count. The
//! only symbolic machinery used is ring normal forms modulo `Omega`; no
//! Groebner completion, module reduction or syzygy code is involved.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::FreeAlgebra;
use crate::field::{FieldElement, PrimeField};
use crate::module::{ModuleMonomial, ModuleVector, Signature};
use crate::monomial::Monomial;
use crate::polynomial::Polynomial;
use crate::reduction::{ReducerSet, TruncatedContext};
use crate::resolution::{ModulePresentation, Resolution};

#[derive(Clone, Debug, PartialEq, Eq)]
enum RowBuf {
    Bits(Vec<u64>),
    Wide(Vec<u32>),
}

impl RowBuf {
    fn zeros(field: PrimeField, cols: usize) -> Self {
        if field.characteristic() == 2 {
            RowBuf::Bits(vec![0; cols.div_ceil(64)])
        } else {
            RowBuf::Wide(vec![0; cols])
        }
    }

    #[inline]
    fn get(&self, c: usize) -> u32 {
        match self {
            RowBuf::Bits(w) => ((w[c / 64] >> (c % 64)) & 1) as u32,
            RowBuf::Wide(v) => v[c],
        }
    }

    #[inline]
    fn set(&mut self, c: usize, x: u32) {
        match self {
            RowBuf::Bits(w) => {
                let mask = 1u64 << (c % 64);
                if x & 1 == 1 {
                    w[c / 64] |= mask;
                } else {
                    w[c / 64] &= !mask;
                }
            }
            RowBuf::Wide(v) => v[c] = x,
        }
    }

    /// `self += a * other`.
    fn axpy(&mut self, a: u32, other: &RowBuf, p: u32) {
        match (self, other) {
            (RowBuf::Bits(x), RowBuf::Bits(y)) => {
                if a & 1 == 1 {
                    for (u, v) in x.iter_mut().zip(y) {
                        *u ^= v;
                    }
                }
            }
            (RowBuf::Wide(x), RowBuf::Wide(y)) => {
                let (a, p) = (a as u64, p as u64);
                for (u, &v) in x.iter_mut().zip(y) {
                    if v != 0 {
                        *u = ((*u as u64 + a * v as u64) % p) as u32;
                    }
                }
            }
            _ => unreachable!("rows of one matrix share a representation"),
        }
    }

    fn scale(&mut self, a: u32, p: u32) {
        if let RowBuf::Wide(x) = self {
            for u in x.iter_mut() {
                *u = ((*u as u64 * a as u64) % p as u64) as u32;
            }
        }
    }

    fn first_nonzero(&self) -> Option<usize> {
        match self {
            RowBuf::Bits(w) => w
                .iter()
                .enumerate()
                .find(|(_, &x)| x != 0)
                .map(|(i, &x)| i * 64 + x.trailing_zeros() as usize),
            RowBuf::Wide(v) => v.iter().position(|&x| x != 0),
        }
    }
}

/// A dense matrix over `F_p`, rows bit-packed when `p = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrixFp {
    field: PrimeField,
    cols: usize,
    data: Vec<RowBuf>,
}

impl DenseMatrixFp {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        DenseMatrixFp {
            field,
            cols,
            data: (0..rows).map(|_| RowBuf::zeros(field, cols)).collect(),
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<FieldElement>]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.data.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.field.element(self.data[r].get(c) as i64)
    }

    pub fn set(&mut self, r: usize, c: usize, x: FieldElement) {
        self.data[r].set(c, x.value());
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.first_nonzero().is_none())
    }

    pub fn transpose(&self) -> DenseMatrixFp {
        let mut t = Self::zeros(self.field, self.cols, self.rows());
        for (i, r) in self.data.iter().enumerate() {
            for j in 0..self.cols {
                let x = r.get(j);
                if x != 0 {
                    t.data[j].set(i, x);
                }
            }
        }
        t
    }

    /// `self * other`, or `None` on a shape mismatch.
    pub fn mul(&self, other: &DenseMatrixFp) -> Option<DenseMatrixFp> {
        if self.cols != other.rows() || self.field != other.field {
            return None;
        }
        let p = self.field.characteristic();
        let mut out = Self::zeros(self.field, self.rows(), other.cols);
        for (i, r) in self.data.iter().enumerate() {
            for j in 0..self.cols {
                let a = r.get(j);
                if a != 0 {
                    out.data[i].axpy(a, &other.data[j], p);
                }
            }
        }
        Some(out)
    }

    /// Reduced row echelon form; returns it with the pivot columns.
    fn rref(&self) -> (Vec<RowBuf>, Vec<usize>) {
        let p = self.field.characteristic();
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r].get(c) != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = self.field.inv(self.field.element(rows[rank].get(c) as i64)).expect("nonzero pivot");
            rows[rank].scale(inv.value(), p);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank {
                    let x = row.get(c);
                    if x != 0 {
                        row.axpy(p - x, &pivot_row, p);
                    }
                }
            }
            pivots.push(c);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The rank and a basis of `{x : self * x = 0}`.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<FieldElement>>) {
        let (rows, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut kernel = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![FieldElement::ZERO; self.cols];
            x[f] = FieldElement::ONE;
            for (row, &pc) in rows.iter().zip(&pivots) {
                x[pc] = self.field.neg(self.field.element(row.get(f) as i64));
            }
            kernel.push(x);
        }
        (pivots.len(), kernel)
    }
}

/// Incrementally grown row space.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: PrimeField,
    cols: usize,
    by_pivot: BTreeMap<usize, RowBuf>,
}

impl RowSpace {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        RowSpace {
            field,
            cols,
            by_pivot: BTreeMap::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.by_pivot.len()
    }

    /// Adds a row given by its nonzero entries; returns whether the
    /// dimension grew.
    pub fn insert(&mut self, entries: &[(usize, FieldElement)]) -> bool {
        let mut row = RowBuf::zeros(self.field, self.cols);
        for &(c, x) in entries {
            let old = self.field.element(row.get(c) as i64);
            row.set(c, self.field.add(old, x).value());
        }
        self.insert_buf(row)
    }

    fn insert_buf(&mut self, mut row: RowBuf) -> bool {
        let p = self.field.characteristic();
        while let Some(c) = row.first_nonzero() {
            match self.by_pivot.get(&c) {
                Some(piv) => {
                    let x = row.get(c);
                    row.axpy(p - x, piv, p);
                }
                None => {
                    let inv = self.field.inv(self.field.element(row.get(c) as i64)).expect("nonzero");
                    row.scale(inv.value(), p);
                    self.by_pivot.insert(c, row);
                    return true;
                }
            }
        }
        false
    }
}

/// Words reduced modulo `Omega`, grouped by degree.
#[derive(Clone, Debug)]
pub struct ReducedWords {
    by_degree: Vec<Vec<Monomial>>,
}

impl ReducedWords {
    /// Enumerates by appending one letter at a time; a word with a
    /// reducible prefix is never extended.
    pub fn new(omega: &ReducerSet, max_degree: u32) -> Self {
        let alg = omega.algebra();
        let gens = alg.generators();
        let order = alg.order();
        let mut by_degree: Vec<Vec<Monomial>> = vec![vec![Monomial::one()]];
        for t in 1..=max_degree {
            let mut here = Vec::new();
            for (l, g) in gens.iter() {
                if g.degree > t {
                    continue;
                }
                let x = Monomial::generator(l, gens);
                for w in &by_degree[(t - g.degree) as usize] {
                    let wx = w.mul(&x);
                    if !omega.is_reducible(&wx) {
                        here.push(wx);
                    }
                }
            }
            here.sort_by(|a, b| order.compare(b, a));
            by_degree.push(here);
        }
        ReducedWords { by_degree }
    }

    pub fn max_degree(&self) -> u32 {
        (self.by_degree.len() - 1) as u32
    }

    pub fn of_degree(&self, t: u32) -> &[Monomial] {
        self.by_degree.get(t as usize).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, t: u32) -> usize {
        self.of_degree(t).len()
    }
}

/// The monomial basis of a free module in one total degree, in POT
/// descending order.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    pub degree: u32,
    pub monomials: Vec<ModuleMonomial>,
    index: BTreeMap<(usize, Monomial), usize>,
}

impl DegreeBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, component: usize, word: &Monomial) -> Option<usize> {
        self.index.get(&(component, word.clone())).copied()
    }

    /// Coordinates of a vector of this degree, or `None` when some term is
    /// outside the basis.
    pub fn coordinates(&self, field: PrimeField, v: &ModuleVector) -> Option<Vec<FieldElement>> {
        let mut x = vec![FieldElement::ZERO; self.len()];
        for (i, t) in v.terms() {
            let j = self.position(i, &t.monomial)?;
            x[j] = field.add(x[j], t.coeff);
        }
        Some(x)
    }
}

pub fn gamma_basis(words: &ReducedWords, sig: &Signature, t: u32) -> DegreeBasis {
    let mut monomials = Vec::new();
    for (i, &d) in sig.degrees().iter().enumerate() {
        if d <= t {
            for w in words.of_degree(t - d) {
                monomials.push(ModuleMonomial::new(i, w.clone()));
            }
        }
    }
    let index = monomials
        .iter()
        .enumerate()
        .map(|(j, m)| ((m.component, m.word.clone()), j))
        .collect();
    DegreeBasis {
        degree: t,
        monomials,
        index,
    }
}

/// Degree-`t` matrix of the map sending source generator `i` to `rows[i]`:
/// column `j` holds the coordinates of `N(w * rows[i])` for the `j`-th
/// source basis monomial `w e'_i`.
pub fn matrix_of(
    ctx: &TruncatedContext,
    words: &ReducedWords,
    rows: &[ModuleVector],
    source: &Signature,
    target: &Signature,
    t: u32,
) -> DenseMatrixFp {
    let field = ctx.algebra().field();
    let sb = gamma_basis(words, source, t);
    let tb = gamma_basis(words, target, t);
    let mut m = DenseMatrixFp::zeros(field, tb.len(), sb.len());
    for (j, mono) in sb.monomials.iter().enumerate() {
        for (c, p) in rows[mono.component].components().iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let image = ctx.normal_form(&p.mul_left(&mono.word));
            for term in image.terms() {
                if term.monomial.degree() + target.degree(c) != t {
                    continue;
                }
                let r = tb.position(c, &term.monomial).expect("normal forms consist of reduced words");
                let old = m.get(r, j);
                m.set(r, j, field.add(old, term.coeff));
            }
        }
    }
    m
}

/// Dimension in degree `t` of the submodule generated by `rows` (over a
/// free module with signature `target`): the rank of `matrix_of`.
pub fn span_dimension(ctx: &TruncatedContext, words: &ReducedWords, rows: &[ModuleVector], target: &Signature, t: u32) -> usize {
    let sig = Signature::new(rows.iter().map(|r| r.degree(target).unwrap_or(u32::MAX)));
    let kept: Vec<ModuleVector> = rows.to_vec();
    matrix_of(ctx, words, &kept, &sig, target, t).rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// `d_{n-1} d_n` is not zero in this degree.
    Composite,
    /// Kernel and image dimensions disagree at `P_n`.
    Exactness { kernel: usize, image: usize },
    /// A differential row has a unit-word coefficient.
    UnitTerm,
    /// The image of `d_1` has the right dimension but is not the span of
    /// the presentation's relations.
    Augmentation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub stage: usize,
    pub degree: u32,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `d d = 0`, exactness at every `P_s` with `s < s_max` and every
/// `t <= k`, and that no differential row has a unit-word term.
pub fn verify_resolution(res: &Resolution) -> VerificationReport {
    let words = ReducedWords::new(res.ctx().omega(), res.k());
    let mut violations = verify_unit_terms(res);
    for t in 0..=res.k() {
        violations.extend(verify_degree(res, &words, t));
    }
    VerificationReport { violations }
}

/// Differential rows with a unit-word coefficient.
pub fn verify_unit_terms(res: &Resolution) -> Vec<Violation> {
    let stages = res.stages();
    let mut out = Vec::new();
    for (n, st) in stages.iter().enumerate().skip(1) {
        let psig = stages[n - 1].module().signature();
        for r in st.differential() {
            if r.unit_term().is_some() {
                out.push(Violation {
                    stage: n,
                    degree: r.degree(psig).unwrap_or(0),
                    kind: ViolationKind::UnitTerm,
                });
            }
        }
    }
    out
}

/// The composite and exactness checks in internal degree `t`. Degrees are
/// independent of one another.
pub fn verify_degree(res: &Resolution, words: &ReducedWords, t: u32) -> Vec<Violation> {
    let ctx = res.ctx();
    let stages = res.stages();
    let mut out = Vec::new();
    // mats[n - 1] is d_n : P_n -> P_{n-1}
    let mats: Vec<DenseMatrixFp> = (1..stages.len())
        .map(|n| {
            let st = &stages[n];
            matrix_of(ctx, words, st.differential(), st.module().signature(), stages[n - 1].module().signature(), t)
        })
        .collect();
    for n in 2..stages.len() {
        if !mats[n - 2].mul(&mats[n - 1]).is_some_and(|m| m.is_zero()) {
            out.push(Violation {
                stage: n,
                degree: t,
                kind: ViolationKind::Composite,
            });
        }
    }
    for n in 0..mats.len() {
        let image = mats[n].rank();
        let kernel = if n == 0 {
            match res.presentation() {
                ModulePresentation::TrivialModule => {
                    gamma_basis(words, stages[0].module().signature(), t).len() - usize::from(t == 0)
                }
                ModulePresentation::Cokernel { relations, signature } => {
                    // the submodule the relations generate, in degree t
                    let rel: Vec<ModuleVector> = relations
                        .iter()
                        .map(|r| ctx_normalize(ctx, signature, r))
                        .filter(|r| !r.is_zero())
                        .collect();
                    let rel_sig = Signature::new(rel.iter().map(|r| r.degree(signature).expect("nonzero")));
                    let rel_m = matrix_of(ctx, words, &rel, &rel_sig, signature, t);
                    let rel_rank = rel_m.rank();
                    // equal dimensions are not enough: the spans must agree
                    if rel_rank == image && hcat(&rel_m, &mats[0]).rank() != image {
                        out.push(Violation {
                            stage: 0,
                            degree: t,
                            kind: ViolationKind::Augmentation,
                        });
                    }
                    rel_rank
                }
            }
        } else {
            mats[n - 1].cols() - mats[n - 1].rank()
        };
        if kernel != image {
            out.push(Violation {
                stage: n,
                degree: t,
                kind: ViolationKind::Exactness { kernel, image },
            });
        }
    }
    out
}

fn ctx_normalize(ctx: &TruncatedContext, sig: &Signature, v: &ModuleVector) -> ModuleVector {
    let comps = v
        .components()
        .iter()
        .enumerate()
        .map(|(i, p)| match sig.budget(i, ctx.k()) {
            Some(b) => ctx.truncated_normal_form(p, b),
            None => ctx.algebra().zero(),
        })
        .collect();
    ModuleVector::from_components(comps)
}

fn hcat(a: &DenseMatrixFp, b: &DenseMatrixFp) -> DenseMatrixFp {
    let mut m = DenseMatrixFp::zeros(a.field(), a.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m.set(r, c, a.get(r, c));
        }
        for c in 0..b.cols() {
            m.set(r, a.cols() + c, b.get(r, c));
        }
    }
    m
}

/// Every word of degree `t` in the free algebra, relations ignored.
pub fn all_words(algebra: &FreeAlgebra, t: u32) -> Vec<Monomial> {
    let gens = algebra.generators();
    let mut by_degree: Vec<Vec<Monomial>> = vec![vec![Monomial::one()]];
    for d in 1..=t {
        let mut here = Vec::new();
        for (l, g) in gens.iter() {
            if g.degree <= d {
                let x = Monomial::generator(l, gens);
                for w in &by_degree[(d - g.degree) as usize] {
                    here.push(w.mul(&x));
                }
            }
        }
        by_degree.push(here);
    }
    by_degree.pop().unwrap_or_default()
}

/// `dim (R / <relations>)_t` for `t = 0..=t_max` by linear algebra alone:
/// the ideal in degree `t` is spanned by the relations of degree `t` and by
/// `x b`, `b x` for generators `x` and spanning vectors `b` of lower
/// degrees.
pub fn quotient_dimensions(algebra: &FreeAlgebra, relations: &[Polynomial], t_max: u32) -> Vec<usize> {
    let field = algebra.field();
    let gens = algebra.generators();
    let mut spans: Vec<Vec<Polynomial>> = Vec::new();
    let mut dims = Vec::new();
    for t in 0..=t_max {
        let words = all_words(algebra, t);
        let index: BTreeMap<Monomial, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut space = RowSpace::new(field, words.len());
        let mut basis = Vec::new();
        let offer = |p: Polynomial, space: &mut RowSpace, basis: &mut Vec<Polynomial>| {
            let entries: Vec<(usize, FieldElement)> = p.terms().iter().map(|tm| (index[&tm.monomial], tm.coeff)).collect();
            if space.insert(&entries) {
                basis.push(p);
            }
        };
        for r in relations.iter().filter(|r| r.degree() == Some(t)) {
            offer(r.clone(), &mut space, &mut basis);
        }
        for (l, g) in gens.iter() {
            if g.degree > t {
                continue;
            }
            let x = Monomial::generator(l, gens);
            for b in &spans[(t - g.degree) as usize] {
                offer(b.mul_left(&x), &mut space, &mut basis);
                offer(b.mul_right(&x), &mut space, &mut basis);
            }
        }
        dims.push(words.len() - space.dimension());
        spans.push(basis);
    }
    dims
}
