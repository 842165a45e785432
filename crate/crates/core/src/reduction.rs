//! Two-sided division of ring polynomials and truncated normal forms.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::FreeAlgebra;
use crate::error::AlgebraError;
use crate::field::FieldElement;
use crate::monomial::{GeneratorTable, Monomial};
use crate::polynomial::Polynomial;
use crate::trie::WordTrie;

/// Leftmost factorisation `y = u * x * v`, if `x` is a factor of `y`.
pub fn divides(x: &Monomial, y: &Monomial, gens: &GeneratorTable) -> Option<(Monomial, Monomial)> {
    let s = y.find_factor(x)?;
    Some((y.slice(0..s, gens), y.slice(s + x.len()..y.len(), gens)))
}

/// One recorded reduction step: the running polynomial had
/// `coeff * left * reducer * right` subtracted from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub reducer: usize,
    pub left: Monomial,
    pub right: Monomial,
    pub coeff: FieldElement,
}

/// Result of a single reduction attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneStep {
    pub result: Polynomial,
    /// `false` when no term of the input was divisible, in which case
    /// `result` is the input unchanged.
    pub reduced: bool,
}

/// `f -> h` modulo `g` in one step, rewriting the greatest reducible term
/// of `f` at the leftmost occurrence of `lm(g)`.
pub fn reduce_once(f: &Polynomial, g: &Polynomial, gens: &GeneratorTable) -> Result<OneStep, AlgebraError> {
    let lm_g = g.lm().ok_or(AlgebraError::ZeroReducer)?;
    if !f.compatible(g) {
        return Err(AlgebraError::Mismatch);
    }
    let field = f.field();
    for t in f.terms() {
        if let Some((u, v)) = divides(lm_g, &t.monomial, gens) {
            let c = field.div(t.coeff, g.lc()).expect("nonzero leading coefficient");
            let mut h = f.clone();
            h.add_scaled_sandwich(field.neg(c), &u, g, &v);
            return Ok(OneStep {
                result: h,
                reduced: true,
            });
        }
    }
    Ok(OneStep {
        result: f.clone(),
        reduced: false,
    })
}

/// Where a reducer's leading word sits inside a queried word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub reducer: usize,
    pub start: usize,
}

/// Indexed family of monic reducers sharing one algebra.
///
/// The leading words are kept in a trie so factor queries cost
/// `O(len * depth)` per word.
#[derive(Clone, Debug)]
pub struct ReducerSet {
    algebra: FreeAlgebra,
    reducers: Vec<Polynomial>,
    index: WordTrie,
}

impl ReducerSet {
    pub fn new(algebra: FreeAlgebra) -> Self {
        ReducerSet {
            algebra,
            reducers: Vec::new(),
            index: WordTrie::default(),
        }
    }

    pub fn from_polynomials<I>(algebra: FreeAlgebra, polys: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = Polynomial>,
    {
        let mut set = ReducerSet::new(algebra);
        for p in polys {
            set.insert(p)?;
        }
        Ok(set)
    }

    /// Adds `p`, normalised monic. Returns its index.
    pub fn insert(&mut self, p: Polynomial) -> Result<usize, AlgebraError> {
        if !self.algebra.owns(&p) {
            return Err(AlgebraError::Mismatch);
        }
        let p = p.monic();
        let lm = p.lm().ok_or(AlgebraError::ZeroReducer)?;
        let id = self.reducers.len();
        self.index.insert(lm.letters().iter().copied(), id as u32);
        self.reducers.push(p);
        Ok(id)
    }

    #[inline]
    pub fn algebra(&self) -> &FreeAlgebra {
        &self.algebra
    }

    #[inline]
    pub fn reducers(&self) -> &[Polynomial] {
        &self.reducers
    }

    pub fn len(&self) -> usize {
        self.reducers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reducers.is_empty()
    }

    /// Every reducer whose leading word occurs in `m`, with every position.
    pub fn divisors(&self, m: &Monomial) -> Vec<Divisor> {
        let w = m.letters();
        let mut out = Vec::new();
        for start in 0..=w.len() {
            self.index.prefixes_of(w[start..].iter().copied(), |_, id| {
                out.push(Divisor {
                    reducer: id as usize,
                    start,
                })
            });
        }
        out
    }

    /// The reducer of smallest index dividing `m`, at its leftmost occurrence.
    pub fn find_divisor(&self, m: &Monomial) -> Option<Divisor> {
        let w = m.letters();
        let mut best: Option<Divisor> = None;
        for start in 0..=w.len() {
            self.index.prefixes_of(w[start..].iter().copied(), |_, id| {
                let id = id as usize;
                if best.is_none_or(|b| id < b.reducer) {
                    best = Some(Divisor { reducer: id, start });
                }
            });
        }
        best
    }

    pub fn is_reducible(&self, m: &Monomial) -> bool {
        let w = m.letters();
        let mut hit = false;
        for start in 0..=w.len() {
            self.index.prefixes_of(w[start..].iter().copied(), |_, _| hit = true);
            if hit {
                return true;
            }
        }
        false
    }

    /// Whether no term of `f` is divisible by a leading word.
    pub fn is_reduced(&self, f: &Polynomial) -> bool {
        f.terms().iter().all(|t| !self.is_reducible(&t.monomial))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.reduce_from(f.clone(), 0, None)
    }

    /// Normal form together with the reduction steps taken.
    pub fn normal_form_traced(&self, f: &Polynomial) -> (Polynomial, Vec<TraceStep>) {
        let mut trace = Vec::new();
        let h = self.reduce_from(f.clone(), 0, Some(&mut trace));
        (h, trace)
    }

    /// Reduces terms at positions `>= from`; earlier terms must already be
    /// irreducible and are left untouched.
    pub(crate) fn reduce_from(
        &self,
        mut h: Polynomial,
        from: usize,
        mut trace: Option<&mut Vec<TraceStep>>,
    ) -> Polynomial {
        let field = h.field();
        let gens = self.algebra.generators();
        let mut i = from;
        while i < h.len() {
            let t = &h.terms()[i];
            match self.find_divisor(&t.monomial) {
                None => i += 1,
                Some(d) => {
                    let g = &self.reducers[d.reducer];
                    let glen = g.lm().map_or(0, Monomial::len);
                    let x = &t.monomial;
                    let left = x.slice(0..d.start, gens);
                    let right = x.slice(d.start + glen..x.len(), gens);
                    let c = t.coeff;
                    h.add_scaled_sandwich(field.neg(c), &left, g, &right);
                    if let Some(tr) = trace.as_deref_mut() {
                        tr.push(TraceStep {
                            reducer: d.reducer,
                            left,
                            right,
                            coeff: c,
                        });
                    }
                }
            }
        }
        h
    }
}

/// Relations `Omega` together with a truncation degree `k`.
///
/// Reduction here stands for reduction modulo `Omega(k)`, i.e. `Omega`
/// together with everything of degree above the budget; that ideal is never
/// materialised. `Omega` is expected to be a Groebner basis.
#[derive(Clone, Debug)]
pub struct TruncatedContext {
    omega: Arc<ReducerSet>,
    k: u32,
}

impl TruncatedContext {
    pub fn new(omega: ReducerSet, k: u32) -> Self {
        TruncatedContext {
            omega: Arc::new(omega),
            k,
        }
    }

    #[inline]
    pub fn omega(&self) -> &ReducerSet {
        &self.omega
    }

    #[inline]
    pub fn algebra(&self) -> &FreeAlgebra {
        self.omega.algebra()
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    /// The same relations under a different truncation degree.
    pub fn with_k(&self, k: u32) -> Self {
        TruncatedContext {
            omega: Arc::clone(&self.omega),
            k,
        }
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.omega.normal_form(f)
    }

    /// Normal form modulo `Omega` with every term above `budget` deleted.
    pub fn truncated_normal_form(&self, f: &Polynomial, budget: u32) -> Polynomial {
        let mut g = f.clone();
        g.truncate_above(budget);
        if g.is_zero() {
            return g;
        }
        let mut h = self.omega.normal_form(&g);
        h.truncate_above(budget);
        h
    }

    /// `N(left * f)`, the product in the quotient algebra, cut at `budget`.
    pub fn mul_left(&self, left: &Monomial, f: &Polynomial, budget: u32) -> Polynomial {
        let mut g = f.mul_left(left);
        g.truncate_above(budget);
        self.omega.normal_form(&g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::MonomialOrder;
    use crate::steenrod::steenrod_context;
    use alloc::string::ToString;

    fn xs() -> FreeAlgebra {
        let gens = GeneratorTable::new([("x1", 1), ("x2", 1), ("x3", 1)]).unwrap();
        FreeAlgebra::new(PrimeField::F2, gens, MonomialOrder::LeftLengthLex)
    }

    #[test]
    fn divides_leftmost() {
        let a = xs();
        let g = a.generators();
        let y = a.word(&[0, 1, 2, 0]);
        assert_eq!(divides(&a.word(&[0, 1]), &y, g), Some((Monomial::one(), a.word(&[2, 0]))));
        assert_eq!(divides(&y, &y, g), Some((Monomial::one(), Monomial::one())));
        assert_eq!(divides(&a.word(&[2]), &a.word(&[0, 1]), g), None);
        // leftmost of two occurrences
        let z = a.word(&[1, 0, 1]);
        assert_eq!(divides(&a.word(&[1]), &z, g).unwrap().0, Monomial::one());
    }

    #[test]
    fn one_step_reduction() {
        let a = xs();
        let f = a.parse("x1*x2*x3*x1 + x1*x2").unwrap();
        let g = a.parse("x1*x2 + x2").unwrap();
        let step = reduce_once(&f, &g, a.generators()).unwrap();
        assert!(step.reduced);
        assert_eq!(a.display(&step.result).to_string(), "x2*x3*x1 + x1*x2");
        let step2 = reduce_once(&step.result, &g, a.generators()).unwrap();
        assert_eq!(a.display(&step2.result).to_string(), "x2*x3*x1 + x2");

        assert!(reduce_once(&g, &g, a.generators()).unwrap().result.is_zero());

        let x2 = a.parse("x2").unwrap();
        let noop = reduce_once(&x2, &g, a.generators()).unwrap();
        assert!(!noop.reduced);
        assert_eq!(noop.result, x2);

        assert_eq!(reduce_once(&f, &a.zero(), a.generators()), Err(AlgebraError::ZeroReducer));
    }

    #[test]
    fn mismatched_operands() {
        let a = xs();
        let b = FreeAlgebra::new(PrimeField::new(3).unwrap(), a.generators().clone(), a.order());
        let f = a.parse("x1").unwrap();
        let g = b.parse("x1").unwrap();
        assert_eq!(reduce_once(&f, &g, a.generators()), Err(AlgebraError::Mismatch));
        assert!(f.add(&g).is_err());
        let mut set = ReducerSet::new(a);
        assert_eq!(set.insert(g), Err(AlgebraError::Mismatch));
    }

    #[test]
    fn adem_normal_forms() {
        let ctx = steenrod_context(12);
        let a = ctx.algebra();
        let nf = |s: &str| a.display(&ctx.normal_form(&a.parse(s).unwrap())).to_string();
        assert_eq!(nf("Sq1*Sq1"), "0");
        assert_eq!(nf("Sq2*Sq2"), "Sq3*Sq1");
        assert_eq!(nf("Sq1*Sq2"), "Sq3");
        assert_eq!(nf("Sq4*Sq2*Sq1"), "Sq4*Sq2*Sq1");
        assert_eq!(nf("Sq2*Sq2*Sq2"), "Sq5*Sq1");
    }

    #[test]
    fn truncation() {
        let ctx = steenrod_context(6);
        let a = ctx.algebra();
        let f = a.parse("Sq4*Sq3").unwrap();
        assert!(ctx.truncated_normal_form(&f, 6).is_zero());
        let sq3 = a.parse("Sq3").unwrap();
        assert_eq!(ctx.truncated_normal_form(&sq3, 3), sq3);
        let f = a.parse("Sq1*Sq2").unwrap();
        assert_eq!(ctx.truncated_normal_form(&f, 3), sq3);
        assert!(ctx.truncated_normal_form(&f, 2).is_zero());
    }

    #[test]
    fn trace_replays_to_input() {
        let ctx = steenrod_context(10);
        let a = ctx.algebra();
        let f = a.parse("Sq2*Sq2*Sq3 + Sq1*Sq1*Sq5 + Sq3*Sq4").unwrap();
        let (h, trace) = ctx.omega().normal_form_traced(&f);
        assert!(!trace.is_empty());
        let mut acc = h.clone();
        for st in &trace {
            let g = &ctx.omega().reducers()[st.reducer];
            acc.add_scaled_sandwich(st.coeff, &st.left, g, &st.right);
        }
        assert_eq!(acc, f);
    }
}
