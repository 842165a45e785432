//! Overlaps, S-polynomials and degree-truncated Buchberger completion for
//! two-sided ideals of the free algebra.

use alloc::collections::BTreeMap;
use alloc::collections::VecDeque;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::algebra::FreeAlgebra;
use crate::error::AlgebraError;
use crate::monomial::{GeneratorTable, Monomial};
use crate::polynomial::Polynomial;
use crate::reduction::ReducerSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverlapKind {
    /// A proper suffix of `lm(g)` is a prefix of `lm(f)`: `z lm(f) = lm(g) q`.
    Overlap,
    /// `lm(f) = p lm(g) q`.
    Containment,
}

/// `(z, p, q)` with `z * lm(f) = p * lm(g) * q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OverlapTriple {
    pub z: Monomial,
    pub p: Monomial,
    pub q: Monomial,
    pub kind: OverlapKind,
}

impl OverlapTriple {
    /// The word `z * lm(f)` on which the two leading terms meet.
    pub fn overlap_word(&self, lm_f: &Monomial) -> Monomial {
        self.z.mul(lm_f)
    }

    pub fn is_trivial(&self) -> bool {
        self.z.is_one() && self.p.is_one() && self.q.is_one()
    }
}

/// All overlap and containment triples of `lm(f)` against `lm(g)`.
///
/// The relation is not symmetric; callers wanting every critical pair
/// enumerate both `(f, g)` and `(g, f)`.
pub fn overlap_set(f: &Polynomial, g: &Polynomial, gens: &GeneratorTable) -> Vec<OverlapTriple> {
    match (f.lm(), g.lm()) {
        (Some(a), Some(b)) => word_overlaps(a, b, gens),
        _ => Vec::new(),
    }
}

pub(crate) fn word_overlaps(lf: &Monomial, lg: &Monomial, gens: &GeneratorTable) -> Vec<OverlapTriple> {
    let (fw, gw) = (lf.letters(), lg.letters());
    let (n, m) = (fw.len(), gw.len());
    let mut out = Vec::new();
    // z = gw[..j] a nonempty proper prefix, gw[j..] a prefix of fw
    for j in 1..m {
        let rest = &gw[j..];
        if rest.len() <= n && &fw[..rest.len()] == rest {
            out.push(OverlapTriple {
                z: lg.slice(0..j, gens),
                p: Monomial::one(),
                q: lf.slice(rest.len()..n, gens),
                kind: OverlapKind::Overlap,
            });
        }
    }
    if m <= n {
        for s in 0..=n - m {
            if &fw[s..s + m] == gw {
                out.push(OverlapTriple {
                    z: Monomial::one(),
                    p: lf.slice(0..s, gens),
                    q: lf.slice(s + m..n, gens),
                    kind: OverlapKind::Containment,
                });
            }
        }
    }
    out
}

/// `z f - p g q`, with `f` and `g` first scaled monic.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, t: &OverlapTriple) -> Result<Polynomial, AlgebraError> {
    let (lf, lg) = match (f.lm(), g.lm()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(AlgebraError::ZeroReducer),
    };
    if t.z.mul(lf) != lg.sandwich(&t.p, &t.q) {
        return Err(AlgebraError::Contract("triple does not describe an overlap of the leading words".to_string()));
    }
    let field = f.field();
    let mut s = f.monic().mul_left(&t.z);
    let gm = g.monic();
    s.add_scaled_sandwich(field.neg(crate::FieldElement::ONE), &t.p, &gm, &t.q);
    Ok(s)
}

/// A processed critical pair of the completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairRecord {
    /// Insertion indices (before the final interreduction).
    pub first: usize,
    pub second: usize,
    pub triple: OverlapTriple,
    pub degree: u32,
    pub reduced_to_zero: bool,
}

/// A two-sided Groebner basis, complete through degree `k`.
#[derive(Clone, Debug)]
pub struct RingGroebnerBasis {
    basis: ReducerSet,
    k: u32,
    pairs: Vec<PairRecord>,
}

impl RingGroebnerBasis {
    pub fn basis(&self) -> &ReducerSet {
        &self.basis
    }

    pub fn into_basis(self) -> ReducerSet {
        self.basis
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn pairs(&self) -> &[PairRecord] {
        &self.pairs
    }

    pub fn elements(&self) -> &[Polynomial] {
        self.basis.reducers()
    }
}

struct Candidate {
    poly: Polynomial,
    pair: Option<(usize, usize, OverlapTriple)>,
}

/// Buchberger completion of homogeneous `seed` through degree `k`.
///
/// Critical pairs are processed in ascending degree of their overlap word;
/// pairs above `k` are never formed. The result is interreduced, monic and
/// sorted by (degree, leading word).
pub fn complete(algebra: &FreeAlgebra, seed: &[Polynomial], k: u32) -> Result<RingGroebnerBasis, AlgebraError> {
    let gens = algebra.generators();
    let mut buckets: BTreeMap<u32, VecDeque<Candidate>> = BTreeMap::new();
    for f in seed {
        if !algebra.owns(f) {
            return Err(AlgebraError::Mismatch);
        }
        if !f.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous);
        }
        match f.degree() {
            Some(d) if d <= k => buckets.entry(d).or_default().push_back(Candidate { poly: f.clone(), pair: None }),
            _ => {}
        }
    }

    let mut basis = ReducerSet::new(algebra.clone());
    let mut pairs = Vec::new();
    while let Some(mut entry) = buckets.first_entry() {
        let Some(cand) = entry.get_mut().pop_front() else {
            entry.remove();
            continue;
        };
        let r = basis.normal_form(&cand.poly);
        if let Some((first, second, triple)) = cand.pair {
            pairs.push(PairRecord {
                first,
                second,
                degree: cand.poly.degree().unwrap_or(0).max(triple.z.degree()),
                triple,
                reduced_to_zero: r.is_zero(),
            });
        }
        if r.is_zero() {
            continue;
        }
        let new = basis.insert(r)?;
        let fresh = basis.reducers()[new].clone();
        for (old, g) in basis.reducers().iter().enumerate() {
            let mut push = |a: &Polynomial, ai: usize, b: &Polynomial, bi: usize| {
                for t in overlap_set(a, b, gens) {
                    if ai == bi && t.is_trivial() {
                        continue;
                    }
                    let d = t.overlap_word(a.lm().expect("nonzero")).degree();
                    if d > k {
                        continue;
                    }
                    let s = s_polynomial(a, b, &t).expect("valid triple");
                    buckets.entry(d).or_default().push_back(Candidate {
                        poly: s,
                        pair: Some((ai, bi, t)),
                    });
                }
            };
            push(&fresh, new, g, old);
            if old != new {
                push(g, old, &fresh, new);
            }
        }
    }

    Ok(RingGroebnerBasis {
        basis: interreduce(algebra, basis.reducers())?,
        k,
        pairs,
    })
}

/// Tail-reduces every element by the others, then sorts by (degree, lm).
fn interreduce(algebra: &FreeAlgebra, elems: &[Polynomial]) -> Result<ReducerSet, AlgebraError> {
    let mut elems: Vec<Polynomial> = elems.to_vec();
    for i in 0..elems.len() {
        let others = ReducerSet::from_polynomials(
            algebra.clone(),
            elems.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()),
        )?;
        elems[i] = others.normal_form(&elems[i]).monic();
    }
    elems.retain(|p| !p.is_zero());
    let order = algebra.order();
    elems.sort_by(|a, b| compare_by_degree_then_lm(order, a, b));
    ReducerSet::from_polynomials(algebra.clone(), elems)
}

fn compare_by_degree_then_lm(order: crate::MonomialOrder, a: &Polynomial, b: &Polynomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| match (a.lm(), b.lm()) {
        (Some(x), Some(y)) => order.compare(x, y),
        _ => Ordering::Equal,
    })
}

/// A critical pair whose S-polynomial does not reduce to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub first: usize,
    pub second: usize,
    pub triple: OverlapTriple,
    pub degree: u32,
    pub s_polynomial: Polynomial,
    pub remainder: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroebnerReport {
    Ok,
    Failure(Witness),
}

impl GroebnerReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, GroebnerReport::Ok)
    }
}

/// Buchberger criterion through degree `k`: every S-polynomial whose overlap
/// word has degree `<= k` must reduce to zero. Reports the lowest-degree
/// failure.
pub fn is_groebner(candidate: &ReducerSet, k: u32) -> GroebnerReport {
    let gens = candidate.algebra().generators();
    let elems = candidate.reducers();
    let mut jobs: Vec<(u32, usize, usize, OverlapTriple)> = Vec::new();
    for (i, f) in elems.iter().enumerate() {
        for (j, g) in elems.iter().enumerate() {
            for t in overlap_set(f, g, gens) {
                if i == j && t.is_trivial() {
                    continue;
                }
                let d = t.overlap_word(f.lm().expect("nonzero")).degree();
                if d <= k {
                    jobs.push((d, i, j, t));
                }
            }
        }
    }
    jobs.sort_by_key(|(d, i, j, _)| (*d, *i, *j));
    for (degree, i, j, triple) in jobs {
        let s = s_polynomial(&elems[i], &elems[j], &triple).expect("valid triple");
        let r = candidate.normal_form(&s);
        if !r.is_zero() {
            return GroebnerReport::Failure(Witness {
                first: i,
                second: j,
                triple,
                degree,
                s_polynomial: s,
                remainder: r,
            });
        }
    }
    GroebnerReport::Ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::MonomialOrder;
    use crate::steenrod::{adem, steenrod_algebra, steenrod_context};
    use alloc::string::String;
    use alloc::vec;

    fn xy() -> FreeAlgebra {
        let gens = GeneratorTable::new([("x", 1), ("y", 2)]).unwrap();
        FreeAlgebra::new(PrimeField::F2, gens, MonomialOrder::LeftLengthLex)
    }

    fn shown(a: &FreeAlgebra, ps: &[Polynomial]) -> Vec<String> {
        ps.iter().map(|p| a.display(p).to_string()).collect()
    }

    #[test]
    fn overlap_examples() {
        let gens = GeneratorTable::new([("x1", 1), ("x2", 1), ("x3", 1)]).unwrap();
        let a = FreeAlgebra::new(PrimeField::F2, gens, MonomialOrder::LeftLengthLex);
        let f = a.parse("x2*x3").unwrap();
        let g = a.parse("x1*x2").unwrap();
        let ts = overlap_set(&f, &g, a.generators());
        assert!(ts.contains(&OverlapTriple {
            z: a.word(&[0]),
            p: Monomial::one(),
            q: a.word(&[2]),
            kind: OverlapKind::Overlap
        }));
        let self_ts = overlap_set(&f, &f, a.generators());
        assert!(self_ts.iter().any(|t| t.is_trivial()));
        let t = self_ts.iter().find(|t| t.is_trivial()).unwrap();
        assert!(s_polynomial(&f, &f, t).unwrap().is_zero());
    }

    #[test]
    fn adem_overlap_and_s_polynomial() {
        let alg = steenrod_algebra(8);
        let w22 = adem(&alg, 2, 2).unwrap().polynomial;
        let w12 = adem(&alg, 1, 2).unwrap().polynomial;
        let ts = overlap_set(&w22, &w12, alg.generators());
        let t = OverlapTriple {
            z: alg.word(&[0]),
            p: Monomial::one(),
            q: alg.word(&[1]),
            kind: OverlapKind::Overlap,
        };
        assert!(ts.contains(&t));
        let s = s_polynomial(&w22, &w12, &t).unwrap();
        let expect = w22.mul_left(&alg.word(&[0])).sub(&w12.mul_right(&alg.word(&[1]))).unwrap();
        assert_eq!(s, expect);
        // Sq1 Sq3 Sq1 + Sq3 Sq2, the shared word Sq1 Sq2 Sq2 cancelled
        assert_eq!(alg.display(&s).to_string(), "Sq1*Sq3*Sq1 + Sq3*Sq2");
        let bogus = OverlapTriple { z: Monomial::one(), ..t };
        assert!(s_polynomial(&w22, &w12, &bogus).is_err());
    }

    #[test]
    fn self_overlap_of_square() {
        let a = xy();
        let f = a.parse("x*x + y").unwrap();
        let ts = overlap_set(&f, &f, a.generators());
        let t = ts.iter().find(|t| t.kind == OverlapKind::Overlap).unwrap();
        assert_eq!(t.z, a.word(&[0]));
        assert_eq!(t.q, a.word(&[0]));
        let s = s_polynomial(&f, &f, t).unwrap();
        assert_eq!(a.display(&s).to_string(), "y*x + x*y");
    }

    #[test]
    fn completion_examples() {
        let a = xy();
        let comm = a.parse("y*x + x*y").unwrap();
        let gb = complete(&a, core::slice::from_ref(&comm), 6).unwrap();
        assert_eq!(gb.elements(), &[comm]);

        let sq = a.parse("x*x + y").unwrap();
        let gb = complete(&a, core::slice::from_ref(&sq), 4).unwrap();
        let elems = shown(&a, gb.elements());
        assert!(elems.contains(&String::from("y*x + x*y")), "{elems:?}");
        assert!(is_groebner(gb.basis(), 4).is_ok());

        let raw = ReducerSet::from_polynomials(a.clone(), [sq]).unwrap();
        match is_groebner(&raw, 3) {
            GroebnerReport::Failure(w) => assert_eq!(a.display(&w.remainder).to_string(), "y*x + x*y"),
            GroebnerReport::Ok => panic!("expected a witness"),
        }
        assert!(is_groebner(&ReducerSet::new(a), 10).is_ok());
    }

    #[test]
    fn adem_relations_complete_to_themselves() {
        let ctx = steenrod_context(12);
        let seed: Vec<_> = ctx.omega().reducers().to_vec();
        let gb = complete(ctx.algebra(), &seed, 12).unwrap();
        let mut a = shown(ctx.algebra(), gb.elements());
        let mut b = shown(ctx.algebra(), &seed);
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert!(gb.pairs().iter().all(|p| p.reduced_to_zero));
    }

    #[test]
    fn completion_is_idempotent() {
        let a = xy();
        let seed = vec![a.parse("x*x*x + y*x").unwrap(), a.parse("x*y*x + y*y + x*x*y").unwrap()];
        let once = complete(&a, &seed, 8).unwrap();
        let twice = complete(&a, once.elements(), 8).unwrap();
        assert_eq!(once.elements(), twice.elements());
        assert!(is_groebner(once.basis(), 8).is_ok());
    }

    #[test]
    fn rejects_inhomogeneous_seed() {
        let a = xy();
        let f = a.parse("x*x*x + y").unwrap();
        assert_eq!(complete(&a, &[f], 5).unwrap_err(), AlgebraError::NotHomogeneous);
    }
}
