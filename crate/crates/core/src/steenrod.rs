//! The mod 2 Steenrod algebra as `F2<Sq1, Sq2, ...> / <Adem relations>`.
//!
//! Relations are generated for `0 < a < 2b`; with that range the leading
//! words `Sq^a Sq^b` are exactly the inadmissible pairs, so the words
//! irreducible modulo the relations are the admissible monomials.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::FreeAlgebra;
use crate::error::AlgebraError;
use crate::field::{FieldElement, PrimeField};
use crate::monomial::{GeneratorTable, Letter, Monomial, MonomialOrder};
use crate::polynomial::Polynomial;
use crate::reduction::{ReducerSet, TruncatedContext};

/// `C(n, r) mod p` by Lucas' theorem.
pub fn binom_mod_p(n: u64, r: u64, p: u32) -> FieldElement {
    let p64 = p as u64;
    let (mut n, mut r) = (n, r);
    let mut acc: u64 = 1;
    while r > 0 || n > 0 {
        let (nd, rd) = (n % p64, r % p64);
        if rd > nd {
            return FieldElement::ZERO;
        }
        acc = acc * small_binom(nd, rd, p64) % p64;
        n /= p64;
        r /= p64;
    }
    PrimeField::new(p).map_or(FieldElement::ZERO, |f| f.element(acc as i64))
}

fn small_binom(n: u64, r: u64, p: u64) -> u64 {
    // n < p, so the multiplicative formula stays exact modulo p
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..r {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    // den is invertible since r < p
    num * pow_mod(den, p - 2, p) % p
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Letter of `Sq^i` in [`steenrod_algebra`].
#[inline]
pub fn sq(i: u32) -> Letter {
    debug_assert!(i > 0);
    (i - 1) as Letter
}

/// `F2<Sq1, ..., Sq_k>` with the right-length-lex order.
pub fn steenrod_algebra(k: u32) -> FreeAlgebra {
    let gens = GeneratorTable::new((1..=k).map(|i| (format!("Sq{i}"), i)))
        .expect("distinct positive generators");
    FreeAlgebra::new(PrimeField::F2, gens, MonomialOrder::RightLengthLex)
}

/// The word `Sq^{a_1} ... Sq^{a_n}`; zero entries stand for the unit.
pub fn sq_word(alg: &FreeAlgebra, exponents: &[u32]) -> Monomial {
    let letters: Vec<Letter> = exponents.iter().filter(|&&a| a > 0).map(|&a| sq(a)).collect();
    alg.word(&letters)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdemRelation {
    pub a: u32,
    pub b: u32,
    pub polynomial: Polynomial,
}

/// `Sq^a Sq^b - sum_j C(b-1-j, a-2j) Sq^{a+b-j} Sq^j` for `0 < a < 2b`.
pub fn adem(alg: &FreeAlgebra, a: u32, b: u32) -> Result<AdemRelation, AlgebraError> {
    if a == 0 || b == 0 || a >= 2 * b {
        return Err(AlgebraError::AdemRange { a, b });
    }
    if (alg.generators().len() as u32) < a + b {
        return Err(AlgebraError::Config(format!(
            "Adem relation ({a}, {b}) needs generators up to degree {}",
            a + b
        )));
    }
    let field = alg.field();
    let p = field.characteristic();
    let mut terms = alloc::vec![(sq_word(alg, &[a, b]), FieldElement::ONE)];
    for j in 0..=a / 2 {
        let c = binom_mod_p((b - 1 - j) as u64, (a - 2 * j) as u64, p);
        if !c.is_zero() {
            terms.push((sq_word(alg, &[a + b - j, j]), field.neg(c)));
        }
    }
    Ok(AdemRelation {
        a,
        b,
        polynomial: alg.polynomial(terms),
    })
}

/// All relations of degree at most `max_degree`, by degree then `a`.
pub fn adem_relations(alg: &FreeAlgebra, max_degree: u32) -> Vec<AdemRelation> {
    let mut out = Vec::new();
    for d in 2..=max_degree {
        for a in 1..d {
            let b = d - a;
            if a < 2 * b {
                out.push(adem(alg, a, b).expect("in range"));
            }
        }
    }
    out
}

/// Generators `Sq^1..Sq^k`, Adem relations of degree `<= k`, truncation `k`.
pub fn steenrod_context(k: u32) -> TruncatedContext {
    let alg = steenrod_algebra(k);
    let rels = adem_relations(&alg, k).into_iter().map(|r| r.polynomial);
    let omega = ReducerSet::from_polynomials(alg, rels).expect("Adem relations are nonzero");
    TruncatedContext::new(omega, k)
}

/// Sequences `(a_1, ..., a_n)` of positive integers with `a_i >= 2 a_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AdmissibleSequence(pub Vec<u32>);

impl AdmissibleSequence {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_admissible(entries: &[u32]) -> bool {
        entries.iter().all(|&a| a > 0) && entries.windows(2).all(|w| w[0] >= 2 * w[1])
    }
}

/// Every admissible sequence of degree `t` (the empty one when `t = 0`).
pub fn admissible_sequences(t: u32) -> Vec<AdmissibleSequence> {
    fn go(rem: u32, bound: u32, prefix: &mut Vec<u32>, out: &mut Vec<AdmissibleSequence>) {
        if rem == 0 {
            out.push(AdmissibleSequence(prefix.clone()));
            return;
        }
        for a in (1..=rem.min(bound)).rev() {
            prefix.push(a);
            go(rem - a, a / 2, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(t, t, &mut Vec::new(), &mut out);
    out
}

/// Number of admissible sequences of degree `t`.
pub fn admissible_count(t: u32) -> usize {
    fn count(rem: u32, bound: u32, memo: &mut Vec<Vec<Option<usize>>>) -> usize {
        if rem == 0 {
            return 1;
        }
        let bound = bound.min(rem);
        if let Some(v) = memo[rem as usize][bound as usize] {
            return v;
        }
        let v = (1..=bound).map(|a| count(rem - a, a / 2, memo)).sum();
        memo[rem as usize][bound as usize] = Some(v);
        v
    }
    let n = t as usize + 1;
    let mut memo = alloc::vec![alloc::vec![None; n]; n];
    count(t, t, &mut memo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn lucas() {
        assert_eq!(binom_mod_p(0, 0, 2), FieldElement::ONE);
        assert_eq!(binom_mod_p(1, 2, 2), FieldElement::ZERO);
        assert_eq!(binom_mod_p(4, 3, 2), FieldElement::ZERO);
        assert_eq!(binom_mod_p(3, 1, 2), FieldElement::ONE);
        // C(10, 4) = 210 = 0 mod 3, 0 mod 5, 0 mod 7; C(7, 3) = 35 = 2 mod 3
        assert_eq!(binom_mod_p(10, 4, 3), FieldElement::ZERO);
        assert_eq!(binom_mod_p(7, 3, 3).value(), 2);
        assert_eq!(binom_mod_p(7, 3, 11).value(), 2);
    }

    #[test]
    fn lucas_matches_pascal() {
        for p in [2u32, 3, 5] {
            let mut row = vec![1u64];
            for n in 0..40u64 {
                for (r, &c) in row.iter().enumerate() {
                    assert_eq!(binom_mod_p(n, r as u64, p).value() as u64, c, "C({n},{r}) mod {p}");
                }
                let mut next = vec![1u64; row.len() + 1];
                for r in 1..row.len() {
                    next[r] = (row[r - 1] + row[r]) % p as u64;
                }
                row = next;
            }
        }
    }

    #[test]
    fn adem_examples() {
        let alg = steenrod_algebra(8);
        let show = |a, b| alg.display(&adem(&alg, a, b).unwrap().polynomial).to_string();
        assert_eq!(show(1, 1), "Sq1*Sq1");
        assert_eq!(show(1, 2), "Sq1*Sq2 + Sq3");
        assert_eq!(show(2, 2), "Sq2*Sq2 + Sq3*Sq1");
        assert_eq!(show(3, 5), "Sq3*Sq5 + Sq7*Sq1");
        assert!(adem(&alg, 2, 1).is_err());
        assert!(adem(&alg, 0, 3).is_err());
    }

    #[test]
    fn leading_words_are_the_inadmissible_pairs() {
        let alg = steenrod_algebra(16);
        for r in adem_relations(&alg, 16) {
            assert!(r.polynomial.is_homogeneous());
            assert_eq!(r.polynomial.lm(), Some(&sq_word(&alg, &[r.a, r.b])));
            assert_eq!(r.polynomial.degree(), Some(r.a + r.b));
        }
    }

    #[test]
    fn context_ranges() {
        let c3 = steenrod_context(3);
        assert_eq!(c3.algebra().generators().len(), 3);
        let shown: Vec<_> = c3
            .omega()
            .reducers()
            .iter()
            .map(|p| c3.algebra().display(p).to_string())
            .collect();
        assert_eq!(shown, vec!["Sq1*Sq1", "Sq1*Sq2 + Sq3"]);
        let c1 = steenrod_context(1);
        assert_eq!(c1.algebra().generators().len(), 1);
        assert!(c1.omega().is_empty());
    }

    #[test]
    fn admissible_counts() {
        assert_eq!(admissible_count(0), 1);
        assert_eq!(admissible_count(3), 2);
        assert_eq!(admissible_count(7), 4);
        let seven: Vec<_> = admissible_sequences(7).into_iter().map(|s| s.0).collect();
        assert_eq!(seven, vec![vec![7], vec![6, 1], vec![5, 2], vec![4, 2, 1]]);
        let expect = [1, 1, 1, 2, 2, 2, 3, 4, 4, 5, 6];
        for (t, &e) in expect.iter().enumerate() {
            assert_eq!(admissible_count(t as u32), e, "t = {t}");
            assert_eq!(admissible_sequences(t as u32).len(), e);
        }
        for t in 0..20 {
            assert!(admissible_sequences(t).iter().all(|s| AdmissibleSequence::is_admissible(&s.0) && s.degree() == t));
        }
    }
}
