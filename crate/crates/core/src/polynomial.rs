//! Polynomials of the free algebra in canonical (descending) form.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::mem;

use crate::error::AlgebraError;
use crate::field::{FieldElement, PrimeField};
use crate::monomial::{Monomial, MonomialOrder};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub monomial: Monomial,
    pub coeff: FieldElement,
}

/// Leading data of a polynomial; the zero polynomial has no leading term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leading<'a> {
    Zero,
    Term {
        monomial: &'a Monomial,
        coeff: FieldElement,
    },
}

/// A finite sum of nonzero terms, stored strictly descending under `order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: PrimeField,
    order: MonomialOrder,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(field: PrimeField, order: MonomialOrder) -> Self {
        Polynomial {
            field,
            order,
            terms: Vec::new(),
        }
    }

    pub fn monomial(field: PrimeField, order: MonomialOrder, m: Monomial) -> Self {
        Self::term(field, order, FieldElement::ONE, m)
    }

    pub fn term(field: PrimeField, order: MonomialOrder, c: FieldElement, m: Monomial) -> Self {
        let mut p = Self::zero(field, order);
        if !c.is_zero() {
            p.terms.push(Term { monomial: m, coeff: c });
        }
        p
    }

    /// Builds the canonical form of an arbitrary list of terms.
    pub fn from_terms<I>(field: PrimeField, order: MonomialOrder, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut raw: Vec<Term> = terms
            .into_iter()
            .map(|(monomial, coeff)| Term { monomial, coeff })
            .collect();
        raw.sort_by(|a, b| order.compare(&b.monomial, &a.monomial));
        let mut out: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match out.last_mut() {
                Some(last) if last.monomial == t.monomial => {
                    last.coeff = field.add(last.coeff, t.coeff);
                }
                _ => {
                    if let Some(last) = out.last() {
                        if last.coeff.is_zero() {
                            out.pop();
                        }
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|t| t.coeff.is_zero()) {
            out.pop();
        }
        Polynomial {
            field,
            order,
            terms: out,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Leading<'_> {
        match self.terms.first() {
            None => Leading::Zero,
            Some(t) => Leading::Term {
                monomial: &t.monomial,
                coeff: t.coeff,
            },
        }
    }

    #[inline]
    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.monomial)
    }

    /// Leading coefficient, zero for the zero polynomial.
    #[inline]
    pub fn lc(&self) -> FieldElement {
        self.terms.first().map_or(FieldElement::ZERO, |t| t.coeff)
    }

    /// Degree of the leading monomial.
    pub fn degree(&self) -> Option<u32> {
        self.lm().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.monomial.degree() == t.monomial.degree()),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms
            .iter()
            .find(|t| &t.monomial == m)
            .map_or(FieldElement::ZERO, |t| t.coeff)
    }

    pub fn compatible(&self, other: &Polynomial) -> bool {
        self.field == other.field && self.order == other.order
    }

    fn check(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(AlgebraError::Mismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_scaled_sandwich(FieldElement::ONE, &Monomial::one(), other, &Monomial::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        let minus_one = self.field.neg(FieldElement::ONE);
        out.add_scaled_sandwich(minus_one, &Monomial::one(), other, &Monomial::one());
        Ok(out)
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, self.order);
        }
        let field = self.field;
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    monomial: t.monomial.clone(),
                    coeff: field.mul(c, t.coeff),
                })
                .collect(),
            ..*self
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field.neg(FieldElement::ONE))
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.field.inv(self.lc()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// `left * self * right`.
    pub fn sandwich(&self, left: &Monomial, right: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    monomial: t.monomial.sandwich(left, right),
                    coeff: t.coeff,
                })
                .collect(),
            ..*self
        }
    }

    pub fn mul_left(&self, left: &Monomial) -> Polynomial {
        self.sandwich(left, &Monomial::one())
    }

    pub fn mul_right(&self, right: &Monomial) -> Polynomial {
        self.sandwich(&Monomial::one(), right)
    }

    /// Product in the free algebra.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(other)?;
        let mut out = Polynomial::zero(self.field, self.order);
        for t in &self.terms {
            out.add_scaled_sandwich(t.coeff, &t.monomial, other, &Monomial::one());
        }
        Ok(out)
    }

    /// Drops every term of degree above `budget`.
    pub fn truncate_above(&mut self, budget: u32) {
        self.terms.retain(|t| t.monomial.degree() <= budget);
    }

    /// `self += c * left * g * right`, keeping canonical form.
    ///
    /// Relies on the order being compatible with two-sided multiplication,
    /// so the product of `g` stays sorted.
    pub(crate) fn add_scaled_sandwich(
        &mut self,
        c: FieldElement,
        left: &Monomial,
        g: &Polynomial,
        right: &Monomial,
    ) {
        if c.is_zero() || g.is_zero() {
            return;
        }
        let field = self.field;
        let order = self.order;
        let plain = left.is_one() && right.is_one();
        let old = mem::take(&mut self.terms);
        let mut out = Vec::with_capacity(old.len() + g.terms.len());
        let mut a = old.into_iter().peekable();
        let mut b = g.terms.iter().peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => {
                    if plain {
                        order.compare(&x.monomial, &y.monomial)
                    } else {
                        compare_sandwiched(order, &x.monomial, left, &y.monomial, right)
                    }
                }
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap()),
                Ordering::Less => {
                    let y = b.next().unwrap();
                    out.push(Term {
                        monomial: y.monomial.sandwich(left, right),
                        coeff: field.mul(c, y.coeff),
                    });
                }
                Ordering::Equal => {
                    let mut x = a.next().unwrap();
                    let y = b.next().unwrap();
                    x.coeff = field.add(x.coeff, field.mul(c, y.coeff));
                    if !x.coeff.is_zero() {
                        out.push(x);
                    }
                }
            }
        }
        self.terms = out;
    }
}

fn compare_sandwiched(
    order: MonomialOrder,
    x: &Monomial,
    left: &Monomial,
    y: &Monomial,
    right: &Monomial,
) -> Ordering {
    // x is already a full word; y gets wrapped by left/right.
    let yl = left.len() + y.len() + right.len();
    match x.len().cmp(&yl) {
        Ordering::Equal => {
            let wrapped = left
                .letters()
                .iter()
                .chain(y.letters())
                .chain(right.letters());
            match order {
                MonomialOrder::LeftLengthLex => x.letters().iter().cmp(wrapped),
                MonomialOrder::RightLengthLex => {
                    let wrapped_rev = right
                        .letters()
                        .iter()
                        .rev()
                        .chain(y.letters().iter().rev())
                        .chain(left.letters().iter().rev());
                    x.letters().iter().rev().cmp(wrapped_rev)
                }
            }
        }
        o => o,
    }
}
