//! The free graded algebra `K<x_1, x_2, ...>` over a prime field.

use alloc::vec::Vec;

use crate::field::{FieldElement, PrimeField};
use crate::monomial::{GeneratorTable, Letter, Monomial, MonomialOrder};
use crate::polynomial::Polynomial;
use crate::text::{self, ParseError, PolyDisplay};

/// Field, generators and monomial order, bundled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAlgebra {
    field: PrimeField,
    generators: GeneratorTable,
    order: MonomialOrder,
}

impl FreeAlgebra {
    pub fn new(field: PrimeField, generators: GeneratorTable, order: MonomialOrder) -> Self {
        FreeAlgebra {
            field,
            generators,
            order,
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
    pub fn generators(&self) -> &GeneratorTable {
        &self.generators
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.field, self.order)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::monomial(self.field, self.order, Monomial::one())
    }

    pub fn word(&self, letters: &[Letter]) -> Monomial {
        Monomial::new(letters, &self.generators)
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        Polynomial::monomial(self.field, self.order, m)
    }

    pub fn term(&self, c: FieldElement, m: Monomial) -> Polynomial {
        Polynomial::term(self.field, self.order, c, m)
    }

    pub fn polynomial<I>(&self, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        Polynomial::from_terms(self.field, self.order, terms)
    }

    /// Sum of the given words with unit coefficients.
    pub fn sum_of_words(&self, words: &[&[Letter]]) -> Polynomial {
        self.polynomial(
            words
                .iter()
                .map(|w| (self.word(w), FieldElement::ONE))
                .collect::<Vec<_>>(),
        )
    }

    pub fn parse(&self, src: &str) -> Result<Polynomial, ParseError> {
        text::parse_polynomial(self, src)
    }

    pub fn display<'a>(&'a self, p: &'a Polynomial) -> PolyDisplay<'a> {
        PolyDisplay::new(p, &self.generators)
    }

    /// Whether `p` was built for this algebra's field and order.
    pub fn owns(&self, p: &Polynomial) -> bool {
        p.field() == self.field && p.order() == self.order
    }
}
