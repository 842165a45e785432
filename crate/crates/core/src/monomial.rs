//! Generators, words and monomial orders of the free algebra.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Range;

use smallvec::SmallVec;

use crate::error::AlgebraError;

/// Index of a generator in its [`GeneratorTable`].
pub type Letter = u16;

pub(crate) type Word = SmallVec<[Letter; 8]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Ordered list of named, positively graded generators.
///
/// Generators compare by their position in the table. Only generators of
/// degree at most the working truncation degree need to be listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    entries: Arc<[Generator]>,
}

impl GeneratorTable {
    pub fn new<I, S>(entries: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut out: Vec<Generator> = Vec::new();
        for (name, degree) in entries {
            let name = name.into();
            if degree == 0 {
                return Err(AlgebraError::NonPositiveDegree(name));
            }
            if out.iter().any(|g| g.name == name) {
                return Err(AlgebraError::DuplicateGenerator(name));
            }
            out.push(Generator { name, degree });
        }
        if out.len() > Letter::MAX as usize {
            return Err(AlgebraError::Config("too many generators".to_string()));
        }
        Ok(GeneratorTable { entries: out.into() })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn degree(&self, letter: Letter) -> u32 {
        self.entries[letter as usize].degree
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.entries[letter as usize].name
    }

    pub fn lookup(&self, name: &str) -> Option<Letter> {
        self.entries
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as Letter)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Letter, &Generator)> {
        self.entries.iter().enumerate().map(|(i, g)| (i as Letter, g))
    }

    /// Sum of the degrees of `letters`.
    pub fn word_degree(&self, letters: &[Letter]) -> u32 {
        letters.iter().map(|&l| self.degree(l)).sum()
    }

    pub fn same_as(&self, other: &GeneratorTable) -> bool {
        Arc::ptr_eq(&self.entries, &other.entries) || self.entries == other.entries
    }
}

/// A word in the generators together with its (cached) degree.
///
/// The derived `Ord` is structural and only meant for keyed collections;
/// use a [`MonomialOrder`] for algebraic comparisons.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    word: Word,
    degree: u32,
}

impl Monomial {
    /// The empty word.
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn new(letters: &[Letter], gens: &GeneratorTable) -> Self {
        Monomial {
            word: Word::from_slice(letters),
            degree: gens.word_degree(letters),
        }
    }

    pub fn generator(letter: Letter, gens: &GeneratorTable) -> Self {
        Monomial::new(&[letter], gens)
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.word
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.word.len()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.word.is_empty()
    }

    pub fn slice(&self, range: Range<usize>, gens: &GeneratorTable) -> Monomial {
        Monomial::new(&self.word[range], gens)
    }

    /// `self * other`.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Monomial {
            word,
            degree: self.degree + other.degree,
        }
    }

    /// `left * self * right`.
    pub fn sandwich(&self, left: &Monomial, right: &Monomial) -> Monomial {
        let mut word = Word::with_capacity(left.len() + self.len() + right.len());
        word.extend_from_slice(&left.word);
        word.extend_from_slice(&self.word);
        word.extend_from_slice(&right.word);
        Monomial {
            word,
            degree: left.degree + self.degree + right.degree,
        }
    }

    /// Leftmost factorisation `self = u * x * v`, if `x` occurs in `self`.
    pub fn find_factor(&self, x: &Monomial) -> Option<usize> {
        let (hay, needle) = (self.letters(), x.letters());
        if needle.len() > hay.len() {
            return None;
        }
        (0..=hay.len() - needle.len()).find(|&s| &hay[s..s + needle.len()] == needle)
    }

    /// If `self = z * x`, returns `z`.
    pub fn left_quotient(&self, x: &Monomial) -> Option<Monomial> {
        let n = self.len();
        let m = x.len();
        if m > n || self.word[n - m..] != x.word[..] {
            return None;
        }
        Some(Monomial {
            word: Word::from_slice(&self.word[..n - m]),
            degree: self.degree - x.degree,
        })
    }
}

/// Length-first lexicographic orders on words.
///
/// Longer words are greater. Words of equal length are compared by the
/// leftmost (`LeftLengthLex`) or rightmost (`RightLengthLex`) position at
/// which they differ, the larger generator index winning.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    LeftLengthLex,
    RightLengthLex,
}

impl MonomialOrder {
    #[inline]
    pub fn compare(self, x: &Monomial, y: &Monomial) -> Ordering {
        self.compare_words(x.letters(), y.letters())
    }

    #[inline]
    pub fn compare_words(self, x: &[Letter], y: &[Letter]) -> Ordering {
        match x.len().cmp(&y.len()) {
            Ordering::Equal => match self {
                MonomialOrder::LeftLengthLex => x.cmp(y),
                MonomialOrder::RightLengthLex => x.iter().rev().cmp(y.iter().rev()),
            },
            o => o,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::LeftLengthLex => "left-length-lex",
            MonomialOrder::RightLengthLex => "right-length-lex",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "left-length-lex" => Some(MonomialOrder::LeftLengthLex),
            "right-length-lex" => Some(MonomialOrder::RightLengthLex),
            _ => None,
        }
    }
}
