//! Freely reduced words in the rotation generators `s1, ..., s(n-1)`.
//!
//! A [`Word`] always carries the rank `n` of the rotation group it belongs
//! to, so that the duality map `s_i -> s_(n-i)^-1` is well defined. Words
//! are stored as runs of single letters with exponent `+1` or `-1`.

use std::fmt;
use std::iter::Peekable;
use std::str::CharIndices;

use crate::error::{Error, Result};

/// Largest supported rank. Generator indices are stored in a `u8`.
pub const MAX_RANK: usize = 64;

/// A generator `s_i` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    gen: u8,
    inverse: bool,
}

impl Letter {
    /// `s_index` (1-based) or its inverse.
    pub fn new(index: usize, inverse: bool) -> Self {
        debug_assert!((1..MAX_RANK).contains(&index));
        Letter {
            gen: index as u8,
            inverse,
        }
    }

    /// 1-based generator index.
    pub fn index(self) -> usize {
        self.gen as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// Column in a coset table: `2(i-1)` for `s_i`, `2(i-1)+1` for `s_i^-1`.
    pub fn column(self) -> usize {
        2 * (self.gen as usize - 1) + self.inverse as usize
    }

    pub fn from_column(column: usize) -> Self {
        Letter::new(column / 2 + 1, column % 2 == 1)
    }

    fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// An element of the free group on `s1, ..., s(rank-1)`, freely reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

fn check_rank(rank: usize) -> Result<()> {
    if (2..=MAX_RANK).contains(&rank) {
        Ok(())
    } else {
        Err(Error::InvalidRank(rank))
    }
}

fn push_reduced(letters: &mut Vec<Letter>, letter: Letter) {
    if letters.last() == Some(&letter.inv()) {
        letters.pop();
    } else {
        letters.push(letter);
    }
}

impl Word {
    pub fn identity(rank: usize) -> Result<Self> {
        check_rank(rank)?;
        Ok(Word {
            rank,
            letters: Vec::new(),
        })
    }

    /// The single generator `s_index`.
    pub fn generator(index: usize, rank: usize) -> Result<Self> {
        Self::normalize([(index, 1)], rank)
    }

    /// Builds a freely reduced word from `(generator index, exponent)` pairs.
    /// Exponents other than `±1` are expanded into runs.
    pub fn normalize<I>(raw: I, rank: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        check_rank(rank)?;
        let mut letters = Vec::new();
        for (index, exponent) in raw {
            if index == 0 || index >= rank {
                return Err(Error::IndexOutOfRange { index, rank });
            }
            let letter = Letter::new(index, exponent < 0);
            for _ in 0..exponent.unsigned_abs() {
                push_reduced(&mut letters, letter);
            }
        }
        Ok(Word { rank, letters })
    }

    /// Builds a word from letters, reducing as it goes.
    pub fn from_letters<I>(letters: I, rank: usize) -> Result<Self>
    where
        I: IntoIterator<Item = Letter>,
    {
        Self::normalize(letters.into_iter().map(|l| (l.index(), l.exponent())), rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Re-reduces the word. Words built through the public constructors are
    /// already reduced, so this is the identity on them.
    pub fn normalized(&self) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            push_reduced(&mut letters, l);
        }
        Word {
            rank: self.rank,
            letters,
        }
    }

    pub fn inverse(&self) -> Self {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &Word) -> Result<Self> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word {
            rank: self.rank,
            letters,
        })
    }

    pub fn pow(&self, exponent: i64) -> Self {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut letters = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            for &l in &base.letters {
                push_reduced(&mut letters, l);
            }
        }
        Word {
            rank: self.rank,
            letters,
        }
    }

    /// Mirror-image word: `s1 -> s1^-1`, `s2 -> s1^2 s2`, all other
    /// generators fixed.
    pub fn enantiomorph(&self) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() * 2);
        let s1 = Letter::new(1, false);
        for &l in &self.letters {
            match (l.index(), l.is_inverse()) {
                (1, _) => push_reduced(&mut letters, l.inv()),
                (2, false) => {
                    push_reduced(&mut letters, s1);
                    push_reduced(&mut letters, s1);
                    push_reduced(&mut letters, l);
                }
                (2, true) => {
                    push_reduced(&mut letters, l);
                    push_reduced(&mut letters, s1.inv());
                    push_reduced(&mut letters, s1.inv());
                }
                _ => push_reduced(&mut letters, l),
            }
        }
        Word {
            rank: self.rank,
            letters,
        }
    }

    /// Dual word: letterwise `s_i^e -> s_(n-i)^-e`, order preserved.
    pub fn dual(&self) -> Self {
        let n = self.rank;
        let mut letters = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            push_reduced(&mut letters, Letter::new(n - l.index(), !l.is_inverse()));
        }
        Word {
            rank: self.rank,
            letters,
        }
    }

    /// `tau(i, j) = s_i s_(i+1) ... s_j` for `1 <= i <= j <= n-1`, with
    /// `tau(0, j) = tau(i, n) = 1`.
    pub fn tau(i: usize, j: usize, rank: usize) -> Result<Self> {
        check_rank(rank)?;
        if i > j || j > rank {
            return Err(Error::InvalidTau { i, j, rank });
        }
        if i == 0 || j == rank {
            return Word::identity(rank);
        }
        Self::normalize((i..=j).map(|k| (k, 1)), rank)
    }

    /// Product `s1 s2 ... s(n-1)`.
    pub fn full_product(rank: usize) -> Result<Self> {
        Self::normalize((1..rank).map(|k| (k, 1)), rank)
    }

    /// Parses a word such as `(s1 s2^-1 s1^-1 s2)^2 s3^4`. The literal `1`
    /// denotes the empty word.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        check_rank(rank)?;
        let mut parser = Parser {
            text,
            chars: text.char_indices().peekable(),
            rank,
        };
        let word = parser.sequence()?;
        parser.skip_ws();
        if let Some((pos, c)) = parser.chars.next() {
            return Err(parser.error(pos, format!("unexpected character {c:?}")));
        }
        Ok(word)
    }
}

impl fmt::Display for Word {
    /// Run-length form, e.g. `s1^2 s2^-1`. The empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for run in self.letters.chunk_by(|a, b| a == b) {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let l = run[0];
            let exp = run.len() as i64 * l.exponent();
            if exp == 1 {
                write!(f, "s{}", l.index())?;
            } else {
                write!(f, "s{}^{}", l.index(), exp)?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    chars: Peekable<CharIndices<'a>>,
    rank: usize,
}

impl Parser<'_> {
    fn error(&self, pos: usize, message: String) -> Error {
        Error::Parse {
            line: 0,
            message: format!("{message} at column {} in {:?}", pos + 1, self.text),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn sequence(&mut self) -> Result<Word> {
        let mut word = Word::identity(self.rank)?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                None | Some((_, ')')) => return Ok(word),
                Some(_) => {
                    let factor = self.factor()?;
                    word = word.mul(&factor)?;
                }
            }
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.chars.next_if(|(_, c)| *c == '^').is_some() {
            self.skip_ws();
            let exponent = self.integer()?;
            Ok(atom.pow(exponent))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Word> {
        let (pos, c) = self.chars.next().expect("caller checked for input");
        match c {
            's' | 'S' => {
                let start = self
                    .chars
                    .peek()
                    .map(|&(p, _)| p)
                    .unwrap_or(self.text.len());
                let mut end = start;
                while let Some((p, d)) = self.chars.next_if(|(_, d)| d.is_ascii_digit()) {
                    end = p + d.len_utf8();
                }
                if start == end {
                    return Err(self.error(pos, "expected a generator number after 's'".into()));
                }
                let index: usize = self.text[start..end]
                    .parse()
                    .map_err(|_| self.error(start, "generator number too large".into()))?;
                Word::generator(index, self.rank)
            }
            '(' => {
                let inner = self.sequence()?;
                match self.chars.next() {
                    Some((_, ')')) => Ok(inner),
                    _ => Err(self.error(pos, "unbalanced parenthesis".into())),
                }
            }
            '1' => Word::identity(self.rank),
            other => Err(self.error(pos, format!("unexpected character {other:?}"))),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let start = match self.chars.peek() {
            Some(&(p, _)) => p,
            None => return Err(self.error(self.text.len(), "expected an exponent".into())),
        };
        let mut end = start;
        if let Some((p, c)) = self.chars.next_if(|(_, c)| *c == '-' || *c == '+') {
            end = p + c.len_utf8();
        }
        while let Some((p, d)) = self.chars.next_if(|(_, d)| d.is_ascii_digit()) {
            end = p + d.len_utf8();
        }
        self.text[start..end]
            .parse()
            .map_err(|_| self.error(start, "malformed exponent".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, rank: usize) -> Word {
        Word::parse(text, rank).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert!(Word::normalize([(1, 1), (1, -1)], 3).unwrap().is_empty());
        assert_eq!(
            Word::normalize([(1, 1), (2, 1), (2, -1), (3, 1)], 4).unwrap(),
            w("s1 s3", 4)
        );
        let sq = Word::normalize([(2, 1), (2, 1)], 3).unwrap();
        assert_eq!(sq.len(), 2);
        assert_eq!(sq.to_string(), "s2^2");
    }

    #[test]
    fn normalize_rejects_bad_index() {
        assert_eq!(
            Word::normalize([(3, 1)], 3),
            Err(Error::IndexOutOfRange { index: 3, rank: 3 })
        );
        assert!(Word::normalize([(0, 1)], 3).is_err());
    }

    #[test]
    fn enantiomorph_examples() {
        assert_eq!(w("s1 s3", 4).enantiomorph(), w("s1^-1 s3", 4));
        assert_eq!(w("s2", 3).enantiomorph(), w("s1^2 s2", 3));
        assert_eq!(w("s2^-1", 3).enantiomorph(), w("s2^-1 s1^-2", 3));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(w("s1", 4).dual(), w("s3^-1", 4));
        assert_eq!(w("s1 s2", 4).dual(), w("s3^-1 s2^-1", 4));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(Word::tau(2, 2, 4).unwrap(), w("s2", 4));
        assert!(Word::tau(0, 3, 4).unwrap().is_empty());
        assert!(Word::tau(2, 4, 4).unwrap().is_empty());
        assert_eq!(Word::tau(1, 3, 4).unwrap(), w("s1 s2 s3", 4));
        assert!(matches!(Word::tau(3, 2, 4), Err(Error::InvalidTau { .. })));
        assert!(matches!(Word::tau(1, 5, 4), Err(Error::InvalidTau { .. })));
    }

    #[test]
    fn parse_grammar() {
        let rel = w("(s1 s2^-1 s1^-1 s2)^1 (s2 s1 s2^-1 s1^-1)^2", 3);
        assert_eq!(rel.len(), 12);
        assert_eq!(w("s12", 13).letters()[0].index(), 12);
        assert_eq!(w("s1s2", 3), w("s1 s2", 3));
        assert_eq!(w("(s1 s2)^-2", 3), w("s2^-1 s1^-1 s2^-1 s1^-1", 3));
        assert!(w("1", 3).is_empty());
        assert!(w("s1^0", 3).is_empty());
        assert!(Word::parse("s1 (s2", 3).is_err());
        assert!(Word::parse("s1 x", 3).is_err());
        assert!(Word::parse("s", 3).is_err());
        assert!(Word::parse("s4", 3).is_err());
    }

    #[test]
    fn mixing_ranks_is_an_error() {
        assert!(matches!(
            w("s1", 3).mul(&w("s1", 4)),
            Err(Error::RankMismatch { .. })
        ));
    }
}
