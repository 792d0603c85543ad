//! Words in the four ±1 diagonals `A, B, C, D` and the diagonal intertwiners
//! they assemble into.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactmat::WordMatrix;
use crate::field::{FieldTag, Scalar};
use crate::words::Rank;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CombLetter {
    A,
    B,
    C,
    D,
}

impl CombLetter {
    pub const ALL: [CombLetter; 4] = [CombLetter::A, CombLetter::B, CombLetter::C, CombLetter::D];

    /// The diagonal sign pattern.
    pub fn signs(self) -> [i8; 4] {
        match self {
            CombLetter::A => [1, -1, 1, 1],
            CombLetter::B => [1, 1, -1, 1],
            CombLetter::C => [-1, -1, 1, -1],
            CombLetter::D => [-1, 1, -1, -1],
        }
    }

    pub fn from_signs(s: &[i8]) -> Option<CombLetter> {
        CombLetter::ALL.into_iter().find(|l| l.signs() == s)
    }

    /// `φ`: `A ↦ BA, B ↦ AC, C ↦ DB, D ↦ CD`.
    pub fn substitute(self) -> [CombLetter; 2] {
        use CombLetter::*;
        match self {
            A => [B, A],
            B => [A, C],
            C => [D, B],
            D => [C, D],
        }
    }

    fn as_char(self) -> char {
        match self {
            CombLetter::A => 'A',
            CombLetter::B => 'B',
            CombLetter::C => 'C',
            CombLetter::D => 'D',
        }
    }
}

/// A nonempty word in `{A, B, C, D}`, read as a block-diagonal sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CombWord(Vec<CombLetter>);

impl CombWord {
    pub fn new(letters: Vec<CombLetter>) -> Result<CombWord> {
        if letters.is_empty() {
            return Err(Error::Invalid("comb words are nonempty".into()));
        }
        Ok(CombWord(letters))
    }

    pub fn letters(&self) -> &[CombLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `φ` applied letterwise.
    pub fn next(&self) -> CombWord {
        CombWord(self.0.iter().flat_map(|l| l.substitute()).collect())
    }

    /// The concatenated sign sequence `g(w)`.
    pub fn signs(&self) -> Vec<i8> {
        self.0.iter().flat_map(|l| l.signs()).collect()
    }

    /// `g'`: reads a sign sequence back as letters, if every 4-block is one.
    pub fn decode(signs: &[i8]) -> Option<CombWord> {
        if signs.is_empty() || signs.len() % 4 != 0 {
            return None;
        }
        signs.chunks(4).map(CombLetter::from_signs).collect::<Option<Vec<_>>>().map(CombWord)
    }

    /// Odd-position entries of `g(w)` (1-based).
    pub fn g_odd(&self) -> Vec<i8> {
        self.signs().into_iter().step_by(2).collect()
    }

    pub fn g_even(&self) -> Vec<i8> {
        self.signs().into_iter().skip(1).step_by(2).collect()
    }

    /// `g_−(w) = g_o(w)·g_e(w)`.
    pub fn g_minus(&self) -> Vec<i8> {
        let mut s = self.g_odd();
        s.extend(self.g_even());
        s
    }

    /// Length 1, or both halves decode and are themselves well-combed.
    pub fn well_combed(&self) -> bool {
        if self.len() == 1 {
            return true;
        }
        match (CombWord::decode(&self.g_odd()), CombWord::decode(&self.g_even())) {
            (Some(o), Some(e)) => o.well_combed() && e.well_combed(),
            _ => false,
        }
    }

    /// The `4·len` diagonal `±1` matrix, as a level-`n` rank-2 matrix.
    pub fn diagonal(&self, field: FieldTag) -> Result<WordMatrix> {
        let size = 4 * self.len();
        if !size.is_power_of_two() {
            return Err(Error::ShapeMismatch(format!("comb word of length {} is not a tensor power of 2", self.len())));
        }
        let n = size.trailing_zeros() as usize;
        let items = self.signs().into_iter().enumerate().map(|(i, s)| (i as u64, i as u64, Scalar::from_i64(field, s as i64)));
        WordMatrix::from_index_entries(Rank::new(2)?, n, n, field, items)
    }
}

impl fmt::Display for CombWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for CombWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<CombWord> {
        let letters = s
            .trim()
            .chars()
            .map(|c| match c {
                'A' => Ok(CombLetter::A),
                'B' => Ok(CombLetter::B),
                'C' => Ok(CombLetter::C),
                'D' => Ok(CombLetter::D),
                _ => Err(Error::Parse(format!("bad comb letter {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        CombWord::new(letters)
    }
}

/// `w_n`, starting from `w_1 = A`.
pub fn comb_word(n: usize) -> Result<CombWord> {
    if n == 0 {
        return Err(Error::Invalid("comb words start at n = 1".into()));
    }
    let mut w = CombWord(vec![CombLetter::A]);
    for _ in 1..n {
        w = w.next();
    }
    Ok(w)
}

/// `T_n`, the diagonal of `w_{n−1}`, of size `2^n`.
pub fn comb_intertwiner(n: usize, field: FieldTag) -> Result<WordMatrix> {
    if n < 2 {
        return Err(Error::Invalid("comb intertwiners start at n = 2".into()));
    }
    comb_word(n - 1)?.diagonal(field)
}
