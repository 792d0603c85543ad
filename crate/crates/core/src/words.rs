//! Words over `{1..N}`, their charges, revlex indexing and the composition order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Default bound on `N^n` for brute-force enumerations.
pub const DEFAULT_GUARD: u64 = 1_000_000;

/// Reads the enumeration guard from `CCWG_GUARD`, falling back to [`DEFAULT_GUARD`].
pub fn guard_from_env() -> u64 {
    std::env::var("CCWG_GUARD").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_GUARD)
}

/// Alphabet size `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rank(u32);

impl Rank {
    pub fn new(n: u32) -> Result<Rank> {
        if n == 0 {
            return Err(Error::BadRank(n));
        }
        Ok(Rank(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `N^n`, or an error if it does not fit in 64 bits.
    pub fn pow(self, n: usize) -> Result<u64> {
        let mut acc: u64 = 1;
        for _ in 0..n {
            acc = acc.checked_mul(self.0 as u64).ok_or_else(|| Error::ShapeMismatch(format!("{}^{} overflows", self.0, n)))?;
        }
        Ok(acc)
    }

    pub fn check_same(self, other: Rank) -> Result<()> {
        if self != other {
            return Err(Error::RankMismatch(self.0, other.0));
        }
        Ok(())
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A word `w = w_1 w_2 ... w_n` with letters in `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    rank: Rank,
    letters: Vec<u32>,
}

impl Word {
    pub fn new(rank: Rank, letters: Vec<u32>) -> Result<Word> {
        if let Some(&l) = letters.iter().find(|&&l| l == 0 || l > rank.0) {
            return Err(Error::BadLetter { rank: rank.0, letter: l });
        }
        Ok(Word { rank, letters })
    }

    pub fn empty(rank: Rank) -> Word {
        Word { rank, letters: Vec::new() }
    }

    /// Parses `"1211"`, or `"1,2,11"` (required once N ≥ 10).
    pub fn parse(rank: Rank, s: &str) -> Result<Word> {
        let s = s.trim();
        let letters: Result<Vec<u32>> = if s.contains(',') || rank.0 >= 10 {
            if s.is_empty() {
                Ok(Vec::new())
            } else {
                s.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad word {s:?}")))).collect()
            }
        } else {
            s.chars().map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad word {s:?}")))).collect()
        };
        Word::new(rank, letters?)
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The charge `f(w)`: `f(w)_i` counts the occurrences of letter `i`.
    pub fn charge(&self) -> Composition {
        let mut parts = vec![0u32; self.rank.0 as usize];
        for &l in &self.letters {
            parts[l as usize - 1] += 1;
        }
        Composition { parts }
    }

    /// `Σ_j (w_j − 1)·N^(j−1)`: the first letter varies fastest.
    pub fn revlex_index(&self) -> u64 {
        let n = self.rank.0 as u64;
        self.letters.iter().rev().fold(0u64, |acc, &l| acc * n + (l as u64 - 1))
    }

    /// Splits into the first `n` letters and the rest.
    pub fn split(&self, n: usize) -> Result<(Word, Word)> {
        if n > self.len() {
            return Err(Error::SplitOutOfRange(n, self.len()));
        }
        Ok((
            Word { rank: self.rank, letters: self.letters[..n].to_vec() },
            Word { rank: self.rank, letters: self.letters[n..].to_vec() },
        ))
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.rank.check_same(other.rank)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { rank: self.rank, letters })
    }

    pub fn parity(&self) -> Parity {
        if self.letters.iter().map(|&l| l as u64).sum::<u64>() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Letterwise `j ↦ N+1−j`.
    pub fn bar(&self) -> Word {
        Word { rank: self.rank, letters: self.letters.iter().map(|&l| self.rank.0 + 1 - l).collect() }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank.0 >= 10 {
            let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", parts.join(","))
        } else {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        }
    }
}

/// Inverse of [`Word::revlex_index`].
pub fn word_at(rank: Rank, n: usize, index: u64) -> Result<Word> {
    let size = rank.pow(n)?;
    if index >= size {
        return Err(Error::IndexOutOfRange { rank: rank.0, len: n, index });
    }
    Ok(word_at_unchecked(rank, n, index))
}

pub(crate) fn word_at_unchecked(rank: Rank, n: usize, mut index: u64) -> Word {
    let base = rank.0 as u64;
    let mut letters = Vec::with_capacity(n);
    for _ in 0..n {
        letters.push((index % base) as u32 + 1);
        index /= base;
    }
    Word { rank, letters }
}

/// Parity of the letter sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// A composition `λ ∈ N_0^N`; its level is the sum of the parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Composition> {
        if parts.is_empty() {
            return Err(Error::BadRank(0));
        }
        Ok(Composition { parts })
    }

    pub fn rank(&self) -> Rank {
        Rank(self.parts.len() as u32)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn level(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn add(&self, other: &Composition) -> Result<Composition> {
        self.rank().check_same(other.rank())?;
        Ok(Composition { parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a + b).collect() })
    }

    /// The weakly decreasing word with charge `λ`: `λ_N` copies of `N` first, down to `λ_1` copies of 1.
    pub fn orbit_rep(&self) -> Word {
        let mut letters = Vec::with_capacity(self.level());
        for (i, &p) in self.parts.iter().enumerate().rev() {
            letters.extend(std::iter::repeat_n(i as u32 + 1, p as usize));
        }
        Word { rank: self.rank(), letters }
    }

    /// Parses `"[3,1,0]"` (brackets optional).
    pub fn parse(s: &str) -> Result<Composition> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: std::result::Result<Vec<u32>, _> = t.split(',').map(|x| x.trim().parse::<u32>()).collect();
        Composition::new(parts.map_err(|_| Error::Parse(format!("bad composition {s:?}")))?)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Orders two same-level compositions: `Less` means `λ ≺ μ`.
fn comp_cmp(lambda: &Composition, mu: &Composition) -> Ordering {
    for (a, b) in lambda.parts.iter().zip(&mu.parts) {
        if a != b {
            return b.cmp(a);
        }
    }
    Ordering::Equal
}

/// `λ ≺ μ`: at the first index where they differ, `λ_i > μ_i`.
/// Compositions of different levels are incomparable.
pub fn comp_less(lambda: &Composition, mu: &Composition) -> Result<bool> {
    lambda.rank().check_same(mu.rank())?;
    if lambda.level() != mu.level() {
        return Ok(false);
    }
    Ok(comp_cmp(lambda, mu) == Ordering::Less)
}

/// The order computed by brute force: `λ < μ` iff the first word of charge `λ`
/// in revlex enumeration precedes the first word of charge `μ`.
pub fn comp_less_oracle(lambda: &Composition, mu: &Composition, guard: u64) -> Result<bool> {
    lambda.rank().check_same(mu.rank())?;
    if lambda.level() != mu.level() {
        return Ok(false);
    }
    if lambda == mu {
        return Ok(false);
    }
    let rank = lambda.rank();
    let n = lambda.level();
    let size = (rank.0 as u128).pow(n as u32);
    if size > guard as u128 {
        return Err(Error::EnumerationTooLarge { size, guard });
    }
    for i in 0..size as u64 {
        let c = word_at_unchecked(rank, n, i).charge();
        if &c == lambda {
            return Ok(true);
        }
        if &c == mu {
            return Ok(false);
        }
    }
    unreachable!("every composition of level n is a charge")
}

/// All compositions of `n` into `N` parts, in increasing `≺` order.
pub fn compositions(rank: Rank, n: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; rank.0 as usize];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Composition { parts: cur.clone() });
            return;
        }
        for v in (0..=left).rev() {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
    }
    rec(0, n as u32, &mut cur, &mut out);
    out
}

/// Classification of a matrix position `(w, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionClass {
    CC,
    Glue,
    Forbidden,
}

/// CC if `f(w) = f(v)`, Glue if `f(w) ≺ f(v)`, Forbidden otherwise (including different lengths).
pub fn position_class(w: &Word, v: &Word) -> Result<PositionClass> {
    w.rank.check_same(v.rank)?;
    if w.len() != v.len() {
        return Ok(PositionClass::Forbidden);
    }
    Ok(match comp_cmp(&w.charge(), &v.charge()) {
        Ordering::Equal => PositionClass::CC,
        Ordering::Less => PositionClass::Glue,
        Ordering::Greater => PositionClass::Forbidden,
    })
}

/// Charges of all words of one length, as ranks in the `≺` order, for fast position tests.
#[derive(Debug, Clone)]
pub struct ChargeTable {
    order: Vec<u32>,
}

impl ChargeTable {
    pub fn new(rank: Rank, n: usize) -> Result<ChargeTable> {
        let comps = compositions(rank, n);
        let size = rank.pow(n)?;
        let order = (0..size)
            .map(|i| {
                let c = word_at_unchecked(rank, n, i).charge();
                comps.binary_search_by(|x| comp_cmp(x, &c)).expect("charge is a composition") as u32
            })
            .collect();
        Ok(ChargeTable { order })
    }

    /// Position of `f(word_at(i))` in the `≺` order.
    #[inline]
    pub fn charge_rank(&self, i: usize) -> u32 {
        self.order[i]
    }

    #[inline]
    pub fn class(&self, row: usize, col: usize) -> PositionClass {
        match self.order[row].cmp(&self.order[col]) {
            Ordering::Equal => PositionClass::CC,
            Ordering::Less => PositionClass::Glue,
            Ordering::Greater => PositionClass::Forbidden,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: u32, s: &str) -> Word {
        Word::parse(Rank::new(n).unwrap(), s).unwrap()
    }

    fn c(s: &str) -> Composition {
        Composition::parse(s).unwrap()
    }

    #[test]
    fn charge_examples() {
        assert_eq!(w(3, "2111").charge(), c("[3,1,0]"));
        assert_eq!(w(2, "1121").charge().parts()[1], 1);
        assert_eq!(Word::empty(Rank::new(2).unwrap()).charge(), c("[0,0]"));
    }

    #[test]
    fn revlex_examples() {
        for (s, i) in [("1111", 0), ("2111", 1), ("3111", 2), ("1211", 3)] {
            assert_eq!(w(3, s).revlex_index(), i);
        }
        for (s, i) in [("11", 0), ("21", 1), ("12", 2), ("22", 3)] {
            assert_eq!(w(2, s).revlex_index(), i);
        }
        assert_eq!(w(5, "4").revlex_index(), 3);
        let r3 = Rank::new(3).unwrap();
        assert_eq!(word_at(r3, 4, 3).unwrap(), w(3, "1211"));
        assert_eq!(word_at(Rank::new(2).unwrap(), 2, 3).unwrap(), w(2, "22"));
        assert!(word_at(r3, 2, 9).is_err());
    }

    #[test]
    fn order_examples() {
        assert!(comp_less(&c("[5,3,2,0,3]"), &c("[5,3,1,0,4]")).unwrap());
        let chain = ["[4,0,0]", "[3,1,0]", "[3,0,1]", "[2,2,0]", "[2,1,1]", "[2,0,2]"];
        for pair in chain.windows(2) {
            assert!(comp_less(&c(pair[0]), &c(pair[1])).unwrap());
            assert!(comp_less_oracle(&c(pair[0]), &c(pair[1]), DEFAULT_GUARD).unwrap());
        }
        assert!(comp_less_oracle(&c("[4,0,0]"), &c("[2,2,0]"), DEFAULT_GUARD).unwrap());
        assert!(!comp_less(&c("[2,1]"), &c("[2,1]")).unwrap());
        assert!(!comp_less(&c("[2,1]"), &c("[2,2]")).unwrap());
        assert!(!comp_less(&c("[2,2]"), &c("[2,1]")).unwrap());
        assert!(comp_less(&c("[2,1]"), &c("[2,1,0]")).is_err());
        assert!(matches!(
            comp_less_oracle(&c("[7,0]"), &c("[6,1]"), 100),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn orbit_rep_examples() {
        assert_eq!(c("[5,3,1,0,4]").orbit_rep().to_string(), "5555322211111");
        assert_eq!(c("[5,3,2,0,3]").orbit_rep().to_string(), "5553322211111");
        assert_eq!(c("[4,0,0]").orbit_rep().to_string(), "1111");
    }

    #[test]
    fn split_and_parity() {
        let (a, b) = w(3, "12321").split(2).unwrap();
        assert_eq!((a.to_string(), b.to_string()), ("12".into(), "321".into()));
        let (a, b) = w(3, "12321").split(0).unwrap();
        assert!(a.is_empty());
        assert_eq!(b, w(3, "12321"));
        assert!(w(3, "12").split(3).is_err());
        assert_eq!(w(3, "123").parity(), w(3, "222").parity());
        assert_eq!(w(2, "11").parity(), w(2, "22").parity());
        assert_ne!(w(2, "11").parity(), w(2, "12").parity());
        assert_eq!(Word::empty(Rank::new(2).unwrap()).parity(), Parity::Even);
    }

    #[test]
    fn position_examples() {
        assert_eq!(position_class(&w(2, "11"), &w(2, "21")).unwrap(), PositionClass::Glue);
        assert_eq!(position_class(&w(2, "21"), &w(2, "12")).unwrap(), PositionClass::CC);
        assert_eq!(position_class(&w(2, "22"), &w(2, "12")).unwrap(), PositionClass::Forbidden);
        assert_eq!(position_class(&w(2, "2"), &w(2, "12")).unwrap(), PositionClass::Forbidden);
        let t = ChargeTable::new(Rank::new(2).unwrap(), 2).unwrap();
        assert_eq!(t.class(0, 3), PositionClass::Glue);
        assert_eq!(t.class(1, 2), PositionClass::CC);
        assert_eq!(t.class(3, 2), PositionClass::Forbidden);
    }

    #[test]
    fn word_text() {
        let r = Rank::new(12).unwrap();
        let x = Word::parse(r, "1,2,11").unwrap();
        assert_eq!(x.to_string(), "1,2,11");
        assert!(Word::parse(Rank::new(2).unwrap(), "13").is_err());
        assert_eq!(c("[3,1,0]").to_string(), "[3,1,0]");
    }

    #[test]
    fn compositions_sorted() {
        let cs = compositions(Rank::new(3).unwrap(), 2);
        let s: Vec<String> = cs.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["[2,0,0]", "[1,1,0]", "[1,0,1]", "[0,2,0]", "[0,1,1]", "[0,0,2]"]);
    }
}
