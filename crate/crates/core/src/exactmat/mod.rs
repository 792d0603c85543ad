//! Word-labelled exact matrices: composition, the monoidal product, CC/CCwg
//! predicates, de-gluing, inverses, minimal polynomials and Jordan profiles.

mod jordan;
mod json;
pub mod poly;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldTag, Scalar};
use crate::linalg::{Dense, SparseVec};
use crate::words::{word_at_unchecked, ChargeTable, PositionClass, Rank, Word};

pub use jordan::{JordanBlock, JordanProfile};
pub use json::MatrixJson;
pub use poly::Polynomial;

/// Runs `$body` with `$f` bound to the concrete field for `$tag`.
#[macro_export]
macro_rules! with_field {
    ($tag:expr, |$f:ident| $body:expr) => {
        match $tag {
            $crate::field::FieldTag::Rational => {
                let $f = $crate::field::Rationals;
                $body
            }
            $crate::field::FieldTag::Prime(p) => {
                let $f = $crate::field::PrimeField::new(p)?;
                $body
            }
        }
    };
}

/// A sparse matrix whose rows are labelled by words of length `cod_len` and
/// columns by words of length `dom_len`, over one exact field.
///
/// Entries are keyed by revlex indices; zero entries are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct WordMatrix {
    rank: Rank,
    cod_len: usize,
    dom_len: usize,
    field: FieldTag,
    entries: BTreeMap<(u64, u64), Scalar>,
}

impl fmt::Debug for WordMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WordMatrix(N={}, {}x{}, {}) ", self.rank, self.cod_len, self.dom_len, self.field)?;
        f.debug_map().entries(self.entries().map(|(w, v, s)| (format!("{w},{v}"), s.to_string()))).finish()
    }
}

impl WordMatrix {
    pub fn zero(rank: Rank, cod_len: usize, dom_len: usize, field: FieldTag) -> WordMatrix {
        WordMatrix { rank, cod_len, dom_len, field, entries: BTreeMap::new() }
    }

    pub fn identity(rank: Rank, n: usize, field: FieldTag) -> Result<WordMatrix> {
        let d = rank.pow(n)?;
        let one = Scalar::one(field);
        let entries = (0..d).map(|i| ((i, i), one.clone())).collect();
        Ok(WordMatrix { rank, cod_len: n, dom_len: n, field, entries })
    }

    /// Builds from `(row index, col index, value)` triples; duplicates are summed.
    pub fn from_index_entries(
        rank: Rank,
        cod_len: usize,
        dom_len: usize,
        field: FieldTag,
        items: impl IntoIterator<Item = (u64, u64, Scalar)>,
    ) -> Result<WordMatrix> {
        let (rows, cols) = (rank.pow(cod_len)?, rank.pow(dom_len)?);
        let mut entries: BTreeMap<(u64, u64), Scalar> = BTreeMap::new();
        for (r, c, s) in items {
            if r >= rows {
                return Err(Error::IndexOutOfRange { rank: rank.get(), len: cod_len, index: r });
            }
            if c >= cols {
                return Err(Error::IndexOutOfRange { rank: rank.get(), len: dom_len, index: c });
            }
            if s.tag() != field {
                return Err(Error::FieldMismatch(s.tag().to_string(), field.to_string()));
            }
            match entries.get_mut(&(r, c)) {
                Some(x) => *x = x.add(&s),
                None => {
                    entries.insert((r, c), s);
                }
            }
        }
        entries.retain(|_, v| !v.is_zero());
        Ok(WordMatrix { rank, cod_len, dom_len, field, entries })
    }

    pub fn from_entries(
        rank: Rank,
        cod_len: usize,
        dom_len: usize,
        field: FieldTag,
        items: impl IntoIterator<Item = (Word, Word, Scalar)>,
    ) -> Result<WordMatrix> {
        let mut triples = Vec::new();
        for (w, v, s) in items {
            rank.check_same(w.rank())?;
            rank.check_same(v.rank())?;
            if w.len() != cod_len || v.len() != dom_len {
                return Err(Error::ShapeMismatch(format!("entry ({w},{v}) in a {cod_len}x{dom_len} matrix")));
            }
            triples.push((w.revlex_index(), v.revlex_index(), s));
        }
        WordMatrix::from_index_entries(rank, cod_len, dom_len, field, triples)
    }

    /// Square level-`n` matrix from dense rows in revlex order.
    pub fn from_rows(rank: Rank, n: usize, rows: &[Vec<Scalar>]) -> Result<WordMatrix> {
        let d = rank.pow(n)? as usize;
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(Error::ShapeMismatch(format!("expected {d}x{d} rows")));
        }
        let field = rows.iter().flatten().next().map(|s| s.tag()).unwrap_or(FieldTag::Rational);
        let items = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, s)| (i as u64, j as u64, s.clone())));
        WordMatrix::from_index_entries(rank, n, n, field, items)
    }

    /// Square level-`n` integer matrix from dense rows in revlex order.
    pub fn from_int_rows(rank: Rank, n: usize, field: FieldTag, rows: &[&[i64]]) -> Result<WordMatrix> {
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| Scalar::from_i64(field, v)).collect()).collect();
        let mut m = WordMatrix::from_rows(rank, n, &rows)?;
        m.field = field;
        Ok(m)
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }
    pub fn cod_len(&self) -> usize {
        self.cod_len
    }
    pub fn dom_len(&self) -> usize {
        self.dom_len
    }
    pub fn field(&self) -> FieldTag {
        self.field
    }
    /// Number of rows, `N^cod_len`.
    pub fn nrows(&self) -> usize {
        self.rank.pow(self.cod_len).expect("validated at construction") as usize
    }
    /// Number of columns, `N^dom_len`.
    pub fn ncols(&self) -> usize {
        self.rank.pow(self.dom_len).expect("validated at construction") as usize
    }
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn is_square(&self) -> bool {
        self.cod_len == self.dom_len
    }

    pub fn get(&self, w: &Word, v: &Word) -> Scalar {
        self.get_index(w.revlex_index(), v.revlex_index())
    }

    pub fn get_index(&self, r: u64, c: u64) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn index_entries(&self) -> impl Iterator<Item = (u64, u64, &Scalar)> {
        self.entries.iter().map(|(&(r, c), s)| (r, c, s))
    }

    pub fn entries(&self) -> impl Iterator<Item = (Word, Word, &Scalar)> {
        self.entries.iter().map(move |(&(r, c), s)| {
            (word_at_unchecked(self.rank, self.cod_len, r), word_at_unchecked(self.rank, self.dom_len, c), s)
        })
    }

    fn same_field(&self, o: &WordMatrix) -> Result<()> {
        self.rank.check_same(o.rank)?;
        if self.field != o.field {
            return Err(Error::FieldMismatch(self.field.to_string(), o.field.to_string()));
        }
        Ok(())
    }

    fn same_shape(&self, o: &WordMatrix) -> Result<()> {
        self.same_field(o)?;
        if self.cod_len != o.cod_len || self.dom_len != o.dom_len {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.cod_len, self.dom_len, o.cod_len, o.dom_len
            )));
        }
        Ok(())
    }

    fn with_entries(&self, cod_len: usize, dom_len: usize, entries: BTreeMap<(u64, u64), Scalar>) -> WordMatrix {
        WordMatrix { rank: self.rank, cod_len, dom_len, field: self.field, entries }
    }

    /// Matrix product `self · m`.
    pub fn compose(&self, m: &WordMatrix) -> Result<WordMatrix> {
        self.same_field(m)?;
        if self.dom_len != m.cod_len {
            return Err(Error::ShapeMismatch(format!("compose {}x{} with {}x{}", self.cod_len, self.dom_len, m.cod_len, m.dom_len)));
        }
        let mut rows_of_m: BTreeMap<u64, Vec<(u64, &Scalar)>> = BTreeMap::new();
        for (&(r, c), s) in &m.entries {
            rows_of_m.entry(r).or_default().push((c, s));
        }
        let mut out: BTreeMap<(u64, u64), Scalar> = BTreeMap::new();
        for (&(r, k), a) in &self.entries {
            if let Some(row) = rows_of_m.get(&k) {
                for &(c, b) in row {
                    let t = a.mul(b);
                    match out.get_mut(&(r, c)) {
                        Some(x) => *x = x.add(&t),
                        None => {
                            out.insert((r, c), t);
                        }
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(self.with_entries(self.cod_len, m.dom_len, out))
    }

    /// Monoidal product: `⟨w|L⊗M|v⟩ = ⟨w_{n−}|L|v_{n−}⟩⟨w_{−m}|M|v_{−m}⟩`.
    ///
    /// With first-letter-fastest indexing `L` occupies the low digits:
    /// row `r_L + N^{cod L}·r_M`, column `c_L + N^{dom L}·c_M`.
    pub fn kron(&self, m: &WordMatrix) -> Result<WordMatrix> {
        self.same_field(m)?;
        let rs = self.rank.pow(self.cod_len)?;
        let cs = self.rank.pow(self.dom_len)?;
        self.rank.pow(self.cod_len + m.cod_len)?;
        self.rank.pow(self.dom_len + m.dom_len)?;
        let mut out = BTreeMap::new();
        for (&(r2, c2), b) in &m.entries {
            for (&(r1, c1), a) in &self.entries {
                out.insert((r1 + rs * r2, c1 + cs * c2), a.mul(b));
            }
        }
        Ok(self.with_entries(self.cod_len + m.cod_len, self.dom_len + m.dom_len, out))
    }

    pub fn add(&self, m: &WordMatrix) -> Result<WordMatrix> {
        self.same_shape(m)?;
        let mut out = self.entries.clone();
        for (k, s) in &m.entries {
            match out.get_mut(k) {
                Some(x) => *x = x.add(s),
                None => {
                    out.insert(*k, s.clone());
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(self.with_entries(self.cod_len, self.dom_len, out))
    }

    pub fn sub(&self, m: &WordMatrix) -> Result<WordMatrix> {
        self.add(&m.neg())
    }

    pub fn neg(&self) -> WordMatrix {
        let out = self.entries.iter().map(|(k, s)| (*k, s.neg())).collect();
        self.with_entries(self.cod_len, self.dom_len, out)
    }

    pub fn scale(&self, c: &Scalar) -> Result<WordMatrix> {
        if c.tag() != self.field {
            return Err(Error::FieldMismatch(c.tag().to_string(), self.field.to_string()));
        }
        let mut out: BTreeMap<_, _> = self.entries.iter().map(|(k, s)| (*k, s.mul(c))).collect();
        out.retain(|_, v: &mut Scalar| !v.is_zero());
        Ok(self.with_entries(self.cod_len, self.dom_len, out))
    }

    pub fn transpose(&self) -> WordMatrix {
        let out = self.entries.iter().map(|(&(r, c), s)| ((c, r), s.clone())).collect();
        self.with_entries(self.dom_len, self.cod_len, out)
    }

    /// Keeps only entries at positions for which `keep(row, col)` holds.
    pub fn filter(&self, mut keep: impl FnMut(u64, u64) -> bool) -> WordMatrix {
        let out = self.entries.iter().filter(|(&(r, c), _)| keep(r, c)).map(|(k, s)| (*k, s.clone())).collect();
        self.with_entries(self.cod_len, self.dom_len, out)
    }

    /// Maps a rational matrix into another field (identity when the tags agree).
    pub fn to_field(&self, tag: FieldTag) -> Result<WordMatrix> {
        if tag == self.field {
            return Ok(self.clone());
        }
        let mut out = BTreeMap::new();
        for (k, s) in &self.entries {
            let r = s
                .as_rational()
                .ok_or_else(|| Error::FieldMismatch(self.field.to_string(), tag.to_string()))?;
            let v = Scalar::from_rational(tag, r)?;
            if !v.is_zero() {
                out.insert(*k, v);
            }
        }
        Ok(WordMatrix { rank: self.rank, cod_len: self.cod_len, dom_len: self.dom_len, field: tag, entries: out })
    }

    fn classes(&self) -> Option<ChargeTable> {
        if !self.is_square() {
            return None;
        }
        ChargeTable::new(self.rank, self.cod_len).ok()
    }

    /// Counts of stored entries at (CC, Glue, Forbidden) positions.
    pub fn position_counts(&self) -> (usize, usize, usize) {
        let Some(t) = self.classes() else { return (0, 0, self.nnz()) };
        let mut counts = (0, 0, 0);
        for &(r, c) in self.entries.keys() {
            match t.class(r as usize, c as usize) {
                PositionClass::CC => counts.0 += 1,
                PositionClass::Glue => counts.1 += 1,
                PositionClass::Forbidden => counts.2 += 1,
            }
        }
        counts
    }

    /// Nonzero only where row and column charges agree.
    pub fn is_cc(&self) -> bool {
        let (_, g, x) = self.position_counts();
        g == 0 && x == 0
    }

    /// Nonzero only at CC or glue positions; a non-square matrix qualifies only if zero.
    pub fn is_ccwg(&self) -> bool {
        self.position_counts().2 == 0
    }

    /// Nonzero only between words whose letter sums have the same parity.
    pub fn is_parity_preserving(&self) -> bool {
        self.entries().all(|(w, v, _)| w.parity() == v.parity())
    }

    /// Zeroes the glue positions.
    pub fn deglue(&self) -> WordMatrix {
        match self.classes() {
            Some(t) => self.filter(|r, c| t.class(r as usize, c as usize) != PositionClass::Glue),
            None => self.clone(),
        }
    }

    /// Zeroes everything except the glue positions.
    pub fn glue_part(&self) -> WordMatrix {
        match self.classes() {
            Some(t) => self.filter(|r, c| t.class(r as usize, c as usize) == PositionClass::Glue),
            None => self.zero_like(),
        }
    }

    pub fn zero_like(&self) -> WordMatrix {
        self.with_entries(self.cod_len, self.dom_len, BTreeMap::new())
    }

    /// `a γ b`: the difference is supported on glue positions only.
    pub fn gamma_equiv(&self, b: &WordMatrix) -> Result<bool> {
        self.same_shape(b)?;
        Ok(self.sub(b)?.deglue().is_zero())
    }

    pub fn inverse(&self) -> Result<WordMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        with_field!(self.field, |f| {
            let inv = self.to_dense(&f).inverse(&f).ok_or(Error::Singular)?;
            Ok(self.from_dense(&f, &inv, self.cod_len, self.dom_len))
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.inverse().is_ok()
    }

    /// `J^{⊗n} M J^{⊗n}`: the entry at `(w, v)` becomes `M(w̄, v̄)`.
    pub fn skew_conjugate(&self) -> WordMatrix {
        let bar = |i: u64, len: usize| word_at_unchecked(self.rank, len, i).bar().revlex_index();
        let out = self.entries.iter().map(|(&(r, c), s)| ((bar(r, self.cod_len), bar(c, self.dom_len)), s.clone())).collect();
        self.with_entries(self.cod_len, self.dom_len, out)
    }

    /// The skew transpose: `M(w, v) ↦ M(v̄, w̄)`.
    pub fn skew_transpose(&self) -> WordMatrix {
        self.transpose().skew_conjugate()
    }

    /// Dense copy over a concrete field.
    pub fn to_dense<F: Field>(&self, f: &F) -> Dense<F::Elem> {
        let mut d = Dense::zeros(f, self.nrows(), self.ncols());
        for (&(r, c), s) in &self.entries {
            *d.at_mut(r as usize, c as usize) = f.from_scalar(s).expect("matrix field matches");
        }
        d
    }

    pub fn from_dense<F: Field>(&self, f: &F, d: &Dense<F::Elem>, cod_len: usize, dom_len: usize) -> WordMatrix {
        let mut out = BTreeMap::new();
        for r in 0..d.rows {
            for c in 0..d.cols {
                let v = d.at(r, c);
                if !f.is_zero(v) {
                    out.insert((r as u64, c as u64), f.to_scalar(v));
                }
            }
        }
        WordMatrix { rank: self.rank, cod_len, dom_len, field: f.tag(), entries: out }
    }

    /// Rows as sparse vectors over a concrete field.
    pub fn to_rows<F: Field>(&self, f: &F) -> Result<Vec<SparseVec<F::Elem>>> {
        let mut rows: Vec<SparseVec<F::Elem>> = vec![SparseVec::new(); self.nrows()];
        for (&(r, c), s) in &self.entries {
            let row = &mut rows[r as usize];
            row.idx.push(c as u32);
            row.val.push(f.from_scalar(s)?);
        }
        Ok(rows)
    }

    /// Entries as a sparse vector over coordinates `row·ncols + col`.
    pub fn to_coords<F: Field>(&self, f: &F) -> Result<SparseVec<F::Elem>> {
        let nc = self.ncols() as u64;
        let mut v = SparseVec::new();
        for (&(r, c), s) in &self.entries {
            v.idx.push((r * nc + c) as u32);
            v.val.push(f.from_scalar(s)?);
        }
        Ok(v)
    }

    /// Inverse of [`WordMatrix::to_coords`].
    pub fn from_coords<F: Field>(rank: Rank, cod_len: usize, dom_len: usize, f: &F, v: &SparseVec<F::Elem>) -> Result<WordMatrix> {
        let nc = rank.pow(dom_len)?;
        let items = v.iter().map(|(i, x)| (i as u64 / nc, i as u64 % nc, f.to_scalar(x)));
        WordMatrix::from_index_entries(rank, cod_len, dom_len, f.tag(), items)
    }

    /// `self^k` for a square matrix.
    pub fn pow(&self, k: u32) -> Result<WordMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("power of a non-square matrix".into()));
        }
        let mut acc = WordMatrix::identity(self.rank, self.cod_len, self.field)?;
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// Least-degree monic annihilating polynomial, from the first linear
    /// dependency among `I, M, M², ...`.
    pub fn minimal_polynomial(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("minimal polynomial of a non-square matrix".into()));
        }
        with_field!(self.field, |f| {
            let d = self.to_dense(&f);
            let coeffs = poly::minimal_polynomial_dense(&f, &d);
            Ok(Polynomial::from_typed(&f, &coeffs))
        })
    }

    /// Rank over the matrix's field.
    pub fn matrix_rank(&self) -> Result<usize> {
        with_field!(self.field, |f| {
            let rows = self.to_rows(&f)?;
            Ok(crate::linalg::rank(&f, self.ncols(), &rows))
        })
    }

    /// Jordan structure for the supplied eigenvalues, from the ranks of `(M − λI)^k`.
    pub fn jordan_profile(&self, eigenvalues: &[Scalar]) -> Result<JordanProfile> {
        jordan::jordan_profile(self, eigenvalues)
    }
}

/// `J^{⊗n}`, the antidiagonal permutation `w ↦ w̄`.
pub fn j_matrix(rank: Rank, n: usize, field: FieldTag) -> Result<WordMatrix> {
    let d = rank.pow(n)?;
    let one = Scalar::one(field);
    let items = (0..d).map(|i| (i, word_at_unchecked(rank, n, i).bar().revlex_index(), one.clone()));
    WordMatrix::from_index_entries(rank, n, n, field, items)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> Rank {
        Rank::new(2).unwrap()
    }

    fn q(v: i64) -> Scalar {
        Scalar::from_i64(FieldTag::Rational, v)
    }

    fn w(s: &str) -> Word {
        Word::parse(r2(), s).unwrap()
    }

    pub(crate) fn r_fi() -> WordMatrix {
        WordMatrix::from_int_rows(r2(), 2, FieldTag::Rational, &[&[1, 0, 0, 1], &[0, 0, -1, 0], &[0, -1, 0, 0], &[0, 0, 0, 1]]).unwrap()
    }

    /// A generic matrix of the CCwg shape at N=2, n=2, with symbolic entries
    /// a,b,c,d,f,g,h,k,l,m,r replaced by distinct primes.
    fn morange() -> (WordMatrix, [(char, u64, u64, i64); 11]) {
        // (name, row, col, value); rows/cols in revlex order 11,21,12,22.
        let e = [
            ('a', 0, 0, 2),
            ('b', 0, 1, 3),
            ('c', 0, 2, 5),
            ('d', 0, 3, 7),
            ('f', 1, 1, 11),
            ('g', 1, 2, 13),
            ('h', 1, 3, 17),
            ('k', 2, 1, 19),
            ('l', 2, 2, 23),
            ('m', 2, 3, 29),
            ('r', 3, 3, 31),
        ];
        let m = WordMatrix::from_index_entries(r2(), 2, 2, FieldTag::Rational, e.iter().map(|&(_, r, c, v)| (r, c, q(v)))).unwrap();
        (m, e)
    }

    #[test]
    fn compose_examples() {
        let (m, _) = morange();
        assert!(m.get(&w("22"), &w("12")).is_zero());
        let id = WordMatrix::identity(r2(), 2, FieldTag::Rational).unwrap();
        assert_eq!(id.compose(&m).unwrap(), m);
        assert!(m.compose(&WordMatrix::identity(r2(), 1, FieldTag::Rational).unwrap()).is_err());
    }

    #[test]
    fn kron_defining_identity_on_d() {
        // D = diag-ish 2x2 with alpha, beta, gamma.
        let d = WordMatrix::from_int_rows(r2(), 1, FieldTag::Rational, &[&[2, 3], &[0, 5]]).unwrap();
        let dd = d.kron(&d).unwrap();
        assert_eq!(dd.get(&w("11"), &w("22")), q(9));
        assert_eq!(dd.get(&w("11"), &w("11")), q(4));
        assert_eq!(dd.get(&w("21"), &w("21")), q(10));
        assert_eq!(dd.get(&w("12"), &w("12")), q(10));
        assert_eq!(dd.get(&w("22"), &w("22")), q(25));
        // ⟨11|D⊗D|21⟩ = ⟨1|D|2⟩⟨1|D|1⟩ = βα.
        assert_eq!(dd.get(&w("11"), &w("21")), q(6));
        assert!(dd.is_ccwg());
    }

    #[test]
    fn ccwg_examples() {
        let (m, _) = morange();
        assert!(m.is_ccwg());
        assert!(!m.transpose().is_ccwg());
        let id = WordMatrix::identity(r2(), 3, FieldTag::Rational).unwrap();
        assert!(id.is_cc() && id.is_ccwg() && id.is_parity_preserving());
        let nonsq = WordMatrix::from_index_entries(r2(), 1, 2, FieldTag::Rational, [(0, 0, q(1))]).unwrap();
        assert!(!nonsq.is_ccwg());
        assert!(WordMatrix::zero(r2(), 1, 2, FieldTag::Rational).is_ccwg());
    }

    #[test]
    fn deglue_examples() {
        let (m, e) = morange();
        let k = m.deglue();
        let kept: Vec<char> = e.iter().filter(|x| !k.get_index(x.1, x.2).is_zero()).map(|x| x.0).collect();
        assert_eq!(kept, vec!['a', 'f', 'g', 'k', 'l', 'r']);
        assert_eq!(k.deglue(), k);
        assert_eq!(k.add(&m.glue_part()).unwrap(), m);
        let expected = WordMatrix::from_int_rows(r2(), 2, FieldTag::Rational, &[&[1, 0, 0, 0], &[0, 0, -1, 0], &[0, -1, 0, 0], &[0, 0, 0, 1]]).unwrap();
        assert_eq!(r_fi().deglue(), expected);
        assert!(r_fi().gamma_equiv(&r_fi().deglue()).unwrap());
        assert!(!r_fi().gamma_equiv(&WordMatrix::identity(r2(), 2, FieldTag::Rational).unwrap()).unwrap());
    }

    #[test]
    fn pure_glue_products() {
        // Every pure-glue 4x4 pattern product lands at (11,22) only.
        let t = ChargeTable::new(r2(), 2).unwrap();
        let glue: Vec<(u64, u64)> = (0..4).flat_map(|r| (0..4).map(move |c| (r, c))).filter(|&(r, c)| t.class(r as usize, c as usize) == PositionClass::Glue).collect();
        let all = WordMatrix::from_index_entries(r2(), 2, 2, FieldTag::Rational, glue.iter().map(|&(r, c)| (r, c, q(1)))).unwrap();
        let p = all.compose(&all).unwrap();
        assert_eq!(p.index_entries().map(|(r, c, _)| (r, c)).collect::<Vec<_>>(), vec![(0, 3)]);
    }

    #[test]
    fn inverses() {
        let id = WordMatrix::identity(r2(), 2, FieldTag::Rational).unwrap();
        assert_eq!(id.inverse().unwrap(), id);
        let inv = r_fi().inverse().unwrap();
        assert_eq!(r_fi().compose(&inv).unwrap(), id);
        let (m, _) = morange();
        assert!(m.inverse().is_ok());
        // f·l − g·k = 0 makes it singular.
        let sing = WordMatrix::from_int_rows(r2(), 2, FieldTag::Rational, &[&[1, 1, 1, 1], &[0, 2, 3, 1], &[0, 4, 6, 1], &[0, 0, 0, 1]]).unwrap();
        assert_eq!(sing.inverse(), Err(Error::Singular));
    }

    #[test]
    fn skew_examples() {
        let r3 = Rank::new(3).unwrap();
        let j = j_matrix(r2(), 1, FieldTag::Rational).unwrap();
        assert_eq!(j, WordMatrix::from_int_rows(r2(), 1, FieldTag::Rational, &[&[0, 1], &[1, 0]]).unwrap());
        let items = (0..9u64).flat_map(|r| (0..9u64).map(move |c| (r, c, q((r * 9 + c + 1) as i64))));
        let m = WordMatrix::from_index_entries(r3, 2, 2, FieldTag::Rational, items).unwrap();
        let jj = j_matrix(r3, 2, FieldTag::Rational).unwrap();
        let conj = jj.compose(&m).unwrap().compose(&jj).unwrap();
        assert_eq!(conj, m.skew_conjugate());
        let wr = |s: &str| Word::parse(r3, s).unwrap();
        assert_eq!(conj.get(&wr("13"), &wr("23")), m.get(&wr("31"), &wr("21")));
        assert_eq!(m.skew_conjugate().skew_conjugate(), m);
        assert_eq!(r_fi().skew_transpose(), r_fi());
    }

    #[test]
    fn minimal_polynomials() {
        let p = r_fi().minimal_polynomial().unwrap();
        assert_eq!(p.to_string(), "x^3 - x^2 - x + 1");
        let id = WordMatrix::identity(r2(), 2, FieldTag::Rational).unwrap();
        assert_eq!(id.minimal_polynomial().unwrap().to_string(), "x - 1");
    }
}
