//! Braid anomalies, tower representations and the equivalence-generating
//! transformations (gauge, X-symmetry, DS transform, skew transpose).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactmat::poly::Polynomial;
use crate::exactmat::{j_matrix, WordMatrix};
use crate::field::Scalar;
use crate::words::{word_at_unchecked, Rank, Word};

fn check_level2(r: &WordMatrix) -> Result<()> {
    if r.cod_len() != 2 || r.dom_len() != 2 {
        return Err(Error::ShapeMismatch(format!("expected a level-2 square matrix, got {}x{}", r.cod_len(), r.dom_len())));
    }
    Ok(())
}

fn check_level1(a: &WordMatrix, r: &WordMatrix) -> Result<()> {
    if a.cod_len() != 1 || a.dom_len() != 1 {
        return Err(Error::ShapeMismatch("expected an N x N matrix".into()));
    }
    a.rank().check_same(r.rank())
}

fn id1(r: &WordMatrix) -> WordMatrix {
    WordMatrix::identity(r.rank(), 1, r.field()).expect("level-1 identity")
}

/// `𝔄(R) = R₁R₂R₁ − R₂R₁R₂` with `R₁ = R⊗1`, `R₂ = 1⊗R`.
pub fn anomaly(r: &WordMatrix) -> Result<WordMatrix> {
    check_level2(r)?;
    let i = id1(r);
    let r1 = r.kron(&i)?;
    let r2 = i.kron(r)?;
    let a = r1.compose(&r2)?.compose(&r1)?;
    let b = r2.compose(&r1)?.compose(&r2)?;
    a.sub(&b)
}

/// Vanishing anomaly and invertibility.
pub fn is_ybo(r: &WordMatrix) -> bool {
    match anomaly(r) {
        Ok(a) => a.is_zero() && r.is_invertible(),
        Err(_) => false,
    }
}

/// `R_i = 1^{⊗(i−1)} ⊗ R ⊗ 1^{⊗(n−i−1)}`.
pub fn embed(r: &WordMatrix, i: usize, n: usize) -> Result<WordMatrix> {
    if r.cod_len() != r.dom_len() {
        return Err(Error::ShapeMismatch("embed needs a square matrix".into()));
    }
    let k = r.cod_len();
    if i == 0 || i + k > n + 1 {
        return Err(Error::GeneratorOutOfRange(i as i64, n));
    }
    let left = WordMatrix::identity(r.rank(), i - 1, r.field())?;
    let right = WordMatrix::identity(r.rank(), n + 1 - i - k, r.field())?;
    left.kron(r)?.kron(&right)
}

/// The generators `R_1, ..., R_{n−1}` of the level-`n` tower.
pub fn tower(r: &WordMatrix, n: usize) -> Result<Vec<WordMatrix>> {
    check_level2(r)?;
    (1..n).map(|i| embed(r, i, n)).collect()
}

/// A word in the braid group generators: `i` for `σ_i`, `−i` for `σ_i^{−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<BraidWord> {
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::GeneratorOutOfRange(l, strands));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses `"1,2,-1"`.
    pub fn parse(strands: usize, s: &str) -> Result<BraidWord> {
        let s = s.trim();
        let letters = if s.is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad braid word {s:?}"))))
                .collect::<Result<Vec<_>>>()?
        };
        BraidWord::new(strands, letters)
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for BraidWord {
    type Err = Error;
    /// `"n:1,2,-1"`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, w) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected strands:word, got {s:?}")))?;
        BraidWord::parse(n.trim().parse().map_err(|_| Error::Parse(format!("bad strand count in {s:?}")))?, w)
    }
}

/// `ρ(β) = Π R_{|l|}^{±1}` over the letters of `β`, in order.
pub fn rho(r: &WordMatrix, beta: &BraidWord) -> Result<WordMatrix> {
    check_level2(r)?;
    let n = beta.strands;
    let inv = if beta.letters.iter().any(|&l| l < 0) { Some(r.inverse()?) } else { None };
    let mut acc = WordMatrix::identity(r.rank(), n, r.field())?;
    for &l in &beta.letters {
        let i = l.unsigned_abs() as usize;
        let g = if l > 0 { embed(r, i, n)? } else { embed(inv.as_ref().unwrap(), i, n)? };
        acc = acc.compose(&g)?;
    }
    Ok(acc)
}

/// Keeps the entries whose letters all lie in `sub`, relabelled in order.
pub fn restrict(r: &WordMatrix, sub: &[u32]) -> Result<WordMatrix> {
    check_level2(r)?;
    let n = r.rank().get();
    if sub.is_empty() {
        return Err(Error::EmptySubalphabet);
    }
    if sub.windows(2).any(|p| p[0] >= p[1]) || sub.iter().any(|&l| l == 0 || l > n) {
        return Err(Error::BadSubalphabet(n));
    }
    let k = Rank::new(sub.len() as u32)?;
    let relabel = |w: &Word| -> Option<Word> {
        let letters: Option<Vec<u32>> =
            w.letters().iter().map(|l| sub.iter().position(|s| s == l).map(|p| p as u32 + 1)).collect();
        Word::new(k, letters?).ok()
    };
    let mut items = Vec::new();
    for (w, v, s) in r.entries() {
        if let (Some(a), Some(b)) = (relabel(&w), relabel(&v)) {
            items.push((a, b, s.clone()));
        }
    }
    WordMatrix::from_entries(k, 2, 2, r.field(), items)
}

/// `(A⊗A) R (A⊗A)^{−1}`.
pub fn gauge_apply(a: &WordMatrix, r: &WordMatrix) -> Result<WordMatrix> {
    check_level2(r)?;
    check_level1(a, r)?;
    let aa = a.kron(a)?;
    let inv = aa.inverse()?;
    aa.compose(r)?.compose(&inv)
}

/// `(T⊗1) R (T⊗1)^{−1}`, provided `T⊗T` commutes with `R`.
pub fn ds_transform(t: &WordMatrix, r: &WordMatrix) -> Result<WordMatrix> {
    check_level2(r)?;
    check_level1(t, r)?;
    let tt = t.kron(t)?;
    if tt.compose(r)? != r.compose(&tt)? {
        return Err(Error::CommutationHypothesis);
    }
    let ti = t.kron(&id1(r))?;
    let inv = ti.inverse()?;
    ti.compose(r)?.compose(&inv)
}

fn check_diagonal(d: &WordMatrix) -> Result<()> {
    if d.index_entries().any(|(r, c, _)| r != c) {
        return Err(Error::NotDiagonal);
    }
    if d.nnz() != d.nrows() {
        return Err(Error::Singular);
    }
    Ok(())
}

/// X-symmetry: `(d⊗d) R (d⊗d)^{−1}` for an invertible diagonal `d`.
pub fn xsym_apply(d: &WordMatrix, r: &WordMatrix) -> Result<WordMatrix> {
    check_level2(r)?;
    check_level1(d, r)?;
    check_diagonal(d)?;
    twist_apply(&d.kron(d)?, r)
}

/// Conjugation by an invertible diagonal level-2 matrix `Δ`: entry `(w, v)` scales by `Δ(w)/Δ(v)`.
pub fn twist_apply(delta: &WordMatrix, r: &WordMatrix) -> Result<WordMatrix> {
    check_level2(r)?;
    check_level2(delta)?;
    check_diagonal(delta)?;
    let inv = delta.inverse()?;
    delta.compose(r)?.compose(&inv)
}

/// Solves `Δ R Δ^{−1} = target` for a diagonal level-2 `Δ` by propagating the
/// entry ratios `Δ(w)/Δ(v) = target(w,v)/R(w,v)` along connected positions.
pub fn twist_witness(r: &WordMatrix, target: &WordMatrix) -> Result<WordMatrix> {
    check_level2(r)?;
    check_level2(target)?;
    let d = r.nrows();
    let field = r.field();
    let fail = |why: String| Error::NoDiagonalWitness(why);
    // Support patterns must agree and diagonal entries are invariant.
    let rs: Vec<(u64, u64)> = r.index_entries().map(|(a, b, _)| (a, b)).collect();
    let ts: Vec<(u64, u64)> = target.index_entries().map(|(a, b, _)| (a, b)).collect();
    if rs != ts {
        return Err(fail("support patterns differ".into()));
    }
    let mut val: Vec<Option<Scalar>> = vec![None; d];
    let edges: Vec<(usize, usize, Scalar)> = r
        .index_entries()
        .filter(|(a, b, _)| a != b)
        .map(|(a, b, s)| (a as usize, b as usize, target.get_index(a, b).mul(&s.inv().unwrap())))
        .collect();
    for (a, b, s) in r.index_entries().filter(|(a, b, _)| a == b).map(|(a, b, s)| (a, b, s.clone())) {
        if target.get_index(a, b) != s {
            return Err(fail(format!("diagonal entry at index {a} differs")));
        }
    }
    for start in 0..d {
        if val[start].is_some() {
            continue;
        }
        val[start] = Some(Scalar::one(field));
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let du = val[u].clone().unwrap();
            for (a, b, ratio) in &edges {
                // Δ(a) = ratio·Δ(b)
                let (other, value) = if *b == u {
                    (*a, du.mul(ratio))
                } else if *a == u {
                    (*b, du.mul(&ratio.inv().unwrap()))
                } else {
                    continue;
                };
                match &val[other] {
                    None => {
                        val[other] = Some(value);
                        stack.push(other);
                    }
                    Some(x) if *x != value => {
                        return Err(fail(format!("inconsistent ratios at index {other}")));
                    }
                    _ => {}
                }
            }
        }
    }
    let items = val.into_iter().enumerate().map(|(i, v)| (i as u64, i as u64, v.unwrap()));
    WordMatrix::from_index_entries(r.rank(), 2, 2, field, items)
}

/// Solves `(d⊗d) R (d⊗d)^{−1} = target` for a diagonal `d` with `d_1 = 1`.
///
/// Each off-diagonal entry gives a monomial equation `Π d_i^{e_i} = target(w,v)/R(w,v)`
/// with `e = f(w) − f(v)`. Equations are solved one unknown at a time, branching
/// over the roots of `x^k = c`; constraints that never isolate a single unknown
/// are reported as no witness rather than searched.
pub fn xsym_witness(r: &WordMatrix, target: &WordMatrix) -> Result<WordMatrix> {
    check_level2(r)?;
    check_level2(target)?;
    r.rank().check_same(target.rank())?;
    let field = r.field();
    let n = r.rank().get() as usize;
    let fail = |why: &str| Error::NoDiagonalWitness(why.into());
    let rs: Vec<(u64, u64)> = r.index_entries().map(|(a, b, _)| (a, b)).collect();
    let ts: Vec<(u64, u64)> = target.index_entries().map(|(a, b, _)| (a, b)).collect();
    if rs != ts {
        return Err(fail("support patterns differ"));
    }
    let mut eqs = Vec::new();
    for (a, b, s) in r.index_entries() {
        let c = target.get_index(a, b).mul(&s.inv().expect("stored entries are nonzero"));
        let (w, v) = (word_at_unchecked(r.rank(), 2, a), word_at_unchecked(r.rank(), 2, b));
        let mut e = vec![0i64; n];
        for &l in w.letters() {
            e[l as usize - 1] += 1;
        }
        for &l in v.letters() {
            e[l as usize - 1] -= 1;
        }
        if e.iter().all(|&x| x == 0) {
            if !c.is_one() {
                return Err(fail("an entry between words of equal charge differs"));
            }
        } else {
            eqs.push((e, c));
        }
    }
    let mut d: Vec<Option<Scalar>> = vec![None; n];
    d[0] = Some(Scalar::one(field));
    for (i, slot) in d.iter_mut().enumerate() {
        if eqs.iter().all(|(e, _)| e[i] == 0) {
            *slot = Some(Scalar::one(field));
        }
    }
    let d = solve_monomials(&eqs, d)?;
    let items = d.into_iter().enumerate().map(|(i, s)| (i as u64, i as u64, s));
    let dm = WordMatrix::from_index_entries(r.rank(), 1, 1, field, items)?;
    if xsym_apply(&dm, r)? != *target {
        return Err(fail("solved d does not reproduce the target"));
    }
    Ok(dm)
}

fn pow_signed(x: &Scalar, k: i64) -> Scalar {
    let base = if k < 0 { x.inv().expect("witness entries are nonzero") } else { x.clone() };
    (0..k.unsigned_abs()).fold(Scalar::one(x.tag()), |acc, _| acc.mul(&base))
}

fn solve_monomials(eqs: &[(Vec<i64>, Scalar)], d: Vec<Option<Scalar>>) -> Result<Vec<Scalar>> {
    let fail = |why: &str| Error::NoDiagonalWitness(why.into());
    let known = |e: &[i64], d: &[Option<Scalar>]| -> Option<Scalar> {
        let mut acc = Scalar::one(eqs[0].1.tag());
        for (i, &k) in e.iter().enumerate() {
            if k != 0 {
                acc = acc.mul(&pow_signed(d[i].as_ref()?, k));
            }
        }
        Some(acc)
    };
    for (e, c) in eqs {
        if let Some(v) = known(e, &d) {
            if &v != c {
                return Err(fail("inconsistent entry ratios"));
            }
        }
    }
    if d.iter().all(Option::is_some) {
        return Ok(d.into_iter().map(Option::unwrap).collect());
    }
    let pick = eqs.iter().find_map(|(e, c)| {
        let open: Vec<usize> = (0..e.len()).filter(|&i| e[i] != 0 && d[i].is_none()).collect();
        (open.len() == 1).then(|| (open[0], e, c))
    });
    let Some((i, e, c)) = pick else {
        return Err(fail("the entry ratios do not determine d one entry at a time"));
    };
    let k = e[i];
    let mut rest = e.clone();
    rest[i] = 0;
    let rhs = c.mul(&known(&rest, &d).expect("all other unknowns are set").inv().expect("nonzero"));
    let a = if k < 0 { rhs.inv().expect("nonzero") } else { rhs };
    let field = a.tag();
    let mut coeffs = vec![Scalar::zero(field); k.unsigned_abs() as usize + 1];
    coeffs[0] = a.neg();
    coeffs[k.unsigned_abs() as usize] = Scalar::one(field);
    let roots = Polynomial::new(field, coeffs).roots();
    let mut last = fail("no root in the field");
    for (root, _) in roots {
        let mut next = d.clone();
        next[i] = Some(root);
        match solve_monomials(eqs, next) {
            Ok(sol) => return Ok(sol),
            Err(err) => last = err,
        }
    }
    Err(last)
}

/// Writes a diagonal level-2 `Δ` as `d⊗d` if possible (up to an overall scalar).
pub fn factor_local(delta: &WordMatrix) -> Option<WordMatrix> {
    let n = delta.rank().get() as u64;
    let field = delta.field();
    let dv = |i: u64, j: u64| delta.get_index(i + n * j, i + n * j);
    // d_i ∝ Δ(i,1)/Δ(1,1); then Δ = c·d_i d_j with c = 1/Δ(11).
    let base = dv(0, 0).inv()?;
    let d: Vec<Scalar> = (0..n).map(|i| dv(i, 0).mul(&base)).collect();
    for i in 0..n {
        for j in 0..n {
            if dv(i, j).mul(&base) != d[i as usize].mul(&d[j as usize]) {
                return None;
            }
        }
    }
    let items = d.into_iter().enumerate().map(|(i, s)| (i as u64, i as u64, s));
    WordMatrix::from_index_entries(delta.rank(), 1, 1, field, items).ok()
}

/// `R(w, v) = R(v̄, w̄)` for all positions.
pub fn skew_invariance_check(r: &WordMatrix) -> bool {
    r.skew_transpose() == *r
}

/// Checks that `J^{⊗n}` conjugates every `embed(R, i, n)` to `embed(Rᵀ, i, n)`.
pub fn j_intertwiner_check(r: &WordMatrix, n: usize) -> Result<bool> {
    check_level2(r)?;
    let j = j_matrix(r.rank(), n, r.field())?;
    let rt = r.transpose();
    for i in 1..n {
        let lhs = j.compose(&embed(r, i, n)?)?.compose(&j)?;
        if lhs != embed(&rt, i, n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Positions where the anomaly is nonzero, as word pairs.
pub fn anomaly_support(r: &WordMatrix) -> Result<Vec<(Word, Word, Scalar)>> {
    let a = anomaly(r)?;
    Ok(a.index_entries()
        .map(|(x, y, s)| (word_at_unchecked(a.rank(), 3, x), word_at_unchecked(a.rank(), 3, y), s.clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTag;

    const Q: FieldTag = FieldTag::Rational;

    fn m2(rows: &[&[i64]]) -> WordMatrix {
        WordMatrix::from_int_rows(Rank::new(2).unwrap(), 2, Q, rows).unwrap()
    }

    fn r_fi() -> WordMatrix {
        m2(&[&[1, 0, 0, 1], &[0, 0, -1, 0], &[0, -1, 0, 0], &[0, 0, 0, 1]])
    }

    fn s(v: i64) -> Scalar {
        Scalar::from_i64(Q, v)
    }

    #[test]
    fn anomaly_examples() {
        assert!(anomaly(&r_fi()).unwrap().is_zero());
        assert!(is_ybo(&r_fi()));
        let id = WordMatrix::identity(Rank::new(2).unwrap(), 2, Q).unwrap();
        assert!(is_ybo(&id));
        assert!(!is_ybo(&WordMatrix::zero(Rank::new(2).unwrap(), 2, 2, Q)));
        // aI + m E_{11,22}: anomaly a²m (E⊗1 − 1⊗E).
        let (a, m) = (3, 5);
        let r = m2(&[&[a, 0, 0, m], &[0, a, 0, 0], &[0, 0, a, 0], &[0, 0, 0, a]]);
        let e = m2(&[&[0, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        let i1 = WordMatrix::identity(Rank::new(2).unwrap(), 1, Q).unwrap();
        let expected = e.kron(&i1).unwrap().sub(&i1.kron(&e).unwrap()).unwrap().scale(&s(a * a * m)).unwrap();
        assert_eq!(anomaly(&r).unwrap(), expected);
        assert!(!is_ybo(&r));
    }

    #[test]
    fn embed_and_rho() {
        let r = r_fi();
        let i1 = WordMatrix::identity(Rank::new(2).unwrap(), 1, Q).unwrap();
        assert_eq!(embed(&r, 1, 3).unwrap(), r.kron(&i1).unwrap());
        assert_eq!(embed(&r, 2, 3).unwrap(), i1.kron(&r).unwrap());
        assert!(embed(&r, 3, 3).is_err());
        let a = embed(&r, 1, 4).unwrap();
        let b = embed(&r, 3, 4).unwrap();
        assert_eq!(a.compose(&b).unwrap(), b.compose(&a).unwrap());
        let rel = BraidWord::parse(3, "1,2,1,-2,-1,-2").unwrap();
        assert_eq!(rho(&r, &rel).unwrap(), WordMatrix::identity(Rank::new(2).unwrap(), 3, Q).unwrap());
        assert_eq!(rho(&r, &BraidWord::parse(3, "").unwrap()).unwrap(), WordMatrix::identity(Rank::new(2).unwrap(), 3, Q).unwrap());
        assert_eq!(
            rho(&r, &BraidWord::parse(3, "1,2,1").unwrap()).unwrap(),
            rho(&r, &BraidWord::parse(3, "2,1,2").unwrap()).unwrap()
        );
        assert!(BraidWord::parse(3, "3").is_err());
        assert_eq!("4:1,-3".parse::<BraidWord>().unwrap().to_string(), "1,-3");
    }

    #[test]
    fn ds_examples() {
        let t = WordMatrix::from_int_rows(Rank::new(2).unwrap(), 1, Q, &[&[0, 1], &[1, 0]]).unwrap();
        let back = |k, p, q| m2(&[&[k, 0, 0, 0], &[0, 0, p, 0], &[0, q, 0, 0], &[0, 0, 0, k]]);
        let slash = |k, p, q| m2(&[&[0, 0, 0, p], &[0, k, 0, 0], &[0, 0, k, 0], &[q, 0, 0, 0]]);
        assert_eq!(ds_transform(&t, &back(2, 3, 3)).unwrap(), slash(2, 3, 3));
        // Off the p = q line the commutation hypothesis fails, though the conjugate is still R_/.
        assert_eq!(ds_transform(&t, &back(2, 3, 5)), Err(Error::CommutationHypothesis));
        let ti = t.kron(&WordMatrix::identity(Rank::new(2).unwrap(), 1, Q).unwrap()).unwrap();
        let conj = ti.compose(&back(2, 3, 5)).unwrap().compose(&ti.inverse().unwrap()).unwrap();
        assert_eq!(conj, slash(2, 3, 5));
        let id = WordMatrix::identity(Rank::new(2).unwrap(), 1, Q).unwrap();
        assert_eq!(ds_transform(&id, &back(2, 3, 5)).unwrap(), back(2, 3, 5));
    }

    #[test]
    fn xsym_and_gauge() {
        let r = r_fi();
        let id = WordMatrix::identity(Rank::new(2).unwrap(), 1, Q).unwrap();
        assert_eq!(xsym_apply(&id, &r).unwrap(), r);
        assert_eq!(gauge_apply(&id, &r).unwrap(), r);
        let d = WordMatrix::from_int_rows(Rank::new(2).unwrap(), 1, Q, &[&[2, 0], &[0, 7]]).unwrap();
        let x = xsym_apply(&d, &r).unwrap();
        assert!(is_ybo(&x));
        for i in 0..4 {
            assert_eq!(x.get_index(i, i), r.get_index(i, i));
        }
        let delta = twist_witness(&r, &x).unwrap();
        assert_eq!(twist_apply(&delta, &r).unwrap(), x);
        let dd = d.kron(&d).unwrap();
        let local = factor_local(&dd).unwrap();
        assert_eq!(local.kron(&local).unwrap().scale(&s(4)).unwrap(), dd);
        let twisted = m2(&[&[1, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(factor_local(&twisted).is_none());
        let singular = WordMatrix::from_int_rows(Rank::new(2).unwrap(), 1, Q, &[&[1, 0], &[0, 0]]).unwrap();
        assert!(xsym_apply(&singular, &r).is_err());
    }

    #[test]
    fn xsym_witness_recovers_d() {
        let r = r_fi();
        let d = WordMatrix::from_int_rows(Rank::new(2).unwrap(), 1, Q, &[&[3, 0], &[0, -6]]).unwrap();
        let x = xsym_apply(&d, &r).unwrap();
        let found = xsym_witness(&r, &x).unwrap();
        assert_eq!(found.get_index(0, 0), s(1));
        assert!([s(2), s(-2)].contains(&found.get_index(1, 1)));
        assert_eq!(xsym_apply(&found, &r).unwrap(), x);
        // d_2 = ±1 both fix R_fI.
        assert_eq!(xsym_apply(&xsym_witness(&r, &r).unwrap(), &r).unwrap(), r);
    }

    #[test]
    fn ra_to_ra_prime_needs_a_level_two_twist() {
        let (k, p, q) = (2, 3, 5);
        let ra = m2(&[&[k * k, 0, 0, 0], &[0, 0, k * q, 0], &[0, k * p, k * k - p * q, 0], &[0, 0, 0, -p * q]]);
        let ra_prime = m2(&[&[k * k, 0, 0, 0], &[0, 0, k * k, 0], &[0, p * q, k * k - p * q, 0], &[0, 0, 0, -p * q]]);
        assert!(matches!(xsym_witness(&ra, &ra_prime), Err(Error::NoDiagonalWitness(_))));
        let delta = twist_witness(&ra, &ra_prime).unwrap();
        assert_eq!(twist_apply(&delta, &ra).unwrap(), ra_prime);
        assert!(factor_local(&delta).is_none());
        assert!(is_ybo(&ra) && is_ybo(&ra_prime));
    }

    #[test]
    fn xsym_witness_takes_square_roots() {
        // Only the (11, 22) glue entry constrains d, through d_2^{-2}.
        let r = m2(&[&[1, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        let target = m2(&[&[1, 0, 0, 4], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        let d = xsym_witness(&r, &target).unwrap();
        assert_eq!(xsym_apply(&d, &r).unwrap(), target);
        let bad = m2(&[&[1, 0, 0, 2], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        assert!(matches!(xsym_witness(&r, &bad), Err(Error::NoDiagonalWitness(_))));
    }

    #[test]
    fn restrict_examples() {
        let r = r_fi();
        assert_eq!(restrict(&r, &[1, 2]).unwrap(), r);
        assert_eq!(restrict(&r, &[]), Err(Error::EmptySubalphabet));
        assert!(restrict(&r, &[2, 1]).is_err());
        let one = restrict(&r, &[2]).unwrap();
        assert_eq!(one.nnz(), 1);
    }

    #[test]
    fn skew_examples() {
        assert!(skew_invariance_check(&r_fi()));
        assert!(skew_invariance_check(&WordMatrix::identity(Rank::new(3).unwrap(), 2, Q).unwrap()));
        assert!(j_intertwiner_check(&r_fi(), 3).unwrap());
        assert!(j_intertwiner_check(&r_fi(), 4).unwrap());
    }
}
