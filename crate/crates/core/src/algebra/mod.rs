//! Subspaces of word-matrix space, image algebras, trace-form radicals,
//! commutants, intertwiners, summand counts and k-equivalence.

mod comb;
pub(crate) mod kernel;

use std::fmt;
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::{embed, tower};
use crate::error::{Error, Result};
use crate::exactmat::{poly, WordMatrix};
use crate::field::{Field, FieldTag, PrimeField, Rationals, P1, P2};
use crate::linalg::{Dense, Echelon, SparseVec};
use crate::with_field;
use crate::words::{ChargeTable, PositionClass, Rank};

pub use comb::{comb_intertwiner, comb_word, CombLetter, CombWord};
use kernel::Csr;

/// Typed coordinate vectors for one of the supported fields.
#[derive(Debug, Clone)]
pub enum Vecs {
    Rational(Vec<SparseVec<BigRational>>),
    Prime(Vec<SparseVec<u64>>),
}

/// Field operations needed beyond [`Field`] by the algebra routines.
pub trait Carrier: Field {
    fn wrap(v: Vec<SparseVec<Self::Elem>>) -> Vecs;
    fn peek(v: &Vecs) -> &[SparseVec<Self::Elem>];
    /// Distinct roots in the field.
    fn roots<R: Rng + ?Sized>(&self, p: &[Self::Elem], rng: &mut R) -> Vec<Self::Elem>;
    /// A coefficient for random combinations.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
}

impl Carrier for Rationals {
    fn wrap(v: Vec<SparseVec<BigRational>>) -> Vecs {
        Vecs::Rational(v)
    }
    fn peek(v: &Vecs) -> &[SparseVec<BigRational>] {
        match v {
            Vecs::Rational(x) => x,
            Vecs::Prime(_) => panic!("field tag mismatch"),
        }
    }
    fn roots<R: Rng + ?Sized>(&self, p: &[BigRational], _rng: &mut R) -> Vec<BigRational> {
        poly::rational_roots(p)
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.random_range(-9..=9))
    }
}

impl Carrier for PrimeField {
    fn wrap(v: Vec<SparseVec<u64>>) -> Vecs {
        Vecs::Prime(v)
    }
    fn peek(v: &Vecs) -> &[SparseVec<u64>] {
        match v {
            Vecs::Prime(x) => x,
            Vecs::Rational(_) => panic!("field tag mismatch"),
        }
    }
    fn roots<R: Rng + ?Sized>(&self, p: &[u64], rng: &mut R) -> Vec<u64> {
        poly::prime_roots(self, p, rng)
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.random(rng)
    }
}

/// An echelonized subspace of the level-`n` square matrices.
#[derive(Debug, Clone)]
pub struct Subspace {
    rank: Rank,
    level: usize,
    field: FieldTag,
    vecs: Vecs,
}

impl Subspace {
    fn new<F: Carrier>(rank: Rank, level: usize, f: &F, vecs: Vec<SparseVec<F::Elem>>) -> Subspace {
        Subspace { rank, level, field: f.tag(), vecs: F::wrap(vecs) }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    /// Side length `N^n` of the matrices.
    pub fn matrix_dim(&self) -> usize {
        self.rank.pow(self.level).expect("checked at construction") as usize
    }

    pub fn dim(&self) -> usize {
        match &self.vecs {
            Vecs::Rational(v) => v.len(),
            Vecs::Prime(v) => v.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn vecs(&self) -> &Vecs {
        &self.vecs
    }

    /// Spans a list of matrices.
    pub fn from_matrices(rank: Rank, level: usize, field: FieldTag, mats: &[WordMatrix]) -> Result<Subspace> {
        let d = matrix_dim(rank, level)?;
        with_field!(field, |f| {
            let mut e = Echelon::new(f, d * d);
            for m in mats {
                check_shape(m, rank, level, field)?;
                e.insert(&m.to_coords(&f)?);
            }
            Ok(Subspace::new(rank, level, &f, e.into_vectors()))
        })
    }

    /// The basis as matrices.
    pub fn basis(&self) -> Result<Vec<WordMatrix>> {
        with_field!(self.field, |f| self.basis_typed(&f))
    }

    fn basis_typed<F: Carrier>(&self, f: &F) -> Result<Vec<WordMatrix>> {
        F::peek(&self.vecs).iter().map(|v| WordMatrix::from_coords(self.rank, self.level, self.level, f, v)).collect()
    }

    fn echelon<F: Carrier>(&self, f: &F) -> Echelon<F> {
        let d = self.matrix_dim();
        let mut e = Echelon::new(f.clone(), d * d);
        for v in F::peek(&self.vecs) {
            e.insert(v);
        }
        e
    }

    pub fn contains(&self, m: &WordMatrix) -> Result<bool> {
        check_shape(m, self.rank, self.level, self.field)?;
        with_field!(self.field, |f| Ok(self.echelon(&f).contains(&m.to_coords(&f)?)))
    }

    /// Whether `other ⊆ self`.
    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        if other.rank != self.rank || other.level != self.level || other.field != self.field {
            return Err(Error::ShapeMismatch("subspaces live in different matrix spaces".into()));
        }
        with_field!(self.field, |f| {
            let e = self.echelon(&f);
            Ok(peek_as(&f, &other.vecs).iter().all(|v| e.contains(v)))
        })
    }

    /// Whether the span of `self` is closed under right and left products with `by`.
    pub fn is_ideal_of(&self, by: &Subspace) -> Result<bool> {
        with_field!(self.field, |f| {
            let d = self.matrix_dim();
            let e = self.echelon(&f);
            let mine = peek_as(&f, &self.vecs);
            for y in peek_as(&f, &by.vecs) {
                for x in mine {
                    if !e.contains(&kernel::product(&f, x, y, d)) || !e.contains(&kernel::product(&f, y, x, d)) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })
    }
}

fn peek_as<'a, F: Carrier>(_f: &F, v: &'a Vecs) -> &'a [SparseVec<F::Elem>] {
    F::peek(v)
}

/// A unital matrix algebra with the generators it was built from.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    space: Subspace,
    generators: Vec<WordMatrix>,
}

impl MatrixAlgebra {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn generators(&self) -> &[WordMatrix] {
        &self.generators
    }

    pub fn field(&self) -> FieldTag {
        self.space.field
    }

    /// Checks that every product of two basis elements stays inside.
    pub fn is_closed(&self) -> Result<bool> {
        self.space.is_ideal_of(&self.space)
    }
}

fn matrix_dim(rank: Rank, level: usize) -> Result<usize> {
    let d = rank.pow(level)?;
    if d.checked_mul(d).is_none_or(|x| x > u32::MAX as u64) {
        return Err(Error::EnumerationTooLarge { size: (d as u128) * (d as u128), guard: u32::MAX as u64 });
    }
    Ok(d as usize)
}

fn check_shape(m: &WordMatrix, rank: Rank, level: usize, field: FieldTag) -> Result<()> {
    rank.check_same(m.rank())?;
    if m.cod_len() != level || m.dom_len() != level {
        return Err(Error::ShapeMismatch(format!("expected level {level} square matrices, got {}x{}", m.cod_len(), m.dom_len())));
    }
    if m.field() != field {
        return Err(Error::FieldMismatch(m.field().to_string(), field.to_string()));
    }
    Ok(())
}

fn common_shape(gens: &[WordMatrix]) -> Result<(Rank, usize, FieldTag)> {
    let g0 = gens.first().ok_or_else(|| Error::ShapeMismatch("no generators given".into()))?;
    let shape = (g0.rank(), g0.cod_len(), g0.field());
    for g in gens {
        check_shape(g, shape.0, shape.1, shape.2)?;
    }
    Ok(shape)
}

fn csrs<F: Field>(f: &F, gens: &[WordMatrix], d: usize) -> Result<Vec<Csr<F::Elem>>> {
    gens.iter().map(|g| Ok(Csr::from_coords(&g.to_coords(f)?, d))).collect()
}

/// The trace-form radical needs characteristic 0 or `p > d`.
fn check_characteristic(field: FieldTag, d: usize) -> Result<()> {
    match field {
        FieldTag::Prime(p) if p <= d as u64 => Err(Error::FieldPrecondition(format!(
            "trace-form radical needs p > {d}, got p = {p}"
        ))),
        _ => Ok(()),
    }
}

/// Coordinates at charge-conserving positions, if every vector avoids forbidden positions.
fn cc_mask<E: Clone>(rank: Rank, level: usize, vecs: &[SparseVec<E>]) -> Result<Option<Vec<bool>>> {
    let d = matrix_dim(rank, level)?;
    let table = ChargeTable::new(rank, level)?;
    let class = |i: u32| table.class(i as usize / d, i as usize % d);
    if vecs.iter().any(|v| v.idx.iter().any(|&i| class(i) == PositionClass::Forbidden)) {
        return Ok(None);
    }
    Ok(Some((0..(d * d) as u32).map(|i| class(i) == PositionClass::CC).collect()))
}

/// The unital algebra generated by square matrices of one shape.
///
/// Inverses are not added: for invertible generators they already lie in
/// the unital algebra by Cayley–Hamilton.
pub fn closure(gens: &[WordMatrix]) -> Result<MatrixAlgebra> {
    let (rank, level, field) = common_shape(gens)?;
    let d = matrix_dim(rank, level)?;
    with_field!(field, |f| {
        let g = csrs(&f, gens, d)?;
        let e = kernel::closure(&f, &g, d);
        Ok(MatrixAlgebra { space: Subspace::new(rank, level, &f, e.into_vectors()), generators: gens.to_vec() })
    })
}

/// Jacobson radical as the nullspace of the trace form `(x, y) ↦ tr(xy)`.
pub fn radical(a: &MatrixAlgebra) -> Result<Subspace> {
    let s = &a.space;
    let d = s.matrix_dim();
    check_characteristic(s.field, d)?;
    with_field!(s.field, |f| {
        let basis = peek_as(&f, &s.vecs);
        let mask = cc_mask(s.rank, s.level, basis)?;
        let rad = kernel::radical(&f, basis, d, mask.as_deref());
        Ok(Subspace::new(s.rank, s.level, &f, rad))
    })
}

/// `dim rad A`, without forming the radical basis.
pub fn radical_dim(a: &MatrixAlgebra) -> Result<usize> {
    let s = &a.space;
    let d = s.matrix_dim();
    check_characteristic(s.field, d)?;
    with_field!(s.field, |f| {
        let basis = peek_as(&f, &s.vecs);
        let mask = cc_mask(s.rank, s.level, basis)?;
        Ok(kernel::radical_dim(&f, basis, d, mask.as_deref()))
    })
}

/// `[dim rad, dim rad², ..., dim rad^kmax]`.
pub fn radical_powers(a: &MatrixAlgebra, rad: &Subspace, kmax: usize) -> Result<Vec<usize>> {
    let s = &a.space;
    let d = s.matrix_dim();
    let mut dims = vec![rad.dim()];
    if kmax < 2 {
        return Ok(dims);
    }
    with_field!(s.field, |f| {
        let gens = if a.generators.is_empty() { s.basis()? } else { a.generators.clone() };
        let g = csrs(&f, &gens, d)?;
        dims.extend(kernel::radical_power_dims(&f, &g, peek_as(&f, &rad.vecs), d, kmax));
        Ok(dims)
    })
}

/// `dim rad^k` (with `rad^1 = rad`).
pub fn radical_power(a: &MatrixAlgebra, k: usize) -> Result<usize> {
    let rad = radical(a)?;
    if k == 0 {
        return Ok(a.dim());
    }
    Ok(radical_powers(a, &rad, k)?[k - 1])
}

/// The commutant of `gens` inside level-`level` matrices, by solving
/// `X·g = g·X` over all matrix units.
pub fn commutant_in(rank: Rank, level: usize, field: FieldTag, gens: &[WordMatrix]) -> Result<MatrixAlgebra> {
    let space = intertwiner_space_generic_in(rank, level, field, gens, gens)?;
    let generators = space.basis()?;
    Ok(MatrixAlgebra { space, generators })
}

pub fn commutant(gens: &[WordMatrix]) -> Result<MatrixAlgebra> {
    let (rank, level, field) = common_shape(gens)?;
    commutant_in(rank, level, field, gens)
}

/// Commutant of the level-`n` tower of `r`.
pub fn commutant_tower(r: &WordMatrix, n: usize) -> Result<MatrixAlgebra> {
    let space = intertwiner_space(r, r, n)?;
    let generators = space.basis()?;
    Ok(MatrixAlgebra { space, generators })
}

fn intertwiner_space_generic_in(rank: Rank, level: usize, field: FieldTag, rs: &[WordMatrix], ss: &[WordMatrix]) -> Result<Subspace> {
    if rs.len() != ss.len() {
        return Err(Error::ShapeMismatch("generator lists differ in length".into()));
    }
    for m in rs.iter().chain(ss) {
        check_shape(m, rank, level, field)?;
    }
    let d = matrix_dim(rank, level)?;
    with_field!(field, |f| {
        let (a, b) = (csrs(&f, rs, d)?, csrs(&f, ss, d)?);
        Ok(Subspace::new(rank, level, &f, kernel::intertwiners(&f, &a, &b, None, d)))
    })
}

/// All `X` with `X·rs[i] = ss[i]·X`, over all matrix units.
pub fn intertwiner_space_generic(rs: &[WordMatrix], ss: &[WordMatrix]) -> Result<Subspace> {
    let (rank, level, field) = common_shape(rs)?;
    intertwiner_space_generic_in(rank, level, field, rs, ss)
}

/// All `X` with `X·embed(R,i,n) = embed(S,i,n)·X` for `i = 1..n−1`.
///
/// For `n ≥ 3` the odd generators act on disjoint strand pairs, so their
/// intertwiners are tensor products of the level-2 ones (times all of
/// `End(V)` on a leftover strand); only the even generators are imposed on
/// that smaller basis.
pub fn intertwiner_space(r: &WordMatrix, s: &WordMatrix, n: usize) -> Result<Subspace> {
    r.rank().check_same(s.rank())?;
    if r.field() != s.field() {
        return Err(Error::FieldMismatch(r.field().to_string(), s.field().to_string()));
    }
    if n < 3 {
        let (rs, ss) = (tower(r, n)?, tower(s, n)?);
        return intertwiner_space_generic_in(r.rank(), n, r.field(), &rs, &ss);
    }
    let rank = r.rank();
    let d = matrix_dim(rank, n)?;
    let nn = rank.get() as usize;
    with_field!(r.field(), |f| {
        let base = kernel::intertwiners(&f, &csrs(&f, &[r.clone()], nn * nn)?, &csrs(&f, &[s.clone()], nn * nn)?, None, nn * nn);
        let mut init = base.clone();
        let mut dcur = nn * nn;
        for _ in 1..n / 2 {
            init = init.iter().flat_map(|a| base.iter().map(move |b| (a, b))).map(|(a, b)| kernel::kron(&f, a, dcur, b, nn * nn)).collect();
            dcur *= nn * nn;
        }
        if n % 2 == 1 {
            let units: Vec<SparseVec<_>> = (0..(nn * nn) as u32).map(|i| SparseVec { idx: vec![i], val: vec![f.one()] }).collect();
            init = init.iter().flat_map(|a| units.iter().map(move |b| (a, b))).map(|(a, b)| kernel::kron(&f, a, dcur, b, nn)).collect();
        }
        let evens: Vec<usize> = (2..n).step_by(2).collect();
        let rs: Vec<WordMatrix> = evens.iter().map(|&i| embed(r, i, n)).collect::<Result<_>>()?;
        let ss: Vec<WordMatrix> = evens.iter().map(|&i| embed(s, i, n)).collect::<Result<_>>()?;
        let sol = kernel::intertwiners(&f, &csrs(&f, &rs, d)?, &csrs(&f, &ss, d)?, Some(&init), d);
        let mut e = Echelon::new(f.clone(), d * d);
        for v in &sol {
            e.insert(v);
        }
        Ok(Subspace::new(rank, n, &f, e.into_vectors()))
    })
}

/// Outcome of [`summand_count`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandReport {
    /// Number of indecomposable summands, when `E/rad E` is commutative.
    pub count: Option<usize>,
    pub commutant_dim: usize,
    pub commutant_radical_dim: usize,
    /// Summand dimensions, largest first, from the generalized eigenspaces of
    /// a random commutant element.
    pub summand_dims: Option<Vec<usize>>,
}

impl fmt::Display for SummandReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.count {
            Some(c) => write!(f, "summands: {c}")?,
            None => write!(f, "summands: indeterminate")?,
        }
        write!(f, " (commutant dim {}, radical {})", self.commutant_dim, self.commutant_radical_dim)?;
        if let Some(d) = &self.summand_dims {
            let s: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            write!(f, ", dims [{}]", s.join(","))?;
        }
        Ok(())
    }
}

/// Counts indecomposable summands of the module on which `e` is the commutant.
pub fn summand_count(e: &MatrixAlgebra, seed: u64) -> Result<SummandReport> {
    let s = &e.space;
    let d = s.matrix_dim();
    check_characteristic(s.field, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    with_field!(s.field, |f| summands_typed(&f, peek_as(&f, &s.vecs), d, &mut rng))
}

fn summands_typed<F: Carrier, R: Rng>(f: &F, basis: &[SparseVec<F::Elem>], d: usize, rng: &mut R) -> Result<SummandReport> {
    let m = basis.len();
    let rad = kernel::radical(f, basis, d, None);
    let mut re = Echelon::new(f.clone(), d * d);
    for v in &rad {
        re.insert(v);
    }
    let mut report = SummandReport { count: None, commutant_dim: m, commutant_radical_dim: rad.len(), summand_dims: None };
    let minus = f.neg(&f.one());
    for i in 0..m {
        for j in i + 1..m {
            let ab = kernel::product(f, &basis[i], &basis[j], d);
            let ba = kernel::product(f, &basis[j], &basis[i], d);
            let c = SparseVec::combine(f, d * d, &[(&ab, f.one()), (&ba, minus.clone())]);
            if !re.contains(&c) {
                return Ok(report);
            }
        }
    }
    let count = m - rad.len();
    report.count = Some(count);
    for _ in 0..16 {
        let x = kernel::random_combination(f, basis, d * d, rng, |r| f.sample(r));
        let x = kernel::to_dense(f, &x, d);
        let mp = poly::minimal_polynomial_dense(f, &x);
        let roots = f.roots(&mp, rng);
        if roots.len() != count {
            continue;
        }
        let mut dims: Vec<usize> = roots.iter().map(|l| generalized_eigenspace_dim(f, &x, l)).collect();
        if dims.iter().sum::<usize>() == d {
            dims.sort_unstable_by(|a, b| b.cmp(a));
            report.summand_dims = Some(dims);
            break;
        }
    }
    Ok(report)
}

fn generalized_eigenspace_dim<F: Field>(f: &F, x: &Dense<F::Elem>, l: &F::Elem) -> usize {
    let d = x.rows;
    let mut y = x.clone();
    for i in 0..d {
        let t = f.sub(y.at(i, i), l);
        *y.at_mut(i, i) = t;
    }
    let mut p = y.clone();
    let mut rank = p.rank(f);
    loop {
        let q = p.mul(f, &y);
        let r = q.rank(f);
        if r == rank {
            return d - rank;
        }
        rank = r;
        p = q;
    }
}

/// Summand count for the level-`n` tower of `r`.
pub fn summand_count_tower(r: &WordMatrix, n: usize, seed: u64) -> Result<SummandReport> {
    summand_count(&commutant_tower(r, n)?, seed)
}

/// Verdict of [`k_equivalent`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equivalence {
    Equivalent,
    Inequivalent,
    ProbablyInequivalent,
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equivalence::Equivalent => "equivalent",
            Equivalence::Inequivalent => "inequivalent",
            Equivalence::ProbablyInequivalent => "probably_inequivalent",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelEquivalence {
    pub n: usize,
    pub intertwiner_dim: usize,
    pub commutant_dims: (usize, usize),
    pub invertible_found: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub verdict: Equivalence,
    pub levels: Vec<LevelEquivalence>,
}

/// Number of random combinations tried per level before giving up.
pub const EQUIV_TRIALS: usize = 32;

/// Decides whether the towers of `r` and `s` are equivalent for every `n ≤ k`.
pub fn k_equivalent(r: &WordMatrix, s: &WordMatrix, k: usize, seed: u64) -> Result<EquivalenceReport> {
    if k < 2 {
        return Err(Error::Invalid("k-equivalence needs k >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut levels = Vec::new();
    for n in 2..=k {
        let space = intertwiner_space(r, s, n)?;
        let cr = intertwiner_space(r, r, n)?.dim();
        let cs = intertwiner_space(s, s, n)?.dim();
        let mut lvl = LevelEquivalence { n, intertwiner_dim: space.dim(), commutant_dims: (cr, cs), invertible_found: false };
        if space.dim() == 0 || space.dim() != cr || space.dim() != cs {
            levels.push(lvl);
            return Ok(EquivalenceReport { verdict: Equivalence::Inequivalent, levels });
        }
        let d = space.matrix_dim();
        let found = with_field!(space.field, |f| {
            let basis = peek_as(&f, &space.vecs);
            let trials = if basis.len() == 1 { 1 } else { EQUIV_TRIALS };
            (0..trials).any(|_| {
                let x = kernel::random_combination(&f, basis, d * d, &mut rng, |g| f.sample(g));
                !x.is_empty() && kernel::to_dense(&f, &x, d).rank(&f) == d
            })
        });
        lvl.invertible_found = found;
        let single = space.dim() == 1;
        levels.push(lvl);
        if !found {
            let verdict = if single { Equivalence::Inequivalent } else { Equivalence::ProbablyInequivalent };
            return Ok(EquivalenceReport { verdict, levels });
        }
    }
    Ok(EquivalenceReport { verdict: Equivalence::Equivalent, levels })
}

/// Dimension data for one tower level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgebraReport {
    pub n: usize,
    pub dim: usize,
    pub dim_ss: usize,
    /// `dim rad^k` for `k = 1, 2, ...`.
    pub rad_powers: Vec<usize>,
    pub field: String,
    pub seconds: Option<f64>,
}

/// Image-algebra dimension, semisimple quotient and radical powers up to
/// `rad^max_power` for the level-`n` tower of `r` over `field`.
pub fn tower_report(r: &WordMatrix, n: usize, field: FieldTag, max_power: usize) -> Result<AlgebraReport> {
    let start = Instant::now();
    let r = r.to_field(field)?;
    let gens = if n >= 2 { tower(&r, n)? } else { vec![WordMatrix::identity(r.rank(), n, field)?] };
    let a = closure(&gens)?;
    let rad_powers = if max_power >= 2 {
        let rad = radical(&a)?;
        radical_powers(&a, &rad, max_power)?
    } else {
        vec![radical_dim(&a)?]
    };
    Ok(AlgebraReport {
        n,
        dim: a.dim(),
        dim_ss: a.dim() - rad_powers[0],
        rad_powers,
        field: field.to_string(),
        seconds: Some(start.elapsed().as_secs_f64()),
    })
}

/// Runs `run` over the two default primes and insists the answers agree.
pub fn dual_prime<T: PartialEq + fmt::Debug>(run: impl Fn(FieldTag) -> Result<T>) -> Result<T> {
    let a = run(FieldTag::Prime(P1))?;
    let b = run(FieldTag::Prime(P2))?;
    if a != b {
        return Err(Error::BadPrime(P1, P2, format!("{a:?} vs {b:?}")));
    }
    Ok(a)
}

/// Field selection for commands: the rationals, one prime, or both default
/// primes with a cross-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FieldMode {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime,
    #[serde(rename = "Fp2")]
    DualPrime,
}

impl FieldMode {
    /// The field used for building matrices; the first prime for the dual mode.
    pub fn tag(self) -> FieldTag {
        match self {
            FieldMode::Rational => FieldTag::Rational,
            FieldMode::Prime | FieldMode::DualPrime => FieldTag::Prime(P1),
        }
    }

    pub fn run<T: PartialEq + fmt::Debug>(self, run: impl Fn(FieldTag) -> Result<T>) -> Result<T> {
        match self {
            FieldMode::DualPrime => dual_prime(run),
            _ => run(self.tag()),
        }
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldMode::Rational => "Q",
            FieldMode::Prime => "Fp",
            FieldMode::DualPrime => "Fp2",
        })
    }
}

impl std::str::FromStr for FieldMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<FieldMode> {
        match s.trim() {
            "Q" => Ok(FieldMode::Rational),
            "Fp" => Ok(FieldMode::Prime),
            "Fp2" => Ok(FieldMode::DualPrime),
            _ => Err(Error::Parse(format!("unknown field {s:?}; expected Q, Fp or Fp2"))),
        }
    }
}

#[cfg(test)]
mod tests;
