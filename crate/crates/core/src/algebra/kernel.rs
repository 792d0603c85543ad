//! Field-generic kernels on square matrices stored as sparse coordinate
//! vectors, coordinate `r·d + c`.

use std::collections::HashMap;

use rand::Rng;

use crate::field::Field;
use crate::linalg::{nullspace, Accumulator, Dense, Echelon, SparseVec};

/// A square matrix with row and column adjacency, for fast products.
#[derive(Debug, Clone)]
pub struct Csr<E> {
    pub d: usize,
    pub rows: Vec<Vec<(u32, E)>>,
    pub cols: Vec<Vec<(u32, E)>>,
}

impl<E: Clone> Csr<E> {
    pub fn from_coords(v: &SparseVec<E>, d: usize) -> Self {
        let mut rows = vec![Vec::new(); d];
        let mut cols = vec![Vec::new(); d];
        for (i, x) in v.iter() {
            let (r, c) = (i as usize / d, i as usize % d);
            rows[r].push((c as u32, x.clone()));
            cols[c].push((r as u32, x.clone()));
        }
        Csr { d, rows, cols }
    }
}

/// `acc += x·g`.
pub fn add_right_product<F: Field>(acc: &mut Accumulator<'_, F>, x: &SparseVec<F::Elem>, g: &Csr<F::Elem>) {
    let d = g.d;
    for (i, v) in x.iter() {
        let (r, c) = (i as usize / d, i as usize % d);
        let base = (r * d) as u32;
        for (c2, w) in &g.rows[c] {
            acc.add_term(base + c2, v, w);
        }
    }
}

/// `acc += g·x`.
pub fn add_left_product<F: Field>(acc: &mut Accumulator<'_, F>, g: &Csr<F::Elem>, x: &SparseVec<F::Elem>) {
    let d = g.d;
    for (i, v) in x.iter() {
        let (r, c) = (i as usize / d, i as usize % d);
        for (r2, w) in &g.cols[r] {
            acc.add_term(*r2 * d as u32 + c as u32, w, v);
        }
    }
}

pub fn product<F: Field>(f: &F, x: &SparseVec<F::Elem>, y: &SparseVec<F::Elem>, d: usize) -> SparseVec<F::Elem> {
    let mut acc = Accumulator::new(f, d * d);
    add_right_product(&mut acc, x, &Csr::from_coords(y, d));
    acc.take()
}

pub fn identity<F: Field>(f: &F, d: usize) -> SparseVec<F::Elem> {
    SparseVec { idx: (0..d).map(|i| (i * d + i) as u32).collect(), val: vec![f.one(); d] }
}

/// Kronecker product in coordinates: `(r1 + da·r2, c1 + da·c2)`.
pub fn kron<F: Field>(f: &F, a: &SparseVec<F::Elem>, da: usize, b: &SparseVec<F::Elem>, db: usize) -> SparseVec<F::Elem> {
    let d = da * db;
    let mut pairs = Vec::with_capacity(a.nnz() * b.nnz());
    for (i, x) in a.iter() {
        let (r1, c1) = (i as usize / da, i as usize % da);
        for (j, y) in b.iter() {
            let (r2, c2) = (j as usize / db, j as usize % db);
            pairs.push((((r1 + da * r2) * d + c1 + da * c2) as u32, f.mul(x, y)));
        }
    }
    SparseVec::from_pairs(f, pairs)
}

/// The unital algebra generated by `gens`: products of the growing basis with
/// generators on the right until no new pivot appears.
pub fn closure<F: Field>(f: &F, gens: &[Csr<F::Elem>], d: usize) -> Echelon<F> {
    let mut e = Echelon::new(f.clone(), d * d);
    let mut acc = Accumulator::new(f, d * d);
    acc.load(&identity(f, d));
    e.insert_with(&mut acc);
    let mut next = 0;
    while next < e.len() {
        let x = e.vectors()[next].clone();
        for g in gens {
            add_right_product(&mut acc, &x, g);
            e.insert_with(&mut acc);
        }
        next += 1;
    }
    e
}

/// Smallest subspace containing `seeds` and closed under left multiplication by `gens`.
pub fn extend_left_ideal<F: Field>(e: &mut Echelon<F>, gens: &[Csr<F::Elem>], seed: &SparseVec<F::Elem>) {
    let f = e.field().clone();
    let mut acc = Accumulator::new(&f, e.ambient_dim());
    let start = e.len();
    if !e.insert(seed) {
        return;
    }
    let mut next = start;
    while next < e.len() {
        let x = e.vectors()[next].clone();
        for g in gens {
            add_left_product(&mut acc, g, &x);
            e.insert_with(&mut acc);
        }
        next += 1;
    }
}

/// Gram matrix of the trace form `tr(b_i b_j)`.
///
/// `mask` restricts to coordinates that can contribute (charge-conserving
/// positions when every basis element is CCwg).
pub fn trace_gram<F: Field>(f: &F, basis: &[SparseVec<F::Elem>], d: usize, mask: Option<&[bool]>) -> Vec<Vec<F::Elem>> {
    let m = basis.len();
    let keep = |i: u32| mask.is_none_or(|mk| mk[i as usize]);
    let filtered: Vec<Vec<(u32, F::Elem)>> =
        basis.iter().map(|b| b.iter().filter(|(i, _)| keep(*i)).map(|(i, x)| (i, x.clone())).collect()).collect();
    let mut dense = vec![f.zero(); d * d];
    let mut g = vec![vec![f.zero(); m]; m];
    for j in 0..m {
        for (i, x) in &filtered[j] {
            let (r, c) = (*i as usize / d, *i as usize % d);
            dense[c * d + r] = x.clone();
        }
        for i in 0..=j {
            let mut s = f.zero();
            for (k, x) in &filtered[i] {
                let y = &dense[*k as usize];
                if !f.is_zero(y) {
                    f.add_mul_assign(&mut s, x, y);
                }
            }
            g[i][j] = s.clone();
            g[j][i] = s;
        }
        for (i, _) in &filtered[j] {
            let (r, c) = (*i as usize / d, *i as usize % d);
            dense[c * d + r] = f.zero();
        }
    }
    g
}

fn gram_rows<F: Field>(f: &F, g: Vec<Vec<F::Elem>>) -> Vec<SparseVec<F::Elem>> {
    g.into_iter()
        .map(|row| {
            let pairs = row.into_iter().enumerate().map(|(i, x)| (i as u32, x)).collect();
            SparseVec::from_pairs(f, pairs)
        })
        .collect()
}

/// Radical of the algebra spanned by `basis`: the trace-form nullspace, mapped back to matrices.
pub fn radical<F: Field>(f: &F, basis: &[SparseVec<F::Elem>], d: usize, mask: Option<&[bool]>) -> Vec<SparseVec<F::Elem>> {
    let m = basis.len();
    let g = gram_rows(f, trace_gram(f, basis, d, mask));
    let kernel = nullspace(f, m, g);
    kernel
        .iter()
        .map(|y| {
            let terms: Vec<_> = y.iter().map(|(k, c)| (&basis[k as usize], c.clone())).collect();
            SparseVec::combine(f, d * d, &terms)
        })
        .collect()
}

pub fn radical_dim<F: Field>(f: &F, basis: &[SparseVec<F::Elem>], d: usize, mask: Option<&[bool]>) -> usize {
    let g = gram_rows(f, trace_gram(f, basis, d, mask));
    basis.len() - crate::linalg::rank(f, basis.len(), &g)
}

/// Dimensions of `rad^2, ..., rad^kmax`.
///
/// `rad` is written as a left ideal `Σ A·s_j`, so `rad^k = span{x·s_j : x ∈ rad^{k−1}}`.
pub fn radical_power_dims<F: Field>(f: &F, gens: &[Csr<F::Elem>], rad: &[SparseVec<F::Elem>], d: usize, kmax: usize) -> Vec<usize> {
    let mut ideal = Echelon::new(f.clone(), d * d);
    let mut seeds: Vec<Csr<F::Elem>> = Vec::new();
    for r in rad {
        if ideal.len() == rad.len() {
            break;
        }
        if !ideal.contains(r) {
            seeds.push(Csr::from_coords(r, d));
            extend_left_ideal(&mut ideal, gens, r);
        }
    }
    debug_assert_eq!(ideal.len(), rad.len());
    let mut dims = Vec::new();
    let mut current: Vec<SparseVec<F::Elem>> = rad.to_vec();
    let mut acc = Accumulator::new(f, d * d);
    for _ in 2..=kmax {
        if current.is_empty() {
            dims.push(0);
            continue;
        }
        let mut e = Echelon::new(f.clone(), d * d);
        for x in &current {
            for s in &seeds {
                add_right_product(&mut acc, x, s);
                e.insert_with(&mut acc);
            }
        }
        dims.push(e.len());
        current = e.into_vectors();
    }
    dims
}

/// All `X` in the span of `init` (matrix units when `None`) with `X·R_i = S_i·X`.
pub fn intertwiners<F: Field>(
    f: &F,
    rs: &[Csr<F::Elem>],
    ss: &[Csr<F::Elem>],
    init: Option<&[SparseVec<F::Elem>]>,
    d: usize,
) -> Vec<SparseVec<F::Elem>> {
    let dd = d * d;
    match init {
        None => {
            let mut rows = Vec::new();
            for (r, s) in rs.iter().zip(ss) {
                // Row (a, c') of X·R − S·X.
                for a in 0..d {
                    for c2 in 0..d {
                        let mut pairs: Vec<(u32, F::Elem)> = Vec::new();
                        for (c, w) in &r.cols[c2] {
                            pairs.push(((a * d) as u32 + c, w.clone()));
                        }
                        for (r2, w) in &s.rows[a] {
                            pairs.push((*r2 * d as u32 + c2 as u32, f.neg(w)));
                        }
                        if !pairs.is_empty() {
                            rows.push(SparseVec::from_pairs(f, pairs));
                        }
                    }
                }
            }
            nullspace(f, dd, rows)
        }
        Some(basis) => {
            let m = basis.len();
            let mut acc = Accumulator::new(f, dd);
            let mut by_coord: HashMap<u64, Vec<(u32, F::Elem)>> = HashMap::new();
            let minus = f.neg(&f.one());
            for (k, b) in basis.iter().enumerate() {
                let nb = b.scale(f, &minus);
                for (t, (r, s)) in rs.iter().zip(ss).enumerate() {
                    add_right_product(&mut acc, b, r);
                    add_left_product(&mut acc, s, &nb);
                    for (i, x) in acc.take().iter() {
                        by_coord.entry(t as u64 * dd as u64 + i as u64).or_default().push((k as u32, x.clone()));
                    }
                }
            }
            let mut keys: Vec<u64> = by_coord.keys().copied().collect();
            keys.sort_unstable();
            let rows = keys.into_iter().map(|key| SparseVec::from_pairs(f, by_coord.remove(&key).unwrap()));
            nullspace(f, m, rows)
                .iter()
                .map(|y| {
                    let terms: Vec<_> = y.iter().map(|(k, c)| (&basis[k as usize], c.clone())).collect();
                    SparseVec::combine(f, dd, &terms)
                })
                .collect()
        }
    }
}

pub fn to_dense<F: Field>(f: &F, x: &SparseVec<F::Elem>, d: usize) -> Dense<F::Elem> {
    let mut m = Dense::zeros(f, d, d);
    for (i, v) in x.iter() {
        m.data[i as usize] = v.clone();
    }
    m
}

pub fn random_combination<F: Field, R: Rng + ?Sized>(
    f: &F,
    basis: &[SparseVec<F::Elem>],
    dd: usize,
    rng: &mut R,
    coeff: impl Fn(&mut R) -> F::Elem,
) -> SparseVec<F::Elem> {
    let mut acc = Accumulator::new(f, dd);
    for b in basis {
        let c = coeff(rng);
        acc.add_scaled(b, &c);
    }
    acc.take()
}
