//! Sparse and dense exact elimination kernels, generic over [`Field`].

use crate::field::Field;

/// A sparse vector with strictly increasing indices and no stored zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVec<E> {
    pub idx: Vec<u32>,
    pub val: Vec<E>,
}

impl<E: Clone> SparseVec<E> {
    pub fn new() -> Self {
        SparseVec { idx: Vec::new(), val: Vec::new() }
    }

    pub fn nnz(&self) -> usize {
        self.idx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idx.is_empty()
    }

    pub fn leading(&self) -> Option<u32> {
        self.idx.first().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &E)> {
        self.idx.iter().copied().zip(self.val.iter())
    }

    /// Builds from unsorted pairs, summing duplicates and dropping zeros.
    pub fn from_pairs<F: Field<Elem = E>>(f: &F, mut pairs: Vec<(u32, E)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut out = SparseVec::new();
        for (i, v) in pairs {
            if out.idx.last() == Some(&i) {
                let last = out.val.last_mut().unwrap();
                *last = f.add(last, &v);
            } else {
                out.idx.push(i);
                out.val.push(v);
            }
        }
        out.retain_nonzero(f);
        out
    }

    pub fn retain_nonzero<F: Field<Elem = E>>(&mut self, f: &F) {
        let mut k = 0;
        for j in 0..self.idx.len() {
            if !f.is_zero(&self.val[j]) {
                self.idx[k] = self.idx[j];
                self.val.swap(k, j);
                k += 1;
            }
        }
        self.idx.truncate(k);
        self.val.truncate(k);
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        let mut out = SparseVec { idx: self.idx.clone(), val: self.val.iter().map(|v| f.mul(v, c)).collect() };
        out.retain_nonzero(f);
        out
    }

    /// Linear combination `Σ c_k v_k`.
    pub fn combine<F: Field<Elem = E>>(f: &F, dim: usize, terms: &[(&SparseVec<E>, E)]) -> Self {
        let mut acc = Accumulator::new(f, dim);
        for (v, c) in terms {
            acc.add_scaled(v, c);
        }
        acc.take()
    }
}

impl<E: Clone> Default for SparseVec<E> {
    fn default() -> Self {
        Self::new()
    }
}

/// Dense scratch space with a touched list, for building sparse vectors.
pub struct Accumulator<'a, F: Field> {
    f: &'a F,
    dense: Vec<F::Elem>,
    mark: Vec<bool>,
    touched: Vec<u32>,
}

impl<'a, F: Field> Accumulator<'a, F> {
    pub fn new(f: &'a F, dim: usize) -> Self {
        Accumulator { f, dense: vec![f.zero(); dim], mark: vec![false; dim], touched: Vec::new() }
    }

    #[inline]
    fn touch(&mut self, i: u32) {
        if !self.mark[i as usize] {
            self.mark[i as usize] = true;
            self.touched.push(i);
        }
    }

    #[inline]
    pub fn add_term(&mut self, i: u32, c: &F::Elem, v: &F::Elem) {
        self.touch(i);
        self.f.add_mul_assign(&mut self.dense[i as usize], c, v);
    }

    pub fn add_scaled(&mut self, v: &SparseVec<F::Elem>, c: &F::Elem) {
        for (i, x) in v.iter() {
            self.add_term(i, c, x);
        }
    }

    pub fn load(&mut self, v: &SparseVec<F::Elem>) {
        let one = self.f.one();
        self.add_scaled(v, &one);
    }

    #[inline]
    pub fn get(&self, i: u32) -> &F::Elem {
        &self.dense[i as usize]
    }

    /// Subtracts `c·v` where the caller guarantees `v` is a basis vector.
    #[inline]
    pub fn sub_scaled(&mut self, v: &SparseVec<F::Elem>, c: &F::Elem) {
        for (i, x) in v.iter() {
            self.touch(i);
            self.f.sub_mul_assign(&mut self.dense[i as usize], c, x);
        }
    }

    /// Extracts the contents as a sparse vector and clears the scratch.
    pub fn take(&mut self) -> SparseVec<F::Elem> {
        self.touched.sort_unstable();
        let mut out = SparseVec::new();
        let zero = self.f.zero();
        for &i in &self.touched {
            let v = std::mem::replace(&mut self.dense[i as usize], zero.clone());
            self.mark[i as usize] = false;
            if !self.f.is_zero(&v) {
                out.idx.push(i);
                out.val.push(v);
            }
        }
        self.touched.clear();
        out
    }

    pub fn clear(&mut self) {
        let zero = self.f.zero();
        for &i in &self.touched {
            self.dense[i as usize] = zero.clone();
            self.mark[i as usize] = false;
        }
        self.touched.clear();
    }
}

/// A semi-echelon basis: distinct leading indices, each leading coefficient 1.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    vecs: Vec<SparseVec<F::Elem>>,
    /// (pivot, position in `vecs`), sorted by pivot.
    order: Vec<(u32, u32)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Echelon { field, dim, vecs: Vec::new(), order: Vec::new() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vecs.is_empty()
    }

    /// Basis vectors in insertion order.
    pub fn vectors(&self) -> &[SparseVec<F::Elem>] {
        &self.vecs
    }

    pub fn into_vectors(self) -> Vec<SparseVec<F::Elem>> {
        self.vecs
    }

    pub fn pivots(&self) -> impl Iterator<Item = u32> + '_ {
        self.order.iter().map(|p| p.0)
    }

    /// Reduces the accumulator contents against the basis.
    pub fn reduce_in(&self, acc: &mut Accumulator<'_, F>) {
        for &(piv, k) in &self.order {
            let c = acc.get(piv).clone();
            if !self.field.is_zero(&c) {
                acc.sub_scaled(&self.vecs[k as usize], &c);
            }
        }
    }

    /// Reduces, and records the multipliers used: `v = Σ coeffs_k·basis_k + remainder`.
    pub fn reduce_with_coeffs(&self, acc: &mut Accumulator<'_, F>) -> Vec<(u32, F::Elem)> {
        let mut coeffs = Vec::new();
        for &(piv, k) in &self.order {
            let c = acc.get(piv).clone();
            if !self.field.is_zero(&c) {
                acc.sub_scaled(&self.vecs[k as usize], &c);
                coeffs.push((k, c));
            }
        }
        coeffs
    }

    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut acc = Accumulator::new(&self.field, self.dim);
        acc.load(v);
        self.reduce_in(&mut acc);
        acc.take()
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts a reduced nonzero vector, normalizing its leading coefficient.
    pub fn push_reduced(&mut self, mut r: SparseVec<F::Elem>) -> usize {
        let lead = r.val[0].clone();
        if !self.field.is_one(&lead) {
            let inv = self.field.inv(&lead).expect("nonzero leading coefficient");
            for x in r.val.iter_mut() {
                *x = self.field.mul(x, &inv);
            }
        }
        let piv = r.idx[0];
        let k = self.vecs.len() as u32;
        let pos = self.order.partition_point(|p| p.0 < piv);
        self.order.insert(pos, (piv, k));
        self.vecs.push(r);
        k as usize
    }

    /// Adds `v` if it is not in the span; returns whether it was new.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        self.push_reduced(r);
        true
    }

    /// Inserts using caller-owned scratch.
    pub fn insert_with(&mut self, acc: &mut Accumulator<'_, F>) -> bool {
        self.reduce_in(acc);
        let r = acc.take();
        if r.is_empty() {
            return false;
        }
        self.push_reduced(r);
        true
    }

    /// Converts to reduced row echelon form: each pivot column is zero in every other vector.
    /// Vectors are returned sorted by pivot.
    pub fn into_rref(self) -> Vec<SparseVec<F::Elem>> {
        let f = self.field.clone();
        let dim = self.dim;
        let mut vecs: Vec<Option<SparseVec<F::Elem>>> = self.vecs.into_iter().map(Some).collect();
        let order = self.order;
        let mut acc = Accumulator::new(&f, dim);
        let mut done: Vec<SparseVec<F::Elem>> = Vec::with_capacity(order.len());
        // Back substitution from the largest pivot down.
        let mut reduced_order: Vec<(u32, usize)> = Vec::new();
        for &(piv, k) in order.iter().rev() {
            let v = vecs[k as usize].take().unwrap();
            acc.load(&v);
            for &(p2, j) in reduced_order.iter().rev() {
                let c = acc.get(p2).clone();
                if !f.is_zero(&c) {
                    acc.sub_scaled(&done[j], &c);
                }
            }
            let r = acc.take();
            debug_assert_eq!(r.leading(), Some(piv));
            done.push(r);
            reduced_order.push((piv, done.len() - 1));
        }
        done.reverse();
        done
    }
}

/// Rank of a list of sparse vectors.
pub fn rank<F: Field>(f: &F, dim: usize, rows: &[SparseVec<F::Elem>]) -> usize {
    let mut e = Echelon::new(f.clone(), dim);
    let mut acc = Accumulator::new(f, dim);
    for r in rows {
        acc.load(r);
        e.insert_with(&mut acc);
    }
    e.len()
}

/// Basis of `{x : row·x = 0 for every row}` in a space of `ncols` coordinates.
pub fn nullspace<F: Field>(f: &F, ncols: usize, rows: impl IntoIterator<Item = SparseVec<F::Elem>>) -> Vec<SparseVec<F::Elem>> {
    let mut e = Echelon::new(f.clone(), ncols);
    let mut acc = Accumulator::new(f, ncols);
    for r in rows {
        acc.load(&r);
        e.insert_with(&mut acc);
        if e.len() == ncols {
            break;
        }
    }
    nullspace_of_echelon(f, ncols, e)
}

pub fn nullspace_of_echelon<F: Field>(f: &F, ncols: usize, e: Echelon<F>) -> Vec<SparseVec<F::Elem>> {
    let rref = e.into_rref();
    let mut is_pivot = vec![false; ncols];
    for r in &rref {
        is_pivot[r.idx[0] as usize] = true;
    }
    // For a free column j, x_j = 1 and x_pivot(r) = -r[j].
    let mut cols: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); ncols];
    for r in &rref {
        let piv = r.idx[0];
        for (j, v) in r.iter().skip(1) {
            cols[j as usize].push((piv, f.neg(v)));
        }
    }
    let mut out = Vec::new();
    for j in 0..ncols {
        if is_pivot[j] {
            continue;
        }
        let mut pairs = std::mem::take(&mut cols[j]);
        pairs.push((j as u32, f.one()));
        out.push(SparseVec::from_pairs(f, pairs));
    }
    out
}

/// Dense row-major matrix helper.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Dense<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Dense { rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut d = Dense::zeros(f, n, n);
        for i in 0..n {
            d.data[i * n + i] = f.one();
        }
        d
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut E {
        &mut self.data[r * self.cols + c]
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Dense<E>) -> Dense<E> {
        assert_eq!(self.cols, o.rows);
        let mut out = Dense::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.at(k, j);
                    if !f.is_zero(b) {
                        let t = &mut out.data[i * o.cols + j];
                        f.add_mul_assign(t, a, b);
                    }
                }
            }
        }
        out
    }

    /// In-place row reduction to RREF; returns pivot columns.
    pub fn rref<F: Field<Elem = E>>(&mut self, f: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.at(i, c))) else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.at(r, c)).unwrap();
            for j in c..self.cols {
                let v = f.mul(self.at(r, j), &inv);
                *self.at_mut(r, j) = v;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let m = self.at(i, c).clone();
                if f.is_zero(&m) {
                    continue;
                }
                for j in c..self.cols {
                    let src = self.data[r * self.cols + j].clone();
                    if !f.is_zero(&src) {
                        f.sub_mul_assign(&mut self.data[i * self.cols + j], &m, &src);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.clone().rref(f).len()
    }

    /// Nullspace basis (right kernel), as dense column vectors.
    pub fn nullspace<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut out = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for j in 0..self.cols {
            if is_pivot[j] {
                continue;
            }
            let mut x = vec![f.zero(); self.cols];
            x[j] = f.one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = f.neg(m.at(r, j));
            }
            out.push(x);
        }
        out
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Dense<E>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Dense::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = f.one();
        }
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Dense::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = aug.at(i, n + j).clone();
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn sv(f: &Rationals, pairs: &[(u32, i64)]) -> SparseVec<num_rational::BigRational> {
        SparseVec::from_pairs(f, pairs.iter().map(|&(i, v)| (i, f.from_i64(v))).collect())
    }

    #[test]
    fn echelon_rank_and_membership() {
        let f = Rationals;
        let mut e = Echelon::new(f, 4);
        assert!(e.insert(&sv(&f, &[(0, 1), (1, 2)])));
        assert!(e.insert(&sv(&f, &[(1, 1), (3, 1)])));
        assert!(!e.insert(&sv(&f, &[(0, 2), (1, 5), (3, 1)])));
        assert!(e.contains(&sv(&f, &[(0, 1), (1, 3), (3, 1)])));
        assert!(!e.contains(&sv(&f, &[(2, 1)])));
        assert_eq!(e.len(), 2);
        let rref = e.into_rref();
        assert_eq!(rref[0], sv(&f, &[(0, 1), (3, -2)]));
    }

    #[test]
    fn nullspace_small() {
        let f = Rationals;
        // x0 + x1 = 0, x2 = 0 in 4 unknowns.
        let ns = nullspace(&f, 4, vec![sv(&f, &[(0, 1), (1, 1)]), sv(&f, &[(2, 1)])]);
        assert_eq!(ns.len(), 2);
        assert_eq!(ns[0], sv(&f, &[(0, -1), (1, 1)]));
        assert_eq!(ns[1], sv(&f, &[(3, 1)]));
    }

    #[test]
    fn dense_inverse_and_rank() {
        let f = PrimeField::new(101).unwrap();
        let m = Dense { rows: 2, cols: 2, data: vec![2u64, 1, 1, 1] };
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Dense::identity(&f, 2));
        let s = Dense { rows: 2, cols: 2, data: vec![2u64, 4, 1, 2] };
        assert!(s.inverse(&f).is_none());
        assert_eq!(s.rank(&f), 1);
        assert_eq!(s.nullspace(&f), vec![vec![99u64, 1]]);
    }
}
