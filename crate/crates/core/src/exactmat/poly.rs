//! Univariate polynomials: minimal polynomials and root finding.
//!
//! Typed helpers use coefficient vectors in increasing degree order.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};

use crate::field::{Field, FieldTag, PrimeField, Scalar};
use crate::linalg::{Accumulator, Dense, SparseVec};

/// A polynomial with exact coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldTag,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(field: FieldTag, mut coeffs: Vec<Scalar>) -> Polynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn from_typed<F: Field>(f: &F, coeffs: &[F::Elem]) -> Polynomial {
        Polynomial::new(f.tag(), coeffs.iter().map(|c| f.to_scalar(c)).collect())
    }

    /// `Π (x − r)^m`.
    pub fn from_roots(field: FieldTag, roots: &[(Scalar, usize)]) -> Polynomial {
        let mut coeffs = vec![Scalar::one(field)];
        for (r, m) in roots {
            for _ in 0..*m {
                let mut next = vec![Scalar::zero(field); coeffs.len() + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    next[i + 1] = next[i + 1].add(c);
                    next[i] = next[i].sub(&c.mul(r));
                }
                coeffs = next;
            }
        }
        Polynomial::new(field, coeffs)
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(self.field), |acc, c| acc.mul(x).add(c))
    }

    /// Distinct roots in the coefficient field, with multiplicities.
    ///
    /// Over the rationals this searches rational roots; over a prime field it
    /// splits off linear factors.
    pub fn roots(&self) -> Vec<(Scalar, usize)> {
        let distinct: Vec<Scalar> = match self.field {
            FieldTag::Rational => {
                let c: Vec<BigRational> = self.coeffs.iter().map(|s| s.as_rational().unwrap().clone()).collect();
                rational_roots(&c).into_iter().map(Scalar::Rational).collect()
            }
            FieldTag::Prime(p) => {
                let f = PrimeField::new(p).expect("tag holds a prime");
                let c: Vec<u64> = self.coeffs.iter().map(|s| f.from_scalar(s).unwrap()).collect();
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
                let mut r = prime_roots(&f, &c, &mut rng);
                r.sort_unstable();
                r.into_iter().map(|v| f.to_scalar(&v)).collect()
            }
        };
        distinct
            .into_iter()
            .map(|r| {
                let mut m = 0;
                let mut p = self.clone();
                while p.degree() > 0 && p.eval(&r).is_zero() {
                    p = p.divide_linear(&r);
                    m += 1;
                }
                (r, m)
            })
            .collect()
    }

    fn divide_linear(&self, r: &Scalar) -> Polynomial {
        let n = self.coeffs.len();
        let mut q = vec![Scalar::zero(self.field); n - 1];
        let mut carry = Scalar::zero(self.field);
        for i in (1..n).rev() {
            carry = carry.mul(r).add(&self.coeffs[i]);
            q[i - 1] = carry.clone();
        }
        Polynomial::new(self.field, q)
    }

    /// Product of linear factors times any unsplit remainder, e.g. `(x - 1)^2 (x + 1)`.
    pub fn factored(&self) -> String {
        let mut roots = self.roots();
        roots.sort_by(|a, b| b.1.cmp(&a.1));
        let mut rest = self.clone();
        let mut parts = Vec::new();
        for (r, m) in &roots {
            for _ in 0..*m {
                rest = rest.divide_linear(r);
            }
            let lin = Polynomial::new(self.field, vec![r.neg(), Scalar::one(self.field)]);
            parts.push(if *m == 1 { format!("({lin})") } else { format!("({lin})^{m}") });
        }
        if rest.degree() > 0 {
            parts.push(format!("({rest})"));
        } else if rest.coeffs.first().is_some_and(|c| !c.is_one()) {
            parts.insert(0, rest.coeffs[0].to_string());
        }
        if parts.is_empty() {
            self.to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = match c {
                Scalar::Rational(r) if r.is_negative() => (true, Scalar::Rational(-r)),
                _ => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Minimal polynomial of a dense square matrix by echelonizing `I, M, M², ...`.
pub fn minimal_polynomial_dense<F: Field>(f: &F, m: &Dense<F::Elem>) -> Vec<F::Elem> {
    let d = m.rows;
    let coords = d * d;
    let to_vec = |x: &Dense<F::Elem>| {
        let mut v = SparseVec::new();
        for (i, e) in x.data.iter().enumerate() {
            if !f.is_zero(e) {
                v.idx.push(i as u32);
                v.val.push(e.clone());
            }
        }
        v
    };
    // Reduced powers with their expressions in terms of I, M, ..., M^k.
    let mut basis: Vec<(SparseVec<F::Elem>, Vec<F::Elem>)> = Vec::new();
    let mut order: Vec<(u32, usize)> = Vec::new();
    let mut power = Dense::identity(f, d);
    let mut acc = Accumulator::new(f, coords);
    for k in 0..=d {
        acc.load(&to_vec(&power));
        let mut combo = vec![f.zero(); k + 1];
        combo[k] = f.one();
        for &(piv, j) in &order {
            let c = acc.get(piv).clone();
            if f.is_zero(&c) {
                continue;
            }
            acc.sub_scaled(&basis[j].0, &c);
            for (t, x) in basis[j].1.iter().enumerate() {
                f.sub_mul_assign(&mut combo[t], &c, x);
            }
        }
        let r = acc.take();
        if r.is_empty() {
            return combo;
        }
        let inv = f.inv(&r.val[0]).unwrap();
        let r = r.scale(f, &inv);
        let combo: Vec<F::Elem> = combo.iter().map(|x| f.mul(x, &inv)).collect();
        let pos = order.partition_point(|p| p.0 < r.idx[0]);
        order.insert(pos, (r.idx[0], basis.len()));
        basis.push((r, combo));
        power = power.mul(f, m);
    }
    unreachable!("Cayley–Hamilton bounds the degree by the dimension")
}

pub fn trim<F: Field>(f: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut r = a.to_vec();
    trim(f, &mut r);
    let db = b.len() - 1;
    let lead_inv = f.inv(&b[db]).unwrap();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = f.mul(r.last().unwrap(), &lead_inv);
        for (i, x) in b.iter().enumerate() {
            f.sub_mul_assign(&mut r[shift + i], &c, x);
        }
        trim(f, &mut r);
    }
    r
}

/// Monic greatest common divisor.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(f, &mut a);
    trim(f, &mut b);
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last() {
        let inv = f.inv(l).unwrap();
        a = a.iter().map(|x| f.mul(x, &inv)).collect();
    }
    a
}

fn mulmod_poly<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            f.add_mul_assign(&mut out[i + j], x, y);
        }
    }
    rem(f, &out, m)
}

fn powmod_poly<F: Field>(f: &F, base: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = vec![f.one()];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_poly(f, &acc, &b, m);
        }
        b = mulmod_poly(f, &b, &b, m);
        e >>= 1;
    }
    acc
}

fn divide<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut r = a.to_vec();
    trim(f, &mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return Vec::new();
    }
    let lead_inv = f.inv(&b[db]).unwrap();
    let mut q = vec![f.zero(); r.len() - db];
    for shift in (0..q.len()).rev() {
        let c = f.mul(&r[shift + db], &lead_inv);
        for (i, x) in b.iter().enumerate() {
            f.sub_mul_assign(&mut r[shift + i], &c, x);
        }
        q[shift] = c;
    }
    q
}

/// Distinct roots of `p` in `Z/q` by Cantor–Zassenhaus splitting of `gcd(p, x^q − x)`.
pub fn prime_roots<R: Rng + ?Sized>(f: &PrimeField, p: &[u64], rng: &mut R) -> Vec<u64> {
    let mut p = p.to_vec();
    trim(f, &mut p);
    if p.len() <= 1 {
        return Vec::new();
    }
    let q = f.modulus();
    let x = vec![0u64, 1];
    let xq = powmod_poly(f, &x, q, &p);
    let mut xq_minus_x = xq;
    xq_minus_x.resize(xq_minus_x.len().max(2), 0);
    xq_minus_x[1] = f.sub(&xq_minus_x[1], &1);
    let g = gcd(f, &p, &xq_minus_x);
    let mut roots = Vec::new();
    split(f, g, rng, &mut roots);
    roots
}

fn split<R: Rng + ?Sized>(f: &PrimeField, g: Vec<u64>, rng: &mut R, out: &mut Vec<u64>) {
    let deg = g.len() - 1;
    if deg == 0 {
        return;
    }
    if deg == 1 {
        out.push(f.neg(&g[0]));
        return;
    }
    if f.modulus() == 2 {
        for r in 0..2u64 {
            let v = g.iter().rev().fold(0u64, |acc, c| f.add(&f.mul(&acc, &r), c));
            if v == 0 {
                out.push(r);
            }
        }
        return;
    }
    loop {
        let a = f.random(rng);
        let shifted = vec![a, 1u64];
        let mut h = powmod_poly(f, &shifted, (f.modulus() - 1) / 2, &g);
        if h.is_empty() {
            continue;
        }
        h[0] = f.sub(&h[0], &1);
        let d = gcd(f, &g, &h);
        let dd = d.len() - 1;
        if dd > 0 && dd < deg {
            let other = divide(f, &g, &d);
            split(f, d, rng, out);
            split(f, other, rng, out);
            return;
        }
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(BigInt::from(i));
            if i * i != n {
                out.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    Some(out)
}

/// Distinct rational roots by the rational root theorem.
/// Gives up (returns what it found) when the coefficients are too large to factor.
pub fn rational_roots(c: &[BigRational]) -> Vec<BigRational> {
    let mut c = c.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
        while ints[0].is_zero() {
            ints.remove(0);
        }
    }
    if ints.len() <= 1 {
        return roots;
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return roots;
    };
    let eval = |x: &BigRational| ints.iter().rev().fold(BigRational::zero(), |acc, k| acc * x + BigRational::from_integer(k.clone()));
    let mut cand: Vec<BigRational> = Vec::new();
    for p in &ps {
        for q in &qs {
            for s in [1, -1] {
                let r = BigRational::new(p * s, q.clone());
                if !cand.contains(&r) && eval(&r).is_zero() {
                    cand.push(r);
                }
            }
        }
    }
    cand.sort();
    roots.extend(cand);
    roots.sort();
    roots
}
