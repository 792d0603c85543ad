//! Seeded randomized property suites over the word, matrix and braid layers.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::{is_ybo, j_intertwiner_check, skew_invariance_check};
use crate::catalog;
use crate::error::{Error, Result};
use crate::exactmat::WordMatrix;
use crate::field::{FieldTag, Scalar};
use crate::words::{comp_less, comp_less_oracle, compositions, position_class, ChargeTable, Composition, PositionClass, Rank, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteId {
    Closure,
    Parity,
    Hog,
    Orders,
    Skew,
}

impl SuiteId {
    pub const ALL: [SuiteId; 5] = [SuiteId::Closure, SuiteId::Parity, SuiteId::Hog, SuiteId::Orders, SuiteId::Skew];
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteId::Closure => "closure",
            SuiteId::Parity => "parity",
            SuiteId::Hog => "hog",
            SuiteId::Orders => "orders",
            SuiteId::Skew => "skew",
        })
    }
}

impl FromStr for SuiteId {
    type Err = Error;
    fn from_str(s: &str) -> Result<SuiteId> {
        SuiteId::ALL.into_iter().find(|id| id.to_string() == s).ok_or_else(|| Error::UnknownName(s.into()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckResult {
    fn new(name: &str) -> CheckResult {
        CheckResult { name: name.into(), cases: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteId,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} (seed {})", self.suite, self.seed)?;
        for c in &self.checks {
            let status = if c.passed() { "ok" } else { "FAIL" };
            write!(f, "  {:<42} {:>7} cases  {:>5} failures  {status}", c.name, c.cases, c.failures)?;
            if let Some(d) = &c.first_failure {
                write!(f, "  first: {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Default case counts: `10^3` for matrix suites, `10^5` for split instances.
pub fn default_cases(id: SuiteId) -> usize {
    match id {
        SuiteId::Orders => 100_000,
        _ => 1000,
    }
}

pub fn run_suite(id: SuiteId, seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = match id {
        SuiteId::Closure => closure_suite(&mut rng, cases)?,
        SuiteId::Parity => parity_suite(&mut rng, cases)?,
        SuiteId::Hog => hog_suite(&mut rng, cases)?,
        SuiteId::Orders => orders_suite(&mut rng, cases)?,
        SuiteId::Skew => skew_suite(&mut rng, cases)?,
    };
    Ok(SuiteReport { suite: id, seed, checks })
}

/// A random square level-`n` matrix with small integer entries at positions
/// accepted by `keep`, each present with probability `density`.
pub fn random_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    rank: Rank,
    n: usize,
    density: f64,
    keep: impl Fn(usize, usize) -> bool,
) -> Result<WordMatrix> {
    let d = rank.pow(n)? as usize;
    let mut items = Vec::new();
    for r in 0..d {
        for c in 0..d {
            if keep(r, c) && rng.random_bool(density) {
                let v = rng.random_range(-3i64..=3);
                items.push((r as u64, c as u64, Scalar::from_i64(FieldTag::Rational, v)));
            }
        }
    }
    WordMatrix::from_index_entries(rank, n, n, FieldTag::Rational, items)
}

pub fn random_ccwg<R: Rng + ?Sized>(rng: &mut R, rank: Rank, n: usize) -> Result<WordMatrix> {
    let t = ChargeTable::new(rank, n)?;
    random_matrix(rng, rank, n, 0.4, |r, c| t.class(r, c) != PositionClass::Forbidden)
}

/// A CCwg matrix supported on glue positions only.
pub fn random_pure_glue<R: Rng + ?Sized>(rng: &mut R, rank: Rank, n: usize) -> Result<WordMatrix> {
    let t = ChargeTable::new(rank, n)?;
    random_matrix(rng, rank, n, 0.6, |r, c| t.class(r, c) == PositionClass::Glue)
}

pub fn random_parity_preserving<R: Rng + ?Sized>(rng: &mut R, rank: Rank, n: usize) -> Result<WordMatrix> {
    let parity: Vec<_> = (0..rank.pow(n)?).map(|i| crate::words::word_at(rank, n, i).map(|w| w.parity())).collect::<Result<_>>()?;
    random_matrix(rng, rank, n, 0.4, |r, c| parity[r] == parity[c])
}

/// `(N, n_L, n_M)` with small ambient sizes.
fn random_shape<R: Rng + ?Sized>(rng: &mut R) -> (Rank, usize, usize) {
    if rng.random_bool(0.5) {
        (Rank::new(2).unwrap(), rng.random_range(1..=3), rng.random_range(1..=2))
    } else {
        (Rank::new(3).unwrap(), rng.random_range(1..=2), 1)
    }
}

fn pair_suite<R: Rng + ?Sized>(
    rng: &mut R,
    cases: usize,
    label: &str,
    gen: impl Fn(&mut R, Rank, usize) -> Result<WordMatrix>,
    pred: impl Fn(&WordMatrix) -> bool,
) -> Result<Vec<CheckResult>> {
    let mut compose = CheckResult::new(&format!("{label} closed under compose"));
    let mut kron = CheckResult::new(&format!("{label} closed under kron"));
    for _ in 0..cases {
        let (rank, n, m) = random_shape(rng);
        let a = gen(rng, rank, n)?;
        let b = gen(rng, rank, n)?;
        let c = gen(rng, rank, m)?;
        let ab = a.compose(&b)?;
        compose.record(pred(&ab), || format!("{a:?} * {b:?}"));
        let ac = a.kron(&c)?;
        kron.record(pred(&ac), || format!("{a:?} (x) {c:?}"));
    }
    Ok(vec![compose, kron])
}

fn closure_suite<R: Rng + ?Sized>(rng: &mut R, cases: usize) -> Result<Vec<CheckResult>> {
    let mut out = pair_suite(rng, cases, "CCwg", |r, k, n| random_ccwg(r, k, n), WordMatrix::is_ccwg)?;
    let mut units = CheckResult::new("identity and inputs are CCwg");
    for _ in 0..cases.min(100) {
        let (rank, n, _) = random_shape(rng);
        let a = random_ccwg(rng, rank, n)?;
        units.record(a.is_ccwg() && WordMatrix::identity(rank, n, FieldTag::Rational)?.is_cc(), || format!("{a:?}"));
    }
    out.push(units);
    Ok(out)
}

fn parity_suite<R: Rng + ?Sized>(rng: &mut R, cases: usize) -> Result<Vec<CheckResult>> {
    pair_suite(rng, cases, "parity-preserving", |r, k, n| random_parity_preserving(r, k, n), WordMatrix::is_parity_preserving)
}

/// `(N, n)` pairs for the glue nilpotency check.
pub const NILPOTENCY_SHAPES: [(u32, usize); 4] = [(2, 2), (2, 3), (3, 2), (3, 3)];

fn hog_suite<R: Rng + ?Sized>(rng: &mut R, cases: usize) -> Result<Vec<CheckResult>> {
    let mut hom = CheckResult::new("deglue(LM) = deglue(L) deglue(M)");
    for _ in 0..cases {
        let (rank, n, _) = random_shape(rng);
        let l = random_ccwg(rng, rank, n)?;
        let m = random_ccwg(rng, rank, n)?;
        let lhs = l.compose(&m)?.deglue();
        let rhs = l.deglue().compose(&m.deglue())?;
        hom.record(lhs == rhs, || format!("{l:?} * {m:?}"));
    }
    let mut nil = CheckResult::new("glue products of length |Lambda| vanish");
    let per_shape = (cases / NILPOTENCY_SHAPES.len()).clamp(1, 250);
    for (nn, n) in NILPOTENCY_SHAPES {
        let rank = Rank::new(nn)?;
        let len = compositions(rank, n).len();
        for _ in 0..per_shape {
            let mut acc = WordMatrix::identity(rank, n, FieldTag::Rational)?;
            for _ in 0..len {
                acc = acc.compose(&random_pure_glue(rng, rank, n)?)?;
            }
            nil.record(acc.is_zero(), || format!("N={nn} n={n}: {acc:?}"));
        }
    }
    Ok(vec![hom, nil])
}

fn random_word<R: Rng + ?Sized>(rng: &mut R, rank: Rank, len: usize) -> Word {
    let letters = (0..len).map(|_| rng.random_range(1..=rank.get())).collect();
    Word::new(rank, letters).expect("letters in range")
}

fn cmp(a: &Composition, b: &Composition) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    if a == b {
        Equal
    } else if comp_less(a, b).expect("same rank") {
        Less
    } else {
        Greater
    }
}

fn orders_suite<R: Rng + ?Sized>(rng: &mut R, cases: usize) -> Result<Vec<CheckResult>> {
    use std::cmp::Ordering::*;
    let mut oracle = CheckResult::new("comp_less = first-instance order");
    let mut total = CheckResult::new("comp_less is a strict total order");
    let mut direct = CheckResult::new("comp_less_oracle agrees (N^n <= 256)");
    for nn in 1..=4u32 {
        let rank = Rank::new(nn)?;
        for n in 0..=6usize {
            let comps = compositions(rank, n);
            let size = rank.pow(n)?;
            let mut first: HashMap<Composition, u64> = HashMap::new();
            for i in 0..size {
                first.entry(crate::words::word_at(rank, n, i)?.charge()).or_insert(i);
            }
            for a in &comps {
                for b in &comps {
                    let got = comp_less(a, b)?;
                    let want = first[a] < first[b];
                    oracle.record(got == want, || format!("{a} vs {b}"));
                    let trich = [got, a == b, comp_less(b, a)?].iter().filter(|x| **x).count() == 1;
                    total.record(trich, || format!("{a} vs {b}"));
                    if size <= 256 {
                        direct.record(comp_less_oracle(a, b, size)? == got, || format!("{a} vs {b}"));
                    }
                }
            }
            for w in comps.windows(3) {
                let trans = comp_less(&w[0], &w[1])? && comp_less(&w[1], &w[2])? && comp_less(&w[0], &w[2])?;
                total.record(trans, || format!("{} {} {}", w[0], w[1], w[2]));
            }
        }
    }
    let mut i1 = CheckResult::new("split (I): f(v) < f(w)");
    let mut i2 = CheckResult::new("split (II): f(v) = f(w)");
    let mut i3 = CheckResult::new("split (III): f(v) > f(w)");
    let mut classes = CheckResult::new("position classes antisymmetric");
    for _ in 0..cases {
        let rank = Rank::new(rng.random_range(2..=4))?;
        let len = rng.random_range(1..=10);
        let v = random_word(rng, rank, len);
        let w = if rng.random_bool(0.5) {
            let mut l = v.letters().to_vec();
            l.shuffle(rng);
            Word::new(rank, l)?
        } else {
            random_word(rng, rank, len)
        };
        let n = rng.random_range(0..=len);
        let (v1, v2) = v.split(n)?;
        let (w1, w2) = w.split(n)?;
        let left = cmp(&v1.charge(), &w1.charge());
        let right = cmp(&v2.charge(), &w2.charge());
        let detail = || format!("v={v} w={w} n={n}");
        match cmp(&v.charge(), &w.charge()) {
            Less => i1.record(left == Less || right == Less, detail),
            Equal => i2.record(
                (left == Equal && right == Equal) || (left == Less && right == Greater) || (left == Greater && right == Less),
                detail,
            ),
            Greater => i3.record(left == Greater || right == Greater, detail),
        }
        let pc = position_class(&v, &w)?;
        let cp = position_class(&w, &v)?;
        let ok = match pc {
            PositionClass::CC => cp == PositionClass::CC,
            PositionClass::Glue => cp == PositionClass::Forbidden,
            PositionClass::Forbidden => cp == PositionClass::Glue,
        };
        classes.record(ok, detail);
    }
    Ok(vec![oracle, total, direct, i1, i2, i3, classes])
}

/// Catalog braid representations that equal their skew transpose: fixed
/// entries plus a few sampled family points.
pub fn skew_invariant_ybos(seed: u64) -> Result<Vec<(String, WordMatrix)>> {
    let mut out = Vec::new();
    for name in catalog::fixed_names() {
        let m = catalog::get(name)?.matrix;
        if skew_invariance_check(&m) {
            out.push((name.to_string(), m));
        }
    }
    for name in catalog::family_names() {
        let f = catalog::family(name)?;
        for s in 0..3 {
            let a = f.sample(seed.wrapping_add(s))?;
            let m = f.evaluate(&a, FieldTag::Rational)?;
            if is_ybo(&m) && skew_invariance_check(&m) {
                out.push((format!("{name}@{s}"), m));
            }
        }
    }
    Ok(out)
}

fn skew_suite<R: Rng + ?Sized>(rng: &mut R, cases: usize) -> Result<Vec<CheckResult>> {
    let mut inv = CheckResult::new("skew conjugation is an involution");
    let mut tt = CheckResult::new("skew transpose is an involution");
    for _ in 0..cases {
        let (rank, n, _) = random_shape(rng);
        let m = random_matrix(rng, rank, n, 0.3, |_, _| true)?;
        inv.record(m.skew_conjugate().skew_conjugate() == m, || format!("{m:?}"));
        tt.record(m.skew_transpose().skew_transpose() == m, || format!("{m:?}"));
    }
    let mut j_check = CheckResult::new("J^n intertwines R and R^T towers");
    for (name, r) in skew_invariant_ybos(rng.random())? {
        for n in [3, 4] {
            j_check.record(j_intertwiner_check(&r, n)?, || format!("{name} n={n}"));
        }
    }
    Ok(vec![inv, tt, j_check])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_small() {
        for id in SuiteId::ALL {
            let rep = run_suite(id, 7, 60).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn suite_ids_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(id.to_string().parse::<SuiteId>().unwrap(), id);
        }
        assert!("nope".parse::<SuiteId>().is_err());
    }

    #[test]
    fn generators_respect_their_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r3 = Rank::new(3).unwrap();
        for _ in 0..20 {
            assert!(random_ccwg(&mut rng, r3, 2).unwrap().is_ccwg());
            let g = random_pure_glue(&mut rng, r3, 2).unwrap();
            assert!(g.is_ccwg() && g.deglue().is_zero());
            assert!(random_parity_preserving(&mut rng, r3, 2).unwrap().is_parity_preserving());
        }
    }
}
