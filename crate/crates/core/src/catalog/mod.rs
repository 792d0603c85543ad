//! The embedded library of fixed R-matrices and parametric families.
//!
//! Entries are stored in `manifest.json` as rows of expression strings over
//! named parameters. Fixed entries have no parameters.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::braid::{is_ybo, restrict};
use crate::error::{Error, Result};
use crate::exactmat::WordMatrix;
use crate::field::{parse_rational, FieldTag, Scalar};
use crate::words::Rank;

pub mod expr;

pub use expr::{divides_product_of, Expr, MPoly};

const MANIFEST: &str = include_str!("manifest.json");

pub const SAMPLE_RANGE: i64 = 20;
pub const SAMPLE_MAX_DENOM: i64 = 7;
pub const SAMPLE_BUDGET: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Fixed,
    Family,
    /// A family whose generic point is not a braid representation.
    Ansatz,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawConstraint {
    pub poly: String,
    pub reason: String,
}

/// One manifest record, as stored.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub kind: EntryKind,
    pub rank: u32,
    pub provenance: String,
    pub parameters: Vec<String>,
    pub constraints: Vec<RawConstraint>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub entries: Vec<ManifestEntry>,
}

/// The raw embedded manifest text.
pub fn manifest_json() -> &'static str {
    MANIFEST
}

pub fn manifest() -> &'static Manifest {
    static M: OnceLock<Manifest> = OnceLock::new();
    M.get_or_init(|| serde_json::from_str(MANIFEST).expect("embedded manifest parses"))
}

fn raw(name: &str) -> Result<&'static ManifestEntry> {
    manifest().entries.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownName(name.into()))
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub rank: Rank,
    pub provenance: String,
    pub matrix: WordMatrix,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub poly: String,
    pub reason: String,
    pub expr: Expr,
}

/// Parameter values by name.
pub type Assignment = BTreeMap<String, BigRational>;

#[derive(Debug, Clone)]
pub struct ParametricFamily {
    pub name: String,
    pub rank: Rank,
    pub kind: EntryKind,
    pub provenance: String,
    pub parameters: Vec<String>,
    pub constraints: Vec<Constraint>,
    pub entries: Vec<Vec<Expr>>,
}

/// Names of every entry, fixed and parametric, in manifest order.
pub fn list() -> Vec<&'static str> {
    manifest().entries.iter().map(|e| e.name.as_str()).collect()
}

pub fn fixed_names() -> Vec<&'static str> {
    manifest().entries.iter().filter(|e| e.kind == EntryKind::Fixed).map(|e| e.name.as_str()).collect()
}

/// Names of the parametric entries, ansatz included.
pub fn family_names() -> Vec<&'static str> {
    manifest().entries.iter().filter(|e| e.kind != EntryKind::Fixed).map(|e| e.name.as_str()).collect()
}

/// A fixed entry over `Q`.
pub fn get(name: &str) -> Result<CatalogEntry> {
    let e = raw(name)?;
    if e.kind != EntryKind::Fixed {
        return Err(Error::Invalid(format!("{name} is a parametric family")));
    }
    let fam = ParametricFamily::from_manifest(e)?;
    Ok(CatalogEntry {
        name: e.name.clone(),
        rank: fam.rank,
        provenance: e.provenance.clone(),
        matrix: fam.evaluate(&Assignment::new(), FieldTag::Rational)?,
    })
}

pub fn family(name: &str) -> Result<ParametricFamily> {
    let e = raw(name)?;
    if e.kind == EntryKind::Fixed {
        return Err(Error::Invalid(format!("{name} is a fixed matrix")));
    }
    ParametricFamily::from_manifest(e)
}

/// The aa0 glue point whose alphabet restrictions behave differently.
pub const AA0_RESTRICTION_POINT: &str = "R_aa0_glue(a=1,b=2,m1=1,m2=1,m3=1)";

/// Names that resolve to restrictions of [`AA0_RESTRICTION_POINT`] rather than manifest entries.
pub const DERIVED_NAMES: [(&str, [u32; 2]); 2] = [("aa0_restricted_12", [1, 2]), ("aa0_restricted_13", [1, 3])];

/// `"Name"` for a fixed entry, or `"Name(k=1,p=2/3)"` for a family point.
pub fn resolve(spec: &str, field: FieldTag) -> Result<WordMatrix> {
    let spec = spec.trim();
    if let Some((_, sub)) = DERIVED_NAMES.iter().find(|(n, _)| *n == spec) {
        return restrict(&resolve(AA0_RESTRICTION_POINT, field)?, sub);
    }
    let (name, args) = match spec.split_once('(') {
        None => (spec, None),
        Some((n, rest)) => {
            let inner = rest.strip_suffix(')').ok_or_else(|| Error::Parse(format!("unbalanced parameters in {spec:?}")))?;
            (n.trim(), Some(inner))
        }
    };
    let e = raw(name)?;
    let assignment = match args {
        Some(a) => parse_assignment(a)?,
        None => Assignment::new(),
    };
    resolve_with(e.name.as_str(), &assignment, field)
}

/// A fixed entry (empty assignment) or a family evaluated at `assignment`.
pub fn resolve_with(name: &str, assignment: &Assignment, field: FieldTag) -> Result<WordMatrix> {
    let e = raw(name)?;
    if e.kind == EntryKind::Fixed && !assignment.is_empty() {
        return Err(Error::UnknownParameter(assignment.keys().next().cloned().unwrap_or_default()));
    }
    ParametricFamily::from_manifest(e)?.evaluate(assignment, field)
}

/// Parses `k=1, p=-2/3`.
pub fn parse_assignment(s: &str) -> Result<Assignment> {
    let mut out = Assignment::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("expected name=value, got {part:?}")))?;
        out.insert(k.trim().to_string(), parse_rational(v)?);
    }
    Ok(out)
}

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

impl ParametricFamily {
    fn from_manifest(e: &ManifestEntry) -> Result<ParametricFamily> {
        let rank = Rank::new(e.rank)?;
        let n = (e.rank * e.rank) as usize;
        if e.rows.len() != n || e.rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!("{} is not {n}x{n}", e.name)));
        }
        let entries = e.rows.iter().map(|r| r.iter().map(|s| Expr::parse(s)).collect()).collect::<Result<Vec<Vec<_>>>>()?;
        let constraints = e
            .constraints
            .iter()
            .map(|c| Ok(Constraint { poly: c.poly.clone(), reason: c.reason.clone(), expr: Expr::parse(&c.poly)? }))
            .collect::<Result<Vec<_>>>()?;
        let fam = ParametricFamily {
            name: e.name.clone(),
            rank,
            kind: e.kind,
            provenance: e.provenance.clone(),
            parameters: e.parameters.clone(),
            constraints,
            entries,
        };
        let mut seen = BTreeSet::new();
        for x in fam.entries.iter().flatten().chain(fam.constraints.iter().map(|c| &c.expr)) {
            x.variables(&mut seen);
        }
        if let Some(v) = seen.iter().find(|v| !fam.parameters.contains(v)) {
            return Err(Error::UnknownParameter(format!("{v} in {}", fam.name)));
        }
        Ok(fam)
    }

    /// A copy with entry `(row, col)` replaced; used for negative controls.
    pub fn with_entry(&self, row: usize, col: usize, e: Expr) -> ParametricFamily {
        let mut out = self.clone();
        out.name = format!("{}[{row},{col}]", self.name);
        out.entries[row][col] = e;
        out
    }

    fn check_assignment(&self, a: &Assignment) -> Result<HashMap<String, BigRational>> {
        if let Some(k) = a.keys().find(|k| !self.parameters.contains(k)) {
            return Err(Error::UnknownParameter(k.clone()));
        }
        if let Some(p) = self.parameters.iter().find(|p| !a.contains_key(*p)) {
            return Err(Error::MissingParameter(p.clone()));
        }
        let env: HashMap<String, BigRational> = a.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        for c in &self.constraints {
            if c.expr.eval(&env)?.is_zero() {
                return Err(Error::ConstraintViolated(c.poly.clone()));
            }
        }
        Ok(env)
    }

    /// Whether the assignment is complete and satisfies every constraint.
    pub fn admits(&self, a: &Assignment) -> bool {
        self.check_assignment(a).is_ok() && self.evaluate(a, FieldTag::Rational).is_ok()
    }

    /// The matrix at `a`, over `field`.
    pub fn evaluate(&self, a: &Assignment, field: FieldTag) -> Result<WordMatrix> {
        let env = self.check_assignment(a)?;
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| Scalar::from_rational(field, &e.eval(&env)?)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        WordMatrix::from_rows(self.rank, 2, &rows)
    }

    /// A deterministic constraint-satisfying point: numerators in `±20`,
    /// denominators up to 7.
    pub fn sample(&self, seed: u64) -> Result<Assignment> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(&self.name));
        for _ in 0..SAMPLE_BUDGET {
            let a: Assignment = self
                .parameters
                .iter()
                .map(|p| {
                    let num = rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE);
                    let den = rng.random_range(1..=SAMPLE_MAX_DENOM);
                    (p.clone(), BigRational::new(num.into(), den.into()))
                })
                .collect();
            if self.admits(&a) {
                return Ok(a);
            }
        }
        Err(Error::RetryBudgetExhausted(SAMPLE_BUDGET))
    }

    /// Checks `is_ybo` at `trials` sampled points, seeds `seed, seed+1, ...`.
    pub fn verify(&self, trials: usize, seed: u64) -> FamilyReport {
        let mut points = Vec::with_capacity(trials);
        for t in 0..trials as u64 {
            let point = match self.sample(seed.wrapping_add(t)) {
                Ok(a) => a,
                Err(e) => {
                    points.push(PointResult { assignment: BTreeMap::new(), ybo: false, error: Some(e.to_string()) });
                    continue;
                }
            };
            let shown = point.iter().map(|(k, v)| (k.clone(), v.to_string())).collect();
            let res = self.evaluate(&point, FieldTag::Rational);
            points.push(match res {
                Ok(m) => PointResult { assignment: shown, ybo: is_ybo(&m), error: None },
                Err(e) => PointResult { assignment: shown, ybo: false, error: Some(e.to_string()) },
            });
        }
        let passed = points.iter().filter(|p| p.ybo).count();
        FamilyReport { family: self.name.clone(), trials, passed, points }
    }

    /// Every divisor appearing in an entry, as a polynomial.
    pub fn divisor_polys(&self) -> Result<Vec<(String, MPoly)>> {
        let mut out = Vec::new();
        for e in self.entries.iter().flatten() {
            for d in e.divisors() {
                out.push((d.to_string(), d.to_poly(&self.parameters)?));
            }
        }
        Ok(out)
    }

    pub fn constraint_polys(&self) -> Result<Vec<MPoly>> {
        self.constraints.iter().map(|c| c.expr.to_poly(&self.parameters)).collect()
    }

    /// Whether each divisor is, up to a constant, a product of constraint polynomials.
    pub fn denominators_constrained(&self) -> Result<bool> {
        let cs = self.constraint_polys()?;
        Ok(self.divisor_polys()?.iter().all(|(_, d)| divides_product_of(d, &cs)))
    }
}

/// `verify_family` for a named family.
pub fn verify_family(name: &str, trials: usize, seed: u64) -> Result<FamilyReport> {
    if trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    Ok(family(name)?.verify(trials, seed))
}

#[derive(Debug, Clone, Serialize)]
pub struct PointResult {
    pub assignment: BTreeMap<String, String>,
    pub ybo: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub trials: usize,
    pub passed: usize,
    pub points: Vec<PointResult>,
}

impl FamilyReport {
    pub fn all_pass(&self) -> bool {
        self.passed == self.trials
    }
}

#[cfg(test)]
mod tests;
