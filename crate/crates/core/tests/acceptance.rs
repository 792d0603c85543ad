//! Acceptance criteria, one PASS/FAIL line each.
//!
//! The process exits nonzero if a criterion errors, or fails in a way other
//! than the recorded source disagreements listed in `KNOWN`.

use std::process::ExitCode;
use std::time::Instant;

use ccwg_core::algebra::{
    comb_intertwiner, comb_word, commutant_tower, radical, summand_count_tower, FieldMode,
};
use ccwg_core::braid::{anomaly, is_ybo, j_intertwiner_check, ds_transform, tower};
use ccwg_core::catalog::{self, resolve, EntryKind};
use ccwg_core::exactmat::poly::Polynomial;
use ccwg_core::suites::{run_suite, skew_invariant_ybos, SuiteId};
use ccwg_core::tables::{run_table, tower_dims, TableId};
use ccwg_core::{FieldTag, Rank, Result, Scalar, WordMatrix};

const Q: FieldTag = FieldTag::Rational;

/// Criteria whose published expectation disagrees with the displayed matrix,
/// with the exact failure detail they are allowed to produce.
const KNOWN: &[(u32, &str)] = &[
    (1, "spade"),
    (4, "R_ag"),
    (11, "R_spade"),
];

struct Outcome {
    pass: bool,
    detail: String,
    /// Identifies what failed; compared against `KNOWN`.
    culprit: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into(), culprit: String::new() }
}

fn verdict(failures: Vec<String>, pass_detail: impl Into<String>) -> Outcome {
    if failures.is_empty() {
        ok(pass_detail)
    } else {
        Outcome { pass: false, detail: failures.join("; "), culprit: String::new() }
    }
}

fn c1() -> Result<Outcome> {
    let mut fails = Vec::new();
    let mut bad_tables = Vec::new();
    for (id, n_max) in [(TableId::FI, 6), (TableId::Spade, 5), (TableId::Heart, 5)] {
        let rep = run_table(id, Some(FieldMode::Rational), Some(n_max), false)?;
        for (n, c) in rep.mismatches() {
            fails.push(format!("{id} n={n} {}: computed {} expected {}", c.column, c.computed, c.expected));
        }
        if !rep.all_match {
            bad_tables.push(id.to_string());
        }
    }
    let mut out = verdict(fails, "fI n=2..6, spade and heart n=2..5 all equal (Q)");
    out.culprit = bad_tables.join(",");
    Ok(out)
}

fn table_criterion(id: TableId, mode: FieldMode) -> Result<Outcome> {
    let rep = run_table(id, Some(mode), None, false)?;
    let fails = rep.mismatches().into_iter().map(|(n, c)| format!("n={n} {}: {} vs {}", c.column, c.computed, c.expected)).collect();
    let rows: Vec<String> =
        rep.rows.iter().map(|r| format!("({})", r.cells.iter().map(|c| c.computed.to_string()).collect::<Vec<_>>().join(","))).collect();
    Ok(verdict(fails, format!("{} over {mode}", rows.join(" "))))
}

fn c4() -> Result<Outcome> {
    let mut fails = Vec::new();
    let mut culprits = Vec::new();
    let fixed = catalog::fixed_names();
    for name in &fixed {
        if !is_ybo(&catalog::get(name)?.matrix) {
            fails.push(format!("fixed {name} is not a YBO"));
            culprits.push(name.to_string());
        }
    }
    let mut fams = 0;
    for name in catalog::family_names() {
        let f = catalog::family(name)?;
        if f.kind == EntryKind::Ansatz {
            continue;
        }
        fams += 1;
        let rep = f.verify(20, 2024);
        if !rep.all_pass() {
            fails.push(format!("{name}: {}/20 sampled points are YBOs", rep.passed));
            culprits.push(name.to_string());
        }
    }
    let mut out = verdict(fails, format!("{} fixed entries, {fams} families x 20 points", fixed.len()));
    out.culprit = culprits.join(",");
    Ok(out)
}

fn c5() -> Result<Outcome> {
    let a12 = resolve("aa0_restricted_12", Q)?;
    let a13 = resolve("aa0_restricted_13", Q)?;
    let nz = anomaly(&a13)?.nnz();
    let mut fails = Vec::new();
    if !is_ybo(&a12) {
        fails.push("restriction to {1,2} is not a YBO".to_string());
    }
    if nz == 0 {
        fails.push("restriction to {1,3} has zero anomaly".to_string());
    }
    Ok(verdict(fails, format!("{{1,2}} is a YBO; {{1,3}} anomaly has {nz} nonzero entries ({})", catalog::AA0_RESTRICTION_POINT)))
}

fn suite_criterion(ids: &[(SuiteId, usize)]) -> Result<Outcome> {
    let mut fails = Vec::new();
    let mut summary = Vec::new();
    for &(id, cases) in ids {
        let rep = run_suite(id, 20240917, cases)?;
        for c in &rep.checks {
            summary.push(format!("{}: {}", c.name, c.cases));
            if !c.passed() {
                fails.push(format!("{}: {} failures, first {:?}", c.name, c.failures, c.first_failure));
            }
        }
    }
    Ok(verdict(fails, summary.join(", ")))
}

fn c8() -> Result<Outcome> {
    let mut fails = Vec::new();
    let dims = |name: &str| -> Result<(usize, usize)> {
        let e = commutant_tower(&catalog::get(name)?.matrix, 3)?;
        Ok((e.dim(), radical(&e)?.dim()))
    };
    let (fi, _) = dims("R_fI")?;
    let (dm, dm_rad) = dims("R_diamond")?;
    let (he, _) = dims("R_heart")?;
    if fi != 8 {
        fails.push(format!("fI commutant {fi}"));
    }
    if (dm, dm - dm_rad, dm_rad) != (8, 2, 6) {
        fails.push(format!("diamond commutant {dm} = {} + {dm_rad}", dm - dm_rad));
    }
    if he != 4 {
        fails.push(format!("heart commutant {he}"));
    }
    Ok(verdict(fails, format!("fI {fi}, diamond {dm} (ss {}, rad {dm_rad}), heart {he}", dm - dm_rad)))
}

fn c9() -> Result<Outcome> {
    let mut fails = Vec::new();
    let fi = catalog::get("R_fI")?.matrix;
    let heart = catalog::get("R_heart")?.matrix;
    for n in 3..=6 {
        let s = summand_count_tower(&fi, n, 1)?;
        let want = vec![1usize << (n - 1); 2];
        if s.count != Some(2) || s.summand_dims.as_ref() != Some(&want) {
            fails.push(format!("fI n={n}: count {:?} dims {:?}", s.count, s.summand_dims));
        }
        let h = summand_count_tower(&heart, n, 1)?;
        if h.count != Some(1) {
            fails.push(format!("heart n={n}: count {:?}", h.count));
        }
    }
    Ok(verdict(fails, "fI: 2 summands of dim 2^(n-1); heart: 1 summand; n=3..6"))
}

fn c10() -> Result<Outcome> {
    let mut fails = Vec::new();
    let fi = catalog::get("R_fI")?.matrix;
    let dm = catalog::get("R_diamond")?.matrix;
    for n in 2..=10 {
        let t = comb_intertwiner(n, Q)?;
        for (i, (a, b)) in tower(&fi, n)?.iter().zip(tower(&dm, n)?).enumerate() {
            if a.compose(&t)? != t.compose(&b)? {
                fails.push(format!("n={n} generator {}", i + 1));
            }
        }
    }
    for n in 1..=12 {
        if !comb_word(n)?.well_combed() {
            fails.push(format!("w_{n} not well-combed"));
        }
    }
    Ok(verdict(fails, "T_n intertwines every generator for n=2..10; w_1..w_12 well-combed"))
}

fn c11() -> Result<Outcome> {
    let s = |v: i64| Scalar::from_i64(Q, v);
    let quad = Polynomial::from_roots(Q, &[(s(1), 2), (s(-1), 1)]);
    let cubic = Polynomial::from_roots(Q, &[(s(1), 3), (s(-1), 1)]);
    let mut fails = Vec::new();
    let mut culprits = Vec::new();
    let mut seen = Vec::new();
    for (name, want) in [("R_fI", &quad), ("R_diamond", &quad), ("R_spade", &quad), ("R_heart", &cubic)] {
        let got = catalog::get(name)?.matrix.minimal_polynomial()?;
        seen.push(format!("{name} {}", got.factored()));
        if &got != want {
            fails.push(format!("{name}: {} (expected {})", got.factored(), want.factored()));
            culprits.push(name.to_string());
        }
    }
    let ag = catalog::family("R_ag")?;
    let mut tried = 0;
    for seed in 0..20 {
        let a = ag.sample(seed)?;
        let p = Scalar::from_rational(Q, &a["p"])?;
        let q = Scalar::from_rational(Q, &a["q"])?;
        if p.add(&q).is_zero() {
            continue;
        }
        tried += 1;
        let want = Polynomial::from_roots(Q, &[(p.clone(), 1), (q.neg(), 1)]);
        let got = ag.evaluate(&a, Q)?.minimal_polynomial()?;
        if got != want {
            fails.push(format!("R_ag at p={p} q={q}: {}", got.factored()));
            culprits.push("R_ag".into());
        }
    }
    let mut out = verdict(fails, format!("{}; R_ag (x-p)(x+q) at {tried} points", seen.join(", ")));
    out.culprit = culprits.join(",");
    Ok(out)
}

fn c12() -> Result<Outcome> {
    let mut fails = Vec::new();
    let ybos = skew_invariant_ybos(12)?;
    for (name, r) in &ybos {
        for n in [3, 4] {
            if !j_intertwiner_check(r, n)? {
                fails.push(format!("{name} n={n}"));
            }
        }
    }
    if ybos.is_empty() {
        fails.push("no skew-invariant braid representations found".into());
    }
    let names: Vec<_> = ybos.iter().map(|(n, _)| n.as_str()).collect();
    Ok(verdict(fails, format!("n=3,4 for {}", names.join(", "))))
}

fn c13() -> Result<Outcome> {
    let r2 = Rank::new(2)?;
    let t = WordMatrix::from_int_rows(r2, 1, Q, &[&[0, 1], &[1, 0]])?;
    let tt = t.kron(&t)?;
    let ti = t.kron(&WordMatrix::identity(r2, 1, Q)?)?;
    let mut fails = Vec::new();
    for (k, p, q) in [(1, 2, 3), (2, -1, 5), (-3, 4, 7)] {
        // Commutation needs p = q as well as s = k.
        let sym = resolve(&format!("R_backslash(k={k},p={p},q={p},s={k})"), Q)?;
        if tt.compose(&sym)? != sym.compose(&tt)? {
            fails.push(format!("T(x)T does not commute at k=s={k}, p=q={p}"));
        }
        if ds_transform(&t, &sym)? != resolve(&format!("R_slash(k={k},p={p},q={p})"), Q)? {
            fails.push(format!("ds_transform at k={k} p=q={p}"));
        }
        let gen = resolve(&format!("R_backslash(k={k},p={p},q={q},s={k})"), Q)?;
        let conj = ti.compose(&gen)?.compose(&ti.inverse()?)?;
        if conj != resolve(&format!("R_slash(k={k},p={p},q={q})"), Q)? {
            fails.push(format!("conjugate at k={k} p={p} q={q} is not R_slash"));
        }
    }
    Ok(verdict(fails, "T(x)T commutes with R_backslash at s=k, p=q; (T(x)1) R (T(x)1)^-1 = R_slash entrywise at 3 points"))
}

fn c14() -> Result<Outcome> {
    let mut fails = Vec::new();
    let mut done = Vec::new();
    for name in ["R_fI", "R_unipotent_glue", "R_fff_glue", "R_a_slash_slash_glue", "R_aa0_unipotent"] {
        let r = catalog::get(name)?.matrix;
        let mode = if r.rank().get() == 2 { FieldMode::Rational } else { FieldMode::Prime };
        for n in 2..=5 {
            let (_, glued, _) = tower_dims(&r, n, mode, 1)?;
            let (_, plain, _) = tower_dims(&r.deglue(), n, mode, 1)?;
            if glued != plain {
                fails.push(format!("{name} n={n}: {glued} vs {plain}"));
            }
        }
        done.push(name);
    }
    Ok(verdict(fails, format!("n=2..5 for {}", done.join(", "))))
}

fn main() -> ExitCode {
    type Run = fn() -> Result<Outcome>;
    let criteria: Vec<(u32, &str, Run)> = vec![
        (1, "image algebra table (fI, spade, heart)", c1),
        (2, "unipotent rank-2 table", || table_criterion(TableId::Unipotent2, FieldMode::Rational)),
        (3, "unipotent rank-3 fff table", || table_criterion(TableId::Unipotent3, FieldMode::DualPrime)),
        (4, "catalog braid representations", c4),
        (5, "rank-restriction asymmetry", c5),
        (6, "closure, parity and glue suites", || {
            suite_criterion(&[(SuiteId::Closure, 1000), (SuiteId::Parity, 1000), (SuiteId::Hog, 1000)])
        }),
        (7, "composition order and split properties", || suite_criterion(&[(SuiteId::Orders, 100_000)])),
        (8, "commutant dimensions at n=3", c8),
        (9, "summand counts", c9),
        (10, "combed intertwiner", c10),
        (11, "minimal polynomials", c11),
        (12, "skew-transpose intertwining", c12),
        (13, "DS transform", c13),
        (14, "simple content survives de-gluing", c14),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let res = run();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(o) if o.pass => {
                passed += 1;
                println!("PASS [{id:>2}] {title}: {} ({secs:.1}s)", o.detail);
            }
            Ok(o) => {
                let known = KNOWN.iter().any(|(k, c)| *k == id && *c == o.culprit);
                if !known {
                    unexpected += 1;
                }
                let tag = if known { " [recorded source disagreement]" } else { "" };
                println!("FAIL [{id:>2}] {title}: {} ({secs:.1}s){tag}", o.detail);
            }
            Err(e) => {
                unexpected += 1;
                println!("FAIL [{id:>2}] {title}: error: {e} ({secs:.1}s)");
            }
        }
    }
    println!("acceptance: {passed}/14 pass, {} fail ({unexpected} unexpected)", 14 - passed);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
