//! One function per subcommand, each returning JSON and text renderings of its result.

use std::fmt::Write;
use std::time::Instant;

use ccwg_core::algebra::{comb_intertwiner, comb_word, commutant_tower, k_equivalent, summand_count_tower, FieldMode};
use ccwg_core::braid::{self, BraidWord};
use ccwg_core::catalog::{self, EntryKind};
use ccwg_core::suites::{default_cases, run_suite, SuiteId};
use ccwg_core::tables::{run_table, tower_dims, TableId};
use ccwg_core::{Error, FieldTag, Result, Scalar, WordMatrix};
use serde_json::{json, Value};

use crate::input;

pub struct Ctx {
    pub field: Option<FieldMode>,
    pub seed: u64,
    pub n: Option<usize>,
    pub params: Option<String>,
    pub timing: bool,
    pub guard: u64,
}

impl Ctx {
    fn mode(&self) -> FieldMode {
        self.field.unwrap_or(FieldMode::Rational)
    }

    fn tag(&self) -> FieldTag {
        self.mode().tag()
    }

    fn matrix(&self, arg: &str) -> Result<WordMatrix> {
        input::matrix(arg, self.params.as_deref(), self.tag())
    }

    /// The matrix over `Q`, for commands that reduce it into each field they run over.
    fn matrix_q(&self, arg: &str) -> Result<WordMatrix> {
        input::matrix(arg, self.params.as_deref(), FieldTag::Rational)
    }

    fn n(&self) -> Result<usize> {
        self.n.ok_or_else(|| Error::Invalid("--n is required".into()))
    }

    /// The strand count for a tower command, after checking the guard on `N^(2n)`.
    fn tower_n(&self, r: &WordMatrix) -> Result<usize> {
        let n = self.n()?;
        if n < 2 {
            return Err(Error::Invalid("--n must be at least 2".into()));
        }
        let size = (r.rank().get() as u128).pow(2 * n as u32);
        if size > self.guard as u128 {
            let hint = if self.mode() == FieldMode::Rational { "; prime fields (--field Fp2) are much faster" } else { "" };
            return Err(Error::Invalid(format!(
                "ambient dimension {size} exceeds the guard {}; raise it with CCWG_GUARD or --guard{hint}",
                self.guard
            )));
        }
        Ok(n)
    }

    fn seconds(&self, start: Instant) -> Value {
        if self.timing {
            json!(start.elapsed().as_secs_f64())
        } else {
            Value::Null
        }
    }
}

pub struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn new(json: Value, text: String, ok: bool) -> Report {
        Report { json, text, ok }
    }
}

fn matrix_json(m: &WordMatrix) -> Value {
    serde_json::to_value(m.to_json_value()).expect("serializable")
}

/// Dense rows for small matrices, an entry list otherwise.
fn matrix_text(m: &WordMatrix) -> String {
    let mut out = String::new();
    if m.nrows() <= 27 && m.ncols() <= 27 {
        let cells: Vec<Vec<String>> =
            (0..m.nrows() as u64).map(|r| (0..m.ncols() as u64).map(|c| m.get_index(r, c).to_string()).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let parts: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(out, "  {}", parts.join(" ")).unwrap();
        }
    } else {
        writeln!(out, "  {} nonzero entries (row word, column word, value):", m.nnz()).unwrap();
        for (w, v, s) in m.entries() {
            writeln!(out, "  {w} {v} {s}").unwrap();
        }
    }
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn check(ctx: &Ctx, arg: &str) -> Result<Report> {
    let m = ctx.matrix(arg)?;
    let (cc, glue, forbidden) = m.position_counts();
    let (is_cc, is_ccwg, parity) = (m.is_cc(), m.is_ccwg(), m.is_parity_preserving());
    let json = json!({
        "matrix": arg,
        "N": m.rank().get(),
        "cod_len": m.cod_len(),
        "dom_len": m.dom_len(),
        "nnz": m.nnz(),
        "cc": is_cc,
        "ccwg": is_ccwg,
        "parity_preserving": parity,
        "entries": { "cc": cc, "glue": glue, "forbidden": forbidden },
    });
    let text = format!(
        "{arg}: N={} {}x{}\n  cc: {}\n  ccwg: {}\n  parity preserving: {}\n  entries: {cc} CC, {glue} glue, {forbidden} forbidden\n",
        m.rank(),
        m.cod_len(),
        m.dom_len(),
        yes(is_cc),
        yes(is_ccwg),
        yes(parity)
    );
    Ok(Report::new(json, text, is_ccwg))
}

pub fn ybe(ctx: &Ctx, arg: &str, trials: usize) -> Result<Report> {
    if let Some(name) = input::catalog_name(arg).filter(|_| ctx.params.is_none() && !arg.contains('(')) {
        let fam = catalog::family(&name);
        if let Ok(fam) = fam {
            let rep = fam.verify(trials, ctx.seed);
            let mut text = format!("{}: {}/{} sampled points are braid representations\n", rep.family, rep.passed, rep.trials);
            for p in rep.points.iter().filter(|p| !p.ybo) {
                let at: Vec<String> = p.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(text, "  fails at {}{}", at.join(","), p.error.as_ref().map(|e| format!(" ({e})")).unwrap_or_default()).unwrap();
            }
            let ok = rep.all_pass();
            let mut json = serde_json::to_value(&rep).expect("serializable");
            json["pass"] = json!(ok);
            return Ok(Report::new(json, text, ok));
        }
    }
    let m = ctx.matrix(arg)?;
    let support = braid::anomaly_support(&m)?;
    let invertible = m.is_invertible();
    let ok = support.is_empty() && invertible;
    let json = json!({
        "matrix": arg,
        "pass": ok,
        "invertible": invertible,
        "anomaly_nnz": support.len(),
        "anomaly_support": support.iter().map(|(w, v, s)| json!([w.to_string(), v.to_string(), s.to_string()])).collect::<Vec<_>>(),
    });
    let mut text = format!("{arg}: {}\n", if ok { "pass" } else { "FAIL" });
    if !invertible {
        text.push_str("  not invertible\n");
    }
    if !support.is_empty() {
        writeln!(text, "  anomaly nonzero at {} positions:", support.len()).unwrap();
        for (w, v, s) in support.iter().take(20) {
            writeln!(text, "    ({w}, {v}) = {s}").unwrap();
        }
        if support.len() > 20 {
            text.push_str("    ...\n");
        }
    }
    Ok(Report::new(json, text, ok))
}

fn matrix_report(label: String, m: &WordMatrix, extra: Value) -> Report {
    let mut json = json!({ "result": matrix_json(m) });
    let mut text = format!("{label}\n{}", matrix_text(m));
    if let Value::Object(map) = extra {
        for (k, v) in map {
            writeln!(text, "  {k}: {v}").unwrap();
            json[k] = v;
        }
    }
    Report::new(json, text, true)
}

pub fn anomaly(ctx: &Ctx, arg: &str) -> Result<Report> {
    let a = braid::anomaly(&ctx.matrix(arg)?)?;
    Ok(matrix_report(format!("anomaly of {arg}"), &a, json!({ "nnz": a.nnz() })))
}

pub fn rho(ctx: &Ctx, arg: &str, word: &str) -> Result<Report> {
    let beta = BraidWord::parse(ctx.n()?, word)?;
    let m = braid::rho(&ctx.matrix(arg)?, &beta)?;
    Ok(matrix_report(format!("rho({beta}) on {} strands for {arg}", beta.strands), &m, json!({})))
}

pub fn restrict(ctx: &Ctx, arg: &str, letters: &str) -> Result<Report> {
    let m = braid::restrict(&ctx.matrix(arg)?, &input::letters(letters)?)?;
    let ybo = braid::is_ybo(&m);
    Ok(matrix_report(format!("{arg} restricted to {{{letters}}}"), &m, json!({ "ybo": ybo })))
}

pub fn gauge(ctx: &Ctx, arg: &str, by: &str) -> Result<Report> {
    let a = input::local_matrix(by, ctx.tag())?;
    let m = braid::gauge_apply(&a, &ctx.matrix(arg)?)?;
    let ybo = braid::is_ybo(&m);
    Ok(matrix_report(format!("gauge transform of {arg}"), &m, json!({ "ybo": ybo })))
}

fn diag_entries(m: &WordMatrix) -> Vec<String> {
    (0..m.nrows() as u64).map(|i| m.get_index(i, i).to_string()).collect()
}

pub fn xsym(ctx: &Ctx, arg: &str, diag: Option<&str>, target: Option<&str>) -> Result<Report> {
    let r = ctx.matrix(arg)?;
    if let Some(d) = diag {
        let m = braid::xsym_apply(&input::diagonal(d, ctx.tag())?, &r)?;
        return Ok(matrix_report(format!("X-symmetry of {arg} by diag({d})"), &m, json!({})));
    }
    let target_name = target.expect("clap requires --diag or --target");
    let t = input::matrix(target_name, None, ctx.tag())?;
    // A local witness d first; otherwise any diagonal level-2 conjugation.
    let (local, reason) = match braid::xsym_witness(&r, &t) {
        Ok(d) => (Some(d), None),
        Err(Error::NoDiagonalWitness(why)) => (None, Some(why)),
        Err(e) => return Err(e),
    };
    let twist = match &local {
        Some(d) => Some(d.kron(d)?),
        None => match braid::twist_witness(&r, &t) {
            Ok(delta) => Some(delta),
            Err(Error::NoDiagonalWitness(_)) => None,
            Err(e) => return Err(e),
        },
    };
    let json = json!({
        "matrix": arg,
        "target": target_name,
        "witness": local.as_ref().map(diag_entries),
        "twist": twist.as_ref().map(diag_entries),
        "reason": reason,
    });
    let mut text = format!("{arg} -> {target_name}\n");
    match (&local, &twist) {
        (Some(d), _) => writeln!(text, "  d = diag({})", diag_entries(d).join(", ")).unwrap(),
        (None, Some(delta)) => writeln!(
            text,
            "  no diagonal witness d ({})\n  level-2 diagonal conjugation: diag({})",
            reason.as_deref().unwrap_or_default(),
            diag_entries(delta).join(", ")
        )
        .unwrap(),
        (None, None) => writeln!(text, "  no diagonal witness ({})", reason.as_deref().unwrap_or_default()).unwrap(),
    }
    Ok(Report::new(json, text, twist.is_some()))
}

pub fn ds(ctx: &Ctx, arg: &str, t: &str) -> Result<Report> {
    let tm = input::local_matrix(t, ctx.tag())?;
    match braid::ds_transform(&tm, &ctx.matrix(arg)?) {
        Ok(m) => {
            let ybo = braid::is_ybo(&m);
            Ok(matrix_report(format!("DS transform of {arg}"), &m, json!({ "commutes": true, "ybo": ybo })))
        }
        Err(Error::CommutationHypothesis) => Ok(Report::new(
            json!({ "matrix": arg, "commutes": false, "result": Value::Null }),
            format!("{arg}: T x T does not commute with R\n"),
            false,
        )),
        Err(e) => Err(e),
    }
}

pub fn minpoly(ctx: &Ctx, arg: &str) -> Result<Report> {
    let p = ctx.matrix(arg)?.minimal_polynomial()?;
    let json = json!({
        "matrix": arg,
        "polynomial": p.to_string(),
        "factored": p.factored(),
        "degree": p.degree(),
        "coefficients": p.coeffs().iter().map(Scalar::to_string).collect::<Vec<_>>(),
    });
    Ok(Report::new(json, format!("{arg}: {}\n", p.factored()), true))
}

pub fn jordan(ctx: &Ctx, arg: &str, eigenvalues: Option<&str>) -> Result<Report> {
    let m = ctx.matrix(arg)?;
    let evs = match eigenvalues {
        Some(e) => input::scalars(e, ctx.tag())?,
        None => m.minimal_polynomial()?.roots().into_iter().map(|(r, _)| r).collect(),
    };
    let prof = m.jordan_profile(&evs)?;
    let blocks: Vec<Value> = prof
        .blocks
        .iter()
        .map(|b| json!({ "eigenvalue": b.eigenvalue.to_string(), "size": b.size, "multiplicity": b.multiplicity }))
        .collect();
    let json = json!({ "matrix": arg, "dimension": prof.dimension(), "blocks": blocks });
    Ok(Report::new(json, format!("{arg}: {prof}\n"), true))
}

fn tower_header(ctx: &Ctx, arg: &str, n: usize) -> Value {
    json!({ "matrix": arg, "n": n, "field": ctx.mode() })
}

pub fn closure(ctx: &Ctx, arg: &str) -> Result<Report> {
    let r = ctx.matrix_q(arg)?;
    let n = ctx.tower_n(&r)?;
    let start = Instant::now();
    let (dim, ss, _) = tower_dims(&r, n, ctx.mode(), 1)?;
    let mut json = tower_header(ctx, arg, n);
    json["dim"] = json!(dim);
    json["dim_ss"] = json!(ss);
    json["seconds"] = ctx.seconds(start);
    Ok(Report::new(json, format!("{arg}, n={n} over {}: dim A = {dim}, dim A/rad = {ss}\n", ctx.mode()), true))
}

pub fn radical(ctx: &Ctx, arg: &str, powers: usize) -> Result<Report> {
    let r = ctx.matrix_q(arg)?;
    let n = ctx.tower_n(&r)?;
    let start = Instant::now();
    let (dim, ss, pows) = tower_dims(&r, n, ctx.mode(), powers.max(1))?;
    let mut json = tower_header(ctx, arg, n);
    json["dim"] = json!(dim);
    json["dim_ss"] = json!(ss);
    json["rad_powers"] = json!(pows);
    json["seconds"] = ctx.seconds(start);
    let p: Vec<String> = pows.iter().enumerate().map(|(i, d)| format!("rad^{} = {d}", i + 1)).collect();
    Ok(Report::new(json, format!("{arg}, n={n} over {}: dim A = {dim}, {}\n", ctx.mode(), p.join(", ")), true))
}

pub fn commutant(ctx: &Ctx, arg: &str) -> Result<Report> {
    let r = ctx.matrix_q(arg)?;
    let n = ctx.tower_n(&r)?;
    let start = Instant::now();
    let (dim, rad) = ctx.mode().run(|tag| {
        let e = commutant_tower(&r.to_field(tag)?, n)?;
        Ok((e.dim(), ccwg_core::algebra::radical(&e)?.dim()))
    })?;
    let mut json = tower_header(ctx, arg, n);
    json["dim"] = json!(dim);
    json["dim_ss"] = json!(dim - rad);
    json["dim_rad"] = json!(rad);
    json["seconds"] = ctx.seconds(start);
    let text = format!("{arg}, n={n} over {}: commutant dim {dim} (semisimple {}, radical {rad})\n", ctx.mode(), dim - rad);
    Ok(Report::new(json, text, true))
}

pub fn summands(ctx: &Ctx, arg: &str) -> Result<Report> {
    let r = ctx.matrix_q(arg)?;
    let n = ctx.tower_n(&r)?;
    let start = Instant::now();
    let rep = ctx.mode().run(|tag| summand_count_tower(&r.to_field(tag)?, n, ctx.seed))?;
    let mut json = tower_header(ctx, arg, n);
    json["report"] = serde_json::to_value(&rep).expect("serializable");
    json["seconds"] = ctx.seconds(start);
    Ok(Report::new(json, format!("{arg}, n={n} over {}: {rep}\n", ctx.mode()), true))
}

pub fn equiv(ctx: &Ctx, r: &str, s: &str, k: usize, expect: Option<&str>) -> Result<Report> {
    let (rm, sm) = (ctx.matrix_q(r)?, ctx.matrix_q(s)?);
    let start = Instant::now();
    let rep = ctx.mode().run(|tag| k_equivalent(&rm.to_field(tag)?, &sm.to_field(tag)?, k, ctx.seed))?;
    let verdict = rep.verdict.to_string();
    let ok = match expect {
        None => true,
        Some(e) if ["equivalent", "inequivalent", "probably_inequivalent"].contains(&e) => e == verdict,
        Some(e) => return Err(Error::Parse(format!("unknown verdict {e:?}"))),
    };
    let mut text = format!("{r} vs {s}, k={k} over {}: {verdict}\n", ctx.mode());
    for l in &rep.levels {
        writeln!(
            text,
            "  n={}: intertwiners {}, commutants {}/{}, invertible {}",
            l.n,
            l.intertwiner_dim,
            l.commutant_dims.0,
            l.commutant_dims.1,
            if l.invertible_found { "found" } else { "not found" }
        )
        .unwrap();
    }
    let json = json!({
        "r": r,
        "s": s,
        "k": k,
        "field": ctx.mode(),
        "verdict": rep.verdict,
        "levels": rep.levels,
        "seconds": ctx.seconds(start),
    });
    Ok(Report::new(json, text, ok))
}

pub fn comb(ctx: &Ctx, r: &str, s: &str) -> Result<Report> {
    let n_max = ctx.n.unwrap_or(10);
    let (rm, sm) = (ctx.matrix(r)?, ctx.matrix(s)?);
    let mut levels = Vec::new();
    let mut text = format!("combed intertwiners {r} -> {s}\n");
    let mut ok = true;
    for n in 2..=n_max {
        let t = comb_intertwiner(n, ctx.tag())?;
        let mut failed = Vec::new();
        for (i, (a, b)) in braid::tower(&rm, n)?.iter().zip(braid::tower(&sm, n)?).enumerate() {
            if a.compose(&t)? != t.compose(&b)? {
                failed.push(i + 1);
            }
        }
        let word = comb_word(n - 1)?;
        let combed = word.well_combed();
        ok &= failed.is_empty() && combed;
        writeln!(
            text,
            "  n={n:>2}: {}  w_{} well-combed: {}",
            if failed.is_empty() { "all generators intertwined".to_string() } else { format!("generators {failed:?} FAIL") },
            n - 1,
            yes(combed)
        )
        .unwrap();
        levels.push(json!({ "n": n, "failed_generators": failed, "word": word.to_string(), "well_combed": combed }));
    }
    let json = json!({ "r": r, "s": s, "n_max": n_max, "pass": ok, "levels": levels });
    Ok(Report::new(json, text, ok))
}

pub fn table(ctx: &Ctx, id: TableId) -> Result<Report> {
    let rep = run_table(id, ctx.field, ctx.n, ctx.timing)?;
    let ok = rep.all_match;
    Ok(Report::new(serde_json::to_value(&rep).expect("serializable"), rep.to_string(), ok))
}

pub fn suite(ctx: &Ctx, id: SuiteId, cases: Option<usize>) -> Result<Report> {
    let rep = run_suite(id, ctx.seed, cases.unwrap_or_else(|| default_cases(id)))?;
    let ok = rep.passed();
    let mut json = serde_json::to_value(&rep).expect("serializable");
    json["pass"] = json!(ok);
    Ok(Report::new(json, rep.to_string(), ok))
}

fn kind_name(k: EntryKind) -> &'static str {
    match k {
        EntryKind::Fixed => "fixed",
        EntryKind::Family => "family",
        EntryKind::Ansatz => "ansatz",
    }
}

pub fn catalog_list() -> Result<Report> {
    let m = catalog::manifest();
    let mut text = String::new();
    let mut items = Vec::new();
    for e in &m.entries {
        let line = format!("{:<24} {:<7} N={}  {}", e.name, kind_name(e.kind), e.rank, e.parameters.join(","));
        writeln!(text, "{}", line.trim_end()).unwrap();
        items.push(json!({ "name": e.name, "kind": e.kind, "rank": e.rank, "parameters": e.parameters }));
    }
    for (name, sub) in catalog::DERIVED_NAMES {
        writeln!(text, "{name:<24} {:<7} N=2  restriction of {} to {sub:?}", "derived", catalog::AA0_RESTRICTION_POINT).unwrap();
        items.push(json!({ "name": name, "kind": "derived", "rank": 2, "parameters": [] }));
    }
    Ok(Report::new(json!(items), text, true))
}

pub fn catalog_show(name: &str) -> Result<Report> {
    let full = input::catalog_name(name).ok_or_else(|| Error::UnknownName(name.into()))?;
    let e = catalog::manifest().entries.iter().find(|e| e.name == full).expect("listed name");
    let mut text = format!("{} ({}, N={})\n  source: {}\n", e.name, kind_name(e.kind), e.rank, e.provenance);
    if !e.parameters.is_empty() {
        writeln!(text, "  parameters: {}", e.parameters.join(", ")).unwrap();
    }
    for c in &e.constraints {
        writeln!(text, "  {} != 0  ({})", c.poly, c.reason).unwrap();
    }
    let width = e.rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in &e.rows {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(text, "  {}", cells.join("  ")).unwrap();
    }
    Ok(Report::new(serde_json::to_value(e).expect("serializable"), text, true))
}

pub fn catalog_dump() -> Result<Report> {
    let raw = catalog::manifest_json();
    let json: Value = serde_json::from_str(raw).map_err(|e| Error::Parse(e.to_string()))?;
    let mut text = raw.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Ok(Report::new(json, text, true))
}
