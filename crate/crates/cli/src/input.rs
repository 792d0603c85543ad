//! Turning command-line arguments into matrices and scalars.

use std::path::Path;

use ccwg_core::catalog;
use ccwg_core::field::parse_rational;
use ccwg_core::{Error, FieldTag, Rank, Result, Scalar, WordMatrix};

/// Resolves a matrix argument: a JSON file, a catalog name (`R_fI`, `fI`,
/// `R_a(k=1,p=2,q=3)`), or a family name completed by `params`.
pub fn matrix(arg: &str, params: Option<&str>, field: FieldTag) -> Result<WordMatrix> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{arg}: {e}")))?;
        return WordMatrix::from_json(&text)?.to_field(field);
    }
    let spec = match params {
        Some(p) if !arg.contains('(') => format!("{arg}({p})"),
        _ => arg.to_string(),
    };
    match catalog::resolve(&spec, field) {
        Err(Error::UnknownName(_)) if !arg.starts_with("R_") => catalog::resolve(&format!("R_{spec}"), field),
        other => other,
    }
}

/// The catalog name behind a matrix argument, if it names an entry.
pub fn catalog_name(arg: &str) -> Option<String> {
    let base = arg.split('(').next().unwrap_or(arg).trim();
    let names = catalog::list();
    [base.to_string(), format!("R_{base}")].into_iter().find(|n| names.contains(&n.as_str()))
}

/// A level-1 matrix: a JSON file, or rows such as `"1,2;0,1"`.
pub fn local_matrix(arg: &str, field: FieldTag) -> Result<WordMatrix> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{arg}: {e}")))?;
        return WordMatrix::from_json(&text)?.to_field(field);
    }
    let rows: Vec<Vec<Scalar>> = arg.split(';').map(|r| scalars(r, field)).collect::<Result<_>>()?;
    let rank = Rank::new(rows.len() as u32)?;
    WordMatrix::from_rows(rank, 1, &rows)
}

/// A diagonal level-1 matrix from `"d1,d2,..."`.
pub fn diagonal(arg: &str, field: FieldTag) -> Result<WordMatrix> {
    let d = scalars(arg, field)?;
    let rank = Rank::new(d.len() as u32)?;
    let items = d.into_iter().enumerate().map(|(i, s)| (i as u64, i as u64, s));
    WordMatrix::from_index_entries(rank, 1, 1, field, items)
}

/// Comma-separated exact scalars such as `1,-2/3`.
pub fn scalars(arg: &str, field: FieldTag) -> Result<Vec<Scalar>> {
    arg.split(',').map(|t| Scalar::from_rational(field, &parse_rational(t.trim())?)).collect()
}

/// Comma-separated letters such as `1,3`.
pub fn letters(arg: &str) -> Result<Vec<u32>> {
    arg.split(',').map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad letter {t:?}")))).collect()
}
