use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldTag, Scalar};
use crate::words::{Rank, Word};

use super::WordMatrix;

/// Serialized form of a [`WordMatrix`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(rename = "N")]
    pub n: u32,
    pub cod_len: usize,
    pub dom_len: usize,
    pub field: String,
    pub entries: Vec<[String; 3]>,
}

impl WordMatrix {
    pub fn to_json_value(&self) -> MatrixJson {
        MatrixJson {
            n: self.rank.get(),
            cod_len: self.cod_len,
            dom_len: self.dom_len,
            field: self.field.to_string(),
            entries: self.entries().map(|(w, v, s)| [w.to_string(), v.to_string(), s.to_string()]).collect(),
        }
    }

    pub fn from_json_value(j: &MatrixJson) -> Result<WordMatrix> {
        let rank = Rank::new(j.n)?;
        let field: FieldTag = j.field.parse()?;
        let mut items = Vec::with_capacity(j.entries.len());
        for [w, v, s] in &j.entries {
            items.push((Word::parse(rank, w)?, Word::parse(rank, v)?, Scalar::parse(field, s)?));
        }
        WordMatrix::from_entries(rank, j.cod_len, j.dom_len, field, items)
    }

    /// Compact JSON text; entries sorted by (row index, column index).
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<WordMatrix> {
        let j: MatrixJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        WordMatrix::from_json_value(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let r = Rank::new(2).unwrap();
        let m = WordMatrix::from_index_entries(
            r,
            2,
            2,
            FieldTag::Rational,
            [(0, 3, Scalar::parse(FieldTag::Rational, "-3/4").unwrap()), (1, 2, Scalar::from_i64(FieldTag::Rational, 5))],
        )
        .unwrap();
        let s = m.to_json();
        assert_eq!(s, r#"{"N":2,"cod_len":2,"dom_len":2,"field":"Q","entries":[["11","22","-3/4"],["21","12","5"]]}"#);
        let back = WordMatrix::from_json(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), s);
        let p = m.to_field(FieldTag::Prime(7)).unwrap();
        assert_eq!(WordMatrix::from_json(&p.to_json()).unwrap(), p);
        assert!(WordMatrix::from_json(r#"{"N":2,"cod_len":1,"dom_len":1,"field":"Q","entries":[["3","1","1"]]}"#).is_err());
    }
}
