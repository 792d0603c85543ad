use std::fmt;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::with_field;

use super::WordMatrix;

/// One entry of a Jordan profile: `multiplicity` blocks of size `size` for `eigenvalue`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanBlock {
    pub eigenvalue: Scalar,
    pub size: usize,
    pub multiplicity: usize,
}

/// Jordan block structure, grouped by eigenvalue (in the order supplied) then by decreasing size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanProfile {
    pub blocks: Vec<JordanBlock>,
}

impl JordanProfile {
    /// `Σ size·multiplicity`.
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.size * b.multiplicity).sum()
    }

    /// Number of blocks of `size` with eigenvalue `ev`.
    pub fn count(&self, ev: &Scalar, size: usize) -> usize {
        self.blocks.iter().filter(|b| &b.eigenvalue == ev && b.size == size).map(|b| b.multiplicity).sum()
    }
}

impl fmt::Display for JordanProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| format!("{}x J_{}({})", b.multiplicity, b.size, b.eigenvalue)).collect();
        write!(f, "{}", parts.join(", "))
    }
}

pub(super) fn jordan_profile(m: &WordMatrix, eigenvalues: &[Scalar]) -> Result<JordanProfile> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch("Jordan profile of a non-square matrix".into()));
    }
    let d = m.nrows();
    let mut distinct: Vec<Scalar> = Vec::new();
    for e in eigenvalues {
        if e.tag() != m.field() {
            return Err(Error::FieldMismatch(e.tag().to_string(), m.field().to_string()));
        }
        if !distinct.contains(e) {
            distinct.push(e.clone());
        }
    }
    let mut blocks = Vec::new();
    let mut found = 0;
    with_field!(m.field(), |f| {
        use crate::field::Field;
        let base = m.to_dense(&f);
        for ev in &distinct {
            let lam = f.from_scalar(ev)?;
            let mut shifted = base.clone();
            for i in 0..d {
                let x = f.sub(shifted.at(i, i), &lam);
                *shifted.at_mut(i, i) = x;
            }
            // ranks r_0 = d, r_k = rank((M − λ)^k) until stable.
            let mut ranks = vec![d];
            let mut power = shifted.clone();
            loop {
                let r = power.rank(&f);
                let prev = *ranks.last().unwrap();
                ranks.push(r);
                if r == prev {
                    break;
                }
                power = power.mul(&f, &shifted);
            }
            found += d - ranks.last().unwrap();
            let at_least = |k: usize| -> usize {
                if k >= ranks.len() {
                    0
                } else {
                    ranks[k - 1] - ranks[k]
                }
            };
            for k in (1..ranks.len()).rev() {
                let exact = at_least(k) - at_least(k + 1);
                if exact > 0 {
                    blocks.push(JordanBlock { eigenvalue: ev.clone(), size: k, multiplicity: exact });
                }
            }
        }
    });
    if found != d {
        return Err(Error::EigenvaluesIncomplete { found, dim: d });
    }
    Ok(JordanProfile { blocks })
}
