//! JSON forms of families, codes and weight tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::SpanningFamily;
use crate::field::{FieldDescriptor, FiniteField};
use crate::parent::LinearCode;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub field: FieldDescriptor,
    #[serde(rename = "N")]
    pub n: usize,
    pub points: Vec<Vec<u16>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: FieldDescriptor,
    pub n: usize,
    pub basis: Vec<Vec<u16>>,
}

impl From<&SpanningFamily> for FamilyJson {
    fn from(f: &SpanningFamily) -> Self {
        FamilyJson {
            field: f.field().descriptor(),
            n: f.dim(),
            points: f.points().iter().map(|p| p.coords().to_vec()).collect(),
        }
    }
}

impl FamilyJson {
    pub fn build(&self) -> Result<SpanningFamily> {
        let field = FiniteField::from_descriptor(&self.field)?;
        SpanningFamily::from_coords(&field, self.n, &self.points)
    }
}

impl From<&LinearCode> for CodeJson {
    fn from(c: &LinearCode) -> Self {
        CodeJson { field: c.field().descriptor(), n: c.len(), basis: c.basis().rows().to_vec() }
    }
}

impl CodeJson {
    pub fn build(&self) -> Result<LinearCode> {
        let field = FiniteField::from_descriptor(&self.field)?;
        LinearCode::from_rows(&field, self.n, self.basis.clone())
    }
}

fn parse<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn family_to_json(f: &SpanningFamily) -> String {
    serde_json::to_string(&FamilyJson::from(f)).expect("serializable")
}

pub fn family_from_json(s: &str) -> Result<SpanningFamily> {
    parse::<FamilyJson>(s)?.build()
}

pub fn code_to_json(c: &LinearCode) -> String {
    serde_json::to_string(&CodeJson::from(c)).expect("serializable")
}

pub fn code_from_json(s: &str) -> Result<LinearCode> {
    parse::<CodeJson>(s)?.build()
}

/// A weight file: a JSON array of `q^N` integers in rank-index order.
/// Returns `N` and the weights.
pub fn weights_from_json(q: u32, s: &str) -> Result<(usize, Vec<u16>)> {
    let w: Vec<u16> = parse(s)?;
    let mut n = 0usize;
    let mut size = 1usize;
    while size < w.len() {
        size = size.saturating_mul(q as usize);
        n += 1;
    }
    if size != w.len() || q < 2 {
        return Err(Error::Parse(format!("{} weights is not a power of {q}", w.len())));
    }
    Ok((n, w))
}
