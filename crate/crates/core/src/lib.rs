//! Projective metrics on finite vector spaces.
//!
//! A spanning family `F` of projective points in `F_q^N` induces a weight:
//! the least number of family points needed to write a vector. Everything
//! here is exact and exhaustive; sizes are kept in check by a [`Budget`].

pub mod bounds;
pub mod codes;
pub mod embed;
pub mod error;
pub mod family;
pub mod field;
pub mod isometry;
pub mod linalg;
pub mod matroid;
pub mod parent;
pub mod schema;
pub mod weight;

pub use error::{Error, Result};
pub use family::{ProjectivePoint, SpanningFamily, TensorKind};
pub use field::{FieldElement, FiniteField};
pub use linalg::{FqMatrix, FqVector, Space};
pub use parent::{LinearCode, ParentFunction};
pub use weight::{WeightTable, INF};

/// Limits on exhaustive work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest ambient space (number of vectors) any table may cover.
    pub max_states: u64,
    /// Largest number of nodes a backtracking or enumeration may visit.
    pub max_search: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_states: 1 << 24, max_search: 50_000_000 }
    }
}

impl Budget {
    pub fn states(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.max_states as u128 {
            return Err(Error::BudgetExceeded { what, needed, limit: self.max_states as u128 });
        }
        Ok(())
    }

    pub fn search(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.max_search as u128 {
            return Err(Error::BudgetExceeded { what, needed, limit: self.max_search as u128 });
        }
        Ok(())
    }
}
