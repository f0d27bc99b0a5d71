//! Codes measured in a family metric: distance, perfectness, and the
//! transfer of perfectness along a parent function.

use crate::error::{Error, Result};
use crate::linalg::{FqMatrix, Space};
use crate::parent::{min_hamming_distance, LinearCode, ParentFunction};
use crate::weight::{hamming_table, weight_table, WeightTable, INF};
use crate::Budget;

/// Least weight of a nonzero codeword; `INF` for the zero code.
pub fn min_distance_f(code: &LinearCode, table: &WeightTable, budget: &Budget) -> Result<u16> {
    if code.len() != table.dim() {
        return Err(Error::DimensionMismatch { expected: table.dim(), got: code.len() });
    }
    Ok(code.codeword_indices(budget)?.into_iter().filter(|&c| c != 0).map(|c| table.at(c)).min().unwrap_or(INF))
}

/// The smallest radius whose balls around the codewords partition the
/// space, if any. Checks the counting identity and then the partition.
pub fn is_perfect(code: &LinearCode, table: &WeightTable, budget: &Budget) -> Result<Option<u16>> {
    if code.len() != table.dim() {
        return Err(Error::DimensionMismatch { expected: table.dim(), got: code.len() });
    }
    let sp = table.space();
    let total = sp.size_u128();
    let words = code.codeword_indices(budget)?;
    let size = words.len() as u128;
    for t in 0..=table.max_weight() {
        if size * table.ball(t) as u128 != total {
            continue;
        }
        let ball: Vec<usize> = (0..table.len()).filter(|&x| table.at(x) <= t).collect();
        let mut covered = vec![false; table.len()];
        let mut ok = true;
        'words: for &c in &words {
            for &x in &ball {
                let y = sp.add(c, x);
                if covered[y] {
                    ok = false;
                    break 'words;
                }
                covered[y] = true;
            }
        }
        if ok {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// `phi(C)`.
pub fn image_code(code: &LinearCode, phi: &ParentFunction) -> Result<LinearCode> {
    if code.len() != phi.domain_dim() {
        return Err(Error::DimensionMismatch { expected: phi.domain_dim(), got: code.len() });
    }
    let img = code.basis().mul(phi.matrix())?;
    Ok(LinearCode::from_matrix(&img))
}

/// `phi^{-1}(C)`.
pub fn preimage_code(code: &LinearCode, phi: &ParentFunction) -> Result<LinearCode> {
    if code.len() != phi.codomain_dim() {
        return Err(Error::DimensionMismatch { expected: phi.codomain_dim(), got: code.len() });
    }
    let h = code.parity_check();
    if h.nrows() == 0 {
        let n = phi.domain_dim();
        return Ok(LinearCode::from_matrix(&FqMatrix::identity(code.field(), n)));
    }
    // x in preimage iff x M H^T = 0
    let mh = phi.matrix().mul(&h.transpose())?;
    Ok(LinearCode::from_matrix(&mh.transpose().kernel()))
}

/// Both perfectness verdicts for `C_hat` and its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferReport {
    pub hamming_radius: Option<u16>,
    pub family_radius: Option<u16>,
    pub hamming_distance: u16,
    pub family_distance: u16,
    pub image: LinearCode,
    pub agree: bool,
}

/// Compares Hamming perfectness of `C_hat` with family perfectness of
/// `phi(C_hat)`. Requires the parent code inside `C_hat` and a parent
/// distance at least the largest family weight.
pub fn perfect_transfer(c_hat: &LinearCode, phi: &ParentFunction, budget: &Budget) -> Result<TransferReport> {
    let pc = phi.parent_code();
    if c_hat.len() != phi.domain_dim() {
        return Err(Error::DimensionMismatch { expected: phi.domain_dim(), got: c_hat.len() });
    }
    if !pc.is_subcode_of(c_hat) {
        return Err(Error::NotSupercode);
    }
    let ft = weight_table(phi.family(), budget)?;
    let dp = min_hamming_distance(&pc, budget)?;
    if dp < ft.max_weight() {
        return Err(Error::HypothesisFailed { parent_distance: dp as u32, max_weight: ft.max_weight() as u32 });
    }
    let ht = hamming_table(c_hat.field(), c_hat.len(), budget)?;
    let image = image_code(c_hat, phi)?;
    let hamming_radius = is_perfect(c_hat, &ht, budget)?;
    let family_radius = is_perfect(&image, &ft, budget)?;
    Ok(TransferReport {
        hamming_radius,
        family_radius,
        hamming_distance: min_hamming_distance(c_hat, budget)?,
        family_distance: min_distance_f(&image, &ft, budget)?,
        agree: hamming_radius.is_some() == family_radius.is_some(),
        image,
    })
}

/// `|C| |B_t| / q^N` as a fraction, for reporting.
pub fn packing_ratio(code: &LinearCode, table: &WeightTable, t: u16) -> (u128, u128) {
    (code.size() * table.ball(t) as u128, Space::new(code.field(), code.len()).size_u128())
}
