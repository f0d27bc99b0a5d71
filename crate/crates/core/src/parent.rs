//! Parent functions, their kernels (parent codes) and quotient weights.
//!
//! A family `F = {f_1..f_n}` in `F_q^N` gives the surjection
//! `phi: F_q^n -> F_q^N`, `e_i -> f_i`. The family weight of `y` is the
//! least Hamming weight in the fibre `phi^{-1}(y)`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::family::SpanningFamily;
use crate::field::FiniteField;
use crate::linalg::{for_each_image, FqMatrix, FqVector, Space};
use crate::weight::{WeightTable, INF};
use crate::Budget;

/// A linear code, stored by its reduced echelon basis.
#[derive(Clone)]
pub struct LinearCode {
    basis: FqMatrix,
    distance: OnceLock<u16>,
}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}] code {:?}", self.len(), self.dim(), self.basis.rows())
    }
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}
impl Eq for LinearCode {}

impl LinearCode {
    pub fn new(field: &FiniteField, n: usize, generators: &[FqVector]) -> Result<Self> {
        Ok(Self::from_matrix(&FqMatrix::from_vectors(field, n, generators)?))
    }

    pub fn from_matrix(m: &FqMatrix) -> Self {
        LinearCode { basis: m.rref().0, distance: OnceLock::new() }
    }

    pub fn from_rows(field: &FiniteField, n: usize, rows: Vec<Vec<u16>>) -> Result<Self> {
        Ok(Self::from_matrix(&FqMatrix::new(field, n, rows)?))
    }

    pub fn zero(field: &FiniteField, n: usize) -> Self {
        Self::from_matrix(&FqMatrix::from_raw(field, n, Vec::new()))
    }

    pub fn field(&self) -> &FiniteField {
        self.basis.field()
    }
    /// Length `n`.
    pub fn len(&self) -> usize {
        self.basis.ncols()
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }
    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }
    pub fn size(&self) -> u128 {
        (self.field().q() as u128).pow(self.dim() as u32)
    }

    /// Rows span the dual code; `H x^T = 0` exactly on the code.
    pub fn parity_check(&self) -> FqMatrix {
        self.basis.kernel()
    }

    pub fn dual(&self) -> LinearCode {
        Self::from_matrix(&self.parity_check())
    }

    pub fn contains(&self, x: &FqVector) -> bool {
        self.parity_check().apply(x.coords()).iter().all(|&c| c == 0)
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        let h = other.parity_check();
        self.basis.rows().iter().all(|r| h.apply(r).iter().all(|&c| c == 0))
    }

    /// Rank indices of all codewords, in generation order.
    pub fn codeword_indices(&self, budget: &Budget) -> Result<Vec<usize>> {
        budget.states("codewords", self.size())?;
        let mut out = Vec::with_capacity(self.size() as usize);
        for_each_image(self.field(), self.len(), self.basis.rows(), |_, y, _| out.push(y));
        Ok(out)
    }

    pub fn codewords(&self, budget: &Budget) -> Result<Vec<FqVector>> {
        let sp = Space::new(self.field(), self.len());
        Ok(self.codeword_indices(budget)?.into_iter().map(|i| sp.vector(i)).collect())
    }
}

/// Hamming weight of a rank index.
pub(crate) fn index_weight(q: usize, mut idx: usize) -> u16 {
    let mut w = 0;
    while idx > 0 {
        w += (idx % q != 0) as u16;
        idx /= q;
    }
    w
}

/// Minimum Hamming distance by enumeration; `INF` for the zero code.
pub fn min_hamming_distance(code: &LinearCode, budget: &Budget) -> Result<u16> {
    if let Some(&d) = code.distance.get() {
        return Ok(d);
    }
    budget.states("codewords", code.size())?;
    let q = code.field().q() as usize;
    let mut d = INF;
    for_each_image(code.field(), code.len(), code.basis.rows(), |_, y, _| {
        if y != 0 {
            d = d.min(index_weight(q, y));
        }
    });
    let _ = code.distance.set(d);
    Ok(d)
}

/// Least-weight vector of `y + C`; ties go to the smaller rank index.
pub fn coset_leader(code: &LinearCode, y: &FqVector, budget: &Budget) -> Result<FqVector> {
    if y.len() != code.len() {
        return Err(Error::DimensionMismatch { expected: code.len(), got: y.len() });
    }
    let sp = Space::new(code.field(), code.len());
    let q = code.field().q() as usize;
    let yi = sp.encode(y.coords());
    let best = code
        .codeword_indices(budget)?
        .into_iter()
        .map(|c| sp.add(yi, c))
        .min_by_key(|&v| (index_weight(q, v), v))
        .expect("code has at least one word");
    Ok(sp.vector(best))
}

/// `alpha_i`: number of cosets whose leader has Hamming weight `i`,
/// in a single pass over the ambient space.
pub fn coset_leader_weight_distribution(code: &LinearCode, budget: &Budget) -> Result<Vec<u64>> {
    let n = code.len();
    let sp = Space::new(code.field(), n);
    budget.states("coset scan", sp.size_u128())?;
    let h = code.parity_check();
    let r = h.nrows();
    let syn_count = (code.field().q() as usize).pow(r as u32);
    let mut leader = vec![u16::MAX; syn_count];
    // x -> H x^T is x times H^T
    let ht = h.transpose();
    for_each_image(code.field(), r, ht.rows(), |_, s, hw| {
        if (hw as u16) < leader[s] {
            leader[s] = hw as u16;
        }
    });
    let mut alpha = vec![0u64; n + 1];
    for &w in &leader {
        alpha[w as usize] += 1;
    }
    while alpha.len() > 1 && alpha.last() == Some(&0) {
        alpha.pop();
    }
    Ok(alpha)
}

/// The map `F_q^n -> F_q^N` sending `e_i` to the `i`-th family point.
#[derive(Clone, Debug)]
pub struct ParentFunction {
    family: SpanningFamily,
    matrix: FqMatrix,
}

impl ParentFunction {
    pub fn new(family: &SpanningFamily) -> Self {
        let rows = family.points().iter().map(|p| p.coords().to_vec()).collect();
        let matrix = FqMatrix::from_raw(family.field(), family.dim(), rows);
        ParentFunction { family: family.clone(), matrix }
    }

    pub fn family(&self) -> &SpanningFamily {
        &self.family
    }
    /// `n x N`, row `i` is `f_i`.
    pub fn matrix(&self) -> &FqMatrix {
        &self.matrix
    }
    pub fn domain_dim(&self) -> usize {
        self.matrix.nrows()
    }
    pub fn codomain_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn apply(&self, x: &FqVector) -> Result<FqVector> {
        if x.len() != self.domain_dim() {
            return Err(Error::DimensionMismatch { expected: self.domain_dim(), got: x.len() });
        }
        Ok(FqVector::from_raw(self.family.field(), self.matrix.left_apply(x.coords())))
    }

    /// The kernel of the map.
    pub fn parent_code(&self) -> LinearCode {
        LinearCode::from_matrix(&self.matrix.transpose().kernel())
    }
}

/// Pushes a weight forward along `x -> x xi`: each output gets the least
/// weight in its fibre, `INF` if nothing maps there.
pub fn quotient_weight(table: &WeightTable, xi: &FqMatrix) -> Result<WeightTable> {
    if xi.nrows() != table.dim() {
        return Err(Error::DimensionMismatch { expected: table.dim(), got: xi.nrows() });
    }
    if xi.field() != table.field() {
        return Err(Error::FieldMismatch);
    }
    let out = Space::new(xi.field(), xi.ncols());
    let mut w = vec![INF; out.size_u128() as usize];
    for_each_image(xi.field(), xi.ncols(), xi.rows(), |x, y, _| {
        let wx = table.at(x);
        if wx < w[y] {
            w[y] = wx;
        }
    });
    WeightTable::from_weights(xi.field(), xi.ncols(), w)
}

/// `M = R P` with `P` the distinct row classes of `M` (first occurrence,
/// canonical form) and `R` having one nonzero entry in each nonzero row.
pub fn factor_row_monomial(m: &FqMatrix) -> (FqMatrix, FqMatrix) {
    let f = m.field();
    let mut classes: Vec<Vec<u16>> = Vec::new();
    let mut coeffs: Vec<Option<(usize, u16)>> = Vec::new();
    for row in m.rows() {
        let v = FqVector::from_raw(f, row.clone());
        match v.leading() {
            None => coeffs.push(None),
            Some((_, lead)) => {
                let c = v.canonical().into_coords();
                let j = match classes.iter().position(|x| *x == c) {
                    Some(j) => j,
                    None => {
                        classes.push(c);
                        classes.len() - 1
                    }
                };
                coeffs.push(Some((j, lead)));
            }
        }
    }
    let k = classes.len();
    let r = coeffs
        .iter()
        .map(|c| {
            let mut row = vec![0u16; k];
            if let Some((j, lambda)) = c {
                row[*j] = *lambda;
            }
            row
        })
        .collect();
    (FqMatrix::from_raw(f, k, r), FqMatrix::from_raw(f, m.ncols(), classes))
}

/// A surjection `xi` factored as `R` followed by the parent function of
/// its distinct row classes.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub parent: ParentFunction,
    pub r: FqMatrix,
}

pub fn reduce_to_parent(xi: &FqMatrix) -> Result<Reduction> {
    if xi.rank() != xi.ncols() {
        return Err(Error::NotSurjective);
    }
    let (r, p) = factor_row_monomial(xi);
    let fam = SpanningFamily::new(p.field(), p.ncols(), p.row_vectors())?;
    Ok(Reduction { parent: ParentFunction::new(&fam), r })
}

/// The family whose parent code is `code` up to coordinate scaling: the
/// columns of the canonical parity-check matrix. Needs distance >= 3.
pub fn family_from_code(code: &LinearCode, budget: &Budget) -> Result<SpanningFamily> {
    let d = min_hamming_distance(code, budget)?;
    if d <= 2 {
        return Err(Error::DistanceTooSmall(d as u32));
    }
    let h = code.parity_check();
    let cols = (0..code.len()).map(|j| h.column(j)).collect::<Vec<_>>();
    SpanningFamily::new(code.field(), h.nrows(), cols)
}
