//! Vectors, matrices and elimination over `F_q`.
//!
//! The rank index of a vector is `sum x_i q^i`: coordinate 0 is the least
//! significant digit. Every "rank-index order" in the crate means this.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};

/// A vector in `F_q^n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqVector {
    field: FieldKey,
    coords: Vec<u16>,
}

// FiniteField is not Hash; vectors hash by coordinates and compare fields by value.
#[derive(Clone, PartialEq, Eq)]
struct FieldKey(FiniteField);

impl std::hash::Hash for FieldKey {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.q().hash(state);
    }
}

impl fmt::Debug for FqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.0.q() <= 10 {
            let s: String = self.coords.iter().map(|c| char::from(b'0' + *c as u8)).collect();
            write!(f, "{s}")
        } else {
            write!(f, "{:?}", self.coords)
        }
    }
}

impl FqVector {
    pub fn new(field: &FiniteField, coords: Vec<u16>) -> Result<Self> {
        for &c in &coords {
            field.check(c as u64)?;
        }
        Ok(Self::from_raw(field, coords))
    }

    pub(crate) fn from_raw(field: &FiniteField, coords: Vec<u16>) -> Self {
        FqVector { field: FieldKey(field.clone()), coords }
    }

    pub fn zero(field: &FiniteField, n: usize) -> Self {
        Self::from_raw(field, vec![0; n])
    }

    /// The standard basis vector `e_i` of length `n`.
    pub fn unit(field: &FiniteField, n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        Self::from_raw(field, c)
    }

    pub fn ones(field: &FiniteField, n: usize) -> Self {
        Self::from_raw(field, vec![1; n])
    }

    pub fn field(&self) -> &FiniteField {
        &self.field.0
    }
    pub fn coords(&self) -> &[u16] {
        &self.coords
    }
    pub fn into_coords(self) -> Vec<u16> {
        self.coords
    }
    pub fn len(&self) -> usize {
        self.coords.len()
    }
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
    pub fn get(&self, i: usize) -> FieldElement {
        self.field.0.element(self.coords[i] as u64).expect("stored coordinates are valid")
    }

    pub fn hamming_weight(&self) -> usize {
        self.coords.iter().filter(|&&c| c != 0).count()
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        if self.len() != o.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: o.len() });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let f = self.field();
        let c = self.coords.iter().zip(&o.coords).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Self::from_raw(f, c))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let f = self.field();
        let c = self.coords.iter().zip(&o.coords).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Self::from_raw(f, c))
    }

    pub fn scale(&self, lambda: u16) -> Self {
        let f = self.field();
        Self::from_raw(f, self.coords.iter().map(|&a| f.mul(lambda, a)).collect())
    }

    pub fn dot(&self, o: &Self) -> Result<u16> {
        self.compatible(o)?;
        Ok(dot_raw(self.field(), &self.coords, &o.coords))
    }

    /// First nonzero coordinate, if any.
    pub fn leading(&self) -> Option<(usize, u16)> {
        self.coords.iter().enumerate().find(|(_, &c)| c != 0).map(|(i, &c)| (i, c))
    }

    /// Scales so that the first nonzero coordinate is 1. Zero stays zero.
    pub fn canonical(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.field().inv(c).expect("nonzero")),
        }
    }

    pub fn is_canonical(&self) -> bool {
        matches!(self.leading(), Some((_, 1)))
    }

    pub fn rank_index(&self) -> u64 {
        let q = self.field().q() as u64;
        self.coords.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64)
    }

    pub fn from_rank_index(field: &FiniteField, n: usize, mut idx: u64) -> Self {
        let q = field.q() as u64;
        let c = (0..n)
            .map(|_| {
                let d = (idx % q) as u16;
                idx /= q;
                d
            })
            .collect();
        Self::from_raw(field, c)
    }
}

pub(crate) fn dot_raw(f: &FiniteField, a: &[u16], b: &[u16]) -> u16 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// `F_q^n` with rank-index arithmetic, used by every table-driven search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    pub field: FiniteField,
    pub dim: usize,
}

impl Space {
    pub fn new(field: &FiniteField, dim: usize) -> Self {
        Space { field: field.clone(), dim }
    }

    /// Number of vectors, or `None` if it overflows `u64`.
    pub fn size(&self) -> Option<u64> {
        (self.field.q() as u64).checked_pow(self.dim as u32)
    }

    pub fn size_u128(&self) -> u128 {
        (self.field.q() as u128).checked_pow(self.dim as u32).unwrap_or(u128::MAX)
    }

    #[inline]
    pub fn encode(&self, coords: &[u16]) -> usize {
        let q = self.field.q() as usize;
        coords.iter().rev().fold(0usize, |acc, &c| acc * q + c as usize)
    }

    #[inline]
    pub fn decode_into(&self, mut idx: usize, out: &mut [u16]) {
        let q = self.field.q() as usize;
        for c in out.iter_mut() {
            *c = (idx % q) as u16;
            idx /= q;
        }
    }

    pub fn decode(&self, idx: usize) -> Vec<u16> {
        let mut v = vec![0; self.dim];
        self.decode_into(idx, &mut v);
        v
    }

    pub fn vector(&self, idx: usize) -> FqVector {
        FqVector::from_raw(&self.field, self.decode(idx))
    }

    /// Index of `x + lambda * y`.
    #[inline]
    pub fn axpy(&self, x: usize, lambda: u16, y: usize) -> usize {
        let f = &self.field;
        let q = f.q() as usize;
        if q == 2 {
            return if lambda == 0 { x } else { x ^ y };
        }
        let (mut a, mut b) = (x, y);
        let mut out = 0usize;
        let mut place = 1usize;
        for _ in 0..self.dim {
            let d = f.add((a % q) as u16, f.mul(lambda, (b % q) as u16));
            out += d as usize * place;
            a /= q;
            b /= q;
            place *= q;
        }
        out
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.axpy(x, 1, y)
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.axpy(x, self.field.neg(1), y)
    }

    pub fn scale(&self, lambda: u16, x: usize) -> usize {
        self.axpy(0, lambda, x)
    }
}

/// A dense matrix over `F_q`, stored by rows.
#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: FiniteField,
    ncols: usize,
    rows: Vec<Vec<u16>>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{} over {:?}]", self.rows.len(), self.ncols, self.field)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

impl FqMatrix {
    pub fn new(field: &FiniteField, ncols: usize, rows: Vec<Vec<u16>>) -> Result<Self> {
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch { expected: ncols, got: r.len() });
            }
            for &c in r {
                field.check(c as u64)?;
            }
        }
        Ok(FqMatrix { field: field.clone(), ncols, rows })
    }

    pub(crate) fn from_raw(field: &FiniteField, ncols: usize, rows: Vec<Vec<u16>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        FqMatrix { field: field.clone(), ncols, rows }
    }

    pub fn from_vectors(field: &FiniteField, ncols: usize, vs: &[FqVector]) -> Result<Self> {
        let mut rows = Vec::with_capacity(vs.len());
        for v in vs {
            if v.field() != field {
                return Err(Error::FieldMismatch);
            }
            if v.len() != ncols {
                return Err(Error::DimensionMismatch { expected: ncols, got: v.len() });
            }
            rows.push(v.coords().to_vec());
        }
        Ok(Self::from_raw(field, ncols, rows))
    }

    pub fn identity(field: &FiniteField, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        Self::from_raw(field, n, rows)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn rows(&self) -> &[Vec<u16>] {
        &self.rows
    }
    pub fn row(&self, i: usize) -> FqVector {
        FqVector::from_raw(&self.field, self.rows[i].clone())
    }
    pub fn row_vectors(&self) -> Vec<FqVector> {
        (0..self.nrows()).map(|i| self.row(i)).collect()
    }
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.rows[i][j]
    }
    pub fn column(&self, j: usize) -> FqVector {
        FqVector::from_raw(&self.field, self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.ncols).map(|j| self.rows.iter().map(|r| r[j]).collect()).collect();
        Self::from_raw(&self.field, self.nrows(), rows)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        if self.ncols != o.nrows() {
            return Err(Error::DimensionMismatch { expected: self.ncols, got: o.nrows() });
        }
        let f = &self.field;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = vec![0u16; o.ncols];
                for (k, &a) in r.iter().enumerate() {
                    if a != 0 {
                        for (j, &b) in o.rows[k].iter().enumerate() {
                            out[j] = f.add(out[j], f.mul(a, b));
                        }
                    }
                }
                out
            })
            .collect();
        Ok(Self::from_raw(f, o.ncols, rows))
    }

    /// Row vector times matrix: `x M`.
    pub fn left_apply(&self, x: &[u16]) -> Vec<u16> {
        let f = &self.field;
        let mut out = vec![0u16; self.ncols];
        for (k, &a) in x.iter().enumerate() {
            if a != 0 {
                for (j, &b) in self.rows[k].iter().enumerate() {
                    out[j] = f.add(out[j], f.mul(a, b));
                }
            }
        }
        out
    }

    /// Matrix times column vector: `M x`.
    pub fn apply(&self, x: &[u16]) -> Vec<u16> {
        self.rows.iter().map(|r| dot_raw(&self.field, r, x)).collect()
    }

    /// Reduced row echelon form (zero rows dropped) and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.rows.clone();
        let pivots = rref_in_place(&self.field, &mut rows, self.ncols);
        rows.truncate(pivots.len());
        (Self::from_raw(&self.field, self.ncols, rows), pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        rref_in_place(&self.field, &mut rows, self.ncols).len()
    }

    /// Basis (in reduced echelon form) of `{x : M x^T = 0}`.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![None; self.ncols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|&j| is_pivot[j].is_none()) {
            let mut v = vec![0u16; self.ncols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.rows[i][free]);
            }
            basis.push(v);
        }
        let k = Self::from_raw(f, self.ncols, basis);
        k.rref().0
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.nrows();
        if n != self.ncols {
            return Err(Error::ShapeMismatch(format!("{}x{} is not square", n, self.ncols)));
        }
        let f = &self.field;
        let mut aug: Vec<Vec<u16>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut a = r.clone();
                a.extend((0..n).map(|j| (i == j) as u16));
                a
            })
            .collect();
        let pivots = rref_in_place(f, &mut aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::DependentBasis);
        }
        let rows = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Ok(Self::from_raw(f, n, rows))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&c| c == 0))
    }
}

/// Gauss-Jordan elimination. Pivot = leftmost column with a nonzero entry at
/// or below the current row, taking the first such row. Returns pivot columns;
/// the first `pivots.len()` rows of `rows` hold the reduced form.
pub(crate) fn rref_in_place(f: &FiniteField, rows: &mut [Vec<u16>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(s) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, s);
        let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let m = f.neg(row[c]);
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x = f.add(*x, f.mul(m, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced echelon form, rank and kernel basis in one call.
pub fn rref_rank_kernel(m: &FqMatrix) -> (FqMatrix, usize, FqMatrix) {
    let (r, p) = m.rref();
    (r, p.len(), m.kernel())
}

pub fn rank_of(field: &FiniteField, n: usize, vs: &[&[u16]]) -> usize {
    let mut rows: Vec<Vec<u16>> = vs.iter().map(|v| v.to_vec()).collect();
    rref_in_place(field, &mut rows, n).len()
}

/// Whether `x` lies in the span of `vectors`. The empty span is `{0}`.
pub fn in_span(vectors: &[FqVector], x: &FqVector) -> Result<bool> {
    if vectors.is_empty() {
        return Ok(x.is_zero());
    }
    for v in vectors {
        if v.field() != x.field() {
            return Err(Error::FieldMismatch);
        }
        if v.len() != x.len() {
            return Err(Error::DimensionMismatch { expected: x.len(), got: v.len() });
        }
    }
    let rows: Vec<&[u16]> = vectors.iter().map(|v| v.coords()).collect();
    let r = rank_of(x.field(), x.len(), &rows);
    let mut with = rows.clone();
    with.push(x.coords());
    Ok(rank_of(x.field(), x.len(), &with) == r)
}

/// All `q^k` vectors of the span of an independent `basis`, in rank-index order.
pub fn enumerate_subspace(field: &FiniteField, n: usize, basis: &[FqVector]) -> Result<Vec<FqVector>> {
    let rows: Vec<&[u16]> = basis.iter().map(|v| v.coords()).collect();
    for v in basis {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
    }
    if rank_of(field, n, &rows) < basis.len() {
        return Err(Error::DependentBasis);
    }
    let sp = Space::new(field, n);
    let mut idx = span_indices(&sp, &basis.iter().map(|b| sp.encode(b.coords())).collect::<Vec<_>>());
    idx.sort_unstable();
    Ok(idx.into_iter().map(|i| sp.vector(i)).collect())
}

/// Indices of every vector in the span of the given vectors (with repeats if
/// they are dependent), in generation order.
pub(crate) fn span_indices(sp: &Space, gens: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &g in gens {
        let cur = out.len();
        for lambda in sp.field.units() {
            for i in 0..cur {
                out.push(sp.axpy(out[i], lambda, g));
            }
        }
    }
    out
}

/// Walks every `x` in `F_q^m` in rank-index order together with `x M`
/// for the `m x n` matrix whose rows are `rows`. The callback gets
/// `(index of x, index of x M, Hamming weight of x)`.
pub(crate) fn for_each_image(field: &FiniteField, n: usize, rows: &[Vec<u16>], mut visit: impl FnMut(usize, usize, usize)) {
    let m = rows.len();
    let out = Space::new(field, n);
    let q = field.q() as usize;
    // mult[k][d] = index of d * row_k
    let mult: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| {
            let ri = out.encode(r);
            (0..q as u16).map(|d| out.scale(d, ri)).collect()
        })
        .collect();
    let mut digits = vec![0usize; m];
    let (mut y, mut hw) = (0usize, 0usize);
    let total = q.pow(m as u32);
    for x in 0..total {
        visit(x, y, hw);
        // odometer step
        for k in 0..m {
            let old = digits[k];
            let new = (old + 1) % q;
            digits[k] = new;
            y = out.add(out.sub(y, mult[k][old]), mult[k][new]);
            if old == 0 {
                hw += 1;
            }
            if new == 0 {
                hw -= 1;
                continue;
            }
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FiniteField {
        FiniteField::with_order(q).unwrap()
    }

    fn v(field: &FiniteField, c: &[u16]) -> FqVector {
        FqVector::new(field, c.to_vec()).unwrap()
    }

    #[test]
    fn rref_of_small_binary_matrix() {
        let f2 = f(2);
        let m = FqMatrix::new(&f2, 3, vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let (r, rank, k) = rref_rank_kernel(&m);
        assert_eq!(r.rows(), &[vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(rank, 2);
        assert_eq!(k.rows(), &[vec![1, 1, 1]]);
    }

    #[test]
    fn span_membership() {
        let f3 = f(3);
        let b = [v(&f3, &[1, 0]), v(&f3, &[0, 1])];
        assert!(in_span(&b, &v(&f3, &[2, 2])).unwrap());
        assert!(in_span(&[], &FqVector::zero(&f3, 2)).unwrap());
        assert!(!in_span(&[], &v(&f3, &[1, 0])).unwrap());
    }

    #[test]
    fn dependent_basis_rejected() {
        let f2 = f(2);
        let b = [v(&f2, &[1, 1]), v(&f2, &[1, 1])];
        assert_eq!(enumerate_subspace(&f2, 2, &b).err(), Some(Error::DependentBasis));
    }

    #[test]
    fn subspace_in_rank_index_order() {
        let f2 = f(2);
        let b = [v(&f2, &[1, 1, 0]), v(&f2, &[0, 0, 1])];
        let all: Vec<u64> = enumerate_subspace(&f2, 3, &b).unwrap().iter().map(|x| x.rank_index()).collect();
        assert_eq!(all, vec![0, 3, 4, 7]);
    }

    #[test]
    fn canonical_form() {
        let f5 = f(5);
        assert_eq!(v(&f5, &[0, 3, 1]).canonical().coords(), &[0, 1, 2]);
    }

    #[test]
    fn inverse_roundtrip() {
        let f4 = f(4);
        let m = FqMatrix::new(&f4, 2, vec![vec![1, 2], vec![2, 1]]).unwrap();
        let mi = m.inverse().unwrap();
        assert_eq!(m.mul(&mi).unwrap(), FqMatrix::identity(&f4, 2));
        let s = FqMatrix::new(&f4, 2, vec![vec![1, 2], vec![1, 2]]).unwrap();
        assert_eq!(s.inverse().err(), Some(Error::DependentBasis));
    }

    #[test]
    fn space_arithmetic_matches_vectors() {
        for q in [2u64, 3, 4, 9] {
            let fq = f(q);
            let sp = Space::new(&fq, 3);
            let n = sp.size().unwrap() as usize;
            for x in (0..n).step_by(5) {
                for y in (0..n).step_by(7) {
                    let (vx, vy) = (sp.vector(x), sp.vector(y));
                    assert_eq!(sp.add(x, y), sp.encode(vx.add(&vy).unwrap().coords()));
                    assert_eq!(sp.sub(x, y), sp.encode(vx.sub(&vy).unwrap().coords()));
                }
            }
        }
    }

    #[test]
    fn image_walk_matches_direct_product() {
        let f4 = f(4);
        let m = FqMatrix::new(&f4, 3, vec![vec![1, 2, 0], vec![3, 1, 1]]).unwrap();
        let (src, dst) = (Space::new(&f4, 2), Space::new(&f4, 3));
        let mut seen = 0;
        for_each_image(&f4, 3, m.rows(), |x, y, hw| {
            let xv = src.decode(x);
            assert_eq!(y, dst.encode(&m.left_apply(&xv)));
            assert_eq!(hw, xv.iter().filter(|&&c| c != 0).count());
            seen += 1;
        });
        assert_eq!(seen, 16);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn matrix(q: u16) -> impl Strategy<Value = (usize, Vec<Vec<u16>>)> {
            (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
                (Just(c), proptest::collection::vec(proptest::collection::vec(0..q, c), r))
            })
        }

        proptest! {
            #[test]
            fn rank_nullity((c, rows) in matrix(3)) {
                let f3 = FiniteField::prime(3).unwrap();
                let m = FqMatrix::new(&f3, c, rows).unwrap();
                let (_, rank, k) = rref_rank_kernel(&m);
                prop_assert_eq!(rank + k.nrows(), c);
                for kv in k.rows() {
                    prop_assert!(m.apply(kv).iter().all(|&x| x == 0));
                }
            }

            #[test]
            fn rref_is_idempotent((c, rows) in matrix(4)) {
                let f4 = FiniteField::with_order(4).unwrap();
                let m = FqMatrix::new(&f4, c, rows).unwrap();
                let (r, _) = m.rref();
                prop_assert_eq!(r.rref().0, r.clone());
                prop_assert_eq!(r.rank(), m.rank());
            }
        }
    }
}
