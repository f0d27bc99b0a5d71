//! Families of projective points and the standard constructions.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::linalg::{rank_of, span_indices, FqVector, Space};

const MAX_POINTS: u128 = 1 << 22;

/// A nonzero vector scaled so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint(FqVector);

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}>", self.0)
    }
}

impl ProjectivePoint {
    /// `None` for the zero vector.
    pub fn new(v: &FqVector) -> Option<Self> {
        (!v.is_zero()).then(|| ProjectivePoint(v.canonical()))
    }
    pub fn rep(&self) -> &FqVector {
        &self.0
    }
    pub fn coords(&self) -> &[u16] {
        self.0.coords()
    }
}

/// An ordered list of distinct projective points in `F_q^N`.
#[derive(Clone)]
pub struct SpanningFamily {
    field: FiniteField,
    dim: usize,
    points: Vec<ProjectivePoint>,
    index: HashMap<Vec<u16>, usize>,
    rank: usize,
    merged: usize,
    zeros: usize,
}

impl fmt::Debug for SpanningFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family[N={}, {:?}] {:?}", self.dim, self.field, self.points)
    }
}

impl PartialEq for SpanningFamily {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.points == other.points
    }
}
impl Eq for SpanningFamily {}

impl SpanningFamily {
    /// Drops zero vectors and merges proportional duplicates (first one wins).
    pub fn new(field: &FiniteField, dim: usize, vectors: impl IntoIterator<Item = FqVector>) -> Result<Self> {
        let mut points = Vec::new();
        let mut index = HashMap::new();
        let (mut merged, mut zeros) = (0, 0);
        for v in vectors {
            if v.field() != field {
                return Err(Error::FieldMismatch);
            }
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
            match ProjectivePoint::new(&v) {
                None => zeros += 1,
                Some(p) => {
                    if index.contains_key(p.coords()) {
                        merged += 1;
                    } else {
                        index.insert(p.coords().to_vec(), points.len());
                        points.push(p);
                    }
                }
            }
        }
        if points.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let rows: Vec<&[u16]> = points.iter().map(|p| p.coords()).collect();
        let rank = rank_of(field, dim, &rows);
        Ok(SpanningFamily { field: field.clone(), dim, points, index, rank, merged, zeros })
    }

    pub fn from_coords(field: &FiniteField, dim: usize, pts: &[Vec<u16>]) -> Result<Self> {
        let vs = pts.iter().map(|c| FqVector::new(field, c.clone())).collect::<Result<Vec<_>>>()?;
        Self::new(field, dim, vs)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }
    /// Ambient dimension `N`.
    pub fn dim(&self) -> usize {
        self.dim
    }
    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }
    pub fn point(&self, i: usize) -> &FqVector {
        self.points[i].rep()
    }
    pub fn vectors(&self) -> Vec<FqVector> {
        self.points.iter().map(|p| p.rep().clone()).collect()
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn is_spanning(&self) -> bool {
        self.rank == self.dim
    }
    /// Proportional duplicates merged at construction.
    pub fn merged(&self) -> usize {
        self.merged
    }
    /// Zero vectors dropped at construction.
    pub fn dropped_zeros(&self) -> usize {
        self.zeros
    }

    pub fn space(&self) -> Space {
        Space::new(&self.field, self.dim)
    }

    /// Position of the point through `v`, if it belongs to the family.
    pub fn position(&self, v: &FqVector) -> Option<usize> {
        let p = ProjectivePoint::new(v)?;
        self.index.get(p.coords()).copied()
    }

    pub fn contains(&self, v: &FqVector) -> bool {
        self.position(v).is_some()
    }

    /// Rank indices of every nonzero multiple of every point.
    pub fn generator_indices(&self) -> Vec<usize> {
        let sp = self.space();
        let mut out = Vec::with_capacity(self.len() * (self.field.q() as usize - 1));
        for p in &self.points {
            let i = sp.encode(p.coords());
            for l in self.field.units() {
                out.push(sp.scale(l, i));
            }
        }
        out
    }

    /// Same points as a set (order ignored).
    pub fn same_set(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.len() == other.len()
            && self.points.iter().all(|p| other.index.contains_key(p.coords()))
    }

    /// Points sorted by rank index.
    pub fn sorted(&self) -> Self {
        let mut pts = self.vectors();
        pts.sort_by_key(|v| v.rank_index());
        Self::new(&self.field, self.dim, pts).expect("nonempty")
    }
}

/// Canonical points of `F_q^n` in rank-index order.
pub fn projective_points(field: &FiniteField, n: usize) -> Result<Vec<FqVector>> {
    let sp = Space::new(field, n);
    let total = sp.size_u128();
    if total / (field.q() as u128 - 1) > MAX_POINTS {
        return Err(Error::BudgetExceeded { what: "projective points", needed: total, limit: MAX_POINTS });
    }
    Ok((1..total as usize).map(|i| sp.vector(i)).filter(|v| v.is_canonical()).collect())
}

pub fn hamming(field: &FiniteField, n: usize) -> Result<SpanningFamily> {
    SpanningFamily::new(field, n, (0..n).map(|i| FqVector::unit(field, n, i)))
}

/// Every projective point; the induced weight is the discrete metric.
pub fn discrete(field: &FiniteField, n: usize) -> Result<SpanningFamily> {
    SpanningFamily::new(field, n, projective_points(field, n)?)
}

/// Standard basis plus the all-ones vector.
pub fn phase_rotation(field: &FiniteField, n: usize) -> Result<SpanningFamily> {
    let mut vs: Vec<FqVector> = (0..n).map(|i| FqVector::unit(field, n, i)).collect();
    vs.push(FqVector::ones(field, n));
    SpanningFamily::new(field, n, vs)
}

/// Rank-one `m x n` matrices, flattened row-major.
pub fn rank(field: &FiniteField, m: usize, n: usize) -> Result<SpanningFamily> {
    tensor_product(&discrete(field, m)?, &discrete(field, n)?, TensorKind::Outer)
}

/// Matrices with exactly one nonzero row.
pub fn row(field: &FiniteField, m: usize, n: usize) -> Result<SpanningFamily> {
    tensor_product(&hamming(field, m)?, &discrete(field, n)?, TensorKind::Outer)
}

/// Matrices with exactly one nonzero column.
pub fn column(field: &FiniteField, m: usize, n: usize) -> Result<SpanningFamily> {
    tensor_product(&discrete(field, m)?, &hamming(field, n)?, TensorKind::Outer)
}

pub fn cover(field: &FiniteField, m: usize, n: usize) -> Result<SpanningFamily> {
    union(&row(field, m, n)?, &column(field, m, n)?)
}

/// Block-diagonal sum of rank families, one block per `(m_i, n_i)`.
pub fn sum_rank(field: &FiniteField, blocks: &[(usize, usize)]) -> Result<SpanningFamily> {
    let (first, rest) = blocks.split_first().ok_or(Error::EmptyFamily)?;
    let mut fam = rank(field, first.0, first.1)?;
    for &(m, n) in rest {
        fam = disjoint_union(&fam, &rank(field, m, n)?)?;
    }
    Ok(fam)
}

/// Pure tensors `v_1 (x) ... (x) v_k`, flattened.
pub fn tensor_rank(field: &FiniteField, dims: &[usize]) -> Result<SpanningFamily> {
    let (first, rest) = dims.split_first().ok_or(Error::EmptyFamily)?;
    let count: u128 = dims
        .iter()
        .map(|&d| (field.q() as u128).pow(d as u32) / (field.q() as u128 - 1))
        .product();
    if count > MAX_POINTS {
        return Err(Error::BudgetExceeded { what: "tensor rank family", needed: count, limit: MAX_POINTS });
    }
    let mut fam = discrete(field, *first)?;
    for &d in rest {
        fam = tensor_product(&fam, &discrete(field, d)?, TensorKind::Outer)?;
    }
    Ok(fam)
}

/// Points of the coordinate subspaces `<e_i : i in S>` for each set `S`.
pub fn combinatorial(field: &FiniteField, n: usize, sets: &[Vec<usize>]) -> Result<SpanningFamily> {
    let mut subspaces = Vec::new();
    for s in sets {
        let mut gens = Vec::new();
        for &i in s {
            if i >= n {
                return Err(Error::DimensionMismatch { expected: n, got: i + 1 });
            }
            gens.push(FqVector::unit(field, n, i));
        }
        subspaces.push(gens);
    }
    ppf(field, n, &subspaces)
}

/// Union of all points of the given subspaces (each given by generators).
pub fn ppf(field: &FiniteField, n: usize, subspaces: &[Vec<FqVector>]) -> Result<SpanningFamily> {
    let sp = Space::new(field, n);
    let mut vs = Vec::new();
    for gens in subspaces {
        let mut idx = span_indices(&sp, &gens.iter().map(|g| sp.encode(g.coords())).collect::<Vec<_>>());
        idx.sort_unstable();
        idx.dedup();
        vs.extend(idx.into_iter().map(|i| sp.vector(i)).filter(|v| v.is_canonical()));
    }
    SpanningFamily::new(field, n, vs)
}

/// Points of `f` followed by the new points of `g`.
pub fn union(f: &SpanningFamily, g: &SpanningFamily) -> Result<SpanningFamily> {
    if f.field != g.field {
        return Err(Error::FieldMismatch);
    }
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch { expected: f.dim, got: g.dim });
    }
    SpanningFamily::new(&f.field, f.dim, f.vectors().into_iter().chain(g.vectors()))
}

/// `f` on the first coordinates and `g` on the last ones.
pub fn disjoint_union(f: &SpanningFamily, g: &SpanningFamily) -> Result<SpanningFamily> {
    if f.field != g.field {
        return Err(Error::FieldMismatch);
    }
    let n = f.dim + g.dim;
    let mut vs = Vec::with_capacity(f.len() + g.len());
    for p in f.points() {
        let mut c = p.coords().to_vec();
        c.resize(n, 0);
        vs.push(FqVector::from_raw(&f.field, c));
    }
    for p in g.points() {
        let mut c = vec![0; f.dim];
        c.extend_from_slice(p.coords());
        vs.push(FqVector::from_raw(&f.field, c));
    }
    SpanningFamily::new(&f.field, n, vs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorKind {
    /// `f^T g` as an `N_f x N_g` matrix, flattened row-major.
    Outer,
    /// Kronecker product of `f` read as a `left.0 x left.1` matrix and `g`
    /// read as a `right.0 x right.1` matrix, flattened row-major.
    Kronecker { left: (usize, usize), right: (usize, usize) },
}

pub fn tensor_product(f: &SpanningFamily, g: &SpanningFamily, kind: TensorKind) -> Result<SpanningFamily> {
    if f.field != g.field {
        return Err(Error::FieldMismatch);
    }
    let fld = &f.field;
    let (n1, m1, n2, m2) = match kind {
        TensorKind::Outer => (f.dim, 1, 1, g.dim),
        TensorKind::Kronecker { left, right } => {
            if left.0 * left.1 != f.dim || right.0 * right.1 != g.dim {
                return Err(Error::ShapeMismatch(format!(
                    "{}x{} / {}x{} do not fit dimensions {} and {}",
                    left.0, left.1, right.0, right.1, f.dim, g.dim
                )));
            }
            (left.0, left.1, right.0, right.1)
        }
    };
    let cols = m1 * m2;
    let n = f.dim * g.dim;
    let mut vs = Vec::with_capacity(f.len() * g.len());
    for a in f.points() {
        for b in g.points() {
            let (a, b) = (a.coords(), b.coords());
            let mut c = vec![0u16; n];
            for i1 in 0..n1 {
                for j1 in 0..m1 {
                    let x = a[i1 * m1 + j1];
                    if x == 0 {
                        continue;
                    }
                    for i2 in 0..n2 {
                        for j2 in 0..m2 {
                            let (r, col) = (i1 * n2 + i2, j1 * m2 + j2);
                            c[r * cols + col] = fld.mul(x, b[i2 * m2 + j2]);
                        }
                    }
                }
            }
            vs.push(FqVector::from_raw(fld, c));
        }
    }
    SpanningFamily::new(fld, n, vs)
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
        .collect()
}

/// Builds a named family from `name:args`, e.g. `phase_rotation:4`,
/// `rank:2,3`, `sum_rank:2x2,1x3`, `tensor_rank:2,2,2`,
/// `combinatorial:4:0+1,2+3`.
pub fn named(field: &FiniteField, spec: &str) -> Result<SpanningFamily> {
    let (name, args) = spec.split_once(':').ok_or_else(|| Error::Parse(format!("expected name:args, got {spec:?}")))?;
    let pair = |a: &str| -> Result<(usize, usize)> {
        match parse_list(a)?.as_slice() {
            [m, n] => Ok((*m, *n)),
            _ => Err(Error::Parse(format!("{name} takes two sizes"))),
        }
    };
    let single = |a: &str| -> Result<usize> {
        a.trim().parse().map_err(|_| Error::Parse(format!("{name} takes one size")))
    };
    match name {
        "hamming" => hamming(field, single(args)?),
        "discrete" => discrete(field, single(args)?),
        "phase_rotation" => phase_rotation(field, single(args)?),
        "rank" => pair(args).and_then(|(m, n)| rank(field, m, n)),
        "row" => pair(args).and_then(|(m, n)| row(field, m, n)),
        "column" => pair(args).and_then(|(m, n)| column(field, m, n)),
        "cover" => pair(args).and_then(|(m, n)| cover(field, m, n)),
        "tensor_rank" => tensor_rank(field, &parse_list(args)?),
        "sum_rank" => {
            let blocks = args
                .split(',')
                .map(|b| {
                    let (m, n) = b.split_once('x').ok_or_else(|| Error::Parse(format!("bad block {b:?}")))?;
                    Ok((single(m)?, single(n)?))
                })
                .collect::<Result<Vec<_>>>()?;
            sum_rank(field, &blocks)
        }
        "combinatorial" => {
            let (n, sets) = args.split_once(':').ok_or_else(|| Error::Parse("combinatorial:N:sets".into()))?;
            let sets = sets
                .split(',')
                .map(|s| {
                    s.split('+')
                        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index {t:?}"))))
                        .collect()
                })
                .collect::<Result<Vec<Vec<usize>>>>()?;
            combinatorial(field, single(n)?, &sets)
        }
        _ => Err(Error::Parse(format!("unknown family {name:?}"))),
    }
}
