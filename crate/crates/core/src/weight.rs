//! Weights induced by a family, computed by breadth-first search.
//!
//! The weight of `x` is its distance from 0 in the Cayley graph of `F_q^N`
//! whose generators are all nonzero multiples of family points.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::family::SpanningFamily;
use crate::field::{FieldElement, FiniteField};
use crate::linalg::{in_span, FqVector, Space};
use crate::Budget;

/// Weight of vectors outside the span. Saturating arithmetic keeps it fixed.
pub const INF: u16 = u16::MAX;

#[inline]
pub fn sat_add(a: u16, b: u16) -> u16 {
    if a == INF || b == INF {
        INF
    } else {
        a.saturating_add(b).min(INF - 1)
    }
}

/// A weight for every vector of `F_q^N`, indexed by rank index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    space: Space,
    weights: Vec<u16>,
    spheres: Vec<u64>,
}

impl WeightTable {
    /// Wraps an arbitrary table; only its length is checked.
    pub fn from_weights(field: &FiniteField, dim: usize, weights: Vec<u16>) -> Result<Self> {
        let space = Space::new(field, dim);
        if space.size_u128() != weights.len() as u128 {
            return Err(Error::InvalidWeights(format!(
                "expected {} entries, got {}",
                space.size_u128(),
                weights.len()
            )));
        }
        let mut spheres = Vec::new();
        for &w in &weights {
            if w != INF {
                if spheres.len() <= w as usize {
                    spheres.resize(w as usize + 1, 0);
                }
                spheres[w as usize] += 1;
            }
        }
        Ok(WeightTable { space, weights, spheres })
    }

    pub fn field(&self) -> &FiniteField {
        &self.space.field
    }
    pub fn dim(&self) -> usize {
        self.space.dim
    }
    pub fn space(&self) -> &Space {
        &self.space
    }
    pub fn weights(&self) -> &[u16] {
        &self.weights
    }
    pub fn len(&self) -> usize {
        self.weights.len()
    }
    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    #[inline]
    pub fn at(&self, idx: usize) -> u16 {
        self.weights[idx]
    }

    pub fn weight(&self, x: &FqVector) -> u16 {
        self.weights[self.space.encode(x.coords())]
    }

    /// Largest finite weight.
    pub fn max_weight(&self) -> u16 {
        self.spheres.len().saturating_sub(1) as u16
    }

    pub fn is_finite(&self) -> bool {
        self.weights.iter().all(|&w| w != INF)
    }

    /// `|S_t|` for `t = 0..=max_weight`.
    pub fn sphere_sizes(&self) -> &[u64] {
        &self.spheres
    }

    /// `|B_t|` for `t = 0..=max_weight`.
    pub fn ball_sizes(&self) -> Vec<u64> {
        self.spheres
            .iter()
            .scan(0u64, |acc, &s| {
                *acc += s;
                Some(*acc)
            })
            .collect()
    }

    pub fn sphere(&self, t: u16) -> u64 {
        self.spheres.get(t as usize).copied().unwrap_or(0)
    }

    /// `|B_t|` for any `t` (saturates past the maximum weight).
    pub fn ball(&self, t: u16) -> u64 {
        self.spheres.iter().take(t as usize + 1).sum()
    }

    /// `t,sphere,ball` rows with a header line.
    pub fn sphere_csv(&self) -> String {
        let mut out = String::from("t,sphere,ball\n");
        for (t, (s, b)) in self.spheres.iter().zip(self.ball_sizes()).enumerate() {
            out.push_str(&format!("{t},{s},{b}\n"));
        }
        out
    }

    /// Little-endian `u32 q`, `u32 N`, then one `u16` weight per vector.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + 2 * self.weights.len());
        out.extend_from_slice(&self.field().q().to_le_bytes());
        out.extend_from_slice(&(self.dim() as u32).to_le_bytes());
        for &w in &self.weights {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 8 || bytes.len() % 2 != 0 {
            return Err(Error::InvalidWeights("truncated header".into()));
        }
        let q = u32::from_le_bytes(bytes[0..4].try_into().expect("4 bytes"));
        let n = u32::from_le_bytes(bytes[4..8].try_into().expect("4 bytes"));
        let field = FiniteField::with_order(q as u64)?;
        let w = bytes[8..].chunks_exact(2).map(|c| u16::from_le_bytes([c[0], c[1]])).collect();
        Self::from_weights(&field, n as usize, w)
    }
}

/// Hamming weight on `F_q^n`.
pub fn hamming_table(field: &FiniteField, n: usize, budget: &Budget) -> Result<WeightTable> {
    let sp = Space::new(field, n);
    budget.states("hamming table", sp.size_u128())?;
    let q = field.q() as usize;
    let size = sp.size_u128() as usize;
    let mut w = vec![0u16; size];
    for i in 1..size {
        // drop the lowest digit
        w[i] = w[i / q] + (i % q != 0) as u16;
    }
    WeightTable::from_weights(field, n, w)
}

/// Weight of every vector by multi-source BFS from 0.
pub fn weight_table(fam: &SpanningFamily, budget: &Budget) -> Result<WeightTable> {
    let sp = fam.space();
    budget.states("weight table", sp.size_u128())?;
    let size = sp.size_u128() as usize;
    let gens = fam.generator_indices();
    let mut w = vec![INF; size];
    w[0] = 0;
    let mut frontier = vec![0usize];
    let mut depth = 0u16;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &x in &frontier {
            for &g in &gens {
                let y = sp.add(x, g);
                if w[y] == INF {
                    w[y] = depth;
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    WeightTable::from_weights(fam.field(), fam.dim(), w)
}

/// Weight of a single vector by bidirectional search; no full table needed.
pub fn projective_weight(fam: &SpanningFamily, x: &FqVector, budget: &Budget) -> Result<u16> {
    if x.len() != fam.dim() {
        return Err(Error::DimensionMismatch { expected: fam.dim(), got: x.len() });
    }
    if !in_span(&fam.vectors(), x)? {
        return Ok(INF);
    }
    let sp = fam.space();
    let target = sp.encode(x.coords());
    if target == 0 {
        return Ok(0);
    }
    let gens = fam.generator_indices();
    let mut seen = [HashMap::from([(0usize, 0u16)]), HashMap::from([(target, 0u16)])];
    let mut frontier = [vec![0usize], vec![target]];
    let mut depth = [0u16, 0u16];
    loop {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        let other = 1 - side;
        depth[side] += 1;
        let mut next = Vec::new();
        let mut best = INF;
        for &a in &frontier[side] {
            for &g in &gens {
                let b = sp.add(a, g);
                if seen[side].contains_key(&b) {
                    continue;
                }
                seen[side].insert(b, depth[side]);
                if let Some(&d) = seen[other].get(&b) {
                    best = best.min(depth[side] + d);
                }
                next.push(b);
            }
        }
        if best != INF {
            return Ok(best);
        }
        let visited = (seen[0].len() + seen[1].len()) as u128;
        budget.states("bidirectional search", visited)?;
        frontier[side] = next;
    }
}

/// A shortest way to write `x` as `sum c_i f_i`, returned as `(c_i, i)` with
/// increasing `i`. Among shortest ones the index set is lexicographically
/// smallest (coefficients are then forced).
pub fn minimal_representation(
    fam: &SpanningFamily,
    table: &WeightTable,
    x: &FqVector,
) -> Result<Vec<(FieldElement, usize)>> {
    if table.dim() != fam.dim() || table.field() != fam.field() {
        return Err(Error::DimensionMismatch { expected: fam.dim(), got: table.dim() });
    }
    let sp = fam.space();
    let xi = sp.encode(x.coords());
    let w = table.at(xi);
    if w == INF {
        return Err(Error::NotInSpan);
    }
    let pts: Vec<usize> = fam.points().iter().map(|p| sp.encode(p.coords())).collect();
    let found = lex_min_rep(&sp, table, &pts, xi, w, 0).expect("a finite weight has a representation");
    let field = fam.field();
    Ok(found.into_iter().map(|(c, i)| (field.element(c as u64).expect("unit"), i)).collect())
}

fn lex_min_rep(sp: &Space, t: &WeightTable, pts: &[usize], x: usize, rem: u16, start: usize) -> Option<Vec<(u16, usize)>> {
    if rem == 0 {
        return (x == 0).then(Vec::new);
    }
    let neg = sp.field.neg(1);
    for i in start..pts.len() {
        let mut best: Option<Vec<(u16, usize)>> = None;
        for c in sp.field.units() {
            let y = sp.axpy(x, sp.field.mul(neg, c), pts[i]);
            if t.at(y) != rem - 1 {
                continue;
            }
            if let Some(mut tail) = lex_min_rep(sp, t, pts, y, rem - 1, i + 1) {
                tail.insert(0, (c, i));
                let better = match &best {
                    None => true,
                    Some(b) => tail.iter().map(|p| p.1).lt(b.iter().map(|p| p.1)),
                };
                if better {
                    best = Some(tail);
                }
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

/// Sphere sizes of a disjoint union: the convolution of the two profiles.
pub fn disjoint_union_spheres(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Every finite `x != 0` has a unit-weight `y` with `wt(x - y) = wt(x) - 1`.
pub fn is_convex(table: &WeightTable) -> bool {
    let sp = table.space();
    let units: Vec<usize> = (0..table.len()).filter(|&i| table.at(i) == 1).collect();
    (1..table.len()).all(|x| {
        let w = table.at(x);
        w == INF || w == 0 || units.iter().any(|&y| table.at(sp.sub(x, y)) == w - 1)
    })
}

/// Whether the table is a translation-invariant metric: positive off zero,
/// symmetric, and satisfying the triangle inequality. Quadratic in `q^N`.
pub fn is_metric(table: &WeightTable) -> bool {
    let sp = table.space();
    let n = table.len();
    if table.at(0) != 0 || (1..n).any(|x| table.at(x) == 0) {
        return false;
    }
    if (0..n).any(|x| table.at(sp.sub(0, x)) != table.at(x)) {
        return false;
    }
    (0..n).all(|x| (0..n).all(|y| table.at(sp.add(x, y)) <= sat_add(table.at(x), table.at(y))))
}

/// A pair of vectors and the quantity that failed for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub v1: FqVector,
    pub v2: FqVector,
    pub distance: u16,
    pub value: u16,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalityReport {
    pub correction_normal: bool,
    pub equal_detection_normal: bool,
    /// First pair with `tau != floor((d - 1) / 2)`; `value` is `tau`.
    pub correction_witness: Option<PairWitness>,
    /// First pair with `sigma_eq != 0` and `d != 2 sigma_eq`; `value` is `sigma_eq`.
    pub detection_witness: Option<PairWitness>,
    /// False when only a sample of pairs was examined.
    pub exhaustive: bool,
}

/// Largest radius at which balls around 0 and `u` stay disjoint, i.e.
/// `min_x max(wt(x), wt(u - x)) - 1`.
pub fn correction_capability(table: &WeightTable, u: usize) -> u16 {
    let sp = table.space();
    let m = (0..table.len()).map(|x| table.at(x).max(table.at(sp.sub(u, x)))).min().unwrap_or(INF);
    m.saturating_sub(1)
}

/// The radius `s` at which the balls `B_s(0)` and `B_s(u)` first touch
/// without overlapping the smaller balls, or 0 if there is none.
pub fn equal_detection_radius(table: &WeightTable, u: usize) -> u16 {
    let sp = table.space();
    let max = table.max_weight() as usize;
    // a[s] = min wt(u - x) over wt(x) <= s, b[s] = min wt(x) over wt(u - x) <= s
    let mut a = vec![INF; max + 1];
    let mut b = vec![INF; max + 1];
    for x in 0..table.len() {
        let (wx, wy) = (table.at(x), table.at(sp.sub(u, x)));
        if wx != INF {
            a[wx as usize] = a[wx as usize].min(wy);
        }
        if wy != INF {
            b[wy as usize] = b[wy as usize].min(wx);
        }
    }
    for s in 1..=max {
        a[s] = a[s].min(a[s - 1]);
        b[s] = b[s].min(b[s - 1]);
    }
    (1..=max).find(|&s| a[s] == s as u16 && b[s] == s as u16).map_or(0, |s| s as u16)
}

/// Checks both normality notions over all pairs `(0, u)`; translation
/// invariance covers every other pair. Above the search budget only an
/// evenly spaced sample of `u` is examined.
pub fn normality(table: &WeightTable, budget: &Budget) -> Result<NormalityReport> {
    let n = table.len();
    budget.states("normality", n as u128)?;
    let total = n as u128 * n as u128;
    let (step, exhaustive) = if total <= budget.max_search as u128 {
        (1, true)
    } else {
        let samples = (budget.max_search as usize / n).max(1);
        ((n / samples).max(1), false)
    };
    let sp = table.space();
    let mut report = NormalityReport {
        correction_normal: true,
        equal_detection_normal: true,
        correction_witness: None,
        detection_witness: None,
        exhaustive,
    };
    for u in (1..n).step_by(step) {
        let d = table.at(u);
        if d == INF {
            continue;
        }
        let tau = correction_capability(table, u);
        if report.correction_witness.is_none() && tau != (d - 1) / 2 {
            report.correction_normal = false;
            report.correction_witness =
                Some(PairWitness { v1: sp.vector(0), v2: sp.vector(u), distance: d, value: tau });
        }
        let sigma = equal_detection_radius(table, u);
        if report.detection_witness.is_none() && sigma != 0 && d != 2 * sigma {
            report.equal_detection_normal = false;
            report.detection_witness =
                Some(PairWitness { v1: sp.vector(0), v2: sp.vector(u), distance: d, value: sigma });
        }
    }
    Ok(report)
}

/// Ball size for `F + {f}` predicted from the tables of `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallEstimate {
    pub value: u64,
    /// True when `value` is exact (`2t <= wt_F(f)`); otherwise an upper bound.
    pub tight: bool,
}

/// `|S_t^F| + q |B_{t-1}^F|`. Exact for `t <= wt_F(f) / 2`, an upper bound
/// beyond. `f` must not already be a point of `F`.
pub fn add_vector_ball_sizes(fam: &SpanningFamily, table: &WeightTable, f: &FqVector, t: u16) -> Result<BallEstimate> {
    if fam.contains(f) || f.is_zero() {
        return Err(Error::PreconditionFailed("the added vector must be a new point".into()));
    }
    let wf = table.weight(f);
    let q = fam.field().q() as u64;
    let prev = if t == 0 { 0 } else { table.ball(t - 1) };
    let value = table.sphere(t) + q * prev;
    let tight = wf == INF || 2 * t as u32 <= wf as u32;
    Ok(BallEstimate { value, tight })
}

/// Table of `F + {f}` from the table of `F`:
/// `wt'(x) = min(wt(x), 1 + min_c wt(x - c f))`.
pub fn extend_table(table: &WeightTable, f: &FqVector) -> WeightTable {
    let sp = table.space();
    let fi = sp.encode(f.coords());
    let neg = sp.field.neg(1);
    let units: Vec<u16> = sp.field.units().collect();
    let w = (0..table.len())
        .map(|x| {
            let via = units.iter().map(|&c| table.at(sp.axpy(x, sp.field.mul(neg, c), fi))).min().unwrap_or(INF);
            table.at(x).min(sat_add(via, 1))
        })
        .collect();
    WeightTable::from_weights(&sp.field, sp.dim, w).expect("same shape")
}
