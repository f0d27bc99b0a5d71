//! Anticode numbers, Singleton-type bounds and the phase-rotation weight.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::family::SpanningFamily;
use crate::linalg::{rank_of, span_indices, FqVector, Space};
use crate::parent::{index_weight, min_hamming_distance, LinearCode, ParentFunction};
use crate::weight::WeightTable;
use crate::Budget;

/// `mu_F(t)` with a family subset realising it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mu {
    pub value: usize,
    /// Indices into the family of an independent set whose span lies in `B_t`.
    pub witness: Vec<usize>,
}

fn first_independent(fam: &SpanningFamily, k: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..fam.len() {
        if chosen.len() == k {
            break;
        }
        let mut rows: Vec<&[u16]> = chosen.iter().map(|&c| fam.point(c).coords()).collect();
        rows.push(fam.point(i).coords());
        if rank_of(fam.field(), fam.dim(), &rows) == rows.len() {
            chosen.push(i);
        }
    }
    chosen
}

/// Largest independent `G` inside `F` whose span lies in the ball `B_t`.
pub fn mu(fam: &SpanningFamily, table: &WeightTable, t: u16, budget: &Budget) -> Result<Mu> {
    let n = fam.dim();
    if t as usize >= n || t >= table.max_weight() {
        let witness = first_independent(fam, n);
        return Ok(Mu { value: witness.len(), witness });
    }
    // any t independent points have span inside B_t
    let witness = first_independent(fam, t as usize);
    let mut best = Mu { value: witness.len(), witness };
    let sp = fam.space();
    let pts: Vec<usize> = fam.points().iter().map(|p| sp.encode(p.coords())).collect();
    let mut nodes: u128 = 0;
    let mut chosen = Vec::new();
    mu_dfs(&sp, table, t, &pts, 0, &[0usize], &mut chosen, &mut best, &mut nodes, budget)?;
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
fn mu_dfs(
    sp: &Space,
    table: &WeightTable,
    t: u16,
    pts: &[usize],
    start: usize,
    span: &[usize],
    chosen: &mut Vec<usize>,
    best: &mut Mu,
    nodes: &mut u128,
    budget: &Budget,
) -> Result<()> {
    *nodes += 1;
    budget.search("mu search", *nodes)?;
    if chosen.len() > best.value {
        *best = Mu { value: chosen.len(), witness: chosen.clone() };
    }
    if chosen.len() == sp.dim {
        return Ok(());
    }
    let in_span: HashSet<usize> = span.iter().copied().collect();
    for i in start..pts.len() {
        if chosen.len() + (pts.len() - i) <= best.value {
            break;
        }
        if in_span.contains(&pts[i]) {
            continue;
        }
        let mut grown = span.to_vec();
        let mut ok = true;
        'outer: for lambda in sp.field.units() {
            for &s in span.iter() {
                let y = sp.axpy(s, lambda, pts[i]);
                if table.at(y) > t {
                    ok = false;
                    break 'outer;
                }
                grown.push(y);
            }
        }
        if !ok {
            continue;
        }
        chosen.push(i);
        mu_dfs(sp, table, t, pts, i + 1, &grown, chosen, best, nodes, budget)?;
        chosen.pop();
    }
    Ok(())
}

/// `mu_F(t)` for `t = 0..=max weight`.
pub fn mu_profile(fam: &SpanningFamily, table: &WeightTable, budget: &Budget) -> Result<Vec<usize>> {
    (0..=table.max_weight()).map(|t| mu(fam, table, t, budget).map(|m| m.value)).collect()
}

/// Both Singleton-type bounds on `|C|` for minimum distance `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingletonBound {
    pub mu: usize,
    /// `N - mu(d - 1)`.
    pub exponent: i64,
    /// `N - d + 1`, which may be negative.
    pub classical_exponent: i64,
    pub q: u32,
}

impl SingletonBound {
    pub fn value(&self) -> Option<u128> {
        pow_checked(self.q, self.exponent)
    }
    pub fn classical_value(&self) -> Option<u128> {
        pow_checked(self.q, self.classical_exponent)
    }
}

fn pow_checked(q: u32, e: i64) -> Option<u128> {
    if e < 0 {
        return None;
    }
    (q as u128).checked_pow(e as u32)
}

pub fn singleton_bound(fam: &SpanningFamily, table: &WeightTable, d: u16, budget: &Budget) -> Result<SingletonBound> {
    if d == 0 {
        return Err(Error::PreconditionFailed("distance must be positive".into()));
    }
    let m = mu(fam, table, d - 1, budget)?.value;
    let n = fam.dim() as i64;
    Ok(SingletonBound {
        mu: m,
        exponent: n - m as i64,
        classical_exponent: n - d as i64 + 1,
        q: fam.field().q(),
    })
}

/// Largest subspace found inside `B_t`, searched up to `dim_cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anticode {
    pub dim: usize,
    pub basis: Vec<FqVector>,
    /// True if the search stopped because it reached `dim_cap`.
    pub capped: bool,
}

/// Exhaustive search for the largest subspace contained in `B_t`.
pub fn exact_anticode_max(table: &WeightTable, t: u16, dim_cap: usize, budget: &Budget) -> Result<Anticode> {
    let sp = table.space().clone();
    let cands: Vec<usize> = (1..table.len())
        .filter(|&x| table.at(x) <= t && sp.vector(x).is_canonical())
        .collect();
    let mut best = Anticode { dim: 0, basis: Vec::new(), capped: dim_cap == 0 };
    if dim_cap == 0 {
        return Ok(best);
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut nodes: u128 = 0;
    let mut basis = Vec::new();
    anticode_dfs(&sp, table, t, dim_cap, &cands, vec![0], &mut basis, &mut best, &mut seen, &mut nodes, budget)?;
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
fn anticode_dfs(
    sp: &Space,
    table: &WeightTable,
    t: u16,
    cap: usize,
    cands: &[usize],
    span: Vec<usize>,
    basis: &mut Vec<usize>,
    best: &mut Anticode,
    seen: &mut HashSet<Vec<usize>>,
    nodes: &mut u128,
    budget: &Budget,
) -> Result<()> {
    *nodes += 1;
    budget.search("anticode search", *nodes)?;
    let k = basis.len();
    if k > best.dim {
        best.dim = k;
        best.basis = basis.iter().map(|&b| sp.vector(b)).collect();
        best.capped = k == cap;
    }
    if k == cap || best.capped {
        return Ok(());
    }
    let q = sp.field.q() as u128;
    // a (best+1)-dim superspace needs this many new canonical points
    let need = |m: usize| q.pow(k as u32) * (q.pow(m as u32) - 1) / (q - 1);
    if (cands.len() as u128) < need(best.dim + 1 - k) {
        return Ok(());
    }
    for (pos, &c) in cands.iter().enumerate() {
        let mut grown = span.clone();
        let mut ok = true;
        'outer: for lambda in sp.field.units() {
            for &s in &span {
                let y = sp.axpy(s, lambda, c);
                if table.at(y) > t {
                    ok = false;
                    break 'outer;
                }
                grown.push(y);
            }
        }
        if !ok {
            continue;
        }
        let mut key = grown.clone();
        key.sort_unstable();
        if !seen.insert(key.clone()) {
            continue;
        }
        let keyset: HashSet<usize> = key.iter().copied().collect();
        // later candidates that can still extend the grown span
        let next: Vec<usize> = cands[pos + 1..]
            .iter()
            .copied()
            .filter(|&d| !keyset.contains(&d))
            .filter(|&d| {
                sp.field.units().all(|lambda| grown.iter().all(|&s| table.at(sp.axpy(s, lambda, d)) <= t))
            })
            .collect();
        basis.push(c);
        anticode_dfs(sp, table, t, cap, &next, grown, basis, best, seen, nodes, budget)?;
        basis.pop();
        if best.capped {
            return Ok(());
        }
    }
    Ok(())
}

/// The family `{e_1..e_N, e_g, e_g + g}` over the points `g` of `G` with
/// Hamming weight at least 3, living in `F_q^{N + #g}`. Each such `g` gets
/// weight 2, so `G` sits inside `B_2`, while the parent code keeps distance
/// at least 6, which forces `mu(2) = 2`.
pub fn anticode_counterexample_family(g: &LinearCode, budget: &Budget) -> Result<SpanningFamily> {
    if g.dim() < 3 {
        return Err(Error::PreconditionFailed(format!("need dimension >= 3, got {}", g.dim())));
    }
    let fld = g.field();
    let n = g.len();
    let q = fld.q() as usize;
    let sp = Space::new(fld, n);
    let mut gs: Vec<usize> = g
        .codeword_indices(budget)?
        .into_iter()
        .filter(|&x| index_weight(q, x) >= 3 && sp.vector(x).is_canonical())
        .collect();
    gs.sort_unstable();
    let m = gs.len();
    let total = n + m;
    let mut vs: Vec<FqVector> = (0..total).map(|i| FqVector::unit(fld, total, i)).collect();
    for (j, &gi) in gs.iter().enumerate() {
        let mut c = sp.decode(gi);
        c.resize(total, 0);
        c[n + j] = 1;
        vs.push(FqVector::new(fld, c)?);
    }
    let fam = SpanningFamily::new(fld, total, vs)?;
    let d = min_hamming_distance(&ParentFunction::new(&fam).parent_code(), budget)?;
    if d < 6 {
        return Err(Error::PreconditionFailed(format!("parent code distance {d} < 6")));
    }
    Ok(fam)
}

/// Weight under the phase-rotation family:
/// `min(w_H(x), 1 + min_c w_H(x - c 1))`.
pub fn phase_weight(x: &FqVector) -> u16 {
    let f = x.field();
    let base = x.hamming_weight() as u16;
    f.units()
        .map(|c| x.coords().iter().filter(|&&xi| xi != c).count() as u16 + 1)
        .fold(base, u16::min)
}

/// `ceil(N - N/q)`, the largest phase-rotation weight.
pub fn phase_weight_max(q: u32, n: usize) -> u16 {
    let (q, n) = (q as usize, n);
    (n - n / q) as u16
}

/// Subspace spanned by the given vectors, as rank indices.
pub fn span_of(sp: &Space, vs: &[FqVector]) -> Vec<usize> {
    let mut s = span_indices(sp, &vs.iter().map(|v| sp.encode(v.coords())).collect::<Vec<_>>());
    s.sort_unstable();
    s.dedup();
    s
}
