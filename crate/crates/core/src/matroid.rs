//! Linear matroids of families, the extended family, and ball sizes by
//! inclusion-exclusion over spans.

use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::family::{projective_points, SpanningFamily};
use crate::linalg::{dot_raw, rank_of, FqMatrix};
use crate::Budget;

/// Subsets of the ground set, bit `i` for element `i`.
pub type Mask = u128;

const MAX_GROUND: usize = 128;

/// The matroid of the points of a family: independence is linear independence.
pub struct LinearMatroid {
    fam: SpanningFamily,
    cache: Mutex<HashMap<Mask, usize>>,
}

impl std::fmt::Debug for LinearMatroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinearMatroid({:?})", self.fam)
    }
}

pub fn mask_of(idx: &[usize]) -> Mask {
    idx.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn members(mask: Mask) -> Vec<usize> {
    (0..MAX_GROUND).filter(|&i| mask >> i & 1 == 1).collect()
}

impl LinearMatroid {
    pub fn new(fam: &SpanningFamily) -> Result<Self> {
        if fam.len() > MAX_GROUND {
            return Err(Error::BudgetExceeded {
                what: "matroid ground set",
                needed: fam.len() as u128,
                limit: MAX_GROUND as u128,
            });
        }
        Ok(LinearMatroid { fam: fam.clone(), cache: Mutex::new(HashMap::new()) })
    }

    pub fn family(&self) -> &SpanningFamily {
        &self.fam
    }
    pub fn len(&self) -> usize {
        self.fam.len()
    }
    pub fn is_empty(&self) -> bool {
        self.fam.is_empty()
    }
    pub fn full(&self) -> Mask {
        if self.len() == MAX_GROUND {
            Mask::MAX
        } else {
            (1 << self.len()) - 1
        }
    }

    pub fn rank(&self, mask: Mask) -> usize {
        if let Some(&r) = self.cache.lock().expect("poisoned").get(&mask) {
            return r;
        }
        let rows: Vec<&[u16]> = members(mask).into_iter().map(|i| self.fam.point(i).coords()).collect();
        let r = rank_of(self.fam.field(), self.fam.dim(), &rows);
        self.cache.lock().expect("poisoned").insert(mask, r);
        r
    }

    pub fn rank_of(&self, idx: &[usize]) -> usize {
        self.rank(mask_of(idx))
    }

    pub fn independent(&self, idx: &[usize]) -> bool {
        self.rank_of(idx) == idx.len()
    }

    pub fn is_independent(&self, mask: Mask) -> bool {
        self.rank(mask) == mask.count_ones() as usize
    }

    /// Minimal dependent sets of size at most `max_size`, by size then lex.
    pub fn circuits(&self, max_size: usize, budget: &Budget) -> Result<Vec<Vec<usize>>> {
        let mut found: Vec<Mask> = Vec::new();
        let mut out = Vec::new();
        let mut visited: u128 = 0;
        for k in 1..=max_size.min(self.len()) {
            for c in (0..self.len()).combinations(k) {
                visited += 1;
                budget.search("circuit enumeration", visited)?;
                let m = mask_of(&c);
                if found.iter().any(|&f| (f & m) == f) {
                    continue;
                }
                if self.rank(m) == k - 1 {
                    found.push(m);
                    out.push(c);
                }
            }
        }
        Ok(out)
    }
}

/// Canonical normal vectors of the hyperplanes spanned by `N - 1`
/// independent family points.
pub fn hyperplane_normals(fam: &SpanningFamily, budget: &Budget) -> Result<Vec<Vec<u16>>> {
    let n = fam.dim();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut visited: u128 = 0;
    for c in (0..fam.len()).combinations(n - 1) {
        visited += 1;
        budget.search("hyperplane enumeration", visited)?;
        let rows: Vec<Vec<u16>> = c.iter().map(|&i| fam.point(i).coords().to_vec()).collect();
        let m = FqMatrix::new(fam.field(), n, rows)?;
        let k = m.kernel();
        if k.nrows() != 1 {
            continue;
        }
        let normal = k.row(0).canonical().into_coords();
        if seen.insert(normal.clone()) {
            out.push(normal);
        }
    }
    Ok(out)
}

/// All points that are intersections of family hyperplanes, in rank-index
/// order. A point `p` qualifies exactly when the normals vanishing at `p`
/// have rank `N - 1`. For `N <= 2` this is the family itself.
pub fn extended_family(fam: &SpanningFamily, budget: &Budget) -> Result<SpanningFamily> {
    if !fam.is_spanning() {
        return Err(Error::PreconditionFailed("family must span".into()));
    }
    let n = fam.dim();
    if n <= 2 {
        return Ok(fam.sorted());
    }
    let normals = hyperplane_normals(fam, budget)?;
    let pts = projective_points(fam.field(), n)?;
    budget.search("extension scan", pts.len() as u128 * normals.len() as u128)?;
    let f = fam.field();
    let mut keep = Vec::new();
    for p in pts {
        let through: Vec<&[u16]> =
            normals.iter().filter(|h| dot_raw(f, h, p.coords()) == 0).map(|h| h.as_slice()).collect();
        if through.len() >= n - 1 && rank_of(f, n, &through) == n - 1 {
            keep.push(p);
        }
    }
    SpanningFamily::new(f, n, keep)
}

/// Whether `fam` already contains every point of its extension.
pub fn is_closed(fam: &SpanningFamily, budget: &Budget) -> Result<bool> {
    Ok(extended_family(fam, budget)?.len() == fam.len())
}

/// Element-level invariant: number of independent sets of each size that
/// contain the element.
fn element_profiles(m: &LinearMatroid, colors: &[u32], budget: &Budget) -> Result<Vec<(u32, Vec<u64>)>> {
    let n = m.len();
    let r = m.rank(m.full());
    let mut prof = vec![vec![0u64; r + 1]; n];
    let mut visited: u128 = 0;
    for k in 1..=r {
        for c in (0..n).combinations(k) {
            visited += 1;
            budget.search("matroid profile", visited)?;
            if m.independent(&c) {
                for &i in &c {
                    prof[i][k] += 1;
                }
            }
        }
    }
    Ok(colors.iter().copied().zip(prof).collect())
}

struct IsoCtx<'a> {
    a: &'a LinearMatroid,
    b: &'a LinearMatroid,
    pa: Vec<(u32, Vec<u64>)>,
    pb: Vec<(u32, Vec<u64>)>,
    rank: usize,
    budget: &'a Budget,
    nodes: u128,
}

fn iso_search(ctx: &mut IsoCtx<'_>, map: &mut Vec<usize>, used: &mut [bool]) -> Result<bool> {
    ctx.nodes += 1;
    ctx.budget.search("matroid isomorphism", ctx.nodes)?;
    let i = map.len();
    if i == ctx.a.len() {
        return Ok(true);
    }
    for j in 0..ctx.b.len() {
        if used[j] || ctx.pa[i] != ctx.pb[j] {
            continue;
        }
        map.push(j);
        // every subset of assigned elements containing i, up to size rank + 1
        let ok = (0..=ctx.rank.min(i)).all(|k| {
            (0..i).combinations(k).all(|mut s| {
                s.push(i);
                let img: Vec<usize> = s.iter().map(|&x| map[x]).collect();
                ctx.a.independent(&s) == ctx.b.independent(&img)
            })
        });
        if ok {
            used[j] = true;
            if iso_search(ctx, map, used)? {
                return Ok(true);
            }
            used[j] = false;
        }
        map.pop();
    }
    Ok(false)
}

fn colored_isomorphism(
    a: &LinearMatroid,
    ca: &[u32],
    b: &LinearMatroid,
    cb: &[u32],
    budget: &Budget,
) -> Result<Option<Vec<usize>>> {
    if a.len() != b.len() || a.rank(a.full()) != b.rank(b.full()) {
        return Ok(None);
    }
    let (pa, pb) = (element_profiles(a, ca, budget)?, element_profiles(b, cb, budget)?);
    let (mut sa, mut sb) = (pa.clone(), pb.clone());
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(None);
    }
    let rank = a.rank(a.full());
    let mut ctx = IsoCtx { a, b, pa, pb, rank, budget, nodes: 0 };
    let mut map = Vec::new();
    let mut used = vec![false; b.len()];
    Ok(iso_search(&mut ctx, &mut map, &mut used)?.then_some(map))
}

/// A bijection of ground sets preserving independence, if one exists.
pub fn matroid_isomorphic(a: &LinearMatroid, b: &LinearMatroid, budget: &Budget) -> Result<Option<Vec<usize>>> {
    colored_isomorphism(a, &vec![0; a.len()], b, &vec![0; b.len()], budget)
}

/// An isomorphism of the extended matroids carrying `F` onto `G`; the map
/// is given on indices of the two extended families.
pub fn extended_matroid_equivalent(
    f: &SpanningFamily,
    g: &SpanningFamily,
    budget: &Budget,
) -> Result<Option<Vec<usize>>> {
    let (ef, eg) = (extended_family(f, budget)?, extended_family(g, budget)?);
    let color = |ext: &SpanningFamily, base: &SpanningFamily| -> Vec<u32> {
        ext.points().iter().map(|p| base.contains(p.rep()) as u32).collect()
    };
    let (ca, cb) = (color(&ef, f), color(&eg, g));
    colored_isomorphism(&LinearMatroid::new(&ef)?, &ca, &LinearMatroid::new(&eg)?, &cb, budget)
}

/// `|B_t|` from the extended matroid alone: inclusion-exclusion over the
/// distinct spans of independent `t`-subsets of `F`, with each
/// intersection measured as `q^rank` of the extended points it contains.
pub fn ball_sizes_via_extended_matroid(fam: &SpanningFamily, t: usize, budget: &Budget) -> Result<u128> {
    let n = fam.dim();
    let q = fam.field().q() as u128;
    if t == 0 {
        return Ok(1);
    }
    if t >= n {
        return Ok(q.pow(n as u32));
    }
    let ext = extended_family(fam, budget)?;
    let m = LinearMatroid::new(&ext)?;
    let idx_in_ext: Vec<usize> = fam.points().iter().map(|p| ext.position(p.rep()).expect("F in ext")).collect();
    // distinct spans, each recorded as the set of extended points inside it
    let mut spans: Vec<Mask> = Vec::new();
    let mut seen = HashSet::new();
    let mut visited: u128 = 0;
    for c in (0..fam.len()).combinations(t) {
        visited += 1;
        budget.search("independent t-sets", visited)?;
        let base = mask_of(&c.iter().map(|&i| idx_in_ext[i]).collect::<Vec<_>>());
        if m.rank(base) != t {
            continue;
        }
        let inside = (0..ext.len()).filter(|&k| m.rank(base | 1 << k) == t).fold(0 as Mask, |acc, k| acc | 1 << k);
        if seen.insert(inside) {
            spans.push(inside);
        }
    }
    // g(mask, j) = sum over T within spans[j..] of (-1)^|T| q^{rank(mask & meet T)}
    let mut memo: HashMap<(Mask, usize), i128> = HashMap::new();
    let full = m.full();
    let total = alternating(&m, &spans, q as i128, full, 0, &mut memo, budget)?;
    Ok((q.pow(n as u32) as i128 - total) as u128)
}

fn alternating(
    m: &LinearMatroid,
    spans: &[Mask],
    q: i128,
    mask: Mask,
    j: usize,
    memo: &mut HashMap<(Mask, usize), i128>,
    budget: &Budget,
) -> Result<i128> {
    let r = m.rank(mask);
    if r == 0 {
        // every further intersection is {0}: the alternating sum collapses
        return Ok((j == spans.len()) as i128);
    }
    if j == spans.len() {
        return Ok(q.pow(r as u32));
    }
    if let Some(&v) = memo.get(&(mask, j)) {
        return Ok(v);
    }
    budget.search("inclusion-exclusion states", memo.len() as u128 + 1)?;
    let without = alternating(m, spans, q, mask, j + 1, memo, budget)?;
    let with = alternating(m, spans, q, mask & spans[j], j + 1, memo, budget)?;
    let v = without - with;
    memo.insert((mask, j), v);
    Ok(v)
}
