//! Linear isometries between family metrics and monomial maps of codes.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::family::SpanningFamily;
use crate::field::FiniteField;
use crate::linalg::{rank_of, FqMatrix, FqVector, Space};
use crate::parent::{LinearCode, ParentFunction};
use crate::Budget;

/// `e_i -> scalars[i] * e_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialMap {
    pub perm: Vec<usize>,
    pub scalars: Vec<u16>,
}

impl MonomialMap {
    pub fn identity(n: usize) -> Self {
        MonomialMap { perm: (0..n).collect(), scalars: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }
    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn apply_raw(&self, f: &FiniteField, x: &[u16]) -> Vec<u16> {
        let mut y = vec![0u16; x.len()];
        for (i, &xi) in x.iter().enumerate() {
            y[self.perm[i]] = f.mul(self.scalars[i], xi);
        }
        y
    }

    pub fn apply(&self, x: &FqVector) -> FqVector {
        FqVector::new(x.field(), self.apply_raw(x.field(), x.coords())).expect("valid")
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self, f: &FiniteField) -> Self {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut scalars = vec![0; n];
        for i in 0..n {
            let j = other.perm[i];
            perm[i] = self.perm[j];
            scalars[i] = f.mul(self.scalars[j], other.scalars[i]);
        }
        MonomialMap { perm, scalars }
    }

    pub fn inverse(&self, f: &FiniteField) -> Self {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut scalars = vec![0; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            scalars[self.perm[i]] = f.inv(self.scalars[i]).expect("nonzero scalar");
        }
        MonomialMap { perm, scalars }
    }

    /// The `n x n` matrix acting on column vectors.
    pub fn matrix(&self, f: &FiniteField) -> FqMatrix {
        let n = self.len();
        let mut rows = vec![vec![0u16; n]; n];
        for i in 0..n {
            rows[self.perm[i]][i] = self.scalars[i];
        }
        FqMatrix::new(f, n, rows).expect("valid")
    }

    pub fn maps_code(&self, from: &LinearCode, to: &LinearCode) -> bool {
        let h = to.parity_check();
        from.basis().rows().iter().all(|r| h.apply(&self.apply_raw(from.field(), r)).iter().all(|&c| c == 0))
    }
}

/// An invertible linear map `x -> A x` (columns of `A` are images of `e_j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearIso {
    matrix: FqMatrix,
}

impl LinearIso {
    pub fn new(matrix: FqMatrix) -> Result<Self> {
        matrix.inverse()?;
        Ok(LinearIso { matrix })
    }

    pub fn matrix(&self) -> &FqMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &FqVector) -> FqVector {
        FqVector::new(x.field(), self.matrix.apply(x.coords())).expect("valid")
    }

    pub fn inverse(&self) -> Self {
        LinearIso { matrix: self.matrix.inverse().expect("invertible") }
    }

    pub fn compose(&self, other: &Self) -> Self {
        LinearIso { matrix: self.matrix.mul(&other.matrix).expect("same size") }
    }
}

/// Whether `l` maps the points of `f` exactly onto the points of `g`.
pub fn is_isometry(l: &LinearIso, f: &SpanningFamily, g: &SpanningFamily) -> bool {
    if f.len() != g.len() || f.dim() != g.dim() || l.matrix.nrows() != f.dim() {
        return false;
    }
    let mut hit = vec![false; g.len()];
    for p in f.points() {
        match g.position(&l.apply(p.rep())) {
            Some(j) if !hit[j] => hit[j] = true,
            _ => return false,
        }
    }
    true
}

/// The monomial map with `phi_G . lift = L . phi_F`.
pub fn lift(l: &LinearIso, f: &SpanningFamily, g: &SpanningFamily) -> Result<MonomialMap> {
    if !is_isometry(l, f, g) {
        return Err(Error::NotIsometry);
    }
    let fld = f.field();
    let mut perm = Vec::with_capacity(f.len());
    let mut scalars = Vec::with_capacity(f.len());
    for p in f.points() {
        let img = l.apply(p.rep());
        let j = g.position(&img).expect("checked");
        let (k, c) = img.leading().expect("nonzero");
        // g_j is canonical so its entry at k is the scale factor's inverse
        let lambda = fld.div(c, g.point(j).coords()[k]).expect("nonzero");
        perm.push(j);
        scalars.push(lambda);
    }
    Ok(MonomialMap { perm, scalars })
}

/// First independent `N`-subset of the family, by greedy scan.
fn greedy_basis(f: &SpanningFamily) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..f.len() {
        let mut rows: Vec<&[u16]> = chosen.iter().map(|&c| f.point(c).coords()).collect();
        rows.push(f.point(i).coords());
        if rank_of(f.field(), f.dim(), &rows) == rows.len() {
            chosen.push(i);
        }
    }
    chosen
}

/// Coordinates of `x` in the given basis (columns of `inv` invert it).
fn coords_in(inv: &FqMatrix, x: &[u16]) -> Vec<u16> {
    inv.apply(x)
}

/// Finds `L in GL(N)` with `L(F) = G`, or `None`.
///
/// Backtracks over images of a basis of `F`, pruning by the support
/// pattern of the remaining points, then over the basis scalars.
pub fn are_equivalent(f: &SpanningFamily, g: &SpanningFamily, budget: &Budget) -> Result<Option<LinearIso>> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch);
    }
    if f.dim() != g.dim() || f.len() != g.len() || f.rank() != g.rank() {
        return Ok(None);
    }
    if !f.is_spanning() {
        return Err(Error::PreconditionFailed("families must span".into()));
    }
    let fld = f.field().clone();
    let n = f.dim();
    let basis = greedy_basis(f);
    let bmat = FqMatrix::from_raw(&fld, n, basis.iter().map(|&i| f.point(i).coords().to_vec()).collect())
        .transpose();
    let binv = bmat.inverse()?;
    let others: Vec<usize> = (0..f.len()).filter(|i| !basis.contains(i)).collect();
    let f_coords: Vec<Vec<u16>> = others.iter().map(|&i| coords_in(&binv, f.point(i).coords())).collect();
    let support = |c: &[u16]| c.iter().map(|&x| x != 0).collect::<Vec<bool>>();
    let mut f_supports: Vec<Vec<bool>> = f_coords.iter().map(|c| support(c)).collect();
    f_supports.sort();

    let mut nodes: u128 = 0;
    let mut chosen: Vec<usize> = Vec::new();
    let mut result = None;
    search_basis_images(
        &mut SearchCtx { f, g, fld: &fld, f_coords: &f_coords, f_supports: &f_supports, budget, nodes: &mut nodes },
        &mut chosen,
        &mut result,
    )?;
    Ok(result)
}

struct SearchCtx<'a> {
    f: &'a SpanningFamily,
    g: &'a SpanningFamily,
    fld: &'a FiniteField,
    f_coords: &'a [Vec<u16>],
    f_supports: &'a [Vec<bool>],
    budget: &'a Budget,
    nodes: &'a mut u128,
}

fn search_basis_images(ctx: &mut SearchCtx<'_>, chosen: &mut Vec<usize>, out: &mut Option<LinearIso>) -> Result<()> {
    if out.is_some() {
        return Ok(());
    }
    *ctx.nodes += 1;
    ctx.budget.search("equivalence search", *ctx.nodes)?;
    let (g, fld) = (ctx.g, ctx.fld);
    let n = g.dim();
    if chosen.len() == n {
        let gmat = FqMatrix::from_raw(fld, n, chosen.iter().map(|&i| g.point(i).coords().to_vec()).collect())
            .transpose();
        let ginv = gmat.inverse().expect("independent");
        // support pattern of the other points of G in the image basis
        let mut g_supports: Vec<Vec<bool>> = (0..g.len())
            .filter(|i| !chosen.contains(i))
            .map(|i| ginv.apply(g.point(i).coords()).iter().map(|&x| x != 0).collect())
            .collect();
        g_supports.sort();
        if g_supports != ctx.f_supports {
            return Ok(());
        }
        // scalars: lambda_0 = 1, the rest enumerated
        let units: Vec<u16> = fld.units().collect();
        let mut lambdas = vec![1u16; n];
        let total = (units.len() as u128).pow(n.saturating_sub(1) as u32);
        for code in 0..total {
            let mut c = code;
            for l in lambdas.iter_mut().skip(1) {
                *l = units[(c % units.len() as u128) as usize];
                c /= units.len() as u128;
            }
            *ctx.nodes += 1;
            ctx.budget.search("equivalence search", *ctx.nodes)?;
            // L sends basis_j of F to lambda_j * g_{chosen_j}: A = G Lambda B^{-1}
            let ok = ctx.f_coords.iter().all(|c| {
                let img: Vec<u16> = (0..n)
                    .fold(vec![0u16; n], |mut acc, j| {
                        let s = fld.mul(c[j], lambdas[j]);
                        if s != 0 {
                            for (a, &b) in acc.iter_mut().zip(g.point(chosen[j]).coords()) {
                                *a = fld.add(*a, fld.mul(s, b));
                            }
                        }
                        acc
                    });
                g.position(&FqVector::new(fld, img).expect("valid")).is_some()
            });
            if ok {
                let cols: Vec<Vec<u16>> =
                    (0..n).map(|j| g.point(chosen[j]).scale(lambdas[j]).into_coords()).collect();
                let gl = FqMatrix::from_raw(fld, n, cols).transpose();
                let f_basis = greedy_basis(ctx.f);
                let bmat = FqMatrix::from_raw(
                    fld,
                    n,
                    f_basis.iter().map(|&i| ctx.f.point(i).coords().to_vec()).collect(),
                )
                .transpose();
                let a = gl.mul(&bmat.inverse()?)?;
                let iso = LinearIso::new(a)?;
                debug_assert!(is_isometry(&iso, ctx.f, g));
                *out = Some(iso);
                return Ok(());
            }
        }
        return Ok(());
    }
    for j in 0..g.len() {
        if chosen.contains(&j) {
            continue;
        }
        let mut rows: Vec<&[u16]> = chosen.iter().map(|&c| g.point(c).coords()).collect();
        rows.push(g.point(j).coords());
        if rank_of(fld, n, &rows) < rows.len() {
            continue;
        }
        chosen.push(j);
        search_basis_images(ctx, chosen, out)?;
        chosen.pop();
        if out.is_some() {
            return Ok(());
        }
    }
    Ok(())
}

/// Per-coordinate invariants preserved by monomial maps: for each weight,
/// how many codewords of that weight are nonzero at the coordinate.
fn coordinate_profiles(words: &[Vec<u16>], n: usize) -> Vec<Vec<u32>> {
    let mut prof = vec![vec![0u32; n + 1]; n];
    for w in words {
        let wt = w.iter().filter(|&&c| c != 0).count();
        for (i, &c) in w.iter().enumerate() {
            if c != 0 {
                prof[i][wt] += 1;
            }
        }
    }
    prof
}

/// For each pair of coordinates, how many minimum-weight codewords are
/// nonzero at both.
fn pair_profiles(words: &[Vec<u16>], n: usize) -> Vec<Vec<u32>> {
    let dmin = words.iter().map(|w| w.iter().filter(|&&c| c != 0).count()).filter(|&w| w > 0).min();
    let mut pp = vec![vec![0u32; n]; n];
    if let Some(d) = dmin {
        for w in words.iter().filter(|w| w.iter().filter(|&&c| c != 0).count() == d) {
            let supp: Vec<usize> = (0..n).filter(|&i| w[i] != 0).collect();
            for &a in &supp {
                for &b in &supp {
                    pp[a][b] += 1;
                }
            }
        }
    }
    pp
}

struct MonoCtx<'a> {
    field: &'a FiniteField,
    n: usize,
    from: &'a [&'a LinearCode],
    to: &'a [&'a LinearCode],
    prof_from: Vec<Vec<Vec<u32>>>,
    prof_to: Vec<Vec<Vec<u32>>>,
    pair_from: Vec<Vec<Vec<u32>>>,
    pair_to: Vec<Vec<Vec<u32>>>,
    budget: &'a Budget,
    nodes: u128,
    first_only: bool,
    found: Vec<MonomialMap>,
}

/// All monomial maps sending `from[k]` onto `to[k]` for every `k`, in
/// lexicographic order of `(perm, scalars)`.
fn monomial_search(
    from: &[&LinearCode],
    to: &[&LinearCode],
    budget: &Budget,
    first_only: bool,
) -> Result<Vec<MonomialMap>> {
    let field = from[0].field();
    let n = from[0].len();
    for (a, b) in from.iter().zip(to) {
        if a.len() != n || b.len() != n || a.field() != field || b.field() != field {
            return Err(Error::DimensionMismatch { expected: n, got: b.len() });
        }
        if a.dim() != b.dim() {
            return Ok(Vec::new());
        }
    }
    let words = |c: &LinearCode| -> Result<Vec<Vec<u16>>> {
        Ok(c.codewords(budget)?.into_iter().map(|w| w.into_coords()).collect())
    };
    let (mut prof_from, mut prof_to, mut pair_from, mut pair_to) = (vec![], vec![], vec![], vec![]);
    for (a, b) in from.iter().zip(to) {
        let (wa, wb) = (words(a)?, words(b)?);
        prof_from.push(coordinate_profiles(&wa, n));
        prof_to.push(coordinate_profiles(&wb, n));
        pair_from.push(pair_profiles(&wa, n));
        pair_to.push(pair_profiles(&wb, n));
    }
    let mut ctx = MonoCtx {
        field,
        n,
        from,
        to,
        prof_from,
        prof_to,
        pair_from,
        pair_to,
        budget,
        nodes: 0,
        first_only,
        found: Vec::new(),
    };
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    perm_search(&mut ctx, &mut perm, &mut used)?;
    Ok(ctx.found)
}

fn perm_search(ctx: &mut MonoCtx<'_>, perm: &mut Vec<usize>, used: &mut [bool]) -> Result<()> {
    if ctx.first_only && !ctx.found.is_empty() {
        return Ok(());
    }
    ctx.nodes += 1;
    ctx.budget.search("monomial search", ctx.nodes)?;
    let i = perm.len();
    if i == ctx.n {
        let perm = perm.clone();
        return scalar_search(ctx, &perm);
    }
    for j in 0..ctx.n {
        if used[j] {
            continue;
        }
        let fits = (0..ctx.from.len()).all(|k| {
            ctx.prof_from[k][i] == ctx.prof_to[k][j]
                && (0..i).all(|a| ctx.pair_from[k][a][i] == ctx.pair_to[k][perm[a]][j])
                && ctx.pair_from[k][i][i] == ctx.pair_to[k][j][j]
        });
        if !fits {
            continue;
        }
        used[j] = true;
        perm.push(j);
        perm_search(ctx, perm, used)?;
        perm.pop();
        used[j] = false;
    }
    Ok(())
}

/// Given the permutation, enumerates scalars coordinate by coordinate and
/// checks each parity equation as soon as all its coordinates are fixed.
fn scalar_search(ctx: &mut MonoCtx<'_>, perm: &[usize]) -> Result<()> {
    let f = ctx.field;
    let n = ctx.n;
    // constraint: sum_i h[perm[i]] * lambda_i * c_i = 0 for each generator c of
    // `from` and parity row h of `to`; terms (i, h[perm[i]] * c_i)
    let mut constraints: Vec<(usize, Vec<(usize, u16)>)> = Vec::new();
    for (a, b) in ctx.from.iter().zip(ctx.to) {
        let h = b.parity_check();
        for c in a.basis().rows() {
            for hr in h.rows() {
                let terms: Vec<(usize, u16)> =
                    (0..n).map(|i| (i, f.mul(hr[perm[i]], c[i]))).filter(|t| t.1 != 0).collect();
                if let Some(last) = terms.last().map(|t| t.0) {
                    constraints.push((last, terms));
                }
            }
        }
    }
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, (last, _)) in constraints.iter().enumerate() {
        by_last[*last].push(k);
    }
    let mut lambdas = vec![0u16; n];
    scalar_step(ctx, perm, &constraints, &by_last, &mut lambdas, 0)
}

fn scalar_step(
    ctx: &mut MonoCtx<'_>,
    perm: &[usize],
    cons: &[(usize, Vec<(usize, u16)>)],
    by_last: &[Vec<usize>],
    lambdas: &mut [u16],
    i: usize,
) -> Result<()> {
    if ctx.first_only && !ctx.found.is_empty() {
        return Ok(());
    }
    if i == ctx.n {
        ctx.found.push(MonomialMap { perm: perm.to_vec(), scalars: lambdas.to_vec() });
        return Ok(());
    }
    let f = ctx.field;
    for l in f.units() {
        ctx.nodes += 1;
        ctx.budget.search("monomial search", ctx.nodes)?;
        lambdas[i] = l;
        let ok = by_last[i].iter().all(|&k| {
            cons[k].1.iter().fold(0u16, |acc, &(j, c)| f.add(acc, f.mul(c, lambdas[j]))) == 0
        });
        if ok {
            scalar_step(ctx, perm, cons, by_last, lambdas, i + 1)?;
        }
    }
    Ok(())
}

/// The monomial automorphism group of a code, `n <= 8` by default budget.
pub fn hamming_stabilizer(code: &LinearCode, budget: &Budget) -> Result<Vec<MonomialMap>> {
    monomial_search(&[code], &[code], budget, false)
}

/// Monomial maps fixing every code in the list.
pub fn joint_stabilizer(codes: &[&LinearCode], budget: &Budget) -> Result<Vec<MonomialMap>> {
    if codes.is_empty() {
        return Err(Error::EmptyFamily);
    }
    monomial_search(codes, codes, budget, false)
}

/// A monomial map sending `a` onto `b`, if one exists.
pub fn are_hamming_equivalent(a: &LinearCode, b: &LinearCode, budget: &Budget) -> Result<Option<MonomialMap>> {
    Ok(monomial_search(&[a], &[b], budget, true)?.into_iter().next())
}

/// Pushes a monomial map of the parent space down to `F_q^N`:
/// `L f_i = lambda_i f_{perm(i)}`. Fails if that is not well defined.
pub fn push_down(m: &MonomialMap, fam: &SpanningFamily) -> Result<LinearIso> {
    let fld = fam.field();
    let n = fam.dim();
    let basis = greedy_basis(fam);
    if basis.len() < n {
        return Err(Error::PreconditionFailed("family must span".into()));
    }
    let b = FqMatrix::from_raw(fld, n, basis.iter().map(|&i| fam.point(i).coords().to_vec()).collect()).transpose();
    let imgs = FqMatrix::from_raw(
        fld,
        n,
        basis.iter().map(|&i| fam.point(m.perm[i]).scale(m.scalars[i]).into_coords()).collect(),
    )
    .transpose();
    let a = imgs.mul(&b.inverse()?)?;
    let l = LinearIso::new(a).map_err(|_| Error::NotIsometry)?;
    for (i, p) in fam.points().iter().enumerate() {
        if l.apply(p.rep()) != fam.point(m.perm[i]).scale(m.scalars[i]) {
            return Err(Error::NotIsometry);
        }
    }
    Ok(l)
}

/// Linear isometries of the family metric, obtained from the monomial
/// stabilizer of the parent code. Same order and length as that stabilizer.
pub fn aut_group(fam: &SpanningFamily, budget: &Budget) -> Result<Vec<LinearIso>> {
    let pc = ParentFunction::new(fam).parent_code();
    hamming_stabilizer(&pc, budget)?.iter().map(|m| push_down(m, fam)).collect()
}

/// Enumerates `GL(N)` directly and keeps maps sending the family to itself.
/// Only for tiny spaces; used to cross-check [`aut_group`].
pub fn aut_group_brute_force(fam: &SpanningFamily, budget: &Budget) -> Result<Vec<LinearIso>> {
    let fld = fam.field();
    let n = fam.dim();
    let sp = Space::new(fld, n * n);
    budget.search("matrix enumeration", sp.size_u128())?;
    let mut out = Vec::new();
    for idx in 0..sp.size_u128() as usize {
        let c = sp.decode(idx);
        let m = FqMatrix::from_raw(fld, n, c.chunks(n).map(|r| r.to_vec()).collect());
        if let Ok(l) = LinearIso::new(m) {
            if is_isometry(&l, fam, fam) {
                out.push(l);
            }
        }
    }
    Ok(out)
}

/// Orbits of the isometry group on the vectors, keyed by rank index.
pub fn orbit_representatives(fam: &SpanningFamily, group: &[LinearIso]) -> HashMap<usize, usize> {
    let sp = fam.space();
    let mut rep = HashMap::new();
    for x in 0..sp.size_u128() as usize {
        if rep.contains_key(&x) {
            continue;
        }
        let v = sp.vector(x);
        for l in group {
            rep.entry(sp.encode(l.apply(&v).coords())).or_insert(x);
        }
        rep.entry(x).or_insert(x);
    }
    rep
}
