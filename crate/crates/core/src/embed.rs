//! Embedding arbitrary scale-invariant weights into family metrics.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::family::{hamming, projective_points, SpanningFamily};
use crate::field::FiniteField;
use crate::linalg::{for_each_image, FqMatrix, FqVector, Space};
use crate::parent::LinearCode;
use crate::weight::{sat_add, weight_table, WeightTable, INF};
use crate::Budget;

/// A translation-invariant, scale-invariant metric on `F_q^n`, given as a
/// weight for every vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSpace {
    table: WeightTable,
}

impl WeightedSpace {
    /// Validates `wt(0) = 0`, positivity, `wt(c x) = wt(x)` and the
    /// triangle inequality.
    pub fn new(field: &FiniteField, n: usize, weights: Vec<u16>, budget: &Budget) -> Result<Self> {
        let table = WeightTable::from_weights(field, n, weights)?;
        let sp = table.space().clone();
        budget.search("triangle check", sp.size_u128() * sp.size_u128())?;
        if table.at(0) != 0 {
            return Err(Error::InvalidWeights("wt(0) must be 0".into()));
        }
        for x in 1..table.len() {
            let w = table.at(x);
            if w == 0 || w == INF {
                return Err(Error::InvalidWeights(format!("wt({:?}) must be positive and finite", sp.vector(x))));
            }
            for c in field.units() {
                if table.at(sp.scale(c, x)) != w {
                    return Err(Error::InvalidWeights(format!("wt is not scale invariant at {:?}", sp.vector(x))));
                }
            }
        }
        for x in 0..table.len() {
            for y in x..table.len() {
                let s = table.at(sp.add(x, y));
                if s > sat_add(table.at(x), table.at(y)) {
                    return Err(Error::TriangleViolated(vec![table.at(x) as u32, table.at(y) as u32, s as u32]));
                }
            }
        }
        Ok(WeightedSpace { table })
    }

    /// Weights of the canonical points of `F_q^n`, in rank-index order,
    /// extended by scale invariance. No validation beyond the shape.
    pub fn from_point_weights(field: &FiniteField, n: usize, point_weights: &[u16], budget: &Budget) -> Result<Self> {
        let pts = projective_points(field, n)?;
        if pts.len() != point_weights.len() {
            return Err(Error::InvalidWeights(format!("expected {} point weights", pts.len())));
        }
        let sp = Space::new(field, n);
        let mut w = vec![0u16; sp.size_u128() as usize];
        for (p, &t) in pts.iter().zip(point_weights) {
            let i = sp.encode(p.coords());
            for c in field.units() {
                w[sp.scale(c, i)] = t;
            }
        }
        Self::new(field, n, w, budget)
    }

    pub fn table(&self) -> &WeightTable {
        &self.table
    }
    pub fn field(&self) -> &FiniteField {
        self.table.field()
    }
    pub fn dim(&self) -> usize {
        self.table.dim()
    }
}

/// All points of `V` with their weights; the free weight of
/// `sum x_i v_i` is `sum_{x_i != 0} t_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeWeightedSpace {
    pub reps: Vec<FqVector>,
    pub t: Vec<u16>,
}

impl FreeWeightedSpace {
    pub fn weight(&self, x: &[u16]) -> u32 {
        x.iter().zip(&self.t).filter(|(&c, _)| c != 0).map(|(_, &t)| t as u32).sum()
    }
}

pub fn free_weighted_space(v: &WeightedSpace) -> Result<FreeWeightedSpace> {
    let reps = projective_points(v.field(), v.dim())?;
    let t = reps.iter().map(|r| v.table.weight(r)).collect();
    Ok(FreeWeightedSpace { reps, t })
}

/// `V` inside the family metric on `W = F^r / rho(ker phi)`.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub free: FreeWeightedSpace,
    /// `sum t_i`.
    pub r: usize,
    /// `dim W - dim V`.
    pub a: usize,
    /// `r - dim W`.
    pub b: usize,
    /// `n x dim W`; row `k` is the image of `e_k`.
    pub iota: FqMatrix,
    /// `r x dim W`; row `j` is the image of `e_j`.
    pub psi: FqMatrix,
    /// The family on `W`: the distinct rows of `psi`.
    pub target: SpanningFamily,
    /// Every vector of `V` keeps its weight.
    pub verified: bool,
}

impl Embedding {
    pub fn apply(&self, x: &FqVector) -> FqVector {
        FqVector::new(x.field(), self.iota.left_apply(x.coords())).expect("valid")
    }
}

/// Builds the embedding through the free weighted space and checks it:
/// for each `x`, the least Hamming weight over the fibre of `iota(x)`
/// must equal `wt_V(x)`.
pub fn embed_into_projective(v: &WeightedSpace, budget: &Budget) -> Result<Embedding> {
    let f = v.field().clone();
    let n = v.dim();
    let free = free_weighted_space(v)?;
    let m = free.reps.len();
    let r: usize = free.t.iter().map(|&t| t as usize).sum();
    let phi = FqMatrix::from_vectors(&f, n, &free.reps)?;
    let ker = phi.transpose().kernel(); // rows: x with x phi = 0
    let offsets: Vec<usize> = free.t.iter().scan(0, |acc, &t| {
        let o = *acc;
        *acc += t as usize;
        Some(o)
    }).collect();
    let rho = |x: &[u16]| -> Vec<u16> {
        let mut out = vec![0u16; r];
        for (i, &c) in x.iter().enumerate() {
            for k in 0..free.t[i] as usize {
                out[offsets[i] + k] = c;
            }
        }
        out
    };
    let k_rows: Vec<Vec<u16>> = ker.rows().iter().map(|x| rho(x)).collect();
    let k_code = LinearCode::from_rows(&f, r, k_rows)?;
    let h = k_code.parity_check();
    let w_dim = h.nrows();
    let psi = h.transpose();
    let iota_rows: Vec<Vec<u16>> = (0..n)
        .map(|k| {
            let e = FqVector::unit(&f, n, k);
            let i = free.reps.iter().position(|p| *p == e).expect("unit vectors are canonical points");
            let mut x = vec![0u16; m];
            x[i] = 1;
            psi.left_apply(&rho(&x))
        })
        .collect();
    let iota = FqMatrix::new(&f, w_dim, iota_rows)?;
    let target = SpanningFamily::new(&f, w_dim, psi.row_vectors())?;

    // fibre check over ker phi
    budget.search("embedding check", Space::new(&f, n).size_u128() * k_code.size())?;
    let sp = Space::new(&f, n);
    let mut kernel_words = Vec::new();
    for_each_image(&f, m, ker.rows(), |_, y, _| kernel_words.push(y));
    let msp = Space::new(&f, m);
    let mut verified = true;
    for x in 0..v.table.len() {
        let xv = sp.vector(x);
        let lift = match xv.leading() {
            None => 0,
            Some((_, c)) => {
                let i = free.reps.iter().position(|p| *p == xv.canonical()).expect("point");
                msp.scale(c, msp.encode(&FqVector::unit(&f, m, i).into_coords()))
            }
        };
        let best = kernel_words
            .iter()
            .map(|&k| free.weight(&msp.decode(msp.add(lift, k))))
            .min()
            .expect("kernel contains 0");
        if best != v.table.at(x) as u32 {
            verified = false;
            break;
        }
    }
    Ok(Embedding { r, a: r - m, b: m - n, iota, psi, target, free, verified })
}

/// A witness that `V` is `(a, b)`-embeddable.
#[derive(Debug, Clone)]
pub struct AbWitness {
    pub family: SpanningFamily,
    /// `n x (n + a)`; row `k` is the image of `e_k`.
    pub iota: FqMatrix,
}

/// Exhaustive search for a family of at most `n + a + b` points spanning
/// `F^{n+a}` and a linear injection preserving every weight of `V`.
///
/// Without loss of generality the family contains the standard basis, so
/// only the extra points are enumerated.
pub fn is_ab_embeddable(v: &WeightedSpace, a: usize, b: usize, budget: &Budget) -> Result<Option<AbWitness>> {
    let f = v.field().clone();
    let n = v.dim();
    let d = n + a;
    let sp = Space::new(&f, d);
    budget.states("embedding target", sp.size_u128())?;
    let pts = projective_points(&f, d)?;
    let extra: Vec<FqVector> = pts.into_iter().filter(|p| p.hamming_weight() > 1).collect();
    let mut visited: u128 = 0;
    let vsp = Space::new(&f, n);
    let targets: Vec<u16> = (0..vsp.size_u128() as usize).map(|x| v.table.at(x)).collect();
    for k in 0..=b.min(extra.len()) {
        for choice in (0..extra.len()).combinations(k) {
            visited += 1;
            budget.search("embedding families", visited)?;
            let mut vs: Vec<FqVector> = hamming(&f, d)?.vectors();
            vs.extend(choice.iter().map(|&i| extra[i].clone()));
            let fam = SpanningFamily::new(&f, d, vs)?;
            let table = weight_table(&fam, budget)?;
            let mut images = Vec::new();
            if let Some(imgs) = find_iota(&sp, &vsp, &table, &targets, &mut images, &mut visited, budget)? {
                let rows = imgs.iter().map(|&i| sp.decode(i)).collect();
                return Ok(Some(AbWitness { family: fam, iota: FqMatrix::new(&f, d, rows)? }));
            }
        }
    }
    Ok(None)
}

/// Chooses images of `e_1, e_2, ...` one at a time, checking all vectors of
/// the partial span as soon as they are determined.
fn find_iota(
    sp: &Space,
    vsp: &Space,
    table: &WeightTable,
    targets: &[u16],
    images: &mut Vec<usize>,
    visited: &mut u128,
    budget: &Budget,
) -> Result<Option<Vec<usize>>> {
    let k = images.len();
    if k == vsp.dim {
        return Ok(Some(images.clone()));
    }
    let q = sp.field.q() as usize;
    let low = q.pow(k as u32);
    for u in 1..table.len() {
        *visited += 1;
        budget.search("embedding maps", *visited)?;
        // vectors x = y + c e_k with y in the span of earlier coordinates
        let mut ok = true;
        'check: for c in 1..q {
            for y in 0..low {
                let x = y + c * low;
                let mut img = 0usize;
                let digits = vsp.decode(x);
                for (j, &dj) in digits.iter().enumerate().take(k) {
                    img = sp.axpy(img, dj, images[j]);
                }
                img = sp.axpy(img, digits[k], u);
                if img == 0 || table.at(img) != targets[x] {
                    ok = false;
                    break 'check;
                }
            }
        }
        if !ok {
            continue;
        }
        images.push(u);
        if let Some(found) = find_iota(sp, vsp, table, targets, images, visited, budget)? {
            return Ok(Some(found));
        }
        images.pop();
    }
    Ok(None)
}

/// Closed-form optimum for `F_2^2` with weights `t1 = wt(10)`,
/// `t2 = wt(01)`, `t3 = wt(11)`.
#[derive(Debug, Clone)]
pub struct Frontier {
    /// The Pareto-optimal `(a, b)`, satisfying `t1 + t2 + t3 - 4 = 2a - b`.
    pub pairs: Vec<(usize, usize)>,
    /// Dimension of the target, `ceil((t1 + t2 + t3) / 2)`.
    pub d: usize,
    pub family: SpanningFamily,
    /// Images of `10` and `01`.
    pub iota: FqMatrix,
}

pub fn pareto_frontier_f2_dim2(t1: usize, t2: usize, t3: usize) -> Result<Frontier> {
    let ts = [t1, t2, t3];
    if ts.contains(&0) || t1 > t2 + t3 || t2 > t1 + t3 || t3 > t1 + t2 {
        return Err(Error::TriangleViolated(ts.iter().map(|&t| t as u32).collect()));
    }
    let sum = t1 + t2 + t3;
    let d = sum.div_ceil(2);
    let f2 = FiniteField::prime(2)?;
    let mut pts = hamming(&f2, d)?.vectors();
    let odd = sum % 2 == 1;
    if odd {
        let mut c = vec![0u16; d];
        c[0] = 1;
        c[d - 1] = 1;
        pts.push(FqVector::new(&f2, c)?);
    }
    let family = SpanningFamily::new(&f2, d, pts)?;
    let x: Vec<u16> = (0..d).map(|i| (i < t1) as u16).collect();
    let y: Vec<u16> = (0..d).map(|i| (i >= d - t2) as u16).collect();
    let iota = FqMatrix::new(&f2, d, vec![x, y])?;
    let pairs = vec![(d - 2, odd as usize)];
    Ok(Frontier { pairs, d, family, iota })
}
