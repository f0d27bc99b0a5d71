#![allow(dead_code)]

use projmet_core::family::projective_points;
use projmet_core::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn field(q: u64) -> FiniteField {
    FiniteField::with_order(q).unwrap()
}

/// A random spanning family with `n <= big_n` points in `F_q^n`.
pub fn random_family(rng: &mut ChaCha8Rng, qs: &[u64], max_n: usize, max_big_n: usize) -> SpanningFamily {
    loop {
        let q = *qs.choose(rng).unwrap();
        let f = field(q);
        let n = rng.gen_range(1..=max_n);
        let pts = projective_points(&f, n).unwrap();
        let hi = max_big_n.min(pts.len());
        if hi < n {
            continue;
        }
        let k = rng.gen_range(n..=hi);
        let chosen: Vec<FqVector> = pts.choose_multiple(rng, k).cloned().collect();
        let fam = SpanningFamily::new(&f, n, chosen).unwrap();
        if fam.is_spanning() {
            return fam;
        }
    }
}

/// Minimum Hamming weight over each fibre of `y -> y M`, by enumerating
/// the whole domain.
pub fn brute_quotient(fam: &SpanningFamily) -> Vec<u16> {
    let f = fam.field();
    let q = f.q() as usize;
    let (n, m) = (fam.dim(), fam.len());
    let size = q.pow(n as u32);
    let mut best = vec![u16::MAX; size];
    let mut y = vec![0u16; m];
    loop {
        let mut x = vec![0u16; n];
        for (j, &c) in y.iter().enumerate() {
            for (k, &p) in fam.point(j).coords().iter().enumerate() {
                x[k] = f.add(x[k], f.mul(c, p));
            }
        }
        let idx = x.iter().rev().fold(0usize, |acc, &d| acc * q + d as usize);
        let w = y.iter().filter(|&&c| c != 0).count() as u16;
        best[idx] = best[idx].min(w);
        // odometer
        let mut i = 0;
        while i < m {
            y[i] += 1;
            if (y[i] as usize) < q {
                break;
            }
            y[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
    }
    best
}

pub fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
