//! One line per acceptance criterion. Runs without the libtest harness so
//! the verdicts are always printed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{binom, brute_quotient, field, random_family};
use projmet_core::bounds::{anticode_counterexample_family, exact_anticode_max, mu, mu_profile, singleton_bound, span_of};
use projmet_core::codes::{image_code, is_perfect, min_distance_f, perfect_transfer};
use projmet_core::embed::{embed_into_projective, is_ab_embeddable, pareto_frontier_f2_dim2, WeightedSpace};
use projmet_core::family::{hamming, phase_rotation, projective_points, rank};
use projmet_core::isometry::{are_equivalent, aut_group, hamming_stabilizer};
use projmet_core::matroid::{ball_sizes_via_extended_matroid, extended_family, extended_matroid_equivalent};
use projmet_core::parent::{coset_leader_weight_distribution, min_hamming_distance, quotient_weight};
use projmet_core::weight::{
    add_vector_ball_sizes, hamming_table, is_convex, is_metric, minimal_representation, normality, weight_table,
};
use projmet_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed;

fn b() -> Budget {
    Budget::default()
}

fn vec_of(f: &FiniteField, c: &[u16]) -> FqVector {
    FqVector::new(f, c.to_vec()).unwrap()
}

fn corpus() -> Vec<SpanningFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..50).map(|_| random_family(&mut rng, &[2, 3], 4, 7)).collect()
}

fn c1_phase_rotation_figure() {
    let f2 = field(2);
    let fam = phase_rotation(&f2, 4).unwrap();
    let t = weight_table(&fam, &b()).unwrap();
    let x = vec_of(&f2, &[1, 1, 0, 1]);
    assert_eq!(t.weight(&x), 2);
    let rep = minimal_representation(&fam, &t, &x).unwrap();
    assert_eq!(rep.len(), 2);
    let mut sum = FqVector::zero(&f2, 4);
    for (c, i) in &rep {
        sum = sum.add(&fam.point(*i).scale(c.value())).unwrap();
    }
    assert_eq!(sum, x);
    let pts: Vec<&[u16]> = rep.iter().map(|(_, i)| fam.point(*i).coords()).collect();
    assert!(pts.contains(&&[1, 1, 1, 1][..]) && pts.contains(&&[0, 0, 1, 0][..]));
}

fn c2_parent_identity() {
    for fam in corpus() {
        let t = weight_table(&fam, &b()).unwrap();
        assert_eq!(t.weights(), brute_quotient(&fam).as_slice());
        let phi = ParentFunction::new(&fam);
        let ht = hamming_table(fam.field(), fam.len(), &b()).unwrap();
        assert_eq!(quotient_weight(&ht, phi.matrix()).unwrap(), t);
    }
}

fn c3_coset_distribution() {
    for fam in corpus() {
        let t = weight_table(&fam, &b()).unwrap();
        let pc = ParentFunction::new(&fam).parent_code();
        assert_eq!(coset_leader_weight_distribution(&pc, &b()).unwrap(), t.sphere_sizes());
    }
}

fn c4_small_spheres() {
    for fam in corpus() {
        let t = weight_table(&fam, &b()).unwrap();
        let d = min_hamming_distance(&ParentFunction::new(&fam).parent_code(), &b()).unwrap();
        let q = fam.field().q() as u64;
        let m = fam.len() as u64;
        let top = if d == INF { t.max_weight() } else { ((d - 1) / 2).min(t.max_weight()) };
        for s in 0..=top {
            assert_eq!(t.sphere(s), (q - 1).pow(s as u32) * binom(m, s as u64), "t = {s}");
        }
    }
}

fn c5_convexity_normality() {
    let mut tables: Vec<_> = corpus().iter().map(|f| weight_table(f, &b()).unwrap()).collect();
    for q in [2u64, 3, 4] {
        for n in 1..=3 {
            tables.push(weight_table(&phase_rotation(&field(q), n).unwrap(), &b()).unwrap());
        }
    }
    tables.push(weight_table(&rank(&field(2), 2, 3).unwrap(), &b()).unwrap());
    assert!(tables.iter().all(is_convex));

    let f2 = field(2);
    let mut w = hamming_table(&f2, 4, &b()).unwrap().weights().to_vec();
    w[15] = 3;
    let r = normality(&WeightTable::from_weights(&f2, 4, w).unwrap(), &b()).unwrap();
    let wit = r.detection_witness.unwrap();
    assert_eq!((wit.v1.coords(), wit.v2.coords()), (&[0u16; 4][..], &[1u16; 4][..]));
    assert_eq!((wit.value, wit.distance), (2, 3));

    let doubled = hamming_table(&f2, 2, &b()).unwrap().weights().iter().map(|&x| 2 * x).collect();
    let r = normality(&WeightTable::from_weights(&f2, 2, doubled).unwrap(), &b()).unwrap();
    let wit = r.correction_witness.unwrap();
    assert_eq!((wit.v1.coords(), wit.v2.coords(), wit.value), (&[0u16, 0][..], &[1u16, 0][..], 1));

    // every metric with point weights in 1..=3 on F_2^3
    let mut metrics = 0;
    for code in 0..3u32.pow(7) {
        let mut w = vec![0u16];
        let mut c = code;
        for _ in 0..7 {
            w.push((c % 3) as u16 + 1);
            c /= 3;
        }
        let t = WeightTable::from_weights(&f2, 3, w).unwrap();
        if !is_metric(&t) {
            continue;
        }
        metrics += 1;
        let r = normality(&t, &b()).unwrap();
        assert!(r.exhaustive);
        assert_eq!(is_convex(&t), r.correction_normal && r.equal_detection_normal, "{:?}", t.weights());
    }
    assert!(metrics > 0);
}

fn c6_singleton() {
    for q in [2u64, 3] {
        for n in 1..=4 {
            let fam = hamming(&field(q), n).unwrap();
            let t = weight_table(&fam, &b()).unwrap();
            assert_eq!(mu_profile(&fam, &t, &b()).unwrap(), (0..=n).collect::<Vec<_>>());
            let fam = phase_rotation(&field(q), n).unwrap();
            let t = weight_table(&fam, &b()).unwrap();
            let top = (n as f64 - n as f64 / q as f64).ceil() as usize;
            let expect: Vec<usize> = (0..=top).map(|s| if s < top { s } else { n }).collect();
            assert_eq!(mu_profile(&fam, &t, &b()).unwrap(), expect);
        }
    }
    let fam = rank(&field(2), 2, 3).unwrap();
    let t = weight_table(&fam, &b()).unwrap();
    assert_eq!(mu(&fam, &t, 1, &b()).unwrap().value, 3);
    assert_eq!(mu(&fam, &t, 2, &b()).unwrap().value, 6);
    for (m, n, d) in [(2usize, 2usize, 2u16), (2, 3, 2)] {
        let fam = rank(&field(2), m, n).unwrap();
        let t = weight_table(&fam, &b()).unwrap();
        let expect = 2u128.pow((m.max(n) * (m.min(n) - d as usize + 1)) as u32);
        assert_eq!(singleton_bound(&fam, &t, d, &b()).unwrap().value(), Some(expect));
    }
}

fn c7_anticode_gap() {
    let f2 = field(2);
    let gs: [[u16; 6]; 4] = [[1, 1, 1, 1, 0, 0], [1, 1, 0, 0, 1, 1], [0, 0, 1, 1, 1, 1], [1, 1, 1, 1, 1, 1]];
    let mut pts: Vec<Vec<u16>> = (0..10).map(|i| (0..10).map(|j| (i == j) as u16).collect()).collect();
    for (j, g) in gs.iter().enumerate() {
        let mut p = g.to_vec();
        p.extend((0..4).map(|k| (k == j) as u16));
        pts.push(p);
    }
    let fam = SpanningFamily::from_coords(&f2, 10, &pts).unwrap();
    assert_eq!(fam.len(), 14);
    let g = LinearCode::from_rows(&f2, 6, gs.iter().map(|g| g.to_vec()).collect()).unwrap();
    assert!(anticode_counterexample_family(&g, &b()).unwrap().same_set(&fam));

    let pc = ParentFunction::new(&fam).parent_code();
    assert_eq!(min_hamming_distance(&pc, &b()).unwrap(), 6);
    let t = weight_table(&fam, &b()).unwrap();
    let a = exact_anticode_max(&t, 2, 3, &b()).unwrap();
    assert_eq!(a.dim, 3);
    let unit_pairs: Vec<FqVector> = [[0, 1], [2, 3], [4, 5]]
        .iter()
        .map(|p| FqVector::new(&f2, (0..10).map(|i| p.contains(&i) as u16).collect()).unwrap())
        .collect();
    assert!(span_of(t.space(), &unit_pairs).into_iter().all(|x| t.at(x) <= 2));
    assert!(span_of(t.space(), &a.basis).into_iter().all(|x| t.at(x) <= 2));
    assert_eq!(mu(&fam, &t, 2, &b()).unwrap().value, 2);
}

fn c8_matroid() {
    let f7 = field(7);
    let f = SpanningFamily::from_coords(&f7, 2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]).unwrap();
    let g = SpanningFamily::from_coords(&f7, 2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 3]]).unwrap();
    assert!(extended_family(&f, &b()).unwrap().same_set(&f));
    assert!(extended_family(&g, &b()).unwrap().same_set(&g));
    assert!(extended_matroid_equivalent(&f, &g, &b()).unwrap().is_some());
    assert!(are_equivalent(&f, &g, &b()).unwrap().is_none());
    let (tf, tg) = (weight_table(&f, &b()).unwrap(), weight_table(&g, &b()).unwrap());
    assert_eq!(tf.sphere_sizes(), tg.sphere_sizes());

    let mut fams = vec![f, g];
    for q in [2u64, 3] {
        for n in 1..=3 {
            fams.push(hamming(&field(q), n).unwrap());
            fams.push(phase_rotation(&field(q), n).unwrap());
        }
    }
    for fam in &fams {
        let t = weight_table(fam, &b()).unwrap();
        for s in 0..=t.max_weight() {
            assert_eq!(ball_sizes_via_extended_matroid(fam, s as usize, &b()).unwrap(), t.ball(s) as u128);
        }
    }
}

fn c9_extended_phase_rotation() {
    let f3 = field(3);
    let ext = extended_family(&phase_rotation(&f3, 3).unwrap(), &b()).unwrap();
    let expect: Vec<FqVector> = projective_points(&f3, 3)
        .unwrap()
        .into_iter()
        .filter(|p| {
            let mut vals: Vec<u16> = p.coords().iter().copied().filter(|&c| c != 0).collect();
            vals.dedup();
            vals.len() == 1
        })
        .collect();
    assert_eq!(expect.len(), 7);
    assert!(ext.same_set(&SpanningFamily::new(&f3, 3, expect).unwrap()));
}

fn c10_perfect_transfer() {
    let f2 = field(2);
    let c = LinearCode::from_rows(
        &f2,
        7,
        vec![
            vec![1, 0, 0, 0, 1, 1, 0],
            vec![0, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 1],
        ],
    )
    .unwrap();
    let fam = phase_rotation(&f2, 6).unwrap();
    let phi = ParentFunction::new(&fam);
    let r = perfect_transfer(&c, &phi, &b()).unwrap();
    assert_eq!(r.family_radius, Some(1));
    assert_eq!((r.family_distance, r.hamming_distance), (3, 3));
    // independent partition check with balls built from the BFS table
    let t = weight_table(&fam, &b()).unwrap();
    let img = image_code(&c, &phi).unwrap();
    assert_eq!(min_distance_f(&img, &t, &b()).unwrap(), 3);
    let sp = t.space();
    let mut hits = vec![0u32; t.len()];
    for w in img.codeword_indices(&b()).unwrap() {
        for x in (0..t.len()).filter(|&x| t.at(x) <= 1) {
            hits[sp.add(w, x)] += 1;
        }
    }
    assert!(hits.iter().all(|&h| h == 1));
    assert_eq!(is_perfect(&img, &t, &b()).unwrap(), Some(1));
}

fn random_weights(rng: &mut ChaCha8Rng, q: u64, n: usize) -> WeightedSpace {
    let f = field(q);
    let m = projective_points(&f, n).unwrap().len();
    loop {
        let ts: Vec<u16> = (0..m).map(|_| rng.gen_range(1..=4)).collect();
        if let Ok(v) = WeightedSpace::from_point_weights(&f, n, &ts, &b()) {
            return v;
        }
    }
}

fn c11_embedding() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 11);
    for (q, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
        for _ in 0..20 {
            let v = random_weights(&mut rng, q, n);
            let e = embed_into_projective(&v, &b()).unwrap();
            assert!(e.verified, "{:?}", v.table().weights());
        }
    }
    for (t1, t2, t3) in [(1usize, 1usize, 1usize), (1, 1, 2), (2, 2, 3)] {
        let fr = pareto_frontier_f2_dim2(t1, t2, t3).unwrap();
        assert_eq!(fr.pairs.len(), 1);
        let (a, bb) = fr.pairs[0];
        assert_eq!((t1 + t2 + t3) as i64 - 4, 2 * a as i64 - bb as i64);
        let v = WeightedSpace::from_point_weights(&field(2), 2, &[t1 as u16, t2 as u16, t3 as u16], &b()).unwrap();
        // everything weakly below the claimed pair, then one step beyond it
        let mut found = Vec::new();
        for a2 in 0..=a + 1 {
            for b2 in 0..=bb + 1 {
                if is_ab_embeddable(&v, a2, b2, &b()).unwrap().is_some() {
                    found.push((a2, b2));
                }
            }
        }
        assert!(found.contains(&(a, bb)));
        for &(a2, b2) in &found {
            assert!(!(a2 <= a && b2 <= bb) || (a2, b2) == (a, bb), "dominated by {:?}", (a2, b2));
        }
        for &(a2, b2) in &found {
            if a2 < a + 1 {
                assert!(found.contains(&(a2 + 1, b2)));
            }
            if b2 < bb + 1 {
                assert!(found.contains(&(a2, b2 + 1)));
            }
        }
        // the closed-form witness really embeds V
        let tf = weight_table(&fr.family, &b()).unwrap();
        let sp = tf.space();
        let (x, y) = (sp.encode(fr.iota.row(0).coords()), sp.encode(fr.iota.row(1).coords()));
        assert_eq!([tf.at(x), tf.at(y), tf.at(sp.add(x, y))], [t1 as u16, t2 as u16, t3 as u16]);
    }
}

fn c12_isometry_group() {
    let f2 = field(2);
    let fam = phase_rotation(&f2, 2).unwrap();
    let g = aut_group(&fam, &b()).unwrap();
    let rep = LinearCode::from_rows(&f2, 3, vec![vec![1, 1, 1]]).unwrap();
    assert_eq!(g.len(), 6);
    assert_eq!(hamming_stabilizer(&rep, &b()).unwrap().len(), 6);
    let t = weight_table(&fam, &b()).unwrap();
    let sp = t.space();
    for l in &g {
        for x in 0..t.len() {
            assert_eq!(t.weight(&l.apply(&sp.vector(x))), t.at(x));
        }
    }
}

fn c13_add_vector() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 13);
    let mut pairs = 0;
    while pairs < 30 {
        let fam = random_family(&mut rng, &[2, 3], 4, 6);
        let pts = projective_points(fam.field(), fam.dim()).unwrap();
        let fresh: Vec<&FqVector> = pts.iter().filter(|p| !fam.contains(p)).collect();
        if fresh.is_empty() {
            continue;
        }
        let f = fresh[rng.gen_range(0..fresh.len())].clone();
        pairs += 1;
        let t = weight_table(&fam, &b()).unwrap();
        let big = family::union(&fam, &SpanningFamily::new(fam.field(), fam.dim(), [f.clone()]).unwrap()).unwrap();
        let tb = weight_table(&big, &b()).unwrap();
        for s in 0..=t.weight(&f) / 2 {
            let est = add_vector_ball_sizes(&fam, &t, &f, s).unwrap();
            assert!(est.tight);
            assert_eq!(est.value, tb.ball(s), "t = {s}");
        }
    }
}

fn main() {
    let criteria: [(&str, fn()); 13] = [
        ("phase-rotation figure: wt(1101) = 2 with a length-2 representation", c1_phase_rotation_figure),
        ("BFS weights equal the parent-function quotient on 50 random families", c2_parent_identity),
        ("sphere sizes equal coset leader weight distributions", c3_coset_distribution),
        ("small spheres follow (q-1)^t C(n,t)", c4_small_spheres),
        ("convexity and normality, incl. both counterexamples and all F_2^3 metrics", c5_convexity_normality),
        ("anticode profiles and rank-metric Singleton values", c6_singleton),
        ("F_2^10 anticode gap family", c7_anticode_gap),
        ("matroid-equivalent F_7 pair and extended-matroid ball formula", c8_matroid),
        ("extended family of phase_rotation(3) over F_3", c9_extended_phase_rotation),
        ("perfect Hamming code transfers under phase_rotation(6)", c10_perfect_transfer),
        ("embedding verification and the F_2^2 frontier", c11_embedding),
        ("isometry group of phase_rotation(2) over F_2", c12_isometry_group),
        ("add-a-vector ball recurrence on 30 random pairs", c13_add_vector),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("    {info}")));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(run)).is_ok();
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2}: {} {} ({:.2?})",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            start.elapsed()
        );
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
