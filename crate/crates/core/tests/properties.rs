mod common;

use common::{brute_quotient, field, random_family};
use projmet_core::bounds::mu_profile;
use projmet_core::embed::{embed_into_projective, is_ab_embeddable, WeightedSpace};
use projmet_core::family::{disjoint_union, hamming, phase_rotation, projective_points, union};
use projmet_core::isometry::{are_equivalent, are_hamming_equivalent, aut_group, aut_group_brute_force, is_isometry, LinearIso};
use projmet_core::matroid::{extended_family, is_closed};
use projmet_core::parent::{family_from_code, min_hamming_distance};
use projmet_core::schema::{family_from_json, family_to_json};
use projmet_core::weight::{disjoint_union_spheres, extend_table, is_convex, weight_table, WeightTable};
use projmet_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn b() -> Budget {
    Budget::default()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_invertible(r: &mut ChaCha8Rng, f: &FiniteField, n: usize) -> FqMatrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| r.gen_range(0..f.q()) as u16).collect()).collect();
        let m = FqMatrix::new(f, n, rows).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bfs_agrees_with_fibre_minimum(seed in any::<u64>()) {
        let fam = random_family(&mut rng(seed), &[2, 3, 4], 3, 6);
        prop_assert_eq!(weight_table(&fam, &b()).unwrap().weights().to_vec(), brute_quotient(&fam));
    }

    #[test]
    fn tables_are_convex_metrics(seed in any::<u64>()) {
        let fam = random_family(&mut rng(seed), &[2, 3], 3, 6);
        let t = weight_table(&fam, &b()).unwrap();
        prop_assert!(is_convex(&t));
        prop_assert!(projmet_core::weight::is_metric(&t));
    }

    #[test]
    fn disjoint_union_convolves_spheres(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_family(&mut r, &[2], 2, 4);
        let g = random_family(&mut r, &[2], 2, 4);
        let u = disjoint_union(&f, &g).unwrap();
        let (tf, tg, tu) = (weight_table(&f, &b()).unwrap(), weight_table(&g, &b()).unwrap(), weight_table(&u, &b()).unwrap());
        prop_assert_eq!(disjoint_union_spheres(tf.sphere_sizes(), tg.sphere_sizes()), tu.sphere_sizes().to_vec());
    }

    #[test]
    fn extending_matches_bfs(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fam = random_family(&mut r, &[2, 3], 3, 5);
        let pts = projective_points(fam.field(), fam.dim()).unwrap();
        let p = pts[r.gen_range(0..pts.len())].clone();
        let big = union(&fam, &SpanningFamily::new(fam.field(), fam.dim(), [p.clone()]).unwrap()).unwrap();
        let t = weight_table(&fam, &b()).unwrap();
        prop_assert_eq!(extend_table(&t, &p), weight_table(&big, &b()).unwrap());
    }

    #[test]
    fn equivalence_is_found_for_linear_images(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fam = random_family(&mut r, &[2, 3], 3, 6);
        let m = random_invertible(&mut r, fam.field(), fam.dim());
        let l = LinearIso::new(m).unwrap();
        let img = SpanningFamily::new(fam.field(), fam.dim(), fam.vectors().iter().map(|v| l.apply(v))).unwrap();
        let found = are_equivalent(&fam, &img, &b()).unwrap().expect("equivalent by construction");
        prop_assert!(is_isometry(&found, &fam, &img));
        let (pf, pg) = (ParentFunction::new(&fam).parent_code(), ParentFunction::new(&img).parent_code());
        prop_assert!(are_hamming_equivalent(&pf, &pg, &b()).unwrap().is_some());
    }

    #[test]
    fn mu_properties(seed in any::<u64>()) {
        let fam = random_family(&mut rng(seed), &[2, 3], 4, 7);
        let t = weight_table(&fam, &b()).unwrap();
        let prof = mu_profile(&fam, &t, &b()).unwrap();
        let n = fam.dim();
        for (s, &m) in prof.iter().enumerate() {
            prop_assert!(m >= s.min(n));
            prop_assert_eq!(m == n, s as u16 >= t.max_weight());
            if s > 0 && prof[s - 1] < n {
                prop_assert!(m > prof[s - 1]);
            }
        }
    }

    #[test]
    fn extended_family_commutes_with_linear_maps(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fam = random_family(&mut r, &[2, 3], 3, 6);
        let l = LinearIso::new(random_invertible(&mut r, fam.field(), fam.dim())).unwrap();
        let image = |f: &SpanningFamily| SpanningFamily::new(f.field(), f.dim(), f.vectors().iter().map(|v| l.apply(v))).unwrap();
        let ext = extended_family(&fam, &b()).unwrap();
        prop_assert!(fam.points().iter().all(|p| ext.contains(p.rep())));
        prop_assert!(extended_family(&image(&fam), &b()).unwrap().same_set(&image(&ext)));
        prop_assert_eq!(is_closed(&fam, &b()).unwrap(), ext.len() == fam.len());
    }

    #[test]
    fn family_json_round_trips(seed in any::<u64>()) {
        let fam = random_family(&mut rng(seed), &[2, 3, 4, 5], 3, 6);
        let back = family_from_json(&family_to_json(&fam)).unwrap();
        prop_assert!(back.same_set(&fam));
        prop_assert_eq!(weight_table(&back, &b()).unwrap(), weight_table(&fam, &b()).unwrap());
    }

    #[test]
    fn table_bytes_round_trip(seed in any::<u64>()) {
        let t = weight_table(&random_family(&mut rng(seed), &[2, 3], 3, 6), &b()).unwrap();
        prop_assert_eq!(WeightTable::from_bytes(&t.to_bytes()).unwrap(), t);
    }
}

#[test]
fn parent_code_determines_family_up_to_equivalence() {
    let mut r = rng(7);
    let mut checked = 0;
    while checked < 20 {
        let fam = random_family(&mut r, &[2, 3], 3, 6);
        let pc = ParentFunction::new(&fam).parent_code();
        if pc.dim() == 0 || min_hamming_distance(&pc, &b()).unwrap() < 3 {
            continue;
        }
        checked += 1;
        let back = family_from_code(&pc, &b()).unwrap();
        assert!(are_equivalent(&fam, &back, &b()).unwrap().is_some());
    }
}

#[test]
fn automorphisms_agree_with_brute_force() {
    for fam in [
        phase_rotation(&field(2), 2).unwrap(),
        phase_rotation(&field(3), 2).unwrap(),
        hamming(&field(2), 3).unwrap(),
        projmet_core::family::rank(&field(2), 1, 2).unwrap(),
    ] {
        let mut fast: Vec<_> = aut_group(&fam, &b()).unwrap().iter().map(|l| l.matrix().rows().to_vec()).collect();
        let mut slow: Vec<_> =
            aut_group_brute_force(&fam, &b()).unwrap().iter().map(|l| l.matrix().rows().to_vec()).collect();
        fast.sort();
        slow.sort();
        assert_eq!(fast, slow);
    }
}

#[test]
fn embeddability_is_monotone() {
    let f2 = field(2);
    for ts in [[1u16, 2, 2], [2, 2, 2], [1, 3, 3]] {
        let v = WeightedSpace::from_point_weights(&f2, 2, &ts, &b()).unwrap();
        let ok = |a, bb| is_ab_embeddable(&v, a, bb, &b()).unwrap().is_some();
        for a in 0..=2 {
            for bb in 0..=2 {
                if ok(a, bb) {
                    assert!(ok(a + 1, bb) && ok(a, bb + 1), "{ts:?} at ({a},{bb})");
                }
            }
        }
    }
}

#[test]
fn embedding_of_family_metric_is_verified() {
    let fam = phase_rotation(&field(3), 2).unwrap();
    let t = weight_table(&fam, &b()).unwrap();
    let v = WeightedSpace::new(&field(3), 2, t.weights().to_vec(), &b()).unwrap();
    let e = embed_into_projective(&v, &b()).unwrap();
    assert!(e.verified);
    assert_eq!(e.b, e.free.reps.len() - 2);
}

#[test]
fn budget_errors_are_reported() {
    let fam = hamming(&field(3), 8).unwrap();
    let small = Budget { max_states: 100, max_search: 100 };
    assert!(weight_table(&fam, &small).unwrap_err().is_budget());
}
