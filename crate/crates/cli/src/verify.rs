//! Reference examples replayed by `projmet verify`.

use projmet_core::bounds::{anticode_counterexample_family, exact_anticode_max, mu, mu_profile, phase_weight, singleton_bound};
use projmet_core::codes::{perfect_transfer, preimage_code};
use projmet_core::embed::{free_weighted_space, is_ab_embeddable, pareto_frontier_f2_dim2, WeightedSpace};
use projmet_core::family::{
    column, combinatorial, cover, discrete, disjoint_union, hamming, phase_rotation, projective_points, rank, row,
    tensor_product, union, TensorKind,
};
use projmet_core::isometry::{
    are_equivalent, are_hamming_equivalent, aut_group_brute_force, joint_stabilizer, push_down, MonomialMap,
};
use projmet_core::matroid::{extended_family, extended_matroid_equivalent};
use projmet_core::parent::{
    coset_leader, coset_leader_weight_distribution, family_from_code, min_hamming_distance, quotient_weight,
    reduce_to_parent,
};
use projmet_core::weight::{
    hamming_table, is_convex, minimal_representation, normality, weight_table, WeightTable,
};
use projmet_core::{Budget, FiniteField, FqMatrix, FqVector, LinearCode, ParentFunction, Result, SpanningFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Example {
    pub name: &'static str,
    pub check: fn(u64, &Budget) -> Result<bool>,
}

fn fq(q: u64) -> Result<FiniteField> {
    FiniteField::with_order(q)
}

fn v(f: &FiniteField, c: &[u16]) -> Result<FqVector> {
    FqVector::new(f, c.to_vec())
}

fn units(n: usize) -> Vec<Vec<u16>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as u16).collect()).collect()
}

fn hamming_7_4() -> Result<LinearCode> {
    LinearCode::from_rows(
        &fq(2)?,
        7,
        vec![
            vec![1, 0, 0, 0, 1, 1, 0],
            vec![0, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 1],
        ],
    )
}

fn f7_pair() -> Result<(SpanningFamily, SpanningFamily)> {
    let f7 = fq(7)?;
    Ok((
        SpanningFamily::from_coords(&f7, 2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]])?,
        SpanningFamily::from_coords(&f7, 2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 3]])?,
    ))
}

fn gap_family() -> Result<SpanningFamily> {
    let f2 = fq(2)?;
    let gs = [[1, 1, 1, 1, 0, 0], [1, 1, 0, 0, 1, 1], [0, 0, 1, 1, 1, 1], [1, 1, 1, 1, 1, 1]];
    let mut pts = units(10);
    for (j, g) in gs.iter().enumerate() {
        let mut p = g.to_vec();
        p.extend((0..4).map(|k| (k == j) as u16));
        pts.push(p);
    }
    SpanningFamily::from_coords(&f2, 10, &pts)
}

fn ws(t: [u16; 3], b: &Budget) -> Result<WeightedSpace> {
    WeightedSpace::from_point_weights(&fq(2)?, 2, &t, b)
}

pub fn reference_examples() -> Vec<Example> {
    vec![
        Example { name: "F_7 exists for the matroid example", check: |_, _| Ok(fq(7)?.q() == 7) },
        Example {
            name: "phase-rotation parent matrix has the repetition kernel",
            check: |_, b| {
                for (q, n) in [(2, 4), (3, 3), (4, 2), (5, 2)] {
                    let f = fq(q)?;
                    let k = ParentFunction::new(&phase_rotation(&f, n)?).matrix().transpose().kernel();
                    let rep = LinearCode::from_rows(&f, n + 1, vec![vec![1; n + 1]])?;
                    let same = if f.p() == 2 {
                        k.nrows() == 1 && k.row(0) == FqVector::ones(&f, n + 1)
                    } else {
                        are_hamming_equivalent(&LinearCode::from_matrix(&k), &rep, b)?.is_some()
                    };
                    if !same {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        },
        Example {
            name: "basis plus all-ones is phase_rotation(4)",
            check: |_, _| {
                let f2 = fq(2)?;
                let mut pts = units(4);
                pts.push(vec![1; 4]);
                let fam = SpanningFamily::from_coords(&f2, 4, &pts)?;
                Ok(fam.same_set(&phase_rotation(&f2, 4)?) && fam.len() == 5)
            },
        },
        Example {
            name: "cover(2,2) from row and column index sets",
            check: |_, _| {
                let f2 = fq(2)?;
                let c = combinatorial(&f2, 4, &[vec![0, 1], vec![2, 3], vec![0, 2], vec![1, 3]])?;
                Ok(c.same_set(&cover(&f2, 2, 2)?))
            },
        },
        Example {
            name: "row union column is cover",
            check: |_, _| {
                let f3 = fq(3)?;
                Ok(union(&row(&f3, 2, 2)?, &column(&f3, 2, 2)?)?.same_set(&cover(&f3, 2, 2)?))
            },
        },
        Example {
            name: "discrete (x) discrete is rank, hamming (x) discrete is row",
            check: |_, _| {
                let f2 = fq(2)?;
                let a = tensor_product(&discrete(&f2, 2)?, &discrete(&f2, 3)?, TensorKind::Outer)?;
                let b = tensor_product(&hamming(&f2, 2)?, &discrete(&f2, 3)?, TensorKind::Outer)?;
                Ok(a.same_set(&rank(&f2, 2, 3)?) && b.same_set(&row(&f2, 2, 3)?))
            },
        },
        Example {
            name: "phase_rotation(4): wt(1101) = 2",
            check: |_, b| {
                let f2 = fq(2)?;
                Ok(weight_table(&phase_rotation(&f2, 4)?, b)?.weight(&v(&f2, &[1, 1, 0, 1])?) == 2)
            },
        },
        Example {
            name: "discrete(3): every nonzero weight is 1",
            check: |_, b| Ok(weight_table(&discrete(&fq(2)?, 3)?, b)?.weights()[1..].iter().all(|&w| w == 1)),
        },
        Example {
            name: "phase_rotation: the all-ones vector has weight 1",
            check: |_, b| {
                for (q, n) in [(2, 5), (3, 4)] {
                    let f = fq(q)?;
                    if weight_table(&phase_rotation(&f, n)?, b)?.weight(&FqVector::ones(&f, n)) != 1 {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        },
        Example {
            name: "1101 = 1111 + e3 in phase_rotation(4)",
            check: |_, b| {
                let f2 = fq(2)?;
                let fam = phase_rotation(&f2, 4)?;
                let t = weight_table(&fam, b)?;
                let rep = minimal_representation(&fam, &t, &v(&f2, &[1, 1, 0, 1])?)?;
                let mut want = vec![fam.position(&v(&f2, &[1, 1, 1, 1])?), fam.position(&v(&f2, &[0, 0, 1, 0])?)];
                want.sort();
                let got: Vec<_> = rep.iter().map(|(_, i)| Some(*i)).collect();
                Ok(got == want && rep.iter().all(|(c, _)| c.value() == 1))
            },
        },
        Example {
            name: "small spheres are (q-1)^t C(n,t)",
            check: |_, b| {
                for fam in [phase_rotation(&fq(2)?, 6)?, phase_rotation(&fq(3)?, 4)?, gap_family()?] {
                    let t = weight_table(&fam, b)?;
                    let d = min_hamming_distance(&ParentFunction::new(&fam).parent_code(), b)?;
                    let (q, m) = (fam.field().q() as u64, fam.len() as u64);
                    let mut binom = 1u64;
                    for s in 0..=(d - 1) / 2 {
                        if s > 0 {
                            binom = binom * (m - s as u64 + 1) / s as u64;
                        }
                        if t.sphere(s) != (q - 1).pow(s as u32) * binom {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            },
        },
        Example {
            name: "projective tables are convex",
            check: |_, b| {
                let f3 = fq(3)?;
                Ok([hamming(&f3, 3)?, phase_rotation(&f3, 3)?, rank(&f3, 2, 2)?, cover(&fq(2)?, 2, 3)?]
                    .iter()
                    .map(|f| weight_table(f, b).map(|t| is_convex(&t)))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .all(|c| c))
            },
        },
        Example {
            name: "doubled Hamming weight is not convex",
            check: |_, b| Ok(!is_convex(&doubled_hamming(b)?)),
        },
        Example {
            name: "wt(1111) = 3 on F_2^4: sigma_eq(0000,1111) = 2 with d = 3",
            check: |_, b| {
                let f2 = fq(2)?;
                let mut w = hamming_table(&f2, 4, b)?.weights().to_vec();
                w[15] = 3;
                let r = normality(&WeightTable::from_weights(&f2, 4, w)?, b)?;
                Ok(r.correction_normal
                    && r.detection_witness.is_some_and(|x| {
                        x.v2.coords() == [1, 1, 1, 1] && x.value == 2 && x.distance == 3
                    }))
            },
        },
        Example {
            name: "doubled Hamming: tau(00,10) = 1",
            check: |_, b| {
                let r = normality(&doubled_hamming(b)?, b)?;
                Ok(r.correction_witness.is_some_and(|x| x.v2.coords() == [1, 0] && x.value == 1))
            },
        },
        Example {
            name: "phase_rotation parent code is the repetition code",
            check: |_, b| {
                let f2 = fq(2)?;
                let pc = ParentFunction::new(&phase_rotation(&f2, 5)?).parent_code();
                let f3 = fq(3)?;
                let pc3 = ParentFunction::new(&phase_rotation(&f3, 3)?).parent_code();
                let rep3 = LinearCode::from_rows(&f3, 4, vec![vec![1; 4]])?;
                Ok(pc.dim() == 1
                    && pc.contains(&FqVector::ones(&f2, 6))
                    && are_hamming_equivalent(&pc3, &rep3, b)?.is_some())
            },
        },
        Example {
            name: "BFS weight equals the quotient of Hamming weight",
            check: |_, b| {
                for fam in [phase_rotation(&fq(3)?, 3)?, rank(&fq(2)?, 2, 2)?, cover(&fq(2)?, 2, 2)?] {
                    let ht = hamming_table(fam.field(), fam.len(), b)?;
                    if quotient_weight(&ht, ParentFunction::new(&fam).matrix())? != weight_table(&fam, b)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        },
        Example {
            name: "weakly row-monomial surjection gives Hamming weight",
            check: |_, b| {
                let f2 = fq(2)?;
                let xi = FqMatrix::new(&f2, 2, vec![vec![1, 0], vec![1, 0], vec![0, 1]])?;
                Ok(quotient_weight(&hamming_table(&f2, 3, b)?, &xi)? == hamming_table(&f2, 2, b)?)
            },
        },
        Example {
            name: "F_2^10 gap family has parent distance 6",
            check: |_, b| Ok(min_hamming_distance(&ParentFunction::new(&gap_family()?).parent_code(), b)? == 6),
        },
        Example {
            name: "phase_rotation(4) coset distribution is [1, 5, 10]",
            check: |_, b| {
                let fam = phase_rotation(&fq(2)?, 4)?;
                let d = coset_leader_weight_distribution(&ParentFunction::new(&fam).parent_code(), b)?;
                Ok(d == [1, 5, 10] && weight_table(&fam, b)?.sphere_sizes() == d.as_slice())
            },
        },
        Example {
            name: "coset leader weight equals wt_F(phi(y)) for 20 random y",
            check: |seed, b| {
                let fam = phase_rotation(&fq(3)?, 4)?;
                let phi = ParentFunction::new(&fam);
                let pc = phi.parent_code();
                let t = weight_table(&fam, b)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..20 {
                    let y = v(fam.field(), &(0..fam.len()).map(|_| rng.gen_range(0..3)).collect::<Vec<_>>())?;
                    if coset_leader(&pc, &y, b)?.hamming_weight() as u16 != t.weight(&phi.apply(&y)?) {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        },
        Example {
            name: "duplicated rows reduce to the parent function of (e1, e2)",
            check: |_, b| {
                let f2 = fq(2)?;
                let xi = FqMatrix::new(&f2, 2, vec![vec![1, 0], vec![1, 0], vec![0, 1]])?;
                let r = reduce_to_parent(&xi)?;
                let fam = r.parent.family();
                let ht = hamming_table(&f2, fam.len(), b)?;
                Ok(fam.same_set(&hamming(&f2, 2)?)
                    && quotient_weight(&ht, r.parent.matrix())? == hamming_table(&f2, 2, b)?)
            },
        },
        Example {
            name: "repetition code of length N+1 gives phase_rotation(N)",
            check: |_, b| {
                let f3 = fq(3)?;
                let rep = LinearCode::from_rows(&f3, 4, vec![vec![1; 4]])?;
                Ok(are_equivalent(&family_from_code(&rep, b)?, &phase_rotation(&f3, 3)?, b)?.is_some())
            },
        },
        Example {
            name: "F_7 pair is not linearly equivalent",
            check: |_, b| {
                let (f, g) = f7_pair()?;
                Ok(are_equivalent(&f, &g, b)?.is_none())
            },
        },
        Example {
            name: "stabilizer of parent code and preimage of D matches isometries fixing D",
            check: |_, b| {
                let f2 = fq(2)?;
                let fam = phase_rotation(&f2, 2)?;
                let phi = ParentFunction::new(&fam);
                let d = LinearCode::from_rows(&f2, 2, vec![vec![1, 1]])?;
                let pre = preimage_code(&d, &phi)?;
                let pc = phi.parent_code();
                let stab: Vec<MonomialMap> = joint_stabilizer(&[&pc, &pre], b)?;
                let mut down: Vec<_> = stab
                    .iter()
                    .map(|m| push_down(m, &fam).map(|l| l.matrix().rows().to_vec()))
                    .collect::<Result<_>>()?;
                let dv = v(&f2, &[1, 1])?;
                let mut direct: Vec<_> = aut_group_brute_force(&fam, b)?
                    .into_iter()
                    .filter(|l| l.apply(&dv) == dv)
                    .map(|l| l.matrix().rows().to_vec())
                    .collect();
                down.sort();
                direct.sort();
                Ok(!down.is_empty() && down == direct)
            },
        },
        Example {
            name: "parent codes under two orderings are Hamming equivalent",
            check: |_, b| {
                let f3 = fq(3)?;
                let fam = rank(&f3, 2, 2)?;
                let mut vs = fam.vectors();
                vs.reverse();
                vs.rotate_left(3);
                let other = SpanningFamily::new(&f3, 4, vs)?;
                let (a, c) = (ParentFunction::new(&fam).parent_code(), ParentFunction::new(&other).parent_code());
                Ok(are_hamming_equivalent(&a, &c, b)?.is_some())
            },
        },
        Example {
            name: "extended phase_rotation over F_2 is every nonzero vector",
            check: |_, b| {
                let f2 = fq(2)?;
                for n in 2..=4 {
                    let ext = extended_family(&phase_rotation(&f2, n)?, b)?;
                    if ext.len() != (1 << n) - 1 {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        },
        Example {
            name: "extension of a direct sum is the direct sum of extensions",
            check: |_, b| {
                let f3 = fq(3)?;
                let (f, g) = (phase_rotation(&f3, 3)?, hamming(&f3, 2)?);
                let lhs = extended_family(&disjoint_union(&f, &g)?, b)?;
                let rhs = disjoint_union(&extended_family(&f, b)?, &extended_family(&g, b)?)?;
                Ok(lhs.same_set(&rhs))
            },
        },
        Example {
            name: "F_7 pair is matroid equivalent",
            check: |_, b| {
                let (f, g) = f7_pair()?;
                Ok(extended_matroid_equivalent(&f, &g, b)?.is_some())
            },
        },
        Example {
            name: "hamming: mu(t) = t",
            check: |_, b| {
                let fam = hamming(&fq(3)?, 4)?;
                Ok(mu_profile(&fam, &weight_table(&fam, b)?, b)? == [0, 1, 2, 3, 4])
            },
        },
        Example {
            name: "phase_rotation: mu(t) = t below the top weight, N at it",
            check: |_, b| {
                let fam = phase_rotation(&fq(3)?, 4)?;
                let p2 = phase_rotation(&fq(2)?, 5)?;
                Ok(mu_profile(&fam, &weight_table(&fam, b)?, b)? == [0, 1, 2, 4]
                    && mu_profile(&p2, &weight_table(&p2, b)?, b)? == [0, 1, 2, 5])
            },
        },
        Example {
            name: "rank(2,3): mu(1) = 3, mu(2) = 6",
            check: |_, b| {
                let fam = rank(&fq(2)?, 2, 3)?;
                let t = weight_table(&fam, b)?;
                Ok(mu(&fam, &t, 1, b)?.value == 3 && mu(&fam, &t, 2, b)?.value == 6)
            },
        },
        Example {
            name: "hamming Singleton bound is q^(N-d+1)",
            check: |_, b| {
                let fam = hamming(&fq(3)?, 4)?;
                let t = weight_table(&fam, b)?;
                Ok((1..=4).all(|d| singleton_bound(&fam, &t, d, b).map(|s| s.value() == Some(3u128.pow(5 - d as u32))).unwrap_or(false)))
            },
        },
        Example {
            name: "rank Singleton bound is q^(max(m,n)(min(m,n)-d+1))",
            check: |_, b| {
                for (q, m, n, d) in [(2u64, 2usize, 2usize, 2u16), (2, 2, 3, 2), (3, 2, 2, 1), (2, 2, 3, 1)] {
                    let fam = rank(&fq(q)?, m, n)?;
                    let t = weight_table(&fam, b)?;
                    let want = (q as u128).pow((m.max(n) * (m.min(n) + 1 - d as usize)) as u32);
                    if singleton_bound(&fam, &t, d, b)?.value() != Some(want) {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        },
        Example {
            name: "gap family: anticode of dimension 3 in B_2 while mu(2) = 2",
            check: |_, b| {
                let fam = gap_family()?;
                let t = weight_table(&fam, b)?;
                Ok(exact_anticode_max(&t, 2, 3, b)?.dim == 3 && mu(&fam, &t, 2, b)?.value == 2)
            },
        },
        Example {
            name: "general construction reproduces the 14-vector family",
            check: |_, b| {
                let f2 = fq(2)?;
                let g = LinearCode::from_rows(&f2, 6, vec![vec![1, 1, 1, 1, 0, 0], vec![1, 1, 0, 0, 1, 1], vec![1; 6]])?;
                Ok(anticode_counterexample_family(&g, b)?.same_set(&gap_family()?))
            },
        },
        Example {
            name: "G with d(G) = 4 and dimension 3 gives parent distance 6",
            check: |_, b| {
                let f2 = fq(2)?;
                let g = LinearCode::from_rows(
                    &f2,
                    8,
                    vec![vec![1, 1, 1, 1, 0, 0, 0, 0], vec![0, 0, 1, 1, 1, 1, 0, 0], vec![0, 0, 0, 0, 1, 1, 1, 1]],
                )?;
                let fam = anticode_counterexample_family(&g, b)?;
                Ok(min_hamming_distance(&g, b)? == 4
                    && min_hamming_distance(&ParentFunction::new(&fam).parent_code(), b)? == 6)
            },
        },
        Example {
            name: "phase weight of 1101 is min(3, 1 + 1) = 2",
            check: |_, _| Ok(phase_weight(&v(&fq(2)?, &[1, 1, 0, 1])?) == 2),
        },
        Example {
            name: "free weight of the discrete weight is Hamming weight",
            check: |_, b| {
                let f3 = fq(3)?;
                let t = weight_table(&discrete(&f3, 2)?, b)?;
                let v = WeightedSpace::new(&f3, 2, t.weights().to_vec(), b)?;
                let free = free_weighted_space(&v)?;
                Ok(free.t.iter().all(|&t| t == 1) && free.reps.len() == projective_points(&f3, 2)?.len())
            },
        },
        Example {
            name: "weights (1,1,2) on F_2^2 embed into Hamming with a = 0",
            check: |_, b| {
                let fr = pareto_frontier_f2_dim2(1, 1, 2)?;
                Ok(fr.pairs == [(0, 0)] && is_ab_embeddable(&ws([1, 1, 2], b)?, 0, 0, b)?.is_some())
            },
        },
        Example {
            name: "weights (2,2,2): (1,0) is attained",
            check: |_, b| {
                Ok(pareto_frontier_f2_dim2(2, 2, 2)?.pairs == [(1, 0)]
                    && is_ab_embeddable(&ws([2, 2, 2], b)?, 1, 0, b)?.is_some())
            },
        },
        Example {
            name: "weights (1,1,1): (0,0) fails and 2a - b = t1 + t2 + t3 - 4",
            check: |_, b| {
                let fr = pareto_frontier_f2_dim2(1, 1, 1)?;
                let (a, bb) = fr.pairs[0];
                Ok(is_ab_embeddable(&ws([1, 1, 1], b)?, 0, 0, b)?.is_none() && 2 * a as i64 - bb as i64 == -1)
            },
        },
        Example {
            name: "weights (1,1,1): frontier is {(0,1)}",
            check: |_, b| {
                Ok(pareto_frontier_f2_dim2(1, 1, 1)?.pairs == [(0, 1)]
                    && is_ab_embeddable(&ws([1, 1, 1], b)?, 0, 1, b)?.is_some())
            },
        },
        Example {
            name: "[7,4] Hamming code stays perfect under phase_rotation(6)",
            check: |_, b| {
                let r = perfect_transfer(&hamming_7_4()?, &ParentFunction::new(&phase_rotation(&fq(2)?, 6)?), b)?;
                Ok(r.family_radius == Some(1) && r.family_distance == 3 && r.hamming_distance == 3)
            },
        },
    ]
}

fn doubled_hamming(b: &Budget) -> Result<WeightTable> {
    let f2 = fq(2)?;
    let w = hamming_table(&f2, 2, b)?.weights().iter().map(|&x| 2 * x).collect();
    WeightTable::from_weights(&f2, 2, w)
}

pub(crate) fn run_all(seed: u64, budget: &Budget) -> Vec<(&'static str, bool)> {
    reference_examples().into_iter().map(|e| (e.name, (e.check)(seed, budget).unwrap_or(false))).collect()
}
