mod common;

use std::collections::BTreeMap;

use common::{all_maps, random_graph};
use num_complex::Complex64;
use qgadget::defect::{
    assignment_defect, cc_defect, commutator_defect, cv_defect, PairDist, Strategy, Weight,
};
use qgadget::qrep::{four_cycle_rep, pair_swap_rep, CMatrix};
use qgadget::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every labelled graph on `n` vertices with at least one edge.
fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (1u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

/// Uniform weight on ordered pairs of directed edges sharing a vertex.
fn sharing_pairs(h: &Graph) -> PairDist {
    let dir: Vec<(usize, usize)> = h
        .edges()
        .into_iter()
        .flat_map(|(u, v)| [(u, v), (v, u)])
        .collect();
    let mut keys = Vec::new();
    for &e in &dir {
        for &f in &dir {
            if e != f && [e.0, e.1].iter().any(|x| *x == f.0 || *x == f.1) {
                keys.push((e, f));
            }
        }
    }
    let w = Weight::new(1, keys.len().max(1) as i64);
    keys.into_iter().map(|k| (k, w)).collect()
}

#[test]
fn classical_strategies_on_small_instances() {
    for target in ["K:2", "K:3"] {
        let g = common::family(target);
        for n in 2..=5 {
            for h in all_graphs(n) {
                let dist = Strategy::uniform_dist(&h).unwrap();
                let pairs = sharing_pairs(&h);
                for map in all_maps(n, g.n()) {
                    let s = Strategy::classical(&h, &g, &map, dist.clone()).unwrap();
                    let d = assignment_defect(&s);
                    if h.is_homomorphism(&g, &map) {
                        assert_eq!(d, 0.0);
                        assert_eq!(cv_defect(&s).unwrap(), 0.0);
                        if !pairs.is_empty() {
                            assert_eq!(cc_defect(&s, &pairs).unwrap(), 0.0);
                        }
                    } else {
                        assert!(d > 0.0);
                    }
                }
            }
        }
    }
}

#[test]
fn assignment_defect_is_one_minus_game_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut done = 0;
    while done < 100 {
        let hn = rng.gen_range(2..=8);
        let h = random_graph(&mut rng, hn, 0.4);
        let gn = rng.gen_range(2..=6);
        let g = random_graph(&mut rng, gn, 0.5);
        if h.edge_count() == 0 {
            continue;
        }
        let map: Vec<usize> = (0..h.n()).map(|_| rng.gen_range(0..g.n())).collect();
        // random rational distribution over directed edges
        let dir: Vec<(usize, usize)> = h
            .edges()
            .into_iter()
            .flat_map(|(u, v)| [(u, v), (v, u)])
            .collect();
        let raw: Vec<i64> = dir.iter().map(|_| rng.gen_range(1..=5)).collect();
        let total: i64 = raw.iter().sum();
        let dist: BTreeMap<_, _> = dir
            .iter()
            .zip(&raw)
            .map(|(&e, &r)| (e, Weight::new(r, total)))
            .collect();
        let won: f64 = dir
            .iter()
            .zip(&raw)
            .filter(|((x, y), _)| g.adjacent(map[*x], map[*y]))
            .map(|(_, &r)| r as f64 / total as f64)
            .sum();
        let s = Strategy::classical(&h, &g, &map, dist).unwrap();
        assert!((assignment_defect(&s) - (1.0 - won)).abs() < 1e-12);
        done += 1;
    }
}

fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> CMatrix {
    // Gram-Schmidt on the columns of a random complex matrix
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for c in &cols {
            let dot: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ci) in v.iter_mut().zip(c) {
                *vi -= dot * ci;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    CMatrix::from_rows(
        (0..d)
            .map(|i| (0..d).map(|j| cols[j][i]).collect())
            .collect(),
    )
}

fn conjugate(s: &Strategy, u: &CMatrix) -> Strategy {
    let (h, g) = (s.instance(), s.target());
    let ua = u.adjoint();
    let pvms = (0..h.n())
        .map(|x| (0..g.n()).map(|a| &(u * s.pvm(x, a)) * &ua).collect())
        .collect();
    Strategy::new(h.clone(), g.clone(), s.dim(), pvms, None, s.dist().clone())
        .unwrap()
        .with_tol(1e-8)
        .unwrap()
}

#[test]
fn defects_are_unitarily_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let reps = [
        pair_swap_rep(4).unwrap(),
        four_cycle_rep(&common::family("K:4"), [0, 1, 2, 3]).unwrap(),
    ];
    for r in &reps {
        let s = Strategy::from_rep(r, Strategy::uniform_dist(&r.domain).unwrap()).unwrap();
        for _ in 0..10 {
            let u = random_unitary(&mut rng, r.dim);
            let t = conjugate(&s, &u);
            for x in 0..r.domain.n() {
                for y in 0..r.domain.n() {
                    let (a, b) = (
                        commutator_defect(&s, x, y).unwrap(),
                        commutator_defect(&t, x, y).unwrap(),
                    );
                    assert!((a - b).abs() < 1e-8);
                }
            }
            assert!((assignment_defect(&s) - assignment_defect(&t)).abs() < 1e-8);
        }
    }
}
