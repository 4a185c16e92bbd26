mod common;

use common::{corpus, family, random_graph};
use qgadget::endo::{
    enumerate_endomorphisms, find_schmidt_pair, is_wac, supports_disconnected, supports_disjoint,
    Endomorphism,
};
use qgadget::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graphs() -> Vec<Graph> {
    let mut gs = corpus(8);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let n = rng.gen_range(3..=7);
        gs.push(random_graph(&mut rng, n, 0.45));
    }
    gs
}

/// Runs `check` on every ordered pair of endomorphisms, skipping graphs
/// whose monoid is too large for quadratic work.
fn for_pairs(mut check: impl FnMut(&Graph, &Endomorphism, &Endomorphism)) {
    for g in graphs() {
        let endos = enumerate_endomorphisms(&g, 12).unwrap();
        if endos.len() > 400 {
            continue;
        }
        for f in &endos {
            for h in &endos {
                check(&g, f, h);
            }
        }
    }
}

#[test]
fn wac_is_stable_under_powers() {
    // only claimed for disjoint supports, which is where it gets used
    for_pairs(|g, f, h| {
        if supports_disjoint(g, f, h).unwrap() && is_wac(g, f, h).unwrap() {
            for i in 1..=4 {
                for j in 1..=4 {
                    assert!(
                        is_wac(g, &f.power(i), &h.power(j)).unwrap(),
                        "{g:?} {f:?} {h:?} {i} {j}"
                    );
                }
            }
        }
    });
}

#[test]
fn wac_powers_can_fail_with_overlapping_supports() {
    // a rotation of K_3 is WAC with itself but not with its square
    let g = family("K:3");
    let f = Endomorphism::new(&g, vec![1, 2, 0]).unwrap();
    assert!(is_wac(&g, &f, &f).unwrap());
    assert!(!is_wac(&g, &f, &f.power(2)).unwrap());
}

#[test]
fn commuting_disjoint_and_disconnected_pairs_are_wac() {
    for_pairs(|g, f, h| {
        let disjoint = supports_disjoint(g, f, h).unwrap();
        if disjoint && f.compose(h) == h.compose(f) {
            assert!(is_wac(g, f, h).unwrap(), "{g:?} {f:?} {h:?}");
        }
        if supports_disconnected(g, f, h).unwrap() {
            assert!(is_wac(g, f, h).unwrap());
        }
        assert!(is_wac(g, f, f).unwrap());
        assert_eq!(is_wac(g, f, h).unwrap(), is_wac(g, h, f).unwrap());
    });
}

#[test]
fn endomorphisms_form_a_monoid() {
    for g in graphs() {
        let endos = enumerate_endomorphisms(&g, 12).unwrap();
        assert!(endos[0].is_identity());
        if endos.len() > 400 {
            continue;
        }
        let set: std::collections::HashSet<_> = endos.iter().cloned().collect();
        assert_eq!(set.len(), endos.len());
        for f in &endos {
            for h in &endos {
                assert!(set.contains(&f.compose(h)));
            }
        }
    }
}

#[test]
fn schmidt_certificates_reverify() {
    for g in graphs() {
        for oracular in [false, true] {
            if let Some(c) = find_schmidt_pair(&g, oracular, 12).unwrap() {
                c.verify(&g).unwrap();
            }
        }
    }
}
