mod common;

use common::random_word;
use magnus_core::whitehead::type_ii_raw;
use magnus_core::{enumerate_autos, is_primitive, minimize, parse_word, Alphabet, CyclicWord};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gcd_of_sums(w: &magnus_core::GroupWord) -> i64 {
    w.exponent_sums().into_iter().fold(0i64, |g, s| g.gcd(&s))
}

#[test]
fn moves_are_invertible_homomorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for rank in 1..=3 {
        let a = Alphabet::numbered(rank);
        let autos = enumerate_autos(rank).unwrap();
        for _ in 0..200 {
            let auto = &autos[rng.gen_range(0..autos.len())];
            let u = random_word(&mut rng, &a, 10);
            let v = random_word(&mut rng, &a, 10);
            let image = auto.apply(&u).unwrap();
            assert_eq!(auto.inverse().apply(&image).unwrap(), u);
            assert_eq!(
                auto.apply(&u.multiply(&v).unwrap()).unwrap(),
                image.multiply(&auto.apply(&v).unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn type_ii_counts() {
    for q in 1..=4usize {
        assert_eq!(type_ii_raw(q).len(), 2 * q * 4usize.pow(q as u32 - 1));
    }
    assert_eq!(enumerate_autos(1).unwrap().len(), 2);
}

#[test]
fn minimum_is_an_orbit_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for rank in 2..=3 {
        let a = Alphabet::numbered(rank);
        let autos = enumerate_autos(rank).unwrap();
        for _ in 0..40 {
            let w = random_word(&mut rng, &a, 10);
            if w.is_identity() {
                continue;
            }
            let base = minimize(&w).unwrap().minimal.len();
            let g = random_word(&mut rng, &a, 4);
            assert_eq!(minimize(&w.conjugate_by(&g).unwrap()).unwrap().minimal.len(), base);
            let auto = &autos[rng.gen_range(0..autos.len())];
            assert_eq!(minimize(&auto.apply(&w).unwrap()).unwrap().minimal.len(), base, "{w}");
        }
    }
}

#[test]
fn primitives_have_unimodular_abelian_image() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for rank in 1..=3 {
        let a = Alphabet::numbered(rank);
        for _ in 0..100 {
            let w = random_word(&mut rng, &a, 10);
            if !w.is_identity() && is_primitive(&w).unwrap() {
                assert_eq!(gcd_of_sums(&w), 1, "{w}");
            }
        }
    }
}

#[test]
fn images_of_generators_are_primitive() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let a = Alphabet::numbered(3);
    let autos = enumerate_autos(3).unwrap();
    for _ in 0..50 {
        let mut w = parse_word("x1", &a).unwrap();
        for _ in 0..4 {
            w = autos[rng.gen_range(0..autos.len())].apply(&w).unwrap();
        }
        assert!(is_primitive(&w).unwrap(), "{w}");
    }
}

#[test]
fn descent_is_deterministic() {
    let a = Alphabet::numbered(3);
    let w = parse_word("x1*x2*x3*x1*x2^-1*x3*x3", &a).unwrap();
    let first = minimize(&w).unwrap();
    for _ in 0..3 {
        assert_eq!(minimize(&w).unwrap(), first);
    }
    let mut cur = w.clone();
    for auto in &first.path {
        cur = auto.apply(&cur).unwrap();
    }
    assert_eq!(CyclicWord::new(&cur), first.minimal);
}
