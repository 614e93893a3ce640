mod common;

use common::{lyndon_counts, random_word};
use magnus_core::lcs::hall::weight_counts;
use magnus_core::lcs::{
    abelianization, hall_basis, nilpotent_quotient, parafree_compare, smith_normal_form, witt_number,
    AbelianInvariants, IntMatrix, NqOptions,
};
use magnus_core::{Alphabet, GroupWord, Presentation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn hall_witt_and_lyndon_agree() {
    for q in 1..=4usize {
        let basis = hall_basis(q, 6);
        let hall = weight_counts(&basis, 6);
        let witt: Vec<usize> = (1..=6).map(|n| witt_number(q as u64, n) as usize).collect();
        assert_eq!(hall, witt, "q={q}");
        assert_eq!(lyndon_counts(q, 6), witt, "q={q}");
    }
}

fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> IntMatrix {
    IntMatrix::from_rows(
        cols,
        (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9i64..=9)).collect::<Vec<i64>>()),
    )
}

fn scramble<R: Rng>(rng: &mut R, m: &IntMatrix) -> IntMatrix {
    let mut m = m.clone();
    for _ in 0..12 {
        let (a, b) = (rng.gen_range(0..m.rows()), rng.gen_range(0..m.rows()));
        if a != b {
            m.add_row_multiple(a, b, &BigInt::from(rng.gen_range(-3..=3)));
        }
        let (c, d) = (rng.gen_range(0..m.cols()), rng.gen_range(0..m.cols()));
        if c != d {
            m.add_col_multiple(c, d, &BigInt::from(rng.gen_range(-3..=3)));
        }
        m.swap_rows(rng.gen_range(0..m.rows()), rng.gen_range(0..m.rows()));
        m.swap_cols(rng.gen_range(0..m.cols()), rng.gen_range(0..m.cols()));
        if rng.gen_bool(0.2) {
            m.negate_row(rng.gen_range(0..m.rows()));
        }
    }
    m
}

/// Determinant by exact rational elimination.
fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|r| m.row(r).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        let pivot = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            let f = &row[c] / &pivot[c];
            for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                *x -= &f * p;
            }
        }
    }
    det.to_integer()
}

#[test]
fn smith_form_is_a_unimodular_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..1_000 {
        let m = random_matrix(&mut rng, 5, 5);
        let snf = smith_normal_form(&m);
        assert_eq!(smith_normal_form(&scramble(&mut rng, &m)), snf);
        for pair in snf.divisors.windows(2) {
            assert!(pair[1].is_multiple_of(&pair[0]));
        }
        let det = determinant(&m);
        if snf.rank == 5 {
            let prod: BigInt = snf.divisors.iter().product();
            assert_eq!(prod, det.abs());
        } else {
            assert!(det.is_zero());
        }
        let content = (0..5)
            .flat_map(|r| m.row(r).to_vec())
            .fold(BigInt::zero(), |g, x| g.gcd(&x));
        if !content.is_zero() {
            assert_eq!(snf.divisors[0], content);
        }
    }
}

#[test]
fn free_groups_have_witt_layers() {
    for (rank, class) in [(1, 4), (2, 6), (3, 4), (4, 3)] {
        let p = Presentation::free(Alphabet::numbered(rank));
        let nq = nilpotent_quotient(&p, class, &NqOptions::default()).unwrap();
        for (i, l) in nq.layers.iter().enumerate() {
            let w = witt_number(rank as u64, i as u64 + 1) as usize;
            assert_eq!(*l, AbelianInvariants::free(w), "rank {rank} layer {}", i + 1);
        }
        nq.cover.check_consistency().unwrap();
    }
}

fn random_presentation<R: Rng>(rng: &mut R) -> Presentation {
    let rank = rng.gen_range(1..=3);
    let a = Alphabet::numbered(rank);
    let count = rng.gen_range(1..=2);
    let relators = (0..count)
        .map(|_| loop {
            let w = random_word(rng, &a, 6);
            if !w.is_identity() {
                break w;
            }
        })
        .collect();
    Presentation::new(a, relators).unwrap()
}

#[test]
fn first_layer_is_the_abelianization() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..60 {
        let p = random_presentation(&mut rng);
        let nq = nilpotent_quotient(&p, 2, &NqOptions::default()).unwrap();
        assert_eq!(nq.layers[0], abelianization(&p), "{p}");
    }
}

#[test]
fn consequences_do_not_change_layers() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..30 {
        let p = random_presentation(&mut rng);
        let r = &p.relators()[0];
        let g = random_word(&mut rng, p.alphabet(), 3);
        let consequence = r.conjugate_by(&g).unwrap().multiply(&r.invert()).unwrap();
        let q = p.with_relator(consequence).unwrap();
        let opts = NqOptions::default();
        let a = nilpotent_quotient(&p, 3, &opts).unwrap();
        let b = nilpotent_quotient(&q, 3, &opts).unwrap();
        assert_eq!(a.layers, b.layers, "{p}");
    }
}

/// Lower central ranks of a closed orientable surface group of genus `g`:
/// `(1/n) sum_{d | n} mu(n/d) p_d` with `p_d` the power sums of the roots of
/// `1 - 2g t + t^2`, i.e. `p_d = 2g p_{d-1} - p_{d-2}`.
fn surface_ranks(g: i64, class: usize) -> Vec<usize> {
    let mut p = vec![2i64, 2 * g];
    while p.len() <= class {
        let k = p.len();
        p.push(2 * g * p[k - 1] - p[k - 2]);
    }
    let mobius = |mut n: usize| -> i64 {
        let mut sign = 1;
        let mut f = 2;
        while f * f <= n {
            if n.is_multiple_of(f) {
                n /= f;
                if n.is_multiple_of(f) {
                    return 0;
                }
                sign = -sign;
            }
            f += 1;
        }
        if n > 1 {
            -sign
        } else {
            sign
        }
    };
    (1..=class)
        .map(|n| {
            let s: i64 = (1..=n).filter(|d| n % d == 0).map(|d| mobius(n / d) * p[d]).sum();
            (s / n as i64) as usize
        })
        .collect()
}

fn surface(genus: usize) -> Presentation {
    let names: Vec<String> = (1..=genus).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect();
    let a = Alphabet::new(names).unwrap();
    let mut r = GroupWord::identity(&a);
    for i in 0..genus {
        let x = GroupWord::generator(&a, 2 * i).unwrap();
        let y = GroupWord::generator(&a, 2 * i + 1).unwrap();
        r = r.multiply(&magnus_core::commutator(&x, &y).unwrap()).unwrap();
    }
    Presentation::new(a, vec![r]).unwrap()
}

#[test]
fn surface_groups_match_closed_formula() {
    for (genus, class) in [(1, 4), (2, 4), (3, 3)] {
        let nq = nilpotent_quotient(&surface(genus), class, &NqOptions::default()).unwrap();
        let expected: Vec<AbelianInvariants> = surface_ranks(genus as i64, class)
            .into_iter()
            .map(AbelianInvariants::free)
            .collect();
        assert_eq!(nq.layers, expected, "genus {genus}");
    }
}

#[test]
fn free_groups_are_parafree_of_their_rank() {
    for rank in 1..=3 {
        let p = Presentation::free(Alphabet::numbered(rank));
        let v = parafree_compare(&p, rank, 5, &NqOptions::default()).unwrap();
        assert!(v.iter().all(|l| l.is_equal()));
        let other = parafree_compare(&p, rank + 1, 1, &NqOptions::default()).unwrap();
        assert!(!other[0].is_equal());
    }
}
