mod common;

use common::{letters, word_strategy};
use magnus_core::freewords::{format_word, infer_alphabet, Presentation};
use magnus_core::{commutator, parse_word, Alphabet, GroupWord};
use proptest::prelude::*;

/// Stack-based free reduction, one letter at a time.
fn naive_reduce(letters: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut stack: Vec<(usize, i64)> = Vec::new();
    for &(g, e) in letters {
        if stack.last() == Some(&(g, -e)) {
            stack.pop();
        } else {
            stack.push((g, e));
        }
    }
    stack
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn reduction_matches_letter_stack(raw in letters(3, 16)) {
        let a = Alphabet::numbered(3);
        let w = GroupWord::reduce(&a, raw.clone()).unwrap();
        let spelled: Vec<(usize, i64)> = w.letters().collect();
        prop_assert_eq!(&spelled, &naive_reduce(&raw));
        let again = GroupWord::reduce(&a, spelled).unwrap();
        prop_assert_eq!(again, w);
    }

    #[test]
    fn multiplication_is_associative(
        u in word_strategy(Alphabet::numbered(3), 10),
        v in word_strategy(Alphabet::numbered(3), 10),
        w in word_strategy(Alphabet::numbered(3), 10),
    ) {
        let left = u.multiply(&v).unwrap().multiply(&w).unwrap();
        let right = u.multiply(&v.multiply(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverses_cancel(u in word_strategy(Alphabet::numbered(3), 12)) {
        prop_assert!(u.multiply(&u.invert()).unwrap().is_identity());
        prop_assert!(u.invert().multiply(&u).unwrap().is_identity());
        prop_assert_eq!(u.invert().invert(), u);
    }

    #[test]
    fn cyclic_reduction_splits_word(u in word_strategy(Alphabet::numbered(2), 12)) {
        let (conj, core) = u.cyclic_reduce();
        let rebuilt = conj.multiply(&core).unwrap().multiply(&conj.invert()).unwrap();
        prop_assert_eq!(&rebuilt, &u);
        let l: Vec<(usize, i64)> = core.letters().collect();
        if l.len() >= 2 {
            let (first, last) = (l[0], l[l.len() - 1]);
            prop_assert!(!(first.0 == last.0 && first.1 == -last.1));
        }
    }

    #[test]
    fn printing_round_trips(u in word_strategy(Alphabet::numbered(3), 12)) {
        let text = format_word(&u);
        let back = parse_word(&text, u.alphabet()).unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn commutator_abelianizes_to_zero(
        u in word_strategy(Alphabet::numbered(3), 8),
        v in word_strategy(Alphabet::numbered(3), 8),
    ) {
        let c = commutator(&u, &v).unwrap();
        prop_assert!(c.exponent_sums().iter().all(|&s| s == 0));
    }
}

#[test]
fn spelled_examples() {
    let a = Alphabet::numbered(2);
    let w = parse_word("[[x1,x2],x1]", &a).unwrap();
    assert_eq!(w.to_string(), "x2^-1*x1^-1*x2*x1^-1*x2^-1*x1*x2*x1");
    assert_eq!(w.len(), 8);
    let (conj, core) = parse_word("x1*x2*x1^-1", &a).unwrap().cyclic_reduce();
    assert_eq!(conj.to_string(), "x1");
    assert_eq!(core.to_string(), "x2");
    assert_eq!(infer_alphabet("x3*x1").unwrap().rank(), 3);
}

#[test]
fn presentation_round_trip() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/genus2.pres")).unwrap();
    let p = Presentation::parse(&text).unwrap();
    assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
}
