//! Basic commutators (a Hall basis) of a free group.
//!
//! Weight-1 basic commutators are the generators `x_1 < ... < x_q`. A
//! bracket `[u, v]` of basic commutators is basic when `u > v` and, if
//! `u = [p, r]`, also `r <= v`. Basic commutators are ordered by weight,
//! then by `(left, right)` position. Their number in weight `n` is the Witt
//! number, and those of weight `n` give a free basis of
//! `gamma_n(F) / gamma_{n+1}(F)`.

use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::freewords::{commutator, Alphabet, GroupWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Generator(usize),
    Bracket { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasicCommutator {
    pub id: usize,
    pub weight: usize,
    pub shape: Shape,
}

/// All basic commutators of weight `<= class` on `rank` generators.
pub fn hall_basis(rank: usize, class: usize) -> Vec<BasicCommutator> {
    let mut basis: Vec<BasicCommutator> = (0..rank)
        .map(|i| BasicCommutator {
            id: i,
            weight: 1,
            shape: Shape::Generator(i),
        })
        .collect();
    if class == 0 {
        return Vec::new();
    }
    for n in 2..=class {
        let mut pairs = Vec::new();
        for u in &basis {
            for v in &basis {
                if u.weight + v.weight != n || u.id <= v.id {
                    continue;
                }
                if let Shape::Bracket { right, .. } = u.shape {
                    if right > v.id {
                        continue;
                    }
                }
                pairs.push((u.id, v.id));
            }
        }
        pairs.sort_unstable();
        for (left, right) in pairs {
            let id = basis.len();
            basis.push(BasicCommutator {
                id,
                weight: n,
                shape: Shape::Bracket { left, right },
            });
        }
    }
    basis
}

/// Number of basic commutators of each weight `1..=class`.
pub fn weight_counts(basis: &[BasicCommutator], class: usize) -> Vec<usize> {
    let mut counts = vec![0; class];
    for b in basis {
        if b.weight <= class {
            counts[b.weight - 1] += 1;
        }
    }
    counts
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `(1/n) * sum_{d | n} mu(d) q^(n/d)`, the rank of the `n`-th lower
/// central factor of a free group of rank `q`.
pub fn witt_number(rank: u64, n: u64) -> u64 {
    assert!(n > 0);
    let mut total: i128 = 0;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            total += mobius(d) as i128 * (rank as i128).pow((n / d) as u32);
        }
    }
    (total / n as i128) as u64
}

/// The commutator spelled out as a group word over `alphabet`.
pub fn basic_word(basis: &[BasicCommutator], id: usize, alphabet: &Arc<Alphabet>) -> Result<GroupWord> {
    match basis[id].shape {
        Shape::Generator(i) => GroupWord::generator(alphabet, i),
        Shape::Bracket { left, right } => commutator(
            &basic_word(basis, left, alphabet)?,
            &basic_word(basis, right, alphabet)?,
        ),
    }
}

/// Bracket notation such as `[[x2,x1],x1]`.
pub struct BracketDisplay<'a> {
    pub basis: &'a [BasicCommutator],
    pub id: usize,
    pub alphabet: &'a Alphabet,
}

impl fmt::Display for BracketDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.basis[self.id].shape {
            Shape::Generator(i) => f.write_str(self.alphabet.name(i)),
            Shape::Bracket { left, right } => {
                let sub = |id| BracketDisplay {
                    basis: self.basis,
                    id,
                    alphabet: self.alphabet,
                };
                write!(f, "[{},{}]", sub(left), sub(right))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(weight_counts(&hall_basis(1, 3), 3), vec![1, 0, 0]);
        assert_eq!(weight_counts(&hall_basis(2, 5), 5), vec![2, 1, 2, 3, 6]);
        assert_eq!(weight_counts(&hall_basis(3, 2), 2), vec![3, 3]);
        assert!(hall_basis(2, 0).is_empty());
    }

    #[test]
    fn witt_values() {
        let got: Vec<u64> = (1..=6).map(|n| witt_number(2, n)).collect();
        assert_eq!(got, vec![2, 1, 2, 3, 6, 9]);
        assert_eq!(witt_number(3, 4), 18);
        assert_eq!(witt_number(1, 1), 1);
        assert_eq!(witt_number(1, 2), 0);
    }

    #[test]
    fn hall_condition_holds() {
        let basis = hall_basis(3, 5);
        for b in &basis {
            assert!(b.weight <= 5);
            if let Shape::Bracket { left, right } = b.shape {
                assert!(left > right);
                assert_eq!(b.weight, basis[left].weight + basis[right].weight);
                if let Shape::Bracket { right: r, .. } = basis[left].shape {
                    assert!(r <= right);
                }
            }
        }
        assert!(basis.windows(2).all(|w| w[0].weight <= w[1].weight));
    }

    #[test]
    fn display() {
        let basis = hall_basis(2, 3);
        let a = Alphabet::numbered(2);
        let shown: Vec<String> = (0..basis.len())
            .map(|id| BracketDisplay { basis: &basis, id, alphabet: &a }.to_string())
            .collect();
        assert_eq!(shown, vec!["x1", "x2", "[x2,x1]", "[[x2,x1],x1]", "[[x2,x1],x2]"]);
    }
}
