//! The Magnus embedding `x_i -> 1 + xi_i` of a free group into the units of
//! the power-series ring, and the lower-central-series certificates it
//! yields.
//!
//! If `f` lies in the `n`-th term of the lower central series then every
//! homogeneous component of `mu(f) - 1` below degree `n` vanishes. A
//! [`GammaCertificate`] records the first component that does not vanish:
//! by the contrapositive, a nonzero degree-`n` component proves
//! `f` is not in `gamma_{n+1}`. Reading `n` as the exact weight (that `f`
//! does lie in `gamma_n`) additionally relies on the classical theorem that
//! the dimension subgroups of a free group coincide with its lower central
//! series; the certificate text labels the weight on that basis.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::freewords::{ExpWord, GroupWord};
use crate::series::Series;

/// `mu(w)` truncated at degree `trunc`.
pub fn expand(w: &GroupWord, trunc: usize) -> Result<Series> {
    let rank = w.alphabet().rank();
    let mut out = Series::one(rank, trunc)?;
    for &(g, e) in w.syllables() {
        let factor = Series::binomial_power(rank, trunc, g, &BigRational::from_integer(e.into()))?;
        out = out.mul(&factor)?;
    }
    Ok(out)
}

/// Image of a rational-exponent word: each syllable `x_i^(p/q)` goes to
/// `(1 + xi_i)^(p/q)` by the binomial series.
pub fn expand_rational_word(w: &ExpWord, trunc: usize) -> Result<Series> {
    let rank = w.alphabet().rank();
    let mut out = Series::one(rank, trunc)?;
    for (g, e) in w.syllables() {
        out = out.mul(&Series::binomial_power(rank, trunc, *g, e)?)?;
    }
    Ok(out)
}

/// Evidence that `word` has lower-central weight `weight`: the components
/// of `mu(word) - 1` in degrees `1..weight` vanish and `witness`, the
/// degree-`weight` component, does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaCertificate {
    pub word: GroupWord,
    pub weight: usize,
    pub witness: Series,
    pub truncation: usize,
}

impl GammaCertificate {
    /// Re-derives the certificate from scratch and checks it.
    pub fn verify(&self) -> Result<bool> {
        let image = expand(&self.word, self.truncation)?;
        let deviation = image.sub(&Series::one(image.rank(), self.truncation)?)?;
        for n in 1..self.weight {
            if !deviation.homogeneous_component(n)?.is_zero() {
                return Ok(false);
            }
        }
        let witness = deviation.homogeneous_component(self.weight)?;
        Ok(!witness.is_zero() && witness == self.witness)
    }
}

impl fmt::Display for GammaCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "word={}", self.word)?;
        writeln!(f, "n={}", self.weight)?;
        writeln!(f, "trunc={}", self.truncation)?;
        writeln!(f, "witness:")?;
        write!(f, "{}", self.witness.to_text())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightOutcome {
    Certified(GammaCertificate),
    /// Every component up to the truncation vanished.
    Indeterminate { truncation: usize },
}

/// Least `n <= max_trunc` with a nonzero degree-`n` component of `mu(w) - 1`.
pub fn gamma_weight(w: &GroupWord, max_trunc: usize) -> Result<WeightOutcome> {
    if w.is_identity() {
        return Err(Error::IdentityWord("lower-central weight"));
    }
    if max_trunc == 0 {
        return Err(Error::Precondition("truncation must be positive".into()));
    }
    let image = expand(w, max_trunc)?;
    let deviation = image.sub(&Series::one(image.rank(), max_trunc)?)?;
    match deviation.valuation().finite() {
        Some(n) => Ok(WeightOutcome::Certified(GammaCertificate {
            word: w.clone(),
            weight: n,
            witness: deviation.homogeneous_component(n)?,
            truncation: max_trunc,
        })),
        None => Ok(WeightOutcome::Indeterminate {
            truncation: max_trunc,
        }),
    }
}

pub const DEFAULT_WITNESS_CAP: usize = 16;

/// Escalates the truncation `len, 2 len, 4 len, ...` (clamped to `cap`)
/// until [`gamma_weight`] produces a certificate.
pub fn residual_witness(w: &GroupWord, cap: usize) -> Result<GammaCertificate> {
    if w.is_identity() {
        return Err(Error::IdentityWord("residual witness"));
    }
    let mut trunc = w.len().max(1).min(cap);
    loop {
        if let WeightOutcome::Certified(cert) = gamma_weight(w, trunc)? {
            return Ok(cert);
        }
        if trunc >= cap {
            return Err(Error::ResourceCap(format!(
                "no nonvanishing component up to truncation {cap}"
            )));
        }
        trunc = (trunc * 2).min(cap);
    }
}

/// Degree-1 coefficients of `mu(w)`, which are the exponent sums of `w`.
pub fn degree_one_coefficients(image: &Series) -> Vec<BigRational> {
    (0..image.rank()).map(|i| image.coefficient(&[i])).collect()
}

/// True when the components of `mu(w) - 1` in degrees `1..n` all vanish.
pub fn vanishes_below(image: &Series, n: usize) -> Result<bool> {
    for d in 1..n.min(image.trunc() + 1) {
        if image.homogeneous_component(d)?.monomial_terms().any(|(_, c)| !c.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freewords::{left_normed_commutator, parse_exp_word, parse_word, Alphabet};

    fn s(rank: usize, trunc: usize, body: &str) -> Series {
        Series::parse_terms(body, rank, trunc).unwrap()
    }

    #[test]
    fn expand_examples() {
        let a = Alphabet::numbered(2);
        let w = |t: &str| parse_word(t, &a).unwrap();
        assert_eq!(expand(&w("x1"), 3).unwrap(), s(2, 3, "1 + x1"));
        assert_eq!(
            expand(&w("x1^-1"), 3).unwrap(),
            s(2, 3, "1 - x1 + x1.x1 - x1.x1.x1")
        );
        // (1 - x1 + x1^2)(1 - x2 + x2^2)(1 + x1)(1 + x2) at N=2, multiplied by hand
        assert_eq!(expand(&w("[x1,x2]"), 2).unwrap(), s(2, 2, "1 + x1.x2 - x2.x1"));
    }

    #[test]
    fn weight_examples() {
        let a = Alphabet::numbered(2);
        let w = |t: &str| parse_word(t, &a).unwrap();
        let WeightOutcome::Certified(c) = gamma_weight(&w("x1^2"), 2).unwrap() else {
            panic!("expected certificate")
        };
        assert_eq!(c.weight, 1);
        assert_eq!(c.witness, s(2, 2, "2*x1"));
        let WeightOutcome::Certified(c) = gamma_weight(&w("[x1,x2]"), 4).unwrap() else {
            panic!()
        };
        assert_eq!((c.weight, c.witness.clone()), (2, s(2, 4, "x1.x2 - x2.x1")));
        assert!(c.verify().unwrap());
        let WeightOutcome::Certified(c) = gamma_weight(&w("[[x1,x2],x1]"), 4).unwrap() else {
            panic!()
        };
        assert_eq!(c.weight, 3);
        assert_eq!(
            gamma_weight(&w("[[x1,x2],x1]"), 2).unwrap(),
            WeightOutcome::Indeterminate { truncation: 2 }
        );
        assert_eq!(gamma_weight(&w("1"), 4), Err(Error::IdentityWord("lower-central weight")));
    }

    #[test]
    fn witness_examples() {
        let a = Alphabet::numbered(2);
        let w = |t: &str| parse_word(t, &a).unwrap();
        assert_eq!(residual_witness(&w("x1"), 16).unwrap().weight, 1);
        assert_eq!(residual_witness(&w("[x1,x2]"), 16).unwrap().weight, 2);
        let c = residual_witness(&w("x1^-1*x2^-1*x1*x2*x1^-1"), 16).unwrap();
        assert_eq!(c.weight, 1);
        assert_eq!(c.witness, s(2, 5, "-x1"));
        let deep = left_normed_commutator(&[w("x1"), w("x2"), w("x1"), w("x1")]).unwrap();
        assert!(matches!(residual_witness(&deep, 2), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn rational_word_examples() {
        let a = Alphabet::numbered(2);
        let e = |t: &str| parse_exp_word(t, &a).unwrap();
        // kept as two syllables so the product really is taken in the ring
        let halves = ExpWord::reduce(
            &a,
            [
                (0, BigRational::new(1.into(), 2.into())),
                (1, BigRational::zero()),
            ],
        )
        .unwrap();
        let twice = expand_rational_word(&halves, 3)
            .unwrap()
            .mul(&expand_rational_word(&halves, 3).unwrap())
            .unwrap();
        assert_eq!(twice, s(2, 3, "1 + x1"));
        assert_eq!(expand_rational_word(&e("x1^1/2*x1^1/2"), 3).unwrap(), s(2, 3, "1 + x1"));
        assert_eq!(
            expand_rational_word(&e("x1^1/2"), 2).unwrap(),
            s(2, 2, "1 + 1/2*x1 - 1/8*x1.x1")
        );
        let image = expand_rational_word(&e("x1^1/3*x2*x1^-1/3*x2^-1"), 2).unwrap();
        assert_eq!(image, s(2, 2, "1 + 1/3*x1.x2 - 1/3*x2.x1"));
    }

    #[test]
    fn certificate_text() {
        let a = Alphabet::numbered(2);
        let c = residual_witness(&parse_word("[x1,x2]", &a).unwrap(), 16).unwrap();
        assert_eq!(
            c.to_string(),
            "word=x1^-1*x2^-1*x1*x2\nn=2\ntrunc=4\nwitness:\nrank=2 trunc=4\nx1.x2 - x2.x1\n"
        );
    }
}
