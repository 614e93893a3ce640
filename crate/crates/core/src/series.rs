//! Truncated power series in non-commuting indeterminates `xi_1..xi_q` with
//! exact rational coefficients.
//!
//! A [`Series`] stores only its nonzero terms, keyed by a packed
//! [`Monomial`]. Every series carries its rank `q` and truncation `N`;
//! products silently drop terms of degree above `N`, and binary operations
//! on series with different rank or truncation are errors.
//!
//! Text form, one line, terms in canonical order (degree first, then
//! lexicographic on the index sequence):
//!
//! ```text
//! 1 - x1 + x1.x1 - 1/2*x1.x2
//! ```
//!
//! The full serialization adds a `rank=<q> trunc=<N>` header line.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A word `xi_{i_1} ... xi_{i_n}` packed as a base-`q` numeral.
///
/// Ordering is by degree, then lexicographic on the index sequence, which
/// for a fixed degree coincides with numeric order of the packed code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    code: u128,
}

fn radix_pow(rank: usize, exp: u32) -> u128 {
    if rank == 1 {
        1
    } else {
        (rank as u128).pow(exp)
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial { degree: 0, code: 0 };

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// Packs an index sequence; indices must be `< rank`.
    pub fn from_indices(rank: usize, indices: &[usize]) -> Result<Monomial> {
        if rank > 1 && (rank as u128).checked_pow(indices.len() as u32).is_none() {
            return Err(Error::ResourceCap(format!(
                "monomial of degree {} over rank {rank} does not fit the packed key",
                indices.len()
            )));
        }
        let mut code = 0u128;
        for &i in indices {
            if i >= rank {
                return Err(Error::GeneratorIndex { index: i, rank });
            }
            code = code * rank as u128 + i as u128;
        }
        Ok(Monomial {
            degree: indices.len() as u32,
            code,
        })
    }

    pub fn indices(&self, rank: usize) -> Vec<usize> {
        let mut out = vec![0; self.degree as usize];
        if rank > 1 {
            let mut code = self.code;
            for slot in out.iter_mut().rev() {
                *slot = (code % rank as u128) as usize;
                code /= rank as u128;
            }
        }
        out
    }

    fn concat(self, other: Monomial, rank: usize) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            code: self.code * radix_pow(rank, other.degree) + other.code,
        }
    }

    fn power_of(rank: usize, index: usize, k: u32) -> Monomial {
        let mut code = 0u128;
        for _ in 0..k {
            code = code * rank as u128 + index as u128;
        }
        Monomial { degree: k, code }
    }

    /// First monomial of the given degree in canonical order.
    fn first_of_degree(degree: usize) -> Monomial {
        Monomial {
            degree: degree as u32,
            code: 0,
        }
    }
}

/// Degree of the first nonzero homogeneous component.
///
/// `Infinite` means every stored component vanishes; for a truncation at
/// `N` of some exact element this only certifies valuation `>= N + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(usize),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<usize> {
        match self {
            Valuation::Finite(n) => Some(n),
            Valuation::Infinite => None,
        }
    }

    /// Human-readable bound, reporting `>= N+1` for a vanishing truncation.
    pub fn describe(self, trunc: usize) -> String {
        match self {
            Valuation::Finite(n) => n.to_string(),
            Valuation::Infinite => format!(">={}", trunc + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Series {
    rank: usize,
    trunc: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

fn accumulate(map: &mut BTreeMap<Monomial, BigRational>, key: Monomial, value: BigRational) {
    match map.entry(key) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += value;
        }
        Entry::Vacant(e) => {
            e.insert(value);
        }
    }
}

fn generalized_binomial(e: &BigRational, k: usize) -> BigRational {
    let mut c = BigRational::one();
    for j in 0..k {
        c *= e - BigRational::from_integer(BigInt::from(j));
        c /= BigRational::from_integer(BigInt::from(j + 1));
    }
    c
}

impl Series {
    pub fn zero(rank: usize, trunc: usize) -> Result<Series> {
        if rank == 0 {
            return Err(Error::Precondition("series rank must be positive".into()));
        }
        if trunc == 0 {
            return Err(Error::Precondition("truncation must be positive".into()));
        }
        if rank > 1 && (rank as u128).checked_pow(trunc as u32).is_none() {
            return Err(Error::ResourceCap(format!(
                "truncation {trunc} at rank {rank} exceeds the packed monomial capacity"
            )));
        }
        Ok(Series {
            rank,
            trunc,
            terms: BTreeMap::new(),
        })
    }

    pub fn scalar(rank: usize, trunc: usize, c: BigRational) -> Result<Series> {
        let mut s = Series::zero(rank, trunc)?;
        if !c.is_zero() {
            s.terms.insert(Monomial::ONE, c);
        }
        Ok(s)
    }

    pub fn one(rank: usize, trunc: usize) -> Result<Series> {
        Series::scalar(rank, trunc, BigRational::one())
    }

    /// The indeterminate `xi_index` (0-based).
    pub fn variable(rank: usize, trunc: usize, index: usize) -> Result<Series> {
        Series::from_terms(rank, trunc, [(vec![index], BigRational::one())])
    }

    /// Builds a series from `(index sequence, coefficient)` pairs; repeated
    /// monomials are summed and terms above the truncation dropped.
    pub fn from_terms<I>(rank: usize, trunc: usize, terms: I) -> Result<Series>
    where
        I: IntoIterator<Item = (Vec<usize>, BigRational)>,
    {
        let mut s = Series::zero(rank, trunc)?;
        for (ix, c) in terms {
            let m = Monomial::from_indices(rank, &ix)?;
            if m.degree() <= trunc {
                accumulate(&mut s.terms, m, c);
            }
        }
        s.purge();
        Ok(s)
    }

    /// `(1 + xi_index)^e` expanded by the generalized binomial theorem.
    pub fn binomial_power(rank: usize, trunc: usize, index: usize, e: &BigRational) -> Result<Series> {
        if index >= rank {
            return Err(Error::GeneratorIndex { index, rank });
        }
        let mut s = Series::zero(rank, trunc)?;
        let mut c = BigRational::one();
        for k in 0..=trunc {
            if k > 0 {
                c *= e - BigRational::from_integer(BigInt::from(k - 1));
                c /= BigRational::from_integer(BigInt::from(k));
            }
            if c.is_zero() {
                break;
            }
            s.terms.insert(Monomial::power_of(rank, index, k as u32), c.clone());
        }
        Ok(s)
    }

    fn purge(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    fn check(&self, other: &Series) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.scalar_term().is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scalar_term(&self) -> BigRational {
        self.terms.get(&Monomial::ONE).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coefficient(&self, indices: &[usize]) -> BigRational {
        Monomial::from_indices(self.rank, indices)
            .ok()
            .and_then(|m| self.terms.get(&m).cloned())
            .unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &BigRational)> + '_ {
        self.terms.iter().map(|(m, c)| (m.indices(self.rank), c))
    }

    pub fn get(&self, m: &Monomial) -> Option<&BigRational> {
        self.terms.get(m)
    }

    /// Least monomial with a nonzero coefficient.
    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.keys().next().copied()
    }

    pub fn monomial_terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            accumulate(&mut out.terms, *m, c.clone());
        }
        out.purge();
        Ok(out)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        Series {
            rank: self.rank,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        if c.is_zero() {
            return Series {
                rank: self.rank,
                trunc: self.trunc,
                terms: BTreeMap::new(),
            };
        }
        Series {
            rank: self.rank,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Concatenation product, discarding everything above degree `N`.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check(other)?;
        let mut out = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let room = self.trunc - ma.degree();
            let bound = Monomial::first_of_degree(room + 1);
            for (mb, cb) in other.terms.range(..bound) {
                accumulate(&mut out, ma.concat(*mb, self.rank), ca * cb);
            }
        }
        let mut s = Series {
            rank: self.rank,
            trunc: self.trunc,
            terms: out,
        };
        s.purge();
        Ok(s)
    }

    /// Inverse of a series with nonzero scalar term `c`:
    /// `c^-1 * sum_k (-u)^k` where `self = c (1 + u)`.
    pub fn unit_inverse(&self) -> Result<Series> {
        let c = self.scalar_term();
        if c.is_zero() {
            return Err(Error::NotAUnit);
        }
        let c_inv = c.recip();
        let mut neg_u = self.scale(&c_inv);
        neg_u.terms.remove(&Monomial::ONE);
        let neg_u = neg_u.neg();
        let mut sum = Series::scalar(self.rank, self.trunc, c_inv.clone())?;
        let mut power = Series::one(self.rank, self.trunc)?;
        for _ in 0..self.trunc {
            power = power.mul(&neg_u)?;
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power.scale(&c_inv))?;
        }
        Ok(sum)
    }

    /// `(1 + u)^e = sum_k C(e, k) u^k` for a series with scalar term exactly 1.
    pub fn pow_rational(&self, e: &BigRational) -> Result<Series> {
        if !self.scalar_term().is_one() {
            return Err(Error::ScalarNotOne);
        }
        let mut u = self.clone();
        u.terms.remove(&Monomial::ONE);
        let mut sum = Series::one(self.rank, self.trunc)?;
        let mut power = Series::one(self.rank, self.trunc)?;
        for k in 1..=self.trunc {
            power = power.mul(&u)?;
            if power.is_zero() {
                break;
            }
            let c = generalized_binomial(e, k);
            if c.is_zero() {
                break;
            }
            sum = sum.add(&power.scale(&c))?;
        }
        Ok(sum)
    }

    /// Integer power by repeated squaring; negative exponents need a unit.
    pub fn pow_int(&self, n: i64) -> Result<Series> {
        let base = if n < 0 { self.unit_inverse()? } else { self.clone() };
        let mut result = Series::one(self.rank, self.trunc)?;
        let mut square = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&square)?;
            }
            k >>= 1;
            if k > 0 {
                square = square.mul(&square)?;
            }
        }
        Ok(result)
    }

    /// The degree-`n` homogeneous component.
    pub fn homogeneous_component(&self, n: usize) -> Result<Series> {
        if n > self.trunc {
            return Err(Error::DegreeOutOfRange {
                degree: n,
                trunc: self.trunc,
            });
        }
        let lo = Monomial::first_of_degree(n);
        let hi = Monomial::first_of_degree(n + 1);
        Ok(Series {
            rank: self.rank,
            trunc: self.trunc,
            terms: self.terms.range(lo..hi).map(|(m, c)| (*m, c.clone())).collect(),
        })
    }

    /// Keeps only the components of degree `>= n`.
    pub fn drop_below(&self, n: usize) -> Series {
        Series {
            rank: self.rank,
            trunc: self.trunc,
            terms: self
                .terms
                .range(Monomial::first_of_degree(n)..)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Degree of the first nonzero component; the scalar term counts as degree 0.
    pub fn valuation(&self) -> Valuation {
        self.terms
            .keys()
            .next()
            .map_or(Valuation::Infinite, |m| Valuation::Finite(m.degree()))
    }

    /// `d(r, 0) = 2^-n` with `n` the valuation; `0` for the zero series.
    /// Only defined on the ideal of series with zero scalar term.
    pub fn metric(&self) -> Result<BigRational> {
        if !self.scalar_term().is_zero() {
            return Err(Error::NotInIdeal);
        }
        Ok(match self.valuation() {
            Valuation::Infinite => BigRational::zero(),
            Valuation::Finite(n) => {
                BigRational::new(BigInt::one(), BigInt::from(2u8).pow(n as u32))
            }
        })
    }

    /// Header line plus terms line.
    pub fn to_text(&self) -> String {
        format!("rank={} trunc={}\n{}\n", self.rank, self.trunc, self)
    }

    /// Parses the output of [`Series::to_text`].
    pub fn parse(text: &str) -> Result<Series> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or(Error::syntax(0, "missing series header"))?;
        let (mut rank, mut trunc) = (None, None);
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::syntax(0, format!("bad header field `{field}`")))?;
            let value: usize = value
                .parse()
                .map_err(|_| Error::syntax(0, format!("bad header value `{value}`")))?;
            match key {
                "rank" => rank = Some(value),
                "trunc" => trunc = Some(value),
                _ => return Err(Error::syntax(0, format!("unknown header key `{key}`"))),
            }
        }
        let rank = rank.ok_or(Error::syntax(0, "header lacks rank"))?;
        let trunc = trunc.ok_or(Error::syntax(0, "header lacks trunc"))?;
        let body = lines.next().ok_or(Error::syntax(header.len(), "missing series terms"))?;
        if lines.next().is_some() {
            return Err(Error::syntax(header.len(), "trailing content after series"));
        }
        Series::parse_terms(body, rank, trunc)
    }

    /// Parses a terms line such as `1 - x1 + 1/2*x1.x2`.
    pub fn parse_terms(body: &str, rank: usize, trunc: usize) -> Result<Series> {
        let mut terms = Vec::new();
        let bytes = body.as_bytes();
        let mut pos = 0;
        let mut first = true;
        while pos < bytes.len() {
            while pos < bytes.len() && bytes[pos] == b' ' {
                pos += 1;
            }
            if pos >= bytes.len() {
                break;
            }
            let mut negative = false;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                negative = bytes[pos] == b'-';
                pos += 1;
                while pos < bytes.len() && bytes[pos] == b' ' {
                    pos += 1;
                }
            } else if !first {
                return Err(Error::syntax(pos, "expected `+` or `-` between terms"));
            }
            let start = pos;
            while pos < bytes.len() && !matches!(bytes[pos], b' ' | b'+' | b'-') {
                pos += 1;
            }
            let token = &body[start..pos];
            if token.is_empty() {
                return Err(Error::syntax(start, "empty term"));
            }
            let (coef, mono) = parse_term(token, start, rank)?;
            terms.push((mono, if negative { -coef } else { coef }));
            first = false;
        }
        if first {
            return Err(Error::syntax(0, "empty series"));
        }
        if terms.len() == 1 && terms[0].0.is_empty() && terms[0].1.is_zero() {
            return Series::zero(rank, trunc);
        }
        for (mono, _) in &terms {
            if mono.len() > trunc {
                return Err(Error::DegreeOutOfRange {
                    degree: mono.len(),
                    trunc,
                });
            }
        }
        Series::from_terms(rank, trunc, terms)
    }
}

fn parse_rational(token: &str, pos: usize) -> Result<BigRational> {
    let bad = || Error::syntax(pos, format!("bad coefficient `{token}`"));
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() || den.is_negative() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn parse_monomial(token: &str, pos: usize, rank: usize) -> Result<Vec<usize>> {
    token
        .split('.')
        .map(|v| {
            v.strip_prefix('x')
                .filter(|d| !d.starts_with('0'))
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&i| i >= 1 && i <= rank)
                .map(|i| i - 1)
                .ok_or_else(|| Error::syntax(pos, format!("bad indeterminate `{v}`")))
        })
        .collect()
}

fn parse_term(token: &str, pos: usize, rank: usize) -> Result<(BigRational, Vec<usize>)> {
    if let Some((c, m)) = token.split_once('*') {
        Ok((parse_rational(c, pos)?, parse_monomial(m, pos, rank)?))
    } else if token.starts_with('x') {
        Ok((BigRational::one(), parse_monomial(token, pos, rank)?))
    } else {
        Ok((parse_rational(token, pos)?, Vec::new()))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mono = m
                .indices(self.rank)
                .iter()
                .map(|i| format!("x{}", i + 1))
                .collect::<Vec<_>>()
                .join(".");
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}
