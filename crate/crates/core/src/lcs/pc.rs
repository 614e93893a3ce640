//! Weighted polycyclic presentations and collection from the left.
//!
//! [`PcPresentation::free_nilpotent`] builds the presentation of
//! `F / gamma_{c+1}(F)` on the Hall basis `b_1 < ... < b_m`. Every element
//! has a unique normal form `b_1^e_1 ... b_m^e_m` ([`PcElement`]), and the
//! group law is determined by the conjugation relations
//!
//! ```text
//! b_j^(b_i)    = b_j [b_j, b_i]        (j > i)
//! b_j^(b_i^-1) = b_j [b_j, b_i^-1]
//! ```
//!
//! whose tails `[b_j, b_i^{+-1}]` only involve generators of weight at least
//! `w_i + w_j`. The tails are read off the Magnus embedding, which is
//! faithful on the free nilpotent quotient: the image of a commutator is
//! sifted layer by layer against the leading Lie terms of the basic
//! commutators. [`PcPresentation::check_consistency`] then verifies the
//! associativity conditions by collection alone, independently of how the
//! tails were obtained.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::hall::{hall_basis, BasicCommutator, BracketDisplay, Shape};
use crate::error::{Error, Result};
use crate::freewords::{Alphabet, GroupWord};
use crate::series::{Monomial, Series};

/// Exponent vector of a normal form `b_1^e_1 ... b_m^e_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PcElement(Vec<BigInt>);

impl PcElement {
    pub fn identity(len: usize) -> PcElement {
        PcElement(vec![BigInt::zero(); len])
    }

    pub fn from_exponents(exps: Vec<BigInt>) -> PcElement {
        PcElement(exps)
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero exponent.
    pub fn lead(&self) -> Option<usize> {
        self.0.iter().position(|e| !e.is_zero())
    }

    fn lead_from(&self, start: usize) -> Option<usize> {
        self.0[start..].iter().position(|e| !e.is_zero()).map(|p| p + start)
    }
}

impl std::ops::Index<usize> for PcElement {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

#[derive(Debug, Clone)]
pub struct PcPresentation {
    rank: usize,
    class: usize,
    basis: Vec<BasicCommutator>,
    /// `conj[i][j - i - 1]`: image of `b_j` under conjugation by `b_i`
    /// (`None` when they commute).
    conj: Vec<Vec<Option<PcElement>>>,
    /// Same for conjugation by `b_i^-1`.
    conj_inv: Vec<Vec<Option<PcElement>>>,
    /// Magnus images of the pc generators, truncated at the class.
    images: Vec<Series>,
}

/// Row-echelon data for expressing a homogeneous Lie element of one weight
/// in terms of the leading terms of that weight's basic commutators.
struct LayerSolver {
    /// Basis ids of this weight, in order.
    ids: Vec<usize>,
    rows: Vec<(Series, Monomial, Vec<BigRational>)>,
}

impl LayerSolver {
    fn new(ids: Vec<usize>, leading: &[Series]) -> Result<LayerSolver> {
        let k = ids.len();
        let mut rows: Vec<(Series, Monomial, Vec<BigRational>)> = Vec::new();
        for (pos, &id) in ids.iter().enumerate() {
            let mut row = leading[id].clone();
            let mut combo = vec![BigRational::zero(); k];
            combo[pos] = BigRational::one();
            for (other, pivot, other_combo) in &rows {
                if let Some(c) = row.get(pivot).cloned() {
                    let f = c / other.get(pivot).expect("pivot present");
                    row = row.sub(&other.scale(&f))?;
                    for (a, b) in combo.iter_mut().zip(other_combo) {
                        *a -= &f * b;
                    }
                }
            }
            let pivot = row.leading_monomial().ok_or_else(|| {
                Error::Internal("leading Lie terms of basic commutators are dependent".into())
            })?;
            rows.push((row, pivot, combo));
        }
        Ok(LayerSolver { ids, rows })
    }

    /// Integer coordinates of `target` in terms of the layer's basic
    /// commutators, as `(basis id, exponent)` pairs.
    fn solve(&self, target: &Series) -> Result<Vec<(usize, BigInt)>> {
        let mut t = target.clone();
        let mut coords = vec![BigRational::zero(); self.ids.len()];
        for (row, pivot, combo) in &self.rows {
            if let Some(c) = t.get(pivot).cloned() {
                let f = c / row.get(pivot).expect("pivot present");
                t = t.sub(&row.scale(&f))?;
                for (a, b) in coords.iter_mut().zip(combo) {
                    *a += &f * b;
                }
            }
        }
        if !t.is_zero() {
            return Err(Error::Internal(
                "component is not in the span of basic commutators".into(),
            ));
        }
        coords
            .into_iter()
            .zip(&self.ids)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, &id)| {
                if c.is_integer() {
                    Ok((id, c.to_integer()))
                } else {
                    Err(Error::Internal(format!("non-integral exponent {c}")))
                }
            })
            .collect()
    }
}

struct Sifter<'a> {
    class: usize,
    images: &'a [Series],
    solvers: Vec<LayerSolver>,
}

impl Sifter<'_> {
    /// Normal-form exponents of the free nilpotent element whose Magnus
    /// image is `s`.
    fn sift(&self, s: &Series, len: usize) -> Result<PcElement> {
        let mut cur = s.clone();
        let mut coords = PcElement::identity(len);
        for n in 1..=self.class {
            let component = cur.homogeneous_component(n)?;
            if component.is_zero() {
                continue;
            }
            let exps = self.solvers[n - 1].solve(&component)?;
            let mut layer = Series::one(s.rank(), s.trunc())?;
            for (id, e) in exps {
                let e_small: i64 = (&e)
                    .try_into()
                    .map_err(|_| Error::ResourceCap("exponent too large to sift".into()))?;
                layer = layer.mul(&self.images[id].pow_int(e_small)?)?;
                coords.0[id] = e;
            }
            cur = layer.unit_inverse()?.mul(&cur)?;
        }
        if !cur.is_one() {
            return Err(Error::Internal("sifting left a nontrivial remainder".into()));
        }
        Ok(coords)
    }
}

fn group_commutator(a: &Series, a_inv: &Series, b: &Series, b_inv: &Series) -> Result<Series> {
    a_inv.mul(b_inv)?.mul(a)?.mul(b)
}

impl PcPresentation {
    /// Presentation of the free nilpotent group of the given rank and class.
    pub fn free_nilpotent(rank: usize, class: usize) -> Result<PcPresentation> {
        if rank == 0 || class == 0 {
            return Err(Error::Precondition("rank and class must be positive".into()));
        }
        let basis = hall_basis(rank, class);
        let m = basis.len();
        let mut images: Vec<Series> = Vec::with_capacity(m);
        let mut inverses: Vec<Series> = Vec::with_capacity(m);
        for b in &basis {
            let img = match b.shape {
                Shape::Generator(i) => Series::one(rank, class)?.add(&Series::variable(rank, class, i)?)?,
                Shape::Bracket { left, right } => group_commutator(
                    &images[left],
                    &inverses[left],
                    &images[right],
                    &inverses[right],
                )?,
            };
            inverses.push(img.unit_inverse()?);
            images.push(img);
        }
        let leading: Vec<Series> = basis
            .iter()
            .zip(&images)
            .map(|(b, img)| img.homogeneous_component(b.weight))
            .collect::<Result<_>>()?;
        let solvers = (1..=class)
            .map(|n| {
                let ids = basis.iter().filter(|b| b.weight == n).map(|b| b.id).collect();
                LayerSolver::new(ids, &leading)
            })
            .collect::<Result<Vec<_>>>()?;
        let sifter = Sifter {
            class,
            images: &images,
            solvers,
        };

        let mut conj = vec![Vec::new(); m];
        let mut conj_inv = vec![Vec::new(); m];
        for i in 0..m {
            for j in i + 1..m {
                if basis[i].weight + basis[j].weight > class {
                    conj[i].push(None);
                    conj_inv[i].push(None);
                    continue;
                }
                let tail = sifter.sift(
                    &group_commutator(&images[j], &inverses[j], &images[i], &inverses[i])?,
                    m,
                )?;
                let tail_inv = sifter.sift(
                    &group_commutator(&images[j], &inverses[j], &inverses[i], &images[i])?,
                    m,
                )?;
                let with_base = |tail: PcElement| -> Result<Option<PcElement>> {
                    if tail.is_identity() {
                        return Ok(None);
                    }
                    let min = basis[i].weight + basis[j].weight;
                    let lead = tail.lead().expect("nontrivial");
                    if basis[lead].weight < min {
                        return Err(Error::Internal(format!(
                            "tail of [b{j},b{i}] has weight below {min}"
                        )));
                    }
                    let mut image = tail;
                    image.0[j] += 1;
                    Ok(Some(image))
                };
                conj[i].push(with_base(tail)?);
                conj_inv[i].push(with_base(tail_inv)?);
            }
        }
        Ok(PcPresentation {
            rank,
            class,
            basis,
            conj,
            conj_inv,
            images,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BasicCommutator] {
        &self.basis
    }

    pub fn weight(&self, i: usize) -> usize {
        self.basis[i].weight
    }

    /// Indices of the pc generators of weight `n`.
    pub fn layer(&self, n: usize) -> std::ops::Range<usize> {
        let start = self.basis.partition_point(|b| b.weight < n);
        let end = self.basis.partition_point(|b| b.weight <= n);
        start..end
    }

    /// Every pc generator has infinite relative order: the free nilpotent
    /// group is torsion-free.
    pub fn relative_order(&self, _i: usize) -> Option<BigInt> {
        None
    }

    /// `[b_j, b_i]` for `j > i`, as stored in the presentation.
    pub fn commutator_tail(&self, j: usize, i: usize) -> PcElement {
        assert!(j > i);
        match &self.conj[i][j - i - 1] {
            Some(img) => {
                let mut t = img.clone();
                t.0[j] -= 1;
                t
            }
            None => self.identity(),
        }
    }

    pub fn identity(&self) -> PcElement {
        PcElement::identity(self.len())
    }

    pub fn generator(&self, i: usize) -> PcElement {
        let mut g = self.identity();
        g.0[i] = BigInt::one();
        g
    }

    pub fn magnus_image(&self, i: usize) -> &Series {
        &self.images[i]
    }

    fn conj_image(&self, i: usize, j: usize, inverse: bool) -> Option<&PcElement> {
        let table = if inverse { &self.conj_inv } else { &self.conj };
        table[i][j - i - 1].as_ref()
    }

    /// Collects `g * b_i^f` into normal form in place.
    pub fn mul_gen_pow(&self, g: &mut PcElement, i: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        if g.lead_from(i + 1).is_some() {
            let mut tail = PcElement::identity(self.len());
            for j in i + 1..self.len() {
                std::mem::swap(&mut tail.0[j], &mut g.0[j]);
            }
            let moved = self.conjugate_tail(i, f, tail);
            for j in i + 1..self.len() {
                g.0[j] = moved.0[j].clone();
            }
        }
        g.0[i] += f;
    }

    /// `b^(b_i^f)` for `b` supported on generators after `i`.
    fn conjugate_tail(&self, i: usize, f: &BigInt, b: PcElement) -> PcElement {
        let Some(first) = b.lead() else {
            return b;
        };
        if self.weight(i) + self.weight(first) > self.class {
            return b;
        }
        let inverse = f.is_negative();
        let n = f.magnitude();
        if let Some(steps) = n.to_u32().filter(|&s| s <= 16) {
            let mut cur = b;
            for _ in 0..steps {
                cur = self.conjugate_once(i, inverse, &cur);
            }
            return cur;
        }
        // binary powers of the conjugation endomorphism
        let mut base: Vec<PcElement> = (0..self.len())
            .map(|j| {
                if j > i {
                    self.conjugate_once(i, inverse, &self.generator(j))
                } else {
                    self.generator(j)
                }
            })
            .collect();
        let mut cur = b;
        let bits = n.bits();
        for bit in 0..bits {
            if n.bit(bit) {
                cur = self.apply_endo(&base, &cur);
            }
            if bit + 1 < bits {
                base = base.iter().map(|img| self.apply_endo(&base, img)).collect();
            }
        }
        cur
    }

    fn conjugate_once(&self, i: usize, inverse: bool, b: &PcElement) -> PcElement {
        let mut acc = self.identity();
        for j in i + 1..self.len() {
            let e = &b.0[j];
            if e.is_zero() {
                continue;
            }
            match self.conj_image(i, j, inverse) {
                None => self.mul_gen_pow(&mut acc, j, e),
                Some(img) => {
                    let p = self.pow(img, e);
                    acc = self.mul(&acc, &p);
                }
            }
        }
        acc
    }

    fn apply_endo(&self, images: &[PcElement], g: &PcElement) -> PcElement {
        let mut acc = self.identity();
        for (j, e) in g.0.iter().enumerate() {
            if !e.is_zero() {
                let p = self.pow(&images[j], e);
                acc = self.mul(&acc, &p);
            }
        }
        acc
    }

    pub fn mul(&self, g: &PcElement, h: &PcElement) -> PcElement {
        let mut acc = g.clone();
        for (k, e) in h.0.iter().enumerate() {
            self.mul_gen_pow(&mut acc, k, e);
        }
        acc
    }

    pub fn inverse(&self, g: &PcElement) -> PcElement {
        let mut acc = self.identity();
        for k in (0..self.len()).rev() {
            if !g.0[k].is_zero() {
                self.mul_gen_pow(&mut acc, k, &-&g.0[k]);
            }
        }
        acc
    }

    pub fn pow(&self, g: &PcElement, n: &BigInt) -> PcElement {
        if let Some(l) = g.lead() {
            if g.lead_from(l + 1).is_none() {
                let mut out = self.identity();
                out.0[l] = &g.0[l] * n;
                return out;
            }
        } else {
            return g.clone();
        }
        let base = if n.is_negative() { self.inverse(g) } else { g.clone() };
        let mut result = self.identity();
        let mut square = base;
        let k = n.magnitude();
        let bits = k.bits();
        for bit in 0..bits {
            if k.bit(bit) {
                result = self.mul(&result, &square);
            }
            if bit + 1 < bits {
                square = self.mul(&square, &square);
            }
        }
        result
    }

    /// `[g, h] = g^-1 h^-1 g h`
    pub fn commutator(&self, g: &PcElement, h: &PcElement) -> PcElement {
        let gh = self.mul(g, h);
        let hg = self.mul(h, g);
        self.mul(&self.inverse(&hg), &gh)
    }

    /// Image of a word over the free generators.
    pub fn eval_word(&self, w: &GroupWord) -> Result<PcElement> {
        if w.alphabet().rank() != self.rank {
            return Err(Error::RankMismatch(w.alphabet().rank(), self.rank));
        }
        let mut acc = self.identity();
        for &(g, e) in w.syllables() {
            self.mul_gen_pow(&mut acc, g, &BigInt::from(e));
        }
        Ok(acc)
    }

    /// The Magnus image of a normal form, `prod mu(b_k)^e_k`.
    pub fn element_image(&self, g: &PcElement) -> Result<Series> {
        let mut acc = Series::one(self.rank, self.class)?;
        for (k, e) in g.0.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let e: i64 = e
                .try_into()
                .map_err(|_| Error::ResourceCap("exponent too large".into()))?;
            acc = acc.mul(&self.images[k].pow_int(e)?)?;
        }
        Ok(acc)
    }

    /// Associativity checks for a presentation whose generators all have
    /// infinite order:
    ///
    /// ```text
    /// (b_k b_j) b_i = b_k (b_j b_i)       k > j > i
    /// b_j^-1 (b_j b_i) = b_i              j > i
    /// (b_j b_i^-1) b_i = b_j              j > i
    /// (b_j^-1 b_i^-1) b_i = b_j^-1        j > i
    /// ```
    ///
    /// restricted to weight sums within the class.
    pub fn check_consistency(&self) -> Result<()> {
        let m = self.len();
        let g = |i| self.generator(i);
        let ginv = |i| self.inverse(&self.generator(i));
        for i in 0..m {
            for j in i + 1..m {
                if self.weight(i) + self.weight(j) > self.class {
                    continue;
                }
                for k in j + 1..m {
                    if self.weight(i) + self.weight(j) + self.weight(k) > self.class {
                        continue;
                    }
                    let left = self.mul(&self.mul(&g(k), &g(j)), &g(i));
                    let right = self.mul(&g(k), &self.mul(&g(j), &g(i)));
                    if left != right {
                        return Err(Error::Internal(format!(
                            "associativity fails for (b{k} b{j}) b{i}"
                        )));
                    }
                }
                let fail = |what: &str| Err(Error::Internal(format!("{what} fails for j={j}, i={i}")));
                if self.mul(&ginv(j), &self.mul(&g(j), &g(i))) != g(i) {
                    return fail("b_j^-1 (b_j b_i) = b_i");
                }
                if self.mul(&self.mul(&g(j), &ginv(i)), &g(i)) != g(j) {
                    return fail("(b_j b_i^-1) b_i = b_j");
                }
                if self.mul(&self.mul(&ginv(j), &ginv(i)), &g(i)) != ginv(j) {
                    return fail("(b_j^-1 b_i^-1) b_i = b_j^-1");
                }
            }
        }
        Ok(())
    }

    /// Writes a normal form such as `g1^2*g4^-1`.
    pub fn format_element(&self, g: &PcElement) -> String {
        let parts: Vec<String> = g
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(k, e)| {
                if e.is_one() {
                    format!("g{}", k + 1)
                } else {
                    format!("g{}^{}", k + 1, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Human-readable listing: definitions then nontrivial commutator relations.
    pub fn describe(&self, alphabet: &Arc<Alphabet>) -> String {
        self.to_string_with(alphabet)
    }

    fn to_string_with(&self, alphabet: &Alphabet) -> String {
        let mut out = format!(
            "pc presentation: {} generators, class {}\n",
            self.len(),
            self.class
        );
        for b in &self.basis {
            let def = BracketDisplay {
                basis: &self.basis,
                id: b.id,
                alphabet,
            };
            out += &format!("g{} = {} (weight {})\n", b.id + 1, def, b.weight);
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let tail = self.commutator_tail(j, i);
                if !tail.is_identity() {
                    out += &format!("[g{},g{}] = {}\n", j + 1, i + 1, self.format_element(&tail));
                }
            }
        }
        out
    }
}

impl fmt::Display for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&Alphabet::numbered(self.rank)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freewords::{parse_word, Alphabet};
    use crate::magnus_map::expand;

    #[test]
    fn class_two_rank_two() {
        let pc = PcPresentation::free_nilpotent(2, 2).unwrap();
        assert_eq!(pc.len(), 3);
        // g3 = [x2, x1] is the defining commutator
        assert_eq!(pc.commutator_tail(1, 0), pc.generator(2));
        assert!(pc.commutator_tail(2, 0).is_identity());
        pc.check_consistency().unwrap();
        // x1 x2 = x2 x1 [x1, x2] = x2 x1 g3^-1  ->  normal form x1 x2
        let a = Alphabet::numbered(2);
        let g = pc.eval_word(&parse_word("x2*x1", &a).unwrap()).unwrap();
        assert_eq!(pc.format_element(&g), "g1*g2*g3");
    }

    #[test]
    fn class_three_tails_are_consistent() {
        for (rank, class) in [(2, 3), (2, 4), (3, 3), (2, 5)] {
            let pc = PcPresentation::free_nilpotent(rank, class).unwrap();
            pc.check_consistency().unwrap();
        }
    }

    #[test]
    fn collection_matches_magnus() {
        let pc = PcPresentation::free_nilpotent(2, 4).unwrap();
        let a = Alphabet::numbered(2);
        for text in [
            "x1^3*x2^-2*x1*x2",
            "[[x1,x2],x2]*x1^-5",
            "x2^20*x1^-17*x2",
            "[x1^2,x2^3]",
        ] {
            let w = parse_word(text, &a).unwrap();
            let g = pc.eval_word(&w).unwrap();
            assert_eq!(pc.element_image(&g).unwrap(), expand(&w, 4).unwrap(), "{text}");
        }
    }

    #[test]
    fn group_laws() {
        let pc = PcPresentation::free_nilpotent(3, 3).unwrap();
        let a = Alphabet::numbered(3);
        let g = pc.eval_word(&parse_word("x1*x3^2*x2^-1*x1", &a).unwrap()).unwrap();
        let h = pc.eval_word(&parse_word("x2*x3*x1^-2", &a).unwrap()).unwrap();
        assert!(pc.mul(&g, &pc.inverse(&g)).is_identity());
        assert_eq!(pc.pow(&g, &BigInt::from(3)), pc.mul(&g, &pc.mul(&g, &g)));
        assert_eq!(pc.pow(&g, &BigInt::from(-2)), pc.inverse(&pc.mul(&g, &g)));
        let c = pc.commutator(&g, &h);
        assert_eq!(pc.mul(&pc.mul(&h, &g), &c), pc.mul(&g, &h));
    }

    #[test]
    fn large_conjugating_powers() {
        let pc = PcPresentation::free_nilpotent(2, 3).unwrap();
        let a = Alphabet::numbered(2);
        let w = parse_word("x2*x1^100*x2^-1*x1^-37", &a).unwrap();
        let g = pc.eval_word(&w).unwrap();
        assert_eq!(pc.element_image(&g).unwrap(), expand(&w, 3).unwrap());
    }
}
