//! Lower central factors of a finitely presented group.
//!
//! For `G = <X | R>` and class `c`, let `P = F / gamma_{c+1}(F)` be the free
//! nilpotent group on `X` and `K` the normal closure of the relator images
//! in `P`, so that `G / gamma_{c+1}(G) = P / K`. Then
//!
//! ```text
//! gamma_n(G) / gamma_{n+1}(G)  =  Z^{W(n)} / L_n
//! ```
//!
//! where `Z^{W(n)}` is the weight-`n` layer of `P` and `L_n` is the image of
//! `K ∩ gamma_n(P)` in it. `K` is computed as an induced polycyclic
//! sequence (echelon form by leading generator), closed under commutators
//! with the generators of `P` and with its own members, and `L_n` is read
//! off the members whose leading generator has weight `n`.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::hall::witt_number;
use super::pc::{PcElement, PcPresentation};
use super::snf::{AbelianInvariants, IntMatrix};
use crate::error::{Error, Result};
use crate::freewords::Presentation;

pub const DEFAULT_MAX_CLASS: usize = 6;
pub const DEFAULT_MAX_PC_GENS: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NqOptions {
    pub max_class: usize,
    pub max_pc_gens: usize,
    /// Cooperative timeout, checked between collection steps.
    pub deadline: Option<Instant>,
}

impl Default for NqOptions {
    fn default() -> Self {
        NqOptions {
            max_class: DEFAULT_MAX_CLASS,
            max_pc_gens: DEFAULT_MAX_PC_GENS,
            deadline: None,
        }
    }
}

impl NqOptions {
    fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::ResourceCap("timeout".into())),
            _ => Ok(()),
        }
    }
}

/// Echelon generating set of a subgroup of a torsion-free pc group: at most
/// one member per leading generator, with positive leading exponent.
#[derive(Debug, Clone)]
pub struct InducedSequence {
    table: Vec<Option<PcElement>>,
}

impl InducedSequence {
    pub fn new(len: usize) -> InducedSequence {
        InducedSequence {
            table: vec![None; len],
        }
    }

    pub fn members(&self) -> impl Iterator<Item = &PcElement> {
        self.table.iter().flatten()
    }

    pub fn at(&self, lead: usize) -> Option<&PcElement> {
        self.table[lead].as_ref()
    }

    /// Sifts `g` through the table, inserting whatever remains. Returns true
    /// when the table changed.
    pub fn add(&mut self, pc: &PcPresentation, g: PcElement) -> bool {
        let mut pending = vec![g];
        let mut changed = false;
        while let Some(mut g) = pending.pop() {
            while let Some(d) = g.lead() {
                if g[d].is_negative() {
                    g = pc.inverse(&g);
                }
                let Some(t) = self.table[d].clone() else {
                    self.table[d] = Some(g);
                    changed = true;
                    break;
                };
                let (a, b) = (t[d].clone(), g[d].clone());
                if b.is_multiple_of(&a) {
                    let q = &b / &a;
                    g = pc.mul(&g, &pc.pow(&t, &-q));
                    continue;
                }
                // replace the pivot by one with leading exponent gcd(a, b)
                let e = a.extended_gcd(&b);
                let h = pc.mul(&pc.pow(&t, &e.x), &pc.pow(&g, &e.y));
                debug_assert_eq!(h[d], e.gcd);
                let t_rest = pc.mul(&t, &pc.pow(&h, &-(&a / &e.gcd)));
                let g_rest = pc.mul(&g, &pc.pow(&h, &-(&b / &e.gcd)));
                self.table[d] = Some(h);
                changed = true;
                pending.push(t_rest);
                g = g_rest;
            }
        }
        changed
    }

    /// True when `g` sifts to the identity, i.e. lies in the subgroup.
    pub fn contains(&self, pc: &PcPresentation, g: &PcElement) -> bool {
        let mut g = g.clone();
        while let Some(d) = g.lead() {
            let Some(t) = &self.table[d] else {
                return false;
            };
            let (q, r) = g[d].div_rem(&t[d]);
            if !r.is_zero() {
                return false;
            }
            g = pc.mul(&g, &pc.pow(t, &-q));
        }
        true
    }
}

/// `G / gamma_{c+1}(G)` described through its free nilpotent cover.
#[derive(Debug, Clone)]
pub struct NilpotentQuotient {
    pub cover: PcPresentation,
    pub kernel: InducedSequence,
    /// `layers[n - 1]` is `gamma_n(G) / gamma_{n+1}(G)`.
    pub layers: Vec<AbelianInvariants>,
}

impl NilpotentQuotient {
    pub fn class(&self) -> usize {
        self.cover.class()
    }

    /// Relation matrix of layer `n`: rows are the weight-`n` coordinates of
    /// kernel members led by a weight-`n` generator.
    pub fn layer_relations(&self, n: usize) -> IntMatrix {
        layer_matrix(&self.cover, &self.kernel, n)
    }
}

fn layer_matrix(pc: &PcPresentation, kernel: &InducedSequence, n: usize) -> IntMatrix {
    let range = pc.layer(n);
    let rows: Vec<Vec<BigInt>> = range
        .clone()
        .filter_map(|d| kernel.at(d))
        .map(|g| g.exponents()[range.clone()].to_vec())
        .collect();
    IntMatrix::from_rows(range.len(), rows)
}

/// Lower central factors `gamma_n(G)/gamma_{n+1}(G)` for `n = 1..=class`.
pub fn nilpotent_quotient(
    p: &Presentation,
    class: usize,
    opts: &NqOptions,
) -> Result<NilpotentQuotient> {
    if class == 0 {
        return Err(Error::Precondition("class must be positive".into()));
    }
    if class > opts.max_class {
        return Err(Error::ResourceCap(format!(
            "class {class} exceeds the cap {}",
            opts.max_class
        )));
    }
    let rank = p.rank() as u64;
    let gens: u64 = (1..=class as u64).map(|n| witt_number(rank, n)).sum();
    if gens > opts.max_pc_gens as u64 {
        return Err(Error::ResourceCap(format!(
            "{gens} pc generators exceed the cap {}",
            opts.max_pc_gens
        )));
    }
    let pc = PcPresentation::free_nilpotent(p.rank(), class)?;
    opts.check_deadline()?;

    let mut kernel = InducedSequence::new(pc.len());
    for r in p.relators() {
        kernel.add(&pc, pc.eval_word(r)?);
    }
    let generators: Vec<PcElement> = pc.layer(1).map(|i| pc.generator(i)).collect();
    loop {
        let mut changed = false;
        let members: Vec<PcElement> = kernel.members().cloned().collect();
        for t in &members {
            for x in &generators {
                opts.check_deadline()?;
                changed |= kernel.add(&pc, pc.commutator(t, x));
            }
        }
        let members: Vec<PcElement> = kernel.members().cloned().collect();
        for (a, s) in members.iter().enumerate() {
            for t in &members[a + 1..] {
                opts.check_deadline()?;
                changed |= kernel.add(&pc, pc.commutator(t, s));
            }
        }
        if !changed {
            break;
        }
    }

    let layers = (1..=class)
        .map(|n| AbelianInvariants::from_relations(&layer_matrix(&pc, &kernel, n)))
        .collect();
    Ok(NilpotentQuotient {
        cover: pc,
        kernel,
        layers,
    })
}

/// Abelianization straight from the exponent-sum matrix of the relators.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let rows = p.relators().iter().map(|r| r.exponent_sums());
    AbelianInvariants::from_relations(&IntMatrix::from_rows(p.rank(), rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freewords::Alphabet;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    fn layers(text: &str, class: usize) -> Vec<String> {
        nilpotent_quotient(&pres(text), class, &NqOptions::default())
            .unwrap()
            .layers
            .iter()
            .map(|l| l.to_string())
            .collect()
    }

    #[test]
    fn free_group_layers() {
        assert_eq!(layers("gens: x1, x2", 3), vec!["Z^2", "Z", "Z^2"]);
    }

    #[test]
    fn cyclic_of_order_two() {
        assert_eq!(layers("gens: x\nrel: x^2", 2), vec!["Z/2", "0"]);
    }

    #[test]
    fn free_abelian() {
        assert_eq!(layers("gens: a, b\nrel: [a,b]", 3), vec!["Z^2", "0", "0"]);
    }

    #[test]
    fn free_product_with_torsion() {
        // Z/2 * Z: gamma_2/gamma_3 is generated by [y,x] of order 2
        assert_eq!(layers("gens: x, y\nrel: x^2", 2), vec!["Z + Z/2", "Z/2"]);
    }

    #[test]
    fn genus_two_surface() {
        assert_eq!(
            layers("gens: a, b, c, d\nrel: [a,b]*[c,d]", 2),
            vec!["Z^4", "Z^5"]
        );
    }

    #[test]
    fn heisenberg_quotient() {
        // <a,b | [[a,b],a], [[a,b],b]> is the free class-2 group
        assert_eq!(
            layers("gens: a, b\nrel: [[a,b],a]\nrel: [[a,b],b]", 4),
            vec!["Z^2", "Z", "0", "0"]
        );
    }

    #[test]
    fn caps_are_enforced() {
        let p = Presentation::free(Alphabet::numbered(2));
        let opts = NqOptions::default();
        assert!(matches!(nilpotent_quotient(&p, 7, &opts), Err(Error::ResourceCap(_))));
        let tight = NqOptions {
            max_pc_gens: 10,
            ..NqOptions::default()
        };
        assert!(matches!(nilpotent_quotient(&p, 5, &tight), Err(Error::ResourceCap(_))));
        let expired = NqOptions {
            deadline: Some(Instant::now()),
            ..NqOptions::default()
        };
        std::thread::sleep(std::time::Duration::from_millis(2));
        assert!(matches!(nilpotent_quotient(&p, 2, &expired), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn abelianization_matches_layer_one() {
        let p = pres("gens: x, y, z\nrel: x^4*y^6\nrel: [x,z]*y^2");
        let nq = nilpotent_quotient(&p, 1, &NqOptions::default()).unwrap();
        assert_eq!(nq.layers[0], abelianization(&p));
        assert_eq!(nq.layers[0].to_string(), "Z + Z/2 + Z/4");
    }

    #[test]
    fn kernel_membership() {
        let p = pres("gens: a, b\nrel: a^3");
        let nq = nilpotent_quotient(&p, 3, &NqOptions::default()).unwrap();
        let w = crate::freewords::parse_word("b^-1*a^3*b", p.alphabet()).unwrap();
        assert!(nq.kernel.contains(&nq.cover, &nq.cover.eval_word(&w).unwrap()));
        let v = crate::freewords::parse_word("a*b", p.alphabet()).unwrap();
        assert!(!nq.kernel.contains(&nq.cover, &nq.cover.eval_word(&v).unwrap()));
    }
}
