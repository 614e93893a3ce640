//! Comparing lower central factors with those of a free group, and the
//! one-relator groups `G_w = <s, t, a_1..a_q | a_1 = w [s, t]>`.
//!
//! Agreement of every computed layer with the free group of the reference
//! rank is a necessary condition for being parafree of that rank. It is
//! never a proof: residual nilpotence is not decided here.

use std::fmt;
use std::sync::Arc;

use super::hall::witt_number;
use super::nq::{nilpotent_quotient, NqOptions};
use super::snf::AbelianInvariants;
use crate::error::{Error, Result};
use crate::freewords::{commutator, Alphabet, GroupWord, Presentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerVerdict {
    pub layer: usize,
    pub group: AbelianInvariants,
    pub reference: AbelianInvariants,
}

impl LayerVerdict {
    pub fn is_equal(&self) -> bool {
        self.group == self.reference
    }

    /// `layer=<n> rank=<r> torsion=<d1,...> verdict=<equal|differ>`
    pub fn machine_line(&self) -> String {
        format!(
            "layer={} rank={} torsion={} verdict={}",
            self.layer,
            self.group.free_rank,
            self.group.torsion_list(),
            if self.is_equal() { "equal" } else { "differ" }
        )
    }
}

impl fmt::Display for LayerVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<6} {:<20} {:<20} {}",
            self.layer,
            self.group.to_string(),
            self.reference.to_string(),
            if self.is_equal() { "equal" } else { "differ" }
        )
    }
}

/// Human table with a header row.
pub fn verdict_table(verdicts: &[LayerVerdict]) -> String {
    let mut out = format!("{:<6} {:<20} {:<20} {}\n", "layer", "group", "free", "verdict");
    for v in verdicts {
        out += &format!("{v}\n");
    }
    out
}

/// Compares layers `1..=class` of `p` against the free group of rank
/// `reference_rank`.
pub fn parafree_compare(
    p: &Presentation,
    reference_rank: usize,
    class: usize,
    opts: &NqOptions,
) -> Result<Vec<LayerVerdict>> {
    let nq = nilpotent_quotient(p, class, opts)?;
    Ok(nq
        .layers
        .into_iter()
        .enumerate()
        .map(|(i, group)| LayerVerdict {
            layer: i + 1,
            group,
            reference: AbelianInvariants::free(
                witt_number(reference_rank as u64, (i + 1) as u64) as usize,
            ),
        })
        .collect())
}

/// `s, t, a1, ..., aq`.
pub fn gw_alphabet(q: usize) -> Arc<Alphabet> {
    let names = ["s".to_string(), "t".to_string()]
        .into_iter()
        .chain((1..=q).map(|i| format!("a{i}")));
    Alphabet::new(names).expect("fixed names are valid")
}

/// The presentation `<s, t, a_1..a_q | a_1^-1 w [s, t]>`.
///
/// `w` must involve `a_1`, avoid `s`, and have every exponent sum zero
/// (membership in the derived subgroup). Deeper derived-series membership
/// is the caller's responsibility.
pub fn build_gw(q: usize, w: &GroupWord) -> Result<Presentation> {
    if q == 0 {
        return Err(Error::Precondition("q must be at least 1".into()));
    }
    let alphabet = gw_alphabet(q);
    if **w.alphabet() != *alphabet {
        return Err(Error::AlphabetMismatch);
    }
    let (s, t, a1) = (0, 1, 2);
    if w.involves(s) {
        return Err(Error::Precondition("w must not involve s".into()));
    }
    if !w.involves(a1) {
        return Err(Error::Precondition("w must involve a1".into()));
    }
    if let Some((g, e)) = w
        .exponent_sums()
        .into_iter()
        .enumerate()
        .find(|&(_, e)| e != 0)
    {
        return Err(Error::Precondition(format!(
            "w has exponent sum {e} in {}; it must lie in the derived subgroup",
            alphabet.name(g)
        )));
    }
    let st = commutator(
        &GroupWord::generator(&alphabet, s)?,
        &GroupWord::generator(&alphabet, t)?,
    )?;
    let relator = GroupWord::generator(&alphabet, a1)?
        .invert()
        .multiply(w)?
        .multiply(&st)?;
    Presentation::new(alphabet, vec![relator])
}
