//! Whitehead automorphisms and cyclic length minimization.
//!
//! Minimization is greedy strict descent over the enumerated moves. Peak
//! reduction guarantees that whenever a cyclic word is not of minimal length
//! in its automorphism orbit, some single Whitehead move shortens it, so the
//! descent ends at the minimum. Deciding equivalence among minimal words is
//! not attempted.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freewords::{Alphabet, GroupWord};

/// Enumeration is refused above this rank: the move set grows like `q 4^q`.
pub const MAX_ENUMERATION_RANK: usize = 5;

/// How a Type II automorphism with multiplier `a` treats a generator `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Assignment {
    /// `x -> x`
    Fixed,
    /// `x -> x a`
    Right,
    /// `x -> a^-1 x`
    Left,
    /// `x -> a^-1 x a`
    Both,
}

const ASSIGNMENTS: [Assignment; 4] = [
    Assignment::Fixed,
    Assignment::Right,
    Assignment::Left,
    Assignment::Both,
];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WhiteheadAuto {
    /// `x_i -> x_{images[i].0}`, inverted when `images[i].1` is true.
    Permutation { images: Vec<(usize, bool)> },
    /// Multiplier `x_m^s` with `s = ±1`. The multiplier's own generator is
    /// fixed, whatever its entry in `assignments` says.
    TypeII {
        multiplier: (usize, i64),
        assignments: Vec<Assignment>,
    },
}

impl WhiteheadAuto {
    pub fn identity(rank: usize) -> WhiteheadAuto {
        WhiteheadAuto::Permutation {
            images: (0..rank).map(|i| (i, false)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            WhiteheadAuto::Permutation { images } => images.len(),
            WhiteheadAuto::TypeII { assignments, .. } => assignments.len(),
        }
    }

    /// Images of the generators as syllable lists.
    fn generator_images(&self) -> Vec<Vec<(usize, i64)>> {
        match self {
            WhiteheadAuto::Permutation { images } => images
                .iter()
                .map(|&(j, inv)| vec![(j, if inv { -1 } else { 1 })])
                .collect(),
            WhiteheadAuto::TypeII {
                multiplier: (m, s),
                assignments,
            } => assignments
                .iter()
                .enumerate()
                .map(|(x, asg)| {
                    if x == *m {
                        return vec![(x, 1)];
                    }
                    match asg {
                        Assignment::Fixed => vec![(x, 1)],
                        Assignment::Right => vec![(x, 1), (*m, *s)],
                        Assignment::Left => vec![(*m, -*s), (x, 1)],
                        Assignment::Both => vec![(*m, -*s), (x, 1), (*m, *s)],
                    }
                })
                .collect(),
        }
    }

    pub fn apply(&self, w: &GroupWord) -> Result<GroupWord> {
        let rank = w.alphabet().rank();
        if self.rank() != rank {
            return Err(Error::RankMismatch(self.rank(), rank));
        }
        let images = self.generator_images();
        let raw = w.syllables().iter().flat_map(|&(g, e)| {
            let img = &images[g];
            let reps = e.unsigned_abs() as usize;
            let forward: Vec<(usize, i64)> = if e > 0 {
                img.clone()
            } else {
                img.iter().rev().map(|&(h, f)| (h, -f)).collect()
            };
            std::iter::repeat_n(forward, reps).flatten()
        });
        GroupWord::reduce(w.alphabet(), raw)
    }

    pub fn inverse(&self) -> WhiteheadAuto {
        match self {
            WhiteheadAuto::Permutation { images } => {
                let mut inv = vec![(0, false); images.len()];
                for (i, &(j, flip)) in images.iter().enumerate() {
                    inv[j] = (i, flip);
                }
                WhiteheadAuto::Permutation { images: inv }
            }
            WhiteheadAuto::TypeII {
                multiplier: (m, s),
                assignments,
            } => WhiteheadAuto::TypeII {
                multiplier: (*m, -*s),
                assignments: assignments.clone(),
            },
        }
    }

    /// Compact descriptor listing only the generators that move, e.g.
    /// `whitehead(x2^-1: x1->x1*x2^-1)` or `perm(x1->x2, x2->x1^-1)`.
    pub fn describe(&self, alphabet: &Alphabet) -> String {
        let images = self.generator_images();
        let moved: Vec<String> = images
            .iter()
            .enumerate()
            .filter(|(x, img)| img.as_slice() != [(*x, 1)])
            .map(|(x, img)| {
                let body: Vec<String> = img
                    .iter()
                    .map(|&(h, e)| letter(alphabet, h, e))
                    .collect();
                format!("{}->{}", alphabet.name(x), body.join("*"))
            })
            .collect();
        match self {
            WhiteheadAuto::Permutation { .. } => format!("perm({})", moved.join(", ")),
            WhiteheadAuto::TypeII {
                multiplier: (m, s), ..
            } => format!("whitehead({}: {})", letter(alphabet, *m, *s), moved.join(", ")),
        }
    }
}

fn letter(alphabet: &Alphabet, g: usize, e: i64) -> String {
    if e == 1 {
        alphabet.name(g).to_string()
    } else {
        format!("{}^{e}", alphabet.name(g))
    }
}

/// Every Type II automorphism of rank `q`, including trivial and repeated
/// ones: `2q` multipliers times `4^(q-1)` assignments.
pub fn type_ii_raw(q: usize) -> Vec<WhiteheadAuto> {
    let mut out = Vec::new();
    for m in 0..q {
        for s in [1, -1] {
            let others = q - 1;
            for code in 0..4usize.pow(others as u32) {
                let mut c = code;
                let assignments = (0..q)
                    .map(|x| {
                        if x == m {
                            return Assignment::Fixed;
                        }
                        let a = ASSIGNMENTS[c % 4];
                        c /= 4;
                        a
                    })
                    .collect();
                out.push(WhiteheadAuto::TypeII {
                    multiplier: (m, s),
                    assignments,
                });
            }
        }
    }
    out
}

/// The move set: identity, single inversions, transpositions, then all
/// Type II automorphisms, with repeated actions on generators removed.
pub fn enumerate_autos(q: usize) -> Result<Vec<WhiteheadAuto>> {
    if q == 0 {
        return Err(Error::Precondition("rank must be positive".into()));
    }
    if q > MAX_ENUMERATION_RANK {
        return Err(Error::ResourceCap(format!(
            "Whitehead enumeration is capped at rank {MAX_ENUMERATION_RANK}, got {q}"
        )));
    }
    let mut candidates = vec![WhiteheadAuto::identity(q)];
    for i in 0..q {
        let mut images: Vec<(usize, bool)> = (0..q).map(|j| (j, false)).collect();
        images[i].1 = true;
        candidates.push(WhiteheadAuto::Permutation { images });
    }
    for i in 0..q {
        for j in i + 1..q {
            let mut images: Vec<(usize, bool)> = (0..q).map(|k| (k, false)).collect();
            images.swap(i, j);
            candidates.push(WhiteheadAuto::Permutation { images });
        }
    }
    candidates.extend(type_ii_raw(q));
    let mut seen = HashSet::new();
    Ok(candidates
        .into_iter()
        .filter(|a| seen.insert(a.generator_images()))
        .collect())
}

/// A cyclically reduced word up to rotation, stored in its least rotation
/// (letters compared as `(generator, sign)` pairs).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    alphabet: Arc<Alphabet>,
    letters: Vec<(usize, i64)>,
}

impl CyclicWord {
    pub fn new(w: &GroupWord) -> CyclicWord {
        let core = w.cyclic_reduce().1;
        let letters: Vec<(usize, i64)> = core.letters().collect();
        let n = letters.len();
        let best = (0..n)
            .min_by(|&a, &b| {
                let ra = letters[a..].iter().chain(&letters[..a]);
                let rb = letters[b..].iter().chain(&letters[..b]);
                ra.cmp(rb)
            })
            .unwrap_or(0);
        let mut letters = letters;
        letters.rotate_left(best);
        CyclicWord {
            alphabet: w.alphabet().clone(),
            letters,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The canonical rotation as an ordinary word.
    pub fn to_word(&self) -> GroupWord {
        GroupWord::reduce(&self.alphabet, self.letters.iter().copied())
            .expect("letters come from a valid word")
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimization {
    pub minimal: CyclicWord,
    /// Applying these in order to the input, then cyclically reducing,
    /// gives `minimal` up to rotation.
    pub path: Vec<WhiteheadAuto>,
}

pub fn minimize(w: &GroupWord) -> Result<Minimization> {
    if w.is_identity() {
        return Err(Error::IdentityWord("Whitehead minimization"));
    }
    let autos = enumerate_autos(w.alphabet().rank())?;
    let mut current = w.cyclic_reduce().1;
    let mut path = Vec::new();
    loop {
        let len = current.len();
        let mut best: Option<(usize, GroupWord, &WhiteheadAuto)> = None;
        for a in &autos {
            let image = a.apply(&current)?.cyclic_reduce().1;
            let l = image.len();
            if l < len && best.as_ref().is_none_or(|(bl, _, _)| l < *bl) {
                best = Some((l, image, a));
            }
        }
        match best {
            Some((_, image, a)) => {
                path.push(a.clone());
                current = image;
            }
            None => break,
        }
    }
    Ok(Minimization {
        minimal: CyclicWord::new(&current),
        path,
    })
}

/// True when `w` belongs to some free basis, i.e. minimizes to length 1.
pub fn is_primitive(w: &GroupWord) -> Result<bool> {
    Ok(minimize(w)?.minimal.len() == 1)
}
