//! Words in a free group.
//!
//! A [`GroupWord`] is kept in syllable form: a list of `(generator, exponent)`
//! pairs where adjacent syllables never share a generator and no exponent is
//! zero. This is the freely reduced normal form, and long powers cost one
//! syllable.
//!
//! Text syntax:
//!
//! ```text
//! word := term (('*' | ' ') term)*
//! term := gen ('^' int)? | '[' word ',' word ']' | '(' word ')' ('^' int)? | '1'
//! int  := '-'? [1-9][0-9]*
//! ```
//!
//! `[u,v]` is the commutator `u^-1 v^-1 u v`. The literal `1` denotes the
//! identity so that every word, including the trivial one, has a printable
//! form. Rational-exponent words ([`ExpWord`]) additionally accept `^p/q`
//! and `^(p/q)` on generators.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An ordered, named list of free generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub index: usize,
    pub name: String,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Arc<Alphabet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("no generators".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::InvalidAlphabet(format!("bad generator name `{name}`")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidAlphabet(format!("duplicate generator `{name}`")));
            }
        }
        Ok(Arc::new(Alphabet { names }))
    }

    /// `x1, ..., xq`.
    pub fn numbered(rank: usize) -> Arc<Alphabet> {
        assert!(rank > 0, "alphabet rank must be positive");
        Arc::new(Alphabet {
            names: (1..=rank).map(|i| format!("x{i}")).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator(&self, index: usize) -> Result<Generator> {
        self.names
            .get(index)
            .map(|name| Generator {
                index,
                name: name.clone(),
            })
            .ok_or(Error::GeneratorIndex {
                index,
                rank: self.rank(),
            })
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.names.iter().enumerate().map(|(index, name)| Generator {
            index,
            name: name.clone(),
        })
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A freely reduced element of the free group on an [`Alphabet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupWord {
    alphabet: Arc<Alphabet>,
    syllables: Vec<(usize, i64)>,
}

fn push_syllable(out: &mut Vec<(usize, i64)>, gen: usize, exp: i64) -> Result<()> {
    if exp == 0 {
        return Ok(());
    }
    match out.last_mut() {
        Some((g, e)) if *g == gen => {
            *e = e.checked_add(exp).ok_or(Error::ExponentOverflow)?;
            if *e == 0 {
                out.pop();
            }
        }
        _ => out.push((gen, exp)),
    }
    Ok(())
}

impl GroupWord {
    pub fn identity(alphabet: &Arc<Alphabet>) -> GroupWord {
        GroupWord {
            alphabet: alphabet.clone(),
            syllables: Vec::new(),
        }
    }

    pub fn generator(alphabet: &Arc<Alphabet>, index: usize) -> Result<GroupWord> {
        GroupWord::reduce(alphabet, [(index, 1)])
    }

    /// Freely reduces a raw syllable sequence. Zero exponents are dropped.
    pub fn reduce<I>(alphabet: &Arc<Alphabet>, raw: I) -> Result<GroupWord>
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut syllables = Vec::new();
        for (gen, exp) in raw {
            if gen >= alphabet.rank() {
                return Err(Error::GeneratorIndex {
                    index: gen,
                    rank: alphabet.rank(),
                });
            }
            push_syllable(&mut syllables, gen, exp)?;
        }
        Ok(GroupWord {
            alphabet: alphabet.clone(),
            syllables,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, counting `x^k` as `|k|` letters.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// The word spelled out letter by letter as `(generator, ±1)`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.syllables
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
    }

    /// Image in the abelianization: the exponent sum of each generator.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.alphabet.rank()];
        for &(g, e) in &self.syllables {
            sums[g] += e;
        }
        sums
    }

    pub fn involves(&self, gen: usize) -> bool {
        self.syllables.iter().any(|&(g, _)| g == gen)
    }

    fn check_same(&self, other: &GroupWord) -> Result<()> {
        if Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn multiply(&self, other: &GroupWord) -> Result<GroupWord> {
        self.check_same(other)?;
        let mut syllables = self.syllables.clone();
        for &(g, e) in &other.syllables {
            push_syllable(&mut syllables, g, e)?;
        }
        Ok(GroupWord {
            alphabet: self.alphabet.clone(),
            syllables,
        })
    }

    pub fn invert(&self) -> GroupWord {
        GroupWord {
            alphabet: self.alphabet.clone(),
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Result<GroupWord> {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = GroupWord::identity(&self.alphabet);
        for _ in 0..n.unsigned_abs() {
            out = out.multiply(&base)?;
        }
        Ok(out)
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &GroupWord) -> Result<GroupWord> {
        g.invert().multiply(self)?.multiply(g)
    }

    /// Splits `self = conjugator * core * conjugator^-1` with `core`
    /// cyclically reduced: its first and last letters are not inverse.
    pub fn cyclic_reduce(&self) -> (GroupWord, GroupWord) {
        let mut core: std::collections::VecDeque<(usize, i64)> =
            self.syllables.iter().copied().collect();
        let mut conj = Vec::new();
        while core.len() >= 2 {
            let (g1, e1) = core[0];
            let (g2, e2) = core[core.len() - 1];
            if g1 != g2 || e1.signum() == e2.signum() {
                break;
            }
            let k = e1.abs().min(e2.abs()) * e1.signum();
            conj.push((g1, k));
            let first = e1 - k;
            let last = e2 + k;
            core.pop_front();
            core.pop_back();
            if last != 0 {
                core.push_back((g2, last));
            }
            if first != 0 {
                core.push_front((g1, first));
            }
        }
        let alphabet = self.alphabet.clone();
        // conjugator syllables are collected outermost first
        let conjugator = GroupWord::reduce(&alphabet, conj).expect("indices already validated");
        let core = GroupWord::reduce(&alphabet, core).expect("indices already validated");
        (conjugator, core)
    }

    /// Letter length of the cyclically reduced core.
    pub fn cyclic_len(&self) -> usize {
        self.cyclic_reduce().1.len()
    }
}

/// `[u, v] = u^-1 v^-1 u v`.
pub fn commutator(u: &GroupWord, v: &GroupWord) -> Result<GroupWord> {
    u.invert().multiply(&v.invert())?.multiply(u)?.multiply(v)
}

/// `[[...[[g1, g2], g3]...], gk]`.
pub fn left_normed_commutator(gens: &[GroupWord]) -> Result<GroupWord> {
    let (first, rest) = gens
        .split_first()
        .ok_or(Error::Empty("left-normed commutator needs at least one entry"))?;
    rest.iter().try_fold(first.clone(), |acc, g| commutator(&acc, g))
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, &(g, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(self.alphabet.name(g))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

pub fn format_word(w: &GroupWord) -> String {
    w.to_string()
}

/// A word whose exponents are nonzero rationals, the elements of the
/// `x_i -> 1 + xi_i` probe for groups with unique roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpWord {
    alphabet: Arc<Alphabet>,
    syllables: Vec<(usize, BigRational)>,
}

fn push_rational(out: &mut Vec<(usize, BigRational)>, gen: usize, exp: BigRational) {
    if exp.is_zero() {
        return;
    }
    match out.last_mut() {
        Some((g, e)) if *g == gen => {
            *e += exp;
            if e.is_zero() {
                out.pop();
            }
        }
        _ => out.push((gen, exp)),
    }
}

impl ExpWord {
    pub fn identity(alphabet: &Arc<Alphabet>) -> ExpWord {
        ExpWord {
            alphabet: alphabet.clone(),
            syllables: Vec::new(),
        }
    }

    pub fn reduce<I>(alphabet: &Arc<Alphabet>, raw: I) -> Result<ExpWord>
    where
        I: IntoIterator<Item = (usize, BigRational)>,
    {
        let mut syllables = Vec::new();
        for (gen, exp) in raw {
            if gen >= alphabet.rank() {
                return Err(Error::GeneratorIndex {
                    index: gen,
                    rank: alphabet.rank(),
                });
            }
            push_rational(&mut syllables, gen, exp);
        }
        Ok(ExpWord {
            alphabet: alphabet.clone(),
            syllables,
        })
    }

    pub fn from_word(w: &GroupWord) -> ExpWord {
        ExpWord {
            alphabet: w.alphabet.clone(),
            syllables: w
                .syllables
                .iter()
                .map(|&(g, e)| (g, BigRational::from_integer(e.into())))
                .collect(),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn syllables(&self) -> &[(usize, BigRational)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn multiply(&self, other: &ExpWord) -> Result<ExpWord> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut syllables = self.syllables.clone();
        for (g, e) in &other.syllables {
            push_rational(&mut syllables, *g, e.clone());
        }
        Ok(ExpWord {
            alphabet: self.alphabet.clone(),
            syllables,
        })
    }

    pub fn invert(&self) -> ExpWord {
        ExpWord {
            alphabet: self.alphabet.clone(),
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|(g, e)| (*g, -e.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for ExpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(self.alphabet.name(*g))?;
            if !e.is_one() {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone)]
enum Term {
    One,
    Gen {
        name: String,
        num: i64,
        den: i64,
        exp_pos: usize,
    },
    Comm(Vec<Term>, Vec<Term>),
    Group(Vec<Term>, i64),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected `{}`", c as char)))
        }
    }

    fn unexpected(&self, what: &str) -> Error {
        match self.peek() {
            Some(c) => Error::syntax(self.pos, format!("{what}, found `{}`", c as char)),
            None => Error::syntax(self.pos, format!("{what}, found end of input")),
        }
    }

    fn parse_all(mut self) -> Result<Vec<Term>> {
        self.skip_ws();
        if self.peek().is_none() {
            return Err(Error::syntax(0, "empty word"));
        }
        let word = self.word()?;
        self.skip_ws();
        if self.peek().is_some() {
            return Err(self.unexpected("expected end of word"));
        }
        Ok(word)
    }

    fn starts_term(c: u8) -> bool {
        c.is_ascii_alphabetic() || c == b'[' || c == b'(' || c == b'1'
    }

    fn word(&mut self) -> Result<Vec<Term>> {
        let mut terms = vec![self.term()?];
        loop {
            let save = self.pos;
            let spaced = self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.skip_ws();
                    terms.push(self.term()?);
                }
                Some(c) if Self::starts_term(c) && (spaced || c == b'[' || c == b'(') => {
                    terms.push(self.term()?);
                }
                _ => {
                    self.pos = save;
                    return Ok(terms);
                }
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                self.skip_ws();
                let u = self.word()?;
                self.expect(b',')?;
                self.skip_ws();
                let v = self.word()?;
                self.expect(b']')?;
                Ok(Term::Comm(u, v))
            }
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let w = self.word()?;
                self.expect(b')')?;
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.int()?
                } else {
                    1
                };
                Ok(Term::Group(w, exp))
            }
            Some(b'1') => {
                self.pos += 1;
                if matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                    return Err(Error::syntax(self.pos - 1, "generator names start with a letter"));
                }
                Ok(Term::One)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                let exp_pos = self.pos;
                let (num, den) = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.rational()?
                } else {
                    (1, 1)
                };
                Ok(Term::Gen {
                    name,
                    num,
                    den,
                    exp_pos,
                })
            }
            _ => Err(self.unexpected("expected a generator, `[`, `(` or `1`")),
        }
    }

    fn digits(&mut self) -> Result<i64> {
        let start = self.pos;
        match self.peek() {
            Some(b'1'..=b'9') => {}
            Some(b'0') => return Err(Error::syntax(self.pos, "zero exponents are not allowed")),
            _ => return Err(self.unexpected("expected a nonzero integer")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse::<i64>().ok())
            .ok_or(Error::syntax(start, "exponent out of range"))
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
        }
        let n = self.digits()?;
        Ok(if neg { -n } else { n })
    }

    fn rational(&mut self) -> Result<(i64, i64)> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let r = self.rational_body()?;
            if self.peek() != Some(b')') {
                return Err(self.unexpected("expected `)`"));
            }
            self.pos += 1;
            Ok(r)
        } else {
            self.rational_body()
        }
    }

    fn rational_body(&mut self) -> Result<(i64, i64)> {
        let num = self.int()?;
        let den = if self.peek() == Some(b'/') {
            self.pos += 1;
            self.digits()?
        } else {
            1
        };
        Ok((num, den))
    }
}

fn lookup(alphabet: &Alphabet, name: &str) -> Result<usize> {
    alphabet
        .index_of(name)
        .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
}

fn build_word(alphabet: &Arc<Alphabet>, terms: &[Term]) -> Result<GroupWord> {
    let mut out = GroupWord::identity(alphabet);
    for term in terms {
        let piece = match term {
            Term::One => continue,
            Term::Gen {
                name,
                num,
                den,
                exp_pos,
                ..
            } => {
                if *den != 1 {
                    return Err(Error::syntax(*exp_pos, "rational exponent in an integer word"));
                }
                GroupWord::reduce(alphabet, [(lookup(alphabet, name)?, *num)])?
            }
            Term::Comm(u, v) => commutator(&build_word(alphabet, u)?, &build_word(alphabet, v)?)?,
            Term::Group(w, e) => build_word(alphabet, w)?.pow(*e)?,
        };
        out = out.multiply(&piece)?;
    }
    Ok(out)
}

fn build_exp_word(alphabet: &Arc<Alphabet>, terms: &[Term]) -> Result<ExpWord> {
    let mut out = ExpWord::identity(alphabet);
    for term in terms {
        let piece = match term {
            Term::One => continue,
            Term::Gen { name, num, den, .. } => {
                let e = BigRational::new(BigInt::from(*num), BigInt::from(*den));
                ExpWord::reduce(alphabet, [(lookup(alphabet, name)?, e)])?
            }
            Term::Comm(u, v) => {
                let u = build_exp_word(alphabet, u)?;
                let v = build_exp_word(alphabet, v)?;
                u.invert().multiply(&v.invert())?.multiply(&u)?.multiply(&v)?
            }
            Term::Group(w, e) => {
                let w = build_exp_word(alphabet, w)?;
                let base = if *e < 0 { w.invert() } else { w };
                let mut acc = ExpWord::identity(alphabet);
                for _ in 0..e.unsigned_abs() {
                    acc = acc.multiply(&base)?;
                }
                acc
            }
        };
        out = out.multiply(&piece)?;
    }
    Ok(out)
}

pub fn parse_word(text: &str, alphabet: &Arc<Alphabet>) -> Result<GroupWord> {
    let terms = Parser::new(text).parse_all()?;
    build_word(alphabet, &terms)
}

pub fn parse_exp_word(text: &str, alphabet: &Arc<Alphabet>) -> Result<ExpWord> {
    let terms = Parser::new(text).parse_all()?;
    build_exp_word(alphabet, &terms)
}

fn collect_names(terms: &[Term], out: &mut Vec<String>) {
    for term in terms {
        match term {
            Term::One => {}
            Term::Gen { name, .. } => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            Term::Comm(u, v) => {
                collect_names(u, out);
                collect_names(v, out);
            }
            Term::Group(w, _) => collect_names(w, out),
        }
    }
}

/// Generator names used by `text`, in order of first appearance.
pub fn generator_names(text: &str) -> Result<Vec<String>> {
    let terms = Parser::new(text).parse_all()?;
    let mut names = Vec::new();
    collect_names(&terms, &mut names);
    Ok(names)
}

/// The alphabet a bare word implies: `x1..xk` when every name has that
/// form (k the largest index used), otherwise the names in order of first
/// appearance.
pub fn infer_alphabet(text: &str) -> Result<Arc<Alphabet>> {
    let names = generator_names(text)?;
    let numbered: Option<Vec<usize>> = names
        .iter()
        .map(|n| {
            n.strip_prefix('x')
                .filter(|d| !d.starts_with('0'))
                .and_then(|d| d.parse::<usize>().ok())
        })
        .collect();
    match numbered {
        Some(ix) if !ix.is_empty() => Ok(Alphabet::numbered(*ix.iter().max().unwrap())),
        _ if names.is_empty() => Ok(Alphabet::numbered(1)),
        _ => Alphabet::new(names),
    }
}

// ---------------------------------------------------------------------------
// Presentations

/// Generators plus relator words, each stored freely reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Arc<Alphabet>,
    relators: Vec<GroupWord>,
}

impl Presentation {
    pub fn new(alphabet: Arc<Alphabet>, relators: Vec<GroupWord>) -> Result<Presentation> {
        if relators.iter().any(|r| **r.alphabet() != *alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(Presentation { alphabet, relators })
    }

    pub fn free(alphabet: Arc<Alphabet>) -> Presentation {
        Presentation {
            alphabet,
            relators: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn generators(&self) -> Vec<Generator> {
        self.alphabet.generators().collect()
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    pub fn with_relator(&self, r: GroupWord) -> Result<Presentation> {
        let mut relators = self.relators.clone();
        relators.push(r);
        Presentation::new(self.alphabet.clone(), relators)
    }

    /// Reads the line format: `gens: a, b, ...` once, then any number of
    /// `rel: <word>` lines. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut alphabet: Option<Arc<Alphabet>> = None;
        let mut relators = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let line_start = offset;
            offset += line.len();
            let content = line.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let lead = content.len() - content.trim_start().len();
            if let Some(rest) = trimmed.strip_prefix("gens:") {
                if alphabet.is_some() {
                    return Err(Error::syntax(line_start + lead, "duplicate `gens:` line"));
                }
                let names: Vec<&str> = rest.split(',').map(str::trim).collect();
                alphabet = Some(Alphabet::new(names)?);
            } else if let Some(rest) = trimmed.strip_prefix("rel:") {
                let alpha = alphabet
                    .as_ref()
                    .ok_or_else(|| Error::syntax(line_start + lead, "`rel:` before `gens:`"))?;
                let rel_start = line_start + lead + 4;
                let w = parse_word(rest, alpha).map_err(|e| match e {
                    Error::Syntax { pos, message } => Error::Syntax {
                        pos: pos + rel_start,
                        message,
                    },
                    other => other,
                })?;
                relators.push(w);
            } else {
                return Err(Error::syntax(
                    line_start + lead,
                    "expected `gens:` or `rel:` line",
                ));
            }
        }
        let alphabet = alphabet.ok_or(Error::syntax(text.len(), "missing `gens:` line"))?;
        Presentation::new(alphabet, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.alphabet.names().join(", "))?;
        for r in &self.relators {
            writeln!(f, "rel: {r}")?;
        }
        Ok(())
    }
}
