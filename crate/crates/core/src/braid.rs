//! Braid words over `σ1..σ(n-1)`, Bokut–Vesnin words over `a, b`, free
//! reduction, the homomorphism `B4 -> B3`, strand permutations and seeded
//! sampling of freely reduced words.
//!
//! Text grammar. Braid letters are `s1`..`s3` (also `σ1`..`σ3`); an uppercase
//! `S` denotes the inverse. Bokut–Vesnin letters are `a`, `b` and the inverses
//! `A`, `B`. Any letter may carry a power suffix `^k` with `k != 0`, and a
//! trailing `'` on a lowercase letter also denotes the inverse. Tokens may be
//! separated by whitespace or written back to back.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: u32, strands: u8 },
    #[error("unsupported strand count {0}")]
    StrandCount(u8),
}

/// Anything that can be freely cancelled against its inverse.
pub trait FreeLetter: Copy + Eq {
    fn inverse(self) -> Self;
}

/// Cancels adjacent inverse pairs until none remain (stack based, linear time).
pub fn free_reduce_letters<L: FreeLetter>(letters: &[L]) -> Vec<L> {
    let mut out: Vec<L> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn is_freely_reduced<L: FreeLetter>(letters: &[L]) -> bool {
    letters.windows(2).all(|w| w[1] != w[0].inverse())
}

/// A braid generator `σ_index` or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub index: u8,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(index: u8, inverse: bool) -> Self {
        Letter { index, inverse }
    }

    pub const fn pos(index: u8) -> Self {
        Letter::new(index, false)
    }

    pub const fn neg(index: u8) -> Self {
        Letter::new(index, true)
    }

    pub fn sign(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl FreeLetter for Letter {
    fn inverse(self) -> Self {
        Letter::new(self.index, !self.inverse)
    }
}

/// A word in the braid generators of `B3` or `B4`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BraidWord {
    strands: u8,
    letters: Vec<Letter>,
    #[serde(skip)]
    reduced: bool,
}

impl PartialEq for BraidWord {
    fn eq(&self, other: &Self) -> bool {
        self.strands == other.strands && self.letters == other.letters
    }
}

impl Eq for BraidWord {}

impl BraidWord {
    pub fn new(strands: u8, letters: Vec<Letter>) -> Result<Self, WordError> {
        if !(3..=4).contains(&strands) {
            return Err(WordError::StrandCount(strands));
        }
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(WordError::IndexOutOfRange {
                index: l.index as u32,
                strands,
            });
        }
        Ok(BraidWord {
            strands,
            letters,
            reduced: false,
        })
    }

    pub fn empty(strands: u8) -> Self {
        BraidWord::new(strands, Vec::new()).expect("valid strand count")
    }

    pub fn parse(text: &str, strands: u8) -> Result<Self, WordError> {
        let tokens = tokenize(text, TokenKind::Braid)?;
        let mut letters = Vec::new();
        for tok in tokens {
            if tok.index == 0 || tok.index >= strands as u32 {
                return Err(WordError::IndexOutOfRange {
                    index: tok.index,
                    strands,
                });
            }
            let base = Letter::new(tok.index as u8, tok.power < 0);
            letters.extend(std::iter::repeat_n(base, tok.power.unsigned_abs() as usize));
        }
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> u8 {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True once [`BraidWord::free_reduce`] (or an equivalent check) has run.
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn free_reduce(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: free_reduce_letters(&self.letters),
            reduced: true,
        }
    }

    /// Formal inverse: reversed, every letter inverted.
    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
            reduced: self.reduced,
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
            reduced: false,
        }
    }

    pub fn exponent_sum(&self) -> i32 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    /// Image under `B4 -> B3`, `σ1 ↦ σ1, σ2 ↦ σ2, σ3 ↦ σ1`.
    pub fn phi(&self) -> BraidWord {
        assert_eq!(self.strands, 4, "phi is defined on B4 words");
        let letters = self
            .letters
            .iter()
            .map(|l| Letter::new(if l.index == 3 { 1 } else { l.index }, l.inverse))
            .collect();
        BraidWord {
            strands: 3,
            letters,
            reduced: false,
        }
    }

    pub fn permutation(&self) -> StrandPermutation {
        let mut p = StrandPermutation::identity(self.strands as usize);
        for l in &self.letters {
            p.swap_adjacent(l.index as usize - 1);
        }
        p
    }

    /// Uniformly random word (not necessarily reduced) of the given length.
    pub fn random<R: Rng + ?Sized>(strands: u8, length: usize, rng: &mut R) -> Self {
        let letters = (0..length)
            .map(|_| Letter::new(rng.gen_range(1..strands), rng.gen_bool(0.5)))
            .collect();
        BraidWord::new(strands, letters).expect("generated indices are in range")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_runs(f, &self.letters, |l| {
            format!("{}{}", if l.inverse { 'S' } else { 's' }, l.index)
        })
    }
}

/// Bokut–Vesnin generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BvGen {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BvLetter {
    pub gen: BvGen,
    pub inverse: bool,
}

impl BvLetter {
    pub const A: BvLetter = BvLetter::new(BvGen::A, false);
    pub const A_INV: BvLetter = BvLetter::new(BvGen::A, true);
    pub const B: BvLetter = BvLetter::new(BvGen::B, false);
    pub const B_INV: BvLetter = BvLetter::new(BvGen::B, true);
    /// In the order `a, A, b, B`.
    pub const ALL: [BvLetter; 4] = [Self::A, Self::A_INV, Self::B, Self::B_INV];

    pub const fn new(gen: BvGen, inverse: bool) -> Self {
        BvLetter { gen, inverse }
    }

    /// `a = σ1 σ2 σ1⁻¹ σ3 σ2⁻¹ σ1⁻¹`, `b = σ3 σ1⁻¹`; inverses are formal.
    pub fn expansion(self) -> Vec<Letter> {
        let base: &[Letter] = match self.gen {
            BvGen::A => &[
                Letter::pos(1),
                Letter::pos(2),
                Letter::neg(1),
                Letter::pos(3),
                Letter::neg(2),
                Letter::neg(1),
            ],
            BvGen::B => &[Letter::pos(3), Letter::neg(1)],
        };
        if self.inverse {
            base.iter().rev().map(|l| l.inverse()).collect()
        } else {
            base.to_vec()
        }
    }

    pub fn symbol(self) -> char {
        match (self.gen, self.inverse) {
            (BvGen::A, false) => 'a',
            (BvGen::A, true) => 'A',
            (BvGen::B, false) => 'b',
            (BvGen::B, true) => 'B',
        }
    }
}

impl FreeLetter for BvLetter {
    fn inverse(self) -> Self {
        BvLetter::new(self.gen, !self.inverse)
    }
}

/// A word in the Bokut–Vesnin generators `a, b` of `ker(B4 -> B3)`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct BvWord {
    letters: Vec<BvLetter>,
    #[serde(skip)]
    reduced: bool,
}

impl PartialEq for BvWord {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for BvWord {}

impl std::hash::Hash for BvWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.letters.hash(state)
    }
}

impl BvWord {
    pub fn new(letters: Vec<BvLetter>) -> Self {
        BvWord {
            letters,
            reduced: false,
        }
    }

    pub fn empty() -> Self {
        BvWord::new(Vec::new())
    }

    pub fn parse(text: &str) -> Result<Self, WordError> {
        let tokens = tokenize(text, TokenKind::Bv)?;
        let mut letters = Vec::new();
        for tok in tokens {
            let gen = if tok.index == 0 { BvGen::A } else { BvGen::B };
            let base = BvLetter::new(gen, tok.power < 0);
            letters.extend(std::iter::repeat_n(base, tok.power.unsigned_abs() as usize));
        }
        Ok(BvWord::new(letters))
    }

    /// `x^k` for a single generator; negative `k` gives inverse letters.
    pub fn power(gen: BvGen, k: i64) -> Self {
        let l = BvLetter::new(gen, k < 0);
        BvWord::new(vec![l; k.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[BvLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn free_reduce(&self) -> Self {
        BvWord {
            letters: free_reduce_letters(&self.letters),
            reduced: true,
        }
    }

    /// Checks the letters directly and sets the flag when they are reduced.
    pub fn check_reduced(mut self) -> Self {
        self.reduced = is_freely_reduced(&self.letters);
        self
    }

    pub fn inverse(&self) -> Self {
        BvWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
            reduced: self.reduced,
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BvWord::new(letters)
    }

    /// Letterwise substitution into `B4`; the result is not reduced.
    pub fn expand(&self) -> BraidWord {
        let letters = self.letters.iter().flat_map(|l| l.expansion()).collect();
        BraidWord::new(4, letters).expect("expansions use s1..s3")
    }

    pub fn permutation(&self) -> StrandPermutation {
        self.expand().permutation()
    }

    /// Counts of `a^{±1}` and `b^{±1}` letters.
    pub fn letter_counts(&self) -> (usize, usize) {
        let a = self.letters.iter().filter(|l| l.gen == BvGen::A).count();
        (a, self.letters.len() - a)
    }

    /// Pure iff both letter counts are even: `a ↦ (1 4)(2 3)` and
    /// `b ↦ (1 2)(3 4)` generate a Klein four-group.
    pub fn is_pure(&self) -> bool {
        let (a, b) = self.letter_counts();
        a % 2 == 0 && b % 2 == 0
    }

    /// Uniform non-backtracking walk: the first letter is uniform over the four
    /// letters, every later one over the three that do not cancel.
    pub fn random_reduced<R: Rng + ?Sized>(length: usize, rng: &mut R) -> Self {
        let mut letters: Vec<BvLetter> = Vec::with_capacity(length);
        for _ in 0..length {
            let next = match letters.last() {
                None => BvLetter::ALL[rng.gen_range(0..4)],
                Some(prev) => {
                    let forbidden = prev.inverse();
                    let choices: Vec<BvLetter> = BvLetter::ALL
                        .into_iter()
                        .filter(|l| *l != forbidden)
                        .collect();
                    choices[rng.gen_range(0..3)]
                }
            };
            letters.push(next);
        }
        BvWord {
            letters,
            reduced: true,
        }
    }
}

/// Seeded entry point for [`BvWord::random_reduced`].
pub fn random_reduced_bv_word(length: usize, seed: u64) -> BvWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BvWord::random_reduced(length, &mut rng)
}

impl fmt::Display for BvWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_runs(f, &self.letters, |l| l.symbol().to_string())
    }
}

impl FromStr for BvWord {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BvWord::parse(s)
    }
}

fn write_runs<L: Copy + Eq>(
    f: &mut fmt::Formatter<'_>,
    letters: &[L],
    symbol: impl Fn(L) -> String,
) -> fmt::Result {
    let mut first = true;
    let mut i = 0;
    while i < letters.len() {
        let mut j = i + 1;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        if !first {
            f.write_str(" ")?;
        }
        first = false;
        f.write_str(&symbol(letters[i]))?;
        if j - i > 1 {
            write!(f, "^{}", j - i)?;
        }
        i = j;
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum TokenKind {
    Braid,
    Bv,
}

struct Token {
    /// Braid: generator index. Bv: 0 for `a`, 1 for `b`.
    index: u32,
    power: i64,
}

fn tokenize(text: &str, kind: TokenKind) -> Result<Vec<Token>, WordError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let end = text.len();
    let pos = |k: usize| chars.get(k).map(|(p, _)| *p).unwrap_or(end);
    let syntax = |position: usize, message: &str| WordError::Syntax {
        position,
        message: message.to_string(),
    };
    let read_digits = |k: &mut usize| -> Option<String> {
        let start = *k;
        while *k < chars.len() && chars[*k].1.is_ascii_digit() {
            *k += 1;
        }
        (*k > start).then(|| chars[start..*k].iter().map(|(_, c)| *c).collect())
    };
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (p, ch) = chars[k];
        if ch.is_whitespace() || ch == '*' || ch == '.' {
            k += 1;
            continue;
        }
        let (index, mut inverse, lower) = match (kind, ch) {
            (TokenKind::Braid, 's' | 'σ') | (TokenKind::Braid, 'S') => {
                k += 1;
                let digits = read_digits(&mut k)
                    .ok_or_else(|| syntax(pos(k), "expected generator index after 's'"))?;
                let index: u32 = digits
                    .parse()
                    .map_err(|_| syntax(p, "generator index too large"))?;
                (index, ch == 'S', ch != 'S')
            }
            (TokenKind::Bv, 'a' | 'A' | 'b' | 'B') => {
                k += 1;
                let index = if ch.eq_ignore_ascii_case(&'a') { 0 } else { 1 };
                (index, ch.is_ascii_uppercase(), ch.is_ascii_lowercase())
            }
            _ => return Err(syntax(p, &format!("unexpected character {ch:?}"))),
        };
        if k < chars.len() && chars[k].1 == '\'' {
            if !lower {
                return Err(syntax(
                    pos(k),
                    "prime is only allowed after a lowercase letter",
                ));
            }
            inverse = true;
            k += 1;
        }
        let mut power: i64 = 1;
        if k < chars.len() && chars[k].1 == '^' {
            k += 1;
            let negative = k < chars.len() && chars[k].1 == '-';
            if negative {
                k += 1;
            }
            let digits = read_digits(&mut k).ok_or_else(|| syntax(pos(k), "expected exponent"))?;
            power = digits
                .parse()
                .map_err(|_| syntax(pos(k), "exponent too large"))?;
            if power == 0 {
                return Err(syntax(pos(k), "exponent must be nonzero"));
            }
            if power > 1_000_000 {
                return Err(syntax(pos(k), "exponent too large"));
            }
            if negative {
                power = -power;
            }
        }
        if inverse {
            power = -power;
        }
        out.push(Token { index, power });
    }
    Ok(out)
}

/// A bijection of `{1..n}`, stored 0-based: `images[i]` is where strand `i` ends.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrandPermutation {
    images: Vec<u8>,
}

impl StrandPermutation {
    pub fn identity(n: usize) -> Self {
        StrandPermutation {
            images: (0..n as u8).collect(),
        }
    }

    /// From 1-based images; `None` unless the images form a bijection.
    pub fn from_images(images: &[u8]) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in images {
            let i = (i as usize).checked_sub(1)?;
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(StrandPermutation {
            images: images.iter().map(|i| i - 1).collect(),
        })
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<u8> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    /// Post-composes the transposition of positions `k, k+1`: whatever strand
    /// currently sits at position `k` moves to `k+1` and vice versa.
    fn swap_adjacent(&mut self, k: usize) {
        for img in self.images.iter_mut() {
            if *img as usize == k {
                *img = (k + 1) as u8;
            } else if *img as usize == k + 1 {
                *img = k as u8;
            }
        }
    }

    /// `self` followed by `other`, matching `permutation(uv)`.
    pub fn then(&self, other: &Self) -> Self {
        StrandPermutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        StrandPermutation { images: inv }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BvWord {
        BvWord::parse(s).unwrap()
    }

    #[test]
    fn parse_expansion_of_a() {
        let w = BraidWord::parse("s1 s2 s1^-1 s3 s2^-1 s1^-1", 4).unwrap();
        assert_eq!(w, bv("a").expand());
        assert_eq!(BraidWord::parse("σ1σ2S1 s3S2S1", 4).unwrap(), w);
        assert_eq!(w.to_string(), "s1 s2 S1 s3 S2 S1");
    }

    #[test]
    fn parse_empty_and_powers() {
        assert!(BraidWord::parse("", 4).unwrap().is_empty());
        assert!(BraidWord::parse("   ", 3).unwrap().is_empty());
        let w = BraidWord::parse("s2^3 S1^2", 3).unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.exponent_sum(), 1);
        assert_eq!(
            BraidWord::parse("s1^-2", 3).unwrap(),
            BraidWord::parse("S1 S1", 3).unwrap()
        );
        assert_eq!(bv("a^-3 b^2"), bv("AAAbb"));
        assert_eq!(bv("A^2"), bv("a^-2"));
        assert_eq!(bv("B A b"), bv("b' a' b"));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            BraidWord::parse("s4", 4),
            Err(WordError::IndexOutOfRange {
                index: 4,
                strands: 4
            })
        );
        assert_eq!(
            BraidWord::parse("s1 s3", 3),
            Err(WordError::IndexOutOfRange {
                index: 3,
                strands: 3
            })
        );
        assert!(matches!(
            BraidWord::parse("s1 x", 4),
            Err(WordError::Syntax { position: 3, .. })
        ));
        assert!(matches!(
            BraidWord::parse("s0", 4),
            Err(WordError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            BraidWord::parse("s", 4),
            Err(WordError::Syntax { .. })
        ));
        assert!(matches!(
            BraidWord::parse("s1^0", 4),
            Err(WordError::Syntax { .. })
        ));
        assert!(matches!(
            BvWord::parse("a c"),
            Err(WordError::Syntax { position: 2, .. })
        ));
        assert!(matches!(BvWord::parse("A'"), Err(WordError::Syntax { .. })));
        assert!(matches!(BvWord::parse("a^"), Err(WordError::Syntax { .. })));
    }

    #[test]
    fn display_mirrors_parse() {
        let w = bv("a a B A b b b");
        assert_eq!(w.to_string(), "a^2 B A b^3");
        assert_eq!(bv(&w.to_string()), w);
        assert_eq!(BvWord::empty().to_string(), "");
    }

    #[test]
    fn free_reduction_examples() {
        assert_eq!(bv("a A b").free_reduce(), bv("b"));
        let w = BraidWord::parse("s1 s2 S2 S1", 4).unwrap().free_reduce();
        assert!(w.is_empty() && w.is_reduced());
        let ex1 = bv("B A b");
        assert_eq!(ex1.free_reduce(), ex1);
        assert!(!ex1.is_reduced());
        assert!(ex1.free_reduce().is_reduced());
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(bv("B").expand(), BraidWord::parse("s1 S3", 4).unwrap());
        assert!(BvWord::empty().expand().is_empty());
        assert_eq!(bv("a").expand().len(), 6);
    }

    #[test]
    fn phi_examples() {
        let w = BraidWord::parse("s3", 4).unwrap();
        assert_eq!(w.phi(), BraidWord::parse("s1", 3).unwrap());
        let pa = bv("a").expand().phi();
        assert_eq!(pa, BraidWord::parse("s1 s2 S1 s1 S2 S1", 3).unwrap());
        assert!(pa.free_reduce().is_empty());
        assert!(bv("b").expand().phi().free_reduce().is_empty());
    }

    /// Independent oracle: multiply explicit transposition matrices.
    fn brute_force_permutation(w: &BraidWord) -> Vec<u8> {
        let n = w.strands() as usize;
        // position -> strand
        let mut at: Vec<usize> = (0..n).collect();
        for l in w.letters() {
            at.swap(l.index as usize - 1, l.index as usize);
        }
        let mut images = vec![0u8; n];
        for (position, strand) in at.into_iter().enumerate() {
            images[strand] = position as u8 + 1;
        }
        images
    }

    #[test]
    fn permutation_examples() {
        let s1 = BraidWord::parse("s1", 4).unwrap();
        assert_eq!(s1.permutation().images(), vec![2, 1, 3, 4]);
        assert_eq!(bv("a").permutation().images(), vec![4, 3, 2, 1]);
        assert_eq!(brute_force_permutation(&bv("a").expand()), vec![4, 3, 2, 1]);
        assert_eq!(bv("b").permutation().images(), vec![2, 1, 4, 3]);
        assert!(bv("a a").permutation().is_identity());
        assert!(StrandPermutation::from_images(&[1, 1, 2]).is_none());
        assert!(StrandPermutation::from_images(&[2, 3, 1]).is_some());
    }

    #[test]
    fn random_word_examples() {
        for seed in 0..20 {
            let w = random_reduced_bv_word(1, seed);
            assert_eq!(w.len(), 1);
            assert!(BvLetter::ALL.contains(&w.letters()[0]));
        }
        assert_eq!(
            random_reduced_bv_word(10, 42),
            random_reduced_bv_word(10, 42)
        );
        assert_eq!(
            random_reduced_bv_word(10, 42).to_string(),
            random_reduced_bv_word(10, 42).to_string()
        );
    }

    #[test]
    fn random_words_cover_all_continuations() {
        // Every non-cancelling successor of every letter shows up.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..200 {
            let w = BvWord::random_reduced(2, &mut rng);
            seen.insert((w.letters()[0], w.letters()[1]));
        }
        assert_eq!(seen.len(), 12);
    }

    fn arb_bv() -> impl Strategy<Value = BvWord> {
        prop::collection::vec(0usize..4, 0..16)
            .prop_map(|v| BvWord::new(v.into_iter().map(|i| BvLetter::ALL[i]).collect()))
    }

    fn arb_braid4() -> impl Strategy<Value = BraidWord> {
        prop::collection::vec((1u8..4, any::<bool>()), 0..16).prop_map(|v| {
            BraidWord::new(
                4,
                v.into_iter().map(|(i, inv)| Letter::new(i, inv)).collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn free_reduce_idempotent_and_shrinking(w in arb_bv()) {
            let r = w.free_reduce();
            prop_assert!(r.len() <= w.len());
            prop_assert_eq!(r.free_reduce(), r.clone());
            prop_assert!(is_freely_reduced(r.letters()));
        }

        #[test]
        fn braid_free_reduce_idempotent(w in arb_braid4()) {
            let r = w.free_reduce();
            prop_assert!(r.len() <= w.len());
            prop_assert_eq!(r.free_reduce(), r);
        }

        #[test]
        fn permutation_is_a_homomorphism(u in arb_braid4(), v in arb_braid4()) {
            prop_assert_eq!(u.concat(&v).permutation(), u.permutation().then(&v.permutation()));
            prop_assert_eq!(u.inverse().permutation(), u.permutation().inverse());
            prop_assert_eq!(u.permutation().images(), brute_force_permutation(&u));
        }

        #[test]
        fn purity_by_counts_matches_permutation(w in arb_bv()) {
            prop_assert_eq!(w.is_pure(), w.permutation().is_identity());
        }

        #[test]
        fn bv_words_lie_in_ker_phi(w in arb_bv()) {
            prop_assert!(w.expand().phi().free_reduce().is_empty());
        }

        #[test]
        fn expansion_commutes_with_inverse(w in arb_bv()) {
            prop_assert_eq!(w.inverse().expand(), w.expand().inverse());
        }

        #[test]
        fn random_words_are_reduced(len in 1usize..40, seed in any::<u64>()) {
            let w = random_reduced_bv_word(len, seed);
            prop_assert_eq!(w.len(), len);
            prop_assert_eq!(w.free_reduce(), w);
        }

        #[test]
        fn display_round_trips(w in arb_bv(), b in arb_braid4()) {
            prop_assert_eq!(BvWord::parse(&w.to_string()).unwrap(), w);
            prop_assert_eq!(BraidWord::parse(&b.to_string(), 4).unwrap(), b);
        }
    }
}
