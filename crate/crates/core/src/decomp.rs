//! Splitting `ρ11` and `ρ31` of `aⁿσ` into `P, Q, R` parts that propagate in
//! closed form under further left multiplication by `a`:
//!
//! ```text
//! ρ11(aⁿσ) = P(1 - t⁻¹) + Q + R(1 - t)        ρ31(aⁿσ) = -P - Q - R
//! ρ11(a^{m+n}σ) = P·S_{m+1}(t⁻¹) + Q + R·S_{m+1}(t)
//! ρ31(a^{m+n}σ) = -P·S_m(t⁻¹) - Q - R·S_m(t)
//! ```
//!
//! `P` and `R` are extracted from the sums `ρ11 + ρ31` at `aⁿσ` and `a^{n+1}σ`
//! by exact division by `t⁻² - 1` and `t² - 1`; a candidate is only accepted
//! after its predictions agree with direct matrix evaluation.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::braid::{BraidWord, BvGen, BvLetter, BvWord};
use crate::burau::{burau, burau_bv, bv_letter_matrix, BurauMatrix};
use crate::laurent::{lp, Direction, LaurentPoly};

/// Validation depth used when none is given.
pub const DEFAULT_DEPTH: u32 = 3;

/// `2·len + 4`.
pub fn default_n_max(word_len: usize) -> u32 {
    2 * word_len as u32 + 4
}

/// The `σ` of a decomposition, as either kind of word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseWord {
    Bv(BvWord),
    Braid(BraidWord),
}

impl BaseWord {
    pub fn matrix(&self) -> BurauMatrix {
        match self {
            BaseWord::Bv(w) => burau_bv(w),
            BaseWord::Braid(w) => burau(w),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            BaseWord::Bv(w) => w.len(),
            BaseWord::Braid(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl From<BvWord> for BaseWord {
    fn from(w: BvWord) -> Self {
        BaseWord::Bv(w)
    }
}

impl From<BraidWord> for BaseWord {
    fn from(w: BraidWord) -> Self {
        BaseWord::Braid(w)
    }
}

impl fmt::Display for BaseWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseWord::Bv(w) => w.fmt(f),
            BaseWord::Braid(w) => w.fmt(f),
        }
    }
}

/// `σ·a^{-l}`, the base word used for conjugate shapes `a^m σ a^{-l}`.
pub fn with_trailing_a_inverse(sigma: &BvWord, l: u32) -> BvWord {
    sigma.concat(&BvWord::power(BvGen::A, -(l as i64)))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotDecomposable {
    #[error("t·s(aⁿσ) + s(aⁿ⁺¹σ) is not divisible by t^-2-1")]
    PNotDivisible,
    #[error("t⁻¹·s(aⁿσ) + s(aⁿ⁺¹σ) is not divisible by t^2-1")]
    RNotDivisible,
    #[error("ρ31 identity fails")]
    Rho31Mismatch,
    #[error("prediction for m = {m} disagrees with direct evaluation")]
    PredictionMismatch { m: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("no valid n ≤ {n_max}; failures: {}", render_failures(.failures))]
    Exhausted {
        n_max: u32,
        failures: Vec<(u32, NotDecomposable)>,
    },
    #[error("depth must be at least 1")]
    ZeroDepth,
}

fn render_failures(failures: &[(u32, NotDecomposable)]) -> String {
    failures
        .iter()
        .map(|(n, e)| format!("n={n}: {e}"))
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PqrDecomposition {
    pub base_word: BaseWord,
    pub n: u32,
    pub p: LaurentPoly,
    pub q: LaurentPoly,
    pub r: LaurentPoly,
    /// Largest `m` for which predictions were checked against direct evaluation.
    pub validated_depth: u32,
}

/// First column of `ρ(aᵏ)·M`, i.e. the `(1,1), (2,1), (3,1)` entries.
pub type Column = [LaurentPoly; 3];

/// Iterates the first column of `ρ(a^k σ)` for `k = 0, 1, 2, …`.
pub struct ColumnWalk {
    current: Column,
}

impl ColumnWalk {
    pub fn new(base: &BurauMatrix) -> Self {
        ColumnWalk {
            current: base.first_column(),
        }
    }

    pub fn current(&self) -> &Column {
        &self.current
    }

    pub fn step(&mut self) {
        self.current = bv_letter_matrix(BvLetter::A)
            .checked_mul_first_column(&self.current)
            .expect("bigint arithmetic is infallible");
    }

    pub fn advance(&mut self, k: u32) {
        for _ in 0..k {
            self.step();
        }
    }
}

fn rho11(c: &Column) -> &LaurentPoly {
    &c[0]
}

fn rho31(c: &Column) -> &LaurentPoly {
    &c[2]
}

/// `(P, Q, R)` from the first columns of `ρ(aⁿσ)` and `ρ(aⁿ⁺¹σ)`.
pub fn extract_from_columns(
    at_n: &Column,
    at_next: &Column,
) -> Result<(LaurentPoly, LaurentPoly, LaurentPoly), NotDecomposable> {
    let s0 = rho11(at_n) + rho31(at_n);
    let s1 = rho11(at_next) + rho31(at_next);
    let p = (&(&lp("t") * &s0) + &s1)
        .exact_div(&lp("t^-2-1"))
        .expect("nonzero divisor")
        .ok_or(NotDecomposable::PNotDivisible)?;
    let r = (&(&lp("t^-1") * &s0) + &s1)
        .exact_div(&lp("t^2-1"))
        .expect("nonzero divisor")
        .ok_or(NotDecomposable::RNotDivisible)?;
    let q = &(rho11(at_n) - &(&p * &lp("1-t^-1"))) - &(&r * &lp("1-t"));
    let expected31 = -(&(&p + &q) + &r);
    if &expected31 != rho31(at_n) {
        return Err(NotDecomposable::Rho31Mismatch);
    }
    Ok((p, q, r))
}

/// Closed-form `(ρ11, ρ31)` of `a^{m+n}σ`.
pub fn predict_parts(
    p: &LaurentPoly,
    q: &LaurentPoly,
    r: &LaurentPoly,
    m: u32,
) -> (LaurentPoly, LaurentPoly) {
    let s = |i: u32, d: Direction| LaurentPoly::geometric_partial_sum(i, d);
    let rho11 = &(&(p * &s(m + 1, Direction::TInv)) + q) + &(r * &s(m + 1, Direction::T));
    let rho31 = -(&(&(p * &s(m, Direction::TInv)) + q) + &(r * &s(m, Direction::T)));
    (rho11, rho31)
}

/// Closed-form `(ρ11, ρ31)` of `a^{m+n}σ`.
pub fn predict(d: &PqrDecomposition, m: u32) -> (LaurentPoly, LaurentPoly) {
    predict_parts(&d.p, &d.q, &d.r, m)
}

/// Extraction at a fixed `n`, without prediction checks (`validated_depth = 0`).
pub fn extract_pqr(word: impl Into<BaseWord>, n: u32) -> Result<PqrDecomposition, NotDecomposable> {
    let word = word.into();
    let mut walk = ColumnWalk::new(&word.matrix());
    walk.advance(n);
    let at_n = walk.current().clone();
    walk.step();
    let (p, q, r) = extract_from_columns(&at_n, walk.current())?;
    Ok(PqrDecomposition {
        base_word: word,
        n,
        p,
        q,
        r,
        validated_depth: 0,
    })
}

/// Checks predictions for `m = 1..=depth` against direct evaluation and
/// records the depth on success.
pub fn validate(d: &mut PqrDecomposition, depth: u32) -> Result<(), NotDecomposable> {
    let mut walk = ColumnWalk::new(&d.base_word.matrix());
    walk.advance(d.n);
    for m in 1..=depth {
        walk.step();
        let (p11, p31) = predict(d, m);
        if &p11 != rho11(walk.current()) || &p31 != rho31(walk.current()) {
            return Err(NotDecomposable::PredictionMismatch { m });
        }
    }
    d.validated_depth = d.validated_depth.max(depth);
    Ok(())
}

/// Smallest `n ≤ n_max` whose extraction succeeds and validates to `depth`.
pub fn find_minimal_n(
    word: impl Into<BaseWord>,
    n_max: u32,
    depth: u32,
) -> Result<PqrDecomposition, DecompError> {
    if depth == 0 {
        return Err(DecompError::ZeroDepth);
    }
    let word = word.into();
    let base = word.matrix();
    // Columns at a^k σ for k = 0..=n_max+depth+1, computed once.
    let mut walk = ColumnWalk::new(&base);
    let mut columns: Vec<Column> = Vec::with_capacity((n_max + depth + 2) as usize);
    for _ in 0..=(n_max + depth + 1) {
        columns.push(walk.current().clone());
        walk.step();
    }
    let mut failures = Vec::new();
    for n in 0..=n_max {
        let k = n as usize;
        let attempt = extract_from_columns(&columns[k], &columns[k + 1]).and_then(|(p, q, r)| {
            for m in 1..=depth {
                let (p11, p31) = predict_parts(&p, &q, &r, m);
                let direct = &columns[k + m as usize];
                if &p11 != rho11(direct) || &p31 != rho31(direct) {
                    return Err(NotDecomposable::PredictionMismatch { m });
                }
            }
            Ok((p, q, r))
        });
        match attempt {
            Ok((p, q, r)) => {
                return Ok(PqrDecomposition {
                    base_word: word,
                    n,
                    p,
                    q,
                    r,
                    validated_depth: depth,
                })
            }
            Err(e) => failures.push((n, e)),
        }
    }
    Err(DecompError::Exhausted { n_max, failures })
}

impl Serialize for PqrDecomposition {
    /// `{word, n, P, Q, R, validated_depth}`.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("PqrDecomposition", 6)?;
        s.serialize_field("word", &self.base_word.to_string())?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("P", &self.p)?;
        s.serialize_field("Q", &self.q)?;
        s.serialize_field("R", &self.r)?;
        s.serialize_field("validated_depth", &self.validated_depth)?;
        s.end()
    }
}

impl fmt::Display for PqrDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "word: {}", self.base_word)?;
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "P: {}", self.p)?;
        writeln!(f, "Q: {}", self.q)?;
        writeln!(f, "R: {}", self.r)?;
        write!(f, "validated_depth: {}", self.validated_depth)
    }
}
