//! Degree regularity of `a^m σ a^{-l}`: both `ρ11` and `ρ31` nonzero and
//! `deg_min ρ11 - deg_min ρ31 = -1`.
//!
//! Also holds the kernel filter for `φ` and the seeded batch experiment over
//! words of the form `a³b³ w b⁻³a⁻³`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::braid::{BraidWord, BvGen, BvLetter, BvWord, WordError};
use crate::burau::{
    artin_trivial, burau_bv, burau_bv_fast, bv_letter_matrix, fast_bv_letter_matrix, BurauMatrix,
};
use crate::decomp::ColumnWalk;
use crate::laurent::{Coefficient, LaurentError, Poly};

/// Version tag written into every batch summary line.
pub const SCHEMA_VERSION: u32 = 1;

pub const DEFAULT_TEMPLATE: &str = "a^3 b^3 w B^3 A^3";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityOutcome {
    #[serde(serialize_with = "as_text")]
    pub word: BvWord,
    pub m: u32,
    pub l: u32,
    /// `None` when the entry is the zero polynomial.
    pub rho11_degmin: Option<i32>,
    pub rho31_degmin: Option<i32>,
    pub diff: Option<i32>,
    pub regular: bool,
    /// Purity of `a^m σ a^{-l}`.
    pub pure: bool,
}

fn as_text<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl RegularityOutcome {
    fn from_degrees(word: &BvWord, m: u32, l: u32, d11: Option<i32>, d31: Option<i32>) -> Self {
        let diff = match (d11, d31) {
            (Some(x), Some(y)) => Some(x - y),
            _ => None,
        };
        let (ca, cb) = word.letter_counts();
        RegularityOutcome {
            word: word.clone(),
            m,
            l,
            rho11_degmin: d11,
            rho31_degmin: d31,
            diff,
            regular: diff == Some(-1),
            pure: (ca + m as usize + l as usize).is_multiple_of(2) && cb.is_multiple_of(2),
        }
    }
}

impl fmt::Display for RegularityOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |d: Option<i32>| d.map_or_else(|| "zero".to_string(), |v| v.to_string());
        write!(
            f,
            "m={} l={} degmin11={} degmin31={} diff={} regular={} pure={}",
            self.m,
            self.l,
            show(self.rho11_degmin),
            show(self.rho31_degmin),
            self.diff
                .map_or_else(|| "undefined".to_string(), |v| v.to_string()),
            self.regular,
            self.pure
        )
    }
}

fn a_inverse_power(l: u32) -> BvWord {
    BvWord::power(BvGen::A, -(l as i64))
}

/// Evaluates `ρ(a^m σ a^{-l})` and reads the lowest degrees of `(1,1)` and `(3,1)`.
pub fn check_instance(sigma: &BvWord, m: u32, l: u32) -> RegularityOutcome {
    let mut walk = ColumnWalk::new(&burau_bv(&sigma.concat(&a_inverse_power(l))));
    walk.advance(m);
    let c = walk.current();
    RegularityOutcome::from_degrees(sigma, m, l, c[0].deg_min_opt(), c[2].deg_min_opt())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanTable {
    #[serde(serialize_with = "as_text")]
    pub sigma: BvWord,
    pub m_range: (u32, u32),
    pub l_range: (u32, u32),
    /// Row-major over `l`, then `m`.
    pub outcomes: Vec<RegularityOutcome>,
    /// Least `(m0, l0)` (ordered by `m0`, then `l0`) with every sampled
    /// `m > m0, l ≥ l0` regular.
    pub threshold: Option<(u32, u32)>,
}

impl ScanTable {
    pub fn outcome(&self, m: u32, l: u32) -> Option<&RegularityOutcome> {
        self.outcomes.iter().find(|o| o.m == m && o.l == l)
    }

    pub fn summary(&self) -> String {
        match self.threshold {
            Some((m0, l0)) => format!("m0 = {m0}, l0 = {l0}"),
            None => "not found in range".to_string(),
        }
    }
}

impl fmt::Display for ScanTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sigma: {}", self.sigma)?;
        for o in &self.outcomes {
            writeln!(f, "{o}")?;
        }
        write!(f, "threshold: {}", self.summary())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("empty range")]
    EmptyRange,
}

/// Full grid of [`check_instance`] over `m_range × l_range`.
pub fn scan_thresholds(
    sigma: &BvWord,
    m_range: RangeInclusive<u32>,
    l_range: RangeInclusive<u32>,
) -> Result<ScanTable, ScanError> {
    if m_range.is_empty() || l_range.is_empty() {
        return Err(ScanError::EmptyRange);
    }
    let (m_lo, m_hi) = (*m_range.start(), *m_range.end());
    let (l_lo, l_hi) = (*l_range.start(), *l_range.end());
    let mut outcomes = Vec::new();
    let mut base = burau_bv(&sigma.concat(&a_inverse_power(l_lo)));
    for l in l_lo..=l_hi {
        let mut walk = ColumnWalk::new(&base);
        walk.advance(m_lo);
        for m in m_lo..=m_hi {
            let c = walk.current();
            outcomes.push(RegularityOutcome::from_degrees(
                sigma,
                m,
                l,
                c[0].deg_min_opt(),
                c[2].deg_min_opt(),
            ));
            walk.step();
        }
        base = base.mul(bv_letter_matrix(BvLetter::A_INV));
    }
    let width = (m_hi - m_lo + 1) as usize;
    let regular =
        |m: u32, l: u32| outcomes[(l - l_lo) as usize * width + (m - m_lo) as usize].regular;
    // m0 ranges over m_lo-1 ..= m_hi-1 so that some sampled m exceeds it.
    let mut threshold = None;
    'search: for m0 in m_lo.saturating_sub(1)..m_hi {
        for l0 in l_lo..=l_hi {
            if (l0..=l_hi).all(|l| ((m0 + 1).max(m_lo)..=m_hi).all(|m| regular(m, l))) {
                threshold = Some((m0, l0));
                break 'search;
            }
        }
    }
    Ok(ScanTable {
        sigma: sigma.clone(),
        m_range: (m_lo, m_hi),
        l_range: (l_lo, l_hi),
        outcomes,
        threshold,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelVerdict {
    Candidate,
    RejectedNotInKerPhi,
    RejectedTrivial,
}

impl fmt::Display for KernelVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelVerdict::Candidate => "candidate",
            KernelVerdict::RejectedNotInKerPhi => "rejected-not-in-ker-phi",
            KernelVerdict::RejectedTrivial => "rejected-trivial",
        })
    }
}

/// Classifies a `B4` word as a nontrivial element of `ker φ` or not.
pub fn kernel_filter(w: &BraidWord) -> KernelVerdict {
    if !artin_trivial(&w.phi()) {
        KernelVerdict::RejectedNotInKerPhi
    } else if artin_trivial(w) {
        KernelVerdict::RejectedTrivial
    } else {
        KernelVerdict::Candidate
    }
}

/// A word with a single placeholder `w`, e.g. `a^3 b^3 w B^3 A^3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Template {
    text: String,
    prefix: BvWord,
    suffix: BvWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("template must contain exactly one placeholder `w`")]
    Placeholder,
    #[error(transparent)]
    Word(#[from] WordError),
}

impl Template {
    pub fn parse(text: &str) -> Result<Self, TemplateError> {
        let parts: Vec<&str> = text.split('w').collect();
        if parts.len() != 2 {
            return Err(TemplateError::Placeholder);
        }
        Ok(Template {
            text: text.to_string(),
            prefix: BvWord::parse(parts[0])?,
            suffix: BvWord::parse(parts[1])?,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn fill(&self, w: &BvWord) -> BvWord {
        self.prefix.concat(w).concat(&self.suffix)
    }
}

impl Default for Template {
    fn default() -> Self {
        Template::parse(DEFAULT_TEMPLATE).expect("default template parses")
    }
}

impl FromStr for Template {
    type Err = TemplateError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Template::parse(s)
    }
}

impl Serialize for Template {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.text)
    }
}

/// Which `(m, l)` pairs each trial examines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MlPolicy {
    /// `m = l` for `m = 1 ..= len(σ) + offset`.
    Diagonal { offset: u32 },
    /// A single pair.
    Fixed { m: u32, l: u32 },
}

impl Default for MlPolicy {
    fn default() -> Self {
        MlPolicy::Diagonal { offset: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchConfig {
    pub count: u64,
    pub length_min: usize,
    pub length_max: usize,
    pub template: Template,
    pub policy: MlPolicy,
    pub seed: u64,
    /// Uses this `w` in every trial instead of drawing one.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_text")]
    pub fixed_w: Option<BvWord>,
}

fn opt_text<S: serde::Serializer>(v: &Option<BvWord>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(w) => s.collect_str(w),
        None => s.serialize_none(),
    }
}

impl Default for BatchConfig {
    fn default() -> Self {
        BatchConfig {
            count: 1000,
            length_min: 4,
            length_max: 12,
            template: Template::default(),
            policy: MlPolicy::default(),
            seed: 0,
            fixed_w: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BatchError {
    #[error("count must be at least 1")]
    ZeroCount,
    #[error("length_min {0} exceeds length_max {1}")]
    LengthRange(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Regular,
    Violation,
    Inconclusive,
}

/// Evidence kept for a violation so it can be re-checked independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationDetail {
    pub outcome: RegularityOutcome,
    pub matrix: BurauMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub index: u64,
    #[serde(serialize_with = "as_text")]
    pub w: BvWord,
    /// The template word after free reduction.
    #[serde(serialize_with = "as_text")]
    pub sigma: BvWord,
    pub verdict: Verdict,
    /// Number of `(m, l)` pairs examined; 0 for inconclusive trials.
    pub checked: u32,
    /// Last examined outcome.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub last: Option<RegularityOutcome>,
    /// Least examined `m` from which every later examined pair is regular.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationDetail>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchReport {
    pub config: BatchConfig,
    pub trials: u64,
    pub regular_count: u64,
    pub violation_list: Vec<TrialRecord>,
    pub inconclusive_list: Vec<TrialRecord>,
    pub wall_time: Duration,
}

impl BatchReport {
    /// Final JSONL line. Wall time is left out so reruns are byte-identical.
    pub fn summary_json(&self) -> serde_json::Value {
        json!({
            "type": "summary",
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "trials": self.trials,
            "regular_count": self.regular_count,
            "violation_count": self.violation_list.len(),
            "inconclusive_count": self.inconclusive_list.len(),
            "violations": self.violation_list.iter().map(|t| t.index).collect::<Vec<_>>(),
            "inconclusive": self.inconclusive_list.iter().map(|t| t.index).collect::<Vec<_>>(),
        })
    }
}

/// JSONL line for one trial.
pub fn trial_json(t: &TrialRecord) -> serde_json::Value {
    let mut v = serde_json::to_value(t).expect("trial records serialize");
    v.as_object_mut()
        .expect("object")
        .insert("type".into(), json!("trial"));
    v
}

const REDRAW_LIMIT: usize = 10_000;
const CHUNK: usize = 4096;

fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn draw(config: &BatchConfig, index: u64) -> (BvWord, Option<BvWord>) {
    if let Some(w) = &config.fixed_w {
        return (w.clone(), Some(config.template.fill(w).free_reduce()));
    }
    let mut rng = trial_rng(config.seed, index);
    let mut w = BvWord::empty();
    for _ in 0..REDRAW_LIMIT {
        let len = rng.gen_range(config.length_min..=config.length_max);
        w = BvWord::random_reduced(len, &mut rng);
        let sigma = config.template.fill(&w).check_reduced();
        if sigma.is_reduced() {
            return (w, Some(sigma));
        }
    }
    (w, None)
}

type Degrees = (Option<i32>, Option<i32>);

/// Degrees of `(1,1)` and `(3,1)` of `a^k X a^{-k}` for `k = 1..=k_max`,
/// plus the final conjugate.
fn diagonal_scan<C: Coefficient>(
    base: &BurauMatrix<C>,
    a: &BurauMatrix<C>,
    a_inv: &BurauMatrix<C>,
    k_max: u32,
) -> Result<(Vec<Degrees>, BurauMatrix<C>), LaurentError> {
    let mut x = base.clone();
    let mut out = Vec::with_capacity(k_max as usize);
    for _ in 0..k_max {
        x = a.checked_mul(&x)?.checked_mul(a_inv)?;
        let deg = |p: &Poly<C>| p.deg_min().ok();
        out.push((deg(x.entry(1, 1)), deg(x.entry(3, 1))));
    }
    Ok((out, x))
}

fn run_trial(config: &BatchConfig, index: u64) -> TrialRecord {
    let (w, sigma) = draw(config, index);
    let inconclusive = |sigma: BvWord, reason: &str| TrialRecord {
        index,
        w: w.clone(),
        sigma,
        verdict: Verdict::Inconclusive,
        checked: 0,
        last: None,
        threshold_m: None,
        reason: Some(reason.to_string()),
        violation: None,
    };
    let sigma = match sigma {
        None => return inconclusive(BvWord::empty(), "no reduced template word after redraws"),
        Some(s) if s.is_empty() => {
            return inconclusive(s, "template word reduces to the empty word")
        }
        Some(s) => s,
    };
    let pairs: Vec<(u32, u32)> = match config.policy {
        MlPolicy::Diagonal { offset } => {
            (1..=sigma.len() as u32 + offset).map(|k| (k, k)).collect()
        }
        MlPolicy::Fixed { m, l } => vec![(m, l)],
    };
    let outcomes: Vec<RegularityOutcome> = match config.policy {
        MlPolicy::Diagonal { .. } => {
            let k_max = pairs.len() as u32;
            let fast = burau_bv_fast(&sigma).and_then(|m| {
                diagonal_scan(
                    &m,
                    fast_bv_letter_matrix(BvLetter::A),
                    fast_bv_letter_matrix(BvLetter::A_INV),
                    k_max,
                )
            });
            let degrees = match fast {
                Ok((d, _)) => d,
                Err(_) => {
                    diagonal_scan(
                        &burau_bv(&sigma),
                        bv_letter_matrix(BvLetter::A),
                        bv_letter_matrix(BvLetter::A_INV),
                        k_max,
                    )
                    .expect("bigint arithmetic is infallible")
                    .0
                }
            };
            pairs
                .iter()
                .zip(degrees)
                .map(|(&(m, l), (d11, d31))| {
                    RegularityOutcome::from_degrees(&sigma, m, l, d11, d31)
                })
                .collect()
        }
        MlPolicy::Fixed { m, l } => vec![check_instance(&sigma, m, l)],
    };
    let last = outcomes.last().cloned().expect("at least one pair");
    let threshold_m = if last.regular {
        let start = outcomes
            .iter()
            .rposition(|o| !o.regular)
            .map_or(0, |i| i + 1);
        Some(outcomes[start].m)
    } else {
        None
    };
    let (verdict, violation) = if last.regular {
        (Verdict::Regular, None)
    } else {
        let matrix = burau_bv(
            &BvWord::power(BvGen::A, last.m as i64)
                .concat(&sigma)
                .concat(&a_inverse_power(last.l)),
        );
        (
            Verdict::Violation,
            Some(ViolationDetail {
                outcome: last.clone(),
                matrix,
            }),
        )
    };
    TrialRecord {
        index,
        w,
        sigma,
        verdict,
        checked: outcomes.len() as u32,
        last: Some(last),
        threshold_m,
        reason: None,
        violation,
    }
}

/// Runs the batch, handing each trial to `sink` in index order as soon as
/// its chunk completes.
pub fn random_batch_with<F: FnMut(&TrialRecord)>(
    config: &BatchConfig,
    mut sink: F,
) -> Result<BatchReport, BatchError> {
    if config.count == 0 {
        return Err(BatchError::ZeroCount);
    }
    if config.length_min > config.length_max {
        return Err(BatchError::LengthRange(
            config.length_min,
            config.length_max,
        ));
    }
    let start = Instant::now();
    let mut regular_count = 0;
    let mut violation_list = Vec::new();
    let mut inconclusive_list = Vec::new();
    let mut next = 0u64;
    while next < config.count {
        let end = (next + CHUNK as u64).min(config.count);
        let records: Vec<TrialRecord> = (next..end)
            .into_par_iter()
            .map(|i| run_trial(config, i))
            .collect();
        for r in records {
            sink(&r);
            match r.verdict {
                Verdict::Regular => regular_count += 1,
                Verdict::Violation => violation_list.push(r),
                Verdict::Inconclusive => inconclusive_list.push(r),
            }
        }
        next = end;
    }
    Ok(BatchReport {
        config: config.clone(),
        trials: config.count,
        regular_count,
        violation_list,
        inconclusive_list,
        wall_time: start.elapsed(),
    })
}

pub fn random_batch(config: &BatchConfig) -> Result<BatchReport, BatchError> {
    random_batch_with(config, |_| {})
}

/// Full JSONL text: one line per trial, then the summary.
pub fn batch_jsonl(config: &BatchConfig) -> Result<(String, BatchReport), BatchError> {
    let mut out = String::new();
    let report = random_batch_with(config, |t| {
        out.push_str(&trial_json(t).to_string());
        out.push('\n');
    })?;
    out.push_str(&report.summary_json().to_string());
    out.push('\n');
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::Letter;
    use crate::burau::entry;
    use crate::decomp::{find_minimal_n, predict, with_trailing_a_inverse};

    fn bv(s: &str) -> BvWord {
        BvWord::parse(s).unwrap()
    }

    #[test]
    fn reference_instances() {
        let o = check_instance(&bv("B A b"), 5, 0);
        assert_eq!(
            (o.rho11_degmin, o.rho31_degmin, o.diff),
            (Some(-6), Some(-5), Some(-1))
        );
        assert!(o.regular);
        let o = check_instance(&bv("b A^2 B"), 6, 0);
        assert_eq!(
            (o.rho11_degmin, o.rho31_degmin, o.diff),
            (Some(-10), Some(-9), Some(-1))
        );
        let o = check_instance(&BvWord::empty(), 0, 0);
        assert_eq!(
            (o.rho11_degmin, o.rho31_degmin, o.diff),
            (Some(0), None, None)
        );
        assert!(!o.regular);
    }

    #[test]
    fn purity_of_conjugate() {
        assert!(check_instance(&bv("a b^2"), 1, 0).pure);
        assert!(!check_instance(&bv("a b^2"), 1, 1).pure);
    }

    #[test]
    #[allow(clippy::reversed_empty_ranges)]
    fn scan_reports_not_found_for_tiny_range() {
        let t = scan_thresholds(&BvWord::empty(), 0..=0, 0..=0).unwrap();
        assert_eq!(t.threshold, None);
        assert_eq!(t.summary(), "not found in range");
        assert_eq!(
            scan_thresholds(&BvWord::empty(), 1..=0, 0..=0),
            Err(ScanError::EmptyRange)
        );
    }

    #[test]
    fn scan_of_a_matches_pure_powers() {
        let d = find_minimal_n(BvWord::empty(), 4, 3).unwrap();
        let t = scan_thresholds(&bv("a"), 0..=6, 0..=3).unwrap();
        for o in &t.outcomes {
            let k = o.m as i64 + 1 - o.l as i64;
            let m = burau_bv(&BvWord::power(BvGen::A, k));
            assert_eq!(o.rho11_degmin, entry(&m, 1, 1).deg_min_opt());
            if k >= d.n as i64 {
                let (p11, p31) = predict(&d, (k - d.n as i64) as u32);
                assert_eq!(o.rho11_degmin, p11.deg_min_opt());
                assert_eq!(o.rho31_degmin, p31.deg_min_opt());
            }
        }
    }

    #[test]
    fn scan_agrees_with_check_instance() {
        let s = bv("b A^2 B");
        let t = scan_thresholds(&s, 2..=7, 0..=3).unwrap();
        for o in &t.outcomes {
            assert_eq!(o, &check_instance(&s, o.m, o.l));
        }
        let (m0, l0) = t.threshold.unwrap();
        for o in &t.outcomes {
            if o.m > m0 && o.l >= l0 {
                assert!(o.regular);
            }
        }
    }

    #[test]
    fn check_instance_agrees_with_predictions() {
        let s = bv("b^2 a B");
        for l in 0..3 {
            let base = with_trailing_a_inverse(&s, l);
            let d = find_minimal_n(base, 10, 3).unwrap();
            for m in d.n..d.n + 5 {
                let o = check_instance(&s, m, l);
                let (p11, p31) = predict(&d, m - d.n);
                assert_eq!(o.rho11_degmin, p11.deg_min_opt());
                assert_eq!(o.rho31_degmin, p31.deg_min_opt());
            }
        }
    }

    #[test]
    fn kernel_filter_examples() {
        let s1 = BraidWord::new(4, vec![Letter::pos(1)]).unwrap();
        assert_eq!(kernel_filter(&s1), KernelVerdict::RejectedNotInKerPhi);
        assert_eq!(kernel_filter(&bv("a").expand()), KernelVerdict::Candidate);
        let w = BraidWord::parse("s3 S1 s1 S3", 4).unwrap();
        assert_eq!(kernel_filter(&w), KernelVerdict::RejectedTrivial);
    }

    #[test]
    fn template_parsing() {
        let t = Template::default();
        assert_eq!(t.fill(&bv("a B")), bv("a^3 b^3 a B^4 A^3"));
        assert_eq!(Template::parse("a b"), Err(TemplateError::Placeholder));
        assert!(Template::parse("a w w").is_err());
    }

    #[test]
    fn forced_empty_word_is_inconclusive() {
        let config = BatchConfig {
            count: 1,
            fixed_w: Some(BvWord::empty()),
            ..BatchConfig::default()
        };
        let r = random_batch(&config).unwrap();
        assert_eq!(r.inconclusive_list.len(), 1);
        assert_eq!(r.regular_count, 0);
        assert!(r.inconclusive_list[0].sigma.is_empty());
    }

    #[test]
    fn zero_count_rejected() {
        let config = BatchConfig {
            count: 0,
            ..BatchConfig::default()
        };
        assert_eq!(random_batch(&config), Err(BatchError::ZeroCount));
    }

    #[test]
    fn small_batch_is_deterministic_and_regular() {
        let config = BatchConfig {
            count: 200,
            seed: 11,
            ..BatchConfig::default()
        };
        let (a, ra) = batch_jsonl(&config).unwrap();
        let (b, _) = batch_jsonl(&config).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 201);
        assert_eq!(
            ra.trials,
            ra.regular_count + ra.violation_list.len() as u64 + ra.inconclusive_list.len() as u64
        );
        assert!(ra.violation_list.is_empty());
        let summary: serde_json::Value = serde_json::from_str(a.lines().last().unwrap()).unwrap();
        assert_eq!(summary["schema_version"], SCHEMA_VERSION);
        assert_eq!(summary["config"]["seed"], 11);
        assert_eq!(summary["config"]["template"], DEFAULT_TEMPLATE);
    }

    #[test]
    fn drawn_template_words_are_reduced() {
        let config = BatchConfig::default();
        for i in 0..100 {
            let (w, sigma) = draw(&config, i);
            let sigma = sigma.unwrap();
            assert!((4..=12).contains(&w.len()));
            assert_eq!(sigma, config.template.fill(&w));
            assert!(sigma.free_reduce().len() == sigma.len());
        }
    }

    #[test]
    fn fast_and_exact_scans_agree() {
        let s = bv("a^3 b^3 a b A b^2 B^3 A^3");
        let fast = diagonal_scan(
            &burau_bv_fast(&s).unwrap(),
            fast_bv_letter_matrix(BvLetter::A),
            fast_bv_letter_matrix(BvLetter::A_INV),
            12,
        )
        .unwrap();
        let exact = diagonal_scan(
            &burau_bv(&s),
            bv_letter_matrix(BvLetter::A),
            bv_letter_matrix(BvLetter::A_INV),
            12,
        )
        .unwrap();
        assert_eq!(fast.0, exact.0);
        for k in 1..=12 {
            assert_eq!(
                check_instance(&s, k, k).rho11_degmin,
                exact.0[k as usize - 1].0
            );
        }
    }
}
