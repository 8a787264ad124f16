//! Temperley–Lieb algebras `TL3` and `TL4` over `Z[t, t^-1]` as planar
//! diagram algebras, the Jones map `θ: B_n -> TL_n` and the projection
//! `ψ: TL4 -> TL3` (`U1 ↦ U1, U2 ↦ U2, U3 ↦ U1`).
//!
//! Boundary points are numbered `0..2n`: the top row left to right, then the
//! bottom row right to left, so the numbering runs once around the boundary
//! and a matching is planar exactly when it nests like parentheses.
//! Products stack the left factor above the right factor.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::laurent::{lp, LaurentPoly};

const MAX_N: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TlError {
    #[error("cannot combine TL{0} with TL{1}")]
    MixedRank(u8, u8),
    #[error("unsupported rank {0}; only TL3 and TL4 are implemented")]
    Rank(u8),
    #[error("invalid pairing: {0}")]
    Pairing(String),
    #[error("word has {word} strands but the algebra is TL{n}")]
    StrandMismatch { word: u8, n: u8 },
}

/// A planar perfect matching of the `2n` boundary points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TlDiagram {
    n: u8,
    partner: [u8; 2 * MAX_N],
}

impl TlDiagram {
    fn check_rank(n: u8) -> Result<(), TlError> {
        if n == 3 || n == 4 {
            Ok(())
        } else {
            Err(TlError::Rank(n))
        }
    }

    fn top(i: usize) -> usize {
        i
    }

    fn bottom(n: usize, j: usize) -> usize {
        2 * n - 1 - j
    }

    pub fn identity(n: u8) -> Result<Self, TlError> {
        Self::check_rank(n)?;
        let nn = n as usize;
        let mut partner = [0u8; 2 * MAX_N];
        for i in 0..nn {
            partner[Self::top(i)] = Self::bottom(nn, i) as u8;
            partner[Self::bottom(nn, i)] = Self::top(i) as u8;
        }
        Ok(TlDiagram { n, partner })
    }

    /// The generator `U_k`, `1 <= k < n`: cups joining strands `k` and `k+1`.
    pub fn generator(n: u8, k: u8) -> Result<Self, TlError> {
        let mut d = Self::identity(n)?;
        if k == 0 || k >= n {
            return Err(TlError::Pairing(format!("U{k} does not exist in TL{n}")));
        }
        let nn = n as usize;
        let (l, r) = (k as usize - 1, k as usize);
        d.partner[Self::top(l)] = Self::top(r) as u8;
        d.partner[Self::top(r)] = Self::top(l) as u8;
        d.partner[Self::bottom(nn, l)] = Self::bottom(nn, r) as u8;
        d.partner[Self::bottom(nn, r)] = Self::bottom(nn, l) as u8;
        Ok(d)
    }

    /// From 1-based point pairs; rejects anything that is not a planar
    /// perfect matching of `1..=2n`.
    pub fn from_pairs(n: u8, pairs: &[[u8; 2]]) -> Result<Self, TlError> {
        Self::check_rank(n)?;
        let size = 2 * n as usize;
        let mut partner = [u8::MAX; 2 * MAX_N];
        for &[p, q] in pairs {
            let (p, q) = (p as usize, q as usize);
            if p == 0 || q == 0 || p > size || q > size || p == q {
                return Err(TlError::Pairing(format!("bad pair [{p}, {q}]")));
            }
            if partner[p - 1] != u8::MAX || partner[q - 1] != u8::MAX {
                return Err(TlError::Pairing(format!("point repeated in [{p}, {q}]")));
            }
            partner[p - 1] = (q - 1) as u8;
            partner[q - 1] = (p - 1) as u8;
        }
        if partner[..size].contains(&u8::MAX) {
            return Err(TlError::Pairing("not every point is matched".into()));
        }
        for slot in partner[size..].iter_mut() {
            *slot = 0;
        }
        let d = TlDiagram { n, partner };
        if !d.is_planar() {
            return Err(TlError::Pairing("matching is crossing".into()));
        }
        Ok(d)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    fn size(&self) -> usize {
        2 * self.n as usize
    }

    /// Sorted 1-based pairs `[p, q]` with `p < q`.
    pub fn pairs(&self) -> Vec<[u8; 2]> {
        (0..self.size())
            .filter(|&p| (self.partner[p] as usize) > p)
            .map(|p| [p as u8 + 1, self.partner[p] + 1])
            .collect()
    }

    /// Balanced-parenthesis test on the boundary numbering.
    pub fn is_planar(&self) -> bool {
        let mut stack: Vec<usize> = Vec::new();
        for p in 0..self.size() {
            let q = self.partner[p] as usize;
            if q > p {
                stack.push(p);
            } else if stack.pop() != Some(q) {
                return false;
            }
        }
        stack.is_empty()
    }

    /// Stacks `self` above `other`; returns the number of closed loops and
    /// the resulting diagram.
    pub fn compose(&self, other: &Self) -> Result<(u32, TlDiagram), TlError> {
        if self.n != other.n {
            return Err(TlError::MixedRank(self.n, other.n));
        }
        let n = self.n as usize;
        let is_top = |p: usize| p < n;
        // top position of a point, or bottom position (left to right)
        let pos = |p: usize| if p < n { p } else { 2 * n - 1 - p };
        let mut seen_middle = [false; MAX_N];
        let mut partner = [0u8; 2 * MAX_N];

        // Walk from an external point until leaving through another one.
        // `upper` says which diagram we are in; `p` is the entry point there.
        let walk = |mut upper: bool, mut p: usize, seen: &mut [bool; MAX_N]| -> usize {
            loop {
                let d = if upper { self } else { other };
                let q = d.partner[p] as usize;
                if upper {
                    if is_top(q) {
                        return Self::top(pos(q));
                    }
                    let j = pos(q);
                    seen[j] = true;
                    upper = false;
                    p = Self::top(j);
                } else {
                    if !is_top(q) {
                        return Self::bottom(n, pos(q));
                    }
                    let j = pos(q);
                    seen[j] = true;
                    upper = true;
                    p = Self::bottom(n, j);
                }
            }
        };

        for i in 0..n {
            let start = Self::top(i);
            let end = walk(true, start, &mut seen_middle);
            partner[start] = end as u8;
            partner[end] = start as u8;
            let start = Self::bottom(n, i);
            let end = walk(false, start, &mut seen_middle);
            partner[start] = end as u8;
            partner[end] = start as u8;
        }

        let mut loops = 0;
        for j0 in 0..n {
            if seen_middle[j0] {
                continue;
            }
            loops += 1;
            // Middle position j: follow the lower diagram's top, then the
            // upper diagram's bottom, until back at j0.
            let mut j = j0;
            loop {
                seen_middle[j] = true;
                let k = pos(other.partner[Self::top(j)] as usize);
                seen_middle[k] = true;
                let next = pos(self.partner[Self::bottom(n, k)] as usize);
                if next == j0 {
                    break;
                }
                j = next;
            }
        }
        Ok((loops, TlDiagram { n: self.n, partner }))
    }

    /// All planar matchings of `TL_n` (Catalan many), in a fixed order.
    pub fn basis(n: u8) -> Result<Vec<TlDiagram>, TlError> {
        Self::check_rank(n)?;
        fn rec(points: &[u8], partner: &mut [u8; 2 * MAX_N], n: u8, out: &mut Vec<TlDiagram>) {
            if points.is_empty() {
                out.push(TlDiagram {
                    n,
                    partner: *partner,
                });
                return;
            }
            // Fix the first point's partner; the points strictly inside the
            // arc must match among themselves.
            for k in (1..points.len()).step_by(2) {
                partner[points[0] as usize] = points[k];
                partner[points[k] as usize] = points[0];
                let inner = &points[1..k];
                let outer = &points[k + 1..];
                let mut inner_out = Vec::new();
                rec(inner, partner, n, &mut inner_out);
                for d in inner_out {
                    let mut p = d.partner;
                    rec(outer, &mut p, n, out);
                }
            }
        }
        let points: Vec<u8> = (0..2 * n).collect();
        let mut out = Vec::new();
        rec(&points, &mut [0u8; 2 * MAX_N], n, &mut out);
        out.sort();
        Ok(out)
    }
}

/// The loop value `δ = -t^-2 - t^2`.
pub fn loop_value() -> LaurentPoly {
    lp("-t^-2-t^2")
}

/// Formal `Z[t, t^-1]`-combination of diagrams of one `TL_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TlElement {
    n: u8,
    terms: BTreeMap<TlDiagram, LaurentPoly>,
}

impl TlElement {
    pub fn zero(n: u8) -> Result<Self, TlError> {
        TlDiagram::check_rank(n)?;
        Ok(TlElement {
            n,
            terms: BTreeMap::new(),
        })
    }

    pub fn from_diagram(d: TlDiagram, coeff: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(d, coeff);
        }
        TlElement { n: d.n, terms }
    }

    pub fn one(n: u8) -> Result<Self, TlError> {
        Ok(Self::from_diagram(
            TlDiagram::identity(n)?,
            LaurentPoly::one(),
        ))
    }

    /// `U_k` with coefficient 1.
    pub fn u(n: u8, k: u8) -> Result<Self, TlError> {
        Ok(Self::from_diagram(
            TlDiagram::generator(n, k)?,
            LaurentPoly::one(),
        ))
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TlDiagram, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &TlDiagram) -> LaurentPoly {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        TlElement::one(self.n)
            .map(|one| *self == one)
            .unwrap_or(false)
    }

    fn add_term(&mut self, d: TlDiagram, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(d).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, TlError> {
        if self.n != other.n {
            return Err(TlError::MixedRank(self.n, other.n));
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(*d, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TlError> {
        self.add(&other.scale(&LaurentPoly::constant(BigInt::from(-1))))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = TlElement {
            n: self.n,
            terms: BTreeMap::new(),
        };
        for (d, k) in &self.terms {
            out.add_term(*d, k * c);
        }
        out
    }

    /// Bilinear extension of stacking; each closed loop contributes `δ`.
    pub fn mul(&self, other: &Self) -> Result<Self, TlError> {
        if self.n != other.n {
            return Err(TlError::MixedRank(self.n, other.n));
        }
        let delta = loop_value();
        let mut delta_pow: Vec<LaurentPoly> = vec![LaurentPoly::one()];
        let mut out = TlElement::zero(self.n)?;
        for (dx, cx) in &self.terms {
            for (dy, cy) in &other.terms {
                let (loops, d) = dx.compose(dy)?;
                while delta_pow.len() <= loops as usize {
                    let next = delta_pow.last().expect("nonempty") * &delta;
                    delta_pow.push(next);
                }
                out.add_term(d, &(cx * cy) * &delta_pow[loops as usize]);
            }
        }
        Ok(out)
    }
}

/// Product of two elements; `tl_mul` in the module vocabulary.
pub fn tl_mul(x: &TlElement, y: &TlElement) -> Result<TlElement, TlError> {
    x.mul(y)
}

/// `θ(w)` with `A = t`.
pub fn theta(word: &BraidWord, n: u8) -> Result<TlElement, TlError> {
    theta_with(word, n, &LaurentPoly::t())
}

/// `θ(w) = Π (A + A⁻¹ U_i)` over the letters, using `A⁻¹ + A U_i` for
/// inverse letters. `a` must be a unit monomial `±t^k`.
pub fn theta_with(word: &BraidWord, n: u8, a: &LaurentPoly) -> Result<TlElement, TlError> {
    if word.strands() != n {
        return Err(TlError::StrandMismatch {
            word: word.strands(),
            n,
        });
    }
    let a_inv = LaurentPoly::one()
        .exact_div(a)
        .ok()
        .flatten()
        .expect("A must be a unit monomial");
    let id = TlDiagram::identity(n)?;
    let mut acc = TlElement::one(n)?;
    for l in word.letters() {
        let u = TlDiagram::generator(n, l.index)?;
        let (c_id, c_u) = if l.inverse { (&a_inv, a) } else { (a, &a_inv) };
        let mut factor = TlElement::from_diagram(id, c_id.clone());
        factor.add_term(u, c_u.clone());
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Reduced `U`-word (1-based generator indices) for every `TL4` diagram,
/// found by breadth-first search from the identity.
pub fn tl4_basis_words() -> &'static HashMap<TlDiagram, Vec<u8>> {
    static WORDS: OnceLock<HashMap<TlDiagram, Vec<u8>>> = OnceLock::new();
    WORDS.get_or_init(|| {
        let id = TlDiagram::identity(4).expect("TL4 exists");
        let gens: Vec<TlDiagram> = (1..=3)
            .map(|k| TlDiagram::generator(4, k).expect("U1..U3 exist"))
            .collect();
        let mut words: HashMap<TlDiagram, Vec<u8>> = HashMap::new();
        words.insert(id, Vec::new());
        let mut queue = VecDeque::from([id]);
        while let Some(d) = queue.pop_front() {
            for (k, g) in gens.iter().enumerate() {
                let (loops, next) = d.compose(g).expect("same rank");
                if loops == 0 && !words.contains_key(&next) {
                    let mut w = words[&d].clone();
                    w.push(k as u8 + 1);
                    words.insert(next, w);
                    queue.push_back(next);
                }
            }
        }
        words
    })
}

/// `ψ: TL4 -> TL3`, linear, determined on generators by `U3 ↦ U1`.
pub fn psi(x: &TlElement) -> Result<TlElement, TlError> {
    if x.n != 4 {
        return Err(TlError::Rank(x.n));
    }
    let words = tl4_basis_words();
    let mut out = TlElement::zero(3)?;
    for (d, c) in &x.terms {
        let word = words
            .get(d)
            .ok_or_else(|| TlError::Pairing("diagram missing from basis table".into()))?;
        let mut img = TlElement::one(3)?;
        for &k in word {
            let k3 = if k == 3 { 1 } else { k };
            img = img.mul(&TlElement::u(3, k3)?)?;
        }
        out = out.add(&img.scale(c))?;
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    diagram: Vec<[u8; 2]>,
    coeff: LaurentPoly,
}

impl Serialize for TlElement {
    /// List of `{diagram: 1-based pairs, coeff: polynomial JSON}`.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .map(|(d, c)| JsonTerm {
                diagram: d.pairs(),
                coeff: c.clone(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl TlElement {
    /// Parses the JSON form; the rank is implied by the pairing size.
    pub fn from_json(text: &str) -> Result<Self, TlError> {
        let terms: Vec<JsonTerm> =
            serde_json::from_str(text).map_err(|e| TlError::Pairing(e.to_string()))?;
        let n = terms
            .first()
            .map(|t| t.diagram.len() as u8)
            .ok_or_else(|| TlError::Pairing("empty element has no rank".into()))?;
        let mut out = TlElement::zero(n)?;
        for t in terms {
            let d = TlDiagram::from_pairs(n, &t.diagram)?;
            out.add_term(d, t.coeff);
        }
        Ok(out)
    }
}
