//! The reduced Burau representation of `B4` as exact 3×3 matrices over
//! `Z[t, t^-1]`, and the Artin action of `B3`/`B4` on free groups used as an
//! independent triviality oracle.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::braid::{free_reduce_letters, BraidWord, BvGen, BvLetter, BvWord, FreeLetter, Letter};
use crate::laurent::{lp, Coefficient, LaurentError, LaurentPoly, Poly};

/// 3×3 matrix of Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BurauMatrix<C = BigInt> {
    rows: [[Poly<C>; 3]; 3],
}

pub type FastMatrix = BurauMatrix<i64>;

impl<C: Coefficient> BurauMatrix<C> {
    pub fn from_rows(rows: [[Poly<C>; 3]; 3]) -> Self {
        BurauMatrix { rows }
    }

    pub fn identity() -> Self {
        BurauMatrix::from_rows(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { Poly::one() } else { Poly::zero() })
        }))
    }

    /// 1-based entry lookup.
    pub fn entry(&self, i: usize, j: usize) -> &Poly<C> {
        assert!(
            (1..=3).contains(&i) && (1..=3).contains(&j),
            "entry ({i},{j}) out of range"
        );
        &self.rows[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[[Poly<C>; 3]; 3] {
        &self.rows
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        let mut rows: [[Poly<C>; 3]; 3] = Default::default();
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = Poly::zero();
                for k in 0..3 {
                    let (x, y) = (&self.rows[i][k], &other.rows[k][j]);
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&x.checked_mul(y)?)?;
                }
                *cell = acc;
            }
        }
        Ok(BurauMatrix { rows })
    }

    /// First column of `self * other`, i.e. `self` applied to `other`'s first column.
    pub fn checked_mul_first_column(
        &self,
        column: &[Poly<C>; 3],
    ) -> Result<[Poly<C>; 3], LaurentError> {
        let mut out: [Poly<C>; 3] = Default::default();
        for (i, cell) in out.iter_mut().enumerate() {
            let mut acc = Poly::zero();
            for (k, c) in column.iter().enumerate() {
                let x = &self.rows[i][k];
                if x.is_zero() || c.is_zero() {
                    continue;
                }
                acc = acc.checked_add(&x.checked_mul(c)?)?;
            }
            *cell = acc;
        }
        Ok(out)
    }

    pub fn first_column(&self) -> [Poly<C>; 3] {
        std::array::from_fn(|i| self.rows[i][0].clone())
    }

    pub fn determinant(&self) -> Result<Poly<C>, LaurentError> {
        let m = &self.rows;
        let minor = |a: usize, b: usize, c: usize, d: usize| -> Result<Poly<C>, LaurentError> {
            m[1][a]
                .checked_mul(&m[2][b])?
                .checked_sub(&m[1][c].checked_mul(&m[2][d])?)
        };
        let t0 = m[0][0].checked_mul(&minor(1, 2, 2, 1)?)?;
        let t1 = m[0][1].checked_mul(&minor(0, 2, 2, 0)?)?;
        let t2 = m[0][2].checked_mul(&minor(0, 1, 1, 0)?)?;
        t0.checked_sub(&t1)?.checked_add(&t2)
    }

    /// Exact inverse via the adjugate; `None` unless the determinant is a
    /// unit `±t^k` of the Laurent ring.
    pub fn inverse(&self) -> Result<Option<Self>, LaurentError> {
        let det = self.determinant()?;
        match det.as_monomial() {
            Some((_, c)) if c.is_unit_magnitude() => {}
            _ => return Ok(None),
        }
        let m = &self.rows;
        let mut rows: [[Poly<C>; 3]; 3] = Default::default();
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                // adj[i][j] = cofactor of m[j][i]
                let r: Vec<usize> = (0..3).filter(|&x| x != j).collect();
                let c: Vec<usize> = (0..3).filter(|&x| x != i).collect();
                let minor = m[r[0]][c[0]]
                    .checked_mul(&m[r[1]][c[1]])?
                    .checked_sub(&m[r[0]][c[1]].checked_mul(&m[r[1]][c[0]])?)?;
                let cof = if (i + j) % 2 == 0 {
                    minor
                } else {
                    minor.checked_neg()?
                };
                *cell = cof
                    .exact_div(&det)?
                    .expect("division by a unit monomial is exact");
            }
        }
        Ok(Some(BurauMatrix { rows }))
    }

    pub fn convert<D: Coefficient>(&self) -> Result<BurauMatrix<D>, LaurentError> {
        let mut rows: [[Poly<D>; 3]; 3] = Default::default();
        for (dst, src) in rows.iter_mut().zip(&self.rows) {
            for (d, s) in dst.iter_mut().zip(src) {
                *d = s.convert()?;
            }
        }
        Ok(BurauMatrix { rows })
    }
}

impl BurauMatrix {
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other)
            .expect("bigint arithmetic is infallible")
    }

    /// Matrix from canonical polynomial text, row-major.
    pub fn from_text(rows: [[&str; 3]; 3]) -> Self {
        BurauMatrix::from_rows(rows.map(|r| r.map(lp)))
    }
}

impl<C: Coefficient> fmt::Display for BurauMatrix<C> {
    /// One bracketed row per line, entries in canonical polynomial text.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for BurauMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BurauMatrix(\n{self}\n)")
    }
}

impl<C: Coefficient> Serialize for BurauMatrix<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for BurauMatrix<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = <[[Poly<C>; 3]; 3]>::deserialize(deserializer)?;
        Ok(BurauMatrix { rows })
    }
}

/// Order in which letter matrices are multiplied when evaluating a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductOrder {
    /// `ρ(x1 x2 … xk) = ρ(x1) ρ(x2) … ρ(xk)`
    LeftToRight,
    /// `ρ(x1 x2 … xk) = ρ(xk) … ρ(x2) ρ(x1)`
    RightToLeft,
}

/// The convention fixed by [`bootstrap_order`]; asserted in the test suite.
pub const COMPOSITION: ProductOrder = ProductOrder::LeftToRight;

/// Published images of the three generators.
pub fn printed_generator(i: u8) -> BurauMatrix {
    match i {
        1 => BurauMatrix::from_text([["-t^-1", "0", "0"], ["t^-1", "1", "0"], ["0", "0", "1"]]),
        2 => BurauMatrix::from_text([["1", "1", "0"], ["0", "-t^-1", "0"], ["0", "t^-1", "1"]]),
        3 => BurauMatrix::from_text([["1", "0", "0"], ["0", "1", "1"], ["0", "0", "-t^-1"]]),
        _ => panic!("generator index {i} out of range"),
    }
}

/// Published images of `a`, `b`, `a^-1`, `b^-1`.
pub fn printed_bv(letter: BvLetter) -> BurauMatrix {
    match (letter.gen, letter.inverse) {
        (BvGen::A, false) => BurauMatrix::from_text([
            ["-t^-1+1", "-t^-1+t", "-t^-1"],
            ["0", "-t", "0"],
            ["-1", "0", "0"],
        ]),
        (BvGen::B, false) => {
            BurauMatrix::from_text([["-t", "0", "0"], ["1", "1", "1"], ["0", "0", "-t^-1"]])
        }
        (BvGen::A, true) => BurauMatrix::from_text([
            ["0", "0", "-1"],
            ["0", "-t^-1", "0"],
            ["-t", "t^-1-t", "1-t"],
        ]),
        (BvGen::B, true) => {
            BurauMatrix::from_text([["-t^-1", "0", "0"], ["t^-1", "1", "t"], ["0", "0", "-t"]])
        }
    }
}

fn product_in_order(mats: &[BurauMatrix], order: ProductOrder) -> BurauMatrix {
    let mut acc = BurauMatrix::identity();
    for m in mats {
        acc = match order {
            ProductOrder::LeftToRight => acc.mul(m),
            ProductOrder::RightToLeft => m.mul(&acc),
        };
    }
    acc
}

/// Tries both product orders on the expansion of `a` and returns the one
/// that reproduces the published `ρ(a)`.
pub fn bootstrap_order() -> Option<ProductOrder> {
    let mats: Vec<BurauMatrix> = BvLetter::A
        .expansion()
        .into_iter()
        .map(|l| generator_matrix(l.index, l.inverse))
        .collect();
    let target = printed_bv(BvLetter::A);
    [ProductOrder::LeftToRight, ProductOrder::RightToLeft]
        .into_iter()
        .find(|&o| product_in_order(&mats, o) == target)
}

struct Tables {
    generators: [[BurauMatrix; 2]; 3],
    bv: [BurauMatrix; 4],
    fast_bv: [FastMatrix; 4],
}

fn bv_slot(l: BvLetter) -> usize {
    match (l.gen, l.inverse) {
        (BvGen::A, false) => 0,
        (BvGen::A, true) => 1,
        (BvGen::B, false) => 2,
        (BvGen::B, true) => 3,
    }
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let generators = [1u8, 2, 3].map(|i| {
            let m = printed_generator(i);
            let inv = m
                .inverse()
                .expect("bigint arithmetic is infallible")
                .expect("generator determinant is a unit");
            [m, inv]
        });
        let eval = |letters: &[Letter]| {
            let mats: Vec<BurauMatrix> = letters
                .iter()
                .map(|l| generators[l.index as usize - 1][l.inverse as usize].clone())
                .collect();
            product_in_order(&mats, COMPOSITION)
        };
        let bv = BvLetter::ALL.map(|l| eval(&l.expansion()));
        let fast_bv = std::array::from_fn(|k| bv[k].convert().expect("small coefficients"));
        Tables {
            generators,
            bv,
            fast_bv,
        }
    })
}

/// `ρ(σ_i)` for `inverse == false`, otherwise its exact inverse.
pub fn generator_matrix(i: u8, inverse: bool) -> BurauMatrix {
    assert!((1..=3).contains(&i), "generator index {i} out of range");
    tables().generators[i as usize - 1][inverse as usize].clone()
}

/// `ρ` of a single Bokut–Vesnin letter, computed from its `σ` expansion.
pub fn bv_letter_matrix(letter: BvLetter) -> &'static BurauMatrix {
    &tables().bv[bv_slot(letter)]
}

pub fn fast_bv_letter_matrix(letter: BvLetter) -> &'static FastMatrix {
    &tables().fast_bv[bv_slot(letter)]
}

/// Burau matrix of a `B4` word.
pub fn burau(word: &BraidWord) -> BurauMatrix {
    assert_eq!(
        word.strands(),
        4,
        "the reduced Burau matrices here are for B4"
    );
    let t = tables();
    let mut acc = BurauMatrix::identity();
    for l in word.letters() {
        let g = &t.generators[l.index as usize - 1][l.inverse as usize];
        acc = match COMPOSITION {
            ProductOrder::LeftToRight => acc.mul(g),
            ProductOrder::RightToLeft => g.mul(&acc),
        };
    }
    acc
}

/// Burau matrix of a Bokut–Vesnin word (equal to `burau(&w.expand())`).
pub fn burau_bv(word: &BvWord) -> BurauMatrix {
    let mut acc = BurauMatrix::identity();
    for &l in word.letters() {
        let g = bv_letter_matrix(l);
        acc = match COMPOSITION {
            ProductOrder::LeftToRight => acc.mul(g),
            ProductOrder::RightToLeft => g.mul(&acc),
        };
    }
    acc
}

/// Checked machine-word evaluation of a Bokut–Vesnin word.
pub fn burau_bv_fast(word: &BvWord) -> Result<FastMatrix, LaurentError> {
    let mut acc = FastMatrix::identity();
    for &l in word.letters() {
        let g = fast_bv_letter_matrix(l);
        acc = match COMPOSITION {
            ProductOrder::LeftToRight => acc.checked_mul(g)?,
            ProductOrder::RightToLeft => g.checked_mul(&acc)?,
        };
    }
    Ok(acc)
}

/// 1-based entry of a Burau matrix.
pub fn entry(m: &BurauMatrix, i: usize, j: usize) -> LaurentPoly {
    m.entry(i, j).clone()
}

/// Letter of the free group `F_n`: generator `x_index` (1-based) or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FreeGen {
    pub index: u8,
    pub inverse: bool,
}

impl FreeLetter for FreeGen {
    fn inverse(self) -> Self {
        FreeGen {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

/// Endomorphism of `F_n` given by the reduced images of `x_1..x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroupEndo {
    images: Vec<Vec<FreeGen>>,
}

impl FreeGroupEndo {
    pub fn identity(n: usize) -> Self {
        FreeGroupEndo {
            images: (1..=n as u8)
                .map(|i| {
                    vec![FreeGen {
                        index: i,
                        inverse: false,
                    }]
                })
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> &[FreeGen] {
        &self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank())
    }

    /// Image of `x_i` under `σ_k^{±1}`:
    /// `σ_k: x_k ↦ x_k x_{k+1} x_k⁻¹, x_{k+1} ↦ x_k`, and
    /// `σ_k⁻¹: x_k ↦ x_{k+1}, x_{k+1} ↦ x_{k+1}⁻¹ x_k x_{k+1}`.
    fn artin_letter_image(letter: Letter, x: FreeGen) -> Vec<FreeGen> {
        let k = letter.index;
        let g = |index: u8, inverse: bool| FreeGen { index, inverse };
        let base: Vec<FreeGen> = if x.index == k {
            if letter.inverse {
                vec![g(k + 1, false)]
            } else {
                vec![g(k, false), g(k + 1, false), g(k, true)]
            }
        } else if x.index == k + 1 {
            if letter.inverse {
                vec![g(k + 1, true), g(k, false), g(k + 1, false)]
            } else {
                vec![g(k, false)]
            }
        } else {
            vec![g(x.index, false)]
        };
        if x.inverse {
            base.into_iter().rev().map(|l| l.inverse()).collect()
        } else {
            base
        }
    }

    /// Post-composes the action of one braid letter: every current image
    /// word has the letter's substitution applied and is freely reduced.
    pub fn apply_letter(&mut self, letter: Letter) {
        for img in self.images.iter_mut() {
            let expanded: Vec<FreeGen> = img
                .iter()
                .flat_map(|&x| Self::artin_letter_image(letter, x))
                .collect();
            *img = free_reduce_letters(&expanded);
        }
    }
}

/// The Artin action of a braid word on the free group of rank `strands`.
pub fn artin_action(word: &BraidWord) -> FreeGroupEndo {
    let mut endo = FreeGroupEndo::identity(word.strands() as usize);
    for &l in word.letters() {
        endo.apply_letter(l);
    }
    endo
}

/// True iff `word` is the trivial braid (the Artin action is faithful).
pub fn artin_trivial(word: &BraidWord) -> bool {
    let reduced = word.free_reduce();
    reduced.is_empty() || artin_action(&reduced).is_identity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::random_reduced_bv_word;
    use proptest::prelude::*;

    fn w4(s: &str) -> BraidWord {
        BraidWord::parse(s, 4).unwrap()
    }

    #[test]
    fn bootstrap_locks_left_to_right() {
        assert_eq!(bootstrap_order(), Some(COMPOSITION));
        assert_eq!(COMPOSITION, ProductOrder::LeftToRight);
    }

    #[test]
    fn generator_examples() {
        assert_eq!(
            generator_matrix(1, false),
            BurauMatrix::from_text([["-t^-1", "0", "0"], ["t^-1", "1", "0"], ["0", "0", "1"]])
        );
        assert_eq!(
            generator_matrix(2, false),
            BurauMatrix::from_text([["1", "1", "0"], ["0", "-t^-1", "0"], ["0", "t^-1", "1"]])
        );
        for i in 1..=3 {
            let g = generator_matrix(i, false);
            let gi = generator_matrix(i, true);
            assert!(g.mul(&gi).is_identity());
            assert!(gi.mul(&g).is_identity());
            assert_eq!(g.determinant().unwrap(), lp("-t^-1"));
        }
    }

    /// Oracle for the inverse: solve `M X = I` column by column by substitution,
    /// using only that each generator is triangular up to one swap-free block.
    #[test]
    fn inverse_of_sigma1_by_hand() {
        // ρ(σ1)⁻¹ from solving -t⁻¹ x = 1, t⁻¹ x + y = 0 on each column.
        let expected = BurauMatrix::from_text([["-t", "0", "0"], ["1", "1", "0"], ["0", "0", "1"]]);
        assert_eq!(generator_matrix(1, true), expected);
    }

    #[test]
    fn word_evaluation_examples() {
        assert!(burau(&BraidWord::empty(4)).is_identity());
        assert_eq!(
            burau(&BvWord::parse("a").unwrap().expand()),
            printed_bv(BvLetter::A)
        );
        assert_eq!(
            burau(&BvWord::parse("b").unwrap().expand()),
            printed_bv(BvLetter::B)
        );
        for l in BvLetter::ALL {
            assert_eq!(*bv_letter_matrix(l), printed_bv(l), "{l:?}");
        }
    }

    #[test]
    fn entries_of_a5_bab() {
        let m = burau_bv(&BvWord::parse("a^2 B A b").unwrap());
        assert_eq!(entry(&m, 1, 1), lp("-t^-3+t^-2-1+2*t-t^2-t^3+2*t^4-t^5"));
        assert_eq!(entry(&m, 3, 1), lp("-t^-2+1-t+t^3-t^4"));
        assert!(entry(&BurauMatrix::identity(), 1, 3).is_zero());
    }

    #[test]
    fn braid_relations_hold() {
        let s = |i| generator_matrix(i, false);
        assert_eq!(s(1).mul(&s(2)).mul(&s(1)), s(2).mul(&s(1)).mul(&s(2)));
        assert_eq!(s(3).mul(&s(2)).mul(&s(3)), s(2).mul(&s(3)).mul(&s(2)));
        assert_eq!(s(3).mul(&s(1)), s(1).mul(&s(3)));
    }

    #[test]
    fn matrix_text_and_json() {
        let m = printed_bv(BvLetter::B);
        assert_eq!(m.to_string(), "[-t, 0, 0]\n[1, 1, 1]\n[0, 0, -t^-1]");
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(
            json,
            "[[[[1,-1]],[],[]],[[[0,1]],[[0,1]],[[0,1]]],[[],[],[[-1,-1]]]]"
        );
        assert_eq!(serde_json::from_str::<BurauMatrix>(&json).unwrap(), m);
    }

    #[test]
    fn artin_examples() {
        assert!(artin_trivial(&w4("s1 S1")));
        assert!(artin_trivial(&BvWord::parse("a").unwrap().expand().phi()));
        assert!(artin_trivial(
            &BraidWord::parse("s1 s2 s1 S2 S1 S2", 3).unwrap()
        ));
        assert!(artin_trivial(&w4("s3 s2 s3 S2 S3 S2")));
        assert!(artin_trivial(&w4("s1 s3 S1 S3")));
        assert!(!artin_trivial(&w4("s1")));
        assert!(!artin_trivial(&w4("s1 s3 S1 S2")));
        // Pure braid generator A_12 = σ1² acts nontrivially.
        assert!(!artin_trivial(&w4("s1 s1")));
    }

    #[test]
    fn artin_images_of_sigma1() {
        let e = artin_action(&w4("s1"));
        let g = |index, inverse| FreeGen { index, inverse };
        assert_eq!(e.image(1), &[g(1, false), g(2, false), g(1, true)]);
        assert_eq!(e.image(2), &[g(1, false)]);
        assert_eq!(e.image(3), &[g(3, false)]);
        let mut back = e.clone();
        back.apply_letter(Letter::neg(1));
        assert!(back.is_identity());
    }

    #[test]
    fn fast_and_big_evaluation_agree() {
        for seed in 0..20 {
            let w = random_reduced_bv_word(10, seed);
            let big = burau_bv(&w);
            let fast = burau_bv_fast(&w).unwrap();
            assert_eq!(fast.convert::<BigInt>().unwrap(), big);
        }
    }

    #[test]
    fn short_bv_words_are_artin_nontrivial() {
        for seed in 0..100 {
            let len = 1 + (seed as usize % 8);
            let w = random_reduced_bv_word(len, seed);
            assert!(!artin_trivial(&w.expand()), "{w}");
        }
        assert!(artin_trivial(&BvWord::empty().expand()));
    }

    fn arb_braid4(max: usize) -> impl Strategy<Value = BraidWord> {
        prop::collection::vec((1u8..4, any::<bool>()), 0..max).prop_map(|v| {
            BraidWord::new(
                4,
                v.into_iter().map(|(i, inv)| Letter::new(i, inv)).collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn burau_is_a_homomorphism(u in arb_braid4(10), v in arb_braid4(10)) {
            prop_assert_eq!(burau(&u.concat(&v)), burau(&u).mul(&burau(&v)));
            prop_assert!(burau(&u).mul(&burau(&u.inverse())).is_identity());
        }

        #[test]
        fn determinant_tracks_exponent_sum(u in arb_braid4(12)) {
            let e = u.exponent_sum();
            let expected = LaurentPoly::monomial(BigInt::from(if e % 2 == 0 { 1 } else { -1 }), -e);
            prop_assert_eq!(burau(&u).determinant().unwrap(), expected);
        }

        #[test]
        fn bv_evaluation_matches_expansion(len in 0usize..8, seed in any::<u64>()) {
            let w = random_reduced_bv_word(len.max(1), seed);
            prop_assert_eq!(burau_bv(&w), burau(&w.expand()));
        }

        #[test]
        fn artin_action_detects_free_cancellation(u in arb_braid4(8)) {
            prop_assert!(artin_trivial(&u.concat(&u.inverse())));
        }
    }
}
