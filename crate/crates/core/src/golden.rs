//! Published reference values and a one-call check of all of them.

use serde::Serialize;

use crate::braid::{BvLetter, BvWord};
use crate::burau::{
    bootstrap_order, burau_bv, generator_matrix, printed_bv, printed_generator, ProductOrder,
};
use crate::decomp::{extract_pqr, predict, validate};
use crate::laurent::{lp, LaurentPoly};
use crate::regularity::check_instance;

/// A base word with its `(P, Q, R)` at `n = 2` and one predicted level.
pub struct WorkedExample {
    pub name: &'static str,
    pub word: &'static str,
    pub p: &'static str,
    pub q: &'static str,
    pub r: &'static str,
    /// `(m, ρ11(a^{m+2}σ), ρ31(a^{m+2}σ))`.
    pub prediction: Option<(u32, &'static str, &'static str)>,
}

pub const WORKED_EXAMPLES: [WorkedExample; 5] = [
    WorkedExample {
        name: "B A b",
        word: "B A b",
        p: "t^-2",
        q: "0",
        r: "-1+t-t^3+t^4",
        prediction: Some((
            3,
            "t^-6-t^-5+t^-4-t^-3+t^-2-1+2t-2t^2+t^3-t^5+2t^6-2t^7+t^8",
            "t^-5-t^-4+t^-3-t^-2+1-2t+2t^2-t^3-t^4+2t^5-2t^6+t^7",
        )),
    },
    WorkedExample {
        name: "b A^2 B",
        word: "b A^2 B",
        p: "-t^-5+t^-4-t^-2",
        q: "t^-1",
        r: "0",
        prediction: Some((
            4,
            "t^-10-2t^-9+2t^-8-t^-7+t^-6-t^-5+t^-3-t^-2+t^-1",
            "t^-9-2t^-8+2t^-7-t^-6+t^-5-t^-3+t^-2-t^-1",
        )),
    },
    WorkedExample {
        name: "a b^2 a B",
        word: "a b^2 a B",
        p: "t^-5-t^-4+t^-2-2t^-1+1",
        q: "-t^-4+t^-3-2t^-1+2-t",
        r: "1-t^2+t^3",
        prediction: Some((
            2,
            "-t^-8+2t^-7-2t^-6+t^-5+t^-4-3t^-3+4t^-2-5t^-1+4-2t+t^3-2t^4+2t^5-t^6",
            "-t^-7+2t^-6-2t^-5+t^-4+2t^-3-4t^-2+5t^-1-4+2t-2t^3+2t^4-t^5",
        )),
    },
    WorkedExample {
        name: "b^6 a B A b^-6 a^-6",
        word: "b^6 a B A b^-6 a^-6",
        p: "t^-8-3t^-7+6t^-6-9t^-5+11t^-4-11t^-3+8t^-2-2t^-1-7+16t-22t^2+23t^3-20t^4+14t^5-5t^6-4t^7+10t^8-12t^9+11t^10-9t^11+6t^12-3t^13+t^14",
        q: "-t^-1+2-2t+t^2-2t^4+4t^5-6t^6+6t^7-4t^8+t^9+t^10-2t^11+3t^12-3t^13+2t^14-t^15",
        r: "-t^-6+3t^-5-6t^-4+9t^-3-11t^-2+11t^-1-7-t+10t^2-18t^3+23t^4-22t^5+17t^6-8t^7-t^8+8t^9-11t^10+11t^11-9t^12+6t^13-3t^14+t^15",
        prediction: None,
    },
    WorkedExample {
        name: "b^6 a B A b^-6 a^-9",
        word: "b^6 a B A b^-6 a^-9",
        p: "t^-8-3t^-7+6t^-6-9t^-5+11t^-4-12t^-3+11t^-2-8t^-1+1+8t-16t^2+21t^3-23t^4+23t^5-19t^6+12t^7-4t^8-3t^9+8t^10-11t^11+12t^12-11t^13+9t^14-6t^15+3t^16-t^17",
        q: "-t^-1+2-2t+t^2-t^4+2t^5-4t^6+6t^7-6t^8+4t^9-2t^10+t^11-t^13+2t^14-3t^15+3t^16-2t^17+t^18",
        r: "-t^-6+3t^-5-6t^-4+9t^-3-11t^-2+12t^-1-10+5t+2t^2-10t^3+17t^4-21t^5+22t^6-20t^7+14t^8-7t^9+5t^11-9t^12+11t^13-11t^14+9t^15-6t^16+3t^17-t^18",
        prediction: None,
    },
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> GoldenCheck {
    GoldenCheck {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

fn pqr_checks(
    ex: &WorkedExample,
    out: &mut Vec<GoldenCheck>,
) -> Option<(LaurentPoly, LaurentPoly, LaurentPoly)> {
    let word = BvWord::parse(ex.word).expect("reference words parse");
    let mut d = match extract_pqr(word, 2) {
        Ok(d) => d,
        Err(e) => {
            out.push(check(
                format!("{}: P, Q, R at n = 2", ex.name),
                false,
                e.to_string(),
            ));
            return None;
        }
    };
    let ok = d.p == lp(ex.p) && d.q == lp(ex.q) && d.r == lp(ex.r);
    out.push(check(
        format!("{}: P, Q, R at n = 2", ex.name),
        ok,
        format!("P = {}, Q = {}, R = {}", d.p, d.q, d.r),
    ));
    if let Some((m, r11, r31)) = ex.prediction {
        let validated = validate(&mut d, m).is_ok();
        let (p11, p31) = predict(&d, m);
        out.push(check(
            format!("{}: prediction at m = {m}", ex.name),
            validated && p11 == lp(r11) && p31 == lp(r31),
            format!("rho11 = {p11}, rho31 = {p31}"),
        ));
    }
    Some((d.p, d.q, d.r))
}

/// Runs every reference comparison.
pub fn self_test() -> Vec<GoldenCheck> {
    let mut out = Vec::new();
    for i in 1..=3u8 {
        out.push(check(
            format!("generator s{i}"),
            generator_matrix(i, false) == printed_generator(i),
            generator_matrix(i, false).to_string().replace('\n', " "),
        ));
    }
    out.push(check(
        "multiplication order",
        bootstrap_order() == Some(ProductOrder::LeftToRight),
        format!("{:?}", bootstrap_order()),
    ));
    for l in BvLetter::ALL {
        let m = burau_bv(&BvWord::new(vec![l]));
        out.push(check(
            format!("Bokut-Vesnin letter {}", l.symbol()),
            m == printed_bv(l),
            m.to_string().replace('\n', " "),
        ));
    }
    let mut fours = Vec::new();
    for ex in &WORKED_EXAMPLES {
        if let Some(pqr) = pqr_checks(ex, &mut out) {
            if ex.word.starts_with("b^6") {
                fours.push(pqr);
            }
        }
    }
    if let [(p, q, r), (p2, q2, r2)] = fours.as_slice() {
        out.push(check(
            "b^6 a B A b^-6 a^-l, l = 6, 9: lowest degrees agree",
            p.deg_min_opt() == p2.deg_min_opt()
                && q.deg_min_opt() == q2.deg_min_opt()
                && r.deg_min_opt() == r2.deg_min_opt(),
            format!(
                "P {:?}/{:?}, Q {:?}/{:?}, R {:?}/{:?}",
                p.deg_min_opt(),
                p2.deg_min_opt(),
                q.deg_min_opt(),
                q2.deg_min_opt(),
                r.deg_min_opt(),
                r2.deg_min_opt()
            ),
        ));
    }
    for (word, m, d11, d31) in [("B A b", 5, -6, -5), ("b A^2 B", 6, -10, -9)] {
        let o = check_instance(&BvWord::parse(word).expect("parses"), m, 0);
        out.push(check(
            format!("regularity of a^{m} {word}"),
            o.rho11_degmin == Some(d11) && o.rho31_degmin == Some(d31) && o.regular,
            o.to_string(),
        ));
    }
    out
}
