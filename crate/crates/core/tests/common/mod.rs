//! Independent oracles shared by the integration tests. None of them goes
//! through divided differences or the residue machinery they check.
#![allow(dead_code)]

use lip::numeric::{int, Integer, Rational};
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Coefficients (constant first) of the interpolant through `points`, by
/// Gaussian elimination on the Vandermonde system.
pub fn vandermonde(points: &[(Integer, Integer)]) -> Vec<Rational> {
    let n = points.len();
    let mut m: Vec<Vec<Rational>> = points
        .iter()
        .map(|(x, y)| {
            let mut row = Vec::with_capacity(n + 1);
            let mut p = Integer::one();
            for _ in 0..n {
                row.push(Rational::from_integer(p.clone()));
                p *= x;
            }
            row.push(Rational::from_integer(y.clone()));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).expect("distinct nodes");
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *v = &*v - p * &f;
                }
            }
        }
    }
    let mut coeffs: Vec<Rational> = m.into_iter().map(|row| row[n].clone()).collect();
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

pub fn vandermonde_integral(points: &[(Integer, Integer)]) -> bool {
    vandermonde(points).iter().all(|c| c.is_integer())
}

/// Every nonempty subset has an integer interpolant.
pub fn all_subsets_integral(points: &[(Integer, Integer)]) -> bool {
    let n = points.len();
    (1u32..1 << n).all(|mask| {
        let sub: Vec<_> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| points[i].clone()).collect();
        vandermonde_integral(&sub)
    })
}

pub fn eval_rational(coeffs: &[Rational], x: &Integer) -> Rational {
    let x = Rational::from_integer(x.clone());
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c)
}

/// `sum_{i>=0} (-1)^i prod_{|j|<=i} (x - j)`, summed until the products vanish.
pub fn alternating_direct(x: i64) -> Integer {
    let mut total = Integer::zero();
    for i in 0..=x.abs() {
        let term: Integer = (-i..=i).map(|j| int(x - j)).product();
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn factorial(n: u64) -> Integer {
    (1..=n).map(Integer::from).product()
}

/// Uniform-ish integer in `[0, bound)` for `bound >= 1`.
pub fn random_below<R: Rng>(rng: &mut R, bound: &Integer) -> Integer {
    let bytes = bound.to_bytes_le().1.len() + 8;
    let raw: Vec<u8> = (0..bytes).map(|_| rng.gen()).collect();
    Integer::from_bytes_le(num_bigint::Sign::Plus, &raw) % bound
}

pub fn abs(x: &Integer) -> Integer {
    x.abs()
}

/// Distinct random integers in `[-r, r]`, sorted.
pub fn distinct_xs<R: Rng>(rng: &mut R, count: usize, r: i64) -> Vec<i64> {
    let mut xs = std::collections::BTreeSet::new();
    while xs.len() < count {
        xs.insert(rng.gen_range(-r..=r));
    }
    xs.into_iter().collect()
}

pub fn points(pairs: &[(i64, i64)]) -> Vec<(Integer, Integer)> {
    pairs.iter().map(|&(x, y)| (int(x), int(y))).collect()
}

const EX1: &str = r#"{"kind":"catalog","name":"example1"}"#;
const TRIANGULAR: &str = r#"{"kind":"catalog","name":"triangular"}"#;
const SQUARE: &str = r#"{"kind":"poly","coeffs":["0","0","1"]}"#;
const AGREE: &str = r#"{"window":["-20","20"],"pieces":[{"set":"Z \\ {0}","fn":{"kind":"poly","coeffs":["1","0","1"]}},{"set":"apz(0,2)","fn":{"kind":"poly","coeffs":["1","0","1"]}}]}"#;
const KIRCH: &str = r#"{"window":["1","60"],"pieces":[{"set":"ap(1,2)","fn":{"kind":"newton","sigma":["1","2","3","5","7"],"coeffs":["4","-3","2","7","-1"]}},{"set":"ap(2,3)","fn":{"kind":"newton","sigma":["1","2","3","5","7"],"coeffs":["4","-3","2","7","-1"]}}]}"#;
const CLASH: &str = r#"{"window":["-20","20"],"pieces":[{"set":"ap(1,2)","fn":{"kind":"poly","coeffs":["0","1"]}},{"set":"ap(1,3)","fn":{"kind":"poly","coeffs":["1","1"]}}]}"#;

/// CLI golden cases: file stem under `tests/golden/`, argv, expected exit
/// code. The golden file holds stdout followed by stderr.
pub const GOLDEN_CASES: &[(&str, &[&str], i32)] = &[
    ("interp", &["interp", "--points", "(-1,0),(0,0),(1,1)"], 0),
    (
        "check_triangular_json",
        &["check", "--fn", TRIANGULAR, "--set", "Z", "--window", "-3..3", "--json", "--stable"],
        0,
    ),
    ("check_points", &["check", "--points", "(0,0),(1,1),(2,3),(3,6)"], 0),
    ("circuit_half_square", &["circuit", "--points", "(-2,2),(0,0),(2,2)"], 0),
    ("circuit_pair", &["circuit", "--points", "(0,0),(2,1)"], 0),
    ("series_example1", &["series", "--fn", EX1, "--sigma", "standard", "--len", "8"], 0),
    ("series_points", &["series", "--points", "(0,0),(1,1),(2,3)"], 0),
    ("extend_two", &["extend", "--points", "(-1,0),(0,0),(1,1)", "--a", "-1", "--b", "1", "--x", "2"], 0),
    ("extend_obstructed", &["extend", "--points", "(-1,0),(0,0),(1,1)", "--a", "-1", "--b", "1", "--x", "3"], 2),
    ("example3", &["example3", "--n", "4"], 0),
    ("example3_json", &["example3", "--n", "6", "--json", "--stable"], 0),
    ("sets_intersect", &["sets", "intersect", "--a", "ap(1,2)", "--b", "ap(2,3)"], 0),
    ("sets_normalize_json", &["sets", "normalize", "--set", "ap(1,2)&ap(2,3)", "--json", "--stable"], 0),
    ("sets_meets", &["sets", "meets", "--set", "ap(1,4)&P", "--target", "ap(1,4)"], 0),
    ("sets_density", &["sets", "density", "--set", "Z\\{1,2,3}"], 0),
    ("sets_kirch", &["sets", "kirch", "--a", "3", "--d", "10"], 0),
    ("catalog_example1", &["catalog", "--fn", EX1, "--window", "-3..3"], 0),
    ("growth_example1", &["report-growth", "--fn", EX1, "--window", "-5..5"], 0),
    ("growth_square", &["report-growth", "--fn", SQUARE, "--window", "-5..5"], 0),
    ("glue_agree", &["glue", "--family", AGREE], 0),
    ("glue_kirch_cover", &["glue", "--family", KIRCH], 0),
    ("glue_clash_json", &["glue", "--family", CLASH, "--json", "--stable"], 0),
];
