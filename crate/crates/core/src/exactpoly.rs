//! Exact univariate polynomials over ℤ and ℚ, finite samples, Newton-form
//! interpolation and the left discrete derivative.
//!
//! Coefficients are stored densely, low degree first, with trailing zeros
//! stripped; the zero polynomial is the empty sequence and has degree
//! [`Degree::MinusInfinity`].

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LipError, Result};
use crate::numeric::{int, serde_str, Integer, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

fn degree_of(len: usize) -> Degree {
    match len {
        0 => Degree::MinusInfinity,
        n => Degree::Finite(n - 1),
    }
}

/// Writes `sum c_i x^i` in descending order, e.g. `x^2-2x+1`.
fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &[Integer]) -> fmt::Result {
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { "-" } else { "+" })?;
        }
        first = false;
        let unit = mag.is_one();
        match i {
            0 => write!(f, "{mag}")?,
            1 if unit => f.write_str("x")?,
            1 => write!(f, "{mag}x")?,
            _ if unit => write!(f, "x^{i}")?,
            _ => write!(f, "{mag}x^{i}")?,
        }
    }
    Ok(())
}

/// A polynomial in ℤ[x].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "IntPolyRepr", into = "IntPolyRepr")]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

#[derive(Serialize, Deserialize)]
struct IntPolyRepr {
    #[serde(with = "serde_str::integer_vec")]
    coeffs: Vec<Integer>,
}

impl From<IntPolyRepr> for IntPolynomial {
    fn from(r: IntPolyRepr) -> Self {
        IntPolynomial::new(r.coeffs)
    }
}

impl From<IntPolynomial> for IntPolyRepr {
    fn from(p: IntPolynomial) -> Self {
        IntPolyRepr { coeffs: p.coeffs }
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Integer) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Integer>) -> Self {
        roots
            .into_iter()
            .fold(Self::constant(Integer::one()), |acc, r| acc.mul(&Self::new(vec![-r.clone(), Integer::one()])))
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        degree_of(self.coeffs.len())
    }

    pub fn leading_coeff(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        self.coeffs.iter().rev().fold(Integer::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Integer::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &Integer) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| acc.mul(q).add(&Self::constant(c.clone())))
    }

    /// `p(x) - p(x - 1)`.
    pub fn discrete_derivative(&self) -> Self {
        self.sub(&self.compose(&Self::from_i64s(&[-1, 1])))
    }

    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::new(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

/// A polynomial in ℚ[x]; every coefficient is kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "RatPolyRepr", into = "RatPolyRepr")]
pub struct RatPolynomial {
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct RatPolyRepr {
    #[serde(with = "serde_str::rational_vec")]
    coeffs: Vec<Rational>,
}

impl From<RatPolyRepr> for RatPolynomial {
    fn from(r: RatPolyRepr) -> Self {
        RatPolynomial::new(r.coeffs)
    }
}

impl From<RatPolynomial> for RatPolyRepr {
    fn from(p: RatPolynomial) -> Self {
        RatPolyRepr { coeffs: p.coeffs }
    }
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Degree {
        degree_of(self.coeffs.len())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Integer) -> Rational {
        let x = Rational::from_integer(x.clone());
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// The embedding into ℤ[x], when every coefficient has denominator 1.
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::new)
    }

    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Least common denominator of the coefficients (1 for the zero polynomial).
    pub fn common_denominator(&self) -> Integer {
        self.coeffs.iter().fold(Integer::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Display for RatPolynomial {
    /// Printed over a common denominator: `(x^2+x)/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.common_denominator();
        let num: Vec<Integer> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        if den.is_one() {
            write_terms(f, &num)
        } else {
            f.write_str("(")?;
            write_terms(f, &num)?;
            write!(f, ")/{den}")
        }
    }
}

/// Whether an interpolant is in ℤ[x]; see [`RatPolynomial::to_integer`].
pub fn is_integer(p: &RatPolynomial) -> Option<IntPolynomial> {
    p.to_integer()
}

/// A finite map `x -> y` on integers, sorted by `x`, with distinct `x` values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SampleRepr", into = "SampleRepr")]
pub struct Sample {
    points: Vec<(Integer, Integer)>,
}

#[derive(Serialize, Deserialize)]
struct SampleRepr {
    #[serde(with = "serde_str::point_vec")]
    points: Vec<(Integer, Integer)>,
}

impl TryFrom<SampleRepr> for Sample {
    type Error = LipError;

    fn try_from(r: SampleRepr) -> Result<Self> {
        Sample::new(r.points)
    }
}

impl From<Sample> for SampleRepr {
    fn from(s: Sample) -> Self {
        SampleRepr { points: s.points }
    }
}

impl Sample {
    pub fn new(points: impl IntoIterator<Item = (Integer, Integer)>) -> Result<Self> {
        let mut points: Vec<_> = points.into_iter().collect();
        if points.is_empty() {
            return Err(LipError::InvalidSample("no points".into()));
        }
        points.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = points.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(LipError::InvalidSample(format!("duplicate x value {}", w[0].0)));
        }
        Ok(Sample { points })
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(x, y)| (int(x), int(y))))
    }

    /// Samples `f` at each `x`.
    pub fn from_fn<'a>(
        xs: impl IntoIterator<Item = &'a Integer>,
        mut f: impl FnMut(&Integer) -> Integer,
    ) -> Result<Self> {
        Self::new(xs.into_iter().map(|x| (x.clone(), f(x))))
    }

    pub fn points(&self) -> &[(Integer, Integer)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn xs(&self) -> impl Iterator<Item = &Integer> + '_ {
        self.points.iter().map(|(x, _)| x)
    }

    pub fn get(&self, x: &Integer) -> Option<&Integer> {
        self.points.binary_search_by(|(px, _)| px.cmp(x)).ok().map(|i| &self.points[i].1)
    }

    pub fn contains(&self, x: &Integer) -> bool {
        self.get(x).is_some()
    }

    /// The sub-sample on the given `x` values; every one must be present.
    pub fn restrict<'a>(&self, xs: impl IntoIterator<Item = &'a Integer>) -> Result<Self> {
        let pts = xs
            .into_iter()
            .map(|x| {
                self.get(x)
                    .map(|y| (x.clone(), y.clone()))
                    .ok_or_else(|| LipError::Precondition(format!("{x} is not a sample point")))
            })
            .collect::<Result<Vec<_>>>()?;
        Sample::new(pts)
    }

    /// Keeps the points satisfying `keep`; `None` if nothing is left.
    pub fn filter(&self, mut keep: impl FnMut(&Integer) -> bool) -> Option<Self> {
        let pts: Vec<_> = self.points.iter().filter(|(x, _)| keep(x)).cloned().collect();
        (!pts.is_empty()).then_some(Sample { points: pts })
    }

    pub fn without(&self, x: &Integer) -> Option<Self> {
        self.filter(|p| p != x)
    }
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, y)) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({x},{y})")?;
        }
        Ok(())
    }
}

/// Top-row Newton divided differences `f[x_0], f[x_0,x_1], ..., f[x_0..x_{n-1}]`
/// in the given point order. The last entry is the coefficient of `x^{n-1}`
/// in the interpolant.
pub fn divided_differences(points: &[(Integer, Integer)]) -> Vec<Rational> {
    let mut table: Vec<Rational> = points.iter().map(|(_, y)| Rational::from_integer(y.clone())).collect();
    let n = points.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let dx = &points[i].0 - &points[i - j].0;
            table[i] = (&table[i] - &table[i - 1]) / Rational::from_integer(dx);
        }
    }
    table
}

/// Expands a Newton form with nodes `x_0, x_1, ...` into monomial coefficients.
fn expand_newton(nodes: &[Integer], coeffs: &[Rational]) -> RatPolynomial {
    let mut acc: Vec<Rational> = Vec::new();
    for k in (0..coeffs.len()).rev() {
        // acc = acc * (x - x_k) + c_k
        let mut next = vec![Rational::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * Rational::from_integer(nodes[k].clone());
        }
        next[0] += &coeffs[k];
        acc = next;
    }
    RatPolynomial::new(acc)
}

/// Interpolant through arbitrary distinct points in any order; the empty
/// point set gives the zero polynomial.
pub fn interpolate_points(points: &[(Integer, Integer)]) -> RatPolynomial {
    let dd = divided_differences(points);
    let nodes: Vec<Integer> = points.iter().map(|(x, _)| x.clone()).collect();
    expand_newton(&nodes, &dd)
}

/// Whether the interpolant through `points` lies in ℤ[x].
///
/// The Newton coefficients are the leading coefficients of the interpolants on
/// the prefixes, so they are all integral exactly when the interpolant is.
pub fn interpolant_is_integer(points: &[(Integer, Integer)]) -> bool {
    divided_differences(points).iter().all(|c| c.is_integer())
}

/// The unique polynomial of degree `< |sample|` through every sample point.
pub fn interpolate(sample: &Sample) -> RatPolynomial {
    interpolate_points(&sample.points)
}

pub fn compose(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    p.compose(q)
}

pub fn discrete_derivative(p: &IntPolynomial) -> IntPolynomial {
    p.discrete_derivative()
}

/// `(δf)(x) = f(x) - f(x-1)` at every `x` whose predecessor is also sampled.
pub fn discrete_derivative_sample(s: &Sample) -> Result<Sample> {
    let pts: Vec<_> = s
        .points
        .windows(2)
        .filter(|w| &w[1].0 - &w[0].0 == Integer::one())
        .map(|w| (w[1].0.clone(), &w[1].1 - &w[0].1))
        .collect();
    if pts.is_empty() {
        return Err(LipError::NoConsecutivePair);
    }
    Sample::new(pts)
}

/// `(δ^d f)(r + d)` for a sample on the `d + 1` consecutive integers
/// `r, ..., r + d`; equals `d!` times the leading coefficient of the
/// degree-`<= d` interpolant.
pub fn iterated_delta_top(s: &Sample) -> Result<Integer> {
    if s.points.windows(2).any(|w| &w[1].0 - &w[0].0 != Integer::one()) {
        return Err(LipError::NotConsecutive);
    }
    let mut values: Vec<Integer> = s.points.iter().map(|(_, y)| y.clone()).collect();
    while values.len() > 1 {
        values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    Ok(values.pop().expect("sample is nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(int(n), int(d))
    }

    fn rpoly(c: &[(i64, i64)]) -> RatPolynomial {
        RatPolynomial::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    /// Exact Gaussian elimination on the Vandermonde system.
    fn vandermonde_solve(pts: &[(i64, i64)]) -> RatPolynomial {
        let n = pts.len();
        let mut m: Vec<Vec<Rational>> = pts
            .iter()
            .map(|&(x, y)| {
                let mut row: Vec<Rational> = (0..n as u32).map(|k| rat(x.pow(k), 1)).collect();
                row.push(rat(y, 1));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero()).unwrap();
            m.swap(col, piv);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v = &*v / &p;
            }
            let pivot_row = m[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (v, p) in row.iter_mut().zip(&pivot_row) {
                        *v -= p * &f;
                    }
                }
            }
        }
        RatPolynomial::new(m.into_iter().map(|row| row[n].clone()).collect())
    }

    #[test]
    fn interpolate_examples() {
        let s = Sample::from_pairs(&[(0, 0), (1, 1)]).unwrap();
        assert_eq!(interpolate(&s), rpoly(&[(0, 1), (1, 1)]));

        let s = Sample::from_pairs(&[(-1, 0), (0, 0), (1, 1)]).unwrap();
        let p = interpolate(&s);
        assert_eq!(p, rpoly(&[(0, 1), (1, 2), (1, 2)]));
        assert_eq!(p.to_string(), "(x^2+x)/2");

        let s = Sample::from_pairs(&[(-2, 2), (0, 0), (2, 2)]).unwrap();
        assert_eq!(interpolate(&s), rpoly(&[(0, 1), (0, 1), (1, 2)]));

        let pts = [(0, 1), (1, 2), (2, 5)];
        let s = Sample::from_pairs(&pts).unwrap();
        let oracle = vandermonde_solve(&pts);
        assert_eq!(oracle, rpoly(&[(1, 1), (0, 1), (1, 1)]));
        assert_eq!(interpolate(&s), oracle);
    }

    #[test]
    fn sample_rejects_duplicates_and_empty() {
        assert!(matches!(Sample::from_pairs(&[(1, 0), (1, 2)]), Err(LipError::InvalidSample(_))));
        assert!(Sample::from_pairs(&[]).is_err());
        let s = Sample::from_pairs(&[(3, 0), (-1, 2)]).unwrap();
        assert_eq!(s.points()[0].0, int(-1));
    }

    #[test]
    fn integrality() {
        assert!(is_integer(&rpoly(&[(0, 1), (1, 2), (1, 2)])).is_none());
        assert_eq!(is_integer(&rpoly(&[(1, 1), (0, 1), (1, 1)])), Some(IntPolynomial::from_i64s(&[1, 0, 1])));
        assert_eq!(is_integer(&RatPolynomial::zero()), Some(IntPolynomial::zero()));
    }

    #[test]
    fn evaluation() {
        let tri = rpoly(&[(0, 1), (1, 2), (1, 2)]);
        assert_eq!(tri.eval(&int(3)), rat(6, 1));
        assert_eq!(IntPolynomial::from_i64s(&[1, 0, 1]).eval(&int(-2)), int(5));
        assert_eq!(IntPolynomial::zero().eval(&int(1_000_000)), int(0));
    }

    #[test]
    fn composition() {
        let sq = IntPolynomial::from_i64s(&[0, 0, 1]);
        let succ = IntPolynomial::from_i64s(&[1, 1]);
        assert_eq!(compose(&sq, &succ), IntPolynomial::from_i64s(&[1, 2, 1]));
        assert_eq!(compose(&succ, &sq), IntPolynomial::from_i64s(&[1, 0, 1]));
        let p = IntPolynomial::from_i64s(&[3, -1, 0, 7]);
        assert_eq!(compose(&p, &IntPolynomial::x()), p);
    }

    #[test]
    fn discrete_derivatives() {
        let sq = IntPolynomial::from_i64s(&[0, 0, 1]);
        assert_eq!(discrete_derivative(&sq), IntPolynomial::from_i64s(&[-1, 2]));
        assert!(discrete_derivative(&IntPolynomial::constant(int(9))).is_zero());

        let tri = Sample::from_pairs(&[(0, 0), (1, 1), (2, 3), (3, 6)]).unwrap();
        assert_eq!(discrete_derivative_sample(&tri).unwrap(), Sample::from_pairs(&[(1, 1), (2, 2), (3, 3)]).unwrap());
        let gappy = Sample::from_pairs(&[(0, 0), (2, 1), (4, 0)]).unwrap();
        assert_eq!(discrete_derivative_sample(&gappy), Err(LipError::NoConsecutivePair));
    }

    #[test]
    fn iterated_delta() {
        let sq = Sample::from_pairs(&[(0, 0), (1, 1), (2, 4)]).unwrap();
        assert_eq!(iterated_delta_top(&sq).unwrap(), int(2));
        let lin = Sample::from_pairs(&[(5, 5), (6, 6)]).unwrap();
        assert_eq!(iterated_delta_top(&lin).unwrap(), int(1));
        let c = Sample::from_pairs(&[(0, 7)]).unwrap();
        assert_eq!(iterated_delta_top(&c).unwrap(), int(7));
        let bad = Sample::from_pairs(&[(0, 0), (2, 4)]).unwrap();
        assert_eq!(iterated_delta_top(&bad), Err(LipError::NotConsecutive));
    }

    #[test]
    fn degree_marker() {
        assert_eq!(IntPolynomial::zero().degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
        assert_eq!(IntPolynomial::from_i64s(&[1, 0, 0]).degree(), Degree::Finite(0));
    }

    #[test]
    fn display() {
        assert_eq!(IntPolynomial::from_i64s(&[1, -2, 1]).to_string(), "x^2-2x+1");
        assert_eq!(IntPolynomial::from_i64s(&[0, 0, -1]).to_string(), "-x^2");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(rpoly(&[(0, 1), (0, 1), (1, 2)]).to_string(), "(x^2)/2");
    }

    #[test]
    fn json_shape() {
        let p = rpoly(&[(1, 2), (-3, 1)]);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"{"coeffs":["1/2","-3"]}"#);
        assert_eq!(serde_json::from_str::<RatPolynomial>(&js).unwrap(), p);
        let q = IntPolynomial::from_i64s(&[0, 5]);
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"{"coeffs":["0","5"]}"#);
    }
}
