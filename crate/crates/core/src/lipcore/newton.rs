//! Newton-series normal form of LIP functions along an enumeration of the
//! domain: `f(x) = sum_k a_k prod_{i<=k} (x - sigma(i))`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LipError, Result};
use crate::numeric::{int, serde_str, Integer, Rational};

/// A finite prefix `sigma(1), ..., sigma(n)` of an enumeration; entries are
/// pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Enumeration {
    prefix: Vec<Integer>,
}

impl TryFrom<Vec<String>> for Enumeration {
    type Error = LipError;

    fn try_from(v: Vec<String>) -> Result<Self> {
        let prefix = v
            .iter()
            .map(|s| serde_str::parse_integer(s).ok_or_else(|| LipError::Input(format!("bad integer {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Enumeration::new(prefix)
    }
}

impl From<Enumeration> for Vec<String> {
    fn from(e: Enumeration) -> Self {
        e.prefix.iter().map(ToString::to_string).collect()
    }
}

impl Enumeration {
    pub fn new(prefix: Vec<Integer>) -> Result<Self> {
        let mut sorted = prefix.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(LipError::Precondition(format!("enumeration repeats {}", w[0])));
        }
        Ok(Enumeration { prefix })
    }

    pub fn from_i64s(v: &[i64]) -> Result<Self> {
        Self::new(v.iter().map(|&x| int(x)).collect())
    }

    /// `0, 1, -1, 2, -2, ...`: `sigma(1) = 0`, `sigma(2k) = k`, `sigma(2k+1) = -k`.
    pub fn standard_integers(len: usize) -> Self {
        Enumeration { prefix: (1..=len as u64).map(standard_sigma).collect() }
    }

    /// `1, 2, 3, ...`.
    pub fn naturals(len: usize) -> Self {
        Enumeration { prefix: (1..=len as i64).map(int).collect() }
    }

    pub fn prefix(&self) -> &[Integer] {
        &self.prefix
    }

    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    /// 1-based position of `x` in the prefix.
    pub fn position(&self, x: &Integer) -> Option<usize> {
        self.prefix.iter().position(|p| p == x).map(|i| i + 1)
    }
}

/// `sigma(k)` of the standard enumeration of ℤ, `k >= 1`.
pub fn standard_sigma(k: u64) -> Integer {
    match k {
        1 => Integer::zero(),
        k if k % 2 == 0 => Integer::from(k / 2),
        k => -Integer::from((k - 1) / 2),
    }
}

/// 1-based position of `x` in the standard enumeration of ℤ.
pub fn standard_position(x: &Integer) -> Integer {
    if x.is_zero() {
        Integer::one()
    } else if x.is_positive() {
        x * 2
    } else {
        -x * 2 + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NewtonSeries {
    pub enumeration: Enumeration,
    #[serde(with = "serde_str::integer_vec")]
    pub coeffs: Vec<Integer>,
}

impl NewtonSeries {
    pub fn new(enumeration: Enumeration, coeffs: Vec<Integer>) -> Result<Self> {
        if enumeration.len() != coeffs.len() {
            return Err(LipError::LengthMismatch { expected: enumeration.len(), found: coeffs.len() });
        }
        Ok(NewtonSeries { enumeration, coeffs })
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        newton_eval(self, x)
    }
}

/// Outcome of [`newton_decompose`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Decomposition {
    Integral {
        series: NewtonSeries,
    },
    /// The first coefficient that is not an integer, with its exact value.
    NonIntegral {
        index: usize,
        #[serde(with = "serde_str::rational")]
        coefficient: Rational,
    },
}

/// Runs the coefficient recursion
/// `a_{n-1} = (f(m) - f_{n-1}(m)) / prod_{i<n} (m - sigma(i))`, `m = sigma(n)`.
pub fn newton_decompose(enumeration: &Enumeration, values: &[Integer]) -> Result<Decomposition> {
    if enumeration.len() != values.len() {
        return Err(LipError::LengthMismatch { expected: enumeration.len(), found: values.len() });
    }
    let nodes = enumeration.prefix();
    let mut coeffs: Vec<Integer> = Vec::with_capacity(nodes.len());
    for (n, (m, fm)) in nodes.iter().zip(values).enumerate() {
        // partial sum f_n(m) and the node product, accumulated together
        let mut partial = Integer::zero();
        let mut prod = Integer::one();
        for (k, a) in coeffs.iter().enumerate() {
            partial += a * &prod;
            prod *= m - &nodes[k];
        }
        debug_assert_eq!(coeffs.len(), n);
        let a = Rational::new(fm - partial, prod);
        if !a.is_integer() {
            return Ok(Decomposition::NonIntegral { index: n, coefficient: a });
        }
        coeffs.push(a.to_integer());
    }
    Ok(Decomposition::Integral { series: NewtonSeries { enumeration: enumeration.clone(), coeffs } })
}

/// Exact value of the truncated series; the products vanish from the
/// position of `x` onward when `x` is enumerated.
pub fn newton_eval(ns: &NewtonSeries, x: &Integer) -> Integer {
    let mut total = Integer::zero();
    let mut prod = Integer::one();
    for (a, s) in ns.coeffs.iter().zip(ns.enumeration.prefix()) {
        total += a * &prod;
        prod *= x - s;
        if prod.is_zero() {
            break;
        }
    }
    total
}
