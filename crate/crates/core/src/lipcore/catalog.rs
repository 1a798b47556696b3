//! Function specifications: explicit polynomials, Newton series, raw samples,
//! and the named families (the alternating factorial series, the
//! chain products `f_m`, the tau-growth series, and the two half-integer
//! polynomials used as non-LIP references).

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::newton::{newton_eval, standard_position, Enumeration, NewtonSeries};
use crate::error::{LipError, Result};
use crate::exactpoly::{IntPolynomial, Sample};
use crate::numeric::{int, serde_str, Integer};

/// Default hard cap on the number of series terms or product factors.
pub const DEFAULT_CAP_TERMS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigmaSpec {
    /// `0, 1, -1, 2, -2, ...`
    StandardIntegers,
    /// `1, 2, 3, ...`
    Naturals,
    Explicit(Enumeration),
}

impl SigmaSpec {
    fn position(&self, x: &Integer) -> Result<Integer> {
        match self {
            SigmaSpec::StandardIntegers => Ok(standard_position(x)),
            SigmaSpec::Naturals if x.is_positive() => Ok(x.clone()),
            SigmaSpec::Naturals => Err(LipError::Domain { x: x.clone(), reason: "not a natural number".into() }),
            SigmaSpec::Explicit(e) => e
                .position(x)
                .map(Integer::from)
                .ok_or_else(|| LipError::Domain { x: x.clone(), reason: "not in the enumeration prefix".into() }),
        }
    }

    fn sigma(&self, k: usize) -> Integer {
        match self {
            SigmaSpec::StandardIntegers => super::newton::standard_sigma(k as u64),
            SigmaSpec::Naturals => Integer::from(k),
            SigmaSpec::Explicit(e) => e.prefix()[k - 1].clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogEntry {
    /// `sum_{i>=0} (-1)^i prod_{|j|<=i} (x - j)`.
    Example1,
    /// `f_m(x) = prod_{k>=m} (1 + prod_{i=1}^{k} (x - sigma(i)))`.
    ChainProduct { m: Integer, sigma: SigmaSpec },
    /// `sum_{i>=1} prod_{|j|<=c_i} (x - j)` for a strictly increasing `c`.
    TauConstruction { c: Vec<Integer> },
    /// `x(x+1)/2`.
    Triangular,
    /// `x^2/2`, defined on even `x`.
    HalfSquare,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub enum FunctionSpec {
    Poly(IntPolynomial),
    Newton(NewtonSeries),
    Catalog(CatalogEntry),
    Explicit(Sample),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SpecRepr {
    Poly {
        #[serde(with = "serde_str::integer_vec")]
        coeffs: Vec<Integer>,
    },
    Newton {
        sigma: Enumeration,
        #[serde(with = "serde_str::integer_vec")]
        coeffs: Vec<Integer>,
    },
    Catalog(CatalogRepr),
    Sample {
        #[serde(with = "serde_str::point_vec")]
        points: Vec<(Integer, Integer)>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
enum CatalogRepr {
    Example1,
    Chain {
        #[serde(with = "serde_str::integer")]
        m: Integer,
        #[serde(default = "standard_sigma_repr")]
        sigma: SigmaRepr,
    },
    Tau {
        #[serde(with = "serde_str::integer_vec")]
        c: Vec<Integer>,
    },
    Triangular,
    Halfsquare,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SigmaRepr {
    Named(String),
    List(Enumeration),
}

fn standard_sigma_repr() -> SigmaRepr {
    SigmaRepr::Named("standard".into())
}

impl TryFrom<SpecRepr> for FunctionSpec {
    type Error = LipError;

    fn try_from(r: SpecRepr) -> Result<Self> {
        Ok(match r {
            SpecRepr::Poly { coeffs } => FunctionSpec::Poly(IntPolynomial::new(coeffs)),
            SpecRepr::Newton { sigma, coeffs } => FunctionSpec::Newton(NewtonSeries::new(sigma, coeffs)?),
            SpecRepr::Sample { points } => FunctionSpec::Explicit(Sample::new(points)?),
            SpecRepr::Catalog(c) => FunctionSpec::Catalog(match c {
                CatalogRepr::Example1 => CatalogEntry::Example1,
                CatalogRepr::Triangular => CatalogEntry::Triangular,
                CatalogRepr::Halfsquare => CatalogEntry::HalfSquare,
                CatalogRepr::Tau { c } => CatalogEntry::tau(c)?,
                CatalogRepr::Chain { m, sigma } => {
                    let sigma = match sigma {
                        SigmaRepr::Named(n) if n == "standard" => SigmaSpec::StandardIntegers,
                        SigmaRepr::Named(n) if n == "naturals" => SigmaSpec::Naturals,
                        SigmaRepr::Named(n) => return Err(LipError::Input(format!("unknown enumeration {n:?}"))),
                        SigmaRepr::List(e) => SigmaSpec::Explicit(e),
                    };
                    CatalogEntry::chain(m, sigma)?
                }
            }),
        })
    }
}

impl From<FunctionSpec> for SpecRepr {
    fn from(f: FunctionSpec) -> Self {
        match f {
            FunctionSpec::Poly(p) => SpecRepr::Poly { coeffs: p.coeffs().to_vec() },
            FunctionSpec::Newton(ns) => SpecRepr::Newton { sigma: ns.enumeration, coeffs: ns.coeffs },
            FunctionSpec::Explicit(s) => SpecRepr::Sample { points: s.points().to_vec() },
            FunctionSpec::Catalog(c) => SpecRepr::Catalog(match c {
                CatalogEntry::Example1 => CatalogRepr::Example1,
                CatalogEntry::Triangular => CatalogRepr::Triangular,
                CatalogEntry::HalfSquare => CatalogRepr::Halfsquare,
                CatalogEntry::TauConstruction { c } => CatalogRepr::Tau { c },
                CatalogEntry::ChainProduct { m, sigma } => CatalogRepr::Chain {
                    m,
                    sigma: match sigma {
                        SigmaSpec::StandardIntegers => SigmaRepr::Named("standard".into()),
                        SigmaSpec::Naturals => SigmaRepr::Named("naturals".into()),
                        SigmaSpec::Explicit(e) => SigmaRepr::List(e),
                    },
                },
            }),
        }
    }
}

impl CatalogEntry {
    pub fn chain(m: Integer, sigma: SigmaSpec) -> Result<Self> {
        if m < Integer::one() {
            return Err(LipError::Precondition("chain index m must be >= 1".into()));
        }
        Ok(CatalogEntry::ChainProduct { m, sigma })
    }

    pub fn tau(c: Vec<Integer>) -> Result<Self> {
        if c.first().is_some_and(|c1| !c1.is_positive()) || c.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LipError::Precondition("c-sequence must be positive and strictly increasing".into()));
        }
        Ok(CatalogEntry::TauConstruction { c })
    }
}

fn terms_needed(n: &Integer, cap: usize) -> Result<usize> {
    n.to_usize().filter(|&k| k <= cap).ok_or(LipError::TruncationCap { cap })
}

/// `prod_{|j|<=c} (x - j)`.
fn symmetric_product(x: &Integer, c: &Integer) -> Integer {
    let mut prod = Integer::one();
    let mut j = -c.clone();
    while &j <= c {
        prod *= x - &j;
        if prod.is_zero() {
            break;
        }
        j += 1;
    }
    prod
}

fn example1(x: &Integer, cap: usize) -> Result<Integer> {
    // terms with i >= |x| contain the factor (x - x)
    let n = terms_needed(&x.abs(), cap)?;
    let mut total = Integer::zero();
    // prod_{|j|<=i} (x - j) built incrementally from i = 0
    let mut prod = x.clone();
    for i in 0..n {
        if i > 0 {
            let i = int(i as i64);
            prod = prod * (x - &i) * (x + &i);
        }
        if i % 2 == 0 {
            total += &prod;
        } else {
            total -= &prod;
        }
    }
    Ok(total)
}

fn chain_product(x: &Integer, m: &Integer, sigma: &SigmaSpec, cap: usize) -> Result<Integer> {
    // inner products vanish from k = position(x) on, making those factors 1
    let last = sigma.position(x)? - 1;
    let last = terms_needed(&last, cap)?;
    let m = m.to_usize().unwrap_or(usize::MAX);
    let mut inner = Integer::one();
    let mut total = Integer::one();
    for k in 1..=last {
        inner *= x - sigma.sigma(k);
        if k >= m {
            total *= Integer::one() + &inner;
        }
    }
    Ok(total)
}

fn tau_series(x: &Integer, c: &[Integer], cap: usize) -> Result<Integer> {
    let ax = x.abs();
    let Some(stop) = c.iter().position(|ci| ci >= &ax) else {
        return Err(LipError::Domain { x: x.clone(), reason: "beyond the last term of the c-sequence".into() });
    };
    if stop > cap {
        return Err(LipError::TruncationCap { cap });
    }
    Ok(c[..stop].iter().map(|ci| symmetric_product(x, ci)).sum())
}

/// Exact value of `spec` at `x` with the default term cap.
pub fn catalog_eval(spec: &FunctionSpec, x: &Integer) -> Result<Integer> {
    catalog_eval_capped(spec, x, DEFAULT_CAP_TERMS)
}

pub fn catalog_eval_capped(spec: &FunctionSpec, x: &Integer, cap: usize) -> Result<Integer> {
    match spec {
        FunctionSpec::Poly(p) => Ok(p.eval(x)),
        FunctionSpec::Newton(ns) => Ok(newton_eval(ns, x)),
        FunctionSpec::Explicit(s) => {
            s.get(x).cloned().ok_or_else(|| LipError::Domain { x: x.clone(), reason: "not a sample point".into() })
        }
        FunctionSpec::Catalog(entry) => match entry {
            CatalogEntry::Example1 => example1(x, cap),
            CatalogEntry::ChainProduct { m, sigma } => chain_product(x, m, sigma, cap),
            CatalogEntry::TauConstruction { c } => tau_series(x, c, cap),
            CatalogEntry::Triangular => Ok(x * (x + 1) / 2),
            CatalogEntry::HalfSquare if x.is_even() => Ok(x * x / 2),
            CatalogEntry::HalfSquare => {
                Err(LipError::Domain { x: x.clone(), reason: "x^2/2 is only integral at even x".into() })
            }
        },
    }
}

impl FunctionSpec {
    pub fn eval(&self, x: &Integer) -> Result<Integer> {
        catalog_eval(self, x)
    }

    pub fn example1() -> Self {
        FunctionSpec::Catalog(CatalogEntry::Example1)
    }

    pub fn triangular() -> Self {
        FunctionSpec::Catalog(CatalogEntry::Triangular)
    }

    pub fn half_square() -> Self {
        FunctionSpec::Catalog(CatalogEntry::HalfSquare)
    }

    /// Whether the function is a polynomial by construction.
    pub fn is_polynomial(&self) -> bool {
        matches!(self, FunctionSpec::Poly(_) | FunctionSpec::Newton(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(spec: &FunctionSpec, x: i64) -> Integer {
        catalog_eval(spec, &int(x)).unwrap()
    }

    /// Direct summation of the defining series, with no early stop.
    fn alternating_direct(x: i64) -> i64 {
        (0..=x.abs() + 2)
            .map(|i| {
                let p: i64 = (-i..=i).map(|j| x - j).product();
                if i % 2 == 0 {
                    p
                } else {
                    -p
                }
            })
            .sum()
    }

    #[test]
    fn alternating_series_values() {
        let f = FunctionSpec::example1();
        assert_eq!(ev(&f, 0), int(0));
        assert_eq!(ev(&f, 2), int(-4));
        assert_eq!(ev(&f, -2), int(4));
        for x in -6..=6 {
            assert_eq!(ev(&f, x), int(alternating_direct(x)), "x = {x}");
        }
    }

    #[test]
    fn chain_values() {
        let f1 = FunctionSpec::Catalog(CatalogEntry::chain(int(1), SigmaSpec::StandardIntegers).unwrap());
        let f2 = FunctionSpec::Catalog(CatalogEntry::chain(int(2), SigmaSpec::StandardIntegers).unwrap());
        assert_eq!(ev(&f1, 0), int(1));
        assert_eq!(ev(&f1, 1), int(2));
        assert_eq!(ev(&f2, 1), int(1));
        // at x = -1 (position 3): factors k = 1, 2 are 1 + (-1) and 1 + (-1)(-2)
        assert_eq!(ev(&f1, -1), int(0));
        assert_eq!(ev(&f2, -1), int(3));
        assert!(CatalogEntry::chain(int(0), SigmaSpec::Naturals).is_err());
        let nat = FunctionSpec::Catalog(CatalogEntry::chain(int(1), SigmaSpec::Naturals).unwrap());
        assert!(matches!(catalog_eval(&nat, &int(0)), Err(LipError::Domain { .. })));
    }

    #[test]
    fn tau_values() {
        let f = FunctionSpec::Catalog(CatalogEntry::tau(vec![int(1), int(10), int(46)]).unwrap());
        assert_eq!(ev(&f, 9), int(720));
        assert_eq!(ev(&f, 1), int(0));
        assert!(matches!(catalog_eval(&f, &int(47)), Err(LipError::Domain { .. })));
        assert!(CatalogEntry::tau(vec![int(3), int(3)]).is_err());
    }

    #[test]
    fn half_integer_references() {
        assert_eq!(ev(&FunctionSpec::triangular(), 3), int(6));
        assert_eq!(ev(&FunctionSpec::triangular(), -4), int(6));
        assert_eq!(ev(&FunctionSpec::half_square(), -4), int(8));
        assert!(catalog_eval(&FunctionSpec::half_square(), &int(3)).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let f = FunctionSpec::example1();
        assert_eq!(catalog_eval_capped(&f, &int(50), 10), Err(LipError::TruncationCap { cap: 10 }));
    }

    #[test]
    fn json_round_trip() {
        let cases = [
            r#"{"kind":"poly","coeffs":["1","0","1"]}"#,
            r#"{"kind":"newton","sigma":["0","1"],"coeffs":["2","3"]}"#,
            r#"{"kind":"catalog","name":"example1"}"#,
            r#"{"kind":"catalog","name":"chain","m":"2","sigma":"standard"}"#,
            r#"{"kind":"catalog","name":"chain","m":"1","sigma":["5","7"]}"#,
            r#"{"kind":"catalog","name":"tau","c":["1","10","46"]}"#,
            r#"{"kind":"catalog","name":"triangular"}"#,
            r#"{"kind":"catalog","name":"halfsquare"}"#,
            r#"{"kind":"sample","points":[["0","0"],["2","1"]]}"#,
        ];
        for js in cases {
            let spec: FunctionSpec = serde_json::from_str(js).unwrap();
            assert_eq!(serde_json::to_string(&spec).unwrap(), js);
        }
        let chain: FunctionSpec = serde_json::from_str(r#"{"kind":"catalog","name":"chain","m":"1"}"#).unwrap();
        assert_eq!(
            chain,
            FunctionSpec::Catalog(CatalogEntry::ChainProduct { m: int(1), sigma: SigmaSpec::StandardIntegers })
        );
        assert!(serde_json::from_str::<FunctionSpec>(r#"{"kind":"catalog","name":"nope"}"#).is_err());
    }
}
