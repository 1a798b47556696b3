//! Integer helpers shared by the polynomial, continuation and set modules:
//! gcd/lcm, extended Euclid, CRT for arbitrary moduli, factorials, and the
//! trial-division predicates (primality, squarefreeness).

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision integer.
pub type Integer = BigInt;
/// Exact rational in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

/// gcd with the convention gcd(0, n) = |n|; always nonnegative.
pub fn gcd(a: &Integer, b: &Integer) -> Integer {
    a.gcd(b)
}

pub fn lcm(a: &Integer, b: &Integer) -> Integer {
    if a.is_zero() || b.is_zero() {
        return Integer::zero();
    }
    a.lcm(b)
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
///
/// The pair is the one produced by the classical remainder sequence, so
/// `|s| <= |b|/g` and `|t| <= |a|/g` whenever both inputs are nonzero.
pub fn ext_gcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Integer::one(), Integer::zero());
    let (mut t0, mut t1) = (Integer::zero(), Integer::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Least nonnegative residue of `a` modulo `|m|`. `m` must be nonzero.
pub fn mod_floor(a: &Integer, m: &Integer) -> Integer {
    a.mod_floor(&m.abs())
}

/// Solves `x = r1 (mod m1)`, `x = r2 (mod m2)` for positive, not necessarily
/// coprime moduli. Returns `(x0, lcm)` with `0 <= x0 < lcm`, or `None` when the
/// system is incompatible.
pub fn crt_pair(r1: &Integer, m1: &Integer, r2: &Integer, m2: &Integer) -> Option<(Integer, Integer)> {
    debug_assert!(m1.is_positive() && m2.is_positive());
    let (g, s, _) = ext_gcd(m1, m2);
    let diff = r2 - r1;
    if !diff.is_multiple_of(&g) {
        return None;
    }
    let l = m1 / &g * m2;
    let step = m2 / &g;
    // x = r1 + m1 * k with k = s * diff / g (mod m2/g)
    let k = (s * (&diff / &g)).mod_floor(&step);
    let x = (r1 + m1 * k).mod_floor(&l);
    Some((x, l))
}

pub fn factorial(n: u64) -> Integer {
    (2..=n).fold(Integer::one(), |acc, k| acc * k)
}

/// Deterministic trial division. Intended for desk-scale inputs.
pub fn is_prime(n: &Integer) -> bool {
    if n < &int(2) {
        return false;
    }
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_even() {
        return false;
    }
    let mut d = int(3);
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Trial factorization up to sqrt(d); `d >= 1`.
pub fn is_squarefree(d: u64) -> bool {
    let mut n = d;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// Decimal-string (de)serialization for integers and rationals, so that JSON
/// never carries a lossy number.
pub mod serde_str {
    use super::{Integer, Rational};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn parse_integer(s: &str) -> Option<Integer> {
        let t = s.trim().replace('\u{2212}', "-");
        t.parse().ok()
    }

    pub fn parse_rational(s: &str) -> Option<Rational> {
        match s.split_once('/') {
            Some((n, d)) => {
                let n = parse_integer(n)?;
                let d = parse_integer(d)?;
                if num_traits::Zero::is_zero(&d) {
                    return None;
                }
                Some(Rational::new(n, d))
            }
            None => parse_integer(s).map(Rational::from_integer),
        }
    }

    pub mod integer {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Integer, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&v.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Integer, D::Error> {
            let s = String::deserialize(d)?;
            parse_integer(&s).ok_or_else(|| D::Error::custom(format!("bad integer {s:?}")))
        }
    }

    pub mod integer_vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Integer], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Integer>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter().map(|s| parse_integer(s).ok_or_else(|| D::Error::custom(format!("bad integer {s:?}")))).collect()
        }
    }

    pub mod integer_opt {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Integer>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.serialize_some(&v.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Integer>, D::Error> {
            let raw = Option::<String>::deserialize(d)?;
            raw.map(|s| parse_integer(&s).ok_or_else(|| D::Error::custom(format!("bad integer {s:?}")))).transpose()
        }
    }

    pub mod rational {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&v.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
            let s = String::deserialize(d)?;
            parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
        }
    }

    pub mod rational_vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
                .collect()
        }
    }

    /// `[[x, y], ...]` with both coordinates as decimal strings.
    pub mod point_vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[(Integer, Integer)], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for (x, y) in v {
                seq.serialize_element(&[x.to_string(), y.to_string()])?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(Integer, Integer)>, D::Error> {
            let raw = Vec::<[String; 2]>::deserialize(d)?;
            raw.iter()
                .map(|[x, y]| {
                    let x = parse_integer(x).ok_or_else(|| D::Error::custom(format!("bad integer {x:?}")))?;
                    let y = parse_integer(y).ok_or_else(|| D::Error::custom(format!("bad integer {y:?}")))?;
                    Ok((x, y))
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_bezout() {
        for (a, b) in [(240i64, 46i64), (-7, 3), (0, 5), (5, 0), (-4, -6), (17, 17)] {
            let (a, b) = (int(a), int(b));
            let (g, s, t) = ext_gcd(&a, &b);
            assert_eq!(&s * &a + &t * &b, g);
            assert_eq!(g, gcd(&a, &b));
        }
        assert_eq!(gcd(&int(0), &int(-9)), int(9));
    }

    #[test]
    fn crt_non_coprime() {
        assert_eq!(crt_pair(&int(1), &int(2), &int(2), &int(3)), Some((int(5), int(6))));
        assert_eq!(crt_pair(&int(3), &int(4), &int(7), &int(6)), Some((int(7), int(12))));
        assert_eq!(crt_pair(&int(0), &int(2), &int(1), &int(4)), None);
        assert_eq!(crt_pair(&int(0), &int(6), &int(2), &int(2)), Some((int(0), int(6))));
    }

    #[test]
    fn predicates() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(&int(1_000_003)));
        assert!(is_squarefree(1) && is_squarefree(6) && is_squarefree(30));
        assert!(!is_squarefree(4) && !is_squarefree(18) && !is_squarefree(49));
        assert_eq!(factorial(5), int(120));
    }
}
