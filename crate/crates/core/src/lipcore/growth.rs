//! Growth bounds: the tau-driven construction sequence, the `d!/2^d` floor for
//! integer polynomials, and the factorial threshold beyond which a LIP
//! function on ℤ must be a polynomial.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{LipError, Result};
use crate::exactpoly::{Degree, IntPolynomial};
use crate::numeric::{factorial, int, Integer, Rational};

/// `c_1 = 1`, and each `c_{k+1}` is the least integer `> c_k` with
/// `tau(c_{k+1} - 1) > 4 c_k + 4`. Candidates above `search_bound` are not
/// tried.
pub fn tau_sequence(tau: impl Fn(&Integer) -> Integer, count: usize, search_bound: u64) -> Result<Vec<Integer>> {
    let mut seq = Vec::with_capacity(count);
    if count == 0 {
        return Ok(seq);
    }
    seq.push(Integer::one());
    let bound = Integer::from(search_bound);
    while seq.len() < count {
        let prev = seq.last().expect("nonempty").clone();
        let target = &prev * 4 + 4;
        let mut c = &prev + 1;
        loop {
            if c > bound {
                return Err(LipError::SearchExhausted { index: seq.len() + 1, bound: search_bound });
            }
            if tau(&(&c - 1)) > target {
                break;
            }
            c += 1;
        }
        seq.push(c);
    }
    Ok(seq)
}

/// Result of [`growth_floor_check`]: the largest `|p(x)|` over
/// `x in {0, ..., d}`, where it is attained, and the floor `d!/2^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthFloor {
    pub holds: bool,
    pub x: Integer,
    pub value: Integer,
    pub floor: Rational,
}

pub fn growth_floor_check(p: &IntPolynomial) -> Result<GrowthFloor> {
    let Degree::Finite(d) = p.degree() else {
        return Err(LipError::ZeroPolynomial);
    };
    let floor = Rational::new(factorial(d as u64), Integer::one() << d);
    let (x, value) = (0..=d as i64)
        .map(|x| (int(x), p.eval(&int(x)).abs()))
        .fold(None::<(Integer, Integer)>, |best, cur| match best {
            Some(b) if b.1 >= cur.1 => Some(b),
            _ => Some(cur),
        })
        .expect("at least one point");
    let holds = Rational::from_integer(value.clone()) >= floor;
    Ok(GrowthFloor { holds, x, value, floor })
}

/// `(2|x| - 1)! / 2^(2|x| - 1)` for `x != 0`.
pub fn factorial_threshold(x: &Integer) -> Result<Rational> {
    if x.is_zero() {
        return Err(LipError::Domain { x: x.clone(), reason: "threshold needs |x| >= 1".into() });
    }
    let n = (x.abs() * int(2) - int(1))
        .to_u64()
        .ok_or_else(|| LipError::Domain { x: x.clone(), reason: "too large".into() })?;
    Ok(Rational::new(factorial(n), Integer::one() << n))
}

/// `(2|x| - 1)!`, with the value `0` at `x = 0`.
pub fn example1_bound(x: &Integer) -> Result<Integer> {
    if x.is_zero() {
        return Ok(Integer::zero());
    }
    let n = (x.abs() * int(2) - int(1))
        .to_u64()
        .ok_or_else(|| LipError::Domain { x: x.clone(), reason: "too large".into() })?;
    Ok(factorial(n))
}
