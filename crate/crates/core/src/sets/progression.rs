use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{LipError, Result};
use crate::numeric::{crt_pair, mod_floor, serde_str, Integer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProgressionDomain {
    /// `a + dℤ_{>=0}`
    NonnegIndexed,
    /// `a + dℤ`
    TwoSided,
}

/// An arithmetic progression with positive step. A nonneg-indexed progression
/// keeps its least element as `first`; a two-sided one is normalized so that
/// `0 <= first < step`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Progression {
    #[serde(with = "serde_str::integer")]
    first: Integer,
    #[serde(with = "serde_str::integer")]
    step: Integer,
    domain: ProgressionDomain,
}

impl Progression {
    pub fn nonneg(first: Integer, step: Integer) -> Result<Self> {
        if !step.is_positive() {
            return Err(LipError::Precondition(format!("progression step {step} must be >= 1")));
        }
        Ok(Progression { first, step, domain: ProgressionDomain::NonnegIndexed })
    }

    pub fn two_sided(first: Integer, step: Integer) -> Result<Self> {
        if !step.is_positive() {
            return Err(LipError::Precondition(format!("progression step {step} must be >= 1")));
        }
        Ok(Progression { first: mod_floor(&first, &step), step, domain: ProgressionDomain::TwoSided })
    }

    /// `a + (b - a)ℤ`, two-sided; `a != b`.
    pub fn generated_by(a: &Integer, b: &Integer) -> Result<Self> {
        if a == b {
            return Err(LipError::Precondition("a progression needs two distinct points".into()));
        }
        Self::two_sided(a.clone(), (b - a).abs())
    }

    pub fn first(&self) -> &Integer {
        &self.first
    }

    pub fn step(&self) -> &Integer {
        &self.step
    }

    pub fn domain(&self) -> ProgressionDomain {
        self.domain
    }

    pub fn is_two_sided(&self) -> bool {
        self.domain == ProgressionDomain::TwoSided
    }

    pub fn contains(&self, x: &Integer) -> bool {
        let on_class = (x - &self.first).is_multiple_of(&self.step);
        on_class && (self.is_two_sided() || x >= &self.first)
    }

    /// Least element `>= lo`.
    pub fn first_at_least(&self, lo: &Integer) -> Integer {
        let lo = if self.is_two_sided() { lo.clone() } else { lo.max(&self.first).clone() };
        &lo + mod_floor(&(&self.first - &lo), &self.step)
    }

    /// Elements in `[lo, hi]`, ascending.
    pub fn elements_in<'a>(&'a self, lo: &Integer, hi: &'a Integer) -> impl Iterator<Item = Integer> + 'a {
        let start = self.first_at_least(lo);
        std::iter::successors(Some(start), move |x| Some(x + &self.step)).take_while(move |x| x <= hi)
    }
}

impl fmt::Display for Progression {
    /// Uses the set-expression atom syntax: `ap(a,d)` or `apz(a,d)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.domain {
            ProgressionDomain::NonnegIndexed => write!(f, "ap({},{})", self.first, self.step),
            ProgressionDomain::TwoSided => write!(f, "apz({},{})", self.first, self.step),
        }
    }
}

/// Intersection of two progressions; `None` when `gcd(d1, d2)` does not divide
/// `a1 - a2`. The result has step `lcm(d1, d2)`; it is two-sided only when both
/// inputs are, and otherwise starts at its least element.
pub fn ap_intersect(p1: &Progression, p2: &Progression) -> Option<Progression> {
    let (r, l) = crt_pair(&mod_floor(&p1.first, &p1.step), &p1.step, &mod_floor(&p2.first, &p2.step), &p2.step)?;
    let lower = match (p1.domain, p2.domain) {
        (ProgressionDomain::TwoSided, ProgressionDomain::TwoSided) => {
            return Some(Progression { first: r, step: l, domain: ProgressionDomain::TwoSided });
        }
        (ProgressionDomain::TwoSided, _) => p2.first.clone(),
        (_, ProgressionDomain::TwoSided) => p1.first.clone(),
        _ => p1.first.clone().max(p2.first.clone()),
    };
    let first = &lower + mod_floor(&(&r - &lower), &l);
    Some(Progression { first, step: l, domain: ProgressionDomain::NonnegIndexed })
}

/// An infinite progression inside `p1 ∩ p2 ∩ (a + (b - a)ℤ)` for `a in p1`,
/// `b in p2`, `a != b`, and intersecting `p1`, `p2`.
pub fn lemma8_common(p1: &Progression, a: &Integer, p2: &Progression, b: &Integer) -> Result<Progression> {
    if !p1.contains(a) || !p2.contains(b) {
        return Err(LipError::Precondition(format!("{a} must lie in {p1} and {b} in {p2}")));
    }
    let common =
        ap_intersect(p1, p2).ok_or_else(|| LipError::Precondition(format!("{p1} and {p2} do not intersect")))?;
    let generated = Progression::generated_by(a, b)?;
    ap_intersect(&common, &generated)
        .ok_or_else(|| LipError::Precondition(format!("{common} misses {generated}; inputs are inconsistent")))
}

impl Progression {
    pub(crate) fn naturals() -> Self {
        Progression { first: Integer::one(), step: Integer::one(), domain: ProgressionDomain::NonnegIndexed }
    }
}
