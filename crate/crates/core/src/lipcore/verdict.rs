//! Consistency verdicts for finite samples and their certificates.
//!
//! A sample is LIP-consistent exactly when its full interpolant is integral:
//! an integral interpolant makes every sub-interpolant integral, and the
//! converse is the case `Y = X`. When it fails, a circuit (a minimal set with
//! non-integral interpolant) is extracted as the certificate.

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LipError, Result};
use crate::exactpoly::{divided_differences, interpolant_is_integer, interpolate_points, IntPolynomial, Sample};
use crate::numeric::{serde_str, Integer, Rational};

/// A minimal obstruction: the interpolant on `elements` is not integral but
/// every one-point deletion is.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Circuit {
    #[serde(with = "serde_str::integer_vec")]
    pub elements: Vec<Integer>,
    /// Coefficient of `x^{|X|-1}` in the interpolant on `elements`.
    #[serde(with = "serde_str::rational")]
    pub leading_coeff: Rational,
    /// Denominator of `leading_coeff` in lowest terms.
    #[serde(with = "serde_str::integer")]
    pub denominator: Integer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum LipVerdict {
    Consistent { witness: IntPolynomial },
    Inconsistent { circuit: Circuit },
}

impl LipVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, LipVerdict::Consistent { .. })
    }

    pub fn circuit(&self) -> Option<&Circuit> {
        match self {
            LipVerdict::Inconsistent { circuit } => Some(circuit),
            LipVerdict::Consistent { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&IntPolynomial> {
        match self {
            LipVerdict::Consistent { witness } => Some(witness),
            LipVerdict::Inconsistent { .. } => None,
        }
    }
}

/// First pair `(x1, x2)`, `x1 < x2`, in lexicographic order with
/// `x1 - x2` not dividing `f(x1) - f(x2)`; `None` when every pair passes.
pub fn pairwise_divisibility_check(s: &Sample) -> Option<(Integer, Integer)> {
    let pts = s.points();
    for (i, (x1, y1)) in pts.iter().enumerate() {
        for (x2, y2) in &pts[i + 1..] {
            if !(y2 - y1).is_multiple_of(&(x2 - x1)) {
                return Some((x1.clone(), x2.clone()));
            }
        }
    }
    None
}

pub fn lip_check(s: &Sample) -> LipVerdict {
    lip_check_points(s.points())
}

/// [`lip_check`] on sorted, distinct points; an empty set is vacuously
/// consistent with witness `0`.
pub(crate) fn lip_check_points(points: &[(Integer, Integer)]) -> LipVerdict {
    match interpolate_points(points).to_integer() {
        Some(witness) => LipVerdict::Consistent { witness },
        None => LipVerdict::Inconsistent { circuit: shrink_to_circuit(points.to_vec()) },
    }
}

/// Greedy shrink in ascending `x`: a point whose deletion keeps the
/// interpolant non-integral is deleted. A point whose deletion restores
/// integrality stays non-deletable in every smaller superset of it, so one
/// ascending pass reaches a circuit.
fn shrink_to_circuit(mut current: Vec<(Integer, Integer)>) -> Circuit {
    let mut i = 0;
    while i < current.len() {
        let mut candidate = current.clone();
        candidate.remove(i);
        if interpolant_is_integer(&candidate) {
            i += 1;
        } else {
            current = candidate;
        }
    }
    circuit_from_points(&current)
}

fn circuit_from_points(points: &[(Integer, Integer)]) -> Circuit {
    let leading_coeff = divided_differences(points).pop().unwrap_or_else(Rational::zero);
    Circuit {
        elements: points.iter().map(|(x, _)| x.clone()).collect(),
        denominator: leading_coeff.denom().clone(),
        leading_coeff,
    }
}

/// Extracts a circuit from a sample whose interpolant is not integral.
pub fn find_circuit(s: &Sample) -> Result<Circuit> {
    if interpolant_is_integer(s.points()) {
        return Err(LipError::Precondition("sample is LIP-consistent; it has no circuit".into()));
    }
    Ok(shrink_to_circuit(s.points().to_vec()))
}

/// Checks every circuit invariant of `c` against the values in `s`:
/// non-integral leading coefficient equal to the claimed one, matching
/// denominator `d >= 2`, all elements congruent modulo `d`, and minimality.
pub fn validate_circuit(c: &Circuit, s: &Sample) -> Result<bool> {
    let mut elements = c.elements.clone();
    elements.sort();
    elements.dedup();
    if elements.len() != c.elements.len() || elements.is_empty() {
        return Ok(false);
    }
    let sub = s.restrict(&elements)?;
    let pts = sub.points();

    let top = divided_differences(pts).pop().expect("nonempty");
    if top != c.leading_coeff || top.is_integer() {
        return Ok(false);
    }
    if c.denominator != *top.denom() || c.denominator <= Integer::one() {
        return Ok(false);
    }
    let r0 = elements[0].mod_floor(&c.denominator);
    if elements.iter().any(|x| x.mod_floor(&c.denominator) != r0) {
        return Ok(false);
    }
    let minimal = (0..pts.len()).all(|i| {
        let mut rest = pts.to_vec();
        rest.remove(i);
        interpolant_is_integer(&rest)
    });
    Ok(minimal)
}

/// Verifies `f_{X+a} - f_{X+b} = c (a - b) prod_{z in X} (x - z)` exactly, where
/// `c` is the coefficient of `x^{|X|+1}` in `f_{X+a+b}`.
pub fn exchange_identity_check(s: &Sample, set: &[Integer], a: &Integer, b: &Integer) -> Result<bool> {
    if a == b {
        return Err(LipError::Precondition("a and b must differ".into()));
    }
    if set.contains(a) || set.contains(b) {
        return Err(LipError::Precondition("a and b must lie outside X".into()));
    }
    let mut base = set.to_vec();
    base.sort();
    if base.windows(2).any(|w| w[0] == w[1]) {
        return Err(LipError::Precondition("X has repeated elements".into()));
    }
    let with = |extra: &[&Integer]| -> Result<Vec<(Integer, Integer)>> {
        let xs: Vec<Integer> = base.iter().chain(extra.iter().copied()).cloned().collect();
        Ok(s.restrict(&xs)?.points().to_vec())
    };
    let fa = interpolate_points(&with(&[a])?);
    let fb = interpolate_points(&with(&[b])?);
    let fab = interpolate_points(&with(&[a, b])?);
    let c = fab.coeff(base.len() + 1);

    let prod = IntPolynomial::from_roots(&base).to_rational();
    let rhs = prod.scale(&(c * Rational::from_integer(a - b)));
    Ok(fa.sub(&fb) == rhs)
}
