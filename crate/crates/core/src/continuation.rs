//! Extending a function through a pair of incompatible branches: given integer
//! interpolants on `X ∪ {a}` and `X ∪ {b}` whose union is not integral, find
//! the values at a new point that keep both branches integral.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LipError, Result};
use crate::exactpoly::{interpolant_is_integer, interpolate_points, IntPolynomial, Sample};
use crate::lipcore::{lip_check, LipVerdict};
use crate::numeric::{crt_pair, gcd, int, serde_str, Integer};
use crate::sets::Progression;

/// A base sample on `X` together with two extra points `a`, `b` and their
/// values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchSetup {
    pub base: Sample,
    #[serde(with = "serde_str::integer")]
    pub a: Integer,
    #[serde(with = "serde_str::integer")]
    pub b: Integer,
    #[serde(with = "serde_str::integer")]
    pub fa: Integer,
    #[serde(with = "serde_str::integer")]
    pub fb: Integer,
}

/// `{rep + k * modulus : k ∈ ℤ}` with `0 <= rep < modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtensionClass {
    #[serde(rename = "rep", with = "serde_str::integer")]
    pub representative: Integer,
    #[serde(rename = "mod", with = "serde_str::integer")]
    pub modulus: Integer,
}

impl ExtensionClass {
    pub fn contains(&self, y: &Integer) -> bool {
        (y - &self.representative).is_multiple_of(&self.modulus)
    }

    /// The member of least absolute value, the nonnegative one on ties.
    pub fn min_abs(&self) -> Integer {
        let below = &self.representative - &self.modulus;
        if below.abs() < self.representative {
            below
        } else {
            self.representative.clone()
        }
    }
}

impl fmt::Display for ExtensionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.representative, self.modulus)
    }
}

impl BranchSetup {
    pub fn new(base: Sample, a: Integer, b: Integer, fa: Integer, fb: Integer) -> Result<Self> {
        let setup = BranchSetup { base, a, b, fa, fb };
        setup.validate()?;
        Ok(setup)
    }

    /// Splits a sample into base and branch points.
    pub fn from_sample(s: &Sample, a: &Integer, b: &Integer) -> Result<Self> {
        let value = |x: &Integer| {
            s.get(x).cloned().ok_or_else(|| LipError::Precondition(format!("branch point {x} is not in the sample")))
        };
        let (fa, fb) = (value(a)?, value(b)?);
        let base =
            s.filter(|x| x != a && x != b).ok_or_else(|| LipError::Precondition("the base set X is empty".into()))?;
        Self::new(base, a.clone(), b.clone(), fa, fb)
    }

    fn with_a(&self) -> Vec<(Integer, Integer)> {
        let mut v = self.base.points().to_vec();
        v.push((self.a.clone(), self.fa.clone()));
        v
    }

    fn with_b(&self) -> Vec<(Integer, Integer)> {
        let mut v = self.base.points().to_vec();
        v.push((self.b.clone(), self.fb.clone()));
        v
    }

    fn validate(&self) -> Result<()> {
        if self.a == self.b || self.base.contains(&self.a) || self.base.contains(&self.b) {
            return Err(LipError::Precondition("X, a and b must be pairwise distinct".into()));
        }
        if !interpolant_is_integer(&self.with_a()) || !interpolant_is_integer(&self.with_b()) {
            return Err(LipError::Precondition("both branches must have integer interpolants".into()));
        }
        let mut joint = self.with_a();
        joint.push((self.b.clone(), self.fb.clone()));
        if interpolant_is_integer(&joint) {
            return Err(LipError::Precondition("the joint interpolant on X ∪ {a, b} is integral".into()));
        }
        Ok(())
    }

    fn branch(points: &[(Integer, Integer)]) -> IntPolynomial {
        interpolate_points(points).to_integer().expect("validated branch")
    }

    /// Product `∏(x - x_i)` over the base set.
    fn base_product(&self, x: &Integer) -> Integer {
        self.base.xs().map(|xi| x - xi).product()
    }

    /// The sample on `X ∪ {a, b}`.
    pub fn joint_sample(&self) -> Sample {
        let mut v = self.with_a();
        v.push((self.b.clone(), self.fb.clone()));
        Sample::new(v).expect("distinct by validation")
    }
}

/// The integers `α`, `β` with `f_{X∪{a}} = f_X + α ∏(x - x_i)` and
/// `f_{X∪{b}} = f_X + β ∏(x - x_i)`.
pub fn branch_coefficients(setup: &BranchSetup) -> Result<(Integer, Integer)> {
    setup.validate()?;
    let n = setup.base.len();
    let alpha = BranchSetup::branch(&setup.with_a()).coeff(n);
    let beta = BranchSetup::branch(&setup.with_b()).coeff(n);
    // α - β = c(a - b) with c non-integral, so neither can fail
    assert_ne!(alpha, beta);
    assert!((&setup.a - &setup.b).abs() >= int(2), "adjacent branch points cannot conflict");
    Ok((alpha, beta))
}

/// `a + (b - a)ℤ`: new points here cannot be added.
pub fn obstruction_progression(a: &Integer, b: &Integer) -> Result<Progression> {
    Progression::generated_by(a, b)
}

/// The values `y` at `x_new` for which both `X ∪ {a, x_new}` and
/// `X ∪ {b, x_new}` have integer interpolants.
pub fn admissible_extension(setup: &BranchSetup, x_new: &Integer) -> Result<ExtensionClass> {
    setup.validate()?;
    if x_new == &setup.a || x_new == &setup.b || setup.base.contains(x_new) {
        return Err(LipError::Precondition(format!("{x_new} is already in X ∪ {{a, b}}")));
    }
    if !gcd(&(x_new - &setup.a), &(&setup.a - &setup.b)).is_one() {
        return Err(LipError::ObstructedPoint {
            x: x_new.clone(),
            progression: obstruction_progression(&setup.a, &setup.b)?,
        });
    }
    let prod = setup.base_product(x_new);
    let ra = BranchSetup::branch(&setup.with_a()).eval(x_new);
    let rb = BranchSetup::branch(&setup.with_b()).eval(x_new);
    let ma = ((x_new - &setup.a) * &prod).abs();
    let mb = ((x_new - &setup.b) * &prod).abs();
    debug_assert!(!ma.is_zero() && !mb.is_zero());
    let (representative, modulus) = crt_pair(&ra.mod_floor(&ma), &ma, &rb.mod_floor(&mb), &mb)
        .ok_or_else(|| LipError::Precondition(format!("no admissible value at {x_new}")))?;
    Ok(ExtensionClass { representative, modulus })
}

/// Extends the seed `f(-1) = 0, f(0) = 0, f(1) = 1` to every even point of
/// `[-n, n]` in the order `2, -2, 4, -4, ...`, always taking the admissible
/// value of least absolute value. The result is inconsistent on the window,
/// but consistent once either `-1` or `1` is dropped.
pub fn build_example3(n: &Integer) -> Result<Sample> {
    if n < &int(2) {
        return Err(LipError::Precondition(format!("window bound {n} must be at least 2")));
    }
    let mut setup = BranchSetup::new(Sample::from_pairs(&[(0, 0)])?, int(-1), int(1), Integer::zero(), Integer::one())?;
    let mut k = int(2);
    while &k <= n {
        for x in [k.clone(), -k.clone()] {
            let y = admissible_extension(&setup, &x)?.min_abs();
            let mut pts = setup.base.points().to_vec();
            pts.push((x, y));
            setup.base = Sample::new(pts)?;
        }
        k += 2;
    }
    let full = setup.joint_sample();
    let minus = int(-1);
    let plus = int(1);
    assert!(lip_check(&full.without(&plus).expect("nonempty")).is_consistent());
    assert!(lip_check(&full.without(&minus).expect("nonempty")).is_consistent());
    match lip_check(&full) {
        LipVerdict::Inconsistent { circuit } => {
            assert!(circuit.elements.contains(&minus) && circuit.elements.contains(&plus));
        }
        LipVerdict::Consistent { .. } => unreachable!("validated joint interpolant is non-integral"),
    }
    Ok(full)
}
