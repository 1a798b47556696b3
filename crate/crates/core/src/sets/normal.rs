//! Canonical form "residue classes modulo one `L`, inside a ground set, plus
//! finite corrections", and the decisions it makes exact.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::expr::{Ground, SetExpr};
use super::progression::{ap_intersect, Progression};
use crate::error::{LipError, Result};
use crate::numeric::{gcd, int, is_prime, is_squarefree, serde_str, Integer, Rational};

pub const DEFAULT_MAX_MODULUS: u64 = 1_000_000;
pub const DEFAULT_PRIMES_BOUND: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalizeOptions {
    pub max_modulus: u64,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        NormalizeOptions { max_modulus: DEFAULT_MAX_MODULUS }
    }
}

/// `x` is a member iff `x ∈ added`, or `x` lies in the ground, in one of the
/// residue classes mod `modulus`, is prime when `primes_filter` is set, and is
/// not in `removed`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalSet {
    pub ground: Ground,
    pub modulus: u64,
    pub residues: Vec<u64>,
    #[serde(with = "set_str")]
    pub added: BTreeSet<Integer>,
    #[serde(with = "set_str")]
    pub removed: BTreeSet<Integer>,
    pub primes_filter: bool,
}

mod set_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BTreeSet<Integer>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Integer> = v.iter().cloned().collect();
        serde_str::integer_vec::serialize(&v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeSet<Integer>, D::Error> {
        Ok(serde_str::integer_vec::deserialize(d)?.into_iter().collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Union,
    Intersect,
    Diff,
}

impl Op {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            Op::Union => a || b,
            Op::Intersect => a && b,
            Op::Diff => a && !b,
        }
    }
}

impl NormalSet {
    fn periodic(ground: Ground, modulus: u64, residues: Vec<u64>) -> Self {
        NormalSet { ground, modulus, residues, added: BTreeSet::new(), removed: BTreeSet::new(), primes_filter: false }
    }

    fn residue_of(&self, x: &Integer) -> u64 {
        x.mod_floor(&Integer::from(self.modulus)).to_u64().expect("residue below modulus")
    }

    /// Membership in the periodic core, ignoring the finite corrections.
    fn in_core(&self, x: &Integer) -> bool {
        self.ground.contains(x)
            && self.residues.binary_search(&self.residue_of(x)).is_ok()
            && (!self.primes_filter || is_prime(x))
    }

    pub fn contains(&self, x: &Integer) -> bool {
        self.added.contains(x) || (self.in_core(x) && !self.removed.contains(x))
    }

    /// Restriction to ℕ; a no-op for ℕ-ground sets.
    fn into_naturals(mut self) -> Self {
        if self.ground == Ground::Naturals {
            return self;
        }
        self.ground = Ground::Naturals;
        let pos = |x: &Integer| x >= &Integer::one();
        self.added.retain(pos);
        self.removed.retain(pos);
        self
    }

    fn lifted(&self, modulus: u64) -> Vec<bool> {
        let mut mask = vec![false; modulus as usize];
        for &r in &self.residues {
            let mut v = r;
            while v < modulus {
                mask[v as usize] = true;
                v += self.modulus;
            }
        }
        mask
    }

    fn combine(self, other: Self, op: Op, opts: &NormalizeOptions) -> Result<Self> {
        let (a, b) =
            if self.ground == other.ground { (self, other) } else { (self.into_naturals(), other.into_naturals()) };
        let l = gcd_lcm_u64(a.modulus, b.modulus);
        if l > opts.max_modulus as u128 {
            return Err(LipError::ModulusTooLarge { modulus: Integer::from(l), cap: opts.max_modulus });
        }
        let l = l as u64;
        let (ma, mb) = (a.lifted(l), b.lifted(l));
        let any = |m: &[bool]| m.iter().any(|&v| v);

        let unsupported = |what: &str| Err(LipError::Unsupported(what.into()));
        let subset = |f: &[bool], g: &[bool]| f.iter().zip(g).all(|(&x, &y)| !x || y);
        let filter = match (op, a.primes_filter, b.primes_filter) {
            (_, false, false) => false,
            (Op::Intersect, _, _) | (Op::Union, true, true) | (Op::Diff, true, false) => true,
            (Op::Union, fa, _) => {
                let (f, g) = if fa { (&ma, &mb) } else { (&mb, &ma) };
                if !any(g) {
                    any(f)
                } else if subset(f, g) {
                    false
                } else {
                    return unsupported("union of the primes with an infinite set of non-primes");
                }
            }
            (Op::Diff, _, true) => return unsupported("the primes on the right of a difference"),
        };
        // in every supported case the core residues follow the plain set operation
        let residues: Vec<u64> = (0..l).filter(|&r| op.apply(ma[r as usize], mb[r as usize])).collect();
        let mut out = NormalSet {
            ground: a.ground,
            modulus: l,
            residues,
            added: BTreeSet::new(),
            removed: BTreeSet::new(),
            primes_filter: filter,
        };
        let exceptional: BTreeSet<Integer> =
            a.added.iter().chain(&a.removed).chain(&b.added).chain(&b.removed).cloned().collect();
        for x in exceptional {
            let want = op.apply(a.contains(&x), b.contains(&x));
            let core = out.in_core(&x);
            if want && !core {
                out.added.insert(x);
            } else if !want && core {
                out.removed.insert(x);
            }
        }
        Ok(out)
    }

    pub fn union(self, other: Self, opts: &NormalizeOptions) -> Result<Self> {
        self.combine(other, Op::Union, opts)
    }

    pub fn intersect(self, other: Self, opts: &NormalizeOptions) -> Result<Self> {
        self.combine(other, Op::Intersect, opts)
    }

    pub fn difference(self, other: Self, opts: &NormalizeOptions) -> Result<Self> {
        self.combine(other, Op::Diff, opts)
    }

    /// True when the denoted set is empty. Exact unless the primes filter is
    /// set on a nonempty core, in which case the core is infinite or has at
    /// most the primes dividing the modulus.
    pub fn is_empty(&self) -> bool {
        if !self.added.is_empty() {
            return false;
        }
        if self.residues.is_empty() {
            return true;
        }
        if !self.primes_filter {
            return false;
        }
        // a filtered class r with gcd(r, L) = 1 holds infinitely many primes
        let l = Integer::from(self.modulus);
        if self.residues.iter().any(|&r| gcd(&Integer::from(r), &l).is_one()) {
            return false;
        }
        prime_divisors(self.modulus).into_iter().all(|p| !self.contains(&Integer::from(p)))
    }

    /// Members in `[lo, hi]`, ascending.
    pub fn members_in(&self, lo: &Integer, hi: &Integer) -> Vec<Integer> {
        let mut x = lo.clone();
        let mut out = Vec::new();
        while &x <= hi {
            if self.contains(&x) {
                out.push(x.clone());
            }
            x += 1;
        }
        out
    }
}

fn gcd_lcm_u64(a: u64, b: u64) -> u128 {
    let g = num_integer::gcd(a, b);
    (a / g) as u128 * b as u128
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl fmt::Display for NormalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &mut dyn Iterator<Item = String>| v.collect::<Vec<_>>().join(",");
        write!(
            f,
            "ground {} | mod {} residues {{{}}} | added {{{}}} | removed {{{}}}{}",
            self.ground,
            self.modulus,
            list(&mut self.residues.iter().map(ToString::to_string)),
            list(&mut self.added.iter().map(ToString::to_string)),
            list(&mut self.removed.iter().map(ToString::to_string)),
            if self.primes_filter { " | primes only" } else { "" }
        )
    }
}

pub fn normalize(e: &SetExpr) -> Result<NormalSet> {
    normalize_with(e, &NormalizeOptions::default())
}

pub fn normalize_with(e: &SetExpr, opts: &NormalizeOptions) -> Result<NormalSet> {
    let step_cap = |p: &Progression| -> Result<u64> {
        p.step()
            .to_u64()
            .filter(|&s| s <= opts.max_modulus)
            .ok_or_else(|| LipError::ModulusTooLarge { modulus: p.step().clone(), cap: opts.max_modulus })
    };
    Ok(match e {
        SetExpr::AllZ => NormalSet::periodic(Ground::Integers, 1, vec![0]),
        SetExpr::AllN => NormalSet::periodic(Ground::Naturals, 1, vec![0]),
        SetExpr::Primes => NormalSet { primes_filter: true, ..NormalSet::periodic(Ground::Naturals, 1, vec![0]) },
        SetExpr::Finite(s) => NormalSet { added: s.clone(), ..NormalSet::periodic(Ground::Integers, 1, vec![]) },
        SetExpr::Prog(p) => {
            let l = step_cap(p)?;
            let r = p.first().mod_floor(p.step()).to_u64().expect("below step");
            if p.is_two_sided() {
                NormalSet::periodic(Ground::Integers, l, vec![r])
            } else {
                // class members of ℕ below the least element
                let removed: BTreeSet<Integer> = if p.first() > &Integer::one() {
                    let class = Progression::two_sided(p.first().clone(), p.step().clone())?;
                    class.elements_in(&Integer::one(), &(p.first() - 1)).collect()
                } else {
                    BTreeSet::new()
                };
                NormalSet { removed, ..NormalSet::periodic(Ground::Naturals, l, vec![r]) }
            }
        }
        SetExpr::Union(l, r) => normalize_with(l, opts)?.union(normalize_with(r, opts)?, opts)?,
        SetExpr::Intersect(l, r) => normalize_with(l, opts)?.intersect(normalize_with(r, opts)?, opts)?,
        SetExpr::Diff(l, r) => normalize_with(l, opts)?.difference(normalize_with(r, opts)?, opts)?,
    })
}

pub fn member(n: &NormalSet, x: &Integer) -> bool {
    n.contains(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MeetVerdict {
    /// `witness` lies in the target and, up to the finitely many removed
    /// points, in the set. For prime-filtered sets `primes` lists two primes
    /// found on the witness.
    InfinitelyMany {
        witness: Progression,
        #[serde(with = "serde_str::integer_vec")]
        primes: Vec<Integer>,
    },
    FinitelyMany,
    Unknown {
        search_bound: u64,
    },
}

impl MeetVerdict {
    pub fn is_infinite(&self) -> bool {
        matches!(self, MeetVerdict::InfinitelyMany { .. })
    }
}

pub fn meets_infinitely(n: &NormalSet, target: &Progression) -> MeetVerdict {
    meets_infinitely_bounded(n, target, DEFAULT_PRIMES_BOUND)
}

/// Whether the set contains infinitely many terms of `target`. Without the
/// primes filter this is exact. With it, a class coprime to its step that
/// shows two primes below `primes_bound` is infinite (Dirichlet), a class
/// sharing a factor with its step is finite, and anything else is `Unknown`.
pub fn meets_infinitely_bounded(n: &NormalSet, target: &Progression, primes_bound: u64) -> MeetVerdict {
    let modulus = Integer::from(n.modulus);
    let mut unknown = false;
    for &r in &n.residues {
        let class = Progression::two_sided(Integer::from(r), modulus.clone()).expect("positive modulus");
        let Some(mut common) = ap_intersect(&class, target) else { continue };
        if n.ground == Ground::Naturals {
            common = ap_intersect(&common, &Progression::naturals()).expect("step-1 progression meets all");
        }
        if !n.primes_filter {
            return MeetVerdict::InfinitelyMany { witness: common, primes: Vec::new() };
        }
        if !gcd(common.first(), common.step()).is_one() {
            continue;
        }
        let bound = Integer::from(primes_bound);
        let primes: Vec<Integer> =
            common.elements_in(&int(2), &bound).filter(|x| !n.removed.contains(x) && is_prime(x)).take(2).collect();
        if primes.len() == 2 {
            return MeetVerdict::InfinitelyMany { witness: common, primes };
        }
        unknown = true;
    }
    if unknown {
        MeetVerdict::Unknown { search_bound: primes_bound }
    } else {
        MeetVerdict::FinitelyMany
    }
}

/// `|residues| / L`; finite corrections do not change density.
pub fn density(n: &NormalSet) -> Result<Rational> {
    if n.primes_filter {
        return Err(LipError::Unsupported("density of a prime-filtered set".into()));
    }
    Ok(Rational::new(Integer::from(n.residues.len()), Integer::from(n.modulus)))
}

pub fn is_density_one(n: &NormalSet) -> Result<bool> {
    Ok(density(n)? == Rational::one())
}

pub fn is_cofinite(n: &NormalSet) -> bool {
    !n.primes_filter && n.residues.len() as u64 == n.modulus && n.added.is_empty()
}

/// Basis test for the Kirch topology: `gcd(a, d) = 1` and `d` squarefree.
pub fn kirch_basic_check(a: &Integer, d: &Integer) -> Result<bool> {
    if a < &Integer::one() || d < &Integer::one() {
        return Err(LipError::Precondition(format!("kirch check needs a, d >= 1, got ({a}, {d})")));
    }
    let dv = d
        .to_u64()
        .filter(|&v| v <= 1_000_000_000_000)
        .ok_or_else(|| LipError::Precondition(format!("step {d} exceeds 10^12")))?;
    Ok(gcd(a, d).is_one() && is_squarefree(dv))
}
