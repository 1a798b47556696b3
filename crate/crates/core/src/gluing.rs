//! Gluing functions given piecewise on a cover. The pairwise hypothesis asks
//! that `U_i ∩ U_j` contain infinitely many terms of `a_1 + (a_2 - a_1)ℤ` for
//! all `a_1 ∈ U_i`, `a_2 ∈ U_j`; under it a function is consistent on the
//! union as soon as it is consistent on every piece.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LipError, Result};
use crate::exactpoly::Sample;
use crate::lipcore::{catalog_eval_capped, lip_check_points, FunctionSpec, LipVerdict, DEFAULT_CAP_TERMS};
use crate::numeric::{gcd, int, is_squarefree, serde_str, Integer};
use crate::sets::{
    meets_infinitely_bounded, normalize_with, Ground, MeetVerdict, NormalSet, NormalizeOptions, Progression, SetExpr,
    DEFAULT_MAX_MODULUS, DEFAULT_PRIMES_BOUND,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    #[serde(rename = "set")]
    pub carrier: SetExpr,
    #[serde(rename = "fn")]
    pub function: FunctionSpec,
}

/// A cover with one function per member, examined on the window `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr", into = "FamilyRepr")]
pub struct GluingFamily {
    pieces: Vec<Piece>,
    lo: Integer,
    hi: Integer,
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    #[serde(with = "serde_str::integer_vec")]
    window: Vec<Integer>,
    pieces: Vec<Piece>,
}

impl TryFrom<FamilyRepr> for GluingFamily {
    type Error = LipError;

    fn try_from(r: FamilyRepr) -> Result<Self> {
        let [lo, hi]: [Integer; 2] =
            r.window.try_into().map_err(|_| LipError::Input("window must be [lo, hi]".into()))?;
        GluingFamily::new(r.pieces, lo, hi)
    }
}

impl From<GluingFamily> for FamilyRepr {
    fn from(f: GluingFamily) -> Self {
        FamilyRepr { window: vec![f.lo, f.hi], pieces: f.pieces }
    }
}

impl GluingFamily {
    pub fn new(pieces: Vec<Piece>, lo: Integer, hi: Integer) -> Result<Self> {
        if pieces.is_empty() {
            return Err(LipError::Input("a gluing family needs at least one piece".into()));
        }
        if lo > hi {
            return Err(LipError::Input(format!("empty window [{lo}, {hi}]")));
        }
        Ok(GluingFamily { pieces, lo, hi })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn window(&self) -> (&Integer, &Integer) {
        (&self.lo, &self.hi)
    }

    pub fn with_window(&self, lo: Integer, hi: Integer) -> Result<Self> {
        Self::new(self.pieces.clone(), lo, hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlueOptions {
    pub fail_fast: bool,
    pub primes_bound: u64,
    pub max_modulus: u64,
    pub cap_terms: usize,
}

impl Default for GlueOptions {
    fn default() -> Self {
        GlueOptions {
            fail_fast: false,
            primes_bound: DEFAULT_PRIMES_BOUND,
            max_modulus: DEFAULT_MAX_MODULUS,
            cap_terms: DEFAULT_CAP_TERMS,
        }
    }
}

impl GlueOptions {
    fn normalize(&self) -> NormalizeOptions {
        NormalizeOptions { max_modulus: self.max_modulus }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Precondition {
    Ok,
    /// `a1 ∈ U_{piece1}`, `a2 ∈ U_{piece2}`, and the overlap does not meet
    /// `a1 + (a2 - a1)ℤ` infinitely often (or could not be shown to).
    Violation {
        piece1: usize,
        piece2: usize,
        #[serde(with = "serde_str::integer")]
        a1: Integer,
        #[serde(with = "serde_str::integer")]
        a2: Integer,
        verdict: MeetVerdict,
    },
}

impl Precondition {
    pub fn is_ok(&self) -> bool {
        matches!(self, Precondition::Ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Agreement {
    Ok,
    Mismatch {
        #[serde(with = "serde_str::integer")]
        x: Integer,
        piece1: usize,
        piece2: usize,
        #[serde(with = "serde_str::integer")]
        y1: Integer,
        #[serde(with = "serde_str::integer")]
        y2: Integer,
    },
}

/// Later fields are `None` only when a fail-fast run stopped early.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingReport {
    pub precondition: Precondition,
    pub agreement: Option<Agreement>,
    pub pieces: Option<Vec<LipVerdict>>,
    pub verdict: Option<LipVerdict>,
}

impl GluingReport {
    /// The implication the hypothesis guarantees: precondition and agreement
    /// hold and every piece is consistent, so the union is consistent.
    pub fn implication_holds(&self) -> bool {
        let premises = self.precondition.is_ok()
            && self.agreement == Some(Agreement::Ok)
            && self.pieces.as_ref().is_some_and(|p| p.iter().all(LipVerdict::is_consistent));
        !premises || self.verdict.as_ref().is_some_and(LipVerdict::is_consistent)
    }
}

/// How a residue class mod `L` is realized inside a set: by infinitely many
/// points, or only by the listed finite ones.
#[derive(Debug, Clone)]
enum Realizer {
    Infinite,
    Finite(Vec<Integer>),
}

/// Residues of the members of `n` modulo `l` (a multiple of `n.modulus`);
/// `n` carries no primes filter.
fn realizers(n: &NormalSet, l: u64) -> BTreeMap<u64, Realizer> {
    let li = Integer::from(l);
    let mut out: BTreeMap<u64, Realizer> = BTreeMap::new();
    let push_finite = |out: &mut BTreeMap<u64, Realizer>, x: &Integer| {
        let r = x.mod_floor(&li).to_u64().expect("below modulus");
        match out.entry(r).or_insert_with(|| Realizer::Finite(Vec::new())) {
            Realizer::Infinite => {}
            Realizer::Finite(v) => v.push(x.clone()),
        }
    };
    for &r in &n.residues {
        let mut s = r;
        while s < l {
            out.insert(s, Realizer::Infinite);
            s += n.modulus;
        }
    }
    for x in &n.added {
        push_finite(&mut out, x);
    }
    out
}

/// Up to `count` members of `n` in class `r` mod `l`, taken from the window
/// first and then beyond it, ascending within each stage.
fn class_members(n: &NormalSet, r: u64, l: u64, lo: &Integer, hi: &Integer, count: usize) -> Vec<Integer> {
    let li = Integer::from(l);
    let class = Progression::two_sided(Integer::from(r), li.clone()).expect("positive modulus");
    let mut out: Vec<Integer> = class.elements_in(lo, hi).filter(|x| n.contains(x)).take(count).collect();
    let mut x = class.first_at_least(&(hi + 1));
    if n.ground == Ground::Naturals && x < Integer::one() {
        x = class.first_at_least(&Integer::one());
    }
    // removed points are finite, so an infinite class yields members soon
    let mut budget = n.removed.len() + n.added.len() + 4 * count + 64;
    while out.len() < count && budget > 0 {
        if n.contains(&x) && !out.contains(&x) {
            out.push(x.clone());
        }
        x += &li;
        budget -= 1;
    }
    out
}

fn candidates(n: &NormalSet, r: u64, l: u64, how: &Realizer, lo: &Integer, hi: &Integer) -> Vec<Integer> {
    match how {
        Realizer::Finite(v) => v.clone(),
        Realizer::Infinite => class_members(n, r, l, lo, hi, 2),
    }
}

/// Checks the pairwise hypothesis for every ordered pair of pieces.
///
/// Without primes the check is exact: whether `U_i ∩ U_j` meets
/// `a1 + (a2 - a1)ℤ` infinitely often depends only on `a1, a2 mod L`, since
/// `gcd(a2 - a1, L)` does. For prime-filtered overlaps the pairs are
/// enumerated over the window instead, and an `Unknown` meet counts as a
/// violation.
pub fn precondition_check(fam: &GluingFamily) -> Result<Precondition> {
    precondition_check_with(fam, &GlueOptions::default())
}

pub fn precondition_check_with(fam: &GluingFamily, opts: &GlueOptions) -> Result<Precondition> {
    let nopts = opts.normalize();
    let sets: Vec<NormalSet> = fam.pieces.iter().map(|p| normalize_with(&p.carrier, &nopts)).collect::<Result<_>>()?;
    for i in 0..sets.len() {
        for j in 0..sets.len() {
            let overlap = SetExpr::intersect(fam.pieces[i].carrier.clone(), fam.pieces[j].carrier.clone());
            let common = normalize_with(&overlap, &nopts)?;
            let found = if common.primes_filter {
                window_pairs(&sets[i], &sets[j], &common, fam, opts)
            } else {
                residue_pairs(&sets[i], &sets[j], &common, fam, opts)
            };
            if let Some((a1, a2, verdict)) = found {
                return Ok(Precondition::Violation { piece1: i, piece2: j, a1, a2, verdict });
            }
        }
    }
    Ok(Precondition::Ok)
}

type Witness = (Integer, Integer, MeetVerdict);

fn residue_pairs(
    u1: &NormalSet,
    u2: &NormalSet,
    common: &NormalSet,
    fam: &GluingFamily,
    opts: &GlueOptions,
) -> Option<Witness> {
    let l = [u1.modulus, u2.modulus, common.modulus].into_iter().fold(1, num_integer::lcm);
    let lc = common.modulus;
    let (r1s, r2s) = (realizers(u1, l), realizers(u2, l));
    // common meets r1 + gℤ iff r1 ≡ r (mod gcd(g, lc)) for some residue r
    let mut reach: HashMap<u64, HashSet<u64>> = HashMap::new();
    let mut meets = |g: u64, r1: u64| {
        let h = num_integer::gcd(g, lc);
        reach.entry(h).or_insert_with(|| common.residues.iter().map(|r| r % h).collect()).contains(&(r1 % h))
    };
    for (&r1, how1) in &r1s {
        for (&r2, how2) in &r2s {
            let g = num_integer::gcd(l, (r2 + l - r1) % l);
            if meets(g, r1) {
                continue;
            }
            let c1 = candidates(u1, r1, l, how1, &fam.lo, &fam.hi);
            let c2 = candidates(u2, r2, l, how2, &fam.lo, &fam.hi);
            let pair = c1.iter().find_map(|a1| c2.iter().find(|a2| *a2 != a1).map(|a2| (a1, a2)));
            let Some((a1, a2)) = pair else { continue };
            let target = Progression::generated_by(a1, a2).expect("distinct");
            let verdict = meets_infinitely_bounded(common, &target, opts.primes_bound);
            debug_assert!(!verdict.is_infinite());
            return Some((a1.clone(), a2.clone(), verdict));
        }
    }
    None
}

fn window_pairs(
    u1: &NormalSet,
    u2: &NormalSet,
    common: &NormalSet,
    fam: &GluingFamily,
    opts: &GlueOptions,
) -> Option<Witness> {
    let p1 = u1.members_in(&fam.lo, &fam.hi);
    let p2 = u2.members_in(&fam.lo, &fam.hi);
    for a1 in &p1 {
        for a2 in p2.iter().filter(|a2| *a2 != a1) {
            let target = Progression::generated_by(a1, a2).expect("distinct");
            let verdict = meets_infinitely_bounded(common, &target, opts.primes_bound);
            if !verdict.is_infinite() {
                return Some((a1.clone(), a2.clone(), verdict));
            }
        }
    }
    None
}

pub fn glue_check(fam: &GluingFamily) -> Result<GluingReport> {
    glue_check_with(fam, &GlueOptions::default())
}

/// Precondition, pointwise agreement on overlaps within the window, and
/// consistency of every piece and of the glued sample. When pieces disagree
/// the glued sample takes the value of the lowest-numbered piece.
pub fn glue_check_with(fam: &GluingFamily, opts: &GlueOptions) -> Result<GluingReport> {
    let precondition = precondition_check_with(fam, opts)?;
    let mut report = GluingReport { precondition, agreement: None, pieces: None, verdict: None };
    if opts.fail_fast && !report.precondition.is_ok() {
        return Ok(report);
    }

    let nopts = opts.normalize();
    let mut samples: Vec<Vec<(Integer, Integer)>> = Vec::with_capacity(fam.pieces.len());
    for piece in &fam.pieces {
        let set = normalize_with(&piece.carrier, &nopts)?;
        let pts = set
            .members_in(&fam.lo, &fam.hi)
            .into_iter()
            .map(|x| catalog_eval_capped(&piece.function, &x, opts.cap_terms).map(|y| (x, y)))
            .collect::<Result<Vec<_>>>()?;
        samples.push(pts);
    }

    let mut union: BTreeMap<Integer, (usize, Integer)> = BTreeMap::new();
    let mut mismatch: Option<(Integer, usize, usize, Integer, Integer)> = None;
    for (k, pts) in samples.iter().enumerate() {
        for (x, y) in pts {
            match union.get(x) {
                Some((first, y0)) if y0 != y => {
                    let better = mismatch.as_ref().is_none_or(|m| x < &m.0);
                    if better {
                        mismatch = Some((x.clone(), *first, k, y0.clone(), y.clone()));
                    }
                }
                Some(_) => {}
                None => {
                    union.insert(x.clone(), (k, y.clone()));
                }
            }
        }
    }
    let agreement = match mismatch {
        None => Agreement::Ok,
        Some((x, piece1, piece2, y1, y2)) => Agreement::Mismatch { x, piece1, piece2, y1, y2 },
    };
    let stop = opts.fail_fast && agreement != Agreement::Ok;
    report.agreement = Some(agreement);
    if stop {
        return Ok(report);
    }

    report.pieces = Some(samples.iter().map(|pts| lip_check_points(pts)).collect());
    let glued: Vec<(Integer, Integer)> = union.into_iter().map(|(x, (_, y))| (x, y)).collect();
    report.verdict = Some(lip_check_points(&glued));
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ProbeOutcome {
    /// `a + dℤ_{>=0}` is a basic open around the point, inside the carrier,
    /// on whose window points the function is consistent.
    Found {
        #[serde(with = "serde_str::integer")]
        a: Integer,
        #[serde(with = "serde_str::integer")]
        d: Integer,
    },
    Exhausted {
        search_bound: u64,
    },
}

/// Whether every member of `a + dℤ_{>=0}` lies in `n`.
fn progression_inside(n: &NormalSet, a: &Integer, d: u64) -> bool {
    if n.primes_filter {
        // a + dℤ_{>=0} always contains a composite or 1
        return false;
    }
    if n.ground == Ground::Naturals && a < &Integer::one() {
        return false;
    }
    let l = num_integer::lcm(n.modulus, d);
    let di = Integer::from(d);
    let r = a.mod_floor(&di).to_u64().expect("below step");
    let lifted_ok = (0..l / d).all(|k| n.residues.binary_search(&((r + k * d) % n.modulus)).is_ok());
    lifted_ok && !n.removed.iter().any(|x| x >= a && (x - a).is_multiple_of(&di))
}

/// Searches the basic opens `a' + d'ℤ_{>=0}` (`gcd(a', d') = 1`, `d'`
/// squarefree, `d' <= search_bound`) that contain `point` and lie inside
/// `carrier`, smallest `d'` first and then smallest `a'`, for one on which
/// the function's window sample is consistent. `Exhausted` says nothing
/// about the function.
pub fn locally_lip_probe(
    carrier: &SetExpr,
    function: &FunctionSpec,
    point: &Integer,
    window: (&Integer, &Integer),
    search_bound: u64,
) -> Result<ProbeOutcome> {
    locally_lip_probe_with(carrier, function, point, window, search_bound, &GlueOptions::default())
}

pub fn locally_lip_probe_with(
    carrier: &SetExpr,
    function: &FunctionSpec,
    point: &Integer,
    window: (&Integer, &Integer),
    search_bound: u64,
    opts: &GlueOptions,
) -> Result<ProbeOutcome> {
    let n = normalize_with(carrier, &opts.normalize())?;
    if point < &Integer::one() || !n.contains(point) {
        return Err(LipError::Precondition(format!("{point} is not in {carrier} ∩ ℕ")));
    }
    let (lo, hi) = window;
    for d in 1..=search_bound {
        if !is_squarefree(d) {
            continue;
        }
        let di = Integer::from(d);
        let mut a = point.mod_floor(&di);
        if a.is_zero() {
            a = di.clone();
        }
        while &a <= point {
            if gcd(&a, &di).is_one() && progression_inside(&n, &a, d) {
                let prog = Progression::nonneg(a.clone(), di.clone())?;
                let pts = prog
                    .elements_in(lo, hi)
                    .map(|x| catalog_eval_capped(function, &x, opts.cap_terms).map(|y| (x, y)))
                    .collect::<Result<Vec<_>>>()?;
                if lip_check_points(&pts).is_consistent() {
                    return Ok(ProbeOutcome::Found { a, d: di });
                }
            }
            a += &di;
        }
    }
    Ok(ProbeOutcome::Exhausted { search_bound })
}

/// The two one-point deletions of a sample on `V = 2ℤ ∪ {-1, 1}`, as pieces
/// on `2ℤ ∪ {-1}` and `2ℤ ∪ {1}` with explicit sample functions.
pub fn example3_family(s: &Sample, lo: Integer, hi: Integer) -> Result<GluingFamily> {
    let piece = |keep: i64, drop: i64| -> Result<Piece> {
        let restricted =
            s.without(&int(drop)).ok_or_else(|| LipError::Precondition("sample has a single point".into()))?;
        Ok(Piece {
            carrier: SetExpr::union(
                SetExpr::Prog(Progression::two_sided(Integer::zero(), int(2))?),
                SetExpr::finite([int(keep)]),
            ),
            function: FunctionSpec::Explicit(restricted),
        })
    };
    GluingFamily::new(vec![piece(-1, 1)?, piece(1, -1)?], lo, hi)
}

/// Consistency of a single window sample through the gluing path.
pub fn single_piece_verdict(piece: &Piece, lo: &Integer, hi: &Integer) -> Result<LipVerdict> {
    let n = normalize_with(&piece.carrier, &NormalizeOptions::default())?;
    let pts = n
        .members_in(lo, hi)
        .into_iter()
        .map(|x| piece.function.eval(&x).map(|y| (x, y)))
        .collect::<Result<Vec<_>>>()?;
    Ok(lip_check_points(&pts))
}
