//! Set algebra over ℤ: arithmetic progressions, the expression language, and
//! its normal form.

mod expr;
mod normal;
mod progression;

pub use expr::{parse, Ground, ParseError, SetExpr};
pub use normal::{
    density, is_cofinite, is_density_one, kirch_basic_check, meets_infinitely, meets_infinitely_bounded, member,
    normalize, normalize_with, MeetVerdict, NormalSet, NormalizeOptions, DEFAULT_MAX_MODULUS, DEFAULT_PRIMES_BOUND,
};
pub use progression::{ap_intersect, lemma8_common, Progression, ProgressionDomain};
