//! Symbolic set expressions and their recursive-descent parser.
//!
//! ```text
//! expr  := union
//! union := inter ( "|" inter )*
//! inter := diff ( "&" diff )*
//! diff  := atom ( "\" atom )*
//! atom  := "Z" | "N" | "P" | "ap(" int "," int ")" | "apz(" int "," int ")"
//!        | "{" int ( "," int )* "}" | "(" expr ")"
//! int   := ["-"] digit+
//! ```
//!
//! Whitespace is ignored everywhere, and U+2212 is accepted as a minus sign.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;

use super::progression::{Progression, ProgressionDomain};
use crate::numeric::{is_prime, Integer};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetExpr {
    AllZ,
    /// `{1, 2, 3, ...}`
    AllN,
    Primes,
    Prog(Progression),
    Finite(BTreeSet<Integer>),
    Union(Box<SetExpr>, Box<SetExpr>),
    Intersect(Box<SetExpr>, Box<SetExpr>),
    Diff(Box<SetExpr>, Box<SetExpr>),
}

/// The universe an expression is read in. Expressions that mention `N`, `P`
/// or a nonneg-indexed `ap` live in ℕ; everything else lives in ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Ground {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "N")]
    Naturals,
}

impl Ground {
    pub fn contains(&self, x: &Integer) -> bool {
        match self {
            Ground::Integers => true,
            Ground::Naturals => x.is_positive(),
        }
    }
}

impl fmt::Display for Ground {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ground::Integers => "Z",
            Ground::Naturals => "N",
        })
    }
}

impl SetExpr {
    pub fn union(l: SetExpr, r: SetExpr) -> Self {
        SetExpr::Union(Box::new(l), Box::new(r))
    }

    pub fn intersect(l: SetExpr, r: SetExpr) -> Self {
        SetExpr::Intersect(Box::new(l), Box::new(r))
    }

    pub fn diff(l: SetExpr, r: SetExpr) -> Self {
        SetExpr::Diff(Box::new(l), Box::new(r))
    }

    pub fn finite(xs: impl IntoIterator<Item = Integer>) -> Self {
        SetExpr::Finite(xs.into_iter().collect())
    }

    pub fn ground(&self) -> Ground {
        match self {
            SetExpr::AllN | SetExpr::Primes => Ground::Naturals,
            SetExpr::Prog(p) if p.domain() == ProgressionDomain::NonnegIndexed => Ground::Naturals,
            SetExpr::AllZ | SetExpr::Prog(_) | SetExpr::Finite(_) => Ground::Integers,
            SetExpr::Union(l, r) | SetExpr::Intersect(l, r) | SetExpr::Diff(l, r) => l.ground().max(r.ground()),
        }
    }

    /// Literal membership, ignoring the ground.
    pub fn contains_raw(&self, x: &Integer) -> bool {
        match self {
            SetExpr::AllZ => true,
            SetExpr::AllN => x.is_positive(),
            SetExpr::Primes => is_prime(x),
            SetExpr::Prog(p) => p.contains(x),
            SetExpr::Finite(s) => s.contains(x),
            SetExpr::Union(l, r) => l.contains_raw(x) || r.contains_raw(x),
            SetExpr::Intersect(l, r) => l.contains_raw(x) && r.contains_raw(x),
            SetExpr::Diff(l, r) => l.contains_raw(x) && !r.contains_raw(x),
        }
    }

    /// Membership in the set the expression denotes within its ground.
    pub fn contains(&self, x: &Integer) -> bool {
        self.ground().contains(x) && self.contains_raw(x)
    }

    fn precedence(&self) -> u8 {
        match self {
            SetExpr::Union(..) => 1,
            SetExpr::Intersect(..) => 2,
            SetExpr::Diff(..) => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r, op) = match self {
            SetExpr::AllZ => return f.write_str("Z"),
            SetExpr::AllN => return f.write_str("N"),
            SetExpr::Primes => return f.write_str("P"),
            SetExpr::Prog(p) => return write!(f, "{p}"),
            SetExpr::Finite(s) => {
                f.write_str("{")?;
                for (i, x) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                return f.write_str("}");
            }
            SetExpr::Union(l, r) => (l, r, "|"),
            SetExpr::Intersect(l, r) => (l, r, "&"),
            SetExpr::Diff(l, r) => (l, r, "\\"),
        };
        // all operators are left-associative
        let p = self.precedence();
        if l.precedence() < p {
            write!(f, "({l})")?;
        } else {
            write!(f, "{l}")?;
        }
        write!(f, " {op} ")?;
        if r.precedence() <= p {
            write!(f, "({r})")
        } else {
            write!(f, "{r}")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at position {position}: expected {expected}, found {found}")]
pub struct ParseError {
    /// Character offset into the original text.
    pub position: usize,
    pub expected: String,
    pub found: String,
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

type PResult<T> = std::result::Result<T, ParseError>;

impl Parser {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i, if c == '\u{2212}' { '-' } else { c }))
            .collect();
        Parser { chars, pos: 0, end: text.chars().count() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        Err(ParseError {
            position: self.offset(),
            expected: expected.to_string(),
            found: self.peek().map_or_else(|| "end of input".to_string(), |c| format!("{c:?}")),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.error(&format!("{c:?}"))
        }
    }

    fn expr(&mut self) -> PResult<SetExpr> {
        let mut lhs = self.inter()?;
        while self.eat('|') {
            lhs = SetExpr::union(lhs, self.inter()?);
        }
        Ok(lhs)
    }

    fn inter(&mut self) -> PResult<SetExpr> {
        let mut lhs = self.diff()?;
        while self.eat('&') {
            lhs = SetExpr::intersect(lhs, self.diff()?);
        }
        Ok(lhs)
    }

    fn diff(&mut self) -> PResult<SetExpr> {
        let mut lhs = self.atom()?;
        while self.eat('\\') {
            lhs = SetExpr::diff(lhs, self.atom()?);
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> PResult<SetExpr> {
        match self.peek() {
            Some('Z') => {
                self.pos += 1;
                Ok(SetExpr::AllZ)
            }
            Some('N') => {
                self.pos += 1;
                Ok(SetExpr::AllN)
            }
            Some('P') => {
                self.pos += 1;
                Ok(SetExpr::Primes)
            }
            Some('a') => {
                self.pos += 1;
                self.expect('p')?;
                let two_sided = self.eat('z');
                self.expect('(')?;
                let first = self.int()?;
                self.expect(',')?;
                let step_at = self.pos;
                let step = self.int()?;
                self.expect(')')?;
                let prog =
                    if two_sided { Progression::two_sided(first, step) } else { Progression::nonneg(first, step) };
                prog.map(SetExpr::Prog).or_else(|_| {
                    self.pos = step_at;
                    self.error("a positive step")
                })
            }
            Some('{') => {
                self.pos += 1;
                let mut set = BTreeSet::new();
                set.insert(self.int()?);
                while self.eat(',') {
                    set.insert(self.int()?);
                }
                self.expect('}')?;
                Ok(SetExpr::Finite(set))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.error("one of Z, N, P, ap(, apz(, {, ("),
        }
    }

    fn int(&mut self) -> PResult<Integer> {
        let start = self.pos;
        let neg = self.eat('-');
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if digits.is_empty() {
            return self.error("an integer");
        }
        let v: Integer = digits.parse().map_err(|_| ParseError {
            position: self.chars.get(start).map_or(self.end, |&(i, _)| i),
            expected: "an integer".into(),
            found: digits.clone(),
        })?;
        Ok(if neg { -v } else { v })
    }
}

pub fn parse(text: &str) -> Result<SetExpr, ParseError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.error("an operator or end of input");
    }
    Ok(e)
}

/// Serialized as its expression text.
impl serde::Serialize for SetExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for SetExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = <String as serde::Deserialize>::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for SetExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}
