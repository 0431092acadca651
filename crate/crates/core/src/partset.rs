//! Eventually periodic subsets of the positive integers.
//!
//! A [`PartSet`] is a union of residue classes modulo some `modulus`,
//! adjusted by finitely many added and removed values. These are exactly the
//! sets whose part series `sum_{a in A} x^a` is a rational function, which is
//! what the generating-function pipeline needs.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::poly::IntPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartSetError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("residue {residue} is not below modulus {modulus}")]
    ResidueOutOfRange { residue: u64, modulus: u64 },
    #[error("ap:{start}:{step} needs 1 <= start <= step")]
    BadProgression { start: u64, step: u64 },
    #[error("residue list is empty")]
    EmptyResidueList,
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{0} is both added and removed")]
    ConflictingException(u64),
    #[error("parts are positive integers, got {0}")]
    NonPositive(u64),
}

/// An eventually periodic subset of `Z>0`.
///
/// Values are immutable. Constructors canonicalise the exception lists:
/// an added value always lies outside the periodic pattern and a removed
/// value always lies inside it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartSet {
    modulus: u64,
    residues: BTreeSet<u64>,
    added: BTreeSet<u64>,
    removed: BTreeSet<u64>,
}

/// `sum_{a in A} x^a = exceptions(x) + periodic(x) / (1 - x^modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesForm {
    pub exceptions: IntPolynomial,
    pub periodic: IntPolynomial,
    pub modulus: u64,
}

impl PartSet {
    pub fn new(
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
        added: impl IntoIterator<Item = u64>,
        removed: impl IntoIterator<Item = u64>,
    ) -> Result<Self, PartSetError> {
        if modulus == 0 {
            return Err(PartSetError::ZeroModulus);
        }
        let residues: BTreeSet<u64> = residues.into_iter().collect();
        if let Some(&r) = residues.iter().find(|&&r| r >= modulus) {
            return Err(PartSetError::ResidueOutOfRange {
                residue: r,
                modulus,
            });
        }
        let added: BTreeSet<u64> = added.into_iter().collect();
        let removed: BTreeSet<u64> = removed.into_iter().collect();
        if let Some(&v) = added.iter().chain(removed.iter()).find(|&&v| v == 0) {
            return Err(PartSetError::NonPositive(v));
        }
        if let Some(&v) = added.intersection(&removed).next() {
            return Err(PartSetError::ConflictingException(v));
        }
        let periodic = |v: &u64| residues.contains(&(v % modulus));
        let added = added.iter().copied().filter(|v| !periodic(v)).collect();
        let removed = removed.iter().copied().filter(periodic).collect();
        Ok(Self {
            modulus,
            residues,
            added,
            removed,
        })
    }

    /// `Z>0`.
    pub fn all() -> Self {
        Self::residue_classes(1, [0]).unwrap()
    }

    pub fn empty() -> Self {
        Self::finite([]).unwrap()
    }

    /// All positive integers congruent to one of `residues` modulo `modulus`.
    pub fn residue_classes(
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
    ) -> Result<Self, PartSetError> {
        Self::new(modulus, residues, [], [])
    }

    pub fn finite(values: impl IntoIterator<Item = u64>) -> Result<Self, PartSetError> {
        Self::new(1, [], values, [])
    }

    /// `{t, t+1, ...}`
    pub fn at_least(t: u64) -> Result<Self, PartSetError> {
        if t == 0 {
            return Err(PartSetError::NonPositive(0));
        }
        Self::new(1, [0], [], 1..t)
    }

    /// `{start + j*step : j >= 0}` for any positive `start` and `step`.
    pub fn progression(start: u64, step: u64) -> Result<Self, PartSetError> {
        if start == 0 {
            return Err(PartSetError::NonPositive(0));
        }
        if step == 0 {
            return Err(PartSetError::ZeroModulus);
        }
        let r = start % step;
        let below = (1..start).filter(|v| v % step == r);
        Self::new(step, [r], [], below)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn added(&self) -> &BTreeSet<u64> {
        &self.added
    }

    pub fn removed(&self) -> &BTreeSet<u64> {
        &self.removed
    }

    pub fn contains(&self, v: u64) -> Result<bool, PartSetError> {
        if v == 0 {
            return Err(PartSetError::NonPositive(0));
        }
        Ok(self.has(v))
    }

    /// Membership test for a value already known to be positive.
    pub(crate) fn has(&self, v: u64) -> bool {
        if self.residues.contains(&(v % self.modulus)) {
            !self.removed.contains(&v)
        } else {
            self.added.contains(&v)
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            modulus: self.modulus,
            residues: (0..self.modulus)
                .filter(|r| !self.residues.contains(r))
                .collect(),
            added: self.removed.clone(),
            removed: self.added.clone(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty() && self.added.is_empty()
    }

    /// Elements of the set in `1..=limit`, ascending. Walks each residue
    /// class by stepping rather than testing every integer.
    pub fn parts_up_to(&self, limit: u64) -> Vec<u64> {
        let mut parts: Vec<u64> = Vec::new();
        for &r in &self.residues {
            let first = if r == 0 { self.modulus } else { r };
            let mut v = first;
            while v <= limit {
                if !self.removed.contains(&v) {
                    parts.push(v);
                }
                v += self.modulus;
            }
        }
        parts.extend(self.added.iter().copied().filter(|&v| v <= limit));
        parts.sort_unstable();
        parts
    }

    /// Closed rational form of the part series. Residue `r` is represented
    /// by `x^r`, or by `x^modulus` when `r = 0`.
    pub fn series_form(&self) -> SeriesForm {
        let k = self.modulus as usize;
        let mut periodic = IntPolynomial::zero();
        for &r in &self.residues {
            let exp = if r == 0 { k } else { r as usize };
            periodic = &periodic + &IntPolynomial::monomial(BigInt::one(), exp);
        }
        let mut exceptions = IntPolynomial::zero();
        for &a in &self.added {
            exceptions = &exceptions + &IntPolynomial::monomial(BigInt::one(), a as usize);
        }
        for &a in &self.removed {
            exceptions = &exceptions - &IntPolynomial::monomial(BigInt::one(), a as usize);
        }
        SeriesForm {
            exceptions,
            periodic,
            modulus: self.modulus,
        }
    }
}

impl std::str::FromStr for PartSet {
    type Err = PartSetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_setspec(s)
    }
}

fn join(values: &BTreeSet<u64>) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for PartSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residues.is_empty() {
            // a finite set, possibly empty
            return write!(f, "{{{}}}", join(&self.added));
        }
        write!(f, "{{n = {} (mod {})}}", join(&self.residues), self.modulus)?;
        if !self.added.is_empty() {
            write!(f, " + {{{}}}", join(&self.added))?;
        }
        if !self.removed.is_empty() {
            write!(f, " - {{{}}}", join(&self.removed))?;
        }
        Ok(())
    }
}

/// Parse a set expression:
///
/// ```text
/// setspec := "all" | "ge:" INT | "set:" [INT ("," INT)*]
///          | "mod:" INT ":" INT ("," INT)* | "ap:" INT ":" INT
///          | "not:" setspec
/// ```
pub fn parse_setspec(text: &str) -> Result<PartSet, PartSetError> {
    let mut p = Parser { text, pos: 0 };
    let set = p.setspec()?;
    if p.pos != text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(set)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PartSetError {
        PartSetError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), PartSetError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{token}'")))
        }
    }

    fn int(&mut self) -> Result<u64, PartSetError> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected integer"));
        }
        let value = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error("integer out of range"))?;
        self.pos += digits;
        Ok(value)
    }

    fn positive(&mut self) -> Result<u64, PartSetError> {
        let start = self.pos;
        let v = self.int()?;
        if v == 0 {
            return Err(PartSetError::Syntax {
                pos: start,
                msg: "expected positive integer".into(),
            });
        }
        Ok(v)
    }

    fn setspec(&mut self) -> Result<PartSet, PartSetError> {
        if self.eat("not:") {
            return Ok(self.setspec()?.complement());
        }
        if self.eat("all") {
            return Ok(PartSet::all());
        }
        if self.eat("ge:") {
            return PartSet::at_least(self.positive()?);
        }
        if self.eat("set:") {
            let mut values = Vec::new();
            if self
                .rest()
                .bytes()
                .next()
                .is_some_and(|b| b.is_ascii_digit())
            {
                values.push(self.positive()?);
                while self.eat(",") {
                    values.push(self.positive()?);
                }
            }
            return PartSet::finite(values);
        }
        if self.eat("mod:") {
            let modulus = self.positive()?;
            self.expect(":")?;
            if self.rest().is_empty() {
                return Err(PartSetError::EmptyResidueList);
            }
            let mut residues = vec![self.int()?];
            while self.eat(",") {
                residues.push(self.int()?);
            }
            return PartSet::residue_classes(modulus, residues);
        }
        if self.eat("ap:") {
            let start = self.positive()?;
            self.expect(":")?;
            let step = self.positive()?;
            if start > step {
                return Err(PartSetError::BadProgression { start, step });
            }
            return PartSet::progression(start, step);
        }
        Err(self.error("expected one of all, ge:, set:, mod:, ap:, not:"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> PartSet {
        parse_setspec(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let a = set("ap:1:3");
        assert_eq!(a.modulus(), 3);
        assert_eq!(a.residues(), &BTreeSet::from([1]));
        assert!(a.added().is_empty() && a.removed().is_empty());

        let a = set("not:mod:3:0");
        assert_eq!(a.modulus(), 3);
        assert_eq!(a.residues(), &BTreeSet::from([1, 2]));

        let a = set("ge:2");
        assert_eq!(a.modulus(), 1);
        assert_eq!(a.residues(), &BTreeSet::from([0]));
        assert_eq!(a.removed(), &BTreeSet::from([1]));

        assert_eq!(set("ap:3:3"), set("mod:3:0"));
        assert!(set("set:").is_empty());
        assert_eq!(set("set:1,2").parts_up_to(10), vec![1, 2]);
        assert_eq!(set("not:not:ap:2:5"), set("ap:2:5"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_setspec("mod:3:3"),
            Err(PartSetError::ResidueOutOfRange {
                residue: 3,
                modulus: 3
            })
        ));
        assert!(matches!(
            parse_setspec("ap:4:3"),
            Err(PartSetError::BadProgression { .. })
        ));
        assert_eq!(parse_setspec("mod:3:"), Err(PartSetError::EmptyResidueList));
        assert!(matches!(
            parse_setspec("mod:3"),
            Err(PartSetError::Syntax { pos: 5, .. })
        ));
        assert!(matches!(
            parse_setspec("odd"),
            Err(PartSetError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse_setspec("ge:2x"),
            Err(PartSetError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_setspec("set:1,,2"),
            Err(PartSetError::Syntax { pos: 6, .. })
        ));
        assert!(parse_setspec("ge:0").is_err());
        assert!(parse_setspec(" all").is_err());
        assert!(parse_setspec("").is_err());
    }

    #[test]
    fn membership() {
        let a = set("ap:1:3");
        assert_eq!(a.contains(7), Ok(true));
        assert_eq!(a.contains(6), Ok(false));
        assert_eq!(set("ge:2").contains(1), Ok(false));
        assert_eq!(a.contains(0), Err(PartSetError::NonPositive(0)));
    }

    #[test]
    fn complement_examples() {
        let evens = set("mod:2:0");
        assert_eq!(evens.complement().contains(5), Ok(true));
        let c = set("ap:1:3").complement();
        assert_eq!(c.residues(), &BTreeSet::from([0, 2]));
        let g = set("ge:3").complement();
        assert_eq!(g.parts_up_to(10), vec![1, 2]);
    }

    #[test]
    fn canonicalises_exceptions() {
        let a = PartSet::new(3, [1], [4, 5], [2, 7]).unwrap();
        assert_eq!(a.added(), &BTreeSet::from([5]));
        assert_eq!(a.removed(), &BTreeSet::from([7]));
        assert_eq!(
            PartSet::new(2, [1], [4], [4]),
            Err(PartSetError::ConflictingException(4))
        );
    }

    #[test]
    fn progression_with_large_start() {
        let b = PartSet::progression(5, 2).unwrap();
        assert_eq!(b.parts_up_to(11), vec![5, 7, 9, 11]);
    }

    #[test]
    fn series_form_examples() {
        let f = set("mod:3:1,2").series_form();
        assert!(f.exceptions.is_zero());
        assert_eq!(f.periodic, IntPolynomial::from_i64(&[0, 1, 1]));
        assert_eq!(f.modulus, 3);

        let f = set("ge:2").series_form();
        assert_eq!(f.exceptions, IntPolynomial::from_i64(&[0, -1]));
        assert_eq!(f.periodic, IntPolynomial::from_i64(&[0, 1]));
        assert_eq!(f.modulus, 1);

        let f = set("ap:1:3").series_form();
        assert!(f.exceptions.is_zero());
        assert_eq!(f.periodic, IntPolynomial::from_i64(&[0, 1]));

        let f = set("mod:3:0").series_form();
        assert_eq!(f.periodic, IntPolynomial::from_i64(&[0, 0, 0, 1]));
    }
}
