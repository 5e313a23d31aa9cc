//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `w^e1*c1 + w^e2*c2 + ...` with strictly
//! decreasing exponents (themselves ordinals) and positive coefficients.
//! The empty sum is zero. Only the operations the rank and hierarchy
//! constructions need are provided: comparison, successor, addition,
//! predecessor of successors and parity.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("ordinal coefficient overflow")]
    Overflow,
    #[error("invalid ordinal literal `{0}`")]
    Parse(String),
    #[error("terms are not in Cantor normal form")]
    NotNormal,
}

/// An ordinal in Cantor normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

/// Parity of an ordinal: the parity of its finite part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_bit(bit: bool) -> Parity {
        if bit {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Ordinal {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }

    pub fn omega() -> Ordinal {
        Ordinal::omega_pow(Ordinal::finite(1))
    }

    /// `w^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Ordinal {
        Ordinal {
            terms: vec![(exponent, 1)],
        }
    }

    /// Builds an ordinal from raw terms, checking the normal-form invariant.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Ordinal, OrdinalError> {
        let normal = terms.iter().all(|(_, c)| *c >= 1)
            && terms.windows(2).all(|w| w[0].0 > w[1].0);
        if normal {
            Ok(Ordinal { terms })
        } else {
            Err(OrdinalError::NotNormal)
        }
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// The finite part `n` in `self = lambda + n` with `lambda` a limit or zero.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.finite_part() > 0
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    pub fn succ(&self) -> Result<Ordinal, OrdinalError> {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((e, c)) if e.is_zero() => {
                *c = c.checked_add(1).ok_or(OrdinalError::Overflow)?;
            }
            _ => terms.push((Ordinal::zero(), 1)),
        }
        Ok(Ordinal { terms })
    }

    /// Predecessor of a successor ordinal; `None` for zero and limits.
    pub fn pred(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor has a finite term");
        if last.1 == 1 {
            terms.pop();
        } else {
            last.1 -= 1;
        }
        Some(Ordinal { terms })
    }

    /// Ordinal sum `self + other` (not commutative).
    pub fn add(&self, other: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let Some((lead_exp, lead_coef)) = other.terms.first() else {
            return Ok(self.clone());
        };
        let mut terms: Vec<(Ordinal, u64)> = Vec::new();
        let mut carry = 0u64;
        for (e, c) in &self.terms {
            match e.cmp(lead_exp) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal => carry = *c,
                Ordering::Less => break,
            }
        }
        let merged = carry.checked_add(*lead_coef).ok_or(OrdinalError::Overflow)?;
        terms.push((lead_exp.clone(), merged));
        terms.extend(other.terms[1..].iter().cloned());
        Ok(Ordinal { terms })
    }

    pub fn parity(&self) -> Parity {
        Parity::of_bit(self.finite_part() % 2 == 1)
    }

    /// Same parity (the congruence of the hierarchy constructions).
    pub fn congruent(&self, other: &Ordinal) -> bool {
        self.parity() == other.parity()
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Ordinal {
        Ordinal::finite(n)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Ordinal) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Ordinal) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
            } else if e.terms.len() == 1 && e.is_finite() {
                write!(f, "w^{e}*{c}")?;
            } else {
                write!(f, "w^({e})*{c}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Ordinal, OrdinalError> {
        let mut parser = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let ord = parser.sum().map_err(|_| OrdinalError::Parse(s.to_string()))?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(OrdinalError::Parse(s.to_string()));
        }
        Ok(ord)
    }
}

/// Recursive-descent parser for `sum := term (+ term)*`,
/// `term := int | w [^ (int | '(' sum ')')] [* int]`.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u64, ()> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .map_err(|_| ())?
            .parse()
            .map_err(|_| ())
    }

    fn sum(&mut self) -> Result<Ordinal, ()> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            let t = self.term()?;
            acc = acc.add(&t).map_err(|_| ())?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, ()> {
        if self.eat(b'w') {
            let exponent = if self.eat(b'^') {
                if self.eat(b'(') {
                    let e = self.sum()?;
                    if !self.eat(b')') {
                        return Err(());
                    }
                    e
                } else {
                    Ordinal::finite(self.int()?)
                }
            } else {
                Ordinal::finite(1)
            };
            let coef = if self.eat(b'*') { self.int()? } else { 1 };
            if coef == 0 {
                return Ok(Ordinal::zero());
            }
            Ok(Ordinal {
                terms: vec![(exponent, coef)],
            })
        } else {
            Ok(Ordinal::finite(self.int()?))
        }
    }
}

/// A rank value: an ordinal, or infinity for words in the stable remainder.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rank {
    At(Ordinal),
    Infinity,
}

impl Rank {
    pub fn finite(n: u64) -> Rank {
        Rank::At(Ordinal::finite(n))
    }

    pub fn ordinal(&self) -> Option<&Ordinal> {
        match self {
            Rank::At(o) => Some(o),
            Rank::Infinity => None,
        }
    }
}

impl Ord for Rank {
    fn cmp(&self, other: &Rank) -> Ordering {
        match (self, other) {
            (Rank::At(a), Rank::At(b)) => a.cmp(b),
            (Rank::At(_), Rank::Infinity) => Ordering::Less,
            (Rank::Infinity, Rank::At(_)) => Ordering::Greater,
            (Rank::Infinity, Rank::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Rank {
    fn partial_cmp(&self, other: &Rank) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::At(o) => write!(f, "{o}"),
            Rank::Infinity => write!(f, "INFTY"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ord(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn w() -> Ordinal {
        Ordinal::omega()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(Ordinal::zero().cmp(&Ordinal::zero()), Ordering::Equal);
        assert_eq!(Ordinal::finite(3).cmp(&w()), Ordering::Less);
        assert_eq!(ord("w*2 + 1").cmp(&ord("w*2")), Ordering::Greater);
    }

    #[test]
    fn succ_examples() {
        assert_eq!(Ordinal::zero().succ().unwrap(), Ordinal::finite(1));
        assert_eq!(w().succ().unwrap(), ord("w + 1"));
        assert_eq!(ord("w + 2").succ().unwrap(), ord("w + 3"));
    }

    #[test]
    fn add_examples() {
        assert_eq!(Ordinal::finite(1).add(&w()).unwrap(), w());
        assert_eq!(w().add(&Ordinal::finite(1)).unwrap(), ord("w + 1"));
        assert_eq!(ord("w + 1").add(&Ordinal::finite(2)).unwrap(), ord("w + 3"));
        assert_eq!(ord("w^2 + w").add(&ord("w*3 + 4")).unwrap(), ord("w^2 + w*4 + 4"));
        assert_eq!(ord("w + 5").add(&ord("w^2")).unwrap(), ord("w^2"));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(Ordinal::zero().parity(), Parity::Even);
        assert_eq!(w().parity(), Parity::Even);
        assert_eq!(ord("w + 3").parity(), Parity::Odd);
    }

    #[test]
    fn congruent_examples() {
        assert!(Ordinal::finite(2).congruent(&Ordinal::finite(4)));
        assert!(!w().congruent(&Ordinal::finite(1)));
        assert!(ord("w + 1").congruent(&Ordinal::finite(3)));
    }

    #[test]
    fn overflow_is_reported() {
        let big = Ordinal::finite(u64::MAX);
        assert_eq!(big.succ(), Err(OrdinalError::Overflow));
        assert_eq!(big.add(&Ordinal::finite(1)), Err(OrdinalError::Overflow));
    }

    #[test]
    fn pred_and_kinds() {
        assert_eq!(Ordinal::finite(3).pred(), Some(Ordinal::finite(2)));
        assert_eq!(ord("w + 1").pred(), Some(w()));
        assert_eq!(w().pred(), None);
        assert!(w().is_limit());
        assert!(!Ordinal::zero().is_limit());
    }

    #[test]
    fn render_and_parse() {
        assert_eq!(ord("w + 1").to_string(), "w^1*1 + 1");
        assert_eq!(ord("w^(w + 1)*2 + w^3*4 + 7").to_string(), "w^(w^1*1 + 1)*2 + w^3*4 + 7");
        assert_eq!(Ordinal::finite(12).to_string(), "12");
        assert!("w^".parse::<Ordinal>().is_err());
        assert!("3 x".parse::<Ordinal>().is_err());
        assert!(Ordinal::from_terms(vec![(Ordinal::zero(), 1), (w(), 1)]).is_err());
    }

    fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
        let leaf = (0u64..6).prop_map(Ordinal::finite);
        leaf.prop_recursive(2, 12, 4, |inner| {
            prop::collection::vec((inner, 1u64..5), 1..4).prop_map(|mut terms| {
                terms.sort_by(|a, b| b.0.cmp(&a.0));
                terms.dedup_by(|a, b| a.0 == b.0);
                Ordinal::from_terms(terms).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn trichotomy(a in arb_ordinal(), b in arb_ordinal()) {
            let less = a < b;
            let eq = a == b;
            let greater = a > b;
            prop_assert_eq!(less as u8 + eq as u8 + greater as u8, 1);
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        }

        #[test]
        fn succ_is_next(a in arb_ordinal()) {
            let s = a.succ().unwrap();
            prop_assert!(s > a);
            prop_assert_ne!(s.parity(), a.parity());
            prop_assert_eq!(s.pred(), Some(a.clone()));
        }

        #[test]
        fn add_associative(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            let left = a.add(&b).unwrap().add(&c).unwrap();
            let right = a.add(&b.add(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn add_is_monotone_in_right(a in arb_ordinal(), b in arb_ordinal()) {
            prop_assert!(a.add(&b).unwrap() >= b);
            prop_assert_eq!(a.add(&Ordinal::finite(1)).unwrap(), a.succ().unwrap());
        }

        #[test]
        fn text_round_trip(a in arb_ordinal()) {
            prop_assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a);
        }

        #[test]
        fn congruence_has_two_classes(sample in prop::collection::vec(arb_ordinal(), 3..10)) {
            for x in &sample {
                prop_assert!(x.congruent(x));
                for y in &sample {
                    prop_assert_eq!(x.congruent(y), y.congruent(x));
                    for z in &sample {
                        if x.congruent(y) && y.congruent(z) {
                            prop_assert!(x.congruent(z));
                        }
                    }
                }
            }
            let classes: std::collections::HashSet<_> = sample.iter().map(|x| x.parity()).collect();
            prop_assert!(classes.len() <= 2);
        }
    }
}
