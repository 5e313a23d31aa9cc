use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The symbol set `{0, .., k-1}` with `k >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(usize);

impl Alphabet {
    pub fn new(k: usize) -> Result<Alphabet> {
        if k < 2 {
            return Err(Error::InvalidAlphabet(k));
        }
        Ok(Alphabet(k))
    }

    pub const fn binary() -> Alphabet {
        Alphabet(2)
    }

    pub fn size(self) -> usize {
        self.0
    }

    pub fn ensure_same(self, other: Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.0,
                right: other.0,
            })
        }
    }

    /// All words of length exactly `len`, in lexicographic order.
    pub fn words_of_len(self, len: usize) -> impl Iterator<Item = Word> {
        let k = self.0;
        let count = k.checked_pow(len as u32).expect("word enumeration overflow");
        (0..count).map(move |mut idx| {
            let mut symbols = vec![0; len];
            for slot in symbols.iter_mut().rev() {
                *slot = idx % k;
                idx /= k;
            }
            Word(symbols)
        })
    }

    /// All words of length at most `max_len`, shortest first.
    pub fn words_up_to(self, max_len: usize) -> impl Iterator<Item = Word> {
        (0..=max_len).flat_map(move |len| self.words_of_len(len))
    }
}

fn symbol_char(a: usize) -> char {
    char::from_digit(a as u32, 36).expect("symbol literals support alphabets up to 36")
}

fn parse_symbols(s: &str) -> Option<Vec<usize>> {
    s.chars()
        .map(|c| c.to_digit(36).map(|d| d as usize))
        .collect()
}

/// A finite word over the alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.0.clone();
        symbols.extend_from_slice(&other.0);
        Word(symbols)
    }

    pub fn push(&mut self, a: usize) {
        self.0.push(a);
    }

    pub fn fits(&self, alphabet: Alphabet) -> bool {
        self.0.iter().all(|&a| a < alphabet.size())
    }
}

impl From<Vec<usize>> for Word {
    fn from(symbols: Vec<usize>) -> Word {
        Word(symbols)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.0 {
            write!(f, "{}", symbol_char(a))?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "e" || s == "ε" {
            return Ok(Word::default());
        }
        parse_symbols(s)
            .map(Word)
            .ok_or_else(|| Error::InvalidWord(s.to_string()))
    }
}

/// The ultimately periodic point `u v v v ...`, kept in canonical form:
/// the period is primitive and the prefix is as short as possible.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UpWord {
    prefix: Word,
    period: Word,
}

impl UpWord {
    pub fn new(prefix: Word, period: Word) -> Result<UpWord> {
        if period.is_empty() {
            return Err(Error::InvalidWord(format!("{prefix}()")));
        }
        let mut u = prefix.0;
        let mut v = primitive_root(period.0);
        while let (Some(&a), Some(&b)) = (u.last(), v.last()) {
            if a != b {
                break;
            }
            u.pop();
            v.rotate_right(1);
        }
        Ok(UpWord {
            prefix: Word(u),
            period: Word(v),
        })
    }

    /// `period^omega`.
    pub fn periodic(period: Word) -> Result<UpWord> {
        UpWord::new(Word::default(), period)
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn symbol_at(&self, i: usize) -> usize {
        if i < self.prefix.len() {
            self.prefix.0[i]
        } else {
            let j = (i - self.prefix.len()) % self.period.len();
            self.period.0[j]
        }
    }

    /// The finite prefix `f|n`.
    pub fn take(&self, n: usize) -> Word {
        Word((0..n).map(|i| self.symbol_at(i)).collect())
    }

    pub fn fits(&self, alphabet: Alphabet) -> bool {
        self.prefix.fits(alphabet) && self.period.fits(alphabet)
    }

    /// All canonical points with `|u| + |v| = total`, sorted by prefix then period.
    pub fn all_of_length(alphabet: Alphabet, total: usize) -> Vec<UpWord> {
        let mut layer = Vec::new();
        for plen in 0..total {
            for prefix in alphabet.words_of_len(plen) {
                for period in alphabet.words_of_len(total - plen) {
                    let w = UpWord::new(prefix.clone(), period).expect("nonempty period");
                    if w.prefix.len() == plen && w.period.len() == total - plen {
                        layer.push(w);
                    }
                }
            }
        }
        layer.sort();
        layer
    }

    /// Applies a letter-to-word substitution to the whole point.
    pub fn substitute(&self, image: impl Fn(usize) -> Vec<usize>) -> Result<UpWord> {
        let map = |w: &Word| Word(w.0.iter().flat_map(|&a| image(a)).collect());
        UpWord::new(map(&self.prefix), map(&self.period))
    }
}

fn primitive_root(v: Vec<usize>) -> Vec<usize> {
    let n = v.len();
    for p in 1..n {
        if n.is_multiple_of(p) && (p..n).all(|i| v[i] == v[i - p]) {
            return v[..p].to_vec();
        }
    }
    v
}

impl fmt::Display for UpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.prefix, self.period)
    }
}

impl FromStr for UpWord {
    type Err = Error;

    /// Parses `u(v)`, meaning `u v^omega`.
    fn from_str(s: &str) -> Result<UpWord> {
        let s = s.trim();
        let bad = || Error::InvalidWord(s.to_string());
        let open = s.find('(').ok_or_else(bad)?;
        let body = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let prefix = parse_symbols(&s[..open]).ok_or_else(bad)?;
        let period = parse_symbols(body).ok_or_else(bad)?;
        UpWord::new(Word(prefix), Word(period)).map_err(|_| bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn up(s: &str) -> UpWord {
        s.parse().unwrap()
    }

    #[test]
    fn alphabet_needs_two_symbols() {
        assert!(Alphabet::new(1).is_err());
        assert!(Alphabet::new(0).is_err());
        assert_eq!(Alphabet::new(3).unwrap().size(), 3);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(up("0(0)"), up("(0)"));
        assert_eq!(up("(0101)"), up("(01)"));
        assert_eq!(up("1(01)"), up("(10)"));
        assert_eq!(up("001(10)").to_string(), "001(10)");
        assert_eq!(up("0010(10)").to_string(), "0(01)");
        assert_eq!(up("10(0)").to_string(), "1(0)");
        assert!("01".parse::<UpWord>().is_err());
        assert!("0()".parse::<UpWord>().is_err());
    }

    #[test]
    fn take_and_index() {
        let w = up("01(10)");
        assert_eq!(w.take(6).to_string(), "011010");
        assert_eq!(w.symbol_at(100), w.symbol_at(98));
    }

    #[test]
    fn word_enumeration_counts() {
        let b = Alphabet::binary();
        assert_eq!(b.words_of_len(3).count(), 8);
        assert_eq!(b.words_up_to(3).count(), 15);
        assert_eq!(b.words_of_len(0).next().unwrap(), Word::default());
    }

    proptest! {
        #[test]
        fn canonicalization_preserves_the_point(
            u in prop::collection::vec(0usize..3, 0..5),
            v in prop::collection::vec(0usize..3, 1..4),
            reps in 1usize..3,
            extra in 0usize..4,
        ) {
            let w = UpWord::new(Word(u.clone()), Word(v.clone())).unwrap();
            // an equivalent presentation: unroll the period `extra` symbols into the prefix
            let mut u2 = u.clone();
            for i in 0..extra {
                u2.push(v[i % v.len()]);
            }
            let mut v2 = Vec::new();
            for _ in 0..reps {
                for i in 0..v.len() {
                    v2.push(v[(i + extra) % v.len()]);
                }
            }
            let w2 = UpWord::new(Word(u2), Word(v2)).unwrap();
            prop_assert_eq!(&w, &w2);
            for i in 0..20 {
                let direct = if i < u.len() { u[i] } else { v[(i - u.len()) % v.len()] };
                prop_assert_eq!(w.symbol_at(i), direct);
            }
            prop_assert_eq!(w.to_string().parse::<UpWord>().unwrap(), w);
        }
    }
}
