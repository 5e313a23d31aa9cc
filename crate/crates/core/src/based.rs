//! Guessers that read membership bits `(chi_{S_0}(f), chi_{S_1}(f), ...)`
//! of a fixed family instead of the symbols of `f`.
//!
//! Families are either explicit and eventually periodic, or the cylinder
//! family `{f : f(i) = j}` listed `i` major, `j` minor. On an ultimately
//! periodic point both give an ultimately periodic bit stream, so limits
//! stay exact.

use crate::error::{Error, Result};
use crate::graph::TransitionTable;
use crate::guesser::{Limit, MooreGuesser};
use crate::space::{Alphabet, ParitySet, UpWord, Word};

#[derive(Debug, Clone)]
enum Kind {
    Explicit { prefix: Vec<ParitySet>, cycle: Vec<ParitySet> },
    Cylinders { alphabet: Alphabet },
}

#[derive(Debug, Clone)]
pub struct OracleFamily(Kind);

impl OracleFamily {
    /// `S_i = prefix[i]` for `i < prefix.len()`, then the cycle repeats.
    pub fn explicit(prefix: Vec<ParitySet>, cycle: Vec<ParitySet>) -> Result<OracleFamily> {
        let Some(first) = cycle.first() else {
            return Err(Error::InvalidWord("family cycle must be nonempty".into()));
        };
        for s in prefix.iter().chain(&cycle) {
            first.alphabet().ensure_same(s.alphabet())?;
        }
        Ok(OracleFamily(Kind::Explicit { prefix, cycle }))
    }

    pub fn cylinders(alphabet: Alphabet) -> OracleFamily {
        OracleFamily(Kind::Cylinders { alphabet })
    }

    pub fn alphabet(&self) -> Alphabet {
        match &self.0 {
            Kind::Explicit { cycle, .. } => cycle[0].alphabet(),
            Kind::Cylinders { alphabet } => *alphabet,
        }
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.0, Kind::Explicit { .. })
    }

    /// The whole stream `S(f)` as a binary ultimately periodic word.
    pub fn stream(&self, w: &UpWord) -> Result<UpWord> {
        if !w.fits(self.alphabet()) {
            return Err(Error::InvalidWord(format!("{w} is not over the family's alphabet")));
        }
        match &self.0 {
            Kind::Explicit { prefix, cycle } => {
                let bits = |sets: &[ParitySet]| -> Result<Word> {
                    let v = sets
                        .iter()
                        .map(|s| s.membership_up(w).map(usize::from))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Word::from(v))
                };
                UpWord::new(bits(prefix)?, bits(cycle)?)
            }
            Kind::Cylinders { alphabet } => {
                let k = alphabet.size();
                w.substitute(|a| (0..k).map(|j| usize::from(j == a)).collect())
            }
        }
    }
}

/// The first `n` bits of a stream together with its eventual period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyStream {
    pub bits: Vec<bool>,
    /// Position from which the stream is periodic.
    pub prefix_len: usize,
    pub period: usize,
}

pub fn family_stream(family: &OracleFamily, w: &UpWord, n: usize) -> Result<FamilyStream> {
    let stream = family.stream(w)?;
    Ok(FamilyStream {
        bits: stream.take(n).symbols().iter().map(|&b| b == 1).collect(),
        prefix_len: stream.prefix().len(),
        period: stream.period().len(),
    })
}

/// Outputs the last bit read, 0 on the empty input.
pub fn last_bit_guesser() -> MooreGuesser {
    MooreGuesser::from_rows(Alphabet::binary(), 0, vec![vec![0, 1], vec![0, 1]], vec![false, true])
        .expect("two states")
}

fn ensure_bits(g: &MooreGuesser) -> Result<()> {
    Alphabet::binary().ensure_same(g.alphabet())
}

/// The limit of `g` along `S(f)` equals `chi_S(f)`.
pub fn verify_based(g: &MooreGuesser, family: &OracleFamily, s: &ParitySet, w: &UpWord) -> Result<bool> {
    ensure_bits(g)?;
    family.alphabet().ensure_same(s.alphabet())?;
    let stream = family.stream(w)?;
    Ok(g.limit_on_up(&stream)? == Limit::Value(s.membership_up(w)?))
}

/// `chi_S(f)` equals both the lim inf and the lim sup of `chi_{S_m}(f)`.
pub fn limsup_liminf_check(family: &OracleFamily, s: &ParitySet, w: &UpWord) -> Result<bool> {
    if !family.is_explicit() {
        return Err(Error::NotEventuallyPeriodic);
    }
    family.alphabet().ensure_same(s.alphabet())?;
    let stream = family.stream(w)?;
    let cycle = stream.period().symbols();
    let liminf = cycle.iter().all(|&b| b == 1);
    let limsup = cycle.contains(&1);
    let member = s.membership_up(w)?;
    Ok(member == liminf && member == limsup)
}

/// A bit guesser for the cylinder family over `g`'s alphabet: it decodes
/// each block of `k` bits into the symbol whose bit is set and runs `g` on
/// the decoded symbols, repeating `g`'s latest output inside a block.
/// Blocks with no bit set decode to symbol 0.
pub fn cylinder_simulator(g: &MooreGuesser) -> MooreGuesser {
    let k = g.alphabet().size();
    let (table, keys) = TransitionTable::explore(
        Alphabet::binary(),
        (g.start(), 0usize, None::<usize>),
        |&(p, pos, found), bit| {
            let found = if bit == 1 { found.or(Some(pos)) } else { found };
            if pos + 1 == k {
                (g.next(p, found.unwrap_or(0)), 0, None)
            } else {
                (p, pos + 1, found)
            }
        },
    );
    let output = keys.iter().map(|&(p, _, _)| g.output(p)).collect();
    MooreGuesser::new(table, 0, output).expect("explored")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::canonical_up_words;
    use crate::fixtures;
    use crate::guesser::synthesize;

    fn up(s: &str) -> UpWord {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn stream_examples() {
        let full = OracleFamily::explicit(vec![], vec![fixtures::f_full()]).unwrap();
        assert_eq!(family_stream(&full, &up("(0)"), 4).unwrap().bits, bits("1111"));

        let cyl = OracleFamily::cylinders(Alphabet::binary());
        let s = family_stream(&cyl, &up("10(0)"), 4).unwrap();
        assert_eq!(s.bits, bits("0110"));

        let alt = OracleFamily::explicit(vec![], vec![fixtures::f_one(), fixtures::f_one().complement()]).unwrap();
        let s = family_stream(&alt, &up("(0)"), 4).unwrap();
        assert_eq!(s.bits, bits("0101"));
        assert_eq!((s.prefix_len, s.period), (0, 2));
    }

    #[test]
    fn stream_period_is_correct() {
        let families = [
            OracleFamily::cylinders(Alphabet::binary()),
            OracleFamily::explicit(vec![fixtures::f_empty()], vec![fixtures::f_one(), fixtures::f_no11()]).unwrap(),
        ];
        for f in &families {
            for x in canonical_up_words(Alphabet::binary(), 60) {
                let s = family_stream(f, &x, 64).unwrap();
                for i in s.prefix_len..64 - s.period {
                    assert_eq!(s.bits[i], s.bits[i + s.period]);
                }
            }
        }
    }

    #[test]
    fn last_bit_examples() {
        let g = last_bit_guesser();
        assert!(!g.evaluate(&w("0110")).unwrap());
        assert!(g.evaluate(&w("1")).unwrap());
        assert!(!g.evaluate(&Word::default()).unwrap());
    }

    #[test]
    fn verify_based_examples() {
        let g = last_bit_guesser();
        let one = OracleFamily::explicit(vec![], vec![fixtures::f_one()]).unwrap();
        for x in canonical_up_words(Alphabet::binary(), 50) {
            assert!(verify_based(&g, &one, &fixtures::f_one(), &x).unwrap());
        }
        let full = OracleFamily::explicit(vec![], vec![fixtures::f_full()]).unwrap();
        assert!(!verify_based(&g, &full, &fixtures::f_empty(), &up("(0)")).unwrap());

        let sim = cylinder_simulator(synthesize(&fixtures::f_one()).unwrap().guesser());
        let cyl = OracleFamily::cylinders(Alphabet::binary());
        for x in canonical_up_words(Alphabet::binary(), 100) {
            assert!(verify_based(&sim, &cyl, &fixtures::f_one(), &x).unwrap());
        }
    }

    #[test]
    fn verify_based_rejects_mismatch() {
        let three = Alphabet::new(3).unwrap();
        let fam = OracleFamily::explicit(vec![], vec![ParitySet::full(three)]).unwrap();
        assert!(verify_based(&last_bit_guesser(), &fam, &fixtures::f_one(), &up("(0)")).is_err());
        let sym = synthesize(&fixtures::f_one()).unwrap();
        let three_sym = MooreGuesser::constant(three, false);
        let cyl = OracleFamily::cylinders(Alphabet::binary());
        assert!(verify_based(&three_sym, &cyl, &fixtures::f_one(), &up("(0)")).is_err());
        assert!(verify_based(sym.guesser(), &cyl, &fixtures::f_one(), &up("(0)")).is_ok());
    }

    #[test]
    fn limsup_liminf_examples() {
        let one = OracleFamily::explicit(vec![], vec![fixtures::f_one()]).unwrap();
        let alt = OracleFamily::explicit(vec![], vec![fixtures::f_one(), fixtures::f_full()]).unwrap();
        let pre = OracleFamily::explicit(vec![fixtures::f_empty()], vec![fixtures::f_one()]).unwrap();
        for x in canonical_up_words(Alphabet::binary(), 50) {
            assert!(limsup_liminf_check(&one, &fixtures::f_one(), &x).unwrap());
            assert!(limsup_liminf_check(&pre, &fixtures::f_one(), &x).unwrap());
        }
        assert!(!limsup_liminf_check(&alt, &fixtures::f_one(), &up("(0)")).unwrap());
        let cyl = OracleFamily::cylinders(Alphabet::binary());
        assert!(matches!(
            limsup_liminf_check(&cyl, &fixtures::f_one(), &up("(0)")),
            Err(Error::NotEventuallyPeriodic)
        ));
    }

    #[test]
    fn explicit_family_validation() {
        assert!(OracleFamily::explicit(vec![fixtures::f_one()], vec![]).is_err());
        let three = ParitySet::full(Alphabet::new(3).unwrap());
        assert!(OracleFamily::explicit(vec![three], vec![fixtures::f_one()]).is_err());
    }
}
