//! Words over the fixed eleven-letter alphabet.
//!
//! A [`Word`] is stored run-length encoded: a sequence of [`Power`]s with
//! nonzero exponents and no two adjacent runs on the same letter. That is
//! exactly a freely reduced sequence of signed generators, but it lets
//! powers such as `s^(3^40)` be written down without expanding them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the eleven generator symbols of the tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    B,
    C,
    S,
    T,
    E,
    F,
    A,
    U,
    V,
    X,
    Y,
}

impl Letter {
    pub const ALL: [Letter; 11] = [
        Letter::B,
        Letter::C,
        Letter::S,
        Letter::T,
        Letter::E,
        Letter::F,
        Letter::A,
        Letter::U,
        Letter::V,
        Letter::X,
        Letter::Y,
    ];

    pub fn symbol(self) -> char {
        match self {
            Letter::B => 'b',
            Letter::C => 'c',
            Letter::S => 's',
            Letter::T => 't',
            Letter::E => 'e',
            Letter::F => 'f',
            Letter::A => 'a',
            Letter::U => 'u',
            Letter::V => 'v',
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }

    pub fn from_symbol(c: char) -> Option<Letter> {
        Letter::ALL.into_iter().find(|l| l.symbol() == c)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A signed generator `letter^(±1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub letter: Letter,
    pub sign: Sign,
}

impl Generator {
    pub fn new(letter: Letter, sign: Sign) -> Self {
        Generator { letter, sign }
    }

    pub fn inverse(self) -> Self {
        Generator {
            letter: self.letter,
            sign: self.sign.flip(),
        }
    }
}

/// A maximal run `letter^exp` inside a word; `exp` is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Power {
    pub letter: Letter,
    pub exp: BigInt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    runs: Vec<Power>,
}

impl Word {
    pub fn empty() -> Self {
        Word { runs: Vec::new() }
    }

    pub fn letter(letter: Letter) -> Self {
        Word::power(letter, 1)
    }

    pub fn power(letter: Letter, exp: impl Into<BigInt>) -> Self {
        let mut w = Word::empty();
        w.push_power(letter, exp.into());
        w
    }

    pub fn from_generators(gens: impl IntoIterator<Item = Generator>) -> Self {
        let mut w = Word::empty();
        for g in gens {
            w.push_power(g.letter, BigInt::from(g.sign.as_i64()));
        }
        w
    }

    pub fn runs(&self) -> &[Power] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Number of signed letters, saturating at `usize::MAX`.
    pub fn len(&self) -> usize {
        self.runs
            .iter()
            .map(|p| p.exp.abs().to_usize().unwrap_or(usize::MAX))
            .fold(0usize, |acc, n| acc.saturating_add(n))
    }

    /// Expands the runs into single signed letters.
    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.runs.iter().flat_map(|p| {
            let sign = if p.exp.is_positive() {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let n = p.exp.abs().to_usize().expect("run too long to expand");
            std::iter::repeat_n(Generator::new(p.letter, sign), n)
        })
    }

    pub fn letters_used(&self) -> BTreeSet<Letter> {
        self.runs.iter().map(|p| p.letter).collect()
    }

    /// Appends `letter^exp`, merging with the last run and cancelling freely.
    pub fn push_power(&mut self, letter: Letter, exp: BigInt) {
        if exp.is_zero() {
            return;
        }
        if let Some(last) = self.runs.last_mut() {
            if last.letter == letter {
                last.exp += exp;
                if last.exp.is_zero() {
                    self.runs.pop();
                }
                return;
            }
        }
        self.runs.push(Power { letter, exp });
    }

    pub fn push_word(&mut self, other: &Word) {
        for p in &other.runs {
            self.push_power(p.letter, p.exp.clone());
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        w.push_word(other);
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            runs: self
                .runs
                .iter()
                .rev()
                .map(|p| Power {
                    letter: p.letter,
                    exp: -&p.exp,
                })
                .collect(),
        }
    }

    /// Writes the word as `prefix · core · prefix⁻¹` with `core` cyclically reduced.
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let mut prefix = Word::empty();
        let mut core: Vec<Power> = self.runs.clone();
        while core.len() >= 2 {
            let n = core.len();
            if core[0].letter != core[n - 1].letter {
                break;
            }
            let (a, b) = (core[0].exp.clone(), core[n - 1].exp.clone());
            if (&a + &b).is_zero() {
                prefix.push_power(core[0].letter, a);
                core.pop();
                core.remove(0);
                continue;
            }
            if a.signum() == -b.signum() {
                // the shorter end moves into the prefix entirely
                let common = if a.abs() < b.abs() { a.clone() } else { -b.clone() };
                prefix.push_power(core[0].letter, common.clone());
                core[0].exp = &a - &common;
                core[n - 1].exp = &b + &common;
                core.retain(|p| !p.exp.is_zero());
            }
            break;
        }
        (prefix, Word { runs: core })
    }

    /// `self^n`. Cheap when the cyclic core is a single run; otherwise the
    /// core is repeated `|n|` times.
    pub fn pow(&self, n: &BigInt) -> Word {
        if n.is_zero() || self.is_empty() {
            return Word::empty();
        }
        let (prefix, core) = self.cyclic_decomposition();
        let core_pow = if core.runs.len() == 1 {
            Word::power(core.runs[0].letter, &core.runs[0].exp * n)
        } else {
            let base = if n.is_negative() { core.inverse() } else { core };
            let reps = n.abs().to_usize().expect("word power too large to expand");
            let mut out = Word::empty();
            for _ in 0..reps {
                out.push_word(&base);
            }
            out
        };
        prefix.concat(&core_pow).concat(&prefix.inverse())
    }

    pub fn exponent_sum(&self, letter: Letter) -> BigInt {
        self.runs
            .iter()
            .filter(|p| p.letter == letter)
            .map(|p| &p.exp)
            .sum()
    }

    /// Replaces every letter by a word and freely reduces.
    pub fn substitute<F>(&self, mut image: F) -> Word
    where
        F: FnMut(Letter) -> Word,
    {
        let mut out = Word::empty();
        for p in &self.runs {
            out.push_word(&image(p.letter).pow(&p.exp));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Word> {
        let mut w = Word::empty();
        let mut offset = 0;
        for token in text.split_whitespace() {
            let position = text[offset..].find(token).map(|i| i + offset).unwrap_or(offset);
            offset = position + token.len();
            if token == "1" {
                continue;
            }
            let (head, exp) = match token.split_once('^') {
                Some((h, e)) => (h, Some(e)),
                None => (token, None),
            };
            let mut chars = head.chars();
            let letter = match (chars.next(), chars.next()) {
                (Some(c), None) => Letter::from_symbol(c)
                    .ok_or_else(|| Error::parse(position, format!("unknown letter `{c}`")))?,
                _ => {
                    return Err(Error::parse(
                        position,
                        format!("expected a single letter, found `{head}`"),
                    ))
                }
            };
            let exp = match exp {
                None => BigInt::one(),
                Some(e) => parse_exponent(e).ok_or_else(|| {
                    Error::parse(position + head.len() + 1, format!("malformed exponent `{e}`"))
                })?,
            };
            w.push_power(letter, exp);
        }
        Ok(w)
    }

    /// Uniform sample from the freely reduced words of length at most
    /// `max_len` over `alphabet` (each letter with both signs).
    pub fn random<R: Rng + ?Sized>(rng: &mut R, alphabet: &[Letter], max_len: usize) -> Word {
        let k = 2 * alphabet.len() as u128;
        if k == 0 {
            return Word::empty();
        }
        // counts[l] = number of reduced words of length l
        let mut counts = vec![1u128];
        for l in 1..=max_len {
            let c = if l == 1 { k } else { counts[l - 1] * (k - 1) };
            counts.push(c);
        }
        let total: u128 = counts.iter().sum();
        let mut pick = rng.random_range(0..total);
        let mut len = 0;
        for (l, c) in counts.iter().enumerate() {
            if pick < *c {
                len = l;
                break;
            }
            pick -= c;
        }
        let mut gens: Vec<Generator> = Vec::with_capacity(len);
        for _ in 0..len {
            loop {
                let i = rng.random_range(0..k as usize);
                let sign = if i % 2 == 0 { Sign::Plus } else { Sign::Minus };
                let g = Generator::new(alphabet[i / 2], sign);
                if gens.last().is_some_and(|last| *last == g.inverse()) {
                    continue;
                }
                gens.push(g);
                break;
            }
        }
        Word::from_generators(gens)
    }
}

fn parse_exponent(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix('+').unwrap_or(text);
    let body = digits.strip_prefix('-').unwrap_or(digits);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "1");
        }
        for (i, p) in self.runs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if p.exp.is_one() {
                write!(f, "{}", p.letter)?;
            } else {
                write!(f, "{}^{}", p.letter, p.exp)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses a word, panicking on malformed input. Intended for literals.
pub fn w(text: &str) -> Word {
    Word::parse(text).unwrap_or_else(|e| panic!("bad word literal {text:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn parse_examples() {
        let x = w("t^-1 s t s^-3");
        assert_eq!(x.len(), 6);
        assert_eq!(x.runs().len(), 4);
        assert_eq!(w("b b").len(), 2);
        assert_eq!(w("b b"), Word::power(Letter::B, 2));
        assert!(w("c c^-1").is_empty());
        assert!(w("").is_empty());
        assert!(w("1").is_empty());
        assert_eq!(w("s^+2"), w("s s"));
    }

    #[test]
    fn parse_errors_carry_position() {
        match Word::parse("b q") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        match Word::parse("b c^x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Word::parse("bc").is_err());
        assert!(Word::parse("c^").is_err());
        assert!(Word::parse("c^--1").is_err());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("t^-1 s t").inverse(), w("t^-1 s^-1 t"));
        assert_eq!(Word::empty().inverse(), Word::empty());
        assert_eq!(w("b a c b^-1").inverse(), w("b c^-1 a^-1 b^-1"));
    }

    #[test]
    fn concat_examples() {
        assert!(w("t^-1 s").concat(&w("s^-1 t")).is_empty());
        assert_eq!(w("b").concat(&w("c^3")), w("b c^3"));
        let ac = w("a c");
        assert!(ac.concat(&ac.inverse()).is_empty());
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(w("u^-1 b a c b^-1 u a^-1").exponent_sum(Letter::U), BigInt::zero());
        assert_eq!(w("t^-1 s t s^-3").exponent_sum(Letter::S), BigInt::from(-2));
        assert_eq!(Word::empty().exponent_sum(Letter::A), BigInt::zero());
    }

    #[test]
    fn display_collapses_runs() {
        assert_eq!(w("c c c b^-1 b^-1").to_string(), "c^3 b^-2");
        assert_eq!(Word::empty().to_string(), "1");
        let big = Word::power(Letter::S, BigInt::from(3u8).pow(40));
        assert_eq!(big.to_string(), "s^12157665459056928801");
        assert_eq!(w(&big.to_string()), big);
    }

    #[test]
    fn pow_uses_cyclic_core() {
        assert_eq!(w("t s t^-1").pow(&BigInt::from(4)), w("t s^4 t^-1"));
        assert_eq!(w("a c").pow(&BigInt::from(-2)), w("c^-1 a^-1 c^-1 a^-1"));
        assert_eq!(w("b a c b^-1").pow(&BigInt::from(2)), w("b a c a c b^-1"));
        assert_eq!(w("s^2 c s^-1").pow(&BigInt::from(3)), w("s^2 c s c s c s^-1"));
        let huge = BigInt::from(10).pow(30);
        let expected = w("x").concat(&Word::power(Letter::C, huge.clone())).concat(&w("x^-1"));
        assert_eq!(w("x c x^-1").pow(&huge), expected);
    }

    #[test]
    fn random_words_are_reduced_and_bounded() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let alphabet = [Letter::B, Letter::C, Letter::S];
        for _ in 0..500 {
            let x = Word::random(&mut rng, &alphabet, 9);
            assert!(x.len() <= 9);
            let gens: Vec<_> = x.generators().collect();
            assert!(gens.windows(2).all(|p| p[0] != p[1].inverse()));
            assert!(x.letters_used().iter().all(|l| alphabet.contains(l)));
        }
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec((0usize..11, -3i64..=3), 0..12).prop_map(|v| {
            let mut out = Word::empty();
            for (i, e) in v {
                out.push_power(Letter::ALL[i], BigInt::from(e));
            }
            out
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(x in arb_word()) {
            prop_assert_eq!(Word::parse(&x.to_string()).unwrap(), x);
        }

        #[test]
        fn inverse_involution_and_cancellation(x in arb_word()) {
            prop_assert_eq!(x.inverse().inverse(), x.clone());
            prop_assert!(x.concat(&x.inverse()).is_empty());
        }

        #[test]
        fn concat_associative(x in arb_word(), y in arb_word(), z in arb_word()) {
            prop_assert_eq!(x.concat(&y).concat(&z), x.concat(&y.concat(&z)));
        }

        #[test]
        fn exponent_sum_is_additive(x in arb_word(), y in arb_word(), i in 0usize..11) {
            let l = Letter::ALL[i];
            prop_assert_eq!(x.concat(&y).exponent_sum(l), x.exponent_sum(l) + y.exponent_sum(l));
            prop_assert_eq!(x.inverse().exponent_sum(l), -x.exponent_sum(l));
        }

        #[test]
        fn pow_matches_repeated_concat(x in arb_word(), n in -4i64..=4) {
            let mut expected = Word::empty();
            let base = if n < 0 { x.inverse() } else { x.clone() };
            for _ in 0..n.abs() {
                expected.push_word(&base);
            }
            prop_assert_eq!(x.pow(&BigInt::from(n)), expected);
        }
    }
}
