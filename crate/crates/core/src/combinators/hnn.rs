use num_bigint::BigInt;

use super::{CyclicOracle, Group};
use crate::error::{Error, Result};
use crate::words::{Letter, Sign, Word};

/// A stable letter `t` with relation `t⁻¹ · lowerⁿ · t = upperⁿ`.
///
/// `lower` decides membership in the subgroup that `t⁻¹ · _ · t` carries
/// across, `upper` in its image.
#[derive(Debug)]
pub struct StableLetter<B: Group> {
    pub letter: Letter,
    pub lower: CyclicOracle<B>,
    pub upper: CyclicOracle<B>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StableStep<E> {
    /// Index into the extension's stable letters.
    pub letter: usize,
    pub sign: Sign,
    /// Base element following the stable letter.
    pub coef: E,
}

/// `head · t₁^ε₁ · g₁ ⋯ t_k^ε_k · g_k` with no pinch.
#[derive(Clone, Debug, PartialEq)]
pub struct BrittonWord<E> {
    pub head: E,
    pub tail: Vec<StableStep<E>>,
}

impl<E> BrittonWord<E> {
    /// Number of stable letters.
    pub fn t_length(&self) -> usize {
        self.tail.len()
    }

    fn trailing_mut(&mut self) -> &mut E {
        match self.tail.last_mut() {
            Some(step) => &mut step.coef,
            None => &mut self.head,
        }
    }
}

/// HNN extension of `base` by one or more stable letters over cyclic
/// associated subgroups. Elements are kept Britton-reduced, so an element
/// with a nonempty tail is never the identity.
#[derive(Debug)]
pub struct Hnn<B: Group> {
    name: String,
    base: B,
    letters: Vec<StableLetter<B>>,
    alphabet: Vec<Letter>,
}

impl<B: Group> Hnn<B> {
    pub fn new(name: impl Into<String>, base: B, letters: Vec<StableLetter<B>>) -> Result<Self> {
        let mut alphabet = base.alphabet().to_vec();
        for sl in &letters {
            if alphabet.contains(&sl.letter) {
                return Err(Error::Config(format!(
                    "stable letter `{}` already belongs to the alphabet",
                    sl.letter
                )));
            }
            alphabet.push(sl.letter);
        }
        Ok(Hnn {
            name: name.into(),
            base,
            letters,
            alphabet,
        })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn stable_letters(&self) -> &[StableLetter<B>] {
        &self.letters
    }

    pub fn stable_index(&self, l: Letter) -> Option<usize> {
        self.letters.iter().position(|sl| sl.letter == l)
    }

    pub fn stable_letter(&self, l: Letter) -> Option<&StableLetter<B>> {
        self.letters.iter().find(|sl| sl.letter == l)
    }

    pub fn embed(&self, x: B::Elem) -> BrittonWord<B::Elem> {
        BrittonWord {
            head: x,
            tail: Vec::new(),
        }
    }

    /// Signed count of the given stable letter; a homomorphism to Z
    /// because every relation is balanced in it.
    pub fn exponent_sum(&self, x: &BrittonWord<B::Elem>, l: Letter) -> BigInt {
        let Some(idx) = self.stable_index(l) else {
            return BigInt::from(0);
        };
        x.tail
            .iter()
            .filter(|s| s.letter == idx)
            .map(|s| s.sign.as_i64())
            .sum::<i64>()
            .into()
    }

    /// The base element a pinch `t^ε · middle · t^-ε` collapses to, if any.
    fn transport(&self, letter: usize, first: Sign, middle: &B::Elem) -> Option<B::Elem> {
        let sl = &self.letters[letter];
        match first {
            Sign::Minus => sl
                .lower
                .member(&self.base, middle)
                .map(|n| sl.upper.power(&self.base, &n)),
            Sign::Plus => sl
                .upper
                .member(&self.base, middle)
                .map(|n| sl.lower.power(&self.base, &n)),
        }
    }

    fn push_step(&self, acc: &mut BrittonWord<B::Elem>, letter: usize, sign: Sign, coef: &B::Elem) {
        if let Some(last) = acc.tail.last() {
            if last.letter == letter && last.sign == sign.flip() {
                if let Some(h) = self.transport(letter, last.sign, &last.coef) {
                    acc.tail.pop();
                    let trailing = acc.trailing_mut();
                    self.base.mul_assign(trailing, &h);
                    self.base.mul_assign(trailing, coef);
                    return;
                }
            }
        }
        acc.tail.push(StableStep {
            letter,
            sign,
            coef: coef.clone(),
        });
    }
}

impl<B: Group> Group for Hnn<B> {
    type Elem = BrittonWord<B::Elem>;

    fn name(&self) -> &str {
        &self.name
    }

    fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    fn identity(&self) -> Self::Elem {
        self.embed(self.base.identity())
    }

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let mut out = x.clone();
        self.mul_assign(&mut out, y);
        out
    }

    fn mul_assign(&self, acc: &mut Self::Elem, y: &Self::Elem) {
        self.base.mul_assign(acc.trailing_mut(), &y.head);
        for step in &y.tail {
            self.push_step(acc, step.letter, step.sign, &step.coef);
        }
    }

    fn inv(&self, x: &Self::Elem) -> Self::Elem {
        let head = match x.tail.last() {
            Some(step) => self.base.inv(&step.coef),
            None => self.base.inv(&x.head),
        };
        let mut tail = Vec::with_capacity(x.tail.len());
        for i in (0..x.tail.len()).rev() {
            let prev = if i == 0 { &x.head } else { &x.tail[i - 1].coef };
            tail.push(StableStep {
                letter: x.tail[i].letter,
                sign: x.tail[i].sign.flip(),
                coef: self.base.inv(prev),
            });
        }
        BrittonWord { head, tail }
    }

    fn is_trivial(&self, x: &Self::Elem) -> bool {
        x.tail.is_empty() && self.base.is_trivial(&x.head)
    }

    fn letter(&self, l: Letter) -> Option<Self::Elem> {
        if let Some(idx) = self.stable_index(l) {
            return Some(BrittonWord {
                head: self.base.identity(),
                tail: vec![StableStep {
                    letter: idx,
                    sign: Sign::Plus,
                    coef: self.base.identity(),
                }],
            });
        }
        self.base.letter(l).map(|x| self.embed(x))
    }

    fn to_word(&self, x: &Self::Elem) -> Word {
        let mut out = self.base.to_word(&x.head);
        for step in &x.tail {
            out.push_power(self.letters[step.letter].letter, step.sign.as_i64().into());
            out.push_word(&self.base.to_word(&step.coef));
        }
        out
    }

    fn reduce(&self, x: &Self::Elem) -> Self::Elem {
        let mut out = self.embed(self.base.reduce(&x.head));
        for step in &x.tail {
            self.push_step(&mut out, step.letter, step.sign, &self.base.reduce(&step.coef));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_integer::Integer;
    use num_traits::Zero;

    use super::*;
    use crate::combinators::{CyclicGroup, Strategy};
    use crate::words::w;

    /// BS(1,2) = ⟨a, t | t⁻¹ a t = a²⟩ over the infinite cyclic group ⟨a⟩.
    fn bs12() -> Hnn<CyclicGroup> {
        let base = CyclicGroup::infinite(Letter::A);
        let lower = CyclicOracle::new(
            &base,
            "<a>",
            w("a"),
            Strategy::ExponentSum,
            Arc::new(|_, x: &BigInt| vec![x.clone()]),
        )
        .unwrap();
        let upper = CyclicOracle::new(
            &base,
            "<a^2>",
            w("a^2"),
            Strategy::ExponentSum,
            Arc::new(|_, x: &BigInt| {
                let (q, r) = x.div_rem(&BigInt::from(2));
                if r.is_zero() {
                    vec![q]
                } else {
                    vec![]
                }
            }),
        )
        .unwrap();
        Hnn::new(
            "BS(1,2)",
            base,
            vec![StableLetter {
                letter: Letter::T,
                lower,
                upper,
            }],
        )
        .unwrap()
    }

    #[test]
    fn defining_relation_collapses() {
        let g = bs12();
        assert!(g.word_is_trivial(&w("t^-1 a t a^-2")).unwrap());
        assert!(g.word_is_trivial(&w("t a^2 t^-1 a^-1")).unwrap());
    }

    #[test]
    fn unpinchable_words_stay_reduced() {
        let g = bs12();
        let x = g.eval(&w("t a t^-1")).unwrap();
        assert_eq!(x.t_length(), 2);
        assert!(!g.is_trivial(&x));
    }

    #[test]
    fn conjugation_doubles_exponents() {
        let g = bs12();
        for k in 0..70u32 {
            let mut word = Word::power(Letter::T, -(k as i64));
            word.push_word(&w("a"));
            word.push_power(Letter::T, k.into());
            let x = g.eval(&word).unwrap();
            assert!(x.tail.is_empty());
            assert_eq!(x.head, BigInt::from(2).pow(k));
        }
    }

    #[test]
    fn inverse_and_reduce() {
        let g = bs12();
        let x = g.eval(&w("a t a^3 t^-1 a t^2 a")).unwrap();
        assert!(g.is_trivial(&g.mul(&x, &g.inv(&x))));
        assert!(g.is_trivial(&g.mul(&g.inv(&x), &x)));
        assert_eq!(g.reduce(&x), x);
        // an unreduced tail is collapsed by reduce
        let raw = BrittonWord {
            head: BigInt::from(1),
            tail: vec![
                StableStep { letter: 0, sign: Sign::Minus, coef: BigInt::from(3) },
                StableStep { letter: 0, sign: Sign::Plus, coef: BigInt::from(0) },
            ],
        };
        let r = g.reduce(&raw);
        assert!(r.tail.is_empty());
        assert_eq!(r.head, BigInt::from(7));
    }

    #[test]
    fn duplicate_stable_letter_is_rejected() {
        let g = bs12();
        let base = CyclicGroup::infinite(Letter::T);
        let lower = CyclicOracle::new(&base, "x", w("t"), Strategy::ExponentSum, Arc::new(|_, x: &BigInt| vec![x.clone()])).unwrap();
        let upper = CyclicOracle::new(&base, "y", w("t"), Strategy::ExponentSum, Arc::new(|_, x: &BigInt| vec![x.clone()])).unwrap();
        let err = Hnn::new("bad", base, vec![StableLetter { letter: Letter::T, lower, upper }]);
        assert!(matches!(err, Err(Error::Config(_))));
        assert_eq!(g.exponent_sum(&g.eval(&w("t a t^-1 t^-1")).unwrap(), Letter::T), BigInt::from(-1));
    }
}
