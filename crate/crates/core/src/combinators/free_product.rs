use super::Group;
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

#[derive(Clone, Debug, PartialEq)]
pub enum Syllable<L, R> {
    Left(L),
    Right(R),
}

/// Free-product normal form: nontrivial syllables alternating between the
/// two factors. The empty sequence is the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct SyllableWord<L, R> {
    syllables: Vec<Syllable<L, R>>,
}

impl<L, R> SyllableWord<L, R> {
    pub fn syllables(&self) -> &[Syllable<L, R>] {
        &self.syllables
    }

    pub fn syllable_len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// The left-factor element when the whole word is one left syllable (or empty).
    pub fn as_left(&self) -> Option<Option<&L>> {
        match self.syllables.as_slice() {
            [] => Some(None),
            [Syllable::Left(x)] => Some(Some(x)),
            _ => None,
        }
    }

    /// The right-factor element when the whole word is one right syllable (or empty).
    pub fn as_right(&self) -> Option<Option<&R>> {
        match self.syllables.as_slice() {
            [] => Some(None),
            [Syllable::Right(x)] => Some(Some(x)),
            _ => None,
        }
    }
}

/// `left ∗ right`. Factor alphabets must be disjoint.
#[derive(Debug)]
pub struct FreeProduct<L: Group, R: Group> {
    name: String,
    left: L,
    right: R,
    alphabet: Vec<Letter>,
}

impl<L: Group, R: Group> FreeProduct<L, R> {
    pub fn new(name: impl Into<String>, left: L, right: R) -> Result<Self> {
        if let Some(l) = left.alphabet().iter().find(|l| right.contains_letter(**l)) {
            return Err(Error::Config(format!(
                "free product factors {} and {} share the letter `{l}`",
                left.name(),
                right.name()
            )));
        }
        let alphabet = left
            .alphabet()
            .iter()
            .chain(right.alphabet())
            .copied()
            .collect();
        Ok(FreeProduct {
            name: name.into(),
            left,
            right,
            alphabet,
        })
    }

    pub fn left(&self) -> &L {
        &self.left
    }

    pub fn right(&self) -> &R {
        &self.right
    }

    pub fn inject_left(&self, x: L::Elem) -> SyllableWord<L::Elem, R::Elem> {
        let mut out = SyllableWord { syllables: vec![] };
        self.push(&mut out, Syllable::Left(x));
        out
    }

    pub fn inject_right(&self, x: R::Elem) -> SyllableWord<L::Elem, R::Elem> {
        let mut out = SyllableWord { syllables: vec![] };
        self.push(&mut out, Syllable::Right(x));
        out
    }

    /// Builds a normal form from arbitrary (possibly trivial or adjacent
    /// same-factor) syllables.
    pub fn from_syllables(
        &self,
        syllables: impl IntoIterator<Item = Syllable<L::Elem, R::Elem>>,
    ) -> SyllableWord<L::Elem, R::Elem> {
        let mut out = SyllableWord { syllables: vec![] };
        for s in syllables {
            self.push(&mut out, s);
        }
        out
    }

    fn push(&self, acc: &mut SyllableWord<L::Elem, R::Elem>, s: Syllable<L::Elem, R::Elem>) {
        match (acc.syllables.last_mut(), s) {
            (Some(Syllable::Left(top)), Syllable::Left(x)) => {
                self.left.mul_assign(top, &x);
                if self.left.is_trivial(top) {
                    acc.syllables.pop();
                }
            }
            (Some(Syllable::Right(top)), Syllable::Right(x)) => {
                self.right.mul_assign(top, &x);
                if self.right.is_trivial(top) {
                    acc.syllables.pop();
                }
            }
            (_, Syllable::Left(x)) => {
                if !self.left.is_trivial(&x) {
                    acc.syllables.push(Syllable::Left(x));
                }
            }
            (_, Syllable::Right(x)) => {
                if !self.right.is_trivial(&x) {
                    acc.syllables.push(Syllable::Right(x));
                }
            }
        }
    }
}

impl<L: Group, R: Group> Group for FreeProduct<L, R> {
    type Elem = SyllableWord<L::Elem, R::Elem>;

    fn name(&self) -> &str {
        &self.name
    }

    fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    fn identity(&self) -> Self::Elem {
        SyllableWord { syllables: vec![] }
    }

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let mut out = x.clone();
        self.mul_assign(&mut out, y);
        out
    }

    fn mul_assign(&self, acc: &mut Self::Elem, y: &Self::Elem) {
        for s in &y.syllables {
            self.push(acc, s.clone());
        }
    }

    fn inv(&self, x: &Self::Elem) -> Self::Elem {
        SyllableWord {
            syllables: x
                .syllables
                .iter()
                .rev()
                .map(|s| match s {
                    Syllable::Left(a) => Syllable::Left(self.left.inv(a)),
                    Syllable::Right(b) => Syllable::Right(self.right.inv(b)),
                })
                .collect(),
        }
    }

    fn is_trivial(&self, x: &Self::Elem) -> bool {
        x.syllables.is_empty()
    }

    fn letter(&self, l: Letter) -> Option<Self::Elem> {
        if let Some(x) = self.left.letter(l) {
            return Some(self.inject_left(x));
        }
        self.right.letter(l).map(|x| self.inject_right(x))
    }

    fn to_word(&self, x: &Self::Elem) -> Word {
        let mut out = Word::empty();
        for s in &x.syllables {
            match s {
                Syllable::Left(a) => out.push_word(&self.left.to_word(a)),
                Syllable::Right(b) => out.push_word(&self.right.to_word(b)),
            }
        }
        out
    }

    fn reduce(&self, x: &Self::Elem) -> Self::Elem {
        self.from_syllables(x.syllables.iter().map(|s| match s {
            Syllable::Left(a) => Syllable::Left(self.left.reduce(a)),
            Syllable::Right(b) => Syllable::Right(self.right.reduce(b)),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinators::{CyclicGroup, FreeGroup};
    use crate::words::w;

    fn z3_free_z() -> FreeProduct<CyclicGroup, CyclicGroup> {
        FreeProduct::new(
            "Z3*Z",
            CyclicGroup::finite(Letter::C, 3),
            CyclicGroup::infinite(Letter::T),
        )
        .unwrap()
    }

    #[test]
    fn overlapping_alphabets_are_rejected() {
        let err = FreeProduct::new(
            "bad",
            CyclicGroup::infinite(Letter::A),
            FreeGroup::new(&[Letter::A, Letter::E]),
        );
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn syllables_merge_and_cancel() {
        let g = z3_free_z();
        let x = g.eval(&w("c t c t^-1")).unwrap();
        assert_eq!(x.syllable_len(), 4);
        assert!(!g.is_trivial(&x));
        let y = g.eval(&w("t c^3 t^-1")).unwrap();
        assert!(g.is_trivial(&y));
        let z = g.eval(&w("c t t^-1 c")).unwrap();
        assert_eq!(z.syllable_len(), 1);
    }

    #[test]
    fn trivial_syllables_are_dropped() {
        let g = z3_free_z();
        let x = g.from_syllables([
            Syllable::Left(3.into()),
            Syllable::Right(2.into()),
            Syllable::Right((-2).into()),
            Syllable::Left(1.into()),
        ]);
        assert_eq!(x.syllables(), &[Syllable::Left(1.into())]);
    }

    #[test]
    fn reduce_is_idempotent_on_products() {
        let g = z3_free_z();
        let x = g.eval(&w("c t^2 c^-1 t")).unwrap();
        assert_eq!(g.reduce(&x), x);
        assert!(g.equal(&g.eval(&g.to_word(&x)).unwrap(), &x));
    }
}
