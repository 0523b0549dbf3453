//! Generic solvers: the [`Group`] trait, free products, HNN extensions with
//! pluggable cyclic-membership oracles, and small auxiliary targets.

mod cyclic;
mod free_product;
mod hnn;
mod oracle;
pub mod targets;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::words::{Letter, Word};

pub use cyclic::{CyclicGroup, FreeGroup};
pub use free_product::{FreeProduct, Syllable, SyllableWord};
pub use hnn::{BrittonWord, Hnn, StableLetter, StableStep};
pub use oracle::{cyclic_member, CandidateFn, CyclicOracle, Strategy};

/// A group with a solvable word problem over a subset of the alphabet.
///
/// Elements need not have unique representations; equality is decided by
/// [`Group::equal`], which tests triviality of `x⁻¹y`.
pub trait Group: Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn name(&self) -> &str;

    /// Letters this solver accepts.
    fn alphabet(&self) -> &[Letter];

    fn identity(&self) -> Self::Elem;

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn inv(&self, x: &Self::Elem) -> Self::Elem;

    fn is_trivial(&self, x: &Self::Elem) -> bool;

    /// The element named by a single letter, or `None` outside the alphabet.
    fn letter(&self, l: Letter) -> Option<Self::Elem>;

    fn to_word(&self, x: &Self::Elem) -> Word;

    /// Re-normalizes an element. Reduced input comes back unchanged.
    fn reduce(&self, x: &Self::Elem) -> Self::Elem {
        x.clone()
    }

    fn mul_assign(&self, acc: &mut Self::Elem, y: &Self::Elem) {
        *acc = self.mul(acc, y);
    }

    fn pow(&self, x: &Self::Elem, n: &BigInt) -> Self::Elem {
        let mut base = if n.is_negative() { self.inv(x) } else { x.clone() };
        let mut e = n.abs();
        let mut acc = self.identity();
        let two = BigInt::from(2);
        while !e.is_zero() {
            if (&e % &two) == BigInt::from(1) {
                self.mul_assign(&mut acc, &base);
            }
            e /= &two;
            if !e.is_zero() {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn equal(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        let mut d = self.inv(x);
        self.mul_assign(&mut d, y);
        self.is_trivial(&d)
    }

    fn contains_letter(&self, l: Letter) -> bool {
        self.alphabet().contains(&l)
    }

    fn eval(&self, w: &Word) -> Result<Self::Elem> {
        let mut acc = self.identity();
        for p in w.runs() {
            let g = self.letter(p.letter).ok_or_else(|| Error::Alphabet {
                letter: p.letter,
                group: self.name().to_string(),
            })?;
            let g = self.pow(&g, &p.exp);
            self.mul_assign(&mut acc, &g);
        }
        Ok(acc)
    }

    fn word_is_trivial(&self, w: &Word) -> Result<bool> {
        Ok(self.is_trivial(&self.eval(w)?))
    }
}
