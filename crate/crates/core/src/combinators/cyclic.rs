use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::Group;
use crate::words::{Letter, Word};

/// `⟨letter⟩`, infinite when `modulus` is `None`, else `Z/modulus`.
#[derive(Clone, Debug)]
pub struct CyclicGroup {
    name: String,
    alphabet: [Letter; 1],
    modulus: Option<BigInt>,
}

impl CyclicGroup {
    pub fn infinite(letter: Letter) -> Self {
        CyclicGroup {
            name: format!("<{letter}>"),
            alphabet: [letter],
            modulus: None,
        }
    }

    pub fn finite(letter: Letter, modulus: u64) -> Self {
        assert!(modulus >= 1, "cyclic group modulus must be positive");
        CyclicGroup {
            name: format!("Z{modulus}<{letter}>"),
            alphabet: [letter],
            modulus: Some(BigInt::from(modulus)),
        }
    }

    pub fn generator_letter(&self) -> Letter {
        self.alphabet[0]
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    fn normalize(&self, n: BigInt) -> BigInt {
        match &self.modulus {
            Some(m) => n.mod_floor(m),
            None => n,
        }
    }
}

impl Group for CyclicGroup {
    type Elem = BigInt;

    fn name(&self) -> &str {
        &self.name
    }

    fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    fn identity(&self) -> BigInt {
        BigInt::zero()
    }

    fn mul(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.normalize(x + y)
    }

    fn inv(&self, x: &BigInt) -> BigInt {
        self.normalize(-x)
    }

    fn is_trivial(&self, x: &BigInt) -> bool {
        x.is_zero()
    }

    fn letter(&self, l: Letter) -> Option<BigInt> {
        (l == self.alphabet[0]).then(|| self.normalize(BigInt::from(1)))
    }

    fn to_word(&self, x: &BigInt) -> Word {
        Word::power(self.alphabet[0], x.clone())
    }

    fn pow(&self, x: &BigInt, n: &BigInt) -> BigInt {
        self.normalize(x * n)
    }
}

/// Free group on a set of letters; elements are reduced words.
#[derive(Clone, Debug)]
pub struct FreeGroup {
    name: String,
    alphabet: Vec<Letter>,
}

impl FreeGroup {
    pub fn new(letters: &[Letter]) -> Self {
        let names: String = letters.iter().map(|l| l.symbol()).collect();
        FreeGroup {
            name: format!("F({names})"),
            alphabet: letters.to_vec(),
        }
    }
}

impl Group for FreeGroup {
    type Elem = Word;

    fn name(&self) -> &str {
        &self.name
    }

    fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    fn identity(&self) -> Word {
        Word::empty()
    }

    fn mul(&self, x: &Word, y: &Word) -> Word {
        x.concat(y)
    }

    fn mul_assign(&self, acc: &mut Word, y: &Word) {
        acc.push_word(y);
    }

    fn inv(&self, x: &Word) -> Word {
        x.inverse()
    }

    fn is_trivial(&self, x: &Word) -> bool {
        x.is_empty()
    }

    fn letter(&self, l: Letter) -> Option<Word> {
        self.alphabet.contains(&l).then(|| Word::letter(l))
    }

    fn to_word(&self, x: &Word) -> Word {
        x.clone()
    }

    fn pow(&self, x: &Word, n: &BigInt) -> Word {
        x.pow(n)
    }
}
