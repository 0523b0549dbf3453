//! The dihedral group of order 18, `⟨b, c | b² = c⁹ = 1, b⁻¹cb = c⁻¹⟩`,
//! and the order-3 automorphism `b ↦ bc⁻³, c ↦ c` induced by conjugation by `s`.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::combinators::Group;
use crate::words::{Letter, Word};

/// The element `b^flip · c^rot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct H0Element {
    flip: u8,
    rot: u8,
}

impl H0Element {
    pub const IDENTITY: H0Element = H0Element { flip: 0, rot: 0 };
    pub const B: H0Element = H0Element { flip: 1, rot: 0 };
    pub const C: H0Element = H0Element { flip: 0, rot: 1 };

    pub fn new(flip: i64, rot: i64) -> Self {
        H0Element {
            flip: flip.rem_euclid(2) as u8,
            rot: rot.rem_euclid(9) as u8,
        }
    }

    pub fn flip(self) -> u8 {
        self.flip
    }

    pub fn rot(self) -> u8 {
        self.rot
    }

    /// All 18 elements, ordered by `(flip, rot)`.
    pub fn all() -> impl Iterator<Item = H0Element> {
        (0..2).flat_map(|f| (0..9).map(move |r| H0Element::new(f, r)))
    }

    /// Position in [`H0Element::all`].
    pub fn index(self) -> usize {
        self.flip as usize * 9 + self.rot as usize
    }

    pub fn is_identity(self) -> bool {
        self == H0Element::IDENTITY
    }

    /// Uses `c^k b = b c^-k`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: H0Element) -> H0Element {
        let rot = if other.flip == 1 {
            -(self.rot as i64) + other.rot as i64
        } else {
            self.rot as i64 + other.rot as i64
        };
        H0Element::new((self.flip + other.flip) as i64, rot)
    }

    pub fn inv(self) -> H0Element {
        if self.flip == 1 {
            // reflections are involutions
            self
        } else {
            H0Element::new(0, -(self.rot as i64))
        }
    }

    pub fn pow(self, n: i64) -> H0Element {
        let base = if n < 0 { self.inv() } else { self };
        let mut acc = H0Element::IDENTITY;
        for _ in 0..(n.unsigned_abs() % 18) {
            acc = acc.mul(base);
        }
        acc
    }

    pub fn order(self) -> u32 {
        let mut acc = self;
        let mut n = 1;
        while !acc.is_identity() {
            acc = acc.mul(self);
            n += 1;
        }
        n
    }

    /// `φ^k(h) = s^-k h s^k`, where `φ(b) = bc⁻³` and `φ(c) = c`; only `k mod 3` matters.
    pub fn phi(self, k: i64) -> H0Element {
        let k = k.rem_euclid(3);
        H0Element::new(self.flip as i64, self.rot as i64 - 3 * k * self.flip as i64)
    }

    pub fn to_word(self) -> Word {
        let mut w = Word::empty();
        w.push_power(Letter::B, BigInt::from(self.flip));
        w.push_power(Letter::C, BigInt::from(self.rot));
        w
    }
}

impl fmt::Display for H0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}

/// Solver for the order-18 base level.
#[derive(Clone, Debug, Default)]
pub struct H0Group;

impl H0Group {
    const ALPHABET: [Letter; 2] = [Letter::B, Letter::C];
}

impl Group for H0Group {
    type Elem = H0Element;

    fn name(&self) -> &str {
        "H0"
    }

    fn alphabet(&self) -> &[Letter] {
        &Self::ALPHABET
    }

    fn identity(&self) -> H0Element {
        H0Element::IDENTITY
    }

    fn mul(&self, x: &H0Element, y: &H0Element) -> H0Element {
        x.mul(*y)
    }

    fn inv(&self, x: &H0Element) -> H0Element {
        x.inv()
    }

    fn is_trivial(&self, x: &H0Element) -> bool {
        x.is_identity()
    }

    fn letter(&self, l: Letter) -> Option<H0Element> {
        match l {
            Letter::B => Some(H0Element::B),
            Letter::C => Some(H0Element::C),
            _ => None,
        }
    }

    fn to_word(&self, x: &H0Element) -> Word {
        x.to_word()
    }

    fn pow(&self, x: &H0Element, n: &BigInt) -> H0Element {
        let r: BigInt = n % 18;
        x.pow(i64::try_from(r).expect("residue fits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;
    use crate::Error;

    // Independent model: D9 as affine maps z ↦ ±z + r on Z/9, with b: z ↦ -z and c: z ↦ z + 1,
    // composed left to right to match word order.
    fn affine(h: H0Element) -> (i64, i64) {
        let sign = if h.flip() == 1 { -1 } else { 1 };
        // b^f c^r acts as: first b^f, then c^r
        (sign, h.rot() as i64)
    }

    fn affine_mul(x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
        // apply x then y: z ↦ y.0 * (x.0 z + x.1) + y.1
        (x.0 * y.0, (y.0 * x.1 + y.1).rem_euclid(9))
    }

    #[test]
    fn multiplication_matches_affine_model() {
        for x in H0Element::all() {
            for y in H0Element::all() {
                assert_eq!(affine(x.mul(y)), affine_mul(affine(x), affine(y)), "{x} * {y}");
            }
        }
    }

    #[test]
    fn mul_examples() {
        assert!(H0Element::B.mul(H0Element::B).is_identity());
        assert!(H0Element::new(0, 4).mul(H0Element::new(0, 5)).is_identity());
        assert_eq!(H0Element::C.mul(H0Element::B), H0Element::new(1, 8));
    }

    #[test]
    fn group_axioms_exhaustive() {
        let all: Vec<_> = H0Element::all().collect();
        assert_eq!(all.len(), 18);
        for &x in &all {
            assert_eq!(x.mul(H0Element::IDENTITY), x);
            assert_eq!(H0Element::IDENTITY.mul(x), x);
            assert!(x.mul(x.inv()).is_identity());
            for &y in &all {
                for &z in &all {
                    assert_eq!(x.mul(y).mul(z), x.mul(y.mul(z)));
                }
            }
        }
    }

    #[test]
    fn eval_examples() {
        let g = H0Group;
        assert!(g.eval(&w("b^-1 c b c")).unwrap().is_identity());
        assert!(g.eval(&w("c^9")).unwrap().is_identity());
        assert!(g.eval(&Word::empty()).unwrap().is_identity());
        assert!(matches!(
            g.eval(&w("b s")),
            Err(Error::Alphabet { letter: Letter::S, .. })
        ));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(H0Element::B.phi(1), H0Element::new(1, -3));
        assert_eq!(H0Element::C.phi(5), H0Element::C);
        assert_eq!(H0Element::B.phi(3), H0Element::B);
    }

    #[test]
    fn phi_is_an_automorphism_of_order_three() {
        let all: Vec<_> = H0Element::all().collect();
        let mut images: Vec<_> = all.iter().map(|h| h.phi(1)).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 18);
        for &x in &all {
            // three single steps against the identity map
            assert_eq!(x.phi(1).phi(1).phi(1), x);
            assert_eq!(x.phi(3), x);
            assert_eq!(x.phi(1).phi(-1), x);
            for &y in &all {
                assert_eq!(x.mul(y).phi(1), x.phi(1).mul(y.phi(1)));
            }
        }
    }

    #[test]
    fn c_cubed_facts() {
        let c3 = H0Element::new(0, 3);
        assert_eq!(c3.order(), 3);
        assert_eq!(c3.mul(H0Element::C), H0Element::C.mul(c3));
        let conj = H0Element::B.mul(c3).mul(H0Element::B.inv());
        assert_eq!(conj, c3.inv());
    }

    #[test]
    fn canonical_words_round_trip() {
        let g = H0Group;
        for x in H0Element::all() {
            assert_eq!(g.eval(&x.to_word()).unwrap(), x);
        }
    }
}
