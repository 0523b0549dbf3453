//! Small target groups for quotient checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{CyclicGroup, FreeProduct, Group};
use crate::error::{Error, Result};
use crate::quotients::FiniteGroupTable;
use crate::words::{Letter, Word};

/// `Z₂ × Z₂ × Z₂` as bit triples; `b`, `s`, `t` name the three unit vectors.
#[derive(Clone, Debug, Default)]
pub struct Z2Cube;

impl Z2Cube {
    const ALPHABET: [Letter; 3] = [Letter::B, Letter::S, Letter::T];

    pub fn elements() -> impl Iterator<Item = u8> {
        0..8u8
    }
}

impl Group for Z2Cube {
    type Elem = u8;

    fn name(&self) -> &str {
        "Z2^3"
    }

    fn alphabet(&self) -> &[Letter] {
        &Self::ALPHABET
    }

    fn identity(&self) -> u8 {
        0
    }

    fn mul(&self, x: &u8, y: &u8) -> u8 {
        x ^ y
    }

    fn inv(&self, x: &u8) -> u8 {
        *x
    }

    fn is_trivial(&self, x: &u8) -> bool {
        *x == 0
    }

    fn letter(&self, l: Letter) -> Option<u8> {
        Self::ALPHABET.iter().position(|a| *a == l).map(|i| 1 << i)
    }

    fn to_word(&self, x: &u8) -> Word {
        let mut w = Word::empty();
        for (i, l) in Self::ALPHABET.iter().enumerate() {
            if x & (1 << i) != 0 {
                w.push_power(*l, BigInt::one());
            }
        }
        w
    }
}

/// `Z_q ⋊ Z` with `t⁻¹ s t = s³`: pairs `(k mod q, m)` standing for `s^k t^m`,
/// multiplied by `(k, m)(k', m') = (k·3^m' + k' mod q, m + m')`.
#[derive(Clone, Debug)]
pub struct ZqSemidirect {
    name: String,
    q: BigInt,
    three_inv: BigInt,
}

impl ZqSemidirect {
    const ALPHABET: [Letter; 2] = [Letter::S, Letter::T];

    pub fn new(q: u64) -> Result<Self> {
        if q < 2 || q.gcd(&3) != 1 {
            return Err(Error::Config(format!(
                "Z_q semidirect Z needs q >= 2 coprime to 3, got q = {q}"
            )));
        }
        let q = BigInt::from(q);
        let three_inv = BigInt::from(3).extended_gcd(&q).x.mod_floor(&q);
        Ok(ZqSemidirect {
            name: format!("Z{q}xZ"),
            q,
            three_inv,
        })
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    fn twist(&self, m: &BigInt) -> BigInt {
        if m.is_negative() {
            self.three_inv.modpow(&m.abs(), &self.q)
        } else {
            BigInt::from(3).modpow(m, &self.q)
        }
    }
}

impl Group for ZqSemidirect {
    type Elem = (BigInt, BigInt);

    fn name(&self) -> &str {
        &self.name
    }

    fn alphabet(&self) -> &[Letter] {
        &Self::ALPHABET
    }

    fn identity(&self) -> Self::Elem {
        (BigInt::zero(), BigInt::zero())
    }

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let k = (&x.0 * self.twist(&y.1) + &y.0).mod_floor(&self.q);
        (k, &x.1 + &y.1)
    }

    fn inv(&self, x: &Self::Elem) -> Self::Elem {
        // (k, m)^-1 = (-k·3^-m, -m)
        let m = -&x.1;
        let k = (-&x.0 * self.twist(&m)).mod_floor(&self.q);
        (k, m)
    }

    fn is_trivial(&self, x: &Self::Elem) -> bool {
        x.0.is_zero() && x.1.is_zero()
    }

    fn letter(&self, l: Letter) -> Option<Self::Elem> {
        match l {
            Letter::S => Some((BigInt::one().mod_floor(&self.q), BigInt::zero())),
            Letter::T => Some((BigInt::zero(), BigInt::one())),
            _ => None,
        }
    }

    fn to_word(&self, x: &Self::Elem) -> Word {
        let mut w = Word::power(Letter::S, x.0.clone());
        w.push_power(Letter::T, x.1.clone());
        w
    }
}

pub type Z3FreeZ = FreeProduct<CyclicGroup, CyclicGroup>;

/// `Z₃ ∗ Z` with `c` generating the finite factor and `t` the infinite one.
pub fn z3_free_z() -> Z3FreeZ {
    FreeProduct::new(
        "Z3*Z",
        CyclicGroup::finite(Letter::C, 3),
        CyclicGroup::infinite(Letter::T),
    )
    .expect("disjoint factors")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetKind {
    /// Infinite cyclic on `t`.
    Z,
    /// `Z_q` on `s`.
    Zq(u64),
    Z2Cube,
    ZqSemidirect(u64),
    Z3FreeZ,
    FiniteTable(FiniteGroupTable),
}

pub enum Target {
    Z(CyclicGroup),
    Zq(CyclicGroup),
    Z2Cube(Z2Cube),
    ZqSemidirect(ZqSemidirect),
    Z3FreeZ(Z3FreeZ),
    FiniteTable(FiniteGroupTable),
}

pub fn make_target(kind: TargetKind) -> Result<Target> {
    Ok(match kind {
        TargetKind::Z => Target::Z(CyclicGroup::infinite(Letter::T)),
        TargetKind::Zq(q) => {
            if q == 0 {
                return Err(Error::Config("Z_q needs q >= 1".into()));
            }
            Target::Zq(CyclicGroup::finite(Letter::S, q))
        }
        TargetKind::Z2Cube => Target::Z2Cube(Z2Cube),
        TargetKind::ZqSemidirect(q) => Target::ZqSemidirect(ZqSemidirect::new(q)?),
        TargetKind::Z3FreeZ => Target::Z3FreeZ(z3_free_z()),
        TargetKind::FiniteTable(t) => Target::FiniteTable(t),
    })
}

impl Target {
    pub fn name(&self) -> String {
        match self {
            Target::Z(g) | Target::Zq(g) => g.name().to_string(),
            Target::Z2Cube(g) => g.name().to_string(),
            Target::ZqSemidirect(g) => g.name().to_string(),
            Target::Z3FreeZ(g) => g.name().to_string(),
            Target::FiniteTable(g) => g.name().to_string(),
        }
    }

    pub fn word_is_trivial(&self, w: &Word) -> Result<bool> {
        match self {
            Target::Z(g) | Target::Zq(g) => g.word_is_trivial(w),
            Target::Z2Cube(g) => g.word_is_trivial(w),
            Target::ZqSemidirect(g) => g.word_is_trivial(w),
            Target::Z3FreeZ(g) => g.word_is_trivial(w),
            Target::FiniteTable(g) => g.word_is_trivial(w),
        }
    }
}

/// Order of `x`, searching up to `bound`; `None` if no power up to the bound is trivial.
pub fn order_up_to<G: Group>(g: &G, x: &G::Elem, bound: u64) -> Option<u64> {
    let mut acc = x.clone();
    for n in 1..=bound {
        if g.is_trivial(&acc) {
            return Some(n);
        }
        g.mul_assign(&mut acc, x);
    }
    None
}

/// `true` when `x, x², …, x^n` are pairwise distinct and nontrivial.
pub fn powers_distinct<G: Group>(g: &G, x: &G::Elem, n: u64) -> bool {
    let mut seen: Vec<G::Elem> = Vec::new();
    let mut acc = g.identity();
    for _ in 0..n {
        g.mul_assign(&mut acc, x);
        if g.is_trivial(&acc) || seen.iter().any(|y| g.equal(y, &acc)) {
            return false;
        }
        seen.push(acc.clone());
    }
    true
}

/// `true` if `g` fits in a machine word, used for display only.
pub fn small(n: &BigInt) -> Option<i64> {
    n.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::w;

    #[test]
    fn z2_semidirect_is_direct() {
        let g = ZqSemidirect::new(2).unwrap();
        let x = (BigInt::one(), BigInt::zero());
        assert!(g.is_trivial(&g.mul(&x, &x)));
        let s = g.letter(Letter::S).unwrap();
        let t = g.letter(Letter::T).unwrap();
        assert!(g.equal(&g.mul(&s, &t), &g.mul(&t, &s)));
    }

    #[test]
    fn semidirect_twist_relation_holds() {
        for q in [2u64, 4, 5, 7, 8, 10, 11] {
            let g = ZqSemidirect::new(q).unwrap();
            assert!(g.word_is_trivial(&w("t^-1 s t s^-3")).unwrap(), "q = {q}");
            assert!(g.word_is_trivial(&Word::power(Letter::S, q)).unwrap());
            let x = g.eval(&w("s^2 t^-3 s t^2")).unwrap();
            assert!(g.is_trivial(&g.mul(&x, &g.inv(&x))));
            assert!(g.is_trivial(&g.mul(&g.inv(&x), &x)));
        }
    }

    #[test]
    fn semidirect_rejects_multiples_of_three() {
        assert!(matches!(ZqSemidirect::new(6), Err(Error::Config(_))));
        assert!(matches!(ZqSemidirect::new(1), Err(Error::Config(_))));
        assert!(make_target(TargetKind::ZqSemidirect(9)).is_err());
    }

    #[test]
    fn z2_cube_examples() {
        let g = Z2Cube;
        assert!(g.is_trivial(&g.mul(&1, &1)));
        assert_eq!(g.eval(&w("b s t")).unwrap(), 7);
    }

    #[test]
    fn z3_free_z_example() {
        let g = z3_free_z();
        let x = g.eval(&w("c t c t^-1")).unwrap();
        assert_eq!(x.syllable_len(), 4);
        assert!(!g.is_trivial(&x));
        assert_eq!(order_up_to(&g, &g.letter(Letter::C).unwrap(), 10), Some(3));
        assert!(powers_distinct(&g, &g.letter(Letter::T).unwrap(), 10));
    }
}
