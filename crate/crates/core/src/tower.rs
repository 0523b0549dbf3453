//! The concrete tower `H₀ ≤ H₁ ≤ H₂ ≤ H = H₂ ∗ F(e,f) ≤ H ∗ ⟨a⟩ ≤ K ≤ G`.
//!
//! `H₁` is the semidirect product `H₀ ⋊ ⟨s⟩` with canonical pairs. Every
//! level above it is assembled from the generic combinators, with the nine
//! cyclic-membership oracles plugged into the HNN steps.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::combinators::{
    BrittonWord, CyclicGroup, CyclicOracle, FreeGroup, FreeProduct, Group, Hnn, StableLetter,
    Strategy, Syllable, SyllableWord,
};
use crate::error::{Error, Result};
use crate::h0::{H0Element, H0Group};
use crate::words::{w, Letter, Word};

/// `s^shift · tail`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct H1Element {
    pub shift: BigInt,
    pub tail: H0Element,
}

impl H1Element {
    pub fn new(shift: impl Into<BigInt>, tail: H0Element) -> Self {
        H1Element {
            shift: shift.into(),
            tail,
        }
    }

    pub fn identity() -> Self {
        H1Element::new(0, H0Element::IDENTITY)
    }

    pub fn is_identity(&self) -> bool {
        self.shift.is_zero() && self.tail.is_identity()
    }
}

impl fmt::Display for H1Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", H1Group.to_word(self))
    }
}

fn mod3(n: &BigInt) -> i64 {
    n.mod_floor(&BigInt::from(3)).to_i64().expect("residue fits")
}

/// `H₀ ⋊ ⟨s⟩` with `s⁻¹ h s = φ(h)`.
#[derive(Clone, Debug, Default)]
pub struct H1Group;

impl H1Group {
    const ALPHABET: [Letter; 3] = [Letter::B, Letter::C, Letter::S];
}

impl Group for H1Group {
    type Elem = H1Element;

    fn name(&self) -> &str {
        "H1"
    }

    fn alphabet(&self) -> &[Letter] {
        &Self::ALPHABET
    }

    fn identity(&self) -> H1Element {
        H1Element::identity()
    }

    // (s^n h)(s^m h') = s^(n+m) φ^m(h) h'
    fn mul(&self, x: &H1Element, y: &H1Element) -> H1Element {
        H1Element {
            shift: &x.shift + &y.shift,
            tail: x.tail.phi(mod3(&y.shift)).mul(y.tail),
        }
    }

    fn inv(&self, x: &H1Element) -> H1Element {
        H1Element {
            shift: -&x.shift,
            tail: x.tail.inv().phi(-mod3(&x.shift)),
        }
    }

    fn is_trivial(&self, x: &H1Element) -> bool {
        x.is_identity()
    }

    fn letter(&self, l: Letter) -> Option<H1Element> {
        match l {
            Letter::B => Some(H1Element::new(0, H0Element::B)),
            Letter::C => Some(H1Element::new(0, H0Element::C)),
            Letter::S => Some(H1Element::new(1, H0Element::IDENTITY)),
            _ => None,
        }
    }

    fn to_word(&self, x: &H1Element) -> Word {
        let mut out = Word::power(Letter::S, x.shift.clone());
        out.push_word(&x.tail.to_word());
        out
    }
}

pub type H2Group = Hnn<H1Group>;
pub type HGroup = FreeProduct<H2Group, FreeGroup>;
pub type HaGroup = FreeProduct<HGroup, CyclicGroup>;
pub type KGroup = Hnn<HaGroup>;
pub type GGroup = Hnn<KGroup>;

pub type H2Elem = BrittonWord<H1Element>;
pub type HElem = SyllableWord<H2Elem, Word>;
pub type HaElem = SyllableWord<HElem, BigInt>;
pub type KElem = BrittonWord<HaElem>;
pub type GElem = BrittonWord<KElem>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    H0,
    H1,
    H2,
    Fef,
    H,
    Ha,
    K,
    G,
}

impl Level {
    pub const ALL: [Level; 8] = [
        Level::H0,
        Level::H1,
        Level::H2,
        Level::Fef,
        Level::H,
        Level::Ha,
        Level::K,
        Level::G,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Level::H0 => "h0",
            Level::H1 => "h1",
            Level::H2 => "h2",
            Level::Fef => "fef",
            Level::H => "h",
            Level::Ha => "ha",
            Level::K => "k",
            Level::G => "g",
        }
    }

    pub fn alphabet(self) -> &'static [Letter] {
        use Letter::*;
        match self {
            Level::H0 => &[B, C],
            Level::H1 => &[B, C, S],
            Level::H2 => &[B, C, S, T],
            Level::Fef => &[E, F],
            Level::H => &[B, C, S, T, E, F],
            Level::Ha => &[B, C, S, T, E, F, A],
            Level::K => &[B, C, S, T, E, F, A, U, V],
            Level::G => &[B, C, S, T, E, F, A, U, V, X, Y],
        }
    }

    /// Defining relators of this level's presentation.
    pub fn relators(self) -> Vec<Word> {
        let h0 = ["b^2", "c^9", "b^-1 c b c"];
        let h1 = ["s^-1 b s c^3 b^-1", "s^-1 c s c^-1"];
        let h2 = ["t^-1 s t s^-3"];
        let k = ["u^-1 b a c b^-1 u a^-1", "v^-1 a v t s^-1 t^-1"];
        let g = ["x^-1 u x e c^-3 e^-1 c^-3", "y^-1 v y f c^-3 f^-1 c^-3"];
        let parts: &[&[&str]] = match self {
            Level::H0 => &[&h0],
            Level::H1 => &[&h0, &h1],
            Level::H2 | Level::H | Level::Ha => &[&h0, &h1, &h2],
            Level::Fef => &[],
            Level::K => &[&h0, &h1, &h2, &k],
            Level::G => &[&h0, &h1, &h2, &k, &g],
        };
        parts.iter().flat_map(|p| p.iter().map(|r| w(r))).collect()
    }

    /// `true` when every letter of `self` is a letter of `other`.
    pub fn embeds_in(self, other: Level) -> bool {
        self.alphabet().iter().all(|l| other.alphabet().contains(l))
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Level> {
        let lower = s.trim().to_ascii_lowercase();
        Level::ALL
            .into_iter()
            .find(|l| l.as_str() == lower)
            .ok_or_else(|| Error::UnknownGroup(s.to_string()))
    }
}

/// The nine named cyclic subgroups with membership oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Subgroup {
    S,
    S3,
    A,
    Bacb,
    Tst,
    U,
    V,
    Cece,
    Cfcf,
}

impl Subgroup {
    pub const ALL: [Subgroup; 9] = [
        Subgroup::S,
        Subgroup::S3,
        Subgroup::A,
        Subgroup::Bacb,
        Subgroup::Tst,
        Subgroup::U,
        Subgroup::V,
        Subgroup::Cece,
        Subgroup::Cfcf,
    ];

    pub fn generator_text(self) -> &'static str {
        match self {
            Subgroup::S => "s",
            Subgroup::S3 => "s^3",
            Subgroup::A => "a",
            Subgroup::Bacb => "b a c b^-1",
            Subgroup::Tst => "t s t^-1",
            Subgroup::U => "u",
            Subgroup::V => "v",
            Subgroup::Cece => "c^3 e c^3 e^-1",
            Subgroup::Cfcf => "c^3 f c^3 f^-1",
        }
    }

    pub fn generator(self) -> Word {
        w(self.generator_text())
    }

    /// The level the oracle decides membership in.
    pub fn level(self) -> Level {
        match self {
            Subgroup::S | Subgroup::S3 => Level::H1,
            Subgroup::A | Subgroup::Bacb | Subgroup::Tst => Level::Ha,
            Subgroup::U | Subgroup::V | Subgroup::Cece | Subgroup::Cfcf => Level::K,
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.generator_text())
    }
}

/// Accepts the generator word, optionally wrapped in angle brackets: `<s^3>`, `t s t^-1`.
impl FromStr for Subgroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Subgroup> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('<')
            .and_then(|x| x.strip_suffix('>'))
            .unwrap_or(inner);
        let word = Word::parse(inner).map_err(|_| Error::UnknownSubgroup(s.to_string()))?;
        Subgroup::ALL
            .into_iter()
            .find(|g| g.generator() == word)
            .ok_or_else(|| Error::UnknownSubgroup(s.to_string()))
    }
}

/// Runs a computation generic over the group at some level.
pub trait LevelVisitor {
    type Output;
    fn visit<G: Group>(self, group: &G) -> Self::Output;
}

/// All solvers of the tower, built once.
#[derive(Debug)]
pub struct Tower {
    h0: H0Group,
    g: GGroup,
}

impl Default for Tower {
    fn default() -> Self {
        Tower::new()
    }
}

impl Tower {
    pub fn new() -> Tower {
        let h2 = build_h2();
        let h = FreeProduct::new("H", h2, FreeGroup::new(&[Letter::E, Letter::F]))
            .expect("disjoint alphabets");
        let ha = FreeProduct::new("Ha", h, CyclicGroup::infinite(Letter::A))
            .expect("disjoint alphabets");
        let k = build_k(ha);
        let g = build_g(k);
        Tower { h0: H0Group, g }
    }

    /// A lazily built shared instance.
    pub fn shared() -> &'static Tower {
        static TOWER: OnceLock<Tower> = OnceLock::new();
        TOWER.get_or_init(Tower::new)
    }

    pub fn h0(&self) -> &H0Group {
        &self.h0
    }

    pub fn h1(&self) -> &H1Group {
        self.h2().base()
    }

    pub fn h2(&self) -> &H2Group {
        self.h().left()
    }

    pub fn fef(&self) -> &FreeGroup {
        self.h().right()
    }

    pub fn h(&self) -> &HGroup {
        self.ha().left()
    }

    pub fn ha(&self) -> &HaGroup {
        self.k().base()
    }

    pub fn k(&self) -> &KGroup {
        self.g.base()
    }

    pub fn g(&self) -> &GGroup {
        &self.g
    }

    pub fn visit<V: LevelVisitor>(&self, level: Level, v: V) -> V::Output {
        match level {
            Level::H0 => v.visit(self.h0()),
            Level::H1 => v.visit(self.h1()),
            Level::H2 => v.visit(self.h2()),
            Level::Fef => v.visit(self.fef()),
            Level::H => v.visit(self.h()),
            Level::Ha => v.visit(self.ha()),
            Level::K => v.visit(self.k()),
            Level::G => v.visit(self.g()),
        }
    }

    pub fn wp_is_trivial(&self, level: Level, word: &Word) -> Result<bool> {
        struct Trivial<'a>(&'a Word);
        impl LevelVisitor for Trivial<'_> {
            type Output = Result<bool>;
            fn visit<G: Group>(self, g: &G) -> Result<bool> {
                g.word_is_trivial(self.0)
            }
        }
        self.visit(level, Trivial(word))
    }

    pub fn wp_equal(&self, level: Level, w1: &Word, w2: &Word) -> Result<bool> {
        self.wp_is_trivial(level, &w1.concat(&w2.inverse()))
    }

    /// Canonical form at `H₀`/`H₁` (`s^n b^f c^r`); a Britton/syllable
    /// reduced representative above.
    pub fn normal_form(&self, level: Level, word: &Word) -> Result<Word> {
        struct Normal<'a>(&'a Word);
        impl LevelVisitor for Normal<'_> {
            type Output = Result<Word>;
            fn visit<G: Group>(self, g: &G) -> Result<Word> {
                let x = g.eval(self.0)?;
                Ok(g.to_word(&g.reduce(&x)))
            }
        }
        self.visit(level, Normal(word))
    }

    /// The exponent `n` with `word = genⁿ`, evaluated at the subgroup's own level.
    pub fn subgroup_member(&self, level: Level, sub: Subgroup, word: &Word) -> Result<Option<BigInt>> {
        if level != sub.level() {
            return Err(Error::Config(format!(
                "subgroup {sub} is decided in {}, not {level}",
                sub.level()
            )));
        }
        Ok(match sub {
            Subgroup::S | Subgroup::S3 => {
                let h1 = self.h1();
                let x = h1.eval(word)?;
                self.h1_oracle(sub).member(h1, &x)
            }
            Subgroup::A | Subgroup::Bacb | Subgroup::Tst => {
                let ha = self.ha();
                let x = ha.eval(word)?;
                self.ha_oracle(sub).member(ha, &x)
            }
            Subgroup::U | Subgroup::V | Subgroup::Cece | Subgroup::Cfcf => {
                let k = self.k();
                let x = k.eval(word)?;
                self.k_oracle(sub).member(k, &x)
            }
        })
    }

    pub fn h1_oracle(&self, sub: Subgroup) -> &CyclicOracle<H1Group> {
        let t = &self.h2().stable_letters()[0];
        match sub {
            Subgroup::S => &t.lower,
            Subgroup::S3 => &t.upper,
            _ => panic!("{sub} is not an H1 subgroup"),
        }
    }

    pub fn ha_oracle(&self, sub: Subgroup) -> &CyclicOracle<HaGroup> {
        let [u, v] = self.k().stable_letters() else {
            unreachable!("K has two stable letters")
        };
        match sub {
            Subgroup::Bacb => &u.lower,
            Subgroup::A => &u.upper,
            Subgroup::Tst => &v.upper,
            _ => panic!("{sub} is not an Ha subgroup"),
        }
    }

    pub fn k_oracle(&self, sub: Subgroup) -> &CyclicOracle<KGroup> {
        let [x, y] = self.g().stable_letters() else {
            unreachable!("G has two stable letters")
        };
        match sub {
            Subgroup::U => &x.lower,
            Subgroup::Cece => &x.upper,
            Subgroup::V => &y.lower,
            Subgroup::Cfcf => &y.upper,
            _ => panic!("{sub} is not a K subgroup"),
        }
    }
}

fn build_h2() -> H2Group {
    let h1 = H1Group;
    let lower = CyclicOracle::new(
        &h1,
        "<s>",
        w("s"),
        Strategy::ShiftTail,
        Arc::new(|_: &H1Group, x: &H1Element| {
            if x.tail.is_identity() {
                vec![x.shift.clone()]
            } else {
                vec![]
            }
        }),
    )
    .expect("s is in H1");
    let upper = CyclicOracle::new(
        &h1,
        "<s^3>",
        w("s^3"),
        Strategy::ShiftTail,
        Arc::new(|_: &H1Group, x: &H1Element| {
            let (q, r) = x.shift.div_rem(&BigInt::from(3));
            if x.tail.is_identity() && r.is_zero() {
                vec![q]
            } else {
                vec![]
            }
        }),
    )
    .expect("s^3 is in H1");
    Hnn::new(
        "H2",
        h1,
        vec![StableLetter {
            letter: Letter::T,
            lower,
            upper,
        }],
    )
    .expect("t is new")
}

/// Sum of the `a`-exponents over the `⟨a⟩` syllables.
pub fn a_sum(x: &HaElem) -> BigInt {
    x.syllables()
        .iter()
        .filter_map(|s| match s {
            Syllable::Right(n) => Some(n),
            Syllable::Left(_) => None,
        })
        .sum()
}

fn a_sum_candidates(_: &HaGroup, x: &HaElem) -> Vec<BigInt> {
    vec![a_sum(x)]
}

// (t s t⁻¹)ⁿ = t sⁿ t⁻¹, so t⁻¹ x t must be a pure s-power in H₂.
fn tst_candidates(ha: &HaGroup, x: &HaElem) -> Vec<BigInt> {
    let Some(h) = x.as_left() else {
        return vec![];
    };
    let Some(h) = h else {
        return vec![BigInt::zero()];
    };
    let Some(Some(inner)) = h.as_left() else {
        return vec![];
    };
    let h2 = ha.left().left();
    let t = h2.letter(Letter::T).expect("t in H2");
    let conj = h2.mul(&h2.mul(&h2.inv(&t), inner), &t);
    if conj.tail.is_empty() && conj.head.tail.is_identity() {
        vec![conj.head.shift.clone()]
    } else {
        vec![]
    }
}

fn build_k(ha: HaGroup) -> KGroup {
    let oracle = |name: &str, text: &str, strategy, f: fn(&HaGroup, &HaElem) -> Vec<BigInt>| {
        CyclicOracle::new(&ha, name, w(text), strategy, Arc::new(f)).expect("generator in Ha")
    };
    let u = StableLetter {
        letter: Letter::U,
        lower: oracle("<b a c b^-1>", "b a c b^-1", Strategy::ExponentSum, a_sum_candidates),
        upper: oracle("<a>", "a", Strategy::ExponentSum, a_sum_candidates),
    };
    let v = StableLetter {
        letter: Letter::V,
        lower: oracle("<a>", "a", Strategy::ExponentSum, a_sum_candidates),
        upper: oracle("<t s t^-1>", "t s t^-1", Strategy::ConjugateTransport, tst_candidates),
    };
    Hnn::new("K", ha, vec![u, v]).expect("u, v are new")
}

/// Candidates for `⟨c³ e c³ e⁻¹⟩`-type subgroups: the `n`-th power has
/// exactly `4|n|` syllables in `H = H₂ ∗ F(e,f)`.
fn syllable_candidates(_: &KGroup, x: &KElem) -> Vec<BigInt> {
    if !x.tail.is_empty() {
        return vec![];
    }
    let Some(h) = x.head.as_left() else {
        return vec![];
    };
    let Some(h) = h else {
        return vec![BigInt::zero()];
    };
    let len = h.syllable_len();
    if len % 4 != 0 {
        return vec![];
    }
    let n = BigInt::from(len / 4);
    vec![n.clone(), -n]
}

fn build_g(k: KGroup) -> GGroup {
    let exp_sum = |name: &str, letter: Letter| {
        CyclicOracle::new(
            &k,
            name,
            Word::letter(letter),
            Strategy::ExponentSum,
            Arc::new(move |k: &KGroup, x: &KElem| vec![k.exponent_sum(x, letter)]),
        )
        .expect("generator in K")
    };
    let pattern = |name: &str, text: &str| {
        CyclicOracle::new(&k, name, w(text), Strategy::SyllablePattern, Arc::new(syllable_candidates))
            .expect("generator in K")
    };
    let x = StableLetter {
        letter: Letter::X,
        lower: exp_sum("<u>", Letter::U),
        upper: pattern("<c^3 e c^3 e^-1>", "c^3 e c^3 e^-1"),
    };
    let y = StableLetter {
        letter: Letter::Y,
        lower: exp_sum("<v>", Letter::V),
        upper: pattern("<c^3 f c^3 f^-1>", "c^3 f c^3 f^-1"),
    };
    Hnn::new("G", k, vec![x, y]).expect("x, y are new")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower() -> &'static Tower {
        Tower::shared()
    }

    fn triv(level: Level, text: &str) -> bool {
        tower().wp_is_trivial(level, &w(text)).unwrap()
    }

    #[test]
    fn h1_matches_words_under_relations() {
        let h1 = H1Group;
        for r in Level::H1.relators() {
            assert!(h1.word_is_trivial(&r).unwrap(), "{r}");
        }
        // s b s^-1 = b c^3
        let x = h1.eval(&w("s b s^-1")).unwrap();
        assert_eq!(x, H1Element::new(0, H0Element::new(1, 3)));
    }

    #[test]
    fn h1_group_axioms_on_samples() {
        let h1 = H1Group;
        let elems: Vec<H1Element> = (-4..=4)
            .flat_map(|n| H0Element::all().map(move |h| H1Element::new(n, h)))
            .collect();
        for x in elems.iter().step_by(5) {
            assert!(h1.is_trivial(&h1.mul(x, &h1.inv(x))));
            assert!(h1.is_trivial(&h1.mul(&h1.inv(x), x)));
            for y in elems.iter().step_by(7) {
                for z in elems.iter().step_by(11) {
                    assert_eq!(h1.mul(&h1.mul(x, y), z), h1.mul(x, &h1.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn level_alphabets_match_solvers() {
        struct Alpha;
        impl LevelVisitor for Alpha {
            type Output = Vec<Letter>;
            fn visit<G: Group>(self, g: &G) -> Vec<Letter> {
                g.alphabet().to_vec()
            }
        }
        for level in Level::ALL {
            assert_eq!(tower().visit(level, Alpha), level.alphabet(), "{level}");
        }
    }

    #[test]
    fn make_group_examples() {
        assert!(triv(Level::H2, "t^-1 s t s^-3"));
        assert!(triv(Level::K, "u^-1 b a c b^-1 u a^-1"));
        assert!(triv(Level::G, "x^-1 u x e c^-3 e^-1 c^-3"));
    }

    #[test]
    fn relators_are_trivial_at_g() {
        let rels = Level::G.relators();
        assert_eq!(rels.len(), 10);
        for r in rels {
            assert!(tower().wp_is_trivial(Level::G, &r).unwrap(), "{r}");
        }
    }

    #[test]
    fn wp_examples() {
        assert!(!triv(Level::G, "c^3"));
        assert!(triv(Level::G, "c^9"));
        assert!(triv(Level::H2, "s^-3 b s^3 b^-1"));
        assert!(triv(Level::H0, ""));
        assert!(!triv(Level::H2, "t^-1 b t b^-1"));
    }

    #[test]
    fn wp_equal_examples() {
        let t = tower();
        assert!(!t.wp_equal(Level::Ha, &w("b a c b^-1"), &w("a c")).unwrap());
        assert!(t.wp_equal(Level::H2, &w("t^-1 s t"), &w("s^3")).unwrap());
        assert!(t.wp_equal(Level::H, &w("b s b"), &w("s c^3")).unwrap());
    }

    #[test]
    fn out_of_level_letters_are_rejected() {
        let err = tower().wp_is_trivial(Level::H2, &w("a"));
        assert!(matches!(err, Err(Error::Alphabet { letter: Letter::A, .. })));
        assert!(tower().wp_is_trivial(Level::Fef, &w("b")).is_err());
    }

    #[test]
    fn subgroup_member_examples() {
        let t = tower();
        assert_eq!(t.subgroup_member(Level::Ha, Subgroup::A, &w("a^5")).unwrap(), Some(5.into()));
        assert_eq!(
            t.subgroup_member(Level::Ha, Subgroup::Tst, &w("t s^4 t^-1")).unwrap(),
            Some(4.into())
        );
        assert_eq!(t.subgroup_member(Level::K, Subgroup::U, &w("v u v^-1")).unwrap(), None);
        assert_eq!(t.subgroup_member(Level::H1, Subgroup::S3, &w("s^6")).unwrap(), Some(2.into()));
        assert_eq!(t.subgroup_member(Level::H1, Subgroup::S, &w("s^2 b")).unwrap(), None);
        assert_eq!(
            t.subgroup_member(Level::Ha, Subgroup::Bacb, &w("b a c a c b^-1")).unwrap(),
            Some(2.into())
        );
        assert_eq!(t.subgroup_member(Level::K, Subgroup::V, &w("")).unwrap(), Some(0.into()));
        assert!(t.subgroup_member(Level::G, Subgroup::U, &w("u")).is_err());
    }

    #[test]
    fn oracles_recognize_their_powers() {
        let t = tower();
        for sub in Subgroup::ALL {
            for n in -10i64..=10 {
                let word = sub.generator().pow(&BigInt::from(n));
                let got = t.subgroup_member(sub.level(), sub, &word).unwrap();
                assert_eq!(got, Some(BigInt::from(n)), "{sub}^{n}");
            }
        }
    }

    #[test]
    fn oracles_reject_near_misses() {
        let t = tower();
        let cases = [
            (Subgroup::S, "s b"),
            (Subgroup::S3, "s^4"),
            (Subgroup::A, "a c"),
            (Subgroup::Bacb, "b a c"),
            (Subgroup::Bacb, "a c"),
            (Subgroup::Tst, "t s^4 t^-1 a"),
            (Subgroup::Tst, "t b t^-1"),
            (Subgroup::U, "u a"),
            (Subgroup::V, "u v u^-1"),
            (Subgroup::Cece, "c^3 e c^3 e"),
            (Subgroup::Cece, "c^3 f c^3 f^-1"),
            (Subgroup::Cfcf, "e c^3 f c^3 f^-1 e^-1"),
        ];
        for (sub, text) in cases {
            assert_eq!(t.subgroup_member(sub.level(), sub, &w(text)).unwrap(), None, "{sub} {text}");
        }
    }

    #[test]
    fn oracle_strategies() {
        let t = tower();
        assert_eq!(t.h1_oracle(Subgroup::S).strategy(), Strategy::ShiftTail);
        assert_eq!(t.ha_oracle(Subgroup::Tst).strategy(), Strategy::ConjugateTransport);
        assert_eq!(t.k_oracle(Subgroup::V).strategy(), Strategy::ExponentSum);
        assert_eq!(t.k_oracle(Subgroup::Cfcf).strategy(), Strategy::SyllablePattern);
    }

    #[test]
    fn t_conjugation_triples_exactly() {
        let h2 = tower().h2();
        for k in 1..=40u32 {
            let mut word = Word::power(Letter::T, -(k as i64));
            word.push_power(Letter::S, 1.into());
            word.push_power(Letter::T, k.into());
            let x = h2.eval(&word).unwrap();
            assert!(x.tail.is_empty());
            assert_eq!(x.head, H1Element::new(BigInt::from(3).pow(k), H0Element::IDENTITY));
        }
    }

    #[test]
    fn normal_forms() {
        let t = tower();
        assert_eq!(t.normal_form(Level::H1, &w("b s")).unwrap(), w("s b c^6"));
        assert_eq!(t.normal_form(Level::H0, &w("c b")).unwrap(), w("b c^8"));
        assert_eq!(t.normal_form(Level::H2, &w("t s^3 t^-1")).unwrap(), w("s"));
        assert_eq!(t.normal_form(Level::G, &w("x^-1 u x")).unwrap(), w("c^3 e c^3 e^-1"));
    }

    #[test]
    fn level_and_subgroup_names() {
        assert_eq!("HA".parse::<Level>().unwrap(), Level::Ha);
        assert_eq!(" g ".parse::<Level>().unwrap(), Level::G);
        assert!(matches!("h3".parse::<Level>(), Err(Error::UnknownGroup(_))));
        assert_eq!("<s^3>".parse::<Subgroup>().unwrap(), Subgroup::S3);
        assert_eq!("t s t^-1".parse::<Subgroup>().unwrap(), Subgroup::Tst);
        assert!(matches!("<s^2>".parse::<Subgroup>(), Err(Error::UnknownSubgroup(_))));
        assert!(Level::H2.embeds_in(Level::G));
        assert!(!Level::Fef.embeds_in(Level::H2));
    }
}
