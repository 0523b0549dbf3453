//! Sampling tests for the maximal elementary subgroups `E(ac) ≤ H ∗ ⟨a⟩`
//! and `E(u)`, `E(v) ≤ K`: no sampled `f ∉ ⟨g⟩` may satisfy `f gⁿ f⁻¹ = g^±n`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinators::{CyclicOracle, Group, Strategy, Syllable};
use crate::error::{Error, Result};
use crate::tower::{a_sum, HaElem, HaGroup, Level, Subgroup, Tower};
use crate::words::{w, Letter, Word};

pub const DEFAULT_SEED: u64 = 1729;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub samples: usize,
    pub max_word_length: usize,
    pub max_n: u32,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: DEFAULT_SEED,
            samples: 2000,
            max_word_length: 12,
            max_n: 3,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 || self.max_n == 0 {
            return Err(Error::Config("samples and max_n must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Center {
    Ac,
    U,
    V,
}

impl Center {
    pub fn word(self) -> Word {
        match self {
            Center::Ac => w("a c"),
            Center::U => w("u"),
            Center::V => w("v"),
        }
    }

    pub fn level(self) -> Level {
        match self {
            Center::Ac => Level::Ha,
            Center::U | Center::V => Level::K,
        }
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Center::Ac => "ac",
            Center::U => "u",
            Center::V => "v",
        })
    }
}

impl FromStr for Center {
    type Err = Error;

    fn from_str(s: &str) -> Result<Center> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ac" | "a c" => Ok(Center::Ac),
            "u" => Ok(Center::U),
            "v" => Ok(Center::V),
            _ => Err(Error::Config(format!("unknown center `{s}` (expected ac, u or v)"))),
        }
    }
}

/// `⟨ac⟩ ≤ H ∗ ⟨a⟩`: `(ac)ⁿ` has `a`-exponent sum `n`.
pub fn ac_oracle(ha: &HaGroup) -> CyclicOracle<HaGroup> {
    CyclicOracle::new(
        ha,
        "<a c>",
        w("a c"),
        Strategy::ExponentSum,
        Arc::new(|_: &HaGroup, x: &HaElem| vec![a_sum(x)]),
    )
    .expect("a c lies in Ha")
}

/// Membership in `⟨center⟩`, generic over the level.
fn center_member(tower: &Tower, ac: &CyclicOracle<HaGroup>, center: Center, f: &Word) -> Result<Option<BigInt>> {
    match center {
        Center::Ac => {
            let ha = tower.ha();
            Ok(ac.member(ha, &ha.eval(f)?))
        }
        Center::U => tower.subgroup_member(Level::K, Subgroup::U, f),
        Center::V => tower.subgroup_member(Level::K, Subgroup::V, f),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub f: Word,
    pub n: u32,
    /// `+1` if `f gⁿ f⁻¹ = gⁿ`, `-1` if it equals `g⁻ⁿ`.
    pub sign: i8,
}

#[derive(Clone, Debug, Serialize)]
pub struct Control {
    pub f: Word,
    pub excluded: bool,
    pub commutes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementaryReport {
    pub level: Level,
    pub center: Center,
    pub config: SamplerConfig,
    pub excluded: usize,
    pub tested: usize,
    pub comparisons: usize,
    pub violations: Vec<Violation>,
    pub controls: Vec<Control>,
}

impl ElementaryReport {
    pub fn controls_pass(&self) -> bool {
        self.controls.iter().all(|c| c.excluded && c.commutes)
    }

    pub fn pass(&self) -> bool {
        self.violations.is_empty() && self.controls_pass()
    }
}

/// Checks `f gⁿ f⁻¹ ≠ g^±n` for `1 ≤ n ≤ max_n`; returns the violations.
pub fn conjugation_violations(tower: &Tower, level: Level, g: &Word, f: &Word, max_n: u32) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let gn = g.pow(&BigInt::from(n));
        let conj = f.concat(&gn).concat(&f.inverse());
        if tower.wp_equal(level, &conj, &gn)? {
            out.push(Violation { f: f.clone(), n, sign: 1 });
        }
        if tower.wp_equal(level, &conj, &gn.inverse())? {
            out.push(Violation { f: f.clone(), n, sign: -1 });
        }
    }
    Ok(out)
}

/// Samples `f` uniformly among reduced words up to the configured length,
/// drops `f ∈ ⟨g⟩` and records every `f gⁿ f⁻¹ = g^±n`.
pub fn elementary_search(tower: &Tower, level: Level, center: Center, cfg: &SamplerConfig) -> Result<ElementaryReport> {
    cfg.validate()?;
    if level != center.level() {
        return Err(Error::Config(format!("center {center} lives in {}, not {level}", center.level())));
    }
    let g = center.word();
    let ac = ac_oracle(tower.ha());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let samples: Vec<Word> = (0..cfg.samples)
        .map(|_| Word::random(&mut rng, level.alphabet(), cfg.max_word_length))
        .collect();
    let results: Vec<Option<Vec<Violation>>> = samples
        .par_iter()
        .map(|f| {
            if center_member(tower, &ac, center, f)?.is_some() {
                return Ok(None);
            }
            conjugation_violations(tower, level, &g, f, cfg.max_n).map(Some)
        })
        .collect::<Result<_>>()?;
    let excluded = results.iter().filter(|r| r.is_none()).count();
    let tested = results.len() - excluded;
    let violations = results.into_iter().flatten().flatten().collect();

    let mut controls = Vec::new();
    for j in -5i64..=5 {
        let f = g.pow(&BigInt::from(j));
        let excluded = center_member(tower, &ac, center, &f)? == Some(BigInt::from(j));
        let mut commutes = true;
        for n in 1..=cfg.max_n {
            let gn = g.pow(&BigInt::from(n));
            commutes &= tower.wp_equal(level, &f.concat(&gn).concat(&f.inverse()), &gn)?;
        }
        controls.push(Control { f, excluded, commutes });
    }
    Ok(ElementaryReport {
        level,
        center,
        config: cfg.clone(),
        excluded,
        tested,
        comparisons: tested * cfg.max_n as usize * 2,
        violations,
        controls,
    })
}

/// Syllable length of `f` in `H ∗ ⟨a⟩`.
pub fn syllable_length(tower: &Tower, f: &Word) -> Result<usize> {
    Ok(tower.ha().eval(f)?.syllable_len())
}

/// The two descent moves on `f ∈ E(ac) \ ⟨ac⟩`: a normal form `a·h·f₁`
/// (`1 ≠ h ∈ H`) becomes `c⁻¹·h·f₁ = (ac)⁻¹f`, and `c⁻¹·a'·f₂` becomes
/// `a·a'·f₂ = (ac)f`. Returns `None` when neither prefix is present.
pub fn shorten_move(tower: &Tower, f: &Word) -> Result<Option<Word>> {
    let ha = tower.ha();
    let x = ha.eval(f)?;
    let c_inv = ha.eval(&w("c^-1"))?;
    let ac = ha.eval(&w("a c"))?;
    let moved = match x.syllables() {
        [Syllable::Right(a), Syllable::Left(_), ..] if *a == BigInt::from(1) => Some(ha.mul(&ha.inv(&ac), &x)),
        [first @ Syllable::Left(_), Syllable::Right(_), ..] if ha.equal(&ha.from_syllables([first.clone()]), &c_inv) => {
            Some(ha.mul(&ac, &x))
        }
        _ => None,
    };
    Ok(moved.map(|y| ha.to_word(&y)))
}

/// Words whose normal form starts with `a·h` or `c⁻¹·a'`, for exercising [`shorten_move`].
pub fn prefixed_samples(tower: &Tower, rng: &mut impl Rng, count: usize, max_len: usize) -> Result<Vec<Word>> {
    let ha = tower.ha();
    let h_letters = Level::H.alphabet();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let rest = Word::random(rng, Level::Ha.alphabet(), max_len);
        let word = if rng.random_bool(0.5) {
            let h = Word::random(rng, h_letters, 4);
            w("a").concat(&h).concat(&rest)
        } else {
            let k = rng.random_range(1..=3i64) * if rng.random_bool(0.5) { 1 } else { -1 };
            w("c^-1").concat(&Word::power(Letter::A, k)).concat(&rest)
        };
        let x = ha.eval(&word)?;
        let starts_right = match x.syllables() {
            [Syllable::Right(a), Syllable::Left(_), ..] => *a == BigInt::from(1),
            [first @ Syllable::Left(_), Syllable::Right(_), ..] => {
                ha.equal(&ha.from_syllables([first.clone()]), &ha.eval(&w("c^-1"))?)
            }
            _ => false,
        };
        if starts_right {
            out.push(word);
        }
    }
    Ok(out)
}
